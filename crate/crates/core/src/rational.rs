//! Exact rational helpers shared by the enumeration and simplex code.

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Default tolerance used when turning floating-point probabilities into
/// rationals.
pub const DEFAULT_RATIONAL_TOL: f64 = 1e-12;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Best rational approximation of `x` by continued-fraction convergents:
/// the first convergent within `tol` of `x` is returned, which is the one
/// with the smallest denominator among convergents meeting the tolerance.
pub fn rationalize(x: f64, tol: f64) -> Rational {
    assert!(x.is_finite(), "cannot rationalize a non-finite value");
    if x < 0.0 {
        return -rationalize(-x, tol);
    }
    // (h_{n-1}, h_{n-2}) and (k_{n-1}, k_{n-2})
    let (mut h1, mut h2) = (BigInt::one(), BigInt::zero());
    let (mut k1, mut k2) = (BigInt::zero(), BigInt::one());
    let mut rem = x;
    for _ in 0..64 {
        let a = rem.floor();
        let a_int = BigInt::from(a as i128);
        let h = &a_int * &h1 + &h2;
        let k = &a_int * &k1 + &k2;
        let approx = h.to_f64().unwrap_or(f64::INFINITY) / k.to_f64().unwrap_or(f64::INFINITY);
        if (approx - x).abs() <= tol {
            return Rational::new(h, k);
        }
        let frac = rem - a;
        if frac <= 0.0 {
            return Rational::new(h, k);
        }
        rem = 1.0 / frac;
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, k);
    }
    Rational::from_float(x).expect("finite value")
}

/// `num/den` for exact values, plain integers when the denominator is one.
pub fn display(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_fractions() {
        assert_eq!(rationalize(1.0 / 12.0, 1e-12), ratio(1, 12));
        assert_eq!(rationalize(2.0 / 3.0, 1e-12), ratio(2, 3));
        assert_eq!(rationalize(0.25, 1e-12), ratio(1, 4));
        assert_eq!(rationalize(0.0, 1e-12), int(0));
        assert_eq!(rationalize(1.0, 1e-12), int(1));
        assert_eq!(rationalize(-0.375, 1e-12), ratio(-3, 8));
    }

    #[test]
    fn rounding_noise_collapses() {
        assert_eq!(rationalize(1e-17, 1e-12), int(0));
        assert_eq!(rationalize(1.0 / 3.0 + 1e-15, 1e-12), ratio(1, 3));
    }

    #[test]
    fn irrational_within_tolerance() {
        let x = (2.0 + 2f64.sqrt()) / 8.0;
        let r = rationalize(x, 1e-12);
        assert!((to_f64(&r) - x).abs() <= 1e-12);
        assert!(r.denom() < &BigInt::from(10_000_000_i64));
    }

    #[test]
    fn display_forms() {
        assert_eq!(display(&ratio(8, 9)), "8/9");
        assert_eq!(display(&int(2)), "2");
        assert_eq!(display(&ratio(-6, 4)), "-3/2");
    }
}
