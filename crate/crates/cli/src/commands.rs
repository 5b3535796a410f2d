use std::f64::consts::SQRT_2;
use std::fmt::Write;
use std::path::Path;

use nonlocality::behavior::{
    chsh_expression, correlator, evaluate_expression, lhv_bound, simulate_rounds, Behavior,
    Scenario,
};
use nonlocality::classifier::{classify, hardy_chain, HardyOutcome};
use nonlocality::games::{
    builtin, classical_value, game_to_bell_expression, game_value_report, magic_square,
    magic_square_quantum, parity_table_counts, Game,
};
use nonlocality::json::{self, round_sig, Value};
use nonlocality::rational::{self, Rational};
use nonlocality::scenarios::{self, HARDY_SETTING_LABELS, PM_OUTCOME_LABELS};
use serde::Serialize;

use crate::report::{
    self, decimal, emit, exact, line, verdict_lines, ExactDoc, StrategyDoc, VerdictReport,
};
use crate::{read_file, CliError, Command, RunConfig};

pub fn run(cfg: &RunConfig) -> Result<String, CliError> {
    match &cfg.command {
        Command::Chsh => chsh(cfg),
        Command::Hardy => hardy(cfg),
        Command::MagicSquare => magic(cfg),
        Command::Classify => classify_cmd(cfg),
        Command::LhvBound { game } => bound(cfg, game.as_deref()),
        Command::Simulate => simulate(cfg),
    }
}

#[derive(Serialize)]
struct CorrelatorDoc {
    x: usize,
    y: usize,
    value: f64,
}

#[derive(Serialize)]
struct SimulationDoc {
    rounds: u64,
    seed: u64,
    estimate: f64,
    standard_error: f64,
}

#[derive(Serialize)]
struct ChshReport {
    command: &'static str,
    lhv_bound: ExactDoc,
    maximizing_strategy: StrategyDoc,
    quantum_value: f64,
    tsirelson_bound: f64,
    correlators: Vec<CorrelatorDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    simulation: Option<SimulationDoc>,
}

fn chsh(cfg: &RunConfig) -> Result<String, CliError> {
    let e = chsh_expression();
    let bound = lhv_bound(&e)?;
    let b = scenarios::chsh_quantum_behavior();
    let quantum = evaluate_expression(&e, &b)?;
    let mut correlators = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            correlators.push(CorrelatorDoc {
                x,
                y,
                value: round_sig(correlator(&b, x, y)?),
            });
        }
    }
    let simulation = match cfg.rounds {
        Some(rounds) => {
            let (estimate, se) = simulate_rounds(&b, rounds, cfg.seed, None)?.chsh_estimate()?;
            Some(SimulationDoc {
                rounds,
                seed: cfg.seed,
                estimate: round_sig(estimate),
                standard_error: round_sig(se),
            })
        }
        None => None,
    };
    let doc = ChshReport {
        command: "chsh",
        lhv_bound: (&bound.value).into(),
        maximizing_strategy: (&bound.strategy).into(),
        quantum_value: round_sig(quantum),
        tsirelson_bound: round_sig(2.0 * SQRT_2),
        correlators,
        simulation,
    };
    Ok(emit(cfg.output_format, &doc, || {
        let mut out = String::new();
        line(&mut out, "expression", e.description());
        line(&mut out, "LHV bound", exact(&bound.value));
        line(&mut out, "maximizing strategy", &bound.strategy);
        line(&mut out, "quantum value", decimal(quantum));
        line(&mut out, "2*sqrt(2)", decimal(2.0 * SQRT_2));
        writeln!(out, "{:<4}{:<4}E(x,y)", "x", "y").unwrap();
        for c in &doc.correlators {
            writeln!(out, "{:<4}{:<4}{:>13}", c.x, c.y, decimal(c.value)).unwrap();
        }
        if let Some(s) = &doc.simulation {
            line(
                &mut out,
                &format!("empirical ({} rounds)", s.rounds),
                format!(
                    "{} +/- {} (seed {})",
                    decimal(s.estimate),
                    decimal(s.standard_error),
                    s.seed
                ),
            );
        }
        out
    }))
}

#[derive(Serialize)]
struct EventDoc {
    event: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<Value>,
    decimal: f64,
}

#[derive(Serialize)]
struct HardyReport {
    command: &'static str,
    values: Vec<EventDoc>,
    chain: Vec<String>,
    outcome: String,
    verdict: VerdictReport<[&'static str; 4]>,
}

const HARDY_EVENTS: [&str; 4] = ["p(-,-|x,x)", "p(-,-|x,z)", "p(-,-|z,x)", "p(+,+|z,z)"];

fn hardy(cfg: &RunConfig) -> Result<String, CliError> {
    let b = match cfg.read_input()? {
        Some(text) => json::behavior_from_str(&text)?,
        None => scenarios::hardy_exact_behavior(),
    };
    let chain = hardy_chain(&b, cfg.eps_support)?;
    let verdict = classify(&b, cfg.eps_support)?;
    let floats = chain.values.as_array();
    let values = (0..4)
        .map(|k| EventDoc {
            event: HARDY_EVENTS[k],
            exact: chain.values.exact.as_ref().map(|e| Value::exact(&e[k])),
            decimal: round_sig(floats[k]),
        })
        .collect();
    let outcome = match &chain.outcome {
        HardyOutcome::Contradiction => "contradiction".to_string(),
        HardyOutcome::NoContradiction(why) => format!("no contradiction: {why}"),
        HardyOutcome::PremiseVacuous => "premise vacuous".to_string(),
    };
    let doc = HardyReport {
        command: "hardy",
        values,
        chain: chain.steps.clone(),
        outcome: outcome.clone(),
        verdict: report::verdict_report(&verdict, |x, y, a, b| {
            [
                HARDY_SETTING_LABELS[x],
                HARDY_SETTING_LABELS[y],
                PM_OUTCOME_LABELS[a],
                PM_OUTCOME_LABELS[b],
            ]
        }),
    };
    Ok(emit(cfg.output_format, &doc, || {
        let mut out = String::new();
        writeln!(out, "{:<14}{:<10}decimal", "event", "exact").unwrap();
        for (k, event) in HARDY_EVENTS.iter().enumerate() {
            let shown = chain
                .values
                .exact
                .as_ref()
                .map_or("-".to_string(), |e| rational::display(&e[k]));
            writeln!(out, "{event:<14}{shown:<10}{}", decimal(floats[k])).unwrap();
        }
        for step in &chain.steps {
            writeln!(out, "{step}").unwrap();
        }
        line(&mut out, "outcome", &outcome);
        verdict_lines(&mut out, &verdict);
        out
    }))
}

#[derive(Serialize)]
struct MagicReport {
    command: &'static str,
    valid_tables: usize,
    tables_rows_even: usize,
    tables_cols_odd: usize,
    classical_value: ExactDoc,
    best_classical_strategy: StrategyDoc,
    quantum_win_probability: f64,
    max_losing_mass: f64,
    quantum_wins_every_input: bool,
    verdict: VerdictReport<[usize; 4]>,
}

fn magic(cfg: &RunConfig) -> Result<String, CliError> {
    let counts = parity_table_counts();
    let g = magic_square();
    let qs = magic_square_quantum();
    let values = game_value_report(&g, &qs, None, cfg.eps_support)?;
    let max_lose = qs.losing_mass(&g)?.into_iter().fold(0.0, f64::max);
    let verdict = classify(&qs.behavior()?, cfg.eps_support)?;
    let doc = MagicReport {
        command: "magic-square",
        valid_tables: counts.both,
        tables_rows_even: counts.rows_even,
        tables_cols_odd: counts.cols_odd,
        classical_value: (&values.classical_value).into(),
        best_classical_strategy: (&values.best_classical_strategy).into(),
        quantum_win_probability: round_sig(values.quantum_win_probability),
        max_losing_mass: round_sig(max_lose),
        quantum_wins_every_input: values.is_quantum_winning,
        verdict: report::verdict_report(&verdict, |x, y, a, b| [x, y, a, b]),
    };
    Ok(emit(cfg.output_format, &doc, || {
        let mut out = String::new();
        line(&mut out, "valid tables:", counts.both);
        line(
            &mut out,
            "tables of 512",
            format!(
                "{} rows even, {} columns odd",
                counts.rows_even, counts.cols_odd
            ),
        );
        line(&mut out, "classical value", exact(&values.classical_value));
        line(
            &mut out,
            "best classical strategy",
            &values.best_classical_strategy,
        );
        line(
            &mut out,
            "quantum win probability",
            decimal(values.quantum_win_probability),
        );
        line(&mut out, "max losing mass", format!("{max_lose:.3e}"));
        line(&mut out, "wins on every input", values.is_quantum_winning);
        verdict_lines(&mut out, &verdict);
        out
    }))
}

#[derive(Serialize)]
struct ClassifyReport {
    command: &'static str,
    scenario: json::ScenarioDoc,
    eps_support: f64,
    verdict: VerdictReport<[usize; 4]>,
}

fn classify_cmd(cfg: &RunConfig) -> Result<String, CliError> {
    let b = json::behavior_from_str(&cfg.require_input()?)?;
    let verdict = classify(&b, cfg.eps_support)?;
    let doc = ClassifyReport {
        command: "classify",
        scenario: scenario_doc(b.scenario()),
        eps_support: cfg.eps_support,
        verdict: report::verdict_report(&verdict, |x, y, a, b| [x, y, a, b]),
    };
    Ok(emit(cfg.output_format, &doc, || {
        let mut out = String::new();
        line(&mut out, "scenario", b.scenario());
        verdict_lines(&mut out, &verdict);
        out
    }))
}

fn scenario_doc(s: &Scenario) -> json::ScenarioDoc {
    json::ScenarioDoc {
        inputs_a: s.inputs_a,
        inputs_b: s.inputs_b,
        outputs_a: s.outputs_a,
        outputs_b: s.outputs_b,
    }
}

#[derive(Serialize)]
struct BoundReport {
    command: &'static str,
    description: String,
    lhv_bound: ExactDoc,
    maximizing_strategy: StrategyDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    classical_value: Option<ExactDoc>,
}

fn load_game(name: &str) -> Result<Game, CliError> {
    match builtin(name) {
        Some(g) => Ok(g),
        None => Ok(json::game_from_str(&read_file(Path::new(name))?)?),
    }
}

fn bound(cfg: &RunConfig, game: Option<&str>) -> Result<String, CliError> {
    let (expr, classical): (_, Option<Rational>) = match (game, cfg.read_input()?) {
        (Some(_), Some(_)) => {
            return Err(CliError::Validation(
                "give either --game or --input, not both".into(),
            ));
        }
        (Some(name), None) => {
            let g = load_game(name)?;
            (
                game_to_bell_expression(&g, None)?,
                Some(classical_value(&g, None)?.value),
            )
        }
        (None, Some(text)) => (json::expression_from_str(&text)?, None),
        (None, None) => (chsh_expression(), None),
    };
    let bound = lhv_bound(&expr)?;
    let doc = BoundReport {
        command: "lhv-bound",
        description: expr.description().to_string(),
        lhv_bound: (&bound.value).into(),
        maximizing_strategy: (&bound.strategy).into(),
        classical_value: classical.as_ref().map(Into::into),
    };
    Ok(emit(cfg.output_format, &doc, || {
        let mut out = String::new();
        line(&mut out, "expression", expr.description());
        line(&mut out, "scenario", expr.scenario());
        line(&mut out, "LHV bound", exact(&bound.value));
        line(&mut out, "maximizing strategy", &bound.strategy);
        if let Some(v) = &classical {
            line(&mut out, "classical value", exact(v));
        }
        out
    }))
}

#[derive(Serialize)]
struct FrequencyDoc {
    x: usize,
    y: usize,
    a: usize,
    b: usize,
    p: f64,
    frequency: f64,
}

#[derive(Serialize)]
struct SimulateReport {
    command: &'static str,
    rounds: u64,
    seed: u64,
    total_variation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    chsh: Option<[f64; 2]>,
    frequencies: Vec<FrequencyDoc>,
}

pub const DEFAULT_ROUNDS: u64 = 100_000;

fn simulate(cfg: &RunConfig) -> Result<String, CliError> {
    let b: Behavior = match cfg.read_input()? {
        Some(text) => json::behavior_from_str(&text)?,
        None => scenarios::chsh_quantum_behavior(),
    };
    let rounds = cfg.rounds.unwrap_or(DEFAULT_ROUNDS);
    let sim = simulate_rounds(&b, rounds, cfg.seed, None)?;
    let s = *b.scenario();
    let freq = sim.frequencies();
    let frequencies = (0..s.table_len())
        .map(|i| {
            let (x, y, a, bb) = s.coords(i);
            FrequencyDoc {
                x,
                y,
                a,
                b: bb,
                p: round_sig(b.table()[i]),
                frequency: round_sig(freq[i]),
            }
        })
        .collect();
    let chsh = if s == Scenario::binary_2x2() {
        let (v, se) = sim.chsh_estimate()?;
        Some([round_sig(v), round_sig(se)])
    } else {
        None
    };
    let doc = SimulateReport {
        command: "simulate",
        rounds,
        seed: cfg.seed,
        total_variation: round_sig(sim.total_variation(&b)?),
        chsh,
        frequencies,
    };
    Ok(emit(cfg.output_format, &doc, || {
        let mut out = String::new();
        line(&mut out, "rounds", rounds);
        line(&mut out, "seed", cfg.seed);
        line(&mut out, "total variation", decimal(doc.total_variation));
        if let Some([v, se]) = doc.chsh {
            line(
                &mut out,
                "CHSH estimate",
                format!("{} +/- {}", decimal(v), decimal(se)),
            );
        }
        writeln!(
            out,
            "{:<4}{:<4}{:<4}{:<4}{:>14}{:>14}",
            "x", "y", "a", "b", "p", "frequency"
        )
        .unwrap();
        for f in &doc.frequencies {
            writeln!(
                out,
                "{:<4}{:<4}{:<4}{:<4}{:>14}{:>14}",
                f.x,
                f.y,
                f.a,
                f.b,
                decimal(f.p),
                decimal(f.frequency)
            )
            .unwrap();
        }
        out
    }))
}
