use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::value::RawValue;

use schubpos::pfsolve;
use schubpos::qchev::ChevalleyRule;
use schubpos::rat;
use schubpos::repwt::{weights_of_in, WeightLattice};
use schubpos::suite::{self, raw, PfJson, SuiteConfig, SuiteReport};
use schubpos::totpos::{self, embed, wiring};
use schubpos::{Error, ExactMatrix, RootSystem, TypeLetter, WeylGroup};

#[derive(Parser)]
#[command(name = "schubpos", version, about = "Positivity checks for quantum Schubert calculus and totally positive matrices")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Emit::Json, global = true)]
    emit: Emit,
    #[arg(long, default_value_t = suite::DEFAULT_SEED, global = true)]
    seed: u64,
    /// Relative residual tolerance of the numerical eigenvector solve.
    #[arg(long, default_value_t = 1e-9, global = true)]
    tol: f64,
    /// Largest module dimension for weight computations.
    #[arg(long, default_value_t = schubpos::repwt::DIMENSION_BUDGET, global = true)]
    budget: u64,
    /// Adds wall time to suite reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Tnn,
    Tp,
    Delta,
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots, highest root and Cartan matrix.
    Roots {
        #[arg(long = "type")]
        type_letter: TypeLetter,
        #[arg(long)]
        rank: usize,
        /// Reversed node order for types C and D (long simple root first in type C).
        #[arg(long)]
        paper_c_labeling: bool,
    },
    /// Quantum Chevalley product of a divisor class with a Schubert class.
    Chevalley {
        #[arg(long = "type")]
        type_letter: TypeLetter,
        #[arg(long)]
        rank: usize,
        /// Nodes of I_P, 1-based, comma separated.
        #[arg(long, default_value = "")]
        parabolic: String,
        /// Divisor node, 1-based.
        #[arg(long)]
        i: usize,
        /// Reduced word of a minimal coset representative, e.g. "1 2".
        #[arg(long, default_value = "e")]
        w: String,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Extra settings as `key=value;...` (types, samples, n, q, experimental).
        #[arg(long, default_value = "")]
        config: String,
        /// Includes the E7 weight lemma.
        #[arg(long)]
        experimental: bool,
    },
    /// Perron-Frobenius point of qH*(G/B) at given quantum parameters.
    Pf {
        #[arg(long = "type")]
        type_letter: TypeLetter,
        #[arg(long)]
        rank: usize,
        /// Positive rationals, comma separated.
        #[arg(long)]
        q: String,
    },
    /// Perron-Frobenius solve over log-uniform samples.
    PfSweep {
        /// Types such as `A2,B2`; defaults to the sweep list.
        #[arg(long = "types")]
        types: Option<String>,
        #[arg(long, default_value_t = suite::PF_SWEEP_SAMPLES)]
        samples: usize,
    },
    /// Unit lower-triangular Toeplitz matrix checks.
    Toeplitz {
        /// Matrix size minus one.
        #[arg(long)]
        n: usize,
        /// Subdiagonal entries `c_1, ..., c_n`.
        #[arg(long)]
        entries: String,
        #[arg(long, value_enum, default_value_t = Check::Tnn)]
        check: Check,
    },
    /// Chamber sets of a wiring diagram.
    Chambers {
        /// `Bn` (the word w^n in S_{2n+1}) or `A` (the given word).
        #[arg(long, default_value = "Bn")]
        family: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Word for family A, e.g. "1 2 1".
        #[arg(long)]
        word: Option<String>,
        /// Number of lines for family A.
        #[arg(long)]
        m: Option<usize>,
        /// Same as `--emit json`.
        #[arg(long)]
        emit_json: bool,
    },
    /// exp(f) for the principal nilpotent of SL_m.
    Expf {
        #[arg(long)]
        m: usize,
    },
    /// Weight system of an irreducible module.
    Weights {
        #[arg(long = "type")]
        type_letter: TypeLetter,
        #[arg(long)]
        rank: usize,
        /// Highest weight in fundamental-weight coordinates.
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        paper_c_labeling: bool,
    },
}

enum Output {
    Json(Box<RawValue>),
    Report(SuiteReport),
}

fn root_system(t: TypeLetter, n: usize, reversed: bool) -> Result<Arc<RootSystem>, Error> {
    let rs = RootSystem::new(t, n)?;
    Ok(Arc::new(if reversed { rs.reversed_labeling()? } else { rs }))
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Error::Parse(format!("not an integer: {x:?}"))))
        .collect()
}

fn parse_nodes(s: &str, rank: usize) -> Result<Vec<usize>, Error> {
    parse_ints(s)?
        .into_iter()
        .map(|k| {
            if k < 1 || k as usize > rank {
                Err(Error::IndexOutOfRange { index: k.max(0) as usize, bound: rank })
            } else {
                Ok(k as usize - 1)
            }
        })
        .collect()
}

fn matrix_json(a: &ExactMatrix) -> Vec<Vec<String>> {
    a.to_strings()
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let base = SuiteConfig { seed: cli.seed, tol: cli.tol, budget: cli.budget, timing: cli.timing, ..SuiteConfig::default() };
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        return Err(Error::Parse(format!("tolerance must be positive, got {}", cli.tol)));
    }
    Ok(match &cli.command {
        Command::Roots { type_letter, rank, paper_c_labeling } => {
            let rs = root_system(*type_letter, *rank, *paper_c_labeling)?;
            Output::Json(raw(&serde_json::json!({
                "type": rs.name(),
                "positive_roots": rs.positive_roots(),
                "theta": rs.theta(),
                "cartan": rs.cartan(),
            })))
        }
        Command::Chevalley { type_letter, rank, parabolic, i, w } => {
            let rs = root_system(*type_letter, *rank, false)?;
            let p = rs.parabolic(&parse_nodes(parabolic, *rank)?)?;
            let node = parse_nodes(&i.to_string(), *rank)?[0];
            let wg = Arc::new(WeylGroup::new(rs));
            let w = wg.parse(w)?;
            let rule = ChevalleyRule::new(wg, p);
            Output::Json(raw(&rule.multiply(node, &w)?.to_json()))
        }
        Command::Verify { suite: name, config, experimental } => {
            let mut cfg: SuiteConfig = config.parse()?;
            cfg.seed = if config.contains("seed=") { cfg.seed } else { cli.seed };
            if !config.contains("tol=") {
                cfg.tol = cli.tol;
            }
            if !config.contains("budget=") {
                cfg.budget = cli.budget;
            }
            cfg.timing = cli.timing;
            cfg.experimental |= *experimental;
            Output::Report(suite::run_suite(name, &cfg)?)
        }
        Command::Pf { type_letter, rank, q } => {
            let wg = Arc::new(WeylGroup::new(root_system(*type_letter, *rank, false)?));
            let q = rat::parse_list(q)?;
            let sol = pfsolve::solve_at(wg, &q, &base.pf_config())?;
            Output::Json(raw(&PfJson::new(&sol)))
        }
        Command::PfSweep { types, samples } => {
            let mut cfg = base.clone();
            cfg.types = types.as_ref().map(|t| t.split(',').map(|x| x.trim().to_string()).collect());
            cfg.samples = Some(*samples);
            Output::Report(suite::run_suite("pf-sweep", &cfg)?)
        }
        Command::Toeplitz { n, entries, check } => {
            let entries = rat::parse_list(entries)?;
            if entries.len() != *n {
                return Err(Error::DimensionMismatch { expected: *n, got: entries.len() });
            }
            let a = totpos::toeplitz(&entries);
            let result = match check {
                Check::Tnn => serde_json::json!({
                    "tnn": totpos::is_tnn(&a)?,
                    "negative_minor": totpos::negative_minor(&a)?.map(|(r, c)| {
                        (r.iter().map(|x| x + 1).collect::<Vec<_>>(), c.iter().map(|x| x + 1).collect::<Vec<_>>())
                    }),
                }),
                Check::Tp => serde_json::json!({ "tp": totpos::is_tp(&a)? }),
                Check::Delta => {
                    let d = totpos::delta_coords(&a)?;
                    serde_json::json!({ "delta": d.iter().map(rat::format).collect::<Vec<_>>() })
                }
            };
            Output::Json(raw(&serde_json::json!({ "matrix": matrix_json(&a), "result": result })))
        }
        Command::Chambers { family, n, word, m, .. } => {
            let (word, m, claim) = match family.to_ascii_lowercase().as_str() {
                "bn" | "b" => {
                    let claim = wiring::claim_check(*n)?;
                    (wiring::bn_word_power(*n), 2 * n + 1, Some(claim))
                }
                "a" | "an" => {
                    let m = m.ok_or_else(|| Error::Parse("family A needs --m".into()))?;
                    let word = match word {
                        Some(w) => schubpos::weyl::parse_word(w, m - 1)?.into_iter().map(|i| i + 1).collect(),
                        None => wiring::longest_word(m),
                    };
                    (word, m, None)
                }
                other => return Err(Error::Parse(format!("unknown family {other:?}"))),
            };
            let arr = totpos::PseudolineArrangement::new(&word, m)?;
            let chambers: Vec<Vec<usize>> = arr.chambers.iter().map(|c| c.j.iter().copied().collect()).collect();
            Output::Json(raw(&serde_json::json!({
                "m": m,
                "word": word,
                "length": word.len(),
                "longest": arr.is_longest(),
                "chambers": chambers,
                "claim": claim,
            })))
        }
        Command::Expf { m } => {
            if *m == 0 {
                return Err(Error::Precondition("m must be positive".into()));
            }
            let e = embed::exp_f(*m);
            let tnn = if *m <= totpos::ALL_MINORS_LIMIT { Some(totpos::is_tnn(&e)?) } else { None };
            Output::Json(raw(&serde_json::json!({
                "m": m,
                "matrix": matrix_json(&e),
                "tnn": tnn,
                "tp": totpos::is_tp(&e)?,
            })))
        }
        Command::Weights { type_letter, rank, lambda, paper_c_labeling } => {
            let rs = root_system(*type_letter, *rank, *paper_c_labeling)?;
            let lat = WeightLattice::new(rs.clone()).with_budget(cli.budget);
            let ws = weights_of_in(&lat, &parse_ints(lambda)?)?;
            let weights: Vec<serde_json::Value> = ws
                .weights
                .iter()
                .map(|(w, m)| {
                    let eps = rs.weight_in_epsilon(w).map(|v| v.iter().map(rat::format).collect::<Vec<_>>());
                    serde_json::json!({ "weight": w, "epsilon": eps, "multiplicity": m })
                })
                .collect();
            Output::Json(raw(&serde_json::json!({
                "type": rs.name(),
                "highest_weight": ws.highest_weight,
                "dim": ws.dim(),
                "weights": weights,
            })))
        }
    })
}

/// `key<TAB>value` lines for objects, one value per line for arrays.
fn tsv(v: &RawValue) -> String {
    if let Ok(map) = serde_json::from_str::<std::collections::BTreeMap<String, Box<RawValue>>>(v.get()) {
        map.iter().map(|(k, x)| format!("{k}\t{}\n", x.get())).collect()
    } else if let Ok(list) = serde_json::from_str::<Vec<Box<RawValue>>>(v.get()) {
        list.iter().map(|x| format!("{}\n", x.get())).collect()
    } else {
        format!("{}\n", v.get())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget(_) => 3,
        Error::Numerical(_) | Error::Inconsistent(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    suite::configure_threads();
    let tsv_out = cli.emit == Emit::Tsv && !matches!(cli.command, Command::Chambers { emit_json: true, .. });
    match run(&cli) {
        Ok(Output::Json(v)) => {
            if tsv_out {
                print!("{}", tsv(&v));
            } else {
                println!("{}", v.get());
            }
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            if tsv_out {
                print!("{}", r.to_tsv());
            } else {
                println!("{}", r.to_json());
            }
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
