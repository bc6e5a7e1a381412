//! Command-line front end: argument definitions and job dispatch.
//!
//! Exit codes: 0 when the property holds (or a computation succeeded),
//! 1 when it fails with a witness, 2 on usage or parse errors.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::filippov::{
    self, check_filippov, check_problem_hypothesis, contract_algebra, SearchMode, SearchOptions,
    SearchSpace, StructureConstants, Vector,
};
use crate::multivector::Multivector;
use crate::parse::{
    parse_multivector, parse_multivector_list, parse_polynomial_list, parse_rational,
    parse_structure_constants,
};
use crate::report::{identity_is_replayable, shell_quote, ConfigReport, Report};
use crate::verify::{self, CheckConfig, Mode, Verdict};

#[derive(Parser, Debug)]
#[command(
    name = "nambu",
    version,
    about = "Exact checks for Nambu-Poisson, Nambu-Jacobi and Filippov n-brackets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Record wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    /// Largest monomial degree used for test functions (2 is complete).
    #[arg(long, default_value_t = 2)]
    pub max_degree: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    /// Tuples sampled in random mode.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

impl CheckArgs {
    fn config(&self) -> CheckConfig {
        CheckConfig {
            max_degree: self.max_degree,
            mode: match self.mode {
                ModeArg::Exhaustive => Mode::Exhaustive,
                ModeArg::Random => Mode::Randomized {
                    samples: self.samples,
                    seed: self.seed,
                },
            },
            workers: self.workers,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ConstantsArgs {
    /// Entries `c[k; i1,...,in] = value`.
    #[arg(long, conflicts_with = "constants_file")]
    pub constants: Option<String>,
    #[arg(long)]
    pub constants_file: Option<std::path::PathBuf>,
    /// Bracket arity (needed only when there are no entries).
    #[arg(long)]
    pub arity: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Iterated contraction L_{f1,...,fk}.
    Contract {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        tensor: String,
        #[arg(long)]
        fs: String,
    },
    /// Exterior product of two fields.
    Wedge {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Schouten-Nijenhuis bracket of two fields.
    Schouten {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Evaluates the n-bracket (D + s(G))(f1,...,fn).
    Bracket {
        #[arg(long)]
        dim: usize,
        #[arg(long, alias = "delta")]
        tensor: String,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        fs: String,
    },
    /// Poisson test [L, L] = 0 for a bivector.
    CheckPoisson {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        tensor: String,
    },
    /// Nambu-Poisson test of an n-vector field.
    CheckNp {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        tensor: String,
        /// Degree of the tensor (needed only for the zero tensor).
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Nambu-Jacobi test of a pair (D, G).
    CheckNj {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        gamma: String,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Fundamental identity for concrete functions.
    CheckFiDirect {
        #[arg(long)]
        dim: usize,
        #[arg(long, alias = "delta")]
        tensor: String,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        fs: String,
        #[arg(long)]
        gs: String,
    },
    /// Plücker-type decomposability test.
    CheckDecomposable {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        tensor: String,
    },
    /// Involutivity of the distribution spanned by vector fields.
    CheckInvolutive {
        #[arg(long)]
        dim: usize,
        /// Comma-separated vector fields.
        #[arg(long)]
        fields: String,
    },
    /// Hamiltonian bracket identity for concrete functions.
    CheckHam {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        tensor: String,
        #[arg(long)]
        fs: String,
        #[arg(long)]
        gs: String,
    },
    /// Compares the verdict on L with the verdicts on its contractions L_f.
    Theorem1Crosscheck {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        tensor: String,
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Fundamental identity of a bracket given by structure constants.
    FilippovCheck {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        constants: ConstantsArgs,
    },
    /// Structure constants of the contraction [..]_x.
    FilippovContract {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        constants: ConstantsArgs,
        /// Comma-separated coordinates of x.
        #[arg(long)]
        vector: String,
    },
    /// Searches for brackets whose contractions are all Filippov.
    FilippovSearch {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        arity: usize,
        /// Comma-separated coefficient set.
        #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
        coefficients: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// First assignment index (exhaustive mode).
        #[arg(long, default_value_t = 0)]
        start: u128,
        /// Number of assignments to visit (exhaustive mode).
        #[arg(long)]
        limit: Option<u128>,
        /// Number of sampled brackets (random mode).
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Refuse exhaustive runs visiting more assignments than this.
        #[arg(long, default_value_t = 1 << 24)]
        bound: u64,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Contract { .. } => "contract",
            Command::Wedge { .. } => "wedge",
            Command::Schouten { .. } => "schouten",
            Command::Bracket { .. } => "bracket",
            Command::CheckPoisson { .. } => "check-poisson",
            Command::CheckNp { .. } => "check-np",
            Command::CheckNj { .. } => "check-nj",
            Command::CheckFiDirect { .. } => "check-fi-direct",
            Command::CheckDecomposable { .. } => "check-decomposable",
            Command::CheckInvolutive { .. } => "check-involutive",
            Command::CheckHam { .. } => "check-ham",
            Command::Theorem1Crosscheck { .. } => "theorem1-crosscheck",
            Command::FilippovCheck { .. } => "filippov-check",
            Command::FilippovContract { .. } => "filippov-contract",
            Command::FilippovSearch { .. } => "filippov-search",
        }
    }
}

fn inputs<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn replay_fi(
    dim: usize,
    delta: &Multivector,
    gamma: Option<&Multivector>,
    v: &Verdict,
) -> Option<String> {
    let w = v.witness.as_ref()?;
    if !identity_is_replayable(&w.identity) {
        return None;
    }
    let mut cmd = format!(
        "nambu check-fi-direct --dim {dim} --tensor {}",
        shell_quote(&delta.to_string())
    );
    if let Some(g) = gamma {
        cmd.push_str(&format!(" --gamma {}", shell_quote(&g.to_string())));
    }
    cmd.push_str(&format!(
        " --fs {} --gs {}",
        shell_quote(&join(&w.fs)),
        shell_quote(&join(&w.gs))
    ));
    Some(cmd)
}

fn load_constants(dim: usize, args: &ConstantsArgs) -> Result<StructureConstants> {
    let text = match (&args.constants, &args.constants_file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => {
            return Err(Error::Config(
                "one of --constants or --constants-file is required".into(),
            ))
        }
    };
    parse_structure_constants(&text, dim, args.arity)
}

fn parse_rational_list(text: &str) -> Result<Vec<crate::poly::Rational>> {
    text.split(',')
        .map(|s| {
            parse_rational(s)
                .ok_or_else(|| Error::Config(format!("invalid rational '{}'", s.trim())))
        })
        .collect()
}

fn algebra_result(v: &filippov::AlgebraVerdict) -> (String, Option<serde_json::Value>) {
    let verdict = if v.passed { "pass" } else { "fail" }.to_string();
    let witness = v.witness.as_ref().map(|w| json!(w));
    (verdict, witness)
}

fn dispatch(cmd: &Command) -> Result<Report> {
    Ok(match cmd {
        Command::Contract { dim, tensor, fs } => {
            let l = parse_multivector(tensor, *dim, None)?;
            let fs = parse_polynomial_list(fs, *dim)?;
            let out = l.contract_all(&fs)?;
            let mut r = Report::new(
                cmd.name(),
                inputs([("tensor", l.to_string()), ("fs", join(&fs))]),
            );
            r.result = Some(json!(out.to_string()));
            r
        }
        Command::Wedge { dim, left, right } | Command::Schouten { dim, left, right } => {
            let a = parse_multivector(left, *dim, None)?;
            let b = parse_multivector(right, *dim, None)?;
            let out = if matches!(cmd, Command::Wedge { .. }) {
                a.wedge(&b)?
            } else {
                a.schouten(&b)?
            };
            let mut r = Report::new(
                cmd.name(),
                inputs([("left", a.to_string()), ("right", b.to_string())]),
            );
            r.result = Some(json!(out.to_string()));
            r
        }
        Command::Bracket {
            dim,
            tensor,
            gamma,
            fs,
        } => {
            let fs = parse_polynomial_list(fs, *dim)?;
            let d = parse_multivector(tensor, *dim, Some(fs.len()))?;
            let g = gamma
                .as_deref()
                .map(|t| parse_multivector(t, *dim, Some(fs.len().saturating_sub(1))))
                .transpose()?;
            let value = crate::nj_bracket_eval(&d, g.as_ref(), &fs)?;
            let mut ins = inputs([("tensor", d.to_string()), ("fs", join(&fs))]);
            if let Some(g) = &g {
                ins.insert("gamma".into(), g.to_string());
            }
            let mut r = Report::new(cmd.name(), ins);
            r.result = Some(json!(value.to_string()));
            r
        }
        Command::CheckPoisson { dim, tensor } => {
            let l = parse_multivector(tensor, *dim, Some(2))?;
            let v = verify::check_poisson(&l)?;
            Report::new(cmd.name(), inputs([("tensor", l.to_string())])).with_verdict(&v, None)
        }
        Command::CheckNp {
            dim,
            tensor,
            degree,
            check,
        } => {
            let l = parse_multivector(tensor, *dim, *degree)?;
            let cfg = check.config();
            let v = verify::check_nambu_poisson(&l, &cfg)?;
            let replay = replay_fi(*dim, &l, None, &v);
            let mut r = Report::new(cmd.name(), inputs([("tensor", l.to_string())]))
                .with_verdict(&v, replay);
            with_config(&mut r, &cfg);
            r
        }
        Command::CheckNj {
            dim,
            delta,
            gamma,
            check,
        } => {
            let d = parse_multivector(delta, *dim, None)?;
            let g = parse_multivector(gamma, *dim, Some(d.degree().saturating_sub(1)))?;
            let cfg = check.config();
            let v = verify::check_nambu_jacobi(&d, &g, &cfg)?;
            let replay = replay_fi(*dim, &d, Some(&g), &v);
            let mut r = Report::new(
                cmd.name(),
                inputs([("delta", d.to_string()), ("gamma", g.to_string())]),
            )
            .with_verdict(&v, replay);
            with_config(&mut r, &cfg);
            r
        }
        Command::CheckFiDirect {
            dim,
            tensor,
            gamma,
            fs,
            gs,
        } => {
            let fs = parse_polynomial_list(fs, *dim)?;
            let gs = parse_polynomial_list(gs, *dim)?;
            let d = parse_multivector(tensor, *dim, Some(gs.len()))?;
            let g = gamma
                .as_deref()
                .map(|t| parse_multivector(t, *dim, Some(gs.len().saturating_sub(1))))
                .transpose()?;
            let v = verify::check_fi_direct(&d, g.as_ref(), &fs, &gs)?;
            let mut ins = inputs([
                ("tensor", d.to_string()),
                ("fs", join(&fs)),
                ("gs", join(&gs)),
            ]);
            if let Some(g) = &g {
                ins.insert("gamma".into(), g.to_string());
            }
            let mut r = Report::new(cmd.name(), ins).with_verdict(&v, None);
            let residual = v
                .witness
                .as_ref()
                .map_or_else(|| "0".to_string(), |w| w.residual.to_string());
            r.result = Some(json!(residual));
            r
        }
        Command::CheckDecomposable { dim, tensor } => {
            let l = parse_multivector(tensor, *dim, None)?;
            let v = verify::check_decomposable(&l)?;
            Report::new(cmd.name(), inputs([("tensor", l.to_string())])).with_verdict(&v, None)
        }
        Command::CheckInvolutive { dim, fields } => {
            let xs = parse_multivector_list(fields, *dim, Some(1))?;
            let v = verify::check_involutive(&xs)?;
            Report::new(cmd.name(), inputs([("fields", join(&xs))])).with_verdict(&v, None)
        }
        Command::CheckHam {
            dim,
            tensor,
            fs,
            gs,
        } => {
            let fs = parse_polynomial_list(fs, *dim)?;
            let gs = parse_polynomial_list(gs, *dim)?;
            let l = parse_multivector(tensor, *dim, Some(gs.len() + 1))?;
            let v = verify::check_ham_identity(&l, &fs, &gs)?;
            Report::new(
                cmd.name(),
                inputs([
                    ("tensor", l.to_string()),
                    ("fs", join(&fs)),
                    ("gs", join(&gs)),
                ]),
            )
            .with_verdict(&v, None)
        }
        Command::Theorem1Crosscheck {
            dim,
            tensor,
            degree,
            check,
        } => {
            let l = parse_multivector(tensor, *dim, *degree)?;
            let cfg = check.config();
            let c = verify::theorem1_crosscheck(&l, &cfg)?;
            let mut r = Report::new(cmd.name(), inputs([("tensor", l.to_string())]))
                .with_verdict(&c.verdict, None);
            r.result = Some(json!({
                "tensor_nambu_poisson": c.tensor.passed,
                "contractions_checked": c.contractions_checked,
                "first_failing_contraction": c.failing_contraction.as_ref().map(|(f, _)| f.to_string()),
            }));
            with_config(&mut r, &cfg);
            r
        }
        Command::FilippovCheck { dim, constants } => {
            let s = load_constants(*dim, constants)?;
            let v = check_filippov(&s);
            let mut r = Report::new(cmd.name(), inputs([("constants", s.to_string())]));
            let (verdict, witness) = algebra_result(&v);
            r.verdict = verdict;
            r.cases = Some(v.cases);
            r.exhaustive = Some(true);
            r.result = witness.map(|w| json!({ "basis_witness": w }));
            r
        }
        Command::FilippovContract {
            dim,
            constants,
            vector,
        } => {
            let s = load_constants(*dim, constants)?;
            let x = Vector::from_coords(parse_rational_list(vector)?);
            let c = contract_algebra(&s, &x)?;
            let filippov = check_filippov(&c).passed;
            let hypothesis = if s.arity() >= 3 {
                Some(check_problem_hypothesis(&s)?.passed)
            } else {
                None
            };
            let mut r = Report::new(
                cmd.name(),
                inputs([("constants", s.to_string()), ("vector", x.to_string())]),
            );
            r.result = Some(json!({
                "contracted": c.to_string(),
                "contracted_is_filippov": filippov,
                "all_contractions_filippov": hypothesis,
            }));
            r
        }
        Command::FilippovSearch {
            dim,
            arity,
            coefficients,
            mode,
            start,
            limit,
            samples,
            seed,
            bound,
            workers,
        } => {
            let coeffs = parse_rational_list(coefficients)?;
            let space = SearchSpace::new(*dim, *arity, coeffs)?;
            let opts = SearchOptions {
                mode: match mode {
                    ModeArg::Exhaustive => SearchMode::Exhaustive {
                        start: *start,
                        limit: *limit,
                    },
                    ModeArg::Random => SearchMode::Random {
                        seed: *seed,
                        count: *samples,
                    },
                },
                exhaustive_bound: *bound,
                workers: *workers,
            };
            let report = filippov::search(&space, &opts)?;
            let mut ins = inputs([
                ("dim", dim.to_string()),
                ("arity", arity.to_string()),
                ("coefficients", report.coefficients.join(",")),
            ]);
            match mode {
                ModeArg::Exhaustive => {
                    ins.insert("start".into(), start.to_string());
                    ins.insert(
                        "limit".into(),
                        limit.map_or_else(|| "all".to_string(), |l| l.to_string()),
                    );
                }
                ModeArg::Random => {
                    ins.insert("samples".into(), samples.to_string());
                }
            }
            let mut r = Report::new(cmd.name(), ins);
            r.verdict = if report.counterexamples.is_empty() {
                "pass"
            } else {
                "fail"
            }
            .to_string();
            r.exhaustive = Some(matches!(mode, ModeArg::Exhaustive));
            r.cases = Some(report.examined as usize);
            r.seed = report.seed;
            r.result = Some(json!(report));
            r
        }
    })
}

fn with_config(r: &mut Report, cfg: &CheckConfig) {
    r.config = Some(ConfigReport::from_config(cfg));
    if let Mode::Randomized { seed, .. } = cfg.mode {
        r.seed = Some(seed);
    }
}

/// Runs one command, returning its report and process exit code.
pub fn run(cmd: &Command, timing: bool) -> (Report, i32) {
    let started = Instant::now();
    let mut report = match dispatch(cmd) {
        Ok(r) => r,
        Err(e) => {
            let mut r = Report::new(cmd.name(), BTreeMap::new());
            r.verdict = "error".into();
            r.error = Some(e.to_string());
            r
        }
    };
    if timing {
        report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    }
    let code = report.exit_code();
    (report, code)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the rendered output and exit code.
pub fn run_from_args<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => {
            let (report, code) = run(&cli.command, cli.timing);
            let text = if cli.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            };
            (text, code)
        }
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            (e.to_string(), code)
        }
    }
}
