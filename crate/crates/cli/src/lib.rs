//! The `softcsp` command line.
//!
//! Exit codes: 0 success, 1 usage/IO/parse error, 2 inconsistency,
//! violation or non-equivalence found, 3 axiom check failed.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use softcsp_core::algebra::{
    check_axioms, classify, direct_product, make_builtin, AlgebraError, Builtin, Order, Profile,
    DEFAULT_CARRIER_CAP,
};
use softcsp_core::csp::{is_k_hyperarc_consistent, Normalized, Problem, Scope};
use softcsp_core::enforce::{project, Counters, Selector};
use softcsp_core::io::{
    gen_random_problem, load_algebra, load_algebra_unchecked, load_problem, parse_raw_problem,
    save_algebra, save_problem, FormatError,
};
use softcsp_core::oracle::SolutionSet;
use softcsp_core::{
    brute_force_solve, check_equivalent, enforce_k_hyperarc, Enforced, Equivalence, OracleConfig,
    Strategy,
};

/// Environment variable overriding the product carrier cap.
pub const CARRIER_CAP_VAR: &str = "DRL_SOFT_CARRIER_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FOUND: i32 = 2;
pub const EXIT_AXIOMS: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "softcsp",
    version,
    about = "Soft CSPs over finite divisible residuated lattices"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build, check or classify an algebra.
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Enforce k-hyperarc consistency and write the resulting problem.
    Enforce {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long)]
        k: usize,
        /// maximal-lex, maximal-seeded:SEED or join.
        #[arg(long, default_value = "maximal-lex")]
        strategy: Strategy,
        /// Print iteration counters.
        #[arg(long)]
        counters: bool,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Run a single projection of `scope` onto `var` and write the result.
    Project {
        #[command(flatten)]
        problem: ProblemArg,
        /// Comma-separated variable ids, increasing.
        #[arg(long, value_delimiter = ',', required = true)]
        scope: Vec<usize>,
        #[arg(long)]
        var: usize,
        #[arg(long, default_value = "maximal-lex")]
        strategy: Strategy,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Enumerate every full assignment and report the optimal ones.
    Solve {
        #[command(flatten)]
        problem: ProblemArg,
        /// Skip normalization.
        #[arg(long)]
        raw: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Check k-hyperarc consistency.
    Consistency {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long)]
        k: usize,
    },
    /// Compare two problems on every full assignment.
    Equiv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Generate a seeded random problem.
    Gen {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        dom: usize,
        #[arg(long)]
        constraints: usize,
        #[arg(long)]
        max_arity: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Debug, Args)]
struct ProblemArg {
    #[arg(long = "problem")]
    path: PathBuf,
}

#[derive(Debug, Subcommand)]
enum AlgebraCommand {
    /// Write a builtin algebra.
    Make {
        #[arg(long)]
        kind: Kind,
        /// Chain length, or the maximum cost for `weighted`.
        #[arg(long)]
        n: Option<usize>,
        /// Carrier cap for `product`.
        #[arg(long)]
        cap: Option<usize>,
        /// JSON 0/1 order matrix of a distributive lattice, for `heyting`.
        #[arg(long)]
        lattice: Option<PathBuf>,
        #[arg(long)]
        left: Option<PathBuf>,
        #[arg(long)]
        right: Option<PathBuf>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Run an axiom profile and print the report.
    Check {
        file: PathBuf,
        #[arg(long, default_value = "drl")]
        profile: Profile,
    },
    /// Print the variety flags.
    Classify { file: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Boolean,
    Godel,
    Lukasiewicz,
    Weighted,
    Heyting,
    Product,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Display) -> Self {
        Failure {
            code: EXIT_ERROR,
            message: message.to_string(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        let code = match e {
            FormatError::AxiomViolation(_) => EXIT_AXIOMS,
            _ => EXIT_ERROR,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

struct Ctx<'a> {
    json: bool,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, value: &impl Serialize, human: impl Display) -> Result<(), Failure> {
        let written = if self.json {
            let text = serde_json::to_string(value).expect("plain data serializes");
            writeln!(self.out, "{text}")
        } else {
            writeln!(self.out, "{human}")
        };
        written.map_err(Failure::usage)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Ctx {
        json: cli.json,
        out,
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, ctx: &mut Ctx) -> Result<i32, Failure> {
    match command {
        Command::Algebra(a) => algebra(a, ctx),
        Command::Enforce {
            problem,
            k,
            strategy,
            counters,
            output,
        } => enforce(&problem.path, k, strategy, counters, &output, ctx),
        Command::Project {
            problem,
            scope,
            var,
            strategy,
            output,
        } => project_once(&problem.path, scope, var, strategy, &output, ctx),
        Command::Solve {
            problem,
            raw,
            threads,
        } => solve(&problem.path, raw, threads, ctx),
        Command::Consistency { problem, k } => consistency(&problem.path, k, ctx),
        Command::Equiv { a, b, threads } => equiv(&a, &b, threads, ctx),
        Command::Gen {
            algebra,
            vars,
            dom,
            constraints,
            max_arity,
            seed,
            output,
        } => {
            let alg = Arc::new(load_algebra(&read(&algebra)?)?);
            let p = gen_random_problem(alg, vars, dom, constraints, max_arity, seed)
                .map_err(Failure::usage)?;
            write(&output, &save_problem(&p))?;
            ctx.emit(
                &json!({"output": output, "constraints": p.constraint_count()}),
                format!(
                    "wrote {} constraints to {}",
                    p.constraint_count(),
                    output.display()
                ),
            )?;
            Ok(EXIT_OK)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn base_dir(path: &Path) -> Option<&Path> {
    path.parent().filter(|p| !p.as_os_str().is_empty())
}

fn load_normalized(path: &Path) -> Result<Normalized, Failure> {
    Ok(load_problem(&read(path)?, base_dir(path))?)
}

fn carrier_cap(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CARRIER_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{CARRIER_CAP_VAR}={v} is not a number"))),
        Err(_) => Ok(DEFAULT_CARRIER_CAP),
    }
}

fn algebra(command: AlgebraCommand, ctx: &mut Ctx) -> Result<i32, Failure> {
    match command {
        AlgebraCommand::Make {
            kind,
            n,
            cap,
            lattice,
            left,
            right,
            output,
        } => {
            let need_n = || n.ok_or_else(|| Failure::usage("this kind needs --n"));
            let built = match kind {
                Kind::Boolean => make_builtin(&Builtin::Boolean),
                Kind::Godel => make_builtin(&Builtin::GodelChain(need_n()?)),
                Kind::Lukasiewicz => make_builtin(&Builtin::LukasiewiczChain(need_n()?)),
                Kind::Weighted => make_builtin(&Builtin::Weighted(need_n()?)),
                Kind::Heyting => {
                    let path = lattice.ok_or_else(|| Failure::usage("heyting needs --lattice"))?;
                    let rows: Vec<Vec<u8>> =
                        serde_json::from_str(&read(&path)?).map_err(Failure::usage)?;
                    let rows: Vec<Vec<bool>> = rows
                        .into_iter()
                        .map(|r| r.into_iter().map(|b| b != 0).collect())
                        .collect();
                    let order = Order::from_rows(&rows).map_err(Failure::usage)?;
                    make_builtin(&Builtin::HeytingFromLattice(order))
                }
                Kind::Product => {
                    let (Some(l), Some(r)) = (left, right) else {
                        return Err(Failure::usage("product needs --left and --right"));
                    };
                    let l = load_algebra(&read(&l)?)?;
                    let r = load_algebra(&read(&r)?)?;
                    direct_product(&l, &r, carrier_cap(cap)?)
                }
            };
            let a = built.map_err(algebra_failure)?;
            write(&output, &save_algebra(&a))?;
            ctx.emit(
                &json!({"name": a.name(), "size": a.size(), "output": output}),
                format!(
                    "wrote {} ({} elements) to {}",
                    a.name(),
                    a.size(),
                    output.display()
                ),
            )?;
            Ok(EXIT_OK)
        }
        AlgebraCommand::Check { file, profile } => {
            let a = load_algebra_unchecked(&read(&file)?).map_err(|e| match e {
                FormatError::Algebra(inner) => algebra_failure(inner),
                other => other.into(),
            })?;
            let report = check_axioms(&a, profile);
            ctx.emit(&report, &report)?;
            Ok(if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_AXIOMS
            })
        }
        AlgebraCommand::Classify { file } => {
            let a = load_algebra(&read(&file)?)?;
            let flags = classify(&a);
            ctx.emit(
                &flags,
                format!(
                    "variety: {}\nprelinear: {}\nidempotent: {}\ninvolutive: {}\nchain: {}",
                    flags.variety, flags.prelinear, flags.idempotent, flags.involutive, flags.chain
                ),
            )?;
            Ok(EXIT_OK)
        }
    }
}

// Structural failures (not a lattice, no residuum) count as failed axioms;
// bad parameters are usage errors.
fn algebra_failure(e: AlgebraError) -> Failure {
    let code = match e {
        AlgebraError::BadParams(_)
        | AlgebraError::SizeOverflow { .. }
        | AlgebraError::Malformed(_) => EXIT_ERROR,
        _ => EXIT_AXIOMS,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn counters_text(c: &Counters) -> String {
    format!(
        "main loop iterations: {}\nproject calls: {}\ninner tuple iterations: {}",
        c.main_loop_iterations, c.project_calls, c.inner_tuple_iterations
    )
}

fn enforce(
    path: &Path,
    k: usize,
    strategy: Strategy,
    show_counters: bool,
    output: &Path,
    ctx: &mut Ctx,
) -> Result<i32, Failure> {
    let problem = match load_normalized(path)? {
        Normalized::Problem(p) => p,
        Normalized::Inconsistent { variable } => {
            ctx.emit(
                &json!({"status": "inconsistent", "variable": variable, "stage": "normalize"}),
                format!("inconsistent: every value of variable {variable} has cost ⊥"),
            )?;
            return Ok(EXIT_FOUND);
        }
    };
    let outcome = enforce_k_hyperarc(&problem, k, strategy).map_err(Failure::usage)?;
    let counters = show_counters.then_some(outcome.counters);
    let extra = counters
        .map(|c| format!("\n{}", counters_text(&c)))
        .unwrap_or_default();
    match outcome.result {
        Enforced::Consistent(p) => {
            write(output, &save_problem(&p))?;
            ctx.emit(
                &json!({"status": "consistent", "output": output, "counters": counters}),
                format!("consistent: wrote {}{extra}", output.display()),
            )?;
            Ok(EXIT_OK)
        }
        Enforced::Inconsistent { variable } => {
            ctx.emit(
                &json!({"status": "inconsistent", "variable": variable, "counters": counters}),
                format!("inconsistent: every value of variable {variable} reached ⊥{extra}"),
            )?;
            Ok(EXIT_FOUND)
        }
    }
}

fn project_once(
    path: &Path,
    scope: Vec<usize>,
    var: usize,
    strategy: Strategy,
    output: &Path,
    ctx: &mut Ctx,
) -> Result<i32, Failure> {
    let mut problem = match load_normalized(path)? {
        Normalized::Problem(p) => p,
        Normalized::Inconsistent { variable } => {
            return Err(Failure::usage(format!(
                "every value of variable {variable} has cost ⊥"
            )))
        }
    };
    let scope = Scope::new(scope).map_err(Failure::usage)?;
    let shrinks =
        project(&mut problem, &scope, var, &mut Selector::new(strategy)).map_err(Failure::usage)?;
    write(output, &save_problem(&problem))?;
    ctx.emit(
        &json!({"shrinks": shrinks, "output": output}),
        format!("domain shrinks: {shrinks}\nwrote {}", output.display()),
    )?;
    Ok(EXIT_OK)
}

fn oracle_config(threads: usize) -> OracleConfig {
    OracleConfig {
        threads: threads.max(1),
        ..OracleConfig::default()
    }
}

fn solution_text(s: &SolutionSet) -> String {
    let mut text = format!(
        "optimal values: {:?}\ninconsistent: {}\nsolutions: {}",
        s.optimal_values,
        s.inconsistent,
        s.solutions.len()
    );
    for t in &s.solutions {
        text.push_str(&format!("\n  {t:?}"));
    }
    text
}

fn solve(path: &Path, raw: bool, threads: usize, ctx: &mut Ctx) -> Result<i32, Failure> {
    let config = oracle_config(threads);
    let text = read(path)?;
    let solutions = if raw {
        brute_force_solve(&parse_raw_problem(&text, base_dir(path))?, &config)
    } else {
        match load_problem(&text, base_dir(path))? {
            Normalized::Problem(p) => brute_force_solve(&p, &config),
            Normalized::Inconsistent { variable } => {
                ctx.emit(
                    &json!({"inconsistent": true, "variable": variable}),
                    format!("inconsistent: every value of variable {variable} has cost ⊥"),
                )?;
                return Ok(EXIT_OK);
            }
        }
    }
    .map_err(Failure::usage)?;
    ctx.emit(&solutions, solution_text(&solutions))?;
    Ok(EXIT_OK)
}

fn consistency(path: &Path, k: usize, ctx: &mut Ctx) -> Result<i32, Failure> {
    let problem: Problem = match load_normalized(path)? {
        Normalized::Problem(p) => p,
        Normalized::Inconsistent { variable } => {
            ctx.emit(
                &json!({"status": "inconsistent", "variable": variable}),
                format!("inconsistent: every value of variable {variable} has cost ⊥"),
            )?;
            return Ok(EXIT_FOUND);
        }
    };
    let verdict = is_k_hyperarc_consistent(&problem, k).map_err(Failure::usage)?;
    ctx.emit(&verdict, &verdict)?;
    Ok(if verdict.is_consistent() {
        EXIT_OK
    } else {
        EXIT_FOUND
    })
}

fn equiv(a: &Path, b: &Path, threads: usize, ctx: &mut Ctx) -> Result<i32, Failure> {
    let pa = parse_raw_problem(&read(a)?, base_dir(a))?;
    let pb = parse_raw_problem(&read(b)?, base_dir(b))?;
    let verdict = check_equivalent(&pa, &pb, &oracle_config(threads)).map_err(Failure::usage)?;
    let human = match &verdict {
        Equivalence::Equal => "equal".to_owned(),
        Equivalence::Counterexample { tuple, left, right } => {
            format!("not equal at {tuple:?}: {left} vs {right}")
        }
    };
    ctx.emit(&verdict, human)?;
    Ok(if verdict.is_equal() {
        EXIT_OK
    } else {
        EXIT_FOUND
    })
}
