//! `help-zc`: verify the Zassenhaus conjecture for torsion units of an
//! integral group ring with the HeLP method.
//!
//! Exit codes: 0 verified, 2 open orders remain (or the method cannot
//! decide), 3 data or validation error, 4 configuration error.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use help_core::constraints::Toggles;
use help_core::data::{self, DataError};
use help_core::report::{Report, Scope, Verdict};
use help_core::solver::{verify_with_quotients, SolveError, SolveOptions, ZcStatus};
use help_core::GroupData;

const EXIT_OPEN: u8 = 2;
const EXIT_DATA: u8 = 3;
const EXIT_CONFIG: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "help-zc", version, about = "HeLP verification of rational conjugacy of torsion units")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a group file against every data invariant.
    Validate { file: PathBuf },
    /// Solve a single unit order (and, implicitly, its divisors).
    Solve {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        order: u64,
    },
    /// Decide ZC1 for every candidate unit order.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Restrict to these orders and their divisors.
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<u64>>,
    },
    /// Rewrite a valid group file in canonical form.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    /// Group file, file stem in $HELP_ZC_DATA_DIR, or bundled group name.
    #[arg(long)]
    group: String,
    /// Files for quotient groups named by the group's fusion links.
    #[arg(long = "quotient")]
    quotients: Vec<PathBuf>,
    /// Constraint ingredients, e.g. `ordinary,fusion,order_divisibility` or `all,no-modular`.
    #[arg(long, value_delimiter = ',')]
    toggles: Option<Vec<String>>,
    /// Primes whose Brauer characters are used (overrides --toggles).
    #[arg(long, value_delimiter = ',')]
    modular: Option<Vec<u64>>,
    /// Restrict the ordinary characters to these ids.
    #[arg(long, value_delimiter = ',')]
    characters: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Solve power assignments on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CONFIG,
            message: format!("configuration error: {}", message.into()),
        }
    }
}

impl From<DataError> for Failure {
    fn from(e: DataError) -> Self {
        let message = match &e {
            DataError::Io { .. } => format!("I/O error: {e}"),
            DataError::Group { source, .. } => match source.invariant() {
                Some(inv) => format!("validation error [{}]: {e}", inv.name()),
                None => format!("data error: {e}"),
            },
            DataError::Unknown(_) => format!("data error: {e}"),
        };
        Failure {
            code: EXIT_DATA,
            message,
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match &e {
            SolveError::Config(_) | SolveError::Constraint(_) => EXIT_CONFIG,
            SolveError::Dependency(_) => EXIT_DATA,
            SolveError::Unbounded(_) | SolveError::Overflow => EXIT_OPEN,
        };
        Failure {
            code,
            message: format!("error: {e}"),
        }
    }
}

fn parse_toggles(g: &GroupData, run: &RunArgs) -> Result<Toggles, Failure> {
    let mut t = Toggles::full(g);
    if let Some(list) = &run.toggles {
        let all = Toggles::full(g);
        let none = Toggles {
            ordinary: false,
            modular: Vec::new(),
            fusion: false,
            berman_higman: false,
            order_divisibility: false,
            cohn_livingstone: false,
            central_translation: false,
            characters: None,
        };
        t = none.clone();
        for raw in list {
            let tok = raw.trim();
            let (on, name) = match tok.strip_prefix("no-") {
                Some(rest) => (false, rest),
                None => (true, tok),
            };
            match name {
                "all" if on => t = all.clone(),
                "none" if on => t = none.clone(),
                "ordinary" => t.ordinary = on,
                "modular" => t.modular = if on { all.modular.clone() } else { Vec::new() },
                "fusion" => t.fusion = on,
                "berman-higman" => t.berman_higman = on,
                "order-divisibility" | "remark2" => t.order_divisibility = on,
                "cohn-livingstone" => t.cohn_livingstone = on,
                "central-translation" => t.central_translation = on,
                _ => match name.strip_prefix("modular:") {
                    Some(p) if on => {
                        let p: u64 = p
                            .parse()
                            .map_err(|_| Failure::config(format!("bad prime in toggle {tok:?}")))?;
                        if !t.modular.contains(&p) {
                            t.modular.push(p);
                        }
                    }
                    _ => return Err(Failure::config(format!("unknown toggle {tok:?}"))),
                },
            }
        }
    }
    if let Some(ps) = &run.modular {
        t.modular = ps.clone();
    }
    for &p in &t.modular {
        if !help_core::arith::is_prime(p) {
            return Err(Failure::config(format!("{p} is not a prime")));
        }
    }
    t.modular.sort_unstable();
    t.modular.dedup();
    if let Some(cs) = &run.characters {
        for c in cs {
            if g.character(c).is_none() {
                return Err(Failure::config(format!("{} has no character {c:?}", g.name)));
            }
        }
        t.characters = Some(cs.clone());
    }
    Ok(t)
}

fn emit(out: Option<&Path>, body: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, body).map_err(|e| Failure {
            code: EXIT_DATA,
            message: format!("I/O error: cannot write {}: {e}", p.display()),
        }),
        None => {
            let mut so = std::io::stdout().lock();
            // a closed pipe is not worth a failure
            let _ = so.write_all(body.as_bytes());
            Ok(())
        }
    }
}

fn run_solver(run: &RunArgs, orders: Option<Vec<u64>>) -> Result<(Report, u8), Failure> {
    let g = data::resolve(&run.group)?;
    let mut extra = Vec::new();
    for p in &run.quotients {
        extra.push(data::load_file(p)?);
    }
    let toggles = parse_toggles(&g, run)?;
    let scope = if orders.is_some() { Scope::Partial } else { Scope::Complete };
    let options = SolveOptions {
        toggles,
        parallel: !run.sequential && cfg!(feature = "parallel"),
        orders: orders.clone(),
    };
    let resolve = |name: &str| -> Result<GroupData, String> {
        if let Some(q) = extra.iter().find(|q| q.name == name) {
            return Ok(q.clone());
        }
        data::resolve(name).map_err(|e| format!("quotient {name}: {e}"))
    };
    let start = Instant::now();
    let (v, qs) = verify_with_quotients(&g, &resolve, &options)?;
    let elapsed = start.elapsed();
    let report = Report::new(&g, &v, &qs, scope);
    let code = match &orders {
        Some(os) => {
            let open = os.iter().any(|o| v.orders.get(o).is_some_and(|x| x.status == ZcStatus::Open));
            if open { EXIT_OPEN } else { 0 }
        }
        None if report.zc1 == Verdict::Verified => 0,
        None => EXIT_OPEN,
    };
    let body = match run.format {
        Format::Json => report.to_json(),
        Format::Text => {
            let mut s = report.to_text();
            s.push_str(&format!("elapsed: {:.3} s\n", elapsed.as_secs_f64()));
            s
        }
    };
    emit(run.out.as_deref(), &body)?;
    Ok((report, code))
}

fn validate(file: &Path) -> Result<u8, Failure> {
    let g = data::load_file(file)?;
    let mut lines = vec![format!(
        "{}: valid — {} (order {}, {} classes, {} characters, {} Brauer table(s))",
        file.display(),
        g.name,
        g.order,
        g.num_classes(),
        g.characters.len(),
        g.brauer.len()
    )];
    for link in &g.quotients {
        match data::resolve(&link.quotient_name) {
            Ok(q) => {
                g.check_link(link, &q).map_err(|source| {
                    Failure::from(DataError::Group {
                        path: file.display().to_string(),
                        source,
                    })
                })?;
                lines.push(format!("  fusion to {}: consistent", q.name));
            }
            Err(e) => lines.push(format!("  fusion to {}: not checked ({e})", link.quotient_name)),
        }
    }
    println!("{}", lines.join("\n"));
    Ok(0)
}

fn normalize(file: &Path, out: Option<&Path>) -> Result<u8, Failure> {
    let g = data::load_file(file)?;
    emit(out, &g.to_json_string())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Normalize { file, out } => normalize(file, out.as_deref()),
        Command::Solve { run, order } => run_solver(run, Some(vec![*order])).map(|(_, c)| c),
        Command::Verify { run, orders } => run_solver(run, orders.clone()).map(|(_, c)| c),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("help-zc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
