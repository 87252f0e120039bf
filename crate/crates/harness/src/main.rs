use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tk_core::decomposition::{gallai_partition, quotient, scc_order, tilde_partition};
use tk_core::diamonds::all_center_counts;
use tk_core::enumerate::enumerate_canonical;
use tk_core::families::{gen_named, NamedShape};
use tk_core::hypomorphy::self_dual_profile;
use tk_core::shape::classify_shape;
use tk_core::{are_isomorphic, Tournament};
use tk_harness::catalogs::catalog_file;
use tk_harness::suites::reconstruction::omega_report;
use tk_harness::{run_suite, HarnessError, Mode, Params, SUITES};

#[derive(Parser)]
#[command(name = "tk", version, about = "Tournament enumeration, analysis and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Write the catalog of n-vertex classes as a .tkc file.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (overrides TK_JOBS).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run a verification suite and print its report.
    Verify {
        /// Suite name; see --list.
        #[arg(required_unless_present = "list")]
        suite: Option<String>,
        /// Print every suite with the statement it checks.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        catalog_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Report runtime_ms as 0 so reports compare byte for byte.
        #[arg(long)]
        omit_timing: bool,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the structure of the tournament in a .tk file.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Determine Omega_m from the catalogs on m-2 and m-1 vertices.
    Omega {
        #[arg(long)]
        m: usize,
        /// Directory holding cat<N>.tkc; missing catalogs are enumerated.
        #[arg(long)]
        catalog_dir: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a named tournament in .tk form.
    Gen {
        name: NamedShape,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Violations,
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<tk_core::Error> for Failure {
    fn from(e: tk_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn set_jobs(jobs: Option<usize>) -> Result<(), Failure> {
    let jobs = match jobs {
        Some(j) => Some(j),
        None => match std::env::var("TK_JOBS") {
            Ok(v) => Some(v.parse().map_err(|_| Failure::Usage(format!("TK_JOBS must be a number, got {v:?}")))?),
            Err(_) => None,
        },
    };
    if let Some(j) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn names_of(t: &Tournament) -> Vec<&'static str> {
    NamedShape::ALL
        .iter()
        .filter(|&&s| gen_named(s, t.n()).is_ok_and(|g| are_isomorphic(&g, t).unwrap_or(false)))
        .map(|s| s.as_str())
        .collect()
}

fn analyze(t: &Tournament) -> Result<String, Failure> {
    let mut lines = vec![format!("tournament: {}", t.to_tk())];
    lines.push(format!("shape: {}", classify_shape(t)));
    if t.n() >= 2 {
        let p = gallai_partition(t)?;
        let q = quotient(t, &p)?;
        lines.push(format!("partition P: {p}"));
        lines.push(format!("partition P~: {}", tilde_partition(t)?));
        let named = names_of(&q);
        let suffix = if named.is_empty() { String::new() } else { format!(" ~ {}", named.join(", ")) };
        lines.push(format!("quotient: {} shape={}{suffix}", q.to_tk(), classify_shape(&q)));
    }
    let sccs: Vec<String> = scc_order(t).iter().map(|s| s.render()).collect();
    lines.push(format!("scc order: {}", sccs.join(" | ")));
    lines.push("diamond centers v: (plus, minus)".into());
    for (v, (p, m)) in all_center_counts(t).into_iter().enumerate() {
        lines.push(format!("  {v}: ({p}, {m})"));
    }
    let profile = self_dual_profile(t, t.n().min(4))?;
    lines.push(format!("self dual: {}", yes(profile.self_dual)));
    lines.push(format!("strongly self dual: {}", yes(profile.strongly_self_dual)));
    for (k, b) in &profile.minus {
        lines.push(format!("{{-{k}}}-self dual: {}", yes(*b)));
    }
    for (k, b) in &profile.up_to {
        lines.push(format!("(<={k})-self dual: {}", yes(*b)));
    }
    let mut s = lines.join("\n");
    s.push('\n');
    Ok(s)
}

fn read_tk(path: &Path) -> Result<Tournament, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Failure::Usage(format!("{}: no tournament", path.display())))?;
    Ok(Tournament::parse_tk(line)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Enumerate { n, out, jobs } => {
            set_jobs(jobs)?;
            let c = enumerate_canonical(n)?;
            c.write(&out)?;
            eprintln!("{} classes on {n} vertices written to {}", c.len(), out.display());
            Ok(())
        }
        Command::Verify {
            suite,
            list,
            n,
            catalog,
            catalog_dir,
            seed,
            trials,
            mode,
            format,
            omit_timing,
            jobs,
            out,
        } => {
            if list {
                let text = match format {
                    Format::Text => SUITES
                        .iter()
                        .map(|s| format!("{}: {}\n  coverage: {}\n", s.name, s.statement, s.coverage))
                        .collect::<String>(),
                    Format::Json => {
                        let rows: Vec<_> = SUITES
                            .iter()
                            .map(|s| serde_json::json!({"suite": s.name, "statement": s.statement, "coverage": s.coverage}))
                            .collect();
                        serde_json::to_string_pretty(&rows).expect("serializable") + "\n"
                    }
                };
                return emit(&text, out.as_deref());
            }
            set_jobs(jobs)?;
            let params = Params {
                n,
                seed,
                trials,
                mode,
                catalog,
                catalog_dir,
            };
            let name = suite.expect("clap requires a suite unless --list");
            let mut report = run_suite(&name, &params)?;
            if omit_timing {
                report = report.without_timing();
            }
            let text = match format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            emit(&text, out.as_deref())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Violations)
            }
        }
        Command::Analyze { input } => {
            let t = read_tk(&input)?;
            emit(&analyze(&t)?, None)
        }
        Command::Omega { m, catalog_dir, out } => {
            if m < 8 {
                return Err(Failure::Usage(format!("omega needs m >= 8, got {m}")));
            }
            for k in [m - 2, m - 1] {
                if !catalog_file(&catalog_dir, k).exists() {
                    eprintln!("{} missing, enumerating", catalog_file(&catalog_dir, k).display());
                }
            }
            let params = Params {
                catalog_dir: Some(catalog_dir),
                ..Params::default()
            };
            let report = omega_report(m, &params)?;
            eprintln!("{}", report.conclusion);
            let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
            emit(&text, out.as_deref())
        }
        Command::Gen { name, n, out } => {
            let t = gen_named(name, n)?;
            emit(&(t.to_tk() + "\n"), out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violations) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
