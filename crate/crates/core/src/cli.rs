//! The `genfactor` command line.
//!
//! Exit codes: 0 for yes / valid / consistent, 1 for no / invalid /
//! inconsistent, 2 for usage, file and format errors, 3 when the oracle runs
//! out of budget.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use crate::egcc::{check_consistency_with, parse_model, Consistency};
use crate::error::{Error, Result};
use crate::factor::{verify_factor, Decision};
use crate::format::{parse_factor, parse_instance, parse_list, serialize_factor, serialize_instance};
use crate::fpt::{solve, FastPath, SolveOptions};
use crate::gadgets::{double_selection_gadget, parse_pclique, reduce_clique, reduction_u_count, selection_gadget};
use crate::oracle::{enumerate_all_factors, solve_bruteforce, Budget};

#[derive(Parser, Debug)]
#[command(name = "genfactor", version, about = "General factors of bipartite edge-weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FastPathArg {
    Auto,
    On,
    Off,
}

impl From<FastPathArg> for FastPath {
    fn from(a: FastPathArg) -> Self {
        match a {
            FastPathArg::Auto => FastPath::Auto,
            FastPathArg::On => FastPath::On,
            FastPathArg::Off => FastPath::Off,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide an instance with singleton U-lists and print a factor.
    Solve {
        instance: PathBuf,
        /// Write the factor here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        fast_path: FastPathArg,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long)]
        deterministic: bool,
        /// Print search counters to stderr.
        #[arg(long)]
        stats: bool,
        /// Explore the whole search space.
        #[arg(long)]
        count_all: bool,
    },
    /// Check a factor against an instance.
    Verify { instance: PathBuf, factor: PathBuf },
    /// Exhaustive search.
    Oracle {
        instance: PathBuf,
        /// List every factor.
        #[arg(long)]
        enumerate: bool,
        /// Search-node budget.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
    },
    /// Check a cardinality-constraint model and print an assignment.
    Egcc {
        model: PathBuf,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Reductions to general factor instances.
    Reduce {
        #[command(subcommand)]
        what: ReduceCommand,
    },
    /// Solve every instance file in a directory.
    Bench {
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long, value_enum, default_value = "auto")]
        fast_path: FastPathArg,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// A selection gadget, or a double selection gadget with --rprime.
    Gadget {
        /// Comma-separated ascending values.
        #[arg(long = "A")]
        a: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        rprime: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum ReduceCommand {
    /// Reduce a partitioned clique instance.
    Clique { file: PathBuf },
}

enum Failure {
    /// Exit with this code after printing the message to stderr.
    Code(i32, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } => Failure::Code(3, e.to_string()),
            _ => Failure::Code(2, e.to_string()),
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Code(2, format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Code(c, m) => Failure::Code(c, format!("{}: {m}", path.display())),
    })
}

fn io(e: std::io::Error) -> Failure {
    Failure::Code(2, e.to_string())
}

/// Runs the command line with `args` (including the program name) and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Code(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> std::result::Result<i32, Failure> {
    match cmd {
        Command::Solve {
            instance,
            out: out_path,
            fast_path,
            parallel,
            deterministic,
            stats,
            count_all,
        } => {
            let inst = in_file(&instance, parse_instance(&read(&instance)?))?;
            let opts = SolveOptions {
                fast_path: fast_path.into(),
                workers: parallel,
                deterministic,
                count_all,
            };
            let (decision, st) = solve(&inst, &opts)?;
            if stats {
                write!(err, "{st}").map_err(io)?;
            }
            match decision {
                Decision::Yes(phi) => {
                    let text = serialize_factor(&phi);
                    match out_path {
                        Some(p) => {
                            std::fs::write(&p, text).map_err(|e| Failure::Code(2, format!("{}: {e}", p.display())))?;
                            writeln!(out, "yes").map_err(io)?;
                        }
                        None => out.write_all(text.as_bytes()).map_err(io)?,
                    }
                    Ok(0)
                }
                Decision::No => {
                    writeln!(out, "no").map_err(io)?;
                    Ok(1)
                }
            }
        }
        Command::Verify { instance, factor } => {
            let inst = in_file(&instance, parse_instance(&read(&instance)?))?;
            let phi = in_file(&factor, parse_factor(&read(&factor)?))?;
            match verify_factor(&inst, &phi)? {
                None => {
                    writeln!(out, "valid").map_err(io)?;
                    Ok(0)
                }
                Some(v) => {
                    writeln!(out, "invalid: {v}").map_err(io)?;
                    Ok(1)
                }
            }
        }
        Command::Oracle {
            instance,
            enumerate,
            budget,
            time_limit,
        } => {
            let inst = in_file(&instance, parse_instance(&read(&instance)?))?;
            let mut b = Budget::nodes(budget);
            if let Some(secs) = time_limit {
                let limit = Duration::try_from_secs_f64(secs)
                    .map_err(|e| Failure::Code(2, format!("--time-limit: {e}")))?;
                b = b.with_time_limit(limit);
            }
            if enumerate {
                let all = enumerate_all_factors(&inst, &b)?;
                writeln!(out, "c factors {}", all.len()).map_err(io)?;
                for phi in &all {
                    out.write_all(serialize_factor(phi).as_bytes()).map_err(io)?;
                }
                Ok(if all.is_empty() { 1 } else { 0 })
            } else {
                match solve_bruteforce(&inst, &b)? {
                    Decision::Yes(phi) => {
                        out.write_all(serialize_factor(&phi).as_bytes()).map_err(io)?;
                        Ok(0)
                    }
                    Decision::No => {
                        writeln!(out, "no").map_err(io)?;
                        Ok(1)
                    }
                }
            }
        }
        Command::Egcc { model, parallel } => {
            let m = in_file(&model, parse_model(&read(&model)?))?;
            let opts = SolveOptions {
                workers: parallel,
                ..SolveOptions::default()
            };
            match check_consistency_with(&m, &opts)? {
                Consistency::Consistent(a) => {
                    for (x, d) in a.iter() {
                        writeln!(out, "assign {x} {d}").map_err(io)?;
                    }
                    Ok(0)
                }
                Consistency::Inconsistent => {
                    writeln!(out, "inconsistent").map_err(io)?;
                    Ok(1)
                }
            }
        }
        Command::Gen {
            what: GenCommand::Gadget { a, r, rprime },
        } => {
            let a = parse_list(0, &a).map_err(|e| Failure::Code(2, format!("--A: {e}")))?;
            let mut text = String::new();
            let inst = match rprime {
                None => {
                    let g = selection_gadget(&a, r)?;
                    let _ = writeln!(text, "# selection gadget A={} r={}", g.a, g.r);
                    let _ = writeln!(text, "# hub {}", g.hub);
                    for v in &g.outputs {
                        let _ = writeln!(text, "# output {v}");
                    }
                    g.instance
                }
                Some(rp) => {
                    let g = double_selection_gadget(&a, r, rp)?;
                    let _ = writeln!(text, "# double selection gadget A={} r={} r'={} N={}", g.a, g.r, g.r_prime, g.n);
                    let _ = writeln!(text, "# lower hub {}, upper hub {}, q {}", g.lower_hub, g.upper_hub, g.q);
                    for v in &g.lower_outputs {
                        let _ = writeln!(text, "# lower output {v}");
                    }
                    for v in &g.upper_outputs {
                        let _ = writeln!(text, "# upper output {v}");
                    }
                    g.instance
                }
            };
            text.push_str(&serialize_instance(&inst));
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Reduce {
            what: ReduceCommand::Clique { file },
        } => {
            let g = in_file(&file, parse_pclique(&read(&file)?))?;
            let h = reduce_clique(&g)?;
            writeln!(
                out,
                "# reduction of partitioned clique k={} n={}: |U|={} (k*n*(n+2)={}), |V|={}",
                g.k(),
                g.n(),
                h.num_u(),
                reduction_u_count(g.k(), g.n()),
                h.num_v()
            )
            .map_err(io)?;
            out.write_all(serialize_instance(&h).as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Bench {
            dir,
            parallel,
            fast_path,
        } => bench(&dir, parallel, fast_path.into(), out),
    }
}

fn bench(dir: &Path, parallel: usize, fast_path: FastPath, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let entries = std::fs::read_dir(dir).map_err(|e| Failure::Code(2, format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let opts = SolveOptions {
        fast_path,
        workers: parallel,
        deterministic: true,
        count_all: false,
    };
    for path in files {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let parsed = std::fs::read_to_string(&path)
            .map_err(|e| e.to_string())
            .and_then(|t| parse_instance(&t).map_err(|e| e.to_string()));
        let inst = match parsed {
            Ok(i) => i,
            Err(e) => {
                writeln!(out, "{name} error=\"{e}\"").map_err(io)?;
                continue;
            }
        };
        let start = Instant::now();
        let result = solve(&inst, &opts);
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match result {
            Ok((d, st)) => {
                let stats: Vec<String> = st.to_string().lines().filter(|l| !l.starts_with("outcome=")).map(str::to_owned).collect();
                writeln!(
                    out,
                    "{name} decision={} {} time_ms={ms:.3}",
                    if d.is_yes() { "yes" } else { "no" },
                    stats.join(" ")
                )
                .map_err(io)?;
            }
            Err(e) => writeln!(out, "{name} error=\"{e}\"").map_err(io)?,
        }
    }
    Ok(0)
}
