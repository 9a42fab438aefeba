//! The `cayley` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::framework::{
    differential_fuzz, linearity_bench, nonqg_family, quadratic_bench, quasigeodesic_probe, word_problem, word_to_nf,
    GroupId, Mutation, Representation,
};
use crate::gen::{parse_word, Gen};
use crate::tapevm::render;
use crate::thompson::Case;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_FAULT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "cayley", version, about = "Normal forms and linear-time multiplication on 2-tape machines")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum)]
    group: GroupId,
    /// Output format (reports default to json, the rest to text).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BenchMode {
    /// Steps of one generator program against normal form length.
    Linear,
    /// Total steps of computing a normal form from a word.
    Quadratic,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Normal form of a generator word.
    Normalize {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Multiply a normal form by one generator.
    Mul {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        nf: String,
        #[arg(long, allow_hyphen_values = true)]
        gen: String,
    },
    /// Decide whether a word is the identity.
    Wp {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Random walks checked against the reference model.
    Fuzz {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 200)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip one branch of the x1- program (e.g. 2.2.2b).
        #[arg(long)]
        disable_case: Option<String>,
    },
    /// Step counts against input size.
    Bench {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = BenchMode::Linear)]
        mode: BenchMode,
        #[arg(long, allow_hyphen_values = true)]
        gen: Option<String>,
        /// Comma-separated, strictly increasing.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Append a quadratic-time pass to the generator program.
        #[arg(long)]
        mutant: bool,
    },
    /// Normal form length against random walk length.
    Probe {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [500, 2000])]
        checkpoints: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Normal form length of a lamp at (k, k) (z2wrz2 only).
    DemoNonqg {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_values_t = [10, 20, 30, 40, 50, 60, 70, 80, 90, 100])]
        ks: Vec<u64>,
    },
}

enum Failure {
    Usage(String),
    Rejected(String),
    Fault(String),
    /// The command ran but its verdict is negative; output was written.
    Verdict,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotInLanguage(_) | Error::BadWord(_) => Failure::Rejected(e.to_string()),
            _ => Failure::Fault(e.to_string()),
        }
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let text = e.render().ansi().to_string();
            return if matches!(e.kind(), DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = write!(out, "{text}");
                if e.kind() == DisplayHelpOnMissingArgumentOrSubcommand {
                    EXIT_USAGE
                } else {
                    EXIT_OK
                }
            } else {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            };
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Verdict) => EXIT_REJECTED,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}\n\nFor more information, try '--help'.");
            EXIT_USAGE
        }
        Err(Failure::Rejected(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_REJECTED
        }
        Err(Failure::Fault(m)) => {
            let _ = writeln!(err, "internal error: {m}");
            EXIT_FAULT
        }
    }
}

fn emit(common: &Common, out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    let r = match &common.out {
        Some(p) => std::fs::write(p, text),
        None => out.write_all(text.as_bytes()),
    };
    r.map_err(|e| Failure::Fault(format!("write failed: {e}")))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn parse_gen(rep: &Representation, s: &str) -> Result<Gen, Failure> {
    let g: Gen = s.parse()?;
    if !rep.gens().contains(&g) {
        return Err(Failure::Rejected(format!("{g} is not a generator of {}", rep.group)));
    }
    Ok(g)
}

fn dispatch(cmd: Cmd, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Cmd::Normalize { common, word } => {
            let rep = Representation::new(common.group);
            let nf = word_to_nf(&rep, &parse_word(&word)?)?.nf;
            let text = match common.format {
                Some(Format::Json) => json(&serde_json::json!({ "nf": render(&nf) })),
                _ => format!("{}\n", render(&nf)),
            };
            emit(&common, out, &text)
        }
        Cmd::Mul { common, nf, gen } => {
            let rep = Representation::new(common.group);
            let g = parse_gen(&rep, &gen)?;
            let run = rep.apply(&rep.parse_nf(&nf)?, g)?;
            let text = match common.format {
                Some(Format::Json) => json(&serde_json::json!({ "nf": render(&run.output), "steps": run.steps })),
                _ => format!("{}\nsteps {}\n", render(&run.output), run.steps),
            };
            emit(&common, out, &text)
        }
        Cmd::Wp { common, word } => {
            let rep = Representation::new(common.group);
            let trivial = word_problem(&rep, &parse_word(&word)?)?;
            let text = match common.format {
                Some(Format::Json) => json(&serde_json::json!({ "trivial": trivial })),
                _ => format!("{}\n", if trivial { "trivial" } else { "nontrivial" }),
            };
            emit(&common, out, &text)
        }
        Cmd::Fuzz { common, trials, max_len, seed, disable_case } => {
            let mut rep = Representation::new(common.group);
            if let Some(label) = disable_case {
                if common.group != GroupId::ThompsonF {
                    return Err(Failure::Usage("--disable-case applies to thompson-f only".into()));
                }
                let c: Case = label.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
                rep = rep.with_mutation(Mutation::DisableCase(c));
            }
            let report = differential_fuzz(&rep, trials, max_len, seed);
            let text = match common.format {
                Some(Format::Text) => {
                    let mut s = format!(
                        "group {}\ntrials {}\nsamples {}\npassed {}\n",
                        report.group, report.trials, report.samples, report.passed
                    );
                    for (case, n) in &report.coverage {
                        s += &format!("case {case} {n}\n");
                    }
                    if let Some(w) = &report.witness {
                        s += &format!("witness word: {}\nwitness reason: {}\n", w.word, w.reason);
                    }
                    s
                }
                _ => json(&report),
            };
            emit(&common, out, &text)?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Verdict)
            }
        }
        Cmd::Bench { common, mode, gen, sizes, samples, seed, mutant } => {
            let mut rep = Representation::new(common.group);
            if let Some(s) = &sizes {
                if s.is_empty() || !s.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Failure::Usage("--sizes must be strictly increasing".into()));
                }
            }
            let (text, verdict) = match mode {
                BenchMode::Linear => {
                    let g = match gen {
                        Some(g) => parse_gen(&rep, &g)?,
                        None => return Err(Failure::Usage("--gen is required for --mode linear".into())),
                    };
                    if mutant {
                        rep = rep.with_mutation(Mutation::Quadratic(g));
                    }
                    let sizes = sizes.unwrap_or_else(|| (6..=14).map(|k| 1 << k).collect());
                    let r = linearity_bench(&rep, g, &sizes, samples, seed);
                    let text = match common.format {
                        Some(Format::Text) => {
                            let mut s = format!("group {} gen {}\n{:>8} {:>12} {:>10}\n", r.group, r.gen, "n", "max_steps", "ratio");
                            for row in &r.sizes {
                                s += &format!("{:>8} {:>12} {:>10.3}\n", row.n, row.max_steps, row.max_ratio);
                            }
                            s + &format!("slope {:.3}\nverdict {}\n", r.slope, r.verdict)
                        }
                        _ => json(&r),
                    };
                    (text, r.verdict)
                }
                BenchMode::Quadratic => {
                    if mutant || gen.is_some() {
                        return Err(Failure::Usage("--gen and --mutant apply to --mode linear only".into()));
                    }
                    let sizes = sizes.unwrap_or_else(|| (5..=11).map(|k| 1 << k).collect());
                    let r = quadratic_bench(&rep, &sizes, samples, seed);
                    let text = match common.format {
                        Some(Format::Text) => {
                            let mut s = format!("group {}\n{:>8} {:>12} {:>10}\n", r.group, "n", "max_steps", "steps/n^2");
                            for row in &r.sizes {
                                s += &format!("{:>8} {:>12} {:>10.3}\n", row.n, row.max_steps, row.max_ratio);
                            }
                            s + &format!("verdict {}\n", r.verdict)
                        }
                        _ => json(&r),
                    };
                    (text, r.verdict)
                }
            };
            emit(&common, out, &text)?;
            if verdict {
                Ok(())
            } else {
                Err(Failure::Verdict)
            }
        }
        Cmd::Probe { common, trials, checkpoints, seed } => {
            if checkpoints.is_empty() || !checkpoints.windows(2).all(|w| w[0] < w[1]) {
                return Err(Failure::Usage("--checkpoints must be strictly increasing".into()));
            }
            let r = quasigeodesic_probe(&Representation::new(common.group), trials, &checkpoints, seed);
            let text = match common.format {
                Some(Format::Text) => {
                    let mut s = format!("group {} trials {}\n{:>8} {:>10}\n", r.group, r.trials, "walk", "max_ratio");
                    for row in &r.rows {
                        s += &format!("{:>8} {:>10.3}\n", row.walk_len, row.max_ratio);
                    }
                    s + &format!("plateau {}\n", r.plateau)
                }
                _ => json(&r),
            };
            emit(&common, out, &text)
        }
        Cmd::DemoNonqg { common, ks } => {
            if common.group != GroupId::Z2WrZ2 {
                return Err(Failure::Usage("demo-nonqg applies to z2wrz2 only".into()));
            }
            let rows = nonqg_family(&ks);
            let text = match common.format {
                Some(Format::Json) => json(&rows),
                _ => {
                    let mut s = format!("{:>5} {:>9} {:>8} {:>8}\n", "k", "word_len", "nf_len", "ratio");
                    for r in &rows {
                        s += &format!("{:>5} {:>9} {:>8} {:>8.2}\n", r.k, r.word_len, r.nf_len, r.ratio);
                    }
                    s
                }
            };
            emit(&common, out, &text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("cayley").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn mul_and_normalize() {
        assert_eq!(cli(&["mul", "--group", "z2wrz2", "--nf", "C0", "--gen", "a"]).1.lines().next(), Some("0C0"));
        assert_eq!(cli(&["normalize", "--group", "z2wrf2", "--word", ""]), (0, "B0\n".into(), String::new()));
        assert_eq!(cli(&["wp", "--group", "z2wrz2", "--word", "c c"]).1, "trivial\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(cli(&["mul", "--group", "thompson-f", "--nf", "ab", "--gen", "x0"]).0, EXIT_REJECTED);
        assert_eq!(cli(&["wp", "--group", "thompson-f", "--word", "a"]).0, EXIT_REJECTED);
        assert_eq!(cli(&["wp", "--word", "x0"]).0, EXIT_USAGE);
        assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(cli(&["--help"]).0, EXIT_OK);
        assert_eq!(cli(&["demo-nonqg", "--group", "thompson-f"]).0, EXIT_USAGE);
    }
}
