use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use glmn_crystal::combicrystal::{KacCrystal, OddSet, OddSetCrystal};
use glmn_crystal::graph::{self, CrystalGraph};
use glmn_crystal::limitcrystal::{components, is_dominant, BInfCrystal, BInfElt, XCrystal, XElt};
use glmn_crystal::verify::{self, SuiteReport, VerifyConfig};
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Verify(#[from] verify::VerifyError),
    #[error(transparent)]
    Limit(#[from] glmn_crystal::limitcrystal::LimitError),
    #[error(transparent)]
    Crystal(#[from] glmn_crystal::combicrystal::CrystalError),
    #[error("writing output: {0}")]
    Io(#[from] io::Error),
}

#[derive(Parser)]
#[command(name = "glmn", version, about = "Crystal bases for quantum gl(m|n)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Export a crystal graph.
    Graph {
        target: Target,
        #[command(flatten)]
        common: Common,
        /// Start from a named element instead of the highest element.
        #[arg(long)]
        from: Option<Start>,
        /// Number of e/f steps explored around `--from`.
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Count and label the connected components of B(infinity).
    Components {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Height truncation.
    #[arg(long, default_value_t = 3)]
    cap: usize,
    /// Comma separated dominant weight with m + n entries.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Binf,
    Kac,
    Xlambda,
    Oddset,
}

#[derive(Clone, Copy, ValueEnum)]
enum Start {
    /// The (3,4) sample element.
    Example,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

impl Common {
    fn lambda(&self) -> Result<Option<Vec<i64>>, CliError> {
        let Some(raw) = &self.lambda else {
            return Ok(None);
        };
        let v: Vec<i64> = raw
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|e| CliError::Usage(format!("bad lambda entry `{x}`: {e}")))
            })
            .collect::<Result<_, _>>()?;
        if v.len() != self.m + self.n {
            return Err(CliError::Usage(format!(
                "lambda needs {} entries, got {}",
                self.m + self.n,
                v.len()
            )));
        }
        if !is_dominant(self.m, &v) {
            return Err(CliError::Usage(format!("lambda {v:?} is not dominant")));
        }
        Ok(Some(v))
    }

    fn lambda_or_zero(&self) -> Result<Vec<i64>, CliError> {
        Ok(self.lambda()?.unwrap_or_else(|| vec![0; self.m + self.n]))
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(p) => fs::write(p, text)?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn build_graph(
    target: Target,
    c: &Common,
    from: Option<Start>,
    depth: usize,
) -> Result<CrystalGraph, CliError> {
    if from.is_some() && !matches!(target, Target::Binf) {
        return Err(CliError::Usage("--from is only available for binf".into()));
    }
    Ok(match target {
        Target::Oddset => {
            if c.m * c.n > 20 {
                return Err(CliError::Usage("odd set graph needs m*n <= 20".into()));
            }
            let all: Vec<OddSet> = OddSet::all(c.m, c.n).collect();
            graph::build(&OddSetCrystal { m: c.m, n: c.n }, &all, graph::oddset_label)
        }
        Target::Kac => {
            let kc = KacCrystal {
                m: c.m,
                n: c.n,
                lambda: c.lambda_or_zero()?,
            };
            let elts = kc.elements()?;
            graph::build(&kc, &elts, graph::kac_label)
        }
        Target::Xlambda => {
            let lambda = c.lambda_or_zero()?;
            let elts = XElt::all_up_to(c.m, c.n, &lambda, c.cap);
            graph::build(
                &XCrystal {
                    m: c.m,
                    n: c.n,
                    lambda,
                },
                &elts,
                graph::x_label,
            )
        }
        Target::Binf => match from {
            Some(Start::Example) => {
                let (b, _) = verify::sample_element();
                let bc = BInfCrystal { m: b.m(), n: b.n() };
                let elts = graph::ball(&bc, b, depth);
                graph::build(&bc, &elts, graph::binf_label)
            }
            None => {
                let bc = BInfCrystal { m: c.m, n: c.n };
                let elts = BInfElt::all_up_to(c.m, c.n, c.cap);
                graph::build(&bc, &elts, graph::binf_label)
            }
        },
    })
}

fn report_text(r: &SuiteReport) -> String {
    let mut s = format!("suite {}\n", r.suite);
    for c in &r.checks {
        s.push_str(&format!(
            "  [{}] {}: {}\n",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    s
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.cmd {
        Cmd::Graph {
            target,
            common,
            from,
            depth,
        } => {
            let g = build_graph(target, &common, from, depth)?;
            let text = match common.format {
                Format::Dot => g.to_dot(),
                Format::Json => serde_json::to_string_pretty(&g.to_json()).expect("json") + "\n",
                Format::Text => g.to_text(),
            };
            common.emit(&text)?;
            Ok(true)
        }
        Cmd::Verify { suite, common } => {
            let cfg = VerifyConfig {
                m: common.m,
                n: common.n,
                cap: common.cap,
                lambda: common.lambda()?,
            };
            let names: Vec<&str> = if suite == "all" {
                verify::SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let reports = names
                .iter()
                .map(|s| verify::run_suite(s, &cfg))
                .collect::<Result<Vec<_>, _>>()?;
            let ok = reports.iter().all(SuiteReport::passed);
            let text = match common.format {
                Format::Json => serde_json::to_string_pretty(&reports).expect("json") + "\n",
                _ => reports.iter().map(report_text).collect(),
            };
            common.emit(&text)?;
            Ok(ok)
        }
        Cmd::Components { common } => {
            let census = components(common.m, common.n, common.cap)?;
            let ok = census.count as u64 == census.expected && census.isomorphism_checked;
            let text = match common.format {
                Format::Json => serde_json::to_string_pretty(&census).expect("json") + "\n",
                _ => {
                    let mut s = format!(
                        "gl({}|{}): {} components (expected {}), isomorphism to depth {}: {}\n",
                        census.m,
                        census.n,
                        census.count,
                        census.expected,
                        census.cap,
                        census.isomorphism_checked
                    );
                    for (label, size) in &census.sizes {
                        s.push_str(&format!(
                            "  {}  {} elements up to height {}\n",
                            graph::oddset_label(label),
                            size,
                            census.cap
                        ));
                    }
                    s
                }
            };
            common.emit(&text)?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
