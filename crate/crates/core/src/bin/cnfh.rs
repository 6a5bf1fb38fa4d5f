use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use cnf_hierarchy::compile::{answer_query, k_base, k_base_exhaustive, Query};
use cnf_hierarchy::dimacs::emit_dimacs_with_comments;
use cnf_hierarchy::experiment::{
    generate, run_separation, selftest, write_rows, Config, ExperimentSpec, Family, Format,
};
use cnf_hierarchy::hardness::hardness_report;
use cnf_hierarchy::mpsdope::{dope, mps_enumerate, mps_via_doping};
use cnf_hierarchy::primes::{essential_primes, prime_implicants, prime_implicates};
use cnf_hierarchy::trigger::{matching_number, transversal_number, trigger_hypergraph};
use cnf_hierarchy::{parse_dimacs, Clause, ClauseSet, Error, Limits, PartialAssignment, Result};

#[derive(Parser)]
#[command(
    name = "cnfh",
    version,
    about = "Hardness measures, prime implicates and separation experiments for CNF"
)]
struct Cli {
    /// key = value file with caps; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Variable cap for the SAT oracle and p-hardness.
    #[arg(long, global = true)]
    cap_vars: Option<usize>,
    /// Cap on the number of prime implicates.
    #[arg(long, global = true)]
    cap_primes: Option<usize>,
    /// csv, json or table.
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Output file (stdout if absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a member of a family as DIMACS, plus JSON metadata next to --out.
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Height, or n for g_n.
        #[arg(long)]
        h: usize,
    },
    /// Hardness measures of a DIMACS file.
    Measure { input: PathBuf },
    /// Prime implicates (or implicants, or the essential primes).
    Primes {
        input: PathBuf,
        #[arg(long)]
        implicants: bool,
        #[arg(long)]
        essential: bool,
    },
    /// Minimal premise sets.
    Mps {
        input: PathBuf,
        /// Read them off the primes of the doped clause-set.
        #[arg(long)]
        via_doping: bool,
    },
    /// The doped clause-set.
    Dope { input: PathBuf },
    /// Trigger hypergraph with transversal and matching numbers.
    Trigger {
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// k-base of the prime implicates.
    Kbase {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Answer a query with k-resolution.
    Query {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// co, ce, va, im, se, eq, me or mc.
        #[arg(long)]
        kind: String,
        /// Literals of the clause (ce) or true literals (im), e.g. "1 -3".
        #[arg(long, allow_hyphen_values = true)]
        lits: Option<String>,
        /// Second clause-set (se, eq).
        #[arg(long)]
        other: Option<PathBuf>,
    },
    /// Separation table over k and h ranges, such as --k 0..1 --h 2..5.
    Separation {
        #[arg(long, default_value = "extremal_doped")]
        family: String,
        #[arg(long, default_value = "0..1")]
        k: String,
        #[arg(long, default_value = "2..4")]
        h: String,
        /// Skip the greedy search for capped rows.
        #[arg(long)]
        no_heuristic: bool,
    },
    /// Run the built-in checks.
    Selftest,
}

fn range(s: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let bad = || Error::Domain(format!("expected N or A..B, got {s:?}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.trim_start_matches('=');
            Ok(a.parse().map_err(|_| bad())?..=b.parse().map_err(|_| bad())?)
        }
        None => {
            let v = s.parse().map_err(|_| bad())?;
            Ok(v..=v)
        }
    }
}

fn read(path: &Path) -> Result<ClauseSet> {
    parse_dimacs(&fs::read_to_string(path)?)
}

fn lits(s: &Option<String>) -> Result<Vec<i32>> {
    s.as_deref()
        .unwrap_or("")
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Domain(format!("not a literal: {t:?}")))
        })
        .collect()
}

struct Out {
    path: Option<PathBuf>,
}

impl Out {
    fn write(&self, text: &str) -> Result<()> {
        match &self.path {
            Some(p) => fs::write(p, text)?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn json(&self, v: &impl Serialize) -> Result<()> {
        let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?;
        s.push('\n');
        self.write(&s)
    }
}

fn run(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(p) => Config::parse(&fs::read_to_string(p)?)?,
        None => Config::default(),
    };
    let mut limits: Limits = config.limits()?;
    if let Some(v) = cli.cap_vars {
        limits.sat_vars = v;
        limits.phd_vars = v;
    }
    if let Some(v) = cli.cap_primes {
        limits.primes = v;
    }
    let format = cli
        .format
        .clone()
        .or_else(|| config.get("format").map(str::to_string));
    let out = Out {
        path: cli
            .out
            .clone()
            .or_else(|| config.get("out").map(PathBuf::from)),
    };
    let json = format.as_deref() == Some("json");
    match cli.cmd {
        Cmd::Generate { family, k, h } => {
            let fam: Family = family.parse()?;
            let inst = generate(&fam, k, h)?;
            let mut comments = vec![format!("family {fam} k={k} h={h}")];
            if let Some(t) = &inst.tree {
                comments.push(format!("tree {t}"));
            }
            if json {
                return out.json(&inst);
            }
            out.write(&emit_dimacs_with_comments(&inst.clauses, &comments))?;
            if let Some(p) = &out.path {
                Out {
                    path: Some(p.with_extension("json")),
                }
                .json(&inst)?;
            }
        }
        Cmd::Measure { input } => {
            let f = read(&input)?;
            #[derive(Serialize)]
            struct Report {
                measures: cnf_hierarchy::Measures,
                primes: Option<usize>,
                hardness: cnf_hierarchy::hardness::HardnessReport,
            }
            let primes = match prime_implicates(&f, &limits) {
                Ok(p) => Some(p.len()),
                Err(Error::CapExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            out.json(&Report {
                measures: f.measures(),
                primes,
                hardness: hardness_report(&f, &limits)?,
            })?;
        }
        Cmd::Primes {
            input,
            implicants,
            essential,
        } => {
            let f = read(&input)?;
            let p = if essential {
                essential_primes(&f, &limits)?
            } else if implicants {
                prime_implicants(&f, &limits)?.primes
            } else {
                prime_implicates(&f, &limits)?.primes
            };
            if json {
                out.json(&p)?;
            } else {
                out.write(&emit_dimacs_with_comments(
                    &p,
                    &[format!("{} clauses", p.len())],
                ))?;
            }
        }
        Cmd::Mps { input, via_doping } => {
            let f = read(&input)?;
            let fam = if via_doping {
                mps_via_doping(&f, &limits)?
            } else {
                mps_enumerate(&f, &limits)?
            };
            out.json(&fam)?;
        }
        Cmd::Dope { input } => {
            let d = dope(&read(&input)?);
            if json {
                out.json(&d)?;
            } else {
                let comments: Vec<String> = d
                    .doping_map
                    .iter()
                    .map(|(c, u)| format!("u{} dopes {c}", u.0))
                    .collect();
                out.write(&emit_dimacs_with_comments(&d.doped, &comments))?;
            }
        }
        Cmd::Trigger { input, k } => {
            let g = trigger_hypergraph(&read(&input)?, k, &limits)?;
            let tau = transversal_number(&g, &limits);
            let nu = matching_number(&g, &limits);
            if tau.exact && nu.exact && nu.upper > tau.upper {
                return Err(Error::Integrity(format!(
                    "matching {} exceeds transversal {}",
                    nu.upper, tau.upper
                )));
            }
            #[derive(Serialize)]
            struct Report {
                hypergraph: cnf_hierarchy::trigger::TriggerHypergraph,
                tau: cnf_hierarchy::trigger::SearchResult,
                nu: cnf_hierarchy::trigger::SearchResult,
            }
            out.json(&Report {
                hypergraph: g,
                tau,
                nu,
            })?;
        }
        Cmd::Kbase {
            input,
            k,
            exhaustive,
        } => {
            let p = prime_implicates(&read(&input)?, &limits)?;
            let b = if exhaustive {
                k_base_exhaustive(&p, k, &limits)?
            } else {
                k_base(&p, k, &limits)?
            };
            if json {
                out.json(&b)?;
            } else {
                let mut comments = vec![format!("{k}-base, minimal: {}", b.minimal)];
                comments.extend(b.provenance.added.iter().map(|c| format!("added {c}")));
                comments.extend(b.provenance.removed.iter().map(|c| format!("removed {c}")));
                out.write(&emit_dimacs_with_comments(&b.clauses, &comments))?;
            }
        }
        Cmd::Query {
            input,
            k,
            kind,
            lits: l,
            other,
        } => {
            let f = read(&input)?;
            let other = || -> Result<ClauseSet> {
                read(
                    other
                        .as_deref()
                        .ok_or_else(|| Error::Domain("--other is required".into()))?,
                )
            };
            let q = match kind.to_ascii_lowercase().as_str() {
                "co" => Query::Co,
                "ce" => Query::Ce(Clause::from_ints(&lits(&l)?)?),
                "va" => Query::Va,
                "im" => Query::Im(PartialAssignment::from_true_lits(
                    lits(&l)?
                        .into_iter()
                        .map(cnf_hierarchy::Lit::new)
                        .collect::<Result<Vec<_>>>()?,
                )?),
                "se" => Query::Se(other()?),
                "eq" => Query::Eq(other()?),
                "me" => Query::Me,
                "mc" => Query::Mc,
                _ => return Err(Error::Domain(format!("unknown query kind {kind:?}"))),
            };
            #[derive(Serialize)]
            struct Report {
                query: Query,
                answer: cnf_hierarchy::compile::Answer,
            }
            let answer = answer_query(&q, &f, k, &limits)?;
            out.json(&Report { query: q, answer })?;
        }
        Cmd::Separation {
            family,
            k,
            h,
            no_heuristic,
        } => {
            if family.parse::<Family>()? != Family::ExtremalDoped {
                return Err(Error::Domain(
                    "separation tables use the extremal_doped family".into(),
                ));
            }
            let spec = ExperimentSpec {
                k_range: range(&k)?,
                h_range: range(&h)?,
                heuristic: !no_heuristic,
                limits,
            };
            let rows = run_separation(&spec)?;
            let fmt: Format = format.as_deref().unwrap_or("table").parse()?;
            let mut buf = Vec::new();
            write_rows(&rows, fmt, &mut buf)?;
            out.write(&String::from_utf8_lossy(&buf))?;
        }
        Cmd::Selftest => {
            let checks = selftest(&limits, cli.seed)?;
            let mut text = String::new();
            for c in &checks {
                text.push_str(&format!(
                    "{} {}: {}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                ));
            }
            out.write(&text)?;
            if let Some(c) = checks.iter().find(|c| !c.passed) {
                return Err(Error::Integrity(format!("self-test {} failed", c.name)));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cnfh: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
