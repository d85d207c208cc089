//! `prl` — poset Ramsey laboratory.
//!
//! Subcommands: `info`, `ramsey`, `decide`, `eh`, `construct`, `verify`,
//! `bounds`. Exit codes: 0 success, 2 cap/budget exceeded, 3 verification
//! failure, 4 parse error.

use clap::{Args, Parser, Subcommand};
use poset_ramsey::catalog::{self, Built};
use poset_ramsey::combinatorics::{known_bounds, BoundTarget};
use poset_ramsey::constructions::{self, Forbid, SampleOutcome, ShrubForestConfig};
use poset_ramsey::embed::dim2;
use poset_ramsey::error::SearchError;
use poset_ramsey::lattice::{decode_coloring, encode_coloring};
use poset_ramsey::poset::Classification;
use poset_ramsey::search::{decide, eh_number, ramsey, Budget, Certificate, Problem, SearchMode, SearchOptions};

const EXIT_CAP: i32 = 2;
const EXIT_VERIFY: i32 = 3;
const EXIT_PARSE: i32 = 4;

#[derive(Parser)]
#[command(name = "prl", about = "poset Ramsey numbers on Boolean lattices", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SearchArgs {
    /// Time budget in milliseconds (default: PRL_BUDGET_MS env var).
    #[arg(long)]
    budget: Option<u64>,
    /// Node budget.
    #[arg(long)]
    nodes: Option<u64>,
    /// Disable lex-leader symmetry reduction (differential testing).
    #[arg(long)]
    no_symmetry: bool,
    /// Worker threads for the top-level branch split.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        let env_budget = std::env::var("PRL_BUDGET_MS").ok().and_then(|v| v.parse().ok());
        SearchOptions {
            symmetry: !self.no_symmetry,
            symmetry_layers: 2,
            threads: self.threads.max(1),
            budget: Budget {
                node_limit: self.nodes,
                time_limit_ms: self.budget.or(env_budget),
            },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Height, width, 2-dimension, and classification of a poset expression.
    Info { expr: String },
    /// Smallest N forcing a blue copy of P or a red copy of Q.
    Ramsey {
        blue: String,
        red: String,
        #[arg(long)]
        weak: bool,
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Decide one dimension: witness coloring or exhaustion certificate.
    Decide {
        blue: String,
        red: String,
        dim: u32,
        #[arg(long)]
        weak: bool,
        /// Write the witness coloring to this file when satisfiable.
        #[arg(long)]
        emit: Option<std::path::PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Poset Erdős–Hajnal number of a colored pattern versus Q_n.
    Eh {
        pattern: String,
        n: u32,
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Emit a gallery coloring: two_chain N | antichain_layered n r |
    /// cc n t1 | ccc n t1 | dn n | vn n | eh_chain N n | shrub_forest N k.
    Construct {
        name: String,
        params: Vec<u32>,
        /// Comma-separated hex masks for the low family S of eh_chain.
        #[arg(long, value_delimiter = ',')]
        s_masks: Vec<String>,
        /// Comma-separated hex masks for the high family T of eh_chain.
        #[arg(long, value_delimiter = ',')]
        t_masks: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: std::path::PathBuf,
    },
    /// Check a coloring file against forbidden patterns.
    Verify {
        file: std::path::PathBuf,
        #[arg(long = "no-blue")]
        no_blue: Vec<String>,
        #[arg(long = "no-red")]
        no_red: Vec<String>,
        #[arg(long = "no-colored")]
        no_colored: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra sampled vertices for sparse colorings (weaker check).
        #[arg(long, default_value_t = 4096)]
        samples: usize,
    },
    /// Known lower/upper bounds for a catalog pattern.
    Bounds {
        pattern: String,
        /// Lattice side n of R(P, Q_n) / R̃(Ṗ, Q_n); ignored with --diagonal.
        n: Option<u32>,
        /// Bounds for the diagonal R(P, P) instead.
        #[arg(long)]
        diagonal: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn parse_plain(src: &str) -> Result<poset_ramsey::poset::Poset, i32> {
    match catalog::parse_and_build(src) {
        Ok(Built::Plain(p)) => Ok(p),
        Ok(Built::Colored(_)) => {
            eprintln!("error: expected an uncolored poset: {src}");
            Err(EXIT_PARSE)
        }
        Err(e) => {
            eprintln!("error: cannot parse {src:?}: {e}");
            Err(EXIT_PARSE)
        }
    }
}

fn parse_colored(src: &str) -> Result<poset_ramsey::poset::ColoredPoset, i32> {
    match catalog::parse_and_build(src) {
        Ok(Built::Colored(c)) => Ok(c),
        Ok(Built::Plain(_)) => {
            eprintln!("error: expected a colored poset (colored(...) or ALT(...)): {src}");
            Err(EXIT_PARSE)
        }
        Err(e) => {
            eprintln!("error: cannot parse {src:?}: {e}");
            Err(EXIT_PARSE)
        }
    }
}

fn search_exit(e: &SearchError) -> i32 {
    match e {
        SearchError::BudgetExceeded { .. } | SearchError::CapExceeded(_) => EXIT_CAP,
    }
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Info { expr } => {
            let built = match catalog::parse_and_build(&expr) {
                Ok(b) => b,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_PARSE;
                }
            };
            let p = built.poset();
            let (d2, _) = dim2(p);
            let class = match p.classify() {
                Classification::Trivial(lens) => format!(
                    "trivial([{}])",
                    lens.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
                ),
                Classification::Nontrivial(w) => {
                    format!("nontrivial(witness {:?} at {:?})", w.kind, w.vertices)
                }
            };
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "expr": expr,
                        "size": p.len(),
                        "height": p.height(),
                        "width": p.width(),
                        "dim2": d2,
                        "classification": class,
                        "series_parallel": p.is_series_parallel(),
                        "colored": built.colors().is_some(),
                    })
                );
            } else {
                println!("size {}", p.len());
                println!("height {}", p.height());
                println!("width {}", p.width());
                println!("dim2 {d2}");
                println!("classification {class}");
                println!("series_parallel {}", p.is_series_parallel());
            }
            0
        }
        Command::Ramsey { blue, red, weak, max_n, search } => {
            let (pb, pr) = match (parse_plain(&blue), parse_plain(&red)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(c), _) | (_, Err(c)) => return c,
            };
            let mode = if weak { SearchMode::Weak } else { SearchMode::Induced };
            match ramsey(mode, &pb, &pr, max_n, &search.options()) {
                Ok(n) => {
                    if cli.json {
                        println!("{}", serde_json::json!({"ramsey": n}));
                    } else {
                        println!("{n}");
                    }
                    0
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    search_exit(&e)
                }
            }
        }
        Command::Decide { blue, red, dim, weak, emit, search } => {
            let (pb, pr) = match (parse_plain(&blue), parse_plain(&red)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(c), _) | (_, Err(c)) => return c,
            };
            let mode = if weak { SearchMode::Weak } else { SearchMode::Induced };
            let problem = Problem::Ramsey { mode, blue: pb, red: pr };
            match decide(&problem, dim, &search.options()) {
                Ok(Certificate::Witness(c)) => {
                    if let Some(path) = emit {
                        if let Err(e) = std::fs::write(&path, encode_coloring(&c)) {
                            eprintln!("error: cannot write {}: {e}", path.display());
                            return EXIT_CAP;
                        }
                    }
                    if cli.json {
                        println!("{}", serde_json::json!({"sat": true, "dim": dim}));
                    } else {
                        println!("SAT N={dim}");
                    }
                    0
                }
                Ok(cert @ Certificate::Exhausted { .. }) => {
                    let line = cert.exhausted_line(dim).expect("exhausted");
                    if cli.json {
                        if let Certificate::Exhausted { nodes, classes, elapsed_ms } = cert {
                            println!(
                                "{}",
                                serde_json::json!({
                                    "sat": false, "dim": dim, "nodes": nodes,
                                    "classes": classes, "ms": elapsed_ms
                                })
                            );
                        }
                    } else {
                        println!("{line}");
                    }
                    0
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    search_exit(&e)
                }
            }
        }
        Command::Eh { pattern, n, max_n, search } => {
            let pat = match parse_colored(&pattern) {
                Ok(p) => p,
                Err(c) => return c,
            };
            match eh_number(&pat, n, max_n, &search.options()) {
                Ok(v) => {
                    if cli.json {
                        println!("{}", serde_json::json!({"eh": v}));
                    } else {
                        println!("{v}");
                    }
                    0
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    search_exit(&e)
                }
            }
        }
        Command::Construct { name, params, s_masks, t_masks, seed, out } => {
            let parse_masks = |xs: &[String]| -> Result<Vec<u64>, i32> {
                xs.iter()
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        u64::from_str_radix(s.trim_start_matches("0x"), 16).map_err(|_| {
                            eprintln!("error: bad hex mask {s:?}");
                            EXIT_PARSE
                        })
                    })
                    .collect()
            };
            let need = |k: usize| -> Result<(), i32> {
                if params.len() == k {
                    Ok(())
                } else {
                    eprintln!("error: {name} expects {k} numeric parameter(s)");
                    Err(EXIT_PARSE)
                }
            };
            let built = (|| -> Result<poset_ramsey::constructions::Construction, i32> {
                let err = |e: poset_ramsey::error::ConstructionError| {
                    eprintln!("error: {e}");
                    EXIT_CAP
                };
                match name.as_str() {
                    "two_chain" => {
                        need(1)?;
                        constructions::two_chain_coloring(params[0]).map_err(err)
                    }
                    "antichain_layered" => {
                        need(2)?;
                        constructions::antichain_layered(params[0], params[1]).map_err(err)
                    }
                    "cc" => {
                        need(2)?;
                        constructions::cc_layered(params[0], params[1]).map_err(err)
                    }
                    "ccc" => {
                        need(2)?;
                        constructions::ccc_layered(params[0], params[1]).map_err(err)
                    }
                    "dn" => {
                        need(1)?;
                        constructions::dn_lower(params[0]).map_err(err)
                    }
                    "vn" => {
                        need(1)?;
                        constructions::vn_lower(params[0]).map_err(err)
                    }
                    "eh_chain" => {
                        need(2)?;
                        let s = parse_masks(&s_masks)?;
                        let t = parse_masks(&t_masks)?;
                        constructions::eh_chain_coloring(params[0], params[1], &s, &t).map_err(err)
                    }
                    "shrub_forest" => {
                        need(2)?;
                        match constructions::shrub_forest_sample(
                            params[0],
                            params[1],
                            seed,
                            &ShrubForestConfig::default(),
                        )
                        .map_err(err)?
                        {
                            SampleOutcome::Coloring(c) => {
                                Ok(poset_ramsey::constructions::Construction {
                                    name: format!("shrub_forest({},{})", params[0], params[1]),
                                    coloring: c,
                                    claims: Vec::new(),
                                })
                            }
                            SampleOutcome::Failure { attempts, reason } => {
                                eprintln!("sample failure after {attempts} attempts: {reason}");
                                Err(EXIT_CAP)
                            }
                        }
                    }
                    other => {
                        eprintln!("error: unknown constructor {other:?}");
                        Err(EXIT_PARSE)
                    }
                }
            })();
            let cons = match built {
                Ok(c) => c,
                Err(code) => return code,
            };
            if let Err(e) = std::fs::write(&out, encode_coloring(&cons.coloring)) {
                eprintln!("error: cannot write {}: {e}", out.display());
                return EXIT_CAP;
            }
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "construction": cons.name,
                        "dim": cons.coloring.dim(),
                        "claims": cons.claims.iter().map(|c| c.label.clone()).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("{} dim={} -> {}", cons.name, cons.coloring.dim(), out.display());
            }
            0
        }
        Command::Verify { file, no_blue, no_red, no_colored, seed, samples } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return EXIT_CAP;
                }
            };
            let coloring = match decode_coloring(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_PARSE;
                }
            };
            let mut forbid = Vec::new();
            for src in &no_blue {
                match parse_plain(src) {
                    Ok(p) => forbid.push(Forbid::blue(format!("blue {src}"), p)),
                    Err(c) => return c,
                }
            }
            for src in &no_red {
                match parse_plain(src) {
                    Ok(p) => forbid.push(Forbid::red(format!("red {src}"), p)),
                    Err(c) => return c,
                }
            }
            for src in &no_colored {
                match parse_colored(src) {
                    Ok(p) => forbid.push(Forbid::colored(format!("colored {src}"), p)),
                    Err(c) => return c,
                }
            }
            match constructions::verify_coloring(&coloring, &forbid, seed, samples) {
                Ok(report) => {
                    for o in &report.outcomes {
                        match &o.violation {
                            None => println!("ok {}", o.label),
                            Some(emb) => {
                                println!("VIOLATION {}:", o.label);
                                print!("{}", emb.to_text());
                            }
                        }
                    }
                    if report.restricted {
                        println!("note: sparse coloring, restricted search (weaker check)");
                    }
                    if report.pass() {
                        0
                    } else {
                        EXIT_VERIFY
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_CAP
                }
            }
        }
        Command::Bounds { pattern, n, diagonal } => {
            let expr = match catalog::parse(&pattern) {
                Ok(e) => e,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_PARSE;
                }
            };
            let target = if diagonal {
                BoundTarget::Diagonal
            } else {
                match n {
                    Some(n) => BoundTarget::VsLattice(n),
                    None => {
                        eprintln!("error: bounds needs <n> or --diagonal");
                        return EXIT_PARSE;
                    }
                }
            };
            match known_bounds(&expr, target) {
                Ok(rec) => {
                    if cli.json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "pattern": pattern,
                                "n": n,
                                "diagonal": diagonal,
                                "lower": rec.lower,
                                "upper": rec.upper,
                                "exact": rec.exact,
                                "source": rec.source,
                                "validity": rec.validity_note,
                            })
                        );
                    } else {
                        let nstr = if diagonal {
                            "diagonal".to_string()
                        } else {
                            n.unwrap().to_string()
                        };
                        print!(
                            "{pattern}\t{nstr}\t{}\t{}\t{}",
                            rec.lower, rec.upper, rec.source
                        );
                        if let Some(v) = &rec.validity_note {
                            print!("\t({v})");
                        }
                        println!();
                    }
                    0
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_PARSE
                }
            }
        }
    }
}
