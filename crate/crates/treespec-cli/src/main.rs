//! Command line front end: every subcommand wraps one library entry
//! point, prints either readable lines or a single JSON document, and
//! exits 0 on success, 1 on operation or verification failure, 2 on
//! usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use treespec::algebra::{count_full_words, count_simple_words, FeasVec};
use treespec::cfrac::{zaremba_weak, CFrac};
use treespec::graph::{census_connected, MultiGraph};
use treespec::modular::{diameter_probe, tau_mod_witness, zaremba_mod};
use treespec::regular::{assemble_regular_with_budget, min_feasible_n_with_budget, DEFAULT_BUDGET};
use treespec::spectrum::{
    decode_full, decode_simple, enum_full, enum_simple, VectorCertificate,
};
use treespec::witness::{OpWord, WitnessGraph};

#[derive(Parser)]
#[command(name = "treespec", version, about = "Spanning-tree counts from graph surgery words")]
struct Cli {
    /// Emit one machine-readable JSON document instead of plain lines
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Alphabet {
    /// Blocks A^a C
    Simple,
    /// Blocks A^a C and B^a C
    Full,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count the spanning trees of a graph read from an edge list file
    Count {
        /// File with a "n m" header line followed by one "u v" line per edge
        file: PathBuf,
        /// Cross-check against direct enumeration (at most 25 edges)
        #[arg(long)]
        check: bool,
    },
    /// Build the witness graph of a surgery word such as "A2 C B C"
    Build {
        #[arg(long)]
        word: String,
        /// Print the graph in DOT format with the marked edge highlighted
        #[arg(long)]
        dot: bool,
    },
    /// List all words of weight at most n, with their vectors
    Enum {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "simple")]
        alphabet: Alphabet,
        /// Verify the count against the closed form before printing
        #[arg(long)]
        check: bool,
        /// Stop after this many entries
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Recover the unique word whose vector is (t, u)
    Decode {
        #[arg(long)]
        t: String,
        #[arg(long)]
        u: String,
        #[arg(long, value_enum, default_value = "simple")]
        alphabet: Alphabet,
    },
    /// Assemble connected k-regular graphs on n vertices with several
    /// distinct tree counts
    Regular {
        #[arg(long)]
        k: usize,
        /// Target vertex count; defaults to the smallest reachable
        #[arg(long)]
        n: Option<usize>,
        /// Base graph vertex budget (4..=20)
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Small planar graph whose tree count is congruent to u mod N
    #[command(name = "mod")]
    Mod {
        #[arg(long)]
        u: u64,
        #[arg(long = "N", value_name = "N")]
        modulus: u64,
    },
    /// Continued fractions with quotients 1 and 2: without --u, many
    /// distinct denominators below N; with --u, one fraction per residue
    Zaremba {
        #[arg(long = "N", value_name = "N")]
        modulus: u64,
        #[arg(long)]
        u: Option<u64>,
    },
    /// Evaluate a continued fraction given by its quotients
    Cf {
        /// Comma or space separated quotients, e.g. "2,1,1,1"
        #[arg(long, value_name = "QUOTIENTS")]
        eval: String,
        /// Also reduce the value mod this
        #[arg(long = "mod", value_name = "N")]
        modulus: Option<u64>,
    },
    /// Every spanning-tree count of a connected graph on n vertices (n <= 7)
    Census {
        #[arg(long)]
        n: usize,
    },
    /// Reachability and diameter of the X/Y generator walk mod N (N <= 64)
    Probe {
        #[arg(long = "N", value_name = "N")]
        modulus: u64,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("TREESPEC_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            use std::io::Write;
            let mut stdout = std::io::stdout();
            match writeln!(stdout, "{output}").and_then(|()| stdout.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                // the reader went away (e.g. piped into head); not our error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<String, String> {
    match &cli.cmd {
        Cmd::Count { file, check } => {
            let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
            let graph = MultiGraph::from_edge_list_text(&text).map_err(|e| e.to_string())?;
            let tau = graph.tau();
            if *check {
                let brute = graph.tau_brute().map_err(|e| e.to_string())?;
                if brute != tau {
                    return Err(format!("count mismatch: {tau} vs {brute} by enumeration"));
                }
            }
            if cli.json {
                Ok(pretty(&graph.to_json()))
            } else {
                Ok(tau.to_string())
            }
        }
        Cmd::Build { word, dot } => {
            let word: OpWord = word.parse().map_err(|e| format!("{e}"))?;
            let built = WitnessGraph::build(&word);
            let v = built.vector();
            if *dot {
                return Ok(built.to_dot().trim_end().to_string());
            }
            if cli.json {
                let mut json = built.graph().to_json();
                json["word"] = word.to_string().into();
                json["t"] = v.t.to_string().into();
                json["u"] = v.u.to_string().into();
                json["marked_edge"] = serde_json::json!(built.witness_edge());
                Ok(pretty(&json))
            } else {
                let mut out = String::new();
                let _ = writeln!(out, "word: {word}");
                let _ = writeln!(out, "vector: ({}, {})", v.t, v.u);
                let _ = writeln!(out, "tau: {}", v.tau());
                let _ = writeln!(out, "marked edge: {:?}", built.witness_edge());
                let _ = write!(out, "{}", built.graph().to_edge_list_text());
                Ok(out.trim_end().to_string())
            }
        }
        Cmd::Enum { n, alphabet, check, limit } => {
            let certs: Vec<VectorCertificate> = match alphabet {
                Alphabet::Simple => enum_simple(*n)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .map(|(w, v)| VectorCertificate::simple(w, v))
                    .collect(),
                Alphabet::Full => enum_full(*n)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .map(|(w, v)| VectorCertificate::full(w, v))
                    .collect(),
            };
            if *check {
                let expected = match alphabet {
                    Alphabet::Simple => count_simple_words(*n),
                    Alphabet::Full => count_full_words(*n),
                };
                if BigUint::from(certs.len()) != expected {
                    return Err(format!(
                        "enumerated {} words but the closed form gives {expected}",
                        certs.len()
                    ));
                }
            }
            let take = limit.unwrap_or(certs.len()).min(certs.len());
            if cli.json {
                let arr: Vec<_> = certs[..take].iter().map(|c| c.to_json()).collect();
                Ok(pretty(&serde_json::json!(arr)))
            } else {
                let lines: Vec<String> = certs[..take]
                    .iter()
                    .map(|c| format!("({}, {})\t{}", c.t, c.u, c.word))
                    .collect();
                Ok(lines.join("\n"))
            }
        }
        Cmd::Decode { t, u, alphabet } => {
            let t: BigUint = t.parse().map_err(|_| format!("bad integer {t:?}"))?;
            let u: BigUint = u.parse().map_err(|_| format!("bad integer {u:?}"))?;
            let v = FeasVec { t, u };
            let cert = match alphabet {
                Alphabet::Simple => {
                    let w = decode_simple(&v).map_err(|e| e.to_string())?;
                    VectorCertificate::simple(&w, &v)
                }
                Alphabet::Full => {
                    let w = decode_full(&v).map_err(|e| e.to_string())?;
                    VectorCertificate::full(&w, &v)
                }
            };
            if cli.json {
                Ok(pretty(&cert.to_json()))
            } else {
                Ok(cert.word.clone())
            }
        }
        Cmd::Regular { k, n, budget } => {
            let n = match n {
                Some(n) => *n,
                None => min_feasible_n_with_budget(*k, *budget).map_err(|e| e.to_string())?,
            };
            let family =
                assemble_regular_with_budget(*k, n, *budget).map_err(|e| e.to_string())?;
            if cli.json {
                Ok(pretty(&family.to_json()))
            } else {
                let mut out = String::new();
                let _ = writeln!(
                    out,
                    "{}-regular on {} vertices: {} members from a ({}, {}) base group",
                    family.k,
                    family.n,
                    family.members.len(),
                    family.base_vertices,
                    family.base_degree_two
                );
                for m in &family.members {
                    let _ = writeln!(out, "tau {}\tword {}", m.tau, m.word);
                }
                Ok(out.trim_end().to_string())
            }
        }
        Cmd::Mod { u, modulus } => {
            let cert = tau_mod_witness(*u, *modulus).map_err(|e| e.to_string())?;
            if !cert.verify() {
                return Err("certificate failed verification".into());
            }
            if cli.json {
                Ok(pretty(&cert.to_json()))
            } else {
                Ok(format!(
                    "word {} builds {} vertices with tau = {} = {} (mod {})",
                    cert.word,
                    cert.vertices(),
                    cert.tau(),
                    u % modulus,
                    modulus
                ))
            }
        }
        Cmd::Zaremba { modulus, u } => match u {
            Some(u) => {
                let (cf, cert) = zaremba_mod(*u, *modulus).map_err(|e| e.to_string())?;
                if !cert.verify() {
                    return Err("certificate failed verification".into());
                }
                if cli.json {
                    let mut json = cert.to_json();
                    json["cf"] = serde_json::json!(cf.quotients());
                    Ok(pretty(&json))
                } else {
                    Ok(format!(
                        "{} = {}/{} = {} (mod {})",
                        cf,
                        cert.vector.u,
                        cert.vector.t,
                        u % modulus,
                        modulus
                    ))
                }
            }
            None => {
                let certs =
                    zaremba_weak(&BigUint::from(*modulus)).map_err(|e| e.to_string())?;
                if cli.json {
                    let arr: Vec<_> = certs.iter().map(|c| c.to_json()).collect();
                    Ok(pretty(&serde_json::json!(arr)))
                } else {
                    let lines: Vec<String> = certs
                        .iter()
                        .map(|c| format!("{}/{}\t{}", c.t, c.u, c.cf))
                        .collect();
                    Ok(lines.join("\n"))
                }
            }
        },
        Cmd::Cf { eval, modulus } => {
            let parts: Result<Vec<u64>, _> = eval
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(str::parse)
                .collect();
            let parts = parts.map_err(|e| format!("bad quotient: {e}"))?;
            let cf = CFrac::new(parts).map_err(|e| e.to_string())?;
            let (num, den) = cf.eval();
            let reduced = match modulus {
                Some(m) => Some(cf.eval_mod(*m).map_err(|e| e.to_string())?),
                None => None,
            };
            if cli.json {
                let mut json = serde_json::json!({
                    "quotients": cf.quotients(),
                    "numerator": num.to_string(),
                    "denominator": den.to_string(),
                });
                if let Some(r) = reduced {
                    json["modulus"] = (*modulus).into();
                    json["residue"] = r.into();
                }
                Ok(pretty(&json))
            } else {
                let mut out = format!("{cf} = {num}/{den}");
                if let (Some(r), Some(m)) = (reduced, modulus) {
                    let _ = write!(out, " = {r} (mod {m})");
                }
                Ok(out)
            }
        }
        Cmd::Census { n } => {
            let counts = census_connected(*n).map_err(|e| e.to_string())?;
            if cli.json {
                let arr: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
                Ok(pretty(&serde_json::json!({ "n": n, "counts": arr })))
            } else {
                let list: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
                Ok(list.join(" "))
            }
        }
        Cmd::Probe { modulus } => {
            let report = diameter_probe(*modulus).map_err(|e| e.to_string())?;
            if cli.json {
                Ok(pretty(&serde_json::json!({
                    "modulus": report.modulus,
                    "order": report.order,
                    "reached": report.reached,
                    "diameter": report.diameter,
                })))
            } else {
                Ok(format!(
                    "mod {}: reached {} of {} group elements, diameter {}",
                    report.modulus, report.reached, report.order, report.diameter
                ))
            }
        }
    }
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("json serialization")
}
