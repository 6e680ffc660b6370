use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use kstar_isolation::bounds::BoundReport;
use kstar_isolation::families::{
    gen_char_orderminusleaves, gen_corona_extremal, gen_family_f, gen_spider_gap, recognize_char_orderminusleaves,
    recognize_f, recognize_tk, sample_family_f, sample_family_tk, CharParams, FWiring,
};
use kstar_isolation::harness::{parse_checks, run_sweep, SweepConfig, DEFAULT_BRUTE_FORCE_MAX};
use kstar_isolation::io::{parse_edge_list, parse_graph6, write_edge_list};
use kstar_isolation::solver::{
    iota_bruteforce, iota_tree_dp, residual_max_degree, star_center_in_residual, BRUTE_FORCE_LIMIT, UNCAPPED_LIMIT,
};
use kstar_isolation::{Graph, Tree};

#[derive(Parser)]
#[command(name = "kstar", version, about = "Exact k-star isolation numbers of trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Edge-list file (`-` for stdin).
    #[arg(long)]
    input: PathBuf,
    /// Read graph6 instead of an edge list.
    #[arg(long)]
    graph6: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute ι_k exactly.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        /// Also print a minimum set.
        #[arg(long)]
        witness: bool,
    },
    /// Evaluate every bound against ι_k.
    Bounds {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check whether a vertex set is k-isolating.
    VerifySet {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        /// Comma-separated vertices; may be empty.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        set: String,
    },
    /// Recognize a family member and print its certificate.
    Recognize {
        #[arg(long, value_enum)]
        family: RecognizeFamily,
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Print a family member as an edge list with its certificate.
    Generate {
        #[arg(long, value_enum)]
        family: GenerateFamily,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        n0: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        /// Comma-separated leaf counts for the 4-cycle.
        #[arg(long)]
        leaves: Option<String>,
        /// Random wiring seed (F and Tk).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check every free tree up to the given order.
    Sweep {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value = "1,2,3")]
        k_list: String,
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cross-check with subset search up to this order (at most 16).
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_MAX)]
        brute_force_max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RecognizeFamily {
    #[value(name = "F")]
    F,
    #[value(name = "Tk")]
    Tk,
    #[value(name = "corona-char")]
    CoronaChar,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenerateFamily {
    #[value(name = "F")]
    F,
    #[value(name = "Tk")]
    Tk,
    #[value(name = "corona-extremal")]
    CoronaExtremal,
    #[value(name = "spider")]
    Spider,
    #[value(name = "c4")]
    C4,
}

/// Failure carrying the process exit code.
struct Fail(u8, String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(1, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn read_graph(input: &Input) -> Result<Graph, Fail> {
    let text = if input.input.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(&input.input).map_err(|e| Fail(1, format!("{}: {e}", input.input.display())))?
    };
    Ok(if input.graph6 { parse_graph6(&text)? } else { parse_edge_list(&text)? })
}

fn read_tree(input: &Input) -> Result<Tree, Fail> {
    Ok(Tree::new(read_graph(input)?)?)
}

fn need(v: Option<usize>, name: &str) -> Result<usize, Fail> {
    v.ok_or_else(|| Fail(1, format!("--{name} is required for this family")))
}

fn parse_list(s: &str) -> Result<Vec<usize>, Fail> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|e| Fail(1, format!("bad list entry {p:?}: {e}"))))
        .collect()
}

fn join(set: &[usize]) -> String {
    set.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn emit<C: Serialize>(family: &str, g: &Graph, cert: Option<&C>) -> Result<(), Fail> {
    println!("# family: {family}");
    if let Some(c) = cert {
        println!("# certificate: {}", serde_json::to_string(c)?);
    }
    print!("{}", write_edge_list(g));
    Ok(())
}

fn run(cmd: Command) -> Result<(), Fail> {
    match cmd {
        Command::Solve { input, k, witness } => {
            let g = read_graph(&input)?;
            let sol = match Tree::new(g.clone()) {
                Ok(t) => iota_tree_dp(&t, k)?,
                Err(_) if !g.is_connected() => return Err(Fail(1, "input graph is disconnected".into())),
                Err(_) if g.vertex_count() > BRUTE_FORCE_LIMIT => {
                    return Err(Fail(1, format!("non-tree input exceeds {BRUTE_FORCE_LIMIT} vertices")))
                }
                Err(_) => {
                    let cap = (g.vertex_count() > UNCAPPED_LIMIT).then_some(g.vertex_count());
                    iota_bruteforce(&g, k, cap)?
                }
            };
            println!("{}", sol.size());
            if witness {
                println!("{}", join(&sol.set));
            }
        }
        Command::Bounds { input, k, json } => {
            let t = read_tree(&input)?;
            if k == 0 {
                return Err(Fail(1, "k must be at least 1".into()));
            }
            let iota = iota_tree_dp(&t, k)?.size();
            let report: kstar_isolation::BoundReport = BoundReport::from_parts(&t, k, iota);
            if json {
                println!("{}", serde_json::to_string_pretty(&report.to_json())?);
            } else {
                print!("{}", report.render_table());
            }
        }
        Command::VerifySet { input, k, set } => {
            let g = read_graph(&input)?;
            let set = parse_list(&set)?;
            if let Some(&v) = set.iter().find(|&&v| v >= g.vertex_count()) {
                return Err(Fail(1, format!("vertex {v} out of range")));
            }
            let max_deg = residual_max_degree(&g, &set);
            match star_center_in_residual(&g, &set, k) {
                None => {
                    println!("true");
                    println!("residual max degree: {max_deg}");
                }
                Some(center) => {
                    println!("false");
                    println!("witness: {center}");
                    println!("residual max degree: {max_deg}");
                    return Err(Fail(2, format!("set is not {k}-isolating")));
                }
            }
        }
        Command::Recognize { family, input, k } => {
            let cert = match family {
                RecognizeFamily::F => recognize_f(&read_tree(&input)?).map(|c| serde_json::to_string(&c)),
                RecognizeFamily::Tk => recognize_tk(&read_tree(&input)?, k).map(|c| serde_json::to_string(&c)),
                RecognizeFamily::CoronaChar => {
                    recognize_char_orderminusleaves(&read_graph(&input)?, k).map(|c| serde_json::to_string(&c))
                }
            };
            match cert {
                Some(json) => println!("{}", json?),
                None => println!("none"),
            }
        }
        Command::Generate { family, k, r, s, n, n0, h, leaves, seed } => match family {
            GenerateFamily::F => {
                let (r, s) = (need(r, "r")?, s.unwrap_or(0));
                let (t, cert) = match seed {
                    Some(seed) => sample_family_f(r, s, &mut ChaCha8Rng::seed_from_u64(seed))?,
                    None => gen_family_f(r, s, &FWiring::PaperDefault)?,
                };
                emit("F", t.graph(), Some(&cert))?;
            }
            GenerateFamily::Tk => {
                let (k, n0, h) = (need(k, "k")?, need(n0, "n0")?, h.unwrap_or(1));
                let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
                let (t, cert) = sample_family_tk(k, n0, h, &mut rng)?;
                emit("Tk", t.graph(), Some(&cert))?;
            }
            GenerateFamily::CoronaExtremal => {
                let t = gen_corona_extremal(need(k, "k")?, need(r, "r")?, need(n, "n")?)?;
                let cert = recognize_char_orderminusleaves(t.graph(), need(k, "k")?);
                emit("corona-extremal", t.graph(), cert.as_ref())?;
            }
            GenerateFamily::Spider => {
                let t = gen_spider_gap(need(k, "k")?)?;
                emit::<()>("spider", t.graph(), None)?;
            }
            GenerateFamily::C4 => {
                let k = need(k, "k")?;
                let counts = match leaves {
                    Some(l) => parse_list(&l)?,
                    None => vec![k; 4],
                };
                let leaves: [usize; 4] =
                    counts.try_into().map_err(|_| Fail(1, "--leaves needs exactly four counts".into()))?;
                let (g, cert) = gen_char_orderminusleaves(k, &CharParams::C4 { leaves })?;
                emit("c4", &g, Some(&cert))?;
            }
        },
        Command::Sweep { max_n, k_list, checks, out, jobs, seed, brute_force_max } => {
            let cfg = SweepConfig {
                max_n,
                k_list: parse_list(&k_list)?,
                checks: parse_checks(&checks)?,
                jobs,
                seed,
                brute_force_max,
            };
            let outcome = run_sweep(&cfg)?;
            let file = fs::File::create(&out).map_err(|e| Fail(1, format!("{}: {e}", out.display())))?;
            outcome.write_jsonl(BufWriter::new(file))?;
            println!("{}", serde_json::to_string_pretty(&outcome.summary)?);
            if !outcome.is_clean() {
                let mut shown: BTreeMap<String, usize> = BTreeMap::new();
                for r in &outcome.records {
                    for v in &r.violations {
                        let seen = shown.entry(v.check.to_string()).or_default();
                        *seen += 1;
                        if *seen <= 5 {
                            eprintln!("violation [{}] k={:?} tree {}: {}", v.check, v.k, r.tree_code, v.detail);
                        }
                    }
                }
                return Err(Fail(2, format!("{} violations", outcome.summary.violations)));
            }
        }
    }
    Ok(())
}
