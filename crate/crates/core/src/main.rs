use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use prgraph::groups::literal::{format_element, format_tuple, parse_element, parse_tuple, split_top_level};
use prgraph::groups::automorphism::AUTOMORPHISM_ORDER_CAP;
use prgraph::groups::{automorphism_group, Descriptor, GroupKind};
use prgraph::lemmas::{self, linalg::parse_matrix_set};
use prgraph::pragraph::search::{CanonicalConnection, CanonicalRoute};
use prgraph::pragraph::{self, PathOutcome, SearchLimits};
use prgraph::report::{ReportBuilder, RunReport};
use prgraph::walker::{self, MovePolicy, WalkConfig};
use prgraph::{build_group, ElementId, Error, FiniteGroupTable, NielsenWord};

const EXIT_USAGE: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_NEGATIVE: u8 = 3;

/// Product replacement graphs of small finite groups.
///
/// Groups: psl2:Q, sl2:Q, pgl2:Q (Q a prime power), sym:N, alt:N and
/// ab:N1,N2,.. (each factor dividing the next). Tuples are comma-separated
/// element literals: cycles like (1 2 3) for sym/alt, [[a,b],[c,d]] for
/// matrix groups, (x,y,..) or a bare integer for ab, e for the identity.
#[derive(Parser, Debug)]
#[command(name = "prgraph", version)]
struct Cli {
    /// Worker threads (default: PRGRAPH_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// JSON file with defaults for threads, seed, burnin, samples, chains.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Connected components of X_k (or the extended graph with --extended).
    Components {
        group: String,
        k: usize,
        #[arg(long)]
        extended: bool,
        /// Write the component-size histogram as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// T-systems: automorphism orbits of components of the extended graph.
    Tsystems {
        group: String,
        k: usize,
        /// Also check the component to T-system map.
        #[arg(long)]
        check: bool,
    },
    /// Run the product replacement walk and report output uniformity.
    Walk {
        group: String,
        k: usize,
        #[arg(long)]
        burnin: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Independent chains; samples are split evenly between them.
        #[arg(long)]
        chains: Option<usize>,
        #[arg(long, default_value_t = 1)]
        thinning: u64,
        /// Use P and I moves as well.
        #[arg(long)]
        extended: bool,
        /// Also write the raw samples, one element id per line.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// A Nielsen word between two generating tuples.
    Connect {
        group: String,
        k: usize,
        from: String,
        to: String,
        /// Search the plain graph (R and L moves only).
        #[arg(long)]
        plain: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// A Nielsen word making a tuple redundant (some entry the identity).
    Redundant {
        group: String,
        tuple: String,
        #[arg(long)]
        plain: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// A Nielsen word to (e, .., e, g1, g2).
    Canonical {
        group: String,
        tuple: String,
        /// The generating pair g1,g2.
        pair: String,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Exponents m_i with <a, b_i> = <m_i a + b_i> in an abelian group.
    Gaschuetz {
        group: String,
        a: String,
        /// The b_i separated by ';'.
        b: String,
    },
    /// Greedy subset of a matrix set with the same invariant lines.
    Greedy {
        file: PathBuf,
        n: usize,
        /// Preserve invariant subspaces instead (n <= 4).
        #[arg(long)]
        subspace: bool,
    },
    /// Regular semisimple element in a coset x D of a 2x2 matrix group.
    Rss {
        group: String,
        x: String,
        /// Elements of D (default: the whole group).
        #[arg(long)]
        subset: Option<String>,
    },
    /// Basic facts about a group.
    GroupInfo { group: String },
    /// Replay a Nielsen word on a tuple.
    Verify {
        group: String,
        tuple: String,
        /// Moves such as "R+ 1 2  P 1 3  I 2" (1-based).
        #[arg(long, conflicts_with = "word_file")]
        word: Option<String>,
        #[arg(long)]
        word_file: Option<PathBuf>,
        /// Exit 3 unless the word ends at this tuple.
        #[arg(long)]
        expect: Option<String>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct LimitArgs {
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long)]
    max_visited: Option<usize>,
}

impl From<LimitArgs> for SearchLimits {
    fn from(l: LimitArgs) -> SearchLimits {
        SearchLimits {
            max_depth: l.max_depth,
            max_visited: l.max_visited,
        }
    }
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
struct Config {
    threads: Option<usize>,
    seed: Option<u64>,
    burnin: Option<u64>,
    samples: Option<usize>,
    chains: Option<usize>,
}

/// A finished command: the report and whether its verdict was negative.
struct Outcome {
    report: RunReport,
    negative: bool,
}

impl Outcome {
    fn ok(report: RunReport) -> Outcome {
        Outcome { report, negative: false }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error of the command
            let _ = writeln!(stdout, "{}", out.report.to_json());
            if out.negative {
                ExitCode::from(EXIT_NEGATIVE)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::CapExceeded { .. } => EXIT_CAP,
                Error::NoGeneratingTuple { .. } => EXIT_NEGATIVE,
                _ => EXIT_USAGE,
            })
        }
    }
}

fn run(cli: Cli) -> prgraph::Result<Outcome> {
    let config: Config = match &cli.config {
        Some(path) => serde_json::from_str(&fs::read_to_string(path)?)
            .map_err(|e| Error::Parse(format!("config: {e}")))?,
        None => Config::default(),
    };
    let threads = cli
        .threads
        .or_else(|| std::env::var("PRGRAPH_THREADS").ok().and_then(|v| v.parse().ok()))
        .or(config.threads);
    if let Some(t) = threads {
        // fails only if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }

    match cli.command {
        Command::Components { group, k, extended, out } => {
            let g = build_group(&group)?;
            let b = ReportBuilder::new("components", Some(g.label()), json!({ "k": k, "extended": extended }));
            let r = pragraph::components(&g, k, extended)?;
            if let Some(path) = out {
                let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
                for &s in &r.sizes {
                    *hist.entry(s).or_default() += 1;
                }
                let mut csv = String::from("size,count\n");
                for (s, c) in hist {
                    csv.push_str(&format!("{s},{c}\n"));
                }
                fs::write(path, csv)?;
            }
            Ok(Outcome::ok(b.finish(&r)))
        }
        Command::Tsystems { group, k, check } => {
            let g = build_group(&group)?;
            let b = ReportBuilder::new("tsystems", Some(g.label()), json!({ "k": k, "check": check }));
            if check {
                let v = prgraph::tsystems::check_component_tsystem_map(&g, k)?;
                let negative = !v.consistent;
                Ok(Outcome {
                    report: b.finish(&v),
                    negative,
                })
            } else {
                Ok(Outcome::ok(b.finish(&prgraph::tsystems::tsystems(&g, k)?)))
            }
        }
        Command::Walk {
            group,
            k,
            burnin,
            samples,
            seed,
            chains,
            thinning,
            extended,
            dump,
        } => {
            let g = build_group(&group)?;
            let seed = seed.or(config.seed).unwrap_or_else(rand::random);
            let burn_in = burnin.or(config.burnin).unwrap_or(10_000);
            let samples = samples.or(config.samples).unwrap_or(10_000);
            let chains = chains.or(config.chains).unwrap_or(1).max(1);
            let cfg = WalkConfig {
                k,
                burn_in,
                seed,
                policy: if extended { MovePolicy::Extended } else { MovePolicy::Plain },
                thinning,
            };
            let b = ReportBuilder::new(
                "walk",
                Some(g.label()),
                json!({
                    "k": k, "burn_in": burn_in, "samples": samples, "chains": chains,
                    "thinning": thinning, "policy": cfg.policy,
                }),
            )
            .seed(seed);
            let (xs, steps) = if chains == 1 {
                walker::sample_many(&g, &cfg, samples)?
            } else {
                walker::sample_chains(&g, &cfg, chains, samples.div_ceil(chains))?
            };
            if let Some(path) = dump {
                let text: String = xs.iter().map(|x| format!("{x}\n")).collect();
                fs::write(path, text)?;
            }
            let mut stats = walker::uniformity_report(&xs, &g)?;
            stats.steps = steps;
            Ok(Outcome::ok(b.finish(&stats)))
        }
        Command::Connect { group, k, from, to, plain, limits } => {
            let g = build_group(&group)?;
            let (t1, t2) = (tuple_of_length(&g, &from, k)?, tuple_of_length(&g, &to, k)?);
            let b = ReportBuilder::new(
                "connect",
                Some(g.label()),
                json!({ "k": k, "from": format_tuple(&g, &t1), "to": format_tuple(&g, &t2), "extended": !plain }),
            );
            let out = pragraph::connect_path(&g, &t1, &t2, !plain, limits.into())?;
            path_outcome(&g, b, &out)
        }
        Command::Redundant { group, tuple, plain, limits } => {
            let g = build_group(&group)?;
            let t = parse_tuple(&g, &tuple)?;
            let b = ReportBuilder::new(
                "redundant",
                Some(g.label()),
                json!({ "tuple": format_tuple(&g, &t), "extended": !plain }),
            );
            let out = pragraph::to_redundant(&g, &t, !plain, limits.into())?;
            path_outcome(&g, b, &out)
        }
        Command::Canonical { group, tuple, pair, limits } => {
            let g = build_group(&group)?;
            let t = parse_tuple(&g, &tuple)?;
            let pair = tuple_of_length(&g, &pair, 2)?;
            let b = ReportBuilder::new(
                "canonical",
                Some(g.label()),
                json!({ "tuple": format_tuple(&g, &t), "pair": format_tuple(&g, &pair) }),
            );
            let c: CanonicalConnection = pragraph::connect_to_canonical(&g, &t, (pair[0], pair[1]), limits.into())?;
            let route = match c.route {
                CanonicalRoute::Permutation => "permutation",
                CanonicalRoute::Chain => "chain",
                CanonicalRoute::Search => "search",
            };
            let mut out = path_outcome(&g, b, &c.outcome)?;
            if let Value::Object(m) = &mut out.report.result {
                m.insert("route".into(), json!(route));
                m.insert("target".into(), json!(format_tuple(&g, &c.target)));
            }
            Ok(out)
        }
        Command::Gaschuetz { group, a, b } => {
            let g = build_group(&group)?;
            let GroupKind::Abelian(k) = g.kind() else {
                return Err(Error::GroupSpec(format!("{} is not an abelian group spec", g.label())));
            };
            let residues = |s: &str| -> prgraph::Result<Vec<u32>> {
                match g.descriptor(parse_element(&g, s.trim())?) {
                    Descriptor::Residues(r) => Ok(r.clone()),
                    _ => unreachable!("abelian groups use residue descriptors"),
                }
            };
            let av = residues(&a)?;
            let bs = split_top_level(&b, ';')
                .into_iter()
                .map(residues)
                .collect::<prgraph::Result<Vec<_>>>()?;
            let rep = ReportBuilder::new("gaschuetz", Some(g.label()), json!({ "a": av, "b": bs }));
            let sol = lemmas::gaschuetz_exponents(k, &av, &bs)?;
            let images = lemmas::apply_exponents(k, &av, &bs, &sol.exponents);
            Ok(Outcome::ok(rep.finish(&json!({
                "exponents": sol.exponents,
                "modulus": sol.modulus,
                "subgroup_order": sol.subgroup_order,
                "steps": sol.steps,
                "new_generators": images,
                "verified": true,
            }))))
        }
        Command::Greedy { file, n, subspace } => {
            let (f, mats) = parse_matrix_set(&fs::read_to_string(&file)?)?;
            let b = ReportBuilder::new(
                "greedy",
                None,
                json!({ "file": file.display().to_string(), "n": n, "field": f.order(), "subspace": subspace, "matrices": mats.len() }),
            );
            let r = if subspace {
                lemmas::greedy_subspace_subset(&f, n, &mats)?
            } else {
                lemmas::greedy_line_subset(&f, n, &mats)?
            };
            let negative = !r.is_valid();
            Ok(Outcome {
                report: b.finish(&r),
                negative,
            })
        }
        Command::Rss { group, x, subset } => {
            let g = build_group(&group)?;
            let xid = parse_element(&g, &x)?;
            let d: Vec<ElementId> = match &subset {
                Some(s) => parse_tuple(&g, s)?,
                None => (0..g.order() as ElementId).collect(),
            };
            let b = ReportBuilder::new(
                "rss",
                Some(g.label()),
                json!({ "x": format_element(&g, xid), "subset_size": d.len() }),
            );
            let found = lemmas::find_rss_in_coset(&g, xid, &d)?;
            Ok(Outcome {
                report: b.finish(&json!({
                    "found": found.is_some(),
                    "element": found,
                    "element_literal": found.map(|y| format_element(&g, y)),
                })),
                negative: found.is_none(),
            })
        }
        Command::GroupInfo { group } => {
            let g = build_group(&group)?;
            let b = ReportBuilder::new("group-info", Some(g.label()), json!({}));
            Ok(Outcome::ok(b.finish(&group_info(&g))))
        }
        Command::Verify {
            group,
            tuple,
            word,
            word_file,
            expect,
        } => {
            let g = build_group(&group)?;
            let t = parse_tuple(&g, &tuple)?;
            let text = match (word, word_file) {
                (Some(w), _) => w,
                (None, Some(p)) => fs::read_to_string(p)?,
                (None, None) => return Err(Error::Parse("give --word or --word-file".into())),
            };
            let w: NielsenWord = text.parse()?;
            let end = w.apply(&g, &t)?;
            let expected = expect.map(|e| parse_tuple(&g, &e)).transpose()?;
            let matches = expected.as_ref().map(|e| *e == end);
            let b = ReportBuilder::new(
                "verify",
                Some(g.label()),
                json!({ "tuple": format_tuple(&g, &t), "length": w.len() }),
            );
            Ok(Outcome {
                report: b.finish(&json!({
                    "end": end,
                    "end_literal": format_tuple(&g, &end),
                    "generating": g.is_generating(&end),
                    "matches_expected": matches,
                })),
                negative: matches == Some(false),
            })
        }
    }
}

fn tuple_of_length(g: &FiniteGroupTable, s: &str, k: usize) -> prgraph::Result<Vec<ElementId>> {
    let t = parse_tuple(g, s)?;
    if t.len() != k {
        return Err(Error::DimensionMismatch(format!("expected a {k}-tuple, got {} entries", t.len())));
    }
    Ok(t)
}

fn path_outcome(g: &FiniteGroupTable, b: ReportBuilder, out: &PathOutcome) -> prgraph::Result<Outcome> {
    Ok(match out {
        PathOutcome::Found { word, end } => Outcome::ok(b.finish(&json!({
            "verdict": "connected",
            "length": word.len(),
            "word": word.to_string(),
            "end": end,
            "end_literal": format_tuple(g, end),
        }))),
        PathOutcome::NotConnected { explored } => Outcome {
            report: b.finish(&json!({ "verdict": "not_connected", "explored": explored })),
            negative: true,
        },
        PathOutcome::LimitReached { explored } => {
            return Err(Error::CapExceeded {
                what: "search",
                limit: *explored as u64,
                requested: *explored as u64 + 1,
            })
        }
    })
}

fn group_info(g: &FiniteGroupTable) -> Value {
    let mut orders: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..g.order() as ElementId {
        *orders.entry(g.element_order(x)).or_default() += 1;
    }
    let mut classes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
    classes.sort_unstable();
    let gens = g.generating_set();
    let automorphisms = (g.order() <= AUTOMORPHISM_ORDER_CAP)
        .then(|| automorphism_group(g).ok().map(|a| a.len()))
        .flatten();
    let rss = g
        .field()
        .map(|_| (0..g.order() as ElementId).filter(|&x| g.is_regular_semisimple(x).unwrap_or(false)).count());
    json!({
        "order": g.order(),
        "abelian": g.is_abelian_group(),
        "min_generators": g.min_generators(),
        "generating_set": format_tuple(g, &gens),
        "element_orders": orders,
        "class_sizes": classes,
        "automorphism_count": automorphisms,
        "regular_semisimple_count": rss,
    })
}
