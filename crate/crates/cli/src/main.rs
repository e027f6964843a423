mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dressian::bounds::{
    bounds_report, census_from_matroids, compare_lower, compare_upper, johnson_stable_sets, ln_count, log2_count,
    lower_bound_certificate, Comparison, BoundsReport, CERTIFICATE_LIMIT, STABLE_SET_LIMIT,
};
use dressian::cells::{cell_dim, u_dim};
use dressian::io::{
    format_vector, matroid_to_json, parse_basis_family, parse_set, parse_vector, read_matroid_file,
    read_valuation_file, read_valuation_parts, valuation_to_json,
};
use dressian::linalg::{exact_cover_check, ExactCover, RationalSubspace};
use dressian::rational::parse_rational;
use dressian::sample::{random_cover, random_subspace, stream_rng};
use dressian::smooth::smooth_decompose;
use dressian::subdivision::{spread_report, subdivision_cells_capped, DEFAULT_CELL_CAP};
use dressian::subset::{self, Set};
use dressian::tree::{decode_tree, enumerate_rank2_cells, tree_to_valuation, MetricTree};
use dressian::valuation::{check_valuation, check_valuation_bruteforce};
use dressian::{is_matroid, symbol_sets, BigRational, Matroid, Symbol};
use rand::Rng;
use rayon::prelude::*;
use report::{emit, Format, Output};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dressian", version, about = "Valuated matroids, Dressian cells and matroid subdivisions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "DRESSIAN_THREADS")]
    threads: Option<usize>,
}

#[derive(Args)]
struct ValuationArg {
    /// Valuation JSON file.
    #[arg(long)]
    valuation: PathBuf,
}

#[derive(Args)]
struct SizeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check a basis family for the exchange axiom, or a valuation with both checkers.
    Check {
        #[arg(long, conflicts_with = "valuation", required_unless_present = "valuation")]
        matroid: Option<PathBuf>,
        #[arg(long)]
        valuation: Option<PathBuf>,
    },
    /// Combinatorial type of a valuation.
    Type(ValuationArg),
    /// Whether two valuations of the same matroid are equivalent.
    Equiv {
        #[arg(long)]
        valuation: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Dimension of the linear hull of the cell of a valuation.
    Dim(ValuationArg),
    /// Contract an independent set, e.g. `--set 0,2`.
    Contract {
        #[arg(long)]
        valuation: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Residue matroid for a shift, or a shift separating a symbol.
    Residue {
        #[arg(long)]
        valuation: PathBuf,
        /// Comma-separated rationals, one per element.
        #[arg(long, conflicts_with = "symbol", required_unless_present = "symbol", allow_hyphen_values = true)]
        shift: Option<String>,
        /// `S:a,b:c,d`, e.g. `2:0,1:3,4` or `:0,1:2,3`.
        #[arg(long)]
        symbol: Option<String>,
    },
    /// The valuation of a matroid on the uniform matroid of its rank.
    FromMatroid {
        #[arg(long)]
        matroid: PathBuf,
    },
    /// The metric tree of a rank-2 valuation.
    TreeDecode(ValuationArg),
    /// The valuation of a metric tree on a rank-2 matroid.
    TreeEncode {
        /// Nested-parenthesis tree, e.g. `((0:0,1:0):-1,2:0,3:0);`.
        #[arg(long, allow_hyphen_values = true)]
        tree: String,
        /// Ambient matroid; defaults to U(2, n).
        #[arg(long)]
        matroid: Option<PathBuf>,
    },
    /// All cells of the Dressian of U(2, n) or of a rank-2 matroid.
    Rank2Census {
        #[arg(long, required_unless_present = "matroid")]
        n: Option<usize>,
        #[arg(long)]
        matroid: Option<PathBuf>,
        /// Include every topology in the report.
        #[arg(long)]
        list: bool,
    },
    /// Maximal cells of the regular matroid subdivision.
    Subdivision {
        #[arg(long)]
        valuation: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CELL_CAP)]
        max_cells: usize,
    },
    /// Spread against both binomial readings.
    Spread(ValuationArg),
    /// Every bound formula for U(r, n).
    Bounds {
        #[command(flatten)]
        size: SizeArgs,
        /// Rank of the contractions in the contraction-ratio bound
        /// (default: min(3, r)).
        #[arg(long)]
        t: Option<usize>,
    },
    /// A sparse paving matroid with many Johnson components and its cell dimension.
    LowerBound {
        #[command(flatten)]
        size: SizeArgs,
    },
    /// Combinatorial types of the valuations of sparse paving matroids.
    SpCensus {
        #[command(flatten)]
        size: SizeArgs,
        /// Sample this many random sparse paving matroids instead of all.
        #[arg(long)]
        sample: Option<usize>,
        /// Also compute cell dimensions.
        #[arg(long)]
        dims: bool,
    },
    /// The exact-cover inequality for a given or random subspace and cover.
    CoverCheck {
        /// JSON: {"ambient": k, "equations": [[...]], "k": k, "blocks": [[...]]}.
        #[arg(long, required_unless_present = "trials")]
        input: Option<PathBuf>,
        /// Number of random instances.
        #[arg(long, conflicts_with = "input")]
        trials: Option<usize>,
        #[arg(long, default_value_t = 8)]
        ground: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Peel spikes off a valuation of a uniform matroid.
    Smooth(ValuationArg),
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<dressian::Error> for Failure {
    fn from(e: dressian::Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

type Res<T> = Result<T, Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn q(x: usize) -> BigRational {
    BigRational::from_integer(x.into())
}

fn ser(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

fn set_json(s: Set) -> Value {
    json!(subset::to_vec(s))
}

fn parse_symbol(text: &str) -> Res<Symbol> {
    let parts: Vec<&str> = text.split(':').collect();
    let [s, ab, cd] = parts[..] else {
        return Err(input(format!("symbol '{text}' must look like S:a,b:c,d")));
    };
    let pair = |p: &str| -> Res<(usize, usize)> {
        let v = subset::to_vec(parse_set(p)?);
        match v[..] {
            [x, y] => Ok((x, y)),
            _ => Err(input(format!("'{p}' must name two elements"))),
        }
    };
    Ok(Symbol::new(parse_set(s)?, pair(ab)?, pair(cd)?)?)
}

fn check(matroid: Option<&Path>, valuation: Option<&Path>) -> Res<Output> {
    if let Some(path) = matroid {
        let text = std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
        let (n, r, sets) = parse_basis_family(&text)?;
        let valid = is_matroid(n, r, &sets)?;
        return Ok(Output::doc(json!({"n": n, "r": r, "bases": sets.len(), "valid": valid})));
    }
    let path = valuation.expect("clap requires one input");
    let (m, values) = read_valuation_parts(path)?;
    let fast = check_valuation(&m, &values)?;
    let slow = check_valuation_bruteforce(&m, &values)?;
    if fast != slow {
        return Err(Failure::Internal("three-term and exchange checks disagree".into()));
    }
    Ok(Output::doc(json!({"n": m.n(), "r": m.rank(), "bases": m.bases().len(), "valid": fast})))
}

fn type_report(path: &Path) -> Res<Output> {
    let nu = read_valuation_file(path)?;
    let ty = nu.combinatorial_type();
    let sets = symbol_sets(nu.matroid());
    let equal: Vec<String> = ty.symbols_equal.iter().map(|s| s.to_string()).collect();
    Ok(Output::doc(json!({
        "type_size": ty.type_size,
        "extended_size": ty.extended_size,
        "z_size": sets.all.len(),
        "z0_size": sets.z0.len(),
        "z1_size": sets.z1.len(),
        "symbols_equal": equal,
    })))
}

fn tree_doc(tree: &MetricTree) -> Value {
    let topology = tree.topology();
    json!({
        "tree": tree.to_newick(),
        "classical_tree": tree.negated().to_newick(),
        "topology": topology.to_string(),
        "digest": topology.digest(),
        "internal_vertices": tree.internal_vertex_count(),
        "internal_edges": topology.internal_edge_count(),
    })
}

fn rank2_census(n: Option<usize>, matroid: Option<&Path>, list: bool) -> Res<Output> {
    let m = match (matroid, n) {
        (Some(p), _) => read_matroid_file(p)?,
        (None, Some(n)) => Matroid::uniform(2, n)?,
        (None, None) => return Err(input("give --n or --matroid")),
    };
    let cells = enumerate_rank2_cells(&m)?;
    let mut by_dim = std::collections::BTreeMap::new();
    for c in &cells {
        *by_dim.entry(c.dim.to_string()).or_insert(0usize) += 1;
    }
    let mut doc = json!({
        "n": m.n(),
        "parallel_classes": m.parallel_classes().len(),
        "cells": cells.len(),
        "cells_by_dim": by_dim,
        "max_dim": cells.iter().map(|c| c.dim).max(),
    });
    if list {
        doc["topologies"] = cells
            .iter()
            .map(|c| json!({"topology": c.topology.to_string(), "digest": c.topology.digest(), "dim": c.dim}))
            .collect();
    }
    Ok(Output::doc(doc))
}

/// Observed `(max dim, count, source)` for U(r, n) where it can be computed.
fn observe(n: usize, r: usize) -> Res<Option<(usize, usize, &'static str)>> {
    if r == 2 && n <= 8 {
        let cells = enumerate_rank2_cells(&Matroid::uniform(2, n)?)?;
        let max = cells.iter().map(|c| c.dim).max().unwrap_or(0);
        return Ok(Some((max, cells.len(), "all cells")));
    }
    if subset::binomial(n, r) <= STABLE_SET_LIMIT {
        let all = dressian::bounds::sparse_paving_matroids(n, r)?;
        let census = census_from_matroids(n, r, &all, true)?;
        return Ok(Some((census.max_dim.unwrap_or(0), census.distinct_types, "sparse paving valuations")));
    }
    Ok(None)
}

fn bound_comparisons(report: &BoundsReport, observed: Option<(usize, usize)>, tree: Option<(usize, usize)>) -> Vec<Comparison> {
    let blank = |e: &dressian::bounds::BoundEntry| Comparison {
        quantity: e.quantity.clone(),
        observed: String::new(),
        bound: e.value.clone(),
        bound_source: e.anchor.clone(),
        satisfied: true,
    };
    report
        .entries
        .iter()
        .map(|e| {
            let name = e.quantity.as_str();
            match (name, observed, tree) {
                ("dim_lower", Some((d, _)), _) => compare_lower(name, &q(d), e),
                ("count_lower", Some((_, c)), _) => compare_lower(name, &q(c), e),
                ("log2_count_upper", Some((_, c)), _) => compare_upper(name, &log2_count(c as u64), e),
                ("count_upper" | "subspace_count_bound", Some((_, c)), _) => compare_upper(name, &ln_count(c as u64), e),
                ("tree_dim_upper", _, Some((d, _))) => compare_upper(name, &q(d), e),
                ("tree_count_upper", _, Some((_, c))) => compare_upper(name, &q(c), e),
                (_, Some((d, _)), _) if name.starts_with("dim_") && !name.contains("ratio") || name.starts_with("spreaddim") => {
                    compare_upper(name, &q(d), e)
                }
                _ => blank(e),
            }
        })
        .collect()
}

fn bounds(n: usize, r: usize, t: usize) -> Res<Output> {
    let report = bounds_report(n, r, t)?;
    let observed = observe(n, r)?;
    let m2 = n + 2 - r;
    let tree = if r >= 2 && m2 <= 8 { observe(m2, 2)?.map(|(d, c, _)| (d, c)) } else { None };
    let comparisons = bound_comparisons(&report, observed.map(|(d, c, _)| (d, c)), tree);
    let mut doc = serde_json::to_value(&report).map_err(|e| Failure::Internal(e.to_string()))?;
    if let Some((d, c, source)) = observed {
        doc["observed"] = json!({"max_dim": d, "count": c, "source": source});
    }
    doc["comparisons"] = serde_json::to_value(&comparisons).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Output { doc, comparisons: Some(comparisons) })
}

fn sp_census(n: usize, r: usize, sample: Option<usize>, dims: bool, seed: u64) -> Res<Output> {
    if !(0 < r && r < n) {
        return Err(input(format!("need 0 < r < n, got n={n} r={r}")));
    }
    if subset::binomial(n, r) > CERTIFICATE_LIMIT {
        return Err(dressian::Error::ScaleLimit(format!("C({n},{r}) exceeds {CERTIFICATE_LIMIT}")).into());
    }
    let matroids: Vec<Matroid> = match sample {
        None => dressian::bounds::sparse_paving_matroids(n, r)?,
        Some(k) => (0..k as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream_rng(seed, i);
                let keep = rng.gen_range(0.05..0.95);
                Matroid::uniform_minus(r, n, &random_stable_set(&mut rng, n, r, keep))
            })
            .collect::<dressian::Result<Vec<_>>>()?,
    };
    let mut distinct: Vec<Matroid> = matroids.clone();
    distinct.sort();
    distinct.dedup();
    let record = census_from_matroids(n, r, &distinct, dims)?;
    let mut doc = serde_json::to_value(&record).map_err(|e| Failure::Internal(e.to_string()))?;
    doc["sampled"] = json!(sample.is_some());
    doc["draws"] = json!(matroids.len());
    if sample.is_none() {
        doc["stable_sets"] = json!(johnson_stable_sets(n, r).map(|s| s.len()).unwrap_or(matroids.len()));
    }
    Ok(Output::doc(doc))
}

fn random_stable_set<R: Rng>(rng: &mut R, n: usize, r: usize, keep: f64) -> Vec<Set> {
    use rand::seq::SliceRandom;
    let mut all: Vec<Set> = subset::k_subsets(n, r).collect();
    all.shuffle(rng);
    let mut chosen: Vec<Set> = Vec::new();
    for x in all {
        if rng.gen_bool(keep) && chosen.iter().all(|&y| subset::size(x ^ y) != 2) {
            chosen.push(x);
        }
    }
    chosen.sort_unstable();
    chosen
}

fn cover_check(input_path: Option<&Path>, trials: Option<usize>, ground: usize, k: usize, seed: u64) -> Res<Output> {
    if let Some(path) = input_path {
        let text = std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| input(format!("invalid JSON: {e}")))?;
        let ambient = v["ambient"].as_u64().ok_or_else(|| input("'ambient' must be a non-negative integer"))? as usize;
        let mut l = RationalSubspace::full(ambient);
        for row in v["equations"].as_array().map(Vec::as_slice).unwrap_or(&[]) {
            let coeffs = row.as_array().ok_or_else(|| input("each equation is an array of coefficients"))?;
            if coeffs.len() != ambient {
                return Err(input(format!("equation has {} coefficients, expected {ambient}", coeffs.len())));
            }
            let parsed: Vec<(usize, BigRational)> = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let s = match c {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    parse_rational(&s).map(|x| (i, x))
                })
                .collect::<dressian::Result<_>>()?;
            l.add_equation(&parsed)?;
        }
        let k = v["k"].as_u64().ok_or_else(|| input("'k' must be a positive integer"))? as usize;
        let blocks: Vec<Vec<usize>> = serde_json::from_value(v["blocks"].clone())
            .map_err(|_| input("'blocks' must be an array of element arrays"))?;
        let cover = ExactCover::new(ambient, blocks, k)?;
        let c = exact_cover_check(&l, &cover)?;
        return Ok(Output::doc(json!({"dim": c.lhs, "average_projection": ser(&c.rhs), "holds": c.holds})));
    }
    let trials = trials.expect("clap requires one input");
    if ground == 0 || k == 0 {
        return Err(input("--ground and --k must be positive"));
    }
    let results: Vec<(bool, bool)> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let l = random_subspace(&mut rng, ground);
            let blocks = rng.gen_range(k..=k + 4);
            let cover = random_cover(&mut rng, ground, k, blocks)?;
            let c = exact_cover_check(&l, &cover)?;
            Ok((c.holds, q(c.lhs) == c.rhs))
        })
        .collect::<dressian::Result<_>>()?;
    let violations = results.iter().filter(|(h, _)| !h).count();
    let tight = results.iter().filter(|(_, t)| *t).count();
    Ok(Output::doc(json!({"trials": trials, "ground": ground, "k": k, "violations": violations, "tight": tight})))
}

fn run(cli: &Cli) -> Res<Output> {
    match &cli.command {
        Command::Check { matroid, valuation } => check(matroid.as_deref(), valuation.as_deref()),
        Command::Type(a) => type_report(&a.valuation),
        Command::Equiv { valuation, other } => {
            let (a, b) = (read_valuation_file(valuation)?, read_valuation_file(other)?);
            Ok(Output::doc(json!({"equivalent": a.equivalent(&b)?})))
        }
        Command::Dim(a) => {
            let nu = read_valuation_file(&a.valuation)?;
            Ok(Output::doc(json!({"dim": cell_dim(&nu)?, "u_dim": u_dim(nu.matroid())?})))
        }
        Command::Contract { valuation, set } => {
            let nu = read_valuation_file(valuation)?;
            let s = parse_set(set)?;
            let minor = nu.matroid().contract(s)?;
            let mut doc = valuation_to_json(&nu.contract(s)?);
            doc["element_map"] = json!(minor.element_map);
            Ok(Output::doc(doc))
        }
        Command::Residue { valuation, shift, symbol } => {
            let nu = read_valuation_file(valuation)?;
            let (w, sym) = match (shift, symbol) {
                (Some(w), _) => (parse_vector(w)?, None),
                (None, Some(text)) => {
                    let sym = parse_symbol(text)?;
                    match nu.residue_witness(&sym)? {
                        Some(w) => (w, Some(sym)),
                        None => {
                            return Ok(Output::doc(json!({"symbol": sym.to_string(), "in_type": true})));
                        }
                    }
                }
                (None, None) => return Err(input("give --shift or --symbol")),
            };
            let residue = nu.residue_matroid(&w)?;
            let mut doc = json!({"shift": format_vector(&w), "residue": matroid_to_json(&residue)});
            if let Some(sym) = sym {
                doc["symbol"] = json!(sym.to_string());
                doc["in_type"] = json!(false);
            }
            Ok(Output::doc(doc))
        }
        Command::FromMatroid { matroid } => {
            let m = read_matroid_file(matroid)?;
            Ok(Output::doc(valuation_to_json(&dressian::Valuation::from_matroid(&m))))
        }
        Command::TreeDecode(a) => Ok(Output::doc(tree_doc(&decode_tree(&read_valuation_file(&a.valuation)?)?))),
        Command::TreeEncode { tree, matroid } => {
            let tree = MetricTree::parse_newick(tree)?;
            let m = match matroid {
                Some(p) => read_matroid_file(p)?,
                None => Matroid::uniform(2, tree.n())?,
            };
            Ok(Output::doc(valuation_to_json(&tree_to_valuation(&tree, &m)?)))
        }
        Command::Rank2Census { n, matroid, list } => rank2_census(*n, matroid.as_deref(), *list),
        Command::Subdivision { valuation, max_cells } => {
            let nu = read_valuation_file(valuation)?;
            let census = subdivision_cells_capped(&nu, *max_cells)?;
            let cells: Vec<Value> = census
                .maximal_cells
                .iter()
                .zip(&census.witnesses)
                .map(|(c, w)| {
                    let bases: Vec<Value> = c.bases().iter().map(|&b| set_json(b)).collect();
                    json!({"bases": bases, "shift": format_vector(w)})
                })
                .collect();
            Ok(Output::doc(json!({"spread": census.spread, "status": census.status, "cells": cells})))
        }
        Command::Spread(a) => {
            let report = spread_report(&read_valuation_file(&a.valuation)?)?;
            let entry = |quantity: &str, bound: u64, anchor: &str| Comparison {
                quantity: quantity.into(),
                observed: report.spread.to_string(),
                bound: bound.to_string(),
                bound_source: anchor.into(),
                satisfied: report.spread as u64 <= bound,
            };
            let comparisons = vec![
                entry("spread_r2", report.binom_n2_r2, "spread <= C(n-2,r-2)"),
                entry("spread_r1", report.binom_n2_r1, "spread <= C(n-2,r-1)"),
            ];
            let doc = serde_json::to_value(&report).map_err(|e| Failure::Internal(e.to_string()))?;
            Ok(Output { doc, comparisons: Some(comparisons) })
        }
        Command::Bounds { size, t } => bounds(size.n, size.r, t.unwrap_or(size.r.min(3))),
        Command::LowerBound { size } => {
            let cert = lower_bound_certificate(size.n, size.r)?;
            let mut doc = serde_json::to_value(&cert).map_err(|e| Failure::Internal(e.to_string()))?;
            doc["holds"] = json!(cert.holds());
            doc["nonbasis_sets"] = cert.matroid.nonbases().iter().map(|&b| set_json(b)).collect();
            let comparisons = vec![
                Comparison {
                    quantity: "components".into(),
                    observed: cert.components.to_string(),
                    bound: cert.target.to_string(),
                    bound_source: "c(N) >= ceil(C(n,r)/n)".into(),
                    satisfied: cert.components as u64 >= cert.target,
                },
                Comparison {
                    quantity: "dim".into(),
                    observed: cert.dim.to_string(),
                    bound: cert.components.to_string(),
                    bound_source: "dim D(nu_N) >= c(N)".into(),
                    satisfied: cert.dim >= cert.components,
                },
            ];
            Ok(Output { doc, comparisons: Some(comparisons) })
        }
        Command::SpCensus { size, sample, dims } => sp_census(size.n, size.r, *sample, *dims, cli.seed),
        Command::CoverCheck { input, trials, ground, k } => cover_check(input.as_deref(), *trials, *ground, *k, cli.seed),
        Command::Smooth(a) => {
            let nu = read_valuation_file(&a.valuation)?;
            let d = smooth_decompose(&nu)?;
            let peels: Vec<Value> = d
                .peels
                .iter()
                .map(|(b, l)| json!({"basis": subset::format(*b), "lambda": ser(l)}))
                .collect();
            Ok(Output::doc(json!({
                "smooth": valuation_to_json(&d.smooth),
                "peels": peels,
                "supports_stable": d.supports_stable,
            })))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot configure the thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    let output = match run(&cli) {
        Ok(out) => out,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            return ExitCode::from(1);
        }
    };
    let bytes = match output.render(cli.format) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("internal error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&bytes, cli.out.as_deref()) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
