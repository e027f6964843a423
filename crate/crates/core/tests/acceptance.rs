//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dressian::bounds::{
    bounds_report, census_from_matroids, lower_bound_certificate, sparse_paving_count, sparse_paving_matroids,
};
use dressian::cells::cell_dim;
use dressian::linalg::{exact_cover_check, rank};
use dressian::rational::int;
use dressian::sample::{
    random_cover, random_coords, random_equivalent, random_shift, random_subspace, random_tree_valuation,
    random_valuation, random_value_map, stream_rng,
};
use dressian::subdivision::{spread_report, subdivision_cells, ExplorationStatus};
use dressian::subset::{self, from_elements as set, Set};
use dressian::tree::{canonical_tree, decode_tree, enumerate_rank2_cells, tree_to_valuation};
use dressian::valuation::{check_valuation, check_valuation_bruteforce};
use dressian::{BigRational, Matroid, Valuation};
use serde_json::Value;

const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn u(r: usize, n: usize) -> Matroid {
    Matroid::uniform(r, n).unwrap()
}

fn type_sizes_on_five_elements() -> Outcome {
    let n1 = u(2, 5);
    let n2 = Matroid::uniform_minus(2, 5, &[set([0, 1])]).unwrap();
    let n3 = Matroid::uniform_minus(2, 5, &[set([0, 1]), set([2, 3])]).unwrap();
    let sizes: Vec<usize> = [n1, n2, n3]
        .iter()
        .map(|n| Valuation::from_matroid(n).combinatorial_type().type_size)
        .collect();
    ensure(sizes == [15, 9, 5], || format!("type sizes {sizes:?}"))?;
    Ok(format!("sizes {sizes:?}"))
}

fn checker_agreement() -> Outcome {
    let s = |v: &[usize]| subset::from_elements(v.iter().copied());
    let ambients = [
        u(2, 5),
        u(2, 6),
        u(3, 5),
        u(3, 6),
        Matroid::uniform_minus(2, 5, &[s(&[0, 1])]).unwrap(),
        Matroid::uniform_minus(2, 5, &[s(&[0, 1]), s(&[2, 3])]).unwrap(),
        Matroid::uniform_minus(2, 6, &[s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]).unwrap(),
    ];
    let per = 150;
    let (mut accepted, mut rejected) = (0, 0);
    for (mi, m) in ambients.iter().enumerate() {
        let mut rng = stream_rng(SEED, 200 + mi as u64);
        for i in 0..per {
            let values = if i % 2 == 0 {
                random_valuation(&mut rng, m).map_err(|e| e.to_string())?.values().to_vec()
            } else {
                random_value_map(&mut rng, m).map_err(|e| e.to_string())?
            };
            let fast = check_valuation(m, &values).map_err(|e| e.to_string())?;
            let slow = check_valuation_bruteforce(m, &values).map_err(|e| e.to_string())?;
            ensure(fast == slow, || format!("disagreement on {m:?} with values {values:?}"))?;
            if fast {
                accepted += 1;
            } else {
                rejected += 1;
            }
        }
    }
    ensure(accepted > 0 && rejected > 0, || format!("one-sided sample: {accepted} accepted, {rejected} rejected"))?;
    Ok(format!("{} instances, {accepted} accepted, {rejected} rejected, 0 disagreements", accepted + rejected))
}

fn rank2_census() -> Outcome {
    let mut counts = Vec::new();
    for (n, expected) in [(4, 4), (5, 26), (6, 236)] {
        let cells = enumerate_rank2_cells(&u(2, n)).map_err(|e| e.to_string())?;
        let found: BTreeSet<Vec<Set>> = cells.iter().map(|c| c.topology.splits.clone()).collect();
        let oracle = common::tree_topologies(n);
        ensure(cells.len() == expected, || format!("U(2,{n}): {} cells", cells.len()))?;
        ensure(found.len() == cells.len(), || format!("U(2,{n}): repeated topologies"))?;
        ensure(found == oracle, || format!("U(2,{n}): topologies differ from leaf-insertion enumeration"))?;
        counts.push(cells.len());
    }
    let s25 = sparse_paving_count(5, 2).map_err(|e| e.to_string())?;
    ensure(s25 == 26 && s25 as usize <= counts[1], || format!("s(2,5) = {s25}"))?;
    Ok(format!("cells {counts:?}, s(2,5) = {s25}"))
}

fn dimension_machinery() -> Outcome {
    let zero = cell_dim(&Valuation::zero(u(2, 4))).map_err(|e| e.to_string())?;
    ensure(zero == 4, || format!("zero valuation on U(2,4): dim {zero}"))?;
    let n3 = Matroid::uniform_minus(2, 5, &[set([0, 1]), set([2, 3])]).unwrap();
    let c3 = n3.johnson_components().component_count;
    let d3 = cell_dim(&Valuation::from_matroid(&n3)).map_err(|e| e.to_string())?;
    ensure(d3 == 7 && d3 == 5 + c3, || format!("N3: dim {d3}, c = {c3}"))?;
    let mut checked = 0;
    for n in 2..=6 {
        for r in 1..n {
            for m in sparse_paving_matroids(n, r).map_err(|e| e.to_string())? {
                let c = m.johnson_components().component_count;
                let d = cell_dim(&Valuation::from_matroid(&m)).map_err(|e| e.to_string())?;
                ensure(d >= c, || format!("dim {d} < c = {c} for {m:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("dims 4 and 7, {checked} sparse paving matroids with dim >= c"))
}

fn lower_bound_six_three() -> Outcome {
    let cert = lower_bound_certificate(6, 3).map_err(|e| e.to_string())?;
    ensure(cert.components >= 4 && cert.target == 4, || format!("c = {}, target {}", cert.components, cert.target))?;
    ensure(cert.dim >= cert.components && cert.holds(), || format!("dim {} < c = {}", cert.dim, cert.components))?;
    ensure(cert.matroid.is_sparse_paving(), || "certificate matroid is not sparse paving".into())?;
    let all = sparse_paving_matroids(6, 3).map_err(|e| e.to_string())?;
    let census = census_from_matroids(6, 3, &all, true).map_err(|e| e.to_string())?;
    let mut max_dim = census.max_dim.unwrap_or(0).max(cert.dim);
    let mut rng = stream_rng(SEED, 500);
    for _ in 0..40 {
        let nu = random_valuation(&mut rng, &u(3, 6)).map_err(|e| e.to_string())?;
        max_dim = max_dim.max(cell_dim(&nu).map_err(|e| e.to_string())?);
    }
    ensure((4..=10).contains(&max_dim), || format!("max observed dim {max_dim}"))?;
    Ok(format!("c = {}, dim = {}, max observed dim {max_dim}", cert.components, cert.dim))
}

/// `dim` of the projection of `l` onto `coords`, from a basis of `l`.
fn projected_dim(basis: &[Vec<BigRational>], coords: &[usize]) -> usize {
    let rows: Vec<Vec<BigRational>> = basis.iter().map(|v| coords.iter().map(|&i| v[i].clone()).collect()).collect();
    rank(&rows)
}

fn exact_cover_inequality() -> Outcome {
    let mut rng = stream_rng(SEED, 600);
    let mut tight = 0;
    for _ in 0..1000 {
        let ground = rand::Rng::gen_range(&mut rng, 1..=10);
        let k = rand::Rng::gen_range(&mut rng, 1..=4);
        let blocks = rand::Rng::gen_range(&mut rng, k..=k + 4);
        let l = random_subspace(&mut rng, ground);
        let cover = random_cover(&mut rng, ground, k, blocks).map_err(|e| e.to_string())?;
        let check = exact_cover_check(&l, &cover).map_err(|e| e.to_string())?;
        let basis = l.kernel_basis();
        let total: usize = cover.blocks().iter().map(|b| projected_dim(&basis, b)).sum();
        let holds = basis.len() * k <= total;
        ensure(check.holds && holds, || format!("inequality fails: dim {} vs {}/{}", basis.len(), total, k))?;
        ensure(check.lhs == basis.len() && check.rhs == BigRational::new(total.into(), k.into()), || {
            "the two evaluations disagree".into()
        })?;
        if basis.len() * k == total {
            tight += 1;
        }
    }
    for _ in 0..1000 {
        let ground = rand::Rng::gen_range(&mut rng, 1..=10);
        let l = random_subspace(&mut rng, ground);
        let a = random_coords(&mut rng, ground);
        let b = random_coords(&mut rng, ground);
        let union: Vec<usize> = (0..ground).filter(|x| a.contains(x) || b.contains(x)).collect();
        let meet: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
        let p = |c: &[usize]| l.projection_dim(c).map_err(|e| e.to_string());
        let (da, db, du, dm) = (p(&a)?, p(&b)?, p(&union)?, p(&meet)?);
        ensure(da + db >= du + dm, || format!("submodularity fails: {da} + {db} < {du} + {dm}"))?;
    }
    Ok(format!("1000 covers ({tight} tight), 1000 submodular steps"))
}

fn equivalence_invariances() -> Outcome {
    let ambients = [u(2, 5), u(2, 6), u(3, 6), Matroid::uniform_minus(2, 5, &[set([0, 1])]).unwrap()];
    let mut rng = stream_rng(SEED, 700);
    for i in 0..200 {
        let m = &ambients[i % ambients.len()];
        let nu = random_valuation(&mut rng, m).map_err(|e| e.to_string())?;
        let w = random_shift(&mut rng, m.n());
        let shifted = nu.shift(&w).map_err(|e| e.to_string())?;
        ensure(shifted.type_symbols() == nu.type_symbols(), || format!("shift changed the type of {nu:?}"))?;
    }
    let m = u(3, 6);
    let mut pairs = 0;
    let mut contractions = 0;
    while pairs < 100 {
        let nu = random_valuation(&mut rng, &m).map_err(|e| e.to_string())?;
        let other = random_equivalent(&mut rng, &nu).map_err(|e| e.to_string())?;
        ensure(other.equivalent(&nu).map_err(|e| e.to_string())?, || "sampler left the cell".into())?;
        for e in 0..m.n() {
            let s = subset::singleton(e);
            let a = nu.contract(s).map_err(|e| e.to_string())?;
            let b = other.contract(s).map_err(|e| e.to_string())?;
            ensure(a.equivalent(&b).map_err(|e| e.to_string())?, || format!("contraction by {e} separates {nu:?} and {other:?}"))?;
            contractions += 1;
        }
        pairs += 1;
    }
    Ok(format!("200 shifts, {pairs} pairs, {contractions} contractions"))
}

fn distinctness() -> Outcome {
    let mut summary = Vec::new();
    for (n, r) in [(5, 2), (6, 2), (6, 3)] {
        let all = sparse_paving_matroids(n, r).map_err(|e| e.to_string())?;
        let census = census_from_matroids(n, r, &all, false).map_err(|e| e.to_string())?;
        ensure(census.injective && census.distinct_types == all.len(), || {
            format!("({n},{r}): {} types for {} matroids", census.distinct_types, all.len())
        })?;
        summary.push(format!("({n},{r}): {}", all.len()));
    }
    Ok(summary.join(", "))
}

fn subdivision_consistency() -> Outcome {
    let octa = Valuation::zero(u(2, 4)).with_value(set([0, 1]), int(1)).unwrap();
    let report = spread_report(&octa).map_err(|e| e.to_string())?;
    ensure(report.spread == 2 && (report.within_r2, report.within_r1) == (false, true), || format!("{report:?}"))?;

    let mut rank2 = 0;
    for n in 4..=6 {
        let m = u(2, n);
        for cell in enumerate_rank2_cells(&m).map_err(|e| e.to_string())? {
            let tree = canonical_tree(n, &cell.topology.splits).map_err(|e| e.to_string())?;
            let nu = tree_to_valuation(&tree, &m).map_err(|e| e.to_string())?;
            spread_matches_tree(&nu)?;
            rank2 += 1;
        }
    }
    let mut rng = stream_rng(SEED, 900);
    for m in common::rank2_corpus().iter().filter(|m| !m.is_uniform()) {
        for _ in 0..20 {
            let nu = random_tree_valuation(&mut rng, m).map_err(|e| e.to_string())?;
            spread_matches_tree(&nu)?;
            rank2 += 1;
        }
    }

    let ambients = [u(2, 5), u(2, 6), u(3, 6), Matroid::uniform_minus(2, 6, &[set([0, 1])]).unwrap()];
    let mut pairs = 0;
    while pairs < 50 {
        let m = &ambients[pairs % ambients.len()];
        let nu = random_valuation(&mut rng, m).map_err(|e| e.to_string())?;
        let other = random_equivalent(&mut rng, &nu).map_err(|e| e.to_string())?;
        let a = subdivision_cells(&nu).map_err(|e| e.to_string())?;
        let b = subdivision_cells(&other).map_err(|e| e.to_string())?;
        ensure(a.status == ExplorationStatus::Exhaustive && b.status == ExplorationStatus::Exhaustive, || {
            "exploration hit the cap".into()
        })?;
        ensure(a.maximal_cells == b.maximal_cells, || format!("subdivisions differ for {nu:?} and {other:?}"))?;
        pairs += 1;
    }
    Ok(format!("octahedron spread 2 (r-2: false, r-1: true), {rank2} tree checks, {pairs} equivalent pairs"))
}

fn spread_matches_tree(nu: &Valuation) -> Result<(), String> {
    let census = subdivision_cells(nu).map_err(|e| e.to_string())?;
    let tree = decode_tree(nu).map_err(|e| e.to_string())?;
    ensure(census.status == ExplorationStatus::Exhaustive, || "exploration hit the cap".into())?;
    ensure(census.spread == tree.internal_vertex_count(), || {
        format!("spread {} but {} internal vertices for {nu:?}", census.spread, tree.internal_vertex_count())
    })
}

fn bounds_regression() -> Outcome {
    let fixtures: Value = serde_json::from_str(include_str!("fixtures/bounds.json")).map_err(|e| e.to_string())?;
    let table = fixtures.as_object().ok_or("fixture is not an object")?;
    let mut fields = 0;
    for (n, r) in [(6, 3), (7, 3), (8, 4)] {
        let expected = table
            .get(&format!("{n},{r}"))
            .and_then(Value::as_object)
            .ok_or_else(|| format!("no fixture for ({n},{r})"))?;
        let report = bounds_report(n, r, 3).map_err(|e| e.to_string())?;
        ensure(report.entries.len() == expected.len(), || {
            format!("({n},{r}): {} fields, fixture has {}", report.entries.len(), expected.len())
        })?;
        for entry in &report.entries {
            let want = expected.get(&entry.quantity).and_then(Value::as_str);
            ensure(want == Some(entry.value.as_str()), || {
                format!("({n},{r}) {}: {} vs fixture {want:?}", entry.quantity, entry.value)
            })?;
            ensure(!entry.anchor.trim().is_empty(), || format!("({n},{r}) {} has no anchor", entry.quantity))?;
            fields += 1;
        }
    }
    Ok(format!("{fields} fields match"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("type sizes 15/9/5", type_sizes_on_five_elements, Duration::from_secs(1)),
        ("dual checker agreement", checker_agreement, Duration::from_secs(60)),
        ("rank-2 census", rank2_census, Duration::from_secs(30)),
        ("dimension machinery", dimension_machinery, Duration::from_secs(120)),
        ("lower-bound certificate (6,3)", lower_bound_six_three, Duration::from_secs(60)),
        ("exact-cover inequality", exact_cover_inequality, Duration::from_secs(60)),
        ("equivalence invariances", equivalence_invariances, Duration::from_secs(60)),
        ("distinctness", distinctness, Duration::from_secs(300)),
        ("subdivision consistency", subdivision_consistency, Duration::from_secs(120)),
        ("bounds regression", bounds_regression, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed < *limit => (true, d),
            Ok(d) => (false, format!("{d}; took longer than {limit:?}")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} [{:.2?} / {:?}] {}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            elapsed,
            limit,
            detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
