mod common;

use dressian::bounds::bounds_report;
use dressian::cells::cell_dim;
use dressian::sample::{random_equivalent, random_tree_valuation, random_valuation, stream_rng};
use dressian::tree::{decode_tree, enumerate_rank2_cells, tree_to_valuation, MetricTree};
use dressian::Matroid;
use proptest::prelude::*;

fn rank2_strategy() -> impl Strategy<Value = (Matroid, u64)> {
    let mut corpus = common::rank2_corpus();
    corpus.push(Matroid::uniform(2, 7).unwrap());
    (0..corpus.len(), any::<u64>()).prop_map(move |(i, seed)| (corpus[i].clone(), seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn decoding_round_trips((m, seed) in rank2_strategy()) {
        let mut rng = stream_rng(seed, 0);
        let nu = if seed % 2 == 0 { random_tree_valuation(&mut rng, &m).unwrap() } else { random_valuation(&mut rng, &m).unwrap() };
        let tree = decode_tree(&nu).unwrap();
        prop_assert_eq!(&tree_to_valuation(&tree, &m).unwrap(), &nu);
        let text = tree.to_newick();
        let parsed = MetricTree::parse_newick(&text).unwrap();
        prop_assert_eq!(tree_to_valuation(&parsed, &m).unwrap(), nu);
        prop_assert!(tree.internal_edges().all(|(_, _, l)| *l < num::Zero::zero()));
    }

    #[test]
    fn equivalence_matches_topology((m, seed) in rank2_strategy()) {
        let mut rng = stream_rng(seed, 1);
        let a = random_tree_valuation(&mut rng, &m).unwrap();
        let b = random_tree_valuation(&mut rng, &m).unwrap();
        let (ta, tb) = (decode_tree(&a).unwrap().topology(), decode_tree(&b).unwrap().topology());
        prop_assert_eq!(a.equivalent(&b).unwrap(), ta == tb);
        let c = random_equivalent(&mut rng, &a).unwrap();
        prop_assert_eq!(decode_tree(&c).unwrap().topology(), ta);
    }

    #[test]
    fn cell_dimension_counts_tree_edges((m, seed) in rank2_strategy()) {
        let mut rng = stream_rng(seed, 2);
        let nu = random_tree_valuation(&mut rng, &m).unwrap();
        let tree = decode_tree(&nu).unwrap();
        let classes = m.parallel_classes().len();
        let internal = tree.topology().internal_edge_count();
        prop_assert_eq!(cell_dim(&nu).unwrap(), m.n() + internal);
        prop_assert!(internal <= classes.saturating_sub(3));
        prop_assert!(cell_dim(&nu).unwrap() <= m.n() + classes - 3);
    }
}

#[test]
fn census_agrees_with_leaf_insertion_on_parallel_classes() {
    for m in common::rank2_corpus() {
        let cells = enumerate_rank2_cells(&m).unwrap();
        let classes = m.parallel_classes();
        let oracle = common::tree_topologies(classes.len());
        assert_eq!(cells.len(), oracle.len(), "{m:?}");
        for cell in &cells {
            // every cluster is a union of parallel classes
            for &split in &cell.topology.splits {
                assert!(classes.iter().all(|&c| c & split == 0 || c & split == c));
            }
            assert_eq!(cell.dim, m.n() + cell.topology.internal_edge_count());
        }
    }
}

#[test]
fn tree_bounds_hold_for_uniform_rank_two() {
    for n in 4..=7 {
        let m = Matroid::uniform(2, n).unwrap();
        let cells = enumerate_rank2_cells(&m).unwrap();
        let report = bounds_report(n, 2, 2).unwrap();
        let max_dim = cells.iter().map(|c| c.dim).max().unwrap();
        assert_eq!(max_dim, 2 * n - 3);
        assert!(dressian::BigRational::from_integer(max_dim.into()) <= report.get("tree_dim_upper").unwrap().numeric);
        let count = dressian::BigRational::from_integer(cells.len().into());
        assert!(count <= report.get("tree_count_upper").unwrap().numeric);
    }
    let seven = enumerate_rank2_cells(&Matroid::uniform(2, 7).unwrap()).unwrap();
    assert_eq!(seven.len(), common::tree_topologies(7).len());
}
