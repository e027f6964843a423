mod common;

use dressian::cells::{cell_dim, cell_subspace, subspace_from_symbols, u_dim, u_subspace};
use dressian::sample::{random_coords, random_equivalent, stream_rng};
use dressian::{symbol_sets, Matroid, Valuation};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn corpus_strategy() -> impl Strategy<Value = (Matroid, u64)> {
    let corpus = common::mixed_corpus();
    (0..corpus.len(), any::<u64>()).prop_map(move |(i, seed)| (corpus[i].clone(), seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn valuations_lie_in_their_cell_hull((m, seed) in corpus_strategy()) {
        let mut rng = stream_rng(seed, 0);
        let nu = common::any_valuation(&mut rng, &m);
        let l = cell_subspace(&nu).unwrap();
        prop_assert!(l.contains(nu.values()).unwrap());
        let u = u_subspace(&m).unwrap();
        prop_assert_eq!(l.intersect(&u).unwrap().dim(), l.dim());
        prop_assert!(l.dim() <= u_dim(&m).unwrap());
        if m.is_uniform() {
            prop_assert!(l.dim() >= m.n());
        }
    }

    #[test]
    fn equivalent_valuations_share_the_hull((m, seed) in corpus_strategy()) {
        let mut rng = stream_rng(seed, 1);
        let nu = common::any_valuation(&mut rng, &m);
        let other = random_equivalent(&mut rng, &nu).unwrap();
        let (a, b) = (cell_subspace(&nu).unwrap(), cell_subspace(&other).unwrap());
        prop_assert_eq!(a.dim(), b.dim());
        prop_assert_eq!(a.intersect(&b).unwrap().dim(), a.dim());
        prop_assert!(a.contains(other.values()).unwrap());
    }

    #[test]
    fn more_symbols_give_smaller_hulls((m, seed) in corpus_strategy(), cut in 0.0f64..1.0) {
        let mut rng = stream_rng(seed, 2);
        let mut all = symbol_sets(&m).all;
        all.shuffle(&mut rng);
        let k = (all.len() as f64 * cut) as usize;
        let small = subspace_from_symbols(&m, &all[..k]).unwrap();
        let large = subspace_from_symbols(&m, &all).unwrap();
        prop_assert!(large.dim() <= small.dim());
        prop_assert_eq!(large.intersect(&small).unwrap().dim(), large.dim());
    }

    #[test]
    fn projections_are_submodular((m, seed) in corpus_strategy()) {
        let mut rng = stream_rng(seed, 3);
        let nu = common::any_valuation(&mut rng, &m);
        let l = cell_subspace(&nu).unwrap();
        let k = l.ambient();
        let a = random_coords(&mut rng, k);
        let b = random_coords(&mut rng, k);
        let union: Vec<usize> = (0..k).filter(|x| a.contains(x) || b.contains(x)).collect();
        let meet: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
        let p = |c: &[usize]| l.projection_dim(c).unwrap();
        prop_assert!(p(&a) + p(&b) >= p(&union) + p(&meet));
    }

    #[test]
    fn sparse_paving_cells_have_at_least_c_dimensions(n in 5usize..8, r in 2usize..4, seed in any::<u64>(), keep in 0.1f64..1.0) {
        prop_assume!(r + 2 <= n);
        let mut rng = stream_rng(seed, 4);
        let nonbases = common::random_stable_set(&mut rng, n, r, keep);
        let sp = Matroid::uniform_minus(r, n, &nonbases).unwrap();
        let c = sp.johnson_components().component_count;
        let d = cell_dim(&Valuation::from_matroid(&sp)).unwrap();
        prop_assert!(d >= c, "dim {} < c = {}", d, c);
        prop_assert!(d >= n);
    }
}
