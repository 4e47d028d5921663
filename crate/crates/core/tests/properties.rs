use prgraph::groups::abelian::{AbelianGroup, Residues};
use prgraph::groups::literal::{format_tuple, parse_tuple};
use prgraph::lemmas::{apply_exponents, frattini, gaschuetz_exponents};
use prgraph::pragraph::all_moves;
use prgraph::walker::{Chain, MovePolicy, WalkConfig};
use prgraph::{build_group, make_field, NielsenWord};
use proptest::prelude::*;

fn field_params() -> impl Strategy<Value = (u32, u32)> {
    prop::sample::select(vec![(2, 1), (2, 3), (3, 2), (5, 1), (7, 1), (11, 1), (2, 4)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((p, e) in field_params(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = make_field(p, e).unwrap();
        let q = f.order();
        let (a, b, c) = (f.element(a % q).unwrap(), f.element(b % q).unwrap(), f.element(c % q).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, q as u64 - 1), f.one());
        }
    }

    #[test]
    fn words_invert_and_preserve_generation(
        spec in prop::sample::select(vec!["sym:4", "psl2:5", "ab:3,6", "sl2:3"]),
        seed in any::<u64>(),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 0..40),
    ) {
        let g = build_group(spec).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let t = prgraph::walker::random_start(&g, 3, &mut rng).unwrap();
        let moves = all_moves(3, true);
        let w = NielsenWord(picks.iter().map(|i| moves[i.index(moves.len())]).collect());
        let end = w.apply(&g, &t).unwrap();
        prop_assert!(g.is_generating(&end));
        prop_assert_eq!(w.inverse().apply(&g, &end).unwrap(), t.clone());
        let text = w.to_string();
        let back: NielsenWord = text.parse().unwrap();
        prop_assert_eq!(back, w);
        prop_assert_eq!(parse_tuple(&g, &format_tuple(&g, &t)).unwrap(), t);
    }

    #[test]
    fn gaschuetz_exponents_generate(
        factors in prop::sample::select(vec![vec![2u32, 4], vec![3, 9], vec![12], vec![2, 2, 2], vec![4, 8]]),
        extra in 0..3usize,
        raw in prop::collection::vec(any::<u64>(), 8),
    ) {
        let k = AbelianGroup::new(factors).unwrap();
        let n = k.rank() + extra;
        let a = k.from_index(raw[0] % k.order());
        let b: Vec<Residues> = (0..n).map(|i| k.from_index(raw[i + 1] % k.order())).collect();
        let s = gaschuetz_exponents(&k, &a, &b).unwrap();
        let mut all = vec![a.clone()];
        all.extend(b.iter().cloned());
        prop_assert_eq!(k.span(&apply_exponents(&k, &a, &b, &s.exponents)), k.span(&all));
        // Phi(K) is a subgroup contained in every rK
        let phi = frattini(&k);
        prop_assert_eq!(k.order() % phi.len() as u64, 0);
    }

    #[test]
    fn walk_stays_generating(seed in any::<u64>(), extended in any::<bool>()) {
        let g = build_group("alt:5").unwrap();
        let mut cfg = WalkConfig::new(3, 0, seed);
        cfg.policy = if extended { MovePolicy::Extended } else { MovePolicy::Plain };
        let mut chain = Chain::new(&g, &cfg, 0, None).unwrap();
        for _ in 0..2000 {
            chain.step();
            prop_assert!(g.is_generating(chain.state()));
        }
    }
}
