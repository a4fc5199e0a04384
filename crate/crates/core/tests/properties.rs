use crtour::format::{parse_tournament, to_skew_text, to_trn, to_trn_inline};
use crtour::{
    canonical_form, count_cr_sigmas, decompose_transitive_blowup, gen_ln, in_dk, is_cr_tournament,
    is_isomorphic, max_subtournament_det, switching_isomorphic, tournament_det, transitive_blowup,
    Permutation, Tournament, VertexSet,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tournament(lo: usize, hi: usize) -> impl Strategy<Value = Tournament> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            Tournament::from_fn(n, |_, _| it.next().unwrap()).unwrap()
        })
    })
}

fn with_scramble(
    lo: usize,
    hi: usize,
) -> impl Strategy<Value = (Tournament, VertexSet, Permutation)> {
    tournament(lo, hi).prop_flat_map(|t| {
        let n = t.order();
        (
            Just(t),
            (0u32..1 << n).prop_map(VertexSet::from_bits),
            Just((0..n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|p| Permutation::new(p).unwrap()),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn text_formats_round_trip(t in tournament(1, 16)) {
        prop_assert_eq!(parse_tournament(&to_trn(&t)).unwrap(), t);
        prop_assert_eq!(parse_tournament(&to_trn_inline(&t)).unwrap(), t);
        prop_assert_eq!(parse_tournament(&to_skew_text(&t)).unwrap(), t);
    }

    #[test]
    fn determinant_is_a_switching_class_invariant((t, w, phi) in with_scramble(1, 12)) {
        let s = t.switch(w).unwrap().relabel(&phi).unwrap();
        prop_assert_eq!(tournament_det(&t), tournament_det(&s));
    }

    #[test]
    fn minor_scan_is_consistent(t in tournament(2, 10)) {
        let rep = max_subtournament_det(&t).unwrap();
        prop_assert_eq!(rep.k % 2, 1);
        prop_assert_eq!(rep.max_minor, rep.k * rep.k);
        let witness = t.induced(rep.witness).unwrap();
        prop_assert_eq!(tournament_det(&witness) as u64, rep.max_minor);
        prop_assert!(in_dk(&t, rep.k).unwrap());
        prop_assert!(rep.k == 1 || !in_dk(&t, rep.k - 2).unwrap());
    }

    #[test]
    fn switching_isomorphism_is_found((t, w, phi) in with_scramble(1, 9)) {
        let s = t.switch(w).unwrap().relabel(&phi).unwrap();
        prop_assert!(switching_isomorphic(&t, &s).is_some());
    }

    #[test]
    fn canonical_form_is_a_relabeling_invariant((t, _w, phi) in with_scramble(1, 7)) {
        let r = t.relabel(&phi).unwrap();
        let c = canonical_form(&t);
        prop_assert_eq!(c, canonical_form(&r));
        prop_assert!(is_isomorphic(&c, &t).is_some());
    }

    #[test]
    fn cr_status_survives_switching((t, w, _phi) in with_scramble(3, 6)) {
        let s = t.switch(w).unwrap();
        prop_assert_eq!(is_cr_tournament(&t).unwrap().is_cr, is_cr_tournament(&s).unwrap().is_cr);
        prop_assert_eq!(count_cr_sigmas(&t).unwrap(), count_cr_sigmas(&s).unwrap());
    }
}

#[test]
fn single_vertex_has_no_even_minor() {
    let rep = max_subtournament_det(&Tournament::transitive(1).unwrap()).unwrap();
    assert_eq!((rep.max_minor, rep.k), (0, 1));
    assert!(rep.witness.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn planted_blowups_decompose(
        k in prop::sample::select(vec![4usize, 6]),
        extra in proptest::collection::vec(0usize..6, 0..5),
        w_bits in any::<u32>(),
        seed in any::<u64>(),
    ) {
        let base = gen_ln(k).unwrap();
        let mut sizes = vec![1; k];
        for e in &extra {
            sizes[e % k] += 1;
        }
        let b = transitive_blowup(&base, &sizes).unwrap();
        let n = b.order();
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let t = b
            .switch(VertexSet::from_bits(w_bits & VertexSet::full(n).bits()))
            .unwrap()
            .relabel(&Permutation::new(images).unwrap())
            .unwrap();
        let dec = decompose_transitive_blowup(&t, &base).unwrap().expect("planted blowup");
        prop_assert!(dec.verify(&t));
        let mut got: Vec<usize> = dec.blocks.iter().map(Vec::len).collect();
        let mut want = sizes.clone();
        got.sort_unstable();
        want.sort_unstable();
        prop_assert_eq!(got, want);
        prop_assert!(is_isomorphic(&dec.reconstruct().unwrap(), &t).is_some());
    }
}
