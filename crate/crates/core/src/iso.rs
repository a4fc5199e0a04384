//! Isomorphism, switching equivalence and switching isomorphism.

use crate::detkit::tournament_det;
use crate::error::{invalid, Result};
use crate::tournament::{Permutation, SwitchSet, Tournament, VertexSet};

/// Per-vertex invariant: own score and the sorted scores of out-neighbours.
fn vertex_key(t: &Tournament, u: usize) -> (usize, Vec<usize>) {
    let mut nb: Vec<usize> = t.out_set(u).iter().map(|v| t.score(v)).collect();
    nb.sort_unstable();
    (t.score(u), nb)
}

/// An isomorphism `φ` with `θ_{T2}(φu, φv) = θ_{T1}(u, v)`, if any.
pub fn is_isomorphic(t1: &Tournament, t2: &Tournament) -> Option<Permutation> {
    let n = t1.order();
    if n != t2.order() {
        return None;
    }
    let mut s1 = t1.scores();
    let mut s2 = t2.scores();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }
    let k1: Vec<_> = (0..n).map(|u| vertex_key(t1, u)).collect();
    let k2: Vec<_> = (0..n).map(|u| vertex_key(t2, u)).collect();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| k1[u] == k2[v]).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| candidates[u].len());
    let mut map = vec![usize::MAX; n];
    let mut used = VertexSet::EMPTY;
    if extend_map(t1, t2, &order, &candidates, 0, &mut map, &mut used) {
        Some(Permutation::new(map).expect("complete bijection"))
    } else {
        None
    }
}

fn extend_map(
    t1: &Tournament,
    t2: &Tournament,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    map: &mut [usize],
    used: &mut VertexSet,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for &v in &candidates[u] {
        if used.contains(v) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| t1.beats(u, w) == t2.beats(v, map[w]));
        if !consistent {
            continue;
        }
        map[u] = v;
        used.insert(v);
        if extend_map(t1, t2, order, candidates, depth + 1, map, used) {
            return true;
        }
        used.remove(v);
        map[u] = usize::MAX;
    }
    false
}

/// `W` with `switch(T1, W) = T2` on the same labels, taking vertex 0 outside `W`.
pub fn switching_equivalent(t1: &Tournament, t2: &Tournament) -> Result<Option<SwitchSet>> {
    if t1.order() != t2.order() {
        return Err(invalid("switching equivalence needs equal orders"));
    }
    let w: SwitchSet = (1..t1.order())
        .filter(|&v| t1.beats(0, v) != t2.beats(0, v))
        .collect();
    Ok((t1.switch(w)? == *t2).then_some(w))
}

/// Switch set making `v` dominate every other vertex, and the switched tournament.
pub fn normalize_at(t: &Tournament, v: usize) -> (SwitchSet, Tournament) {
    let w = t.in_set(v);
    (w, t.switch(w).expect("in-neighbourhood is a vertex subset"))
}

/// A witness `(W, φ)` with `switch(T1, W) ≅ T2` via `φ`; `None` for different orders.
pub fn switching_isomorphic(t1: &Tournament, t2: &Tournament) -> Option<(SwitchSet, Permutation)> {
    if t1.order() != t2.order() {
        return None;
    }
    let (w1, n1) = normalize_at(t1, 0);
    for u in 0..t2.order() {
        let (wu, n2) = normalize_at(t2, u);
        if let Some(phi) = is_isomorphic(&n1, &n2) {
            let pulled_back = phi.inverse().image_of(wu);
            let w = w1.symmetric_difference(pulled_back);
            debug_assert!(is_isomorphism(&t1.switch(w).unwrap(), t2, &phi));
            return Some((w, phi));
        }
    }
    None
}

/// Whether `φ` maps `t1` onto `t2` arc for arc.
pub fn is_isomorphism(t1: &Tournament, t2: &Tournament, phi: &Permutation) -> bool {
    t1.order() == t2.order()
        && phi.len() == t1.order()
        && t1.relabel(phi).map(|r| r == *t2).unwrap_or(false)
}

pub fn is_diamond(t: &Tournament) -> bool {
    t.order() == 4 && tournament_det(t) == 9
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute_switching_equivalent(t1: &Tournament, t2: &Tournament) -> bool {
        let n = t1.order();
        (0..1u32 << (n - 1)).any(|m| t1.switch(VertexSet::from_bits(m << 1)).unwrap() == *t2)
    }

    fn arb_tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
        (1usize..=max_n, any::<u64>()).prop_map(|(n, bits)| {
            Tournament::from_fn(n, |i, j| bits >> ((i * 6 + j) % 64) & 1 == 1).unwrap()
        })
    }

    #[test]
    fn isomorphism_examples() {
        let c = Tournament::three_cycle();
        assert_eq!(is_isomorphic(&c, &c), Some(Permutation::identity(3)));
        let c2 = Tournament::from_fn(3, |i, j| (i, j) == (0, 2)).unwrap();
        let phi = is_isomorphic(&c, &c2).expect("all 3-cycles are isomorphic");
        assert!(is_isomorphism(&c, &c2, &phi));
        let chain = Tournament::transitive(3).unwrap();
        assert!(switching_equivalent(&c, &chain).unwrap().is_none());
        assert!(switching_equivalent(&c, &Tournament::transitive(4).unwrap()).is_err());
    }

    #[test]
    fn diamond_variants_are_switching_isomorphic() {
        // apex 3 dominating the 3-cycle, and apex dominated by it
        let dom = Tournament::three_cycle()
            .with_vertex(VertexSet::full(3))
            .unwrap();
        let sub = Tournament::three_cycle()
            .with_vertex(VertexSet::EMPTY)
            .unwrap();
        assert!(is_diamond(&dom) && is_diamond(&sub));
        assert!(is_isomorphic(&dom, &sub).is_none());
        let (w, phi) = switching_isomorphic(&dom, &sub).unwrap();
        assert!(is_isomorphism(&dom.switch(w).unwrap(), &sub, &phi));
        assert!(!is_diamond(&Tournament::transitive(4).unwrap()));
    }

    proptest! {
        #[test]
        fn anchored_equivalence_matches_brute_force(t in arb_tournament(6), w in any::<u32>(), flip in any::<bool>()) {
            let n = t.order();
            let w = VertexSet::from_bits(w).intersection(t.vertices());
            let mut t2 = t.switch(w).unwrap();
            if flip && n >= 2 {
                t2 = t2.reverse_arc(0, n - 1).unwrap();
            }
            let fast = switching_equivalent(&t, &t2).unwrap();
            prop_assert_eq!(fast.is_some(), brute_switching_equivalent(&t, &t2));
            if let Some(w) = fast {
                prop_assert!(!w.contains(0));
                prop_assert_eq!(t.switch(w).unwrap(), t2);
            }
        }

        #[test]
        fn switching_isomorphism_finds_planted_witness(t in arb_tournament(8), w in any::<u32>(), seed in any::<u64>()) {
            let n = t.order();
            let w = VertexSet::from_bits(w).intersection(t.vertices());
            let mut images: Vec<usize> = (0..n).collect();
            images.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let phi = Permutation::new(images).unwrap();
            let target = t.switch(w).unwrap().relabel(&phi).unwrap();
            let (w2, phi2) = switching_isomorphic(&t, &target).unwrap();
            prop_assert!(is_isomorphism(&t.switch(w2).unwrap(), &target, &phi2));
        }

        #[test]
        fn equivalence_is_transitive(t in arb_tournament(7), a in any::<u32>(), b in any::<u32>()) {
            let t2 = t.switch(VertexSet::from_bits(a).intersection(t.vertices())).unwrap();
            let t3 = t2.switch(VertexSet::from_bits(b).intersection(t.vertices())).unwrap();
            prop_assert!(switching_equivalent(&t, &t2).unwrap().is_some());
            prop_assert!(switching_equivalent(&t2, &t3).unwrap().is_some());
            prop_assert!(switching_equivalent(&t, &t3).unwrap().is_some());
        }

        #[test]
        fn transitivity_agrees_with_triple_scan(t in arb_tournament(8)) {
            prop_assert_eq!(t.is_transitive().is_some(), !t.has_three_cycle());
        }
    }
}
