//! Labeled enumeration and isomorphism-class representatives.
//!
//! The canonical form of a tournament is the relabelling whose orientation
//! string is lexicographically smallest over all permutations, with pairs
//! listed colexicographically: `(0,1), (0,2), (1,2), (0,3), …`. Placing vertices
//! position by position then fixes a growing prefix of the string, so only the
//! partial placements tied for the smallest prefix are kept.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{check_cap, invalid, Result};
use crate::tournament::{Permutation, Tournament, VertexSet, MAX_ORDER};

/// Environment variable overriding [`Limits::max_enumeration_order`].
pub const MAX_N_ENV: &str = "CRTOUR_MAX_N";

/// Configurable resource caps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_enumeration_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enumeration_order: 8,
        }
    }
}

impl Limits {
    /// Defaults, with `CRTOUR_MAX_N` applied when it parses as an order.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(n) = std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            l.max_enumeration_order = n;
        }
        l
    }
}

/// Canonical string packed most-significant-first, and the placement
/// (`order[p]` is the original vertex put at position `p`).
pub fn canonical_labeling(t: &Tournament) -> (u128, Vec<usize>) {
    let n = t.order();
    let mut partials: Vec<(Vec<usize>, VertexSet)> =
        (0..n).map(|v| (vec![v], VertexSet::singleton(v))).collect();
    let mut code: u128 = 0;
    for p in 1..n {
        let mut best: Option<u32> = None;
        let mut next = Vec::new();
        for (placed, used) in &partials {
            for v in used.complement(n).iter() {
                let bits = placed
                    .iter()
                    .fold(0u32, |acc, &a| acc << 1 | t.beats(a, v) as u32);
                match best {
                    Some(b) if bits > b => continue,
                    Some(b) if bits == b => {}
                    _ => {
                        best = Some(bits);
                        next.clear();
                    }
                }
                let mut extended = placed.clone();
                extended.push(v);
                next.push((extended, used.with(v)));
            }
        }
        code = code << p | best.expect("a vertex remains") as u128;
        partials = next;
    }
    let placement = partials.swap_remove(0).0;
    (code, placement)
}

/// The canonical representative of the isomorphism class of `t`.
pub fn canonical_form(t: &Tournament) -> Tournament {
    t.induced_ordered(&canonical_labeling(t).1)
}

/// Canonical relabelling as a permutation taking `t` onto [`canonical_form`].
pub fn canonical_permutation(t: &Tournament) -> Permutation {
    let placement = canonical_labeling(t).1;
    Permutation::new(placement)
        .expect("placement is a bijection")
        .inverse()
}

static CLASSES: [OnceLock<Vec<Tournament>>; MAX_ORDER + 1] =
    [const { OnceLock::new() }; MAX_ORDER + 1];

/// One canonical representative per isomorphism class, sorted by canonical string.
pub fn tournament_classes(n: usize, limits: &Limits) -> Result<Vec<Tournament>> {
    if n == 0 {
        return Err(invalid("tournaments have at least one vertex"));
    }
    check_cap(
        "enumeration order",
        n,
        limits.max_enumeration_order.min(MAX_ORDER),
    )?;
    Ok(classes_cached(n).clone())
}

fn classes_cached(n: usize) -> &'static Vec<Tournament> {
    CLASSES[n].get_or_init(|| {
        if n == 1 {
            return vec![Tournament::transitive(1).expect("order 1")];
        }
        let smaller = classes_cached(n - 1);
        let found: BTreeMap<u128, Tournament> = smaller
            .par_iter()
            .flat_map_iter(|base| {
                (0..1u32 << (n - 1)).map(move |m| {
                    let t = base
                        .with_vertex(VertexSet::from_bits(m))
                        .expect("order fits");
                    let (code, placement) = canonical_labeling(&t);
                    (code, t.induced_ordered(&placement))
                })
            })
            .collect();
        found.into_values().collect()
    })
}

/// Every labeled tournament of order `n`, in increasing orientation-string order.
pub fn labeled_tournaments(
    n: usize,
    limits: &Limits,
) -> Result<impl Iterator<Item = Tournament> + Send> {
    if n == 0 {
        return Err(invalid("tournaments have at least one vertex"));
    }
    check_cap(
        "enumeration order",
        n,
        limits.max_enumeration_order.min(MAX_ORDER),
    )?;
    let m = n * (n - 1) / 2;
    let count: u128 = 1u128 << m;
    Ok((0..count).map(move |s| {
        let bits: Vec<bool> = (0..m).map(|k| s >> (m - 1 - k) & 1 == 1).collect();
        Tournament::from_row_major_bits(n, &bits).expect("bit count matches")
    }))
}

/// Labeled stream, or class representatives when `dedupe` is set.
pub fn enumerate_tournaments(
    n: usize,
    dedupe: bool,
    limits: &Limits,
) -> Result<Box<dyn Iterator<Item = Tournament> + Send>> {
    if dedupe {
        Ok(Box::new(tournament_classes(n, limits)?.into_iter()))
    } else {
        Ok(Box::new(labeled_tournaments(n, limits)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;

    fn brute_force_classes(n: usize) -> Vec<Tournament> {
        let mut reps: Vec<Tournament> = Vec::new();
        for t in labeled_tournaments(n, &Limits::default()).unwrap() {
            if !reps.iter().any(|r| is_isomorphic(r, &t).is_some()) {
                reps.push(t);
            }
        }
        reps
    }

    #[test]
    fn class_counts() {
        let l = Limits::default();
        let counts: Vec<usize> = (1..=7)
            .map(|n| tournament_classes(n, &l).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 12, 56, 456]);
        assert_eq!(labeled_tournaments(3, &l).unwrap().count(), 8);
        assert_eq!(labeled_tournaments(2, &l).unwrap().count(), 2);
    }

    #[test]
    fn classes_match_pairwise_isomorphism() {
        for n in 1..=5 {
            let reps = tournament_classes(n, &Limits::default()).unwrap();
            assert_eq!(reps.len(), brute_force_classes(n).len());
            for (i, a) in reps.iter().enumerate() {
                for b in &reps[i + 1..] {
                    assert!(is_isomorphic(a, b).is_none());
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_a_class_invariant() {
        for t in labeled_tournaments(5, &Limits::default()).unwrap() {
            let c = canonical_form(&t);
            assert!(is_isomorphic(&t, &c).is_some());
            assert_eq!(canonical_form(&c), c);
            let phi = canonical_permutation(&t);
            assert_eq!(t.relabel(&phi).unwrap(), c);
        }
        let l = Limits::default();
        for t in labeled_tournaments(4, &l).unwrap() {
            let reps = tournament_classes(4, &l).unwrap();
            assert_eq!(reps.iter().filter(|r| **r == canonical_form(&t)).count(), 1);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let l = Limits {
            max_enumeration_order: 5,
        };
        assert!(matches!(
            tournament_classes(6, &l),
            Err(crate::Error::ResourceLimit { .. })
        ));
        assert!(labeled_tournaments(6, &l).is_err());
        assert!(labeled_tournaments(0, &l).is_err());
    }
}
