//! CR-associated vertices, one-vertex extensions `T(u,σ)`, and the CR, basic
//! and strong-CR predicates.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::blowup::one_transitive_blowups;
use crate::detkit::{find_minor_above, max_subtournament_det};
use crate::error::{check_cap, invalid, Error, Result};
use crate::iso::is_diamond;
use crate::tournament::{SwitchSet, Tournament, VertexSet, MAX_ORDER};

/// Largest order accepted by [`is_cr_tournament`] (2^n extensions, each with
/// a scan over the subsets of `n+1` vertices).
pub const CR_CAP: usize = 12;

/// Sign sequence `(r_1, …, r_n)`; `r_i = +1` means the new vertex beats `v_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct DominatingRelation {
    n: u8,
    plus: VertexSet,
}

impl DominatingRelation {
    pub fn new(signs: &[i8]) -> Result<Self> {
        if signs.len() >= MAX_ORDER {
            return Err(invalid(format!("σ of length {} is too long", signs.len())));
        }
        let mut plus = VertexSet::EMPTY;
        for (i, &s) in signs.iter().enumerate() {
            match s {
                1 => plus.insert(i),
                -1 => {}
                _ => return Err(invalid(format!("σ entry {s} is not ±1"))),
            }
        }
        Ok(DominatingRelation {
            n: signs.len() as u8,
            plus,
        })
    }

    /// The relation under which the new vertex beats exactly `plus`.
    pub fn from_plus_set(n: usize, plus: VertexSet) -> Result<Self> {
        if n >= MAX_ORDER || !plus.is_subset(VertexSet::full(n)) {
            return Err(invalid("σ does not fit the target order"));
        }
        Ok(DominatingRelation { n: n as u8, plus })
    }

    /// The `index`-th relation in binary counting order: `r_1` is the most
    /// significant bit and `+1` is bit value 1.
    pub fn from_index(n: usize, index: u32) -> Self {
        let plus = (0..n).filter(|&i| index >> (n - 1 - i) & 1 == 1).collect();
        DominatingRelation { n: n as u8, plus }
    }

    /// All `2^n` relations in binary counting order.
    pub fn all(n: usize) -> impl Iterator<Item = DominatingRelation> {
        (0..1u32 << n).map(move |s| Self::from_index(n, s))
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `r_{i+1}` for the 0-based vertex `i`.
    pub fn sign(&self, i: usize) -> i8 {
        if self.plus.contains(i) {
            1
        } else {
            -1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.len()).map(|i| self.sign(i)).collect()
    }

    pub fn plus_set(&self) -> VertexSet {
        self.plus
    }

    /// The relation with every sign reversed.
    pub fn negated(&self) -> Self {
        DominatingRelation {
            n: self.n,
            plus: self.plus.complement(self.len()),
        }
    }

    /// The relation restricted to the first `k` vertices.
    pub fn prefix(&self, k: usize) -> Self {
        DominatingRelation {
            n: k.min(self.len()) as u8,
            plus: self.plus.intersection(VertexSet::full(k)),
        }
    }
}

impl fmt::Display for DominatingRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.plus.contains(i) { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for DominatingRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ({self})")
    }
}

impl FromStr for DominatingRelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs: Vec<i8> = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::Parse(format!(
                    "σ character {other:?} is not '+' or '-'"
                ))),
            })
            .collect::<Result<_>>()?;
        DominatingRelation::new(&signs)
    }
}

impl Serialize for DominatingRelation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CrKind {
    Covertices,
    Revertices,
    /// Both conditions hold vacuously (order 2).
    CovertexAndRevertex,
}

impl CrKind {
    pub fn label(self) -> &'static str {
        match self {
            CrKind::Covertices => "covertices",
            CrKind::Revertices => "revertices",
            CrKind::CovertexAndRevertex => "covertices-and-revertices",
        }
    }
}

impl Serialize for CrKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// An existing vertex CR-associated with the new vertex of `T(u,σ)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CrWitness {
    pub vertex: usize,
    pub kind: CrKind,
}

impl Serialize for CrWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CrWitness", 2)?;
        st.serialize_field("vertex", &(self.vertex + 1))?;
        st.serialize_field("kind", &self.kind)?;
        st.end()
    }
}

/// Kind of CR association given the two out-neighbourhoods restricted to
/// the other vertices.
fn association(a: VertexSet, b: VertexSet, others: VertexSet) -> Option<CrKind> {
    let agree = VertexSet::from_bits(!(a.bits() ^ b.bits())).intersection(others);
    if others.is_empty() {
        Some(CrKind::CovertexAndRevertex)
    } else if agree == others {
        Some(CrKind::Covertices)
    } else if agree.is_empty() {
        Some(CrKind::Revertices)
    } else {
        None
    }
}

pub fn cr_associated(t: &Tournament, u1: usize, u2: usize) -> Result<Option<CrKind>> {
    t.theta(u1, u2)?;
    Ok(associated_unchecked(t, u1, u2))
}

fn associated_unchecked(t: &Tournament, u1: usize, u2: usize) -> Option<CrKind> {
    let others = t.vertices().without(u1).without(u2);
    association(t.out_set(u1), t.out_set(u2), others)
}

fn check_len(t: &Tournament, sigma: &DominatingRelation) -> Result<()> {
    if sigma.len() != t.order() {
        return Err(invalid(format!(
            "σ has length {}, tournament has order {}",
            sigma.len(),
            t.order()
        )));
    }
    Ok(())
}

/// `T(u,σ)` with `u` as vertex `n`.
pub fn extend(t: &Tournament, sigma: &DominatingRelation) -> Result<Tournament> {
    check_len(t, sigma)?;
    t.with_vertex(sigma.plus_set())
}

/// Lowest-index vertex CR-associated with `u` in `T(u,σ)`.
pub fn cr_vertex_witness(t: &Tournament, sigma: &DominatingRelation) -> Result<Option<CrWitness>> {
    check_len(t, sigma)?;
    Ok(witness_unchecked(t, sigma.plus_set()))
}

fn witness_unchecked(t: &Tournament, u_beats: VertexSet) -> Option<CrWitness> {
    (0..t.order()).find_map(|v| {
        let others = t.vertices().without(v);
        association(u_beats, t.out_set(v), others).map(|kind| CrWitness { vertex: v, kind })
    })
}

pub fn count_cr_sigmas(t: &Tournament) -> Result<u64> {
    let n = t.order();
    check_cap("CR σ-count order", n, MAX_ORDER - 1)?;
    Ok((0..1u32 << n)
        .into_par_iter()
        .filter(|&m| witness_unchecked(t, VertexSet::from_bits(m)).is_some())
        .count() as u64)
}

/// `∅` for covertices, `{u}` for revertices; `None` when `u` is non-CR.
pub fn cr_normalize(t: &Tournament, sigma: &DominatingRelation) -> Result<Option<SwitchSet>> {
    Ok(cr_vertex_witness(t, sigma)?.map(|w| match w.kind {
        CrKind::Revertices => VertexSet::singleton(t.order()),
        _ => VertexSet::EMPTY,
    }))
}

pub fn is_trivial_cr(t: &Tournament) -> bool {
    t.order() <= 2 || is_diamond(t)
}

/// Outcome of the CR-tournament check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrReport {
    pub k: u64,
    pub trivial: bool,
    pub is_cr: bool,
    /// Non-CR relations whose extension stays inside `D_k`.
    pub failures: Vec<DominatingRelation>,
    /// Witness for every CR relation, in enumeration order.
    pub witness_map: Vec<(DominatingRelation, CrWitness)>,
    pub non_cr_count: u64,
}

impl Serialize for CrReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Map<'a>(&'a [(DominatingRelation, CrWitness)]);
        impl Serialize for Map<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (sigma, w) in self.0 {
                    m.serialize_entry(&sigma.to_string(), w)?;
                }
                m.end()
            }
        }
        let mut st = s.serialize_struct("CrReport", 5)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("trivial", &self.trivial)?;
        st.serialize_field("is_cr", &self.is_cr)?;
        st.serialize_field("failures", &self.failures)?;
        st.serialize_field("witness_map", &Map(&self.witness_map))?;
        st.end()
    }
}

enum SigmaOutcome {
    Cr(CrWitness),
    NonCrBreaksBound,
    NonCrStaysInside,
    CrButLeavesBound,
}

/// Checks every non-CR extension leaves `D_k` (`k` from the minor scan of `T`),
/// and that every CR extension stays in `D_k\D_{k−2}`; the latter is a theorem,
/// so a violation is reported as an error.
pub fn is_cr_tournament(t: &Tournament) -> Result<CrReport> {
    let n = t.order();
    check_cap("CR check order", n, CR_CAP)?;
    let dk = max_subtournament_det(t)?;
    let k = dk.k;
    if is_trivial_cr(t) {
        return Ok(CrReport {
            k,
            trivial: true,
            is_cr: true,
            failures: Vec::new(),
            witness_map: Vec::new(),
            non_cr_count: 0,
        });
    }
    let bound = k * k;
    let u = VertexSet::singleton(n);
    let outcomes: Vec<(DominatingRelation, SigmaOutcome)> = (0..1u32 << n)
        .into_par_iter()
        .map(|s| {
            let sigma = DominatingRelation::from_index(n, s);
            let ext = t.with_vertex(sigma.plus_set()).expect("order below cap");
            let above = find_minor_above(&ext, bound, u).is_some();
            let outcome = match (witness_unchecked(t, sigma.plus_set()), above) {
                (Some(w), false) => SigmaOutcome::Cr(w),
                (Some(_), true) => SigmaOutcome::CrButLeavesBound,
                (None, true) => SigmaOutcome::NonCrBreaksBound,
                (None, false) => SigmaOutcome::NonCrStaysInside,
            };
            (sigma, outcome)
        })
        .collect();
    let mut report = CrReport {
        k,
        trivial: false,
        is_cr: true,
        failures: Vec::new(),
        witness_map: Vec::new(),
        non_cr_count: 0,
    };
    let mut violations = Vec::new();
    for (sigma, outcome) in outcomes {
        match outcome {
            SigmaOutcome::Cr(w) => report.witness_map.push((sigma, w)),
            SigmaOutcome::CrButLeavesBound => violations.push(sigma.to_string()),
            SigmaOutcome::NonCrBreaksBound => report.non_cr_count += 1,
            SigmaOutcome::NonCrStaysInside => {
                report.non_cr_count += 1;
                report.failures.push(sigma);
            }
        }
    }
    if !violations.is_empty() {
        return Err(Error::TheoremViolation(format!(
            "CR extensions leave D_{k}: {}",
            violations.join(", ")
        )));
    }
    report.is_cr = report.failures.is_empty();
    Ok(report)
}

/// `n ≥ 4` and no two vertices are CR-associated.
pub fn is_basic(t: &Tournament) -> bool {
    let n = t.order();
    n >= 4 && (0..n).all(|a| (a + 1..n).all(|b| associated_unchecked(t, a, b).is_none()))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StrongCrReport {
    pub strong: bool,
    pub base: CrReport,
    /// One report per duplicated vertex.
    pub blowups: Vec<CrReport>,
}

/// Every 1-transitive blowup is a CR tournament; the base is checked too,
/// and a strong-CR tournament that is not CR is a theorem violation.
pub fn is_strong_cr(t: &Tournament) -> Result<StrongCrReport> {
    check_cap("strong-CR check order", t.order(), CR_CAP - 1)?;
    let base = is_cr_tournament(t)?;
    let blowups = one_transitive_blowups(t)?
        .iter()
        .map(is_cr_tournament)
        .collect::<Result<Vec<_>>>()?;
    let strong = blowups.iter().all(|r| r.is_cr);
    if strong && !base.is_cr {
        return Err(Error::TheoremViolation(
            "all 1-transitive blowups are CR but the base is not".into(),
        ));
    }
    Ok(StrongCrReport {
        strong,
        base,
        blowups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Tournament {
        Tournament::transitive(3).unwrap()
    }

    #[test]
    fn sigma_text_and_order() {
        let s: DominatingRelation = "+-+".parse().unwrap();
        assert_eq!(s.signs(), vec![1, -1, 1]);
        assert_eq!(s.to_string(), "+-+");
        let all: Vec<String> = DominatingRelation::all(2).map(|s| s.to_string()).collect();
        assert_eq!(all, vec!["--", "-+", "+-", "++"]);
        assert!("+x".parse::<DominatingRelation>().is_err());
    }

    #[test]
    fn association_examples() {
        let two = Tournament::transitive(2).unwrap();
        assert_eq!(
            cr_associated(&two, 0, 1).unwrap(),
            Some(CrKind::CovertexAndRevertex)
        );
        assert!(cr_associated(&two, 0, 0).is_err());
        let chain = chain3();
        let plus_all = DominatingRelation::new(&[1, 1, 1]).unwrap();
        assert_eq!(
            cr_vertex_witness(&chain, &plus_all).unwrap(),
            Some(CrWitness {
                vertex: 0,
                kind: CrKind::Covertices
            })
        );
        let l4_sigma = DominatingRelation::new(&[1, -1, 1]).unwrap();
        assert_eq!(cr_vertex_witness(&chain, &l4_sigma).unwrap(), None);
        assert_eq!(count_cr_sigmas(&chain).unwrap(), 6);
        assert!(extend(&chain, &DominatingRelation::new(&[1, 1]).unwrap()).is_err());
    }

    #[test]
    fn normalize_kinds() {
        let chain = chain3();
        let co = DominatingRelation::new(&[1, 1, 1]).unwrap();
        assert_eq!(cr_normalize(&chain, &co).unwrap(), Some(VertexSet::EMPTY));
        let re = DominatingRelation::new(&[1, 1, -1]).unwrap();
        assert_eq!(
            cr_vertex_witness(&chain, &re).unwrap(),
            Some(CrWitness {
                vertex: 1,
                kind: CrKind::Revertices
            })
        );
        assert_eq!(
            cr_normalize(&chain, &re).unwrap(),
            Some(VertexSet::singleton(3))
        );
        let non = DominatingRelation::new(&[1, -1, 1]).unwrap();
        assert_eq!(cr_normalize(&chain, &non).unwrap(), None);
    }

    #[test]
    fn three_tournaments_are_cr() {
        for t in [chain3(), Tournament::three_cycle()] {
            let r = is_cr_tournament(&t).unwrap();
            assert!(r.is_cr && !r.trivial && r.failures.is_empty());
            assert_eq!(r.non_cr_count, 2);
            assert!(!is_basic(&t));
        }
        assert!(is_trivial_cr(&Tournament::transitive(1).unwrap()));
    }

    #[test]
    fn report_json_shape() {
        let r = is_cr_tournament(&chain3()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["k"], 1);
        assert_eq!(v["failures"].as_array().unwrap().len(), 0);
        assert_eq!(v["witness_map"]["+++"]["vertex"], 1);
        assert_eq!(v["witness_map"]["+++"]["kind"], "covertices");
    }
}
