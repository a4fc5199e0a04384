//! Blowups, recognition of switched transitive blowups, ξ(H) membership and
//! the `D_5` / `L_{k+1}` classifiers.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cr::is_basic;
use crate::detkit::{in_dk_exactly, max_subtournament_det, minor_det, tournament_det, DkReport};
use crate::error::{check_cap, invalid, Error, Result};
use crate::format::to_trn_inline;
use crate::iso::{normalize_at, switching_isomorphic};
use crate::lfamily::gen_ln;
use crate::tournament::{SwitchSet, Tournament, VertexSet, MAX_ORDER};

/// Order cap of the brute-force decomposition oracle.
pub const BRUTE_FORCE_CAP: usize = 7;

/// Base tournament with one part per base vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlowupSpec {
    pub base: Tournament,
    pub parts: Vec<Tournament>,
}

/// Replaces `v_i` by `parts[i]`; part `i` occupies a consecutive index range,
/// parts in base order.
pub fn blowup(spec: &BlowupSpec) -> Result<Tournament> {
    let n = spec.base.order();
    if spec.parts.len() != n {
        return Err(invalid(format!(
            "{} parts for a base of order {n}",
            spec.parts.len()
        )));
    }
    let mut block = Vec::new();
    let mut local = Vec::new();
    for (i, p) in spec.parts.iter().enumerate() {
        for v in 0..p.order() {
            block.push(i);
            local.push(v);
        }
    }
    if block.len() > MAX_ORDER {
        return Err(invalid(format!(
            "blowup order {} exceeds {MAX_ORDER}",
            block.len()
        )));
    }
    Tournament::from_fn(block.len(), |a, b| {
        if block[a] == block[b] {
            spec.parts[block[a]].beats(local[a], local[b])
        } else {
            spec.base.beats(block[a], block[b])
        }
    })
}

/// Blowup with transitive chains of the given sizes as parts.
pub fn transitive_blowup(base: &Tournament, sizes: &[usize]) -> Result<Tournament> {
    if sizes.contains(&0) {
        return Err(invalid("blowup sizes are positive"));
    }
    let parts = sizes
        .iter()
        .map(|&s| Tournament::transitive(s))
        .collect::<Result<Vec<_>>>()?;
    blowup(&BlowupSpec { base: *base, parts })
}

/// The `n` blowups duplicating one vertex each (`v_i` becomes `v_i → v_i'`).
pub fn one_transitive_blowups(t: &Tournament) -> Result<Vec<Tournament>> {
    let n = t.order();
    (0..n)
        .map(|i| {
            let sizes: Vec<usize> = (0..n).map(|j| if j == i { 2 } else { 1 }).collect();
            transitive_blowup(t, &sizes)
        })
        .collect()
}

/// Calls `f` on each `k`-subset of `0..n` in lexicographic order until it returns `Some`.
fn first_combination<R>(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> Option<R>) -> Option<R> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if let Some(r) = f(&idx) {
            return Some(r);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// First subset `X` (lexicographic order) with `T[X]` switching isomorphic to `H`.
pub fn contains_switching_isomorphic(t: &Tournament, h: &Tournament) -> Result<Option<VertexSet>> {
    Ok(find_switching_copy(t, h).map(|(x, _, _)| x))
}

/// `X`, and `(W, φ)` relating `T[X]` (relabelled `0..|X|`) to `H`.
fn find_switching_copy(
    t: &Tournament,
    h: &Tournament,
) -> Option<(VertexSet, SwitchSet, crate::tournament::Permutation)> {
    let m = h.order();
    let target = tournament_det(h);
    first_combination(t.order(), m, |xs| {
        let x: VertexSet = xs.iter().copied().collect();
        if minor_det(t, x) != target {
            return None;
        }
        let sub = t.induced_ordered(xs);
        switching_isomorphic(&sub, h).map(|(w, phi)| (x, w, phi))
    })
}

/// `switch(T, W)` is the transitive blowup of `base` whose part for
/// `base_vertex_of_block[j]` is the chain `blocks[j][0] → blocks[j][1] → …`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    pub switch_set: SwitchSet,
    pub blocks: Vec<Vec<usize>>,
    pub base_vertex_of_block: Vec<usize>,
    pub base: Tournament,
}

impl Decomposition {
    /// Rebuilds the decomposed tournament on its original labels.
    pub fn reconstruct(&self) -> Result<Tournament> {
        let n: usize = self.blocks.iter().map(Vec::len).sum();
        if self.blocks.len() != self.base_vertex_of_block.len() {
            return Err(invalid("one base vertex per block"));
        }
        let mut block_of = vec![usize::MAX; n];
        let mut pos = vec![0; n];
        for (b, members) in self.blocks.iter().enumerate() {
            for (p, &v) in members.iter().enumerate() {
                if v >= n || block_of[v] != usize::MAX {
                    return Err(invalid("blocks do not partition the vertex set"));
                }
                block_of[v] = b;
                pos[v] = p;
            }
        }
        let bv = &self.base_vertex_of_block;
        let core = Tournament::from_fn(n, |a, b| {
            let (ba, bb) = (block_of[a], block_of[b]);
            if ba == bb {
                pos[a] < pos[b]
            } else {
                self.base.beats(bv[ba], bv[bb])
            }
        })?;
        core.switch(self.switch_set)
    }

    /// Whether this is a transitive-blowup decomposition of `t` over its base.
    pub fn verify(&self, t: &Tournament) -> bool {
        let mut seen = vec![false; self.base.order()];
        let bijective = self.blocks.len() == self.base.order()
            && self.blocks.iter().all(|b| !b.is_empty())
            && self
                .base_vertex_of_block
                .iter()
                .all(|&v| v < seen.len() && !std::mem::replace(&mut seen[v], true));
        bijective && self.reconstruct().map(|r| r == *t).unwrap_or(false)
    }

    pub fn base_name(&self) -> String {
        let n = self.base.order();
        match gen_ln(n) {
            Ok(l) if l == self.base => format!("L{n}"),
            _ => to_trn_inline(&self.base),
        }
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let one_based = |v: &Vec<usize>| v.iter().map(|x| x + 1).collect::<Vec<_>>();
        let mut st = s.serialize_struct("Decomposition", 4)?;
        st.serialize_field("W", &self.switch_set.to_one_based())?;
        st.serialize_field(
            "blocks",
            &self.blocks.iter().map(one_based).collect::<Vec<_>>(),
        )?;
        st.serialize_field(
            "base_vertex_of_block",
            &one_based(&self.base_vertex_of_block),
        )?;
        st.serialize_field("base", &self.base_name())?;
        st.end()
    }
}

/// Recognises `T` as switching equivalent to a transitive blowup of the basic
/// tournament `H`: find `X` with `T[X]` switching isomorphic to `H`, attach each
/// outside vertex to the unique vertex of `X` it is CR-associated with, switch
/// away the revertex sets and check the block structure.
pub fn decompose_transitive_blowup(
    t: &Tournament,
    h: &Tournament,
) -> Result<Option<Decomposition>> {
    if !is_basic(h) {
        return Err(invalid("decomposition needs a basic base tournament"));
    }
    if h.order() > t.order() {
        return Ok(None);
    }
    let Some((x, w0, phi)) = find_switching_copy(t, h) else {
        return Ok(None);
    };
    let xs = x.to_vec();
    let lifted: SwitchSet = w0.iter().map(|i| xs[i]).collect();
    let t1 = t.switch(lifted)?;

    let m = xs.len();
    let mut blocks: Vec<Vec<usize>> = xs.iter().map(|&v| vec![v]).collect();
    let mut re_union = VertexSet::EMPTY;
    for w in t.vertices().difference(x).iter() {
        let attached = (0..m).find_map(|j| {
            let others: Vec<usize> = xs.iter().copied().filter(|&v| v != xs[j]).collect();
            if others.iter().all(|&v| t1.beats(w, v) == t1.beats(xs[j], v)) {
                Some((j, false))
            } else if others.iter().all(|&v| t1.beats(w, v) != t1.beats(xs[j], v)) {
                Some((j, true))
            } else {
                None
            }
        });
        let Some((j, reversed)) = attached else {
            return Ok(None);
        };
        blocks[j].push(w);
        if reversed {
            re_union.insert(w);
        }
    }
    let t2 = t1.switch(re_union)?;

    for b in blocks.iter_mut() {
        let set: VertexSet = b.iter().copied().collect();
        let members = set.to_vec();
        let Some(order) = t2.induced(set)?.is_transitive() else {
            return Ok(None);
        };
        *b = order.iter().map(|&i| members[i]).collect();
    }
    let block_index: Vec<usize> = {
        let mut idx = vec![0; t.order()];
        for (j, b) in blocks.iter().enumerate() {
            for &v in b {
                idx[v] = j;
            }
        }
        idx
    };
    for a in 0..t.order() {
        for b in a + 1..t.order() {
            let (ba, bb) = (block_index[a], block_index[b]);
            if ba != bb && t2.beats(a, b) != t2.beats(xs[ba], xs[bb]) {
                return Ok(None);
            }
        }
    }
    let d = Decomposition {
        switch_set: lifted.symmetric_difference(re_union),
        blocks,
        base_vertex_of_block: (0..m).map(|j| phi.apply(j)).collect(),
        base: *h,
    };
    debug_assert!(d.verify(t));
    Ok(Some(d))
}

/// Exhaustive oracle: every anchored switch set and every block assignment.
pub fn decompose_brute_force(t: &Tournament, h: &Tournament) -> Result<Option<Decomposition>> {
    let n = t.order();
    check_cap("brute-force decomposition order", n, BRUTE_FORCE_CAP)?;
    let m = h.order();
    if m > n {
        return Ok(None);
    }
    for wbits in 0..1u32 << (n - 1) {
        let w = VertexSet::from_bits(wbits << 1);
        let ts = t.switch(w)?;
        let mut assign = vec![0usize; n];
        if let Some(d) = assign_blocks(&ts, h, &mut assign, 0, w) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn assign_blocks(
    ts: &Tournament,
    h: &Tournament,
    assign: &mut [usize],
    v: usize,
    w: SwitchSet,
) -> Option<Decomposition> {
    let n = ts.order();
    let m = h.order();
    if v == n {
        let mut blocks = vec![Vec::new(); m];
        for (u, &b) in assign.iter().enumerate() {
            blocks[b].push(u);
        }
        if blocks.iter().any(Vec::is_empty) {
            return None;
        }
        for b in blocks.iter_mut() {
            let order = ts.induced_ordered(b).is_transitive()?;
            *b = order.iter().map(|&i| b[i]).collect();
        }
        return Some(Decomposition {
            switch_set: w,
            blocks,
            base_vertex_of_block: (0..m).collect(),
            base: *h,
        });
    }
    for b in 0..m {
        let fits = (0..v).all(|a| assign[a] == b || ts.beats(a, v) == h.beats(assign[a], b));
        if fits {
            assign[v] = b;
            if let Some(d) = assign_blocks(ts, h, assign, v + 1, w) {
                return Some(d);
            }
        }
    }
    None
}

/// Decomposition over `L_2`: normalise at vertex 0 and test transitivity.
pub fn decompose_over_l2(t: &Tournament) -> Option<Decomposition> {
    if t.order() < 2 {
        return None;
    }
    let (w, ts) = normalize_at(t, 0);
    let order = ts.is_transitive()?;
    // L_2 is v_2 → v_1, so the source block maps to base vertex 1.
    Some(Decomposition {
        switch_set: w,
        blocks: vec![vec![order[0]], order[1..].to_vec()],
        base_vertex_of_block: vec![1, 0],
        base: gen_ln(2).expect("L_2"),
    })
}

/// Decomposition over `L_k` for even `k`; `k = 2` uses [`decompose_over_l2`].
pub fn decompose_over_ln(t: &Tournament, k: usize) -> Result<Option<Decomposition>> {
    if k % 2 == 1 || k < 2 {
        return Err(invalid(format!(
            "L_k decompositions need even k ≥ 2, got {k}"
        )));
    }
    if k == 2 {
        return Ok(decompose_over_l2(t));
    }
    decompose_transitive_blowup(t, &gen_ln(k)?)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum D5Class {
    D1,
    D3MinusD1,
    D5MinusD3,
    BeyondD5,
}

impl D5Class {
    pub fn label(self) -> &'static str {
        match self {
            D5Class::D1 => "D1",
            D5Class::D3MinusD1 => "D3\\D1",
            D5Class::D5MinusD3 => "D5\\D3",
            D5Class::BeyondD5 => "beyond-D5",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct D5Classification {
    pub class: D5Class,
    pub report: DkReport,
    /// Over `L_2`, `L_4` or `L_6` for the three classes inside `D_5`
    /// (absent for the 1-tournament).
    pub decomposition: Option<Decomposition>,
}

/// Class from the minor scan, paired with the matching `L_{k+1}` decomposition.
/// A class inside `D_5` without that decomposition is a theorem violation.
pub fn classify_d5(t: &Tournament) -> Result<D5Classification> {
    let report = max_subtournament_det(t)?;
    let (class, base) = match report.k {
        1 => (D5Class::D1, 2),
        3 => (D5Class::D3MinusD1, 4),
        5 => (D5Class::D5MinusD3, 6),
        _ => {
            return Ok(D5Classification {
                class: D5Class::BeyondD5,
                report,
                decomposition: None,
            })
        }
    };
    let decomposition = decompose_over_ln(t, base)?;
    if decomposition.is_none() && t.order() >= 2 {
        return Err(Error::TheoremViolation(format!(
            "{} tournament {} has no transitive-blowup decomposition over L_{base}",
            class.label(),
            to_trn_inline(t)
        )));
    }
    Ok(D5Classification {
        class,
        report,
        decomposition,
    })
}

/// For `T ∈ D_k\D_{k−2}` with odd `k ≥ 7`: (decomposes over `L_{k+1}`,
/// contains a switching copy of `L_{k+1}`).
pub fn theorem71_check(t: &Tournament, k: u64) -> Result<(bool, bool)> {
    if k < 7 || k.is_multiple_of(2) {
        return Err(invalid(format!("needs odd k ≥ 7, got {k}")));
    }
    if !in_dk_exactly(t, k)? {
        return Err(invalid(format!("tournament is not in D_{k}\\D_{}", k - 2)));
    }
    let h = gen_ln(k as usize + 1)?;
    let lhs = decompose_transitive_blowup(t, &h)?.is_some();
    let rhs = contains_switching_isomorphic(t, &h)?.is_some();
    Ok((lhs, rhs))
}
