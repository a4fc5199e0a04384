use std::fmt;

use crate::error::{invalid, Result};

/// Largest supported order. Vertex sets are stored as 32-bit masks.
pub const MAX_ORDER: usize = 16;

/// A set of vertex indices, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u32);

/// Vertices whose incident arcs to the complement are reversed by a switch.
pub type SwitchSet = VertexSet;

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// `{0, …, n−1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n >= 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        VertexSet(self.0 ^ other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement within `{0, …, n−1}`.
    pub fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & Self::full(n).0)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }

    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// Lexicographic comparison of the sorted member lists (a proper prefix
    /// sorts first).
    pub fn lex_cmp(self, other: Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let d = diff.trailing_zeros();
        let self_has = self.0 >> d & 1 == 1;
        let lacking = if self_has { other.0 } else { self.0 };
        let lacking_continues = d < 31 && lacking >> (d + 1) != 0;
        // The set holding `d` is smaller iff the other one continues past `d`.
        if self_has == lacking_continues {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A bijection on `{0, …, n−1}`; `apply(i)` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(invalid(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn image_of(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.0[v]).collect()
    }
}

/// A tournament of order `1 ≤ n ≤ 16`. `out[i]` holds the out-neighbours of `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tournament {
    n: u8,
    out: [u32; MAX_ORDER],
}

impl Tournament {
    /// Builds a tournament from `beats(i, j)` for every `i < j`
    /// (`true` means `i → j`).
    pub fn from_fn(n: usize, mut beats: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_order(n)?;
        let mut t = Tournament {
            n: n as u8,
            out: [0; MAX_ORDER],
        };
        for i in 0..n {
            for j in i + 1..n {
                t.set_arc(i, j, beats(i, j));
            }
        }
        Ok(t)
    }

    /// The transitive tournament `v_0 → v_1 → … → v_{n−1}`.
    pub fn transitive(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| true)
    }

    /// The directed 3-cycle `v_0 → v_1 → v_2 → v_0`.
    pub fn three_cycle() -> Self {
        Self::from_fn(3, |i, j| !(i == 0 && j == 2)).expect("order 3")
    }

    /// Row-major upper-triangle orientation bits, `(0,1), (0,2), …, (n−2,n−1)`.
    pub fn from_row_major_bits(n: usize, bits: &[bool]) -> Result<Self> {
        check_order(n)?;
        if bits.len() != n * (n - 1) / 2 {
            return Err(invalid(format!(
                "order {n} needs {} orientation bits, got {}",
                n * (n - 1) / 2,
                bits.len()
            )));
        }
        let mut k = 0;
        Self::from_fn(n, |_, _| {
            k += 1;
            bits[k - 1]
        })
    }

    pub fn row_major_bits(&self) -> Vec<bool> {
        let n = self.order();
        let mut bits = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                bits.push(self.beats(i, j));
            }
        }
        bits
    }

    /// Builds from a skew-adjacency matrix with ±1 off the diagonal.
    pub fn from_skew_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(invalid(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if row[i] != 0 {
                return Err(invalid(format!("diagonal entry {} is nonzero", i + 1)));
            }
            for j in 0..n {
                if i != j && (row[j].abs() != 1 || row[j] != -rows[j][i]) {
                    return Err(invalid(format!(
                        "entries ({}, {}) and ({}, {}) are not a ±1 skew pair",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Self::from_fn(n, |i, j| rows[i][j] == 1)
    }

    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    /// `true` iff `u → v`. Requires `u ≠ v`, both in range.
    pub fn beats(&self, u: usize, v: usize) -> bool {
        debug_assert!(u != v && u < self.order() && v < self.order());
        self.out[u] >> v & 1 == 1
    }

    /// θ(u,v) without range checks: +1 iff `u → v`.
    pub fn sign(&self, u: usize, v: usize) -> i8 {
        if self.beats(u, v) {
            1
        } else {
            -1
        }
    }

    /// θ(u,v): +1 iff `u → v`.
    pub fn theta(&self, u: usize, v: usize) -> Result<i8> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(invalid(format!("vertex out of range for order {n}")));
        }
        if u == v {
            return Err(invalid("theta needs two distinct vertices"));
        }
        Ok(self.sign(u, v))
    }

    pub fn out_set(&self, u: usize) -> VertexSet {
        VertexSet(self.out[u])
    }

    pub fn in_set(&self, u: usize) -> VertexSet {
        VertexSet(self.out[u]).complement(self.order()).without(u)
    }

    pub fn score(&self, u: usize) -> usize {
        self.out[u].count_ones() as usize
    }

    pub fn scores(&self) -> Vec<usize> {
        (0..self.order()).map(|u| self.score(u)).collect()
    }

    fn set_arc(&mut self, u: usize, v: usize, u_beats_v: bool) {
        if u_beats_v {
            self.out[u] |= 1 << v;
            self.out[v] &= !(1 << u);
        } else {
            self.out[v] |= 1 << u;
            self.out[u] &= !(1 << v);
        }
    }

    /// Reverses the single arc between `u` and `v`.
    pub fn reverse_arc(&self, u: usize, v: usize) -> Result<Self> {
        let below = self.theta(u, v)?;
        let mut t = *self;
        t.set_arc(u, v, below < 0);
        Ok(t)
    }

    /// Reverses every arc with exactly one endpoint in `w`.
    pub fn switch(&self, w: SwitchSet) -> Result<Self> {
        if !w.is_subset(self.vertices()) {
            return Err(invalid(format!(
                "switch set {:?} leaves the vertex range of order {}",
                w.to_one_based(),
                self.order()
            )));
        }
        let full = self.vertices().bits();
        let inside = w.bits();
        let outside = full & !inside;
        let mut t = *self;
        for u in 0..self.order() {
            let flip = if inside >> u & 1 == 1 {
                outside
            } else {
                inside
            };
            t.out[u] ^= flip;
        }
        Ok(t)
    }

    /// Subtournament on `u`, relabelled `0..|u|` in increasing vertex order.
    pub fn induced(&self, u: VertexSet) -> Result<Self> {
        if u.is_empty() {
            return Err(invalid("induced subtournament of the empty set"));
        }
        if !u.is_subset(self.vertices()) {
            return Err(invalid("induced set leaves the vertex range"));
        }
        Ok(self.induced_ordered(&u.to_vec()))
    }

    /// Subtournament on the listed distinct vertices, vertex `vs[i]` becoming `i`.
    pub fn induced_ordered(&self, vs: &[usize]) -> Self {
        let mut t = Tournament {
            n: vs.len() as u8,
            out: [0; MAX_ORDER],
        };
        for (i, &a) in vs.iter().enumerate() {
            for (j, &b) in vs.iter().enumerate() {
                if i != j && self.beats(a, b) {
                    t.out[i] |= 1 << j;
                }
            }
        }
        t
    }

    /// The tournament whose arc `φ(u) → φ(v)` exists iff `u → v` here.
    pub fn relabel(&self, phi: &Permutation) -> Result<Self> {
        if phi.len() != self.order() {
            return Err(invalid("permutation length differs from order"));
        }
        let inv = phi.inverse();
        Ok(self.induced_ordered(inv.as_slice()))
    }

    /// Tournament with vertex `n` appended, beating exactly `beats` (a subset of
    /// the current vertices) and beaten by the rest.
    pub fn with_vertex(&self, beats: VertexSet) -> Result<Self> {
        let n = self.order();
        check_order(n + 1)?;
        let mut t = *self;
        t.n += 1;
        for v in 0..n {
            t.set_arc(n, v, beats.contains(v));
        }
        Ok(t)
    }

    /// The ordering by descending score if this tournament has no 3-cycle.
    pub fn is_transitive(&self) -> Option<Vec<usize>> {
        let n = self.order();
        let mut order = vec![usize::MAX; n];
        for u in 0..n {
            let pos = n - 1 - self.score(u);
            if order[pos] != usize::MAX {
                return None;
            }
            order[pos] = u;
        }
        Some(order)
    }

    /// Whether there is a directed 3-cycle, by direct scan of all triples.
    pub fn has_three_cycle(&self) -> bool {
        let n = self.order();
        (0..n).any(|a| {
            (a + 1..n).any(|b| {
                (b + 1..n).any(|c| {
                    let ab = self.beats(a, b);
                    ab == self.beats(b, c) && ab == self.beats(c, a)
                })
            })
        })
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        Err(invalid(format!("order {n} outside 1..={MAX_ORDER}")))
    } else {
        Ok(())
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self
            .row_major_bits()
            .into_iter()
            .map(|b| if b { '1' } else { '0' })
            .collect();
        write!(f, "Tournament({} {})", self.order(), bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn switch_reverses_exactly_the_cut() {
        let t = Tournament::transitive(5).unwrap();
        let w = VertexSet::from_iter([1, 3]);
        let s = t.switch(w).unwrap();
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    let cut = w.contains(u) != w.contains(v);
                    assert_eq!(s.beats(u, v), t.beats(u, v) != cut);
                }
            }
        }
        assert_eq!(s.switch(w).unwrap(), t);
        assert_eq!(t.switch(w.complement(5)).unwrap(), s);
        assert!(t.switch(VertexSet::singleton(5)).is_err());
    }

    #[test]
    fn theta_rejects_bad_pairs() {
        let c = Tournament::three_cycle();
        assert_eq!(c.theta(2, 0).unwrap(), 1);
        assert!(c.theta(1, 1).is_err());
        assert!(c.theta(0, 3).is_err());
    }

    #[test]
    fn transitive_ordering() {
        let t = Tournament::transitive(4).unwrap();
        assert_eq!(t.is_transitive(), Some(vec![0, 1, 2, 3]));
        assert_eq!(Tournament::three_cycle().is_transitive(), None);
        let r = t
            .relabel(&Permutation::new(vec![2, 0, 3, 1]).unwrap())
            .unwrap();
        assert_eq!(r.is_transitive(), Some(vec![2, 0, 3, 1]));
    }

    #[test]
    fn lex_cmp_matches_sorted_lists() {
        for a in 0u32..64 {
            for b in 0u32..64 {
                let (x, y) = (VertexSet(a), VertexSet(b));
                assert_eq!(x.lex_cmp(y), x.to_vec().cmp(&y.to_vec()), "{a} {b}");
            }
        }
    }

    #[test]
    fn relabel_round_trip() {
        let t = Tournament::from_fn(5, |i, j| (i + j) % 3 != 0).unwrap();
        let p = Permutation::new(vec![4, 2, 0, 1, 3]).unwrap();
        let r = t.relabel(&p).unwrap();
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    assert_eq!(r.beats(p.apply(u), p.apply(v)), t.beats(u, v));
                }
            }
        }
        assert_eq!(r.relabel(&p.inverse()).unwrap(), t);
    }
}
