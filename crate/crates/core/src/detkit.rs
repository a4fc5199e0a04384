//! Exact skew-adjacency determinants, principal-minor scans and `D_k` classes.
//!
//! Determinants use fraction-free Bareiss elimination. Minors of a tournament
//! run in `i64`: every intermediate Bareiss entry is a minor of a {−1,0,1}
//! matrix, so by Hadamard's bound it is at most `k^(k/2)` for order `k`, and
//! for `k ≤ 15` the products formed in one step stay below `2^63`. Order 16
//! and general integer matrices use checked `i128` arithmetic.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{check_cap, invalid, Error, Result};
use crate::tournament::{Tournament, VertexSet, MAX_ORDER};

/// Largest order for which the fast `i64` minor routine is exact.
const FAST_ORDER: usize = 15;

/// Subset scans are refused above this order.
pub const SCAN_CAP: usize = MAX_ORDER;

/// Subset count above which scans are split across rayon workers.
const PARALLEL_SUBSETS: u32 = 1 << 9;

/// A square integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquareMatrix {
    n: usize,
    a: Vec<i64>,
}

impl SquareMatrix {
    pub fn new(n: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(invalid(format!(
                "{} entries do not form a {n}×{n} matrix",
                entries.len()
            )));
        }
        Ok(SquareMatrix { n, a: entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(invalid("matrix rows are not all of length n"));
        }
        Ok(SquareMatrix {
            n,
            a: rows.concat(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        SquareMatrix { n, a }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.a.chunks(self.n.max(1)).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut a = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[j * n + i] = self.get(i, j);
            }
        }
        SquareMatrix { n, a }
    }

    pub fn mul(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        if self.n != other.n {
            return Err(invalid("matrix orders differ"));
        }
        let n = self.n;
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let p = x
                        .checked_mul(other.get(k, j))
                        .ok_or(Error::ArithmeticOverflow)?;
                    a[i * n + j] = a[i * n + j]
                        .checked_add(p)
                        .ok_or(Error::ArithmeticOverflow)?;
                }
            }
        }
        Ok(SquareMatrix { n, a })
    }

    /// Principal or general submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<SquareMatrix> {
        if rows.len() != cols.len() {
            return Err(invalid("submatrix must be square"));
        }
        let mut a = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                a.push(self.get(i, j));
            }
        }
        Ok(SquareMatrix { n: rows.len(), a })
    }

    /// Exact determinant; the empty matrix has determinant 1.
    pub fn det(&self) -> Result<i128> {
        let mut a: Vec<i128> = self.a.iter().map(|&x| x as i128).collect();
        bareiss_checked(self.n, &mut a)
    }
}

/// A skew-symmetric integer matrix (zero diagonal, `s_ij = −s_ji`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewMatrix(SquareMatrix);

impl SkewMatrix {
    pub fn new(m: SquareMatrix) -> Result<Self> {
        let n = m.order();
        for i in 0..n {
            for j in i..n {
                if m.get(i, j) != -m.get(j, i) {
                    return Err(invalid(format!(
                        "entries ({}, {}) and ({}, {}) break skew-symmetry",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(SkewMatrix(m))
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(SquareMatrix::from_rows(rows)?)
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0.get(i, j)
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> SquareMatrix {
        self.0
    }

    /// `xᵀ S y` in exact arithmetic.
    pub fn bilinear(&self, x: &[i64], y: &[i64]) -> Result<i128> {
        let n = self.order();
        if x.len() != n || y.len() != n {
            return Err(invalid("vector length differs from matrix order"));
        }
        let mut acc: i128 = 0;
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                let term = (xi as i128)
                    .checked_mul(self.get(i, j) as i128)
                    .and_then(|p| p.checked_mul(yj as i128))
                    .ok_or(Error::ArithmeticOverflow)?;
                acc = acc.checked_add(term).ok_or(Error::ArithmeticOverflow)?;
            }
        }
        Ok(acc)
    }
}

/// `S_T` with `s_ij = θ(v_i, v_j)` off the diagonal.
pub fn skew_adjacency(t: &Tournament) -> SkewMatrix {
    let n = t.order();
    let mut a = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                a[i * n + j] = t.sign(i, j) as i64;
            }
        }
    }
    SkewMatrix(SquareMatrix { n, a })
}

pub fn det_exact(s: &SkewMatrix) -> Result<i128> {
    s.matrix().det()
}

pub fn tournament_det(t: &Tournament) -> i128 {
    minor_det(t, t.vertices())
}

/// Determinant of `S_{T[set]}`.
pub fn minor_det(t: &Tournament, set: VertexSet) -> i128 {
    let k = set.len();
    if k % 2 == 1 {
        return 0;
    }
    if k == 0 {
        return 1;
    }
    let mut idx = [0usize; MAX_ORDER];
    for (slot, v) in idx.iter_mut().zip(set.iter()) {
        *slot = v;
    }
    if k <= FAST_ORDER {
        let mut a = [[0i64; MAX_ORDER]; MAX_ORDER];
        for i in 0..k {
            let row = t.out_set(idx[i]);
            for j in 0..k {
                if i != j {
                    a[i][j] = if row.contains(idx[j]) { 1 } else { -1 };
                }
            }
        }
        bareiss_fast(k, &mut a) as i128
    } else {
        let mut a = vec![0i128; k * k];
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    a[i * k + j] = t.sign(idx[i], idx[j]) as i128;
                }
            }
        }
        bareiss_checked(k, &mut a).expect("Hadamard bound fits i128 at order 16")
    }
}

#[allow(clippy::needless_range_loop)]
fn bareiss_fast(k: usize, a: &mut [[i64; MAX_ORDER]; MAX_ORDER]) -> i64 {
    let mut sign = 1i64;
    let mut prev = 1i64;
    for c in 0..k - 1 {
        if a[c][c] == 0 {
            match (c + 1..k).find(|&r| a[r][c] != 0) {
                Some(r) => {
                    a.swap(c, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        let p = a[c][c];
        for i in c + 1..k {
            let aic = a[i][c];
            for j in c + 1..k {
                a[i][j] = (a[i][j] * p - aic * a[c][j]) / prev;
            }
        }
        prev = p;
    }
    sign * a[k - 1][k - 1]
}

fn bareiss_checked(n: usize, a: &mut [i128]) -> Result<i128> {
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for c in 0..n - 1 {
        if a[c * n + c] == 0 {
            match (c + 1..n).find(|&r| a[r * n + c] != 0) {
                Some(r) => {
                    for j in 0..n {
                        a.swap(c * n + j, r * n + j);
                    }
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        let p = a[c * n + c];
        for i in c + 1..n {
            let aic = a[i * n + c];
            for j in c + 1..n {
                let lhs = a[i * n + j]
                    .checked_mul(p)
                    .ok_or(Error::ArithmeticOverflow)?;
                let rhs = aic
                    .checked_mul(a[c * n + j])
                    .ok_or(Error::ArithmeticOverflow)?;
                a[i * n + j] = lhs.checked_sub(rhs).ok_or(Error::ArithmeticOverflow)? / prev;
            }
        }
        prev = p;
    }
    Ok(sign * a[n * n - 1])
}

/// Result of a full principal-minor scan.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DkReport {
    pub max_minor: u64,
    pub k: u64,
    pub witness: VertexSet,
}

impl DkReport {
    /// `"D_k\D_{k-2}"`, or `"D_1"` for `k = 1`.
    pub fn class_label(&self) -> String {
        if self.k == 1 {
            "D_1".to_string()
        } else {
            format!("D_{}\\D_{}", self.k, self.k - 2)
        }
    }
}

impl Serialize for DkReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DkReport", 3)?;
        st.serialize_field("max_minor", &self.max_minor)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("witness", &self.witness.to_one_based())?;
        st.end()
    }
}

fn is_even_subset(mask: u32) -> bool {
    let c = mask.count_ones();
    c >= 2 && c.is_multiple_of(2)
}

fn better(a: (i128, VertexSet), b: (i128, VertexSet)) -> (i128, VertexSet) {
    match a.0.cmp(&b.0) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if a.1.lex_cmp(b.1) == Ordering::Greater {
                b
            } else {
                a
            }
        }
    }
}

/// Maximum determinant over all even subtournaments of order ≥ 2, with the
/// lexicographically smallest subset attaining it.
pub fn max_subtournament_det(t: &Tournament) -> Result<DkReport> {
    let n = t.order();
    check_cap("minor scan order", n, SCAN_CAP)?;
    let total: u32 = if n >= 32 { u32::MAX } else { 1 << n };
    let eval = |mask: u32| {
        let s = VertexSet::from_bits(mask);
        (minor_det(t, s), s)
    };
    let start = (0i128, VertexSet::EMPTY);
    let (max, witness) = if total > PARALLEL_SUBSETS {
        (1..total)
            .into_par_iter()
            .filter(|&m| is_even_subset(m))
            .map(eval)
            .reduce(|| start, better)
    } else {
        (1..total)
            .filter(|&m| is_even_subset(m))
            .map(eval)
            .fold(start, better)
    };
    let max_minor = u64::try_from(max).map_err(|_| Error::ArithmeticOverflow)?;
    let k = odd_root(max_minor)?;
    Ok(DkReport {
        max_minor,
        k,
        witness,
    })
}

/// `√v`, required to be an odd integer; 1 when `v ≤ 1`.
fn odd_root(v: u64) -> Result<u64> {
    if v <= 1 {
        return Ok(1);
    }
    let r = (v as f64).sqrt().round() as u64;
    let r = (r.saturating_sub(2)..=r + 2)
        .find(|x| x * x == v)
        .filter(|x| x % 2 == 1)
        .ok_or_else(|| {
            Error::TheoremViolation(format!(
                "determinant {v} is not the square of an odd integer"
            ))
        })?;
    Ok(r)
}

/// First even subset (in increasing mask order) containing `required` whose
/// determinant exceeds `bound`.
pub fn find_minor_above(t: &Tournament, bound: u64, required: VertexSet) -> Option<VertexSet> {
    let free = t.vertices().difference(required).bits();
    let req = required.bits();
    // Enumerate submasks of `free` in increasing order.
    let mut sub: u32 = 0;
    loop {
        let mask = sub | req;
        if is_even_subset(mask) && minor_det(t, VertexSet::from_bits(mask)) > bound as i128 {
            return Some(VertexSet::from_bits(mask));
        }
        if sub == free {
            return None;
        }
        sub = sub.wrapping_sub(free) & free;
    }
}

fn check_odd(k: u64) -> Result<()> {
    if k.is_multiple_of(2) {
        Err(invalid(format!("D_k needs odd k, got {k}")))
    } else {
        Ok(())
    }
}

pub fn in_dk(t: &Tournament, k: u64) -> Result<bool> {
    check_odd(k)?;
    Ok(max_subtournament_det(t)?.max_minor <= k * k)
}

pub fn in_dk_exactly(t: &Tournament, k: u64) -> Result<bool> {
    check_odd(k)?;
    Ok(max_subtournament_det(t)?.k == k)
}
