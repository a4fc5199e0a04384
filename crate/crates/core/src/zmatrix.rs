//! Z-matrix calculus and the bordered-determinant tools behind the deletion
//! determinants of `L_n` extensions.
//!
//! Indices in this module are 1-based (`i ∈ 1..=m`, `j ∈ 1..m`) so the code
//! reads like the formulas; `r` and `σ` slices are still 0-based storage.

use std::fmt::Write as _;

use serde::Serialize;

use crate::cr::{extend, DominatingRelation};
use crate::detkit::{det_exact, minor_det, skew_adjacency, SkewMatrix, SquareMatrix};
use crate::error::{invalid, Error, Result};
use crate::lfamily::gen_ln;
use crate::tournament::{Tournament, VertexSet, MAX_ORDER};

fn parity(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check_signs(r: &[i8]) -> Result<()> {
    if r.iter().all(|&s| s == 1 || s == -1) {
        Ok(())
    } else {
        Err(invalid("sequence entries must be ±1"))
    }
}

/// The `m × (m−1)` matrix `Z(m, r)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ZMatrix {
    m: usize,
    r: Vec<i8>,
    z: Vec<i64>,
}

impl ZMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> &[i8] {
        &self.r
    }

    /// `z_ij`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        assert!(
            (1..=self.m).contains(&i) && (1..self.m).contains(&j),
            "z index out of range"
        );
        self.z[(i - 1) * (self.m - 1) + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.z.chunks(self.m - 1).map(<[i64]>::to_vec).collect()
    }

    /// One bracketed row per line, entries right-aligned to a common width.
    pub fn to_bracket_string(&self) -> String {
        let width = self
            .z
            .iter()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            let _ = writeln!(out, "[ {} ]", cells.join(" "));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// `Z(m, r)` for odd `m ≥ 3` and `|r| = m`.
pub fn z_matrix(m: usize, r: &[i8]) -> Result<ZMatrix> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(invalid(format!("Z-matrices need odd m ≥ 3, got {m}")));
    }
    if r.len() != m {
        return Err(invalid(format!("r has length {}, expected {m}", r.len())));
    }
    check_signs(r)?;
    let rr = |k: usize| r[k - 1] as i64;
    let mut z = Vec::with_capacity(m * (m - 1));
    for i in 1..=m {
        for j in 1..m {
            let base = parity(i + j) * (m as i64 - 2 * j as i64);
            z.push(if i + j <= m {
                base * rr(i + j)
            } else {
                -base * rr(i + j - m)
            });
        }
    }
    Ok(ZMatrix {
        m,
        r: r.to_vec(),
        z,
    })
}

/// The `ℓ`-diagonal vector `Γ_ℓ` and its constant step `2(−1)^ℓ r_ℓ`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DiagonalVector {
    pub ell: usize,
    pub gamma: Vec<i64>,
    pub step: i64,
}

pub fn diagonal_vector(zm: &ZMatrix, ell: usize) -> Result<DiagonalVector> {
    let m = zm.m;
    if !(1..=m).contains(&ell) {
        return Err(invalid(format!("diagonal index {ell} outside 1..={m}")));
    }
    let gamma = (1..=m)
        .map(|i| match i.cmp(&ell) {
            std::cmp::Ordering::Less => zm.entry(i, ell - i),
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => zm.entry(i, m + ell - i),
        })
        .collect();
    Ok(DiagonalVector {
        ell,
        gamma,
        step: 2 * parity(ell) * zm.r[ell - 1] as i64,
    })
}

/// `b = Z · J`.
pub fn row_sums(zm: &ZMatrix) -> Vec<i64> {
    zm.rows().iter().map(|row| row.iter().sum()).collect()
}

/// `Γ · J`, summing the diagonal vectors instead of the rows.
pub fn row_sums_by_diagonals(zm: &ZMatrix) -> Vec<i64> {
    let mut b = vec![0; zm.m];
    for ell in 1..=zm.m {
        let d = diagonal_vector(zm, ell).expect("ℓ in range");
        for (acc, g) in b.iter_mut().zip(d.gamma) {
            *acc += g;
        }
    }
    b
}

/// `A = {i ∈ 1..m−1 : r_i ≠ r_{i+1}}`: the prefix sums of the run lengths.
pub fn run_boundaries(r: &[i8]) -> Vec<usize> {
    (1..r.len()).filter(|&i| r[i - 1] != r[i]).collect()
}

/// `Δ = 2 Σ (−1)^i r_i`, cross-checked against the odd-run form
/// `2 Σ_k (−1)^{d_k + k − 1} r_1` over the runs `d_1 < d_2 < …` of odd length.
pub fn delta_total(r: &[i8]) -> Result<i64> {
    if r.len().is_multiple_of(2) {
        return Err(invalid("Δ needs a sequence of odd length"));
    }
    check_signs(r)?;
    let direct: i64 = 2 * r
        .iter()
        .enumerate()
        .map(|(k, &s)| parity(k + 1) * s as i64)
        .sum::<i64>();
    let runs = crate::lfamily::PsiSignature::from_signs(r)?;
    let odd_runs = runs
        .runs()
        .iter()
        .enumerate()
        .filter(|(_, len)| len.unsigned_abs() % 2 == 1)
        .map(|(d, _)| d + 1);
    let by_runs: i64 = 2
        * r[0] as i64
        * odd_runs
            .enumerate()
            .map(|(k, d)| parity(d + k))
            .sum::<i64>();
    if direct != by_runs {
        return Err(Error::TheoremViolation(format!(
            "Δ is {direct} directly but {by_runs} from the odd runs"
        )));
    }
    Ok(direct)
}

/// Predicted `b_{i+1} − b_i`: `Δ` off the run boundaries, `Δ ± 2m` on them.
pub fn b_diff_predicted(i: usize, r: &[i8]) -> Result<i64> {
    let m = r.len();
    if !(1..m).contains(&i) {
        return Err(invalid(format!("index {i} outside 1..{m}")));
    }
    let delta = delta_total(r)?;
    if r[i - 1] == r[i] {
        return Ok(delta);
    }
    let two_m = 2 * m as i64;
    Ok(if parity(i) * r[i - 1] as i64 == -1 {
        delta + two_m
    } else {
        delta - two_m
    })
}

/// Inverse of the transitive skew matrix `S_T` (`s_ij = 1` for `i < j`) of even
/// order `p`: entry `(i, j)` is `(−1)^{i+j}` above the diagonal.
pub fn transitive_inverse(p: usize) -> Result<SkewMatrix> {
    if p == 0 || p % 2 == 1 {
        return Err(invalid(format!(
            "transitive skew matrix of order {p} is singular"
        )));
    }
    let mut m = SquareMatrix::new(p, vec![0; p * p])?;
    for i in 0..p {
        for j in i + 1..p {
            let v = parity(i + j);
            m.set(i, j, v);
            m.set(j, i, -v);
        }
    }
    SkewMatrix::new(m)
}

fn transitive_skew(p: usize) -> SkewMatrix {
    skew_adjacency(&Tournament::transitive(p).expect("order fits"))
}

/// `[[0, a, xᵀ], [−a, 0, yᵀ], [−x, −y, S_T]]` with a transitive core of order `|x|`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BorderedSkew {
    pub a: i8,
    pub x: Vec<i8>,
    pub y: Vec<i8>,
}

impl BorderedSkew {
    pub fn new(a: i8, x: Vec<i8>, y: Vec<i8>) -> Result<Self> {
        check_signs(&[a])?;
        check_signs(&x)?;
        check_signs(&y)?;
        if x.len() != y.len() || x.is_empty() || x.len() % 2 == 1 {
            return Err(invalid("x and y need the same positive even length"));
        }
        if x.len() + 2 > MAX_ORDER {
            return Err(invalid("bordered matrix too large"));
        }
        Ok(BorderedSkew { a, x, y })
    }

    pub fn core_order(&self) -> usize {
        self.x.len()
    }

    pub fn assemble(&self) -> SkewMatrix {
        let p = self.core_order();
        let n = p + 2;
        let core = transitive_skew(p);
        let mut m = SquareMatrix::new(n, vec![0; n * n]).expect("order fits");
        m.set(0, 1, self.a as i64);
        m.set(1, 0, -self.a as i64);
        for k in 0..p {
            m.set(0, k + 2, self.x[k] as i64);
            m.set(k + 2, 0, -self.x[k] as i64);
            m.set(1, k + 2, self.y[k] as i64);
            m.set(k + 2, 1, -self.y[k] as i64);
            for l in 0..p {
                m.set(k + 2, l + 2, core.get(k, l));
            }
        }
        SkewMatrix::new(m).expect("assembled matrix is skew")
    }
}

/// `(a + xᵀ S_T⁻¹ y)²`.
pub fn bordered_det(b: &BorderedSkew) -> Result<i128> {
    let inv = transitive_inverse(b.core_order())?;
    let widen = |v: &[i8]| v.iter().map(|&s| s as i64).collect::<Vec<_>>();
    let s = b.a as i128 + inv.bilinear(&widen(&b.x), &widen(&b.y))?;
    Ok(s * s)
}

/// Closed form for `x = (1, −1, 1, …, −1)`: `(a + Σ_i (−1)^i (p+1−2i) β_i)²`.
pub fn bordered_det_alternating(a: i8, beta: &[i8]) -> Result<i128> {
    let p = beta.len();
    if p == 0 || p % 2 == 1 {
        return Err(invalid("β needs positive even length"));
    }
    check_signs(beta)?;
    let s: i64 = a as i64
        + beta
            .iter()
            .enumerate()
            .map(|(k, &b)| {
                let i = k + 1;
                parity(i) * (p as i64 + 1 - 2 * i as i64) * b as i64
            })
            .sum::<i64>();
    Ok((s as i128) * (s as i128))
}

/// `det(M) = det(M / M_22) · det(M_22)`, where `M_22` is the trailing block of
/// order `n − split` and must be unimodular so the complement stays integral.
pub fn schur_identity_holds(m: &SquareMatrix, split: usize) -> Result<bool> {
    let n = m.order();
    if split == 0 || split >= n {
        return Err(invalid("split must leave two non-empty blocks"));
    }
    let head: Vec<usize> = (0..split).collect();
    let tail: Vec<usize> = (split..n).collect();
    let m11 = m.submatrix(&head, &head)?;
    let m22 = m.submatrix(&tail, &tail)?;
    let d22 = m22.det()?;
    if d22.abs() != 1 {
        return Err(invalid("trailing block is not unimodular"));
    }
    let q = tail.len();
    // M_22⁻¹ = adj(M_22) · det(M_22) for a unimodular block.
    let mut inv = SquareMatrix::new(q, vec![0; q * q])?;
    for i in 0..q {
        for j in 0..q {
            let rows: Vec<usize> = (0..q).filter(|&k| k != j).collect();
            let cols: Vec<usize> = (0..q).filter(|&k| k != i).collect();
            let minor = if q == 1 {
                1
            } else {
                m22.submatrix(&rows, &cols)?.det()?
            };
            let cof = parity(i + j) as i128 * minor * d22;
            inv.set(
                i,
                j,
                i64::try_from(cof).map_err(|_| Error::ArithmeticOverflow)?,
            );
        }
    }
    let mut comp = m11.clone();
    for i in 0..split {
        for j in 0..split {
            let mut acc: i128 = 0;
            for k in 0..q {
                for l in 0..q {
                    acc += m.get(i, split + k) as i128
                        * inv.get(k, l) as i128
                        * m.get(split + l, j) as i128;
                }
            }
            let v = m11.get(i, j) as i128 - acc;
            comp.set(
                i,
                j,
                i64::try_from(v).map_err(|_| Error::ArithmeticOverflow)?,
            );
        }
    }
    Ok(m.det()? == comp.det()? * d22)
}

/// One deleted vertex `v_i` of `L_n(u,σ)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Claim1Row {
    pub i: usize,
    pub deletion_det: i128,
    pub predicted: i128,
    pub switched_det: i128,
    pub bordered: i128,
    pub layout_ok: bool,
}

impl Claim1Row {
    pub fn holds(&self) -> bool {
        self.layout_ok
            && self.deletion_det == self.predicted
            && self.switched_det == self.deletion_det
            && self.bordered == self.deletion_det
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Claim1Report {
    pub n: usize,
    pub sigma: DominatingRelation,
    pub a: i64,
    pub b: Vec<i64>,
    pub rows: Vec<Claim1Row>,
    pub holds: bool,
}

/// Checks `det(L_n(u,σ) − v_i) = (a + b_i)²` for every `i ∈ 1..n−1`, with
/// `a = −r_n` and `b` the row sums of `Z(n−1, r_1..r_{n−1})`. Each deletion is
/// also switched and reordered into bordered form (`v_n`, `u`, then the
/// transitive core) and evaluated through the bordered determinant.
pub fn claim1_check(n: usize, sigma: &DominatingRelation) -> Result<Claim1Report> {
    if n < 4 || n % 2 == 1 {
        return Err(invalid(format!("needs even n ≥ 4, got {n}")));
    }
    if sigma.len() != n {
        return Err(invalid(format!(
            "σ has length {}, expected {n}",
            sigma.len()
        )));
    }
    let ext = extend(&gen_ln(n)?, sigma)?;
    let r = sigma.signs();
    let a = -(r[n - 1] as i64);
    let m = n - 1;
    let b = row_sums(&z_matrix(m, &r[..m])?);
    let (vn, u) = (n - 1, n);

    let mut rows = Vec::with_capacity(m);
    for i in 1..=m {
        let vi = i - 1;
        let kept = ext.vertices().without(vi);
        let deletion_det = minor_det(&ext, kept);
        let sum = (a + b[i - 1]) as i128;

        let mut w: VertexSet = (0..i - 1).collect();
        if i % 2 == 1 {
            w.insert(vn);
        }
        let switched = ext.switch(w)?;
        let mut order = vec![vn, u];
        order.extend(i..m);
        order.extend(0..i - 1);
        let s = skew_adjacency(&switched.induced_ordered(&order));
        let p = n - 2;
        let expected_a = if i == 1 { -a } else { parity(i) * a };
        let core_transitive = (0..p).all(|k| (k + 1..p).all(|l| s.get(k + 2, l + 2) == 1));
        let x_alternating = (0..p).all(|k| s.get(0, k + 2) == parity(k));
        let layout_ok = core_transitive && x_alternating && s.get(0, 1) == expected_a;
        let bordered = BorderedSkew::new(
            s.get(0, 1) as i8,
            (0..p).map(|k| s.get(0, k + 2) as i8).collect(),
            (0..p).map(|k| s.get(1, k + 2) as i8).collect(),
        )?;
        rows.push(Claim1Row {
            i,
            deletion_det,
            predicted: sum * sum,
            switched_det: det_exact(&s)?,
            bordered: bordered_det(&bordered)?,
            layout_ok,
        });
    }
    let holds = rows.iter().all(Claim1Row::holds);
    Ok(Claim1Report {
        n,
        sigma: *sigma,
        a,
        b,
        rows,
        holds,
    })
}
