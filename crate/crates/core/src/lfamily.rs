//! The tournaments `L_n` and `L_n^−`, ψ-signatures, and the run-count rules
//! predicting which extensions of `L_n` have a CR vertex.

use std::fmt;
use std::str::FromStr;

use crate::cr::DominatingRelation;
use crate::error::{invalid, Error, Result};
use crate::tournament::{Tournament, VertexSet};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LnVariant {
    L,
    /// `L_n` switched at `{v_n}`.
    LMinus,
}

/// Chain `v_1 → … → v_{n−1}` with `v_n → v_i` exactly for odd `i` (1-based).
pub fn gen_ln(n: usize) -> Result<Tournament> {
    if n < 2 {
        return Err(invalid(format!("L_n needs n ≥ 2, got {n}")));
    }
    Tournament::from_fn(n, |i, j| if j == n - 1 { i % 2 == 1 } else { true })
}

pub fn gen_ln_minus(n: usize) -> Result<Tournament> {
    gen_ln(n)?.switch(VertexSet::singleton(n - 1))
}

pub fn gen_ln_variant(n: usize, variant: LnVariant) -> Result<Tournament> {
    match variant {
        LnVariant::L => gen_ln(n),
        LnVariant::LMinus => gen_ln_minus(n),
    }
}

/// Run lengths `(α_1, …, α_t)` of a ±1 sequence, signed by the run's sign.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PsiSignature {
    runs: Vec<i32>,
}

impl PsiSignature {
    pub fn new(runs: Vec<i32>) -> Result<Self> {
        if runs.is_empty() {
            return Err(invalid("a signature has at least one run"));
        }
        if runs.contains(&0) {
            return Err(invalid("runs are nonzero"));
        }
        if runs.windows(2).any(|w| (w[0] > 0) == (w[1] > 0)) {
            return Err(invalid(format!("runs {runs:?} do not alternate in sign")));
        }
        Ok(PsiSignature { runs })
    }

    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        if signs.is_empty() {
            return Err(invalid("a signature needs a nonempty sequence"));
        }
        let mut runs: Vec<i32> = Vec::new();
        for &s in signs {
            if s != 1 && s != -1 {
                return Err(invalid(format!("sequence entry {s} is not ±1")));
            }
            match runs.last_mut() {
                Some(last) if (*last > 0) == (s > 0) => *last += s as i32,
                _ => runs.push(s as i32),
            }
        }
        Ok(PsiSignature { runs })
    }

    pub fn runs(&self) -> &[i32] {
        &self.runs
    }

    /// Number of runs `t`.
    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn total_len(&self) -> usize {
        self.runs.iter().map(|a| a.unsigned_abs() as usize).sum()
    }

    pub fn to_signs(&self) -> Vec<i8> {
        self.runs
            .iter()
            .flat_map(|&a| std::iter::repeat_n(a.signum() as i8, a.unsigned_abs() as usize))
            .collect()
    }

    /// Run-boundary positions `{|α_1|, |α_1|+|α_2|, …}` (1-based), excluding the total.
    pub fn boundaries(&self) -> Vec<usize> {
        let mut acc = 0;
        let mut out = Vec::with_capacity(self.runs.len().saturating_sub(1));
        for &a in &self.runs[..self.runs.len() - 1] {
            acc += a.unsigned_abs() as usize;
            out.push(acc);
        }
        out
    }
}

impl fmt::Display for PsiSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.runs.iter().map(i32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for PsiSignature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let runs = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad run length {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PsiSignature::new(runs)
    }
}

/// Signature of `(θ(u,x))` along the transitive order of `T[X]`.
pub fn psi(t: &Tournament, u: usize, x: VertexSet) -> Result<PsiSignature> {
    if u >= t.order() || x.contains(u) {
        return Err(invalid("ψ needs a vertex outside X"));
    }
    let members = x.to_vec();
    let order = t
        .induced(x)?
        .is_transitive()
        .ok_or_else(|| invalid("T[X] is not transitive"))?;
    let signs: Vec<i8> = order.iter().map(|&i| t.sign(u, members[i])).collect();
    PsiSignature::from_signs(&signs)
}

pub fn sigma_to_signature(sigma: &DominatingRelation) -> Result<PsiSignature> {
    PsiSignature::from_signs(&sigma.signs())
}

pub fn signature_to_sigma(sig: &PsiSignature) -> Result<DominatingRelation> {
    DominatingRelation::new(&sig.to_signs())
}

fn check_sigma(n: usize, sigma: &DominatingRelation) -> Result<()> {
    if sigma.len() != n {
        return Err(invalid(format!(
            "σ has length {}, expected {n}",
            sigma.len()
        )));
    }
    Ok(())
}

/// Run count of σ over the chain `v_1, …, v_{n−1}`.
fn chain_runs(n: usize, sigma: &DominatingRelation) -> Result<usize> {
    Ok(sigma_to_signature(&sigma.prefix(n - 1))?.run_count())
}

/// Even `n ≥ 4`: `u` is a CR vertex of `L_n(u,σ)` (either variant) iff the
/// run count over the chain is 1, 2 or `n−1`. The rule ignores `r_n`, so
/// both variants share it.
pub fn ln_extension_is_cr(
    n: usize,
    _variant: LnVariant,
    sigma: &DominatingRelation,
) -> Result<bool> {
    if n < 4 || n % 2 == 1 {
        return Err(invalid(format!(
            "the even rule needs even n ≥ 4, got {n}; use the odd rule for odd n"
        )));
    }
    check_sigma(n, sigma)?;
    let t = chain_runs(n, sigma)?;
    Ok(t == 1 || t == 2 || t == n - 1)
}

/// Odd `n ≥ 3`: CR iff the run count `t` is 2 or `n−1`, or `t = 1` and
/// `α_1·θ(u,v_n) < 0` for `L_n` (`> 0` for `L_n^−`, the switch at `v_n`
/// reversing θ(u,v_n)).
pub fn ln_extension_is_cr_odd(
    n: usize,
    variant: LnVariant,
    sigma: &DominatingRelation,
) -> Result<bool> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(invalid(format!(
            "the odd rule needs odd n ≥ 3, got {n}; use the even rule for even n"
        )));
    }
    check_sigma(n, sigma)?;
    let t = chain_runs(n, sigma)?;
    if t == 2 || t == n - 1 {
        return Ok(true);
    }
    if t != 1 {
        return Ok(false);
    }
    let product = sigma.sign(0) * sigma.sign(n - 1);
    Ok(match variant {
        LnVariant::L => product < 0,
        LnVariant::LMinus => product > 0,
    })
}

/// Chooses the even or odd rule by the parity of `n`.
pub fn predict_ln_extension_cr(
    n: usize,
    variant: LnVariant,
    sigma: &DominatingRelation,
) -> Result<bool> {
    if n.is_multiple_of(2) {
        ln_extension_is_cr(n, variant, sigma)
    } else {
        ln_extension_is_cr_odd(n, variant, sigma)
    }
}
