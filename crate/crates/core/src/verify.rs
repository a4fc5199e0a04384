//! Registry of verification suites. Each suite checks one structural claim
//! exhaustively over isomorphism classes or on seeded random instances and
//! reports every counterexample in `.trn` inline form.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::blowup::{
    blowup, contains_switching_isomorphic, decompose_brute_force, decompose_over_ln,
    decompose_transitive_blowup, theorem71_check, transitive_blowup, BlowupSpec, BRUTE_FORCE_CAP,
};
use crate::cr::{
    cr_associated, cr_vertex_witness, extend, is_basic, is_cr_tournament, is_strong_cr,
    DominatingRelation,
};
use crate::detkit::{in_dk, in_dk_exactly, minor_det, tournament_det, SCAN_CAP};
use crate::enumerate::{tournament_classes, Limits};
use crate::error::{check_cap, invalid, Error, Result};
use crate::format::to_trn_inline;
use crate::iso::switching_isomorphic;
use crate::lfamily::{gen_ln, gen_ln_variant, predict_ln_extension_cr, LnVariant};
use crate::tournament::{Permutation, Tournament, VertexSet};
use crate::zmatrix::{
    b_diff_predicted, bordered_det, bordered_det_alternating, claim1_check, delta_total,
    diagonal_vector, row_sums, row_sums_by_diagonals, z_matrix, BorderedSkew,
};

/// Default sample count of the randomized suites.
pub const DEFAULT_SAMPLES: usize = 1000;

/// Registered suite: name, checked statement, default and maximum `max_n`.
pub struct SuiteInfo {
    pub name: &'static str,
    pub claim: &'static str,
    pub default_n: usize,
    pub cap: usize,
    run: fn(&Ctx) -> Result<Tally>,
}

pub const SUITES: &[SuiteInfo] = &[
    SuiteInfo {
        name: "d1-diamond",
        claim: "D_1 ⇔ no diamond ⇔ switch of a transitive tournament (L_2 blowup), all classes n ≤ max_n",
        default_n: 6,
        cap: 8,
        run: d1_diamond,
    },
    SuiteInfo {
        name: "d3-six-subs",
        claim: "D_3 ⇔ every 6-subtournament in D_3 ⇔ L_2/L_4 blowup, all classes n ≤ max_n",
        default_n: 7,
        cap: 8,
        run: d3_six_subs,
    },
    SuiteInfo {
        name: "d5-blowup",
        claim: "D_5\\D_3 ⇔ switch of a transitive L_6 blowup, classes n ≤ max_n plus planted and perturbed blowups",
        default_n: 7,
        cap: 8,
        run: d5_blowup,
    },
    SuiteInfo {
        name: "det-sw-invariance",
        claim: "switching preserves every principal minor",
        default_n: 12,
        cap: SCAN_CAP,
        run: det_sw_invariance,
    },
    SuiteInfo {
        name: "cr-assoc-sw",
        claim: "switching preserves CR-associated pairs",
        default_n: 12,
        cap: SCAN_CAP,
        run: cr_assoc_sw,
    },
    SuiteInfo {
        name: "cr-pred-sw",
        claim: "switching isomorphism preserves CR, strong CR and basic",
        default_n: 6,
        cap: 8,
        run: cr_pred_sw,
    },
    SuiteInfo {
        name: "strongcr-equiv",
        claim: "a CR 1-transitive blowup forces a CR base, so strong CR ⇔ all 1-transitive blowups CR",
        default_n: 6,
        cap: 7,
        run: strongcr_equiv,
    },
    SuiteInfo {
        name: "basic-not-d1",
        claim: "basic tournaments lie outside D_1, all classes n ≤ max_n",
        default_n: 6,
        cap: 8,
        run: basic_not_d1,
    },
    SuiteInfo {
        name: "noncr-nondecomp",
        claim: "a non-CR extension of a transitive blowup of L_4 or L_6 is not a switched blowup of the same base",
        default_n: 9,
        cap: 11,
        run: noncr_nondecomp,
    },
    SuiteInfo {
        name: "prop27",
        claim: "every 3-tournament is CR with exactly two non-CR σ, each giving det 9",
        default_n: 3,
        cap: 3,
        run: prop27,
    },
    SuiteInfo {
        name: "prop210",
        claim: "L_2 is strong CR; L_4 and L_6 are basic strong CR",
        default_n: 6,
        cap: 6,
        run: prop210,
    },
    SuiteInfo {
        name: "lemma64",
        claim: "run-count rule for CR vertices of L_n and L_n^- extensions matches direct detection, 3 ≤ n ≤ max_n",
        default_n: 8,
        cap: 14,
        run: lemma64,
    },
    SuiteInfo {
        name: "thm62-l8",
        claim: "L_n is basic strong CR by definition-level checking, even 8 ≤ n ≤ max_n",
        default_n: 10,
        cap: 10,
        run: thm62_l8,
    },
    SuiteInfo {
        name: "t6-det25",
        claim: "a 6-tournament is switching isomorphic to L_6 ⇔ det 25",
        default_n: 6,
        cap: 6,
        run: t6_det25,
    },
    SuiteInfo {
        name: "ninedet",
        claim: "replacing one vertex by a 3-cycle multiplies det by 9, bases n ≤ max_n",
        default_n: 6,
        cap: 13,
        run: ninedet,
    },
    SuiteInfo {
        name: "thm71",
        claim: "in D_7\\D_5: decomposes over L_8 ⇔ contains a switching copy of L_8, blowups of order ≤ max_n",
        default_n: 11,
        cap: 12,
        run: thm71,
    },
    SuiteInfo {
        name: "zmatrix-props",
        claim: "Z-matrix row-sum, diagonal-step, b-difference and Δ identities; bordered determinants; deletion determinants of L_n extensions",
        default_n: 15,
        cap: 15,
        run: zmatrix_props,
    },
];

pub fn suite_info(name: &str) -> Option<&'static SuiteInfo> {
    SUITES.iter().find(|s| s.name == name)
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub checked: u64,
    pub failures: Vec<String>,
    pub wall_time_ms: u128,
    pub passed: bool,
}

struct Ctx {
    max_n: usize,
    seed: u64,
    samples: usize,
    limits: Limits,
}

impl Ctx {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn classes(&self, n: usize) -> Result<Vec<Tournament>> {
        tournament_classes(n, &self.limits)
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failures: Vec<String>,
    params: BTreeMap<String, Value>,
}

impl Tally {
    fn absorb(&mut self, outcomes: Vec<Option<String>>) {
        self.checked += outcomes.len() as u64;
        self.failures.extend(outcomes.into_iter().flatten());
    }

    fn param(&mut self, key: &str, v: Value) {
        self.params.insert(key.to_string(), v);
    }
}

/// Runs `f` on every case in parallel, keeping case order in the failure list.
fn run_cases<C: Sync>(
    cases: &[C],
    f: impl Fn(&C) -> Result<Option<String>> + Sync + Send,
) -> Result<Vec<Option<String>>> {
    cases.par_iter().map(f).collect()
}

/// Runs the named suite. `max_n` defaults per suite and may not exceed the
/// suite's cap; `seed` fixes every random choice.
pub fn run_suite(name: &str, max_n: Option<usize>, seed: u64) -> Result<SuiteReport> {
    run_suite_with(name, max_n, seed, DEFAULT_SAMPLES, &Limits::from_env())
}

pub fn run_suite_with(
    name: &str,
    max_n: Option<usize>,
    seed: u64,
    samples: usize,
    limits: &Limits,
) -> Result<SuiteReport> {
    let info = suite_info(name).ok_or_else(|| {
        let names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
        invalid(format!(
            "unknown suite {name:?}; known: {}",
            names.join(", ")
        ))
    })?;
    let max_n = max_n.unwrap_or(info.default_n);
    check_cap("suite max_n", max_n, info.cap)?;
    let ctx = Ctx {
        max_n,
        seed,
        samples,
        limits: *limits,
    };
    let start = Instant::now();
    let tally = (info.run)(&ctx)?;
    let mut params = tally.params;
    params.insert("max_n".into(), json!(max_n));
    params.insert("cap".into(), json!(info.cap));
    params.insert("seed".into(), json!(seed));
    params.insert(
        "enumeration_cap".into(),
        json!(limits.max_enumeration_order),
    );
    Ok(SuiteReport {
        suite: info.name.to_string(),
        params,
        checked: tally.checked,
        passed: tally.failures.is_empty(),
        failures: tally.failures,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

fn random_tournament(rng: &mut impl Rng, n: usize) -> Tournament {
    Tournament::from_fn(n, |_, _| rng.gen()).expect("order fits")
}

fn random_subset(rng: &mut impl Rng, n: usize) -> VertexSet {
    VertexSet::from_bits(rng.gen::<u32>()).intersection(VertexSet::full(n))
}

fn random_permutation(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("shuffle is a bijection")
}

/// `switch(T, W)` relabelled by a random permutation.
fn scramble(rng: &mut impl Rng, t: &Tournament) -> Tournament {
    let w = random_subset(rng, t.order());
    let phi = random_permutation(rng, t.order());
    t.switch(w)
        .and_then(|s| s.relabel(&phi))
        .expect("valid switch and relabel")
}

fn random_sizes(rng: &mut impl Rng, parts: usize, total: usize) -> Vec<usize> {
    let mut sizes = vec![1; parts];
    for _ in parts..total {
        let i = rng.gen_range(0..parts);
        sizes[i] += 1;
    }
    sizes
}

fn fail(t: &Tournament, what: impl std::fmt::Display) -> Option<String> {
    Some(format!("{}: {what}", to_trn_inline(t)))
}

fn has_diamond(t: &Tournament) -> bool {
    (0..1u32 << t.order())
        .filter(|m| m.count_ones() == 4)
        .any(|m| minor_det(t, VertexSet::from_bits(m)) == 9)
}

fn all_classes_up_to(ctx: &Ctx, from: usize) -> Result<Vec<Tournament>> {
    let mut all = Vec::new();
    for n in from..=ctx.max_n {
        all.extend(ctx.classes(n)?);
    }
    Ok(all)
}

fn d1_diamond(ctx: &Ctx) -> Result<Tally> {
    let classes = all_classes_up_to(ctx, 1)?;
    let mut tally = Tally::default();
    tally.absorb(run_cases(&classes, |t| {
        let in_d1 = in_dk(t, 1)?;
        let no_diamond = !has_diamond(t);
        let decomposes = t.order() < 2
            || match decompose_over_ln(t, 2)? {
                Some(d) => d.verify(t),
                None => false,
            };
        Ok((in_d1 != no_diamond || in_d1 != decomposes).then(|| {
            format!(
                "{}: D_1={in_d1} diamond-free={no_diamond} L_2-decomposable={decomposes}",
                to_trn_inline(t)
            )
        }))
    })?);
    Ok(tally)
}

fn d3_six_subs(ctx: &Ctx) -> Result<Tally> {
    let classes = all_classes_up_to(ctx, 1)?;
    let mut tally = Tally::default();
    tally.absorb(run_cases(&classes, |t| {
        let in_d3 = in_dk(t, 3)?;
        let n = t.order();
        let subs_ok = n < 6
            || (0..1u32 << n)
                .filter(|m| m.count_ones() == 6)
                .map(|m| in_dk(&t.induced(VertexSet::from_bits(m))?, 3))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|b| b);
        let blowup_form =
            n < 2 || decompose_over_ln(t, 2)?.is_some() || decompose_over_ln(t, 4)?.is_some();
        Ok((in_d3 != subs_ok || in_d3 != blowup_form).then(|| {
            format!(
                "{}: D_3={in_d3} six-subs={subs_ok} L_2/L_4-decomposable={blowup_form}",
                to_trn_inline(t)
            )
        }))
    })?);
    Ok(tally)
}

fn check_d5_equivalence(t: &Tournament) -> Result<Option<String>> {
    let exact = in_dk_exactly(t, 5)?;
    let d = decompose_over_ln(t, 6)?;
    let ok = match &d {
        Some(d) => exact && d.verify(t),
        None => !exact,
    };
    Ok((!ok).then(|| {
        format!(
            "{}: D_5\\D_3={exact} L_6-decomposable={}",
            to_trn_inline(t),
            d.is_some()
        )
    }))
}

fn d5_blowup(ctx: &Ctx) -> Result<Tally> {
    let mut tally = Tally::default();
    let classes = all_classes_up_to(ctx, 2)?;
    tally.absorb(run_cases(&classes, check_d5_equivalence)?);
    let l6 = gen_ln(6)?;
    let mut rng = ctx.rng(1);
    let planted: Vec<(Tournament, Tournament)> = (0..ctx.samples)
        .map(|_| {
            let total = rng.gen_range(6..=10);
            let b = transitive_blowup(&l6, &random_sizes(&mut rng, 6, total)).expect("sizes valid");
            let t = scramble(&mut rng, &b);
            let (u, v) = (rng.gen_range(0..total), rng.gen_range(0..total));
            let perturbed = if u == v {
                t
            } else {
                t.reverse_arc(u, v).expect("distinct vertices")
            };
            (t, perturbed)
        })
        .collect();
    tally.absorb(run_cases(&planted, |(t, perturbed)| {
        if let Some(f) = check_d5_equivalence(t)? {
            return Ok(Some(f));
        }
        if !in_dk_exactly(t, 5)? {
            return Ok(fail(t, "planted L_6 blowup outside D_5\\D_3"));
        }
        check_d5_equivalence(perturbed)
    })?);
    tally.param("samples", json!(ctx.samples));
    tally.param("planted_order", json!("6..=10"));
    Ok(tally)
}

fn det_sw_invariance(ctx: &Ctx) -> Result<Tally> {
    let mut rng = ctx.rng(2);
    let cases: Vec<(Tournament, VertexSet, Vec<VertexSet>)> = (0..ctx.samples)
        .map(|_| {
            let n = rng.gen_range(1..=ctx.max_n);
            let t = random_tournament(&mut rng, n);
            let minors = if n <= 8 {
                (0u32..1 << n).map(VertexSet::from_bits).collect()
            } else {
                (0..64).map(|_| random_subset(&mut rng, n)).collect()
            };
            (t, random_subset(&mut rng, n), minors)
        })
        .collect();
    let mut tally = Tally::default();
    tally.absorb(run_cases(&cases, |(t, w, minors)| {
        let s = t.switch(*w)?;
        let bad = minors
            .iter()
            .find(|&&u| minor_det(t, u) != minor_det(&s, u));
        Ok(bad.map(|u| {
            format!(
                "{} W={:?} U={:?}",
                to_trn_inline(t),
                w.to_one_based(),
                u.to_one_based()
            )
        }))
    })?);
    tally.param("samples", json!(ctx.samples));
    tally.param("minors_per_sample", json!("all for n ≤ 8, else 64"));
    Ok(tally)
}

fn cr_assoc_sw(ctx: &Ctx) -> Result<Tally> {
    let mut rng = ctx.rng(3);
    let cases: Vec<(Tournament, VertexSet, usize, usize)> = (0..ctx.samples)
        .map(|_| {
            let n = rng.gen_range(2..=ctx.max_n.max(2));
            let mut t = random_tournament(&mut rng, n);
            let u1 = rng.gen_range(0..n);
            let u2 = (u1 + rng.gen_range(1..n)) % n;
            if rng.gen_bool(0.5) {
                // plant a co- or revertex of u1 at u2
                let mut beats = t.out_set(u1).without(u2);
                if rng.gen_bool(0.5) {
                    beats = beats.complement(n).without(u1).without(u2);
                }
                let base = t;
                t = Tournament::from_fn(n, |a, b| {
                    if a == u2 && b != u1 {
                        beats.contains(b)
                    } else if b == u2 && a != u1 {
                        !beats.contains(a)
                    } else {
                        base.beats(a, b)
                    }
                })
                .expect("order fits");
            }
            (t, random_subset(&mut rng, n), u1, u2)
        })
        .collect();
    let mut tally = Tally::default();
    tally.absorb(run_cases(&cases, |(t, w, u1, u2)| {
        let before = cr_associated(t, *u1, *u2)?.is_some();
        let after = cr_associated(&t.switch(*w)?, *u1, *u2)?.is_some();
        Ok((before != after).then(|| {
            format!(
                "{} W={:?} pair=({},{})",
                to_trn_inline(t),
                w.to_one_based(),
                u1 + 1,
                u2 + 1
            )
        }))
    })?);
    tally.param("samples", json!(ctx.samples));
    Ok(tally)
}

fn cr_pred_sw(ctx: &Ctx) -> Result<Tally> {
    let mut rng = ctx.rng(4);
    let cases: Vec<(Tournament, Tournament)> = (0..ctx.samples)
        .map(|_| {
            let n = rng.gen_range(1..=ctx.max_n);
            let t = random_tournament(&mut rng, n);
            let s = scramble(&mut rng, &t);
            (t, s)
        })
        .collect();
    let mut tally = Tally::default();
    tally.absorb(run_cases(&cases, |(t, s)| {
        let a = is_strong_cr(t)?;
        let b = is_strong_cr(s)?;
        let ok = a.base.is_cr == b.base.is_cr && a.strong == b.strong && is_basic(t) == is_basic(s);
        Ok((!ok).then(|| format!("{} vs {}", to_trn_inline(t), to_trn_inline(s))))
    })?);
    tally.param("samples", json!(ctx.samples));
    Ok(tally)
}

fn strongcr_equiv(ctx: &Ctx) -> Result<Tally> {
    let classes = all_classes_up_to(ctx, 1)?;
    let mut tally = Tally::default();
    tally.absorb(run_cases(&classes, |t| {
        let rep = is_strong_cr(t)?;
        let all_blowups_cr = rep.blowups.iter().all(|r| r.is_cr);
        if rep.strong != all_blowups_cr {
            return Ok(fail(t, "strong flag disagrees with the blowup reports"));
        }
        // any single CR blowup already forces a CR base
        if rep.blowups.iter().any(|r| r.is_cr) && !rep.base.is_cr {
            return Ok(fail(t, "a CR 1-transitive blowup over a non-CR base"));
        }
        Ok(None)
    })?);
    Ok(tally)
}

fn basic_not_d1(ctx: &Ctx) -> Result<Tally> {
    let classes = all_classes_up_to(ctx, 4)?;
    let basics: Vec<Tournament> = classes.into_iter().filter(is_basic).collect();
    let mut tally = Tally::default();
    tally.param("basic_classes", json!(basics.len()));
    tally.absorb(run_cases(&basics, |t| {
        Ok(in_dk(t, 1)?.then(|| format!("{}: basic and in D_1", to_trn_inline(t))))
    })?);
    Ok(tally)
}

fn noncr_nondecomp(ctx: &Ctx) -> Result<Tally> {
    let mut rng = ctx.rng(5);
    let bases = [gen_ln(4)?, gen_ln(6)?];
    let mut cases = Vec::with_capacity(ctx.samples);
    for _ in 0..ctx.samples {
        let h = bases[rng.gen_range(0..bases.len())];
        let parts = h.order();
        // the unblown diamond L_4 has no non-CR relation at all
        let lo = parts + 1;
        let hi = ctx.max_n.saturating_sub(1).max(lo);
        let total = rng.gen_range(lo..=hi);
        let b = transitive_blowup(&h, &random_sizes(&mut rng, parts, total))?;
        let b = scramble(&mut rng, &b);
        let sigma = loop {
            let s =
                DominatingRelation::from_plus_set(b.order(), random_subset(&mut rng, b.order()))?;
            if cr_vertex_witness(&b, &s)?.is_none() {
                break s;
            }
        };
        cases.push((h, b, sigma));
    }
    let mut tally = Tally::default();
    tally.absorb(run_cases(&cases, |(h, b, sigma)| {
        let ext = extend(b, sigma)?;
        if decompose_transitive_blowup(&ext, h)?.is_some() {
            return Ok(Some(format!(
                "{} σ={sigma}: extension decomposes",
                to_trn_inline(b)
            )));
        }
        if ext.order() <= BRUTE_FORCE_CAP && decompose_brute_force(&ext, h)?.is_some() {
            return Ok(Some(format!(
                "{} σ={sigma}: oracle decomposes the extension",
                to_trn_inline(b)
            )));
        }
        Ok(None)
    })?);
    tally.param("samples", json!(ctx.samples));
    Ok(tally)
}

fn prop27(ctx: &Ctx) -> Result<Tally> {
    let mut tally = Tally::default();
    for t in ctx.classes(3)? {
        let rep = is_cr_tournament(&t)?;
        if !rep.is_cr || rep.non_cr_count != 2 {
            tally.failures.push(format!(
                "{}: CR={} non-CR σ count {}",
                to_trn_inline(&t),
                rep.is_cr,
                rep.non_cr_count
            ));
        }
        for sigma in DominatingRelation::all(3) {
            tally.checked += 1;
            if cr_vertex_witness(&t, &sigma)?.is_none() {
                let d = tournament_det(&extend(&t, &sigma)?);
                if d != 9 {
                    tally
                        .failures
                        .push(format!("{} σ={sigma}: det {d}", to_trn_inline(&t)));
                }
            }
        }
    }
    Ok(tally)
}

fn prop210(ctx: &Ctx) -> Result<Tally> {
    let mut tally = Tally::default();
    for n in (2..=ctx.max_n).step_by(2) {
        let l = gen_ln(n)?;
        let rep = is_strong_cr(&l)?;
        tally.checked += 1;
        if !rep.strong {
            tally.failures.push(format!("L{n} is not strong CR"));
        }
        if n >= 4 && !is_basic(&l) {
            tally.failures.push(format!("L{n} is not basic"));
        }
    }
    Ok(tally)
}

fn lemma64(ctx: &Ctx) -> Result<Tally> {
    let mut tally = Tally::default();
    for n in 3..=ctx.max_n {
        for variant in [LnVariant::L, LnVariant::LMinus] {
            let l = gen_ln_variant(n, variant)?;
            let sigmas: Vec<DominatingRelation> = DominatingRelation::all(n).collect();
            tally.absorb(run_cases(&sigmas, |sigma| {
                let predicted = predict_ln_extension_cr(n, variant, sigma)?;
                let direct = cr_vertex_witness(&l, sigma)?.is_some();
                Ok((predicted != direct).then(|| {
                    format!("n={n} {variant:?} σ={sigma}: rule {predicted}, direct {direct}")
                }))
            })?);
        }
    }
    Ok(tally)
}

fn thm62_l8(ctx: &Ctx) -> Result<Tally> {
    let mut tally = Tally::default();
    let mut extensions = 0u64;
    for n in (8..=ctx.max_n).step_by(2) {
        let l = gen_ln(n)?;
        let rep = is_strong_cr(&l)?;
        tally.checked += 1 + rep.blowups.len() as u64;
        extensions +=
            rep.base.non_cr_count + rep.blowups.iter().map(|r| r.non_cr_count).sum::<u64>();
        if !is_basic(&l) {
            tally.failures.push(format!("L{n} is not basic"));
        }
        if !rep.base.is_cr {
            tally.failures.push(format!(
                "L{n} is not CR: {} failing σ",
                rep.base.failures.len()
            ));
        }
        for (i, b) in rep.blowups.iter().enumerate() {
            if !b.is_cr {
                tally.failures.push(format!(
                    "L{n} with v_{} duplicated is not CR: {} failing σ",
                    i + 1,
                    b.failures.len()
                ));
            }
        }
    }
    tally.param("non_cr_extensions_scanned", json!(extensions));
    Ok(tally)
}

fn t6_det25(ctx: &Ctx) -> Result<Tally> {
    let l6 = gen_ln(6)?;
    let classes = ctx.classes(6)?;
    let mut tally = Tally::default();
    tally.absorb(run_cases(&classes, |t| {
        let iso = switching_isomorphic(t, &l6).is_some();
        let det25 = tournament_det(t) == 25;
        Ok((iso != det25)
            .then(|| format!("{}: switching-iso={iso} det25={det25}", to_trn_inline(t))))
    })?);
    Ok(tally)
}

fn ninedet(ctx: &Ctx) -> Result<Tally> {
    let mut rng = ctx.rng(6);
    let cases: Vec<(Tournament, usize)> = (0..ctx.samples)
        .map(|_| {
            let n = rng.gen_range(1..=ctx.max_n);
            (random_tournament(&mut rng, n), rng.gen_range(0..n))
        })
        .collect();
    let mut tally = Tally::default();
    tally.absorb(run_cases(&cases, |(t, i)| {
        let mut parts = vec![Tournament::transitive(1)?; t.order()];
        parts[*i] = Tournament::three_cycle();
        let b = blowup(&BlowupSpec { base: *t, parts })?;
        let (d, db) = (tournament_det(t), tournament_det(&b));
        Ok((db != 9 * d)
            .then(|| format!("{} at v_{}: det {d} became {db}", to_trn_inline(t), i + 1)))
    })?);
    tally.param("samples", json!(ctx.samples));
    Ok(tally)
}

fn eq11() -> Tournament {
    Tournament::from_skew_rows(&[
        vec![0, 1, 1, 1, -1, -1],
        vec![-1, 0, 1, 1, -1, 1],
        vec![-1, -1, 0, 1, 1, 1],
        vec![-1, -1, -1, 0, -1, -1],
        vec![1, 1, -1, 1, 0, 1],
        vec![1, -1, -1, 1, -1, 0],
    ])
    .expect("valid skew rows")
}

/// The six-vertex member of `D_7\D_5` used as the negative control.
pub fn d7_example() -> Tournament {
    eq11()
}

fn thm71(ctx: &Ctx) -> Result<Tally> {
    let l8 = gen_ln(8)?;
    let mut rng = ctx.rng(7);
    let samples = (ctx.samples / 10).max(1);
    let hi = ctx.max_n.max(8);
    let cases: Vec<(Tournament, Tournament)> = (0..samples)
        .map(|_| {
            let total = rng.gen_range(8..=hi);
            let b = transitive_blowup(&l8, &random_sizes(&mut rng, 8, total)).expect("sizes valid");
            let t = scramble(&mut rng, &b);
            let (u, v) = (rng.gen_range(0..total), rng.gen_range(0..total));
            let perturbed = if u == v {
                t
            } else {
                t.reverse_arc(u, v).expect("distinct vertices")
            };
            (t, perturbed)
        })
        .collect();
    let mut tally = Tally::default();
    tally.absorb(run_cases(&cases, |(t, perturbed)| {
        let planted = theorem71_check(t, 7)?;
        if planted != (true, true) {
            return Ok(fail(t, format!("planted L_8 blowup gave {planted:?}")));
        }
        if in_dk_exactly(perturbed, 7)? {
            let (lhs, rhs) = theorem71_check(perturbed, 7)?;
            if lhs != rhs {
                return Ok(fail(perturbed, format!("decomposes={lhs} contains={rhs}")));
            }
        }
        Ok(None)
    })?);
    let e = eq11();
    tally.checked += 1;
    let r = theorem71_check(&e, 7)?;
    if r != (false, false) {
        tally
            .failures
            .push(format!("{}: gave {r:?}", to_trn_inline(&e)));
    }
    let control = contains_switching_isomorphic(&e, &l8)?;
    if control.is_some() {
        tally
            .failures
            .push("six-vertex control contains L_8".into());
    }
    tally.param("samples", json!(samples));
    tally.param("blowup_order", json!(format!("8..={hi}")));
    Ok(tally)
}

fn sign_vec(bits: u64, len: usize) -> Vec<i8> {
    (0..len)
        .map(|k| if bits >> k & 1 == 1 { 1 } else { -1 })
        .collect()
}

fn z_identities(r: &[i8]) -> Result<Option<String>> {
    let m = r.len();
    let zm = z_matrix(m, r)?;
    let b = row_sums(&zm);
    let mut problems = Vec::new();
    if b != row_sums_by_diagonals(&zm) {
        problems.push("row sums differ from diagonal sums".to_string());
    }
    for i in 1..=m {
        for j in 1..m {
            if zm.entry(i, j).abs() != (m as i64 - 2 * j as i64).abs() {
                problems.push(format!("|z_{i}{j}| wrong"));
            }
        }
    }
    for ell in 1..=m {
        let d = diagonal_vector(&zm, ell)?;
        let bad = d.gamma[ell - 1] != 0
            || (1..m)
                .filter(|&i| i + 1 != ell && i != ell)
                .any(|i| d.gamma[i] - d.gamma[i - 1] != d.step);
        if bad {
            problems.push(format!("Γ_{ell} step"));
        }
    }
    match delta_total(r) {
        Ok(_) => {}
        Err(Error::TheoremViolation(msg)) => problems.push(msg),
        Err(e) => return Err(e),
    }
    for i in 1..m {
        if b_diff_predicted(i, r)? != b[i] - b[i - 1] {
            problems.push(format!("b_{} − b_{i} mispredicted", i + 1));
        }
    }
    let text: String = r.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect();
    Ok((!problems.is_empty()).then(|| format!("r={text}: {}", problems.join("; "))))
}

fn bordered_case(a: i8, x: Vec<i8>, y: Vec<i8>) -> Result<Option<String>> {
    let alternating = x
        .iter()
        .enumerate()
        .all(|(k, &v)| v == if k % 2 == 0 { 1 } else { -1 });
    let b = BorderedSkew::new(a, x, y)?;
    let formula = bordered_det(&b)?;
    let exact = crate::detkit::det_exact(&b.assemble())?;
    let closed_ok = !alternating || bordered_det_alternating(a, &b.y)? == exact;
    Ok((formula != exact || !closed_ok).then(|| {
        format!(
            "a={a} x={:?} y={:?}: formula {formula}, exact {exact}",
            b.x, b.y
        )
    }))
}

fn zmatrix_props(ctx: &Ctx) -> Result<Tally> {
    let mut tally = Tally::default();
    let mut rng = ctx.rng(8);
    let mut z_cases: Vec<Vec<i8>> = Vec::new();
    for m in (3..=ctx.max_n.min(7)).step_by(2) {
        z_cases.extend((0..1u64 << m).map(|s| sign_vec(s, m)));
    }
    for m in (9..=ctx.max_n).step_by(2) {
        z_cases.extend((0..ctx.samples).map(|_| sign_vec(rng.gen(), m)));
    }
    tally.absorb(run_cases(&z_cases, |r| z_identities(r))?);

    let mut bordered: Vec<(i8, Vec<i8>, Vec<i8>)> = Vec::new();
    for p in [2usize, 4, 6] {
        for xs in 0..1u64 << p {
            for ys in 0..1u64 << p {
                for a in [1, -1] {
                    bordered.push((a, sign_vec(xs, p), sign_vec(ys, p)));
                }
            }
        }
    }
    for p in [8usize, 10] {
        for k in 0..ctx.samples {
            let a = if rng.gen() { 1 } else { -1 };
            // every fourth case uses the alternating x of the closed form
            let x = if k % 4 == 0 {
                (0..p).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect()
            } else {
                sign_vec(rng.gen(), p)
            };
            bordered.push((a, x, sign_vec(rng.gen(), p)));
        }
    }
    tally.absorb(run_cases(&bordered, |(a, x, y)| {
        bordered_case(*a, x.clone(), y.clone())
    })?);

    let mut claims: Vec<(usize, DominatingRelation)> = Vec::new();
    for n in [8usize, 10] {
        claims.push((n, DominatingRelation::from_plus_set(n, VertexSet::full(n))?));
        for _ in 0..ctx.samples {
            claims.push((
                n,
                DominatingRelation::from_plus_set(n, random_subset(&mut rng, n))?,
            ));
        }
    }
    tally.absorb(run_cases(&claims, |(n, sigma)| {
        let rep = claim1_check(*n, sigma)?;
        Ok((!rep.holds).then(|| {
            let bad: Vec<String> = rep
                .rows
                .iter()
                .filter(|r| !r.holds())
                .map(|r| {
                    format!(
                        "v_{} det {} vs (a+b_i)² {}",
                        r.i, r.deletion_det, r.predicted
                    )
                })
                .collect();
            format!("L{n} σ={sigma}: {}", bad.join("; "))
        }))
    })?);
    tally.param("z_sequences", json!(z_cases.len()));
    tally.param("bordered_cases", json!(bordered.len()));
    tally.param("deletion_cases", json!(claims.len()));
    Ok(tally)
}
