//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p crtour --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use crtour::verify::d7_example;
use crtour::zmatrix::{
    b_diff_predicted, bordered_det, claim1_check, delta_total, diagonal_vector, row_sums,
    row_sums_by_diagonals,
};
use crtour::{
    blowup, contains_switching_isomorphic, count_cr_sigmas, cr_vertex_witness, decompose_over_ln,
    decompose_transitive_blowup, det_exact, extend, gen_ln, in_dk, in_dk_exactly, is_basic,
    is_cr_tournament, is_diamond, is_strong_cr, max_subtournament_det, switching_isomorphic,
    theorem71_check, tournament_classes, tournament_det, transitive_blowup, z_matrix, BlowupSpec,
    BorderedSkew, DominatingRelation, Limits, LnVariant, Permutation, Tournament, VertexSet,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: crtour::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn classes(n: usize) -> Result<Vec<Tournament>, String> {
    lib(tournament_classes(n, &Limits::default()))
}

fn signs(rng: &mut ChaCha8Rng, len: usize) -> Vec<i8> {
    (0..len).map(|_| if rng.gen() { 1 } else { -1 }).collect()
}

fn sign_vec(bits: u64, len: usize) -> Vec<i8> {
    (0..len)
        .map(|k| if bits >> k & 1 == 1 { 1 } else { -1 })
        .collect()
}

fn random_tournament(rng: &mut ChaCha8Rng, n: usize) -> Tournament {
    Tournament::from_fn(n, |_, _| rng.gen()).unwrap()
}

fn scramble(rng: &mut ChaCha8Rng, t: &Tournament) -> Tournament {
    let n = t.order();
    let w = VertexSet::from_bits(rng.gen::<u32>() & VertexSet::full(n).bits());
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    let phi = Permutation::new(images).unwrap();
    t.switch(w).unwrap().relabel(&phi).unwrap()
}

fn induced_diamond(t: &Tournament) -> bool {
    let n = t.order();
    (0u32..1 << n)
        .filter(|b| b.count_ones() == 4)
        .any(|b| is_diamond(&t.induced(VertexSet::from_bits(b)).unwrap()))
}

fn switches_to_transitive(t: &Tournament) -> bool {
    let n = t.order();
    n <= 1
        || (0u32..1 << (n - 1)).any(|b| {
            t.switch(VertexSet::from_bits(b))
                .unwrap()
                .is_transitive()
                .is_some()
        })
}

fn c1_det_ln() -> Outcome {
    for n in (2..=12).step_by(2) {
        let d = tournament_det(&lib(gen_ln(n))?);
        let want = ((n - 1) * (n - 1)) as i128;
        ensure(d == want, || format!("det(L_{n}) = {d}, expected {want}"))?;
    }
    Ok("n = 2,4,...,12".into())
}

fn c2_scan_ln() -> Outcome {
    for n in (2..=10).step_by(2) {
        let l = lib(gen_ln(n))?;
        let rep = lib(max_subtournament_det(&l))?;
        let k = (n - 1) as u64;
        ensure(rep.k == k && rep.max_minor == k * k, || {
            format!("L_{n}: max minor {} (k={})", rep.max_minor, rep.k)
        })?;
        ensure(lib(in_dk_exactly(&l, k))?, || {
            format!("L_{n} not in D_{k}\\D_{}", k - 2)
        })?;
        if k >= 3 {
            ensure(!lib(in_dk(&l, k - 2))?, || format!("L_{n} in D_{}", k - 2))?;
        }
    }
    Ok("even n ≤ 10".into())
}

fn c3_eq11() -> Outcome {
    let t = d7_example();
    let d = tournament_det(&t);
    ensure(d == 49, || format!("det {d}"))?;
    let rep = lib(max_subtournament_det(&t))?;
    ensure(rep.k == 7 && rep.class_label() == "D_7\\D_5", || {
        rep.class_label()
    })?;
    Ok("det 49, D_7\\D_5".into())
}

fn c4_d1_equivalence() -> Outcome {
    let mut total = 0;
    for n in 1..=6 {
        for t in classes(n)? {
            total += 1;
            let d1 = lib(in_dk(&t, 1))?;
            let no_diamond = !induced_diamond(&t);
            let sw_transitive = switches_to_transitive(&t);
            let decomposed = if n >= 2 {
                match lib(decompose_over_ln(&t, 2))? {
                    Some(dec) => {
                        ensure(dec.verify(&t), || {
                            format!("{t:?}: decomposition does not verify")
                        })?;
                        true
                    }
                    None => false,
                }
            } else {
                true
            };
            ensure(
                d1 == no_diamond && d1 == sw_transitive && d1 == decomposed,
                || {
                    format!("n={n}: D1={d1} no-diamond={no_diamond} sw-transitive={sw_transitive} L2-decomp={decomposed}")
                },
            )?;
        }
    }
    Ok(format!("{total} classes, n ≤ 6"))
}

fn c5_t6() -> Outcome {
    let l6 = lib(gen_ln(6))?;
    let cs = classes(6)?;
    let mut hits = 0;
    for t in &cs {
        let iso = switching_isomorphic(t, &l6).is_some();
        let det25 = tournament_det(t) == 25;
        ensure(iso == det25, || {
            format!("switching-iso={iso} det25={det25}")
        })?;
        hits += iso as usize;
    }
    Ok(format!(
        "{} classes, {hits} switching-isomorphic to L_6",
        cs.len()
    ))
}

fn c6_prop27() -> Outcome {
    let cs = classes(3)?;
    ensure(cs.len() == 2, || format!("{} classes of order 3", cs.len()))?;
    for t in &cs {
        let rep = lib(is_cr_tournament(t))?;
        ensure(rep.is_cr, || "3-tournament is not CR".into())?;
        let non_cr: Vec<DominatingRelation> = DominatingRelation::all(3)
            .filter(|s| cr_vertex_witness(t, s).unwrap().is_none())
            .collect();
        ensure(non_cr.len() == 2, || format!("{} non-CR σ", non_cr.len()))?;
        for s in &non_cr {
            let d = tournament_det(&lib(extend(t, s))?);
            ensure(d == 9, || format!("σ={s}: det {d}"))?;
        }
    }
    Ok("2 classes, 2 non-CR σ each, det 9".into())
}

fn c7_count_bound() -> Outcome {
    let mut total = 0;
    for n in 1..=6 {
        for t in classes(n)? {
            total += 1;
            let c = lib(count_cr_sigmas(&t))?;
            if n <= 2 || is_diamond(&t) {
                ensure(c == 1 << n, || {
                    format!("n={n}: count {c}, expected {}", 1u64 << n)
                })?;
            } else {
                ensure(c <= 4 * n as u64, || {
                    format!("n={n}: count {c} > {}", 4 * n)
                })?;
            }
        }
    }
    Ok(format!("{total} classes, n ≤ 6"))
}

fn c8_lemma64() -> Outcome {
    let mut checked = 0;
    for n in [4, 6, 8] {
        for variant in [LnVariant::L, LnVariant::LMinus] {
            let l = lib(crtour::lfamily::gen_ln_variant(n, variant))?;
            for s in DominatingRelation::all(n) {
                checked += 1;
                let rule = lib(crtour::lfamily::ln_extension_is_cr(n, variant, &s))?;
                let direct = lib(cr_vertex_witness(&l, &s))?.is_some();
                ensure(rule == direct, || {
                    format!("n={n} {variant:?} σ={s}: rule {rule}, direct {direct}")
                })?;
            }
        }
    }
    Ok(format!("{checked} relations"))
}

fn c9_l8_strong() -> Outcome {
    let l8 = lib(gen_ln(8))?;
    ensure(is_basic(&l8), || "L_8 is not basic".into())?;
    let rep = lib(is_strong_cr(&l8))?;
    ensure(rep.base.is_cr, || {
        format!("L_8 not CR: {} failures", rep.base.failures.len())
    })?;
    ensure(rep.blowups.len() == 8, || {
        format!("{} blowups", rep.blowups.len())
    })?;
    for (i, b) in rep.blowups.iter().enumerate() {
        ensure(b.is_cr && b.non_cr_count > 0, || {
            format!(
                "v_{} duplicated: CR={} scanned={}",
                i + 1,
                b.is_cr,
                b.non_cr_count
            )
        })?;
    }
    ensure(rep.strong, || "not strong".into())?;
    let scanned: u64 =
        rep.base.non_cr_count + rep.blowups.iter().map(|b| b.non_cr_count).sum::<u64>();
    Ok(format!(
        "base + 8 blowups, {scanned} non-CR extensions scanned"
    ))
}

const EXAMPLE_R: [i8; 9] = [1, 1, 1, -1, -1, -1, 1, -1, -1];

fn c10_zmatrix_example() -> Outcome {
    let z: [[i64; 8]; 9] = [
        [7, -5, -3, 1, 1, 3, 5, -7],
        [-7, -5, 3, -1, 1, 3, -5, 7],
        [-7, 5, -3, -1, 1, -3, 5, -7],
        [7, -5, -3, -1, -1, 3, -5, 7],
        [-7, -5, -3, 1, 1, -3, 5, 7],
        [-7, -5, 3, -1, -1, 3, 5, -7],
        [-7, 5, -3, 1, 1, 3, -5, 7],
        [7, -5, 3, -1, 1, -3, 5, 7],
        [-7, 5, -3, -1, -1, 3, 5, 7],
    ];
    let gammas: [[i64; 9]; 9] = [
        [0, 7, 5, 3, 1, -1, -3, -5, -7],
        [7, 0, -7, -5, -3, -1, 1, 3, 5],
        [-5, -7, 0, 7, 5, 3, 1, -1, -3],
        [-3, -5, -7, 0, 7, 5, 3, 1, -1],
        [1, 3, 5, 7, 0, -7, -5, -3, -1],
        [1, -1, -3, -5, -7, 0, 7, 5, 3],
        [3, 1, -1, -3, -5, -7, 0, 7, 5],
        [5, 3, 1, -1, -3, -5, -7, 0, 7],
        [-7, -5, -3, -1, 1, 3, 5, 7, 0],
    ];
    let zm = lib(z_matrix(9, &EXAMPLE_R))?;
    let mut entries = 0;
    for (i, row) in z.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let got = zm.entry(i + 1, j + 1);
            ensure(got == v, || {
                format!("z_{}{} = {got}, expected {v}", i + 1, j + 1)
            })?;
            entries += 1;
        }
    }
    for (ell, g) in (1..=9).zip(gammas) {
        let got = lib(diagonal_vector(&zm, ell))?.gamma;
        ensure(got == g, || format!("Γ_{ell} = {got:?}"))?;
    }
    Ok(format!("{entries} entries, 9 diagonal vectors"))
}

fn z_identities(r: &[i8]) -> Result<(), String> {
    let m = r.len();
    let zm = lib(z_matrix(m, r))?;
    let b = row_sums(&zm);
    ensure(b == row_sums_by_diagonals(&zm), || {
        format!("{r:?}: diagonal sums")
    })?;
    for ell in 1..=m {
        let d = lib(diagonal_vector(&zm, ell))?;
        let step = 2 * if ell % 2 == 0 { 1 } else { -1 } * r[ell - 1] as i64;
        ensure(d.gamma[ell - 1] == 0, || {
            format!("{r:?}: γ_{ell}^({ell}) nonzero")
        })?;
        for i in (1..m).filter(|&i| i + 1 != ell && i != ell) {
            ensure(d.gamma[i] - d.gamma[i - 1] == step, || {
                format!("{r:?}: Γ_{ell} step at {i}")
            })?;
        }
    }
    for i in 1..m {
        let want = b[i] - b[i - 1];
        ensure(lib(b_diff_predicted(i, r))? == want, || {
            format!("{r:?}: b_{} − b_{i}", i + 1)
        })?;
    }
    let total = lib(delta_total(r))?;
    let direct: i64 = 2
        * (1..=m)
            .map(|i| if i % 2 == 0 { 1 } else { -1 } * r[i - 1] as i64)
            .sum::<i64>();
    ensure(total == direct, || {
        format!("{r:?}: Δ {total}, direct sum {direct}")
    })?;
    for i in (1..m).filter(|&i| r[i - 1] == r[i]) {
        ensure(b[i] - b[i - 1] == total, || {
            format!("{r:?}: step at {i} is not Δ")
        })?;
    }
    Ok(())
}

fn c11_z_identities() -> Outcome {
    let mut checked = 0;
    for m in [3, 5, 7] {
        for bits in 0..1u64 << m {
            z_identities(&sign_vec(bits, m))?;
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in (9..=15).step_by(2) {
        for _ in 0..1000 {
            z_identities(&signs(&mut rng, m))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} sequences"))
}

fn bordered_case(a: i8, x: Vec<i8>, y: Vec<i8>) -> Result<(), String> {
    let b = lib(BorderedSkew::new(a, x, y))?;
    let formula = lib(bordered_det(&b))?;
    let exact = lib(det_exact(&b.assemble()))?;
    ensure(formula == exact, || {
        format!("a={a} x={:?} y={:?}: {formula} vs {exact}", b.x, b.y)
    })
}

fn c12_bordered() -> Outcome {
    let mut checked = 0;
    for p in [2, 4, 6] {
        for a in [-1, 1] {
            for xb in 0..1u64 << p {
                for yb in 0..1u64 << p {
                    bordered_case(a, sign_vec(xb, p), sign_vec(yb, p))?;
                    checked += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for p in [8, 10] {
        for _ in 0..1000 {
            let a = if rng.gen() { 1 } else { -1 };
            bordered_case(a, signs(&mut rng, p), signs(&mut rng, p))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} cases"))
}

fn c13_claim1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    for n in [8, 10] {
        let l = lib(gen_ln(n))?;
        for _ in 0..1000 {
            let s = lib(DominatingRelation::new(&signs(&mut rng, n)))?;
            let rep = lib(claim1_check(n, &s))?;
            ensure(rep.holds, || format!("n={n} σ={s}: report fails"))?;
            let b = row_sums(&lib(z_matrix(n - 1, &s.signs()[..n - 1]))?);
            let a = -(s.sign(n - 1) as i64);
            let ext = lib(extend(&l, &s))?;
            for i in 1..n {
                let minor = VertexSet::full(n + 1).without(i - 1);
                let d = tournament_det(&lib(ext.induced(minor))?);
                let want = ((a + b[i - 1]) * (a + b[i - 1])) as i128;
                ensure(d == want, || {
                    format!("n={n} σ={s} i={i}: det {d}, (a+b_i)² = {want}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} deletions"))
}

fn c14_ninedet() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6);
        let t = random_tournament(&mut rng, n);
        let i = rng.gen_range(0..n);
        let mut parts = vec![lib(Tournament::transitive(1))?; n];
        parts[i] = Tournament::three_cycle();
        let b = lib(blowup(&BlowupSpec { base: t, parts }))?;
        let (d, db) = (tournament_det(&t), tournament_det(&b));
        ensure(db == 9 * d, || {
            format!("n={n} v_{}: {d} became {db}", i + 1)
        })?;
    }
    Ok("1000 bases".into())
}

fn c15_thm71() -> Outcome {
    let l8 = lib(gen_ln(8))?;
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for case in 0..100 {
        let total = rng.gen_range(8..=11);
        let mut sizes = vec![1usize; 8];
        for _ in 8..total {
            sizes[rng.gen_range(0..8)] += 1;
        }
        let t = scramble(&mut rng, &lib(transitive_blowup(&l8, &sizes))?);
        let dec = lib(decompose_transitive_blowup(&t, &l8))?;
        ensure(dec.as_ref().is_some_and(|d| d.verify(&t)), || {
            format!("case {case} sizes {sizes:?}: no decomposition")
        })?;
        ensure(
            lib(contains_switching_isomorphic(&t, &l8))?.is_some(),
            || format!("case {case}: no switched L_8 inside"),
        )?;
        let r = lib(theorem71_check(&t, 7))?;
        ensure(r == (true, true), || format!("case {case}: {r:?}"))?;
    }
    let e = d7_example();
    let r = lib(theorem71_check(&e, 7))?;
    ensure(r == (false, false), || {
        format!("six-vertex example gave {r:?}")
    })?;
    ensure(lib(decompose_transitive_blowup(&e, &l8))?.is_none(), || {
        "six-vertex example decomposed".into()
    })?;
    Ok("100 blowups of order 8..=11, control negative".into())
}

type Check = (&'static str, Option<u64>, fn() -> Outcome);

const CRITERIA: &[Check] = &[
    ("det(L_n) = (n−1)² for even n ≤ 12", Some(1), c1_det_ln),
    (
        "minor scan puts L_n in D_{n−1}\\D_{n−3} for even n ≤ 10",
        Some(30),
        c2_scan_ln,
    ),
    (
        "six-vertex example has det 49 and lies in D_7\\D_5",
        Some(1),
        c3_eq11,
    ),
    (
        "D_1 ⇔ no diamond ⇔ switching-transitive over all classes n ≤ 6",
        Some(120),
        c4_d1_equivalence,
    ),
    (
        "6-vertex classes: switching-isomorphic to L_6 ⇔ det 25",
        None,
        c5_t6,
    ),
    (
        "3-tournaments are CR with two non-CR σ of det 9",
        None,
        c6_prop27,
    ),
    (
        "CR σ count ≤ 4n, or 2^n for diamonds and orders 1, 2",
        None,
        c7_count_bound,
    ),
    (
        "L_n CR-vertex rule matches direct detection, n ∈ {4,6,8}",
        Some(60),
        c8_lemma64,
    ),
    ("L_8 is basic strong CR", Some(600), c9_l8_strong),
    (
        "Z(9, r) example entries and diagonal vectors",
        None,
        c10_zmatrix_example,
    ),
    (
        "Z-matrix identities, exhaustive m ≤ 7 and random m ≤ 15",
        None,
        c11_z_identities,
    ),
    (
        "bordered determinant formula, exhaustive p ≤ 6 and random p ∈ {8,10}",
        None,
        c12_bordered,
    ),
    (
        "deletion determinants equal (a+b_i)² for n ∈ {8,10}",
        None,
        c13_claim1,
    ),
    (
        "one 3-cycle part multiplies the determinant by 9",
        None,
        c14_ninedet,
    ),
    (
        "L_8 blowups decompose and contain L_8; example negative",
        Some(600),
        c15_thm71,
    ),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, (desc, limit, run)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(*s) => {
                Err(format!("took {:.2?}, limit {s} s", elapsed))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {desc} [{detail}] ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {desc}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", CRITERIA.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
