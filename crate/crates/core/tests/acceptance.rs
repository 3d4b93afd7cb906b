//! The ten acceptance criteria, one PASS/FAIL line each. All comparisons are exact.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qgeo::braided::{
    braided_hopf_check, braided_matrices, dqua_check, frt_bialgebra, frt_presentation, non_commutator_rules,
    ybe_check, ybe_violations, Bicharacter, Braiding, RMatrix,
};
use qgeo::dsl::{parse_document, parse_element, print_document};
use qgeo::freealg::{overlap_confluence, Element};
use qgeo::groups::{
    bicross_inclusion, bicross_projection, bicrossproduct, convolution, find_factorisations, fourier, fourier_check,
    function_hopf, group_hopf, matched_pair, FinGroup, MatchedPair,
};
use qgeo::hopf::{dual_findim, find_isomorphism, hopf_axioms, morphism_violations, FinHopf, SparseVec};
use qgeo::models::{
    bicso3_model, classical_limit, heisenberg_flow, lookup, models_from_document, planck_model, qplane, Model, MODEL_FILES,
};
use qgeo::report::CheckReport;
use qgeo::scalars::{Param, Scalar};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn all_pass(reports: &[CheckReport]) -> Result<(), String> {
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(r.to_text()),
        None => Ok(()),
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure!(t < limit, "{what} took {t:?}, limit {limit:?}");
    Ok(())
}

fn at(name: &str, v: Scalar) -> BTreeMap<Param, Scalar> {
    BTreeMap::from([(Param::new(name), v)])
}

// 1 ------------------------------------------------------------------------

fn finite_hopf_suite() -> Outcome {
    let mut timings = Vec::new();
    for name in ["C2", "C3", "C2xC2", "S3", "D4"] {
        let start = Instant::now();
        let g = ok(FinGroup::builtin(name))?;
        for h in [function_hopf(&g), group_hopf(&g)] {
            let reps = h.check_axioms();
            ensure!(reps.len() == 5, "{}: expected five axiom groups, got {}", h.name, reps.len());
            all_pass(&reps)?;
        }
        within(start, Duration::from_secs(5), name)?;
        timings.push(format!("{name} {}ms", start.elapsed().as_millis()));
    }
    Ok(timings.join(", "))
}

// 2 ------------------------------------------------------------------------

/// Independent check that `pi` carries every structure constant of `a` onto `b`.
fn relabels(a: &FinHopf, b: &FinHopf, pi: &[usize]) -> bool {
    let map = |v: &SparseVec| -> SparseVec { v.iter().map(|(&k, c)| (pi[k], c.clone())).collect() };
    let n = a.dim();
    (0..n).all(|i| {
        map(a.unit()) == *b.unit()
            && a.counit(i) == b.counit(pi[i])
            && map(a.antipode(i)) == *b.antipode(pi[i])
            && a.coproduct(i).iter().map(|(&(x, y), c)| ((pi[x], pi[y]), c.clone())).collect::<BTreeMap<_, _>>()
                == *b.coproduct(pi[i])
            && (0..n).all(|j| map(a.product(i, j)) == *b.product(pi[i], pi[j]))
    })
}

fn bicross_case(mp: &MatchedPair) -> Result<(), String> {
    let f = &mp.factorisation;
    let e = ok(bicrossproduct(mp))?;
    all_pass(&e.check_axioms())?;
    let km = function_hopf(&f.m_group());
    let kg = group_hopf(&f.g_group());
    let inc = ok(morphism_violations(&km, &e, &bicross_inclusion(mp)))?;
    ensure!(inc.is_empty(), "inclusion: {inc:?}");
    let proj = ok(morphism_violations(&e, &kg, &bicross_projection(mp)))?;
    ensure!(proj.is_empty(), "projection: {proj:?}");
    let dual = dual_findim(&e);
    let swapped = ok(bicrossproduct(&matched_pair(&f.swapped())))?;
    let pi = find_isomorphism(&dual, &swapped).ok_or("dual is not isomorphic to the swapped bicrossproduct")?;
    ensure!(relabels(&dual, &swapped, &pi), "returned relabeling does not match structure constants");
    Ok(())
}

fn bicrossproducts() -> Outcome {
    let start = Instant::now();
    let s3 = ok(FinGroup::builtin("S3"))?;
    let fs = ok(find_factorisations(&s3))?;
    ensure!(fs.len() == 8, "S3 has {} factorisations, expected 8", fs.len());
    for f in &fs {
        bicross_case(&matched_pair(f))?;
    }
    let s4 = ok(FinGroup::builtin("S4"))?;
    let f = ok(find_factorisations(&s4))?
        .into_iter()
        .find(|f| f.g.len() == 8 && f.m.len() == 3)
        .ok_or("no S4 = D4·C3 factorisation")?;
    let mp = matched_pair(&f);
    ensure!(!mp.is_trivial(), "S4 (8,3) matched pair should act nontrivially");
    bicross_case(&mp)?;
    within(start, Duration::from_secs(60), "bicrossproducts")?;
    Ok(format!("8 S3 factorisations + S4 (8,3), {}ms", start.elapsed().as_millis()))
}

// 3 ------------------------------------------------------------------------

fn fourier_s3() -> Outcome {
    let start = Instant::now();
    let g = ok(FinGroup::builtin("S3"))?;
    let n = g.order();
    let kg = group_hopf(&g);
    let delta = |a: usize| -> Vec<Scalar> {
        (0..n).map(|k| if k == a { Scalar::one() } else { Scalar::zero() }).collect()
    };
    let mut pairs = 0;
    for a in 0..n {
        for b in 0..n {
            let lhs = ok(fourier(&g, &ok(convolution(&g, &delta(a), &delta(b)))?))?;
            let rhs = kg.mul(&ok(fourier(&g, &delta(a)))?, &ok(fourier(&g, &delta(b)))?);
            let expected = SparseVec::from([(g.mul(a, b), Scalar::one())]);
            ensure!(lhs == rhs && lhs == expected, "F(δa⋆δb) ≠ F(δa)F(δb) at ({a}, {b})");
            pairs += 1;
        }
    }
    ensure!(fourier_check(&g).passed(), "fourier_check failed");
    within(start, Duration::from_secs(1), "fourier")?;
    Ok(format!("{pairs} pairs, {}ms", start.elapsed().as_millis()))
}

// 4 ------------------------------------------------------------------------

fn planck() -> Outcome {
    let start = Instant::now();
    let m = ok(planck_model())?;
    let a = m.algebra();
    let c = ok(overlap_confluence(a, 4))?;
    ensure!(c.is_confluent(), "planck1d not confluent: {:?}", c.violations);
    let e = |s: &str| ok(parse_element(a, s));
    let nf = |s: &str| -> Result<Element, String> { ok(a.normal_form(&e(s)?)) };
    let xp = ok(m.commutator(&ok(m.gen("x"))?, &ok(m.gen("p"))?))?;
    ensure!(xp == nf("i*hbar*(1 - lam)")?, "[x,p] = {}", a.show(&xp));
    all_pass(&ok(hopf_axioms(&m.spec, "hopf", 4))?)?;
    let f = ok(heisenberg_flow(&m, &ok(m.free_fall_hamiltonian())?, &ok(m.gen("x"))?))?;
    ensure!(f.quantum == nf("(1/(2*m))*(p.(1 - lam) + (1 - lam).p)")?, "quantum flow {}", a.show(&f.quantum));
    let v_inf = e("p/m")?;
    let expected = ok(classical_limit(&m.spec, &ok(a.mul(&v_inf, &e("1 - lam")?))?))?;
    ensure!(f.classical == expected, "classical flow {}", a.show(&f.classical));
    within(start, Duration::from_secs(10), "planck1d")?;
    Ok(format!("{}ms", start.elapsed().as_millis()))
}

// 5 ------------------------------------------------------------------------

type Dense = Vec<Vec<BigRational>>;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let zero = rat(0, 1);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(zero.clone(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// `R` on slots `(s, t)` of `V^{⊗3}` as an 8×8 matrix, built from the 4×4 matrix `r`
/// with rows `(ij)`, columns `(kl)`.
fn embed(r: &Dense, s: usize, t: usize) -> Dense {
    let mut out = vec![vec![rat(0, 1); 8]; 8];
    #[allow(clippy::needless_range_loop)]
    for col in 0..8 {
        let d = [col >> 2 & 1, col >> 1 & 1, col & 1];
        for a in 0..2 {
            for b in 0..2 {
                let mut e = d;
                e[s] = a;
                e[t] = b;
                let row = e[0] * 4 + e[1] * 2 + e[2];
                out[row][col] = &out[row][col] + &r[a * 2 + b][d[s] * 2 + d[t]];
            }
        }
    }
    out
}

fn oracle_residual(r: &Dense) -> Vec<(usize, usize, BigRational)> {
    let (r12, r13, r23) = (embed(r, 0, 1), embed(r, 0, 2), embed(r, 1, 2));
    let lhs = dense_mul(&dense_mul(&r12, &r13), &r23);
    let rhs = dense_mul(&dense_mul(&r23, &r13), &r12);
    let mut out = Vec::new();
    for (row, (l, r)) in lhs.iter().zip(&rhs).enumerate() {
        for col in 0..8 {
            let d = &l[col] - &r[col];
            if d != rat(0, 1) {
                out.push((row, col, d));
            }
        }
    }
    out.sort_by_key(|a| (a.1, a.0));
    out
}

/// The standard solution written out by hand: diagonal `(q, 1, 1, q)`, `q - 1/q` in row 2, column 1.
fn oracle_sl2(q: &BigRational) -> Dense {
    let (z, o) = (rat(0, 1), rat(1, 1));
    let off = q - q.recip();
    vec![
        vec![q.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), o.clone(), z.clone(), z.clone()],
        vec![z.clone(), off, o.clone(), z.clone()],
        vec![z.clone(), z.clone(), z, q.clone()],
    ]
}

fn to_dense(r: &RMatrix) -> Result<Dense, String> {
    (0..4)
        .map(|row| {
            (0..4)
                .map(|col| {
                    r.get(row / 2, row % 2, col / 2, col % 2)
                        .as_rational()
                        .ok_or_else(|| "non-rational entry".to_string())
                })
                .collect()
        })
        .collect()
}

fn engine_residual(r: &RMatrix) -> Result<Vec<(usize, usize, BigRational)>, String> {
    ybe_violations(r)
        .into_iter()
        .map(|(row, col, d)| Ok((row, col, d.as_rational().ok_or("non-rational residual")?)))
        .collect()
}

fn yang_baxter() -> Outcome {
    let start = Instant::now();
    ensure!(ybe_check(&RMatrix::identity(2)), "identity fails YBE");
    ensure!(ybe_check(&RMatrix::flip(2)), "flip fails YBE");
    ensure!(ybe_check(&RMatrix::sl2()), "symbolic sl2 fails YBE");
    for (n, d) in [(3, 2), (5, 1)] {
        let q = rat(n, d);
        let r = ok(RMatrix::sl2().substitute(&at("q", Scalar::from_ratio(n, d))))?;
        ensure!(to_dense(&r)? == oracle_sl2(&q), "entries differ from the oracle at q = {q}");
        ensure!(oracle_residual(&oracle_sl2(&q)).is_empty(), "oracle rejects sl2 at q = {q}");
        ensure!(ybe_check(&r), "engine rejects sl2 at q = {q}");
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let base = ok(RMatrix::sl2().substitute(&at("q", Scalar::from_ratio(3, 2))))?;
    let mut failed = 0;
    for _ in 0..20 {
        let (i, j, k, l) = (rng.gen_range(0..2), rng.gen_range(0..2), rng.gen_range(0..2), rng.gen_range(0..2));
        let num = loop {
            let v = rng.gen_range(-5i64..=5);
            if v != 0 {
                break v;
            }
        };
        let den = rng.gen_range(1i64..=4);
        let bad = ok(base.perturbed(i, j, k, l, &Scalar::from_ratio(num, den)))?;
        let eng = engine_residual(&bad)?;
        let ora = oracle_residual(&to_dense(&bad)?);
        ensure!(eng == ora, "engine and oracle residuals differ for perturbation at ({i}{j},{k}{l})");
        ensure!(!eng.is_empty(), "perturbation {num}/{den} at R^{i}{j}_{k}{l} still solves YBE");
        failed += 1;
    }
    within(start, Duration::from_secs(5), "yang-baxter")?;
    Ok(format!("{failed}/20 perturbations rejected, {}ms", start.elapsed().as_millis()))
}

// 6 ------------------------------------------------------------------------

fn frt_dqua() -> Outcome {
    let start = Instant::now();
    let r = RMatrix::sl2();
    let f = ok(frt_bialgebra(&r))?;
    let alg = &f.spec.algebra;
    let q = Scalar::param("q");
    let q_minus = &q - &ok(q.inv())?;
    let mut expected: BTreeMap<(&str, &str), Scalar> = BTreeMap::new();
    expected.insert(("t11", "t11"), q.clone());
    expected.insert(("t22", "t22"), q.clone());
    expected.insert(("t11", "t22"), Scalar::one());
    expected.insert(("t22", "t11"), Scalar::one());
    expected.insert(("t21", "t12"), q_minus);
    let gens = ["t11", "t12", "t21", "t22"];
    for a in gens {
        for b in gens {
            let got = f.bicharacter.eval(&ok(alg.word(&[a]))?, &ok(alg.word(&[b]))?);
            let want = expected.get(&(a, b)).cloned().unwrap_or_else(Scalar::zero);
            ensure!(got == want, "R({a}, {b}) = {got}, expected {want}");
        }
    }
    let rep = ok(dqua_check("frt_sl2", alg, &f.bicharacter, 2))?;
    ensure!(rep.passed(), "{}", rep.to_text());
    let words = alg.normal_words(2).len();

    let bad = ok(r.perturbed(1, 0, 0, 1, &Scalar::one()))?;
    ensure!(!ybe_check(&bad), "perturbed R still solves YBE");
    let bad_alg = ok(frt_presentation(&bad))?;
    let own = ok(dqua_check("frt_bad", &bad_alg, &Bicharacter::new(bad.clone()), 2))?;
    let on_true = ok(dqua_check("frt_bad", alg, &Bicharacter::new(bad), 2))?;
    ensure!(own.failed() || on_true.failed(), "YBE-violating R produced no violation");
    within(start, Duration::from_secs(30), "dqua")?;
    Ok(format!(
        "16 generator pairs, {} word pairs; bad R: {} + {} violations, {}ms",
        words * words,
        own.violations.len(),
        on_true.violations.len(),
        start.elapsed().as_millis()
    ))
}

// 7 ------------------------------------------------------------------------

fn braided_plane() -> Outcome {
    let start = Instant::now();
    let spec = ok(qplane())?;
    let alg = &spec.algebra;
    let (x, y) = (ok(alg.gen("x"))?, ok(alg.gen("y"))?);
    let q = Scalar::param("q");
    let q2 = &q * &q;
    let table = [
        ((x, x), vec![(x, x, q2.clone())]),
        ((x, y), vec![(y, x, q.clone())]),
        ((y, x), vec![(x, y, q.clone()), (y, x, &q2 - &Scalar::one())]),
        ((y, y), vec![(y, y, q2.clone())]),
    ];
    let psi = spec.braiding.as_ref().ok_or("qplane has no braiding")?;
    ensure!(psi.entries().count() == 4, "braiding has {} entries", psi.entries().count());
    for ((u, v), want) in &table {
        let mut got = psi.get(*u, *v).ok_or("missing braiding entry")?.to_vec();
        let mut want = want.clone();
        got.sort_by_key(|t| (t.0, t.1));
        want.sort_by_key(|t| (t.0, t.1));
        ensure!(got == want, "Ψ({}⊗{}) differs", alg.gen_name(*u), alg.gen_name(*v));
    }
    let reps = ok(braided_hopf_check(&spec, 2))?;
    let cop = |reps: &[CheckReport]| reps.iter().find(|r| r.check.ends_with(":coproduct-relations")).cloned();
    let good = cop(&reps).ok_or("no coproduct-relations report")?;
    ensure!(good.passed(), "{}", good.to_text());
    all_pass(&reps)?;

    let flipped = ok(spec.clone().with_braiding(Braiding::flip(2)))?;
    let bad = cop(&ok(braided_hopf_check(&flipped, 2))?).ok_or("no coproduct-relations report")?;
    ensure!(bad.failed(), "flip braiding passes");
    ensure!(
        bad.violations.iter().any(|v| v.relation.as_deref() == Some("y.x -> q*x.y")),
        "flip failure does not cite yx = qxy"
    );

    let lim = ok(spec.substitute(&at("q", Scalar::one())))?;
    ensure!(lim.braiding.as_ref().is_some_and(Braiding::is_flip), "q = 1 braiding is not the flip");
    ensure!(non_commutator_rules(&lim.algebra).is_empty(), "q = 1 relation is not commutativity");
    within(start, Duration::from_secs(5), "qplane")?;
    Ok(format!("{}ms", start.elapsed().as_millis()))
}

// 8 ------------------------------------------------------------------------

fn braided_matrices_sl2() -> Outcome {
    let start = Instant::now();
    let r = RMatrix::sl2();
    ensure!(r.is_biinvertible(), "sl2 R not biinvertible");
    let b = ok(braided_matrices(&r))?;
    ensure!(b.is_braided(), "B(R) carries no braiding");
    let reps = ok(braided_hopf_check(&b, 2))?;
    let cop = reps
        .iter()
        .find(|r| r.check.ends_with(":coproduct-relations"))
        .ok_or("no coproduct-relations report")?;
    ensure!(cop.passed(), "{}", cop.to_text());
    let lim = ok(b.substitute(&at("q", Scalar::one())))?;
    let bad = non_commutator_rules(&lim.algebra);
    ensure!(bad.is_empty(), "q = 1 rules that are not commutators: {bad:?}");
    within(start, Duration::from_secs(60), "braided matrices")?;
    Ok(format!("{} relations, {}ms", b.algebra.rules().len(), start.elapsed().as_millis()))
}

// 9 ------------------------------------------------------------------------

fn bicso3() -> Outcome {
    let start = Instant::now();
    let spec = ok(bicso3_model())?;
    let a = &spec.algebra;
    let c = ok(overlap_confluence(a, 3))?;
    ensure!(c.is_confluent(), "bicso3 not confluent at degree 3: {:?}", c.violations);
    let e12 = ok(a.commutator(&ok(a.gen_elem("e1"))?, &ok(a.gen_elem("e2"))?))?;
    let want = ok(a.normal_form(&ok(parse_element(a, "i*hbar*e3"))?))?;
    ensure!(e12 == want, "[e1,e2] = {}", a.show(&e12));
    let reps = ok(hopf_axioms(&spec, "hopf", 3))?;
    for sub in ["coproduct-relations", "counit-relations"] {
        let r = reps
            .iter()
            .find(|r| r.check.ends_with(sub))
            .ok_or_else(|| format!("no {sub} report"))?;
        ensure!(r.passed(), "{}", r.to_text());
    }
    within(start, Duration::from_secs(120), "bicso3")?;
    Ok(format!("{} critical pairs, {}ms", c.pairs_checked, start.elapsed().as_millis()))
}

// 10 -----------------------------------------------------------------------

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let mut models = Vec::new();
    for name in ["planck1d", "bicso3", "qplane", "frt_sl2", "braided_matrices_sl2"] {
        let m = ok(lookup(name))?;
        models.push((name, m.presentation().ok_or("no presentation")?.clone()));
    }
    for (name, p) in &models {
        let strat = (common::element(p, 3, 4), common::element(p, 3, 4), common::scalar(vec!["q".into()]));
        ok(runner(1000).run(&strat, |(a, b, s)| {
            let nf = |e: &Element| p.normal_form(e).map_err(|e| TestCaseError::fail(e.to_string()));
            let na = nf(&a)?;
            proptest::prop_assert_eq!(&nf(&na)?, &na);
            proptest::prop_assert_eq!(nf(&(&a + &b))?, &na + &nf(&b)?);
            let s = if p.params().contains("q") { s } else { Scalar::from_int(2) };
            proptest::prop_assert_eq!(nf(&a.scale(&s))?, na.scale(&s));
            Ok(())
        }))
        .map_err(|e| format!("{name}: {e}"))?;
    }

    let m = ok(planck_model())?;
    let a = m.algebra().clone();
    let h = ok(m.free_fall_hamiltonian())?;
    let strat = (common::element(&a, 2, 3), common::element(&a, 2, 3));
    ok(runner(100).run(&strat, |(u, v)| {
        let err = |e: qgeo::Error| TestCaseError::fail(e.to_string());
        let d = |e: &Element| heisenberg_flow(&m, &h, e).map(|f| f.quantum).map_err(err);
        let uv = a.mul(&u, &v).map_err(err)?;
        let leibniz = &a.mul(&d(&u)?, &v).map_err(err)? + &a.mul(&u, &d(&v)?).map_err(err)?;
        proptest::prop_assert_eq!(d(&uv)?, a.normal_form(&leibniz).map_err(err)?);
        Ok(())
    }))
    .map_err(|e| format!("flow derivation: {e}"))?;

    for (file, src) in MODEL_FILES {
        let doc = ok(parse_document(src))?;
        let again = ok(parse_document(&print_document(&doc)))?;
        ensure!(again == doc, "{file}: parse(print(doc)) differs");
        let from_file = ok(models_from_document(&doc))?;
        let name = file.trim_end_matches(".dsl");
        let builtin = ok(lookup(name))?;
        ensure!(
            from_file.len() == 1 && from_file[0].hopf_spec() == builtin.hopf_spec(),
            "{file} does not match built-in {name}"
        );
        ensure!(!matches!(from_file[0], Model::Algebra(_)), "{file} parsed as a bare algebra");
    }
    within(start, Duration::from_secs(300), "property suites")?;
    Ok(format!(
        "{} models × 1000, 100 flow pairs, {} files, {}ms",
        models.len(),
        MODEL_FILES.len(),
        start.elapsed().as_millis()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("finite Hopf suite", finite_hopf_suite),
        ("bicrossproduct", bicrossproducts),
        ("Fourier on S3", fourier_s3),
        ("Planck model", planck),
        ("Yang-Baxter", yang_baxter),
        ("FRT dual quasitriangularity", frt_dqua),
        ("braided plane", braided_plane),
        ("braided matrices", braided_matrices_sl2),
        ("bicso3", bicso3),
        ("property suites", property_suites),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
