//! The twelve acceptance criteria, runnable at full size (test target) or
//! reduced size (`selftest`).

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use lpreserve_core::cullis::{CullisContext, NormalForm, Parity};
use lpreserve_core::gradspace::{lp_auto, lp_symbolic, WitnessOptions};
use lpreserve_core::linalg::{Side, Subspace, Tuples};
use lpreserve_core::preserver::{
    check_pair, extract_t_rad_with, lift_check, preserves, CheckMode, ExtractOptions, PairMethod, PairVerdict, VectorMap,
};
use lpreserve_core::radical::{rad_compute, rad_member, strange_condition_implies_radical, RadicalMethod};
use lpreserve_core::{Error, FieldSpec, Matrix, MultiPoly, Refusal, Scalar, DEFAULT_SEED};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{instances, oracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Full,
    /// Fewer random instances; the fixed instances are unchanged.
    Reduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    None,
    /// Every Cullis selection sign forced to `+1`.
    Sign,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Outcome {
    pub fn within_budget(&self) -> bool {
        self.elapsed < self.budget
    }

    /// One report line without timing, so that it is reproducible.
    pub fn line(&self) -> String {
        format!("criterion {:>2} {}: {} ({})", self.id, if self.passed { "PASS" } else { "FAIL" }, self.title, self.detail)
    }
}

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Converts library errors into failure messages inside a criterion.
trait OrFail<T> {
    fn or_fail(self, what: &str) -> std::result::Result<T, String>;
}

impl<T> OrFail<T> for lpreserve_core::Result<T> {
    fn or_fail(self, what: &str) -> std::result::Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

struct Env {
    scale: Scale,
    fault: Fault,
}

impl Env {
    fn count(&self, full: usize) -> usize {
        match self.scale {
            Scale::Full => full,
            Scale::Reduced => (full / 10).max(3),
        }
    }

    fn ctx(&self, n: usize, k: usize, f: &FieldSpec) -> std::result::Result<CullisContext, String> {
        Ok(CullisContext::new(n, k, f).or_fail("context")?.with_sign_fault(self.fault == Fault::Sign))
    }

    fn rng(&self, id: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(DEFAULT_SEED.wrapping_add(id as u64))
    }
}

fn gf(q: u64) -> FieldSpec {
    FieldSpec::galois(q).expect("supported order")
}

fn random_matrix(f: &FieldSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::new(f, rows, cols, f.random_vector(rows * cols, rng)).expect("shape")
}

fn with_column(x: &Matrix, j: usize, col: &[Scalar]) -> Matrix {
    let mut y = x.clone();
    for (r, v) in col.iter().enumerate() {
        y.set(r, j, v.clone());
    }
    y
}

/// Random polynomial with total degree at most `deg`.
fn random_poly(f: &FieldSpec, nvars: usize, deg: u32, terms: usize, rng: &mut ChaCha8Rng) -> MultiPoly {
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut e = vec![0u32; nvars];
        let d = rng.gen_range(0..=deg);
        for _ in 0..d {
            e[rng.gen_range(0..nvars)] += 1;
        }
        out.push((e, f.random(rng)));
    }
    MultiPoly::from_terms(f, nvars, out).expect("well-formed")
}

/// `Q(M x)` for a random `Q` in `r <= n` variables, so that `ker M` lies in
/// the radical.
fn random_composite(f: &FieldSpec, n: usize, deg: u32, rng: &mut ChaCha8Rng) -> (MultiPoly, Matrix) {
    let r = rng.gen_range(1..=n);
    let q = random_poly(f, r, deg, 4, rng);
    let m = Matrix::new(f, r, n, (0..r * n).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect()).expect("shape");
    let forms: Vec<MultiPoly> = (0..r).map(|i| MultiPoly::linear_form(f, m.row(i))).collect();
    (q.substitute(&forms).expect("arity"), m)
}

fn c1_square(env: &Env) -> Check {
    let mut rng = env.rng(1);
    let mut checked = 0;
    for f in [gf(7), FieldSpec::rationals()] {
        for n in 2..=5 {
            let ctx = env.ctx(n, n, &f)?;
            for _ in 0..env.count(100) {
                let x = random_matrix(&f, n, n, &mut rng);
                let d = ctx.det(&x).or_fail("det")?;
                ensure!(d == oracle::leibniz_det(&x), "det_{{{n},{n}}} differs from the Leibniz determinant over {f} at {x}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} matrices over GF(7) and QQ"))
}

fn c2_columns(env: &Env) -> Check {
    let f = gf(7);
    let ctx = env.ctx(5, 3, &f)?;
    let mut rng = env.rng(2);
    let det = |x: &Matrix| ctx.det(x).or_fail("det");
    let reps = env.count(200);
    for _ in 0..reps {
        let x = random_matrix(&f, 5, 3, &mut rng);
        let dx = det(&x)?;
        ensure!(dx == oracle::cullis_det(&x), "definition oracle disagrees at {x}");
        let j = rng.gen_range(0..3);
        let (u, v) = (f.random_vector(5, &mut rng), f.random_vector(5, &mut rng));
        let (a, b) = (f.random(&mut rng), f.random(&mut rng));
        let mixed: Vec<Scalar> = u.iter().zip(&v).map(|(s, t)| &(&a * s) + &(&b * t)).collect();
        let lhs = det(&with_column(&x, j, &mixed))?;
        let rhs = &(&a * &det(&with_column(&x, j, &u))?) + &(&b * &det(&with_column(&x, j, &v))?);
        ensure!(lhs == rhs, "multilinearity fails in column {}", j + 1);
        let (c0, c1) = (rng.gen_range(0..3), rng.gen_range(0..2));
        let c1 = if c1 >= c0 { c1 + 1 } else { c1 };
        let swapped = with_column(&with_column(&x, c0, &x.column(c1)), c1, &x.column(c0));
        ensure!(det(&swapped)? == -dx.clone(), "swapping columns {} and {} does not negate", c0 + 1, c1 + 1);
        ensure!(det(&with_column(&x, c1, &x.column(c0)))?.is_zero(), "duplicate columns give a nonzero value");
        let s = f.random(&mut rng);
        let combined: Vec<Scalar> = x.column(c1).iter().zip(x.column(c0)).map(|(t, o)| t + &(&s * &o)).collect();
        ensure!(det(&with_column(&x, c1, &combined))? == dx, "adding a multiple of a column changes the value");
        for col in 1..=3 {
            ensure!(ctx.laplace(&x, col).or_fail("laplace")? == dx, "Laplace expansion along column {col} disagrees");
        }
    }
    Ok(format!("{reps} random 5x3 matrices over GF(7), five properties each"))
}

fn c3_normal_forms(env: &Env) -> Check {
    let f = gf(7);
    let mut rng = env.rng(3);
    let reps = env.count(50);
    for (n, k, form) in [(6, 4, NormalForm::Even), (5, 3, NormalForm::Even), (4, 3, NormalForm::Odd)] {
        let ctx = env.ctx(n, k, &f)?;
        for _ in 0..reps {
            let x = f.random_vector(n, &mut rng);
            let d = ctx.det(&ctx.normal_form(form, &x).or_fail("normal form")?).or_fail("det")?;
            let expected = match form {
                NormalForm::Even => x[0].clone(),
                NormalForm::Odd if k % 2 == 1 => &x[0] - &x[1],
                NormalForm::Odd => &x[1] - &x[0],
            };
            ensure!(d == expected, "{n}x{k} normal form gives {d}, expected {expected}");
        }
    }
    Ok(format!("{reps} vectors for each of 6x4, 5x3 and 4x3"))
}

fn c4_shifts(env: &Env) -> Check {
    let g3 = gf(3);
    let ctx = env.ctx(3, 1, &g3)?;
    let elems = g3.elements().or_fail("elements")?;
    let mut count = 0;
    for entries in Tuples::new(&elems, 3) {
        let x = Matrix::new(&g3, 3, 1, entries).or_fail("matrix")?;
        for i in 1..=3 {
            let s = ctx.shift_map(Parity::Even, i, 1).or_fail("shift")?;
            let y = ctx.unflatten(&s.apply(&ctx.flatten(&x).or_fail("flatten")?).or_fail("apply")?).or_fail("unflatten")?;
            ensure!(ctx.det(&y).or_fail("det")? == ctx.det(&x).or_fail("det")?, "S_{{{i},1}} changes det_{{3,1}} at {x}");
            count += 1;
        }
    }
    let f = gf(7);
    let mut rng = env.rng(4);
    let reps = env.count(100);
    for (n, k) in [(5, 3), (4, 3)] {
        let ctx = env.ctx(n, k, &f)?;
        let parity = ctx.parity();
        let maps: Vec<(usize, usize, Matrix)> = (1..=n)
            .flat_map(|i| (1..=k).map(move |j| (i, j)))
            .map(|(i, j)| ctx.shift_map(parity, i, j).map(|m| (i, j, m)))
            .collect::<lpreserve_core::Result<_>>()
            .or_fail("shift")?;
        for (_, _, m) in &maps {
            ensure!(m.is_invertible(), "a {parity} shift map is singular");
        }
        for _ in 0..reps {
            let x = random_matrix(&f, n, k, &mut rng);
            let dx = ctx.det(&x).or_fail("det")?;
            let flat = ctx.flatten(&x).or_fail("flatten")?;
            for (i, j, m) in &maps {
                let y = ctx.unflatten(&m.apply(&flat).or_fail("apply")?).or_fail("unflatten")?;
                ensure!(ctx.det(&y).or_fail("det")? == dx, "S_{{{i},{j}}} changes det_{{{n},{k}}}");
                count += 1;
            }
        }
    }
    Ok(format!("{count} (matrix, shift) pairs"))
}

fn c5_lp(env: &Env) -> Check {
    let f = gf(5);
    let even = env.ctx(5, 3, &f)?;
    let lp_even = lp_symbolic(&even.as_poly()).or_fail("L_P")?;
    ensure!(lp_even.dim() == 15, "dim L for 5x3 is {}, expected 15", lp_even.dim());
    ensure!(lp_even.subspace == Subspace::full(&f, 15, Side::Dual), "L for 5x3 is not the full dual");
    let odd = env.ctx(4, 3, &f)?;
    let lp_odd = lp_symbolic(&odd.as_poly()).or_fail("L_P")?;
    let mut diffs = Vec::new();
    for i in 1..4 {
        for j in 1..=3 {
            let mut v = f.zeros(12);
            v[odd.index(i, j)] = f.one();
            v[odd.index(i + 1, j)] = -f.one();
            diffs.push(v);
        }
    }
    let expected = Subspace::span(&f, 12, &diffs, Side::Dual).or_fail("span")?;
    ensure!(lp_odd.dim() == 9, "dim L for 4x3 is {}, expected 9", lp_odd.dim());
    ensure!(lp_odd.subspace == expected, "L for 4x3 differs from span{{x_ij - x_i+1,j}}");
    ensure!(lp_odd.verify(&odd.as_poly()).or_fail("verify")?, "gradient witnesses do not reproduce L");
    Ok("dim 15 (5x3), dim 9 = span{x_ij - x_(i+1)j} (4x3)".into())
}

fn c6_radicals(env: &Env) -> Check {
    let f = gf(5);
    let even = env.ctx(5, 3, &f)?;
    let r_even = rad_compute(&even.as_poly()).or_fail("rad")?;
    ensure!(r_even.radical == Subspace::zero(&f, 15, Side::Primal), "rad for 5x3 is not {{0}}");
    ensure!(r_even.dim_condition_holds, "dimension condition fails for 5x3");
    let odd = env.ctx(4, 3, &f)?;
    let r_odd = rad_compute(&odd.as_poly()).or_fail("rad")?;
    ensure!(r_odd.method == RadicalMethod::AnnihilatorFilter, "4x3 radical used {}", r_odd.method);
    ensure!(r_odd.conclusive, "4x3 radical inconclusive");
    ensure!(r_odd.radical == odd.wnk().subspace, "rad for 4x3 differs from W_{{4,3}}");
    ensure!(r_odd.radical.dim() == 3, "rad dim for 4x3 is {}", r_odd.radical.dim());
    ensure!(r_odd.dim_condition_holds, "dimension condition fails for 4x3");
    Ok("rad = {0} (5x3), rad = W_{4,3} of dim 3 (4x3), dimension condition holds in both".into())
}

fn c7_oracle(env: &Env) -> Check {
    let mut instances: Vec<MultiPoly> = Vec::new();
    let g3 = gf(3);
    for nvars in 1..=2usize {
        let monos: Vec<Vec<u32>> = match nvars {
            1 => (0..=2).map(|a| vec![a]).collect(),
            _ => (0..=2u32).flat_map(|a| (0..=2 - a).map(move |b| vec![a, b])).collect(),
        };
        let elems = g3.elements().or_fail("elements")?;
        let all: Vec<Vec<Scalar>> = Tuples::new(&elems, monos.len()).collect();
        let step = if env.scale == Scale::Full { 1 } else { 7 };
        for coeffs in all.into_iter().step_by(step) {
            let terms = monos.iter().cloned().zip(coeffs);
            instances.push(MultiPoly::from_terms(&g3, nvars, terms).or_fail("poly")?);
        }
    }
    let exhaustive = instances.len();
    let g5 = gf(5);
    let mut rng = env.rng(7);
    for _ in 0..env.count(500) {
        let nvars = rng.gen_range(1..=2);
        instances.push(random_poly(&g5, nvars, 2, rng.gen_range(1..=5), &mut rng));
    }
    for p in &instances {
        let report = rad_compute(p).or_fail("rad")?;
        let brute = oracle::brute_radical(p).or_fail("brute radical")?;
        ensure!(report.radical == brute, "rad_compute disagrees with the definition for {p} over {}", p.field());
        let lp = oracle::brute_lp(p).or_fail("brute L_P")?;
        ensure!(report.lp.subspace == lp, "L_P disagrees with interpolated gradients for {p}");
        ensure!(lp.annihilator().contains_subspace(&brute).or_fail("contains")?, "rad not inside Ann(L_P) for {p}");
        ensure!(lp.dim() + brute.dim() <= p.nvars(), "dim L_P + dim rad > n for {p}");
    }
    Ok(format!("{} instances ({exhaustive} exhaustive over GF(3))", instances.len()))
}

fn c8_char0(env: &Env) -> Check {
    let q = FieldSpec::rationals();
    let mut rng = env.rng(8);
    let reps = env.count(100);
    let mut nontrivial = 0;
    for _ in 0..reps {
        let n = rng.gen_range(1..=3);
        let (p, m) = random_composite(&q, n, 4, &mut rng);
        let report = rad_compute(&p).or_fail("rad")?;
        ensure!(report.method == RadicalMethod::Char0Annihilator, "unexpected method {}", report.method);
        ensure!(report.radical == report.annihilator, "rad differs from Ann(L_P) for {p}");
        ensure!(report.dim_condition_holds, "dimension condition fails for {p}");
        for v in report.radical.basis_vectors() {
            ensure!(rad_member(&p, &v).or_fail("rad_member")?, "basis vector outside rad for {p}");
        }
        for a in (0..3).map(|_| q.random_vector(n, &mut rng)) {
            let g = oracle::interpolated_gradient(&p, &a).or_fail("gradient")?;
            ensure!(report.lp.subspace.contains(&g).or_fail("contains")?, "a gradient of {p} lies outside L_P");
        }
        let kernel = Subspace::from_matrix_rows(&m, Side::Dual).annihilator();
        ensure!(report.radical.contains_subspace(&kernel).or_fail("contains")?, "ker M not inside rad for {p}");
        if report.radical.dim() > 0 {
            nontrivial += 1;
        }
    }
    Ok(format!("{reps} polynomials over QQ, {nontrivial} with nonzero radical"))
}

fn c9_counterexample(_env: &Env) -> Check {
    let (p, phi, psi) = instances::inhomogeneous_pair();
    let out = check_pair(&p, &phi, &psi, CheckMode::Exhaustive).or_fail("check_pair")?;
    ensure!(out.verdict == PairVerdict::Holds, "pair condition fails: {:?}", out.verdict);
    ensure!(out.evaluated == 3125, "evaluated {} triples, expected 5^5", out.evaluated);
    ensure!(!preserves(&p, &psi, CheckMode::Exhaustive).or_fail("preserves")?, "P o psi = P unexpectedly");
    match extract_t_rad_with(&p, &phi, &psi, ExtractOptions::default()) {
        Err(Error::Refused(Refusal::NotHomogeneous)) => {}
        other => return Err(format!("extraction did not refuse on homogeneity: {:?}", other.map(|r| r.t_rad))),
    }
    Ok("pair holds on all 3125 triples, P o psi != P, extraction refused (not homogeneous)".into())
}

fn c10_end_to_end(env: &Env) -> Check {
    let f = gf(5);
    let ctx = env.ctx(4, 3, &f)?;
    ensure!(
        ctx.ab_sign_condition(&Matrix::identity(&f, 4), &Matrix::identity(&f, 3)).or_fail("sign condition")?,
        "(I, I) fails the sign condition"
    );
    let inst = instances::cullis_odd_pair(ctx).or_fail("instance")?;
    ensure!(inst.phi != inst.psi, "phi and psi coincide");
    let pair = check_pair(&inst.p, &inst.phi, &inst.psi, CheckMode::Symbolic).or_fail("check_pair")?;
    ensure!(
        pair.verdict == PairVerdict::Holds && pair.method == PairMethod::SymbolicIdentity,
        "pair check gave {:?} via {:?}",
        pair.verdict,
        pair.method
    );
    ensure!(preserves(&inst.p, &inst.phi, CheckMode::Symbolic).or_fail("preserves")?, "det o phi != det");
    let first = extract_t_rad_with(&inst.p, &inst.phi, &inst.psi, ExtractOptions::default()).or_fail("extraction")?;
    for (name, ok) in first.verified.items() {
        ensure!(ok, "verification `{name}` failed");
    }
    let other = ExtractOptions { witness: WitnessOptions { seed: DEFAULT_SEED ^ 0xA5A5, structured: false }, ..Default::default() };
    let second = extract_t_rad_with(&inst.p, &inst.phi, &inst.psi, other).or_fail("second extraction")?;
    ensure!(second.verified.all(), "second extraction failed verification");
    ensure!(first.t_rad == second.t_rad, "two witness choices give different T_rad");
    ensure!(
        lift_check(&inst.p, &inst.phi, &inst.psi, &first.t_rad, CheckMode::Symbolic).or_fail("lift")?,
        "lifted identity fails"
    );
    Ok(format!("T_rad is a verified invertible {0}x{0} map, identical for two witness choices", first.t_rad.rows()))
}

fn c11_frobenius(_env: &Env) -> Check {
    let g3 = gf(3);
    let p = MultiPoly::parse("x1^3", 1, &g3).or_fail("parse")?;
    let lp = lp_auto(&p, lpreserve_core::DEFAULT_EVAL_CAP).or_fail("L_P")?;
    let report = rad_compute(&p).or_fail("rad")?;
    ensure!(lp.dim() == 0 && report.lp.dim() == 0, "dim L_P = {}", lp.dim());
    ensure!(report.radical.dim() == 0, "rad dim = {}", report.radical.dim());
    ensure!(!report.dim_condition_holds, "dimension condition reported true");
    let id = VectorMap::identity(&g3, 1);
    ensure!(check_pair(&p, &id, &id, CheckMode::Exhaustive).or_fail("check_pair")?.holds(), "identity pair fails");
    match extract_t_rad_with(&p, &id, &id, ExtractOptions::default()) {
        Err(Error::Refused(Refusal::DegreeNotBelowFieldOrder { degree: 3, order: 3 })) => {}
        other => return Err(format!("extraction did not refuse on deg >= |F|: {:?}", other.map(|r| r.t_rad))),
    }
    Ok("dim L_P = 0, rad dim = 0, condition false, identity pair holds, extraction refused".into())
}

fn c12_strange(env: &Env) -> Check {
    let mut rng = env.rng(12);
    let mut hits = 0;
    let mut tested = 0;
    for f in [gf(4), gf(5)] {
        for _ in 0..env.count(40) {
            let (p, _) = random_composite(&f, 2, 3, &mut rng);
            let brute = oracle::brute_radical(&p).or_fail("brute radical")?;
            for v in Tuples::new(&f.elements().or_fail("elements")?, 2) {
                tested += 1;
                if strange_condition_implies_radical(&p, &v).or_fail("hypothesis")? {
                    ensure!(rad_member(&p, &v).or_fail("rad_member")?, "hypothesis holds but v outside rad for {p}");
                    ensure!(brute.contains(&v).or_fail("contains")?, "hypothesis holds but the definition rejects v");
                    hits += usize::from(v.iter().any(|c| !c.is_zero()));
                }
            }
        }
    }
    ensure!(hits > 0, "hypothesis never held for a nonzero v");
    let g2 = gf(2);
    let p = MultiPoly::parse("x1", 1, &g2).or_fail("parse")?;
    let one = [g2.one()];
    ensure!(
        matches!(strange_condition_implies_radical(&p, &one), Err(Error::HypothesisViolated(_))),
        "GF(2) was not rejected"
    );
    // Over GF(2) the only nonzero λ is 1, so the hypothesis holds for P = x1
    // and v = 1 although v is not in the radical.
    ensure!(!rad_member(&p, &one).or_fail("rad_member")?, "1 in rad(x1) over GF(2)");
    Ok(format!("{tested} (P, v) pairs, {hits} nonzero hits, GF(2) rejected"))
}

type Criterion = (usize, &'static str, u64, fn(&Env) -> Check);

const CRITERIA: [Criterion; 12] = [
    (1, "det_{n,n} equals the classical determinant", 1, c1_square),
    (2, "column properties and Laplace expansion", 2, c2_columns),
    (3, "normal forms", 1, c3_normal_forms),
    (4, "shift maps preserve det_{n,k}", 5, c4_shifts),
    (5, "L_P of det_{n,k}", 10, c5_lp),
    (6, "radicals of det_{n,k}", 10, c6_radicals),
    (7, "radical against the definitional oracle", 60, c7_oracle),
    (8, "characteristic zero: rad = Ann(L_P)", 30, c8_char0),
    (9, "inhomogeneous counterexample", 1, c9_counterexample),
    (10, "end-to-end extraction on det_{4,3}", 60, c10_end_to_end),
    (11, "Frobenius power x^3 over GF(3)", 1, c11_frobenius),
    (12, "translation criterion and the |F| = 2 exclusion", 10, c12_strange),
];

pub fn run(scale: Scale, fault: Fault) -> Vec<Outcome> {
    let env = Env { scale, fault };
    CRITERIA
        .iter()
        .map(|&(id, title, secs, check)| {
            let start = Instant::now();
            let result = catch_unwind(AssertUnwindSafe(|| check(&env)))
                .unwrap_or_else(|_| Err("panicked".to_string()));
            let elapsed = start.elapsed();
            let (passed, detail) = match result {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Outcome { id, title, passed, detail, elapsed, budget: Duration::from_secs(secs) }
        })
        .collect()
}
