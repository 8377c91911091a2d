//! The radical `rad(P) = {w : P(v + λw) = P(v) for all v, λ}`, the
//! dimension condition `dim L_P + dim rad(P) = n`, and the induced function
//! on `F^n / rad(P)`.
//!
//! `rad(P)` is always a subspace: invariance under `w` and `w'` gives
//! invariance under `w + w'` by composing the two translations, and
//! invariance under `λw` is part of the definition. So whenever every basis
//! vector of a candidate subspace is a member, the whole subspace is.

use alloc::format;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::gradspace::{lp_sampled, lp_symbolic, symbolic_applicable, GradBasis};
use crate::linalg::{vec_add, vec_scale, QuotientContext, Side, Subspace, Tuples};
use crate::poly::{MultiPoly, ZeroVerdict};

/// Points used to spot-check `P_rad ∘ π = P`.
const SPOT_CHECKS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RadicalOptions {
    /// Cap on enumerated points or subspace elements.
    pub cap: u128,
    pub seed: u64,
}

impl Default for RadicalOptions {
    fn default() -> Self {
        Self { cap: crate::DEFAULT_EVAL_CAP, seed: crate::DEFAULT_SEED }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalMethod {
    /// Characteristic zero: `rad(P) = Ann(L_P)`.
    Char0Annihilator,
    /// Finite field with `deg P < |F|`: members of `Ann(L_P)`.
    AnnihilatorFilter,
    /// `deg P >= |F|`: every vector of `F^n` tested.
    Exhaustive,
}

impl core::fmt::Display for RadicalMethod {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            RadicalMethod::Char0Annihilator => "char0-annihilator",
            RadicalMethod::AnnihilatorFilter => "annihilator+filter",
            RadicalMethod::Exhaustive => "exhaustive",
        })
    }
}

#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub radical: Subspace,
    pub lp: GradBasis,
    /// `Ann(L_P)`, a primal subspace.
    pub annihilator: Subspace,
    pub dim_condition_holds: bool,
    pub method: RadicalMethod,
    pub quotient: QuotientContext,
    pub p_rad: MultiPoly,
    /// False when only part of `Ann(L_P)` could be certified; `radical` is
    /// then a verified subspace of the true radical.
    pub conclusive: bool,
}

/// `P(X + t v) - P(X)` in the variables `X_1..X_n, t`.
pub fn translation_difference(p: &MultiPoly, v: &[Scalar]) -> Result<MultiPoly> {
    let n = p.nvars();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    let field = p.field();
    let t = MultiPoly::var(field, n + 1, n);
    let images: Vec<MultiPoly> = (0..n)
        .map(|i| &MultiPoly::var(field, n + 1, i) + &t.scale(&v[i]))
        .collect();
    Ok(&p.substitute(&images)? - &p.embed(n + 1, 0)?)
}

/// Whether `v ∈ rad(P)`, decided as a statement about functions.
pub fn rad_member(p: &MultiPoly, v: &[Scalar]) -> Result<bool> {
    rad_member_with(p, v, crate::DEFAULT_EVAL_CAP)
}

pub fn rad_member_with(p: &MultiPoly, v: &[Scalar], cap: u128) -> Result<bool> {
    if v.iter().any(|x| x.field() != p.field()) {
        return Err(Error::FieldMismatch);
    }
    match translation_difference(p, v)?.is_zero_function(cap).verdict {
        ZeroVerdict::Zero => Ok(true),
        ZeroVerdict::Nonzero => Ok(false),
        ZeroVerdict::Undecidable => Err(Error::Undecidable("zero-function test for P(X + t v) - P(X)".into())),
    }
}

pub fn rad_compute(p: &MultiPoly) -> Result<RadicalReport> {
    rad_compute_with(p, RadicalOptions::default())
}

pub fn rad_compute_with(p: &MultiPoly, opts: RadicalOptions) -> Result<RadicalReport> {
    let field = p.field();
    let n = p.nvars();
    let (lp, radical, method, conclusive) = match field.order() {
        None => {
            let lp = lp_symbolic(p)?;
            let rad = lp.subspace.annihilator();
            (lp, rad, RadicalMethod::Char0Annihilator, true)
        }
        Some(_) if symbolic_applicable(p) => {
            let lp = lp_symbolic(p)?;
            let ann = lp.subspace.annihilator();
            let (rad, conclusive) = filter_annihilator(p, &ann, opts.cap)?;
            (lp, rad, RadicalMethod::AnnihilatorFilter, conclusive)
        }
        Some(q) => {
            let needed = u128::from(q).checked_pow(n as u32).unwrap_or(u128::MAX);
            if needed > opts.cap {
                return Err(Error::Undecidable(format!(
                    "deg(P) >= |F| and exhaustive search needs {needed} candidates (cap {})",
                    opts.cap
                )));
            }
            let lp = lp_sampled(p, opts.cap)?;
            let elems = field.elements()?;
            let mut members = Vec::new();
            for v in Tuples::new(&elems, n) {
                if rad_member_with(p, &v, opts.cap)? {
                    members.push(v);
                }
            }
            (lp, Subspace::span(field, n, &members, Side::Primal)?, RadicalMethod::Exhaustive, true)
        }
    };
    let annihilator = lp.subspace.annihilator();
    let dim_condition_holds = lp.dim() + radical.dim() == n;
    let quotient = QuotientContext::new(&radical)?;
    let p_rad = induced_p_rad_with(p, &quotient, opts.seed)?;
    Ok(RadicalReport { radical, lp, annihilator, dim_condition_holds, method, quotient, p_rad, conclusive })
}

/// Members of `ann` (which contains `rad(P)` when `deg P < |F|`). All
/// `q^dim` elements are tested when that fits in `cap`; otherwise the basis
/// is tested, which settles the question only if every basis vector passes.
fn filter_annihilator(p: &MultiPoly, ann: &Subspace, cap: u128) -> Result<(Subspace, bool)> {
    let field = p.field();
    let n = p.nvars();
    match ann.elements(cap) {
        Ok(all) => {
            let mut members = Vec::new();
            for v in all {
                if rad_member_with(p, &v, cap)? {
                    members.push(v);
                }
            }
            Ok((Subspace::span(field, n, &members, Side::Primal)?, true))
        }
        Err(Error::CapExceeded { .. }) => {
            let basis = ann.basis_vectors();
            let mut members = Vec::new();
            for b in &basis {
                if rad_member_with(p, b, cap)? {
                    members.push(b.clone());
                }
            }
            let complete = members.len() == basis.len();
            Ok((Subspace::span(field, n, &members, Side::Primal)?, complete))
        }
        Err(e) => Err(e),
    }
}

/// Tests `P(a + λx) = P(a + x)` for every `a ∈ F^n` and every `λ ≠ 0`.
/// When it holds, `x ∈ rad(P)` (which needs `|F| > 2`).
pub fn strange_condition_implies_radical(p: &MultiPoly, x: &[Scalar]) -> Result<bool> {
    strange_condition_with(p, x, crate::DEFAULT_EVAL_CAP)
}

pub fn strange_condition_with(p: &MultiPoly, x: &[Scalar], cap: u128) -> Result<bool> {
    let field = p.field();
    let n = p.nvars();
    let q = field.order().ok_or(Error::InfiniteEnumeration)?;
    if q <= 2 {
        return Err(Error::HypothesisViolated(format!("the criterion needs |F| > 2, got |F| = {q}")));
    }
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.len() });
    }
    let needed = u128::from(q).checked_pow(n as u32).map(|c| c * u128::from(q - 1)).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let elems = field.elements()?;
    for a in Tuples::new(&elems, n) {
        let base = p.evaluate(&vec_add(&a, x))?;
        for l in elems.iter().skip(1) {
            if p.evaluate(&vec_add(&a, &vec_scale(l, x)))? != base {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `P_rad = P ∘ ι` on quotient coordinates, checked against
/// `P_rad(π x) = P(x)` at seeded random points.
pub fn induced_p_rad(p: &MultiPoly, quotient: &QuotientContext) -> Result<MultiPoly> {
    induced_p_rad_with(p, quotient, crate::DEFAULT_SEED)
}

pub fn induced_p_rad_with(p: &MultiPoly, quotient: &QuotientContext, seed: u64) -> Result<MultiPoly> {
    let field = p.field();
    let n = p.nvars();
    if quotient.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: quotient.ambient_dim() });
    }
    let iota = quotient.iota();
    let d = quotient.dim();
    let images: Vec<MultiPoly> = if d == 0 {
        (0..n).map(|_| MultiPoly::zero(field, 0)).collect()
    } else {
        (0..n).map(|i| MultiPoly::linear_form(field, iota.row(i))).collect()
    };
    let p_rad = p.substitute(&images)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SPOT_CHECKS {
        let x = field.random_vector(n, &mut rng);
        let y = quotient.project(&x)?;
        if p_rad.eval_unchecked(&y) != p.eval_unchecked(&x) {
            return Err(Error::InternalConsistency(
                "P is not constant on a coset of the supplied radical".into(),
            ));
        }
    }
    Ok(p_rad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use alloc::vec;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::galois(q).unwrap()
    }

    fn p(text: &str, n: usize, f: &FieldSpec) -> MultiPoly {
        MultiPoly::parse(text, n, f).unwrap()
    }

    fn v(f: &FieldSpec, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn membership_examples() {
        let f = gf(5);
        assert!(!rad_member(&p("x1*x2", 2, &f), &v(&f, &[0, 1])).unwrap());
        assert!(rad_member(&p("x1*x2", 2, &f), &v(&f, &[0, 0])).unwrap());
        let g3 = gf(3);
        assert!(!rad_member(&p("x1^3", 1, &g3), &v(&g3, &[1])).unwrap());
        let q = FieldSpec::rationals();
        assert!(rad_member(&p("(x1 - x2)^3 + x3", 3, &q), &v(&q, &[1, 1, 0])).unwrap());
    }

    #[test]
    fn compute_examples() {
        let f = gf(5);
        let r = rad_compute(&p("x1*x2", 2, &f)).unwrap();
        assert_eq!((r.radical.dim(), r.dim_condition_holds), (0, true));
        assert_eq!(r.method, RadicalMethod::AnnihilatorFilter);

        let g3 = gf(3);
        let r = rad_compute(&p("x1^3", 1, &g3)).unwrap();
        assert_eq!((r.radical.dim(), r.lp.dim(), r.dim_condition_holds), (0, 0, false));
        assert_eq!(r.method, RadicalMethod::Exhaustive);

        let q = FieldSpec::rationals();
        let r = rad_compute(&p("(x1 + 2*x2)^2 - x3*(x1 + 2*x2)", 3, &q)).unwrap();
        let half = q.from_ratio(&(-1).into(), &2.into()).unwrap();
        assert_eq!(r.radical.basis_vectors(), vec![vec![q.one(), half, q.zero()]]);
        assert!(r.dim_condition_holds);
        assert_eq!(r.p_rad.nvars(), 2);
    }

    #[test]
    fn degenerate_polynomials() {
        let f = gf(7);
        let r = rad_compute(&MultiPoly::zero(&f, 3)).unwrap();
        assert_eq!(r.radical, Subspace::full(&f, 3, Side::Primal));
        assert_eq!(r.quotient.dim(), 0);
        assert!(r.p_rad.is_zero());
        let r = rad_compute(&p("4", 2, &f)).unwrap();
        assert_eq!(r.p_rad.nvars(), 0);
        assert_eq!(r.p_rad.coeff(&[]), f.from_i64(4));
    }

    #[test]
    fn p_rad_without_radical_is_renaming() {
        let f = gf(5);
        let poly = p("x1*x2 + x2^2", 2, &f);
        let q = QuotientContext::new(&Subspace::zero(&f, 2, Side::Primal)).unwrap();
        assert_eq!(induced_p_rad(&poly, &q).unwrap(), poly);
    }

    #[test]
    fn wrong_radical_is_detected() {
        let f = gf(5);
        let poly = p("x1*x2", 2, &f);
        let w = Subspace::span(&f, 2, &[v(&f, &[1, 0])], Side::Primal).unwrap();
        let q = QuotientContext::new(&w).unwrap();
        assert!(matches!(induced_p_rad(&poly, &q), Err(Error::InternalConsistency(_))));
    }

    #[test]
    fn strange_condition() {
        let g4 = gf(4);
        let poly = p("x1*x2", 2, &g4);
        assert!(!strange_condition_implies_radical(&poly, &[g4.one(), g4.zero()]).unwrap());
        assert!(strange_condition_implies_radical(&poly, &g4.zeros(2)).unwrap());
        let g2 = gf(2);
        assert!(matches!(
            strange_condition_implies_radical(&p("x1", 1, &g2), &[g2.one()]),
            Err(Error::HypothesisViolated(_))
        ));
    }
}
