//! The space `L_P ⊂ (F^n)*` spanned by the gradient functionals
//! `l_{P,a}: v ↦ ∂P/∂v(a)`, `a ∈ F^n`.
//!
//! Two independent algorithms are provided.
//!
//! [`lp_symbolic`] writes the gradient field as
//! `grad P(a) = Σ_m m(a) c_m`, where `m` runs over the monomials occurring in
//! some formal partial and `c_m` collects the coefficients of `m` in
//! `∂_1 P, ..., ∂_n P`. The span of the `c_m` contains every gradient. For
//! the converse, take a functional `w` on `(F^n)*` that kills every gradient:
//! `Σ_m m(a) w(c_m) = 0` for all `a`. When every monomial has per-variable
//! degree below |F| (true if `deg P < |F|`, or over an infinite field),
//! distinct monomials are linearly independent as functions, so `w(c_m) = 0`
//! for every `m`. Hence the span of the `c_m` equals `L_P`.
//!
//! [`lp_sampled`] enumerates `grad P(a)` over all of `F^n` and needs no
//! degree hypothesis.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{unit_vector, vec_add, Side, Subspace, Tuples};
use crate::poly::{Monomial, MultiPoly};

/// How many stream points the witness search may consume.
const WITNESS_BUDGET: usize = 100_000;

/// The coefficient row of `l_{P,a}`.
pub fn gradient_at(p: &MultiPoly, a: &[Scalar]) -> Result<Vec<Scalar>> {
    p.gradient(a)
}

/// `L_P` together with points `a_1..a_d` whose gradients form a basis of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradBasis {
    pub subspace: Subspace,
    pub witnesses: Vec<Vec<Scalar>>,
    pub gradients: Vec<Vec<Scalar>>,
}

impl GradBasis {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// Recomputes the gradients at the witnesses and checks they form a
    /// basis of `subspace`.
    pub fn verify(&self, p: &MultiPoly) -> Result<bool> {
        let n = p.nvars();
        let mut grads = Vec::with_capacity(self.witnesses.len());
        for a in &self.witnesses {
            grads.push(gradient_at(p, a)?);
        }
        if grads != self.gradients || grads.len() != self.dim() {
            return Ok(false);
        }
        Ok(Subspace::span(p.field(), n, &grads, Side::Dual)? == self.subspace)
    }
}

/// Controls the deterministic witness point stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessOptions {
    pub seed: u64,
    /// Start with `e_i` and `e_i + e_j` before the pseudorandom points.
    pub structured: bool,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        Self { seed: crate::DEFAULT_SEED, structured: true }
    }
}

/// Basis vectors, then sums of pairs, then seeded pseudorandom points.
pub struct WitnessStream {
    field: FieldSpec,
    n: usize,
    i: usize,
    j: usize,
    phase: u8,
    rng: ChaCha8Rng,
}

impl WitnessStream {
    pub fn new(field: &FieldSpec, n: usize, opts: WitnessOptions) -> Self {
        Self {
            field: field.clone(),
            n,
            i: 0,
            j: 1,
            phase: if opts.structured { 0 } else { 2 },
            rng: ChaCha8Rng::seed_from_u64(opts.seed),
        }
    }
}

impl Iterator for WitnessStream {
    type Item = Vec<Scalar>;

    fn next(&mut self) -> Option<Vec<Scalar>> {
        loop {
            match self.phase {
                0 if self.i < self.n => {
                    self.i += 1;
                    return Some(unit_vector(&self.field, self.n, self.i - 1));
                }
                0 => {
                    self.phase = 1;
                    self.i = 0;
                    self.j = 1;
                }
                1 if self.i + 1 < self.n => {
                    let v = vec_add(&unit_vector(&self.field, self.n, self.i), &unit_vector(&self.field, self.n, self.j));
                    self.j += 1;
                    if self.j == self.n {
                        self.i += 1;
                        self.j = self.i + 1;
                    }
                    return Some(v);
                }
                1 => self.phase = 2,
                _ => return Some(self.field.random_vector(self.n, &mut self.rng)),
            }
        }
    }
}

/// Whether the symbolic route is justified for `p`.
pub fn symbolic_applicable(p: &MultiPoly) -> bool {
    match p.field().order() {
        None => true,
        Some(q) => p.degree().below(q),
    }
}

/// `L_P` from the monomial coefficient vectors of the partials.
pub fn lp_symbolic(p: &MultiPoly) -> Result<GradBasis> {
    lp_symbolic_with(p, WitnessOptions::default())
}

pub fn lp_symbolic_with(p: &MultiPoly, opts: WitnessOptions) -> Result<GradBasis> {
    if !symbolic_applicable(p) {
        return Err(Error::DegreeFieldMismatch {
            degree: p.degree().finite().unwrap_or(0),
            order: p.field().order().unwrap_or(0),
        });
    }
    let field = p.field();
    let n = p.nvars();
    let mut columns: BTreeMap<Monomial, Vec<Scalar>> = BTreeMap::new();
    for (i, d) in p.partials().iter().enumerate() {
        for (m, c) in d.terms() {
            columns.entry(m.clone()).or_insert_with(|| field.zeros(n))[i] = c.clone();
        }
    }
    let vectors: Vec<Vec<Scalar>> = columns.into_values().collect();
    let subspace = Subspace::span(field, n, &vectors, Side::Dual)?;
    let (witnesses, gradients) = find_witnesses(p, &subspace, WitnessStream::new(field, n, opts), WITNESS_BUDGET)?;
    Ok(GradBasis { subspace, witnesses, gradients })
}

type Points = Vec<Vec<Scalar>>;

/// Greedy search along `points` for gradients spanning `target`.
fn find_witnesses(
    p: &MultiPoly,
    target: &Subspace,
    points: impl Iterator<Item = Vec<Scalar>>,
    budget: usize,
) -> Result<(Points, Points)> {
    let field = p.field();
    let n = p.nvars();
    let d = target.dim();
    let mut found = Subspace::zero(field, n, Side::Dual);
    let mut witnesses = Vec::with_capacity(d);
    let mut gradients = Vec::with_capacity(d);
    if d == 0 {
        return Ok((witnesses, gradients));
    }
    for a in points.take(budget) {
        let g = gradient_at(p, &a)?;
        if !target.contains(&g)? {
            return Err(Error::InternalConsistency("gradient outside the computed L_P".into()));
        }
        if found.contains(&g)? {
            continue;
        }
        gradients.push(g);
        witnesses.push(a);
        found = Subspace::span(field, n, &gradients, Side::Dual)?;
        if found.dim() == d {
            return Ok((witnesses, gradients));
        }
    }
    Err(Error::InternalConsistency("witness search exhausted its budget".into()))
}

/// `L_P` by evaluating the gradient at every point of `F^n`.
pub fn lp_sampled(p: &MultiPoly, cap: u128) -> Result<GradBasis> {
    let field = p.field();
    let n = p.nvars();
    let q = field.order().ok_or(Error::InfiniteEnumeration)?;
    let needed = u128::from(q).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let elems = field.elements()?;
    let partials = p.partials();
    let mut witnesses = Vec::new();
    let mut gradients: Vec<Vec<Scalar>> = Vec::new();
    let mut found = Subspace::zero(field, n, Side::Dual);
    for a in Tuples::new(&elems, n) {
        if found.dim() == n {
            break;
        }
        let g: Vec<Scalar> = partials.iter().map(|d| d.eval_unchecked(&a)).collect();
        if found.contains(&g)? {
            continue;
        }
        gradients.push(g);
        witnesses.push(a);
        found = Subspace::span(field, n, &gradients, Side::Dual)?;
    }
    Ok(GradBasis { subspace: found, witnesses, gradients })
}

/// Symbolic when justified, otherwise exhaustive within `cap`.
pub fn lp_auto(p: &MultiPoly, cap: u128) -> Result<GradBasis> {
    if symbolic_applicable(p) {
        lp_symbolic(p)
    } else {
        lp_sampled(p, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::galois(q).unwrap()
    }

    fn p(text: &str, n: usize, f: &FieldSpec) -> MultiPoly {
        MultiPoly::parse(text, n, f).unwrap()
    }

    #[test]
    fn gradient_examples() {
        let q = FieldSpec::rationals();
        let g = gradient_at(&p("x1*x2", 2, &q), &[q.from_i64(2), q.from_i64(3)]).unwrap();
        assert_eq!(g, vec![q.from_i64(3), q.from_i64(2)]);
        let g3 = gf(3);
        for a in g3.elements().unwrap() {
            assert_eq!(gradient_at(&p("x1^3", 1, &g3), &[a]).unwrap(), vec![g3.zero()]);
        }
    }

    #[test]
    fn symbolic_examples() {
        let f = gf(5);
        let b = lp_symbolic(&p("x1*x2", 2, &f)).unwrap();
        assert_eq!(b.subspace, Subspace::full(&f, 2, Side::Dual));
        assert_eq!(b.subspace, lp_sampled(&p("x1*x2", 2, &f), 1000).unwrap().subspace);
        assert!(b.verify(&p("x1*x2", 2, &f)).unwrap());
        let lin = lp_symbolic(&p("x1", 3, &f)).unwrap();
        assert_eq!(lin.subspace.basis_vectors(), vec![vec![f.one(), f.zero(), f.zero()]]);
        assert!(matches!(lp_symbolic(&p("x1^5", 1, &f)), Err(Error::DegreeFieldMismatch { degree: 5, order: 5 })));
        let z = lp_symbolic(&MultiPoly::zero(&f, 2)).unwrap();
        assert_eq!((z.dim(), z.witnesses.len()), (0, 0));
    }

    #[test]
    fn sampled_examples() {
        let g3 = gf(3);
        assert_eq!(lp_sampled(&p("x1^3", 1, &g3), 100).unwrap().dim(), 0);
        assert_eq!(lp_sampled(&p("x1*x2", 2, &g3), 100).unwrap().dim(), 2);
        let g2 = gf(2);
        assert_eq!(lp_sampled(&p("x1^2", 1, &g2), 100).unwrap().dim(), 0);
        assert!(lp_symbolic(&p("x1^2", 1, &g2)).is_err());
        assert!(matches!(lp_sampled(&p("x1", 20, &g3), 1000), Err(Error::CapExceeded { .. })));
        assert!(matches!(lp_sampled(&p("x1", 1, &FieldSpec::rationals()), 1000), Err(Error::InfiniteEnumeration)));
    }

    #[test]
    fn different_streams_give_same_subspace() {
        let f = gf(7);
        let poly = p("x1^2*x2 + 3*x2*x3^2 + x1*x3 - x2^3", 3, &f);
        let a = lp_symbolic(&poly).unwrap();
        let b = lp_symbolic_with(&poly, WitnessOptions { seed: 99, structured: false }).unwrap();
        assert_eq!(a.subspace, b.subspace);
        assert!(a.verify(&poly).unwrap() && b.verify(&poly).unwrap());
    }
}
