//! Sparse multivariate polynomials over a [`FieldSpec`].
//!
//! Variables are indexed from `0` in the API and printed as `x1, x2, ...`.
//! Terms are kept in a `BTreeMap` under the graded lexicographic order with
//! `x1 < x2 < ...`; printing lists terms from the largest down.

pub mod parse;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{dot, vec_scale, Tuples};

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        let field = point[0].field();
        let mut acc = field.one();
        for (x, &e) in point.iter().zip(&self.0) {
            if e > 0 {
                acc = &acc * &x.pow(u64::from(e));
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree; the zero polynomial has degree `NegInf`, below every
/// finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(u32),
}

impl Degree {
    /// True when the degree is strictly below `bound` (always for `NegInf`).
    pub fn below(self, bound: u64) -> bool {
        match self {
            Degree::NegInf => true,
            Degree::Finite(d) => u64::from(d) < bound,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn is_homogeneous(self) -> bool {
        !matches!(self, Homogeneity::Inhomogeneous)
    }
}

/// Outcome of a zero-function test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroVerdict {
    Zero,
    Nonzero,
    Undecidable,
}

/// How a zero-function verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroMethod {
    /// Every per-variable degree is below |F| (or F is infinite), so the
    /// function is zero iff the polynomial is.
    Symbolic,
    /// Evaluated at every point of `F^n`.
    Exhaustive,
    /// Exponents reduced with `x^q = x`, after which the symbolic rule applies.
    FrobeniusReduction,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroCheck {
    pub verdict: ZeroVerdict,
    pub method: ZeroMethod,
}

/// Sparse polynomial with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: &FieldSpec, nvars: usize) -> Self {
        Self { nvars, field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &FieldSpec, nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The variable `x_{i+1}`.
    pub fn var(field: &FieldSpec, nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::var(nvars, i), field.one());
        p
    }

    /// `Σ c_i x_{i+1}`.
    pub fn linear_form(field: &FieldSpec, coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(field, n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(field: &FieldSpec, nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    /// Parses the text grammar of [`parse`].
    pub fn parse(text: &str, nvars: usize, field: &FieldSpec) -> Result<Self> {
        parse::parse_poly(text, nvars, field)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn degree(&self) -> Degree {
        self.terms.keys().next_back().map_or(Degree::NegInf, |m| Degree::Finite(m.degree()))
    }

    /// Largest exponent of any single variable.
    pub fn max_var_degree(&self) -> u32 {
        self.terms.keys().flat_map(|m| m.0.iter().copied()).max().unwrap_or(0)
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) if degs.all(|e| e == d) => Homogeneity::Homogeneous(d),
            Some(_) => Homogeneity::Inhomogeneous,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity().is_homogeneous()
    }

    fn check_same(&self, other: &MultiPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(), ..self.clone() }
    }

    pub fn scale(&self, s: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(&self.field, self.nvars, self.field.one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `x_{i+1}`. Coefficients are
    /// multiplied by the exponent in the field, so `x^p` differentiates to 0
    /// in characteristic `p`.
    pub fn formal_partial(&self, i: usize) -> Result<MultiPoly> {
        if i >= self.nvars {
            return Err(Error::VariableOutOfRange { index: i + 1, nvars: self.nvars });
        }
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, c * &self.field.from_i64(i64::from(e)));
        }
        Ok(out)
    }

    fn check_point(&self, point: &[Scalar]) -> Result<()> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: point.len() });
        }
        if point.iter().any(|x| x.field() != &self.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        self.check_point(point)?;
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(u64::from(e));
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// The row of formal partials evaluated at `a`.
    pub fn gradient(&self, a: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_point(a)?;
        Ok(self.partials().iter().map(|d| d.eval_unchecked(a)).collect())
    }

    pub fn partials(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|i| self.formal_partial(i).expect("index in range")).collect()
    }

    /// The univariate restriction `t ↦ P(a + t v)`.
    pub fn restrict_line(&self, a: &[Scalar], v: &[Scalar]) -> Result<UniPoly> {
        self.check_point(a)?;
        self.check_point(v)?;
        let lines: Vec<UniPoly> =
            a.iter().zip(v).map(|(ai, vi)| UniPoly::new(&self.field, vec![ai.clone(), vi.clone()])).collect();
        let mut cache: BTreeMap<(usize, u32), UniPoly> = BTreeMap::new();
        let mut acc = UniPoly::zero(&self.field);
        for (m, c) in &self.terms {
            let mut t = UniPoly::constant(&self.field, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let pw = cache.entry((i, e)).or_insert_with(|| lines[i].pow(e));
                    t = t.mul(pw);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// `∂P/∂v(a)`, read off as the `t` coefficient of `P(a + t v)`. Debug
    /// builds also compute the gradient pairing and assert agreement.
    pub fn dir_derivative(&self, a: &[Scalar], v: &[Scalar]) -> Result<Scalar> {
        let line = self.restrict_line(a, v)?.coeff(1);
        debug_assert_eq!(line, dot(&self.gradient(a)?, v), "directional derivative routes disagree");
        Ok(line)
    }

    /// Composition `P(images_1, ..., images_n)`; the result lives in the
    /// variable set of the images.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: images.len() });
        }
        let target = match images.first() {
            Some(q) => q.nvars,
            None => 0,
        };
        for q in images {
            if q.field != self.field {
                return Err(Error::FieldMismatch);
            }
            if q.nvars != target {
                return Err(Error::DimensionMismatch { expected: target, found: q.nvars });
            }
        }
        let mut cache: BTreeMap<(usize, u32), MultiPoly> = BTreeMap::new();
        let mut acc = MultiPoly::zero(&self.field, target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&self.field, target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let pw = cache.entry((i, e)).or_insert_with(|| images[i].pow(e));
                    t = &t * &*pw;
                }
            }
            for (tm, tc) in t.terms {
                acc.add_term(tm, tc);
            }
        }
        Ok(acc)
    }

    /// Re-embeds into `nvars` variables, sending `x_{i+1}` to
    /// `x_{offset+i+1}`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Result<MultiPoly> {
        if offset + self.nvars > nvars {
            return Err(Error::DimensionMismatch { expected: offset + self.nvars, found: nvars });
        }
        let mut out = MultiPoly::zero(&self.field, nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            e[offset..offset + self.nvars].copy_from_slice(&m.0);
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Sets `x_{i+1} = c`; the variable count is unchanged.
    pub fn specialize(&self, i: usize, c: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, coef) in &self.terms {
            let mut e = m.clone();
            let k = core::mem::take(&mut e.0[i]);
            out.add_term(e, coef * &c.pow(u64::from(k)));
        }
        out
    }

    /// Over `GF(q)`, the unique polynomial with all per-variable degrees
    /// below `q` defining the same function (via `x^q = x`). Identity over
    /// the rationals.
    pub fn reduce_as_function(&self) -> MultiPoly {
        let Some(q) = self.field.order() else {
            return self.clone();
        };
        let q = q as u32;
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let e: Vec<u32> = m.0.iter().map(|&e| if e == 0 { 0 } else { (e - 1) % (q - 1) + 1 }).collect();
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Zero-function test with the given exhaustive-evaluation cap, using
    /// exponent reduction when exhaustive evaluation is too large.
    pub fn is_zero_function(&self, cap: u128) -> ZeroCheck {
        self.zero_function_test(cap, true)
    }

    /// As [`is_zero_function`](Self::is_zero_function); with
    /// `allow_reduction = false` an oversized enumeration yields
    /// `Undecidable`.
    pub fn zero_function_test(&self, cap: u128, allow_reduction: bool) -> ZeroCheck {
        let symbolic = |zero: bool, method| ZeroCheck {
            verdict: if zero { ZeroVerdict::Zero } else { ZeroVerdict::Nonzero },
            method,
        };
        let Some(q) = self.field.order() else {
            return symbolic(self.is_zero(), ZeroMethod::Symbolic);
        };
        if u64::from(self.max_var_degree()) < q {
            return symbolic(self.is_zero(), ZeroMethod::Symbolic);
        }
        let points = u128::from(q).checked_pow(self.nvars as u32);
        if points.is_some_and(|p| p <= cap) {
            let elems = self.field.elements().expect("finite");
            let zero = Tuples::new(&elems, self.nvars).all(|x| self.eval_unchecked(&x).is_zero());
            return symbolic(zero, ZeroMethod::Exhaustive);
        }
        if allow_reduction {
            return symbolic(self.reduce_as_function().is_zero(), ZeroMethod::FrobeniusReduction);
        }
        ZeroCheck { verdict: ZeroVerdict::Undecidable, method: ZeroMethod::None }
    }

    /// A point where `P` is nonzero as a function, if one exists.
    ///
    /// Works on the reduced form: fixing one variable at a time to a value
    /// that keeps the specialization a nonzero polynomial. Such a value
    /// always exists since, viewed in that variable, the polynomial has
    /// degree below the number of values tried.
    pub fn find_nonzero_point(&self) -> Option<Vec<Scalar>> {
        let mut p = self.reduce_as_function();
        if p.is_zero() {
            return None;
        }
        let candidates: Vec<Scalar> = match self.field.elements() {
            Ok(es) => es,
            Err(_) => {
                let d = p.max_var_degree();
                (0..=i64::from(d)).map(|i| self.field.from_i64(i)).collect()
            }
        };
        let mut point = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            let c = candidates.iter().find(|c| !p.specialize(i, c).is_zero())?;
            p = p.specialize(i, c);
            point.push(c.clone());
        }
        debug_assert!(!self.eval_unchecked(&point).is_zero());
        Some(point)
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
                .collect();
            let coef = if mag.is_compound() { format!("({mag})") } else { format!("{mag}") };
            if vars.is_empty() {
                f.write_str(&coef)?;
            } else if mag.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{coef}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}; {} vars]({self})", self.field, self.nvars)
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl core::ops::$tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            /// Panics on field or variable-count mismatch.
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("polynomial operands must share field and nvars")
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

/// Dense univariate polynomial `a_0 + a_1 t + ...` with trimmed leading
/// zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Self { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Self { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &FieldSpec, c: Scalar) -> Self {
        Self::new(field, vec![c])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            l => Degree::Finite((l - 1) as u32),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        UniPoly::new(&self.field, c)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut c = self.field.zeros(self.coeffs.len() + other.coeffs.len() - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UniPoly::new(&self.field, c)
    }

    pub fn scale(&self, s: &Scalar) -> UniPoly {
        UniPoly::new(&self.field, vec_scale(s, &self.coeffs))
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut acc = UniPoly::constant(&self.field, self.field.one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| &(&acc * t) + c)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> UniPoly {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, a)| a * &self.field.from_i64(i as i64)).collect();
        UniPoly::new(&self.field, c)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coef = if c.is_compound() || c.is_negative() { format!("({c})") } else { format!("{c}") };
            match i {
                0 => f.write_str(&coef)?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{coef}*")?;
                    }
                    if i == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::linalg::vec_add;

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
    fn parse_examples() {
        let f = gf(5);
        let a = p("x1*x2 - 3", 2, &f);
        assert_eq!(a.num_terms(), 2);
        assert_eq!(a.coeff(&[1, 1]), f.one());
        assert_eq!(a.coeff(&[0, 0]), f.from_i64(2));
        let g3 = gf(3);
        assert_eq!(p("x1^3", 1, &g3).coeff(&[3]), g3.one());
        let q = FieldSpec::rationals();
        assert_eq!(p("x1*(x2 + 1)", 2, &q), p("x1*x2 + x1", 2, &q));
    }

    #[test]
    fn evaluate_examples() {
        let q = FieldSpec::rationals();
        assert_eq!(p("x1*x2", 2, &q).evaluate(&v(&q, &[2, 3])).unwrap(), q.from_i64(6));
        let g3 = gf(3);
        assert_eq!(p("x1^3", 1, &g3).evaluate(&v(&g3, &[2])).unwrap(), g3.from_i64(2));
        assert!(MultiPoly::zero(&q, 2).evaluate(&v(&q, &[5, 7])).unwrap().is_zero());
        assert!(matches!(p("x1", 2, &q).evaluate(&v(&q, &[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn homogeneity_examples() {
        let q = FieldSpec::rationals();
        assert_eq!(p("x1*x2 + x1^2", 2, &q).homogeneity(), Homogeneity::Homogeneous(2));
        assert_eq!(p("x1*x2 + x1", 2, &q).homogeneity(), Homogeneity::Inhomogeneous);
        assert_eq!(p("x1 - x2", 2, &q).homogeneity(), Homogeneity::Homogeneous(1));
        assert_eq!(MultiPoly::zero(&q, 2).homogeneity(), Homogeneity::Zero);
        assert_eq!(MultiPoly::zero(&q, 2).degree(), Degree::NegInf);
        assert!(Degree::NegInf < Degree::Finite(0));
    }

    #[test]
    fn partial_examples() {
        let q = FieldSpec::rationals();
        assert_eq!(p("x1*x2", 2, &q).formal_partial(0).unwrap(), p("x2", 2, &q));
        let g3 = gf(3);
        assert!(p("x1^3", 1, &g3).formal_partial(0).unwrap().is_zero());
        assert!(p("7", 2, &q).formal_partial(0).unwrap().is_zero());
        assert!(p("x1", 2, &q).formal_partial(2).is_err());
    }

    #[test]
    fn restrict_line_examples() {
        let q = FieldSpec::rationals();
        let l = p("x1^2", 1, &q).restrict_line(&v(&q, &[1]), &v(&q, &[1])).unwrap();
        assert_eq!(l.coeffs(), &v(&q, &[1, 2, 1])[..]);
        let l = p("x1*x2", 2, &q).restrict_line(&v(&q, &[2, 3]), &v(&q, &[1, 0])).unwrap();
        assert_eq!(l.coeffs(), &v(&q, &[6, 3])[..]);
        let l = p("x1*x2 + x2^3", 2, &q).restrict_line(&v(&q, &[2, 3]), &v(&q, &[0, 0])).unwrap();
        assert_eq!(l.degree(), Degree::Finite(0));
        assert_eq!(l.coeff(0), q.from_i64(33));
    }

    #[test]
    fn dir_derivative_examples() {
        let q = FieldSpec::rationals();
        let a = v(&q, &[2, 3]);
        assert_eq!(p("x1*x2", 2, &q).dir_derivative(&a, &v(&q, &[1, 0])).unwrap(), q.from_i64(3));
        let g3 = gf(3);
        let cube = p("x1^3", 1, &g3);
        for a in g3.elements().unwrap() {
            for w in g3.elements().unwrap() {
                assert!(cube.dir_derivative(core::slice::from_ref(&a), &[w]).unwrap().is_zero());
            }
        }
        let f = gf(7);
        let poly = p("x1^2*x2 + 3*x2^3 + x1", 2, &f);
        let a = v(&f, &[4, 5]);
        let (u, w) = (v(&f, &[1, 6]), v(&f, &[2, 3]));
        let sum = &poly.dir_derivative(&a, &u).unwrap() + &poly.dir_derivative(&a, &w).unwrap();
        assert_eq!(poly.dir_derivative(&a, &vec_add(&u, &w)).unwrap(), sum);
    }

    #[test]
    fn substitute_examples() {
        let q = FieldSpec::rationals();
        let s = p("x1^2", 1, &q).substitute(&[p("x1 + x2", 2, &q)]).unwrap();
        assert_eq!(s, p("x1^2 + 2*x1*x2 + x2^2", 2, &q));
        let s = p("x1*x2", 2, &q).substitute(&[p("x1", 2, &q), p("1", 2, &q)]).unwrap();
        assert_eq!(s, p("x1", 2, &q));
        let g3 = gf(3);
        let s = p("x1", 1, &g3).substitute(&[p("x1^3", 1, &g3)]).unwrap();
        assert_eq!(s, p("x1^3", 1, &g3));
        assert_eq!(s.is_zero_function(1_000).verdict, ZeroVerdict::Nonzero);
        let diff = &s - &p("x1", 1, &g3);
        assert_eq!(diff.is_zero_function(1_000).verdict, ZeroVerdict::Zero);
        assert!(p("x1", 1, &g3).substitute(&[p("x1", 1, &gf(5))]).is_err());
    }

    #[test]
    fn zero_function_examples() {
        let g3 = gf(3);
        let c = p("x1^3 - x1", 1, &g3).is_zero_function(1_000_000);
        assert_eq!(c, ZeroCheck { verdict: ZeroVerdict::Zero, method: ZeroMethod::Exhaustive });
        let q = FieldSpec::rationals();
        assert_eq!(p("x1^3 - x1", 1, &q).is_zero_function(1_000_000).verdict, ZeroVerdict::Nonzero);
        assert_eq!(p("x1*x2 - x2*x1", 2, &q).is_zero_function(1).verdict, ZeroVerdict::Zero);
        let big = p("x1^3 - x1 + x2 - x2", 14, &g3);
        assert_eq!(big.zero_function_test(10, false).verdict, ZeroVerdict::Undecidable);
        let r = big.is_zero_function(10);
        assert_eq!((r.verdict, r.method), (ZeroVerdict::Zero, ZeroMethod::FrobeniusReduction));
    }

    #[test]
    fn printing() {
        let q = FieldSpec::rationals();
        assert_eq!(p("x1*x2 - 3", 2, &q).to_string(), "x1*x2 - 3");
        assert_eq!(p("-x2^2 + 1/2*x1", 2, &q).to_string(), "-x2^2 + 1/2*x1");
        assert_eq!(p("x1*x2 - 3", 2, &gf(5)).to_string(), "x1*x2 + 2");
        let g4 = gf(4);
        assert_eq!(p("u*x1 + (u+1)*x2", 2, &g4).to_string(), "(u+1)*x2 + u*x1");
        assert_eq!(MultiPoly::zero(&q, 1).to_string(), "0");
    }

    #[test]
    fn nonzero_point_finder() {
        let f = gf(5);
        let poly = p("x1^5*x2 - x1*x2 + x3^2 - 1", 3, &f);
        let pt = poly.find_nonzero_point().unwrap();
        assert!(!poly.evaluate(&pt).unwrap().is_zero());
        assert!(p("x1^5 - x1", 1, &f).find_nonzero_point().is_none());
        let q = FieldSpec::rationals();
        let poly = p("x1^2 - x1", 1, &q);
        let pt = poly.find_nonzero_point().unwrap();
        assert!(!poly.evaluate(&pt).unwrap().is_zero());
    }
}
