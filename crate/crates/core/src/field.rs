//! Exact scalars over prime fields `GF(p)`, small extension fields `GF(p^m)`
//! and the rationals.
//!
//! A [`FieldSpec`] is a cheap, shareable handle (`Arc`) describing one field.
//! Every [`Scalar`] carries the handle of the field it lives in, so mixing
//! elements of different fields is detected instead of silently producing
//! garbage.
//!
//! Finite field elements are stored as an index in `0..q`. For prime fields
//! that is the canonical residue. For `GF(p^m)` the index packs the
//! coefficient vector `c_0 + c_1 u + ... + c_{m-1} u^{m-1}` in base `p`
//! (`index = c_0 + c_1 p + ...`), which makes index order the canonical
//! enumeration order: `0, 1, u, u+1` for `GF(4)`.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest order accepted for an extension field.
pub const MAX_EXTENSION_ORDER: u64 = 64;
/// Largest extension degree accepted.
pub const MAX_EXTENSION_DEGREE: u32 = 4;
/// Prime fields are limited so that products of residues fit in `u64`.
pub const MAX_PRIME: u32 = (1 << 31) - 1;

/// Default irreducible moduli, coefficients listed from the constant term up
/// (the leading `1` included).
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),       // u^2 + u + 1
    (2, 3, &[1, 1, 0, 1]),    // u^3 + u + 1
    (2, 4, &[1, 1, 0, 0, 1]), // u^4 + u + 1
    (3, 2, &[1, 0, 1]),       // u^2 + 1
    (3, 3, &[1, 2, 0, 1]),    // u^3 + 2u + 1
    (5, 2, &[2, 0, 1]),       // u^2 + 2
    (7, 2, &[1, 0, 1]),       // u^2 + 1
];

/// The three families of supported fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime { p: u32 },
    Extension { p: u32, m: u32, modulus: Vec<u32> },
    Rationals,
}

#[derive(Debug)]
struct ExtTables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

#[derive(Debug)]
struct FieldInner {
    kind: FieldKind,
    ext: Option<ExtTables>,
}

/// Descriptor of a field; clones share the same allocation.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            FieldKind::Prime { p } => write!(f, "GF({p})"),
            FieldKind::Extension { p, m, .. } => write!(f, "GF({})", u64::from(*p).pow(*m)),
            FieldKind::Rationals => f.write_str("QQ"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic-or-not `b` over `GF(p)`; both low-to-high.
fn poly_rem_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p64 = u64::from(p);
    let mut r: Vec<u64> = a.iter().map(|&c| u64::from(c) % p64).collect();
    let db = b.len() - 1;
    let lead_inv = mod_pow(u64::from(b[db]), p64 - 2, p64);
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let factor = top * lead_inv % p64;
            let shift = r.len() - 1 - db;
            for (i, &bc) in b.iter().enumerate() {
                let sub = factor * u64::from(bc) % p64;
                r[shift + i] = (r[shift + i] + p64 - sub) % p64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Exhaustive irreducibility test: no monic factor of degree `1..=m/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        let count = u64::from(p).pow(d as u32);
        for idx in 0..count {
            let mut g = digits(idx, p, d);
            g.push(1);
            if poly_rem_mod_p(modulus, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(mut idx: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((idx % u64::from(p)) as u32);
        idx /= u64::from(p);
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

fn build_ext_tables(p: u32, m: u32, modulus: &[u32]) -> ExtTables {
    let q = p.pow(m) as usize;
    let m = m as usize;
    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    let mut neg = vec![0u8; q];
    let mut inv = vec![0u8; q];
    let ds: Vec<Vec<u32>> = (0..q as u64).map(|i| digits(i, p, m)).collect();
    for a in 0..q {
        let na: Vec<u32> = ds[a].iter().map(|&c| (p - c) % p).collect();
        neg[a] = undigits(&na, p) as u8;
        for b in 0..q {
            let s: Vec<u32> = ds[a].iter().zip(&ds[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = undigits(&s, p) as u8;
            let mut prod = vec![0u32; 2 * m - 1];
            for (i, &x) in ds[a].iter().enumerate() {
                for (j, &y) in ds[b].iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = poly_rem_mod_p(&prod, modulus, p);
            r.resize(m, 0);
            mul[a * q + b] = undigits(&r, p) as u8;
        }
    }
    for a in 1..q {
        if let Some(b) = (1..q).find(|&b| mul[a * q + b] == 1) {
            inv[a] = b as u8;
        }
    }
    ExtTables { add, mul, neg, inv }
}

impl FieldSpec {
    /// `GF(p)` for a prime `p <= MAX_PRIME`.
    pub fn prime(p: u32) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(u64::from(p)) {
            return Err(Error::InvalidField(alloc::format!("{p} is not a supported prime")));
        }
        Ok(Self(Arc::new(FieldInner { kind: FieldKind::Prime { p }, ext: None })))
    }

    /// `GF(p^m)` built on `modulus` (low-to-high coefficients, monic, degree
    /// `m`), or on the built-in default modulus when `None`.
    pub fn extension(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(u64::from(p)) {
            return Err(Error::InvalidField(alloc::format!("{p} is not prime")));
        }
        if m == 1 {
            return Self::prime(p);
        }
        if m == 0 || m > MAX_EXTENSION_DEGREE || u64::from(p).pow(m) > MAX_EXTENSION_ORDER {
            return Err(Error::InvalidField(alloc::format!(
                "GF({p}^{m}) is outside the supported range (m <= {MAX_EXTENSION_DEGREE}, order <= {MAX_EXTENSION_ORDER})"
            )));
        }
        let modulus = match modulus {
            Some(md) => md,
            None => DEFAULT_MODULI
                .iter()
                .find(|(pp, mm, _)| *pp == p && *mm == m)
                .map(|(_, _, md)| md.to_vec())
                .ok_or_else(|| Error::InvalidField(alloc::format!("no default modulus for GF({p}^{m})")))?,
        };
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus must be monic of degree m with coefficients in [0, p)".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField("modulus polynomial is reducible".into()));
        }
        let ext = build_ext_tables(p, m, &modulus);
        Ok(Self(Arc::new(FieldInner { kind: FieldKind::Extension { p, m, modulus }, ext: Some(ext) })))
    }

    /// The finite field of order `q` (prime or supported prime power).
    pub fn galois(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidField(alloc::format!("no field of order {q}")));
        }
        if is_prime(q) {
            let p = u32::try_from(q).map_err(|_| Error::InvalidField("prime too large".into()))?;
            return Self::prime(p);
        }
        let mut p = 2u64;
        while !q.is_multiple_of(p) {
            p += 1;
        }
        let mut m = 0u32;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            m += 1;
        }
        if r != 1 {
            return Err(Error::InvalidField(alloc::format!("no field of order {q}")));
        }
        Self::extension(p as u32, m, None)
    }

    pub fn rationals() -> Self {
        Self(Arc::new(FieldInner { kind: FieldKind::Rationals, ext: None }))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    /// `p` for finite fields, `0` for the rationals.
    pub fn characteristic(&self) -> u32 {
        match self.0.kind {
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => p,
            FieldKind::Rationals => 0,
        }
    }

    /// Cardinality, or `None` for the (infinite) rationals.
    pub fn order(&self) -> Option<u64> {
        match self.0.kind {
            FieldKind::Prime { p } => Some(u64::from(p)),
            FieldKind::Extension { p, m, .. } => Some(u64::from(p).pow(m)),
            FieldKind::Rationals => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn is_extension(&self) -> bool {
        matches!(self.0.kind, FieldKind::Extension { .. })
    }

    pub fn zero(&self) -> Scalar {
        match self.0.kind {
            FieldKind::Rationals => self.wrap(Value::Rat(BigRational::zero())),
            _ => self.wrap(Value::Fin(0)),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.0.kind {
            FieldKind::Rationals => self.wrap(Value::Rat(BigRational::one())),
            _ => self.wrap(Value::Fin(1)),
        }
    }

    /// The image of an integer under the canonical ring map `Z -> F`.
    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.0.kind {
            FieldKind::Rationals => self.wrap(Value::Rat(BigRational::from_integer(n.clone()))),
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => {
                let r = n.mod_floor(&BigInt::from(p)).to_u32().expect("residue fits");
                self.wrap(Value::Fin(r))
            }
        }
    }

    /// `num / den`; fails when `den` maps to zero in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.from_bigint(num) * &d.inv()?)
    }

    /// Finite field element with enumeration index `idx`.
    pub fn element(&self, idx: u64) -> Result<Scalar> {
        match self.order() {
            Some(q) if idx < q => Ok(self.wrap(Value::Fin(idx as u32))),
            Some(q) => Err(Error::IndexOutOfRange { index: idx as usize, len: q as usize }),
            None => Err(Error::InfiniteEnumeration),
        }
    }

    /// The generator `u` of an extension field.
    pub fn generator(&self) -> Result<Scalar> {
        match self.0.kind {
            FieldKind::Extension { p, .. } => Ok(self.wrap(Value::Fin(p))),
            _ => Err(Error::InvalidField(alloc::format!("{self} has no extension generator"))),
        }
    }

    /// All elements in canonical order: `0` first, then ascending index.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        let q = self.order().ok_or(Error::InfiniteEnumeration)?;
        Ok((0..q).map(|i| self.wrap(Value::Fin(i as u32))).collect())
    }

    /// The zero vector of length `n`.
    pub fn zeros(&self, n: usize) -> Vec<Scalar> {
        vec![self.zero(); n]
    }

    /// A pseudorandom element: uniform for finite fields, a small fraction
    /// `a/b` with `|a| <= 9`, `1 <= b <= 3` for the rationals.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.order() {
            Some(q) => self.wrap(Value::Fin(rng.gen_range(0..q) as u32)),
            None => {
                let num = BigInt::from(rng.gen_range(-9i64..=9));
                let den = BigInt::from(rng.gen_range(1i64..=3));
                self.wrap(Value::Rat(BigRational::new(num, den)))
            }
        }
    }

    pub fn random_vector<R: rand::Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<Scalar> {
        (0..n).map(|_| self.random(rng)).collect()
    }

    fn wrap(&self, value: Value) -> Scalar {
        Scalar { field: self.clone(), value }
    }

    fn tables(&self) -> &ExtTables {
        self.0.ext.as_ref().expect("extension tables")
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("QQ") || t.eq_ignore_ascii_case("Q") {
            return Ok(Self::rationals());
        }
        let inner = t
            .strip_prefix("GF(")
            .or_else(|| t.strip_prefix("gf("))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidField(alloc::format!("unrecognised field descriptor `{t}`")))?;
        let q = if let Some((b, e)) = inner.split_once('^') {
            let b: u64 = b.trim().parse().map_err(|_| Error::InvalidField(t.to_string()))?;
            let e: u32 = e.trim().parse().map_err(|_| Error::InvalidField(t.to_string()))?;
            b.checked_pow(e).ok_or_else(|| Error::InvalidField(t.to_string()))?
        } else {
            inner.trim().parse().map_err(|_| Error::InvalidField(t.to_string()))?
        };
        Self::galois(q)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Value {
    Fin(u32),
    Rat(BigRational),
}

/// An exact field element in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    field: FieldSpec,
    value: Value,
}

impl core::hash::Hash for Scalar {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

/// The four ring operations exposed through [`Scalar::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl Scalar {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Fin(v) => *v == 0,
            Value::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Fin(v) => *v == 1,
            Value::Rat(r) => r.is_one(),
        }
    }

    /// Enumeration index of a finite field element.
    pub fn index(&self) -> Option<u64> {
        match self.value {
            Value::Fin(v) => Some(u64::from(v)),
            Value::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rat(r) => Some(r),
            Value::Fin(_) => None,
        }
    }

    /// Checked binary (or unary, `b` ignored for `Neg`) operation.
    pub fn arith(op: ArithOp, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        if op != ArithOp::Neg && a.field != b.field {
            return Err(Error::FieldMismatch);
        }
        Ok(match op {
            ArithOp::Add => a.add_unchecked(b),
            ArithOp::Sub => a.add_unchecked(&b.neg_unchecked()),
            ArithOp::Mul => a.mul_unchecked(b),
            ArithOp::Neg => a.neg_unchecked(),
        })
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        Self::arith(ArithOp::Add, self, other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        Self::arith(ArithOp::Sub, self, other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        Self::arith(ArithOp::Mul, self, other)
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let value = match (&self.field.0.kind, &self.value) {
            (FieldKind::Prime { p }, Value::Fin(v)) => {
                let p = u64::from(*p);
                Value::Fin(mod_pow(u64::from(*v), p - 2, p) as u32)
            }
            (FieldKind::Extension { .. }, Value::Fin(v)) => Value::Fin(u32::from(self.field.tables().inv[*v as usize])),
            (_, Value::Rat(r)) => Value::Rat(r.recip()),
            _ => unreachable!("value/kind mismatch"),
        };
        Ok(self.field.wrap(value))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Rebuilds the canonical form from scratch; the identity on valid values.
    pub fn canonicalize(&self) -> Scalar {
        let value = match (&self.field.0.kind, &self.value) {
            (FieldKind::Prime { p }, Value::Fin(v)) => Value::Fin(v % p),
            (FieldKind::Extension { p, m, .. }, Value::Fin(v)) => Value::Fin(v % p.pow(*m)),
            (_, Value::Rat(r)) => Value::Rat(BigRational::new(r.numer().clone(), r.denom().clone())),
            _ => unreachable!("value/kind mismatch"),
        };
        self.field.wrap(value)
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        let value = match (&self.field.0.kind, &self.value, &other.value) {
            (FieldKind::Prime { p }, Value::Fin(a), Value::Fin(b)) => {
                Value::Fin(((u64::from(*a) + u64::from(*b)) % u64::from(*p)) as u32)
            }
            (FieldKind::Extension { p, m, .. }, Value::Fin(a), Value::Fin(b)) => {
                let q = p.pow(*m) as usize;
                Value::Fin(u32::from(self.field.tables().add[*a as usize * q + *b as usize]))
            }
            (_, Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            _ => unreachable!("value/kind mismatch"),
        };
        self.field.wrap(value)
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        let value = match (&self.field.0.kind, &self.value, &other.value) {
            (FieldKind::Prime { p }, Value::Fin(a), Value::Fin(b)) => {
                Value::Fin((u64::from(*a) * u64::from(*b) % u64::from(*p)) as u32)
            }
            (FieldKind::Extension { p, m, .. }, Value::Fin(a), Value::Fin(b)) => {
                let q = p.pow(*m) as usize;
                Value::Fin(u32::from(self.field.tables().mul[*a as usize * q + *b as usize]))
            }
            (_, Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            _ => unreachable!("value/kind mismatch"),
        };
        self.field.wrap(value)
    }

    fn neg_unchecked(&self) -> Scalar {
        let value = match (&self.field.0.kind, &self.value) {
            (FieldKind::Prime { p }, Value::Fin(a)) => Value::Fin((p - a) % p),
            (FieldKind::Extension { .. }, Value::Fin(a)) => Value::Fin(u32::from(self.field.tables().neg[*a as usize])),
            (_, Value::Rat(a)) => Value::Rat(-a),
            _ => unreachable!("value/kind mismatch"),
        };
        self.field.wrap(value)
    }

    /// True when the printed form needs parentheses as a coefficient.
    pub(crate) fn is_compound(&self) -> bool {
        match (&self.field.0.kind, &self.value) {
            (FieldKind::Extension { p, .. }, Value::Fin(v)) => {
                digits(u64::from(*v), *p, 8).iter().filter(|&&c| c != 0).count() > 1
            }
            _ => false,
        }
    }

    /// True for rationals below zero; finite field elements never are.
    pub(crate) fn is_negative(&self) -> bool {
        matches!(&self.value, Value::Rat(r) if r.is_negative())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl core::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics when the operands belong to different fields; use the
            /// `checked_*` methods to get an error instead.
            fn $method(self, rhs: &Scalar) -> Scalar {
                assert!(self.field == rhs.field, "scalar field mismatch");
                self.$imp(rhs)
            }
        }
        impl core::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                core::ops::$tr::$method(&self, &rhs)
            }
        }
    };
}

impl Scalar {
    fn sub_unchecked(&self, other: &Scalar) -> Scalar {
        self.add_unchecked(&other.neg_unchecked())
    }
}

forward_binop!(Add, add, add_unchecked);
forward_binop!(Sub, sub, sub_unchecked);
forward_binop!(Mul, mul, mul_unchecked);

impl core::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_unchecked()
    }
}

impl core::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_unchecked()
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.field != other.field {
            return None;
        }
        Some(match (&self.value, &other.value) {
            (Value::Fin(a), Value::Fin(b)) => a.cmp(b),
            (Value::Rat(a), Value::Rat(b)) => a.cmp(b),
            _ => unreachable!("value/kind mismatch"),
        })
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.field.0.kind, &self.value) {
            (FieldKind::Prime { .. }, Value::Fin(v)) => write!(f, "{v}"),
            (FieldKind::Extension { p, m, .. }, Value::Fin(v)) => {
                let ds = digits(u64::from(*v), *p, *m as usize);
                let mut parts: Vec<String> = Vec::new();
                for (i, &c) in ds.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let part = match (i, c) {
                        (0, c) => alloc::format!("{c}"),
                        (1, 1) => "u".to_string(),
                        (1, c) => alloc::format!("{c}*u"),
                        (i, 1) => alloc::format!("u^{i}"),
                        (i, c) => alloc::format!("{c}*u^{i}"),
                    };
                    parts.push(part);
                }
                if parts.is_empty() {
                    f.write_str("0")
                } else {
                    f.write_str(&parts.join("+"))
                }
            }
            (_, Value::Rat(r)) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            _ => unreachable!("value/kind mismatch"),
        }
    }
}
