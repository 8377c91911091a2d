//! Exact dense linear algebra: row echelon forms, subspaces kept in
//! canonical RREF, annihilators, dual-basis extension and quotient
//! coordinates.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Dense row-major matrix. Zero rows or columns are allowed so that the
/// projection onto a zero-dimensional quotient is representable.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = match a.first() {
        Some(x) => x.field().zero(),
        None => return b.first().map(|y| y.field().zero()).expect("dot of two empty vectors has no field"),
    };
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

/// The `i`-th standard basis vector of `F^n`.
pub fn unit_vector(field: &FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = field.zeros(n);
    v[i] = field.one();
    v
}

fn check_vector(field: &FieldSpec, n: usize, v: &[Scalar]) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    if v.iter().any(|x| x.field() != field) {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

impl Matrix {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        if data.iter().any(|x| x.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self { rows, cols, field: field.clone(), data })
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Self { rows, cols, field: field.clone(), data: field.zeros(rows * cols) }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix whose rows are `rows`; every row must have length `cols`.
    pub fn from_rows(field: &FieldSpec, cols: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_vector(field, cols, r)?;
            data.extend_from_slice(r);
        }
        Ok(Self { rows: rows.len(), cols, field: field.clone(), data })
    }

    pub fn from_i64(field: &FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                r.iter().map(|&x| field.from_i64(x))
            })
            .collect();
        Self { rows: rows.len(), cols, field: field.clone(), data }
    }

    /// Parses `"1,2;3,4"`: rows separated by `;`, entries by `,`. Entries are
    /// constant expressions in the polynomial grammar, so `a/b` and extension
    /// elements such as `u+1` are accepted.
    pub fn parse(text: &str, field: &FieldSpec) -> Result<Self> {
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut offset = 0usize;
        for row_text in text.split(';') {
            let mut row = Vec::new();
            let mut inner = offset;
            for entry in row_text.split(',') {
                let c = crate::poly::parse::parse_constant(entry, field).map_err(|e| match e {
                    Error::Parse { position, message } => Error::Parse { position: position + inner, message },
                    other => other,
                })?;
                row.push(c);
                inner += entry.len() + 1;
            }
            offset += row_text.len() + 1;
            rows.push(row);
        }
        let cols = rows[0].len();
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!("ragged matrix: row of length {} in a {cols}-column matrix", bad.len())));
        }
        Self::from_rows(field, cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(v.field() == &self.field, "scalar field mismatch");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, field: self.field.clone(), data }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * other.cols + c;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        check_vector(&self.field, self.cols, v)?;
        Ok((0..self.rows)
            .map(|r| if self.cols == 0 { self.field.zero() } else { dot(self.row(r), v) })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("matrix sum of different shapes".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { data: vec_add(&self.data, &other.data), ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { data: vec_scale(c, &self.data), ..self.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| if r == c { self.get(r, c).is_one() } else { self.get(r, c).is_zero() }))
    }

    /// Reduced row echelon form, its rank and the pivot columns.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(sel) = (pr..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, sel);
            let inv = m.get(pr, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let idx = pr * m.cols + j;
                m.data[idx] = &m.data[idx] * &inv;
            }
            for r in 0..m.rows {
                if r == pr {
                    continue;
                }
                let f = m.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = &f * m.get(pr, j);
                    let idx = r * m.cols + j;
                    m.data[idx] = &m.data[idx] - &sub;
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pr, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("{}x{} matrix has no inverse", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.get(r, c).clone();
            }
            aug.data[r * 2 * n + n + r] = self.field.one();
        }
        let (red, _, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::RankDeficient);
        }
        let mut out = Matrix::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                out.data[r * n + c] = red.get(r, n + c).clone();
            }
        }
        Ok(out)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    /// Same text format accepted by [`Matrix::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(";")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        Ok(())
    }
}

/// Whether a subspace lives in `F^n` or in its dual `(F^n)*`. Dual vectors
/// are the coefficient rows of linear functionals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Primal,
    Dual,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Side::Primal => Side::Dual,
            Side::Dual => Side::Primal,
        }
    }
}

/// Subspace stored as the RREF of a basis, so equality is structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    n: usize,
    side: Side,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: &FieldSpec, n: usize, vectors: &[Vec<Scalar>], side: Side) -> Result<Self> {
        let m = Matrix::from_rows(field, n, vectors)?;
        Ok(Self::from_matrix_rows(&m, side))
    }

    /// Row space of `m`.
    pub fn from_matrix_rows(m: &Matrix, side: Side) -> Self {
        let (red, rank, pivots) = m.rref();
        let basis = Matrix { rows: rank, cols: m.cols, field: m.field.clone(), data: red.data[..rank * m.cols].to_vec() };
        Self { n: m.cols, side, basis, pivots }
    }

    pub fn zero(field: &FieldSpec, n: usize, side: Side) -> Self {
        Self { n, side, basis: Matrix::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: &FieldSpec, n: usize, side: Side) -> Self {
        Self { n, side, basis: Matrix::identity(field, n), pivots: (0..n).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn field(&self) -> &FieldSpec {
        &self.basis.field
    }

    /// Canonical basis as a `dim x n` RREF matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The annihilator, on the opposite side: `dim(self) + dim(result) = n`.
    pub fn annihilator(&self) -> Subspace {
        let field = self.field().clone();
        let free: Vec<usize> = (0..self.n).filter(|c| !self.pivots.contains(c)).collect();
        let vectors: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&f| {
                let mut v = unit_vector(&field, self.n, f);
                for (i, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.basis.get(i, f);
                }
                v
            })
            .collect();
        Subspace::span(&field, self.n, &vectors, self.side.flip()).expect("well-formed nullspace basis")
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        check_vector(self.field(), self.n, v)?;
        // Reduce v by the RREF rows; it lies in the span iff nothing is left.
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = r[p].clone();
            if !c.is_zero() {
                r = vec_sub(&r, &vec_scale(&c, self.basis.row(i)));
            }
        }
        Ok(r.iter().all(Scalar::is_zero))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        for v in other.basis_vectors() {
            if !self.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sum of two subspaces on the same side.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(self.field(), self.n, &vs, self.side)
    }

    /// Same subspace with the side marker replaced.
    pub fn with_side(&self, side: Side) -> Subspace {
        Subspace { side, ..self.clone() }
    }

    /// Number of elements, `q^dim`, or `None` over the rationals.
    pub fn cardinality(&self) -> Option<u128> {
        self.field().order().map(|q| u128::from(q).saturating_pow(self.dim() as u32))
    }

    /// Every element, in lexicographic order of coordinates on the basis.
    pub fn elements(&self, cap: u128) -> Result<Vec<Vec<Scalar>>> {
        let field = self.field().clone();
        let count = self.cardinality().ok_or(Error::InfiniteEnumeration)?;
        if count > cap {
            return Err(Error::CapExceeded { needed: count, cap });
        }
        let elems = field.elements()?;
        let basis = self.basis_vectors();
        let mut out = Vec::with_capacity(count as usize);
        for coords in Tuples::new(&elems, self.dim()) {
            let mut v = field.zeros(self.n);
            for (c, b) in coords.iter().zip(&basis) {
                if !c.is_zero() {
                    v = vec_add(&v, &vec_scale(c, b));
                }
            }
            out.push(v);
        }
        Ok(out)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.basis_vectors().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({})", join_scalars(r))?;
        }
        write!(f, "}}")
    }
}

pub fn join_scalars(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
    parts.join(",")
}

/// Iterator over all length-`len` tuples of `alphabet`, last coordinate
/// fastest.
pub struct Tuples<'a> {
    alphabet: &'a [Scalar],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Tuples<'a> {
    pub fn new(alphabet: &'a [Scalar], len: usize) -> Self {
        Self { alphabet, idx: vec![0; len], done: alphabet.is_empty() && len > 0 }
    }
}

impl Iterator for Tuples<'_> {
    type Item = Vec<Scalar>;

    fn next(&mut self) -> Option<Vec<Scalar>> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.alphabet[i].clone()).collect();
        let mut pos = self.idx.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.idx[pos] += 1;
            if self.idx[pos] < self.alphabet.len() {
                break;
            }
            self.idx[pos] = 0;
        }
        Some(out)
    }
}

/// Given independent functionals `l_1..l_d` on `F^n`, vectors `e_1..e_d` with
/// `l_i(e_j) = δ_ij`.
///
/// With `R = E L` the RREF of `L`, the system `L e = δ_j` becomes
/// `R e = E δ_j`; free coordinates are set to zero, so `e_j` carries column
/// `j` of `E` in the pivot positions.
pub fn dual_extend(field: &FieldSpec, n: usize, functionals: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let d = functionals.len();
    let mut aug = Matrix::zeros(field, d, n + d);
    for (i, l) in functionals.iter().enumerate() {
        check_vector(field, n, l)?;
        for (c, x) in l.iter().enumerate() {
            aug.data[i * (n + d) + c] = x.clone();
        }
        aug.data[i * (n + d) + n + i] = field.one();
    }
    let (red, _, pivots) = aug.rref();
    let lpivots: Vec<usize> = pivots.iter().copied().filter(|&p| p < n).collect();
    if lpivots.len() < d {
        return Err(Error::RankDeficient);
    }
    let mut out = Vec::with_capacity(d);
    for j in 0..d {
        let mut e = field.zeros(n);
        for (i, &p) in lpivots.iter().enumerate() {
            e[p] = red.get(i, n + j).clone();
        }
        out.push(e);
    }
    Ok(out)
}

/// Coordinates on `F^n / W` given by the non-pivot columns of `W`'s RREF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientContext {
    w: Subspace,
    free: Vec<usize>,
    pi: Matrix,
    iota: Matrix,
}

impl QuotientContext {
    pub fn new(w: &Subspace) -> Result<Self> {
        if w.side != Side::Primal {
            return Err(Error::Shape("quotient coordinates need a primal subspace".into()));
        }
        let field = w.field().clone();
        let n = w.n;
        let free: Vec<usize> = (0..n).filter(|c| !w.pivots.contains(c)).collect();
        let q = free.len();
        let mut pi = Matrix::zeros(&field, q, n);
        let mut iota = Matrix::zeros(&field, n, q);
        for (r, &f) in free.iter().enumerate() {
            pi.set(r, f, field.one());
            for (i, &p) in w.pivots.iter().enumerate() {
                pi.set(r, p, -w.basis.get(i, f));
            }
            iota.set(f, r, field.one());
        }
        Ok(Self { w: w.clone(), free, pi, iota })
    }

    pub fn subspace(&self) -> &Subspace {
        &self.w
    }

    /// Which ambient coordinates serve as quotient coordinates.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.w.n
    }

    /// The projection as a `(n - dim W) x n` matrix.
    pub fn pi(&self) -> &Matrix {
        &self.pi
    }

    /// The right inverse as an `n x (n - dim W)` matrix.
    pub fn iota(&self) -> &Matrix {
        &self.iota
    }

    pub fn project(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.pi.apply(x)
    }

    pub fn lift(&self, y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.iota.apply(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::galois(q).unwrap()
    }

    fn v(f: &FieldSpec, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let f = gf(5);
        let (_, rank, piv) = Matrix::from_i64(&f, &[&[1, 2], &[2, 4]]).rref();
        assert_eq!((rank, piv), (1, vec![0]));
        let q = FieldSpec::rationals();
        let i3 = Matrix::identity(&q, 3);
        assert_eq!(i3.rref(), (i3.clone(), 3, vec![0, 1, 2]));
        let (red, rank, _) = Matrix::from_i64(&q, &[&[1, 2], &[3, 4]]).rref();
        assert!(red.is_identity());
        assert_eq!(rank, 2);
    }

    #[test]
    fn span_examples() {
        let f = gf(5);
        let s = Subspace::span(&f, 2, &[v(&f, &[1, 1]), v(&f, &[2, 2])], Side::Primal).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis_vectors(), vec![v(&f, &[1, 1])]);
        assert_eq!(Subspace::span(&f, 2, &[], Side::Primal).unwrap().dim(), 0);
        let q = FieldSpec::rationals();
        let s = Subspace::span(&q, 2, &[v(&q, &[1, 0]), v(&q, &[1, 1])], Side::Primal).unwrap();
        assert_eq!(s, Subspace::full(&q, 2, Side::Primal));
        assert!(matches!(
            Subspace::span(&f, 2, &[v(&f, &[1, 1, 1])], Side::Primal),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn annihilator_examples() {
        let f = gf(7);
        let x1 = Subspace::span(&f, 2, &[v(&f, &[1, 0])], Side::Dual).unwrap();
        let ann = x1.annihilator();
        assert_eq!(ann.side(), Side::Primal);
        assert_eq!(ann.basis_vectors(), vec![v(&f, &[0, 1])]);
        assert_eq!(Subspace::zero(&f, 3, Side::Primal).annihilator(), Subspace::full(&f, 3, Side::Dual));
        let q = FieldSpec::rationals();
        let d = Subspace::span(&q, 2, &[v(&q, &[1, -1])], Side::Dual).unwrap();
        assert_eq!(d.annihilator().basis_vectors(), vec![v(&q, &[1, 1])]);
        assert_eq!(d.annihilator().annihilator(), d);
    }

    #[test]
    fn dual_extend_examples() {
        let f = gf(5);
        let e = dual_extend(&f, 2, &[v(&f, &[1, 0]), v(&f, &[0, 1])]).unwrap();
        assert_eq!(e, vec![v(&f, &[1, 0]), v(&f, &[0, 1])]);
        let e = dual_extend(&f, 2, &[v(&f, &[1, 1])]).unwrap();
        assert_eq!(e, vec![v(&f, &[1, 0])]);
        let ls = [v(&f, &[1, 0, 0]), v(&f, &[1, 1, 0])];
        let e = dual_extend(&f, 3, &ls).unwrap();
        assert_eq!(e[0], v(&f, &[1, -1, 0]));
        for (i, l) in ls.iter().enumerate() {
            for (j, ej) in e.iter().enumerate() {
                assert_eq!(dot(l, ej), if i == j { f.one() } else { f.zero() });
            }
        }
        assert!(matches!(dual_extend(&f, 2, &[v(&f, &[1, 1]), v(&f, &[2, 2])]), Err(Error::RankDeficient)));
    }

    #[test]
    fn quotient_examples() {
        let f = gf(5);
        let q0 = QuotientContext::new(&Subspace::zero(&f, 2, Side::Primal)).unwrap();
        assert!(q0.pi().is_identity() && q0.iota().is_identity());

        let w = Subspace::span(&f, 2, &[v(&f, &[1, 1])], Side::Primal).unwrap();
        let q1 = QuotientContext::new(&w).unwrap();
        assert_eq!(q1.dim(), 1);
        assert!(q1.pi().mul(q1.iota()).unwrap().is_identity());
        assert!(q1.project(&v(&f, &[1, 1])).unwrap().iter().all(Scalar::is_zero));

        let qf = QuotientContext::new(&Subspace::full(&f, 3, Side::Primal)).unwrap();
        assert_eq!((qf.pi().rows(), qf.pi().cols()), (0, 3));
        assert_eq!(qf.project(&v(&f, &[1, 2, 3])).unwrap(), Vec::<Scalar>::new());
    }

    #[test]
    fn inverse_and_parse() {
        let f = gf(7);
        let m = Matrix::parse("1,2;3,4", &f).unwrap();
        assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
        assert!(Matrix::parse("1,2;2,4", &f).unwrap().inverse().is_err());
        assert_eq!(m.to_string(), "1,2;3,4");
        let q = FieldSpec::rationals();
        assert_eq!(Matrix::parse("1/2,0;0,-3", &q).unwrap().get(0, 0).to_string(), "1/2");
        assert!(Matrix::parse("1,2;3", &q).is_err());
        let g4 = gf(4);
        assert_eq!(Matrix::parse("u+1,1", &g4).unwrap().get(0, 0).to_string(), "u+1");
    }

    #[test]
    fn elements_of_subspace() {
        let f = gf(3);
        let s = Subspace::span(&f, 3, &[v(&f, &[1, 1, 0]), v(&f, &[0, 0, 1])], Side::Primal).unwrap();
        let es = s.elements(100).unwrap();
        assert_eq!(es.len(), 9);
        assert!(es.iter().all(|e| s.contains(e).unwrap()));
        assert!(matches!(s.elements(8), Err(Error::CapExceeded { .. })));
    }
}
