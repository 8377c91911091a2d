//! The Cullis determinant of `n x k` matrices (`n >= k`),
//!
//! `det_{n,k}(X) = Σ_{i_1 < ... < i_k} (-1)^{i_1 + ... + i_k - k(k+1)/2} det X[i_1..i_k | ]`,
//!
//! with shift maps, the space `W_{n,k}` of matrices with all rows equal,
//! the column binomial expansion and the `(A, B)` sign condition.
//!
//! Row and column indices in this module are 1-based, as in matrix
//! notation. An `n x k` matrix is identified with a vector of `F^{nk}` by
//! row-major flattening: entry `(r, c)` is coordinate `(r - 1) k + (c - 1)`,
//! so the polynomial variables are `x_{1,1}, ..., x_{1,k}, x_{2,1}, ...`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{unit_vector, Matrix, Side, Subspace};
use crate::poly::{Monomial, MultiPoly, UniPoly};

/// Parity of `n + k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl core::fmt::Display for Parity {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Which 0/1 pattern to place next to the free first column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalForm {
    /// Gives `det = x_1` when `n + k` is even and `n >= k + 2`.
    Even,
    /// Gives `det = (-1)^{k-1} (x_1 - x_2)` when `n + k` is odd.
    Odd,
}

/// Above this `k` the determinant is evaluated by memoized Laplace
/// expansion rather than by summing all minors.
const DEFINITION_SUM_MAX_K: usize = 3;

#[derive(Clone, Debug)]
pub struct CullisContext {
    n: usize,
    k: usize,
    field: FieldSpec,
    sign_fault: bool,
}

/// The subspace `W_{n,k}` of `F^{nk}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSpace {
    pub subspace: Subspace,
}

fn sign(field: &FieldSpec, odd: bool) -> Scalar {
    if odd {
        -field.one()
    } else {
        field.one()
    }
}

/// All increasing `k`-subsets of `0..n`, lexicographically.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return out;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Classical determinant by elimination.
pub fn square_det(m: &Matrix) -> Result<Scalar> {
    if m.rows() != m.cols() {
        return Err(Error::Shape(format!("{}x{} matrix is not square", m.rows(), m.cols())));
    }
    let field = m.field().clone();
    let n = m.rows();
    let mut a: Vec<Vec<Scalar>> = m.row_vecs();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Ok(field.zero());
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inv()?;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            let pivot_row = a[c].clone();
            for (x, p) in a[r][c..].iter_mut().zip(&pivot_row[c..]) {
                *x = &*x - &(&f * p);
            }
        }
    }
    Ok(det)
}

impl CullisContext {
    pub fn new(n: usize, k: usize, field: &FieldSpec) -> Result<Self> {
        if k == 0 || n < k {
            return Err(Error::Shape(format!("Cullis determinant needs n >= k >= 1, got n = {n}, k = {k}")));
        }
        if n > 63 {
            return Err(Error::Shape("n is limited to 63 rows".into()));
        }
        Ok(Self { n, k, field: field.clone(), sign_fault: false })
    }

    /// Test hook: drop the alternating sign from the minor sum. Used to check
    /// that the acceptance suite notices a broken sign convention.
    #[doc(hidden)]
    pub fn with_sign_fault(mut self, on: bool) -> Self {
        self.sign_fault = on;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.n * self.k
    }

    pub fn parity(&self) -> Parity {
        if (self.n + self.k).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Flattened coordinate of entry `(r, c)`, both 1-based.
    pub fn index(&self, r: usize, c: usize) -> usize {
        (r - 1) * self.k + (c - 1)
    }

    pub fn flatten(&self, x: &Matrix) -> Result<Vec<Scalar>> {
        self.check_shape(x)?;
        Ok(x.data().to_vec())
    }

    pub fn unflatten(&self, v: &[Scalar]) -> Result<Matrix> {
        Matrix::new(&self.field, self.n, self.k, v.to_vec())
    }

    fn check_shape(&self, x: &Matrix) -> Result<()> {
        if x.rows() != self.n || x.cols() != self.k {
            return Err(Error::Shape(format!(
                "expected a {}x{} matrix, got {}x{}",
                self.n,
                self.k,
                x.rows(),
                x.cols()
            )));
        }
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// `(-1)^{i_1 + ... + i_k - k(k+1)/2}` for a 0-based selection.
    fn selection_sign(&self, rows: &[usize]) -> Scalar {
        if self.sign_fault {
            return self.field.one();
        }
        let s: usize = rows.iter().sum::<usize>(); // 0-based sum = 1-based sum - k
        let k = rows.len();
        sign(&self.field, (s + k - k * (k + 1) / 2) % 2 == 1)
    }

    /// `det_{n,k}(X)`.
    pub fn det(&self, x: &Matrix) -> Result<Scalar> {
        self.check_shape(x)?;
        if self.k <= DEFINITION_SUM_MAX_K || self.sign_fault {
            self.det_definition(x)
        } else {
            Ok(self.det_memo(x))
        }
    }

    /// The signed sum of all maximal minors.
    pub fn det_definition(&self, x: &Matrix) -> Result<Scalar> {
        self.check_shape(x)?;
        let mut acc = self.field.zero();
        for rows in combinations(self.n, self.k) {
            let sub: Vec<Vec<Scalar>> = rows.iter().map(|&r| x.row(r).to_vec()).collect();
            let minor = square_det(&Matrix::from_rows(&self.field, self.k, &sub)?)?;
            if !minor.is_zero() {
                acc = &acc + &(&self.selection_sign(&rows) * &minor);
            }
        }
        Ok(acc)
    }

    /// Laplace expansion along the leftmost remaining column, memoized on
    /// the set of rows already used.
    pub fn det_memo(&self, x: &Matrix) -> Scalar {
        let mut memo: BTreeMap<u64, Scalar> = BTreeMap::new();
        self.memo_rec(x, 0, &mut memo)
    }

    fn memo_rec(&self, x: &Matrix, used: u64, memo: &mut BTreeMap<u64, Scalar>) -> Scalar {
        let col = used.count_ones() as usize;
        if col == self.k {
            return self.field.one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = self.field.zero();
        let mut pos = 0usize;
        for r in 0..self.n {
            if used & (1 << r) != 0 {
                continue;
            }
            let e = x.get(r, col);
            if !e.is_zero() {
                let rest = self.memo_rec(x, used | (1 << r), memo);
                let term = e * &rest;
                acc = if pos.is_multiple_of(2) { &acc + &term } else { &acc - &term };
            }
            pos += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }

    /// `Σ_i (-1)^{i+col} x_{i,col} det_{n-1,k-1}(X(i|col))` for a 1-based
    /// column `col`.
    pub fn laplace(&self, x: &Matrix, col: usize) -> Result<Scalar> {
        self.check_shape(x)?;
        if col == 0 || col > self.k {
            return Err(Error::IndexOutOfRange { index: col, len: self.k + 1 });
        }
        let c0 = col - 1;
        let mut acc = self.field.zero();
        for r in 0..self.n {
            let e = x.get(r, c0);
            if e.is_zero() {
                continue;
            }
            let minor = if self.k == 1 {
                self.field.one()
            } else {
                let rows: Vec<Vec<Scalar>> = (0..self.n)
                    .filter(|&i| i != r)
                    .map(|i| (0..self.k).filter(|&j| j != c0).map(|j| x.get(i, j).clone()).collect())
                    .collect();
                let sub_ctx = CullisContext::new(self.n - 1, self.k - 1, &self.field)?.with_sign_fault(self.sign_fault);
                sub_ctx.det(&Matrix::from_rows(&self.field, self.k - 1, &rows)?)?
            };
            let term = e * &minor;
            acc = if (r + c0).is_multiple_of(2) { &acc + &term } else { &acc - &term };
        }
        Ok(acc)
    }

    /// `det_{n,k}` as a polynomial in the `nk` row-major variables.
    pub fn as_poly(&self) -> MultiPoly {
        let nv = self.nvars();
        let mut p = MultiPoly::zero(&self.field, nv);
        let perms = permutations(self.k);
        for rows in combinations(self.n, self.k) {
            let s = self.selection_sign(&rows);
            for (perm, odd) in &perms {
                let mut e = vec![0u32; nv];
                for (slot, &r) in rows.iter().enumerate() {
                    e[r * self.k + perm[slot]] = 1;
                }
                let c = if *odd { -&s } else { s.clone() };
                p.add_term(Monomial(e), c);
            }
        }
        p
    }

    /// The shift map `S_{i,j}` of the given parity as an `nk x nk` matrix on
    /// flattened vectors; `i`, `j` are 1-based.
    pub fn shift_map(&self, parity: Parity, i: usize, j: usize) -> Result<Matrix> {
        if parity != self.parity() {
            return Err(Error::HypothesisViolated(format!(
                "{parity} shift map requested but n + k = {} is {}",
                self.n + self.k,
                self.parity()
            )));
        }
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, len: self.n + 1 });
        }
        if j == 0 || j > self.k {
            return Err(Error::IndexOutOfRange { index: j, len: self.k + 1 });
        }
        let nv = self.nvars();
        let mut m = Matrix::zeros(&self.field, nv, nv);
        for c in 0..nv {
            let x = self.unflatten(&unit_vector(&self.field, nv, c))?;
            let image = self.apply_shift(parity, i, j, &x);
            for (r, v) in image.data().iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        Ok(m)
    }

    /// The operation sequence defining `S_{i,j}`, applied to a matrix.
    pub fn apply_shift(&self, parity: Parity, i: usize, j: usize, x: &Matrix) -> Matrix {
        let (n, k) = (self.n, self.k);
        let f = &self.field;
        // Row cycle: row i goes to row 1.
        let mut rows: Vec<Vec<Scalar>> = (0..n).map(|r| x.row((i - 1 + r) % n).to_vec()).collect();
        if parity == Parity::Even {
            for row in rows.iter_mut().skip(n - (i - 1)) {
                for e in row.iter_mut() {
                    *e = -&*e;
                }
            }
        }
        for row in rows.iter_mut() {
            row.swap(0, j - 1);
            if j != 1 {
                row[0] = -&row[0];
            }
        }
        let global_odd = match parity {
            Parity::Even => (n - i) % 2 == 1,
            Parity::Odd => (i + 1) % 2 == 1,
        };
        if global_odd {
            for row in rows.iter_mut() {
                for e in row.iter_mut() {
                    *e = -&*e;
                }
            }
        }
        Matrix::from_rows(f, k, &rows).expect("shape preserved")
    }

    /// `det(A + tB)` as a polynomial in `t`, from the column expansion: the
    /// coefficient of `t^d` sums `det` over all ways of taking `d` columns
    /// from `B` and the rest from `A`.
    pub fn binom_expansion(&self, a: &Matrix, b: &Matrix) -> Result<UniPoly> {
        self.check_shape(a)?;
        self.check_shape(b)?;
        let mut coeffs = self.field.zeros(self.k + 1);
        for mask in 0u32..(1 << self.k) {
            let mut mixed = a.clone();
            for c in 0..self.k {
                if mask & (1 << c) != 0 {
                    for r in 0..self.n {
                        mixed.set(r, c, b.get(r, c).clone());
                    }
                }
            }
            let d = mask.count_ones() as usize;
            coeffs[d] = &coeffs[d] + &self.det(&mixed)?;
        }
        Ok(UniPoly::new(&self.field, coeffs))
    }

    /// Whether `det_{n,k}(A(|I]) det_k(B) = (-1)^{ΣI - k(k+1)/2}` for every
    /// increasing column selection `I`.
    pub fn ab_sign_condition(&self, a: &Matrix, b: &Matrix) -> Result<bool> {
        if a.rows() != self.n || a.cols() != self.n || b.rows() != self.k || b.cols() != self.k {
            return Err(Error::Shape(format!("expected A {0}x{0} and B {1}x{1}", self.n, self.k)));
        }
        let det_b = square_det(b)?;
        for cols in combinations(self.n, self.k) {
            let rows: Vec<Vec<Scalar>> =
                (0..self.n).map(|r| cols.iter().map(|&c| a.get(r, c).clone()).collect()).collect();
            let sel = Matrix::from_rows(&self.field, self.k, &rows)?;
            let lhs = &self.det(&sel)? * &det_b;
            let s: usize = cols.iter().sum();
            let k = self.k;
            if lhs != sign(&self.field, (s + k - k * (k + 1) / 2) % 2 == 1) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The `nk x nk` matrix of `X ↦ A X B` on flattened coordinates.
    pub fn two_sided_map(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        if a.rows() != self.n || a.cols() != self.n || b.rows() != self.k || b.cols() != self.k {
            return Err(Error::Shape(format!("expected A {0}x{0} and B {1}x{1}", self.n, self.k)));
        }
        let nv = self.nvars();
        let mut m = Matrix::zeros(&self.field, nv, nv);
        for r in 0..self.n {
            for c in 0..self.k {
                for i in 0..self.n {
                    for j in 0..self.k {
                        m.set(r * self.k + c, i * self.k + j, a.get(r, i) * b.get(j, c));
                    }
                }
            }
        }
        Ok(m)
    }

    /// `W_{n,k}`: the `k` matrices with one all-ones column span it.
    pub fn wnk(&self) -> WSpace {
        let nv = self.nvars();
        let vectors: Vec<Vec<Scalar>> = (0..self.k)
            .map(|c| {
                let mut v = self.field.zeros(nv);
                for r in 0..self.n {
                    v[r * self.k + c] = self.field.one();
                }
                v
            })
            .collect();
        WSpace { subspace: Subspace::span(&self.field, nv, &vectors, Side::Primal).expect("well-formed") }
    }

    /// The matrix whose first column is `x` and whose remaining columns
    /// carry the 0/1 pattern of `form`.
    pub fn normal_form(&self, form: NormalForm, x: &[Scalar]) -> Result<Matrix> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        let mut m = self.normal_form_witness(form);
        for (r, v) in x.iter().enumerate() {
            m.set(r, 0, v.clone());
        }
        Ok(m)
    }

    /// The pattern alone (first column zero). Its gradient functional is
    /// `x_{1,1}` for the even form and `(-1)^{k-1}(x_{1,1} - x_{2,1})` for the
    /// odd one.
    pub fn normal_form_witness(&self, form: NormalForm) -> Matrix {
        let (n, k) = (self.n, self.k);
        let one = self.field.one();
        let mut m = Matrix::zeros(&self.field, n, k);
        if k == 1 {
            return m;
        }
        match form {
            NormalForm::Even => {
                for r in 2..k {
                    m.set(r - 1, r - 1, one.clone());
                }
                for r in 2..=n {
                    m.set(r - 1, k - 1, one.clone());
                }
            }
            NormalForm::Odd => {
                for r in 3..=k.min(n) {
                    m.set(r - 1, r - 2, one.clone());
                }
                for r in 3..=n {
                    m.set(r - 1, k - 1, one.clone());
                }
            }
        }
        m
    }
}

/// All permutations of `0..k` with their parity (true = odd).
fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(cur: &mut Vec<usize>, left: &mut Vec<usize>, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if left.is_empty() {
            out.push((cur.clone(), odd));
            return;
        }
        for idx in 0..left.len() {
            let v = left.remove(idx);
            cur.push(v);
            // Picking the idx-th smallest remaining element adds idx inversions.
            rec(cur, left, odd ^ (idx % 2 == 1), out);
            cur.pop();
            left.insert(idx, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..k).collect(), false, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Degree;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::galois(q).unwrap()
    }

    fn random_matrix(f: &FieldSpec, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix {
        Matrix::new(f, r, c, f.random_vector(r * c, rng)).unwrap()
    }

    #[test]
    fn k1_is_alternating_sum() {
        let q = FieldSpec::rationals();
        let ctx = CullisContext::new(2, 1, &q).unwrap();
        let x = Matrix::from_i64(&q, &[&[7], &[3]]);
        assert_eq!(ctx.det(&x).unwrap(), q.from_i64(4));
        let ctx = CullisContext::new(4, 1, &q).unwrap();
        let x = Matrix::from_i64(&q, &[&[1], &[2], &[3], &[5]]);
        assert_eq!(ctx.det(&x).unwrap(), q.from_i64(1 - 2 + 3 - 5));
        assert_eq!(ctx.laplace(&x, 1).unwrap(), q.from_i64(-3));
    }

    #[test]
    fn routes_agree() {
        let f = gf(7);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (n, k) in [(5, 3), (6, 4), (7, 5), (4, 4)] {
            let ctx = CullisContext::new(n, k, &f).unwrap();
            let poly = ctx.as_poly();
            for _ in 0..10 {
                let x = random_matrix(&f, n, k, &mut rng);
                let d = ctx.det_definition(&x).unwrap();
                assert_eq!(ctx.det_memo(&x), d);
                assert_eq!(poly.evaluate(x.data()).unwrap(), d);
                for col in 1..=k {
                    assert_eq!(ctx.laplace(&x, col).unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn poly_structure() {
        let f = gf(7);
        let ctx = CullisContext::new(5, 3, &f).unwrap();
        let p = ctx.as_poly();
        assert_eq!(p.num_terms(), 10 * 6);
        assert_eq!(p.degree(), Degree::Finite(3));
        assert!(p.is_homogeneous());
    }

    #[test]
    fn shift_maps_preserve_det() {
        let f = gf(7);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (n, k) in [(5, 3), (4, 3)] {
            let ctx = CullisContext::new(n, k, &f).unwrap();
            let par = ctx.parity();
            for i in 1..=n {
                for j in 1..=k {
                    let s = ctx.shift_map(par, i, j).unwrap();
                    assert!(s.is_invertible());
                    for _ in 0..5 {
                        let x = random_matrix(&f, n, k, &mut rng);
                        let y = ctx.unflatten(&s.apply(x.data()).unwrap()).unwrap();
                        assert_eq!(ctx.det(&y).unwrap(), ctx.det(&x).unwrap());
                    }
                }
            }
        }
        let ctx = CullisContext::new(5, 3, &f).unwrap();
        assert!(ctx.shift_map(Parity::Odd, 1, 1).is_err());
        assert!(ctx.shift_map(Parity::Even, 6, 1).is_err());
    }

    #[test]
    fn normal_forms() {
        let f = gf(7);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (n, k) in [(6, 4), (5, 3)] {
            let ctx = CullisContext::new(n, k, &f).unwrap();
            let x = f.random_vector(n, &mut rng);
            assert_eq!(ctx.det(&ctx.normal_form(NormalForm::Even, &x).unwrap()).unwrap(), x[0]);
        }
        let ctx = CullisContext::new(4, 3, &f).unwrap();
        let x = f.random_vector(4, &mut rng);
        let want = &x[0] - &x[1]; // (-1)^{k-1} = 1 for k = 3
        assert_eq!(ctx.det(&ctx.normal_form(NormalForm::Odd, &x).unwrap()).unwrap(), want);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 3).len(), 10);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(3).iter().filter(|p| p.1).count(), 3);
    }

    #[test]
    fn binomial_and_sign_condition() {
        let f = gf(5);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ctx = CullisContext::new(4, 3, &f).unwrap();
        let a = random_matrix(&f, 4, 3, &mut rng);
        let b = random_matrix(&f, 4, 3, &mut rng);
        let e = ctx.binom_expansion(&a, &b).unwrap();
        assert_eq!(e.coeff(0), ctx.det(&a).unwrap());
        assert_eq!(e.coeff(3), ctx.det(&b).unwrap());
        for l in f.elements().unwrap() {
            let ab = a.add(&b.scale(&l)).unwrap();
            assert_eq!(e.eval(&l), ctx.det(&ab).unwrap());
        }
        let ctx = CullisContext::new(5, 3, &f).unwrap();
        assert!(ctx.ab_sign_condition(&Matrix::identity(&f, 5), &Matrix::identity(&f, 3)).unwrap());
        let mut b = Matrix::identity(&f, 3);
        b.set(0, 0, -f.one());
        assert!(!ctx.ab_sign_condition(&Matrix::identity(&f, 5), &b).unwrap());
    }

    #[test]
    fn w_space() {
        let f = gf(5);
        let ctx = CullisContext::new(4, 3, &f).unwrap();
        assert_eq!(ctx.wnk().subspace.dim(), 3);
    }
}
