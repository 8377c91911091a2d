//! Slow reference computations that share no code path with the core
//! algorithms they are compared against.

use lpreserve_core::linalg::{Side, Subspace, Tuples};
use lpreserve_core::{FieldSpec, Matrix, MultiPoly, Result, Scalar};

fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    if k == 0 {
        return vec![(vec![], false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(k - 1) {
        // Inserting k-1 at position `pos` adds (k-1-pos) inversions.
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push((q, odd ^ ((k - 1 - pos) % 2 == 1)));
        }
    }
    out
}

/// The classical determinant as a signed sum over permutations.
pub fn leibniz_det(m: &Matrix) -> Scalar {
    assert_eq!(m.rows(), m.cols(), "square matrix expected");
    let f = m.field();
    let mut acc = f.zero();
    for (p, odd) in permutations(m.rows()) {
        let mut term = f.one();
        for (r, &c) in p.iter().enumerate() {
            term = &term * m.get(r, c);
        }
        acc = if odd { &acc - &term } else { &acc + &term };
    }
    acc
}

/// Rows packed as bitmasks, so the selection sign is read off the bits.
fn row_selections(n: usize, k: usize) -> Vec<u64> {
    (0u64..(1 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

/// `Σ_I (-1)^{ΣI - k(k+1)/2} det X[I|]` with 1-based row indices, each minor
/// by permutations.
pub fn cullis_det(x: &Matrix) -> Scalar {
    let (n, k) = (x.rows(), x.cols());
    let f = x.field();
    let mut acc = f.zero();
    for mask in row_selections(n, k) {
        let rows: Vec<usize> = (0..n).filter(|r| mask >> r & 1 == 1).collect();
        let index_sum: usize = rows.iter().map(|r| r + 1).sum();
        let minor = Matrix::from_rows(f, k, &rows.iter().map(|&r| x.row(r).to_vec()).collect::<Vec<_>>()).expect("shape");
        let d = leibniz_det(&minor);
        acc = if (index_sum + k * (k + 1) / 2) % 2 == 1 { &acc - &d } else { &acc + &d };
    }
    acc
}

/// Lagrange interpolation through `(t_i, y_i)`, returning the coefficient
/// of `t`.
fn linear_coefficient(ts: &[Scalar], ys: &[Scalar]) -> Scalar {
    let f = ts[0].field().clone();
    // Coefficients of Π_{j≠i} (t - t_j) / (t_i - t_j), accumulated in full.
    let mut out = vec![f.zero(); ts.len()];
    for (i, (ti, yi)) in ts.iter().zip(ys).enumerate() {
        let mut basis = vec![f.one()];
        let mut denom = f.one();
        for (j, tj) in ts.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![f.zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] = &next[d + 1] + c;
                next[d] = &next[d] - &(c * tj);
            }
            basis = next;
            denom = &denom * &(ti - tj);
        }
        let scale = yi * &denom.inv().expect("distinct nodes");
        for (d, c) in basis.iter().enumerate() {
            out[d] = &out[d] + &(c * &scale);
        }
    }
    out.get(1).cloned().unwrap_or_else(|| f.zero())
}

/// Interpolation nodes `0, 1, ..., deg`: over `GF(q)` they are distinct
/// whenever `deg < q`.
fn nodes(field: &FieldSpec, deg: usize) -> Vec<Scalar> {
    match field.elements() {
        Ok(all) => all.into_iter().take(deg + 1).collect(),
        Err(_) => (0..=deg as i64).map(|i| field.from_i64(i)).collect(),
    }
}

/// The gradient at `a` from values of `P` along coordinate lines, by
/// interpolating `t ↦ P(a + t e_i)`. Needs `deg P < |F|`.
pub fn interpolated_gradient(p: &MultiPoly, a: &[Scalar]) -> Result<Vec<Scalar>> {
    let deg = p.degree().finite().unwrap_or(0) as usize;
    let ts = nodes(p.field(), deg.max(1));
    let mut grad = Vec::with_capacity(a.len());
    for i in 0..a.len() {
        let mut ys = Vec::with_capacity(ts.len());
        for t in &ts {
            let mut point = a.to_vec();
            point[i] = &point[i] + t;
            ys.push(p.evaluate(&point)?);
        }
        grad.push(linear_coefficient(&ts, &ys));
    }
    Ok(grad)
}

/// `L_P` from interpolated gradients at every point of `F^n`.
pub fn brute_lp(p: &MultiPoly) -> Result<Subspace> {
    let field = p.field();
    let elems = field.elements()?;
    let mut grads = Vec::new();
    for a in Tuples::new(&elems, p.nvars()) {
        grads.push(interpolated_gradient(p, &a)?);
    }
    Subspace::span(field, p.nvars(), &grads, Side::Dual)
}

/// `rad(P)` straight from the definition: every `w` with
/// `P(v + λw) = P(v)` for all `v`, `λ`.
pub fn brute_radical(p: &MultiPoly) -> Result<Subspace> {
    let field = p.field();
    let n = p.nvars();
    let elems = field.elements()?;
    let points: Vec<Vec<Scalar>> = Tuples::new(&elems, n).collect();
    let values: Vec<Scalar> = points.iter().map(|v| p.evaluate(v)).collect::<Result<_>>()?;
    let mut members = Vec::new();
    for w in &points {
        let mut ok = true;
        'outer: for (v, pv) in points.iter().zip(&values) {
            for l in &elems {
                let moved: Vec<Scalar> = v.iter().zip(w).map(|(a, b)| a + &(l * b)).collect();
                if &p.evaluate(&moved)? != pv {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            members.push(w.clone());
        }
    }
    Subspace::span(field, n, &members, Side::Primal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let f = FieldSpec::rationals();
        let m = Matrix::from_i64(&f, &[&[1, 2, 0], &[3, 4, 1], &[0, 5, 6]]);
        assert_eq!(leibniz_det(&m), f.from_i64(24 - 5 - 2 * 18));
        let col = Matrix::from_i64(&f, &[&[1], &[2], &[4]]);
        assert_eq!(cullis_det(&col), f.from_i64(1 - 2 + 4));
        let g = FieldSpec::galois(5).unwrap();
        let p = MultiPoly::parse("x1^2*x2 + 3*x2", 2, &g).unwrap();
        let a = [g.from_i64(2), g.from_i64(3)];
        assert_eq!(interpolated_gradient(&p, &a).unwrap(), p.gradient(&a).unwrap());
        assert_eq!(brute_radical(&MultiPoly::parse("x1", 2, &g).unwrap()).unwrap().dim(), 1);
    }
}
