//! Fixed instances shared by the acceptance suite, the self-test and the
//! CLI tests.

use lpreserve_core::cullis::CullisContext;
use lpreserve_core::preserver::VectorMap;
use lpreserve_core::{Error, FieldSpec, Matrix, MultiPoly, Result};

/// `P = x1 (x2 + 1)` over `GF(5)` with `κ = 2`: `φ(x) = (x1/κ, κ x2 + κ - 1)`
/// and `ψ(x) = (x1/κ, κ x2)`.
pub fn inhomogeneous_pair() -> (MultiPoly, VectorMap, VectorMap) {
    let f = FieldSpec::prime(5).expect("5 is prime");
    let p = MultiPoly::parse("x1*(x2 + 1)", 2, &f).expect("valid");
    let map = |a: &str, b: &str| {
        VectorMap::poly(vec![MultiPoly::parse(a, 2, &f).expect("valid"), MultiPoly::parse(b, 2, &f).expect("valid")])
            .expect("2 coordinates")
    };
    (p, map("3*x1", "2*x2 + 1"), map("3*x1", "2*x2"))
}

/// `det_{n,k}` together with a pair `φ = T + η₁`, `ψ = T + η₂`, where
/// `T(X) = A X B + ω(X)` for a linear `ω` into `W_{n,k}` and `η₁ ≠ η₂` are
/// nonlinear maps into `W_{n,k}`.
pub struct CullisPair {
    pub ctx: CullisContext,
    pub p: MultiPoly,
    pub t: Matrix,
    pub phi: VectorMap,
    pub psi: VectorMap,
}

/// Each map sends `X` to the matrix with every row equal to
/// `(s_1(X), ..., s_k(X))`; `s` is given per column as polynomial text in the
/// flattened variables.
fn row_repeat(ctx: &CullisContext, s: &[&str]) -> Result<Vec<MultiPoly>> {
    let f = ctx.field();
    let nv = ctx.nvars();
    let cols = s.iter().map(|t| MultiPoly::parse(t, nv, f)).collect::<Result<Vec<_>>>()?;
    Ok((0..ctx.n()).flat_map(|_| cols.iter().cloned()).collect())
}

/// The `n x 3` instance (`n >= 4`) with `A = I`, `B = I`. In flattened
/// variables `x_{r,c}` is `x{3(r-1)+c}`.
pub fn cullis_odd_pair(ctx: CullisContext) -> Result<CullisPair> {
    if ctx.k() != 3 || ctx.n() < 4 {
        return Err(Error::Shape(format!("instance needs k = 3 and n >= 4, got {}x{}", ctx.n(), ctx.k())));
    }
    let f = ctx.field().clone();
    let nv = ctx.nvars();
    let a = Matrix::identity(&f, ctx.n());
    let b = Matrix::identity(&f, ctx.k());
    let base = ctx.two_sided_map(&a, &b)?;
    // ω(X) rows: (x_{1,1} + 2 x_{2,3}, 0, 3 x_{4,2}).
    let omega = row_repeat(&ctx, &["x1 + 2*x6", "0", "3*x11"])?;
    let eta1 = row_repeat(&ctx, &["x2^2", "x1*x8", "0"])?;
    let eta2 = row_repeat(&ctx, &["0", "x4*x12 - x3^2", "2*x5*x10"])?;
    let mut t = base;
    for (row, w) in omega.iter().enumerate() {
        for (mono, c) in w.terms() {
            let col = mono.exponents().iter().position(|&e| e == 1).expect("linear");
            t.set(row, col, t.get(row, col) + c);
        }
    }
    let tmap = VectorMap::linear(t.clone())?;
    let phi = tmap.sum(&VectorMap::poly(eta1)?)?;
    let psi = tmap.sum(&VectorMap::poly(eta2)?)?;
    debug_assert_eq!(phi.dim(), nv);
    Ok(CullisPair { p: ctx.as_poly(), ctx, t, phi, psi })
}
