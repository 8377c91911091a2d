use lpreserve_core::cullis::CullisContext;
use lpreserve_core::gradspace::{lp_sampled, lp_symbolic};
use lpreserve_core::linalg::{vec_add, vec_scale, Matrix, Side, Subspace, Tuples};
use lpreserve_core::preserver::{check_pair, preserves, CheckMode, VectorMap};
use lpreserve_core::radical::rad_compute;
use lpreserve_core::{FieldSpec, MultiPoly, Scalar};
use proptest::prelude::*;

fn gf(q: u64) -> FieldSpec {
    FieldSpec::galois(q).unwrap()
}

/// Rank as the largest size of a nonvanishing minor, each minor expanded by
/// permutations.
fn naive_rank(m: &Matrix) -> usize {
    fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = choose(n - 1, k);
        for mut c in choose(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }
    fn leibniz(m: &Matrix, rows: &[usize], cols: &[usize]) -> Scalar {
        fn perms(k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(k - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, k - 1);
                    out.push(q);
                }
            }
            out
        }
        let f = m.field();
        let mut acc = f.zero();
        for p in perms(rows.len()) {
            let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut term = f.one();
            for (i, &r) in rows.iter().enumerate() {
                term = &term * m.get(r, cols[p[i]]);
            }
            acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    let top = m.rows().min(m.cols());
    (1..=top)
        .rev()
        .find(|&k| choose(m.rows(), k).iter().any(|r| choose(m.cols(), k).iter().any(|c| !leibniz(m, r, c).is_zero())))
        .unwrap_or(0)
}

fn matrix_strategy(q: u64, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0..q as i64, rows * cols).prop_map(move |v| {
        let f = gf(q);
        Matrix::new(&f, rows, cols, v.into_iter().map(|x| f.from_i64(x)).collect()).unwrap()
    })
}

/// Random polynomials in `nvars` variables with total degree at most `deg`.
fn poly_strategy(q: u64, nvars: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=deg, nvars), 0..q as i64), 0..=max_terms).prop_map(move |terms| {
        let f = gf(q);
        let terms: Vec<(Vec<u32>, Scalar)> = terms
            .into_iter()
            .filter(|(e, _)| e.iter().sum::<u32>() <= deg)
            .map(|(e, c)| (e, f.from_i64(c)))
            .collect();
        MultiPoly::from_terms(&f, nvars, terms).unwrap()
    })
}

fn vector_strategy(q: u64, n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(0..q as i64, n).prop_map(move |v| {
        let f = gf(q);
        v.into_iter().map(|x| f.from_i64(x)).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_minor_oracle(m in matrix_strategy(7, 3, 4)) {
        prop_assert_eq!(m.rank(), naive_rank(&m));
        let (r, rank, pivots) = m.rref();
        prop_assert_eq!(pivots.len(), rank);
        prop_assert_eq!(r.rref().0, r);
    }

    #[test]
    fn double_annihilator_gf3(vs in prop::collection::vec(vector_strategy(3, 4), 0..4)) {
        let s = Subspace::span(&gf(3), 4, &vs, Side::Primal).unwrap();
        let ann = s.annihilator();
        prop_assert_eq!(ann.dim() + s.dim(), 4);
        prop_assert_eq!(ann.annihilator(), s);
    }

    #[test]
    fn restrict_line_agrees_with_evaluation(p in poly_strategy(7, 3, 4, 6), a in vector_strategy(7, 3), v in vector_strategy(7, 3), t in 0..7i64) {
        let f = gf(7);
        let t = f.from_i64(t);
        let line = p.restrict_line(&a, &v).unwrap();
        prop_assert_eq!(line.eval(&t), p.evaluate(&vec_add(&a, &vec_scale(&t, &v))).unwrap());
        let grad = p.gradient(&a).unwrap();
        let pairing = grad.iter().zip(&v).fold(f.zero(), |acc, (g, w)| &acc + &(g * w));
        prop_assert_eq!(line.derivative().eval(&f.zero()), pairing.clone());
        prop_assert_eq!(p.dir_derivative(&a, &v).unwrap(), pairing);
    }

    #[test]
    fn leibniz_rule(f in poly_strategy(5, 2, 3, 4), g in poly_strategy(5, 2, 3, 4), i in 0..2usize) {
        let lhs = (&f * &g).formal_partial(i).unwrap();
        let rhs = &(&f.formal_partial(i).unwrap() * &g) + &(&f * &g.formal_partial(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_print_fixed_point(p in poly_strategy(7, 3, 4, 6)) {
        let printed = p.to_string();
        let back = MultiPoly::parse(&printed, 3, &gf(7)).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn parse_print_fixed_point_extension(coeffs in prop::collection::vec(0..9u32, 4)) {
        let f = gf(9);
        let terms: Vec<(Vec<u32>, Scalar)> = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (vec![i as u32 % 3, i as u32 / 3], f.element(u64::from(c)).unwrap()))
            .collect();
        let p = MultiPoly::from_terms(&f, 2, terms).unwrap();
        prop_assert_eq!(MultiPoly::parse(&p.to_string(), 2, &f).unwrap(), p);
    }

    #[test]
    fn lp_routes_agree(p in poly_strategy(5, 3, 4, 5)) {
        let a = lp_symbolic(&p).unwrap();
        let b = lp_sampled(&p, 1_000).unwrap();
        prop_assert_eq!(&a.subspace, &b.subspace);
        prop_assert!(a.verify(&p).unwrap());
    }

    #[test]
    fn radical_inside_annihilator(p in poly_strategy(5, 3, 3, 5)) {
        let r = rad_compute(&p).unwrap();
        prop_assert!(r.conclusive);
        prop_assert!(r.annihilator.contains_subspace(&r.radical).unwrap());
        prop_assert!(r.lp.dim() + r.radical.dim() <= 3);
        prop_assert_eq!(r.dim_condition_holds, r.lp.dim() + r.radical.dim() == 3);
    }

    #[test]
    fn shift_maps_preserve_det(x in matrix_strategy(7, 5, 3), i in 1..=5usize, j in 1..=3usize) {
        let f = gf(7);
        for (n, k) in [(5, 3), (4, 3)] {
            let ctx = CullisContext::new(n, k, &f).unwrap();
            let x = Matrix::from_rows(&f, k, &x.row_vecs()[..n]).unwrap();
            let parity = ctx.parity();
            if i > n { continue; }
            let s = ctx.shift_map(parity, i, j).unwrap();
            prop_assert!(s.is_invertible());
            let y = ctx.unflatten(&s.apply(&ctx.flatten(&x).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(&y, &ctx.apply_shift(parity, i, j, &x));
            prop_assert_eq!(ctx.det(&y).unwrap(), ctx.det(&x).unwrap());
        }
    }

    #[test]
    fn preserver_pair_metamorphic(a in 1..5i64, b in 1..5i64, swap in any::<bool>()) {
        // x1*x2 over GF(5) is preserved by diag(a, 1/a) and by the swap.
        let f = gf(5);
        let p = MultiPoly::parse("x1*x2", 2, &f).unwrap();
        let diag = |c: i64| {
            let c = f.from_i64(c);
            let mut m = Matrix::identity(&f, 2);
            m.set(1, 1, c.inv().unwrap());
            m.set(0, 0, c);
            m
        };
        let mut l = diag(b);
        if swap {
            l = Matrix::from_i64(&f, &[&[0, 1], &[1, 0]]).mul(&l).unwrap();
        }
        prop_assert!(preserves(&p, &VectorMap::linear(l.clone()).unwrap(), CheckMode::Exhaustive).unwrap());
        let phi = VectorMap::linear(diag(a)).unwrap();
        prop_assert!(check_pair(&p, &phi, &phi, CheckMode::Exhaustive).unwrap().holds());
        let composed = phi.compose_linear(&l).unwrap();
        for mode in [CheckMode::Exhaustive, CheckMode::Symbolic] {
            let out = check_pair(&p, &composed, &composed, mode).unwrap();
            prop_assert!(out.holds());
            prop_assert!(preserves(&p, &composed, mode).unwrap());
        }
    }

    #[test]
    fn radical_perturbation(eta1 in poly_strategy(3, 3, 2, 4), eta2 in poly_strategy(3, 3, 2, 4)) {
        // rad((x1 - x2)^2 + x3^2) over GF(3) is spanned by (1, 1, 0).
        let f = gf(3);
        let p = MultiPoly::parse("(x1 - x2)^2 + x3^2", 3, &f).unwrap();
        let r = rad_compute(&p).unwrap();
        prop_assert_eq!(r.radical.basis_vectors(), vec![vec![f.one(), f.one(), f.zero()]]);
        let id = VectorMap::identity(&f, 3);
        let bump = |e: &MultiPoly| VectorMap::poly(vec![e.clone(), e.clone(), MultiPoly::zero(&f, 3)]).unwrap();
        let phi = id.sum(&bump(&eta1)).unwrap();
        let psi = id.sum(&bump(&eta2)).unwrap();
        for mode in [CheckMode::Exhaustive, CheckMode::Symbolic] {
            prop_assert!(check_pair(&p, &phi, &psi, mode).unwrap().holds());
            prop_assert!(preserves(&p, &phi, mode).unwrap());
        }
    }
}

#[test]
fn double_annihilator_exhaustive_small() {
    for (q, n) in [(2u64, 3usize), (3, 2)] {
        let f = gf(q);
        let elems = f.elements().unwrap();
        let vectors: Vec<Vec<Scalar>> = Tuples::new(&elems, n).collect();
        for a in &vectors {
            for b in &vectors {
                let s = Subspace::span(&f, n, &[a.clone(), b.clone()], Side::Primal).unwrap();
                assert_eq!(s.annihilator().annihilator(), s);
                let dual = s.with_side(Side::Dual);
                assert_eq!(dual.annihilator().annihilator(), dual);
            }
        }
    }
}

#[test]
fn holding_pairs_preserve() {
    let f = gf(5);
    let p = MultiPoly::parse("x1^2 + x2^2", 2, &f).unwrap();
    let elems = f.elements().unwrap();
    let mut holding = 0;
    for entries in Tuples::new(&elems, 4) {
        let m = Matrix::new(&f, 2, 2, entries).unwrap();
        let map = VectorMap::linear(m).unwrap();
        let out = check_pair(&p, &map, &map, CheckMode::Symbolic).unwrap();
        if out.holds() {
            holding += 1;
            assert!(preserves(&p, &map, CheckMode::Exhaustive).unwrap());
        }
    }
    // The orthogonal group of x1^2 + x2^2 over GF(5) has order 8.
    assert_eq!(holding, 8);
}
