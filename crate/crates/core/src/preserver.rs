//! The two-map condition `P(x + λy) = P(φ(x) + λψ(y))`, the linearised map
//! `ψ̃`, and extraction of the induced linear map `T_rad` on
//! `F^n / rad(P)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, PairWitness, Refusal, Result};
use crate::field::{FieldSpec, Scalar};
use crate::gradspace::{lp_symbolic_with, GradBasis, WitnessOptions};
use crate::linalg::{dual_extend, unit_vector, vec_add, vec_scale, Matrix, Tuples};
use crate::poly::{Homogeneity, MultiPoly, ZeroVerdict};
use crate::radical::{rad_compute_with, RadicalOptions, RadicalReport};

/// Random probes used to test linearity of a table map that is too large to
/// check exhaustively.
const LINEARITY_PROBES: usize = 256;

/// A map `F^n -> F^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapForm {
    /// Outputs for every input, indexed in [`Tuples`] order.
    Table(Vec<Vec<Scalar>>),
    /// One polynomial in `x1..xn` per output coordinate.
    Poly(Vec<MultiPoly>),
    /// `x ↦ M x`.
    Linear(Matrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorMap {
    n: usize,
    field: FieldSpec,
    form: MapForm,
}

fn point_index(x: &[Scalar]) -> usize {
    let q = x[0].field().order().expect("finite field") as usize;
    x.iter().fold(0usize, |acc, c| acc * q + c.index().expect("finite element") as usize)
}

/// `Σ_c M[r][c] f_c` per row `r`.
fn combine(m: &Matrix, polys: &[MultiPoly], field: &FieldSpec, nvars: usize) -> Vec<MultiPoly> {
    (0..m.rows())
        .map(|r| {
            let mut acc = MultiPoly::zero(field, nvars);
            for (c, f) in polys.iter().enumerate() {
                let a = m.get(r, c);
                if !a.is_zero() {
                    acc = &acc + &f.scale(a);
                }
            }
            acc
        })
        .collect()
}

fn linear_polys(m: &Matrix) -> Vec<MultiPoly> {
    (0..m.rows()).map(|r| MultiPoly::linear_form(m.field(), m.row(r))).collect()
}

fn all_zero_functions(polys: &[MultiPoly]) -> bool {
    polys.iter().all(|p| p.is_zero_function(crate::DEFAULT_EVAL_CAP).verdict == ZeroVerdict::Zero)
}

impl VectorMap {
    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        Self::linear(Matrix::identity(field, n)).expect("square")
    }

    pub fn linear(m: Matrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::Shape(format!("linear map needs a square matrix, got {}x{}", m.rows(), m.cols())));
        }
        Ok(Self { n: m.rows(), field: m.field().clone(), form: MapForm::Linear(m) })
    }

    pub fn poly(polys: Vec<MultiPoly>) -> Result<Self> {
        let n = polys.len();
        let field = polys.first().ok_or_else(|| Error::Shape("empty polynomial map".into()))?.field().clone();
        for p in &polys {
            if p.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.nvars() });
            }
            if p.field() != &field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Self { n, field, form: MapForm::Poly(polys) })
    }

    /// A lookup table from explicit `(input, output)` rows; every input of
    /// `F^n` must appear exactly once.
    pub fn table(field: &FieldSpec, n: usize, rows: &[(Vec<Scalar>, Vec<Scalar>)]) -> Result<Self> {
        let q = field.order().ok_or(Error::InfiniteEnumeration)?;
        let size = u128::from(q).checked_pow(n as u32).unwrap_or(u128::MAX);
        if size > crate::DEFAULT_EVAL_CAP {
            return Err(Error::CapExceeded { needed: size, cap: crate::DEFAULT_EVAL_CAP });
        }
        let mut out: Vec<Option<Vec<Scalar>>> = alloc::vec![None; size as usize];
        for (x, y) in rows {
            for v in [x, y] {
                if v.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: v.len() });
                }
                if v.iter().any(|c| c.field() != field) {
                    return Err(Error::FieldMismatch);
                }
            }
            let slot = &mut out[point_index(x)];
            if slot.is_some() {
                return Err(Error::Shape(format!("table lists input ({}) twice", crate::linalg::join_scalars(x))));
            }
            *slot = Some(y.clone());
        }
        let filled: Option<Vec<Vec<Scalar>>> = out.into_iter().collect();
        let table = filled.ok_or_else(|| Error::Shape(format!("table must list all {size} inputs")))?;
        Ok(Self { n, field: field.clone(), form: MapForm::Table(table) })
    }

    /// Tabulates `self` over all of `F^n`.
    pub fn to_table(&self) -> Result<VectorMap> {
        let elems = self.field.elements()?;
        let q = elems.len() as u128;
        let size = q.checked_pow(self.n as u32).unwrap_or(u128::MAX);
        if size > crate::DEFAULT_EVAL_CAP {
            return Err(Error::CapExceeded { needed: size, cap: crate::DEFAULT_EVAL_CAP });
        }
        let mut table = Vec::with_capacity(size as usize);
        for x in Tuples::new(&elems, self.n) {
            table.push(self.apply(&x)?);
        }
        Ok(Self { n: self.n, field: self.field.clone(), form: MapForm::Table(table) })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn form(&self) -> &MapForm {
        &self.form
    }

    pub fn form_name(&self) -> &'static str {
        match self.form {
            MapForm::Table(_) => "table",
            MapForm::Poly(_) => "polymap",
            MapForm::Linear(_) => "linear",
        }
    }

    pub fn apply(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        if x.iter().any(|c| c.field() != &self.field) {
            return Err(Error::FieldMismatch);
        }
        match &self.form {
            MapForm::Table(t) => Ok(t[point_index(x)].clone()),
            MapForm::Poly(ps) => Ok(ps.iter().map(|p| p.eval_unchecked(x)).collect()),
            MapForm::Linear(m) => m.apply(x),
        }
    }

    /// Coordinate polynomials, when the map is given symbolically.
    pub fn polys(&self) -> Option<Vec<MultiPoly>> {
        match &self.form {
            MapForm::Table(_) => None,
            MapForm::Poly(ps) => Some(ps.clone()),
            MapForm::Linear(m) => Some(linear_polys(m)),
        }
    }

    /// Coordinatewise sum; both maps must be symbolic.
    pub fn sum(&self, other: &VectorMap) -> Result<VectorMap> {
        match (&self.form, &other.form) {
            (MapForm::Linear(a), MapForm::Linear(b)) => VectorMap::linear(a.add(b)?),
            _ => {
                let (a, b) = (self.symbolic()?, other.symbolic()?);
                if a.len() != b.len() {
                    return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
                }
                let mut out = Vec::with_capacity(a.len());
                for (x, y) in a.iter().zip(&b) {
                    out.push(x.checked_add(y)?);
                }
                VectorMap::poly(out)
            }
        }
    }

    /// `x ↦ self(L x)`.
    pub fn compose_linear(&self, l: &Matrix) -> Result<VectorMap> {
        if l.rows() != self.n || l.cols() != self.n {
            return Err(Error::Shape("inner linear map has the wrong size".into()));
        }
        match &self.form {
            MapForm::Linear(m) => VectorMap::linear(m.mul(l)?),
            MapForm::Poly(ps) => {
                let images = linear_polys(l);
                let mut out = Vec::with_capacity(ps.len());
                for p in ps {
                    out.push(p.substitute(&images)?);
                }
                VectorMap::poly(out)
            }
            MapForm::Table(_) => {
                let elems = self.field.elements()?;
                let mut table = Vec::new();
                for x in Tuples::new(&elems, self.n) {
                    table.push(self.apply(&l.apply(&x)?)?);
                }
                Ok(Self { n: self.n, field: self.field.clone(), form: MapForm::Table(table) })
            }
        }
    }

    fn symbolic(&self) -> Result<Vec<MultiPoly>> {
        self.polys().ok_or_else(|| Error::FormMismatch("symbolic mode needs polymap or linear maps".into()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Every `(x, y, λ)`; finite fields only.
    Exhaustive,
    /// Polynomial identity in `F[x, y, λ]`, decided exactly as a statement
    /// about functions (exponents reduced by `x^q = x` over `GF(q)`).
    Symbolic,
    /// Random falsification only.
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairVerdict {
    Holds,
    Fails(PairWitness),
    /// No counterexample among the sampled triples; nothing is proved.
    SufficientOnlyPass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMethod {
    Exhaustive,
    /// The difference is the zero polynomial.
    SymbolicIdentity,
    /// The difference is a nonzero polynomial; its reduced form decided.
    SymbolicReduced,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOutcome {
    pub verdict: PairVerdict,
    pub method: PairMethod,
    /// Triples evaluated (exhaustive and sampled modes).
    pub evaluated: u128,
}

impl PairOutcome {
    pub fn holds(&self) -> bool {
        self.verdict == PairVerdict::Holds
    }
}

fn check_inputs(p: &MultiPoly, maps: &[&VectorMap]) -> Result<()> {
    for m in maps {
        if m.n != p.nvars() {
            return Err(Error::DimensionMismatch { expected: p.nvars(), found: m.n });
        }
        if m.field != *p.field() {
            return Err(Error::FieldMismatch);
        }
    }
    Ok(())
}

/// `P(x + λy) - P(φ(x) + λψ(y))` in variables `x_1..x_n, y_1..y_n, λ`.
pub fn pair_difference(p: &MultiPoly, phi: &VectorMap, psi: &VectorMap) -> Result<MultiPoly> {
    check_inputs(p, &[phi, psi])?;
    let n = p.nvars();
    let field = p.field();
    let nv = 2 * n + 1;
    let lambda = MultiPoly::var(field, nv, 2 * n);
    let phis = phi.symbolic()?;
    let psis = psi.symbolic()?;
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for i in 0..n {
        left.push(&MultiPoly::var(field, nv, i) + &(&lambda * &MultiPoly::var(field, nv, n + i)));
        right.push(&phis[i].embed(nv, 0)? + &(&lambda * &psis[i].embed(nv, n)?));
    }
    Ok(&p.substitute(&left)? - &p.substitute(&right)?)
}

pub fn check_pair(p: &MultiPoly, phi: &VectorMap, psi: &VectorMap, mode: CheckMode) -> Result<PairOutcome> {
    check_pair_with_cap(p, phi, psi, mode, crate::DEFAULT_PAIR_CAP)
}

pub fn check_pair_with_cap(
    p: &MultiPoly,
    phi: &VectorMap,
    psi: &VectorMap,
    mode: CheckMode,
    cap: u128,
) -> Result<PairOutcome> {
    check_inputs(p, &[phi, psi])?;
    let n = p.nvars();
    let field = p.field();
    match mode {
        CheckMode::Symbolic => {
            let d = pair_difference(p, phi, psi)?;
            if d.is_zero() {
                return Ok(PairOutcome { verdict: PairVerdict::Holds, method: PairMethod::SymbolicIdentity, evaluated: 0 });
            }
            let verdict = match d.find_nonzero_point() {
                None => PairVerdict::Holds,
                Some(pt) => PairVerdict::Fails(PairWitness {
                    x: pt[..n].to_vec(),
                    y: pt[n..2 * n].to_vec(),
                    lambda: pt[2 * n].clone(),
                }),
            };
            Ok(PairOutcome { verdict, method: PairMethod::SymbolicReduced, evaluated: 0 })
        }
        CheckMode::Exhaustive => {
            let elems = field.elements()?;
            let q = elems.len() as u128;
            let needed = q.checked_pow(2 * n as u32 + 1).unwrap_or(u128::MAX);
            if needed > cap {
                return Err(Error::CapExceeded { needed, cap });
            }
            let points: Vec<Vec<Scalar>> = Tuples::new(&elems, n).collect();
            let mut images_phi = Vec::with_capacity(points.len());
            let mut images_psi = Vec::with_capacity(points.len());
            for x in &points {
                images_phi.push(phi.apply(x)?);
                images_psi.push(psi.apply(x)?);
            }
            let mut evaluated = 0u128;
            for (x, fx) in points.iter().zip(&images_phi) {
                for (y, gy) in points.iter().zip(&images_psi) {
                    for l in &elems {
                        evaluated += 1;
                        let lhs = p.eval_unchecked(&vec_add(x, &vec_scale(l, y)));
                        let rhs = p.eval_unchecked(&vec_add(fx, &vec_scale(l, gy)));
                        if lhs != rhs {
                            let witness = PairWitness { x: x.clone(), y: y.clone(), lambda: l.clone() };
                            return Ok(PairOutcome { verdict: PairVerdict::Fails(witness), method: PairMethod::Exhaustive, evaluated });
                        }
                    }
                }
            }
            Ok(PairOutcome { verdict: PairVerdict::Holds, method: PairMethod::Exhaustive, evaluated })
        }
        CheckMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in 0..count {
                let x = field.random_vector(n, &mut rng);
                let y = field.random_vector(n, &mut rng);
                let l = field.random(&mut rng);
                let lhs = p.eval_unchecked(&vec_add(&x, &vec_scale(&l, &y)));
                let rhs = p.eval_unchecked(&vec_add(&phi.apply(&x)?, &vec_scale(&l, &psi.apply(&y)?)));
                if lhs != rhs {
                    let witness = PairWitness { x, y, lambda: l };
                    return Ok(PairOutcome { verdict: PairVerdict::Fails(witness), method: PairMethod::Sampled, evaluated: i as u128 + 1 });
                }
            }
            Ok(PairOutcome { verdict: PairVerdict::SufficientOnlyPass, method: PairMethod::Sampled, evaluated: count as u128 })
        }
    }
}

/// Whether `P ∘ φ = P` as functions. In sampled mode `true` only means no
/// counterexample was found.
pub fn preserves(p: &MultiPoly, phi: &VectorMap, mode: CheckMode) -> Result<bool> {
    check_inputs(p, &[phi])?;
    let n = p.nvars();
    let field = p.field();
    match mode {
        CheckMode::Symbolic => {
            let d = &p.substitute(&phi.symbolic()?)? - p;
            Ok(d.is_zero_function(crate::DEFAULT_EVAL_CAP).verdict == ZeroVerdict::Zero)
        }
        CheckMode::Exhaustive => {
            let elems = field.elements()?;
            let needed = (elems.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
            if needed > crate::DEFAULT_PAIR_CAP {
                return Err(Error::CapExceeded { needed, cap: crate::DEFAULT_PAIR_CAP });
            }
            for x in Tuples::new(&elems, n) {
                if p.eval_unchecked(&phi.apply(&x)?) != p.eval_unchecked(&x) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        CheckMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let x = field.random_vector(n, &mut rng);
                if p.eval_unchecked(&phi.apply(&x)?) != p.eval_unchecked(&x) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// `ψ̃(x) = Σ_i l_{P,a_i}(ψ(x)) e_i` with `l_{P,a_i}(e_j) = δ_ij`, returned
/// as a matrix after its linearity has been verified.
pub fn build_psi_tilde(p: &MultiPoly, psi: &VectorMap, grad: &GradBasis) -> Result<Matrix> {
    check_inputs(p, &[psi])?;
    let n = p.nvars();
    let field = p.field();
    let es = dual_extend(field, n, &grad.gradients)?;
    // Then ψ̃ = E G ψ with G the gradient rows and E the columns e_i.
    let g = Matrix::from_rows(field, n, &grad.gradients)?;
    let e = Matrix::from_rows(field, n, &es)?.transpose();
    let eg = e.mul(&g)?;
    match psi.form() {
        MapForm::Linear(m) => eg.mul(m),
        MapForm::Poly(ps) => {
            let coords = combine(&eg, ps, field, n);
            let mut m = Matrix::zeros(field, n, n);
            for (r, c) in coords.iter().enumerate() {
                let red = c.reduce_as_function();
                for (mono, coef) in red.terms() {
                    match mono.exponents().iter().position(|&x| x > 0) {
                        Some(v) if mono.degree() == 1 => m.set(r, v, coef.clone()),
                        _ => {
                            return Err(Error::LinearityFailed(format!(
                                "coordinate {} of ψ̃ contains the non-linear term {}",
                                r + 1,
                                MultiPoly::from_terms(field, n, [(mono.exponents().to_vec(), coef.clone())])?
                            )))
                        }
                    }
                }
            }
            Ok(m)
        }
        MapForm::Table(_) => {
            let apply_tilde = |x: &[Scalar]| -> Result<Vec<Scalar>> { eg.apply(&psi.apply(x)?) };
            let mut m = Matrix::zeros(field, n, n);
            for c in 0..n {
                let col = apply_tilde(&unit_vector(field, n, c))?;
                for (r, v) in col.into_iter().enumerate() {
                    m.set(r, c, v);
                }
            }
            let elems = field.elements()?;
            let size = (elems.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
            let mismatch = |x: &[Scalar]| -> Result<bool> { Ok(apply_tilde(x)? != m.apply(x)?) };
            if size <= crate::DEFAULT_EVAL_CAP {
                for x in Tuples::new(&elems, n) {
                    if mismatch(&x)? {
                        return Err(Error::LinearityFailed(format!("ψ̃ is not linear at ({})", crate::linalg::join_scalars(&x))));
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(crate::DEFAULT_SEED);
                for _ in 0..LINEARITY_PROBES {
                    let x = field.random_vector(n, &mut rng);
                    if mismatch(&x)? {
                        return Err(Error::LinearityFailed(format!("ψ̃ is not linear at ({})", crate::linalg::join_scalars(&x))));
                    }
                }
            }
            Ok(m)
        }
    }
}

/// Which conclusions of the extraction were verified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub psi_tilde_linear: bool,
    pub psi_tilde_kills_radical: bool,
    pub psi_tilde_matches_psi: bool,
    pub invertible: bool,
    pub intertwines_phi: bool,
    pub intertwines_psi: bool,
    pub preserves_p_rad: bool,
    pub unique: bool,
}

impl Verification {
    pub fn all(&self) -> bool {
        self.psi_tilde_linear
            && self.psi_tilde_kills_radical
            && self.psi_tilde_matches_psi
            && self.invertible
            && self.intertwines_phi
            && self.intertwines_psi
            && self.preserves_p_rad
            && self.unique
    }

    /// `(name, passed)` pairs in a fixed order, for reports.
    pub fn items(&self) -> [(&'static str, bool); 8] {
        [
            ("psi-tilde linear", self.psi_tilde_linear),
            ("psi-tilde kills rad(P)", self.psi_tilde_kills_radical),
            ("pi o psi-tilde = pi o psi", self.psi_tilde_matches_psi),
            ("T_rad invertible", self.invertible),
            ("pi o phi = T_rad o pi", self.intertwines_phi),
            ("pi o psi = T_rad o pi", self.intertwines_psi),
            ("P_rad o T_rad = P_rad", self.preserves_p_rad),
            ("T_rad unique", self.unique),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct ExtractionResult {
    pub t_rad: Matrix,
    pub psi_tilde: VectorMap,
    pub verified: Verification,
    pub report: RadicalReport,
    pub pair: PairOutcome,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExtractOptions {
    pub witness: WitnessOptions,
    pub radical: RadicalOptions,
    /// Forces a pair-check mode; by default symbolic when both maps allow
    /// it and exhaustive otherwise.
    pub mode: Option<CheckMode>,
}

fn refuse(r: Refusal) -> Error {
    Error::Refused(r)
}

pub fn extract_t_rad(p: &MultiPoly, phi: &VectorMap, psi: &VectorMap) -> Result<ExtractionResult> {
    extract_t_rad_with(p, phi, psi, ExtractOptions::default())
}

pub fn extract_t_rad_with(p: &MultiPoly, phi: &VectorMap, psi: &VectorMap, opts: ExtractOptions) -> Result<ExtractionResult> {
    check_inputs(p, &[phi, psi])?;
    let field = p.field();
    let n = p.nvars();
    if p.homogeneity() == Homogeneity::Inhomogeneous {
        return Err(refuse(Refusal::NotHomogeneous));
    }
    if let Some(q) = field.order() {
        if !p.degree().below(q) {
            return Err(refuse(Refusal::DegreeNotBelowFieldOrder { degree: p.degree().finite().unwrap_or(0), order: q }));
        }
    }
    let report = rad_compute_with(p, opts.radical)?;
    if !report.conclusive {
        return Err(refuse(Refusal::RadicalInconclusive));
    }
    if !report.dim_condition_holds {
        return Err(refuse(Refusal::DimensionCondition { lp: report.lp.dim(), rad: report.radical.dim(), n }));
    }
    let symbolic = phi.polys().is_some() && psi.polys().is_some();
    let mode = opts.mode.unwrap_or(if symbolic { CheckMode::Symbolic } else { CheckMode::Exhaustive });
    let pair = check_pair(p, phi, psi, mode)?;
    match &pair.verdict {
        PairVerdict::Holds => {}
        PairVerdict::Fails(w) => return Err(refuse(Refusal::PairFails(Some(alloc::boxed::Box::new(w.clone()))))),
        PairVerdict::SufficientOnlyPass => return Err(refuse(Refusal::PairUnverified)),
    }

    let grad = lp_symbolic_with(p, opts.witness)?;
    let quotient = &report.quotient;
    let pi = quotient.pi();
    let iota = quotient.iota();
    let mut verified = Verification::default();
    let psi_tilde = match build_psi_tilde(p, psi, &grad) {
        Ok(m) => {
            verified.psi_tilde_linear = true;
            m
        }
        Err(Error::LinearityFailed(msg)) => return Err(Error::LinearityFailed(msg)),
        Err(e) => return Err(e),
    };
    let t_rad = pi.mul(&psi_tilde)?.mul(iota)?;

    verified.psi_tilde_kills_radical = report
        .radical
        .basis_vectors()
        .iter()
        .all(|w| psi_tilde.apply(w).is_ok_and(|v| v.iter().all(Scalar::is_zero)));
    let pi_psi_tilde = pi.mul(&psi_tilde)?;
    verified.psi_tilde_matches_psi = intertwines(psi, pi, &pi_psi_tilde)?;
    verified.invertible = t_rad.is_invertible();
    let t_pi = t_rad.mul(pi)?;
    verified.intertwines_phi = intertwines(phi, pi, &t_pi)?;
    verified.intertwines_psi = intertwines(psi, pi, &t_pi)?;
    verified.preserves_p_rad = preserves_p_rad(&report.p_rad, &t_rad)?;

    // T_rad is forced on the images π(ι e_c) = e_c of the basis, so any map
    // with the intertwining property has columns π(ψ(ι e_c)) and π(φ(ι e_c)).
    let d = quotient.dim();
    let mut unique = true;
    for c in 0..d {
        let lifted = iota.apply(&unit_vector(field, d, c))?;
        let via_psi = pi.apply(&psi.apply(&lifted)?)?;
        let via_phi = pi.apply(&phi.apply(&lifted)?)?;
        if via_psi != t_rad.column(c) || via_phi != t_rad.column(c) {
            unique = false;
        }
    }
    verified.unique = unique;

    Ok(ExtractionResult { t_rad, psi_tilde: VectorMap::linear(psi_tilde)?, verified, report, pair })
}

/// Whether `π ∘ f = L` as functions, for the `d x n` matrices `π`, `L`.
fn intertwines(f: &VectorMap, pi: &Matrix, l: &Matrix) -> Result<bool> {
    let field = f.field();
    let n = f.dim();
    match f.polys() {
        Some(polys) => {
            let lhs = combine(pi, &polys, field, n);
            let rhs = linear_polys(l);
            let diffs: Vec<MultiPoly> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            Ok(all_zero_functions(&diffs))
        }
        None => {
            let elems = field.elements()?;
            for x in Tuples::new(&elems, n) {
                if pi.apply(&f.apply(&x)?)? != l.apply(&x)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn preserves_p_rad(p_rad: &MultiPoly, t: &Matrix) -> Result<bool> {
    if t.rows() == 0 {
        return Ok(true);
    }
    let composed = p_rad.substitute(&linear_polys(t))?;
    Ok(all_zero_functions(&[&composed - p_rad]))
}

/// Verifies the lifted identity `P_rad(π(x) + λy) = P_rad(π(φ(x)) + λ ψ_rad(y))`
/// for all `x ∈ F^n`, `y` in quotient coordinates and `λ`, together with the
/// relation `ψ_rad ∘ π = π ∘ ψ` it presupposes.
pub fn lift_check(p: &MultiPoly, phi: &VectorMap, psi: &VectorMap, psi_rad: &Matrix, mode: CheckMode) -> Result<bool> {
    check_inputs(p, &[phi, psi])?;
    let report = rad_compute_with(p, RadicalOptions::default())?;
    let quotient = &report.quotient;
    let d = quotient.dim();
    if psi_rad.rows() != d || psi_rad.cols() != d {
        return Err(Error::Shape(format!("ψ_rad must be {d}x{d}")));
    }
    let pi = quotient.pi();
    if !intertwines(psi, pi, &psi_rad.mul(pi)?)? {
        return Ok(false);
    }
    let field = p.field();
    let n = p.nvars();
    let p_rad = &report.p_rad;
    if d == 0 {
        return Ok(true);
    }
    match mode {
        CheckMode::Symbolic => {
            let phis = phi.symbolic()?;
            let nv = n + d + 1;
            let lambda = MultiPoly::var(field, nv, n + d);
            let xs: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(field, nv, i)).collect();
            let ys: Vec<MultiPoly> = (0..d).map(|i| MultiPoly::var(field, nv, n + i)).collect();
            let mut phis_nv = Vec::with_capacity(n);
            for f in &phis {
                phis_nv.push(f.embed(nv, 0)?);
            }
            let pix = combine(pi, &xs, field, nv);
            let piphi = combine(pi, &phis_nv, field, nv);
            let psiy = combine(psi_rad, &ys, field, nv);
            let left: Vec<MultiPoly> = pix.iter().zip(&ys).map(|(a, y)| a + &(&lambda * y)).collect();
            let right: Vec<MultiPoly> = piphi.iter().zip(&psiy).map(|(a, y)| a + &(&lambda * y)).collect();
            let diff = &p_rad.substitute(&left)? - &p_rad.substitute(&right)?;
            Ok(all_zero_functions(&[diff]))
        }
        CheckMode::Exhaustive => {
            let elems = field.elements()?;
            let needed = (elems.len() as u128).checked_pow((n + d + 1) as u32).unwrap_or(u128::MAX);
            if needed > crate::DEFAULT_PAIR_CAP {
                return Err(Error::CapExceeded { needed, cap: crate::DEFAULT_PAIR_CAP });
            }
            let ys: Vec<(Vec<Scalar>, Vec<Scalar>)> =
                Tuples::new(&elems, d).map(|y| (psi_rad.apply(&y).expect("shape"), y)).collect();
            for x in Tuples::new(&elems, n) {
                let px = pi.apply(&x)?;
                let pfx = pi.apply(&phi.apply(&x)?)?;
                for (gy, y) in &ys {
                    for l in &elems {
                        let a = p_rad.eval_unchecked(&vec_add(&px, &vec_scale(l, y)));
                        let b = p_rad.eval_unchecked(&vec_add(&pfx, &vec_scale(l, gy)));
                        if a != b {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        }
        CheckMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let x = field.random_vector(n, &mut rng);
                let y = field.random_vector(d, &mut rng);
                let l = field.random(&mut rng);
                let a = p_rad.eval_unchecked(&vec_add(&pi.apply(&x)?, &vec_scale(&l, &y)));
                let b = p_rad.eval_unchecked(&vec_add(&pi.apply(&phi.apply(&x)?)?, &vec_scale(&l, &psi_rad.apply(&y)?)));
                if a != b {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Human-readable name of a refusal's failed hypothesis.
pub fn refusal_hypothesis(r: &Refusal) -> String {
    match r {
        Refusal::NotHomogeneous => "P must be homogeneous".into(),
        Refusal::DegreeNotBelowFieldOrder { .. } => "deg(P) < |F|".into(),
        Refusal::DimensionCondition { .. } => "dim L_P + dim rad(P) = n".into(),
        Refusal::PairFails(_) | Refusal::PairUnverified => "P(x + λy) = P(φ(x) + λψ(y)) for all x, y, λ".into(),
        Refusal::RadicalInconclusive => "rad(P) must be computed exactly".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Side, Subspace};

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::galois(q).unwrap()
    }

    fn pm(texts: &[&str], f: &FieldSpec) -> VectorMap {
        let n = texts.len();
        VectorMap::poly(texts.iter().map(|t| MultiPoly::parse(t, n, f).unwrap()).collect()).unwrap()
    }

    #[test]
    fn identity_pair_holds() {
        let f = gf(5);
        let p = MultiPoly::parse("x1*x2", 2, &f).unwrap();
        let id = VectorMap::identity(&f, 2);
        for mode in [CheckMode::Exhaustive, CheckMode::Symbolic] {
            assert!(check_pair(&p, &id, &id, mode).unwrap().holds());
        }
        let s = check_pair(&p, &id, &id, CheckMode::Sampled { count: 50, seed: 1 }).unwrap();
        assert_eq!(s.verdict, PairVerdict::SufficientOnlyPass);
    }

    #[test]
    fn inhomogeneous_counterexample() {
        let f = gf(5);
        let p = MultiPoly::parse("x1*(x2 + 1)", 2, &f).unwrap();
        let phi = pm(&["3*x1", "2*x2 + 1"], &f);
        let psi = pm(&["3*x1", "2*x2"], &f);
        let out = check_pair(&p, &phi, &psi, CheckMode::Exhaustive).unwrap();
        assert_eq!((out.verdict.clone(), out.evaluated), (PairVerdict::Holds, 3125));
        assert!(check_pair(&p, &phi, &psi, CheckMode::Symbolic).unwrap().holds());
        assert!(!preserves(&p, &psi, CheckMode::Exhaustive).unwrap());
        assert!(preserves(&p, &phi, CheckMode::Exhaustive).unwrap());
        assert!(matches!(extract_t_rad(&p, &phi, &psi), Err(Error::Refused(Refusal::NotHomogeneous))));
    }

    #[test]
    fn violating_pair_has_witness() {
        let f = gf(5);
        let p = MultiPoly::parse("x1*x2", 2, &f).unwrap();
        let psi = pm(&["x1", "x2 + x1^2"], &f);
        for mode in [CheckMode::Exhaustive, CheckMode::Symbolic] {
            let out = check_pair(&p, &psi, &psi, mode).unwrap();
            let PairVerdict::Fails(w) = out.verdict else { panic!("expected failure") };
            let lhs = p.evaluate(&vec_add(&w.x, &vec_scale(&w.lambda, &w.y))).unwrap();
            let rhs = p.evaluate(&vec_add(&psi.apply(&w.x).unwrap(), &vec_scale(&w.lambda, &psi.apply(&w.y).unwrap()))).unwrap();
            assert_ne!(lhs, rhs);
        }
        assert!(!preserves(&p, &pm(&["2*x1", "2*x2"], &f), CheckMode::Symbolic).unwrap());
    }

    #[test]
    fn psi_tilde_of_linear_map_is_itself() {
        let f = gf(5);
        let p = MultiPoly::parse("x1*x2", 2, &f).unwrap();
        let m = Matrix::from_i64(&f, &[&[2, 0], &[0, 3]]);
        let psi = VectorMap::linear(m.clone()).unwrap();
        let grad = crate::gradspace::lp_symbolic(&p).unwrap();
        assert_eq!(build_psi_tilde(&p, &psi, &grad).unwrap(), m);
        let r = extract_t_rad(&p, &psi, &psi).unwrap();
        assert!(r.verified.all());
        assert_eq!(r.t_rad, m);
        let table = psi.to_table().unwrap();
        assert_eq!(build_psi_tilde(&p, &table, &grad).unwrap(), m);
        let r = extract_t_rad(&p, &table, &table).unwrap();
        assert!(r.verified.all());
    }

    #[test]
    fn nonlinear_psi_is_rejected() {
        let f = gf(5);
        let p = MultiPoly::parse("x1*x2", 2, &f).unwrap();
        let grad = crate::gradspace::lp_symbolic(&p).unwrap();
        let psi = pm(&["x1", "x2 + x1^2"], &f);
        assert!(matches!(build_psi_tilde(&p, &psi, &grad), Err(Error::LinearityFailed(_))));
        assert!(matches!(build_psi_tilde(&p, &psi.to_table().unwrap(), &grad), Err(Error::LinearityFailed(_))));
    }

    #[test]
    fn frobenius_power_refused() {
        let g3 = gf(3);
        let p = MultiPoly::parse("x1^3", 1, &g3).unwrap();
        let id = VectorMap::identity(&g3, 1);
        assert!(check_pair(&p, &id, &id, CheckMode::Exhaustive).unwrap().holds());
        assert!(matches!(
            extract_t_rad(&p, &id, &id),
            Err(Error::Refused(Refusal::DegreeNotBelowFieldOrder { degree: 3, order: 3 }))
        ));
    }

    #[test]
    fn lift_check_identity_and_corruption() {
        let f = gf(3);
        let p = MultiPoly::parse("(x1 - x2)^2 + x3^2", 3, &f).unwrap();
        let id = VectorMap::identity(&f, 3);
        let r = extract_t_rad(&p, &id, &id).unwrap();
        assert!(r.verified.all());
        assert_eq!(r.report.radical, Subspace::span(&f, 3, &[alloc::vec![f.one(), f.one(), f.zero()]], Side::Primal).unwrap());
        for mode in [CheckMode::Exhaustive, CheckMode::Symbolic] {
            assert!(lift_check(&p, &id, &id, &r.t_rad, mode).unwrap());
        }
        let mut bad = r.t_rad.clone();
        bad.set(0, 0, &bad.get(0, 0).clone() + &f.one());
        assert!(!lift_check(&p, &id, &id, &bad, CheckMode::Exhaustive).unwrap());
    }
}
