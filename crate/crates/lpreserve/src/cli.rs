//! Argument definitions and the report pipeline behind the binary.
//!
//! Every report ends with `VERDICT: <word>`; the exit code follows the
//! verdict (see [`Verdict::exit_code`]).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lpreserve_core::cullis::CullisContext;
use lpreserve_core::gradspace::lp_auto;
use lpreserve_core::linalg::join_scalars;
use lpreserve_core::preserver::{
    check_pair_with_cap, extract_t_rad_with, preserves, refusal_hypothesis, CheckMode, ExtractOptions, PairMethod,
    PairVerdict, VectorMap,
};
use lpreserve_core::radical::{rad_compute_with, RadicalOptions};
use lpreserve_core::{Error, FieldSpec, Homogeneity, Matrix, MultiPoly, Refusal, DEFAULT_EVAL_CAP, DEFAULT_PAIR_CAP, DEFAULT_SEED};

use crate::acceptance::{self, Fault, Scale};
use crate::mapfile::parse_map;

#[derive(Debug, Parser)]
#[command(name = "lpreserve", version, about = "Gradient spaces, radicals and nonlinear preserver checks for polynomials over exact fields")]
pub struct JobConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The span L_P of the gradient functionals.
    Lp(PolyArgs),
    /// rad(P), the dimension condition and the quotient.
    Radical(PolyArgs),
    /// Cullis determinant utilities.
    #[command(subcommand)]
    Cullis(CullisCommand),
    /// Checks P(x + λy) = P(φ(x) + λψ(y)) for all x, y, λ.
    VerifyPair(PairArgs),
    /// Extracts and verifies T_rad on F^n / rad(P).
    ExtractTrad(PairArgs),
    /// Runs the acceptance suite.
    Selftest(SelftestArgs),
}

fn parse_field(text: &str) -> Result<FieldSpec, String> {
    text.parse::<FieldSpec>().map_err(|e| e.to_string())
}

fn positive_cap(text: &str) -> Result<u128, String> {
    match text.parse::<u128>() {
        Ok(0) => Err("cap must be positive".into()),
        Ok(c) => Ok(c),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    /// GF(p), GF(p^m), GF(q) or QQ.
    #[arg(long, value_parser = parse_field)]
    pub field: FieldSpec,
    #[arg(long)]
    pub nvars: usize,
    /// Inline polynomial, or @path.
    #[arg(long)]
    pub poly: String,
    /// Largest number of points an exhaustive step may visit.
    #[arg(long, value_parser = positive_cap, default_value_t = DEFAULT_EVAL_CAP)]
    pub cap: u128,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum CullisCommand {
    /// det_{n,k} of an n x k matrix, by two routes.
    Det {
        #[arg(long, value_parser = parse_field)]
        field: FieldSpec,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long)]
        matrix: String,
    },
    /// Whether X ↦ A X B preserves det_{n,k}.
    Absign {
        #[arg(long, value_parser = parse_field)]
        field: FieldSpec,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// Prints det_{n,k} as a polynomial in the row-major entries.
    Poly {
        #[arg(long, value_parser = parse_field)]
        field: FieldSpec,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Symbolic when both maps are polymap or linear, else exhaustive.
    Auto,
    Exhaustive,
    Symbolic,
    Sampled,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Map file for φ (inline text or @path).
    #[arg(long)]
    pub phi: String,
    /// Map file for ψ; defaults to φ.
    #[arg(long)]
    pub psi: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    /// Triples drawn in sampled mode.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Largest number of (x, y, λ) triples in exhaustive mode.
    #[arg(long, value_parser = positive_cap, default_value_t = DEFAULT_PAIR_CAP)]
    pub pair_cap: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    Sign,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Full-size instances instead of the reduced ones.
    #[arg(long)]
    pub full: bool,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<FaultArg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Verified,
    SufficientOnlyPass,
    Fails,
    Refused,
    Undecidable,
    UsageError,
}

impl Verdict {
    pub fn word(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Verified => "verified",
            Verdict::SufficientOnlyPass => "sufficient-only-pass",
            Verdict::Fails => "fails",
            Verdict::Refused => "refused",
            Verdict::Undecidable => "undecidable",
            Verdict::UsageError => "usage-error",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Holds | Verdict::Verified => 0,
            Verdict::Fails | Verdict::Refused => 1,
            Verdict::UsageError => 2,
            Verdict::SufficientOnlyPass | Verdict::Undecidable => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: Verdict,
    pub report: String,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        self.verdict.exit_code()
    }
}

struct Report(String);

impl Report {
    fn line(&mut self, text: impl AsRef<str>) {
        self.0.push_str(text.as_ref());
        self.0.push('\n');
    }

    fn finish(mut self, verdict: Verdict) -> Outcome {
        self.line(format!("VERDICT: {}", verdict.word()));
        Outcome { verdict, report: self.0 }
    }
}

/// Classifies a library error by the exit-code convention.
fn error_verdict(e: &Error) -> Verdict {
    match e {
        Error::Refused(_) | Error::HypothesisViolated(_) => Verdict::Refused,
        Error::LinearityFailed(_) | Error::InternalConsistency(_) => Verdict::Fails,
        Error::CapExceeded { .. } | Error::Undecidable(_) | Error::InfiniteEnumeration => Verdict::Undecidable,
        _ => Verdict::UsageError,
    }
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Step<T> = std::result::Result<T, Failure>;

fn load(payload: &str) -> Step<String> {
    match payload.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(PathBuf::from(path)).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}"))),
        None => Ok(payload.to_string()),
    }
}

fn load_poly(args: &PolyArgs) -> Step<MultiPoly> {
    Ok(MultiPoly::parse(load(&args.poly)?.trim(), args.nvars, &args.field)?)
}

fn load_map(payload: &str, args: &PolyArgs) -> Step<VectorMap> {
    parse_map(&load(payload)?, &args.field, args.nvars).map_err(|e| Failure::Usage(format!("map file {e}")))
}

fn vector(v: &[lpreserve_core::Scalar]) -> String {
    format!("({})", join_scalars(v).replace(',', ", "))
}

fn matrix_lines(r: &mut Report, m: &Matrix) {
    for row in 0..m.rows() {
        r.line(format!("  [{}]", join_scalars(m.row(row)).replace(',', ", ")));
    }
}

fn header(r: &mut Report, args: &PolyArgs, p: &MultiPoly) {
    r.line(format!("field: {}", args.field));
    r.line(format!("nvars: {}", args.nvars));
    r.line(format!("P = {p}"));
}

fn method_name(m: PairMethod) -> &'static str {
    match m {
        PairMethod::Exhaustive => "exhaustive",
        PairMethod::SymbolicIdentity => "symbolic (zero polynomial)",
        PairMethod::SymbolicReduced => "symbolic (reduced by x^q = x)",
        PairMethod::Sampled => "sampled",
    }
}

pub fn run(config: &JobConfig) -> Outcome {
    let mut r = Report(String::new());
    let result = match &config.command {
        Command::Lp(args) => run_lp(&mut r, args),
        Command::Radical(args) => run_radical(&mut r, args),
        Command::Cullis(cmd) => run_cullis(&mut r, cmd),
        Command::VerifyPair(args) => run_verify(&mut r, args),
        Command::ExtractTrad(args) => run_extract(&mut r, args),
        Command::Selftest(args) => Ok(run_selftest(&mut r, args)),
    };
    match result {
        Ok(v) => r.finish(v),
        Err(Failure::Usage(msg)) => {
            r.line(format!("error: {msg}"));
            r.finish(Verdict::UsageError)
        }
        Err(Failure::Core(e)) => {
            if let Error::Refused(refusal) = &e {
                refusal_lines(&mut r, refusal);
            } else {
                r.line(format!("error: {e}"));
            }
            r.finish(error_verdict(&e))
        }
    }
}

fn refusal_lines(r: &mut Report, refusal: &Refusal) {
    r.line(format!("refused: {refusal}"));
    r.line(format!("failed hypothesis: {}", refusal_hypothesis(refusal)));
    if let Refusal::PairFails(Some(w)) = refusal {
        r.line(format!("witness: x = {}, y = {}, lambda = {}", vector(&w.x), vector(&w.y), w.lambda));
    }
}

fn run_lp(r: &mut Report, args: &PolyArgs) -> Step<Verdict> {
    let p = load_poly(args)?;
    header(r, args, &p);
    let basis = lp_auto(&p, args.cap)?;
    let method = if lpreserve_core::gradspace::symbolic_applicable(&p) { "symbolic" } else { "exhaustive" };
    r.line(format!("method: {method}"));
    r.line(format!("dim(L_P) = {}", basis.dim()));
    r.line("basis of L_P:");
    matrix_lines(r, basis.subspace.basis());
    r.line("witnesses:");
    for (a, g) in basis.witnesses.iter().zip(&basis.gradients) {
        r.line(format!("  a = {}  grad P(a) = {}", vector(a), vector(g)));
    }
    let ok = basis.verify(&p)?;
    r.line(format!("witness gradients span L_P: {}", if ok { "yes" } else { "no" }));
    Ok(if ok { Verdict::Verified } else { Verdict::Fails })
}

fn run_radical(r: &mut Report, args: &PolyArgs) -> Step<Verdict> {
    let p = load_poly(args)?;
    header(r, args, &p);
    let report = rad_compute_with(&p, RadicalOptions { cap: args.cap, seed: args.seed })?;
    r.line(format!("method: {}", report.method));
    r.line(format!("dim(L_P) = {}", report.lp.dim()));
    r.line(format!("dim Ann(L_P) = {}", report.annihilator.dim()));
    let cond = if report.dim_condition_holds { "holds" } else { "fails" };
    r.line(format!("rad dim = {}, dim-condition: {cond}", report.radical.dim()));
    r.line("basis of rad(P):");
    matrix_lines(r, report.radical.basis());
    r.line(format!("quotient dim = {} (coordinates x{})", report.quotient.dim(), quotient_coords(&report.quotient)));
    r.line(format!("P_rad (variables are the quotient coordinates in order) = {}", report.p_rad));
    if report.conclusive {
        Ok(Verdict::Verified)
    } else {
        r.line("radical inconclusive: the annihilator exceeds the cap and a basis vector failed membership");
        Ok(Verdict::Undecidable)
    }
}

fn quotient_coords(q: &lpreserve_core::QuotientContext) -> String {
    let cols: Vec<String> = q.free_columns().iter().map(|c| (c + 1).to_string()).collect();
    if cols.is_empty() {
        "-".into()
    } else {
        cols.join(", x")
    }
}

fn run_cullis(r: &mut Report, cmd: &CullisCommand) -> Step<Verdict> {
    match cmd {
        CullisCommand::Det { field, matrix } => {
            let x = Matrix::parse(&load(matrix)?, field)?;
            let ctx = CullisContext::new(x.rows(), x.cols(), field)?;
            let def = ctx.det_definition(&x)?;
            let lap = ctx.laplace(&x, 1)?;
            r.line(format!("field: {field}"));
            r.line(format!("n = {}, k = {}, parity of n + k: {}", x.rows(), x.cols(), ctx.parity()));
            r.line(format!("det_{{{},{}}} = {def}", x.rows(), x.cols()));
            r.line(format!("minor sum = {def}, Laplace along column 1 = {lap}"));
            Ok(if def == lap { Verdict::Verified } else { Verdict::Fails })
        }
        CullisCommand::Absign { field, a, b } => {
            let a = Matrix::parse(&load(a)?, field)?;
            let b = Matrix::parse(&load(b)?, field)?;
            if a.rows() < b.rows() {
                return Err(Failure::Usage(format!("A is {0}x{0} but B is {1}x{1}; need n >= k", a.rows(), b.rows())));
            }
            let ctx = CullisContext::new(a.rows(), b.rows(), field)?;
            let holds = ctx.ab_sign_condition(&a, &b)?;
            r.line(format!("field: {field}"));
            r.line(format!("n = {}, k = {}", a.rows(), b.rows()));
            r.line(format!("det(B) = {}", lpreserve_core::cullis::square_det(&b)?));
            r.line(format!("sign condition: {}", if holds { "holds" } else { "fails" }));
            r.line(format!("X -> A X B preserves det_{{{},{}}}: {}", a.rows(), b.rows(), if holds { "yes" } else { "no" }));
            Ok(if holds { Verdict::Holds } else { Verdict::Fails })
        }
        CullisCommand::Poly { field, n, k } => {
            let ctx = CullisContext::new(*n, *k, field)?;
            r.line(ctx.as_poly().to_string());
            Ok(Verdict::Verified)
        }
    }
}

fn pick_mode(args: &PairArgs, phi: &VectorMap, psi: &VectorMap) -> CheckMode {
    match args.mode {
        ModeArg::Exhaustive => CheckMode::Exhaustive,
        ModeArg::Symbolic => CheckMode::Symbolic,
        ModeArg::Sampled => CheckMode::Sampled { count: args.samples, seed: args.poly.seed },
        ModeArg::Auto if phi.polys().is_some() && psi.polys().is_some() => CheckMode::Symbolic,
        ModeArg::Auto => CheckMode::Exhaustive,
    }
}

fn load_pair(args: &PairArgs) -> Step<(MultiPoly, VectorMap, VectorMap)> {
    let p = load_poly(&args.poly)?;
    let phi = load_map(&args.phi, &args.poly)?;
    let psi = match &args.psi {
        Some(s) => load_map(s, &args.poly)?,
        None => phi.clone(),
    };
    Ok((p, phi, psi))
}

fn run_verify(r: &mut Report, args: &PairArgs) -> Step<Verdict> {
    let (p, phi, psi) = load_pair(args)?;
    header(r, &args.poly, &p);
    r.line(format!("phi: {}, psi: {}", phi.form_name(), psi.form_name()));
    if p.homogeneity() == Homogeneity::Inhomogeneous {
        r.line("warning: P is not homogeneous; T_rad extraction does not apply");
    }
    if let Some(q) = args.poly.field.order() {
        if !p.degree().below(q) {
            r.line("warning: deg(P) >= |F|; T_rad extraction does not apply");
        }
    }
    let mode = pick_mode(args, &phi, &psi);
    let out = check_pair_with_cap(&p, &phi, &psi, mode, args.pair_cap)?;
    r.line(format!("method: {}", method_name(out.method)));
    if out.method == PairMethod::Exhaustive || out.method == PairMethod::Sampled {
        r.line(format!("triples evaluated: {}", out.evaluated));
    }
    match &out.verdict {
        PairVerdict::Holds => {
            let slice = preserves(&p, &phi, mode)?;
            r.line(format!("P o phi = P: {}", if slice { "yes" } else { "no" }));
            Ok(if slice { Verdict::Holds } else { Verdict::Fails })
        }
        PairVerdict::Fails(w) => {
            r.line(format!("witness: x = {}, y = {}, lambda = {}", vector(&w.x), vector(&w.y), w.lambda));
            Ok(Verdict::Fails)
        }
        PairVerdict::SufficientOnlyPass => {
            r.line("no counterexample among the sampled triples; the condition is not proved");
            Ok(Verdict::SufficientOnlyPass)
        }
    }
}

fn run_extract(r: &mut Report, args: &PairArgs) -> Step<Verdict> {
    let (p, phi, psi) = load_pair(args)?;
    header(r, &args.poly, &p);
    r.line(format!("phi: {}, psi: {}", phi.form_name(), psi.form_name()));
    let opts = ExtractOptions {
        radical: RadicalOptions { cap: args.poly.cap, seed: args.poly.seed },
        mode: match args.mode {
            ModeArg::Auto => None,
            _ => Some(pick_mode(args, &phi, &psi)),
        },
        ..Default::default()
    };
    let res = extract_t_rad_with(&p, &phi, &psi, opts)?;
    r.line(format!("pair check: holds, {}", method_name(res.pair.method)));
    r.line(format!("rad dim = {}, dim-condition: holds", res.report.radical.dim()));
    r.line(format!("quotient dim = {} (coordinates x{})", res.report.quotient.dim(), quotient_coords(&res.report.quotient)));
    r.line("T_rad =");
    matrix_lines(r, &res.t_rad);
    for (name, ok) in res.verified.items() {
        r.line(format!("{name}: {}", if ok { "yes" } else { "no" }));
    }
    Ok(if res.verified.all() { Verdict::Holds } else { Verdict::Fails })
}

fn run_selftest(r: &mut Report, args: &SelftestArgs) -> Verdict {
    let scale = if args.full { Scale::Full } else { Scale::Reduced };
    let fault = match args.inject_fault {
        Some(FaultArg::Sign) => Fault::Sign,
        None => Fault::None,
    };
    let outcomes = acceptance::run(scale, fault);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    for o in &outcomes {
        r.line(o.line());
    }
    let _ = writeln!(r.0, "{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        Verdict::Holds
    } else {
        Verdict::Fails
    }
}
