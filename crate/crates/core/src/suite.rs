//! Verification suites run by the `opalg` binary.
//!
//! Each suite draws from its own generator derived from the run seed, so a
//! suite produces the same checks alone or inside `verify-all`.

use std::path::PathBuf;
use std::time::Instant;

use rand::Rng;
use serde_json::{json, Map, Value};

use crate::algebra::{
    generated_subalgebra, inverse, multiset_distance, neumann_inverse, op_norm, spectral_radius_limit, spectrum,
    AlgebraElement, SubalgebraBasis,
};
use crate::calculus::{
    apply_function, chebyshev_calculus, sqrt_psd, CalculusMethod, ChebyshevInterpolant, ScalarFunction,
};
use crate::error::{Error, Result};
use crate::gns::{
    commutant_dim, equivalence_intertwiner, gns_construct, is_irreducible, left_kernel,
    vector_state as gns_vector_state, verify_gns, CyclicRepresentation,
};
use crate::io::{self, FunctionFile, GridConfig, IntegralConfig, StateFile, WeylConfig};
use crate::linalg::{self, CMatrix, CVector, C64};
use crate::random::{
    gaussian_c64, random_density, random_diagonalizable, random_element, random_hermitian, random_normal, random_psd,
    random_unit_vector, random_unitary, rng, SeededRng,
};
use crate::report::{Check, ConfigEcho, Report};
use crate::states::{
    character_report, characters_of_commutative, eigenstate_dispersion, finite_gelfand, jordan_product,
    positivity_paths, riesz_markov_weights, state_sup_norm, DensityFunctional, FiniteFunctionAlgebra, FunctionElement,
};
use crate::tolerance::ToleranceContext;
use crate::weyl::{
    born_rule_check, ccr_defect, check_weyl_relations, distance_up_to_phase, fock_expectation, fock_kernel,
    fock_projection, fourier_matrix, poly_commutator_check, refinement_table, riemann_apply, symplectic_form,
    uncertainty_check, DiscreteWeylSystem, GridRep, PhasePoint, RiemannIntegralSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectra,
    Calculus,
    Gns,
    Weyl,
    Svn,
    Schrodinger,
    VerifyAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Spectra => "spectra",
            Self::Calculus => "calculus",
            Self::Gns => "gns",
            Self::Weyl => "weyl",
            Self::Svn => "svn",
            Self::Schrodinger => "schrodinger",
            Self::VerifyAll => "verify-all",
        }
    }

    fn salt(self) -> u64 {
        match self {
            Self::Spectra => 1,
            Self::Calculus => 2,
            Self::Gns => 3,
            Self::Weyl => 4,
            Self::Svn => 5,
            Self::Schrodinger => 6,
            Self::VerifyAll => 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    /// Matrix for `spectra` and `calculus`, or an algebra generator for `gns`.
    pub input: Option<PathBuf>,
    pub state: Option<PathBuf>,
    pub grid: Option<PathBuf>,
    pub weyl: Option<PathBuf>,
    pub integral: Option<PathBuf>,
    pub functions: Option<PathBuf>,
    pub seed: u64,
    pub ctx: ToleranceContext,
    pub depth: Option<u32>,
    pub cutoff: Option<f64>,
    pub modulus: Option<usize>,
    pub grid_n: Option<usize>,
    pub grid_l: Option<f64>,
    pub function: Option<String>,
    pub timing: bool,
}

impl RunConfig {
    pub fn new(command: Command, seed: u64) -> Self {
        Self {
            command,
            input: None,
            state: None,
            grid: None,
            weyl: None,
            integral: None,
            functions: None,
            seed,
            ctx: ToleranceContext::default(),
            depth: None,
            cutoff: None,
            modulus: None,
            grid_n: None,
            grid_l: None,
            function: None,
            timing: false,
        }
    }

    fn suite_rng(&self, c: Command) -> SeededRng {
        rng(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ c.salt())
    }

    fn echo(&self) -> ConfigEcho {
        let mut options = Map::new();
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        let mut put = |k: &str, v: Value| {
            if !v.is_null() {
                options.insert(k.to_string(), v);
            }
        };
        put("in", json!(path(&self.input)));
        put("state", json!(path(&self.state)));
        put("grid", json!(path(&self.grid)));
        put("weyl", json!(path(&self.weyl)));
        put("integral", json!(path(&self.integral)));
        put("functions", json!(path(&self.functions)));
        put("depth", json!(self.depth));
        put("cutoff", json!(self.cutoff));
        put("modulus", json!(self.modulus));
        put("N", json!(self.grid_n));
        put("L", json!(self.grid_l));
        put("function", json!(self.function));
        ConfigEcho {
            command: self.command.name().to_string(),
            seed: self.seed,
            tolerances: self.ctx,
            options,
        }
    }
}

/// Collects checks, stamping elapsed time on each block when timing is on.
struct Recorder {
    checks: Vec<Check>,
    details: Map<String, Value>,
    timing: bool,
}

impl Recorder {
    fn block<T>(&mut self, f: impl FnOnce(&mut Vec<Check>) -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let first = self.checks.len();
        let out = f(&mut self.checks)?;
        if self.timing {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            for c in &mut self.checks[first..] {
                c.elapsed_ms = Some(ms);
            }
        }
        Ok(out)
    }
}

pub fn run(cfg: &RunConfig) -> Result<Report> {
    let mut rec = Recorder {
        checks: Vec::new(),
        details: Map::new(),
        timing: cfg.timing,
    };
    let suites = match cfg.command {
        Command::VerifyAll => vec![
            Command::Spectra,
            Command::Calculus,
            Command::Gns,
            Command::Weyl,
            Command::Svn,
            Command::Schrodinger,
        ],
        other => vec![other],
    };
    for s in suites {
        let mut r = cfg.suite_rng(s);
        match s {
            Command::Spectra => spectra_suite(cfg, &mut rec, &mut r)?,
            Command::Calculus => calculus_suite(cfg, &mut rec, &mut r)?,
            Command::Gns => gns_suite(cfg, &mut rec, &mut r)?,
            Command::Weyl => weyl_suite(cfg, &mut rec, &mut r)?,
            Command::Svn => svn_suite(cfg, &mut rec, &mut r)?,
            Command::Schrodinger => schrodinger_suite(cfg, &mut rec, &mut r)?,
            Command::VerifyAll => {}
        }
    }
    Ok(Report::new(cfg.echo(), rec.checks, rec.details))
}

fn input_or<F: FnOnce() -> AlgebraElement>(cfg: &RunConfig, default: F) -> Result<AlgebraElement> {
    match &cfg.input {
        Some(p) => io::read_matrix(p),
        None => Ok(default()),
    }
}

fn spectra_suite(cfg: &RunConfig, rec: &mut Recorder, r: &mut SeededRng) -> Result<()> {
    let ctx = &cfg.ctx;
    let a = input_or(cfg, || random_element(4, r))?;
    rec.block(|out| {
        let norm = op_norm(&a);
        let cstar = (op_norm(&(&a.adjoint() * &a)) - norm * norm).abs() / (norm * norm).max(f64::MIN_POSITIVE);
        out.push(Check::at_most(
            "spectra.input.cstar_identity",
            "C*-identity ||A*A|| = ||A||^2",
            cstar,
            ctx.eq_tol,
        ));
        let spec = spectrum(&a, ctx)?;
        out.push(Check::exact(
            "spectra.input.spectrum_nonempty",
            "non-empty spectrum",
            spec.eigenvalues.len().min(1),
            1,
        ));
        out.push(Check::at_most(
            "spectra.input.radius_le_norm",
            "spectral radius r(A) <= ||A||",
            spec.radius - norm,
            ctx.spec_tol,
        ));
        let adj = spectrum(&a.adjoint(), ctx)?;
        let conj: Vec<C64> = spec.eigenvalues.iter().map(|z| z.conj()).collect();
        out.push(Check::at_most(
            "spectra.input.adjoint_spectrum",
            "spectrum of A* is the conjugate of spectrum of A",
            multiset_distance(&adj.eigenvalues, &conj),
            ctx.spec_tol * norm.max(1.0),
        ));
        if let Ok(inv) = inverse(&a, ctx) {
            let recip: Vec<C64> = spec.eigenvalues.iter().map(|z| z.inv()).collect();
            let sinv = spectrum(&inv, ctx)?;
            out.push(Check::at_most(
                "spectra.input.inverse_spectrum",
                "spectrum of A^-1 is the reciprocal of spectrum of A",
                multiset_distance(&sinv.eigenvalues, &recip),
                ctx.spec_tol * op_norm(&inv).max(1.0).powi(2),
            ));
        }
        let limit = spectral_radius_limit(&a, 30);
        out.push(Check::at_most(
            "spectra.input.radius_formula",
            "spectral radius formula lim ||A^n||^(1/n)",
            (limit - spec.radius).abs() / spec.radius.max(f64::MIN_POSITIVE),
            1e-4,
        ));
        // Neumann series on a contraction built from the input
        let b = a.scale_real(0.5 / norm);
        let series = neumann_inverse(&b, 200, ctx)?;
        let direct = inverse(&(&AlgebraElement::unit(a.dim()) - &b), ctx)?;
        out.push(Check::at_most(
            "spectra.input.neumann_series",
            "Neumann series (I - A)^-1 = sum A^k for ||A|| < 1",
            op_norm(&(&series - &direct)),
            1e3 * ctx.eq_tol,
        ));
        Ok(())
    })?;
    rec.block(|out| {
        let mut worst: f64 = 0.0;
        for n in [2, 4, 8, 16] {
            for _ in 0..100 {
                let m = random_element(n, r);
                let norm = op_norm(&m);
                worst = worst.max((op_norm(&(&m.adjoint() * &m)) - norm * norm).abs() / (norm * norm));
            }
        }
        out.push(Check::at_most(
            "spectra.random.cstar_identity",
            "C*-identity ||A*A|| = ||A||^2",
            worst,
            ctx.eq_tol,
        ));
        let (mut normal, mut real_im, mut pm, mut unit, mut radius) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for i in 0..100 {
            let nm = random_normal(5, r);
            let s = spectrum(&nm, ctx)?;
            normal = normal.max((s.radius - op_norm(&nm)).abs() / op_norm(&nm));
            let h = random_hermitian(5, r);
            let s = spectrum(&h, ctx)?;
            let hn = op_norm(&h);
            real_im = real_im.max(s.max_imaginary() / hn);
            pm = pm.max(s.distance_to(C64::new(hn, 0.0)).min(s.distance_to(C64::new(-hn, 0.0))) / hn);
            let u = random_unitary(5, r);
            let s = spectrum(&u, ctx)?;
            unit = unit.max(s.eigenvalues.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max));
            if i < 50 {
                let d = random_diagonalizable(8, r);
                let s = spectrum(&d, ctx)?;
                radius = radius.max((spectral_radius_limit(&d, 30) - s.radius).abs() / s.radius);
            }
        }
        out.push(Check::at_most(
            "spectra.random.normal_radius_is_norm",
            "normal A: r(A) = ||A||",
            normal,
            ctx.spec_tol,
        ));
        out.push(Check::at_most(
            "spectra.random.self_adjoint_real",
            "self-adjoint A: real spectrum",
            real_im,
            ctx.spec_tol,
        ));
        out.push(Check::at_most(
            "spectra.random.self_adjoint_norm_in_spectrum",
            "self-adjoint A: ||A|| or -||A|| in spectrum",
            pm,
            ctx.spec_tol,
        ));
        out.push(Check::at_most(
            "spectra.random.unitary_unit_circle",
            "unitary A: spectrum on the unit circle",
            unit,
            ctx.spec_tol,
        ));
        out.push(Check::at_most(
            "spectra.random.radius_formula",
            "spectral radius formula lim ||A^n||^(1/n)",
            radius,
            1e-4,
        ));
        Ok(())
    })
}

/// Worst-case relative defects of the calculus laws on one normal element:
/// isometry, star, homomorphism, spectral mapping.
fn calculus_laws(a: &AlgebraElement, ctx: &ToleranceContext) -> Result<[f64; 4]> {
    let exp = ScalarFunction::catalog("exp")?;
    let fa = apply_function(a, &exp, ctx)?;
    let spec = spectrum(a, ctx)?;
    let sup = spec.eigenvalues.iter().map(|&z| exp.eval(z).norm()).fold(0.0, f64::max);
    let scale = sup.max(1.0);
    let isometry = (op_norm(&fa) - sup).abs() / scale;
    let conj = apply_function(a, &exp.conjugate(), ctx)?;
    let star = op_norm(&(&conj - &fa.adjoint())) / scale;
    let g = ScalarFunction::new("z^2+1", |z| z * z + 1.0);
    let fg = apply_function(a, &exp.product(&g), ctx)?;
    let prod = &fa * &apply_function(a, &g, ctx)?;
    let hom = op_norm(&(&fg - &prod)) / op_norm(&prod).max(1.0);
    let mapped: Vec<C64> = spec.eigenvalues.iter().map(|&z| exp.eval(z)).collect();
    let mapping = multiset_distance(&spectrum(&fa, ctx)?.eigenvalues, &mapped) / scale;
    Ok([isometry, star, hom, mapping])
}

/// `max(||R^2 - A^2||, ||R - |A| ||)` relative, with `R = sqrt_psd(A^2)`.
fn sqrt_defect(a: &AlgebraElement, ctx: &ToleranceContext) -> Result<f64> {
    let sq = a * a;
    let root = sqrt_psd(&sq, ctx)?;
    let abs = apply_function(a, &ScalarFunction::catalog("abs")?, ctx)?;
    let square = op_norm(&(&(&root * &root) - &sq)) / op_norm(&sq).max(1.0);
    Ok(square.max(op_norm(&(&root - &abs)) / op_norm(&abs).max(1.0)))
}

fn chebyshev_gap(a: &AlgebraElement, ctx: &ToleranceContext) -> Result<f64> {
    let exp = ScalarFunction::catalog("exp")?;
    let unit = a.scale_real(1.0 / op_norm(a));
    let cheb = chebyshev_calculus(&unit, &exp, 16, ctx)?;
    Ok(op_norm(&(&cheb - &apply_function(&unit, &exp, ctx)?)))
}

const LAW_NAMES: [(&str, &str); 4] = [
    ("isometry", "||f(A)|| = sup |f| on the spectrum"),
    ("star", "conj(f)(A) = f(A)*"),
    ("homomorphism", "(fg)(A) = f(A) g(A)"),
    ("spectral_mapping", "spectrum of f(A) = f(spectrum of A)"),
];

fn calculus_suite(cfg: &RunConfig, rec: &mut Recorder, r: &mut SeededRng) -> Result<()> {
    let ctx = &cfg.ctx;
    let a = input_or(cfg, || random_hermitian(4, r))?;
    rec.block(|out| {
        for ((name, anchor), d) in LAW_NAMES.iter().zip(calculus_laws(&a, ctx)?) {
            out.push(Check::at_most(format!("calculus.input.{name}"), *anchor, d, 1e-9));
        }
        if a.is_self_adjoint(ctx) {
            out.push(Check::at_most(
                "calculus.input.sqrt_uniqueness",
                "unique positive square root",
                sqrt_defect(&a, ctx)?,
                1e-9,
            ));
        }
        Ok(())
    })?;
    rec.block(|out| {
        let mut laws = [0.0f64; 4];
        let (mut sqrt, mut cheb) = (0.0f64, 0.0f64);
        for i in 0..40 {
            let n = 2 + i % 5;
            let m = if i % 2 == 0 {
                random_hermitian(n, r)
            } else {
                random_normal(n, r)
            };
            for (w, d) in laws.iter_mut().zip(calculus_laws(&m, ctx)?) {
                *w = w.max(d);
            }
            if i % 2 == 0 {
                sqrt = sqrt.max(sqrt_defect(&m, ctx)?);
                cheb = cheb.max(chebyshev_gap(&m, ctx)?);
            }
        }
        for ((name, anchor), d) in LAW_NAMES.iter().zip(laws) {
            out.push(Check::at_most(format!("calculus.random.{name}"), *anchor, d, 1e-9));
        }
        out.push(Check::at_most(
            "calculus.random.sqrt_uniqueness",
            "unique positive square root",
            sqrt,
            1e-9,
        ));
        out.push(Check::at_most(
            "calculus.random.chebyshev_agreement",
            "polynomial approximation converges to f(A)",
            cheb,
            1e-10,
        ));
        let mut residual: f64 = 0.0;
        let mut count = 0;
        while count < 50 {
            let h = random_hermitian(3 + count % 4, r);
            let Ok(inv) = inverse(&h, ctx) else { continue };
            let s = generated_subalgebra(std::slice::from_ref(&h), ctx)?;
            residual = residual.max(s.relative_residual(&inv));
            count += 1;
        }
        out.push(Check::at_most(
            "calculus.random.spectrum_independence",
            "A^-1 lies in the C*-subalgebra generated by A",
            residual,
            1e-8,
        ));
        Ok(())
    })?;
    if let Some(spec) = &cfg.function {
        let method = CalculusMethod::parse(spec)?;
        rec.block(|out| {
            let got = method.apply(&a, ctx)?;
            let (name, bound) = match &method {
                CalculusMethod::Spectral(name) => (name.clone(), 0.0),
                CalculusMethod::Chebyshev { degree, name } => {
                    let f = ScalarFunction::catalog(name)?;
                    let radius = op_norm(&a).max(f64::MIN_POSITIVE);
                    let interp = ChebyshevInterpolant::new(&f, *degree, radius);
                    let points = spectrum(&a, ctx)?.eigenvalues;
                    (name.clone(), interp.max_error_on(&f, &points))
                }
            };
            let reference = apply_function(&a, &ScalarFunction::catalog(&name)?, ctx)?;
            out.push(Check::at_most(
                "calculus.selected_function",
                "f(A) by the requested method matches the spectral route",
                op_norm(&(&got - &reference)),
                bound + 1e3 * ctx.eq_tol * op_norm(&reference).max(1.0),
            ));
            Ok(())
        })?;
    }
    Ok(())
}

fn unit_vector(n: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[i] = C64::new(1.0, 0.0);
    v
}

fn state_or(cfg: &RunConfig, r: &mut SeededRng) -> Result<DensityFunctional> {
    let d = match &cfg.state {
        Some(p) => io::read_json::<StateFile>(p)?.to_matrix()?,
        None => random_density(3, 2, r).into_matrix(),
    };
    DensityFunctional::new(d, &cfg.ctx)
}

fn gns_suite(cfg: &RunConfig, rec: &mut Recorder, r: &mut SeededRng) -> Result<()> {
    let ctx = &cfg.ctx;
    let rho = state_or(cfg, r)?;
    let n = rho.dim();
    let algebra = match &cfg.input {
        Some(p) => {
            let g = io::read_matrix(p)?;
            if g.dim() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: g.dim(),
                });
            }
            generated_subalgebra(&[g], ctx)?
        }
        None => SubalgebraBasis::full(n),
    };
    if !rho.is_state(ctx) {
        return Err(Error::NotAState("state file does not hold a density matrix".into()));
    }
    let summary = rec.block(|out| {
        let g = gns_construct(&algebra, &rho, ctx)?;
        let v = verify_gns(&g, &algebra, &rho, ctx);
        out.push(Check::at_most(
            "gns.state_recovery",
            "GNS: rho(A) = <x, pi(A) x>",
            v.state_recovery,
            ctx.eq_tol,
        ));
        out.push(Check::at_most(
            "gns.multiplicativity",
            "GNS: pi(AB) = pi(A) pi(B)",
            v.multiplicativity,
            ctx.eq_tol,
        ));
        out.push(Check::at_most("gns.star", "GNS: pi(A*) = pi(A)*", v.star, ctx.eq_tol));
        out.push(Check::at_most("gns.unital", "GNS: pi(I) = I", v.unital, ctx.eq_tol));
        out.push(Check::at_most(
            "gns.cyclic_norm",
            "GNS: unit cyclic vector",
            v.cyclic_norm,
            ctx.eq_tol,
        ));
        out.push(Check::exact(
            "gns.cyclicity",
            "GNS: pi(A) x spans the space",
            v.cyclic_rank,
            v.hilbert_dim,
        ));
        out.push(Check::at_most(
            "gns.contractivity",
            "representations are contractive",
            v.contractivity_excess,
            ctx.eq_tol,
        ));
        out.push(Check::exact(
            "gns.dimension_law",
            "dim H = dim A - dim left kernel",
            v.hilbert_dim + v.kernel_dim,
            v.algebra_dim,
        ));
        if let Some(iso) = v.isometry {
            out.push(Check::at_most(
                "gns.faithful_isometry",
                "faithful representations are isometric",
                iso,
                ctx.rank_tol,
            ));
        }
        let mut summary = Map::new();
        summary.insert("hilbert_dim".into(), json!(g.hilbert_dim));
        summary.insert("kernel_dim".into(), json!(g.kernel_dim));
        summary.insert("algebra_dim".into(), json!(algebra.len()));
        summary.insert("irreducible".into(), json!(is_irreducible(&g.representation, ctx)));
        summary.insert("defects".into(), serde_json::to_value(&v).expect("serializable"));

        // Cauchy-Schwarz and the left-ideal property on random algebra elements
        let mut cs: f64 = 0.0;
        for _ in 0..20 {
            let x = algebra.combine(&(0..algebra.len()).map(|_| gaussian_c64(r)).collect::<Vec<_>>());
            let y = algebra.combine(&(0..algebra.len()).map(|_| gaussian_c64(r)).collect::<Vec<_>>());
            let lhs = rho.eval(&(&x.adjoint() * &y)).norm_sqr();
            let rhs = rho.eval(&(&x.adjoint() * &x)).re * rho.eval(&(&y.adjoint() * &y)).re;
            cs = cs.max((lhs - rhs) / rhs.max(1.0));
        }
        out.push(Check::at_most(
            "gns.cauchy_schwarz",
            "|rho(A*B)|^2 <= rho(A*A) rho(B*B)",
            cs,
            1e-12,
        ));
        let mut ideal: f64 = 0.0;
        for k in left_kernel(&algebra, &rho, ctx)? {
            let b = algebra.combine(&(0..algebra.len()).map(|_| gaussian_c64(r)).collect::<Vec<_>>());
            let bk = &b * &k;
            ideal = ideal.max(rho.eval(&(&bk.adjoint() * &bk)).norm());
        }
        out.push(Check::at_most(
            "gns.left_ideal",
            "left kernel is a left ideal",
            ideal,
            1e-12,
        ));
        Ok(summary)
    })?;
    rec.details.insert("gns".into(), Value::Object(summary));
    rec.block(|out| {
        let m2 = SubalgebraBasis::full(2);
        let tr = gns_construct(&m2, &DensityFunctional::maximally_mixed(2), ctx)?;
        out.push(Check::exact(
            "gns.tracial_m2_dim",
            "tracial state on M_2 has a 4-dimensional GNS space",
            tr.hilbert_dim,
            4,
        ));
        out.push(Check::exact(
            "gns.tracial_m2_commutant",
            "tracial GNS representation is reducible",
            commutant_dim(&tr.representation, ctx),
            4,
        ));
        let mut worst_defect: f64 = 0.0;
        let mut reducible = 0;
        for n in 2..=8 {
            let alg = SubalgebraBasis::full(n);
            let pure = DensityFunctional::vector_state(&unit_vector(n, 0));
            let g = gns_construct(&alg, &pure, ctx)?;
            if !is_irreducible(&g.representation, ctx) {
                reducible += 1;
            }
            let def = CyclicRepresentation::defining(&alg, unit_vector(n, 0));
            worst_defect = worst_defect.max(equivalence_intertwiner(&g.representation, &def, ctx)?.defect);
        }
        out.push(Check::exact(
            "gns.pure_irreducible",
            "GNS of a pure state is irreducible",
            reducible,
            0,
        ));
        out.push(Check::at_most(
            "gns.pure_defining_intertwiner",
            "GNS uniqueness: unitary intertwiner",
            worst_defect,
            1e-9,
        ));
        let base = gns_construct(&SubalgebraBasis::full(3), &rho_for_planting(r, ctx)?, ctx)?;
        let (mut defect, mut phase): (f64, f64) = (0.0, 0.0);
        for _ in 0..20 {
            let v = random_unitary(base.hilbert_dim, r).into_matrix();
            let u = equivalence_intertwiner(&base.representation, &base.representation.conjugated(&v), ctx)?;
            defect = defect.max(u.defect);
            phase = phase.max(distance_up_to_phase(&u.matrix, &v));
        }
        out.push(Check::at_most(
            "gns.planted_unitary_defect",
            "GNS uniqueness: unitary intertwiner",
            defect,
            1e-9,
        ));
        out.push(Check::at_most(
            "gns.planted_unitary_match",
            "intertwiner unique up to phase",
            phase,
            1e-8,
        ));
        Ok(())
    })?;
    let vector_states = rec.block(|out| {
        // a unit y in the GNS space of a pure state is cyclic, so the GNS of
        // A -> <y, pi(A) y> must be equivalent to (pi, y)
        let alg = SubalgebraBasis::full(3);
        let g = gns_construct(&alg, &DensityFunctional::vector_state(&unit_vector(3, 0)), ctx)?;
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let y = random_unit_vector(3, r);
            let omega = gns_vector_state(&g, &y, &alg, ctx)?;
            let gy = gns_construct(&alg, &omega, ctx)?;
            let target = CyclicRepresentation {
                rep_basis: g.representation.rep_basis.clone(),
                cyclic_vector: y,
            };
            worst = worst.max(equivalence_intertwiner(&gy.representation, &target, ctx)?.defect);
        }
        out.push(Check::at_most(
            "gns.vector_state_equivalence",
            "vector states of a pure GNS space give equivalent representations",
            worst,
            1e-9,
        ));
        // reducible case: recorded only
        let m2 = SubalgebraBasis::full(2);
        let tr = gns_construct(&m2, &DensityFunctional::maximally_mixed(2), ctx)?;
        let y = random_unit_vector(tr.hilbert_dim, r);
        let omega = gns_vector_state(&tr, &y, &m2, ctx)?;
        let gy = gns_construct(&m2, &omega, ctx)?;
        let mut summary = Map::new();
        summary.insert("pure_max_defect".into(), json!(worst));
        summary.insert("tracial_random_vector_gns_dim".into(), json!(gy.hilbert_dim));
        summary.insert("tracial_space_dim".into(), json!(tr.hilbert_dim));
        if gy.hilbert_dim == tr.hilbert_dim {
            let target = CyclicRepresentation {
                rep_basis: tr.representation.rep_basis.clone(),
                cyclic_vector: y,
            };
            let d = equivalence_intertwiner(&gy.representation, &target, ctx)
                .map(|u| u.defect)
                .ok();
            summary.insert("tracial_defect".into(), json!(d));
        }
        Ok(summary)
    })?;
    if let Some(Value::Object(g)) = rec.details.get_mut("gns") {
        g.insert("vector_states".into(), Value::Object(vector_states));
    }
    states_checks(cfg, rec, r)
}

fn rho_for_planting(r: &mut SeededRng, ctx: &ToleranceContext) -> Result<DensityFunctional> {
    DensityFunctional::new(random_density(3, 3, r).into_matrix(), ctx)
}

fn sample_functions(cfg: &RunConfig, r: &mut SeededRng) -> Result<(FiniteFunctionAlgebra, Vec<FunctionElement>)> {
    match &cfg.functions {
        Some(p) => {
            let files: Vec<FunctionFile> = io::read_json(p)?;
            let first = files.first().ok_or(Error::Empty("function file"))?;
            let (alg, _) = FiniteFunctionAlgebra::from_file(first)?;
            let elems = files
                .iter()
                .map(|f| FiniteFunctionAlgebra::from_file(f).map(|(_, e)| e))
                .collect::<Result<Vec<_>>>()?;
            Ok((alg, elems))
        }
        None => {
            let alg = FiniteFunctionAlgebra::with_size(5)?;
            let elems = (0..4)
                .map(|_| alg.element((0..5).map(|_| gaussian_c64(r)).collect()))
                .collect::<Result<Vec<_>>>()?;
            Ok((alg, elems))
        }
    }
}

fn states_checks(cfg: &RunConfig, rec: &mut Recorder, r: &mut SeededRng) -> Result<()> {
    let ctx = &cfg.ctx;
    rec.block(|out| {
        let mut disagreements = 0;
        let mut order_unit_failures = 0;
        let mut jordan: f64 = 0.0;
        let mut squares: f64 = 0.0;
        for _ in 0..100 {
            let h = random_hermitian(4, r);
            if !positivity_paths(&h, ctx).agree() {
                disagreements += 1;
            }
            let norm = op_norm(&h);
            let unit = AlgebraElement::unit(4).scale_real(norm);
            for side in [&unit - &h, &unit + &h] {
                if !positivity_paths(&side, ctx).by_spectrum {
                    order_unit_failures += 1;
                }
            }
            let k = random_hermitian(4, r);
            let sym = (&h * &k + &k * &h).scale_real(0.5);
            jordan = jordan.max(op_norm(&(&jordan_product(&h, &k)? - &sym)));
            let s1 = state_sup_norm(&h, 0, r, ctx)?.exact;
            let s2 = state_sup_norm(&(&h * &h), 0, r, ctx)?.exact;
            squares = squares.max((s2 - s1 * s1).abs() / (s1 * s1));
        }
        out.push(Check::exact(
            "states.positivity_paths_agree",
            "positive: spectrum >= 0 iff ||A - ||A|| I|| <= ||A||",
            disagreements,
            0,
        ));
        out.push(Check::exact(
            "states.order_unit",
            "-||A|| I <= A <= ||A|| I",
            order_unit_failures,
            0,
        ));
        out.push(Check::at_most(
            "states.jordan_embedding",
            "A o B = (AB + BA)/2",
            jordan,
            1e-12,
        ));
        out.push(Check::at_most(
            "states.sup_norm_squares",
            "||A^2|| = ||A||^2 for the state norm",
            squares,
            1e-12,
        ));
        let mut dispersion: f64 = 0.0;
        for _ in 0..20 {
            let h = random_hermitian(4, r);
            let norm = op_norm(&h);
            dispersion = dispersion.max(eigenstate_dispersion(&h, ctx)? / (norm * norm).max(1.0));
        }
        out.push(Check::at_most(
            "states.eigenstate_dispersion_free",
            "eigenvector states of A are dispersion-free for A",
            dispersion,
            1e-12,
        ));

        let mut criteria_disagree = 0;
        let mut hermitian: f64 = 0.0;
        let mut sampled_excess: f64 = f64::NEG_INFINITY;
        for i in 0..50 {
            let d = if i % 2 == 0 {
                random_density(3, 1 + i % 3, r).into_matrix()
            } else {
                // trace one but with a negative eigenvalue
                let p = random_psd(3, 3, r).into_matrix();
                let t = linalg::trace(&p).re;
                (p - CMatrix::identity(3, 3).scale(t)).scale(-1.0 / (2.0 * t))
            };
            let rho = DensityFunctional::new(d, ctx)?;
            let c = rho.criteria(ctx);
            if c.positive_and_unital != c.norm_criterion {
                criteria_disagree += 1;
            }
            if rho.is_state(ctx) {
                let a = random_element(3, r);
                hermitian = hermitian.max((rho.eval(&a.adjoint()) - rho.eval(&a).conj()).norm());
            }
            let norm = rho.functional_norm();
            for _ in 0..20 {
                let a = random_element(3, r);
                let a = a.scale_real(1.0 / op_norm(&a));
                sampled_excess = sampled_excess.max(rho.eval(&a).norm() - norm);
            }
        }
        out.push(Check::exact(
            "states.norm_criterion",
            "rho positive iff ||rho|| = rho(I)",
            criteria_disagree,
            0,
        ));
        out.push(Check::at_most(
            "states.hermitian_functional",
            "rho(A*) = conj(rho(A))",
            hermitian,
            1e-12,
        ));
        out.push(Check::at_most(
            "states.functional_norm_bound",
            "|rho(A)| <= ||rho|| on the unit ball",
            sampled_excess,
            1e-12,
        ));
        Ok(())
    })?;
    let (alg, elems) = sample_functions(cfg, r)?;
    rec.block(|out| {
        let g = finite_gelfand(&alg, &elems, ctx)?;
        out.push(Check::at_most(
            "states.gelfand_cstar",
            "C(X): ||f* f|| = ||f||^2",
            g.c_star_defect,
            ctx.eq_tol,
        ));
        out.push(Check::at_most(
            "states.gelfand_spectrum_is_image",
            "spectrum of f is the image of f",
            g.spectrum_defect,
            ctx.spec_tol,
        ));
        out.push(Check::exact(
            "states.gelfand_pure_states",
            "pure states of C(X) are point evaluations",
            usize::from(g.pure_states_are_points == Some(false)),
            0,
        ));
        out.push(Check::at_most(
            "states.gelfand_transform",
            "Gelfand transform is a *-isomorphism",
            g.gelfand_transform_defect,
            ctx.spec_tol,
        ));
        let mut shift = CMatrix::zeros(4, 4);
        for k in 0..4 {
            shift[((k + 1) % 4, k)] = C64::new(1.0, 0.0);
        }
        let circ = generated_subalgebra(&[AlgebraElement::new(shift)?], ctx)?;
        let chars = characters_of_commutative(&circ, ctx)?;
        let cr = character_report(&circ, &chars, ctx);
        out.push(Check::at_most(
            "states.characters_multiplicative",
            "characters are multiplicative",
            cr.multiplicativity_defect.max(cr.star_defect),
            1e-10,
        ));
        out.push(Check::exact(
            "states.characters_count",
            "commutative algebra = functions on its characters",
            cr.evaluation_rank,
            circ.len(),
        ));
        let w: Vec<f64> = (0..alg.len()).map(|_| r.random::<f64>()).collect();
        let total: f64 = w.iter().sum();
        let w: Vec<f64> = w.iter().map(|x| x / total).collect();
        let rho = |f: &FunctionElement| f.values.iter().zip(&w).map(|(v, wx)| v * wx).sum::<C64>();
        let back = riesz_markov_weights(&alg, rho, ctx)?;
        let round = back.iter().zip(&w).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        out.push(Check::at_most(
            "states.riesz_markov_roundtrip",
            "states on C(X) are probability measures",
            round,
            1e-12,
        ));
        Ok(())
    })
}

fn weyl_config(cfg: &RunConfig) -> Result<Option<WeylConfig>> {
    cfg.weyl.as_ref().map(|p| io::read_json::<WeylConfig>(p)).transpose()
}

fn moduli(cfg: &RunConfig) -> Result<Vec<usize>> {
    if let Some(n) = cfg.modulus {
        return Ok(vec![n]);
    }
    Ok(match weyl_config(cfg)? {
        Some(w) => vec![w.n],
        None => vec![3, 5, 7, 9],
    })
}

fn weyl_suite(cfg: &RunConfig, rec: &mut Recorder, r: &mut SeededRng) -> Result<()> {
    let ctx = &cfg.ctx;
    let ns = moduli(cfg)?;
    let conj_seed = weyl_config(cfg)?.and_then(|w| w.conjugator_seed).unwrap_or(cfg.seed);
    let relations = rec.block(|out| {
        let mut summary = Vec::new();
        for &n in &ns {
            for (label, sys) in [
                ("standard", DiscreteWeylSystem::standard(n)?),
                (
                    "conjugated",
                    DiscreteWeylSystem::with_random_conjugator(n, conj_seed, ctx)?,
                ),
            ] {
                let rep = check_weyl_relations(&sys, ctx)?;
                out.push(Check::at_most(
                    format!("weyl.n{n:02}.{label}.relations"),
                    "Weyl relations W(v)W(w) = W(v+w) phase, W(v)* = W(-v)",
                    rep.max_deviation(),
                    1e-13,
                ));
                out.push(Check::exact(
                    format!("weyl.n{n:02}.{label}.commutant"),
                    "finite Weyl system is irreducible",
                    rep.commutant_dim,
                    1,
                ));
                out.push(Check::at_most(
                    format!("weyl.n{n:02}.{label}.clock_spectrum"),
                    "spectrum of W(v): n-th roots of unity at finite n",
                    rep.clock_spectrum,
                    ctx.spec_tol,
                ));
                summary.push(serde_json::to_value(&rep).expect("serializable"));
            }
        }
        let mut anti: f64 = 0.0;
        for _ in 0..50 {
            let v = PhasePoint::planar(r.random_range(-3.0..3.0), r.random_range(-3.0..3.0));
            let w = PhasePoint::planar(r.random_range(-3.0..3.0), r.random_range(-3.0..3.0));
            anti = anti.max((symplectic_form(&v, &w)? + symplectic_form(&w, &v)?).abs());
            anti = anti.max(symplectic_form(&v, &v)?.abs());
        }
        out.push(Check::at_most(
            "weyl.symplectic_antisymmetry",
            "sigma(v, w) = -sigma(w, v), sigma(v, v) = 0",
            anti,
            1e-15,
        ));
        let poly = poly_commutator_check(32, 40)?;
        out.push(Check::exact(
            "weyl.poly_commutator",
            "[x^n, p] = i n x^(n-1) exactly",
            poly.failures,
            0,
        ));
        Ok(summary)
    })?;
    rec.details.insert("weyl".into(), json!({ "relations": relations }));
    Ok(())
}

fn integral_config(cfg: &RunConfig) -> Result<IntegralConfig> {
    let base = match &cfg.integral {
        Some(p) => io::read_json::<IntegralConfig>(p)?,
        None => IntegralConfig { cutoff: 12.0, depth: 6 },
    };
    Ok(IntegralConfig {
        cutoff: cfg.cutoff.unwrap_or(base.cutoff),
        depth: cfg.depth.unwrap_or(base.depth),
    })
}

/// Labels on the 9x9 grid over `[-2, 2]^2` with `|v| <= 2`.
fn disc_labels() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 0..9 {
        for j in 0..9 {
            let (a, b) = (-2.0 + 0.5 * i as f64, -2.0 + 0.5 * j as f64);
            if a * a + b * b <= 4.0 + 1e-12 {
                out.push((a, b));
            }
        }
    }
    out
}

fn svn_suite(cfg: &RunConfig, rec: &mut Recorder, _r: &mut SeededRng) -> Result<()> {
    let ctx = &cfg.ctx;
    let ns = match (cfg.modulus, weyl_config(cfg)?) {
        (Some(n), _) => vec![n],
        (None, Some(w)) => vec![w.n],
        (None, None) => vec![3, 5, 7, 9],
    };
    rec.block(|out| {
        for &n in &ns {
            let base = DiscreteWeylSystem::standard(n)?;
            let (mut defect, mut planted): (f64, f64) = (0.0, 0.0);
            for k in 0..20u64 {
                let s = cfg.seed.wrapping_add(1000 * n as u64 + k);
                let other = DiscreteWeylSystem::with_random_conjugator(n, s, ctx)?;
                let u = crate::weyl::svn_intertwiner_discrete(&base, &other, s ^ 0xa5a5, ctx)?;
                defect = defect.max(u.defect);
                planted = planted.max(distance_up_to_phase(&u.matrix, other.conjugator().expect("conjugated")));
            }
            out.push(Check::at_most(
                format!("svn.n{n:02}.intertwiner_defect"),
                "Stone-von Neumann: unitary equivalence",
                defect,
                1e-9,
            ));
            out.push(Check::at_most(
                format!("svn.n{n:02}.planted_match"),
                "intertwiner unique up to phase",
                planted,
                1e-8,
            ));
        }
        let dual = crate::weyl::svn_intertwiner_discrete(
            &DiscreteWeylSystem::standard(3)?,
            &DiscreteWeylSystem::fourier_dual(3)?,
            cfg.seed,
            ctx,
        )?;
        out.push(Check::at_most(
            "svn.fourier_dual_is_dft",
            "Stone-von Neumann: Fourier transform exchanges clock and shift",
            distance_up_to_phase(&dual.matrix, &fourier_matrix(3)).max(dual.defect),
            1e-10,
        ));
        Ok(())
    })?;
    let ic = integral_config(cfg)?;
    let grid = GridRep::new(256, 10.0)?;
    rec.block(|out| {
        let fock = fock_projection(&grid, ic.cutoff, ic.depth, ctx)?;
        let labels: Vec<(f64, f64)> = disc_labels().into_iter().step_by(4).collect();
        let rep = fock.report(&grid, &labels);
        let anchor = "Fock projection P = (1/2pi) int e^{-|v|^2/4} W(v) dv";
        out.push(Check::at_most("svn.fock.idempotent", anchor, rep.idempotency, 1e-3));
        out.push(Check::at_most("svn.fock.self_adjoint", anchor, rep.hermiticity, 1e-6));
        out.push(Check::at_most(
            "svn.fock.rank_one",
            anchor,
            rep.second_eigenvalue.abs(),
            1e-3,
        ));
        out.push(Check::near("svn.fock.trace", anchor, rep.trace_re, 1.0, 1e-3));
        out.push(Check::at_most(
            "svn.fock.fixes_ground_state",
            "Fock vector is the Gaussian ground state",
            rep.fixes_ground_state,
            1e-3,
        ));
        out.push(Check::at_most(
            "svn.fock.range_is_ground_state",
            "Fock vector is the Gaussian ground state",
            rep.range_is_ground_state,
            1e-3,
        ));
        out.push(Check::at_most(
            "svn.fock.sandwich",
            "P W(z) P = e^{-|z|^2/4} P",
            rep.sandwich,
            1e-3,
        ));
        Ok(())
    })
}

fn grid_from(cfg: &RunConfig) -> Result<GridRep> {
    let base = match &cfg.grid {
        Some(p) => io::read_json::<GridConfig>(p)?,
        None => GridConfig { n: 512, l: 10.0 },
    };
    GridRep::new(cfg.grid_n.unwrap_or(base.n), cfg.grid_l.unwrap_or(base.l))
}

fn schrodinger_suite(cfg: &RunConfig, rec: &mut Recorder, r: &mut SeededRng) -> Result<()> {
    let ctx = &cfg.ctx;
    let grid = grid_from(cfg)?;
    let n = grid.len();
    let (l, dx) = (grid.half_width(), grid.dx());
    let omega = grid.ground_state();
    rec.block(|out| {
        let mut weyl: f64 = 0.0;
        for alpha in [std::f64::consts::PI / l, 2.0 * std::f64::consts::PI / l] {
            for beta in [dx, 2.0 * dx] {
                for psi in [
                    omega.clone(),
                    grid.sample(|x| C64::new((-(x - 1.0) * (x - 1.0)).exp(), 0.0)),
                ] {
                    let lhs = grid.apply_u(alpha, &grid.apply_v(beta, &psi));
                    let rhs = grid.apply_v(beta, &grid.apply_u(alpha, &psi)) * C64::from_polar(1.0, -alpha * beta);
                    weyl = weyl.max((lhs - rhs).norm());
                }
            }
        }
        out.push(Check::at_most(
            "schrodinger.weyl_relation",
            "U(a)V(b) = e^{-iab} V(b)U(a)",
            weyl,
            1e-10,
        ));
        let e = unit_vector(n, n / 2);
        out.push(Check::at_most(
            "schrodinger.grid_shift",
            "(V(b) psi)(x) = psi(x + b)",
            (grid.apply_v(dx, &e) - unit_vector(n, n / 2 - 1)).norm(),
            1e-12,
        ));
        let x = CVector::from_iterator(n, (0..n).map(|_| gaussian_c64(r)));
        let x = &x / C64::new(x.norm(), 0.0);
        out.push(Check::at_most(
            "schrodinger.translation_unitary",
            "V(b) is unitary",
            (grid.apply_v(0.37, &x).norm() - 1.0).abs(),
            ctx.eq_tol,
        ));
        let k0 = grid.k()[3];
        let wave = grid.sample(|x| C64::from_polar(1.0, k0 * x));
        out.push(Check::at_most(
            "schrodinger.momentum_eigenvector",
            "p = -i d/dx",
            (grid.apply_p(&wave) - &wave * C64::new(k0, 0.0)).norm(),
            1e-10,
        ));
        let mut ccr: f64 = 0.0;
        for h in grid.hermite_functions(5) {
            ccr = ccr.max(ccr_defect(&grid, &h)?);
        }
        out.push(Check::at_most(
            "schrodinger.ccr_hermite",
            "[q, p] = i on Hermite functions",
            ccr,
            1e-6,
        ));
        out.push(Check::at_most(
            "schrodinger.ccr_ground",
            "[q, p] = i on the ground state",
            ccr_defect(&grid, &omega)?,
            1e-8,
        ));
        let mut fock: f64 = 0.0;
        let mut imag: f64 = 0.0;
        for (a, b) in disc_labels() {
            let z = fock_expectation(&grid, &PhasePoint::planar(a, b))?;
            fock = fock.max((z - C64::new((-(a * a + b * b) / 4.0).exp(), 0.0)).norm());
            imag = imag.max(z.im.abs());
        }
        out.push(Check::at_most(
            "schrodinger.fock_state",
            "Fock state <Omega, W(v) Omega> = e^{-|v|^2/4}",
            fock,
            1e-6,
        ));
        out.push(Check::at_most(
            "schrodinger.fock_state_real",
            "Fock state <Omega, W(v) Omega> = e^{-|v|^2/4}",
            imag,
            1e-8,
        ));
        Ok(())
    })?;
    rec.block(|out| {
        let gauss = uncertainty_check(&grid, &omega, ctx)?.product();
        out.push(Check::near(
            "schrodinger.uncertainty_ground",
            "dq dp >= 1/2, attained by the Gaussian",
            gauss,
            0.5,
            1e-6,
        ));
        let h1 = uncertainty_check(&grid, &grid.hermite(1), ctx)?.product();
        out.push(Check::near(
            "schrodinger.uncertainty_h1",
            "dq dp = 3/2 for the first excited state",
            h1,
            1.5,
            1e-5,
        ));
        let sq = grid.sample(|x| C64::new((-2.0 * x * x).exp(), 0.0));
        let sq = uncertainty_check(&grid, &sq, ctx)?.product();
        out.push(Check::near(
            "schrodinger.uncertainty_squeezed",
            "squeezing preserves dq dp = 1/2",
            sq,
            0.5,
            1e-5,
        ));
        let hs = grid.hermite_functions(8);
        let mut lowest = f64::INFINITY;
        for _ in 0..100 {
            let mut psi = CVector::zeros(n);
            for h in &hs {
                psi += h * gaussian_c64(r);
            }
            let psi = &psi / C64::new(psi.norm(), 0.0);
            lowest = lowest.min(uncertainty_check(&grid, &psi, ctx)?.product());
        }
        out.push(Check::at_least(
            "schrodinger.uncertainty_random",
            "dq dp >= 1/2",
            lowest,
            0.5 - 1e-6,
        ));
        let ones = vec![1.0; n];
        let xs: Vec<f64> = grid.x().to_vec();
        let x2: Vec<f64> = xs.iter().map(|x| x * x).collect();
        let b1 = born_rule_check(&grid, &omega, &ones)?;
        let bx = born_rule_check(&grid, &omega, &xs)?;
        let bx2 = born_rule_check(&grid, &omega, &x2)?;
        out.push(Check::near(
            "schrodinger.born_normalization",
            "|psi|^2 is a probability density",
            b1.expectation,
            1.0,
            ctx.eq_tol,
        ));
        out.push(Check::at_most(
            "schrodinger.born_mean",
            "<x> = int |psi|^2 x",
            bx.expectation.abs(),
            1e-10,
        ));
        out.push(Check::near(
            "schrodinger.born_second_moment",
            "<x^2> = int |psi|^2 x^2",
            bx2.expectation,
            0.5,
            1e-6,
        ));
        out.push(Check::at_most(
            "schrodinger.born_weights",
            "|psi|^2 is a probability density",
            (bx2.expectation - bx2.weighted_sum)
                .abs()
                .max((b1.total_weight - 1.0).abs()),
            ctx.eq_tol,
        ));
        Ok(())
    })?;
    let table = rec.block(|out| {
        let spec = RiemannIntegralSpec::new(12.0, fock_kernel(), 0);
        let table = refinement_table(&grid, &spec, &omega, 0..=7)?;
        // increments below this are rounding noise once the sum has converged
        let floor = 1e-12;
        out.push(Check::exact(
            "schrodinger.riemann_refinement",
            "Riemann sums of operator integrals converge",
            usize::from(!table.is_monotone_from(3, floor)),
            0,
        ));
        let square = spec.at_depth(6);
        let rect = spec.at_depth(5).with_base_cells(3, 12);
        let mut diff: f64 = 0.0;
        for psi in [omega.clone(), grid.hermite(3)] {
            diff = diff.max((riemann_apply(&grid, &square, &psi)? - riemann_apply(&grid, &rect, &psi)?).norm());
        }
        out.push(Check::at_most(
            "schrodinger.riemann_partition_independence",
            "limit independent of the partition",
            diff,
            1e-6,
        ));
        Ok(table)
    })?;
    rec.details.insert(
        "schrodinger".into(),
        json!({ "grid": { "N": n, "L": l }, "refinement": table }),
    );
    Ok(())
}
