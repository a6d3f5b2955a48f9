use std::path::Path;

use rand::rngs::StdRng;
use rand::SeedableRng;

use slring::algebra::{
    algebra_from_json, check_identity_suite, standard_algebra, standard_signature, Algebra,
    ALGEBRA_NAMES,
};
use slring::closure::{Closure, ClosureOptions};
use slring::exact::{rref, signature, Field, Signature, Subspace};
use slring::special_linear::{
    associative_dimension, associative_oracle, block_traces_in_derived, mult_oracle,
    sl2_composition_dimension, sl_ring,
};
use slring::two_dim::{
    action_formula_checks, det_form_signature, dpsi_graph, iota, iota_action, iso_target_form,
    isometry_check, sl2_basis,
};
use slring::{sample, Error};

use crate::cache::{cache_key, BasisCache};
use crate::error::CliError;
use crate::report::{Report, ReportBuilder, Verdict};

pub const DEFAULT_SAMPLES: usize = 100;

#[derive(Clone, Debug)]
pub struct Settings {
    pub threads: usize,
    pub samples: usize,
    pub seed: u64,
    pub cache: Option<BasisCache>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            threads: 1,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            cache: None,
        }
    }
}

impl Settings {
    pub fn closure_options(&self) -> ClosureOptions {
        ClosureOptions::with_threads(self.threads)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyTask {
    IdentitySuite,
    ThAssociative,
    ThMult,
    Sl2Basis,
    Kernel,
    Isometry,
    Iota,
    Signature,
}

impl VerifyTask {
    pub fn name(self) -> &'static str {
        match self {
            VerifyTask::IdentitySuite => "identity-suite",
            VerifyTask::ThAssociative => "th-associative",
            VerifyTask::ThMult => "th-mult",
            VerifyTask::Sl2Basis => "lemma-basis",
            VerifyTask::Kernel => "kernel",
            VerifyTask::Isometry => "isometry",
            VerifyTask::Iota => "iota",
            VerifyTask::Signature => "signature",
        }
    }
}

/// A standard algebra name, or a path to an algebra file.
pub fn resolve_algebra(arg: &str) -> Result<Algebra, CliError> {
    if ALGEBRA_NAMES.contains(&arg) {
        return Ok(standard_algebra(arg)?);
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        return Ok(algebra_from_json(&text)?);
    }
    Err(Error::UnknownAlgebra(arg.to_string()).into())
}

fn builder(task: &str, alg: &Algebra, m: Option<usize>) -> ReportBuilder {
    ReportBuilder::new(task, alg.name(), m, alg.field().code())
}

/// `sl_m(A)`, from the cache when one is configured and holds it.
pub fn sl_closure(
    alg: &Algebra,
    m: usize,
    settings: &Settings,
    report: &mut ReportBuilder,
) -> Result<Closure, CliError> {
    let sizes = vec![m * alg.dim()];
    let key = settings
        .cache
        .as_ref()
        .map(|_| cache_key(alg, m, "sl-ring"));
    if let (Some(cache), Some(key)) = (&settings.cache, &key) {
        if let Some(span) = cache.load(key, alg.field()) {
            report.cached(true);
            let closure = Closure::from_span(span, sizes)?;
            report.absorb(&closure.stats);
            return Ok(closure);
        }
    }
    let closure = sl_ring(alg, m, settings.closure_options())?;
    report.absorb(&closure.stats);
    if let (Some(cache), Some(key)) = (&settings.cache, &key) {
        cache.save(key, &closure.span)?;
    }
    Ok(closure)
}

/// The dimension `sl_m(A)` should have, when an independent route to it
/// exists.
fn expected_sl_dim(
    alg: &Algebra,
    m: usize,
    settings: &Settings,
) -> Result<Option<usize>, CliError> {
    if m >= 3 {
        return Ok(Some(mult_oracle(alg, m, settings.closure_options())?.dim()));
    }
    if alg.is_associative() && alg.has_faithful_left_regular_rep() {
        return Ok(Some(associative_dimension(alg, m)?));
    }
    if alg.is_composition_presentation() && check_identity_suite(alg)?.all_pass() {
        return Ok(Some(sl2_composition_dimension(alg.dim())));
    }
    Ok(None)
}

pub fn compute_sl_dim(alg: &Algebra, m: usize, settings: &Settings) -> Result<Report, CliError> {
    if m < 1 {
        return Err(CliError::Usage("--m must be at least 1".into()));
    }
    let mut r = builder("sl-dim", alg, Some(m));
    let closure = sl_closure(alg, m, settings, &mut r)?;
    let actual = closure.dim();
    match expected_sl_dim(alg, m, settings)? {
        Some(e) => r.compare("dimension", e, actual),
        None => r.record("dimension", "unknown", actual, true),
    };
    Ok(r.finish())
}

pub fn check_algebra(alg: &Algebra) -> Result<Report, CliError> {
    let mut r = builder("check-algebra", alg, None);
    r.compare("valid", "yes", "yes");
    r.compare("dim", alg.dim(), alg.dim());
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    r.compare(
        "unit",
        yes_no(alg.unit().is_some()),
        yes_no(alg.unit().is_some()),
    );
    r.compare(
        "associative",
        yes_no(alg.is_associative()),
        yes_no(alg.is_associative()),
    );
    let comp = alg.is_composition_presentation();
    r.compare("conjugation-and-form", yes_no(comp), yes_no(comp));
    Ok(r.finish())
}

pub fn list_algebras() -> Result<Vec<(String, usize, Field, Option<(usize, usize)>)>, CliError> {
    ALGEBRA_NAMES
        .iter()
        .map(|&n| {
            let a = standard_algebra(n)?;
            Ok((n.to_string(), a.dim(), a.field(), standard_signature(n)))
        })
        .collect()
}

pub fn verify(
    task: VerifyTask,
    alg: &Algebra,
    m: Option<usize>,
    settings: &Settings,
) -> Result<Report, CliError> {
    match task {
        VerifyTask::IdentitySuite => identity_suite(alg),
        VerifyTask::ThAssociative => th_associative(alg, m, settings),
        VerifyTask::ThMult => th_mult(alg, m.unwrap_or(3), settings),
        VerifyTask::Sl2Basis => sl2_basis_task(alg, settings),
        VerifyTask::Kernel => kernel(alg, settings),
        VerifyTask::Isometry => isometry(alg, settings),
        VerifyTask::Iota => iota_task(alg, settings),
        VerifyTask::Signature => signature_task(alg),
    }
}

fn identity_suite(alg: &Algebra) -> Result<Report, CliError> {
    let mut r = builder("identity-suite", alg, None);
    for c in check_identity_suite(alg)?.checks {
        r.record(c.name, "pass", Verdict(c.pass, &c.detail), c.pass);
    }
    Ok(r.finish())
}

fn th_associative(
    alg: &Algebra,
    m: Option<usize>,
    settings: &Settings,
) -> Result<Report, CliError> {
    let ms = m.map(|m| vec![m]).unwrap_or_else(|| vec![2, 3]);
    let mut r = builder("th-associative", alg, m);
    for m in ms {
        let oracle = associative_oracle(alg, m)?;
        let closure = sl_closure(alg, m, settings, &mut r)?;
        r.compare(format!("dimension m={m}"), oracle.dim(), closure.dim());
        r.compare(format!("equal m={m}"), true, closure.span.same_as(&oracle)?);
    }
    Ok(r.finish())
}

fn th_mult(alg: &Algebra, m: usize, settings: &Settings) -> Result<Report, CliError> {
    let mut r = builder("th-mult", alg, Some(m));
    let oracle = mult_oracle(alg, m, settings.closure_options())?;
    let closure = sl_closure(alg, m, settings, &mut r)?;
    r.compare("dimension", oracle.dim(), closure.dim());
    r.compare("equal", true, closure.span.same_as(&oracle)?);
    r.compare(
        "block-traces",
        true,
        block_traces_in_derived(alg, m, &closure.span, settings.closure_options())?,
    );
    Ok(r.finish())
}

fn sl2_basis_task(alg: &Algebra, settings: &Settings) -> Result<Report, CliError> {
    let mut r = builder("lemma-basis", alg, Some(2));
    let basis = sl2_basis(alg)?;
    let d = alg.dim();
    let expected = sl2_composition_dimension(d);
    r.compare("count", expected, basis.len());
    let span = Subspace::spanned_by(
        alg.field(),
        4 * d * d,
        basis.iter().map(|b| b.entries().to_vec()),
    )?;
    r.compare("rank", basis.len(), span.dim());
    let closure = sl_closure(alg, 2, settings, &mut r)?;
    r.compare("spans-sl2", true, span.same_as(&closure.span)?);
    Ok(r.finish())
}

fn kernel(alg: &Algebra, settings: &Settings) -> Result<Report, CliError> {
    let mut r = builder("kernel", alg, Some(2));
    let g = dpsi_graph(alg, settings.closure_options())?;
    r.absorb(&g.graph.stats);
    r.compare("graph", g.expected_dim, g.graph_dim());
    r.compare("kernel", 0, g.kernel_dim);
    r.compare("image", g.expected_dim, g.image_dim());
    r.compare("projects-onto-sl2", true, g.projection_matches);
    r.compare("image-skew", true, g.image_skew);
    match action_formula_checks(alg) {
        Ok(checks) => {
            for c in checks {
                r.record(c.name, "pass", Verdict(c.pass, &c.detail), c.pass);
            }
        }
        Err(Error::Precondition(msg)) => {
            r.record("formulas", "pass", Verdict(false, &msg), false);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r.finish())
}

fn isometry(alg: &Algebra, settings: &Settings) -> Result<Report, CliError> {
    let mut r = builder("isometry", alg, Some(2));
    let mut rng = StdRng::seed_from_u64(settings.seed);
    match isometry_check(alg, settings.samples, &mut rng) {
        Ok(rep) => {
            r.compare("bracketings-agree", "pass", "pass");
            r.compare(
                "hermitian",
                format!("{}/{}", rep.actions, rep.actions),
                format!("{}/{}", rep.hermitian, rep.actions),
            );
            r.compare(
                "determinant-preserved",
                format!("{}/{}", rep.actions, rep.actions),
                format!("{}/{}", rep.preserved, rep.actions),
            );
        }
        Err(Error::Verification(msg)) => {
            r.record("bracketings-agree", "pass", Verdict(false, &msg), false);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r.finish())
}

fn iota_task(alg: &Algebra, settings: &Settings) -> Result<Report, CliError> {
    let mut r = builder("iota", alg, Some(2));
    match iota(alg) {
        Ok(_) => r.compare("minus-identity", "pass", "pass"),
        Err(Error::Verification(msg)) => {
            r.record("minus-identity", "pass", Verdict(false, &msg), false)
        }
        Err(e) => return Err(e.into()),
    };
    let mut rng = StdRng::seed_from_u64(settings.seed);
    let mut fixed = 0;
    let mut failure = None;
    for _ in 0..settings.samples {
        let h = sample::random_herm2(alg, &mut rng);
        match iota_action(alg, &h) {
            Ok(y) if y == h => fixed += 1,
            Ok(_) => {}
            Err(Error::Verification(msg)) => {
                failure = Some(msg);
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    match failure {
        None => r.compare(
            "fixes-hermitian",
            format!("{0}/{0}", settings.samples),
            format!("{fixed}/{}", settings.samples),
        ),
        Some(msg) => r.record(
            "fixes-hermitian",
            format!("{0}/{0}", settings.samples),
            Verdict(false, &msg),
            false,
        ),
    };
    Ok(r.finish())
}

fn signature_task(alg: &Algebra) -> Result<Report, CliError> {
    let mut r = builder("signature", alg, None);
    let form = alg
        .form_matrix()
        .ok_or_else(|| Error::MissingCapability {
            algebra: alg.name().to_string(),
            capability: "quadratic form",
        })?
        .clone();
    let d = alg.dim();
    match alg.field() {
        Field::Rational => {
            let s = signature(&form)?;
            let expected = match standard_signature(alg.name()) {
                Some((p, q)) => Signature::new(p, q, 0).to_string(),
                None if s.zero == 0 && (s.minus == 0 || 2 * s.minus == d) => s.to_string(),
                None => format!("({d},0,0) or ({0},{0},0)", d / 2),
            };
            r.compare("norm", expected, s);
            let det_expected = Signature::new(s.minus + 1, s.plus + 1, s.zero);
            r.compare("determinant-form", det_expected, det_form_signature(alg)?);
            r.compare(
                "flat-target",
                det_expected,
                signature(&iso_target_form(alg)?)?,
            );
        }
        Field::Gaussian => {
            // No ordering on Q(i): only the rank is meaningful.
            r.compare("norm-rank", d, rref(&form).rank);
            let det = slring::two_dim::form_matrix(alg)?;
            r.compare("determinant-form-rank", d + 2, rref(&det).rank);
        }
    }
    Ok(r.finish())
}
