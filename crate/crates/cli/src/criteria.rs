//! The acceptance suite: ten exact checks, each with a wall-clock budget.

use std::fmt;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use slring::algebra::{check_identity_suite, standard_algebra, Algebra};
use slring::closure::{
    assoc_closure, derived_span, lie_closure_direct_sum, pairwise_lie_closure, spot_check_pairs,
    Closure, ClosureOptions, DirectSum,
};
use slring::exact::{Field, OperatorMatrix, Scalar};
use slring::special_linear::{
    associative_oracle, mult_algebra, mult_oracle, sl2_composition_dimension, sl_generators,
    sl_ring,
};
use slring::two_dim::{
    action_formula_checks, dpsi_generators, dpsi_graph, iota, iota_action, isometry_check,
    sl2_basis,
};
use slring::{sample, Error};

use crate::error::CliError;
use crate::report::{Report, ReportBuilder};
use crate::tasks::{compute_sl_dim, sl_closure, Settings};

pub const REAL_COMPOSITION: [&str; 7] = ["R", "C", "Rsplit", "H", "M2", "O", "Osplit"];
pub const COMPOSITION: [&str; 8] = ["R", "C", "Rsplit", "H", "M2", "O", "Osplit", "BiO"];

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {:>2} [{}] {:.1}s/{}s: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

/// Collects findings for one criterion.
#[derive(Default)]
struct Findings {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Findings {
    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

/// Runs the criteria in order, sharing computed closures with the last
/// one's spot checks.
pub struct Suite {
    settings: Settings,
    computed: Vec<(String, Closure)>,
}

type Body = fn(&mut Suite, &mut Findings) -> Result<(), CliError>;

const CRITERIA: [(u8, &str, u64, Body); 10] = [
    (1, "identity suite", 5, Suite::identity_suite),
    (
        2,
        "sl_2 dimensions and explicit basis",
        60,
        Suite::sl2_dimensions,
    ),
    (3, "infinitesimal action kernel", 120, Suite::kernel),
    (4, "determinant isometry", 60, Suite::isometry),
    (5, "iota", 10, Suite::iota),
    (6, "associative oracle", 120, Suite::associative),
    (
        7,
        "multiplication algebras",
        30,
        Suite::multiplication_algebras,
    ),
    (8, "sl_3 over octonions", 1200, Suite::octonions_m3),
    (9, "bioctonions", 120, Suite::bioctonions),
    (10, "closure engine", 300, Suite::closure_engine),
];

impl Suite {
    pub fn new(settings: Settings) -> Self {
        Suite {
            settings,
            computed: Vec::new(),
        }
    }

    pub fn run(&mut self, id: u8) -> CriterionOutcome {
        let &(id, title, budget, body) = CRITERIA
            .iter()
            .find(|c| c.0 == id)
            .expect("criterion ids are 1..=10");
        let budget = Duration::from_secs(budget);
        let start = Instant::now();
        let mut f = Findings::default();
        if let Err(e) = body(self, &mut f) {
            f.failures.push(format!("error: {e}"));
        }
        let elapsed = start.elapsed();
        f.require(
            elapsed < budget,
            format!("over budget: {:.1}s", elapsed.as_secs_f64()),
        );
        let pass = f.failures.is_empty();
        let detail = if pass {
            f.notes.join("; ")
        } else {
            f.failures.join("; ")
        };
        CriterionOutcome {
            id,
            title,
            pass,
            detail,
            elapsed,
            budget,
        }
    }

    pub fn ids() -> impl Iterator<Item = u8> {
        CRITERIA.iter().map(|c| c.0)
    }

    pub fn run_all(&mut self) -> Vec<CriterionOutcome> {
        CRITERIA.iter().map(|c| self.run(c.0)).collect()
    }

    fn opts(&self) -> ClosureOptions {
        self.settings.closure_options()
    }

    fn keep(&mut self, label: impl Into<String>, c: &Closure) {
        self.computed.push((label.into(), c.clone()));
    }

    fn identity_suite(&mut self, f: &mut Findings) -> Result<(), CliError> {
        for name in COMPOSITION {
            let report = check_identity_suite(&standard_algebra(name)?)?;
            for c in report.checks.iter().filter(|c| !c.pass) {
                f.require(false, format!("{name} {}: {}", c.name, c.detail));
            }
        }
        let s = check_identity_suite(&standard_algebra("S")?)?;
        f.require(!s.passes("composition"), "sedenions pass composition");
        f.require(!s.passes("alternativity"), "sedenions pass alternativity");
        f.note("8 algebras pass all checks; sedenions fail composition and alternativity");
        Ok(())
    }

    fn sl2_dimensions(&mut self, f: &mut Findings) -> Result<(), CliError> {
        let mut dims = Vec::new();
        for (name, expected) in REAL_COMPOSITION.into_iter().zip([3, 6, 6, 15, 15, 45, 45]) {
            let a = standard_algebra(name)?;
            let c = sl_ring(&a, 2, self.opts())?;
            f.require(
                c.dim() == expected,
                format!("dim sl_2({name}) = {} != {expected}", c.dim()),
            );
            let basis = sl2_basis(&a)?;
            let span = slring::exact::Subspace::spanned_by(
                a.field(),
                c.span.ambient_dim(),
                basis.iter().map(|b| b.entries().to_vec()),
            )?;
            f.require(
                span.dim() == basis.len(),
                format!("{name}: explicit basis is dependent"),
            );
            f.require(
                span == c.span,
                format!("{name}: explicit basis does not span"),
            );
            dims.push(c.dim().to_string());
            self.keep(format!("sl_2({name})"), &c);
        }
        f.note(format!("dims {}", dims.join(", ")));
        Ok(())
    }

    fn kernel(&mut self, f: &mut Findings) -> Result<(), CliError> {
        let mut literal_c = Vec::new();
        for name in COMPOSITION {
            let a = standard_algebra(name)?;
            let g = dpsi_graph(&a, self.opts())?;
            let n = sl2_composition_dimension(a.dim());
            let triple = (g.graph_dim(), g.kernel_dim, g.image_dim());
            f.require(
                triple == (n, 0, n),
                format!("{name}: (graph, kernel, image) = {triple:?}"),
            );
            for problem in g.failures() {
                f.require(false, format!("{name}: {problem}"));
            }
            for c in action_formula_checks(&a)? {
                if c.name == "formula-c" && !c.pass {
                    literal_c.push(name);
                } else {
                    f.require(c.pass, format!("{name}: {}", c.detail));
                }
            }
            self.keep(format!("graph({name})"), &g.graph);
        }
        f.require(
            literal_c.is_empty(),
            format!(
                "formula (c) as displayed does not match the action for {}; \
                 its off-diagonal entry is twice the computed one (formula-c-halved matches)",
                literal_c.join(", ")
            ),
        );
        f.note("all graphs (n, 0, n), images skew, formulas (a)-(d) match");
        Ok(())
    }

    fn isometry(&mut self, f: &mut Findings) -> Result<(), CliError> {
        let mut total = 0;
        for name in COMPOSITION {
            let a = standard_algebra(name)?;
            let mut rng = StdRng::seed_from_u64(self.settings.seed);
            let rep = isometry_check(&a, self.settings.samples, &mut rng)?;
            f.require(
                rep.actions >= 100,
                format!("{name}: only {} actions", rep.actions),
            );
            f.require(rep.all_pass(), format!("{name}: {rep:?}"));
            total += rep.actions;
        }
        f.note(format!(
            "{total} actions preserve the determinant, both bracketings agree"
        ));
        Ok(())
    }

    fn iota(&mut self, f: &mut Findings) -> Result<(), CliError> {
        for name in COMPOSITION {
            let a = standard_algebra(name)?;
            match iota(&a) {
                Ok(_) => {}
                Err(Error::Verification(m)) => f.require(false, m),
                Err(e) => return Err(e.into()),
            }
            let mut rng = StdRng::seed_from_u64(self.settings.seed);
            for _ in 0..100 {
                let h = sample::random_herm2(&a, &mut rng);
                if iota_action(&a, &h)? != h {
                    f.require(false, format!("{name}: iota moves a hermitian matrix"));
                    break;
                }
            }
        }
        f.note("iota = -I and fixes 100 hermitian matrices for each algebra");
        Ok(())
    }

    fn associative(&mut self, f: &mut Findings) -> Result<(), CliError> {
        let mut dims = Vec::new();
        for (name, expected) in [("R", [3, 8]), ("M2mat", [15, 35]), ("H", [15, 35])] {
            let a = standard_algebra(name)?;
            for (m, e) in [2, 3].into_iter().zip(expected) {
                let c = sl_ring(&a, m, self.opts())?;
                let oracle = associative_oracle(&a, m)?;
                f.require(
                    c.dim() == e,
                    format!("dim sl_{m}({name}) = {} != {e}", c.dim()),
                );
                f.require(
                    c.span == oracle,
                    format!("sl_{m}({name}) differs from its oracle"),
                );
                dims.push(format!("{name},{m}:{}", c.dim()));
                self.keep(format!("sl_{m}({name})"), &c);
            }
        }
        f.note(dims.join(" "));
        Ok(())
    }

    fn multiplication_algebras(&mut self, f: &mut Findings) -> Result<(), CliError> {
        for name in ["O", "Osplit"] {
            let a = standard_algebra(name)?;
            let m = mult_algebra(&a, self.opts())?;
            f.require(m.dim() == 64, format!("dim M_{name} = {}", m.dim()));
            let derived = derived_span(&m.span)?;
            f.require(
                derived.dim() == 63,
                format!("dim [M_{name}, M_{name}] = {}", derived.dim()),
            );
            let regular = assoc_closure(&a.left_mult_basis(), self.opts())?;
            f.require(
                regular.span == m.span,
                format!("{name}: closure routes disagree"),
            );
        }
        f.note("dim M = 64, dim [M, M] = 63 for O and Osplit");
        Ok(())
    }

    fn octonions_m3(&mut self, f: &mut Findings) -> Result<(), CliError> {
        for name in ["O", "Osplit"] {
            let a = standard_algebra(name)?;
            let start = Instant::now();
            let mut scratch = ReportBuilder::new("sl-dim", name, Some(3), "Q");
            let c = sl_closure(&a, 3, &self.settings, &mut scratch)?;
            let first = start.elapsed();
            f.require(c.dim() == 575, format!("dim sl_3({name}) = {}", c.dim()));
            f.require(
                first < Duration::from_secs(600),
                format!("{name}: {:.1}s > 10 min", first.as_secs_f64()),
            );
            let oracle = mult_oracle(&a, 3, self.opts())?;
            f.require(
                c.span == oracle,
                format!("sl_3({name}) differs from the multiplication oracle"),
            );
            let traceless = c.basis_ops().iter().all(|op| op.trace().is_zero());
            f.require(
                traceless && c.dim() == 24 * 24 - 1,
                format!("sl_3({name}) is not all traceless 24x24"),
            );
            let mut note = format!("{name}: 575 in {:.1}s", first.as_secs_f64());
            if self.settings.cache.is_some() {
                let again = Instant::now();
                let r = compute_sl_dim(&a, 3, &self.settings)?;
                let t = again.elapsed();
                f.require(r.cache, format!("{name}: second run missed the cache"));
                note.push_str(&format!(", cached rerun {:.2}s", t.as_secs_f64()));
            }
            f.note(note);
            self.keep(format!("sl_3({name})"), &c);
        }
        Ok(())
    }

    fn bioctonions(&mut self, f: &mut Findings) -> Result<(), CliError> {
        let a = standard_algebra("BiO")?;
        f.require(a.field() == Field::Gaussian, "BiO is not over Q(i)");
        let c = sl_ring(&a, 2, self.opts())?;
        f.require(c.dim() == 45, format!("dim sl_2(BiO) = {}", c.dim()));
        let g = dpsi_graph(&a, self.opts())?;
        f.require(g.kernel_dim == 0, format!("kernel dim {}", g.kernel_dim));
        f.require(g.graph_dim() == 45, format!("graph dim {}", g.graph_dim()));
        self.keep("sl_2(BiO)", &c);
        f.note("dim 45, kernel 0 over Q(i)");
        Ok(())
    }

    fn closure_engine(&mut self, f: &mut Findings) -> Result<(), CliError> {
        let instances = small_instances()?;
        for (label, gens) in &instances {
            let fast = lie_closure_direct_sum(gens, self.opts())?;
            let brute = pairwise_lie_closure(gens)?;
            f.require(
                fast.span == brute,
                format!("left-normed closure differs on {label}"),
            );
        }
        for (i, (label, c)) in self.computed.iter().enumerate() {
            f.require(
                spot_check_pairs(c, 100, self.settings.seed + i as u64)?,
                format!("pair spot check fails on {label}"),
            );
        }
        let det = |threads| {
            let s = Settings {
                threads,
                cache: None,
                ..self.settings.clone()
            };
            compute_sl_dim(&standard_algebra("O")?, 2, &s).map(|r: Report| r.to_json_untimed())
        };
        f.require(det(1)? == det(8)?, "reports differ between 1 and 8 threads");
        f.note(format!(
            "{} small instances match brute force; {} computed bases spot-checked; reports thread-independent",
            instances.len(),
            self.computed.len()
        ));
        Ok(())
    }
}

fn elementary(n: usize, i: usize, j: usize) -> OperatorMatrix {
    let mut m = OperatorMatrix::zeros(Field::Rational, n, n);
    m.set(i, j, Scalar::one(Field::Rational));
    m
}

fn singles(ops: Vec<OperatorMatrix>) -> Result<Vec<DirectSum>, CliError> {
    Ok(ops
        .into_iter()
        .map(DirectSum::single)
        .collect::<Result<_, _>>()?)
}

/// Every generator set the suite knows with ambient dimension at most 16.
pub fn small_instances() -> Result<Vec<(String, Vec<DirectSum>)>, CliError> {
    let mut out = Vec::new();
    for (name, m) in [("R", 2), ("R", 3), ("R", 4), ("C", 2), ("Rsplit", 2)] {
        let a = standard_algebra(name)?;
        out.push((format!("sl_{m}({name})"), singles(sl_generators(&a, m)?)?));
    }
    for name in ["R", "C", "Rsplit", "H", "M2", "M2mat"] {
        let a: Algebra = standard_algebra(name)?;
        out.push((format!("L({name})"), singles(a.left_mult_basis())?));
    }
    out.push(("graph(R)".into(), dpsi_generators(&standard_algebra("R")?)?));
    out.push((
        "4-cycle".into(),
        singles(vec![
            elementary(4, 0, 1),
            elementary(4, 1, 2),
            elementary(4, 2, 3),
            elementary(4, 3, 0),
        ])?,
    ));
    let mut rng = StdRng::seed_from_u64(16);
    for n in 2..=4 {
        for k in 1..=3 {
            for t in 0..4 {
                let gens = (0..k)
                    .map(|_| {
                        OperatorMatrix::from_fn(Field::Rational, n, n, |_, _| {
                            let x = if rng.gen_bool(0.3) {
                                rng.gen_range(-2..=2)
                            } else {
                                0
                            };
                            Scalar::from_int(Field::Rational, x)
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                out.push((format!("random {n}x{n} k={k} #{t}"), singles(gens)?));
            }
        }
    }
    Ok(out)
}

/// The whole suite as one report.
pub fn run_suite_report(settings: &Settings) -> Report {
    let mut r = ReportBuilder::new("all", "*", None, "*");
    for o in Suite::new(settings.clone()).run_all() {
        let budget = format!("pass within {}s", o.budget.as_secs());
        let actual = format!(
            "{} in {:.1}s: {}",
            if o.pass { "pass" } else { "fail" },
            o.elapsed.as_secs_f64(),
            o.detail
        );
        r.record(
            format!("criterion-{} {}", o.id, o.title),
            budget,
            actual,
            o.pass,
        );
    }
    r.finish()
}
