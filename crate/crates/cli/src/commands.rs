//! One function per subcommand; each returns the report body and its checks.

use num_complex::Complex64;
use tricover::ball::{embed_j, BallPoint};
use tricover::config_space::YIndex;
use tricover::inverse::{ell_from_y, roundtrip, theta_map, ROUTE_AGREEMENT};
use tricover::periods::{full_period_matrix, psi_forward, BranchData, CycleTable};
use tricover::suites::{run_suite, Suite, SuiteConfig};
use tricover::theta::{all_theta_constants, ClassTag, ThetaConfig};
use tricover::Error;

use crate::report::{complexes, matrix, Table, Value};

pub const VANISH_LIMIT: f64 = 1e-9;
pub const RELATION_LIMIT: f64 = 1e-8;
pub const TWIST_LIMIT: f64 = 1e-7;
pub const PERIOD_MATRIX_LIMIT: f64 = 1e-6;
pub const ROUNDTRIP_LIMIT: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: Option<f64>,
    pub threshold: Option<f64>,
    pub passed: bool,
    pub stretch: bool,
}

impl Check {
    fn below(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value: Some(value), threshold: Some(threshold), passed: value < threshold, stretch: false }
    }

    fn above(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value: Some(value), threshold: Some(threshold), passed: value > threshold, stretch: false }
    }

    fn holds(name: impl Into<String>, passed: bool) -> Self {
        Self { name: name.into(), value: None, threshold: None, passed, stretch: false }
    }

    fn failed(name: impl Into<String>, e: &Error) -> Self {
        Self::holds(format!("{}: {e}", name.into()), false)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new().with("name", self.name.as_str()).with("passed", self.passed);
        if let Some(v) = self.value {
            t.set("value", v);
        }
        if let Some(v) = self.threshold {
            t.set("threshold", v);
        }
        if self.stretch {
            t.set("stretch", true);
        }
        t
    }
}

pub struct Outcome {
    pub body: Table,
    pub checks: Vec<Check>,
}

/// Errors caused by the input rather than by a failed computation.
pub fn is_input_error(e: &Error) -> bool {
    matches!(e, Error::Input(_) | Error::Domain(_) | Error::SingularPoint(_))
}

fn ball_point(x: &[Complex64]) -> Result<BallPoint, Error> {
    BallPoint::new(x)
}

fn class_name(c: ClassTag) -> &'static str {
    match c {
        ClassTag::TriplePairing => "triple_pairing",
        ClassTag::Square => "square",
        ClassTag::Triple => "triple",
        ClassTag::Full => "full",
    }
}

pub fn embed(x: &[Complex64]) -> Result<Outcome, Error> {
    let x = ball_point(x)?;
    let tau = embed_j(&x)?;
    let om = tau.tau();
    let defect = (om - om.transpose()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let body = Table::new()
        .with("x", complexes(x.coords().as_slice()))
        .with("margin", x.margin())
        .with("omega", matrix(om))
        .with("imag_lambda_min", tau.lambda_min())
        .with("symmetry_defect", defect);
    let checks = vec![Check::above("Im Omega positive definite", tau.lambda_min(), 0.0), Check::below("Omega symmetric", defect, 1e-12)];
    Ok(Outcome { body, checks })
}

pub fn theta(x: &[Complex64], cfg: &ThetaConfig) -> Result<Outcome, Error> {
    let x = ball_point(x)?;
    let tau = embed_j(&x)?;
    let all = all_theta_constants(&tau, cfg)?;
    let mut rows = Vec::new();
    let (mut max_vanishing, mut min_surviving, mut max_tail) = (0.0f64, f64::INFINITY, 0.0f64);
    for (l, v) in &all {
        let class = l.label.class();
        if class.survives() {
            min_surviving = min_surviving.min(v.value.norm());
        } else {
            max_vanishing = max_vanishing.max(v.value.norm());
        }
        max_tail = max_tail.max(v.tail_bound);
        rows.push(
            Table::new()
                .with("label", l.to_string())
                .with("six_a", l.characteristic.key().to_vec())
                .with("class", class_name(class))
                .with("value", v.value)
                .with("tail_bound", v.tail_bound)
                .with("lattice_points", v.points),
        );
    }
    let body = Table::new()
        .with("x", complexes(x.coords().as_slice()))
        .with("imag_lambda_min", tau.lambda_min())
        .with("max_tail_bound", max_tail)
        .with("max_abs_vanishing", max_vanishing)
        .with("min_abs_surviving", min_surviving)
        .with("theta", rows);
    let checks = vec![Check::below("non-surviving theta constants vanish", max_vanishing, VANISH_LIMIT)];
    Ok(Outcome { body, checks })
}

pub fn invert(x: &[Complex64], cfg: &ThetaConfig) -> Result<Outcome, Error> {
    let x = ball_point(x)?;
    let r = match theta_map(&x, cfg) {
        Ok(r) => r,
        Err(e @ Error::Consistency(_)) => {
            return Ok(Outcome { body: Table::new(), checks: vec![Check::failed("theta cubes satisfy the linear and cubic relations", &e)] });
        }
        Err(e) => return Err(e),
    };
    let thetas: Vec<Table> = (0..r.cubes.labels.len())
        .map(|i| {
            Table::new()
                .with("label", r.cubes.labels[i].to_string())
                .with("theta", r.cubes.thetas[i].value)
                .with("cube", r.cubes.cubes[i])
                .with("cube_error", r.cubes.error_bounds[i])
        })
        .collect();
    let y: Vec<Table> = YIndex::all().iter().map(|idx| Table::new().with("index", idx.to_string()).with("y", r.y.get(idx))).collect();
    let mut body = Table::new()
        .with("x", complexes(x.coords().as_slice()))
        .with("max_tail_bound", r.cubes.max_tail_bound())
        .with("thetas", thetas)
        .with("y", y)
        .with("linear_residual", r.residuals.linear)
        .with("cubic_residual", r.residuals.cubic);
    let mut checks = vec![
        Check::below("linear relations among the theta cubes", r.residuals.linear, RELATION_LIMIT),
        Check::below("cubic relations among the theta cubes", r.residuals.cubic, RELATION_LIMIT),
    ];
    match ell_from_y(&r.y) {
        Ok(e) => {
            body.set("ell", complexes(&e.ell)).set("ell2_alternative", e.ell2_alternative).set("ell_route_deviation", e.route_deviation);
            checks.push(Check::below("two expressions for l2 agree", e.route_deviation, ROUTE_AGREEMENT));
        }
        Err(e) => {
            body.set("ell", "undefined").set("ell_reason", e.to_string());
        }
    }
    Ok(Outcome { body, checks })
}

pub fn forward(lambdas: &[[f64; 6]], tol: f64) -> Result<Outcome, Error> {
    let branches: Vec<BranchData> = lambdas.iter().map(|l| BranchData::new(*l)).collect::<Result<_, _>>()?;
    let table = CycleTable::collapsed();
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for (k, b) in branches.iter().enumerate() {
        let mut row = Table::new().with("lambda", b.lambda().to_vec());
        match psi_forward(b, tol) {
            Ok(p) => {
                row.set("x_a", complexes(&p.x_a)).set("x_b", complexes(&p.x_b)).set("twist_residual", p.twist_residual).set("hermitian_value", p.hermitian_value);
                checks.push(Check::below(format!("lambda {k}: rho-twist residual"), p.twist_residual, TWIST_LIMIT));
                checks.push(Check::holds(format!("lambda {k}: x_A lies in the ball"), p.hermitian_value < 0.0));
            }
            Err(e) => checks.push(Check::failed(format!("lambda {k}: forward map"), &e)),
        }
        match full_period_matrix(&table, b, tol) {
            Ok(f) => {
                row.set("period_matrix", matrix(&f.normalized))
                    .set("symmetry_defect", f.symmetry_defect)
                    .set("imag_lambda_min", f.imag_lambda_min)
                    .set("embedding_deviation", f.embedding_deviation);
                checks.push(Check::below(format!("lambda {k}: |Omega_A Omega_B^-1 - j(x_A)|"), f.embedding_deviation, PERIOD_MATRIX_LIMIT));
            }
            Err(e) => checks.push(Check::failed(format!("lambda {k}: full period matrix"), &e)),
        }
        rows.push(row);
    }
    Ok(Outcome { body: Table::new().with("cycle_table", table.description.as_str()).with("results", rows), checks })
}

pub fn roundtrip_all(lambdas: &[[f64; 6]], tol: f64, cfg: &ThetaConfig) -> Result<Outcome, Error> {
    let branches: Vec<BranchData> = lambdas.iter().map(|l| BranchData::new(*l)).collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut max_tail = 0.0f64;
    for (k, b) in branches.iter().enumerate() {
        let r = match roundtrip(b, tol, cfg) {
            Ok(r) => r,
            Err(e) => {
                checks.push(Check::failed(format!("lambda {k}: roundtrip"), &e));
                rows.push(Table::new().with("lambda", b.lambda().to_vec()).with("error", e.to_string()));
                continue;
            }
        };
        max_tail = max_tail.max(r.max_tail_bound);
        rows.push(
            Table::new()
                .with("lambda", r.lambda.to_vec())
                .with("x_a", complexes(&r.periods.x_a))
                .with("twist_residual", r.periods.twist_residual)
                .with("y_theta", complexes(&r.theta.y.normalized().y))
                .with("y_config", complexes(&r.y_config.normalized().y))
                .with("identity_deviation", r.identity.max_rel_dev)
                .with("identity_lsq_deviation", r.identity.lsq_rel_dev)
                .with("best_permutation", r.best_permutation.to_string())
                .with("best_deviation", r.best_deviation)
                .with("ell_theta", complexes(&r.ell_theta))
                .with("ell_config", complexes(&r.ell_config))
                .with("ell_deviation", r.ell_deviation)
                .with("ell_route_deviation", r.ell_route_deviation)
                .with("max_tail_bound", r.max_tail_bound),
        );
        checks.push(Check::below(format!("lambda {k}: Theta(psi(lambda)) = iota(lambda) up to relabeling"), r.best_deviation, ROUNDTRIP_LIMIT));
        checks.push(Check::below(format!("lambda {k}: l recovered against the normal form"), r.ell_deviation, ROUNDTRIP_LIMIT));
        let mut s = Check::below(format!("lambda {k}: identity labeling"), r.identity.max_rel_dev, ROUNDTRIP_LIMIT);
        s.stretch = true;
        checks.push(s);
    }
    Ok(Outcome { body: Table::new().with("max_tail_bound", max_tail).with("results", rows), checks })
}

pub fn verify(suite: Suite, cfg: &SuiteConfig) -> Result<Outcome, Error> {
    let r = run_suite(suite, cfg)?;
    let checks = r
        .checks
        .iter()
        .map(|c| Check { name: c.name.clone(), value: c.value, threshold: c.threshold, passed: c.passed, stretch: c.stretch })
        .collect();
    let body = Table::new().with("suite", suite.name()).with("samples", r.samples).with("max_tail_bound", r.max_tail_bound);
    Ok(Outcome { body, checks })
}

pub fn checks_value(checks: &[Check]) -> Value {
    checks.iter().map(Check::to_table).collect::<Vec<_>>().into()
}
