//! Enumeration of pure steered states as Bloch-sphere tangency points.
//!
//! For Bob steered by Alice, the + outcome of measuring n.sigma leaves Bob
//! at (b + T^t n)/(1 + a.n). That state is pure exactly when
//!   g(n) = |b + T^t n|^2 - (1 + a.n)^2 = n^t M n + 2 w^t n + c0 = 0
//! with M = T T^t - a a^t, w = T b - a, c0 = |b|^2 - 1. Since g <= 0 on the
//! sphere for any physical state, pure steered states are the global
//! maximizers of g at level zero, and maximizing a quadratic over the unit
//! sphere is the classical trust-region subproblem: stationarity reads
//! (lambda I - M) n = w with lambda at least the top eigenvalue of M, and
//! the "hard case" (w orthogonal to the top eigenspace) is precisely what
//! produces two-point tangency. Both measurement signs are covered by one
//! sphere because the - outcome along n is the + outcome along -n.

use crate::error::{Error, Result};
use crate::linalg::{self, C64};
use crate::states::{dot_sigma, identity2, ket_from_bloch, Party, PauliDecomposition, QubitState, TwoQubitState};
use crate::tol;
use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};

/// g(n) = n^t M n + 2 w^t n + c0 on the unit sphere.
#[derive(Debug, Clone)]
pub struct SphereQuadratic {
    pub m: Matrix3<f64>,
    pub w: Vector3<f64>,
    pub c0: f64,
}

impl SphereQuadratic {
    pub fn eval(&self, n: &Vector3<f64>) -> f64 {
        (n.transpose() * self.m * n)[0] + 2.0 * self.w.dot(n) + self.c0
    }
}

pub fn build_quadratic(d: &PauliDecomposition, steered: Party) -> Result<SphereQuadratic> {
    let dd = match steered {
        Party::Bob => d.clone(),
        Party::Alice => d.swap_parties(),
    };
    let norm_a = dd.a.norm();
    if norm_a > 1.0 - tol::STEERER_PURITY {
        return Err(Error::DegenerateSteerer {
            party: steered.other(),
            norm: norm_a,
        });
    }
    let m = dd.t * dd.t.transpose() - dd.a * dd.a.transpose();
    Ok(SphereQuadratic {
        m: (m + m.transpose()) * 0.5,
        w: dd.t * dd.b - dd.a,
        c0: dd.b.norm_squared() - 1.0,
    })
}

/// All global maximizers of a sphere-constrained quadratic.
#[derive(Debug, Clone)]
pub enum ArgmaxSet {
    Single(Vector3<f64>),
    /// Hard case with a simple top eigenvalue; the two points are antipodal
    /// exactly when w = 0.
    Pair(Vector3<f64>, Vector3<f64>),
    /// Hard case with a doubly degenerate top eigenvalue.
    Circle {
        center: Vector3<f64>,
        axis: Vector3<f64>,
        radius: f64,
    },
    /// Isotropic M with w = 0: g is constant.
    Sphere,
}

impl ArgmaxSet {
    /// Representative maximizers (one point per component; two for a pair).
    pub fn representatives(&self) -> Vec<Vector3<f64>> {
        match self {
            ArgmaxSet::Single(n) => vec![*n],
            ArgmaxSet::Pair(p, q) => vec![*p, *q],
            ArgmaxSet::Circle { center, axis, radius } => {
                let t = orthonormal_to(axis);
                vec![(center + t * *radius).normalize()]
            }
            ArgmaxSet::Sphere => vec![Vector3::z()],
        }
    }

    /// Smallest angle from `p` to the maximizer set.
    pub fn angle_to(&self, p: &Vector3<f64>) -> f64 {
        let ang = |a: &Vector3<f64>, b: &Vector3<f64>| a.dot(b).clamp(-1.0, 1.0).acos();
        match self {
            ArgmaxSet::Single(n) => ang(n, p),
            ArgmaxSet::Pair(a, b) => ang(a, p).min(ang(b, p)),
            ArgmaxSet::Circle { center, axis, radius } => {
                let rel = p - center;
                let radial = rel - axis * axis.dot(&rel);
                let nearest = if radial.norm() > 1e-14 {
                    (center + radial.normalize() * *radius).normalize()
                } else {
                    (center + orthonormal_to(axis) * *radius).normalize()
                };
                ang(&nearest, p)
            }
            ArgmaxSet::Sphere => 0.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrsSolution {
    pub max_value: f64,
    pub argmax: ArgmaxSet,
    /// The multiplier at the solution; >= the top eigenvalue of M.
    pub lambda: f64,
}

fn orthonormal_to(n: &Vector3<f64>) -> Vector3<f64> {
    let trial = if n[0].abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    (trial - n * n.dot(&trial)).normalize()
}

/// Exact global maximization of g over the unit sphere.
///
/// Eigendecomposes M, then solves the secular equation
/// sum_i (w_i' / (lambda - mu_i))^2 = 1 on (mu_1, inf) by bisection; when w
/// has no component in the top eigenspace the multiplier may stick at mu_1
/// and the maximizer set gains the top-eigenspace degrees of freedom.
pub fn trs_maximize(q: &SphereQuadratic) -> Result<TrsSolution> {
    let m = (q.m + q.m.transpose()) * 0.5;
    let (mu, frame) = linalg::sym_eigen3_frame(&m);
    let wp = frame.transpose() * q.w;
    let scale = mu[0].abs().max(mu[2].abs()).max(1.0);
    let top = (0..3)
        .filter(|&i| mu[0] - mu[i] <= tol::TRS_EIG_CLUSTER * scale)
        .count();
    let w_top: f64 = (0..top).map(|i| wp[i] * wp[i]).sum::<f64>().sqrt();
    let w_norm = q.w.norm();

    let phi_rest = |lam: f64| -> f64 {
        (top..3).map(|i| (wp[i] / (lam - mu[i])).powi(2)).sum()
    };
    let phi_full = |lam: f64| -> f64 {
        (0..3).map(|i| (wp[i] / (lam - mu[i])).powi(2)).sum()
    };

    let finish = |lambda: f64, argmax: ArgmaxSet| -> TrsSolution {
        let reps = argmax.representatives();
        let max_value = q.eval(&reps[0]);
        TrsSolution { max_value, argmax, lambda }
    };

    if w_top > tol::TRS_HARD_CASE * w_norm.max(1.0) {
        // generic: the secular function blows up at mu_1, unique root above
        let lambda = solve_secular(&phi_full, mu[0], w_norm)?;
        let n = Vector3::from_fn(|i, _| wp[i] / (lambda - mu[i]));
        return Ok(finish(lambda, ArgmaxSet::Single((frame * n).normalize())));
    }

    let phi0 = phi_rest(mu[0]);
    if phi0 > 1.0 {
        // w avoids the top eigenspace but the rest already overshoots:
        // still an interior root and a single maximizer
        let lambda = solve_secular(&phi_rest, mu[0], w_norm)?;
        let mut n = Vector3::zeros();
        for i in top..3 {
            n[i] = wp[i] / (lambda - mu[i]);
        }
        return Ok(finish(lambda, ArgmaxSet::Single((frame * n).normalize())));
    }

    // hard case: lambda = mu_1, fixed component plus top-eigenspace freedom
    let lambda = mu[0];
    let mut q_fixed = Vector3::zeros();
    for i in top..3 {
        q_fixed[i] = wp[i] / (mu[0] - mu[i]);
    }
    let center = frame * q_fixed;
    let tau = (1.0 - phi0).max(0.0).sqrt();
    let argmax = match top {
        1 => {
            let v1 = frame.column(0).into_owned();
            if tau <= 1e-12 {
                ArgmaxSet::Single(center.normalize())
            } else {
                ArgmaxSet::Pair(
                    (center + v1 * tau).normalize(),
                    (center - v1 * tau).normalize(),
                )
            }
        }
        2 => {
            if tau <= 1e-12 {
                ArgmaxSet::Single(center.normalize())
            } else {
                ArgmaxSet::Circle {
                    center,
                    axis: frame.column(2).into_owned(),
                    radius: tau,
                }
            }
        }
        _ => ArgmaxSet::Sphere,
    };
    Ok(finish(lambda, argmax))
}

/// Bisects phi(lambda) = 1 on (mu_1, mu_1 + |w| + eps]; phi is strictly
/// decreasing there. Never silent: an unbracketable root is an error.
fn solve_secular(phi: &dyn Fn(f64) -> f64, mu1: f64, w_norm: f64) -> Result<f64> {
    let mut lo = mu1;
    let mut hi = mu1 + w_norm + 1e-30;
    let mut expand = 0;
    while phi(hi) > 1.0 {
        hi = mu1 + (hi - mu1) * 2.0;
        expand += 1;
        if expand > 80 {
            return Err(Error::SecularBracketFailure {
                lambda_max: hi,
                phi: phi(hi),
            });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if phi(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-16 * hi.abs().max(1.0) {
            break;
        }
    }
    Ok(hi)
}

/// Evenly distributed unit directions (Fibonacci lattice), deterministic in n.
pub(crate) fn fibonacci_sphere(n: usize) -> impl Iterator<Item = Vector3<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    (0..n).map(move |i| {
        let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
        let r = (1.0 - z * z).max(0.0).sqrt();
        let th = golden * i as f64;
        Vector3::new(r * th.cos(), r * th.sin(), z)
    })
}

/// One projected-Newton ascent on the sphere, with gradient fallback.
fn refine_on_sphere(q: &SphereQuadratic, start: &Vector3<f64>) -> (Vector3<f64>, f64) {
    let mut n = start.normalize();
    let mut val = q.eval(&n);
    for _ in 0..60 {
        let grad = (q.m * n + q.w) * 2.0;
        let gn = grad.dot(&n);
        let rg = grad - n * gn;
        if rg.norm() <= 1e-15 {
            break;
        }
        let t1 = orthonormal_to(&n);
        let t2 = n.cross(&t1);
        // Riemannian Hessian in the tangent basis
        let h = nalgebra::Matrix2::new(
            2.0 * (t1.transpose() * q.m * t1)[0] - gn,
            2.0 * (t1.transpose() * q.m * t2)[0],
            2.0 * (t2.transpose() * q.m * t1)[0],
            2.0 * (t2.transpose() * q.m * t2)[0] - gn,
        );
        let b = Vector2::new(rg.dot(&t1), rg.dot(&t2));
        let newton = h.try_inverse().map(|hinv| -(hinv * b));
        let mut step = match newton {
            // accept the Newton step only when it ascends along the gradient
            Some(s) if s.dot(&b) > 0.0 => t1 * s[0] + t2 * s[1],
            _ => rg,
        };
        let mut improved = false;
        for _ in 0..30 {
            let cand = (n + step).normalize();
            let cval = q.eval(&cand);
            if cval > val {
                n = cand;
                val = cval;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (n, val)
}

/// Grid + refinement oracle for the global maximum; backs trs_maximize in
/// tests. Deterministic for fixed grid size.
pub fn grid_max(q: &SphereQuadratic, grid_size: usize) -> (Vector3<f64>, f64) {
    let mut scored: Vec<(f64, Vector3<f64>)> = fibonacci_sphere(grid_size)
        .map(|n| (q.eval(&n), n))
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best = (scored[0].1, scored[0].0);
    for (_, n) in scored.iter().take(40) {
        let (rn, rv) = refine_on_sphere(q, n);
        if rv > best.1 {
            best = (rn, rv);
        }
    }
    best
}

/// Near-zero candidates of g from a deterministic grid scan: refined local
/// maximizers with g >= -1e-6, angularly deduplicated, best first.
pub fn scan_pure_directions(
    d: &PauliDecomposition,
    steered: Party,
    grid_size: usize,
) -> Result<Vec<(Vector3<f64>, f64)>> {
    if grid_size < 1000 {
        return Err(Error::OutOfRange {
            name: "gridSize",
            value: grid_size as f64,
        });
    }
    let q = build_quadratic(d, steered)?;
    let mut scored: Vec<(f64, Vector3<f64>)> = fibonacci_sphere(grid_size)
        .map(|n| (q.eval(&n), n))
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut refined: Vec<(Vector3<f64>, f64)> = Vec::new();
    for (_, n) in scored.iter().take(200) {
        let (rn, rv) = refine_on_sphere(&q, n);
        if rv >= -1e-6 {
            refined.push((rn, rv));
        }
    }
    refined.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut out: Vec<(Vector3<f64>, f64)> = Vec::new();
    for (n, v) in refined {
        if out.iter().all(|(m, _)| m.dot(&n).clamp(-1.0, 1.0).acos() > 0.05) {
            out.push((n, v));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountClass {
    Zero,
    One,
    Two,
    Infinite,
}

#[derive(Debug, Clone)]
pub struct TangencyPoint {
    /// The pure steered state's Bloch vector (unit within 1e-7).
    pub bloch_point: Vector3<f64>,
    /// Measurement direction, sign-folded so its first significant
    /// component is positive.
    pub direction: Vector3<f64>,
    /// Which outcome of `direction` steers here; sign * direction is the
    /// raw maximizer of g.
    pub outcome_sign: i8,
    /// Born probability of that outcome.
    pub probability: f64,
    /// |g| at the maximizer.
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct TangencyReport {
    pub party: Party,
    pub count_class: CountClass,
    pub points: Vec<TangencyPoint>,
    /// Global maximum of g (0 for the Infinite class).
    pub max_g: f64,
    /// Tr(rho^2) of the input; certifies the Infinite class.
    pub purity: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct ToleranceConfig {
    /// Slack on g = 0 at a tangency point.
    pub tangency_tol: f64,
    /// Slack on Tr(rho^2) = 1 for the Infinite class.
    pub purity_tol: f64,
    /// Maximizers closer than this angle merge into one point.
    pub cluster_angle: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            tangency_tol: 1e-9,
            purity_tol: 1e-12,
            cluster_angle: 1e-4,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tangency_tol > 0.0 && self.tangency_tol < 1e-6) {
            return Err(Error::OutOfRange {
                name: "tangencyTol",
                value: self.tangency_tol,
            });
        }
        if self.purity_tol <= 0.0 {
            return Err(Error::OutOfRange {
                name: "purityTol",
                value: self.purity_tol,
            });
        }
        if self.cluster_angle <= 0.0 {
            return Err(Error::OutOfRange {
                name: "clusterAngle",
                value: self.cluster_angle,
            });
        }
        Ok(())
    }
}

/// Classifies the number of pure steered states: 0, 1, 2, or infinitely
/// many (globally pure input). A continuum of maximizers at level zero on
/// a mixed state contradicts the classification and is a hard error, as is
/// a significantly positive maximum.
pub fn find_tangency(
    d: &PauliDecomposition,
    steered: Party,
    cfg: &ToleranceConfig,
) -> Result<TangencyReport> {
    cfg.validate()?;
    let purity = d.purity();
    if purity >= 1.0 - cfg.purity_tol {
        return Ok(TangencyReport {
            party: steered,
            count_class: CountClass::Infinite,
            points: Vec::new(),
            max_g: 0.0,
            purity,
        });
    }
    let q = build_quadratic(d, steered)?;
    let sol = trs_maximize(&q)?;
    if sol.max_value > cfg.tangency_tol {
        return Err(Error::InconsistentWithClassification {
            what: format!(
                "positive maximum {:.3e} of the tangency quadratic on a mixed state",
                sol.max_value
            ),
        });
    }
    if sol.max_value < -cfg.tangency_tol {
        return Ok(TangencyReport {
            party: steered,
            count_class: CountClass::Zero,
            points: Vec::new(),
            max_g: sol.max_value,
            purity,
        });
    }
    let dd = match steered {
        Party::Bob => d.clone(),
        Party::Alice => d.swap_parties(),
    };
    let steered_point = |n: &Vector3<f64>| -> Vector3<f64> {
        (dd.b + dd.t.transpose() * n) / (1.0 + dd.a.dot(n))
    };
    let maximizers = match &sol.argmax {
        ArgmaxSet::Single(n) => vec![*n],
        ArgmaxSet::Pair(n1, n2) => {
            let angle = n1.dot(n2).clamp(-1.0, 1.0).acos();
            if angle <= cfg.cluster_angle {
                vec![*n1]
            } else {
                vec![*n1, *n2]
            }
        }
        shape => {
            // a continuum of maximizing directions may still steer to one
            // point (pure steered marginal, e.g. one product factor pure);
            // only a continuum of distinct contact points contradicts the
            // 0/1/2/infinity classification of mixed states
            let samples: Vec<Vector3<f64>> = match shape {
                ArgmaxSet::Circle { center, axis, radius } => {
                    let t1 = orthonormal_to(axis);
                    let t2 = axis.cross(&t1);
                    (0..8)
                        .map(|k| {
                            let th = k as f64 * std::f64::consts::FRAC_PI_4;
                            (center + (t1 * th.cos() + t2 * th.sin()) * *radius).normalize()
                        })
                        .collect()
                }
                _ => vec![
                    Vector3::x(), -Vector3::x(),
                    Vector3::y(), -Vector3::y(),
                    Vector3::z(), -Vector3::z(),
                ],
            };
            let first = steered_point(&samples[0]);
            if samples.iter().all(|n| (steered_point(n) - first).norm() < 1e-6) {
                vec![sol.argmax.representatives()[0]]
            } else {
                return Err(Error::InconsistentWithClassification {
                    what: format!(
                        "mixed state tangent along a continuum ({})",
                        match shape {
                            ArgmaxSet::Circle { .. } => "circle of contact points",
                            _ => "sphere of contact points",
                        }
                    ),
                });
            }
        }
    };
    let mut points: Vec<TangencyPoint> = maximizers
        .into_iter()
        .map(|n| {
            let p = 0.5 * (1.0 + n.dot(&dd.a));
            let bloch_point = (dd.b + dd.t.transpose() * n) / (2.0 * p);
            let residual = q.eval(&n).abs();
            let mut direction = n;
            let mut outcome_sign = 1i8;
            for k in 0..3 {
                if direction[k].abs() > 1e-9 {
                    if direction[k] < 0.0 {
                        direction = -direction;
                        outcome_sign = -1;
                    }
                    break;
                }
            }
            // scrub negative zeros the fold may have minted
            direction = direction.map(|v| v + 0.0);
            TangencyPoint {
                bloch_point,
                direction,
                outcome_sign,
                probability: p,
                residual,
            }
        })
        .collect();
    points.sort_by(|a, b| {
        linalg::lex_cmp(&b.bloch_point, &a.bloch_point)
    });
    let count_class = match points.len() {
        1 => CountClass::One,
        2 => CountClass::Two,
        n => panic!("maximizer dedup produced {n} points"),
    };
    Ok(TangencyReport {
        party: steered,
        count_class,
        points,
        max_g: sol.max_value,
        purity,
    })
}

/// One row of the pure-state correspondence between the two parties.
#[derive(Debug, Clone)]
pub struct CorrespondencePair {
    /// Alice's rank-one effect steering Bob to `bob_pure`.
    pub alice_effect: Matrix2<C64>,
    pub bob_pure: QubitState,
    /// Bob's rank-one effect steering Alice to `alice_pure`; annihilates
    /// `bob_pure`.
    pub bob_effect: Matrix2<C64>,
    /// Annihilated by `alice_effect`.
    pub alice_pure: QubitState,
}

/// Pairs each Bob tangency with its Alice counterpart: the effect steering
/// Bob to |beta> annihilates Alice's pure steered state |alpha> and vice
/// versa. A failed pairing would break the count symmetry between the
/// parties, so it is reported as CountMismatch.
pub fn correspondence_map(
    state: &TwoQubitState,
    bob_tangency: &TangencyReport,
) -> Result<Vec<CorrespondencePair>> {
    if !matches!(bob_tangency.count_class, CountClass::One | CountClass::Two) {
        return Err(Error::InconsistentWithClassification {
            what: format!(
                "correspondence needs one or two tangency points, got {:?}",
                bob_tangency.count_class
            ),
        });
    }
    let alice = find_tangency(&state.pauli(), Party::Alice, &ToleranceConfig::default())?;
    if alice.points.len() != bob_tangency.points.len() {
        return Err(Error::CountMismatch {
            alice: alice.points.len(),
            bob: bob_tangency.points.len(),
        });
    }
    let mismatch = || Error::CountMismatch {
        alice: alice.points.len(),
        bob: bob_tangency.points.len(),
    };
    let mut out = Vec::with_capacity(bob_tangency.points.len());
    for bp in &bob_tangency.points {
        let m_a = bp.direction * bp.outcome_sign as f64;
        let alice_effect = (identity2() + dot_sigma(&m_a)) * C64::new(0.5, 0.0);
        // Alice's pure steered state sits opposite her effect
        let ap = alice
            .points
            .iter()
            .find(|p| (p.bloch_point + m_a).norm() < 1e-6)
            .ok_or_else(mismatch)?;
        let m_b = ap.direction * ap.outcome_sign as f64;
        if (m_b + bp.bloch_point).norm() > 1e-6 {
            return Err(mismatch());
        }
        let bob_effect = (identity2() + dot_sigma(&m_b)) * C64::new(0.5, 0.0);
        let bob_ket = ket_from_bloch(&bp.bloch_point.normalize());
        let alice_ket = ket_from_bloch(&ap.bloch_point.normalize());
        out.push(CorrespondencePair {
            alice_effect,
            bob_pure: QubitState::new(bob_ket * bob_ket.adjoint())?,
            bob_effect,
            alice_pure: QubitState::new(alice_ket * alice_ket.adjoint())?,
        });
    }
    Ok(out)
}
