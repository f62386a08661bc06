//! Plane-section geometry for the tangency steering arguments.
//!
//! Cutting the Bloch ball with the plane through the tangency point p, the
//! steered marginal b, and a steered point e yields a circle and an inscribed
//! ellipse meeting at p. In the in-plane frame (origin p, e2 toward the
//! circle center) the chord of slope k leaving p hits the circle at q and the
//! ellipse at e, both in closed form; the ratio of those chords bounds from
//! below the probability mass any local-hidden-state model must park next to
//! p, which is what the finite-model contradiction consumes.
//!
//! Frame convention: the circle center sits at (0, R). The ellipse tilt theta
//! in [0, pi) is measured from the e2 axis toward -e1, so the v semiaxis
//! direction is (-sin theta, cos theta); the tangency configuration then puts
//! the ellipse center at ((u^2 - v^2) sin(2 theta) / (2 sqrt(W0)), sqrt(W0)).

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use rand::Rng;

use crate::ellipsoid::{Degeneracy, SteeringEllipsoid};
use crate::error::{Error, Result};
use crate::states::Party;
use crate::tol;

#[derive(Debug, Clone)]
pub struct SectionFrame {
    /// Tangency point p; the in-plane origin.
    pub origin: Vector3<f64>,
    pub e1: Vector3<f64>,
    /// Points from p toward the circle center.
    pub e2: Vector3<f64>,
    /// (0, R) up to projection noise.
    pub circle_center: Vector2<f64>,
    pub circle_r: f64,
    pub ellipse_center: Vector2<f64>,
    /// Semiaxis paired with the tilt reference; see module docs.
    pub v: f64,
    /// The other semiaxis.
    pub u: f64,
    /// Tilt of the v axis in [0, pi).
    pub theta: f64,
}

impl SectionFrame {
    /// Map in-plane coordinates back to the Bloch ball.
    pub fn lift(&self, xi: f64, eta: f64) -> Vector3<f64> {
        self.origin + self.e1 * xi + self.e2 * eta
    }

    /// Implicit ellipse value at an in-plane point; zero on the ellipse.
    pub fn ellipse_residual(&self, point: &Vector2<f64>) -> f64 {
        let (s, c) = self.theta.sin_cos();
        let r = point - self.ellipse_center;
        let along_u = r.x * c + r.y * s;
        let along_v = -r.x * s + r.y * c;
        (along_u / self.u).powi(2) + (along_v / self.v).powi(2) - 1.0
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ChordPoints {
    /// Chord-circle intersection besides p.
    pub q: Vector2<f64>,
    /// Chord-ellipse intersection besides p.
    pub e: Vector2<f64>,
    pub k: f64,
}

/// Second intersection of the slope-k chord through p with the circle.
pub fn chord_circle(k: f64, r: f64) -> Result<Vector2<f64>> {
    if r <= 0.0 {
        return Err(Error::OutOfRange { name: "R", value: r });
    }
    let den = 1.0 + k * k;
    Ok(Vector2::new(2.0 * k * r / den, 2.0 * k * k * r / den))
}

fn gw0(u: f64, v: f64, theta: f64) -> (f64, f64) {
    let g = u * u * v * v
        * (u * u + v * v + (v * v - u * u) * (2.0 * theta).cos()).sqrt();
    let w0 = (u * theta.sin()).powi(2) + (v * theta.cos()).powi(2);
    (g, w0)
}

/// Second intersection of the slope-k chord through p with the tilted
/// ellipse of the tangency configuration.
pub fn chord_ellipse(k: f64, u: f64, v: f64, theta: f64) -> Result<Vector2<f64>> {
    if u <= 0.0 || v <= 0.0 {
        return Err(Error::DegenerateEllipse {
            what: format!("chord needs positive semiaxes, got u = {u}, v = {v}"),
        });
    }
    let (g, w0) = gw0(u, v, theta);
    let (s2, c2) = (theta.sin().powi(2), theta.cos().powi(2));
    let wk = (k * k * v * v + u * u) * s2
        + (k * k * u * u + v * v) * c2
        + k * (v * v - u * u) * (2.0 * theta).sin();
    let scale = std::f64::consts::SQRT_2 * k * g / (w0 * wk);
    Ok(Vector2::new(scale, k * scale))
}

/// Both chord intersections for one slope, in the section's own frame.
pub fn chord_points(frame: &SectionFrame, k: f64) -> Result<ChordPoints> {
    Ok(ChordPoints {
        q: chord_circle(k, frame.circle_r)?,
        e: chord_ellipse(k, frame.u, frame.v, frame.theta)?,
        k,
    })
}

/// The k -> 0 limit of the probability a hidden-state model must place on
/// the region steering near p: G / (sqrt(2) R W0) * pP. Positive whenever
/// pP is, which is the contradiction the tangency argument runs on.
pub fn lhs_lower_bound(u: f64, v: f64, theta: f64, r: f64, p_p: f64) -> Result<f64> {
    if u <= 0.0 || v <= 0.0 {
        return Err(Error::DegenerateEllipse {
            what: format!("bound needs positive semiaxes, got u = {u}, v = {v}"),
        });
    }
    if r <= 0.0 {
        return Err(Error::OutOfRange { name: "R", value: r });
    }
    if !(0.0..=1.0).contains(&p_p) {
        return Err(Error::OutOfRange {
            name: "pP",
            value: p_p,
        });
    }
    let (g, w0) = gw0(u, v, theta);
    Ok(g / (std::f64::consts::SQRT_2 * r * w0) * p_p)
}

fn ellipsoid_inverse(e: &SteeringEllipsoid) -> Matrix3<f64> {
    let inv_sq = Matrix3::from_diagonal(&Vector3::new(
        1.0 / (e.semiaxes[0] * e.semiaxes[0]),
        1.0 / (e.semiaxes[1] * e.semiaxes[1]),
        1.0 / (e.semiaxes[2] * e.semiaxes[2]),
    ));
    e.orientation * inv_sq * e.orientation.transpose()
}

/// Cut the sphere of radius `sphere_r` and the ellipsoid with the plane
/// through p, b, e. p must be a point where the ellipsoid touches the
/// sphere; b and e only pin down the plane.
pub fn section(
    sphere_r: f64,
    ellipsoid: &SteeringEllipsoid,
    p: &Vector3<f64>,
    b: &Vector3<f64>,
    e: &Vector3<f64>,
) -> Result<SectionFrame> {
    if ellipsoid.degeneracy != Degeneracy::Full {
        return Err(Error::DegenerateEllipse {
            what: format!("section needs a full-rank ellipsoid, got {:?}", ellipsoid.degeneracy),
        });
    }
    let sphere_residual = (p.norm() - sphere_r).abs();
    if sphere_residual > tol::ON_SPHERE {
        return Err(Error::NotTangentAtP {
            residual: sphere_residual,
        });
    }
    let membership = ellipsoid.membership_residual(p)?;
    if membership > tol::SECTION_TANGENCY {
        return Err(Error::NotTangentAtP {
            residual: membership,
        });
    }
    // surfaces meeting at p must share the normal there
    let a = ellipsoid_inverse(ellipsoid);
    let en = (a * (p - ellipsoid.center)).normalize();
    let sn = p / p.norm();
    let normal_defect = en.cross(&sn).norm();
    if normal_defect > tol::SECTION_TANGENCY {
        return Err(Error::NotTangentAtP {
            residual: normal_defect,
        });
    }

    let cross = (b - p).cross(&(e - p));
    let scale = (b - p).norm().max((e - p).norm()).max(1e-300);
    if cross.norm() <= 1e-12 * scale * scale {
        return Err(Error::CollinearPoints);
    }
    let n = cross.normalize();

    // circle: plane cut of the sphere, center at the foot of the normal
    let o = n * p.dot(&n);
    let r_circle = (sphere_r * sphere_r - o.norm_squared()).max(0.0).sqrt();
    let po = o - p;
    if po.norm() <= 1e-12 {
        return Err(Error::DegenerateEllipse {
            what: "section plane is tangent to the sphere".into(),
        });
    }
    let e2 = po.normalize();
    let e1 = e2.cross(&n);

    // in-plane conic of the ellipsoid: x = p + xi e1 + eta e2
    let r0 = p - ellipsoid.center;
    let m2 = Matrix2::new(
        (e1.transpose() * a * e1)[0],
        (e1.transpose() * a * e2)[0],
        (e2.transpose() * a * e1)[0],
        (e2.transpose() * a * e2)[0],
    );
    let m2 = (m2 + m2.transpose()) * 0.5;
    let g2 = Vector2::new((e1.transpose() * a * r0)[0], (e2.transpose() * a * r0)[0]);
    let f0 = (r0.transpose() * a * r0)[0] - 1.0;

    let det = m2.determinant();
    if det <= 0.0 || m2[(0, 0)] <= 0.0 {
        return Err(Error::DegenerateEllipse {
            what: "section conic is not an ellipse".into(),
        });
    }
    let center2 = -m2.try_inverse().unwrap() * g2;
    let kappa = (center2.transpose() * m2 * center2)[0] - f0;
    if kappa <= 0.0 {
        return Err(Error::DegenerateEllipse {
            what: "section plane misses the ellipsoid".into(),
        });
    }

    // principal axes of the 2x2 conic
    let half_tr = 0.5 * (m2[(0, 0)] + m2[(1, 1)]);
    let disc = (0.25 * (m2[(0, 0)] - m2[(1, 1)]).powi(2) + m2[(0, 1)].powi(2)).sqrt();
    let (lam_lo, lam_hi) = (half_tr - disc, half_tr + disc);
    let axis_of = |lam: f64| -> Vector2<f64> {
        let c1 = Vector2::new(m2[(0, 1)], lam - m2[(0, 0)]);
        let c2 = Vector2::new(lam - m2[(1, 1)], m2[(0, 1)]);
        let d = if c1.norm() >= c2.norm() { c1 } else { c2 };
        d.normalize()
    };

    let (u, v, theta) = if disc <= 1e-12 * half_tr {
        // circular section; tilt is meaningless
        let s = (kappa / half_tr).sqrt();
        (s, s, 0.0)
    } else {
        let d_lo = axis_of(lam_lo);
        let d_hi = axis_of(lam_hi);
        let (s_lo, s_hi) = ((kappa / lam_lo).sqrt(), (kappa / lam_hi).sqrt());
        // v is the axis nearer the op line (the e2 direction)
        let (dv, sv, su) = if d_lo.y.abs() >= d_hi.y.abs() {
            (d_lo, s_lo, s_hi)
        } else {
            (d_hi, s_hi, s_lo)
        };
        // dv = (-sin theta, cos theta) with theta in [0, pi)
        let mut theta = (-dv.x).atan2(dv.y);
        if theta < 0.0 {
            theta += std::f64::consts::PI;
        }
        if theta >= std::f64::consts::PI {
            theta -= std::f64::consts::PI;
        }
        (su, sv, theta)
    };

    let frame = SectionFrame {
        origin: *p,
        e1,
        e2,
        circle_center: Vector2::new((o - p).dot(&e1), (o - p).dot(&e2)),
        circle_r: r_circle,
        ellipse_center: center2,
        v,
        u,
        theta,
    };

    // tangency configuration: ellipse through the origin, tangent to e1
    let through = frame.ellipse_residual(&Vector2::zeros()).abs();
    let grad_x = g2.x.abs() / g2.norm().max(1e-300);
    if through > 1e-9 || grad_x > 1e-7 {
        return Err(Error::NotTangentAtP {
            residual: through.max(grad_x),
        });
    }
    Ok(frame)
}

/// Support function of the ellipsoid: h(d) = c . d + |diag(s) O^t d|.
fn ellipsoid_support(e: &SteeringEllipsoid, d: &Vector3<f64>) -> f64 {
    let y = e.orientation.transpose() * d;
    let mut s = 0.0;
    for i in 0..3 {
        s += (e.semiaxes[i] * y[i]).powi(2);
    }
    e.center.dot(d) + s.sqrt()
}

fn polytope_support(vertices: &[Vector3<f64>], d: &Vector3<f64>) -> f64 {
    vertices
        .iter()
        .map(|v| v.dot(d))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn support_margin(e: &SteeringEllipsoid, vertices: &[Vector3<f64>], d: &Vector3<f64>) -> f64 {
    ellipsoid_support(e, d) - polytope_support(vertices, d)
}

fn fibonacci_direction(i: usize, n: usize) -> Vector3<f64> {
    let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let phi = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt()) * i as f64;
    Vector3::new(r * phi.cos(), r * phi.sin(), z)
}

/// The witness search grid, built once; every call scans the same 20000
/// directions.
fn witness_grid() -> &'static [Vector3<f64>] {
    static GRID: std::sync::OnceLock<Vec<Vector3<f64>>> = std::sync::OnceLock::new();
    GRID.get_or_init(|| (0..20_000).map(|i| fibonacci_direction(i, 20_000)).collect())
}

/// Min-norm point of the convex hull of `points` (Wolfe's algorithm).
/// Returns the distance from the origin to the hull.
fn wolfe_min_norm(points: &[Vector3<f64>]) -> f64 {
    assert!(!points.is_empty());
    let start = (0..points.len())
        .min_by(|&i, &j| {
            points[i]
                .norm_squared()
                .partial_cmp(&points[j].norm_squared())
                .unwrap()
        })
        .unwrap();
    let mut corral = vec![start];
    let mut weights = vec![1.0f64];
    let mut x = points[start];
    for _ in 0..200 {
        // best improving vertex for the current iterate
        let (best, best_dot) = (0..points.len())
            .map(|i| (i, points[i].dot(&x)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if x.norm_squared() <= best_dot + 1e-14 * (1.0 + x.norm_squared()) {
            break;
        }
        if !corral.contains(&best) {
            corral.push(best);
            weights.push(0.0);
        }
        // inner loop: pull the affine minimizer back into the simplex
        loop {
            let m = corral.len();
            // solve min |sum w_i p_i| with sum w_i = 1 (KKT system)
            let mut kkt = nalgebra::DMatrix::<f64>::zeros(m + 1, m + 1);
            for i in 0..m {
                for j in 0..m {
                    kkt[(i, j)] = points[corral[i]].dot(&points[corral[j]]);
                }
                kkt[(i, m)] = 1.0;
                kkt[(m, i)] = 1.0;
            }
            let mut rhs = nalgebra::DVector::<f64>::zeros(m + 1);
            rhs[m] = 1.0;
            let affine = match kkt.lu().solve(&rhs) {
                Some(sol) => sol.rows(0, m).into_owned(),
                None => break, // degenerate corral: keep the current iterate
            };
            if affine.iter().all(|&w| w > 1e-12) {
                weights = affine.iter().copied().collect();
                break;
            }
            // step toward the affine minimizer until a weight vanishes
            let mut t = 1.0f64;
            for i in 0..m {
                let diff = weights[i] - affine[i];
                if diff > 1e-15 {
                    t = t.min(weights[i] / diff);
                }
            }
            for i in 0..m {
                weights[i] += t * (affine[i] - weights[i]);
            }
            let keep: Vec<usize> = (0..m).filter(|&i| weights[i] > 1e-12).collect();
            corral = keep.iter().map(|&i| corral[i]).collect();
            weights = keep.iter().map(|&i| weights[i]).collect();
            if corral.is_empty() {
                corral.push(best);
                weights.push(1.0);
                break;
            }
        }
        let total: f64 = weights.iter().sum();
        x = corral
            .iter()
            .zip(&weights)
            .map(|(&i, &w)| points[i] * (w / total))
            .sum();
        if x.norm_squared() < 1e-30 {
            break;
        }
    }
    x.norm()
}

fn hull_distance(point: &Vector3<f64>, vertices: &[Vector3<f64>]) -> f64 {
    let shifted: Vec<Vector3<f64>> = vertices.iter().map(|v| v - point).collect();
    wolfe_min_norm(&shifted)
}

/// Point on the ellipsoid surface strictly outside the convex hull of
/// `vertices`, or None if no sampled direction separates the two bodies.
///
/// Searches support-function margins over a 20000-direction grid, refines
/// the best candidates by projected ascent, and (for small vertex sets)
/// double-checks the winner with an exact hull-distance computation.
pub fn polytope_noncontainment_witness(
    e: &SteeringEllipsoid,
    vertices: &[Vector3<f64>],
) -> Option<Vector3<f64>> {
    debug_assert!(vertices.iter().all(|v| v.norm() <= 1.0 + 1e-10));
    let mut best: Vec<(f64, Vector3<f64>)> = Vec::with_capacity(8);
    for &d in witness_grid() {
        let m = support_margin(e, vertices, &d);
        if best.len() < 8 {
            best.push((m, d));
            best.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        } else if m > best[7].0 {
            best[7] = (m, d);
            best.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        }
    }
    let mut champion: Option<(f64, Vector3<f64>)> = None;
    for &(_, d0) in &best {
        let mut d = d0;
        let mut m = support_margin(e, vertices, &d);
        let mut step = 0.1;
        for _ in 0..60 {
            // gradient of the margin: ellipsoid support point minus the
            // polytope's active vertex, projected to the tangent plane
            let y = e.orientation.transpose() * d;
            let scaled = Vector3::new(
                e.semiaxes[0] * e.semiaxes[0] * y[0],
                e.semiaxes[1] * e.semiaxes[1] * y[1],
                e.semiaxes[2] * e.semiaxes[2] * y[2],
            );
            let norm = Vector3::new(
                e.semiaxes[0] * y[0],
                e.semiaxes[1] * y[1],
                e.semiaxes[2] * y[2],
            )
            .norm()
            .max(1e-300);
            let grad_e = e.center + e.orientation * scaled / norm;
            let active = vertices
                .iter()
                .max_by(|a, b| a.dot(&d).partial_cmp(&b.dot(&d)).unwrap())
                .copied()
                .unwrap_or_else(Vector3::zeros);
            let grad = grad_e - active;
            let tangent = grad - d * grad.dot(&d);
            if tangent.norm() < 1e-14 {
                break;
            }
            let trial = (d + tangent * step).normalize();
            let mt = support_margin(e, vertices, &trial);
            if mt > m {
                d = trial;
                m = mt;
                step *= 1.3;
            } else {
                step *= 0.5;
                if step < 1e-12 {
                    break;
                }
            }
        }
        if champion.is_none_or(|(cm, _)| m > cm) {
            champion = Some((m, d));
        }
    }
    let (margin, d) = champion?;
    if margin <= tol::WITNESS_MARGIN {
        return None;
    }
    // supporting point of the ellipsoid in direction d
    let y = e.orientation.transpose() * d;
    let scaled = Vector3::new(
        e.semiaxes[0] * e.semiaxes[0] * y[0],
        e.semiaxes[1] * e.semiaxes[1] * y[1],
        e.semiaxes[2] * e.semiaxes[2] * y[2],
    );
    let norm = Vector3::new(e.semiaxes[0] * y[0], e.semiaxes[1] * y[1], e.semiaxes[2] * y[2])
        .norm()
        .max(1e-300);
    let witness = e.center + e.orientation * scaled / norm;
    if vertices.len() <= 30 && !vertices.is_empty() {
        // exact confirmation: the witness must sit off the hull
        if hull_distance(&witness, vertices) <= tol::WITNESS_MARGIN {
            return None;
        }
    }
    Some(witness)
}

/// Random full-rank ellipsoid tangent to the unit sphere from inside, with
/// its tangency point. Curvature at the contact caps the transverse axes at
/// sqrt of the radial one.
pub fn random_tangent_ellipsoid<R: Rng>(rng: &mut R) -> (SteeringEllipsoid, Vector3<f64>) {
    let t = crate::sampling::random_unit_vector(rng);
    let radial: f64 = rng.gen_range(0.08..0.9);
    let cap = radial.sqrt() * 0.98;
    let s1: f64 = rng.gen_range(0.05_f64.min(cap * 0.5)..cap);
    let s2: f64 = rng.gen_range(0.05_f64.min(cap * 0.5)..cap);
    // orthonormal frame with t as the last column
    let seed = if t.x.abs() < 0.9 {
        Vector3::x()
    } else {
        Vector3::y()
    };
    let b1 = (seed - t * seed.dot(&t)).normalize();
    let b2 = t.cross(&b1);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let (c1, c2) = (
        b1 * phi.cos() + b2 * phi.sin(),
        -b1 * phi.sin() + b2 * phi.cos(),
    );

    let mut axes = [(radial, t), (s1, c1), (s2, c2)];
    axes.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut orientation = Matrix3::from_columns(&[axes[0].1, axes[1].1, axes[2].1]);
    if orientation.determinant() < 0.0 {
        let col = orientation.column(2) * -1.0;
        orientation.set_column(2, &col);
    }
    let semiaxes = [axes[0].0, axes[1].0, axes[2].0];
    let q = orientation
        * Matrix3::from_diagonal(&Vector3::new(
            semiaxes[0] * semiaxes[0],
            semiaxes[1] * semiaxes[1],
            semiaxes[2] * semiaxes[2],
        ))
        * orientation.transpose();
    let ell = SteeringEllipsoid {
        party: Party::Bob,
        center: t * (1.0 - radial),
        q,
        semiaxes,
        orientation,
        gamma_sq: 1.0,
        degeneracy: Degeneracy::Full,
    };
    (ell, t)
}
