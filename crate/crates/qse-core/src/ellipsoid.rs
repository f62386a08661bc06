//! The steering ellipsoid: the set of Bloch vectors the steered party can be
//! collapsed to when the other party measures.
//!
//! For Bob steered by Alice, with gamma^2 = 1/(1 - |a|^2):
//!   center = gamma^2 (b - T^t a)
//!   Q      = gamma^2 (T^t - b a^t)(I + gamma^2 a a^t)(T - a b^t)
//! and the semiaxes are the square roots of Q's eigenvalues. Alice's
//! ellipsoid is the same formula on the party-swapped decomposition.

use crate::error::{Error, Result};
use crate::linalg;
use crate::states::{Party, PauliDecomposition};
use crate::tol;
use nalgebra::{Matrix3, Vector3};

/// Rank of the ellipsoid body: count of semiaxes above 1e-8.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    Full,
    Pancake,
    Needle,
    Point,
}

#[derive(Debug, Clone)]
pub struct SteeringEllipsoid {
    /// The steered party (whose Bloch ball contains this ellipsoid).
    pub party: Party,
    pub center: Vector3<f64>,
    /// Symmetrized ellipsoid matrix; x on the surface iff
    /// (x - center)^t Q^{-1} (x - center) = 1.
    pub q: Matrix3<f64>,
    /// Descending.
    pub semiaxes: [f64; 3],
    /// Columns are the axis directions matching `semiaxes`; orthonormal,
    /// determinant +1.
    pub orientation: Matrix3<f64>,
    /// 1/(1 - |steerer|^2), >= 1.
    pub gamma_sq: f64,
    pub degeneracy: Degeneracy,
}

impl SteeringEllipsoid {
    /// |(p - c)^t Q^{-1} (p - c) - 1| through the axis frame. Full only.
    pub fn membership_residual(&self, p: &Vector3<f64>) -> Result<f64> {
        if self.degeneracy != Degeneracy::Full {
            return Err(Error::DegenerateEllipse {
                what: format!("membership test needs a full-rank ellipsoid, got {:?}", self.degeneracy),
            });
        }
        let y = self.orientation.transpose() * (p - self.center);
        let v: f64 = (0..3).map(|i| (y[i] / self.semiaxes[i]).powi(2)).sum();
        Ok((v - 1.0).abs())
    }
}

pub fn compute_ellipsoid(d: &PauliDecomposition, steered: Party) -> Result<SteeringEllipsoid> {
    // steered-Alice is the steered-Bob formula on swapped data
    let dd = match steered {
        Party::Bob => d.clone(),
        Party::Alice => d.swap_parties(),
    };
    let (a, b, t) = (dd.a, dd.b, dd.t);
    let steerer = steered.other();
    let norm_a = a.norm();
    if norm_a > 1.0 - tol::STEERER_PURITY {
        return Err(Error::DegenerateSteerer {
            party: steerer,
            norm: norm_a,
        });
    }
    let gamma_sq = 1.0 / (1.0 - a.norm_squared());
    let center = (b - t.transpose() * a) * gamma_sq;
    let left = t.transpose() - b * a.transpose();
    let mid = Matrix3::identity() + (a * a.transpose()) * gamma_sq;
    let q_raw = left * mid * left.transpose() * gamma_sq;
    let q = (q_raw + q_raw.transpose()) * 0.5;

    let (evals, orientation) = linalg::sym_eigen3_frame(&q);
    let semiaxes = [
        evals[0].max(0.0).sqrt(),
        evals[1].max(0.0).sqrt(),
        evals[2].max(0.0).sqrt(),
    ];
    let rank = semiaxes.iter().filter(|&&s| s > tol::DEGENERACY_AXIS).count();
    let degeneracy = match rank {
        3 => Degeneracy::Full,
        2 => Degeneracy::Pancake,
        1 => Degeneracy::Needle,
        _ => Degeneracy::Point,
    };
    Ok(SteeringEllipsoid {
        party: steered,
        center,
        q,
        semiaxes,
        orientation,
        gamma_sq,
        degeneracy,
    })
}

/// (4 pi / 3) s1 s2 s3.
pub fn ellipsoid_volume(e: &SteeringEllipsoid) -> f64 {
    4.0 * std::f64::consts::PI / 3.0 * e.semiaxes[0] * e.semiaxes[1] * e.semiaxes[2]
}

/// center + orientation diag(semiaxes) direction, for a unit direction in
/// the axis frame. Needs a full-rank body.
pub fn surface_point(e: &SteeringEllipsoid, direction: &Vector3<f64>) -> Result<Vector3<f64>> {
    let n = direction.norm();
    if (n - 1.0).abs() > tol::UNIT_DIRECTION {
        return Err(Error::NonUnitDirection { norm: n });
    }
    if e.degeneracy != Degeneracy::Full {
        return Err(Error::DegenerateEllipse {
            what: format!("surface map needs a full-rank ellipsoid, got {:?}", e.degeneracy),
        });
    }
    let scaled = Vector3::new(
        e.semiaxes[0] * direction[0],
        e.semiaxes[1] * direction[1],
        e.semiaxes[2] * direction[2],
    );
    Ok(e.center + e.orientation * scaled)
}
