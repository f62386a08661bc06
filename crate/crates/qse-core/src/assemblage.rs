//! Conditional states from local projective measurements, and the geometric
//! (chord section) view of their probabilities.
//!
//! When Alice measures n.sigma on a state with Pauli data (a, b, T), outcome
//! +-1 occurs with probability (1 +- n.a)/2 and leaves Bob in the Bloch
//! vector (b +- T^t n)/(1 +- n.a). The marginal b therefore splits any chord
//! of the steering ellipsoid in inverse proportion to the distances to the
//! endpoints, which is what `probability_from_geometry` recomputes.

use crate::ellipsoid::{Degeneracy, SteeringEllipsoid};
use crate::error::{Error, Result};
use crate::states::{Party, QubitState, TwoQubitState};
use crate::tol;
use nalgebra::Vector3;

#[derive(Debug, Clone)]
pub struct SteeringOutcome {
    /// +1 for the (I + n.sigma)/2 effect, -1 for the other.
    pub sign: i8,
    pub probability: f64,
    /// The steered party's conditional state.
    pub state: QubitState,
}

/// Conditional ensemble when `measuring` projects along `direction`.
/// Outcomes with probability below 1e-12 are dropped.
pub fn steer(
    state: &TwoQubitState,
    direction: &Vector3<f64>,
    measuring: Party,
) -> Result<Vec<SteeringOutcome>> {
    let n = direction.norm();
    if (n - 1.0).abs() > tol::UNIT_DIRECTION {
        return Err(Error::NonUnitDirection { norm: n });
    }
    // reduce Bob-measures to the Alice-measures formula on swapped data
    let d = match measuring {
        Party::Alice => state.pauli(),
        Party::Bob => state.pauli().swap_parties(),
    };
    let mut out = Vec::with_capacity(2);
    for sign in [1i8, -1i8] {
        let s = sign as f64;
        let p = 0.5 * (1.0 + s * direction.dot(&d.a));
        if p < tol::OUTCOME_FLOOR {
            continue;
        }
        let bloch = (d.b + d.t.transpose() * (s * direction)) / (2.0 * p);
        out.push(SteeringOutcome {
            sign,
            probability: p,
            state: QubitState::from_bloch(bloch)?,
        });
    }
    Ok(out)
}

/// Probabilities (p_plus, p_minus) from the chord geometry:
/// p_plus = |b - s_minus| / |s_plus - s_minus| and symmetrically.
/// `b` must be the convex combination p_plus s_plus + p_minus s_minus.
pub fn probability_from_geometry(
    b: &Vector3<f64>,
    s_plus: &Vector3<f64>,
    s_minus: &Vector3<f64>,
) -> Result<(f64, f64)> {
    let chord = (s_plus - s_minus).norm();
    if chord <= 1e-12 {
        return Err(Error::CoincidentEndpoints);
    }
    let p_plus = (b - s_minus).norm() / chord;
    let p_minus = (b - s_plus).norm() / chord;
    let residual = (s_plus * p_plus + s_minus * p_minus - b).norm() / chord;
    if residual > tol::COLLINEARITY {
        return Err(Error::NotCollinear { residual });
    }
    Ok((p_plus, p_minus))
}

#[derive(Debug, Clone, Copy)]
pub struct ChordEnsemble {
    pub s_plus: Vector3<f64>,
    pub s_minus: Vector3<f64>,
    pub p_plus: f64,
    pub p_minus: f64,
}

/// Intersects the line through `b` along `chord_direction` with the
/// ellipsoid surface and splits the probabilities geometrically. s_plus is
/// the endpoint on the +direction side. `b` must lie strictly inside a
/// full-rank ellipsoid.
pub fn ensemble_through_point(
    e: &SteeringEllipsoid,
    b: &Vector3<f64>,
    chord_direction: &Vector3<f64>,
) -> Result<ChordEnsemble> {
    let n = chord_direction.norm();
    if (n - 1.0).abs() > tol::UNIT_DIRECTION {
        return Err(Error::NonUnitDirection { norm: n });
    }
    if e.degeneracy != Degeneracy::Full {
        return Err(Error::DegenerateEllipse {
            what: format!("chord ensemble needs a full-rank ellipsoid, got {:?}", e.degeneracy),
        });
    }
    // axis frame, surface mapped to the unit sphere
    let to_ball = |x: &Vector3<f64>| {
        let y = e.orientation.transpose() * (x - e.center);
        Vector3::new(y[0] / e.semiaxes[0], y[1] / e.semiaxes[1], y[2] / e.semiaxes[2])
    };
    let w = to_ball(b);
    let value = w.norm_squared();
    if value >= 1.0 {
        return Err(Error::PointOutsideEllipsoid { value });
    }
    let yv = e.orientation.transpose() * chord_direction;
    let v = Vector3::new(yv[0] / e.semiaxes[0], yv[1] / e.semiaxes[1], yv[2] / e.semiaxes[2]);
    // |w + t v|^2 = 1; one root each side since |w| < 1
    let a2 = v.norm_squared();
    let b1 = w.dot(&v);
    let disc = (b1 * b1 - a2 * (value - 1.0)).sqrt();
    let t_plus = (-b1 + disc) / a2;
    let t_minus = (-b1 - disc) / a2;
    let s_plus = b + chord_direction * t_plus;
    let s_minus = b + chord_direction * t_minus;
    let (p_plus, p_minus) = probability_from_geometry(b, &s_plus, &s_minus)?;
    Ok(ChordEnsemble { s_plus, s_minus, p_plus, p_minus })
}
