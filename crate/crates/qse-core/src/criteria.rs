//! Steering and nonlocality verdicts: tangency counts turned into a
//! two-way steering classification, the two-point probability shortcut,
//! and the Horodecki CHSH criterion.

use crate::ellipsoid::{compute_ellipsoid, ellipsoid_volume};
use crate::error::{Error, Result};
use crate::linalg;
use crate::states::{Party, PauliDecomposition, TwoQubitState};
use crate::tangency::{find_tangency, CountClass, TangencyReport, ToleranceConfig};
use nalgebra::Matrix3;

/// CHSH strength value = sqrt(s1^2 + s2^2) with s1 >= s2 the two largest
/// singular values of T; the inequality is violated iff value > 1; the
/// Tsirelson bound is sqrt(2).
pub fn horodecki_chsh(t: &Matrix3<f64>) -> (f64, bool) {
    let (evals, _) = linalg::sym_eigen3_frame(&(t.transpose() * t));
    let value = (evals[0].max(0.0) + evals[1].max(0.0)).sqrt();
    (value, value > 1.0 + 1e-12)
}

/// Outcome of the two-pure-steered-state probability shortcut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShortcutOutcome {
    /// p_p + p_g >= 1: steerability follows from arithmetic alone.
    SteerableBySum,
    /// The sum is below one; steering still holds with two tangency
    /// points, but not by this arithmetic alone.
    SumInconclusive,
}

pub fn two_point_shortcut(p_p: f64, p_g: f64) -> Result<ShortcutOutcome> {
    for (name, v) in [("pP", p_p), ("pG", p_g)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::OutOfRange { name, value: v });
        }
    }
    Ok(if p_p + p_g >= 1.0 - 1e-12 {
        ShortcutOutcome::SteerableBySum
    } else {
        ShortcutOutcome::SumInconclusive
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    TwoWaySteerable,
    NotEntangled,
    /// Entangled with zero tangency points: the tangency criterion is
    /// sufficient, not necessary, so no negative claim is made.
    InconclusiveByTangency,
}

/// What certified the steering verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictBasis {
    OnePureSteeredState,
    TwoPureSteeredStates,
    /// Globally pure and entangled (Gisin).
    PureEntangled,
    None,
}

#[derive(Debug, Clone)]
pub struct SteeringClassification {
    pub entangled: bool,
    pub negativity: f64,
    /// Missing only when the corresponding steerer marginal is pure, which
    /// for valid states implies a product state.
    pub tangency_alice: Option<TangencyReport>,
    pub tangency_bob: Option<TangencyReport>,
    pub verdict: Verdict,
    pub verdict_basis: VerdictBasis,
    pub chsh_value: f64,
    pub chsh_violated: bool,
    /// (Alice's, Bob's) ellipsoid volumes; 0 when the body or the steerer
    /// degenerates.
    pub volumes: (f64, f64),
    /// Diagnostic for the two-point case, from Bob's two probabilities.
    pub shortcut: Option<ShortcutOutcome>,
    /// Structured degeneracy remarks instead of hard failures.
    pub notes: Vec<String>,
}

fn tangency_or_note(
    d: &PauliDecomposition,
    party: Party,
    cfg: &ToleranceConfig,
    notes: &mut Vec<String>,
) -> Result<Option<TangencyReport>> {
    match find_tangency(d, party, cfg) {
        Ok(rep) => Ok(Some(rep)),
        Err(Error::DegenerateSteerer { party: steerer, norm }) => {
            notes.push(format!(
                "tangency for {party} unavailable: steerer {steerer} is pure (|bloch| = {norm:.12})"
            ));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn volume_or_note(
    d: &PauliDecomposition,
    party: Party,
    notes: &mut Vec<String>,
) -> Result<f64> {
    match compute_ellipsoid(d, party) {
        Ok(e) => Ok(ellipsoid_volume(&e)),
        Err(Error::DegenerateSteerer { party: steerer, norm }) => {
            notes.push(format!(
                "ellipsoid for {party} degenerate: steerer {steerer} is pure (|bloch| = {norm:.12})"
            ));
            Ok(0.0)
        }
        Err(e) => Err(e),
    }
}

/// Full pipeline: PPT, both ellipsoids, both tangency enumerations, CHSH,
/// and the verdict with its basis. A tangency count asymmetry between the
/// parties is a hard CountMismatch error.
pub fn classify_steering(
    state: &TwoQubitState,
    cfg: &ToleranceConfig,
) -> Result<SteeringClassification> {
    cfg.validate()?;
    let ent = state.entanglement();
    let d = state.pauli();
    let mut notes = Vec::new();

    let vol_a = volume_or_note(&d, Party::Alice, &mut notes)?;
    let vol_b = volume_or_note(&d, Party::Bob, &mut notes)?;
    let t_alice = tangency_or_note(&d, Party::Alice, cfg, &mut notes)?;
    let t_bob = tangency_or_note(&d, Party::Bob, cfg, &mut notes)?;
    let (chsh_value, chsh_violated) = horodecki_chsh(&d.t);

    let (verdict, verdict_basis) = if !ent.entangled {
        (Verdict::NotEntangled, VerdictBasis::None)
    } else {
        // entangled states have mixed marginals, so both reports exist
        let (ta, tb) = match (&t_alice, &t_bob) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::InconsistentWithClassification {
                    what: "entangled state with a pure marginal".into(),
                })
            }
        };
        if ta.count_class != tb.count_class {
            return Err(Error::CountMismatch {
                alice: ta.points.len(),
                bob: tb.points.len(),
            });
        }
        match tb.count_class {
            CountClass::Infinite => (Verdict::TwoWaySteerable, VerdictBasis::PureEntangled),
            CountClass::One => (Verdict::TwoWaySteerable, VerdictBasis::OnePureSteeredState),
            CountClass::Two => (Verdict::TwoWaySteerable, VerdictBasis::TwoPureSteeredStates),
            CountClass::Zero => (Verdict::InconclusiveByTangency, VerdictBasis::None),
        }
    };

    let shortcut = t_bob.as_ref().and_then(|tb| {
        if tb.count_class == CountClass::Two {
            two_point_shortcut(tb.points[0].probability, tb.points[1].probability).ok()
        } else {
            None
        }
    });

    Ok(SteeringClassification {
        entangled: ent.entangled,
        negativity: ent.negativity,
        tangency_alice: t_alice,
        tangency_bob: t_bob,
        verdict,
        verdict_basis,
        chsh_value,
        chsh_violated,
        volumes: (vol_a, vol_b),
        shortcut,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use approx::assert_relative_eq;
    use nalgebra::{Matrix4, Vector3};
    use num_complex::Complex;

    fn singlet_product_state(q: f64) -> TwoQubitState {
        TwoQubitState::from_pauli(&PauliDecomposition {
            a: Vector3::new(0.0, 0.0, 1.0 - q),
            b: Vector3::zeros(),
            t: Matrix3::identity() * (-q),
        })
        .unwrap()
    }

    fn werner(w: f64) -> TwoQubitState {
        TwoQubitState::from_pauli(&PauliDecomposition {
            a: Vector3::zeros(),
            b: Vector3::zeros(),
            t: Matrix3::identity() * (-w),
        })
        .unwrap()
    }

    #[test]
    fn chsh_golden_values() {
        let (v, violated) = horodecki_chsh(&(-Matrix3::identity()));
        assert_relative_eq!(v, 2.0f64.sqrt(), epsilon = 1e-14);
        assert!(violated);

        let t = Matrix3::from_diagonal(&Vector3::new(0.25, -0.25, 1.0));
        let (v, violated) = horodecki_chsh(&t);
        assert_relative_eq!(v, 17.0f64.sqrt() / 4.0, epsilon = 1e-14);
        assert!(violated);

        let (v, violated) = horodecki_chsh(&Matrix3::zeros());
        assert_eq!(v, 0.0);
        assert!(!violated);
    }

    #[test]
    fn chsh_never_exceeds_tsirelson() {
        let mut rng = sampling::seeded_rng(sampling::env_seed(61));
        for _ in 0..300 {
            let d = sampling::random_state(&mut rng).pauli();
            let (v, _) = horodecki_chsh(&d.t);
            assert!(v <= 2.0f64.sqrt() + 1e-12, "value {v}");
        }
    }

    #[test]
    fn shortcut_branches() {
        assert_eq!(
            two_point_shortcut(0.7, 0.5).unwrap(),
            ShortcutOutcome::SteerableBySum
        );
        assert_eq!(
            two_point_shortcut(0.5, 0.5).unwrap(),
            ShortcutOutcome::SteerableBySum
        );
        assert_eq!(
            two_point_shortcut(0.3, 0.3).unwrap(),
            ShortcutOutcome::SumInconclusive
        );
        assert!(matches!(
            two_point_shortcut(0.0, 0.5),
            Err(Error::OutOfRange { name: "pP", .. })
        ));
        assert!(matches!(
            two_point_shortcut(0.5, 1.0),
            Err(Error::OutOfRange { name: "pG", .. })
        ));
    }

    #[test]
    fn classify_single_tangency_mixture() {
        let cls = classify_steering(&singlet_product_state(0.5), &ToleranceConfig::default()).unwrap();
        assert!(cls.entangled);
        assert_eq!(cls.verdict, Verdict::TwoWaySteerable);
        assert_eq!(cls.verdict_basis, VerdictBasis::OnePureSteeredState);
        assert!(!cls.chsh_violated);
        assert_relative_eq!(cls.chsh_value, 2.0f64.sqrt() / 2.0, epsilon = 1e-12);
        assert_eq!(cls.tangency_alice.as_ref().unwrap().count_class, CountClass::One);
        assert_eq!(cls.tangency_bob.as_ref().unwrap().count_class, CountClass::One);
        let pi = std::f64::consts::PI;
        assert_relative_eq!(cls.volumes.0, pi / 6.0, epsilon = 1e-12);
        assert_relative_eq!(cls.volumes.1, 4.0 * pi / 3.0 * 2.0 / 9.0, epsilon = 1e-12);
        assert!(cls.shortcut.is_none());
        assert!(cls.notes.is_empty());
    }

    #[test]
    fn classify_werner_inconclusive() {
        let cls = classify_steering(&werner(0.4), &ToleranceConfig::default()).unwrap();
        assert!(cls.entangled);
        assert_eq!(cls.verdict, Verdict::InconclusiveByTangency);
        assert_eq!(cls.verdict_basis, VerdictBasis::None);
        assert_eq!(cls.tangency_bob.as_ref().unwrap().count_class, CountClass::Zero);

        let cls = classify_steering(&werner(0.3), &ToleranceConfig::default()).unwrap();
        assert!(!cls.entangled, "w = 0.3 is inside the separable ball");
        assert_eq!(cls.verdict, Verdict::NotEntangled);
    }

    #[test]
    fn classify_product_states() {
        let mut m = Matrix4::zeros();
        m[(0, 0)] = Complex::new(1.0, 0.0);
        let cls = classify_steering(
            &TwoQubitState::new(m).unwrap(),
            &ToleranceConfig::default(),
        )
        .unwrap();
        assert_eq!(cls.verdict, Verdict::NotEntangled);

        // mixed product with one pure factor: notes instead of errors
        let d = PauliDecomposition {
            a: Vector3::new(0.0, 0.0, 1.0),
            b: Vector3::zeros(),
            t: Matrix3::zeros(),
        };
        let cls = classify_steering(
            &TwoQubitState::from_pauli(&d).unwrap(),
            &ToleranceConfig::default(),
        )
        .unwrap();
        assert_eq!(cls.verdict, Verdict::NotEntangled);
        assert!(!cls.notes.is_empty());
        assert!(cls.tangency_bob.is_none());
        assert_eq!(cls.volumes.1, 0.0);
    }

    #[test]
    fn classify_pure_entangled_state() {
        let cls = classify_steering(
            &TwoQubitState::from_pauli(&PauliDecomposition {
                a: Vector3::zeros(),
                b: Vector3::zeros(),
                t: -Matrix3::identity(),
            })
            .unwrap(),
            &ToleranceConfig::default(),
        )
        .unwrap();
        assert!(cls.entangled);
        assert_relative_eq!(cls.negativity, 0.5, epsilon = 1e-12);
        assert_eq!(cls.verdict, Verdict::TwoWaySteerable);
        assert_eq!(cls.verdict_basis, VerdictBasis::PureEntangled);
        assert_relative_eq!(cls.chsh_value, 2.0f64.sqrt(), epsilon = 1e-12);
        assert!(cls.chsh_violated);
    }

    #[test]
    fn classify_two_point_state_reports_shortcut() {
        let d = PauliDecomposition {
            a: Vector3::new(0.0, 0.0, 1.0 / 3.0),
            b: Vector3::new(0.0, 0.0, 1.0 / 3.0),
            t: Matrix3::from_diagonal(&Vector3::new(0.25, -0.25, 1.0)),
        };
        let cls = classify_steering(
            &TwoQubitState::from_pauli(&d).unwrap(),
            &ToleranceConfig::default(),
        )
        .unwrap();
        assert_eq!(cls.verdict, Verdict::TwoWaySteerable);
        assert_eq!(cls.verdict_basis, VerdictBasis::TwoPureSteeredStates);
        // probabilities 2/3 and 1/3 sum to one exactly
        assert_eq!(cls.shortcut, Some(ShortcutOutcome::SteerableBySum));
        assert_relative_eq!(cls.chsh_value, 17.0f64.sqrt() / 4.0, epsilon = 1e-12);
    }

    #[test]
    fn mixture_sweep_reproduces_chsh_line() {
        for k in 1..=9 {
            let q = k as f64 / 10.0;
            let cls = classify_steering(&singlet_product_state(q), &ToleranceConfig::default()).unwrap();
            assert_eq!(cls.verdict, Verdict::TwoWaySteerable, "q = {q}");
            assert!((cls.chsh_value - 2.0f64.sqrt() * q).abs() < 1e-10);
            assert_eq!(cls.chsh_violated, 2.0f64.sqrt() * q > 1.0 + 1e-12);
            if q <= 0.5 {
                assert!(!cls.chsh_violated);
            }
        }
    }

    #[test]
    fn entangled_states_have_positive_volumes_and_equal_counts() {
        let mut rng = sampling::seeded_rng(sampling::env_seed(62));
        for _ in 0..100 {
            let st = sampling::random_entangled_state(&mut rng);
            let cls = classify_steering(&st, &ToleranceConfig::default()).unwrap();
            assert!(cls.entangled);
            assert!(cls.volumes.0 > 0.0 && cls.volumes.1 > 0.0);
            assert_eq!(
                cls.tangency_alice.as_ref().unwrap().count_class,
                cls.tangency_bob.as_ref().unwrap().count_class
            );
            if cls.verdict == Verdict::TwoWaySteerable {
                let n = cls.tangency_bob.as_ref().unwrap();
                assert!(
                    n.count_class != CountClass::Zero,
                    "steerable verdict needs contact"
                );
            }
        }
    }
}
