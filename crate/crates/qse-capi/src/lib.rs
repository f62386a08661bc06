//! C bindings for the steering-ellipsoid analyzer.
//!
//! Conventions: every function returns a `QseStatus`; results come back
//! through out-pointers. States are opaque handles freed with
//! `qse_state_free`; strings returned by the library are freed with
//! `qse_string_free`. On any non-OK status, `qse_last_error` yields a
//! human-readable message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nalgebra::{Matrix3, Matrix4, Vector3};
use num_complex::Complex;

use qse_core::criteria::{classify_steering, Verdict, VerdictBasis};
use qse_core::ellipsoid::{compute_ellipsoid, Degeneracy};
use qse_core::error::Error;
use qse_core::io::{build_report, from_json, to_json, StateFile};
use qse_core::states::{Party, PauliDecomposition, TwoQubitState};
use qse_core::tangency::{find_tangency, CountClass, ToleranceConfig};

/// Result of every call. Numeric values match the CLI exit codes where a
/// counterpart exists.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QseStatus {
    QseOk = 0,
    /// Bad state, file, or parameter.
    QseInvalidInput = 2,
    /// Solver failure on a valid input.
    QseNumericFailure = 3,
    QseNullPointer = 4,
}

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QseParty {
    QseAlice = 0,
    QseBob = 1,
}

/// Count of pure steered states.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QseCountClass {
    QseCountZero = 0,
    QseCountOne = 1,
    QseCountTwo = 2,
    QseCountInfinite = 3,
}

/// Ellipsoid body rank, lowest to highest.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QseDegeneracy {
    QsePoint = 0,
    QseNeedle = 1,
    QsePancake = 2,
    QseFull = 3,
}

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QseVerdict {
    QseNotEntangled = 0,
    QseTwoWaySteerable = 1,
    /// Entangled with zero tangency points; the criterion is silent.
    QseInconclusiveByTangency = 2,
}

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QseVerdictBasis {
    QseBasisNone = 0,
    QseBasisOnePureSteeredState = 1,
    QseBasisTwoPureSteeredStates = 2,
    QseBasisPureEntangled = 3,
}

#[repr(C)]
#[derive(Clone, Copy)]
pub struct QseEllipsoid {
    pub center: [f64; 3],
    /// Descending.
    pub semiaxes: [f64; 3],
    /// Row-major rotation; its columns are the principal axes.
    pub orientation: [f64; 9],
    pub gamma_sq: f64,
    pub degeneracy: QseDegeneracy,
}

#[repr(C)]
#[derive(Clone, Copy)]
pub struct QseTangencyPoint {
    /// Bloch vector of the pure steered state.
    pub bloch: [f64; 3],
    /// Measurement direction, sign-folded; outcome_sign picks the effect.
    pub direction: [f64; 3],
    pub outcome_sign: i32,
    pub probability: f64,
    /// |g| at the maximizer.
    pub residual: f64,
}

#[repr(C)]
#[derive(Clone, Copy)]
pub struct QseClassification {
    pub entangled: bool,
    pub negativity: f64,
    pub chsh_value: f64,
    pub chsh_violated: bool,
    pub verdict: QseVerdict,
    pub verdict_basis: QseVerdictBasis,
    pub volume_alice: f64,
    pub volume_bob: f64,
    /// False when the corresponding steerer marginal is pure.
    pub has_count_alice: bool,
    pub has_count_bob: bool,
    pub count_alice: QseCountClass,
    pub count_bob: QseCountClass,
}

/// Opaque two-qubit state handle.
pub struct QseState {
    inner: TwoQubitState,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid message").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> QseStatus {
    if err.is_input_error() {
        QseStatus::QseInvalidInput
    } else {
        QseStatus::QseNumericFailure
    }
}

/// Runs a fallible body with panic containment and error capture.
fn guarded(body: impl FnOnce() -> Result<(), (QseStatus, String)>) -> QseStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => QseStatus::QseOk,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            QseStatus::QseNumericFailure
        }
    }
}

fn fail(e: Error) -> (QseStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_arg(name: &str) -> (QseStatus, String) {
    (QseStatus::QseNullPointer, format!("{name} is null"))
}

fn party_of(p: QseParty) -> Party {
    match p {
        QseParty::QseAlice => Party::Alice,
        QseParty::QseBob => Party::Bob,
    }
}

unsafe fn put_state(out: *mut *mut QseState, state: TwoQubitState) {
    *out = Box::into_raw(Box::new(QseState { inner: state }));
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qse_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copy of the calling thread's last error message, or NULL when the last
/// call succeeded. Free with `qse_string_free`.
#[no_mangle]
pub extern "C" fn qse_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Build a state from a row-major 4x4 density matrix split into real and
/// imaginary parts of 16 doubles each.
///
/// # Safety
/// `re` and `im` must point to 16 readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qse_state_from_matrix(
    re: *const f64,
    im: *const f64,
    out: *mut *mut QseState,
) -> QseStatus {
    guarded(|| {
        if re.is_null() || im.is_null() {
            return Err(null_arg("matrix data"));
        }
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let re = std::slice::from_raw_parts(re, 16);
        let im = std::slice::from_raw_parts(im, 16);
        let m = Matrix4::from_fn(|r, c| Complex::new(re[4 * r + c], im[4 * r + c]));
        let state = TwoQubitState::new(m).map_err(fail)?;
        // rebuild through the decomposition so matrix and Pauli inputs of
        // one state agree bitwise, matching the CLI
        let state = TwoQubitState::from_pauli(&state.pauli()).map_err(fail)?;
        put_state(out, state);
        Ok(())
    })
}

/// Build a state from Bloch vectors a, b (3 doubles each) and the
/// row-major correlation matrix T (9 doubles).
///
/// # Safety
/// Pointers must cover the stated lengths; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qse_state_from_pauli(
    a: *const f64,
    b: *const f64,
    t: *const f64,
    out: *mut *mut QseState,
) -> QseStatus {
    guarded(|| {
        if a.is_null() || b.is_null() || t.is_null() {
            return Err(null_arg("pauli data"));
        }
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let a = std::slice::from_raw_parts(a, 3);
        let b = std::slice::from_raw_parts(b, 3);
        let t = std::slice::from_raw_parts(t, 9);
        let d = PauliDecomposition {
            a: Vector3::new(a[0], a[1], a[2]),
            b: Vector3::new(b[0], b[1], b[2]),
            t: Matrix3::from_fn(|r, c| t[3 * r + c]),
        };
        let state = TwoQubitState::from_pauli(&d).map_err(fail)?;
        put_state(out, state);
        Ok(())
    })
}

/// Parse a NUL-terminated state-file document (matrix or pauli form).
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qse_state_from_json(
    text: *const c_char,
    out: *mut *mut QseState,
) -> QseStatus {
    guarded(|| {
        if text.is_null() {
            return Err(null_arg("text"));
        }
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (QseStatus::QseInvalidInput, "text is not UTF-8".into()))?;
        let sf: StateFile = from_json(text).map_err(fail)?;
        let state = sf.to_state().map_err(fail)?;
        put_state(out, state);
        Ok(())
    })
}

/// # Safety
/// `state` must come from a qse constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qse_state_free(state: *mut QseState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Steering ellipsoid of the chosen steered party.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qse_ellipsoid(
    state: *const QseState,
    party: QseParty,
    out: *mut QseEllipsoid,
) -> QseStatus {
    guarded(|| {
        if state.is_null() {
            return Err(null_arg("state"));
        }
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let d = (*state).inner.pauli();
        let e = compute_ellipsoid(&d, party_of(party)).map_err(fail)?;
        let mut orientation = [0.0; 9];
        for r in 0..3 {
            for c in 0..3 {
                orientation[3 * r + c] = e.orientation[(r, c)];
            }
        }
        *out = QseEllipsoid {
            center: [e.center.x, e.center.y, e.center.z],
            semiaxes: e.semiaxes,
            orientation,
            gamma_sq: e.gamma_sq,
            degeneracy: match e.degeneracy {
                Degeneracy::Point => QseDegeneracy::QsePoint,
                Degeneracy::Needle => QseDegeneracy::QseNeedle,
                Degeneracy::Pancake => QseDegeneracy::QsePancake,
                Degeneracy::Full => QseDegeneracy::QseFull,
            },
        };
        Ok(())
    })
}

/// Pure steered states of the chosen party. `points` must hold capacity
/// entries; at most two are written. `count_class` reports the cardinality
/// (zero, one, two, or a continuum for pure inputs) and `n_points` how many
/// entries were written.
///
/// # Safety
/// `state` must be a live handle; `points` must cover `capacity` entries;
/// the remaining out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qse_tangency(
    state: *const QseState,
    party: QseParty,
    points: *mut QseTangencyPoint,
    capacity: usize,
    count_class: *mut QseCountClass,
    n_points: *mut usize,
    max_g: *mut f64,
) -> QseStatus {
    guarded(|| {
        if state.is_null() {
            return Err(null_arg("state"));
        }
        if count_class.is_null() || n_points.is_null() || max_g.is_null() {
            return Err(null_arg("out"));
        }
        if points.is_null() && capacity > 0 {
            return Err(null_arg("points"));
        }
        let d = (*state).inner.pauli();
        let rep = find_tangency(&d, party_of(party), &ToleranceConfig::default()).map_err(fail)?;
        if rep.points.len() > capacity {
            return Err((
                QseStatus::QseInvalidInput,
                format!(
                    "points capacity {capacity} too small for {} tangency points",
                    rep.points.len()
                ),
            ));
        }
        for (i, p) in rep.points.iter().enumerate() {
            *points.add(i) = QseTangencyPoint {
                bloch: [p.bloch_point.x, p.bloch_point.y, p.bloch_point.z],
                direction: [p.direction.x, p.direction.y, p.direction.z],
                outcome_sign: p.outcome_sign as i32,
                probability: p.probability,
                residual: p.residual,
            };
        }
        *count_class = match rep.count_class {
            CountClass::Zero => QseCountClass::QseCountZero,
            CountClass::One => QseCountClass::QseCountOne,
            CountClass::Two => QseCountClass::QseCountTwo,
            CountClass::Infinite => QseCountClass::QseCountInfinite,
        };
        *n_points = rep.points.len();
        *max_g = rep.max_g;
        Ok(())
    })
}

/// Full classification: entanglement, CHSH, tangency counts, verdict.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qse_classify(
    state: *const QseState,
    out: *mut QseClassification,
) -> QseStatus {
    guarded(|| {
        if state.is_null() {
            return Err(null_arg("state"));
        }
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let cls = classify_steering(&(*state).inner, &ToleranceConfig::default()).map_err(fail)?;
        let count = |rep: &Option<qse_core::tangency::TangencyReport>| match rep {
            Some(r) => (
                true,
                match r.count_class {
                    CountClass::Zero => QseCountClass::QseCountZero,
                    CountClass::One => QseCountClass::QseCountOne,
                    CountClass::Two => QseCountClass::QseCountTwo,
                    CountClass::Infinite => QseCountClass::QseCountInfinite,
                },
            ),
            None => (false, QseCountClass::QseCountZero),
        };
        let (has_a, count_a) = count(&cls.tangency_alice);
        let (has_b, count_b) = count(&cls.tangency_bob);
        *out = QseClassification {
            entangled: cls.entangled,
            negativity: cls.negativity,
            chsh_value: cls.chsh_value,
            chsh_violated: cls.chsh_violated,
            verdict: match cls.verdict {
                Verdict::NotEntangled => QseVerdict::QseNotEntangled,
                Verdict::TwoWaySteerable => QseVerdict::QseTwoWaySteerable,
                Verdict::InconclusiveByTangency => QseVerdict::QseInconclusiveByTangency,
            },
            verdict_basis: match cls.verdict_basis {
                VerdictBasis::None => QseVerdictBasis::QseBasisNone,
                VerdictBasis::OnePureSteeredState => {
                    QseVerdictBasis::QseBasisOnePureSteeredState
                }
                VerdictBasis::TwoPureSteeredStates => {
                    QseVerdictBasis::QseBasisTwoPureSteeredStates
                }
                VerdictBasis::PureEntangled => QseVerdictBasis::QseBasisPureEntangled,
            },
            volume_alice: cls.volumes.0,
            volume_bob: cls.volumes.1,
            has_count_alice: has_a,
            has_count_bob: has_b,
            count_alice: count_a,
            count_bob: count_b,
        };
        Ok(())
    })
}

/// Machine-readable report document (17-significant-digit floats), as a
/// NUL-terminated string. Free with `qse_string_free`.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qse_report_json(
    state: *const QseState,
    out: *mut *mut c_char,
) -> QseStatus {
    guarded(|| {
        if state.is_null() {
            return Err(null_arg("state"));
        }
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let report = build_report(&(*state).inner, &ToleranceConfig::default()).map_err(fail)?;
        let text = to_json(&report).map_err(fail)?;
        let c = CString::new(text)
            .map_err(|_| (QseStatus::QseNumericFailure, "report had a NUL byte".into()))?;
        *out = c.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qse_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singlet_product_handle() -> *mut QseState {
        // singlet/product mixture at weight one half
        let a = [0.0, 0.0, 0.5];
        let b = [0.0; 3];
        let t = [-0.5, 0.0, 0.0, 0.0, -0.5, 0.0, 0.0, 0.0, -0.5];
        let mut state = std::ptr::null_mut();
        let status =
            unsafe { qse_state_from_pauli(a.as_ptr(), b.as_ptr(), t.as_ptr(), &mut state) };
        assert_eq!(status, QseStatus::QseOk);
        assert!(!state.is_null());
        state
    }

    #[test]
    fn ellipsoid_and_tangency_golden() {
        let state = singlet_product_handle();
        let mut e = QseEllipsoid {
            center: [0.0; 3],
            semiaxes: [0.0; 3],
            orientation: [0.0; 9],
            gamma_sq: 0.0,
            degeneracy: QseDegeneracy::QsePoint,
        };
        let status = unsafe { qse_ellipsoid(state, QseParty::QseBob, &mut e) };
        assert_eq!(status, QseStatus::QseOk);
        assert!((e.center[2] - 1.0 / 3.0).abs() < 1e-9);
        assert!((e.semiaxes[0] - 2.0 / 3.0).abs() < 1e-9);
        assert!((e.semiaxes[1] - 1.0 / 3f64.sqrt()).abs() < 1e-9);
        assert_eq!(e.degeneracy, QseDegeneracy::QseFull);

        let mut pts = [QseTangencyPoint {
            bloch: [0.0; 3],
            direction: [0.0; 3],
            outcome_sign: 0,
            probability: 0.0,
            residual: 0.0,
        }; 2];
        let mut class = QseCountClass::QseCountZero;
        let mut n = 0usize;
        let mut max_g = 0.0;
        let status = unsafe {
            qse_tangency(
                state,
                QseParty::QseBob,
                pts.as_mut_ptr(),
                2,
                &mut class,
                &mut n,
                &mut max_g,
            )
        };
        assert_eq!(status, QseStatus::QseOk);
        assert_eq!(class, QseCountClass::QseCountOne);
        assert_eq!(n, 1);
        assert!((pts[0].bloch[2] - 1.0).abs() < 1e-7);
        assert!((pts[0].probability - 0.25).abs() < 1e-9);
        assert!(max_g.abs() < 1e-9);
        unsafe { qse_state_free(state) };
    }

    #[test]
    fn classify_golden_and_report_parses() {
        let state = singlet_product_handle();
        let mut cls = unsafe { std::mem::zeroed::<QseClassification>() };
        let status = unsafe { qse_classify(state, &mut cls) };
        assert_eq!(status, QseStatus::QseOk);
        assert!(cls.entangled);
        assert_eq!(cls.verdict, QseVerdict::QseTwoWaySteerable);
        assert_eq!(
            cls.verdict_basis,
            QseVerdictBasis::QseBasisOnePureSteeredState
        );
        assert!(!cls.chsh_violated);
        assert!((cls.chsh_value - 0.5 * 2f64.sqrt()).abs() < 1e-10);
        assert!(cls.has_count_alice && cls.has_count_bob);
        assert_eq!(cls.count_alice, QseCountClass::QseCountOne);
        assert_eq!(cls.count_bob, QseCountClass::QseCountOne);

        let mut text = std::ptr::null_mut();
        let status = unsafe { qse_report_json(state, &mut text) };
        assert_eq!(status, QseStatus::QseOk);
        let s = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_string();
        unsafe { qse_string_free(text) };
        let report: qse_core::io::ReportFile = from_json(&s).unwrap();
        assert_eq!(report.verdict, "TwoWaySteerable");
        unsafe { qse_state_free(state) };
    }

    #[test]
    fn matrix_and_pauli_constructors_agree() {
        let state_p = singlet_product_handle();
        // the same state as a dense matrix
        let mut re = [0.0f64; 16];
        let im = [0.0f64; 16];
        re[0] = 0.25;
        re[5] = 0.5;
        re[6] = -0.25;
        re[9] = -0.25;
        re[10] = 0.25;
        let mut state_m = std::ptr::null_mut();
        let status =
            unsafe { qse_state_from_matrix(re.as_ptr(), im.as_ptr(), &mut state_m) };
        assert_eq!(status, QseStatus::QseOk);

        let mut t1 = std::ptr::null_mut();
        let mut t2 = std::ptr::null_mut();
        unsafe {
            assert_eq!(qse_report_json(state_p, &mut t1), QseStatus::QseOk);
            assert_eq!(qse_report_json(state_m, &mut t2), QseStatus::QseOk);
            assert_eq!(
                CStr::from_ptr(t1).to_bytes(),
                CStr::from_ptr(t2).to_bytes()
            );
            qse_string_free(t1);
            qse_string_free(t2);
            qse_state_free(state_p);
            qse_state_free(state_m);
        }
    }

    #[test]
    fn json_constructor_and_error_reporting() {
        let text = CString::new(
            r#"{"pauli": {"a": [0,0,0.5], "b": [0,0,0], "T": [[-0.5,0,0],[0,-0.5,0],[0,0,-0.5]]}}"#,
        )
        .unwrap();
        let mut state = std::ptr::null_mut();
        let status = unsafe { qse_state_from_json(text.as_ptr(), &mut state) };
        assert_eq!(status, QseStatus::QseOk);
        assert!(qse_last_error().is_null());
        unsafe { qse_state_free(state) };

        let bad = CString::new("{\"pauli\": ").unwrap();
        let mut state = std::ptr::null_mut();
        let status = unsafe { qse_state_from_json(bad.as_ptr(), &mut state) };
        assert_eq!(status, QseStatus::QseInvalidInput);
        let msg = qse_last_error();
        assert!(!msg.is_null());
        let owned = unsafe { CStr::from_ptr(msg) }.to_str().unwrap().to_string();
        unsafe { qse_string_free(msg) };
        assert!(owned.contains("EOF") || owned.contains("parse"), "{owned}");

        // non-positive matrix
        let unphysical = CString::new(
            r#"{"pauli": {"a": [0,0,0], "b": [0,0,0], "T": [[-1,0,0],[0,-1,0],[0,0,1]]}}"#,
        )
        .unwrap();
        let mut state = std::ptr::null_mut();
        let status = unsafe { qse_state_from_json(unphysical.as_ptr(), &mut state) };
        assert_eq!(status, QseStatus::QseInvalidInput);
    }

    #[test]
    fn null_pointers_are_rejected() {
        let status = unsafe {
            qse_state_from_pauli(
                std::ptr::null(),
                std::ptr::null(),
                std::ptr::null(),
                std::ptr::null_mut(),
            )
        };
        assert_eq!(status, QseStatus::QseNullPointer);
        let mut e = unsafe { std::mem::zeroed::<QseEllipsoid>() };
        let status = unsafe { qse_ellipsoid(std::ptr::null(), QseParty::QseBob, &mut e) };
        assert_eq!(status, QseStatus::QseNullPointer);
        unsafe { qse_state_free(std::ptr::null_mut()) };
        unsafe { qse_string_free(std::ptr::null_mut()) };
    }

    #[test]
    fn version_is_a_c_string() {
        let v = qse_version();
        assert!(!v.is_null());
        let s = unsafe { CStr::from_ptr(v) }.to_str().unwrap();
        assert_eq!(s, env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn capacity_too_small_is_an_input_error() {
        // symmetric X-state with two tangency points
        let third = 1.0 / 3.0;
        let a = [0.0, 0.0, third];
        let b = [0.0, 0.0, third];
        let t = [0.25, 0.0, 0.0, 0.0, -0.25, 0.0, 0.0, 0.0, 1.0];
        let mut state = std::ptr::null_mut();
        unsafe {
            assert_eq!(
                qse_state_from_pauli(a.as_ptr(), b.as_ptr(), t.as_ptr(), &mut state),
                QseStatus::QseOk
            );
        }
        let mut pt = [QseTangencyPoint {
            bloch: [0.0; 3],
            direction: [0.0; 3],
            outcome_sign: 0,
            probability: 0.0,
            residual: 0.0,
        }; 1];
        let mut class = QseCountClass::QseCountZero;
        let mut n = 0usize;
        let mut max_g = 0.0;
        let status = unsafe {
            qse_tangency(
                state,
                QseParty::QseBob,
                pt.as_mut_ptr(),
                1,
                &mut class,
                &mut n,
                &mut max_g,
            )
        };
        assert_eq!(status, QseStatus::QseInvalidInput);
        unsafe { qse_state_free(state) };
    }
}
