//! Named two-qubit state families with documented steering behaviour.
//!
//! Each family is generated entrywise from its closed-form matrix and then
//! revalidated by [`TwoQubitState::new`], so the builders double as a stress
//! test for the state validator. Families carry optional expected data
//! (semiaxes, tangency points, tangency count) that [`expected_check`] can
//! compare against a freshly computed analysis.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix4, Vector3};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::states::{Party, TwoQubitState};
use crate::tangency::{find_tangency, CountClass, ToleranceConfig};
use crate::ellipsoid::compute_ellipsoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyName {
    /// Singlet mixed with `|0><0| (x) I/2`; one pure steered state for q < 1.
    SingletPlusProduct,
    /// Singlet mixed with white noise; no pure steered states for w < 1.
    Werner,
    /// Diagonal-plus-antidiagonal state fixed by its five correlation knobs.
    XState,
    /// X-state with `t_z = 1 + a_z - b_z`, tangent at `|0>` on Bob's side.
    TangentXState,
    /// Partially entangled pure state mixed with an asymmetric product.
    AsymPure,
    OnePureA,
    OnePureB,
    OnePureC,
    TwoPureA,
    TwoPureB,
}

impl FamilyName {
    pub fn all() -> [FamilyName; 10] {
        [
            FamilyName::SingletPlusProduct,
            FamilyName::Werner,
            FamilyName::XState,
            FamilyName::TangentXState,
            FamilyName::AsymPure,
            FamilyName::OnePureA,
            FamilyName::OnePureB,
            FamilyName::OnePureC,
            FamilyName::TwoPureA,
            FamilyName::TwoPureB,
        ]
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyName::SingletPlusProduct => "singlet-plus-product",
            FamilyName::Werner => "werner",
            FamilyName::XState => "x-state",
            FamilyName::TangentXState => "tangent-x-state",
            FamilyName::AsymPure => "asym-pure",
            FamilyName::OnePureA => "one-pure-a",
            FamilyName::OnePureB => "one-pure-b",
            FamilyName::OnePureC => "one-pure-c",
            FamilyName::TwoPureA => "two-pure-a",
            FamilyName::TwoPureB => "two-pure-b",
        }
    }

    /// Parameter names in the order the CLI expects positional values.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            FamilyName::SingletPlusProduct => &["q"],
            FamilyName::Werner => &["w"],
            FamilyName::XState => &["a_z", "b_z", "t_x", "t_y", "t_z"],
            FamilyName::TangentXState => &["a_z", "b_z", "t_x", "t_y"],
            FamilyName::AsymPure => &["q", "eta", "epsilon"],
            FamilyName::OnePureA | FamilyName::OnePureB | FamilyName::OnePureC => {
                &["x", "y", "z"]
            }
            FamilyName::TwoPureA | FamilyName::TwoPureB => &["x", "y"],
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyName::all()
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family '{s}'")))
    }
}

/// Expected behaviour of one party's steered set.
#[derive(Debug, Clone, Default)]
pub struct PartyExpectation {
    /// Semiaxes sorted descending, when the source documents them.
    pub semiaxes: Option<[f64; 3]>,
    /// Steered Bloch points at which the set touches the sphere.
    pub tangency_points: Vec<Vector3<f64>>,
}

#[derive(Debug, Clone, Default)]
pub struct Expected {
    pub count_class: Option<CountClass>,
    pub alice: PartyExpectation,
    pub bob: PartyExpectation,
}

#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub name: FamilyName,
    pub params: BTreeMap<String, f64>,
    pub expected: Option<Expected>,
}

impl FamilySpec {
    pub fn new(name: FamilyName, params: &[(&str, f64)]) -> Self {
        FamilySpec {
            name,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            expected: None,
        }
    }
}

fn param(params: &BTreeMap<String, f64>, name: &'static str) -> Result<f64> {
    params
        .get(name)
        .copied()
        .ok_or(Error::ParamOutOfRange {
            name,
            value: f64::NAN,
            domain: "required parameter is missing",
        })
}

/// Open interval (0, 1); every scalar family parameter lives here.
fn open_unit(name: &'static str, v: f64) -> Result<f64> {
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(Error::ParamOutOfRange {
            name,
            value: v,
            domain: "(0, 1)",
        })
    }
}

/// Half-open (0, 1]; mixing weights where the pure endpoint is meaningful.
fn mixing_weight(name: &'static str, v: f64) -> Result<f64> {
    if v > 0.0 && v <= 1.0 {
        Ok(v)
    } else {
        Err(Error::ParamOutOfRange {
            name,
            value: v,
            domain: "(0, 1]",
        })
    }
}

fn correlation(name: &'static str, v: f64) -> Result<f64> {
    if (-1.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(Error::ParamOutOfRange {
            name,
            value: v,
            domain: "[-1, 1]",
        })
    }
}

fn real_state(m: [[f64; 4]; 4]) -> Result<TwoQubitState> {
    let mut rho = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            rho[(i, j)] = C64::new(m[i][j], 0.0);
        }
    }
    TwoQubitState::new(rho)
}

/// Both 2x2 blocks of an X-state are PSD. `t_z` may come in derived and out
/// of [-1, 1], so the block diagonals are checked explicitly.
fn x_state_positive(a_z: f64, b_z: f64, t_x: f64, t_y: f64, t_z: f64) -> bool {
    let outer = (1.0 + t_z).powi(2) - (a_z + b_z).powi(2) - (t_x - t_y).powi(2);
    let inner = (1.0 - t_z).powi(2) - (a_z - b_z).powi(2) - (t_x + t_y).powi(2);
    let diag = [
        1.0 + a_z + b_z + t_z,
        1.0 + a_z - b_z - t_z,
        1.0 - a_z + b_z - t_z,
        1.0 - a_z - b_z + t_z,
    ];
    outer >= -1e-12 && inner >= -1e-12 && diag.iter().all(|&d| d >= -1e-12)
}

/// Closed-form entanglement test for X-states: the partial transpose flips
/// the sign of `t_y`, so swap the off-diagonal couplings between the blocks.
pub fn x_state_entangled(a_z: f64, b_z: f64, t_x: f64, t_y: f64, t_z: f64) -> bool {
    let outer = (1.0 + t_z).powi(2) - (a_z + b_z).powi(2) - (t_x + t_y).powi(2);
    let inner = (1.0 - t_z).powi(2) - (a_z - b_z).powi(2) - (t_x - t_y).powi(2);
    outer < 0.0 || inner < 0.0
}

fn x_state(a_z: f64, b_z: f64, t_x: f64, t_y: f64, t_z: f64) -> Result<TwoQubitState> {
    if !x_state_positive(a_z, b_z, t_x, t_y, t_z) {
        return Err(Error::PositivityViolated);
    }
    real_state([
        [
            0.25 * (1.0 + a_z + b_z + t_z),
            0.0,
            0.0,
            0.25 * (t_x - t_y),
        ],
        [
            0.0,
            0.25 * (1.0 + a_z - b_z - t_z),
            0.25 * (t_x + t_y),
            0.0,
        ],
        [
            0.0,
            0.25 * (t_x + t_y),
            0.25 * (1.0 - a_z + b_z - t_z),
            0.0,
        ],
        [
            0.25 * (t_x - t_y),
            0.0,
            0.0,
            0.25 * (1.0 - a_z - b_z + t_z),
        ],
    ])
}

/// X-state pinned to the sphere: `t_z = 1 + a_z - b_z` makes the steered set
/// touch at `|0>` on Bob's side and `|1>` on Alice's. Positivity then forces
/// `t_x = -t_y` and `b_z >= a_z`; anything else is rejected.
pub fn tangent_x_state(a_z: f64, b_z: f64, t_x: f64, t_y: f64) -> Result<TwoQubitState> {
    correlation("a_z", a_z)?;
    correlation("b_z", b_z)?;
    correlation("t_x", t_x)?;
    correlation("t_y", t_y)?;
    let t_z = 1.0 + a_z - b_z;
    x_state(a_z, b_z, t_x, t_y, t_z)
}

fn singlet_plus_product(q: f64) -> Result<TwoQubitState> {
    real_state([
        [(1.0 - q) / 2.0, 0.0, 0.0, 0.0],
        [0.0, 0.5, -q / 2.0, 0.0],
        [0.0, -q / 2.0, q / 2.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ])
}

fn werner(w: f64) -> Result<TwoQubitState> {
    let bg = (1.0 - w) / 4.0;
    real_state([
        [bg, 0.0, 0.0, 0.0],
        [0.0, bg + w / 2.0, -w / 2.0, 0.0],
        [0.0, -w / 2.0, bg + w / 2.0, 0.0],
        [0.0, 0.0, 0.0, bg],
    ])
}

/// `q |psi_eps><psi_eps| + (1 - q) rho_eta (x) |0><0|` with
/// `psi_eps = sqrt(1-eps)|00> + sqrt(eps)|11>` and `rho_eta = diag(1-eta, eta)`.
fn asym_pure(q: f64, eta: f64, eps: f64) -> Result<TwoQubitState> {
    let r = (eps * (1.0 - eps)).sqrt();
    real_state([
        [q * (1.0 - eps) + (1.0 - q) * (1.0 - eta), 0.0, 0.0, q * r],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, (1.0 - q) * eta, 0.0],
        [q * r, 0.0, 0.0, q * eps],
    ])
}

fn one_pure_a(x: f64, y: f64, z: f64) -> Result<TwoQubitState> {
    let bx = (x * (1.0 - x)).sqrt();
    let by = (2.0 * y / 3.0).sqrt();
    let bz = (z * (1.0 - z)).sqrt();
    let k = x + y - 2.0 * x * y;
    real_state([
        [
            k * (1.0 - z),
            bx * (1.0 - 2.0 * y) * (1.0 - z),
            bx * by * bz,
            (1.0 - x) * by * bz,
        ],
        [
            bx * (1.0 - 2.0 * y) * (1.0 - z),
            (1.0 - k) * (1.0 - z),
            -x * by * bz,
            -bx * by * bz,
        ],
        [bx * by * bz, -x * by * bz, x * z, bx * z],
        [(1.0 - x) * by * bz, -bx * by * bz, bx * z, (1.0 - x) * z],
    ])
}

fn one_pure_b(x: f64, y: f64, z: f64) -> Result<TwoQubitState> {
    let bx = (x * (1.0 - x)).sqrt();
    let by = (y * (1.0 - y)).sqrt();
    let zp = (z.sqrt() + (2.0 - 2.0 * z).sqrt()) / 2.0;
    let zm = (z.sqrt() - (2.0 - 2.0 * z).sqrt()) / 2.0;
    real_state([
        [x * y, -bx * y * zp, 0.0, x.sqrt() * by * zm],
        [-bx * y * zp, y - x * y, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [x.sqrt() * by * zm, 0.0, 0.0, 1.0 - y],
    ])
}

fn one_pure_c(x: f64, y: f64, z: f64) -> Result<TwoQubitState> {
    let bx = (x * (1.0 - x)).sqrt();
    let bz = (z * (1.0 - z)).sqrt();
    let sy = y.sqrt();
    let m = [
        [
            (1.0 - z) * (1.0 + x - 2.0 * bx * sy),
            (1.0 - z) * ((2.0 * x - 1.0) * sy + bx),
            (2.0 * x - 1.0) * bz,
            bz * (2.0 * bx - sy),
        ],
        [
            (1.0 - z) * ((2.0 * x - 1.0) * sy + bx),
            (z - 1.0) * (x - 2.0 - 2.0 * bx * sy),
            bz * (2.0 * bx + sy),
            (1.0 - 2.0 * x) * bz,
        ],
        [
            (2.0 * x - 1.0) * bz,
            bz * (2.0 * bx + sy),
            z * (2.0 * bx * sy + x + 1.0),
            z * ((1.0 - 2.0 * x) * sy + bx),
        ],
        [
            bz * (2.0 * bx - sy),
            (1.0 - 2.0 * x) * bz,
            z * ((1.0 - 2.0 * x) * sy + bx),
            z * (2.0 - x - 2.0 * bx * sy),
        ],
    ];
    real_state(m.map(|row| row.map(|e| e / 3.0)))
}

fn two_pure_a(x: f64, y: f64) -> Result<TwoQubitState> {
    let bx = (x * (1.0 - x)).sqrt();
    let by = (y * (1.0 - y)).sqrt();
    let s2 = std::f64::consts::SQRT_2;
    real_state([
        [
            0.5 * (s2 * bx - 1.0) * (y - 1.0),
            (2.0 * x - 1.0) * (1.0 - y) / (2.0 * s2),
            0.5 * bx * by,
            0.5 * (1.0 - x) * by,
        ],
        [
            (2.0 * x - 1.0) * (1.0 - y) / (2.0 * s2),
            0.5 * (s2 * bx + 1.0) * (1.0 - y),
            -0.5 * x * by,
            -0.5 * bx * by,
        ],
        [0.5 * bx * by, -0.5 * x * by, x * y, bx * y],
        [0.5 * (1.0 - x) * by, -0.5 * bx * by, bx * y, (1.0 - x) * y],
    ])
}

fn two_pure_b(x: f64, y: f64) -> Result<TwoQubitState> {
    let bx = (x * (1.0 - x)).sqrt();
    let by = (y * (1.0 - y)).sqrt() / 6.0;
    let k = (1.0 - y) / 6.0;
    let r6 = 6.0_f64.sqrt();
    real_state([
        [
            2.0 * k * (1.0 + x - r6 * bx),
            k * (2.0 * r6 * x + 2.0 * bx - r6),
            (2.0 - 4.0 * x - r6 * bx) * by,
            (r6 * x - 4.0 * bx) * by,
        ],
        [
            k * (2.0 * r6 * x + 2.0 * bx - r6),
            2.0 * k * (2.0 - x + r6 * bx),
            (r6 * x - 4.0 * bx - r6) * by,
            (4.0 * x + r6 * bx - 2.0) * by,
        ],
        [
            (2.0 - 4.0 * x - r6 * bx) * by,
            (r6 * x - 4.0 * bx - r6) * by,
            (1.0 + x) * y / 3.0,
            bx * y / 3.0,
        ],
        [
            (r6 * x - 4.0 * bx) * by,
            (4.0 * x + r6 * bx - 2.0) * by,
            bx * y / 3.0,
            (2.0 - x) * y / 3.0,
        ],
    ])
}

pub fn generate(spec: &FamilySpec) -> Result<TwoQubitState> {
    let p = &spec.params;
    match spec.name {
        FamilyName::SingletPlusProduct => {
            singlet_plus_product(mixing_weight("q", param(p, "q")?)?)
        }
        FamilyName::Werner => werner(mixing_weight("w", param(p, "w")?)?),
        FamilyName::XState => x_state(
            correlation("a_z", param(p, "a_z")?)?,
            correlation("b_z", param(p, "b_z")?)?,
            correlation("t_x", param(p, "t_x")?)?,
            correlation("t_y", param(p, "t_y")?)?,
            correlation("t_z", param(p, "t_z")?)?,
        ),
        FamilyName::TangentXState => tangent_x_state(
            param(p, "a_z")?,
            param(p, "b_z")?,
            param(p, "t_x")?,
            param(p, "t_y")?,
        ),
        FamilyName::AsymPure => asym_pure(
            open_unit("q", param(p, "q")?)?,
            open_unit("eta", param(p, "eta")?)?,
            open_unit("epsilon", param(p, "epsilon")?)?,
        ),
        FamilyName::OnePureA => one_pure_a(
            open_unit("x", param(p, "x")?)?,
            open_unit("y", param(p, "y")?)?,
            open_unit("z", param(p, "z")?)?,
        ),
        FamilyName::OnePureB => one_pure_b(
            open_unit("x", param(p, "x")?)?,
            open_unit("y", param(p, "y")?)?,
            open_unit("z", param(p, "z")?)?,
        ),
        FamilyName::OnePureC => one_pure_c(
            open_unit("x", param(p, "x")?)?,
            open_unit("y", param(p, "y")?)?,
            open_unit("z", param(p, "z")?)?,
        ),
        FamilyName::TwoPureA => two_pure_a(
            open_unit("x", param(p, "x")?)?,
            open_unit("y", param(p, "y")?)?,
        ),
        FamilyName::TwoPureB => two_pure_b(
            open_unit("x", param(p, "x")?)?,
            open_unit("y", param(p, "y")?)?,
        ),
    }
}

/// Comparison of a state's computed steering data against the expectations
/// recorded in its spec. Never fails; problems land in `mismatched`.
#[derive(Debug, Clone, Default)]
pub struct ExpectationReport {
    pub matched: Vec<String>,
    pub mismatched: Vec<String>,
}

impl ExpectationReport {
    pub fn all_matched(&self) -> bool {
        self.mismatched.is_empty()
    }
}

const SEMIAXIS_TOL: f64 = 1e-9;
const POINT_TOL: f64 = 1e-7;

fn check_party(
    state: &TwoQubitState,
    party: Party,
    exp: &PartyExpectation,
    count_class: Option<CountClass>,
    out: &mut ExpectationReport,
) {
    let d = state.pauli();
    if let Some(expected_axes) = exp.semiaxes {
        match compute_ellipsoid(&d, party) {
            Ok(e) => {
                let err = (0..3)
                    .map(|i| (e.semiaxes[i] - expected_axes[i]).abs())
                    .fold(0.0, f64::max);
                if err <= SEMIAXIS_TOL {
                    out.matched.push(format!("{party} semiaxes"));
                } else {
                    out.mismatched.push(format!(
                        "{party} semiaxes off by {err:.3e}: got {:?}, expected {expected_axes:?}",
                        e.semiaxes
                    ));
                }
            }
            Err(e) => out
                .mismatched
                .push(format!("{party} ellipsoid failed: {e}")),
        }
    }
    if exp.tangency_points.is_empty() && count_class.is_none() {
        return;
    }
    let report = match find_tangency(&d, party, &ToleranceConfig::default()) {
        Ok(r) => r,
        Err(e) => {
            out.mismatched.push(format!("{party} tangency failed: {e}"));
            return;
        }
    };
    if let Some(cc) = count_class {
        if report.count_class == cc {
            out.matched.push(format!("{party} count class"));
        } else {
            out.mismatched.push(format!(
                "{party} count class {:?}, expected {cc:?}",
                report.count_class
            ));
        }
    }
    if exp.tangency_points.is_empty() {
        return;
    }
    if report.points.len() != exp.tangency_points.len() {
        out.mismatched.push(format!(
            "{party} has {} tangency points, expected {}",
            report.points.len(),
            exp.tangency_points.len()
        ));
        return;
    }
    let mut used = vec![false; report.points.len()];
    for want in &exp.tangency_points {
        let hit = report.points.iter().enumerate().find(|(i, p)| {
            !used[*i] && (p.bloch_point - want).norm() <= POINT_TOL
        });
        match hit {
            Some((i, _)) => {
                used[i] = true;
                out.matched.push(format!(
                    "{party} tangency at ({:.4}, {:.4}, {:.4})",
                    want.x, want.y, want.z
                ));
            }
            None => out.mismatched.push(format!(
                "{party} missing tangency at ({:.6}, {:.6}, {:.6})",
                want.x, want.y, want.z
            )),
        }
    }
}

pub fn expected_check(state: &TwoQubitState, spec: &FamilySpec) -> ExpectationReport {
    let mut out = ExpectationReport::default();
    let Some(exp) = &spec.expected else {
        return out;
    };
    check_party(state, Party::Alice, &exp.alice, exp.count_class, &mut out);
    check_party(state, Party::Bob, &exp.bob, exp.count_class, &mut out);
    out
}

/// One canonical, fully documented instance per family. Expected values hold
/// to the tolerances used by [`expected_check`].
pub fn documented_instances() -> Vec<FamilySpec> {
    let s2 = std::f64::consts::SQRT_2;
    let s3 = 3.0_f64.sqrt();
    let mut v = Vec::new();

    let mut f = FamilySpec::new(FamilyName::SingletPlusProduct, &[("q", 0.5)]);
    f.expected = Some(Expected {
        count_class: Some(CountClass::One),
        alice: PartyExpectation {
            semiaxes: Some([0.5, 0.5, 0.5]),
            tangency_points: vec![Vector3::new(0.0, 0.0, 1.0)],
        },
        bob: PartyExpectation {
            semiaxes: Some([2.0 / 3.0, 1.0 / s3, 1.0 / s3]),
            tangency_points: vec![Vector3::new(0.0, 0.0, 1.0)],
        },
    });
    v.push(f);

    let mut f = FamilySpec::new(FamilyName::Werner, &[("w", 0.5)]);
    f.expected = Some(Expected {
        count_class: Some(CountClass::Zero),
        alice: PartyExpectation {
            semiaxes: Some([0.5, 0.5, 0.5]),
            tangency_points: vec![],
        },
        bob: PartyExpectation {
            semiaxes: Some([0.5, 0.5, 0.5]),
            tangency_points: vec![],
        },
    });
    v.push(f);

    // Symmetric tangent X-state: one measurement pins both poles.
    let mut f = FamilySpec::new(
        FamilyName::XState,
        &[
            ("a_z", 1.0 / 3.0),
            ("b_z", 1.0 / 3.0),
            ("t_x", 0.25),
            ("t_y", -0.25),
            ("t_z", 1.0),
        ],
    );
    let xaxes = [1.0, 3.0 / (8.0 * s2), 3.0 / (8.0 * s2)];
    let poles = vec![Vector3::new(0.0, 0.0, 1.0), Vector3::new(0.0, 0.0, -1.0)];
    f.expected = Some(Expected {
        count_class: Some(CountClass::Two),
        alice: PartyExpectation {
            semiaxes: Some(xaxes),
            tangency_points: poles.clone(),
        },
        bob: PartyExpectation {
            semiaxes: Some(xaxes),
            tangency_points: poles,
        },
    });
    v.push(f);

    let mut f = FamilySpec::new(
        FamilyName::TangentXState,
        &[("a_z", 0.1), ("b_z", 0.3), ("t_x", 0.2), ("t_y", -0.2)],
    );
    f.expected = Some(Expected {
        count_class: Some(CountClass::One),
        alice: PartyExpectation {
            semiaxes: Some([11.0 / 13.0, 0.2 / 0.91_f64.sqrt(), 0.2 / 0.91_f64.sqrt()]),
            tangency_points: vec![Vector3::new(0.0, 0.0, -1.0)],
        },
        bob: PartyExpectation {
            semiaxes: Some([7.0 / 9.0, 0.2 / 0.99_f64.sqrt(), 0.2 / 0.99_f64.sqrt()]),
            tangency_points: vec![Vector3::new(0.0, 0.0, 1.0)],
        },
    });
    v.push(f);

    let mut f = FamilySpec::new(
        FamilyName::AsymPure,
        &[("q", 1.0 / 3.0), ("eta", 0.25), ("epsilon", 0.2)],
    );
    f.expected = Some(Expected {
        count_class: Some(CountClass::One),
        alice: PartyExpectation {
            semiaxes: Some([23.0 / 28.0, (2.0_f64 / 7.0).sqrt(), (2.0_f64 / 7.0).sqrt()]),
            tangency_points: vec![Vector3::new(0.0, 0.0, -1.0)],
        },
        bob: PartyExpectation {
            semiaxes: Some([4.0 / 161.0_f64.sqrt(), 4.0 / 161.0_f64.sqrt(), 2.0 / 7.0]),
            tangency_points: vec![Vector3::new(0.0, 0.0, 1.0)],
        },
    });
    v.push(f);

    let mut f = FamilySpec::new(FamilyName::OnePureA, &[("x", 0.75), ("y", 0.5), ("z", 0.5)]);
    f.expected = Some(Expected {
        count_class: Some(CountClass::One),
        alice: PartyExpectation {
            semiaxes: Some([2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0]),
            tangency_points: vec![Vector3::new(0.0, 0.0, 1.0)],
        },
        bob: PartyExpectation {
            semiaxes: Some([1.0 / s3, 1.0 / s3, 0.5]),
            tangency_points: vec![Vector3::new(s3 / 2.0, 0.0, 0.5)],
        },
    });
    v.push(f);

    let mut f = FamilySpec::new(
        FamilyName::OnePureB,
        &[("x", 0.5), ("y", 0.5), ("z", 1.0 / 3.0)],
    );
    f.expected = Some(Expected {
        count_class: Some(CountClass::One),
        alice: PartyExpectation {
            semiaxes: None,
            tangency_points: vec![Vector3::new(0.0, 0.0, 1.0)],
        },
        bob: PartyExpectation {
            semiaxes: None,
            tangency_points: vec![Vector3::new(0.0, 0.0, -1.0)],
        },
    });
    v.push(f);

    let mut f = FamilySpec::new(
        FamilyName::OnePureC,
        &[("x", 0.25), ("y", 1.0 / 3.0), ("z", 1.0 / 3.0)],
    );
    f.expected = Some(Expected {
        count_class: Some(CountClass::One),
        alice: PartyExpectation {
            semiaxes: None,
            tangency_points: vec![Vector3::new(-2.0 * s2 / 3.0, 0.0, 1.0 / 3.0)],
        },
        bob: PartyExpectation {
            semiaxes: None,
            tangency_points: vec![Vector3::new(s3 / 2.0, 0.0, -0.5)],
        },
    });
    v.push(f);

    let mut f = FamilySpec::new(FamilyName::TwoPureA, &[("x", 0.5), ("y", 1.0 / 3.0)]);
    f.expected = Some(Expected {
        count_class: Some(CountClass::Two),
        alice: PartyExpectation {
            semiaxes: None,
            tangency_points: vec![
                Vector3::new(0.0, 0.0, 1.0),
                Vector3::new(1.0, 0.0, 0.0),
            ],
        },
        bob: PartyExpectation {
            semiaxes: None,
            tangency_points: vec![
                Vector3::new(1.0, 0.0, 0.0),
                Vector3::new(1.0 / 3.0, 0.0, -2.0 * s2 / 3.0),
            ],
        },
    });
    v.push(f);

    let mut f = FamilySpec::new(FamilyName::TwoPureB, &[("x", 2.0 / 3.0), ("y", 0.25)]);
    let s6 = 6.0_f64.sqrt();
    f.expected = Some(Expected {
        count_class: Some(CountClass::Two),
        alice: PartyExpectation {
            semiaxes: None,
            tangency_points: vec![
                Vector3::new(s3 / 2.0, 0.0, 0.5),
                Vector3::new(-4.0 * s3 / 7.0, 0.0, -1.0 / 7.0),
            ],
        },
        bob: PartyExpectation {
            semiaxes: None,
            tangency_points: vec![
                Vector3::new(2.0 * s2 / 3.0, 0.0, 1.0 / 3.0),
                Vector3::new(2.0 * (s6 - s2) / 15.0, 0.0, -(1.0 + 8.0 * s3) / 15.0),
            ],
        },
    });
    v.push(f);

    v
}
