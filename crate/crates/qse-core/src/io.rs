//! State files, machine-readable reports, and mesh export.
//!
//! All floats serialize with 17 significant digits, enough to reproduce any
//! f64 bit pattern on re-read, so golden files diff cleanly and a report can
//! be re-verified from its own embedded state.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use nalgebra::{Matrix3, Matrix4, Vector3};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::criteria::{classify_steering, ShortcutOutcome, SteeringClassification, Verdict, VerdictBasis};
use crate::ellipsoid::{compute_ellipsoid, ellipsoid_volume, Degeneracy, SteeringEllipsoid};
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::states::{Party, PauliDecomposition, TwoQubitState};
use crate::tangency::{CountClass, TangencyReport, ToleranceConfig};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ComplexEntry {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PauliBlock {
    pub a: [f64; 3],
    pub b: [f64; 3],
    #[serde(rename = "T")]
    pub t: [[f64; 3]; 3],
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
}

/// On-disk state: a density matrix or its Pauli decomposition, exactly one
/// of the two, plus optional provenance.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<[[ComplexEntry; 4]; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pauli: Option<PauliBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl StateFile {
    pub fn from_matrix(state: &TwoQubitState, meta: Option<Meta>) -> Self {
        let m = state.matrix();
        let mut grid: [[ComplexEntry; 4]; 4] = std::array::from_fn(|_| {
            std::array::from_fn(|_| ComplexEntry { re: 0.0, im: 0.0 })
        });
        for r in 0..4 {
            for c in 0..4 {
                grid[r][c] = ComplexEntry {
                    re: m[(r, c)].re,
                    im: m[(r, c)].im,
                };
            }
        }
        StateFile {
            matrix: Some(grid),
            pauli: None,
            meta,
        }
    }

    pub fn from_pauli(d: &PauliDecomposition, meta: Option<Meta>) -> Self {
        let mut t = [[0.0; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                t[r][c] = d.t[(r, c)];
            }
        }
        StateFile {
            matrix: None,
            pauli: Some(PauliBlock {
                a: [d.a.x, d.a.y, d.a.z],
                b: [d.b.x, d.b.y, d.b.z],
                t,
            }),
            meta,
        }
    }

    /// Parse and validate. The result is always rebuilt from its Pauli
    /// decomposition, so matrix and Pauli files describing one state yield
    /// bitwise-identical downstream numbers.
    pub fn to_state(&self) -> Result<TwoQubitState> {
        let d = match (&self.matrix, &self.pauli) {
            (Some(_), Some(_)) => {
                return Err(Error::Parse(
                    "state file holds both matrix and pauli; exactly one is allowed".into(),
                ))
            }
            (None, None) => {
                return Err(Error::Parse(
                    "state file holds neither matrix nor pauli".into(),
                ))
            }
            (Some(grid), None) => {
                let m = Matrix4::from_fn(|r, c| C64::new(grid[r][c].re, grid[r][c].im));
                TwoQubitState::new(m)?.pauli()
            }
            (None, Some(p)) => PauliDecomposition {
                a: Vector3::new(p.a[0], p.a[1], p.a[2]),
                b: Vector3::new(p.b[0], p.b[1], p.b[2]),
                t: Matrix3::from_fn(|r, c| p.t[r][c]),
            },
        };
        TwoQubitState::from_pauli(&d)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Tolerances {
    pub tangency_tol: f64,
    pub purity_tol: f64,
    pub cluster_angle: f64,
}

impl From<&ToleranceConfig> for Tolerances {
    fn from(cfg: &ToleranceConfig) -> Self {
        Tolerances {
            tangency_tol: cfg.tangency_tol,
            purity_tol: cfg.purity_tol,
            cluster_angle: cfg.cluster_angle,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct EllipsoidReport {
    pub center: [f64; 3],
    /// Descending.
    pub semiaxes: [f64; 3],
    /// Rows of the rotation whose columns are the principal axes.
    pub orientation: [[f64; 3]; 3],
    pub gamma_sq: f64,
    pub degeneracy: String,
    pub volume: f64,
}

impl From<&SteeringEllipsoid> for EllipsoidReport {
    fn from(e: &SteeringEllipsoid) -> Self {
        let mut orientation = [[0.0; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                orientation[r][c] = e.orientation[(r, c)];
            }
        }
        EllipsoidReport {
            center: [e.center.x, e.center.y, e.center.z],
            semiaxes: e.semiaxes,
            orientation,
            gamma_sq: e.gamma_sq,
            degeneracy: degeneracy_str(e.degeneracy).into(),
            volume: ellipsoid_volume(e),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PointReport {
    pub bloch_point: [f64; 3],
    pub direction: [f64; 3],
    pub outcome_sign: i8,
    pub probability: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TangencySection {
    pub count_class: String,
    pub max_g: f64,
    pub purity: f64,
    pub points: Vec<PointReport>,
}

impl From<&TangencyReport> for TangencySection {
    fn from(rep: &TangencyReport) -> Self {
        TangencySection {
            count_class: count_class_str(rep.count_class).into(),
            max_g: rep.max_g,
            purity: rep.purity,
            points: rep
                .points
                .iter()
                .map(|p| PointReport {
                    bloch_point: [p.bloch_point.x, p.bloch_point.y, p.bloch_point.z],
                    direction: [p.direction.x, p.direction.y, p.direction.z],
                    outcome_sign: p.outcome_sign,
                    probability: p.probability,
                    residual: p.residual,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PartySection {
    /// Missing when the opposite marginal is pure (no ellipsoid exists).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ellipsoid: Option<EllipsoidReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tangency: Option<TangencySection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ReportFile {
    pub version: String,
    pub tolerances: Tolerances,
    /// Canonical Pauli form of the analyzed state; re-running the
    /// classification on it reproduces this report.
    pub state: StateFile,
    pub entangled: bool,
    pub negativity: f64,
    pub chsh_value: f64,
    pub chsh_violated: bool,
    pub verdict: String,
    pub verdict_basis: String,
    pub volume_alice: f64,
    pub volume_bob: f64,
    pub alice: PartySection,
    pub bob: PartySection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shortcut: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::TwoWaySteerable => "TwoWaySteerable",
        Verdict::NotEntangled => "NotEntangled",
        Verdict::InconclusiveByTangency => "InconclusiveByTangency",
    }
}

pub fn verdict_basis_str(b: VerdictBasis) -> &'static str {
    match b {
        VerdictBasis::OnePureSteeredState => "OnePureSteeredState",
        VerdictBasis::TwoPureSteeredStates => "TwoPureSteeredStates",
        VerdictBasis::PureEntangled => "PureEntangled",
        VerdictBasis::None => "None",
    }
}

pub fn count_class_str(c: CountClass) -> &'static str {
    match c {
        CountClass::Zero => "Zero",
        CountClass::One => "One",
        CountClass::Two => "Two",
        CountClass::Infinite => "Infinite",
    }
}

fn degeneracy_str(d: Degeneracy) -> &'static str {
    match d {
        Degeneracy::Full => "Full",
        Degeneracy::Pancake => "Pancake",
        Degeneracy::Needle => "Needle",
        Degeneracy::Point => "Point",
    }
}

fn party_section(
    d: &PauliDecomposition,
    party: Party,
    tangency: &Option<TangencyReport>,
) -> PartySection {
    PartySection {
        ellipsoid: compute_ellipsoid(d, party)
            .ok()
            .as_ref()
            .map(EllipsoidReport::from),
        tangency: tangency.as_ref().map(TangencySection::from),
    }
}

/// Classify and package everything a consumer needs to re-verify.
pub fn build_report(state: &TwoQubitState, cfg: &ToleranceConfig) -> Result<ReportFile> {
    let cls = classify_steering(state, cfg)?;
    Ok(report_from_classification(state, cfg, &cls))
}

pub fn report_from_classification(
    state: &TwoQubitState,
    cfg: &ToleranceConfig,
    cls: &SteeringClassification,
) -> ReportFile {
    let d = state.pauli();
    ReportFile {
        version: env!("CARGO_PKG_VERSION").to_string(),
        tolerances: Tolerances::from(cfg),
        state: StateFile::from_pauli(&d, None),
        entangled: cls.entangled,
        negativity: cls.negativity,
        chsh_value: cls.chsh_value,
        chsh_violated: cls.chsh_violated,
        verdict: verdict_str(cls.verdict).into(),
        verdict_basis: verdict_basis_str(cls.verdict_basis).into(),
        volume_alice: cls.volumes.0,
        volume_bob: cls.volumes.1,
        alice: party_section(&d, Party::Alice, &cls.tangency_alice),
        bob: party_section(&d, Party::Bob, &cls.tangency_bob),
        shortcut: cls.shortcut.map(|s| {
            match s {
                ShortcutOutcome::SteerableBySum => "SteerableBySum",
                ShortcutOutcome::SumInconclusive => "SumInconclusive",
            }
            .into()
        }),
        notes: cls.notes.clone(),
    }
}

/// Pretty printer whose floats carry 17 significant digits.
struct SciFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl<'a> SciFormatter<'a> {
    fn new() -> Self {
        SciFormatter {
            inner: PrettyFormatter::new(),
        }
    }
}

impl<'a> Formatter for SciFormatter<'a> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> std::io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> std::io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// Serialize with 17-significant-digit floats and a trailing newline.
/// Output bytes are a pure function of the value.
pub fn to_json(value: &impl Serialize) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter::new());
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Parse(e.to_string()))?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serializer emits UTF-8"))
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_state_file(path: &Path) -> Result<StateFile> {
    from_json(&std::fs::read_to_string(path)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Csv,
    Tri,
}

impl FromStr for MeshFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(MeshFormat::Csv),
            "tri" => Ok(MeshFormat::Tri),
            other => Err(Error::Parse(format!("unknown mesh format {other:?}"))),
        }
    }
}

fn grid_point(i: usize, j: usize, samples: usize) -> Vector3<f64> {
    let theta = std::f64::consts::PI * i as f64 / (samples - 1) as f64;
    let phi = std::f64::consts::TAU * j as f64 / samples as f64;
    Vector3::new(
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    )
}

/// Sphere-plus-ellipsoid surface sample, `samples`x`samples` per surface.
///
/// The ellipsoid is mapped from the unit sphere by the symmetric square
/// root of Q, so sphere poles land on principal-axis endpoints and a polar
/// tangency shows up as an emitted point of norm 1.
pub fn mesh_text(e: &SteeringEllipsoid, samples: usize, format: MeshFormat) -> Result<String> {
    if e.degeneracy != Degeneracy::Full {
        return Err(Error::DegenerateEllipse {
            what: format!("mesh needs a full-rank ellipsoid, got {:?}", e.degeneracy),
        });
    }
    if samples < 2 {
        return Err(Error::OutOfRange {
            name: "samples",
            value: samples as f64,
        });
    }
    let a = e.orientation
        * Matrix3::from_diagonal(&Vector3::new(e.semiaxes[0], e.semiaxes[1], e.semiaxes[2]))
        * e.orientation.transpose();

    let mut text = String::new();
    match format {
        MeshFormat::Csv => {
            text.push_str("x,y,z,surface\n");
            for (tag, map) in [("sphere", false), ("ellipsoid", true)] {
                for i in 0..samples {
                    for j in 0..samples {
                        let n = grid_point(i, j, samples);
                        let p = if map { e.center + a * n } else { n };
                        writeln!(text, "{:.16e},{:.16e},{:.16e},{tag}", p.x, p.y, p.z).unwrap();
                    }
                }
            }
        }
        MeshFormat::Tri => {
            for (tag, map) in [("sphere", false), ("ellipsoid", true)] {
                for i in 0..samples {
                    for j in 0..samples {
                        let n = grid_point(i, j, samples);
                        let p = if map { e.center + a * n } else { n };
                        writeln!(text, "v {:.16e} {:.16e} {:.16e} {tag}", p.x, p.y, p.z)
                            .unwrap();
                    }
                }
            }
            // faces: strip quads between theta rows, wrapping in phi
            for surface in 0..2usize {
                let base = surface * samples * samples;
                for i in 0..samples - 1 {
                    for j in 0..samples {
                        let jn = (j + 1) % samples;
                        let v00 = base + i * samples + j + 1;
                        let v01 = base + i * samples + jn + 1;
                        let v10 = base + (i + 1) * samples + j + 1;
                        let v11 = base + (i + 1) * samples + jn + 1;
                        writeln!(text, "f {v00} {v10} {v11}").unwrap();
                        writeln!(text, "f {v00} {v11} {v01}").unwrap();
                    }
                }
            }
        }
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, FamilyName, FamilySpec};
    use crate::sampling::{env_seed, seeded_rng};

    fn singlet_product_state(q: f64) -> TwoQubitState {
        families::generate(&FamilySpec::new(FamilyName::SingletPlusProduct, &[("q", q)]))
            .unwrap()
    }

    #[test]
    fn seventeen_digit_floats_round_trip_bitwise() {
        let mut rng = seeded_rng(env_seed(51));
        for _ in 0..50 {
            let state = crate::sampling::random_state(&mut rng);
            let sf = StateFile::from_pauli(&state.pauli(), None);
            let text = to_json(&sf).unwrap();
            let back: StateFile = from_json(&text).unwrap();
            assert_eq!(sf, back);
            let mf = StateFile::from_matrix(&state, None);
            let text = to_json(&mf).unwrap();
            let back: StateFile = from_json(&text).unwrap();
            assert_eq!(mf, back);
        }
        let text = to_json(&vec![1.0 / 3.0]).unwrap();
        assert!(text.contains("3.3333333333333331e-1"), "{text}");
    }

    #[test]
    fn matrix_and_pauli_forms_give_identical_reports() {
        let cfg = ToleranceConfig::default();
        let mut rng = seeded_rng(env_seed(52));
        let mut states = vec![singlet_product_state(0.5), singlet_product_state(0.37)];
        for _ in 0..10 {
            states.push(crate::sampling::random_state(&mut rng));
        }
        for state in &states {
            let from_matrix = to_json(&StateFile::from_matrix(state, None)).unwrap();
            let from_pauli = to_json(&StateFile::from_pauli(&state.pauli(), None)).unwrap();
            let s1 = from_json::<StateFile>(&from_matrix).unwrap().to_state().unwrap();
            let s2 = from_json::<StateFile>(&from_pauli).unwrap().to_state().unwrap();
            let r1 = to_json(&build_report(&s1, &cfg).unwrap()).unwrap();
            let r2 = to_json(&build_report(&s2, &cfg).unwrap()).unwrap();
            assert_eq!(r1, r2);
        }
    }

    #[test]
    fn state_file_needs_exactly_one_form() {
        let state = singlet_product_state(0.5);
        let mut both = StateFile::from_matrix(&state, None);
        both.pauli = StateFile::from_pauli(&state.pauli(), None).pauli;
        assert!(matches!(both.to_state(), Err(Error::Parse(_))));
        let neither = StateFile {
            matrix: None,
            pauli: None,
            meta: None,
        };
        assert!(matches!(neither.to_state(), Err(Error::Parse(_))));
    }

    #[test]
    fn report_embeds_a_state_that_reproduces_the_verdict() {
        let cfg = ToleranceConfig::default();
        for q in [0.3, 0.5, 0.9] {
            let state = singlet_product_state(q);
            let report = build_report(&state, &cfg).unwrap();
            let text = to_json(&report).unwrap();
            let back: ReportFile = from_json(&text).unwrap();
            let re_state = back.state.to_state().unwrap();
            let re_report = build_report(&re_state, &cfg).unwrap();
            assert_eq!(report.verdict, re_report.verdict);
            assert_eq!(report.verdict_basis, re_report.verdict_basis);
            assert_eq!(report.entangled, re_report.entangled);
            assert_eq!(
                report.bob.tangency.as_ref().map(|t| t.count_class.clone()),
                re_report.bob.tangency.as_ref().map(|t| t.count_class.clone())
            );
            // the serialized report itself is stable bytes
            assert_eq!(to_json(&back).unwrap(), text);
        }
    }

    #[test]
    fn report_content_for_half_singlet_mixture() {
        let report = build_report(&singlet_product_state(0.5), &ToleranceConfig::default()).unwrap();
        assert!(report.entangled);
        assert_eq!(report.verdict, "TwoWaySteerable");
        assert_eq!(report.verdict_basis, "OnePureSteeredState");
        assert!(!report.chsh_violated);
        let bob = report.bob.tangency.unwrap();
        assert_eq!(bob.count_class, "One");
        let p = &bob.points[0];
        assert!((p.bloch_point[2] - 1.0).abs() < 1e-7);
        assert_eq!(report.version, env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn mesh_csv_shows_the_tangency() {
        let state = singlet_product_state(0.5);
        let e = compute_ellipsoid(&state.pauli(), Party::Bob).unwrap();
        let text = mesh_text(&e, 64, MeshFormat::Csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + 2 * 64 * 64);
        assert_eq!(lines[0], "x,y,z,surface");
        let mut max_ell = 0.0f64;
        for line in &lines[1..] {
            let mut parts = line.split(',');
            let x: f64 = parts.next().unwrap().parse().unwrap();
            let y: f64 = parts.next().unwrap().parse().unwrap();
            let z: f64 = parts.next().unwrap().parse().unwrap();
            let tag = parts.next().unwrap();
            let norm = (x * x + y * y + z * z).sqrt();
            match tag {
                "sphere" => assert!((norm - 1.0).abs() < 1e-12),
                "ellipsoid" => max_ell = max_ell.max(norm),
                other => panic!("unknown tag {other}"),
            }
        }
        assert!((max_ell - 1.0).abs() < 1e-7, "max |point| = {max_ell}");
    }

    #[test]
    fn mesh_tri_minimal_and_indices_in_range() {
        let state = singlet_product_state(0.5);
        let e = compute_ellipsoid(&state.pauli(), Party::Bob).unwrap();
        let text = mesh_text(&e, 2, MeshFormat::Tri).unwrap();
        let verts: Vec<&str> = text.lines().filter(|l| l.starts_with("v ")).collect();
        let faces: Vec<&str> = text.lines().filter(|l| l.starts_with("f ")).collect();
        assert_eq!(verts.len(), 2 * 2 * 2);
        assert_eq!(faces.len(), 2 * (2 - 1) * 2 * 2);
        // vertex lines come before face lines
        let first_face = text.lines().position(|l| l.starts_with("f ")).unwrap();
        assert!(text
            .lines()
            .take(first_face)
            .all(|l| l.starts_with("v ")));
        for f in faces {
            for idx in f.split_whitespace().skip(1) {
                let i: usize = idx.parse().unwrap();
                assert!(i >= 1 && i <= verts.len());
            }
        }
    }

    #[test]
    fn mesh_rejects_degenerate_and_tiny_grids() {
        let state = singlet_product_state(0.5);
        let e = compute_ellipsoid(&state.pauli(), Party::Bob).unwrap();
        assert!(matches!(
            mesh_text(&e, 1, MeshFormat::Csv),
            Err(Error::OutOfRange { name: "samples", .. })
        ));
        // maximally mixed: point ellipsoid
        let mixed = TwoQubitState::new(Matrix4::from_diagonal_element(C64::new(0.25, 0.0)))
            .unwrap();
        let point = compute_ellipsoid(&mixed.pauli(), Party::Bob).unwrap();
        assert!(matches!(
            mesh_text(&point, 16, MeshFormat::Csv),
            Err(Error::DegenerateEllipse { .. })
        ));
    }

    #[test]
    fn truncated_json_is_a_parse_error() {
        let state = singlet_product_state(0.5);
        let text = to_json(&StateFile::from_matrix(&state, None)).unwrap();
        let cut = &text[..text.len() / 2];
        assert!(matches!(from_json::<StateFile>(cut), Err(Error::Parse(_))));
        assert!(matches!(
            from_json::<StateFile>("{\"matrix\": 3}"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn meta_round_trips_with_sorted_params() {
        let mut params = BTreeMap::new();
        params.insert("q".to_string(), 0.5);
        let meta = Meta {
            family: Some("singlet-plus-product".into()),
            params,
        };
        let sf = StateFile::from_matrix(&singlet_product_state(0.5), Some(meta.clone()));
        let text = to_json(&sf).unwrap();
        let back: StateFile = from_json(&text).unwrap();
        assert_eq!(back.meta, Some(meta));
        // identical bytes on re-serialization
        assert_eq!(to_json(&back).unwrap(), text);
    }
}
