//! Steering-ellipsoid analyzer for two-qubit states.
//!
//! Exit codes: 0 success, 2 invalid input (file, state, or parameters),
//! 3 numeric failure inside the solver, with the failing step named on
//! stderr. Output bytes depend only on inputs and flags.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::Vector3;

use qse_core::ellipsoid::compute_ellipsoid;
use qse_core::error::Error;
use qse_core::families::{self, FamilyName, FamilySpec};
use qse_core::io::{
    build_report, mesh_text, read_state_file, to_json, Meta, MeshFormat, ReportFile, StateFile,
};
use qse_core::states::Party;
use qse_core::tangency::{build_quadratic, scan_pure_directions, trs_maximize, ToleranceConfig};

#[derive(Parser)]
#[command(
    name = "qse",
    version,
    about = "Quantum steering ellipsoids, tangency points, and steering certification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PartyArg {
    Alice,
    Bob,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a state file: entanglement, ellipsoids, tangency, CHSH.
    Analyze {
        path: PathBuf,
        /// Party sections to include in human-readable output.
        #[arg(long, value_enum, default_value = "both")]
        party: PartyArg,
        /// Emit the machine-readable report instead of text.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Slack on g = 0 at a tangency point.
        #[arg(long = "tol-tangency")]
        tol_tangency: Option<f64>,
    },
    /// Shorthand for analyze --json.
    Certify {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "tol-tangency")]
        tol_tangency: Option<f64>,
    },
    /// Write a state file for a named family.
    #[command(allow_negative_numbers = true)]
    Family {
        /// One of: singlet-plus-product, werner, x-state, tangent-x-state,
        /// asym-pure, one-pure-a, one-pure-b, one-pure-c, two-pure-a,
        /// two-pure-b.
        name: String,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        w: Option<f64>,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        x: Option<f64>,
        #[arg(long)]
        y: Option<f64>,
        #[arg(long)]
        z: Option<f64>,
        #[arg(long = "a-z", alias = "a_z")]
        a_z: Option<f64>,
        #[arg(long = "b-z", alias = "b_z")]
        b_z: Option<f64>,
        #[arg(long = "t-x", alias = "t_x")]
        t_x: Option<f64>,
        #[arg(long = "t-y", alias = "t_y")]
        t_y: Option<f64>,
        #[arg(long = "t-z", alias = "t_z")]
        t_z: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export sphere + ellipsoid surface samples for plotting.
    Mesh {
        path: PathBuf,
        /// Whose ellipsoid to mesh.
        #[arg(long, value_enum, default_value = "bob")]
        party: PartyArg,
        /// Grid resolution per angle; the mesh holds samples^2 points per
        /// surface.
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// csv: x,y,z,surface rows. tri: vertex lines then 1-based faces.
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit the tangency solver against a dense direction-grid oracle.
    Scan {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        party: PartyArg,
        /// Grid node count for the oracle.
        #[arg(long, default_value_t = 20000)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    op: &'static str,
    err: Error,
}

type CmdResult<T> = Result<T, Failure>;

trait WithOp<T> {
    fn op(self, op: &'static str) -> CmdResult<T>;
}

impl<T> WithOp<T> for Result<T, Error> {
    fn op(self, op: &'static str) -> CmdResult<T> {
        self.map_err(|err| Failure { op, err })
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(Failure { op, err }) => {
            eprintln!("qse: {op}: {err}");
            std::process::exit(if err.is_input_error() { 2 } else { 3 });
        }
    }
}

fn run(cli: Cli) -> CmdResult<()> {
    match cli.cmd {
        Cmd::Analyze {
            path,
            party,
            json,
            out,
            tol_tangency,
        } => analyze(&path, party, json, out.as_deref(), tol_tangency),
        Cmd::Certify {
            path,
            out,
            tol_tangency,
        } => analyze(&path, PartyArg::Both, true, out.as_deref(), tol_tangency),
        Cmd::Family {
            name,
            q,
            w,
            eta,
            epsilon,
            x,
            y,
            z,
            a_z,
            b_z,
            t_x,
            t_y,
            t_z,
            out,
        } => {
            let given: Vec<(&str, Option<f64>)> = vec![
                ("q", q),
                ("w", w),
                ("eta", eta),
                ("epsilon", epsilon),
                ("x", x),
                ("y", y),
                ("z", z),
                ("a_z", a_z),
                ("b_z", b_z),
                ("t_x", t_x),
                ("t_y", t_y),
                ("t_z", t_z),
            ];
            family(&name, &given, out.as_deref())
        }
        Cmd::Mesh {
            path,
            party,
            samples,
            format,
            out,
        } => mesh(&path, party, samples, &format, out.as_deref()),
        Cmd::Scan {
            path,
            party,
            grid,
            out,
        } => scan(&path, party, grid, out.as_deref()),
    }
}

fn tolerance_config(tol_tangency: Option<f64>) -> CmdResult<ToleranceConfig> {
    let mut cfg = ToleranceConfig::default();
    if let Some(t) = tol_tangency {
        cfg.tangency_tol = t;
    }
    cfg.validate().op("tolerance configuration")?;
    Ok(cfg)
}

fn load_state(path: &Path) -> CmdResult<(StateFile, qse_core::states::TwoQubitState)> {
    let sf = read_state_file(path).op("read state file")?;
    let state = sf.to_state().op("validate state")?;
    Ok((sf, state))
}

fn emit(text: &str, out: Option<&Path>) -> CmdResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(Error::from)
            .op("write output"),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn analyze(
    path: &Path,
    party: PartyArg,
    json: bool,
    out: Option<&Path>,
    tol_tangency: Option<f64>,
) -> CmdResult<()> {
    let cfg = tolerance_config(tol_tangency)?;
    let (sf, state) = load_state(path)?;
    let report = build_report(&state, &cfg).op("classification")?;
    let text = if json {
        to_json(&report).op("serialize report")?
    } else {
        render_human(&report, sf.meta.as_ref(), party)
    };
    emit(&text, out)
}

fn fmt_vec(v: &[f64; 3]) -> String {
    format!("[{:.9}, {:.9}, {:.9}]", v[0], v[1], v[2])
}

fn render_party(
    lines: &mut String,
    label: &str,
    section: &qse_core::io::PartySection,
    volume: f64,
) {
    use std::fmt::Write;
    match &section.ellipsoid {
        Some(e) => {
            writeln!(
                lines,
                "{label} ellipsoid: center {}, semiaxes {}, volume {:.9} ({})",
                fmt_vec(&e.center),
                fmt_vec(&e.semiaxes),
                volume,
                e.degeneracy
            )
            .unwrap();
        }
        None => {
            writeln!(lines, "{label} ellipsoid: unavailable (pure steerer)").unwrap();
        }
    }
    match &section.tangency {
        Some(t) => {
            writeln!(
                lines,
                "{label} tangency: {} (max g = {:.3e})",
                t.count_class, t.max_g
            )
            .unwrap();
            for (i, p) in t.points.iter().enumerate() {
                writeln!(
                    lines,
                    "  point {}: bloch {}, direction {}{}, probability {:.9}",
                    i + 1,
                    fmt_vec(&p.bloch_point),
                    if p.outcome_sign >= 0 { "+" } else { "-" },
                    fmt_vec(&p.direction),
                    p.probability
                )
                .unwrap();
            }
        }
        None => {
            writeln!(lines, "{label} tangency: unavailable (pure steerer)").unwrap();
        }
    }
}

fn render_human(report: &ReportFile, meta: Option<&Meta>, party: PartyArg) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    writeln!(s, "qse {}", report.version).unwrap();
    if let Some(meta) = meta {
        if let Some(fam) = &meta.family {
            let params: Vec<String> = meta
                .params
                .iter()
                .map(|(k, v)| format!("{k} = {v}"))
                .collect();
            writeln!(s, "family: {fam} ({})", params.join(", ")).unwrap();
        }
    }
    writeln!(
        s,
        "entangled: {} (negativity {:.9})",
        if report.entangled { "yes" } else { "no" },
        report.negativity
    )
    .unwrap();
    writeln!(
        s,
        "CHSH: {:.12}, violated: {}",
        report.chsh_value,
        if report.chsh_violated { "yes" } else { "no" }
    )
    .unwrap();
    writeln!(s, "verdict: {} ({})", report.verdict, report.verdict_basis).unwrap();
    if party != PartyArg::Bob {
        render_party(&mut s, "alice", &report.alice, report.volume_alice);
    }
    if party != PartyArg::Alice {
        render_party(&mut s, "bob", &report.bob, report.volume_bob);
    }
    if let Some(shortcut) = &report.shortcut {
        writeln!(s, "two-point shortcut: {shortcut}").unwrap();
    }
    for note in &report.notes {
        writeln!(s, "note: {note}").unwrap();
    }
    s
}

fn family(name: &str, given: &[(&str, Option<f64>)], out: Option<&Path>) -> CmdResult<()> {
    let fam: FamilyName = name.parse().op("family name")?;
    let wanted = fam.param_names();
    let mut params: Vec<(&str, f64)> = Vec::new();
    let mut extra: Vec<&str> = Vec::new();
    for (key, value) in given {
        if let Some(v) = value {
            if wanted.contains(key) {
                params.push((key, *v));
            } else {
                extra.push(key);
            }
        }
    }
    if !extra.is_empty() {
        return Err(Error::Parse(format!(
            "family {fam} does not take parameter(s) {}; expected {}",
            extra.join(", "),
            wanted.join(", ")
        )))
        .op("family parameters");
    }
    let missing: Vec<&str> = wanted
        .iter()
        .filter(|k| !params.iter().any(|(key, _)| key == *k))
        .copied()
        .collect();
    if !missing.is_empty() {
        return Err(Error::Parse(format!(
            "family {fam} is missing parameter(s) {}",
            missing.join(", ")
        )))
        .op("family parameters");
    }
    let spec = FamilySpec::new(fam, &params);
    let state = families::generate(&spec).op("family generation")?;
    let meta = Meta {
        family: Some(fam.as_str().to_string()),
        params: spec.params.clone(),
    };
    let sf = StateFile::from_matrix(&state, Some(meta));
    let text = to_json(&sf).op("serialize state file")?;
    emit(&text, out)
}

fn single_party(party: PartyArg, op: &'static str) -> CmdResult<Party> {
    match party {
        PartyArg::Alice => Ok(Party::Alice),
        PartyArg::Bob => Ok(Party::Bob),
        PartyArg::Both => {
            Err(Error::Parse("pick --party alice or --party bob".into())).op(op)
        }
    }
}

fn mesh(
    path: &Path,
    party: PartyArg,
    samples: usize,
    format: &str,
    out: Option<&Path>,
) -> CmdResult<()> {
    let fmt: MeshFormat = format.parse().op("mesh format")?;
    let party = single_party(party, "mesh party")?;
    let (_, state) = load_state(path)?;
    let e = compute_ellipsoid(&state.pauli(), party).op("ellipsoid")?;
    let text = mesh_text(&e, samples, fmt).op("mesh")?;
    emit(&text, out)
}

fn scan(path: &Path, party: PartyArg, grid: usize, out: Option<&Path>) -> CmdResult<()> {
    let (_, state) = load_state(path)?;
    let d = state.pauli();
    let parties: &[Party] = match party {
        PartyArg::Alice => &[Party::Alice],
        PartyArg::Bob => &[Party::Bob],
        PartyArg::Both => &[Party::Alice, Party::Bob],
    };
    use std::fmt::Write;
    let mut text = String::new();
    writeln!(text, "qse {}", env!("CARGO_PKG_VERSION")).unwrap();
    for &p in parties {
        let label = match p {
            Party::Alice => "alice",
            Party::Bob => "bob",
        };
        writeln!(text, "scan {label}: grid {grid}").unwrap();
        let candidates = scan_pure_directions(&d, p, grid).op("grid scan")?;
        if candidates.is_empty() {
            writeln!(text, "  grid candidates: none (g stays below -1e-6)").unwrap();
        }
        for (i, (n, g)) in candidates.iter().enumerate() {
            writeln!(
                text,
                "  grid candidate {}: n = {}, g = {:.3e}",
                i + 1,
                fmt_vec(&[n.x, n.y, n.z]),
                g
            )
            .unwrap();
        }
        let quad = build_quadratic(&d, p).op("quadratic")?;
        let sol = trs_maximize(&quad).op("trs solve")?;
        writeln!(
            text,
            "  trs: max g = {:.12e}, argmax {}",
            sol.max_value,
            argmax_label(&sol.argmax)
        )
        .unwrap();
        for (i, rep) in sol.argmax.representatives().iter().enumerate() {
            let (value_delta, angle_delta) = nearest_candidate(&candidates, rep, quad.eval(rep));
            writeln!(
                text,
                "  trs representative {}: n = {}, value delta {:.3e}, angle delta {:.3e} rad",
                i + 1,
                fmt_vec(&[rep.x, rep.y, rep.z]),
                value_delta,
                angle_delta
            )
            .unwrap();
        }
    }
    emit(&text, out)
}

fn argmax_label(set: &qse_core::tangency::ArgmaxSet) -> &'static str {
    use qse_core::tangency::ArgmaxSet;
    match set {
        ArgmaxSet::Single(_) => "single",
        ArgmaxSet::Pair(_, _) => "pair",
        ArgmaxSet::Circle { .. } => "circle",
        ArgmaxSet::Sphere => "sphere",
    }
}

/// Value and angle gap between a solver representative and the closest grid
/// candidate; infinities when the grid produced none.
fn nearest_candidate(
    candidates: &[(Vector3<f64>, f64)],
    rep: &Vector3<f64>,
    rep_value: f64,
) -> (f64, f64) {
    candidates
        .iter()
        .map(|(n, g)| {
            (
                (g - rep_value).abs(),
                n.dot(rep).clamp(-1.0, 1.0).acos(),
            )
        })
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap_or((f64::INFINITY, f64::INFINITY))
}
