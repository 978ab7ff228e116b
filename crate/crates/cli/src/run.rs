use crate::config::{Command, Construction, JobConfig};
use crate::render::{render_svg, Style};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;
use waveset_core::construct::{
    construct_diag_rot, construct_rot_scale, dls_exchange, exwave_pipeline, induce_subspace_tile, ConstructError,
    ConstructionTrace, ExchangeStep,
};
use waveset_core::verify::{
    check_additive_tiling, check_mult_tiling, check_mult_tiling_with_reference, check_spectral, check_wavelet_system,
    parseval_profile, SpectralReport, SpectralRoute, TilingReport, WaveletReport,
};
use waveset_core::{DilationSpec, Matrix2, Region};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_CONSTRUCTION_ERROR: i32 = 2;
pub const EXIT_CONFIG_ERROR: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Detail {
    Tiling(TilingReport),
    Spectral(SpectralReport),
    Wavelet(Box<WaveletReport>),
    Parseval { profile: Vec<f64>, truncation_k: usize, tol: f64 },
    Trace { tol: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub kind: String,
    pub pass: bool,
    /// Headline quantities, rounded to 12 significant digits.
    pub masses: BTreeMap<String, f64>,
    pub detail: Detail,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorEntry {
    pub stage: String,
    pub message: String,
}

/// Construction trace without the bulky input regions.
#[derive(Clone, Debug, Serialize)]
pub struct TraceDigest {
    pub method: String,
    pub family: DilationSpec,
    pub e_area: f64,
    pub result_area: f64,
    pub residual_area: f64,
    pub residual_history: Vec<f64>,
    pub notes: Vec<String>,
    pub steps: Vec<ExchangeStep>,
}

impl From<&ConstructionTrace> for TraceDigest {
    fn from(t: &ConstructionTrace) -> Self {
        TraceDigest {
            method: t.method.clone(),
            family: t.family.clone(),
            e_area: t.e.area(),
            result_area: t.result.area(),
            residual_area: t.residual_area,
            residual_history: t.residual_history.clone(),
            notes: t.notes.clone(),
            steps: t.steps.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub version: String,
    pub verdict: Verdict,
    pub exit_code: i32,
    pub config: JobConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceDigest>,
    pub reports: Vec<CheckReport>,
    pub errors: Vec<ErrorEntry>,
    pub wall_time: f64,
}

impl RunReport {
    pub fn report(&self, kind: &str) -> Option<&CheckReport> {
        self.reports.iter().find(|r| r.kind == kind)
    }
}

pub fn round12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn masses(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), round12(*v))).collect()
}

fn tiling_entry(kind: &str, t: TilingReport, extra: &[(&str, f64)]) -> CheckReport {
    let mut m = masses(&[
        ("max_pairwise_overlap", t.max_pairwise_overlap),
        ("total_overlap", t.total_overlap),
        ("gap_area", t.gap_area),
        ("truncation_gap", t.truncation_gap),
        ("excess_gap", t.excess_gap()),
        ("window_area", t.window_area),
    ]);
    m.extend(masses(extra));
    CheckReport {
        kind: kind.into(),
        pass: t.pass,
        masses: m,
        detail: Detail::Tiling(t),
    }
}

fn spectral_entry(kind: &str, s: SpectralReport) -> CheckReport {
    CheckReport {
        kind: kind.into(),
        pass: s.pass,
        masses: masses(&[
            ("max_offdiag", s.max_offdiag),
            ("diag_deviation", s.diag_deviation),
            ("covolume_deviation", s.covolume_deviation),
        ]),
        detail: Detail::Spectral(s),
    }
}

struct Built {
    trace: ConstructionTrace,
    reports: Vec<CheckReport>,
}

fn build(cfg: &JobConfig, c: &Construction) -> Result<Built, ConstructError> {
    let family = || {
        cfg.dilation
            .clone()
            .ok_or_else(|| ConstructError::Precondition("missing dilation family".into()))
    };
    let region = |n: &str| cfg.region(n).ok_or_else(|| ConstructError::Precondition(format!("missing region `{n}`")));
    match c {
        Construction::DiagRot { depth, variant } => Ok(Built {
            trace: construct_diag_rot(*depth, *variant)?,
            reports: Vec::new(),
        }),
        Construction::RotScale { a, m, max_iters, tol } => Ok(Built {
            trace: construct_rot_scale(*a, *m, *max_iters, *tol)?,
            reports: Vec::new(),
        }),
        Construction::DlsExchange { max_iters, tol } => Ok(Built {
            trace: dls_exchange(&region("E")?, &region("F")?, &family()?, &cfg.lattice, *max_iters, *tol)?,
            reports: Vec::new(),
        }),
        Construction::Exwave { tol } => {
            let r = exwave_pipeline(&region("E")?, &family()?, &cfg.lattice, &region("window")?, *tol)?;
            Ok(Built {
                reports: vec![
                    tiling_entry("exwave-basis-tiling", r.basis_tiling, &[("subspace_overlap", r.subspace.overlap_mass)]),
                    tiling_entry("exwave-family-tiling", r.family_tiling, &[]),
                ],
                trace: r.trace,
            })
        }
    }
}

fn trace_entry(t: &ConstructionTrace, tol: f64) -> CheckReport {
    let conservation = t.conservation_error();
    let overlap = t.piece_overlap();
    CheckReport {
        kind: "trace".into(),
        pass: conservation <= tol && overlap <= tol,
        masses: masses(&[
            ("result_area", t.result.area()),
            ("residual_area", t.residual_area),
            ("conservation_error", conservation),
            ("piece_overlap", overlap),
        ]),
        detail: Detail::Trace { tol },
    }
}

fn verification_suite(
    cfg: &JobConfig,
    omega: &Region,
    f: Option<&Region>,
    out: &mut Vec<CheckReport>,
) -> anyhow::Result<()> {
    let lat = &cfg.lattice;
    let k = cfg.truncation("K", 3);
    if let Some(window) = cfg.region("window") {
        let t = check_additive_tiling(omega, lat, &window, cfg.tolerance("additive", 1e-6));
        out.push(tiling_entry("additive-tiling", t, &[]));
    }
    out.push(spectral_entry(
        "spectral-gram",
        check_spectral(omega, lat, SpectralRoute::GramMatrix, k, cfg.tolerance("gram", 1e-4))?,
    ));
    out.push(spectral_entry(
        "spectral-fuglede",
        check_spectral(omega, lat, SpectralRoute::FugledeTiling, k, cfg.tolerance("fuglede", 1e-3))?,
    ));
    let Some(spec) = &cfg.dilation else {
        return Ok(());
    };
    let family = spec.enumerate()?.matrices;
    let kp = cfg.truncation("parseval_K", 20);
    let profile = match cfg.region("target") {
        Some(target) => Some((parseval_profile(omega, &family, lat, &target, kp)?, target.area())),
        None => None,
    };
    if let Some(window) = cfg.region("mult_window") {
        let t = check_mult_tiling_with_reference(omega, &family, &window, cfg.tolerance("mult", 1e-6), f);
        out.push(tiling_entry("multiplicative-tiling", t, &[]));
        let mut w = check_wavelet_system(omega, &family, lat, k, &window, cfg.tolerance("wavelet", 1e-3))?;
        let max_gram = w.same_dilation_gram.iter().map(|g| g.max_offdiag).fold(0.0, f64::max);
        let mut m = vec![("cross_dilation_overlap", w.cross_dilation_overlap), ("max_gram_offdiag", max_gram)];
        if let Some((p, _)) = &profile {
            w.parseval_error = Some(p[kp]);
            m.push(("parseval_error", p[kp]));
        }
        out.push(CheckReport {
            kind: "wavelet-system".into(),
            pass: w.pass,
            masses: masses(&m),
            detail: Detail::Wavelet(Box::new(w)),
        });
    }
    if let Some(window) = cfg.region("sector_window") {
        let scaling = DilationSpec {
            rotation_order: 1,
            ..spec.clone()
        };
        let fam = scaling.enumerate()?.matrices;
        let t = check_mult_tiling(omega, &fam, &window, cfg.tolerance("sector", 1e-3));
        out.push(tiling_entry("sector-tiling", t, &[]));
    }
    if let Some((profile, target_area)) = profile {
        let tol = cfg.tolerance("parseval", 0.02);
        let defect = profile[kp];
        let decreasing = kp <= 5 || defect < profile[5];
        out.push(CheckReport {
            kind: "parseval".into(),
            pass: defect <= tol && decreasing,
            masses: masses(&[
                ("defect", defect),
                ("defect_k5", profile[5.min(kp)]),
                ("target_area", target_area),
            ]),
            detail: Detail::Parseval {
                profile,
                truncation_k: kp,
                tol,
            },
        });
    }
    if let (Some(p), Some(window)) = (cfg.truncations.get("subspace_powers"), cfg.region("subspace_window")) {
        let p = *p as i64;
        let a = spec.expansive_base;
        let group: Vec<Matrix2> = (-p..=p).map(|n| a.pow(n).expect("validated base")).collect();
        let rotations: Vec<Matrix2> = (0..spec.rotation_order).map(|k| spec.rotation(k)).collect();
        let n = induce_subspace_tile(omega, &group)?;
        let reference = f.map(|f| induce_subspace_tile(f, &group)).transpose()?;
        let t = check_mult_tiling_with_reference(
            &n.region,
            &rotations,
            &window,
            cfg.tolerance("subspace", 1e-5),
            reference.as_ref().map(|r| &r.region),
        );
        out.push(tiling_entry("subspace-tiling", t, &[("induced_overlap", n.overlap_mass)]));
    }
    Ok(())
}

/// Runs the job. Output files are written by [`write_outputs`].
pub fn run(cfg: &JobConfig) -> (RunReport, Option<ConstructionTrace>) {
    let start = Instant::now();
    let mut report = RunReport {
        version: env!("CARGO_PKG_VERSION").into(),
        verdict: Verdict::Pass,
        exit_code: EXIT_PASS,
        config: cfg.clone(),
        trace: None,
        reports: Vec::new(),
        errors: Vec::new(),
        wall_time: 0.0,
    };
    let finish = |mut r: RunReport, t: Option<ConstructionTrace>| {
        r.wall_time = start.elapsed().as_secs_f64();
        (r, t)
    };
    let fail = |r: &mut RunReport, stage: &str, msg: String, code: i32| {
        r.errors.push(ErrorEntry {
            stage: stage.into(),
            message: msg,
        });
        r.verdict = if code == EXIT_VERIFICATION_FAILED {
            Verdict::Fail
        } else {
            Verdict::Error
        };
        r.exit_code = code;
    };
    if let Err(e) = cfg.validate() {
        fail(&mut report, "config", e.to_string(), EXIT_CONFIG_ERROR);
        return finish(report, None);
    }

    let mut trace = None;
    if let Some(c) = &cfg.construction {
        match build(cfg, c) {
            Ok(b) => {
                report.reports.push(trace_entry(&b.trace, cfg.tolerance("trace", 1e-9)));
                report.reports.extend(b.reports);
                report.trace = Some(TraceDigest::from(&b.trace));
                trace = Some(b.trace);
            }
            Err(e) => {
                fail(&mut report, "construction", e.to_string(), EXIT_CONSTRUCTION_ERROR);
                return finish(report, None);
            }
        }
    }

    if matches!(cfg.command, Command::Verify | Command::Demo) {
        let omega = trace
            .as_ref()
            .map(|t| t.result.clone())
            .or_else(|| cfg.region("omega"))
            .expect("validated");
        let f = trace.as_ref().map(|t| t.f.clone()).or_else(|| cfg.region("F"));
        if let Err(e) = verification_suite(cfg, &omega, f.as_ref(), &mut report.reports) {
            fail(&mut report, "verification", e.to_string(), EXIT_VERIFICATION_FAILED);
        }
    }

    if report.exit_code == EXIT_PASS && !report.reports.iter().all(|r| r.pass) {
        report.verdict = Verdict::Fail;
        report.exit_code = EXIT_VERIFICATION_FAILED;
    }
    finish(report, trace)
}

/// Writes the SVG (`output_paths.svg`) and the report (`output_paths.report`).
pub fn write_outputs(cfg: &JobConfig, report: &RunReport, trace: Option<&ConstructionTrace>) -> anyhow::Result<()> {
    if let Some(svg) = cfg.output_paths.get("svg") {
        let items: Vec<(Region, Style)> = match trace {
            Some(t) => t
                .steps
                .iter()
                .enumerate()
                .map(|(i, s)| (s.piece.clone(), Style::indexed(i)))
                .collect(),
            None => match cfg.region("omega") {
                Some(r) => vec![(r, Style::default())],
                None => Vec::new(),
            },
        };
        render_svg(&items, Path::new(svg))?;
    }
    if let Some(path) = cfg.output_paths.get("report") {
        let path = Path::new(path);
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, report_json(report))?;
    }
    Ok(())
}

pub fn report_json(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
        assert_eq!(round12(0.0), 0.0);
        assert_eq!(round12(2.0e-7 / 3.0), 6.66666666667e-8);
    }
}
