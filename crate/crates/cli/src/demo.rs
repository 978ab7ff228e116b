use crate::config::{parse_config, ConfigError, Construction, JobConfig};
use std::path::PathBuf;
use waveset_core::construct::DiagRotVariant;

pub const EXAMPLE_3_1: &str = include_str!("../configs/example-3-1.json");
pub const EXAMPLE_3_2: &str = include_str!("../configs/example-3-2.json");

pub const DEMOS: [&str; 2] = ["example-3-1", "example-3-2"];

/// Tolerances replaced by `--tol`.
const TILING_TOLERANCES: [&str; 5] = ["additive", "mult", "sector", "subspace", "wavelet"];

#[derive(Clone, Debug, Default)]
pub struct DemoOptions {
    pub depth: Option<usize>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub variant: Option<DiagRotVariant>,
}

pub fn bundled_config(name: &str) -> Result<JobConfig, ConfigError> {
    match name {
        "example-3-1" => parse_config(EXAMPLE_3_1),
        "example-3-2" => parse_config(EXAMPLE_3_2),
        other => Err(ConfigError::Validation(format!(
            "unknown demo `{other}`; expected one of {}",
            DEMOS.join(", ")
        ))),
    }
}

pub fn demo_config(name: &str, opts: &DemoOptions) -> Result<JobConfig, ConfigError> {
    let mut cfg = bundled_config(name)?;
    if opts.depth.is_some() || opts.variant.is_some() {
        match &mut cfg.construction {
            Some(Construction::DiagRot { depth, variant }) => {
                *depth = opts.depth.unwrap_or(*depth);
                *variant = opts.variant.unwrap_or(*variant);
            }
            _ => {
                return Err(ConfigError::Validation(format!(
                    "--J and --variant apply to example-3-2 only, not {name}"
                )))
            }
        }
    }
    if let Some(tol) = opts.tol {
        for key in TILING_TOLERANCES {
            if let Some(v) = cfg.tolerances.get_mut(key) {
                *v = tol;
            }
        }
    }
    if let Some(dir) = &opts.out {
        let path = |f: String| dir.join(f).display().to_string();
        cfg.output_paths.insert("report".into(), path("report.json".into()));
        cfg.output_paths.insert("svg".into(), path(format!("{name}.svg")));
    }
    cfg.validate()?;
    Ok(cfg)
}
