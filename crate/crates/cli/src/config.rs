use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;
use waveset_core::construct::DiagRotVariant;
use waveset_core::geometry::{annular_sector, GeometryError};
use waveset_core::{DilationSpec, Lattice, Region};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Construct,
    Verify,
    Render,
    Demo,
}

/// Construction name plus its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Construction {
    DiagRot {
        #[serde(rename = "J")]
        depth: usize,
        #[serde(default)]
        variant: DiagRotVariant,
    },
    RotScale {
        a: f64,
        m: u32,
        max_iters: usize,
        tol: f64,
    },
    /// Uses regions `E`, `F`, the `dilation` family and the lattice.
    DlsExchange { max_iters: usize, tol: f64 },
    /// Uses regions `E`, `window`, the `dilation` family and the lattice.
    Exwave { tol: f64 },
}

/// A region given literally or by a named shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RegionSpec {
    Literal(Region),
    Shape(Shape),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Shape {
    /// `[x0, y0, x1, y1]`.
    Rect([f64; 4]),
    /// `outer \ hole`, both `[x0, y0, x1, y1]`.
    PuncturedRect { outer: [f64; 4], hole: [f64; 4] },
    /// Polygonal `{r_in < r ≤ r_out, θ0 ≤ θ ≤ θ1}`.
    AnnularSector {
        r_in: f64,
        r_out: f64,
        theta0: f64,
        theta1: f64,
        segments: usize,
    },
}

impl RegionSpec {
    pub fn build(&self) -> Result<Region, GeometryError> {
        match self {
            RegionSpec::Literal(r) => Ok(r.clone()),
            RegionSpec::Shape(Shape::Rect([x0, y0, x1, y1])) => Region::rect(*x0, *y0, *x1, *y1),
            RegionSpec::Shape(Shape::PuncturedRect { outer, hole }) => {
                let o = Region::rect(outer[0], outer[1], outer[2], outer[3])?;
                let h = Region::rect(hole[0], hole[1], hole[2], hole[3])?;
                Ok(o.subtract(&h))
            }
            RegionSpec::Shape(Shape::AnnularSector {
                r_in,
                r_out,
                theta0,
                theta1,
                segments,
            }) => annular_sector(*r_in, *r_out, *theta0, *theta1, *segments),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dilation: Option<DilationSpec>,
    pub lattice: Lattice,
    #[serde(default)]
    pub regions: BTreeMap<String, RegionSpec>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub truncations: BTreeMap<String, usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output_paths: BTreeMap<String, String>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("invalid config: {0}")]
    Validation(String),
}

pub fn load_config(path: &Path) -> Result<JobConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<JobConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: JobConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_syntax() || inner.is_eof() {
            ConfigError::Parse {
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        } else {
            ConfigError::Schema {
                path,
                message: inner.to_string(),
            }
        }
    })?;
    cfg.validate()?;
    Ok(cfg)
}

/// Pretty-printed JSON with a trailing newline. Loading this text and
/// serializing again reproduces it byte for byte.
pub fn to_canonical_json(cfg: &JobConfig) -> String {
    let mut s = serde_json::to_string_pretty(cfg).expect("config serializes");
    s.push('\n');
    s
}

impl JobConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Validation(m));
        for (k, v) in &self.tolerances {
            if !(v.is_finite() && *v > 0.0) {
                return bad(format!("tolerance `{k}` must be positive, got {v}"));
            }
        }
        if let Some(d) = &self.dilation {
            if let Err(e) = d.validate() {
                return bad(format!("dilation: {e}"));
            }
        }
        if let Err(e) = Lattice::new(self.lattice.basis) {
            return bad(format!("lattice: {e}"));
        }
        for (name, r) in &self.regions {
            if let Err(e) = r.build() {
                return bad(format!("region `{name}`: {e}"));
            }
        }
        let need = |names: &[&str]| -> Result<(), ConfigError> {
            for n in names {
                if !self.regions.contains_key(*n) {
                    return Err(ConfigError::Validation(format!("missing region `{n}`")));
                }
            }
            Ok(())
        };
        match &self.construction {
            Some(Construction::DlsExchange { .. }) => {
                need(&["E", "F"])?;
                if self.dilation.is_none() {
                    return bad("dls-exchange needs a dilation family".into());
                }
            }
            Some(Construction::Exwave { .. }) => {
                need(&["E", "window"])?;
                if self.dilation.is_none() {
                    return bad("exwave needs a dilation family".into());
                }
            }
            Some(Construction::RotScale { tol, .. }) if !(*tol > 0.0) => {
                return bad(format!("rot-scale tolerance must be positive, got {tol}"));
            }
            _ => {}
        }
        if self.construction.is_none() {
            match self.command {
                Command::Construct => return bad("construct needs a construction".into()),
                _ => need(&["omega"])?,
            }
        }
        if self.command == Command::Render && !self.output_paths.contains_key("svg") {
            return bad("render needs output_paths.svg".into());
        }
        Ok(())
    }

    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    pub fn truncation(&self, name: &str, default: usize) -> usize {
        self.truncations.get(name).copied().unwrap_or(default)
    }

    /// Built region, if named in the config.
    pub fn region(&self, name: &str) -> Option<Region> {
        self.regions.get(name).map(|r| r.build().expect("validated"))
    }
}
