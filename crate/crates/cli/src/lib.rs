//! Config ingestion, construction and verification runs, SVG output and
//! JSON reports for the `waveset` command.

pub mod config;
pub mod demo;
pub mod render;
pub mod run;

pub use config::{load_config, parse_config, to_canonical_json, ConfigError, JobConfig};
pub use demo::{bundled_config, demo_config, DemoOptions};
pub use render::{render_svg, Style};
pub use run::{run, write_outputs, RunReport, Verdict};
