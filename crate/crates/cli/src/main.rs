use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use waveset_cli::config::Command as JobCommand;
use waveset_cli::run::{report_json, EXIT_CONFIG_ERROR};
use waveset_cli::{demo_config, load_config, run, write_outputs, ConfigError, DemoOptions, JobConfig};
use waveset_core::construct::DiagRotVariant;

#[derive(Parser)]
#[command(name = "waveset", version, about = "Construct and verify planar wavelet sets")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the configured construction and check its trace.
    Construct {
        #[arg(long)]
        config: PathBuf,
    },
    /// Build (or load `omega`) and run every applicable check.
    Verify {
        #[arg(long)]
        config: PathBuf,
    },
    /// Build (or load `omega`) and write `output_paths.svg`.
    Render {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a bundled example end to end.
    Demo {
        #[arg(value_parser = ["example-3-1", "example-3-2"])]
        name: String,
        /// Recursion depth (example-3-2).
        #[arg(long = "J")]
        depth: Option<usize>,
        /// Tolerance for every tiling check.
        #[arg(long)]
        tol: Option<f64>,
        /// Directory for report.json and the SVG.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Recursion variant (example-3-2).
        #[arg(long, value_enum)]
        variant: Option<Variant>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Literal,
    Repaired,
}

fn set_threads() {
    if let Some(n) = std::env::var("WAVESET_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn job(cmd: Cmd) -> Result<JobConfig, ConfigError> {
    let with = |path: PathBuf, c: JobCommand| {
        let mut cfg = load_config(&path)?;
        cfg.command = c;
        cfg.validate()?;
        Ok(cfg)
    };
    match cmd {
        Cmd::Construct { config } => with(config, JobCommand::Construct),
        Cmd::Verify { config } => with(config, JobCommand::Verify),
        Cmd::Render { config } => with(config, JobCommand::Render),
        Cmd::Demo {
            name,
            depth,
            tol,
            out,
            variant,
        } => demo_config(
            &name,
            &DemoOptions {
                depth,
                tol,
                out,
                variant: variant.map(|v| match v {
                    Variant::Literal => DiagRotVariant::Literal,
                    Variant::Repaired => DiagRotVariant::Repaired,
                }),
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    set_threads();
    let cfg = match job(cli.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG_ERROR as u8);
        }
    };
    let (report, trace) = run(&cfg);
    for r in &report.reports {
        let m: Vec<String> = r.masses.iter().map(|(k, v)| format!("{k}={v:e}")).collect();
        eprintln!("{:<24} {}  {}", r.kind, if r.pass { "PASS" } else { "FAIL" }, m.join(" "));
    }
    for e in &report.errors {
        eprintln!("error [{}]: {}", e.stage, e.message);
    }
    if let Err(e) = write_outputs(&cfg, &report, trace.as_ref()) {
        eprintln!("error: {e:#}");
        return ExitCode::from(waveset_cli::run::EXIT_CONSTRUCTION_ERROR as u8);
    }
    if !cfg.output_paths.contains_key("report") {
        print!("{}", report_json(&report));
    }
    eprintln!("verdict: {:?} ({:.2}s)", report.verdict, report.wall_time);
    ExitCode::from(report.exit_code as u8)
}
