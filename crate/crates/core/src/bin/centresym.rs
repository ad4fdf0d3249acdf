use centresym::io::{self, AnalysisConfig, EmitOptions, THEOREMS};
use centresym::CurveGeometry;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(version, about = "Centre symmetry sets and affine equidistants of closed planar curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full analysis and write report.json, branch CSVs and an optional SVG.
    Analyze {
        spec: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        svg: bool,
        /// Comma-separated list of css, wigner, secant, equidistant:<lambda>.
        #[arg(long, default_value = "css,wigner,secant")]
        kinds: String,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Leave wall-clock timings out of the report.
        #[arg(long)]
        no_timing: bool,
    },
    /// Compare formula CSS points with the chord-intersection envelope.
    Oracle {
        spec: PathBuf,
        #[arg(long, default_value_t = 20000)]
        samples: usize,
    },
    /// Print theorem verdicts; exit status 0 iff every applicable one holds.
    Verify {
        spec: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "rosette,parity,arcs,shell,duality")]
        theorems: Vec<String>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> centresym::Result<ExitCode> {
    match cli.command {
        Command::Analyze { spec, out, svg, kinds, samples, tol, no_timing } => {
            let spec = io::parse_curve_file(spec)?;
            let config = AnalysisConfig {
                samples_per_period: samples,
                root_tol: tol,
                kinds: io::parse_kinds(&kinds).map_err(centresym::Error::InvalidSpec)?,
                timing: !no_timing,
                ..AnalysisConfig::default()
            };
            let analysis = io::run_analysis(&spec, &config);
            for p in io::emit_outputs(&analysis, &out, EmitOptions { svg })? {
                println!("wrote {}", p.display());
            }
            if let Some(f) = &analysis.report.failure {
                eprintln!("stage {} failed: {}", f.stage, f.error);
                return Ok(ExitCode::FAILURE);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { spec, samples } => {
            let curve = CurveGeometry::new(io::parse_curve_file(spec)?)?;
            let report = io::oracle_comparison(&curve, samples, 3.0)?;
            for s in &report.stretches {
                println!(
                    "arcs {:>2}-{:<2} u [{:.4}, {:.4}]  hausdorff {:.3e}",
                    s.arcs.0, s.arcs.1, s.u0, s.u1, s.hausdorff
                );
            }
            println!("max hausdorff {:.3e} = {:.3e} x diameter", report.max_hausdorff, report.relative_error());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { spec, theorems } => {
            if let Some(bad) = theorems.iter().find(|t| !THEOREMS.contains(&t.as_str())) {
                return Err(centresym::Error::InvalidSpec(format!("unknown theorem {bad:?}; known: {}", THEOREMS.join(","))));
            }
            let spec = io::parse_curve_file(spec)?;
            let config = AnalysisConfig { timing: false, ..AnalysisConfig::default() };
            let report = io::run_analysis(&spec, &config).report;
            if let Some(f) = &report.failure {
                eprintln!("stage {} failed: {}", f.stage, f.error);
                return Ok(ExitCode::FAILURE);
            }
            let mut ok = true;
            for name in &theorems {
                let v = report.theorem(name).expect("every known theorem is evaluated");
                let status = match (v.applicable, v.holds) {
                    (false, _) => "skip",
                    (true, true) => "pass",
                    (true, false) => "FAIL",
                };
                ok &= !v.applicable || v.holds;
                println!("{status:4} {name:8} {}", v.detail);
            }
            if let Some(g) = &report.genericity {
                println!("genericity {}", if g.overall { "pass" } else { "fail" });
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}
