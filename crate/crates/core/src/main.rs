use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex;

use sideband_comb::export::{metrics_text, write_spectrum_csv, write_sweep_csv};
use sideband_comb::linear_oracle::two_probe_linear_response;
use sideband_comb::spectrum::probe_index;
use sideband_comb::steady_state::solve_steady;
use sideband_comb::{simulate, sweep, Error, RunConfig, SweepAxis, SweepSpec};

#[derive(Parser)]
#[command(name = "sideband-comb", version, about = "Three-tone optomechanical sideband comb simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the static branches of the control-only problem.
    Steady(Common),
    /// Simulate one configuration and write the spectrum and metrics.
    Run(Common),
    /// Sweep one parameter and write a metrics table.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// eps_p | eps_f (GHz), n, delta_a (Hz).
        #[arg(long)]
        axis: String,
        /// Comma-separated axis values.
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
        values: Vec<f64>,
    },
    /// Compare the simulated probe lines with the linearized response.
    Oracle(Common),
}

#[derive(Args)]
struct Common {
    /// Flat JSON configuration file.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in figure configuration.
    #[arg(long, value_parser = ["fig2a", "fig2b", "fig3a", "fig3b", "fig3c", "fig4a", "fig4b", "fig4c"])]
    preset: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Relative presence threshold for comb lines.
    #[arg(long)]
    threshold: Option<f64>,
}

impl Common {
    fn load(&self) -> Result<RunConfig> {
        let mut c = match (&self.config, &self.preset) {
            (Some(path), _) => RunConfig::load(path).with_context(|| format!("reading {}", path.display()))?,
            (None, Some(name)) => RunConfig::preset(name)?,
            (None, None) => RunConfig::default(),
        };
        if let Some(t) = self.threshold {
            c.solver.threshold_rel = t;
            c.solver = c.solver.validate()?;
        }
        Ok(c)
    }

    fn out_dir(&self) -> Result<Option<&Path>> {
        if let Some(dir) = &self.out {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        Ok(self.out.as_deref())
    }
}

fn emit(out: Option<&Path>, file: &str, text: &str) -> Result<()> {
    print!("{text}");
    if let Some(dir) = out {
        fs::write(dir.join(file), text)?;
    }
    Ok(())
}

fn steady(common: &Common) -> Result<()> {
    let c = common.load()?;
    let branches = solve_steady(&c.params)?;
    let mut s = String::new();
    writeln!(s, "branches = {}", branches.len())?;
    for (i, b) in branches.iter().enumerate() {
        writeln!(s, "branch{i}.intensity = {}", b.intensity)?;
        writeln!(s, "branch{i}.alpha_re = {}", b.alpha0.re)?;
        writeln!(s, "branch{i}.alpha_im = {}", b.alpha0.im)?;
        writeln!(s, "branch{i}.beta_re = {}", b.beta0.re)?;
        writeln!(s, "branch{i}.beta_im = {}", b.beta0.im)?;
        writeln!(s, "branch{i}.growth_rate = {}", b.growth_rate)?;
        writeln!(s, "branch{i}.stable = {}", b.stable)?;
    }
    emit(common.out_dir()?, "steady.txt", &s)
}

fn run(common: &Common) -> Result<()> {
    let c = common.load()?;
    let dir = common.out_dir()?.unwrap_or(Path::new("."));
    let out = simulate(&c.params, &c.solver)?;
    let spectrum_path = dir.join(&c.output.spectrum);
    let file = fs::File::create(&spectrum_path).with_context(|| format!("creating {}", spectrum_path.display()))?;
    write_spectrum_csv(&out.spectrum, std::io::BufWriter::new(file))?;
    let text = metrics_text(&out);
    fs::write(dir.join(&c.output.metrics), &text)?;
    fs::write(dir.join("config.json"), c.to_json() + "\n")?;
    print!("{text}");
    Ok(())
}

fn run_sweep(common: &Common, axis: &str, values: &[f64]) -> Result<()> {
    let spec = SweepSpec { axis: axis.parse::<SweepAxis>()?, values: values.to_vec(), base: common.load()? };
    let rows = sweep(&spec)?;
    let mut buf = Vec::new();
    write_sweep_csv(&rows, &mut buf)?;
    let text = String::from_utf8(buf)?;
    emit(common.out_dir()?, "sweep.csv", &text)
}

fn oracle(common: &Common) -> Result<()> {
    let c = common.load()?;
    let p = c.params;
    let lin = two_probe_linear_response(&p)?;
    let kp = probe_index(&p)?;
    let mut predicted: BTreeMap<i64, Complex<f64>> = BTreeMap::new();
    for (k, r) in [(kp, &lin.probe_p), (1, &lin.probe_f)] {
        *predicted.entry(k).or_default() += r.a_plus;
        *predicted.entry(-k).or_default() += r.a_minus;
    }
    let run = simulate(&p, &c.solver)?;
    let mut s = String::new();
    writeln!(s, "outside_weak_regime = {}", lin.outside_weak_regime)?;
    let mut worst: f64 = 0.0;
    for (k, want) in &predicted {
        let got = run.spectrum.line(*k).map(|l| l.amp_alpha).unwrap_or_default();
        let rel = if want.norm() > 0.0 { (got - want).norm() / want.norm() } else { got.norm() };
        if want.norm() > 0.0 {
            worst = worst.max(rel);
        }
        writeln!(s, "k{k}.linear = {} {}", want.re, want.im)?;
        writeln!(s, "k{k}.simulated = {} {}", got.re, got.im)?;
        writeln!(s, "k{k}.rel_error = {rel}")?;
    }
    writeln!(s, "max_rel_error = {worst}")?;
    emit(common.out_dir()?, "oracle.txt", &s)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let msg = e.kind().to_string().replace('"', "'");
            eprintln!("error code=usage message=\"{msg}\"");
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Steady(c) => steady(c),
        Command::Run(c) => run(c),
        Command::Sweep { common, axis, values } => run_sweep(common, axis, values),
        Command::Oracle(c) => oracle(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = e.chain().find_map(|c| c.downcast_ref::<Error>()).map_or("cli", Error::code);
            let msg = format!("{e:#}").replace('"', "'");
            eprintln!("error code={code} message=\"{msg}\"");
            ExitCode::FAILURE
        }
    }
}
