//! Command-line front end for `jser-core`.
//!
//! `verify` runs the analytic scenario checks, `sample` runs the seeded
//! Monte Carlo experiments. Exit status is 0 when every check passes, 1 when
//! a check fails (the first failure is named on stderr) and 2 for usage or
//! configuration errors.

mod json;
mod text;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use jser_core::inference::{
    run_scenario, sample_scenario, Check, CheckValue, SamplingReport, Scenario, ScenarioOptions,
    ScenarioReport,
};
use jser_core::states::PsiParams;
use jser_core::{Error, C64};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "jser",
    version,
    about = "Verify joint strong elements of reality on three-qubit states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the analytic checks of one or all scenarios
    Verify(RunConfig),
    /// Run the Monte Carlo measurement experiments of one or all scenarios
    Sample(RunConfig),
}

#[derive(clap::Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = ScenarioArg::All)]
    pub scenario: ScenarioArg,
    /// Real part of a
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub a_re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a_im: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub b_re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub b_im: f64,
    /// Trials per sampled state
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Certainty tolerance on |P - 1|
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Fault injection: negate the predicted value of the N-th SER claim (0-based)
    #[arg(long, value_name = "N")]
    pub flip_ser: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScenarioArg {
    EprPsi,
    EprGhz,
    BellHardy,
    BellGhz,
    All,
}

impl ScenarioArg {
    pub fn scenarios(self) -> Vec<Scenario> {
        match self {
            ScenarioArg::EprPsi => vec![Scenario::EprPsi],
            ScenarioArg::EprGhz => vec![Scenario::EprGhz],
            ScenarioArg::BellHardy => vec![Scenario::BellHardy],
            ScenarioArg::BellGhz => vec![Scenario::BellGhz],
            ScenarioArg::All => Scenario::ALL.to_vec(),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Everything printed for one scenario.
pub struct Report {
    pub scenario: Scenario,
    pub seed: u64,
    pub analytic: ScenarioReport,
    pub sampling: Option<SamplingReport>,
}

impl Report {
    /// Analytic checks followed by one check per sampling experiment.
    pub fn checks(&self) -> Vec<Check> {
        let mut checks = self.analytic.checks.clone();
        if let Some(s) = &self.sampling {
            checks.extend(s.experiments.iter().map(|e| Check {
                description: format!(
                    "sampling {}: |z| < 4 and no hard-constraint violations",
                    e.name
                ),
                anchor: "calibration".into(),
                expected: CheckValue::Text("max |z| < 4, 0 violations".into()),
                computed: CheckValue::Text(format!(
                    "max |z| = {:.3}, {} violations",
                    e.max_abs_z(),
                    e.hard_violations()
                )),
                pass: e.passed(),
            }));
        }
        checks
    }

    pub fn first_failure(&self) -> Option<Check> {
        self.checks().into_iter().find(|c| !c.pass)
    }
}

impl RunConfig {
    fn params(&self) -> Result<PsiParams, Error> {
        PsiParams::new(
            C64::new(self.a_re, self.a_im),
            C64::new(self.b_re, self.b_im),
        )
    }

    fn needs_params(&self) -> bool {
        self.scenario.scenarios().iter().any(|s| s.uses_params())
    }
}

fn run(config: &RunConfig, sampling: bool) -> Result<Vec<Report>, String> {
    let params = if config.needs_params() {
        config.params().map_err(|e| e.to_string())?
    } else {
        PsiParams::default()
    };
    if !(config.tolerance > 0.0 && config.tolerance.is_finite()) {
        return Err(format!(
            "tolerance must be positive and finite (got {})",
            config.tolerance
        ));
    }
    let options = ScenarioOptions {
        tolerance: config.tolerance,
        flip_ser: config.flip_ser,
    };
    config
        .scenario
        .scenarios()
        .into_iter()
        .map(|scenario| {
            let analytic = run_scenario(scenario, &params, &options)
                .map_err(|e| format!("{}: {e}", scenario.name()))?;
            let sampling = if sampling {
                Some(
                    sample_scenario(scenario, &params, config.seed, config.trials)
                        .map_err(|e| e.to_string())?,
                )
            } else {
                None
            };
            Ok(Report {
                scenario,
                seed: config.seed,
                analytic,
                sampling,
            })
        })
        .collect()
}

/// Renders the reports for `config` in its chosen format.
pub fn render(config: &RunConfig, reports: &[Report]) -> String {
    match config.format {
        Format::Json => json::render(reports),
        Format::Text => text::render(reports),
    }
}

/// Parses `args` (including the program name) and runs the command. Returns the exit status.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_PASS
            };
        }
    };
    let (config, sampling) = match &cli.command {
        Command::Verify(c) => (c, false),
        Command::Sample(c) => (c, true),
    };
    let reports = match run(config, sampling) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if out.write_all(render(config, &reports).as_bytes()).is_err() {
        return EXIT_USAGE;
    }
    match reports
        .iter()
        .find_map(|r| r.first_failure().map(|c| (r.scenario, c)))
    {
        None => EXIT_PASS,
        Some((scenario, check)) => {
            let _ = writeln!(err, "FAIL [{}]: {}", scenario.name(), check.description);
            EXIT_FAIL
        }
    }
}
