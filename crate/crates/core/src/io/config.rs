use crate::error::{Error, Result};
use crate::microstrip::Substrate;
use crate::objective::FilterSpec;
use crate::profile::FourierWidthProfile;
use crate::synthesis::{AnalysisSettings, OptimizerOptions};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Analyze,
    Synthesize,
    Verify,
}

impl Mode {
    pub fn needs_profile(self) -> bool {
        !matches!(self, Mode::Synthesize)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Touchstone,
    Csv,
    Svg,
    Report,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub mode: Mode,
    pub spec: FilterSpec,
    pub substrate: Substrate,
    pub profile: Option<FourierWidthProfile>,
    pub grid: AnalysisSettings,
    pub optimizer: OptimizerOptions,
    pub outputs: Vec<Output>,
}

impl JobConfig {
    /// Switches the job mode, re-checking the profile requirement.
    pub fn with_mode(mut self, mode: Mode) -> Result<Self> {
        self.mode = mode;
        self.check_profile()?;
        Ok(self)
    }

    fn check_profile(&self) -> Result<()> {
        match (&self.profile, self.mode.needs_profile()) {
            (None, true) => Err(Error::Validation(format!("mode {:?} requires a `profile`", self.mode))),
            (Some(_), false) => Err(Error::Validation("mode synthesize does not accept a `profile`".into())),
            (Some(p), true) => {
                p.validate().map_err(|e| Error::Validation(format!("profile: {e}")))?;
                if (p.d - self.spec.d).abs() > 1e-12 * self.spec.d {
                    return Err(Error::Validation(format!(
                        "profile.d_m = {} differs from spec.d_m = {}",
                        p.d, self.spec.d
                    )));
                }
                Ok(())
            }
            (None, false) => Ok(()),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubstrate {
    eps_r: f64,
    h_m: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    mode: Mode,
    spec: FilterSpec,
    substrate: RawSubstrate,
    profile: Option<FourierWidthProfile>,
    #[serde(default)]
    grid: AnalysisSettings,
    #[serde(default)]
    optimizer: OptimizerOptions,
    outputs: Option<Vec<Output>>,
}

/// Parses and validates a JSON job document.
pub fn parse_config(text: &str) -> Result<JobConfig> {
    let raw: RawJob = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let substrate = Substrate::new(raw.substrate.eps_r, raw.substrate.h_m)
        .map_err(|e| Error::Validation(format!("substrate: {e}")))?;
    raw.spec.validate(&substrate)?;
    let mut optimizer = raw.optimizer;
    optimizer.analysis = raw.grid;
    optimizer.validate()?;
    if raw.grid.n_points == 0 {
        return Err(Error::Validation("grid.n_points must be >= 1".into()));
    }
    let job = JobConfig {
        mode: raw.mode,
        spec: raw.spec,
        substrate,
        profile: raw.profile,
        grid: raw.grid,
        optimizer,
        outputs: raw
            .outputs
            .unwrap_or_else(|| vec![Output::Touchstone, Output::Csv, Output::Svg, Output::Report]),
    };
    job.check_profile()?;
    Ok(job)
}
