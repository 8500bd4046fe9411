//! Runs a parsed job and writes its artifacts.

use crate::analysis::SParameterSweep;
use crate::error::Result;
use crate::io::{geometry_svg, profile_csv, touchstone, JobConfig, Mode, Output};
use crate::objective::ConstraintReport;
use crate::profile::FourierWidthProfile;
use crate::synthesis::{synthesize, verify, SynthesisResult};
use serde::Serialize;
use std::path::{Path, PathBuf};

const CSV_SAMPLES: usize = 1001;

#[derive(Debug, Clone)]
pub struct JobOutcome {
    pub mode: Mode,
    pub profile: FourierWidthProfile,
    pub error_value: f64,
    pub report: ConstraintReport,
    pub synthesis: Option<SynthesisResult>,
    pub written: Vec<PathBuf>,
}

impl JobOutcome {
    /// Process exit status: 0 ok, 2 for a failed verify or infeasible synthesis.
    pub fn exit_code(&self) -> i32 {
        match self.mode {
            Mode::Analyze => 0,
            Mode::Verify | Mode::Synthesize if self.report.pass => 0,
            _ => 2,
        }
    }
}

#[derive(Serialize)]
struct AnalysisReport<'a> {
    mode: &'static str,
    profile: &'a FourierWidthProfile,
    error_value: f64,
    report: &'a ConstraintReport,
    sections: usize,
}

pub fn run(job: &JobConfig, out_dir: &Path, stem: &str) -> Result<JobOutcome> {
    let (profile, sweep, error_value, report, synthesis) = match job.mode {
        Mode::Synthesize => {
            let result = synthesize(&job.spec, &job.substrate, &job.optimizer)?;
            let check = verify(&result.profile, &job.spec, &job.substrate, &job.grid)?;
            (result.profile.clone(), check.sweep, result.error_value, result.report, Some(result))
        }
        Mode::Analyze | Mode::Verify => {
            let profile = job.profile.clone().expect("profile presence checked at parse time");
            let check = verify(&profile, &job.spec, &job.substrate, &job.grid)?;
            (profile, check.sweep, check.error_value, check.report, None)
        }
    };

    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    for output in &job.outputs {
        let (name, body) = match output {
            Output::Touchstone => (format!("{stem}.s2p"), touchstone(&sweep)?),
            Output::Csv => (format!("{stem}_profile.csv"), profile_csv(&profile, &job.substrate, CSV_SAMPLES)?),
            Output::Svg => (format!("{stem}_geometry.svg"), geometry_svg(&profile, &job.substrate)),
            Output::Report => (format!("{stem}_report.json"), report_json(job, &profile, &sweep, error_value, &report, synthesis.as_ref())?),
        };
        let path = out_dir.join(name);
        std::fs::write(&path, body)?;
        written.push(path);
    }
    Ok(JobOutcome { mode: job.mode, profile, error_value, report, synthesis, written })
}

fn report_json(
    job: &JobConfig,
    profile: &FourierWidthProfile,
    sweep: &SParameterSweep,
    error_value: f64,
    report: &ConstraintReport,
    synthesis: Option<&SynthesisResult>,
) -> Result<String> {
    let sections = job.grid.sections(profile.d, sweep.entries.last().map_or(job.spec.f_max, |e| e.f), &job.substrate)?;
    let mut text = match synthesis {
        Some(result) => serde_json::to_string_pretty(result),
        None => serde_json::to_string_pretty(&AnalysisReport {
            mode: if job.mode == Mode::Analyze { "analyze" } else { "verify" },
            profile,
            error_value,
            report,
            sections,
        }),
    }
    .expect("report types serialize");
    text.push('\n');
    Ok(text)
}
