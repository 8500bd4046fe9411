//! Coefficient search for a lowpass profile.
//!
//! The port width condition is eliminated exactly (`c_0` is derived from the
//! free coefficients), the remaining mask and width limits enter as squared
//! penalties on negative margins. A rand/1/bin differential evolution runs
//! over the box of free coefficients; the best point can then be polished
//! with a bounded Nelder-Mead pass.
//!
//! Selection is feasibility first: a fixed quadratic penalty alone settles
//! slightly outside any active constraint, so infeasible candidates are
//! ranked by violation and behind all feasible ones (see [`Evaluation::score`]).

mod nelder_mead;

use crate::analysis::{
    analyze, choose_num_sections, DiscretizedLine, FrequencyGrid, SParameterSweep,
    DEFAULT_SECTIONS_PER_WAVELENGTH,
};
use crate::error::{Error, Result};
use crate::microstrip::{Substrate, WH_MAX, WH_MIN};
use crate::objective::{
    constraint_report, error_function, profile_with_end_width, ConstraintReport, FilterSpec,
    DEFAULT_Z_SAMPLES,
};
use crate::profile::FourierWidthProfile;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use nelder_mead::nelder_mead;

/// Base value returned for candidates whose width leaves the microstrip model window.
pub const WINDOW_PENALTY: f64 = 1e6;

/// Grid and discretization used to evaluate a design.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisSettings {
    pub n_points: usize,
    pub sections_per_wavelength: f64,
    pub z_samples: usize,
}

impl Default for AnalysisSettings {
    fn default() -> Self {
        Self {
            n_points: 120,
            sections_per_wavelength: DEFAULT_SECTIONS_PER_WAVELENGTH,
            z_samples: DEFAULT_Z_SAMPLES,
        }
    }
}

impl AnalysisSettings {
    pub fn grid(&self, spec: &FilterSpec) -> Result<FrequencyGrid> {
        FrequencyGrid::uniform(spec.f_max, self.n_points)
    }

    pub fn sections(&self, d: f64, f_max: f64, substrate: &Substrate) -> Result<usize> {
        choose_num_sections(d, f_max, substrate.eps_r, self.sections_per_wavelength)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PenaltyWeights {
    pub passband: f64,
    pub stopband: f64,
    pub transition: f64,
    pub width: f64,
}

impl Default for PenaltyWeights {
    fn default() -> Self {
        Self { passband: 10.0, stopband: 10.0, transition: 10.0, width: 100.0 }
    }
}

impl PenaltyWeights {
    /// Sum of `weight * max(0, -margin)^2`.
    pub fn penalty(&self, report: &ConstraintReport) -> f64 {
        let w = [self.passband, self.stopband, self.transition, self.width];
        w.iter()
            .zip(report.margins())
            .map(|(w, m)| if m < 0.0 { w * m * m } else { 0.0 })
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerOptions {
    pub order_n: usize,
    pub population: usize,
    pub max_evals: usize,
    pub rng_seed: u64,
    pub penalty_weights: PenaltyWeights,
    pub coeff_bounds: (f64, f64),
    /// Initial population is drawn from this fraction of the box, centered on it.
    pub init_spread: f64,
    pub local_refine: bool,
    pub mutation: f64,
    pub crossover: f64,
    pub analysis: AnalysisSettings,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            order_n: 5,
            population: 40,
            max_evals: 20_000,
            rng_seed: 42,
            penalty_weights: PenaltyWeights::default(),
            coeff_bounds: (-2.0, 2.0),
            init_spread: 0.25,
            local_refine: true,
            mutation: 0.7,
            crossover: 0.9,
            analysis: AnalysisSettings::default(),
        }
    }
}

impl OptimizerOptions {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Validation(msg));
        if self.order_n < 1 {
            return fail("order_n must be >= 1".into());
        }
        if self.population < 8 {
            return fail(format!("population = {} must be >= 8", self.population));
        }
        if self.max_evals <= self.population {
            return fail(format!(
                "max_evals = {} must exceed population = {}",
                self.max_evals, self.population
            ));
        }
        let (lo, hi) = self.coeff_bounds;
        if !(lo < hi) {
            return fail(format!("coeff_bounds ({lo}, {hi}) must satisfy lo < hi"));
        }
        if !(self.init_spread > 0.0 && self.init_spread <= 1.0) {
            return fail(format!("init_spread = {} must be in (0, 1]", self.init_spread));
        }
        if !(self.mutation > 0.0 && self.mutation <= 2.0) || !(0.0..=1.0).contains(&self.crossover) {
            return fail("mutation must be in (0, 2] and crossover in [0, 1]".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthesisResult {
    pub profile: FourierWidthProfile,
    pub error_value: f64,
    pub objective: f64,
    pub report: ConstraintReport,
    pub evals_used: usize,
    pub feasible: bool,
    pub history: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub objective: f64,
    /// `None` when the candidate left the model window and was not analyzed.
    pub scored: Option<(f64, ConstraintReport)>,
}

impl Evaluation {
    pub fn feasible(&self) -> bool {
        self.scored.is_some_and(|(_, r)| r.pass)
    }

    /// Ranking used by the search. Feasible candidates score their error;
    /// infeasible ones score one plus their weighted violation. The error
    /// never exceeds one, so any feasible candidate outranks every infeasible
    /// one, and infeasible candidates are driven towards the feasible set
    /// without regard to the error.
    pub fn score(&self) -> f64 {
        match self.scored {
            Some((_, report)) if report.pass => self.objective,
            Some((error, _)) => INFEASIBLE_OFFSET + (self.objective - error),
            None => INFEASIBLE_OFFSET + self.objective,
        }
    }
}

const INFEASIBLE_OFFSET: f64 = 1.0;

/// Everything needed to score a vector of free coefficients.
#[derive(Debug, Clone)]
pub struct Evaluator {
    spec: FilterSpec,
    substrate: Substrate,
    grid: FrequencyGrid,
    sections: usize,
    z_samples: usize,
    weights: PenaltyWeights,
    end_wh: f64,
}

impl Evaluator {
    pub fn new(
        spec: &FilterSpec,
        substrate: &Substrate,
        settings: &AnalysisSettings,
        weights: PenaltyWeights,
    ) -> Result<Self> {
        let grid = settings.grid(spec)?;
        Ok(Self {
            spec: *spec,
            substrate: *substrate,
            sections: settings.sections(spec.d, grid.f_max(), substrate)?,
            grid,
            z_samples: settings.z_samples,
            weights,
            end_wh: spec.end_width(substrate)?,
        })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn sections(&self) -> usize {
        self.sections
    }

    pub fn profile(&self, free: &[f64]) -> Result<FourierWidthProfile> {
        profile_with_end_width(free, self.end_wh, self.spec.d)
    }

    /// Summed log-distance of sampled widths outside the model window.
    fn window_excess(&self, profile: &FourierWidthProfile) -> f64 {
        let dz = profile.d / self.sections as f64;
        let mids = (0..self.sections).map(|k| (k as f64 + 0.5) * dz);
        let last = (self.z_samples.max(2) - 1) as f64;
        let samples = (0..self.z_samples.max(2)).map(|i| profile.d * i as f64 / last);
        let (lo, hi) = (WH_MIN.ln(), WH_MAX.ln());
        mids.chain(samples)
            .map(|z| {
                let lw = profile.log_width(z);
                (lo - lw).max(0.0) + (lw - hi).max(0.0)
            })
            .sum()
    }

    pub fn analyze(&self, profile: &FourierWidthProfile) -> Result<SParameterSweep> {
        DiscretizedLine::new(profile, &self.substrate, self.sections)?.sweep(&self.grid, self.spec.z0)
    }

    pub fn evaluate(&self, free: &[f64]) -> Result<Evaluation> {
        let profile = self.profile(free)?;
        let excess = self.window_excess(&profile);
        if excess > 0.0 {
            return Ok(Evaluation { objective: WINDOW_PENALTY + excess, scored: None });
        }
        let sweep = self.analyze(&profile)?;
        let error = error_function(&sweep, &self.spec)?;
        let report = constraint_report(&sweep, &profile, &self.spec, self.z_samples)?;
        Ok(Evaluation { objective: error + self.weights.penalty(&report), scored: Some((error, report)) })
    }
}

/// Error function plus weighted squared constraint violations, using the
/// default grid and discretization.
pub fn penalized_objective(
    free: &[f64],
    spec: &FilterSpec,
    substrate: &Substrate,
    weights: &PenaltyWeights,
) -> Result<f64> {
    let eval = Evaluator::new(spec, substrate, &AnalysisSettings::default(), *weights)?;
    Ok(eval.evaluate(free)?.objective)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub sweep: SParameterSweep,
    pub error_value: f64,
    pub report: ConstraintReport,
}

/// Analyzes an arbitrary profile and checks it against `spec`.
pub fn verify(
    profile: &FourierWidthProfile,
    spec: &FilterSpec,
    substrate: &Substrate,
    settings: &AnalysisSettings,
) -> Result<Verification> {
    let grid = settings.grid(spec)?;
    let m = settings.sections(profile.d, grid.f_max(), substrate)?;
    let sweep = analyze(profile, substrate, &grid, spec.z0, m)?;
    let error_value = error_function(&sweep, spec)?;
    let report = constraint_report(&sweep, profile, spec, settings.z_samples)?;
    Ok(Verification { sweep, error_value, report })
}

const STALL_GENERATIONS: usize = 20;
const STALL_TOLERANCE: f64 = 1e-5;

pub fn synthesize(
    spec: &FilterSpec,
    substrate: &Substrate,
    options: &OptimizerOptions,
) -> Result<SynthesisResult> {
    options.validate()?;
    spec.validate(substrate)?;
    let evaluator = Evaluator::new(spec, substrate, &options.analysis, options.penalty_weights)?;
    let dim = 2 * options.order_n;
    // surfaces grid problems before the search starts
    evaluator.evaluate(&vec![0.0; dim])?;

    let (lo, hi) = options.coeff_bounds;
    let np = options.population;
    let mut rng = ChaCha8Rng::seed_from_u64(options.rng_seed);
    let mut evals = 0usize;

    let score = |batch: &[Vec<f64>]| -> Result<Vec<Evaluation>> {
        batch.par_iter().map(|x| evaluator.evaluate(x)).collect()
    };

    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo) * options.init_spread;
    let mut pop: Vec<Vec<f64>> = (0..np)
        .map(|_| (0..dim).map(|_| rng.gen_range(mid - half..=mid + half)).collect())
        .collect();
    let mut fit = score(&pop)?;
    evals += np;

    let best_of = |fit: &[Evaluation]| {
        (0..fit.len())
            .min_by(|&a, &b| fit[a].score().total_cmp(&fit[b].score()))
            .unwrap()
    };
    let mut best = best_of(&fit);
    let mut history = vec![fit[best].score()];

    while evals + np <= options.max_evals {
        let trials: Vec<Vec<f64>> = (0..np)
            .map(|i| {
                let [r1, r2, r3] = distinct_others(&mut rng, np, i);
                let forced = rng.gen_range(0..dim);
                (0..dim)
                    .map(|j| {
                        if j == forced || rng.gen::<f64>() < options.crossover {
                            let v = pop[r1][j] + options.mutation * (pop[r2][j] - pop[r3][j]);
                            v.clamp(lo, hi)
                        } else {
                            pop[i][j]
                        }
                    })
                    .collect()
            })
            .collect();
        let trial_fit = score(&trials)?;
        evals += np;
        for (i, (x, f)) in trials.into_iter().zip(trial_fit).enumerate() {
            if f.score() <= fit[i].score() {
                pop[i] = x;
                fit[i] = f;
            }
        }
        best = best_of(&fit);
        history.push(fit[best].score());

        let g = history.len();
        if fit[best].feasible()
            && g > STALL_GENERATIONS
            && history[g - 1 - STALL_GENERATIONS] - history[g - 1] < STALL_TOLERANCE
        {
            break;
        }
    }

    let mut best_x = pop[best].clone();
    let mut best_eval = fit[best];

    if options.local_refine && evals < options.max_evals {
        let budget = options.max_evals - evals;
        let mut failure = None;
        let refined = nelder_mead(
            |x| match evaluator.evaluate(x) {
                Ok(e) => e.score(),
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::INFINITY
                }
            },
            &best_x,
            best_eval.score(),
            (lo, hi),
            0.05 * (hi - lo),
            budget,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        evals += refined.evals;
        if refined.value < best_eval.score() {
            best_eval = evaluator.evaluate(&refined.point)?;
            best_x = refined.point;
            history.push(best_eval.score());
        }
    }

    let profile = evaluator.profile(&best_x)?;
    let Some((error_value, report)) = best_eval.scored else {
        return Err(Error::Validation(
            "no candidate stayed inside the microstrip model window; tighten coeff_bounds".into(),
        ));
    };
    Ok(SynthesisResult {
        profile,
        error_value,
        objective: best_eval.objective,
        report,
        evals_used: evals,
        feasible: report.pass,
        history,
    })
}

fn distinct_others(rng: &mut ChaCha8Rng, n: usize, exclude: usize) -> [usize; 3] {
    let mut picked = [usize::MAX; 3];
    let mut k = 0;
    while k < 3 {
        let r = rng.gen_range(0..n);
        if r != exclude && !picked[..k].contains(&r) {
            picked[k] = r;
            k += 1;
        }
    }
    picked
}
