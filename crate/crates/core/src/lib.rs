//! Microstrip nonuniform transmission lines as lowpass filters.
//!
//! * [`microstrip`]: quasi-TEM width to impedance map.
//! * [`profile`]: log-width Fourier series.
//! * [`network`] and [`analysis`]: chain-matrix cascade and S-parameters.
//! * [`objective`]: lowpass mask, error function, constraint margins.
//! * [`synthesis`]: penalized differential-evolution search.
//! * [`io`]: JSON job files, Touchstone, CSV and SVG writers.

pub mod analysis;
pub mod error;
pub mod io;
pub mod job;
pub mod microstrip;
pub mod network;
pub mod objective;
pub mod profile;
pub mod synthesis;

pub use analysis::{analyze, cascade_abcd, choose_num_sections, FrequencyGrid, SParameterSweep, SweepPoint};
pub use error::{Error, Result};
pub use microstrip::{characteristic_impedance, effective_permittivity, width_for_impedance, LineSection, Substrate};
pub use network::{s_parameters, section_abcd, AbcdMatrix};
pub use objective::{constraint_report, enforce_end_width, error_function, transition_bound_db, ConstraintReport, FilterSpec};
pub use profile::{evaluate_profile, FourierWidthProfile};
pub use synthesis::{penalized_objective, synthesize, verify, AnalysisSettings, OptimizerOptions, SynthesisResult};
