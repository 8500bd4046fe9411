mod config;
mod csv;
mod svg;
mod touchstone;

pub use config::{parse_config, JobConfig, Mode, Output};
pub use csv::{profile_csv, write_profile_csv};
pub use svg::{geometry_svg, write_geometry_svg};
pub use touchstone::{parse_touchstone, touchstone, write_touchstone};

/// Comment line carried by every emitted text artifact.
pub(crate) fn tool_banner() -> String {
    format!("ntlf {}", env!("CARGO_PKG_VERSION"))
}
