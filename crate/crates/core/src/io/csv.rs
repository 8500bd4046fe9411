use crate::error::{Error, Result};
use crate::microstrip::Substrate;
use crate::profile::FourierWidthProfile;
use std::fmt::Write as _;
use std::path::Path;

/// Width, impedance and effective permittivity along the line, `samples`
/// rows at uniform z including both ends.
pub fn profile_csv(profile: &FourierWidthProfile, substrate: &Substrate, samples: usize) -> Result<String> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 samples, got {samples}")));
    }
    let mut out = String::from("z_m,w_over_h,z0_ohms,eps_eff\n");
    for (z, wh) in profile.sample(samples) {
        let section = substrate.section(wh)?;
        writeln!(out, "{z},{wh},{},{}", section.z0, section.eps_eff).unwrap();
    }
    Ok(out)
}

pub fn write_profile_csv(
    profile: &FourierWidthProfile,
    substrate: &Substrate,
    samples: usize,
    path: impl AsRef<Path>,
) -> Result<()> {
    std::fs::write(path, profile_csv(profile, substrate, samples)?)?;
    Ok(())
}
