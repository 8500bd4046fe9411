//! Top view of the strip outline at true aspect ratio.

use crate::error::Result;
use crate::microstrip::Substrate;
use crate::profile::FourierWidthProfile;
use std::fmt::Write as _;
use std::path::Path;

const SAMPLES: usize = 1001;
const DRAW_WIDTH: f64 = 1000.0;
const MARGIN: f64 = 40.0;

pub fn geometry_svg(profile: &FourierWidthProfile, substrate: &Substrate) -> String {
    let samples = profile.sample(SAMPLES);
    let scale = DRAW_WIDTH / profile.d; // px per meter
    let half_max = samples.iter().map(|&(_, wh)| wh).fold(0.0, f64::max) * substrate.h * scale / 2.0;
    let center = MARGIN + half_max;
    let height = 2.0 * half_max + 2.0 * MARGIN + 30.0;
    let width = DRAW_WIDTH + 2.0 * MARGIN;

    let x = |z: f64| MARGIN + z * scale;
    let mut points = Vec::with_capacity(2 * SAMPLES);
    for &(z, wh) in &samples {
        points.push(format!("{:.3},{:.3}", x(z), center - wh * substrate.h * scale / 2.0));
    }
    for &(z, wh) in samples.iter().rev() {
        points.push(format!("{:.3},{:.3}", x(z), center + wh * substrate.h * scale / 2.0));
    }

    // scale bar: a tenth of the line length
    let bar_m = profile.d / 10.0;
    let bar_y = height - 15.0;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.3}" viewBox="0 0 {width:.0} {height:.3}">"#
    )
    .unwrap();
    writeln!(out, "<!-- {} -->", super::tool_banner()).unwrap();
    writeln!(out, r##"<polygon id="strip" fill="#b87333" stroke="black" stroke-width="0.5" points="{}"/>"##, points.join(" ")).unwrap();
    writeln!(
        out,
        r#"<line id="scale" x1="{:.3}" y1="{bar_y:.3}" x2="{:.3}" y2="{bar_y:.3}" stroke="black" stroke-width="2"/>"#,
        MARGIN,
        MARGIN + bar_m * scale
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12">{} mm</text>"#,
        MARGIN + bar_m * scale + 8.0,
        bar_y + 4.0,
        bar_m * 1e3
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

pub fn write_geometry_svg(
    profile: &FourierWidthProfile,
    substrate: &Substrate,
    path: impl AsRef<Path>,
) -> Result<()> {
    std::fs::write(path, geometry_svg(profile, substrate))?;
    Ok(())
}
