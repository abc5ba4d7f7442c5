//! CSV serialization and text summaries of profiles and reports.

use std::fmt::Write as _;
use std::io::Write;

use crate::error::{Error, Result};
use crate::essnorm::EssentialNormReport;
use crate::profile::{DensityProfile, ProfilePoint};

pub const PROFILE_HEADER: &str = "scale,density,region_id,tail_estimate";
pub const RATIO_HEADER: &str = "scale,ratio";

fn write_rows(w: &mut impl Write, profile: &DensityProfile) -> Result<()> {
    writeln!(w, "{PROFILE_HEADER}")?;
    for p in profile.points() {
        writeln!(
            w,
            "{:.12e},{:.12e},{},{:.12e}",
            p.scale, p.density, p.region_id, p.tail_estimate
        )?;
    }
    Ok(())
}

pub fn write_profile_csv(mut w: impl Write, profile: &DensityProfile) -> Result<()> {
    write_rows(&mut w, profile)
}

/// Kernel block, Carleson block and ratio block, each introduced by a
/// `# name` line.
pub fn write_essnorm_csv(mut w: impl Write, report: &EssentialNormReport) -> Result<()> {
    writeln!(w, "# kernel")?;
    write_rows(&mut w, &report.kernel_profile)?;
    writeln!(w, "# carleson")?;
    write_rows(&mut w, &report.carleson_profile)?;
    writeln!(w, "# ratio")?;
    writeln!(w, "{RATIO_HEADER}")?;
    for (p, r) in report.kernel_profile.points().iter().zip(&report.ratios) {
        match r {
            Some(r) => writeln!(w, "{:.12e},{:.12e}", p.scale, r)?,
            None => writeln!(w, "{:.12e},", p.scale)?,
        }
    }
    Ok(())
}

/// Parses the rows written by [`write_profile_csv`].
pub fn parse_profile_csv(text: &str) -> Result<DensityProfile> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == PROFILE_HEADER => {}
        _ => {
            return Err(Error::Format {
                line: 1,
                reason: format!("expected header `{PROFILE_HEADER}`"),
            })
        }
    }
    let mut points = Vec::new();
    for (i, line) in lines {
        let bad = |reason: &str| Error::Format {
            line: i + 1,
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(bad("expected four fields"));
        }
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
        points.push(ProfilePoint {
            scale: num(fields[0])?,
            density: num(fields[1])?,
            region_id: fields[2].to_string(),
            tail_estimate: num(fields[3])?,
        });
    }
    DensityProfile::new(points)
}

pub fn profile_summary(profile: &DensityProfile) -> String {
    let fit = profile.fit();
    let mut s = String::new();
    let _ = writeln!(s, "ladder points:  {}", profile.points().len());
    let _ = writeln!(s, "fitted slope:   {:.6}", fit.slope);
    let _ = writeln!(s, "fit residual:   {:.6}", fit.residual);
    let _ = writeln!(
        s,
        "tail maximum:   {:.6e}",
        profile.tail_max(crate::essnorm::TAIL_POINTS)
    );
    let _ = writeln!(s, "verdict:        {}", profile.verdict());
    s
}

pub fn essnorm_summary(report: &EssentialNormReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "kernel profile:   slope {:.6}, residual {:.6}, limsup surrogate {:.6e}, {}",
        report.kernel_profile.slope(),
        report.kernel_profile.fit().residual,
        report.kernel_limsup,
        report.kernel_verdict
    );
    let _ = writeln!(
        s,
        "density profile:  slope {:.6}, residual {:.6}, limsup surrogate {:.6e}, {}",
        report.carleson_profile.slope(),
        report.carleson_profile.fit().residual,
        report.carleson_limsup,
        report.carleson_verdict
    );
    match report.ratio_spread() {
        Some(x) => {
            let _ = writeln!(
                s,
                "ratio spread:     {x:.4} over the last {} points",
                crate::essnorm::TAIL_POINTS
            );
        }
        None => {
            let _ = writeln!(s, "ratio spread:     undefined (zero densities)");
        }
    }
    let _ = writeln!(s, "verdict:          {}", report.compactness);
    let _ = writeln!(s, "coherent:         {}", if report.coherent { "yes" } else { "no" });
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_round_trip() {
        let prof = DensityProfile::from_pairs(&[0.5, 0.25, 0.125], &[1.0, 0.5, 1.0 / 3.0]).unwrap();
        let mut buf = Vec::new();
        write_profile_csv(&mut buf, &prof).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(PROFILE_HEADER));
        let back = parse_profile_csv(&text).unwrap();
        for (a, b) in back.points().iter().zip(prof.points()) {
            assert!((a.density - b.density).abs() <= 1e-12 * b.density);
            assert_eq!(a.scale, b.scale);
            assert_eq!(a.region_id, b.region_id);
        }
    }

    #[test]
    fn rejects_missing_header() {
        assert!(parse_profile_csv("0.5,1,a,0\n0.25,1,b,0\n").is_err());
    }
}
