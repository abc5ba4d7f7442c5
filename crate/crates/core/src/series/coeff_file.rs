use std::io::Write;
use std::path::Path;

use super::C64;
use crate::error::{Error, Result};

/// Parses one `re im` pair per line, index order `0..N`. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_coefficients(text: &str) -> Result<Vec<C64>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(re), Some(im), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Format {
                line: i + 1,
                reason: "expected exactly two fields `re im`".into(),
            });
        };
        let parse = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::Format {
                    line: i + 1,
                    reason: format!("`{s}` is not a finite number"),
                })
        };
        out.push(C64::new(parse(re)?, parse(im)?));
    }
    if out.is_empty() {
        return Err(Error::Format {
            line: 0,
            reason: "no coefficients".into(),
        });
    }
    Ok(out)
}

pub fn read_coefficients(path: impl AsRef<Path>) -> Result<Vec<C64>> {
    parse_coefficients(&std::fs::read_to_string(path)?)
}

pub fn write_coefficients(mut w: impl Write, coeffs: &[C64]) -> Result<()> {
    for c in coeffs {
        writeln!(w, "{:e} {:e}", c.re, c.im)?;
    }
    Ok(())
}
