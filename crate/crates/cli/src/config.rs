//! Run configuration: command-line flags merged over a `key = value` file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use volterra_core::norms::NormParams;
use volterra_core::series::read_coefficients;
use volterra_core::{PowerSeries, SymbolSpec, C64};

use crate::CliError;

pub const KEYS: [&str; 18] = [
    "symbol", "gprime", "coeffs", "n", "p", "q", "alpha", "beta", "N", "M", "r_max", "levels", "radius", "angle",
    "trials", "seed", "out", "only",
];

#[derive(Debug, Clone, Default, Args)]
pub struct Shared {
    /// Plain-text `key = value` file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Symbol g: monomial:K, log, pow:GAMMA, poly:c0,c1,..., or file:PATH.
    #[arg(long, global = true)]
    pub symbol: Option<String>,
    /// Symbol given through its derivative: pow:GAMMA means g' = (1-z)^-GAMMA.
    #[arg(long, global = true)]
    pub gprime: Option<String>,
    /// Coefficient file for f (one `re im` pair per line).
    #[arg(long, global = true)]
    pub coeffs: Option<PathBuf>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub p: Option<f64>,
    #[arg(long, global = true)]
    pub q: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Truncation degree for non-polynomial symbols.
    #[arg(long = "N", global = true)]
    pub degree: Option<usize>,
    /// Initial number of samples per circle.
    #[arg(long = "M", global = true)]
    pub samples: Option<usize>,
    /// Boundary radius cap.
    #[arg(long = "r-max", global = true)]
    pub r_max: Option<f64>,
    /// Ladder depth.
    #[arg(long, global = true)]
    pub levels: Option<u32>,
    /// Bergman ball radius factor.
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// Angle of the ray carrying ball centres.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub angle: Option<f64>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output path for CSV data.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Run a single scenario.
    #[arg(long, global = true)]
    pub only: Option<String>,
}

fn param(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| param(format!("config line {}: expected `key = value`", i + 1)))?;
        let k = k.trim().replace('-', "_");
        let k = match k.as_str() {
            "degree" => "N".to_string(),
            "samples" => "M".to_string(),
            _ => k,
        };
        if !KEYS.contains(&k.as_str()) {
            return Err(param(format!("config line {}: unknown key `{k}`", i + 1)));
        }
        map.insert(k, v.trim().to_string());
    }
    Ok(map)
}

fn merge<T: FromStr>(flag: Option<T>, file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    file.get(key)
        .map(|v| {
            v.parse::<T>()
                .map_err(|_| param(format!("config value `{v}` for `{key}` is invalid")))
        })
        .transpose()
}

impl Shared {
    /// Fills every unset flag from the config file, if one was given.
    pub fn resolve(self) -> Result<Shared, CliError> {
        let Some(path) = &self.config else {
            return Ok(self);
        };
        let text =
            std::fs::read_to_string(path).map_err(|e| param(format!("cannot read config {}: {e}", path.display())))?;
        let f = parse_config_file(&text)?;
        Ok(Shared {
            config: self.config.clone(),
            symbol: merge(self.symbol, &f, "symbol")?,
            gprime: merge(self.gprime, &f, "gprime")?,
            coeffs: merge(self.coeffs, &f, "coeffs")?,
            n: merge(self.n, &f, "n")?,
            p: merge(self.p, &f, "p")?,
            q: merge(self.q, &f, "q")?,
            alpha: merge(self.alpha, &f, "alpha")?,
            beta: merge(self.beta, &f, "beta")?,
            degree: merge(self.degree, &f, "N")?,
            samples: merge(self.samples, &f, "M")?,
            r_max: merge(self.r_max, &f, "r_max")?,
            levels: merge(self.levels, &f, "levels")?,
            radius: merge(self.radius, &f, "radius")?,
            angle: merge(self.angle, &f, "angle")?,
            trials: merge(self.trials, &f, "trials")?,
            seed: merge(self.seed, &f, "seed")?,
            out: merge(self.out, &f, "out")?,
            only: merge(self.only, &f, "only")?,
        })
    }

    pub fn params(&self) -> Result<NormParams, CliError> {
        let mut params = match self.r_max {
            Some(r) => NormParams::with_r_max(r),
            None => NormParams::default(),
        };
        if let Some(m) = self.samples {
            params.samples = m;
        }
        if let Some(n) = self.degree {
            params.degree = n;
        }
        params.validate()?;
        Ok(params)
    }

    pub fn n(&self) -> usize {
        self.n.unwrap_or(1)
    }

    pub fn p(&self) -> f64 {
        self.p.unwrap_or(2.0)
    }

    pub fn q(&self) -> f64 {
        self.q.unwrap_or(2.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(0.0)
    }

    pub fn beta(&self) -> f64 {
        self.beta.unwrap_or(0.0)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn levels(&self) -> u32 {
        self.levels.unwrap_or(8)
    }

    pub fn angle(&self) -> f64 {
        self.angle.unwrap_or(0.0)
    }

    /// The symbol from `--symbol` or `--gprime`; exactly one must be set.
    pub fn symbol(&self) -> Result<SymbolSpec, CliError> {
        match (&self.symbol, &self.gprime) {
            (Some(s), None) => parse_symbol(s),
            (None, Some(s)) => parse_gprime(s),
            (Some(_), Some(_)) => Err(param("give either --symbol or --gprime, not both")),
            (None, None) => Err(param("a symbol is required (--symbol or --gprime)")),
        }
    }

    pub fn symbol_or_none(&self) -> Result<Option<SymbolSpec>, CliError> {
        if self.symbol.is_none() && self.gprime.is_none() {
            Ok(None)
        } else {
            self.symbol().map(Some)
        }
    }

    pub fn f(&self) -> Result<Option<PowerSeries>, CliError> {
        self.coeffs
            .as_deref()
            .map(|p| Ok(PowerSeries::from_coeffs(read_coefficients(p)?)?))
            .transpose()
    }
}

fn number<T: FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.trim().parse().map_err(|_| param(format!("invalid {what} `{s}`")))
}

pub fn parse_symbol(spec: &str) -> Result<SymbolSpec, CliError> {
    let (family, arg) = match spec.split_once(':') {
        Some((f, a)) => (f, Some(a)),
        None => (spec, None),
    };
    let need = |what: &str| arg.ok_or_else(|| param(format!("symbol `{family}` needs a parameter ({what})")));
    let sym = match family {
        "monomial" => SymbolSpec::monomial(number(need("degree")?, "degree")?),
        "z" => SymbolSpec::monomial(1),
        "zero" => SymbolSpec::zero(),
        "log" => SymbolSpec::LogOneMinusZ,
        "pow" => SymbolSpec::PowOneMinusZ {
            gamma: number(need("gamma")?, "gamma")?,
        },
        "poly" => {
            let c = need("coefficients")?
                .split(',')
                .map(|x| number::<f64>(x, "coefficient").map(|v| C64::new(v, 0.0)))
                .collect::<Result<Vec<_>, _>>()?;
            SymbolSpec::Polynomial(c)
        }
        "file" => SymbolSpec::Explicit(read_coefficients(Path::new(need("path")?))?),
        _ => return Err(param(format!("unknown symbol family `{family}`"))),
    };
    sym.validate()?;
    Ok(sym)
}

pub fn parse_gprime(spec: &str) -> Result<SymbolSpec, CliError> {
    match spec.split_once(':') {
        Some(("pow", g)) => {
            let sym = SymbolSpec::PowDerivative {
                gamma: number(g, "gamma")?,
            };
            sym.validate()?;
            Ok(sym)
        }
        _ => Err(param(format!(
            "unknown derivative family `{spec}` (expected pow:GAMMA)"
        ))),
    }
}
