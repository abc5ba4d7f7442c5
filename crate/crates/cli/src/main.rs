use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use volterra_core::carleson::{ball_density_profile, box_density_profile, ray_ladder, WeightDensity};
use volterra_core::essnorm::{bergman_essnorm_estimate, hardy_essnorm_estimate, EssnormConfig};
use volterra_core::norms::{bergman_norm, bloch_seminorm, bp_seminorm, hardy_norm, hardy_norm_symbol};
use volterra_core::report::{essnorm_summary, profile_summary, write_essnorm_csv, write_profile_csv};
use volterra_core::verify::{identity_suite, VerifyConfig};
use volterra_core::{scenarios, DensityProfile, PowerSeries, SymbolSpec, C64};

mod config;

use config::Shared;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] volterra_core::Error),
    #[error("{0}")]
    Failed(String),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use volterra_core::Error as E;
        match self {
            CliError::Failed(_) => 1,
            CliError::Core(E::Accuracy { .. } | E::Cap(_)) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "volterra",
    version,
    about = "Volterra-type operators on Hardy and Bergman spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the coefficient identity suite.
    Verify,
    /// Compute a norm or seminorm of the symbol.
    Norm {
        #[arg(long, value_enum, default_value = "hardy")]
        space: NormSpace,
    },
    /// Carleson density profile of mu_(g,n,p) (box) or mu_n (ball).
    Carleson {
        #[arg(value_enum)]
        kind: RegionKind,
    },
    /// Kernel and density profiles for the essential norm.
    Essnorm {
        #[arg(value_enum)]
        space: EssSpace,
    },
    /// Run the curated worked examples.
    Paper,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NormSpace {
    Hardy,
    Bergman,
    Bloch,
    Bp,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RegionKind {
    Box,
    Ball,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EssSpace {
    Hardy,
    Bergman,
}

fn write_out(
    path: Option<&Path>,
    body: impl FnOnce(&mut dyn Write) -> volterra_core::Result<()>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w)?;
        }
    }
    Ok(())
}

fn verify(s: &Shared) -> Result<(), CliError> {
    let mut cfg = VerifyConfig {
        seed: s.seed(),
        p: s.p(),
        ..VerifyConfig::default()
    };
    if let Some(t) = s.trials {
        cfg.trials = t;
    }
    let f = s.f()?;
    let g = s.symbol_or_none()?;
    if f.is_some() || g.is_some() {
        let f = f.unwrap_or_else(|| PowerSeries::constant(C64::new(1.0, 0.0)));
        let g = g.unwrap_or_else(|| SymbolSpec::monomial(1));
        let g = g.series(s.degree.unwrap_or(cfg.max_degree))?;
        cfg.configured = Some((f, g, s.n()));
    }
    let results = identity_suite(&cfg)?;
    let mut failed = Vec::new();
    for c in &results {
        println!(
            "{:<22} max deviation {:.3e}  tol {:.0e}  {}",
            c.name,
            c.max_deviation,
            c.tolerance,
            if c.passed() { "ok" } else { "FAIL" }
        );
        if !c.passed() {
            failed.push(c.name);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("check failed: {}", failed.join(", "))))
    }
}

fn norm(s: &Shared, space: NormSpace) -> Result<(), CliError> {
    let params = s.params()?;
    let sym = s.symbol()?;
    let g = sym.series(params.degree)?;
    let p = s.p();
    match space {
        NormSpace::Hardy => {
            let est = if sym.is_polynomial() {
                hardy_norm(&g, p, &params)?
            } else {
                hardy_norm_symbol(&sym, p, &params)?
            };
            println!("H^{p} norm:      {:.12}", est.value);
            println!("radius:         {}", est.radius);
            match est.tail_bound {
                Some(t) => println!("tail bound:     {t:.3e}"),
                None => println!("tail bound:     unavailable"),
            }
        }
        NormSpace::Bergman => {
            let alpha = s.alpha();
            let est = bergman_norm(&g, p, alpha, &params)?;
            println!("A^{p}_{alpha} norm: {:.12}", est.value);
            println!("radius:         {}", est.radius);
        }
        NormSpace::Bloch => {
            let sup = bloch_seminorm(&g, &params);
            println!("Bloch seminorm: {:.12}", sup.value);
            println!("attained near:  {:.6}{:+.6}i", sup.at.re, sup.at.im);
        }
        NormSpace::Bp => {
            let rep = bp_seminorm(&g, p, &params)?;
            println!("B_{p} grid sup:   {:.12}", rep.sup.value);
            println!("attained near:  {:.6}{:+.6}i", rep.sup.at.re, rep.sup.at.im);
            println!("growth exponent: {:.6}", rep.growth_exponent);
            if let Some(out) = &s.out {
                write_out(Some(out), |w| write_profile_csv(w, &rep.rings))?;
            } else {
                for pt in rep.rings.points() {
                    println!("  1-r = {:.6e}  ring max {:.9e}", pt.scale, pt.density);
                }
            }
        }
    }
    Ok(())
}

fn emit_profile(s: &Shared, prof: &DensityProfile) -> Result<(), CliError> {
    write_out(s.out.as_deref(), |w| write_profile_csv(w, prof))?;
    print!("{}", profile_summary(prof));
    Ok(())
}

fn carleson(s: &Shared, kind: RegionKind) -> Result<(), CliError> {
    let params = s.params()?;
    let sym = s.symbol()?;
    match kind {
        RegionKind::Box => {
            let w = WeightDensity::hardy(sym, s.n(), s.p())?;
            emit_profile(s, &box_density_profile(&w, s.levels(), &params)?)
        }
        RegionKind::Ball => {
            let w = WeightDensity::bergman(sym, s.n(), s.q(), s.beta())?;
            let exponent = s.q() * (2.0 + s.alpha()) / s.p();
            let ladder = ray_ladder(s.angle(), 2..=s.levels() + 1);
            let prof = ball_density_profile(&w, s.radius.unwrap_or(0.5), exponent, &ladder, &params)?;
            emit_profile(s, &prof)
        }
    }
}

fn essnorm(s: &Shared, space: EssSpace) -> Result<(), CliError> {
    let cfg = EssnormConfig {
        levels: s.levels(),
        ball_radius: s.radius.unwrap_or(0.5),
        params: s.params()?,
        ..EssnormConfig::default()
    };
    let g = s.symbol()?;
    let report = match space {
        EssSpace::Hardy => hardy_essnorm_estimate(&g, s.n(), s.p(), &cfg)?,
        EssSpace::Bergman => bergman_essnorm_estimate(&g, s.n(), s.p(), s.q(), s.alpha(), s.beta(), &cfg)?,
    };
    write_out(s.out.as_deref(), |w| write_essnorm_csv(w, &report))?;
    print!("{}", essnorm_summary(&report));
    if report.coherent {
        Ok(())
    } else {
        Err(CliError::Failed("kernel and density verdicts disagree".into()))
    }
}

fn paper(s: &Shared) -> Result<(), CliError> {
    let names: Vec<&str> = match &s.only {
        Some(name) if scenarios::SCENARIOS.contains(&name.as_str()) => vec![name.as_str()],
        Some(name) => {
            return Err(CliError::Usage(format!(
                "unknown scenario `{name}` (known: {})",
                scenarios::SCENARIOS.join(", ")
            )))
        }
        None => scenarios::SCENARIOS.to_vec(),
    };
    let mut failed = Vec::new();
    for name in names {
        let out = scenarios::run(name, s.seed()).expect("listed scenario")?;
        println!("== {} [{}]", out.name, if out.passed { "pass" } else { "FAIL" });
        for line in &out.lines {
            println!("  {line}");
        }
        if !out.passed {
            failed.push(out.name);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("scenario failed: {}", failed.join(", "))))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let s = cli.shared.resolve()?;
    match cli.command {
        Command::Verify => verify(&s),
        Command::Norm { space } => norm(&s, space),
        Command::Carleson { kind } => carleson(&s, kind),
        Command::Essnorm { space } => essnorm(&s, space),
        Command::Paper => paper(&s),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
