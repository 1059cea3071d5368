//! Command dispatch for the `hinv` binary. Argument parsing lives in the binary; this
//! module turns a [`RunConfig`] into output and an exit status.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use serde::Serialize;

use crate::affine::AffineSetup;
use crate::coxeter::{CoxeterGroup, CoxeterSystem, DEFAULT_CAP};
use crate::cosets::{coset_of, cosets_up_to};
use crate::error::{Error, Result};
use crate::io::{self, Format};
use crate::module::{InvolutionModule, ModuleVector};
use crate::verify::{Suite, Verifier};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    /// All elements, or only twisted involutions.
    Enumerate { twisted: bool },
    Bar { w: String },
    Rpoly,
    Ppm,
    Kl,
    Basis { w: String },
    /// `K` as comma-separated labels.
    Cosets { k: String },
    /// `None` runs every suite.
    Verify { suite: Option<Suite> },
    Scan { max_len: Option<usize> },
    ClosedForms,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub system: PathBuf,
    /// Replaces the descriptor's star.
    pub star: Option<Vec<usize>>,
    pub max_len: usize,
    pub cap: usize,
    pub command: Command,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(system: impl Into<PathBuf>, command: Command) -> Self {
        RunConfig {
            system: system.into(),
            star: None,
            max_len: 6,
            cap: DEFAULT_CAP,
            command,
            out: None,
            format: Format::Json,
        }
    }
}

/// Parses `"0,2,1"` into a permutation.
pub fn parse_star(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad star entry {p:?}"))))
        .collect()
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Internal(_) => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

fn load_module(cfg: &RunConfig) -> Result<Arc<InvolutionModule>> {
    if cfg.cap == 0 {
        return Err(Error::Parse("--cap must be at least 1".into()));
    }
    let mut sys = CoxeterSystem::load(&cfg.system)?;
    if let Some(star) = &cfg.star {
        sys = sys.with_star(star.clone())?;
    }
    let g = Arc::new(CoxeterGroup::with_cap(sys, cfg.cap)?);
    Ok(InvolutionModule::new(g))
}

fn s0_of(module: &InvolutionModule) -> Result<usize> {
    let g = module.group();
    let n = g.rank();
    for s in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&t| t != s).collect();
        if module.star()[s] == s && g.is_finite_parabolic(&rest)? {
            return Ok(s);
        }
    }
    Err(Error::Domain("no star-fixed generator whose complement generates a finite group".into()))
}

#[derive(Serialize)]
struct CosetCsvRow {
    #[serde(rename = "K")]
    k: String,
    b: String,
    d: String,
    #[serde(rename = "J")]
    j: String,
    case_tag: String,
    involutions: String,
}

/// Runs one command, writing to `out`; returns the exit status.
pub fn run_to(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let module = load_module(cfg)?;
    let g = module.group().clone();
    let fmt = cfg.format;
    match &cfg.command {
        Command::Enumerate { twisted } => {
            io::write_rows(&io::element_rows(&module, cfg.max_len, *twisted)?, fmt, out)?;
        }
        Command::Bar { w } => {
            let w = g.parse_word(w)?;
            if !module.is_twisted(w) {
                return Err(Error::Domain(format!("{} is not a twisted involution", g.format_word(w))));
            }
            io::write_vector(&g, &module.bar_vector(&ModuleVector::basis(w)), fmt, out)?;
        }
        Command::Rpoly => io::write_rows(&io::rpoly_rows(&module, cfg.max_len)?, fmt, out)?,
        Command::Ppm => {
            let v = Verifier::new(module.clone(), cfg.max_len);
            io::write_rows(&io::ppm_rows(v.canonical(), v.classic(), cfg.max_len)?, fmt, out)?;
        }
        Command::Kl => {
            let v = Verifier::new(module.clone(), cfg.max_len);
            io::write_rows(&io::kl_rows(v.classic(), cfg.max_len)?, fmt, out)?;
        }
        Command::Basis { w } => {
            let w = g.parse_word(w)?;
            let v = Verifier::new(module.clone(), cfg.max_len);
            io::write_vector(&g, &v.canonical().a_canonical(w)?, fmt, out)?;
        }
        Command::Cosets { k } => {
            let k: Vec<usize> = if k.trim().is_empty() {
                Vec::new()
            } else {
                k.split(',')
                    .map(|l| {
                        g.system().label_index(l.trim()).ok_or_else(|| Error::Parse(format!("unknown label {l:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            coset_of(&module, g.identity(), &k)?;
            let reports = cosets_up_to(&module, &k, cfg.max_len)?
                .iter()
                .map(|o| io::coset_report(&module, o))
                .collect::<Result<Vec<_>>>()?;
            match fmt {
                Format::Json => io::write_rows(&reports, fmt, out)?,
                Format::Csv => {
                    let rows: Vec<CosetCsvRow> = reports
                        .into_iter()
                        .map(|r| CosetCsvRow {
                            k: r.k.join(" "),
                            b: r.b,
                            d: r.d,
                            j: r.j.join(" "),
                            case_tag: r.case_tag.unwrap_or_default(),
                            involutions: r.involutions.join(" "),
                        })
                        .collect();
                    io::write_rows(&rows, fmt, out)?
                }
            }
        }
        Command::Verify { suite } => {
            let v = Verifier::new(module.clone(), cfg.max_len);
            let suites: Vec<Suite> = match suite {
                Some(s) => vec![*s],
                None => Suite::ALL.to_vec(),
            };
            let mut ok = true;
            for s in suites {
                let rep = v.run(s)?;
                ok &= rep.passed();
                writeln!(out, "{rep}")?;
            }
            return Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED });
        }
        Command::Scan { max_len } => {
            let setup = AffineSetup::new(module.clone(), s0_of(&module)?)?;
            let v = Verifier::new(module.clone(), cfg.max_len);
            let rows = setup.scan(max_len.unwrap_or(cfg.max_len), v.canonical(), v.classic())?;
            io::write_rows(&io::scan_rows(&g, &rows), fmt, out)?;
        }
        Command::ClosedForms => {
            let setup = AffineSetup::new(module.clone(), s0_of(&module)?)?;
            let v = Verifier::new(module.clone(), cfg.max_len);
            let c = setup.check_closed_forms(v.canonical(), v.classic())?;
            let rep = io::closed_form_report(&g, &c);
            serde_json::to_writer_pretty(&mut *out, &rep)?;
            writeln!(out)?;
            return Ok(if c.all_ok() { EXIT_OK } else { EXIT_VERIFY_FAILED });
        }
    }
    Ok(EXIT_OK)
}

/// Runs a command against `--out` or stdout. Errors are printed to stderr and mapped
/// to their exit status.
pub fn run_command(cfg: &RunConfig) -> i32 {
    let result = match &cfg.out {
        Some(path) => {
            let mut buf = Vec::new();
            run_to(cfg, &mut buf).and_then(|code| {
                std::fs::write(path, &buf)?;
                Ok(code)
            })
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            run_to(cfg, &mut lock)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
