//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
//! usage and I/O errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::branching::{branch, levi_map, pseudo_levi_map};
use crate::descriptor::{build_datum, parse_ints};
use crate::endoscopy::{cancellation_table, sweep_shapes, verify_endoscopy, StableClass};
use crate::error::{Error, Result};
use crate::models::{
    builtin_models, parse_models, verify_elliptic_lifts, verify_fs_oracles, verify_model,
    verify_weyl_constants, CaseSpec, ModelSpec,
};
use crate::repchar::{dim_weyl, irrep_character};
use crate::report::VerificationReport;
use crate::rootdata::RootDatum;
use crate::torsion::{enumerate_torsion, TorsionClass};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lieverify", version, about = "Exact checks of representation-theoretic constants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check and print a report.
    VerifyAll {
        /// Only check the named models (repeatable).
        #[arg(long = "model")]
        models: Vec<String>,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the model names and exit.
        #[arg(long)]
        list_models: bool,
        /// Registry file to use instead of the built-in models.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Dimension of an irreducible representation, e.g. `dim E7 sc w7`.
    Dim {
        /// Cartan type such as E7 or B3.
        cartan: String,
        /// sc or ad.
        isogeny: String,
        /// `w7`, `ω7`, `w` for rank one, or Dynkin labels such as "0 0 1".
        weight: String,
    },
    /// Decompose a representation over a Levi or a centralizer.
    Branch {
        /// Group descriptor, e.g. "GSpin7 x GL2 ; ker(0 0 0 2 1 1)".
        group: String,
        /// Highest weight in ambient coordinates.
        weight: String,
        /// Simple roots (0-based) generating a Levi subgroup.
        #[arg(long, conflicts_with = "x")]
        levi: Option<String>,
        /// Cocharacter (ambient coordinates) whose centralizer to use.
        #[arg(long)]
        x: Option<String>,
    },
    /// Conjugacy classes of torsion elements of order dividing ORDER.
    Torsion {
        /// Cartan type such as E7 or B3.
        cartan: String,
        /// sc or ad.
        isogeny: String,
        order: i64,
        /// Count orders in the adjoint group instead.
        #[arg(long)]
        modulo_center: bool,
        /// Only classes whose centralizer has no central torus.
        #[arg(long)]
        elliptic_only: bool,
    },
    /// Cancellation sums for stable classes of GU4 x GU2.
    Cancel {
        /// Class such as "E:a1 E:a2 | E:b1 E:b2"; all elliptic shapes if omitted.
        shape: Option<String>,
        /// Restrict to one value of η(-1).
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<i8>,
    },
}

/// Every check: indicator oracles, the models, the E7 lifts, the Weyl
/// constants and the endoscopic cancellation. With a filter, only the
/// named models are checked.
pub fn run_suite(models: &[ModelSpec], only: &[String]) -> VerificationReport {
    let mut r = VerificationReport::new();
    if only.is_empty() {
        r.merge(verify_fs_oracles(models));
    }
    for m in models {
        if only.is_empty() || only.iter().any(|o| o == &m.name) {
            r.merge(verify_model(m));
        }
    }
    if only.is_empty() {
        r.merge(verify_elliptic_lifts());
        r.merge(verify_weyl_constants());
        r.merge(verify_endoscopy());
    }
    r
}

fn datum_for(cartan: &str, isogeny: &str) -> Result<Arc<RootDatum>> {
    Ok(Arc::new(build_datum(&format!("{cartan}:{isogeny}"))?))
}

/// Reads `w7`, `ω7`, `w` (rank one) or explicit labels.
pub fn parse_weight(d: &RootDatum, s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    let rest = s.strip_prefix('w').or_else(|| s.strip_prefix('ω'));
    let l = d.semisimple_rank();
    if let Some(rest) = rest {
        let k: usize = if rest.is_empty() && l == 1 {
            1
        } else {
            rest.parse().map_err(|_| Error::Parse(format!("bad fundamental weight '{s}'")))?
        };
        if k == 0 || k > l {
            return Err(Error::Invalid(format!("no fundamental weight {k} in rank {l}")));
        }
        let fw = d.fundamental_weights();
        let w = crate::linalg::integral(&fw[k - 1])
            .ok_or_else(|| Error::NotInLattice(format!("ω{k} is not a weight of this group")))?;
        return Ok(w);
    }
    let w = parse_ints(s)?;
    d.check_len(w.len())?;
    Ok(w)
}

fn torsion_table(classes: &[TorsionClass]) -> String {
    let mut out = String::from("order\tcentralizer\telliptic\tkac\n");
    for c in classes {
        let kac: Vec<String> = c
            .kac
            .iter()
            .map(|k| k.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        let _ = writeln!(out, "{}\t{}\t{}\t{}", c.order, c.centralizer, c.elliptic, kac.join(" | "));
    }
    out
}

fn cmd_torsion(cartan: &str, isogeny: &str, m: i64, modulo_center: bool, elliptic_only: bool) -> Result<String> {
    if m < 1 {
        return Err(Error::Invalid("order must be positive".into()));
    }
    let d = datum_for(cartan, isogeny)?;
    let mut classes = if modulo_center {
        let z = d.center()?.component_group.order();
        let mut v: Vec<TorsionClass> = enumerate_torsion(&d, m * z)?
            .into_iter()
            .filter(|c| m % c.point.adjoint_order(&d) == 0)
            .collect();
        for c in &mut v {
            c.order = c.point.adjoint_order(&d);
        }
        v
    } else {
        enumerate_torsion(&d, m)?
    };
    if elliptic_only {
        classes.retain(|c| c.elliptic);
    }
    classes.sort_by(|a, b| (a.order, &a.kac).cmp(&(b.order, &b.kac)));
    Ok(torsion_table(&classes))
}

fn cmd_branch(group: &str, weight: &str, levi: Option<&str>, x: Option<&str>) -> Result<String> {
    let d = Arc::new(build_datum(group)?);
    let amb = d.ambient().ok_or_else(|| Error::Invalid("no ambient coordinates".into()))?.clone();
    let w = amb.weight_str(weight)?;
    let chi = irrep_character(&d, &w)?;
    let map = match (levi, x) {
        (Some(l), _) => {
            let idx: Vec<usize> = parse_ints(l)?
                .into_iter()
                .map(|i| usize::try_from(i).map_err(|_| Error::Invalid("negative root index".into())))
                .collect::<Result<_>>()?;
            levi_map(&d, &idx)?
        }
        (None, Some(x)) => {
            let case = CaseSpec {
                id: String::new(),
                anchor: String::new(),
                x: Some(x.to_string()),
                kac: None,
                centralizer: String::new(),
                elliptic: None,
                order: None,
                minus_empty: None,
                omega: None,
                total_eps: None,
                given_sign: None,
                pieces: vec![],
            };
            let p = case.point(&d)?;
            pseudo_levi_map(&d, &p)?
        }
        (None, None) => crate::branching::LatticeMap::identity(d.clone()),
    };
    let rows = branch(&chi, &map)?;
    let h = &map.source;
    let mut out = format!("subgroup {}\n", h.type_label());
    out.push_str("mult\tdim\tdynkin\tcentral\tname\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{:?}\t{:?}\t{}",
            r.mult,
            r.dim,
            r.dynkin,
            r.central,
            crate::models::constituent_name(h, &r.highest_weight)
        );
    }
    Ok(out)
}

fn cmd_cancel(shape: Option<&str>, eta: Option<i8>) -> Result<(String, bool)> {
    let shapes = match shape {
        Some(s) => vec![StableClass::parse(s)?],
        None => sweep_shapes(),
    };
    if let Some(e) = eta {
        if e != 1 && e != -1 {
            return Err(Error::Invalid("--eta must be 1 or -1".into()));
        }
    }
    let rows = cancellation_table(&shapes)?;
    let mut out = String::from("shape\teta(-1)\tmatch\tsum\n");
    let mut ok = true;
    for r in rows.iter().filter(|r| eta.is_none_or(|e| e == r.eta_minus_one)) {
        ok &= r.sum == 0;
        let _ = writeln!(out, "{}\t{}\t{}\t{}", r.shape, r.eta_minus_one, r.matching, r.sum);
    }
    Ok((out, ok))
}

fn load_models(config: Option<&PathBuf>) -> std::result::Result<Vec<ModelSpec>, String> {
    match config {
        None => Ok(builtin_models()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            parse_models(&text).map_err(|e| format!("{}: {e}", p.display()))
        }
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let fail = |err: &mut dyn Write, msg: String| {
        let _ = writeln!(err, "error: {msg}");
        EXIT_USAGE
    };
    match cli.command {
        Command::VerifyAll { models, format, out: path, list_models, config } => {
            let registry = match load_models(config.as_ref()) {
                Ok(m) => m,
                Err(e) => return fail(err, e),
            };
            if list_models {
                for m in &registry {
                    let _ = writeln!(out, "{}", m.name);
                }
                return EXIT_PASS;
            }
            if let Some(bad) = models.iter().find(|n| !registry.iter().any(|m| &m.name == *n)) {
                return fail(err, format!("unknown model '{bad}'"));
            }
            let report = run_suite(&registry, &models);
            let text = match format {
                Format::Json => report.to_json(),
                Format::Markdown => report.to_markdown(),
            };
            let written = match &path {
                Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                return fail(err, e);
            }
            let s = report.summary;
            let _ = writeln!(err, "{} checks: {} pass, {} fail", s.total, s.pass, s.fail);
            if report.passed() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Command::Dim { cartan, isogeny, weight } => {
            let res = datum_for(&cartan, &isogeny)
                .and_then(|d| {
                    let w = parse_weight(&d, &weight)?;
                    dim_weyl(&d, &w)
                });
            match res {
                Ok(n) => {
                    let _ = writeln!(out, "{n}");
                    EXIT_PASS
                }
                Err(e) => fail(err, e.to_string()),
            }
        }
        Command::Branch { group, weight, levi, x } => {
            match cmd_branch(&group, &weight, levi.as_deref(), x.as_deref()) {
                Ok(s) => {
                    let _ = out.write_all(s.as_bytes());
                    EXIT_PASS
                }
                Err(e) => fail(err, e.to_string()),
            }
        }
        Command::Torsion { cartan, isogeny, order, modulo_center, elliptic_only } => {
            match cmd_torsion(&cartan, &isogeny, order, modulo_center, elliptic_only) {
                Ok(s) => {
                    let _ = out.write_all(s.as_bytes());
                    EXIT_PASS
                }
                Err(e) => fail(err, e.to_string()),
            }
        }
        Command::Cancel { shape, eta } => match cmd_cancel(shape.as_deref(), eta) {
            Ok((s, ok)) => {
                let _ = out.write_all(s.as_bytes());
                if ok {
                    EXIT_PASS
                } else {
                    EXIT_FAIL
                }
            }
            Err(e) => fail(err, e.to_string()),
        },
    }
}
