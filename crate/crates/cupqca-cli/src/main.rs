//! Batch front end: construct, verify, certify, and export the library's
//! objects deterministically. Exit status: 0 on success/verified, 1 on a
//! verification failure, 2 on usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cupqca::cochain::{coboundary_matrix, cup_matrix, leibniz_specs, verify_cup_leibniz, CupSpec};
use cupqca::equivalence::{verify_certificate, zp_order_certificate};
use cupqca::isa::{build_isa_higher, induced_qca, IsaKind, IsaPair};
use cupqca::json::{certificate_to_json, explicit_to_coo, map_to_json, matrix_to_json};
use cupqca::lattice::{instantiate_map, is_symplectic_explicit, stabilizer_commutation};
use cupqca::qca::{QcaFamily, QcaSpec};
use cupqca::render::{matrix_to_text, monomial_to_text, poly_to_text, variable_names};
use cupqca::ring::{LaurentPoly, Monomial, TorusShape};
use cupqca::symplectic::{pair_matrix, SymplecticMap};
use cupqca::PolyMatrix;

#[derive(Parser)]
#[command(
    name = "cupqca",
    version,
    about = "Exact Clifford-QCA algebra over Laurent polynomial rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Usage errors exit with status 2, verification failures with status 1.
enum CliError {
    Usage(String),
    Failure(String),
}

impl From<cupqca::Error> for CliError {
    fn from(e: cupqca::Error) -> Self {
        match e {
            cupqca::Error::InvalidParameter(_)
            | cupqca::Error::InvalidModulus(_)
            | cupqca::Error::NotInvertible(..)
            | cupqca::Error::DimensionMismatch { .. } => CliError::Usage(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

fn usage<T: Into<String>>(msg: T) -> CliError {
    CliError::Usage(msg.into())
}

fn failure<T: Into<String>>(msg: T) -> CliError {
    CliError::Failure(msg.into())
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Two-species Z_2 QCA in 2l-1 dimensions (3-fermion for l = 2)
    #[value(name = "3f")]
    ThreeFermion,
    /// Z_p^(k) QCA alpha in 4l-1 dimensions
    ZpAlpha,
    /// The companion beta QCA on the cubic lattice
    ZpBeta,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Selector {
    /// QCA family
    #[arg(long, value_enum)]
    family: Family,
    /// Spatial dimension (alternative to --l; must match the family)
    #[arg(long)]
    dim: Option<usize>,
    /// Family-internal degree index
    #[arg(long)]
    l: Option<usize>,
    /// Odd prime modulus for the Z_p families
    #[arg(long)]
    p: Option<u32>,
    /// Anyon level for the Z_p families
    #[arg(long)]
    k: Option<i64>,
}

impl Selector {
    fn spec(&self) -> Result<QcaSpec, String> {
        let (family, per_l) = match self.family {
            Family::ThreeFermion => (QcaFamily::ThreeFermion, 2),
            Family::ZpAlpha => (QcaFamily::ZpAlpha, 4),
            Family::ZpBeta => (QcaFamily::ZpBeta, 0),
        };
        let level = match (self.l, self.dim, family) {
            (Some(l), None, _) => l,
            (None, Some(3), QcaFamily::ZpBeta) => 1,
            (None, Some(d), _) if per_l > 0 && (d + 1) % per_l == 0 => (d + 1) / per_l,
            (None, None, QcaFamily::ZpBeta) => 1,
            (None, None, QcaFamily::ThreeFermion) => 2,
            (None, None, QcaFamily::ZpAlpha) => 1,
            _ => return Err("inconsistent --dim/--l for this family".into()),
        };
        let (modulus, k) = match family {
            QcaFamily::ThreeFermion => (2, 1),
            _ => (
                self.p.ok_or("the Z_p families need --p")?,
                self.k.unwrap_or(1),
            ),
        };
        Ok(QcaSpec {
            family,
            level,
            modulus,
            k,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a QCA and print its symplectic matrix
    Construct {
        #[command(flatten)]
        selector: Selector,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check the algebraic identities of a target, or the whole battery
    Verify {
        #[command(flatten)]
        selector: Option<Selector>,
        /// Run the bounded verification battery over all families
        #[arg(long, conflicts_with = "family")]
        all: bool,
    },
    /// Build and re-multiply the order certificate of the Z_p QCA
    Order {
        /// Odd prime modulus
        #[arg(long)]
        p: u32,
        /// Anyon level
        #[arg(long, default_value = "1")]
        k: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a cup-product (or coboundary) matrix
    Cup {
        /// Spatial dimension
        #[arg(long)]
        dim: usize,
        /// Right-factor degree (columns); for --coboundary, the source degree
        #[arg(long)]
        p: usize,
        /// Cup level
        #[arg(long, default_value = "0")]
        i: usize,
        /// Coefficient modulus of the displayed matrix
        #[arg(long, default_value = "3")]
        modulus: u32,
        /// Print the coboundary matrix instead of a cup matrix
        #[arg(long)]
        coboundary: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build an invertible subalgebra and verify its witnesses
    Isa {
        #[arg(long, value_enum)]
        kind: IsaKindArg,
        /// Degree-promotion index (1 = square lattice)
        #[arg(long, default_value = "1")]
        l: usize,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value = "1")]
        k: i64,
        /// Translation monomial for the induced QCA, e.g. "x", "y", "x^2y"
        #[arg(long)]
        m: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand a QCA on a finite torus; prints sparse coordinate triplets
    Instantiate {
        #[command(flatten)]
        selector: Selector,
        /// Comma-separated torus lengths, e.g. 4,4,4
        #[arg(long, value_delimiter = ',')]
        torus: Vec<u32>,
    },
    /// Write a QCA's JSON matrix to a file
    Export {
        #[command(flatten)]
        selector: Selector,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IsaKindArg {
    Z2,
    Zp,
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            // CUPQCA_OUT_DIR redirects relative output paths, for batch
            // regeneration of fixture sets
            let path = match std::env::var_os("CUPQCA_OUT_DIR") {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path.clone(),
            };
            std::fs::write(path, text).map_err(|e| failure(e.to_string()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// First entry where two matrices differ, as a human-readable line.
fn first_mismatch(got: &PolyMatrix, want: &PolyMatrix) -> Option<String> {
    let names = variable_names(got.dim());
    for (r, c, p) in got.entries() {
        let w = want.get(r, c);
        if p != w {
            return Some(format!(
                "first failing entry: row {r}, col {c}: expected {}, got {}",
                poly_to_text(w, &names),
                poly_to_text(p, &names)
            ));
        }
    }
    None
}

fn verify_spec(spec: &QcaSpec) -> Result<Vec<String>, CliError> {
    let theta = spec.build()?;
    let mut report = Vec::new();
    if !theta.is_symplectic() {
        return Err(failure("symplectic check failed"));
    }
    report.push(format!(
        "symplectic: ok ({}x{} over Z_{}[{} vars])",
        2 * theta.q(),
        2 * theta.q(),
        theta.modulus(),
        theta.dim()
    ));
    if spec.family == QcaFamily::ThreeFermion {
        let sq = theta.compose(&theta)?;
        let id = SymplecticMap::identity(theta.modulus(), theta.dim(), theta.q());
        if sq != id {
            let msg = first_mismatch(sq.matrix(), id.matrix()).unwrap_or_default();
            return Err(failure(format!("square is not the identity; {msg}")));
        }
        report.push("squares to identity: ok".into());
    }
    if spec.family == QcaFamily::ZpAlpha && spec.level == 1 {
        let cert = zp_order_certificate(spec.modulus, spec.k)?;
        if !verify_certificate(&cert) {
            return Err(failure("order certificate failed re-multiplication"));
        }
        report.push(format!(
            "order certificate: ok (order {})",
            cert.claimed_order
        ));
    }
    if spec.family == QcaFamily::ZpBeta {
        // beta^(-k) inverts alpha^(k) on the Z separator columns
        let alpha = cupqca::qca::build_zp_alpha(spec.modulus, spec.k)?;
        let beta_m = cupqca::qca::build_zp_beta(spec.modulus, -spec.k)?;
        let comp = beta_m.compose(&alpha)?;
        let (_, xz, _, zz) = comp.blocks();
        let id = PolyMatrix::identity(spec.modulus, 3, 3);
        if !xz.is_zero() || zz != id {
            return Err(failure("beta does not invert alpha on the Z separators"));
        }
        report.push("inverts alpha on Z separators: ok".into());
    }
    Ok(report)
}

fn run_verify_all() -> Result<(), CliError> {
    let mut checks: Vec<(String, bool)> = Vec::new();
    for l in [2usize, 3] {
        let spec = QcaSpec {
            family: QcaFamily::ThreeFermion,
            level: l,
            modulus: 2,
            k: 1,
        };
        checks.push((format!("3f l={l}"), verify_spec(&spec).is_ok()));
    }
    for p in [3u32, 5, 7] {
        let spec = QcaSpec {
            family: QcaFamily::ZpAlpha,
            level: 1,
            modulus: p,
            k: 1,
        };
        checks.push((format!("zp-alpha p={p}"), verify_spec(&spec).is_ok()));
    }
    for dim in 1..=4usize {
        let ok = leibniz_specs(dim)
            .into_iter()
            .all(|(p, i)| verify_cup_leibniz(5, dim, p, i).unwrap_or(false));
        checks.push((format!("leibniz D={dim}"), ok));
    }
    for p in [3u32, 5] {
        let ok = build_isa_higher(IsaKind::Zp, 1, p, 1)
            .ok()
            .map(|pair| {
                let h = pair.h.as_ref().unwrap();
                let hinv = pair.h_inv.as_ref().unwrap();
                h.mul(hinv)
                    .map(|m| m == PolyMatrix::identity(p, 2, 2 * pair.q))
                    .unwrap_or(false)
                    && pair_matrix(&pair.a, &pair.abar)
                        .map(|m| m.is_zero())
                        .unwrap_or(false)
            })
            .unwrap_or(false);
        checks.push((format!("isa zp p={p}"), ok));
    }
    let mut failed = false;
    for (name, ok) in &checks {
        println!("{}: {}", name, if *ok { "ok" } else { "FAILED" });
        failed |= !ok;
    }
    if failed {
        Err(failure("some checks failed"))
    } else {
        Ok(())
    }
}

fn parse_monomial(s: &str, dim: usize) -> Result<LaurentPoly, CliError> {
    // grammar: (var [^ int])* with vars from the dimension's name set
    let names = variable_names(dim);
    let mut exps = vec![0i32; dim];
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let Some(v) = names.iter().position(|n| n.starts_with(ch) && n.len() == 1) else {
            return Err(usage(format!("unknown variable {ch:?} in monomial {s:?}")));
        };
        i += 1;
        let mut e = 1i32;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let mut digits = String::new();
            if i < chars.len() && chars[i] == '-' {
                digits.push('-');
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                digits.push(chars[i]);
                i += 1;
            }
            e = digits
                .parse()
                .map_err(|_| usage(format!("bad exponent in {s:?}")))?;
        }
        exps[v] += e;
    }
    Ok(LaurentPoly::monomial(2, dim, Monomial(exps), 1))
}

fn run_isa(
    kind: IsaKindArg,
    l: usize,
    p: Option<u32>,
    k: i64,
    m: Option<String>,
    format: Format,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let (kind, modulus) = match kind {
        IsaKindArg::Z2 => (IsaKind::Z2, 2),
        IsaKindArg::Zp => (IsaKind::Zp, p.ok_or_else(|| usage("--kind zp needs --p"))?),
    };
    let pair: IsaPair = build_isa_higher(kind, l, modulus, k)?;
    let commute = pair_matrix(&pair.a, &pair.abar)?.is_zero();
    let witness_ok = match (&pair.h, &pair.h_inv) {
        (Some(h), Some(hinv)) => {
            let i = PolyMatrix::identity(pair.modulus, pair.dim, 2 * pair.q);
            h.mul(hinv)? == i && hinv.mul(h)? == i
        }
        _ => pair.mcal.dagger() == pair.mcal_bar,
    };
    let mut text = String::new();
    let mut induced_report = None;
    if let Some(ms) = &m {
        let mono = {
            let raw = parse_monomial(ms, pair.dim)?;
            let (mm, _) = raw
                .as_single_term()
                .ok_or_else(|| usage("not a monomial"))?;
            LaurentPoly::monomial(pair.modulus, pair.dim, mm.clone(), 1)
        };
        let theta = induced_qca(pair.modulus, k, &mono)?;
        let sq = theta.compose(&theta)?;
        let mut want = PolyMatrix::zeros(pair.modulus, pair.dim, 2 * theta.q(), 2 * theta.q());
        for j in 0..2 * theta.q() {
            want.set(j, j, mono.neg());
        }
        induced_report = Some(sq.matrix() == &want);
    }
    match format {
        Format::Text => {
            writeln!(
                text,
                "invertible subalgebra: Z_{} on the {}-dimensional lattice, {} generators",
                pair.modulus, pair.dim, pair.q
            )
            .unwrap();
            writeln!(text, "generators A:\n{}", matrix_to_text(&pair.a)).unwrap();
            writeln!(
                text,
                "conjugate generators Abar:\n{}",
                matrix_to_text(&pair.abar)
            )
            .unwrap();
            writeln!(
                text,
                "commutation <A, Abar> = 0: {}",
                if commute { "ok" } else { "FAILED" }
            )
            .unwrap();
            writeln!(
                text,
                "invertibility witness: {}",
                if witness_ok { "ok" } else { "FAILED" }
            )
            .unwrap();
            if let Some(ok) = induced_report {
                writeln!(
                    text,
                    "induced QCA squares to -m: {}",
                    if ok { "ok" } else { "FAILED" }
                )
                .unwrap();
            }
        }
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("modulus".into(), pair.modulus.into());
            doc.insert("dimension".into(), pair.dim.into());
            doc.insert("q".into(), pair.q.into());
            doc.insert(
                "a".into(),
                serde_json::to_value(matrix_to_json(&pair.a, None)).unwrap(),
            );
            doc.insert(
                "abar".into(),
                serde_json::to_value(matrix_to_json(&pair.abar, None)).unwrap(),
            );
            if let Some(h) = &pair.h {
                doc.insert(
                    "h".into(),
                    serde_json::to_value(matrix_to_json(h, None)).unwrap(),
                );
            }
            if let Some(hinv) = &pair.h_inv {
                doc.insert(
                    "h_inv".into(),
                    serde_json::to_value(matrix_to_json(hinv, None)).unwrap(),
                );
            }
            doc.insert("commutation_ok".into(), commute.into());
            doc.insert("witness_ok".into(), witness_ok.into());
            if let Some(ok) = induced_report {
                doc.insert("induced_square_ok".into(), ok.into());
            }
            text = serde_json::to_string_pretty(&serde_json::Value::Object(doc)).unwrap();
            text.push('\n');
        }
    }
    emit(text, &out)?;
    if commute && witness_ok && induced_report.unwrap_or(true) {
        Ok(())
    } else {
        Err(failure("verification failed"))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Construct {
            selector,
            format,
            out,
        } => {
            let spec = selector.spec().map_err(usage)?;
            let theta = spec.build()?;
            let text = match format {
                Format::Text => matrix_to_text(theta.matrix()),
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&map_to_json(&theta)).unwrap();
                    s.push('\n');
                    s
                }
            };
            emit(text, &out)
        }
        Command::Verify { selector, all } => {
            if all {
                run_verify_all()
            } else {
                let selector = selector.ok_or_else(|| usage("verify needs a --family or --all"))?;
                let spec = selector.spec().map_err(usage)?;
                for line in verify_spec(&spec)? {
                    println!("{line}");
                }
                Ok(())
            }
        }
        Command::Order { p, k, format, out } => {
            let cert = zp_order_certificate(p, k)?;
            let verified = verify_certificate(&cert);
            let text = match format {
                Format::Text => {
                    let names = variable_names(3);
                    let shift = cert
                        .shift
                        .matrix()
                        .diagonal_monomials()
                        .map(|desc| {
                            desc.iter()
                                .map(|(m, c)| {
                                    let body = monomial_to_text(m, &names);
                                    if *c == p - 1 {
                                        format!("−{body}")
                                    } else if *c == 1 {
                                        body
                                    } else {
                                        format!("{c}{body}")
                                    }
                                })
                                .collect::<Vec<_>>()
                                .join(", ")
                        })
                        .unwrap_or_default();
                    format!(
                        "order {}; shift diag({}); certificate {}\n",
                        cert.claimed_order,
                        shift,
                        if verified { "verified" } else { "FAILED" }
                    )
                }
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&certificate_to_json(&cert, verified))
                        .unwrap();
                    s.push('\n');
                    s
                }
            };
            emit(text, &out)?;
            if verified {
                Ok(())
            } else {
                Err(failure("certificate re-multiplication failed"))
            }
        }
        Command::Cup {
            dim,
            p,
            i,
            modulus,
            coboundary,
            format,
            out,
        } => {
            let m = if coboundary {
                coboundary_matrix(modulus, dim, p)?
            } else {
                let spec = CupSpec::new(dim, p, i)?;
                cup_matrix(spec, modulus)
            };
            let text = match format {
                Format::Text => matrix_to_text(&m),
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&matrix_to_json(&m, None)).unwrap();
                    s.push('\n');
                    s
                }
            };
            emit(text, &out)
        }
        Command::Isa {
            kind,
            l,
            p,
            k,
            m,
            format,
            out,
        } => run_isa(kind, l, p, k, m, format, out),
        Command::Instantiate { selector, torus } => {
            let spec = selector.spec().map_err(usage)?;
            let theta = spec.build()?;
            let shape = TorusShape::new(torus)?;
            let e = instantiate_map(&theta, &shape)?;
            if e.wrapped {
                eprintln!(
                    "warning: torus lengths below the faithfulness bound; entries wrap around"
                );
            }
            let symp = is_symplectic_explicit(&e, theta.q())?;
            let stab = stabilizer_commutation(&theta, &shape)?;
            print!("{}", explicit_to_coo(&e));
            eprintln!(
                "finite symplectic check: {}; separator commutation: {}",
                if symp { "ok" } else { "FAILED" },
                if stab { "ok" } else { "FAILED" }
            );
            if symp && stab {
                Ok(())
            } else {
                Err(failure("finite-torus verification failed"))
            }
        }
        Command::Export { selector, out } => {
            let spec = selector.spec().map_err(usage)?;
            let theta = spec.build()?;
            let mut s = serde_json::to_string_pretty(&map_to_json(&theta)).unwrap();
            s.push('\n');
            emit(s, &Some(out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
