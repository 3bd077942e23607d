//! One function per verb; each returns the JSON report and the exit code.

use std::fs;
use std::path::{Path, PathBuf};

use permpoly::families::{self, Condition, VerificationReport};
use permpoly::oracle::{brute_inverse, is_permutation, partial_inverse};
use permpoly::sbox::{self, Certificate, SboxFormat};
use permpoly::{interpolate, tabulate, Error, Field, FieldSpec, LinearizedContext, MapTable, Poly};
use serde::Serialize;

use crate::json::to_line;
use crate::params::{Family, ParamFile};
use crate::Method;

pub const OK: u8 = 0;
pub const NOT_PP: u8 = 1;
pub const MALFORMED: u8 = 2;
pub const CROSS_CHECK: u8 = 3;

pub struct Outcome {
    pub code: u8,
    pub report: String,
}

impl Outcome {
    fn new<T: Serialize>(code: u8, report: &T) -> Self {
        Outcome {
            code,
            report: to_line(report),
        }
    }
}

#[derive(Serialize)]
struct ErrorReport {
    error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<u32>,
}

#[derive(Serialize)]
struct PpVerdict {
    is_pp: bool,
}

fn code_for(e: &Error) -> u8 {
    match e {
        Error::NotAPermutation => NOT_PP,
        Error::CrossCheck { .. } | Error::InternalError(_) => CROSS_CHECK,
        _ => MALFORMED,
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAPermutation => Outcome::new(NOT_PP, &PpVerdict { is_pp: false }),
            Error::CrossCheck { rank, ref context } => Outcome::new(
                CROSS_CHECK,
                &ErrorReport {
                    error: format!("{context}: closed form disagrees with the oracle"),
                    rank: Some(rank),
                },
            ),
            ref other => Outcome::new(
                code_for(other),
                &ErrorReport {
                    error: other.to_string(),
                    rank: None,
                },
            ),
        }
    }
}

fn run(body: impl FnOnce() -> Result<Outcome, Error>) -> Outcome {
    body().unwrap_or_else(Outcome::from)
}

fn parse_input(field: &str, poly: &str) -> Result<(Field, Poly), Error> {
    let f = FieldSpec::parse(field)?.ambient();
    let p = Poly::parse_ranks(&f, poly)?;
    Ok((f, p))
}

fn read_params(path: &Path) -> Result<Family, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    ParamFile::parse(&text)?.resolve()
}

pub fn verify(field: &str, poly: &str) -> Outcome {
    run(|| {
        let (_, p) = parse_input(field, poly)?;
        let is_pp = is_permutation(&tabulate(&p));
        Ok(Outcome::new(if is_pp { OK } else { NOT_PP }, &PpVerdict { is_pp }))
    })
}

#[derive(Serialize)]
struct InverseReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<&'static str>,
    inverse_coeffs: String,
}

/// Builds `f` from a family and returns it with its closed-form inverse.
fn family_inverse(family: &Family) -> Result<(Poly, Poly), Error> {
    match family {
        Family::Cyclotomic(p) => Ok((families::cyclotomic_build(p), families::cyclotomic_inverse(p)?)),
        Family::Linearized { params, u0 } => {
            let params = match u0 {
                Some(u0) => families::cpp_fold(params, *u0)?,
                None => params.clone(),
            };
            Ok((families::linearized_build(&params)?, families::linearized_inverse(&params)?))
        }
        Family::Trace(p) => Ok((families::trace_build(p)?, families::trace_inverse(p)?)),
        Family::Twist(_) => Err(Error::Parse("twist parameters have no polynomial inverse".into())),
    }
}

pub fn invert(field: Option<&str>, poly: Option<&str>, params: Option<&Path>, method: Method) -> Outcome {
    run(|| {
        let input = match (field, poly) {
            (Some(field), Some(poly)) => Some(parse_input(field, poly)?),
            (None, None) => None,
            _ => return Err(Error::Parse("--field and --poly go together".into())),
        };
        let family = params.map(read_params).transpose()?;

        let wanted = match method {
            Method::Brute => None,
            Method::Cyclotomic => Some("cyclotomic"),
            Method::Linearized => Some("linearized"),
            Method::Trace => Some("trace"),
            Method::Auto => family.as_ref().map(Family::kind).filter(|&k| k != "twist"),
        };

        if let (Some(kind), Some(family)) = (wanted, &family) {
            if family.kind() == kind {
                let (f, inv) = family_inverse(family)?;
                let matches = input
                    .as_ref()
                    .is_none_or(|(field, p)| f.field() == field && p.ring_eq(&f));
                if matches {
                    let report = InverseReport {
                        method: (method == Method::Auto).then_some(kind),
                        inverse_coeffs: inv.to_rank_string(),
                    };
                    return Ok(Outcome::new(OK, &report));
                }
                if method != Method::Auto {
                    return Err(Error::Parse("--poly differs from the polynomial of --params".into()));
                }
            } else if method != Method::Auto {
                return Err(Error::Parse(format!("--method {kind} needs a {kind} parameter file")));
            }
        } else if wanted.is_some() {
            return Err(Error::Parse("this method needs --params".into()));
        }

        let (_, p) = input.ok_or_else(|| Error::Parse("--field and --poly are required".into()))?;
        let inv = interpolate(&brute_inverse(&tabulate(&p))?);
        let report = InverseReport {
            method: (method == Method::Auto).then_some("brute"),
            inverse_coeffs: inv.to_rank_string(),
        };
        Ok(Outcome::new(OK, &report))
    })
}

#[derive(Serialize)]
struct FamilyReport {
    conditions: Vec<Condition>,
    is_pp: bool,
    inverse_coeffs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inverse_table: Option<Vec<Option<u32>>>,
    oracle_verified: bool,
    notes: Vec<String>,
}

impl FamilyReport {
    fn code(&self) -> u8 {
        if !self.oracle_verified {
            CROSS_CHECK
        } else if !self.is_pp {
            NOT_PP
        } else {
            OK
        }
    }
}

fn polynomial_family_report(
    check: VerificationReport,
    f: &Poly,
    inverse: impl FnOnce() -> Result<Poly, Error>,
) -> Result<FamilyReport, Error> {
    let table = tabulate(f);
    let is_pp = is_permutation(&table);
    let mut report = FamilyReport {
        is_pp,
        oracle_verified: check.all_hold() == is_pp,
        conditions: check.conditions,
        notes: check.notes,
        inverse_coeffs: None,
        inverse_table: None,
    };
    if is_pp && report.oracle_verified {
        let inv = inverse()?;
        report.oracle_verified = tabulate(&inv) == brute_inverse(&table)?;
        report.inverse_coeffs = Some(inv.to_rank_string());
    }
    Ok(report)
}

fn twist_report(p: &families::TwistParams) -> Result<FamilyReport, Error> {
    let check = families::twist_check(p)?;
    let mut report = FamilyReport {
        is_pp: check.all_hold(),
        conditions: check.conditions,
        inverse_coeffs: None,
        inverse_table: None,
        oracle_verified: true,
        notes: check.notes,
    };
    if report.is_pp {
        let inv = families::twist_inverse(p)?;
        report.oracle_verified = partial_inverse(&p.twisted())? == inv;
        report.inverse_table = Some(inv.values().iter().map(|v| v.map(|e| e.rank())).collect());
    }
    Ok(report)
}

pub fn family(path: &Path) -> Outcome {
    run(|| {
        let report = match read_params(path)? {
            Family::Cyclotomic(p) => polynomial_family_report(
                families::cyclotomic_check(&p),
                &families::cyclotomic_build(&p),
                || families::cyclotomic_inverse(&p),
            )?,
            Family::Linearized { params, u0 } => {
                let p = match u0 {
                    Some(u0) => families::cpp_fold(&params, u0)?,
                    None => params,
                };
                polynomial_family_report(families::linearized_check(&p), &families::linearized_build(&p)?, || {
                    families::linearized_inverse(&p)
                })?
            }
            Family::Trace(p) => polynomial_family_report(families::trace_check(&p), &families::trace_build(&p)?, || {
                families::trace_inverse(&p)
            })?,
            Family::Twist(p) => twist_report(&p)?,
        };
        Ok(Outcome::new(report.code(), &report))
    })
}

#[derive(Serialize)]
struct CppReport {
    conditions: Vec<Condition>,
    is_cpp: bool,
    oracle_verified: bool,
    notes: Vec<String>,
}

pub fn cpp(path: &Path) -> Outcome {
    run(|| {
        let Family::Linearized { params, u0 } = read_params(path)? else {
            return Err(Error::Parse("cpp needs a linearized parameter file".into()));
        };
        let check = families::cpp_check(&params, u0)?;
        let folded = match u0 {
            Some(u0) => families::cpp_fold(&params, u0)?,
            None => params,
        };
        let f = tabulate(&families::linearized_build(&folded)?);
        let f_plus_x = f.add(&MapTable::identity(f.field()))?;
        let is_cpp = is_permutation(&f) && is_permutation(&f_plus_x);
        let report = CppReport {
            oracle_verified: check.all_hold() == is_cpp,
            conditions: check.conditions,
            is_cpp,
            notes: check.notes,
        };
        let code = if !report.oracle_verified {
            CROSS_CHECK
        } else if !is_cpp {
            NOT_PP
        } else {
            OK
        };
        Ok(Outcome::new(code, &report))
    })
}

#[derive(Serialize)]
struct LineSummary {
    index: u32,
    representative: u32,
    size: usize,
}

#[derive(Serialize)]
struct IdentityFailure {
    i: u32,
    j: u32,
    m: u64,
    g: String,
}

#[derive(Serialize)]
struct IdentitiesReport {
    field: String,
    omega: u32,
    reconstruction: bool,
    lines: Vec<LineSummary>,
    identities_checked: usize,
    identities_failed: Vec<IdentityFailure>,
}

pub fn identities(q: u64, d: u32) -> Outcome {
    run(|| {
        let spec = FieldSpec::for_order(q, Some(d))?;
        let ctx = LinearizedContext::new(&spec.top()?)?;
        let base = ctx.base();
        let samples = ["0,1", "1,0,1", "2,1,0,1"]
            .iter()
            .map(|s| Poly::parse_ranks(base, s))
            .collect::<Result<Vec<_>, _>>()?;
        let mut lines = Vec::new();
        for i in 0..d {
            let line = ctx.image_line(i)?;
            lines.push(LineSummary {
                index: i,
                representative: line.representative.rank(),
                size: line.elements.len(),
            });
        }
        let mut checked = 0;
        let mut failed = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for m in 1..=2 * d as u64 {
                    for g in &samples {
                        checked += 1;
                        if !ctx.component_identities(i, j, m, g)?.all_hold() {
                            failed.push(IdentityFailure {
                                i,
                                j,
                                m,
                                g: g.to_rank_string(),
                            });
                        }
                    }
                }
            }
        }
        let report = IdentitiesReport {
            field: spec.to_string(),
            omega: ctx.omega().rank(),
            reconstruction: ctx.reconstruction_holds(),
            lines,
            identities_checked: checked,
            identities_failed: failed,
        };
        let code = if report.reconstruction && report.identities_failed.is_empty() {
            OK
        } else {
            CROSS_CHECK
        };
        Ok(Outcome::new(code, &report))
    })
}

#[derive(Serialize)]
struct ExportReport {
    out: String,
    certificate: String,
    entries: u32,
    width: usize,
    involution: bool,
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomically(path: &Path, bytes: &[u8]) -> Result<(), Error> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", path.display()));
    fs::write(&tmp, bytes).map_err(io)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

pub fn export_sbox(field: &str, poly: &str, out: &Path) -> Outcome {
    run(|| {
        let format = out
            .extension()
            .and_then(|e| e.to_str())
            .and_then(SboxFormat::from_extension)
            .ok_or_else(|| Error::Parse("--out must end in .bin or .hex".into()))?;
        let (f, p) = parse_input(field, poly)?;
        let table = tabulate(&p);
        let inverse = brute_inverse(&table)?;
        let certificate = Certificate {
            field: f.spec().to_string(),
            poly: p.to_rank_string(),
            inverse_coeffs: interpolate(&inverse).to_rank_string(),
            involution: inverse == table,
        };
        let sidecar = sidecar_path(out);
        write_atomically(out, &sbox::encode(&table, format))?;
        if let Err(e) = write_atomically(&sidecar, to_line(&certificate).as_bytes()) {
            let _ = fs::remove_file(out);
            return Err(e);
        }
        let report = ExportReport {
            out: out.display().to_string(),
            certificate: sidecar.display().to_string(),
            entries: f.size(),
            width: sbox::entry_width(f.size()),
            involution: certificate.involution,
        };
        Ok(Outcome::new(OK, &report))
    })
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
}

#[derive(Serialize)]
struct SelftestReport {
    checks: Vec<Check>,
    passed: bool,
}

fn selftest_checks() -> Vec<(&'static str, Box<dyn Fn() -> Result<bool, Error>>)> {
    vec![
        (
            "field_f9_inverse",
            Box::new(|| {
                let f = FieldSpec::parse("3^2:1,0,1")?.base();
                let t = f.unrank(3)?;
                Ok(f.inv(t)?.rank() == 6 && f.unrank(5)?.rank() == 5)
            }),
        ),
        (
            "cube_inverse_f5",
            Box::new(|| {
                let (_, p) = parse_input("5", "0,0,0,1")?;
                Ok(interpolate(&brute_inverse(&tabulate(&p))?) == p)
            }),
        ),
        (
            "interpolation_round_trip",
            Box::new(|| {
                let (_, p) = parse_input("3", "1,2,0,1,2,1")?;
                Ok(interpolate(&tabulate(&p)) == p.reduce_mod_qx())
            }),
        ),
        (
            "cyclotomic_q7",
            Box::new(|| {
                let f = FieldSpec::prime(7)?.base();
                let p = families::CyclotomicParams::new(&f, 1, 2, Poly::parse_ranks(&f, "3,1")?)?;
                let inv = families::cyclotomic_inverse_table(&p)?;
                Ok(inv == brute_inverse(&tabulate(&families::cyclotomic_build(&p)))?)
            }),
        ),
        (
            "linearized_q5_d2",
            Box::new(|| {
                let ctx = std::sync::Arc::new(LinearizedContext::new(&FieldSpec::for_order(5, Some(2))?.top()?)?);
                let base = ctx.base().clone();
                let top = ctx.field().clone();
                let p = families::LinearizedFamilyParams::new(ctx, Poly::x(&base), vec![base.one()], vec![1])?;
                let expected = Poly::monomial(&top, top.from_int(3), 5);
                Ok(families::linearized_inverse(&p)? == expected && ctx_reconstructs(&p))
            }),
        ),
        (
            "trace_q3_n2",
            Box::new(|| {
                let top = FieldSpec::for_order(3, Some(2))?.top()?;
                let g = Poly::x(&top.subfield().expect("tower"));
                let p = families::TraceFamilyParams::new(&top, 2, g)?;
                let expected = Poly::monomial(&top, top.from_int(2), 3);
                Ok(families::trace_inverse(&p)? == expected)
            }),
        ),
        (
            "sbox_cube_f5",
            Box::new(|| {
                let (_, p) = parse_input("5", "0,0,0,1")?;
                Ok(sbox::encode(&tabulate(&p), SboxFormat::Binary) == [0, 1, 3, 2, 4])
            }),
        ),
    ]
}

fn ctx_reconstructs(p: &families::LinearizedFamilyParams) -> bool {
    p.ctx().reconstruction_holds()
}

pub fn selftest() -> Outcome {
    let checks: Vec<Check> = selftest_checks()
        .into_iter()
        .map(|(name, check)| Check {
            name,
            passed: check().unwrap_or(false),
        })
        .collect();
    let passed = checks.iter().all(|c| c.passed);
    Outcome::new(if passed { OK } else { CROSS_CHECK }, &SelftestReport { checks, passed })
}
