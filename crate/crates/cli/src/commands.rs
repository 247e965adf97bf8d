use std::fs;
use std::path::Path;

use modsuper::bounds::r_p_closed;
use modsuper::combinatorics::dim_endo_char0;
use modsuper::commutant::endo_dim;
use modsuper::latticesat::{build_sigma, phi_tilde_is_iso, verify_generators};
use modsuper::superspace::faithful::MAX_FAITHFUL_DEGREE;
use modsuper::superspace::{
    max_faithful_r, phi_action_matrix, phi_action_matrix_mod_p, phi_rank, skew_symmetrizer, GroupAlgebraElement,
};
use modsuper::{Error, SparseIntMatrix};
use num_bigint::{BigInt, BigUint};
use serde_json::json;

use crate::checks::{biguint_value, CheckContext, Verifier, CRITERIA};
use crate::config::RunConfig;
use crate::report::{timed, Check, Provenance, Report};
use crate::CliError;

fn size_note(e: &Error) -> Option<String> {
    matches!(e, Error::SizeLimit { .. }).then(|| e.to_string())
}

/// Closed-form threshold per `(p, m, n)`, checked by the brute-force scan
/// when it fits the limits.
pub fn rbound(config: &RunConfig) -> Result<Report, CliError> {
    let (ps, ms, ns) = (config.require_p()?, config.require("m")?, config.require("n")?);
    let limits = &config.limits;
    let degree_cap = limits.faithful_max_r.min(MAX_FAITHFUL_DEGREE);
    let mut checks = Vec::new();
    for &p in ps {
        for &m in ms {
            for &n in ns {
                checks.extend(timed(config.timing, || {
                    let id = format!("threshold.p{p}.m{m}.n{n}");
                    let closed = match r_p_closed(m as u64, n as u64, p) {
                        Ok(v) => v as usize,
                        Err(e) => return vec![Check::error(id, json!(null), Provenance::Published, e.to_string())],
                    };
                    if m + n == 0 {
                        return vec![Check::skipped(id, closed, Provenance::Published, "zero-dimensional space".into())];
                    }
                    if closed + 1 > degree_cap {
                        let why = format!("brute force needs r = {}, above the degree limit {degree_cap}", closed + 1);
                        return vec![Check::skipped(id, closed, Provenance::Published, why)];
                    }
                    vec![match max_faithful_r(m, n, p, closed + 1, limits) {
                        Ok(brute) => Check::equal(id, brute, closed, Provenance::Published),
                        Err(e) => match size_note(&e) {
                            Some(why) => Check::skipped(id, closed, Provenance::Published, why),
                            None => Check::error(id, closed, Provenance::Published, e.to_string()),
                        },
                    }]
                }));
            }
        }
    }
    Ok(Report::new("rbound", checks))
}

/// Invariant dimension over `F_p` next to the rational hook sum.
pub fn endodim(config: &RunConfig) -> Result<Report, CliError> {
    let (ps, ms, ns, rs) = (config.require_p()?, config.require("m")?, config.require("n")?, config.require("r")?);
    let mut checks = Vec::new();
    for &m in ms {
        for &n in ns {
            for &r in rs {
                for &p in ps {
                    checks.extend(timed(config.timing, || {
                        let id = format!("endo.m{m}.n{n}.r{r}.p{p}");
                        let rational = dim_endo_char0(m as u32, n as u32, r as u32);
                        let expected = biguint_value(&rational);
                        vec![match endo_dim(m, n, r, p, &config.limits) {
                            Ok(modular) => {
                                let check = Check::holds(id, modular, expected, Provenance::Oracle, BigUint::from(modular) >= rational);
                                if BigUint::from(modular) == rational {
                                    check
                                } else {
                                    check.with_note("differs from the rational dimension")
                                }
                            }
                            Err(e) => match size_note(&e) {
                                Some(why) => Check::skipped(id, expected, Provenance::Oracle, why),
                                None => Check::error(id, expected, Provenance::Oracle, e.to_string()),
                            },
                        }]
                    }));
                    if let Some(dir) = &config.dump {
                        dump_action(dir, m, n, r, p, config)?;
                    }
                }
            }
        }
    }
    Ok(Report::new("endodim", checks))
}

fn dump_action(dir: &Path, m: usize, n: usize, r: usize, p: u64, config: &RunConfig) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(io)?;
    let path = dir.join(format!("phi_m{m}_n{n}_r{r}_p{p}.mtx"));
    let mut file = fs::File::create(&path).map_err(io)?;
    let written = if p == 0 {
        phi_action_matrix::<BigInt>(m, n, r, &config.limits).and_then(|a: SparseIntMatrix| a.write_matrix_market(&mut file))
    } else {
        phi_action_matrix_mod_p(m, n, r, p, &config.limits).and_then(|a| a.write_matrix_market(&mut file))
    };
    match written {
        Ok(()) => Ok(()),
        Err(Error::SizeLimit { .. }) => {
            drop(file);
            fs::remove_file(&path).map_err(io)
        }
        Err(e) => Err(CliError::Io(e.to_string())),
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

/// An extra lattice generator: `x` whose image is divided by `p^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtraSource {
    Skew,
    File(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extra {
    pub source: ExtraSource,
    pub exponent: u32,
}

pub fn parse_extra(text: &str) -> Result<Extra, CliError> {
    let bad = || CliError::Usage(format!("--extras: cannot read `{text}`; use skew:E or @FILE:E"));
    let (what, e) = text.trim().rsplit_once(':').ok_or_else(bad)?;
    let exponent = e.parse().map_err(|_| bad())?;
    let source = match what {
        "skew" => ExtraSource::Skew,
        path if path.starts_with('@') && path.len() > 1 => ExtraSource::File(path[1..].to_string()),
        _ => return Err(bad()),
    };
    Ok(Extra { source, exponent })
}

fn load_extra(extra: &Extra, r: usize) -> Result<GroupAlgebraElement<BigInt>, CliError> {
    match &extra.source {
        ExtraSource::Skew => Ok(skew_symmetrizer(r)),
        ExtraSource::File(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("--extras {path}: {e}")))?;
            GroupAlgebraElement::parse(r, &text).map_err(|e| CliError::Usage(format!("--extras {path}: {e}")))
        }
    }
}

pub fn sigma(config: &RunConfig, extras: &[String]) -> Result<Report, CliError> {
    let (ps, ms, ns, rs) = (config.require_p()?, config.require("m")?, config.require("n")?, config.require("r")?);
    let extras: Vec<Extra> = extras.iter().map(|e| parse_extra(e)).collect::<Result<_, _>>()?;
    if let Some(&p) = ps.iter().find(|&&p| p == 0) {
        return Err(CliError::Usage(format!("sigma needs a prime, got p={p}")));
    }
    let mut checks = Vec::new();
    for &m in ms {
        for &n in ns {
            for &r in rs {
                let elements: Vec<GroupAlgebraElement<BigInt>> =
                    extras.iter().map(|x| load_extra(x, r)).collect::<Result<_, _>>()?;
                for &p in ps {
                    let tag = format!("m{m}.n{n}.r{r}.p{p}");
                    let limits = &config.limits;
                    let expected_rank = biguint_value(&dim_endo_char0(m as u32, n as u32, r as u32));
                    let built = build_sigma(m, n, r, p, limits);
                    let sigma = match built {
                        Ok(s) => s,
                        Err(e) => {
                            let id = format!("sigma.rank.{tag}");
                            checks.push(match size_note(&e) {
                                Some(why) => Check::skipped(id, expected_rank, Provenance::Oracle, why),
                                None => Check::error(id, expected_rank, Provenance::Oracle, e.to_string()),
                            });
                            continue;
                        }
                    };
                    checks.extend(timed(config.timing, || {
                        let mut rows = vec![Check::equal(format!("sigma.rank.{tag}"), sigma.dim(), expected_rank, Provenance::Oracle)];
                        rows.push(match sigma.rank_mod_p() {
                            Ok(k) => Check::equal(format!("sigma.rank-mod-p.{tag}"), k, sigma.dim(), Provenance::Oracle),
                            Err(e) => Check::error(format!("sigma.rank-mod-p.{tag}"), sigma.dim(), Provenance::Oracle, e.to_string()),
                        });
                        rows.push(match sigma.index_exponent() {
                            Ok(e) => Check::info(format!("sigma.index-exponent.{tag}"), e),
                            Err(e) => Check::error(format!("sigma.index-exponent.{tag}"), json!(null), Provenance::Measured, e.to_string()),
                        });
                        rows.push(match phi_tilde_is_iso(m, n, r, p, limits) {
                            Ok(b) => Check::info(format!("sigma.tilde-iso.{tag}"), b),
                            Err(e) => Check::skipped(format!("sigma.tilde-iso.{tag}"), json!(null), Provenance::Measured, e.to_string()),
                        });
                        if !elements.is_empty() {
                            let pairs: Vec<_> = elements.iter().cloned().zip(extras.iter().map(|x| x.exponent)).collect();
                            let id = format!("sigma.generators.{tag}");
                            rows.push(match verify_generators(&sigma, &pairs, limits) {
                                Ok(b) => Check::equal(id, b, true, Provenance::Published),
                                Err(e) => Check::error(id, true, Provenance::Published, e.to_string()),
                            });
                        }
                        rows
                    }));
                    if let Some(dir) = &config.dump {
                        sigma.write_dir(&dir.join(format!("sigma_m{m}_n{n}_r{r}_p{p}"))).map_err(|e| CliError::Io(e.to_string()))?;
                    }
                }
            }
        }
    }
    Ok(Report::new("sigma", checks))
}

/// Surjectivity evidence: image rank and invariant dimensions per grid point.
pub fn scan(config: &RunConfig) -> Result<Report, CliError> {
    let (ps, ms, ns, rs) = (config.require_p()?, config.require("m")?, config.require("n")?, config.require("r")?);
    let mut checks = Vec::new();
    for &m in ms {
        for &n in ns {
            for &p in ps.iter().filter(|&&p| p != 0) {
                for &r in rs {
                    checks.extend(timed(config.timing, || {
                        let id = format!("scan.m{m}.n{n}.p{p}.r{r}");
                        let limits = &config.limits;
                        let condition = m * n == 0 || (m + n) < p as usize;
                        match (endo_dim(m, n, r, p, limits), phi_rank(m, n, r, p, limits)) {
                            (Ok(endo), Ok(rank)) => {
                                let rational = dim_endo_char0(m as u32, n as u32, r as u32);
                                vec![Check::info(
                                    id,
                                    json!({
                                        "endo_p": endo,
                                        "endo_0": biguint_value(&rational),
                                        "image_rank": rank,
                                        "surjective": rank == endo,
                                        "dims_equal": BigUint::from(endo) == rational,
                                        "necessary_condition": condition,
                                    }),
                                )]
                            }
                            (Err(e), _) | (_, Err(e)) => vec![Check::skipped(id, json!(null), Provenance::Measured, e.to_string())],
                        }
                    }));
                }
            }
        }
    }
    Ok(Report::new("scan", checks))
}

pub fn verify(config: &RunConfig, criteria: &[u8], sign_bug: bool) -> Result<Report, CliError> {
    let which: Vec<u8> = if criteria.is_empty() { CRITERIA.to_vec() } else { criteria.to_vec() };
    if let Some(bad) = which.iter().find(|c| !CRITERIA.contains(c)) {
        return Err(CliError::Usage(format!("--criteria: no criterion {bad}")));
    }
    let verifier = Verifier::new(CheckContext { limits: config.limits, timing: config.timing, sign_bug });
    let checks = verifier.run(&which).into_iter().flat_map(|c| c.checks).collect();
    Ok(Report::new("verify", checks))
}
