//! The builtin manifold library.
//!
//! | name      | params                    | data                                              |
//! |-----------|---------------------------|---------------------------------------------------|
//! | `S6`      | none                      | `c = (0, 0, 2 vol)`                               |
//! | `gS3xS3`  | `g`                       | `b3 = 2g`, `c3 = (2 - 2g) vol`                    |
//! | `gS2xS4`  | `g [kmin kmax]`           | `c1 = 2k a_i`, `c2 = 0`, `c3 = (2g + 2) vol`       |
//! | `CP3`     | `[kmin kmax]`             | `c1 = 2k x`, `c2 = (2k² - 2) x²`, `c3 = 4 vol`    |
//! | `K3xS2`   | `[m]` or `[mmin mmax]`    | Chern numbers `∫c1c2 = 48m`, `∫c3 = 48`           |
//! | `S4`      | none                      | ring mode, `(σ, χ) = (0, 2)`                      |
//! | `CP2`     | none                      | ring mode, `(σ, χ) = (1, 3)`                      |
//! | `CP2bar`  | none                      | ring mode, `(σ, χ) = (-1, 3)`                     |
//! | `K3`      | none                      | numeric mode, `(σ, χ) = (-16, 24)`                |
//! | `F3`      | none                      | the flag manifold `Z-(CP2)` with its AHS structure |

use std::fmt::Write;

use super::{parse_manifold, ManifoldFile};
use crate::algebra::Orientation;
use crate::error::{Error, ErrorCode, Result};

pub const BUILTIN_NAMES: &[&str] = &[
    "S6", "gS3xS3", "gS2xS4", "CP3", "K3xS2", "S4", "CP2", "CP2bar", "K3", "F3",
];

/// Name of the CP3 structure with `c1 = 2k x`; `k = 2` is the standard one.
pub fn cp3_acs_name(k: i64) -> String {
    if k == 2 {
        "std".to_string()
    } else {
        format!("k={k}")
    }
}

/// Name of the `g(S2×S4)` structure with `c1 = 2k a_i`.
pub fn s2s4_acs_name(g: i64, i: i64, k: i64) -> String {
    if k == 0 {
        "k=0".to_string()
    } else if g == 1 {
        format!("k={k}")
    } else {
        format!("a{i}:k={k}")
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::new(ErrorCode::InvalidParams, msg)
}

fn range(params: &[i64], default: (i64, i64), what: &str) -> Result<(i64, i64)> {
    let (lo, hi) = match params {
        [] => default,
        [v] => (*v, *v),
        [lo, hi] => (*lo, *hi),
        _ => return Err(invalid(format!("too many {what} parameters"))),
    };
    if lo > hi {
        return Err(invalid(format!("empty {what} range {lo}..={hi}")));
    }
    Ok((lo, hi))
}

fn no_params(name: &str, params: &[i64]) -> Result<()> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(invalid(format!("`{name}` takes no parameters")))
    }
}

fn s3s3_source(name: &str, g: i64) -> String {
    format!(
        "manifold \"{name}\" {{\n  dim 6\n  betti b1=0 b2=0 b3={}\n  basis deg6 {{ vol }}\n  integral vol = 1\n  p1 = 0\n  acs \"std\" {{ c1 = 0 ; c2 = 0 ; c3 = {} vol }}\n}}\n",
        2 * g,
        2 - 2 * g
    )
}

fn s2s4_source(g: i64, kmin: i64, kmax: i64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "manifold \"{g}(S2xS4)\" {{");
    let _ = writeln!(s, "  dim 6\n  betti b1=0 b2={g} b3=0");
    let gens: Vec<String> = (1..=g).map(|i| format!("a{i} : 2")).collect();
    let _ = writeln!(s, "  gens {{ {} }}", gens.join(", "));
    let duals: Vec<String> = (1..=g).map(|i| format!("b{i}")).collect();
    let _ = writeln!(s, "  basis deg4 {{ {} }}", duals.join(" "));
    let _ = writeln!(s, "  basis deg6 {{ vol }}");
    for i in 1..=g {
        let _ = writeln!(s, "  mul a{i} * b{i} = 1 vol");
    }
    let _ = writeln!(s, "  integral vol = 1\n  p1 = 0");
    let c3 = 2 * g + 2;
    let mut zero_done = false;
    for i in 1..=g {
        for k in kmin..=kmax {
            if k == 0 {
                if zero_done {
                    continue;
                }
                zero_done = true;
                let _ = writeln!(s, "  acs \"k=0\" {{ c1 = 0 ; c2 = 0 ; c3 = {c3} vol }}");
            } else {
                let _ = writeln!(
                    s,
                    "  acs \"{}\" {{ c1 = {} a{i} ; c2 = 0 ; c3 = {c3} vol }}",
                    s2s4_acs_name(g, i, k),
                    2 * k
                );
            }
        }
    }
    s.push_str("}\n");
    s
}

fn cp3_source(kmin: i64, kmax: i64) -> String {
    let mut s = String::from(
        "manifold \"CP3\" {\n  dim 6\n  betti b1=0 b2=1 b3=0\n  gens { x : 2 }\n  basis deg4 { x2 }\n  basis deg6 { vol }\n  mul x * x = 1 x2\n  mul x * x2 = 1 vol\n  integral vol = 1\n  p1 = 4 x2\n",
    );
    for k in kmin..=kmax {
        let _ = writeln!(
            s,
            "  acs \"{}\" {{ c1 = {} x ; c2 = {} x2 ; c3 = 4 vol }}",
            cp3_acs_name(k),
            2 * k,
            2 * k * k - 2
        );
    }
    s.push_str("}\n");
    s
}

fn k3s2_source(mmin: i64, mmax: i64) -> String {
    let mut s = String::from("stub6 \"K3xS2\" {\n  betti b1=0 b2=23 b3=0\n");
    for m in mmin..=mmax {
        let _ = writeln!(s, "  numbers \"m={m}\" {{ c1c2 = {} ; c3 = 48 }}", 48 * m);
    }
    s.push_str("}\n");
    s
}

const S4: &str = "manifold \"S4\" {\n  dim 4\n  betti b1=0 b2=0\n  basis deg4 { g }\n  integral g = 1\n  p1 = 0\n  e = 2 g\n  spinc \"0\" { alpha = 0 }\n}\n";

const CP2: &str = "manifold \"CP2\" {\n  dim 4\n  betti b1=0 b2=1\n  gens { h : 2 }\n  basis deg4 { h2 }\n  mul h * h = 1 h2\n  integral h2 = 1\n  p1 = 3 h2\n  e = 3 h2\n  spinc \"3h\" { alpha = 3 h }\n  spinc \"h\" { alpha = 1 h }\n  acs \"std\" { c1 = 3 h ; c2 = 3 h2 }\n}\n";

// Opposite orientation: same generator, negative-definite form.
const CP2BAR: &str = "manifold \"CP2bar\" {\n  dim 4\n  betti b1=0 b2=1\n  gens { h : 2 }\n  basis deg4 { h2 }\n  mul h * h = -1 h2\n  integral h2 = 1\n  p1 = -3 h2\n  e = 3 h2\n  spinc \"h\" { alpha = 1 h }\n}\n";

/// Canonical description of a builtin manifold.
pub fn builtin(name: &str, params: &[i64]) -> Result<ManifoldFile> {
    let source = match name {
        "S6" => {
            no_params(name, params)?;
            s3s3_source("S6", 0)
        }
        "gS3xS3" => {
            let [g] = params else {
                return Err(invalid("`gS3xS3` takes exactly one parameter g"));
            };
            if *g < 0 {
                return Err(invalid("g must be non-negative"));
            }
            s3s3_source(&format!("{g}(S3xS3)"), *g)
        }
        "gS2xS4" => {
            let Some((g, rest)) = params.split_first() else {
                return Err(invalid("`gS2xS4` needs the parameter g"));
            };
            if *g < 1 {
                return Err(invalid("g must be at least 1"));
            }
            if rest.len() == 1 {
                return Err(invalid("give both kmin and kmax"));
            }
            let (kmin, kmax) = range(rest, (-2, 2), "k")?;
            s2s4_source(*g, kmin, kmax)
        }
        "CP3" => {
            if params.len() == 1 {
                return Err(invalid("give both kmin and kmax"));
            }
            let (kmin, kmax) = range(params, (-5, 5), "k")?;
            cp3_source(kmin, kmax)
        }
        "K3xS2" => {
            let (mmin, mmax) = range(params, (1, 3), "m")?;
            if mmin < 1 {
                return Err(invalid("m must be positive"));
            }
            k3s2_source(mmin, mmax)
        }
        "S4" => {
            no_params(name, params)?;
            S4.to_string()
        }
        "CP2" => {
            no_params(name, params)?;
            CP2.to_string()
        }
        "CP2bar" => {
            no_params(name, params)?;
            CP2BAR.to_string()
        }
        "K3" => {
            no_params(name, params)?;
            "manifold4 \"K3\" { sigma -16 ; euler 24 }\n".to_string()
        }
        "F3" => {
            no_params(name, params)?;
            let cp2 = builtin("CP2", &[])?;
            let z = crate::twistor::ahs_as_acs_named(cp2.four()?, Orientation::Negative, "F3")?;
            return Ok(ManifoldFile::Six(z));
        }
        other => {
            return Err(Error::new(
                ErrorCode::UnknownBuiltin,
                format!(
                    "unknown builtin `{other}`; available: {}",
                    BUILTIN_NAMES.join(", ")
                ),
            ))
        }
    };
    parse_manifold(&source)
}
