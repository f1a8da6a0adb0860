//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Expected values are frozen literals or
//! the published closed forms written out inline; every comparison is exact.

use std::process::ExitCode;

use num_bigint::BigInt;
use twistor_core::algebra::{int, Orientation, Scalar};
use twistor_core::homotopy::minimal_model;
use twistor_core::intersect::{
    cp3_closed_form, intersection, intersection_closed_form, intersection_oracle,
    self_intersection, self_intersection_acs,
};
use twistor_core::manifold::{
    builtin, check_spinc_lift, cp3_acs_name, parse_manifold, print_manifold,
    validate_orientation_compatible, FourManifoldData, SixManifold, BUILTIN_NAMES,
};
use twistor_core::twistor::{
    ahs_as_acs, ahs_chern_numbers, ahs_total_chern, pd_section, twistor_relation6,
};
use twistor_core::{ErrorCode, Result};

/// Mismatches found while checking one criterion.
#[derive(Default)]
struct Criterion {
    checked: usize,
    failures: Vec<String>,
}

impl Criterion {
    fn eq<T: PartialEq + std::fmt::Debug>(
        &mut self,
        what: impl Into<String>,
        expected: T,
        actual: Result<T>,
    ) {
        self.checked += 1;
        match actual {
            Ok(a) if a == expected => {}
            Ok(a) => self
                .failures
                .push(format!("{}: expected {expected:?}, got {a:?}", what.into())),
            Err(e) => self.failures.push(format!(
                "{}: expected {expected:?}, got error {e}",
                what.into()
            )),
        }
    }

    fn holds(&mut self, what: impl Into<String>, ok: Result<bool>) {
        self.eq(what, true, ok);
    }
}

fn six(name: &str, params: &[i64]) -> Result<SixManifold> {
    builtin(name, params)?.six().cloned()
}

fn four(name: &str) -> Result<FourManifoldData> {
    builtin(name, &[])?.four().cloned()
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Every ring-mode 6-manifold the builtins provide, including twistor spaces.
fn ring_manifolds() -> Result<Vec<SixManifold>> {
    let mut out = vec![
        six("S6", &[])?,
        six("gS3xS3", &[2])?,
        six("gS2xS4", &[1])?,
        six("gS2xS4", &[2])?,
        six("CP3", &[])?,
        six("F3", &[])?,
    ];
    for name in ["S4", "CP2", "CP2bar"] {
        for sign in [Orientation::Positive, Orientation::Negative] {
            out.push(ahs_as_acs(&four(name)?, sign)?);
        }
    }
    Ok(out)
}

fn criterion1() -> Criterion {
    let mut c = Criterion::default();
    c.eq(
        "S6",
        big(-2),
        six("S6", &[]).and_then(|m| self_intersection(&m, "std")),
    );
    for g in [0, 2, 3, 4, 5] {
        c.eq(
            format!("{g}(S3xS3)"),
            big(2 * g - 2),
            six("gS3xS3", &[g]).and_then(|m| self_intersection(&m, "std")),
        );
    }
    for g in 1..=5 {
        match six("gS2xS4", &[g, -2, 2]) {
            Ok(m) => {
                assert_eq!(m.acs_names().len(), (g as usize) * 4 + 1);
                for name in m.acs_names() {
                    c.eq(
                        format!("{g}(S2xS4) {name}"),
                        big(-2 * g - 2),
                        self_intersection(&m, name),
                    );
                }
            }
            Err(e) => c.eq(format!("{g}(S2xS4)"), (), Err(e)),
        }
    }
    for k in -5..=5 {
        c.eq(
            format!("CP3 k={k}"),
            big(4 * k * k * k - 4 * k - 4),
            six("CP3", &[]).and_then(|m| self_intersection(&m, &cp3_acs_name(k))),
        );
    }
    c.eq(
        "CP3 std",
        big(20),
        six("CP3", &[]).and_then(|m| self_intersection(&m, "std")),
    );
    for m in 1..=3 {
        c.eq(
            format!("K3xS2 m={m}"),
            big(48 * (m - 1)),
            six("K3xS2", &[]).and_then(|x| self_intersection(&x, &format!("m={m}"))),
        );
    }
    c
}

fn criterion2() -> Criterion {
    let mut c = Criterion::default();
    match six("CP3", &[]) {
        Ok(m) => {
            for k in -5..=5i64 {
                for l in -5..=5i64 {
                    let expected = k.pow(3) + k * k * l + k * l * l + l.pow(3) - 2 * k - 2 * l - 4;
                    c.eq(
                        format!("CP3 closed form ({k},{l})"),
                        big(expected),
                        Ok(cp3_closed_form(k, l)),
                    );
                    c.eq(
                        format!("CP3 general formula ({k},{l})"),
                        big(expected),
                        m.acs(&cp3_acs_name(k))
                            .and_then(|j| intersection(j, m.acs(&cp3_acs_name(l))?)),
                    );
                }
            }
            for l in -5..=-1 {
                c.holds(
                    format!("CP3 (2,{l}) negative"),
                    m.acs("std")
                        .and_then(|j| intersection(j, m.acs(&cp3_acs_name(l))?))
                        .map(|v| v < big(0)),
                );
            }
        }
        Err(e) => c.eq("CP3", (), Err(e)),
    }
    match ring_manifolds() {
        Ok(ms) => {
            for m in &ms {
                for a in m.acs_list() {
                    c.eq(
                        format!("{} diagonal {}", m.name, a.name),
                        self_intersection_acs(a).map(Scalar::from),
                        intersection_closed_form(a, a).map(Ok),
                    );
                    for b in m.acs_list() {
                        c.eq(
                            format!("{} symmetry {} {}", m.name, a.name, b.name),
                            intersection_closed_form(b, a).map_err(|e| e.to_string()),
                            Ok(intersection_closed_form(a, b).map_err(|e| e.to_string())),
                        );
                    }
                }
            }
        }
        Err(e) => c.eq("ring manifolds", (), Err(e)),
    }
    c
}

fn criterion3() -> Criterion {
    let mut c = Criterion::default();
    match ring_manifolds() {
        Ok(ms) => {
            for m in &ms {
                for a in m.acs_list() {
                    for b in m.acs_list() {
                        c.eq(
                            format!("{} oracle {} {}", m.name, a.name, b.name),
                            intersection_closed_form(a, b).map_err(|e| e.to_string()),
                            Ok(intersection_oracle(a, b).map_err(|e| e.to_string())),
                        );
                    }
                }
            }
        }
        Err(e) => c.eq("ring manifolds", (), Err(e)),
    }
    c
}

fn criterion4() -> Criterion {
    let mut c = Criterion::default();
    let mut cases: Vec<(Result<FourManifoldData>, i64, i64)> = vec![
        (four("S4"), 0, 2),
        (four("CP2"), 1, 3),
        (four("CP2bar"), -1, 3),
        (four("K3"), -16, 24),
    ];
    let cp2 = FourManifoldData::numeric("CP2", 1, 3);
    for (base, k, sigma, chi) in [("CP2", 3u32, 2, 6), ("K3", 5, 21, 29)] {
        cases.push((
            four(base).map(|m| m.reverse().connected_sum_copies(&cp2, k)),
            sigma,
            chi,
        ));
    }
    for (m, sigma, chi) in cases {
        let m = match m {
            Ok(m) => m,
            Err(e) => {
                c.eq("manifold", (), Err(e));
                continue;
            }
        };
        c.eq(
            format!("{} (σ, χ)", m.name),
            (sigma, chi),
            Ok((m.signature, m.euler)),
        );
        for (sign, c1c2) in [
            (Orientation::Positive, 12 * (sigma + chi)),
            (Orientation::Negative, 12 * (chi - sigma)),
        ] {
            let expected = (int(c1c2), int(2 * chi));
            c.eq(
                format!("Z{sign}({}) closed form", m.name),
                expected.clone(),
                Ok({
                    let n = ahs_chern_numbers(&m, sign);
                    (n.c1c2, n.c3)
                }),
            );
            if m.is_ring_mode() {
                c.eq(
                    format!("Z{sign}({}) ring", m.name),
                    expected,
                    ahs_total_chern(&m, sign).map(|p| (p.numbers.c1c2, p.numbers.c3)),
                );
            }
        }
    }
    for (base, k, chi, sigma) in [("CP2", 3i64, 3, 1), ("K3", 5, 24, -16)] {
        let m = four(base).map(|m| m.reverse().connected_sum_copies(&cp2, k as u32));
        c.eq(
            format!("Z-(rev({base})#{k}CP2) self-intersection"),
            int(10 * chi + 12 * sigma - 2 * k),
            m.map(|m| {
                let n = ahs_chern_numbers(&m, Orientation::Negative);
                n.c1c2 - n.c3
            }),
        );
    }
    c
}

fn criterion5() -> Criterion {
    let mut c = Criterion::default();
    let z = four("S4").and_then(|m| ahs_as_acs(&m, Orientation::Positive));
    let coefficients = |m: &SixManifold, acs: &str| -> Result<Vec<Vec<Scalar>>> {
        let r = twistor_relation6(m.acs(acs)?, Orientation::Positive)?;
        Ok(r.relation()
            .iter()
            .map(|k| k.coefficients().to_vec())
            .collect())
    };
    let frozen = vec![vec![], vec![int(20)], vec![int(22)], vec![int(8)]];
    c.eq(
        "CP3 std relation",
        frozen.clone(),
        six("CP3", &[]).and_then(|m| coefficients(&m, "std")),
    );
    c.eq(
        "Z+(S4) relation",
        frozen,
        z.as_ref()
            .map_err(Clone::clone)
            .and_then(|m| coefficients(m, "ahs")),
    );
    c.eq(
        "Z+(S4) Chern numbers",
        (int(24), int(4)),
        z.as_ref()
            .map_err(Clone::clone)
            .and_then(|m| m.chern_numbers("ahs"))
            .map(|n| (n.c1c2, n.c3)),
    );
    c.eq(
        "Z+(S4) self-intersection",
        big(20),
        z.and_then(|m| self_intersection(&m, "ahs")),
    );
    c
}

fn criterion6() -> Criterion {
    let mut c = Criterion::default();
    let model = |m: Result<SixManifold>, acs: &str| {
        m.and_then(|m| minimal_model(&m, acs))
            .map(|r| (r.generators, r.pi1.order, r.formal))
    };
    c.eq(
        "S6",
        (vec![(7, 1)], big(2), true),
        model(six("S6", &[]), "std"),
    );
    for g in [0i64, 2, 3] {
        let mut gens = vec![(7, 1)];
        if g > 0 {
            gens.push((4, 2 * g as u64));
        }
        c.eq(
            format!("{g}(S3xS3)"),
            (gens, big((2 * g - 2).abs()), true),
            model(six("gS3xS3", &[g]), "std"),
        );
    }
    for k in -2i64..=3 {
        c.eq(
            format!("CP3 k={k}"),
            (
                vec![(7, 1), (5, 1), (3, 1)],
                big((4 * k * k * k - 4 * k - 4).abs()),
                true,
            ),
            model(six("CP3", &[]), &cp3_acs_name(k)),
        );
    }
    c.eq(
        "1(S3xS3) rejected",
        Some(ErrorCode::ChernNumberZero),
        Ok(model(six("gS3xS3", &[1]), "std").err().map(|e| e.code)),
    );
    c
}

fn criterion7() -> Criterion {
    let mut c = Criterion::default();
    c.holds(
        "CP2bar Hirzebruch congruence",
        four("CP2bar").map(|m| {
            validate_orientation_compatible(&m).has_failure(ErrorCode::HirzebruchCongruence)
        }),
    );
    let std_line = "acs \"std\" { c1 = 4 x ; c2 = 6 x2 ; c3 = 4 vol }";
    for (what, line, code) in [
        (
            "c3 perturbed",
            "acs \"std\" { c1 = 4 x ; c2 = 6 x2 ; c3 = 5 vol }",
            ErrorCode::EulerMismatch,
        ),
        (
            "c2 perturbed",
            "acs \"std\" { c1 = 4 x ; c2 = 7 x2 ; c3 = 4 vol }",
            ErrorCode::P1Mismatch,
        ),
    ] {
        let text = builtin("CP3", &[2, 2]).map(|f| print_manifold(&f));
        c.holds(
            "CP3 unperturbed text",
            text.as_ref()
                .map(|t| t.contains(std_line))
                .map_err(Clone::clone),
        );
        c.eq(
            format!("CP3 {what}"),
            Some(code),
            text.map(|t| {
                parse_manifold(&t.replace(std_line, line))
                    .err()
                    .map(|e| e.code)
            }),
        );
    }
    for (name, coefficient, expected) in [("CP2", 3, true), ("S4", 0, true), ("CP2", 0, false)] {
        let passed = four(name).and_then(|m| {
            let ring = m.require_ring()?.clone();
            let alpha = if coefficient == 0 {
                ring.zero(2)
            } else {
                ring.class(2, &[(coefficient, "h")])?
            };
            Ok(check_spinc_lift(&m, &alpha)?.passed)
        });
        c.eq(
            format!("{name} α = {coefficient} divisibility"),
            expected,
            passed,
        );
    }
    c
}

fn criterion8() -> Criterion {
    let mut c = Criterion::default();
    match ring_manifolds() {
        Ok(ms) => {
            for m in &ms {
                for a in m.acs_list() {
                    c.holds(
                        format!("{} t·PD({}) = 0", m.name, a.name),
                        pd_section(a)
                            .and_then(|pd| pd.ring().t().mul(&pd))
                            .map(|v| v.is_zero()),
                    );
                    for b in m.acs_list() {
                        c.holds(
                            format!("{} integral {} {}", m.name, a.name, b.name),
                            intersection_closed_form(a, b).map(|v| v.is_integer()),
                        );
                    }
                }
                let ring = m.ring().expect("ring mode").clone();
                let refs: Vec<_> = ring.basis_refs().collect();
                let dim = ring.dim();
                for &x in &refs {
                    for &y in refs.iter().filter(|y| x.degree + y.degree <= dim) {
                        let (a, b) = (ring.basis_class(x), ring.basis_class(y));
                        let ab = a.mul(&b).map_err(|e| e.to_string());
                        c.eq(
                            format!("{} commutative", m.name),
                            ab.clone(),
                            Ok(b.mul(&a).map_err(|e| e.to_string())),
                        );
                        for &z in refs
                            .iter()
                            .filter(|z| x.degree + y.degree + z.degree <= dim)
                        {
                            let cz = ring.basis_class(z);
                            let left = a
                                .mul(&b)
                                .and_then(|p| p.mul(&cz))
                                .map_err(|e| e.to_string());
                            let right = b
                                .mul(&cz)
                                .and_then(|p| a.mul(&p))
                                .map_err(|e| e.to_string());
                            c.eq(format!("{} associative", m.name), left, Ok(right));
                        }
                    }
                }
            }
        }
        Err(e) => c.eq("ring manifolds", (), Err(e)),
    }
    for &name in BUILTIN_NAMES {
        let params: &[i64] = if matches!(name, "gS3xS3" | "gS2xS4") {
            &[2]
        } else {
            &[]
        };
        let text = builtin(name, params).map(|f| print_manifold(&f));
        match text {
            Ok(t) => c.eq(
                format!("{name} round trip"),
                t.clone(),
                parse_manifold(&t).map(|f| print_manifold(&f)),
            ),
            Err(e) => c.eq(format!("{name} round trip"), String::new(), Err(e)),
        }
    }
    c
}

fn main() -> ExitCode {
    type Check = fn() -> Criterion;
    let criteria: [(&str, Check); 8] = [
        ("self-intersection corpus", criterion1),
        ("pairwise intersections", criterion2),
        ("oracle equivalence", criterion3),
        ("twistor Chern numbers of 4-manifolds", criterion4),
        ("chaining through Z+(S4)", criterion5),
        ("rational homotopy", criterion6),
        ("validators", criterion7),
        ("algebraic properties", criterion8),
    ];
    let mut all = true;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let c = run();
        let ok = c.failures.is_empty();
        all &= ok;
        println!(
            "{} criterion {} {title}: {}/{} checks",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            c.checked - c.failures.len(),
            c.checked
        );
        for f in c.failures.iter().take(10) {
            println!("    {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
