//! The regression corpus run by `twistor reproduce`.

use serde::Serialize;
use twistor_core::algebra::{format_scalar, int, ratio, Orientation, Scalar};
use twistor_core::homotopy::minimal_model;
use twistor_core::intersect::{
    cp3_closed_form, intersection_closed_form_weighted, intersection_oracle, self_intersection,
};
use twistor_core::manifold::{
    builtin, check_spinc_lift, cp3_acs_name, parse_manifold, print_manifold,
    validate_orientation_compatible, FourManifoldData, ManifoldFile, SixManifold,
};
use twistor_core::twistor::{
    ahs_as_acs, ahs_chern_numbers, ahs_total_chern_integrated, closed_form_gate_with, pd_section,
    twistor_relation6,
};
use twistor_core::{ErrorCode, Result};

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    /// Stated in the published literature.
    Published,
    /// Obtained by substitution or by an independent computation.
    Derived,
    /// Immediate from definitions.
    Trivial,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Published => "published",
            Tag::Derived => "derived",
            Tag::Trivial => "trivial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub criterion: u8,
    pub id: String,
    pub expected: String,
    pub actual: String,
    pub tag: Tag,
    pub passed: bool,
}

/// Deliberate faults for checking that the corpus detects them.
#[derive(Debug, Clone, PartialEq)]
pub struct Mutation {
    /// Integrate over `Z-` with the orientation of `Z+`.
    pub flip_minus_sign: bool,
    /// Weight of the cubic terms in the pairwise closed form.
    pub cubic_weight: Scalar,
}

impl Default for Mutation {
    fn default() -> Self {
        Mutation {
            flip_minus_sign: false,
            cubic_weight: ratio(1, 8),
        }
    }
}

impl Mutation {
    fn integration(&self, sign: Orientation) -> Orientation {
        if self.flip_minus_sign && sign == Orientation::Negative {
            sign.flipped()
        } else {
            sign
        }
    }
}

struct Corpus {
    mutation: Mutation,
    rows: Vec<Row>,
}

fn show<T: ToString>(r: Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {}", e.code),
    }
}

fn six(name: &str, params: &[i64]) -> Result<SixManifold> {
    Ok(builtin(name, params)?.six()?.clone())
}

fn four(name: &str) -> Result<FourManifoldData> {
    Ok(builtin(name, &[])?.four()?.clone())
}

fn sign_label(sign: Orientation) -> &'static str {
    sign.symbol()
}

impl Corpus {
    fn push(&mut self, criterion: u8, id: String, expected: String, actual: String, tag: Tag) {
        let passed = expected == actual;
        self.rows.push(Row {
            criterion,
            id,
            expected,
            actual,
            tag,
            passed,
        });
    }

    fn closed_form(&self, m: &SixManifold, a: &str, b: &str) -> Result<Scalar> {
        intersection_closed_form_weighted(m.acs(a)?, m.acs(b)?, &self.mutation.cubic_weight)
    }

    fn self_intersections(&mut self) {
        let s6 = six("S6", &[]).and_then(|m| self_intersection(&m, "std"));
        self.push(1, "S6".into(), "-2".into(), show(s6), Tag::Published);
        for g in [0i64, 2, 3, 4, 5] {
            let v = six("gS3xS3", &[g]).and_then(|m| self_intersection(&m, "std"));
            self.push(
                1,
                format!("{g}(S3xS3)"),
                (2 * g - 2).to_string(),
                show(v),
                Tag::Published,
            );
        }
        for g in 1i64..=5 {
            match six("gS2xS4", &[g]) {
                Ok(m) => {
                    for name in m.acs_names() {
                        let v = self_intersection(&m, name);
                        self.push(
                            1,
                            format!("{g}(S2xS4) {name}"),
                            (-2 * g - 2).to_string(),
                            show(v),
                            Tag::Published,
                        );
                    }
                }
                Err(e) => self.push(
                    1,
                    format!("{g}(S2xS4)"),
                    "ok".into(),
                    e.code.to_string(),
                    Tag::Published,
                ),
            }
        }
        let cp3 = six("CP3", &[]);
        for k in -5i64..=5 {
            let v = cp3
                .clone()
                .and_then(|m| self_intersection(&m, &cp3_acs_name(k)));
            self.push(
                1,
                format!("CP3 k={k}"),
                (4 * k * k * k - 4 * k - 4).to_string(),
                show(v),
                Tag::Published,
            );
        }
        for m in 1i64..=3 {
            let v = six("K3xS2", &[]).and_then(|x| self_intersection(&x, &format!("m={m}")));
            self.push(
                1,
                format!("K3xS2 m={m}"),
                (48 * (m - 1)).to_string(),
                show(v),
                Tag::Published,
            );
        }
    }

    fn cp3_pairs(&mut self) {
        let Ok(m) = six("CP3", &[]) else { return };
        for k in -5i64..=5 {
            let expected: Vec<String> = (-5..=5)
                .map(|l| cp3_closed_form(k, l).to_string())
                .collect();
            let actual: Vec<String> = (-5..=5)
                .map(|l| {
                    self.closed_form(&m, &cp3_acs_name(k), &cp3_acs_name(l))
                        .map_or_else(|e| format!("error: {}", e.code), |v| format_scalar(&v))
                })
                .collect();
            self.push(
                2,
                format!("CP3 k={k}, l=-5..5"),
                expected.join(" "),
                actual.join(" "),
                Tag::Published,
            );
        }
        let negative = (-5i64..=-1).all(|l| {
            self.closed_form(&m, "std", &cp3_acs_name(l))
                .is_ok_and(|v| v < int(0))
        });
        self.push(
            2,
            "CP3 k=2 against l<0".into(),
            "negative".into(),
            if negative { "negative" } else { "not negative" }.into(),
            Tag::Published,
        );
    }

    fn ring_manifolds() -> Vec<Result<SixManifold>> {
        let mut out = vec![
            six("S6", &[]),
            six("gS3xS3", &[2]),
            six("gS2xS4", &[1]),
            six("gS2xS4", &[2]),
            six("gS2xS4", &[3, -1, 1]),
            six("CP3", &[]),
            six("F3", &[]),
        ];
        for name in ["S4", "CP2", "CP2bar"] {
            for sign in [Orientation::Positive, Orientation::Negative] {
                out.push(four(name).and_then(|m| ahs_as_acs(&m, sign)));
            }
        }
        out
    }

    fn pair_identities(&mut self, m: &SixManifold) {
        let names = m.acs_names();
        let mut ok = true;
        for a in &names {
            let diag = self.closed_form(m, a, a);
            let own = self_intersection(m, a).map(Scalar::from_integer);
            ok &= diag.is_ok() && diag.ok() == own.ok();
            for b in &names {
                let ab = self.closed_form(m, a, b);
                let ba = self.closed_form(m, b, a);
                ok &= ab.is_ok() && ab.ok() == ba.ok();
            }
        }
        self.push(
            2,
            format!("{} symmetry and diagonal", m.name),
            "hold".into(),
            if ok { "hold" } else { "violated" }.into(),
            Tag::Published,
        );
    }

    fn oracle_equivalence(&mut self, m: &SixManifold) {
        let names = m.acs_names();
        let total = names.len() * names.len();
        let mut agree = 0;
        let mut integral = true;
        for a in &names {
            for b in &names {
                let closed = self.closed_form(m, a, b);
                let oracle = m
                    .acs(a)
                    .and_then(|j| m.acs(b).and_then(|jp| intersection_oracle(j, jp)));
                if let (Ok(c), Ok(o)) = (&closed, &oracle) {
                    if c == o {
                        agree += 1;
                    }
                    integral &= c.is_integer();
                }
            }
        }
        self.push(
            3,
            format!("{} oracle", m.name),
            format!("{total}/{total} agree"),
            format!("{agree}/{total} agree"),
            Tag::Derived,
        );
        self.push(
            8,
            format!("{} integrality", m.name),
            "integral".into(),
            if integral { "integral" } else { "non-integral" }.into(),
            Tag::Trivial,
        );
    }

    fn chern_numbers(&mut self) {
        let cp2 = FourManifoldData::numeric("CP2", 1, 3);
        let k3 = FourManifoldData::numeric("K3", -16, 24);
        let mut cases: Vec<(FourManifoldData, bool)> = Vec::new();
        for name in ["S4", "CP2", "CP2bar"] {
            if let Ok(m) = four(name) {
                cases.push((m, true));
            }
        }
        cases.push((k3.clone(), false));
        cases.push((cp2.reverse().connected_sum_copies(&cp2, 3), false));
        cases.push((k3.reverse().connected_sum_copies(&cp2, 5), false));
        for (m, ring_mode) in &cases {
            for sign in [Orientation::Positive, Orientation::Negative] {
                let (s, chi) = (m.signature, m.euler);
                let c1c2 = match sign {
                    Orientation::Positive => 12 * (s + chi),
                    Orientation::Negative => 12 * (chi - s),
                };
                let expected = format!("c1c2={c1c2} c3={}", 2 * chi);
                let numbers = if *ring_mode {
                    m.lifts
                        .first()
                        .ok_or_else(|| twistor_core::Error::new(ErrorCode::UnknownSpinLift, ""))
                        .and_then(|l| {
                            ahs_total_chern_integrated(
                                m,
                                &l.alpha,
                                sign,
                                self.mutation.integration(sign),
                            )
                        })
                        .map(|p| p.numbers)
                } else {
                    closed_form_gate_with(sign, self.mutation.integration(sign))
                        .map(|()| ahs_chern_numbers(m, sign))
                };
                let actual = numbers.map(|n| {
                    format!(
                        "c1c2={} c3={}",
                        format_scalar(&n.c1c2),
                        format_scalar(&n.c3)
                    )
                });
                self.push(
                    4,
                    format!("Z{}({}) (σ={s}, χ={chi})", sign_label(sign), m.name),
                    expected,
                    show(actual),
                    Tag::Published,
                );
            }
        }
        for (base, k) in [(cp2.clone(), 3i64), (k3, 5)] {
            let n = base.reverse().connected_sum_copies(&cp2, k as u32);
            let expected = 10 * base.euler + 12 * base.signature - 2 * k;
            let sign = Orientation::Negative;
            let actual = closed_form_gate_with(sign, self.mutation.integration(sign))
                .and_then(|()| ahs_as_acs(&n, sign))
                .and_then(|z| self_intersection(&z, "ahs"));
            self.push(
                4,
                format!("Z-({}) self-intersection", n.name),
                expected.to_string(),
                show(actual),
                Tag::Published,
            );
        }
    }

    fn chaining(&mut self) {
        let z = four("S4").and_then(|m| ahs_as_acs(&m, Orientation::Positive));
        let cp3 = six("CP3", &[2, 2]);
        let relation = |m: &SixManifold, acs: &str| -> Result<String> {
            let r = twistor_relation6(m.acs(acs)?, Orientation::Positive)?;
            Ok(r.relation()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" | "))
        };
        let expected = cp3
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|m| relation(m, "std"))
            .map(|s| s.replace("x2", "g").replace("vol", "t_g").replace('x', "t"));
        let actual = z
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|m| relation(m, "ahs"));
        self.push(
            5,
            "Z+(S4) relation vs CP3".into(),
            show(expected),
            show(actual),
            Tag::Derived,
        );
        let numbers = z
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|m| m.chern_numbers("ahs"))
            .map(|n| {
                format!(
                    "c1c2={} c3={}",
                    format_scalar(&n.c1c2),
                    format_scalar(&n.c3)
                )
            });
        self.push(
            5,
            "Z+(S4) Chern numbers".into(),
            "c1c2=24 c3=4".into(),
            show(numbers),
            Tag::Published,
        );
        let si = z
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|m| self_intersection(m, "ahs"));
        self.push(
            5,
            "Z+(S4) self-intersection".into(),
            "20".into(),
            show(si),
            Tag::Published,
        );
    }

    fn models(&mut self) {
        let model =
            |m: Result<SixManifold>, acs: &str| show(m.and_then(|m| minimal_model(&m, acs)));
        self.push(
            6,
            "S6".into(),
            "Λ(z7; d=0), π1 = Z/2, formal".into(),
            model(six("S6", &[]), "std"),
            Tag::Published,
        );
        for g in [0i64, 2, 3] {
            let gens = if g == 0 {
                "z7".to_string()
            } else {
                format!("z7, z4^{}", 2 * g)
            };
            self.push(
                6,
                format!("{g}(S3xS3)"),
                format!("Λ({gens}; d=0), π1 = Z/{}, formal", (2 * g - 2).abs()),
                model(six("gS3xS3", &[g]), "std"),
                Tag::Published,
            );
        }
        for k in -2i64..=3 {
            self.push(
                6,
                format!("CP3 k={k}"),
                format!(
                    "Λ(z7, z5, z3; d=0), π1 = Z/{}, formal",
                    (4 * k * k * k - 4 * k - 4).abs()
                ),
                model(six("CP3", &[]), &cp3_acs_name(k)),
                Tag::Published,
            );
        }
        self.push(
            6,
            "1(S3xS3)".into(),
            "error: chern-number-zero".into(),
            model(six("gS3xS3", &[1]), "std"),
            Tag::Published,
        );
    }

    fn validators(&mut self) {
        let hirz = four("CP2bar").map(|m| {
            let r = validate_orientation_compatible(&m);
            r.first_failure()
                .map_or("pass".to_string(), |c| c.code.to_string())
        });
        self.push(
            7,
            "CP2bar compatible acs".into(),
            "hirzebruch-congruence".into(),
            show(hirz),
            Tag::Published,
        );
        let cp3 = builtin("CP3", &[2, 2]).map(|f| print_manifold(&f));
        let std_line = "acs \"std\" { c1 = 4 x ; c2 = 6 x2 ; c3 = 4 vol }";
        for (id, replacement, expected) in [
            (
                "CP3 c3 perturbed",
                "acs \"std\" { c1 = 4 x ; c2 = 6 x2 ; c3 = 5 vol }",
                "euler-mismatch",
            ),
            (
                "CP3 c2 perturbed",
                "acs \"std\" { c1 = 4 x ; c2 = 7 x2 ; c3 = 4 vol }",
                "p1-mismatch",
            ),
        ] {
            let actual = cp3.as_ref().map_err(Clone::clone).map(|src| {
                match parse_manifold(&src.replace(std_line, replacement)) {
                    Ok(_) => "accepted".to_string(),
                    Err(e) => e.code.to_string(),
                }
            });
            self.push(7, id.into(), expected.into(), show(actual), Tag::Trivial);
        }
        for (name, alpha, expected) in [
            ("CP2", "3 h", "pass"),
            ("S4", "0", "pass"),
            ("CP2", "0", "fail"),
        ] {
            let actual = four(name).and_then(|m| {
                let ring = m.require_ring()?.clone();
                let a = if alpha == "0" {
                    ring.zero(2)
                } else {
                    ring.class(2, &[(3, "h")])?
                };
                check_spinc_lift(&m, &a)
            });
            let actual = actual.map(|c| if c.passed { "pass" } else { "fail" });
            self.push(
                7,
                format!("{name} α = {alpha} divisibility"),
                expected.into(),
                show(actual),
                Tag::Derived,
            );
        }
    }

    fn algebra_properties(&mut self, m: &SixManifold) {
        let mut annihilated = true;
        for acs in m.acs_list() {
            annihilated &= pd_section(acs)
                .and_then(|pd| pd.ring().t().mul(&pd))
                .is_ok_and(|v| v.is_zero());
        }
        self.push(
            8,
            format!("{} t·PD = 0", m.name),
            "zero".into(),
            if annihilated { "zero" } else { "non-zero" }.into(),
            Tag::Published,
        );
        if let Some(ring) = m.ring() {
            let refs: Vec<_> = ring.basis_refs().collect();
            let dim = ring.dim();
            let mut ok = true;
            for &a in &refs {
                for &b in &refs {
                    if a.degree + b.degree > dim {
                        continue;
                    }
                    let (x, y) = (ring.basis_class(a), ring.basis_class(b));
                    ok &= x.mul(&y).ok() == y.mul(&x).ok();
                    for &c in &refs {
                        if a.degree + b.degree + c.degree > dim {
                            continue;
                        }
                        let z = ring.basis_class(c);
                        let left = x.mul(&y).and_then(|p| p.mul(&z));
                        let right = y.mul(&z).and_then(|p| x.mul(&p));
                        ok &= left.is_ok() && left.ok() == right.ok();
                    }
                }
            }
            self.push(
                8,
                format!("{} products", m.name),
                "commutative, associative".into(),
                if ok {
                    "commutative, associative"
                } else {
                    "violated"
                }
                .into(),
                Tag::Trivial,
            );
        }
    }

    fn round_trips(&mut self) {
        let cases: &[(&str, &[i64])] = &[
            ("S6", &[]),
            ("gS3xS3", &[3]),
            ("gS2xS4", &[2]),
            ("CP3", &[]),
            ("K3xS2", &[]),
            ("S4", &[]),
            ("CP2", &[]),
            ("CP2bar", &[]),
            ("K3", &[]),
            ("F3", &[]),
        ];
        for (name, params) in cases {
            let result = builtin(name, params).and_then(|f| {
                let text = print_manifold(&f);
                let again: ManifoldFile = parse_manifold(&text)?;
                Ok(again == f && print_manifold(&again) == text)
            });
            let actual = result.map(|ok| if ok { "identical" } else { "differs" });
            self.push(
                8,
                format!("{name} round trip"),
                "identical".into(),
                show(actual),
                Tag::Trivial,
            );
        }
    }
}

/// Runs every corpus row in a fixed order.
pub fn run_corpus(mutation: &Mutation) -> Vec<Row> {
    let mut c = Corpus {
        mutation: mutation.clone(),
        rows: Vec::new(),
    };
    c.self_intersections();
    c.cp3_pairs();
    let manifolds = Corpus::ring_manifolds();
    for m in &manifolds {
        match m {
            Ok(m) => {
                c.pair_identities(m);
                c.oracle_equivalence(m);
                c.algebra_properties(m);
            }
            Err(e) => c.push(
                3,
                "ring manifold".into(),
                "loaded".into(),
                e.code.to_string(),
                Tag::Trivial,
            ),
        }
    }
    c.chern_numbers();
    c.chaining();
    c.models();
    c.validators();
    c.round_trips();
    c.rows.sort_by_key(|r| r.criterion);
    c.rows
}
