use std::fmt::Write;
use std::sync::Arc;

use super::{FourManifoldData, ManifoldFile, SixData, SixManifold};
use crate::algebra::{format_scalar, Betti, ManifoldClass, ManifoldRing};

fn ring_body(out: &mut String, ring_arc: &Arc<ManifoldRing>) {
    let ring: &ManifoldRing = ring_arc;
    let dim = ring.dim();
    let Betti { b1, b2, b3 } = ring.betti();
    let _ = writeln!(out, "  dim {dim}");
    if dim == 6 {
        let _ = writeln!(out, "  betti b1={b1} b2={b2} b3={b3}");
    } else {
        let _ = writeln!(out, "  betti b1={b1} b2={b2}");
    }
    let gens = ring.basis_names(2);
    if !gens.is_empty() {
        let list: Vec<String> = gens.iter().map(|g| format!("{g} : 2")).collect();
        let _ = writeln!(out, "  gens {{ {} }}", list.join(", "));
    }
    for degree in (4..=dim).step_by(2) {
        let names = ring.basis_names(degree);
        if !names.is_empty() {
            let _ = writeln!(out, "  basis deg{degree} {{ {} }}", names.join(" "));
        }
    }
    let refs: Vec<_> = ring.basis_refs().skip(1).collect();
    for (i, &a) in refs.iter().enumerate() {
        for &b in &refs[i..] {
            if a.degree + b.degree > dim {
                continue;
            }
            if let Some(v) = ring.structure_constant(a, b) {
                let class = ManifoldClass::from_coefficients(
                    ring_arc,
                    (a.degree + b.degree) as i32,
                    v.to_vec(),
                )
                .expect("structure constants have the right rank");
                let _ = writeln!(
                    out,
                    "  mul {} * {} = {class}",
                    ring.basis_name(a),
                    ring.basis_name(b)
                );
            }
        }
    }
    let _ = writeln!(
        out,
        "  integral {} = {}",
        ring.volume_name(),
        format_scalar(ring.volume_integral())
    );
    if let Some(p1) = ring_arc.p1() {
        let _ = writeln!(out, "  p1 = {p1}");
    }
    if let Some(e) = ring_arc.euler_class() {
        let _ = writeln!(out, "  e = {e}");
    }
}

fn print_six(m: &SixManifold) -> String {
    let mut out = String::new();
    match &m.data {
        SixData::Ring { ring, acs } => {
            let _ = writeln!(out, "manifold \"{}\" {{", m.name);
            ring_body(&mut out, ring);
            for a in acs {
                let _ = writeln!(
                    out,
                    "  acs \"{}\" {{ c1 = {} ; c2 = {} ; c3 = {} }}",
                    a.name, a.c1, a.c2, a.c3
                );
            }
        }
        SixData::Numbers { acs } => {
            let _ = writeln!(out, "stub6 \"{}\" {{", m.name);
            if let Some(Betti { b1, b2, b3 }) = m.betti {
                let _ = writeln!(out, "  betti b1={b1} b2={b2} b3={b3}");
            }
            for a in acs {
                let _ = write!(
                    out,
                    "  numbers \"{}\" {{ c1c2 = {} ; c3 = {}",
                    a.name, a.c1c2, a.c3
                );
                if let Some(c) = &a.c1_cubed {
                    let _ = write!(out, " ; c1cubed = {c}");
                }
                let _ = writeln!(out, " }}");
            }
        }
    }
    out.push_str("}\n");
    out
}

fn print_four(m: &FourManifoldData) -> String {
    let Some(ring) = &m.ring else {
        return format!(
            "manifold4 \"{}\" {{ sigma {} ; euler {} }}\n",
            m.name, m.signature, m.euler
        );
    };
    let mut out = String::new();
    let _ = writeln!(out, "manifold \"{}\" {{", m.name);
    ring_body(&mut out, ring);
    for l in &m.lifts {
        let _ = writeln!(out, "  spinc \"{}\" {{ alpha = {} }}", l.name, l.alpha);
    }
    for a in &m.acs {
        let _ = writeln!(
            out,
            "  acs \"{}\" {{ c1 = {} ; c2 = {} }}",
            a.name, a.c1, a.c2
        );
    }
    out.push_str("}\n");
    out
}

/// Canonical text form; parsing it reproduces the same file.
pub fn print_manifold(file: &ManifoldFile) -> String {
    match file {
        ManifoldFile::Six(m) => print_six(m),
        ManifoldFile::Four(m) => print_four(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::parse_manifold;

    #[test]
    fn canonical_cp3_text() {
        let src = "manifold \"CP3\" {\n  dim 6\n  betti b1=0 b2=1 b3=0\n  gens { x : 2 }\n  basis deg4 { x2 }\n  basis deg6 { vol }\n  mul x * x = 1 x2\n  mul x * x2 = 1 vol\n  integral vol = 1\n  p1 = 4 x2\n  acs \"std\" { c1 = 4 x ; c2 = 6 x2 ; c3 = 4 vol }\n  acs \"k=-1\" { c1 = -2 x ; c2 = 0 ; c3 = 4 vol }\n}\n";
        let f = parse_manifold(src).unwrap();
        assert_eq!(print_manifold(&f), src);
    }

    #[test]
    fn canonical_numeric_text() {
        let src = "manifold4 \"K3\" { sigma -16 ; euler 24 }\n";
        assert_eq!(print_manifold(&parse_manifold(src).unwrap()), src);
    }
}
