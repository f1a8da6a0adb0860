//! Parser for the manifold description language.
//!
//! ```text
//! manifold "CP3" {
//!   dim 6
//!   betti b1=0 b2=1 b3=0
//!   gens { x : 2 }
//!   basis deg4 { x2 }
//!   basis deg6 { vol }
//!   mul x * x = 1 x2
//!   mul x * x2 = 1 vol
//!   integral vol = 1
//!   p1 = 4 x2
//!   acs "std" { c1 = 4 x ; c2 = 6 x2 ; c3 = 4 vol }
//! }
//! manifold4 "K3" { sigma -16 ; euler 24 }
//! stub6 "K3xS2" { betti b1=0 b2=23 b3=0 ; numbers "m=1" { c1c2 = 48 ; c3 = 48 } }
//! ```
//!
//! `#` starts a line comment. `;` and `,` are optional separators.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::validate::{validate_file, ValidationReport};
use super::{
    AcsData, ChernNumberData, FourManifoldData, ManifoldFile, SixData, SixManifold, SpinLift,
};
use crate::algebra::{int, Betti, ManifoldClass, ManifoldRing, RingBuilder, Scalar, Terms};
use crate::error::{Error, ErrorCode, Location, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Str(String),
    LBrace,
    RBrace,
    Eq,
    Star,
    Plus,
    Minus,
    Colon,
    Sep,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Star => "`*`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Sep => "separator".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Location)>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let loc = Location { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        match c {
            '\n' | ' ' | '\t' | '\r' => {
                bump(&mut chars);
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            '{' | '}' | '=' | '*' | '+' | '-' | ':' | ';' | ',' => {
                bump(&mut chars);
                out.push((
                    match c {
                        '{' => Tok::LBrace,
                        '}' => Tok::RBrace,
                        '=' => Tok::Eq,
                        '*' => Tok::Star,
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        ':' => Tok::Colon,
                        _ => Tok::Sep,
                    },
                    loc,
                ));
            }
            '"' => {
                bump(&mut chars);
                let mut s = String::new();
                loop {
                    match bump(&mut chars) {
                        Some('"') => break,
                        Some('\n') | None => {
                            return Err(Error::at(ErrorCode::Syntax, loc, "unterminated string"));
                        }
                        Some(c) => s.push(c),
                    }
                }
                out.push((Tok::Str(s), loc));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while chars.peek().is_some_and(char::is_ascii_digit) {
                    s.push(bump(&mut chars).expect("peeked"));
                }
                if chars.peek().is_some_and(|c| c.is_alphabetic() || *c == '_') {
                    return Err(Error::at(
                        ErrorCode::Syntax,
                        loc,
                        "identifiers must not start with a digit",
                    ));
                }
                out.push((Tok::Int(s.parse().expect("digits")), loc));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while chars
                    .peek()
                    .is_some_and(|c| c.is_alphanumeric() || *c == '_')
                {
                    s.push(bump(&mut chars).expect("peeked"));
                }
                out.push((Tok::Ident(s), loc));
            }
            other => {
                return Err(Error::at(
                    ErrorCode::Syntax,
                    loc,
                    format!("unexpected character `{other}`"),
                ));
            }
        }
    }
    out.push((Tok::Eof, Location { line, column }));
    Ok(out)
}

/// A linear combination as written, with the location of each name.
#[derive(Debug, Clone)]
struct Expr {
    terms: Vec<(Scalar, String, Location)>,
    location: Location,
}

struct Parser {
    toks: Vec<(Tok, Location)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn loc(&self) -> Location {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> (Tok, Location) {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn skip_separators(&mut self) {
        while *self.peek() == Tok::Sep {
            self.pos += 1;
        }
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::at(ErrorCode::Syntax, self.loc(), msg))
    }

    fn expect(&mut self, tok: Tok) -> Result<Location> {
        if *self.peek() == tok {
            Ok(self.next().1)
        } else {
            self.syntax(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            ))
        }
    }

    fn ident(&mut self) -> Result<(String, Location)> {
        match self.next() {
            (Tok::Ident(s), loc) => Ok((s, loc)),
            (t, loc) => Err(Error::at(
                ErrorCode::Syntax,
                loc,
                format!("expected a name, found {}", t.describe()),
            )),
        }
    }

    fn string(&mut self) -> Result<(String, Location)> {
        match self.next() {
            (Tok::Str(s), loc) => Ok((s, loc)),
            (t, loc) => Err(Error::at(
                ErrorCode::Syntax,
                loc,
                format!("expected a quoted name, found {}", t.describe()),
            )),
        }
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let negative = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        match self.next() {
            (Tok::Int(n), _) => Ok(if negative { -n } else { n }),
            (t, loc) => Err(Error::at(
                ErrorCode::Syntax,
                loc,
                format!("expected an integer, found {}", t.describe()),
            )),
        }
    }

    fn small_int(&mut self) -> Result<i64> {
        let loc = self.loc();
        let n = self.signed_int()?;
        i64::try_from(n).map_err(|_| Error::at(ErrorCode::Syntax, loc, "integer out of range"))
    }

    /// `<int> <name> (('+'|'-') <int> <name>)*`, or `0`. The coefficient may be
    /// omitted, meaning 1.
    fn expr(&mut self) -> Result<Expr> {
        let location = self.loc();
        let mut terms = Vec::new();
        let mut sign = Scalar::from_integer(1.into());
        let mut first = true;
        loop {
            if *self.peek() == Tok::Minus {
                self.next();
                sign = -sign;
            }
            let coeff_loc = self.loc();
            let coeff = match self.peek().clone() {
                Tok::Int(n) => {
                    self.next();
                    Some(n)
                }
                _ => None,
            };
            let name_follows = match self.peek() {
                Tok::Ident(word) => !self.starts_statement(word),
                _ => false,
            };
            match (coeff, name_follows) {
                (Some(n), false) if first && n.is_zero() && sign > Scalar::zero() => {
                    return Ok(Expr { terms, location });
                }
                (Some(_), false) => {
                    return Err(Error::at(
                        ErrorCode::Syntax,
                        coeff_loc,
                        "expected a basis name after the coefficient",
                    ));
                }
                (c, true) => {
                    let (name, loc) = self.ident()?;
                    let c = c.map_or_else(|| int(1), Scalar::from_integer);
                    terms.push((&sign * c, name, loc));
                }
                (None, false) => {
                    return self.syntax(format!(
                        "expected a class expression, found {}",
                        self.peek().describe()
                    ));
                }
            }
            first = false;
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    sign = int(1);
                }
                Tok::Minus => {
                    sign = int(1);
                }
                _ => return Ok(Expr { terms, location }),
            }
        }
    }

    /// Whether the identifier under the cursor begins the next statement
    /// rather than continuing a class expression.
    fn starts_statement(&self, word: &str) -> bool {
        match self.peek_at(1) {
            Tok::Eq | Tok::Str(_) | Tok::LBrace | Tok::Int(_) => true,
            Tok::Ident(_) => matches!(word, "mul" | "basis" | "betti" | "gens" | "integral"),
            _ => false,
        }
    }

    fn betti(&mut self, allowed: &[&str]) -> Result<HashMap<String, u32>> {
        let mut out = HashMap::new();
        while let Tok::Ident(key) = self.peek().clone() {
            if *self.peek_at(1) != Tok::Eq {
                break;
            }
            let loc = self.loc();
            if !allowed.contains(&key.as_str()) {
                return Err(Error::at(
                    ErrorCode::UnknownKey,
                    loc,
                    format!("unknown Betti number `{key}`"),
                ));
            }
            self.next();
            self.next();
            let v = self.small_int()?;
            let v = u32::try_from(v)
                .map_err(|_| Error::at(ErrorCode::Syntax, loc, "Betti numbers are non-negative"))?;
            if out.insert(key.clone(), v).is_some() {
                return Err(Error::at(
                    ErrorCode::DuplicateName,
                    loc,
                    format!("`{key}` given twice"),
                ));
            }
        }
        Ok(out)
    }
}

#[derive(Default)]
struct RingDecl {
    header: Option<Location>,
    dim: Option<(u32, Location)>,
    betti: HashMap<String, u32>,
    basis: Vec<(String, u32, Location)>,
    products: Vec<(String, String, Expr, Location)>,
    integral: Option<(String, BigInt, Location)>,
    p1: Option<Expr>,
    euler: Option<Expr>,
    acs: Vec<AcsDecl>,
    lifts: Vec<(String, Location, Expr)>,
}

/// A named structure with its `c1`/`c2`/`c3` assignments.
type AcsDecl = (String, Location, Vec<(String, Expr)>);

fn parse_ring_block(p: &mut Parser, name: &str) -> Result<RingDecl> {
    let mut d = RingDecl {
        header: Some(p.loc()),
        ..Default::default()
    };
    p.expect(Tok::LBrace)?;
    loop {
        p.skip_separators();
        if *p.peek() == Tok::RBrace {
            p.next();
            break;
        }
        let (key, loc) = match p.next() {
            (Tok::Ident(k), loc) => (k, loc),
            (Tok::Eof, loc) => {
                return Err(Error::at(
                    ErrorCode::Syntax,
                    loc,
                    format!("unterminated block for `{name}`"),
                ))
            }
            (t, loc) => {
                return Err(Error::at(
                    ErrorCode::Syntax,
                    loc,
                    format!("expected a statement, found {}", t.describe()),
                ))
            }
        };
        match key.as_str() {
            "dim" => {
                let v = p.small_int()?;
                d.dim = Some((u32::try_from(v).unwrap_or(0), loc));
            }
            "betti" => {
                d.betti = p.betti(&["b1", "b2", "b3"])?;
            }
            "gens" => {
                p.expect(Tok::LBrace)?;
                loop {
                    p.skip_separators();
                    if *p.peek() == Tok::RBrace {
                        p.next();
                        break;
                    }
                    let (n, nloc) = p.ident()?;
                    p.expect(Tok::Colon)?;
                    let deg = p.small_int()?;
                    d.basis.push((n, u32::try_from(deg).unwrap_or(0), nloc));
                }
            }
            "basis" => {
                let (tag, tloc) = p.ident()?;
                let deg = tag
                    .strip_prefix("deg")
                    .and_then(|s| s.parse::<u32>().ok())
                    .ok_or_else(|| {
                        Error::at(
                            ErrorCode::Syntax,
                            tloc,
                            format!("expected `degN`, found `{tag}`"),
                        )
                    })?;
                p.expect(Tok::LBrace)?;
                loop {
                    p.skip_separators();
                    if *p.peek() == Tok::RBrace {
                        p.next();
                        break;
                    }
                    let (n, nloc) = p.ident()?;
                    d.basis.push((n, deg, nloc));
                }
            }
            "mul" => {
                let (a, _) = p.ident()?;
                p.expect(Tok::Star)?;
                let (b, _) = p.ident()?;
                p.expect(Tok::Eq)?;
                let e = p.expr()?;
                d.products.push((a, b, e, loc));
            }
            "integral" => {
                let (n, _) = p.ident()?;
                p.expect(Tok::Eq)?;
                let v = p.signed_int()?;
                d.integral = Some((n, v, loc));
            }
            "p1" | "e" => {
                p.expect(Tok::Eq)?;
                let e = p.expr()?;
                if key == "p1" {
                    d.p1 = Some(e);
                } else {
                    d.euler = Some(e);
                }
            }
            "acs" => {
                let (n, nloc) = p.string()?;
                p.expect(Tok::LBrace)?;
                let mut fields = Vec::new();
                loop {
                    p.skip_separators();
                    if *p.peek() == Tok::RBrace {
                        p.next();
                        break;
                    }
                    let (f, floc) = p.ident()?;
                    if !matches!(f.as_str(), "c1" | "c2" | "c3") {
                        return Err(Error::at(
                            ErrorCode::UnknownKey,
                            floc,
                            format!("unknown field `{f}` in acs block"),
                        ));
                    }
                    if fields.iter().any(|(k, _)| *k == f) {
                        return Err(Error::at(
                            ErrorCode::DuplicateName,
                            floc,
                            format!("`{f}` given twice"),
                        ));
                    }
                    p.expect(Tok::Eq)?;
                    fields.push((f, p.expr()?));
                }
                d.acs.push((n, nloc, fields));
            }
            "spinc" => {
                let (n, nloc) = p.string()?;
                p.expect(Tok::LBrace)?;
                p.skip_separators();
                let (f, floc) = p.ident()?;
                if f != "alpha" {
                    return Err(Error::at(
                        ErrorCode::UnknownKey,
                        floc,
                        format!("unknown field `{f}` in spinc block"),
                    ));
                }
                p.expect(Tok::Eq)?;
                let e = p.expr()?;
                p.skip_separators();
                p.expect(Tok::RBrace)?;
                d.lifts.push((n, nloc, e));
            }
            other => {
                return Err(Error::at(
                    ErrorCode::UnknownKey,
                    loc,
                    format!("unknown key `{other}`"),
                ))
            }
        }
    }
    Ok(d)
}

fn resolve(degrees: &HashMap<String, u32>, expr: &Expr, degree: u32) -> Result<Terms> {
    let mut out = Vec::new();
    for (c, name, loc) in &expr.terms {
        match degrees.get(name) {
            None => {
                return Err(Error::at(
                    ErrorCode::UndeclaredBasis,
                    *loc,
                    format!("`{name}` is not a declared basis element"),
                ))
            }
            Some(d) if *d != degree => {
                return Err(Error::at(
                    ErrorCode::DegreeMismatch,
                    *loc,
                    format!("`{name}` has degree {d}, expected {degree}"),
                ))
            }
            Some(_) => out.push((c.clone(), name.clone())),
        }
    }
    Ok(out)
}

fn class_of(
    ring: &Arc<ManifoldRing>,
    degrees: &HashMap<String, u32>,
    expr: &Expr,
    degree: u32,
) -> Result<ManifoldClass> {
    let terms = resolve(degrees, expr, degree)?;
    ring.class_from_terms(degree, &terms)
        .map_err(|e| Error::at(e.code, expr.location, e.message))
}

fn build_ring_file(name: String, d: RingDecl) -> Result<ManifoldFile> {
    let header = d.header.expect("set by parser");
    let (dim, dim_loc) = d.dim.ok_or_else(|| {
        Error::at(
            ErrorCode::MissingField,
            header,
            format!("`{name}` has no `dim`"),
        )
    })?;
    if dim != 4 && dim != 6 {
        return Err(Error::at(
            ErrorCode::InvalidRing,
            dim_loc,
            "dim must be 4 or 6",
        ));
    }
    let need = |k: &str| -> Result<u32> {
        d.betti.get(k).copied().ok_or_else(|| {
            Error::at(
                ErrorCode::MissingField,
                header,
                format!("`{name}` has no Betti number {k}"),
            )
        })
    };
    let betti = Betti {
        b1: need("b1")?,
        b2: need("b2")?,
        b3: if dim == 6 {
            need("b3")?
        } else {
            d.betti.get("b3").copied().unwrap_or(0)
        },
    };
    if dim == 4 && d.betti.contains_key("b3") {
        return Err(Error::at(
            ErrorCode::UnknownKey,
            header,
            "b3 is determined by b1 on a 4-manifold",
        ));
    }

    let mut degrees: HashMap<String, u32> = HashMap::new();
    for (n, deg, loc) in &d.basis {
        if degrees.insert(n.clone(), *deg).is_some() {
            return Err(Error::at(
                ErrorCode::DuplicateName,
                *loc,
                format!("`{n}` declared twice"),
            ));
        }
        if *deg == 0 || deg % 2 != 0 || *deg > dim {
            return Err(Error::at(
                ErrorCode::InvalidRing,
                *loc,
                format!("`{n}` has invalid degree {deg}"),
            ));
        }
    }

    let mut builder = RingBuilder::new(name.clone(), dim).betti(betti);
    for (n, deg, _) in &d.basis {
        builder = builder.basis(n.clone(), *deg);
    }
    for (a, b, e, loc) in &d.products {
        let da = *degrees.get(a).ok_or_else(|| {
            Error::at(
                ErrorCode::UndeclaredBasis,
                *loc,
                format!("`{a}` is not a declared basis element"),
            )
        })?;
        let db = *degrees.get(b).ok_or_else(|| {
            Error::at(
                ErrorCode::UndeclaredBasis,
                *loc,
                format!("`{b}` is not a declared basis element"),
            )
        })?;
        if da + db > dim {
            return Err(Error::at(
                ErrorCode::DegreeOverflow,
                *loc,
                format!("`{a} * {b}` has degree {} > {dim}", da + db),
            ));
        }
        builder = builder.product(a.clone(), b.clone(), resolve(&degrees, e, da + db)?);
    }
    if let Some((n, v, loc)) = &d.integral {
        if degrees.get(n) != Some(&dim) {
            return Err(Error::at(
                ErrorCode::DegreeMismatch,
                *loc,
                format!("`integral` must name the top-degree basis element, not `{n}`"),
            ));
        }
        builder = builder.volume_integral(Scalar::from_integer(v.clone()));
    }
    if let Some(e) = &d.p1 {
        builder = builder.p1(resolve(&degrees, e, 4)?);
    }
    if let Some(e) = &d.euler {
        builder = builder.euler(resolve(&degrees, e, dim)?);
    } else if dim == 4 {
        // Default e: the top class integrating to χ.
        let volume = d
            .basis
            .iter()
            .find(|(_, deg, _)| *deg == dim)
            .map(|(n, _, _)| n.clone());
        let integral = d
            .integral
            .as_ref()
            .map_or_else(|| int(1), |(_, v, _)| Scalar::from_integer(v.clone()));
        if let Some(volume) = volume.filter(|_| !integral.is_zero()) {
            let chi = int(betti.euler_characteristic(4));
            builder = builder.euler(vec![(chi / integral, volume)]);
        }
    }
    let ring = builder
        .build()
        .map_err(|e| Error::at(e.code, header, e.message))?;

    let mut acs = Vec::new();
    for (n, loc, fields) in &d.acs {
        if acs.iter().any(|a: &AcsData| a.name == *n) {
            return Err(Error::at(
                ErrorCode::DuplicateName,
                *loc,
                format!("acs `{n}` declared twice"),
            ));
        }
        let field = |k: &str, degree: u32| -> Result<ManifoldClass> {
            match fields.iter().find(|(f, _)| f == k) {
                Some((_, e)) => class_of(&ring, &degrees, e, degree),
                None => Err(Error::at(
                    ErrorCode::MissingField,
                    *loc,
                    format!("acs `{n}` has no {k}"),
                )),
            }
        };
        let c3 = if dim == 6 {
            field("c3", 6)?
        } else {
            if fields.iter().any(|(f, _)| f == "c3") {
                return Err(Error::at(
                    ErrorCode::UnknownKey,
                    *loc,
                    "c3 is not part of 4-manifold acs data",
                ));
            }
            ring.zero(6)
        };
        acs.push(AcsData {
            name: n.clone(),
            c1: field("c1", 2)?,
            c2: field("c2", 4)?,
            c3,
        });
    }

    if dim == 6 {
        if let Some((_, loc, _)) = d.lifts.first() {
            return Err(Error::at(
                ErrorCode::UnknownKey,
                *loc,
                "spinc blocks apply to 4-manifolds only",
            ));
        }
        return Ok(ManifoldFile::Six(SixManifold::from_ring(ring, acs)));
    }

    let p1 = ring.p1().ok_or_else(|| {
        Error::at(
            ErrorCode::MissingField,
            header,
            format!("4-manifold `{name}` needs `p1`"),
        )
    })?;
    let three_sigma = p1.integrate()?;
    let sigma = (&three_sigma / int(3)).to_integer();
    if !(&three_sigma / int(3)).is_integer() {
        return Err(Error::at(
            ErrorCode::SignatureMismatch,
            header,
            "∫p1 must be divisible by 3",
        ));
    }
    let mut lifts = Vec::new();
    for (n, loc, e) in &d.lifts {
        if lifts.iter().any(|l: &SpinLift| l.name == *n) {
            return Err(Error::at(
                ErrorCode::DuplicateName,
                *loc,
                format!("spinc `{n}` declared twice"),
            ));
        }
        lifts.push(SpinLift {
            name: n.clone(),
            alpha: class_of(&ring, &degrees, e, 2)?,
        });
    }
    let signature = i64::try_from(sigma)
        .map_err(|_| Error::at(ErrorCode::InvalidRing, header, "signature out of range"))?;
    Ok(ManifoldFile::Four(FourManifoldData {
        name,
        signature,
        euler: ring.euler_characteristic(),
        ring: Some(ring),
        lifts,
        acs,
    }))
}

fn parse_numeric4(p: &mut Parser, name: String) -> Result<ManifoldFile> {
    let header = p.expect(Tok::LBrace)?;
    let (mut sigma, mut euler) = (None, None);
    loop {
        p.skip_separators();
        if *p.peek() == Tok::RBrace {
            p.next();
            break;
        }
        let (key, loc) = p.ident()?;
        let slot = match key.as_str() {
            "sigma" => &mut sigma,
            "euler" => &mut euler,
            other => {
                return Err(Error::at(
                    ErrorCode::UnknownKey,
                    loc,
                    format!("unknown key `{other}`"),
                ))
            }
        };
        if slot.is_some() {
            return Err(Error::at(
                ErrorCode::DuplicateName,
                loc,
                format!("`{key}` given twice"),
            ));
        }
        *slot = Some(p.small_int()?);
    }
    let missing = |k: &str| {
        Error::at(
            ErrorCode::MissingField,
            header,
            format!("`{name}` has no `{k}`"),
        )
    };
    Ok(ManifoldFile::Four(FourManifoldData::numeric(
        name.clone(),
        sigma.ok_or_else(|| missing("sigma"))?,
        euler.ok_or_else(|| missing("euler"))?,
    )))
}

fn parse_stub6(p: &mut Parser, name: String) -> Result<ManifoldFile> {
    p.expect(Tok::LBrace)?;
    let mut betti = None;
    let mut acs: Vec<ChernNumberData> = Vec::new();
    loop {
        p.skip_separators();
        if *p.peek() == Tok::RBrace {
            p.next();
            break;
        }
        let (key, loc) = p.ident()?;
        match key.as_str() {
            "betti" => {
                let b = p.betti(&["b1", "b2", "b3"])?;
                let get = |k: &str| {
                    b.get(k).copied().ok_or_else(|| {
                        Error::at(
                            ErrorCode::MissingField,
                            loc,
                            format!("missing Betti number {k}"),
                        )
                    })
                };
                betti = Some(Betti {
                    b1: get("b1")?,
                    b2: get("b2")?,
                    b3: get("b3")?,
                });
            }
            "numbers" => {
                let (n, nloc) = p.string()?;
                p.expect(Tok::LBrace)?;
                let (mut c1c2, mut c3, mut c1_cubed) = (None, None, None);
                loop {
                    p.skip_separators();
                    if *p.peek() == Tok::RBrace {
                        p.next();
                        break;
                    }
                    let (f, floc) = p.ident()?;
                    let slot = match f.as_str() {
                        "c1c2" => &mut c1c2,
                        "c3" => &mut c3,
                        "c1cubed" => &mut c1_cubed,
                        other => {
                            return Err(Error::at(
                                ErrorCode::UnknownKey,
                                floc,
                                format!("unknown field `{other}`"),
                            ))
                        }
                    };
                    p.expect(Tok::Eq)?;
                    *slot = Some(p.signed_int()?);
                }
                if acs.iter().any(|a| a.name == n) {
                    return Err(Error::at(
                        ErrorCode::DuplicateName,
                        nloc,
                        format!("`{n}` declared twice"),
                    ));
                }
                let missing =
                    |k: &str| Error::at(ErrorCode::MissingField, nloc, format!("`{n}` has no {k}"));
                acs.push(ChernNumberData {
                    name: n.clone(),
                    c1c2: c1c2.ok_or_else(|| missing("c1c2"))?,
                    c3: c3.ok_or_else(|| missing("c3"))?,
                    c1_cubed,
                });
            }
            other => {
                return Err(Error::at(
                    ErrorCode::UnknownKey,
                    loc,
                    format!("unknown key `{other}`"),
                ))
            }
        }
    }

    Ok(ManifoldFile::Six(SixManifold {
        name,
        betti,
        data: SixData::Numbers { acs },
    }))
}

fn parse_structure(src: &str) -> Result<ManifoldFile> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    p.skip_separators();
    let (kind, loc) = p.ident()?;
    let (name, _) = p.string()?;
    let file = match kind.as_str() {
        "manifold" => {
            let decl = parse_ring_block(&mut p, &name)?;
            build_ring_file(name, decl)?
        }
        "manifold4" => parse_numeric4(&mut p, name)?,
        "stub6" => parse_stub6(&mut p, name)?,
        other => {
            return Err(Error::at(
                ErrorCode::UnknownKey,
                loc,
                format!("expected `manifold`, `manifold4` or `stub6`, found `{other}`"),
            ))
        }
    };
    p.skip_separators();
    if *p.peek() != Tok::Eof {
        return p.syntax("one manifold per file");
    }
    Ok(file)
}

/// Parses and validates a manifold description. Any failed consistency check
/// is an error.
pub fn parse_manifold(src: &str) -> Result<ManifoldFile> {
    let file = parse_structure(src)?;
    validate_file(&file)?.into_result()?;
    Ok(file)
}

/// Parses a manifold description, returning consistency failures as a report
/// instead of an error. Syntax and name-resolution errors are still fatal.
pub fn parse_manifold_lenient(src: &str) -> Result<(ManifoldFile, ValidationReport)> {
    let file = parse_structure(src)?;
    let report = validate_file(&file)?;
    Ok((file, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CP3: &str = r#"
manifold "CP3" {
  dim 6
  betti b1=0 b2=1 b3=0
  gens  { x : 2 }
  basis deg4 { x2 }
  basis deg6 { vol }
  mul x * x  = 1 x2
  mul x * x2 = 1 vol
  integral vol = 1
  p1 = 4 x2
  acs "std" { c1 = 4 x ; c2 = 6 x2 ; c3 = 4 vol }
  acs "k=-1" { c1 = -2 x ; c2 = 0 ; c3 = 4 vol }
}
"#;

    #[test]
    fn parses_the_reference_example() {
        let f = parse_manifold(CP3).unwrap();
        let m = f.six().unwrap();
        let ring = m.ring().unwrap();
        assert_eq!(ring.basis_names(2), ["x"]);
        assert_eq!(ring.basis_names(4), ["x2"]);
        assert_eq!(ring.volume_name(), "vol");
        assert_eq!(m.acs_names(), ["std", "k=-1"]);
        let std = m.acs("std").unwrap();
        assert_eq!(std.c1, ring.class(2, &[(4, "x")]).unwrap());
        let k = m.acs("k=-1").unwrap();
        assert!(k.c2.is_zero());
    }

    #[test]
    fn empty_acs_list_is_valid() {
        let src = r#"manifold "S6" { dim 6 betti b1=0 b2=0 b3=0 basis deg6 { vol } }"#;
        let f = parse_manifold(src).unwrap();
        assert!(f.six().unwrap().acs_names().is_empty());
    }

    #[test]
    fn euler_mismatch_is_a_load_error() {
        let src = CP3.replace(
            "c3 = 4 vol }\n  acs \"k=-1\"",
            "c3 = 5 vol }\n  acs \"k=-1\"",
        );
        let err = parse_manifold(&src).unwrap_err();
        assert_eq!(err.code, ErrorCode::EulerMismatch);
        let (_, report) = parse_manifold_lenient(&src).unwrap();
        assert!(report.has_failure(ErrorCode::EulerMismatch));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_manifold("manifold \"X\" {\n  dim 6\n  mul x * = 1 y\n}").unwrap_err();
        assert_eq!(err.code, ErrorCode::Syntax);
        assert_eq!(
            err.location,
            Some(Location {
                line: 3,
                column: 11
            })
        );
        let err = parse_manifold("manifold \"X\" { dim 6 $ }").unwrap_err();
        assert_eq!(err.code, ErrorCode::Syntax);
        assert_eq!(err.location.unwrap().column, 22);
    }

    #[test]
    fn unknown_keys_are_errors() {
        let err = parse_manifold("manifold \"X\" { dim 6 torsion 2 }").unwrap_err();
        assert_eq!(err.code, ErrorCode::UnknownKey);
        let err = parse_manifold("manifold4 \"X\" { sigma 0 ; euler 2 ; b2 1 }").unwrap_err();
        assert_eq!(err.code, ErrorCode::UnknownKey);
        let src = CP3.replace(
            "c3 = 4 vol }\n  acs \"k=-1\"",
            "c4 = 4 vol }\n  acs \"k=-1\"",
        );
        assert_eq!(
            parse_manifold(&src).unwrap_err().code,
            ErrorCode::UnknownKey
        );
    }

    #[test]
    fn undeclared_and_wrong_degree_names() {
        let src = CP3.replace("c1 = 4 x ;", "c1 = 4 y ;");
        let err = parse_manifold(&src).unwrap_err();
        assert_eq!(err.code, ErrorCode::UndeclaredBasis);
        assert_eq!(err.location.unwrap().line, 12);
        let src = CP3.replace("c1 = 4 x ;", "c1 = 4 x2 ;");
        assert_eq!(
            parse_manifold(&src).unwrap_err().code,
            ErrorCode::DegreeMismatch
        );
    }

    #[test]
    fn numeric_four_manifold() {
        let f = parse_manifold("manifold4 \"K3\" { sigma -16 ; euler 24 }").unwrap();
        let m = f.four().unwrap();
        assert_eq!((m.signature, m.euler), (-16, 24));
        assert!(!m.is_ring_mode());
    }

    #[test]
    fn stub_six_manifold() {
        let f = parse_manifold(
            "stub6 \"K3xS2\" { betti b1=0 b2=23 b3=0 ; numbers \"m=2\" { c1c2 = 96 ; c3 = 48 } }",
        )
        .unwrap();
        let m = f.six().unwrap();
        assert_eq!(m.chern_numbers("m=2").unwrap().c1c2, int(96));
        assert_eq!(
            m.acs("m=2").unwrap_err().code,
            ErrorCode::InsufficientRingData
        );
        let bad = parse_manifold(
            "stub6 \"K3xS2\" { betti b1=0 b2=23 b3=0 ; numbers \"m=2\" { c1c2 = 96 ; c3 = 40 } }",
        )
        .unwrap_err();
        assert_eq!(bad.code, ErrorCode::EulerMismatch);
    }

    #[test]
    fn expressions_accept_signs_and_implicit_coefficients() {
        let src = r#"manifold "T" {
            dim 4 betti b1=0 b2=2
            gens { a : 2, b : 2 }
            basis deg4 { v }
            mul a * b = 1 v
            p1 = 0
            e = 4 v
            spinc "s" { alpha = a - 2 b }
        }"#;
        let f = parse_manifold(src).unwrap();
        let m = f.four().unwrap();
        let ring = m.ring.as_ref().unwrap();
        assert_eq!(
            m.lifts[0].alpha,
            ring.class(2, &[(1, "a"), (-2, "b")]).unwrap()
        );
        assert_eq!((m.signature, m.euler), (0, 4));
    }

    #[test]
    fn dangling_coefficient_is_rejected() {
        let src = CP3.replace("p1 = 4 x2", "p1 = 4");
        assert_eq!(parse_manifold(&src).unwrap_err().code, ErrorCode::Syntax);
    }
}
