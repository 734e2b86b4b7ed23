//! A small definition language for maps, curves, points and product
//! systems.
//!
//! ```text
//! # z -> z^2 - 1
//! map f : P1 -> P1 = [x0^2 - x1^2, x1^2]
//! curve E = [0, -2]
//! point P0 = [3 : 5]
//! point O1 = O
//! product s = (E, 1, P0) x (E, 2, O)
//! ```
//!
//! A product `(E1, m1, T1) x (E2, m2, T2)` is the map
//! `(P, Q) -> ([m1]P + T1, [m2]Q + T2)`; `O` is the identity.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::elliptic::{ECPoint, EllipticCurve, FactorMap, ProductSystem};
use crate::error::Error;
use crate::projective::{HomogForm, Morphism, ProjPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    /// The full source line containing the position.
    pub excerpt: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        writeln!(f, "{sev}: {} at {}:{}", self.message, self.line, self.column)?;
        writeln!(f, "  | {}", self.excerpt)?;
        write!(f, "  | {}^", " ".repeat(self.column.saturating_sub(1)))
    }
}

/// Byte range in the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

/// A point literal, kept as written and interpreted where it is used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointValue {
    Coords(Vec<BigRational>),
    Identity,
}

impl PointValue {
    pub fn to_proj(&self) -> Result<ProjPoint, Error> {
        match self {
            PointValue::Coords(c) => ProjPoint::normalize(c),
            PointValue::Identity => Err(Error::Precondition("O is not a point of projective space".into())),
        }
    }

    /// `[x : y]` as an affine point of `E`.
    pub fn to_ec(&self, e: &EllipticCurve) -> Result<ECPoint, Error> {
        match self {
            PointValue::Identity => Ok(ECPoint::Infinity),
            PointValue::Coords(c) if c.len() == 2 => e.point(c[0].clone(), c[1].clone()),
            PointValue::Coords(c) => Err(Error::DimensionMismatch { expected: 2, found: c.len() }),
        }
    }
}

impl fmt::Display for PointValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointValue::Identity => write!(f, "O"),
            PointValue::Coords(c) => {
                let parts: Vec<String> = c.iter().map(|r| r.to_string()).collect();
                write!(f, "[{}]", parts.join(" : "))
            }
        }
    }
}

/// One factor `(curve, m, point)` of a product definition, by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorRef {
    pub curve: String,
    pub m: i64,
    /// `None` for `O`.
    pub point: Option<String>,
}

impl fmt::Display for FactorRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.curve, self.m, self.point.as_deref().unwrap_or("O"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductDef {
    pub first: FactorRef,
    pub second: FactorRef,
    pub system: ProductSystem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum DefKind {
    Map(Morphism),
    Curve(EllipticCurve),
    Point(PointValue),
    Product(ProductDef),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub kind: DefKind,
}

impl fmt::Display for Definition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = &self.name;
        match &self.kind {
            DefKind::Map(m) => {
                let n = m.dim();
                let forms: Vec<String> = m.forms().iter().map(|h| h.to_string()).collect();
                write!(f, "map {name} : P{n} -> P{n} = [{}]", forms.join(", "))
            }
            DefKind::Curve(e) => write!(f, "curve {name} = [{}, {}]", e.a(), e.b()),
            DefKind::Point(p) => write!(f, "point {name} = {p}"),
            DefKind::Product(p) => write!(f, "product {name} = {} x {}", p.first, p.second),
        }
    }
}

/// Parsed definitions in source order. Equality ignores source positions.
#[derive(Debug, Clone)]
pub struct DslDocument {
    defs: Vec<Definition>,
    spans: Vec<Span>,
}

impl PartialEq for DslDocument {
    fn eq(&self, other: &Self) -> bool {
        self.defs == other.defs
    }
}

impl Eq for DslDocument {}

impl DslDocument {
    pub fn definitions(&self) -> &[Definition] {
        &self.defs
    }

    pub fn span(&self, index: usize) -> Option<Span> {
        self.spans.get(index).copied()
    }

    pub fn get(&self, name: &str) -> Option<&DefKind> {
        self.defs.iter().find(|d| d.name == name).map(|d| &d.kind)
    }

    pub fn map(&self, name: &str) -> Option<&Morphism> {
        match self.get(name)? {
            DefKind::Map(m) => Some(m),
            _ => None,
        }
    }

    pub fn curve(&self, name: &str) -> Option<&EllipticCurve> {
        match self.get(name)? {
            DefKind::Curve(e) => Some(e),
            _ => None,
        }
    }

    pub fn point(&self, name: &str) -> Option<&PointValue> {
        match self.get(name)? {
            DefKind::Point(p) => Some(p),
            _ => None,
        }
    }

    pub fn product(&self, name: &str) -> Option<&ProductDef> {
        match self.get(name)? {
            DefKind::Product(p) => Some(p),
            _ => None,
        }
    }

    /// The first map, with its name.
    pub fn first_map(&self) -> Option<(&str, &Morphism)> {
        self.defs.iter().find_map(|d| match &d.kind {
            DefKind::Map(m) => Some((d.name.as_str(), m)),
            _ => None,
        })
    }
}

/// Canonical source text; parsing it yields an equal document.
impl fmt::Display for DslDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.defs {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Colon,
    Arrow,
    Eq,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Eof => write!(f, "end of input"),
            other => {
                let s = match other {
                    Tok::Colon => ":",
                    Tok::Arrow => "->",
                    Tok::Eq => "=",
                    Tok::LBracket => "[",
                    Tok::RBracket => "]",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::Comma => ",",
                    Tok::Plus => "+",
                    Tok::Minus => "-",
                    Tok::Star => "*",
                    Tok::Caret => "^",
                    _ => "/",
                };
                write!(f, "`{s}`")
            }
        }
    }
}

const KEYWORDS: [&str; 4] = ["map", "curve", "point", "product"];

struct Located {
    tok: Tok,
    span: Span,
}

struct Failure {
    message: String,
    at: usize,
}

type PResult<T> = Result<T, Failure>;

fn fail<T>(message: impl Into<String>, at: usize) -> PResult<T> {
    Err(Failure { message: message.into(), at })
}

fn lex(src: &str) -> Result<Vec<Located>, Failure> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Int(src[start..i].parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(src[start..i].to_string())
        } else {
            i += 1;
            match c {
                b':' => Tok::Colon,
                b'-' if bytes.get(i) == Some(&b'>') => {
                    i += 1;
                    Tok::Arrow
                }
                b'=' => Tok::Eq,
                b'[' => Tok::LBracket,
                b']' => Tok::RBracket,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b',' => Tok::Comma,
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'^' => Tok::Caret,
                b'/' => Tok::Slash,
                _ => {
                    let ch = src[start..].chars().next().expect("in bounds");
                    return Err(Failure { message: format!("unexpected character {ch:?}"), at: start });
                }
            }
        };
        out.push(Located { tok, span: Span { start, end: i } });
    }
    out.push(Located { tok: Tok::Eof, span: Span { start: src.len(), end: src.len() } });
    Ok(out)
}

/// One monomial as written, before collection.
struct RawTerm {
    coeff: BigInt,
    exps: BTreeMap<usize, u32>,
    at: usize,
}

struct Parser {
    toks: Vec<Located>,
    pos: usize,
    defined: HashMap<String, DefKind>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn at(&self) -> usize {
        self.toks[self.pos].span.start
    }

    fn bump(&mut self) -> &Located {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> PResult<Span> {
        if *self.peek() == want {
            Ok(self.bump().span)
        } else {
            fail(format!("expected {want}, found {}", self.peek()), self.at())
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, usize)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let at = self.bump().span.start;
                Ok((s, at))
            }
            other => fail(format!("expected {what}, found {other}"), self.at()),
        }
    }

    fn nat(&mut self, what: &str) -> PResult<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            other => fail(format!("expected {what}, found {other}"), self.at()),
        }
    }

    fn int(&mut self) -> PResult<BigInt> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let n = self.nat("an integer")?;
        Ok(if neg { -n } else { n })
    }

    fn rat(&mut self) -> PResult<BigRational> {
        let at = self.at();
        let num = self.int()?;
        if *self.peek() != Tok::Slash {
            return Ok(BigRational::from_integer(num));
        }
        self.bump();
        let den = self.nat("a denominator")?;
        if den.is_zero() {
            return fail("zero denominator", at);
        }
        Ok(BigRational::new(num, den))
    }

    /// Skips to the next definition keyword after an error.
    fn recover(&mut self, start: usize) {
        if self.pos == start {
            self.bump();
        }
        while !matches!(self.peek(), Tok::Eof) {
            if let Tok::Ident(s) = self.peek() {
                if KEYWORDS.contains(&s.as_str()) {
                    return;
                }
            }
            self.bump();
        }
    }

    fn definition(&mut self) -> PResult<(Definition, usize)> {
        let (kw, at) = self.ident("a definition keyword")?;
        let def = match kw.as_str() {
            "map" => self.map_def()?,
            "curve" => self.curve_def()?,
            "point" => self.point_def()?,
            "product" => self.product_def()?,
            _ => return fail(format!("unknown definition keyword `{kw}`; expected map, curve, point or product"), at),
        };
        Ok((def, at))
    }

    fn fresh_name(&mut self) -> PResult<String> {
        let (name, at) = self.ident("a name")?;
        if KEYWORDS.contains(&name.as_str()) || name == "O" || name == "x" {
            return fail(format!("`{name}` is reserved"), at);
        }
        if self.defined.contains_key(&name) {
            return fail(format!("`{name}` is already defined"), at);
        }
        Ok(name)
    }

    fn space(&mut self) -> PResult<usize> {
        let (p, at) = self.ident("a space such as P1")?;
        let n = p
            .strip_prefix('P')
            .filter(|d| !d.is_empty() && !d.starts_with('0') && d.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|d| d.parse::<usize>().ok());
        match n {
            Some(n) => Ok(n),
            None => fail(format!("expected a projective space such as P1, found `{p}`"), at),
        }
    }

    fn map_def(&mut self) -> PResult<Definition> {
        let name = self.fresh_name()?;
        self.expect(Tok::Colon)?;
        let src_at = self.at();
        let n = self.space()?;
        self.expect(Tok::Arrow)?;
        let tgt_at = self.at();
        let m = self.space()?;
        if n != m {
            return fail(format!("only self-maps are supported: P{n} -> P{m}"), tgt_at);
        }
        self.expect(Tok::Eq)?;
        let open = self.expect(Tok::LBracket)?.start;
        let mut polys = vec![(self.at(), self.poly(n)?)];
        while *self.peek() == Tok::Comma {
            self.bump();
            polys.push((self.at(), self.poly(n)?));
        }
        self.expect(Tok::RBracket)?;
        if polys.len() != n + 1 {
            return fail(format!("a self-map of P{n} needs {} components, found {}", n + 1, polys.len()), open);
        }
        let mut degree = None;
        let mut forms = Vec::new();
        for (at, terms) in polys {
            let (d, form) = collect_form(n + 1, terms, at)?;
            match degree {
                None => degree = Some((d, at)),
                Some((d0, _)) if d0 != d => {
                    return fail(format!("degree mismatch among components: {d} vs {d0}"), at);
                }
                _ => {}
            }
            forms.push(form);
        }
        let morphism = Morphism::new(forms).or_else(|e| fail(describe(&e), src_at))?;
        Ok(Definition { name, kind: DefKind::Map(morphism) })
    }

    fn poly(&mut self, n: usize) -> PResult<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut neg = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            neg = true;
        } else if *self.peek() == Tok::Plus {
            self.bump();
        }
        loop {
            let mut t = self.term(n)?;
            if neg {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            match self.peek() {
                Tok::Plus => neg = false,
                Tok::Minus => neg = true,
                _ => return Ok(terms),
            }
            self.bump();
        }
    }

    fn term(&mut self, n: usize) -> PResult<RawTerm> {
        let at = self.at();
        let mut coeff = BigInt::one();
        let mut exps = BTreeMap::new();
        let mut need_factor = true;
        if let Tok::Int(c) = self.peek().clone() {
            self.bump();
            coeff = c;
            match self.peek() {
                Tok::Star => {
                    self.bump();
                }
                Tok::Ident(_) => {}
                _ => need_factor = false,
            }
        }
        if need_factor {
            self.factor(n, &mut exps)?;
            while *self.peek() == Tok::Star {
                self.bump();
                self.factor(n, &mut exps)?;
            }
        }
        Ok(RawTerm { coeff, exps, at })
    }

    fn factor(&mut self, n: usize, exps: &mut BTreeMap<usize, u32>) -> PResult<()> {
        let (v, at) = self.ident("a variable such as x0")?;
        let index = v
            .strip_prefix('x')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|d| d.parse::<usize>().ok());
        let index = match index {
            Some(i) if i <= n => i,
            Some(i) => return fail(format!("variable x{i} does not exist on P{n} (use x0..x{n})"), at),
            None => return fail(format!("expected a variable such as x0, found `{v}`"), at),
        };
        let mut e = 1u32;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e_at = self.at();
            e = self
                .nat("an exponent")?
                .to_u32()
                .filter(|&e| e <= 1 << 16)
                .ok_or(Failure { message: "exponent too large".into(), at: e_at })?;
        }
        *exps.entry(index).or_insert(0) += e;
        Ok(())
    }

    fn curve_def(&mut self) -> PResult<Definition> {
        let name = self.fresh_name()?;
        self.expect(Tok::Eq)?;
        let at = self.expect(Tok::LBracket)?.start;
        let a = self.int()?;
        self.expect(Tok::Comma)?;
        let b = self.int()?;
        self.expect(Tok::RBracket)?;
        let e = EllipticCurve::new(a, b).or_else(|e| fail(describe(&e), at))?;
        Ok(Definition { name, kind: DefKind::Curve(e) })
    }

    fn point_def(&mut self) -> PResult<Definition> {
        let name = self.fresh_name()?;
        self.expect(Tok::Eq)?;
        if self.peek() == &Tok::Ident("O".into()) {
            self.bump();
            return Ok(Definition { name, kind: DefKind::Point(PointValue::Identity) });
        }
        let at = self.expect(Tok::LBracket)?.start;
        let mut coords = vec![self.rat()?];
        while *self.peek() == Tok::Colon {
            self.bump();
            coords.push(self.rat()?);
        }
        self.expect(Tok::RBracket)?;
        if coords.len() < 2 {
            return fail("a point needs at least two coordinates separated by `:`", at);
        }
        if coords.iter().all(Zero::is_zero) {
            return fail("all coordinates are zero", at);
        }
        Ok(Definition { name, kind: DefKind::Point(PointValue::Coords(coords)) })
    }

    fn product_def(&mut self) -> PResult<Definition> {
        let name = self.fresh_name()?;
        let at = self.expect(Tok::Eq)?.start;
        let (first, f1) = self.factor_ref()?;
        let (x, x_at) = self.ident("`x`")?;
        if x != "x" {
            return fail(format!("expected `x` between factors, found `{x}`"), x_at);
        }
        let (second, f2) = self.factor_ref()?;
        let system = ProductSystem::new(f1, f2).or_else(|e| fail(describe(&e), at))?;
        Ok(Definition { name, kind: DefKind::Product(ProductDef { first, second, system }) })
    }

    fn factor_ref(&mut self) -> PResult<(FactorRef, FactorMap)> {
        self.expect(Tok::LParen)?;
        let (curve_name, c_at) = self.ident("a curve name")?;
        let curve = match self.defined.get(&curve_name) {
            Some(DefKind::Curve(e)) => e.clone(),
            Some(_) => return fail(format!("`{curve_name}` is not a curve"), c_at),
            None => return fail(format!("`{curve_name}` is not defined"), c_at),
        };
        self.expect(Tok::Comma)?;
        let m_at = self.at();
        let m = self.int()?.to_i64().ok_or(Failure { message: "multiplier out of range".into(), at: m_at })?;
        self.expect(Tok::Comma)?;
        let (p_name, p_at) = self.ident("a point name or O")?;
        let (point, t) = if p_name == "O" {
            (None, ECPoint::Infinity)
        } else {
            let value = match self.defined.get(&p_name) {
                Some(DefKind::Point(v)) => v.clone(),
                Some(_) => return fail(format!("`{p_name}` is not a point"), p_at),
                None => return fail(format!("`{p_name}` is not defined"), p_at),
            };
            let t = value.to_ec(&curve).or_else(|e| fail(format!("{p_name}: {}", describe(&e)), p_at))?;
            (Some(p_name), t)
        };
        self.expect(Tok::RParen)?;
        let fm = FactorMap::new(curve, m, t).or_else(|e| fail(describe(&e), m_at))?;
        Ok((FactorRef { curve: curve_name, m, point }, fm))
    }
}

fn describe(e: &Error) -> String {
    match e {
        Error::NotAMorphism => "not a morphism: the resultant of the components is 0".into(),
        other => other.to_string(),
    }
}

/// Collects raw terms into a form, checking homogeneity term by term.
fn collect_form(nvars: usize, terms: Vec<RawTerm>, at: usize) -> PResult<(u32, HomogForm)> {
    let mut degree = None;
    let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for t in terms {
        if t.coeff.is_zero() {
            continue;
        }
        let d: u32 = t.exps.values().sum();
        match degree {
            None => degree = Some(d),
            Some(d0) if d0 != d => {
                return fail(format!("not homogeneous: term of degree {d} in a form of degree {d0}"), t.at);
            }
            _ => {}
        }
        let mut v = vec![0u32; nvars];
        for (i, e) in t.exps {
            v[i] = e;
        }
        *acc.entry(v).or_insert_with(BigInt::zero) += t.coeff;
    }
    let Some(d) = degree else {
        return fail("component is identically zero; give it a degree with a nonzero term", at);
    };
    let form =
        HomogForm::new(nvars, d, acc.into_iter().filter(|(_, c)| !c.is_zero())).or_else(|e| fail(describe(&e), at))?;
    Ok((d, form))
}

fn position(src: &str, offset: usize) -> (usize, usize, String) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    let column = src[line_start..offset].chars().count() + 1;
    let excerpt = src[line_start..].lines().next().unwrap_or("").to_string();
    (line, column, excerpt)
}

fn diagnostic(src: &str, f: Failure) -> Diagnostic {
    let (line, column, excerpt) = position(src, f.at);
    Diagnostic { severity: Severity::Error, message: f.message, line, column, excerpt }
}

/// Parses a document, reporting every definition that fails.
pub fn parse(src: &str) -> Result<DslDocument, Vec<Diagnostic>> {
    let toks = lex(src).map_err(|f| vec![diagnostic(src, f)])?;
    let mut p = Parser { toks, pos: 0, defined: HashMap::new() };
    let mut defs = Vec::new();
    let mut spans = Vec::new();
    let mut diags = Vec::new();
    while *p.peek() != Tok::Eof {
        let start = p.at();
        let start_pos = p.pos;
        match p.definition() {
            Ok((def, _)) => {
                let end = p.toks[p.pos.saturating_sub(1)].span.end;
                p.defined.insert(def.name.clone(), def.kind.clone());
                defs.push(def);
                spans.push(Span { start, end });
            }
            Err(f) => {
                diags.push(diagnostic(src, f));
                p.recover(start_pos);
            }
        }
    }
    if diags.is_empty() {
        Ok(DslDocument { defs, spans })
    } else {
        Err(diags)
    }
}

/// Parses a single polynomial in `x0..xn` into a homogeneous form.
pub fn parse_form(src: &str, n: usize) -> Result<HomogForm, Vec<Diagnostic>> {
    let toks = lex(src).map_err(|f| vec![diagnostic(src, f)])?;
    let mut p = Parser { toks, pos: 0, defined: HashMap::new() };
    let res = p.poly(n).and_then(|terms| {
        if *p.peek() != Tok::Eof {
            return fail(format!("unexpected {} after polynomial", p.peek()), p.at());
        }
        collect_form(n + 1, terms, 0)
    });
    res.map(|(_, f)| f).map_err(|f| vec![diagnostic(src, f)])
}

impl ProjPoint {
    /// `[a : b : …]` as accepted by the definition language.
    pub fn to_dsl(&self) -> String {
        let parts: Vec<String> = self.coords().iter().map(BigInt::to_string).collect();
        format!("[{}]", parts.join(" : "))
    }
}
