//! The line-oriented document format.
//!
//! ```text
//! # Z/2 -> Z/4 -> Z/2
//! complex A
//!   deg 0: Z/2
//! end
//! complex E
//!   deg -1: Z
//!   deg 0: Z
//!   d -1: [[4]]
//! end
//! map pi: E -> A
//!   deg 0: [[1]]
//! end
//! fraction J = pi
//! class x = ext A A 1 [1]
//! ```
//!
//! Groups are `0`, `Z`, `Z^n`, `Z/m`, sums `Z/2 + Z`, or a presentation
//! `<n | [[r11, ..], ..]>` with relations as rows. Matrices act on column
//! vectors; `0` is the zero matrix of the expected shape. Homotopy
//! components are `deg n: h^n` with `h^n: src^n -> dst^{n-1}`. Every entity
//! refers only to entities defined above it.

use std::fmt::{self, Write as _};

use indexmap::IndexMap;

use crate::complex::{ChainHomotopy, ChainMap, Complex};
use crate::derived::{DerivedClass, ExtGroup};
use crate::error::Error;
use crate::extensions::Extension;
use crate::fractions::{Fraction, RoofArrow};
use crate::zmodule::{FpGroup, Int, IntMatrix};

#[derive(Clone, Debug)]
pub enum Entity {
    Group(FpGroup),
    Complex(Complex),
    Map(ChainMap),
    Homotopy(ChainHomotopy),
    Fraction(Fraction),
    RoofArrow(Box<RoofArrow>),
    Extension(Box<Extension>),
    Class(DerivedClass),
}

impl Entity {
    pub fn kind(&self) -> &'static str {
        match self {
            Entity::Group(_) => "group",
            Entity::Complex(_) => "complex",
            Entity::Map(_) => "map",
            Entity::Homotopy(_) => "homotopy",
            Entity::Fraction(_) => "fraction",
            Entity::RoofArrow(_) => "roofarrow",
            Entity::Extension(_) => "extension",
            Entity::Class(_) => "class",
        }
    }
}

/// Errors from reading a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DocError {
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    Unknown {
        line: usize,
        name: String,
        kind: &'static str,
    },
    Invalid {
        line: usize,
        err: Error,
    },
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Syntax { line, col, msg } => write!(f, "{line}:{col}: syntax error: {msg}"),
            DocError::Unknown {
                line: 0,
                name,
                kind,
            } => write!(f, "unknown {kind} `{name}`"),
            DocError::Unknown { line, name, kind } => write!(f, "{line}: unknown {kind} `{name}`"),
            DocError::Invalid { line, err } => write!(f, "{line}: {err}"),
        }
    }
}

impl std::error::Error for DocError {}

/// Named entities in definition order.
#[derive(Clone, Debug, Default)]
pub struct Document {
    entities: IndexMap<String, Entity>,
}

fn same_map(f: &ChainMap, g: &ChainMap) -> bool {
    if f.src() != g.src() || f.dst() != g.dst() {
        return false;
    }
    let (a, b) = f.range();
    (a..=b).all(|n| f.matrix(n) == g.matrix(n))
}

fn same_homotopy(h: &ChainHomotopy, k: &ChainHomotopy) -> bool {
    if !same_map(h.from(), k.from()) || !same_map(h.to(), k.to()) {
        return false;
    }
    let (a, b) = h.from().range();
    (a..=b + 1).all(|n| h.matrix(n) == k.matrix(n))
}

/// `q` is the identity of the source, so the fraction is just `p`.
fn is_strict(f: &Fraction) -> bool {
    f.apex() == f.src() && same_map(f.q(), &ChainMap::identity(f.src()))
}

fn same_fraction(f: &Fraction, g: &Fraction) -> bool {
    same_map(f.q(), g.q()) && same_map(f.p(), g.p())
}

fn same_roof_arrow(r: &RoofArrow, s: &RoofArrow) -> bool {
    same_fraction(&r.from, &s.from)
        && same_fraction(&r.to, &s.to)
        && same_map(&r.s, &s.s)
        && same_map(&r.r, &s.r)
        && same_homotopy(&r.hq, &s.hq)
        && same_homotopy(&r.hp, &s.hp)
}

fn same_extension(e: &Extension, f: &Extension) -> bool {
    e.a() == f.a()
        && e.b() == f.b()
        && e.e() == f.e()
        && same_fraction(e.i(), f.i())
        && same_map(e.pi(), f.pi())
        && same_homotopy(e.null(), f.null())
}

impl Document {
    pub fn new() -> Document {
        Document::default()
    }

    pub fn len(&self) -> usize {
        self.entities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Entity> {
        self.entities.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entities.keys().map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Entity)> {
        self.entities.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Inserts or replaces `name`.
    pub fn insert(&mut self, name: &str, e: Entity) {
        self.entities.insert(name.to_string(), e);
    }

    fn fresh(&self, hint: &str) -> String {
        if !self.entities.contains_key(hint) {
            return hint.to_string();
        }
        (1..)
            .map(|k| format!("{hint}_{k}"))
            .find(|n| !self.entities.contains_key(n))
            .expect("unbounded")
    }

    fn find(&self, pred: impl Fn(&Entity) -> bool) -> Option<String> {
        self.entities
            .iter()
            .find(|(_, e)| pred(e))
            .map(|(k, _)| k.clone())
    }

    /// Names every entity `e` refers to, reusing structurally equal ones.
    fn intern_deps(&mut self, e: &Entity, hint: &str) {
        match e {
            Entity::Group(_) | Entity::Complex(_) => {}
            Entity::Map(f) => {
                self.intern_complex(f.src(), &format!("{hint}.src"));
                self.intern_complex(f.dst(), &format!("{hint}.dst"));
            }
            Entity::Homotopy(h) => {
                self.intern_map(h.from(), &format!("{hint}.from"));
                self.intern_map(h.to(), &format!("{hint}.to"));
            }
            Entity::Fraction(f) => {
                if !is_strict(f) {
                    self.intern_complex(f.apex(), &format!("{hint}.apex"));
                    self.intern_map(f.q(), &format!("{hint}.q"));
                }
                self.intern_map(f.p(), &format!("{hint}.p"));
            }
            Entity::RoofArrow(r) => {
                self.intern_fraction(&r.from, &format!("{hint}.from"));
                self.intern_fraction(&r.to, &format!("{hint}.to"));
                self.intern_map(&r.s, &format!("{hint}.s"));
                self.intern_map(&r.r, &format!("{hint}.r"));
                self.intern_homotopy(&r.hq, &format!("{hint}.hq"));
                self.intern_homotopy(&r.hp, &format!("{hint}.hp"));
            }
            Entity::Extension(x) => {
                self.intern_complex(x.a(), &format!("{hint}.A"));
                self.intern_complex(x.b(), &format!("{hint}.B"));
                self.intern_complex(x.e(), &format!("{hint}.E"));
                self.intern_fraction(x.i(), &format!("{hint}.i"));
                self.intern_map(x.pi(), &format!("{hint}.pi"));
                self.intern_homotopy(x.null(), &format!("{hint}.null"));
            }
            Entity::Class(c) => {
                self.intern_complex(c.src(), &format!("{hint}.src"));
                self.intern_complex(c.dst(), &format!("{hint}.dst"));
            }
        }
    }

    /// Defines `name` after naming everything it refers to.
    pub fn define(&mut self, name: &str, e: Entity) {
        self.intern_deps(&e, name);
        self.insert(name, e);
    }

    fn intern(&mut self, e: Entity, hint: &str, same: impl Fn(&Entity) -> bool) -> String {
        if let Some(n) = self.find(same) {
            return n;
        }
        self.intern_deps(&e, hint);
        let n = self.fresh(hint);
        self.insert(&n, e);
        n
    }

    pub fn intern_complex(&mut self, c: &Complex, hint: &str) -> String {
        self.intern(
            Entity::Complex(c.clone()),
            hint,
            |e| matches!(e, Entity::Complex(k) if k == c),
        )
    }

    pub fn intern_map(&mut self, f: &ChainMap, hint: &str) -> String {
        self.intern(
            Entity::Map(f.clone()),
            hint,
            |e| matches!(e, Entity::Map(g) if same_map(f, g)),
        )
    }

    pub fn intern_homotopy(&mut self, h: &ChainHomotopy, hint: &str) -> String {
        self.intern(
            Entity::Homotopy(h.clone()),
            hint,
            |e| matches!(e, Entity::Homotopy(k) if same_homotopy(h, k)),
        )
    }

    pub fn intern_fraction(&mut self, f: &Fraction, hint: &str) -> String {
        self.intern(
            Entity::Fraction(f.clone()),
            hint,
            |e| matches!(e, Entity::Fraction(g) if same_fraction(f, g)),
        )
    }

    pub fn intern_roof_arrow(&mut self, r: &RoofArrow, hint: &str) -> String {
        self.intern(
            Entity::RoofArrow(Box::new(r.clone())),
            hint,
            |e| matches!(e, Entity::RoofArrow(s) if same_roof_arrow(r, s)),
        )
    }

    pub fn intern_extension(&mut self, x: &Extension, hint: &str) -> String {
        self.intern(
            Entity::Extension(Box::new(x.clone())),
            hint,
            |e| matches!(e, Entity::Extension(f) if same_extension(x, f)),
        )
    }

    /// Classes are not deduplicated.
    pub fn intern_class(&mut self, c: &DerivedClass, hint: &str) -> String {
        let e = Entity::Class(c.clone());
        self.intern_deps(&e, hint);
        let n = self.fresh(hint);
        self.insert(&n, e);
        n
    }

    fn name_of(&self, pred: impl Fn(&Entity) -> bool, what: &str) -> String {
        self.find(pred)
            .unwrap_or_else(|| panic!("emit: {what} is not in the document"))
    }

    fn complex_name(&self, c: &Complex) -> String {
        self.name_of(|e| matches!(e, Entity::Complex(k) if k == c), "complex")
    }

    fn map_name(&self, f: &ChainMap) -> String {
        self.name_of(|e| matches!(e, Entity::Map(g) if same_map(f, g)), "map")
    }

    fn homotopy_name(&self, h: &ChainHomotopy) -> String {
        self.name_of(
            |e| matches!(e, Entity::Homotopy(k) if same_homotopy(h, k)),
            "homotopy",
        )
    }

    fn fraction_name(&self, f: &Fraction) -> String {
        self.name_of(
            |e| matches!(e, Entity::Fraction(g) if same_fraction(f, g)),
            "fraction",
        )
    }

    /// Canonical text of the whole document.
    pub fn emit(&self) -> String {
        self.emit_from(0)
    }

    /// Canonical text of the entities from position `start` on.
    pub fn emit_from(&self, start: usize) -> String {
        let mut out = String::new();
        for (name, e) in self.entities.iter().skip(start) {
            self.emit_entity(&mut out, name, e);
        }
        out
    }

    fn emit_entity(&self, out: &mut String, name: &str, e: &Entity) {
        match e {
            Entity::Group(g) => {
                let _ = writeln!(out, "group {name} = {}", group_text(g));
            }
            Entity::Complex(c) => {
                let _ = writeln!(out, "complex {name}");
                if !c.is_zero_complex() {
                    for n in c.lo()..=c.hi() {
                        let _ = writeln!(out, "  deg {n}: {}", group_text(&c.term(n)));
                    }
                    for n in c.lo()..c.hi() {
                        let _ = writeln!(out, "  d {n}: {}", matrix_text(&c.diff_matrix(n)));
                    }
                }
                out.push_str("end\n");
            }
            Entity::Map(f) => {
                let _ = writeln!(
                    out,
                    "map {name}: {} -> {}",
                    self.complex_name(f.src()),
                    self.complex_name(f.dst())
                );
                let (a, b) = f.range();
                for n in a..=b {
                    let m = f.matrix(n);
                    if m.rows() > 0 && m.cols() > 0 && !m.is_zero() {
                        let _ = writeln!(out, "  deg {n}: {}", matrix_text(&m));
                    }
                }
                out.push_str("end\n");
            }
            Entity::Homotopy(h) => {
                let _ = writeln!(
                    out,
                    "homotopy {name}: {} => {}",
                    self.map_name(h.from()),
                    self.map_name(h.to())
                );
                let (a, b) = h.from().range();
                for n in a..=b + 1 {
                    let m = h.matrix(n);
                    if m.rows() > 0 && m.cols() > 0 && !m.is_zero() {
                        let _ = writeln!(out, "  deg {n}: {}", matrix_text(&m));
                    }
                }
                out.push_str("end\n");
            }
            Entity::Fraction(f) if is_strict(f) => {
                let _ = writeln!(out, "fraction {name} = {}", self.map_name(f.p()));
            }
            Entity::Fraction(f) => {
                let _ = writeln!(
                    out,
                    "fraction {name} = ({}, {})",
                    self.map_name(f.q()),
                    self.map_name(f.p())
                );
            }
            Entity::RoofArrow(r) => {
                let _ = writeln!(
                    out,
                    "roofarrow {name}: {} => {}",
                    self.fraction_name(&r.from),
                    self.fraction_name(&r.to)
                );
                let _ = writeln!(out, "  s: {}", self.map_name(&r.s));
                let _ = writeln!(out, "  r: {}", self.map_name(&r.r));
                let _ = writeln!(out, "  hq: {}", self.homotopy_name(&r.hq));
                let _ = writeln!(out, "  hp: {}", self.homotopy_name(&r.hp));
                out.push_str("end\n");
            }
            Entity::Extension(x) => {
                let _ = writeln!(
                    out,
                    "extension {name}: {} by {}",
                    self.complex_name(x.a()),
                    self.complex_name(x.b())
                );
                let _ = writeln!(out, "  e: {}", self.complex_name(x.e()));
                let _ = writeln!(out, "  i: {}", self.fraction_name(x.i()));
                let _ = writeln!(out, "  pi: {}", self.map_name(x.pi()));
                let _ = writeln!(out, "  null: {}", self.homotopy_name(x.null()));
                out.push_str("end\n");
            }
            Entity::Class(c) => {
                let _ = writeln!(
                    out,
                    "class {name} = ext {} {} {} {}",
                    self.complex_name(c.src()),
                    self.complex_name(c.dst()),
                    c.degree(),
                    vector_text(c.coords())
                );
            }
        }
    }
}

pub fn group_text(g: &FpGroup) -> String {
    let r = g.relations();
    let n = g.n_gens();
    if r.rows() == 0 {
        return match n {
            0 => "0".to_string(),
            1 => "Z".to_string(),
            _ => format!("Z^{n}"),
        };
    }
    if n == 1 && r.rows() == 1 && r[(0, 0)] > Int::one() {
        return format!("Z/{}", r[(0, 0)]);
    }
    format!("<{n} | {}>", matrix_text(r))
}

pub fn vector_text(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub fn matrix_text(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| vector_text(m.row(i))).collect();
    format!("[{}]", rows.join(", "))
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

type PResult<T> = std::result::Result<T, DocError>;

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Cursor { line, text, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(DocError::Syntax {
            line: self.line,
            col: self.pos + 1,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.ws();
        self.rest().is_empty()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected `{tok}`"))
        }
    }

    fn finish(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err(format!("unexpected `{}`", self.rest()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        self.ws();
        let r = self.rest();
        let len = r
            .char_indices()
            .take_while(|&(i, c)| {
                c.is_ascii_alphabetic()
                    || c == '_'
                    || (i > 0 && (c.is_ascii_digit() || c == '.' || c == '\''))
            })
            .map(|(i, c)| i + c.len_utf8())
            .last()
            .unwrap_or(0);
        if len == 0 {
            return self.err("expected a name");
        }
        self.pos += len;
        Ok(r[..len].to_string())
    }

    fn int(&mut self) -> PResult<Int> {
        self.ws();
        let r = self.rest();
        let mut len = 0;
        for (i, c) in r.char_indices() {
            if c.is_ascii_digit() || (i == 0 && c == '-') {
                len = i + 1;
            } else {
                break;
            }
        }
        if len == 0 || &r[..len] == "-" {
            return self.err("expected an integer");
        }
        let s = &r[..len];
        let v = match s.parse::<i64>() {
            Ok(v) => Int::from(v),
            Err(_) => match s.parse::<num_bigint::BigInt>() {
                Ok(b) => Int::from_big(b),
                Err(_) => return self.err("integer out of range"),
            },
        };
        self.pos += len;
        Ok(v)
    }

    fn small(&mut self) -> PResult<i64> {
        let start = self.pos;
        let v = self.int()?;
        match v.to_i64() {
            Some(x) if x.unsigned_abs() < 1 << 20 => Ok(x),
            _ => {
                self.pos = start;
                self.err("value out of range")
            }
        }
    }

    fn vector(&mut self) -> PResult<Vec<Int>> {
        self.expect("[")?;
        let mut v = Vec::new();
        if self.eat("]") {
            return Ok(v);
        }
        loop {
            v.push(self.int()?);
            if self.eat("]") {
                return Ok(v);
            }
            self.expect(",")?;
        }
    }

    /// A matrix; `None` means the literal `0`.
    fn matrix(&mut self) -> PResult<Option<IntMatrix>> {
        self.ws();
        if self.rest().starts_with('0') {
            self.pos += 1;
            return Ok(None);
        }
        let start = self.pos;
        self.expect("[")?;
        let mut rows = Vec::new();
        if !self.eat("]") {
            loop {
                rows.push(self.vector()?);
                if self.eat("]") {
                    break;
                }
                self.expect(",")?;
            }
        }
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            self.pos = start;
            return self.err("rows of different lengths");
        }
        Ok(Some(IntMatrix::from_rows(&rows, cols)))
    }

    fn shaped(&mut self, rows: usize, cols: usize) -> PResult<IntMatrix> {
        let start = self.pos;
        match self.matrix()? {
            None => Ok(IntMatrix::zeros(rows, cols)),
            Some(m) if m.rows() == 0 && rows * cols == 0 && rows == 0 => {
                Ok(IntMatrix::zeros(rows, cols))
            }
            Some(m) if m.shape() == (rows, cols) => Ok(m),
            Some(m) => {
                self.pos = start;
                self.err(format!(
                    "expected a {rows}x{cols} matrix, got {}x{}",
                    m.rows(),
                    m.cols()
                ))
            }
        }
    }

    fn group_atom(&mut self, doc: &Document) -> PResult<FpGroup> {
        self.ws();
        if self.eat("<") {
            let n = self.small()?;
            if n < 0 {
                return self.err("negative generator count");
            }
            self.expect("|")?;
            let r = match self.matrix()? {
                None => IntMatrix::zeros(0, n as usize),
                Some(m) if m.rows() == 0 => IntMatrix::zeros(0, n as usize),
                Some(m) => m,
            };
            self.expect(">")?;
            return FpGroup::new(n as usize, r).or_else(|e| self.err(e.to_string()));
        }
        if self.rest().starts_with('0') {
            self.pos += 1;
            return Ok(FpGroup::zero());
        }
        if self.rest().starts_with("Z")
            && !self.rest()[1..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_')
            || self.rest().starts_with("Z/")
            || self.rest().starts_with("Z^")
        {
            self.pos += 1;
            if self.rest().starts_with('/') {
                self.pos += 1;
                let m = self.small()?;
                return Ok(match m {
                    0 => FpGroup::free(1),
                    m => FpGroup::new(1, IntMatrix::lit(&[&[m]])).expect("1x1"),
                });
            }
            if self.rest().starts_with('^') {
                self.pos += 1;
                let n = self.small()?;
                if n < 0 {
                    return self.err("negative rank");
                }
                return Ok(FpGroup::free(n as usize));
            }
            return Ok(FpGroup::free(1));
        }
        let line = self.line;
        let name = self.ident()?;
        match doc.get(&name) {
            Some(Entity::Group(g)) => Ok(g.clone()),
            _ => Err(DocError::Unknown {
                line,
                name,
                kind: "group",
            }),
        }
    }

    fn group(&mut self, doc: &Document) -> PResult<FpGroup> {
        let mut parts = vec![self.group_atom(doc)?];
        while self.eat("+") {
            parts.push(self.group_atom(doc)?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            FpGroup::direct_sum_all(&parts)
        })
    }
}

fn lookup<'d, T>(
    doc: &'d Document,
    line: usize,
    name: &str,
    kind: &'static str,
    pick: impl Fn(&'d Entity) -> Option<&'d T>,
) -> PResult<&'d T> {
    doc.get(name)
        .and_then(pick)
        .ok_or_else(|| DocError::Unknown {
            line,
            name: name.to_string(),
            kind,
        })
}

fn complex_ref<'d>(doc: &'d Document, line: usize, name: &str) -> PResult<&'d Complex> {
    lookup(doc, line, name, "complex", |e| match e {
        Entity::Complex(c) => Some(c),
        _ => None,
    })
}

fn map_ref<'d>(doc: &'d Document, line: usize, name: &str) -> PResult<&'d ChainMap> {
    lookup(doc, line, name, "map", |e| match e {
        Entity::Map(f) => Some(f),
        _ => None,
    })
}

fn homotopy_ref<'d>(doc: &'d Document, line: usize, name: &str) -> PResult<&'d ChainHomotopy> {
    lookup(doc, line, name, "homotopy", |e| match e {
        Entity::Homotopy(h) => Some(h),
        _ => None,
    })
}

fn fraction_ref<'d>(doc: &'d Document, line: usize, name: &str) -> PResult<&'d Fraction> {
    lookup(doc, line, name, "fraction", |e| match e {
        Entity::Fraction(f) => Some(f),
        _ => None,
    })
}

fn roof_arrow_ref<'d>(doc: &'d Document, line: usize, name: &str) -> PResult<&'d RoofArrow> {
    lookup(doc, line, name, "roofarrow", |e| match e {
        Entity::RoofArrow(r) => Some(r.as_ref()),
        _ => None,
    })
}

fn invalid(line: usize) -> impl Fn(Error) -> DocError {
    move |err| DocError::Invalid { line, err }
}

/// Lines of a block body up to its `end`, as `(line number, text)`.
fn body<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    start: usize,
) -> PResult<Vec<(usize, &'a str)>> {
    let mut out = Vec::new();
    for (k, l) in lines.by_ref() {
        let t = strip(l);
        if t.trim() == "end" {
            return Ok(out);
        }
        if !t.trim().is_empty() {
            out.push((k, t));
        }
    }
    Err(DocError::Syntax {
        line: start,
        col: 1,
        msg: "block is not closed by `end`".into(),
    })
}

fn strip(l: &str) -> &str {
    match l.find('#') {
        Some(i) => &l[..i],
        None => l,
    }
}

/// `deg n: ...` lines keyed by degree.
fn degree_lines<'a>(lines: &[(usize, &'a str)], key: &str) -> PResult<Vec<(i32, Cursor<'a>)>> {
    let mut out: Vec<(i32, Cursor<'a>)> = Vec::new();
    for &(k, l) in lines {
        let mut c = Cursor::new(k, l);
        if !c.eat(key) {
            continue;
        }
        let n = c.small()? as i32;
        c.expect(":")?;
        if out.iter().any(|(m, _)| *m == n) {
            return c.err(format!("degree {n} given twice"));
        }
        out.push((n, c));
    }
    Ok(out)
}

fn check_keys(lines: &[(usize, &str)], keys: &[&str]) -> PResult<()> {
    for &(k, l) in lines {
        let mut c = Cursor::new(k, l);
        c.ws();
        let word: String = c
            .rest()
            .chars()
            .take_while(|ch| ch.is_ascii_alphabetic())
            .collect();
        if !keys.contains(&word.as_str()) {
            return c.err(format!("unexpected `{}` in block", word));
        }
    }
    Ok(())
}

fn field(lines: &[(usize, &str)], key: &str, start: usize) -> PResult<(usize, String)> {
    for &(k, l) in lines {
        let mut c = Cursor::new(k, l);
        c.ws();
        let word: String = c
            .rest()
            .chars()
            .take_while(|ch| ch.is_ascii_alphabetic())
            .collect();
        if word == key {
            c.expect(key)?;
            c.expect(":")?;
            let v = c.ident()?;
            c.finish()?;
            return Ok((k, v));
        }
    }
    Err(DocError::Syntax {
        line: start,
        col: 1,
        msg: format!("missing field `{key}`"),
    })
}

fn has_field(lines: &[(usize, &str)], key: &str) -> bool {
    lines.iter().any(|(_, l)| {
        let t = l.trim_start();
        t.starts_with(key) && t[key.len()..].trim_start().starts_with(':')
    })
}

fn map_components(
    lines: &[(usize, &str)],
    src: &Complex,
    dst: &Complex,
    shift: i32,
) -> PResult<Vec<(i32, IntMatrix)>> {
    check_keys(lines, &["deg"])?;
    let mut out = Vec::new();
    for (n, mut c) in degree_lines(lines, "deg")? {
        let m = c.shaped(dst.rank(n - shift), src.rank(n))?;
        c.finish()?;
        out.push((n, m));
    }
    Ok(out)
}

fn assemble(
    parts: Vec<(i32, IntMatrix)>,
    src: &Complex,
    dst: &Complex,
    shift: i32,
) -> (i32, Vec<IntMatrix>) {
    let lo = parts.iter().map(|(n, _)| *n).min().unwrap_or(0);
    let hi = parts.iter().map(|(n, _)| *n).max().unwrap_or(-1);
    let mats = (lo..=hi)
        .map(|n| {
            parts
                .iter()
                .find(|(m, _)| *m == n)
                .map(|(_, x)| x.clone())
                .unwrap_or_else(|| IntMatrix::zeros(dst.rank(n - shift), src.rank(n)))
        })
        .collect();
    (lo, mats)
}

/// Parses and validates a document.
pub fn parse(text: &str) -> PResult<Document> {
    parse_into(Document::new(), text)
}

/// Parses `text` on top of the entities of `doc`.
pub fn parse_into(mut doc: Document, text: &str) -> PResult<Document> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
    while let Some((k, raw)) = lines.next() {
        let l = strip(raw);
        let mut c = Cursor::new(k, l);
        if c.at_end() {
            continue;
        }
        let kw = c.ident()?;
        let name = c.ident()?;
        if doc.get(&name).is_some() {
            return c.err(format!("`{name}` is already defined"));
        }
        let entity = match kw.as_str() {
            "group" => {
                c.expect("=")?;
                let g = c.group(&doc)?;
                c.finish()?;
                Entity::Group(g)
            }
            "complex" => {
                c.finish()?;
                let b = body(&mut lines, k)?;
                check_keys(&b, &["deg", "d"])?;
                let terms = degree_lines(&b, "deg ")?;
                let mut groups = Vec::new();
                for (n, mut t) in terms {
                    let g = t.group(&doc)?;
                    t.finish()?;
                    groups.push((n, g));
                }
                let lo = groups.iter().map(|(n, _)| *n).min().unwrap_or(0);
                let hi = groups.iter().map(|(n, _)| *n).max().unwrap_or(-1);
                let term = |n: i32| {
                    groups
                        .iter()
                        .find(|(m, _)| *m == n)
                        .map(|(_, g)| g.clone())
                        .unwrap_or_else(FpGroup::zero)
                };
                let rank = |n: i32| {
                    if n < lo || n > hi {
                        0
                    } else {
                        term(n).n_gens()
                    }
                };
                let mut diffs: Vec<Option<IntMatrix>> = vec![None; (hi - lo).max(0) as usize];
                for (n, mut d) in degree_lines(&b, "d ")? {
                    if n < lo || n >= hi {
                        return d.err(format!("differential in degree {n} outside the terms"));
                    }
                    let m = d.shaped(rank(n + 1), rank(n))?;
                    d.finish()?;
                    diffs[(n - lo) as usize] = Some(m);
                }
                let diffs = diffs
                    .into_iter()
                    .enumerate()
                    .map(|(j, m)| {
                        let n = lo + j as i32;
                        m.unwrap_or_else(|| IntMatrix::zeros(rank(n + 1), rank(n)))
                    })
                    .collect();
                let terms = (lo..=hi).map(term).collect();
                Entity::Complex(Complex::new(lo, terms, diffs).map_err(invalid(k))?)
            }
            "map" => {
                c.expect(":")?;
                let s = c.ident()?;
                c.expect("->")?;
                let t = c.ident()?;
                c.finish()?;
                let (src, dst) = (
                    complex_ref(&doc, k, &s)?.clone(),
                    complex_ref(&doc, k, &t)?.clone(),
                );
                let b = body(&mut lines, k)?;
                let (lo, mats) = assemble(map_components(&b, &src, &dst, 0)?, &src, &dst, 0);
                Entity::Map(ChainMap::new(&src, &dst, lo, mats).map_err(invalid(k))?)
            }
            "homotopy" => {
                c.expect(":")?;
                let f = c.ident()?;
                c.expect("=>")?;
                let g = c.ident()?;
                c.finish()?;
                let (from, to) = (map_ref(&doc, k, &f)?.clone(), map_ref(&doc, k, &g)?.clone());
                if from.src() != to.src() || from.dst() != to.dst() {
                    return Err(DocError::Invalid {
                        line: k,
                        err: Error::Mismatch(
                            "the two maps of a homotopy must share source and target".into(),
                        ),
                    });
                }
                let b = body(&mut lines, k)?;
                let (src, dst) = (from.src().clone(), from.dst().clone());
                let (lo, mats) = assemble(map_components(&b, &src, &dst, 1)?, &src, &dst, 1);
                Entity::Homotopy(ChainHomotopy::new(&from, &to, lo, mats).map_err(invalid(k))?)
            }
            "fraction" => {
                c.expect("=")?;
                let f = if c.eat("(") {
                    let q = c.ident()?;
                    c.expect(",")?;
                    let p = c.ident()?;
                    c.expect(")")?;
                    let (q, p) = (map_ref(&doc, k, &q)?.clone(), map_ref(&doc, k, &p)?.clone());
                    Fraction::new(q, p).map_err(invalid(k))?
                } else {
                    let f = c.ident()?;
                    Fraction::from_map(map_ref(&doc, k, &f)?)
                };
                c.finish()?;
                Entity::Fraction(f)
            }
            "roofarrow" => {
                c.expect(":")?;
                let f = c.ident()?;
                c.expect("=>")?;
                let g = c.ident()?;
                c.finish()?;
                let (from, to) = (
                    fraction_ref(&doc, k, &f)?.clone(),
                    fraction_ref(&doc, k, &g)?.clone(),
                );
                let b = body(&mut lines, k)?;
                check_keys(&b, &["s", "r", "hq", "hp"])?;
                let get_map = |key: &str| -> PResult<ChainMap> {
                    let (l, n) = field(&b, key, k)?;
                    Ok(map_ref(&doc, l, &n)?.clone())
                };
                let get_h = |key: &str| -> PResult<ChainHomotopy> {
                    let (l, n) = field(&b, key, k)?;
                    Ok(homotopy_ref(&doc, l, &n)?.clone())
                };
                let r = RoofArrow {
                    from,
                    to,
                    s: get_map("s")?,
                    r: get_map("r")?,
                    hq: get_h("hq")?,
                    hp: get_h("hp")?,
                };
                let rep = r.validate();
                if !rep.valid() {
                    return Err(DocError::Invalid {
                        line: k,
                        err: Error::InvalidHomotopy(format!(
                            "roof arrow does not validate: {rep:?}"
                        )),
                    });
                }
                Entity::RoofArrow(Box::new(r))
            }
            "extension" => {
                c.expect(":")?;
                let a = c.ident()?;
                c.expect("by")?;
                let bn = c.ident()?;
                c.finish()?;
                let (a, bc) = (
                    complex_ref(&doc, k, &a)?.clone(),
                    complex_ref(&doc, k, &bn)?.clone(),
                );
                let b = body(&mut lines, k)?;
                check_keys(&b, &["e", "i", "pi", "null", "j", "r"])?;
                let (l, i) = field(&b, "i", k)?;
                let i = fraction_ref(&doc, l, &i)?.clone();
                let x = if has_field(&b, "j") {
                    let (l, j) = field(&b, "j", k)?;
                    let j = fraction_ref(&doc, l, &j)?.clone();
                    let (l, r) = field(&b, "r", k)?;
                    let r = roof_arrow_ref(&doc, l, &r)?.clone();
                    if j.dst() != &a || i.src() != &bc {
                        return Err(DocError::Invalid {
                            line: k,
                            err: Error::Mismatch("i must start at B and j end at A".into()),
                        });
                    }
                    Extension::from_roofs(&i, &j, &r).map_err(invalid(k))?
                } else {
                    let (l, e) = field(&b, "e", k)?;
                    let e = complex_ref(&doc, l, &e)?.clone();
                    let (l, pi) = field(&b, "pi", k)?;
                    let pi = map_ref(&doc, l, &pi)?.clone();
                    let (l, null) = field(&b, "null", k)?;
                    let null = homotopy_ref(&doc, l, &null)?.clone();
                    Extension::new(&a, &bc, &e, i, pi, null).map_err(invalid(k))?
                };
                let rep = x.validate();
                if !rep.valid() {
                    return Err(DocError::Invalid {
                        line: k,
                        err: Error::InvalidExtension(format!(
                            "cond_a {}, cond_b {}, roof coherence {}",
                            rep.cond_a, rep.cond_b, rep.roof_coherence
                        )),
                    });
                }
                Entity::Extension(Box::new(x))
            }
            "class" => {
                c.expect("=")?;
                c.expect("ext")?;
                let a = c.ident()?;
                let b = c.ident()?;
                let deg = c.small()? as i32;
                let v = c.vector()?;
                c.finish()?;
                let (a, b) = (
                    complex_ref(&doc, k, &a)?.clone(),
                    complex_ref(&doc, k, &b)?.clone(),
                );
                let g = ExtGroup::new(&a, &b, deg);
                if v.len() != g.divisors().len() {
                    return Err(DocError::Invalid {
                        line: k,
                        err: Error::Dimension(format!(
                            "Ext^{deg} has {} coordinates, got {}",
                            g.divisors().len(),
                            v.len()
                        )),
                    });
                }
                Entity::Class(g.class(&v))
            }
            other => {
                return Err(DocError::Syntax {
                    line: k,
                    col: 1,
                    msg: format!("unknown entity kind `{other}`"),
                })
            }
        };
        doc.define(&name, entity);
    }
    Ok(doc)
}
