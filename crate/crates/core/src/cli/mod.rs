//! Document format and command dispatch for the `picext` binary.

mod format;
mod selftest;

pub use format::{
    group_text, matrix_text, parse, parse_into, vector_text, DocError, Document, Entity,
};
pub use selftest::{selftest, SelftestReport, SUITES};

use std::fmt::Write as _;

use crate::complex::{
    mapping_cone, truncate_ge_bad, truncate_ge_good, truncate_le_bad, truncate_le_good, ChainMap,
    Complex, LongExactSequence,
};
use crate::derived::{class_of_roof, DerivedClass, ExtGroup};
use crate::error::Error;
use crate::extensions::{
    baer_sum, classify_theta, equivalence_witness, is_split, les_hom, les_homotopy,
    pullback_extension, pushdown_extension, realize_psi, Extension, LesReport,
};
use crate::fractions::{
    compose, fibered_product_complexes, fibered_product_fractions, fibered_sum_complexes,
    fibered_sum_fractions, homotopy_cokernel, homotopy_fibered_product, homotopy_kernel,
    naive_fibered_product, Fraction,
};
use crate::zmodule::Int;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_SELFTEST: i32 = 5;

pub const COMMANDS: [&str; 22] = [
    "cohomology",
    "qis-check",
    "cone",
    "truncate",
    "pullback",
    "pushout",
    "ker",
    "coker",
    "compose-roof",
    "class-of-roof",
    "ext",
    "theta",
    "psi",
    "baer-sum",
    "split-check",
    "equiv-check",
    "les-homotopy",
    "les-hom",
    "contrast-naive",
    "selftest",
    "validate",
    "emit",
];

/// Result of one command: exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Output {
        Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Output {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Output {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Exit code of a mathematical error raised while running a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidExtension(_) => EXIT_VALIDATION,
        _ => EXIT_PRECONDITION,
    }
}

fn doc_exit_code(e: &DocError) -> i32 {
    match e {
        DocError::Syntax { .. } | DocError::Unknown { .. } => EXIT_PARSE,
        DocError::Invalid { .. } => EXIT_VALIDATION,
    }
}

enum Fail {
    Doc(DocError),
    Math(Error),
    Usage(String),
}

impl From<DocError> for Fail {
    fn from(e: DocError) -> Fail {
        Fail::Doc(e)
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Math(e)
    }
}

type CResult<T> = std::result::Result<T, Fail>;

fn unknown(name: &str, kind: &'static str) -> Fail {
    Fail::Doc(DocError::Unknown {
        line: 0,
        name: name.to_string(),
        kind,
    })
}

fn arg<'a>(args: &'a [String], k: usize, what: &str) -> CResult<&'a str> {
    args.get(k)
        .map(|s| s.as_str())
        .ok_or_else(|| Fail::Usage(format!("missing argument: {what}")))
}

fn complex<'d>(doc: &'d Document, name: &str) -> CResult<&'d Complex> {
    match doc.get(name) {
        Some(Entity::Complex(c)) => Ok(c),
        _ => Err(unknown(name, "complex")),
    }
}

fn map<'d>(doc: &'d Document, name: &str) -> CResult<&'d ChainMap> {
    match doc.get(name) {
        Some(Entity::Map(f)) => Ok(f),
        _ => Err(unknown(name, "map")),
    }
}

/// A fraction, or a map read as a strict fraction.
fn fraction(doc: &Document, name: &str) -> CResult<Fraction> {
    match doc.get(name) {
        Some(Entity::Fraction(f)) => Ok(f.clone()),
        Some(Entity::Map(f)) => Ok(Fraction::from_map(f)),
        _ => Err(unknown(name, "fraction")),
    }
}

fn extension<'d>(doc: &'d Document, name: &str) -> CResult<&'d Extension> {
    match doc.get(name) {
        Some(Entity::Extension(e)) => Ok(e),
        _ => Err(unknown(name, "extension")),
    }
}

fn class<'d>(doc: &'d Document, name: &str) -> CResult<&'d DerivedClass> {
    match doc.get(name) {
        Some(Entity::Class(c)) => Ok(c),
        _ => Err(unknown(name, "class")),
    }
}

pub fn divisors_text(ds: &[Int]) -> String {
    let parts: Vec<String> = ds
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| {
            if d.is_zero() {
                "Z".to_string()
            } else {
                format!("Z/{d}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn cohomology_lines(out: &mut String, label: &str, k: &Complex) {
    for n in -2..=0 {
        let ds = if k.is_zero_complex() {
            Vec::new()
        } else {
            k.cohomology(n).group.elementary_divisors()
        };
        let _ = writeln!(out, "{label}H^{n} = {}", divisors_text(&ds));
    }
}

fn sequence_lines(out: &mut String, s: &LongExactSequence) {
    for node in &s.nodes {
        let _ = writeln!(
            out,
            "node {} = {}",
            node.label,
            divisors_text(&node.group.elementary_divisors())
        );
    }
}

fn report_lines(out: &mut String, rep: &LesReport) {
    sequence_lines(out, &rep.sequence);
    for (label, ok) in rep.exact.iter().chain(&rep.checks) {
        let _ = writeln!(out, "{label}: {ok}");
    }
    let _ = writeln!(out, "exact: {}", rep.ok());
}

/// In the standard presentation `ext A B n`, as a document reads it.
fn standard(c: &DerivedClass) -> DerivedClass {
    c.transport(&ExtGroup::new(c.src(), c.dst(), c.degree()))
}

fn class_lines(out: &mut String, label: &str, c: &DerivedClass) {
    let _ = writeln!(out, "{label}divisors: {}", vector_text(&c.ext().divisors()));
    let _ = writeln!(out, "{label}coords: {}", vector_text(c.coords()));
}

struct Session {
    doc: Document,
    start: usize,
    out: String,
}

impl Session {
    fn new(doc: &Document) -> Session {
        Session {
            doc: doc.clone(),
            start: doc.len(),
            out: String::new(),
        }
    }

    fn finish(mut self) -> String {
        let frag = self.doc.emit_from(self.start);
        if !frag.is_empty() {
            self.out.push_str(&frag);
        }
        self.out
    }
}

fn run_command(
    doc: &Document,
    cmd: &str,
    args: &[String],
    seed: u64,
    count: usize,
) -> CResult<Output> {
    let mut s = Session::new(doc);
    match cmd {
        "emit" => return Ok(Output::ok(doc.emit())),
        "validate" => {
            for (name, e) in doc.iter() {
                let _ = writeln!(s.out, "{name}: {} ok", e.kind());
                if let Entity::Extension(x) = e {
                    let rep = x.validate();
                    let _ = writeln!(
                        s.out,
                        "{name}.cond_a: {}\n{name}.cond_b: {}\n{name}.roof_coherence: {}",
                        rep.cond_a, rep.cond_b, rep.roof_coherence
                    );
                }
            }
            let _ = writeln!(s.out, "valid: true");
        }
        "cohomology" => {
            let k = complex(doc, arg(args, 0, "complex")?)?;
            if k.is_zero_complex() {
                let _ = writeln!(s.out, "zero complex");
            } else {
                for n in k.lo()..=k.hi() {
                    let _ = writeln!(
                        s.out,
                        "H^{n} = {}",
                        divisors_text(&k.cohomology(n).group.elementary_divisors())
                    );
                }
            }
        }
        "qis-check" => {
            let name = arg(args, 0, "map or fraction")?;
            let ok = match doc.get(name) {
                Some(Entity::Map(f)) => f.is_quasi_iso(),
                Some(Entity::Fraction(f)) => f.p().is_quasi_iso(),
                _ => return Err(unknown(name, "map")),
            };
            let _ = writeln!(s.out, "quasi-iso: {ok}");
        }
        "cone" => {
            let name = arg(args, 0, "map")?;
            let mc = mapping_cone(map(doc, name)?);
            s.doc.intern_complex(&mc.complex, &format!("{name}.cone"));
            s.doc.intern_map(&mc.inclusion, &format!("{name}.cone.inc"));
            s.doc
                .intern_map(&mc.projection, &format!("{name}.cone.proj"));
        }
        "truncate" => {
            let name = arg(args, 0, "complex")?;
            let k = complex(doc, name)?;
            let side = arg(args, 1, "le or ge")?;
            let n: i32 = arg(args, 2, "degree")?
                .parse()
                .map_err(|_| Fail::Usage("degree must be an integer".into()))?;
            let kind = args.get(3).map(|s| s.as_str()).unwrap_or("good");
            let (t, m) = match (side, kind) {
                ("le", "good") => truncate_le_good(k, n),
                ("le", "bad") => truncate_le_bad(k, n),
                ("ge", "good") => truncate_ge_good(k, n),
                ("ge", "bad") => truncate_ge_bad(k, n),
                _ => return Err(Fail::Usage("usage: truncate K le|ge N [good|bad]".into())),
            };
            let hint = format!(
                "{name}.{side}{}",
                if n < 0 {
                    format!("m{}", -n)
                } else {
                    n.to_string()
                }
            );
            s.doc.intern_complex(&t, &hint);
            s.doc.intern_map(&m, &format!("{hint}.map"));
        }
        "pullback" | "pushout" => {
            let (x, y) = (arg(args, 0, "first input")?, arg(args, 1, "second input")?);
            let hint = format!("{x}.{}", if cmd == "pullback" { "pb" } else { "po" });
            match (doc.get(x), cmd) {
                (Some(Entity::Extension(e)), "pullback") => {
                    let r = pullback_extension(e, &fraction(doc, y)?)?;
                    s.doc.intern_extension(&r, &hint);
                }
                (Some(Entity::Extension(e)), _) => {
                    let r = pushdown_extension(e, &fraction(doc, y)?)?;
                    s.doc.intern_extension(&r, &hint);
                }
                (Some(Entity::Map(f)), _) if matches!(doc.get(y), Some(Entity::Map(_))) => {
                    let g = map(doc, y)?;
                    if cmd == "pullback" {
                        if f.dst() != g.dst() {
                            return Err(
                                Error::Mismatch("the two maps must share a target".into()).into()
                            );
                        }
                        let fp = fibered_product_complexes(f, g);
                        s.doc.intern_complex(&fp.complex, &hint);
                        s.doc.intern_map(&fp.pr_a, &format!("{hint}.pr_a"));
                        s.doc.intern_map(&fp.pr_b, &format!("{hint}.pr_b"));
                        s.doc.intern_homotopy(&fp.homotopy, &format!("{hint}.h"));
                    } else {
                        if f.src() != g.src() {
                            return Err(
                                Error::Mismatch("the two maps must share a source".into()).into()
                            );
                        }
                        let fs = fibered_sum_complexes(f, g);
                        s.doc.intern_complex(&fs.complex, &hint);
                        s.doc.intern_map(&fs.inc_a, &format!("{hint}.inc_a"));
                        s.doc.intern_map(&fs.inc_b, &format!("{hint}.inc_b"));
                        s.doc.intern_homotopy(&fs.homotopy, &format!("{hint}.h"));
                    }
                }
                (Some(Entity::Map(_)) | Some(Entity::Fraction(_)), _) => {
                    let (f, g) = (fraction(doc, x)?, fraction(doc, y)?);
                    if cmd == "pullback" {
                        if f.dst() != g.dst() {
                            return Err(Error::Mismatch(
                                "the two fractions must share a target".into(),
                            )
                            .into());
                        }
                        let fp = fibered_product_fractions(&f, &g);
                        s.doc.intern_complex(&fp.product.complex, &hint);
                        s.doc.intern_map(&fp.leg_a, &format!("{hint}.leg_a"));
                        s.doc.intern_map(&fp.leg_b, &format!("{hint}.leg_b"));
                    } else {
                        if f.src() != g.src() {
                            return Err(Error::Mismatch(
                                "the two fractions must share a source".into(),
                            )
                            .into());
                        }
                        let fs = fibered_sum_fractions(&f, &g);
                        s.doc.intern_complex(&fs.sum.complex, &hint);
                        s.doc.intern_map(&fs.sum.inc_a, &format!("{hint}.inc_a"));
                        s.doc.intern_map(&fs.sum.inc_b, &format!("{hint}.inc_b"));
                    }
                }
                _ => return Err(unknown(x, "map, fraction or extension")),
            }
        }
        "ker" | "coker" => {
            let name = arg(args, 0, "fraction")?;
            let f = fraction(doc, name)?;
            let (k, m) = if cmd == "ker" {
                homotopy_kernel(&f)
            } else {
                homotopy_cokernel(&f)
            };
            s.doc.intern_complex(&k, &format!("{name}.{cmd}"));
            s.doc.intern_map(&m, &format!("{name}.{cmd}.map"));
        }
        "compose-roof" => {
            let (gn, fname) = (
                arg(args, 0, "outer fraction")?,
                arg(args, 1, "inner fraction")?,
            );
            let c = compose(&fraction(doc, gn)?, &fraction(doc, fname)?)?;
            s.doc.intern_fraction(&c, &format!("{gn}_{fname}"));
        }
        "class-of-roof" => {
            let name = arg(args, 0, "fraction")?;
            let c = standard(&class_of_roof(&fraction(doc, name)?));
            class_lines(&mut s.out, "", &c);
            s.doc.intern_class(&c, &format!("{name}.class"));
        }
        "ext" => {
            let (a, b) = (
                complex(doc, arg(args, 0, "A")?)?,
                complex(doc, arg(args, 1, "B")?)?,
            );
            let n: i32 = arg(args, 2, "degree")?
                .parse()
                .map_err(|_| Fail::Usage("degree must be an integer".into()))?;
            let g = ExtGroup::new(a, b, n);
            let _ = writeln!(s.out, "divisors {}", vector_text(&g.divisors()));
            let _ = writeln!(s.out, "group {}", divisors_text(&g.divisors()));
        }
        "theta" => {
            let name = arg(args, 0, "extension")?;
            let c = standard(&classify_theta(extension(doc, name)?)?);
            class_lines(&mut s.out, "", &c);
            s.doc.intern_class(&c, &format!("{name}.theta"));
        }
        "psi" => {
            let name = arg(args, 0, "class")?;
            let e = realize_psi(class(doc, name)?)?;
            s.doc.intern_extension(&e, &format!("{name}.psi"));
        }
        "baer-sum" => {
            let (x, y) = (arg(args, 0, "extension")?, arg(args, 1, "extension")?);
            let e = baer_sum(extension(doc, x)?, extension(doc, y)?)?;
            let c = standard(&classify_theta(&e)?);
            class_lines(&mut s.out, "theta ", &c);
            s.doc.intern_extension(&e, &format!("{x}_plus_{y}"));
        }
        "split-check" => {
            let name = arg(args, 0, "extension")?;
            match is_split(extension(doc, name)?)? {
                Some(u) => {
                    let _ = writeln!(s.out, "split: true");
                    s.doc.intern_fraction(&u, &format!("{name}.section"));
                }
                None => {
                    let _ = writeln!(s.out, "split: false");
                }
            }
        }
        "equiv-check" => {
            let (x, y) = (arg(args, 0, "extension")?, arg(args, 1, "extension")?);
            match equivalence_witness(extension(doc, x)?, extension(doc, y)?)? {
                Some(w) => {
                    let rep = w.validate();
                    let _ = writeln!(s.out, "equivalent: true");
                    let _ = writeln!(s.out, "f_quasi_iso: {}", rep.f_quasi_iso);
                    let _ = writeln!(s.out, "identities: {}", rep.identities);
                    let _ = writeln!(s.out, "i_coherent: {}", rep.i_coherent);
                    let _ = writeln!(s.out, "j_coherent: {}", rep.j_coherent);
                    let _ = writeln!(s.out, "omega_valid: {}", rep.omega_valid);
                    let _ = writeln!(
                        s.out,
                        "witness: {}",
                        if rep.valid() { "valid" } else { "invalid" }
                    );
                    s.doc.intern_fraction(&w.f, &format!("{x}.to.{y}"));
                }
                None => {
                    let _ = writeln!(s.out, "equivalent: false");
                }
            }
        }
        "les-homotopy" => {
            let rep = les_homotopy(extension(doc, arg(args, 0, "extension")?)?)?;
            report_lines(&mut s.out, &rep);
        }
        "les-hom" => {
            let e = extension(doc, arg(args, 0, "extension")?)?;
            let x = complex(doc, arg(args, 1, "complex")?)?;
            report_lines(&mut s.out, &les_hom(e, x)?);
        }
        "contrast-naive" => {
            let (f, g) = (
                map(doc, arg(args, 0, "map")?)?,
                map(doc, arg(args, 1, "map")?)?,
            );
            if f.dst() != g.dst() {
                return Err(Error::Mismatch("the two maps must share a target".into()).into());
            }
            let (naive, _, _) = naive_fibered_product(f, g);
            let good = homotopy_fibered_product(f, g, 0).complex;
            cohomology_lines(&mut s.out, "naive ", &naive);
            cohomology_lines(&mut s.out, "homotopy ", &good);
            let differ = (-2..=0).any(|n| {
                let h = |k: &Complex| {
                    if k.is_zero_complex() {
                        Vec::new()
                    } else {
                        k.cohomology(n).group.elementary_divisors()
                    }
                };
                h(&naive) != h(&good)
            });
            let _ = writeln!(s.out, "differ: {differ}");
        }
        "selftest" => {
            let seed = match args.first() {
                Some(v) => v
                    .parse()
                    .map_err(|_| Fail::Usage("seed must be an integer".into()))?,
                None => seed,
            };
            let count = match args.get(1) {
                Some(v) => v
                    .parse()
                    .map_err(|_| Fail::Usage("count must be an integer".into()))?,
                None => count,
            };
            let rep = selftest(seed, count);
            let code = if rep.ok() { EXIT_OK } else { EXIT_SELFTEST };
            return Ok(Output {
                code,
                stdout: rep.render(),
                stderr: String::new(),
            });
        }
        other => return Err(Fail::Usage(format!("unknown command `{other}`"))),
    }
    Ok(Output::ok(s.finish()))
}

/// Options shared by all commands.
#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub count: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            count: 100,
        }
    }
}

/// Parses `input` (when given) and runs `cmd`.
pub fn run(input: Option<&str>, cmd: &str, args: &[String], opts: &Options) -> Output {
    let doc = match input.map(parse) {
        None => Document::new(),
        Some(Ok(d)) => d,
        Some(Err(e)) => return Output::fail(doc_exit_code(&e), e.to_string()),
    };
    match run_command(&doc, cmd, args, opts.seed, opts.count) {
        Ok(o) => o,
        Err(Fail::Doc(e)) => Output::fail(doc_exit_code(&e), e.to_string()),
        Err(Fail::Math(e)) => Output::fail(exit_code(&e), e.to_string()),
        Err(Fail::Usage(m)) => Output::fail(EXIT_PARSE, m),
    }
}

#[cfg(test)]
mod tests;
