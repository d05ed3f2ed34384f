//! File formats and the named-object workspace.
//!
//! ```text
//! signature posets { relations: leq/2; }
//! structure c2 over posets { universe: a, b; leq: (a,a), (a,b), (b,b); }
//! morphism up from point to c2 { map: x -> a; }
//! theory T over posets { hinductive: forall x. leq(x, x); }
//! amalgamation sq { base: point; left: up; right: up; kinds: [e,e,e,e];
//!                   class: theory T; strong: true; budget: { N: 4 }; }
//! ```
//!
//! Blocks may appear in any order and across files; references are
//! resolved once everything is read. A `theory` without `over` uses the
//! last signature declared before it in the same file.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use crate::amalgamation::{AmalgamationProblem, Class, Kinds};
use crate::error::{Error, Result, Span};
use crate::formula::{Parser, Tok};
use crate::morphism::Morphism;
use crate::signature::{Signature, Symbol};
use crate::structure::{decode_tuple, FiniteStructure, StructureBuilder};
use crate::theory::{parse_sentences, Budget, Sentence, Theory};
use crate::zoo;

/// Where an object was declared.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Origin {
    pub file: String,
    pub line: usize,
    pub column: usize,
}

impl Origin {
    fn builtin() -> Self {
        Origin {
            file: "<builtin>".into(),
            line: 0,
            column: 0,
        }
    }

    fn at(file: &str, span: Span) -> Self {
        Origin {
            file: file.to_string(),
            line: span.line,
            column: span.column,
        }
    }

    fn error(&self, message: impl fmt::Display) -> Error {
        Error::Semantic(format!("{self}: {message}"))
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.file)
        } else {
            write!(f, "{}:{}:{}", self.file, self.line, self.column)
        }
    }
}

/// Object kinds, in resolution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectKind {
    Signature,
    Structure,
    Theory,
    Morphism,
    Amalgamation,
}

impl fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectKind::Signature => "signature",
            ObjectKind::Structure => "structure",
            ObjectKind::Theory => "theory",
            ObjectKind::Morphism => "morphism",
            ObjectKind::Amalgamation => "amalgamation",
        })
    }
}

/// Result of validating one declared object.
#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub kind: ObjectKind,
    pub name: String,
    pub origin: Origin,
    pub error: Option<String>,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.error {
            None => write!(f, "OK    {} {} ({})", self.kind, self.name, self.origin),
            Some(e) => write!(f, "ERROR {} {}: {e}", self.kind, self.name),
        }
    }
}

#[derive(Debug, Clone)]
struct Entry<T> {
    value: T,
    origin: Origin,
}

/// An amalgamation problem as named in a file.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub base: String,
    pub left: String,
    pub right: String,
    pub kinds: Kinds,
    /// `None` for all structures, else a theory name.
    pub class: Option<String>,
    pub strong: bool,
    pub strict: bool,
    pub budget: PartialBudget,
}

/// Budget fields given explicitly; the rest fall back.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PartialBudget {
    pub n: Option<usize>,
    pub big_n: Option<usize>,
    pub k: Option<usize>,
    pub node_cap: Option<u64>,
}

impl PartialBudget {
    /// `self` over `base`.
    pub fn over(&self, base: Budget) -> Budget {
        Budget {
            n: self.n.unwrap_or(base.n),
            big_n: self.big_n.unwrap_or(base.big_n),
            k: self.k.unwrap_or(base.k),
            node_cap: self.node_cap.unwrap_or(base.node_cap),
        }
    }

    /// Fields of `self`, then of `other`.
    pub fn or(&self, other: PartialBudget) -> PartialBudget {
        PartialBudget {
            n: self.n.or(other.n),
            big_n: self.big_n.or(other.big_n),
            k: self.k.or(other.k),
            node_cap: self.node_cap.or(other.node_cap),
        }
    }
}

#[derive(Debug, Clone)]
enum Body {
    Signature {
        relations: Vec<(String, usize)>,
        functions: Vec<(String, usize)>,
        constants: Vec<String>,
    },
    Structure {
        over: String,
        universe: Vec<String>,
        entries: Vec<StructureEntry>,
    },
    Theory {
        over: Option<String>,
        sentences: Vec<Sentence>,
    },
    Morphism {
        from: String,
        to: String,
        pairs: Vec<(String, String)>,
    },
    Amalgamation(ProblemSpec),
}

#[derive(Debug, Clone)]
enum StructureEntry {
    /// `sym: item, ...` with items `(a, b)`, `a`, `(a, b) -> c` or `a -> b`.
    Table {
        symbol: String,
        span: Span,
        items: Vec<(Vec<String>, Option<String>)>,
    },
    /// `sym = a`.
    Constant { symbol: String, span: Span, value: String },
}

#[derive(Debug, Clone)]
struct Item {
    kind: ObjectKind,
    name: String,
    origin: Origin,
    body: Body,
}

/// Named objects, with the built-in zoo preloaded.
#[derive(Debug, Clone)]
pub struct Workspace {
    signatures: BTreeMap<String, Entry<Arc<Signature>>>,
    structures: BTreeMap<String, Entry<FiniteStructure>>,
    theories: BTreeMap<String, Entry<Theory>>,
    morphisms: BTreeMap<String, Entry<Morphism>>,
    problems: BTreeMap<String, Entry<ProblemSpec>>,
    declared: BTreeSet<(ObjectKind, String)>,
}

impl Default for Workspace {
    fn default() -> Self {
        Workspace::new()
    }
}

fn builtin<T>(value: T) -> Entry<T> {
    Entry {
        value,
        origin: Origin::builtin(),
    }
}

impl Workspace {
    /// The built-in objects: signatures `posets`, `unary`, `digraph`,
    /// `groups`, `groups_plus`; structures `point`, `chain2`, `chain3`,
    /// `antichain2`, `loop`, `two_cycle`, `trivial_group`, `z2`, `z3`,
    /// `klein`; theories `T_pos`, `T_g`, `T_g_plus`, `T_fix1..3`,
    /// `T_nofix1..3`, `empty_posets`.
    pub fn new() -> Self {
        let mut w = Workspace {
            signatures: BTreeMap::new(),
            structures: BTreeMap::new(),
            theories: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            problems: BTreeMap::new(),
            declared: BTreeSet::new(),
        };
        for (n, s) in [
            ("posets", zoo::poset_signature()),
            ("unary", zoo::unary_signature()),
            ("digraph", zoo::digraph_signature()),
            ("groups", zoo::group_signature()),
            ("groups_plus", zoo::group_plus_signature()),
        ] {
            w.signatures.insert(n.into(), builtin(s));
        }
        for (n, s) in [
            ("point", zoo::point()),
            ("chain2", zoo::chain2()),
            ("chain3", zoo::chain3()),
            ("antichain2", zoo::antichain2()),
            ("loop", zoo::singleton_loop()),
            ("two_cycle", zoo::two_cycle()),
            ("trivial_group", zoo::cyclic_group(1)),
            ("z2", zoo::cyclic_group(2)),
            ("z3", zoo::cyclic_group(3)),
            ("klein", zoo::klein_group()),
        ] {
            w.structures.insert(n.into(), builtin(s));
        }
        let mut theories = vec![zoo::t_pos(), zoo::t_g(), zoo::t_g_plus()];
        for n in 1..=3 {
            theories.push(zoo::fixed_point_theory(n));
            theories.push(zoo::cycle_free_theory(n));
        }
        theories.push(Theory::empty("empty_posets", zoo::poset_signature()));
        for t in theories {
            w.theories.insert(t.name().to_string(), builtin(t));
        }
        w
    }

    /// Reads every file, then resolves; see [`Workspace::load_sources`].
    pub fn load_files<P: AsRef<Path>>(&mut self, paths: &[P]) -> Result<Vec<CheckLine>> {
        let mut sources = Vec::new();
        for p in paths {
            let p = p.as_ref();
            let text = std::fs::read_to_string(p).map_err(|e| Error::Semantic(format!("{}: {e}", p.display())))?;
            sources.push((p.display().to_string(), text));
        }
        self.load_sources(&sources)
    }

    /// Parses all `(file, text)` sources and resolves their objects.
    ///
    /// Syntax errors abort with the first one. Semantic errors are
    /// reported per object in the returned lines; a failed object is not
    /// added, so dependants fail too.
    pub fn load_sources(&mut self, sources: &[(String, String)]) -> Result<Vec<CheckLine>> {
        let mut items = Vec::new();
        for (file, text) in sources {
            items.extend(parse_items(file, text).map_err(|e| locate(file, e))?);
        }
        let mut lines = Vec::new();
        let mut seen = BTreeSet::new();
        items.sort_by_key(|i| i.kind);
        for item in items {
            let key = (item.kind, item.name.clone());
            let error = if !seen.insert(key.clone()) {
                Some(format!("{}: duplicate {} `{}`", item.origin, item.kind, item.name))
            } else {
                self.add(&item).err().map(|e| e.to_string())
            };
            if error.is_none() {
                self.declared.insert(key);
            }
            lines.push(CheckLine {
                kind: item.kind,
                name: item.name,
                origin: item.origin,
                error,
            });
        }
        Ok(lines)
    }

    /// Loads one source string and fails on the first error.
    pub fn load_str(&mut self, file: &str, text: &str) -> Result<()> {
        for line in self.load_sources(&[(file.to_string(), text.to_string())])? {
            if let Some(e) = line.error {
                return Err(Error::Semantic(e));
            }
        }
        Ok(())
    }

    fn add(&mut self, item: &Item) -> Result<()> {
        let o = &item.origin;
        let name = item.name.clone();
        match &item.body {
            Body::Signature {
                relations,
                functions,
                constants,
            } => {
                let s = Signature::new(relations.clone(), functions.clone(), constants.clone()).map_err(|e| o.error(e))?;
                self.signatures.insert(name, self.entry(Arc::new(s), o));
            }
            Body::Structure { over, universe, entries } => {
                let sig = self.signature(over).map_err(|e| o.error(e))?;
                let s = build_structure(sig, universe, entries, o)?;
                self.structures.insert(name, self.entry(s, o));
            }
            Body::Theory { over, sentences } => {
                let Some(over) = over else {
                    return Err(o.error("theory has no `over` clause and no signature precedes it"));
                };
                let sig = self.signature(over).map_err(|e| o.error(e))?;
                let t = Theory::new(&name, sig, sentences.clone()).map_err(|e| o.error(e))?;
                self.theories.insert(name, self.entry(t, o));
            }
            Body::Morphism { from, to, pairs } => {
                let a = self.structure(from).map_err(|e| o.error(e))?.clone();
                let b = self.structure(to).map_err(|e| o.error(e))?.clone();
                let m = morphism_from_pairs(&a, &b, pairs).map_err(|e| o.error(e))?;
                self.morphisms.insert(name, self.entry(m, o));
            }
            Body::Amalgamation(spec) => {
                self.resolve_problem(spec, Budget::default()).map_err(|e| o.error(e))?;
                self.problems.insert(name, self.entry(spec.clone(), o));
            }
        }
        Ok(())
    }

    fn entry<T>(&self, value: T, o: &Origin) -> Entry<T> {
        Entry {
            value,
            origin: o.clone(),
        }
    }

    pub fn signature(&self, name: &str) -> Result<Arc<Signature>> {
        self.signatures
            .get(name)
            .map(|e| e.value.clone())
            .ok_or_else(|| Error::Semantic(format!("unknown signature `{name}`")))
    }

    pub fn structure(&self, name: &str) -> Result<&FiniteStructure> {
        self.structures
            .get(name)
            .map(|e| &e.value)
            .ok_or_else(|| Error::Semantic(format!("unknown structure `{name}`")))
    }

    pub fn theory(&self, name: &str) -> Result<&Theory> {
        self.theories
            .get(name)
            .map(|e| &e.value)
            .ok_or_else(|| Error::Semantic(format!("unknown theory `{name}`")))
    }

    pub fn morphism(&self, name: &str) -> Result<&Morphism> {
        self.morphisms
            .get(name)
            .map(|e| &e.value)
            .ok_or_else(|| Error::Semantic(format!("unknown morphism `{name}`")))
    }

    pub fn problem_spec(&self, name: &str) -> Result<&ProblemSpec> {
        self.problems
            .get(name)
            .map(|e| &e.value)
            .ok_or_else(|| Error::Semantic(format!("unknown amalgamation problem `{name}`")))
    }

    /// Where an object was declared.
    pub fn origin(&self, kind: ObjectKind, name: &str) -> Option<&Origin> {
        match kind {
            ObjectKind::Signature => self.signatures.get(name).map(|e| &e.origin),
            ObjectKind::Structure => self.structures.get(name).map(|e| &e.origin),
            ObjectKind::Theory => self.theories.get(name).map(|e| &e.origin),
            ObjectKind::Morphism => self.morphisms.get(name).map(|e| &e.origin),
            ObjectKind::Amalgamation => self.problems.get(name).map(|e| &e.origin),
        }
    }

    /// Names of every object of `kind`, built-ins included.
    pub fn names(&self, kind: ObjectKind) -> Vec<String> {
        match kind {
            ObjectKind::Signature => self.signatures.keys().cloned().collect(),
            ObjectKind::Structure => self.structures.keys().cloned().collect(),
            ObjectKind::Theory => self.theories.keys().cloned().collect(),
            ObjectKind::Morphism => self.morphisms.keys().cloned().collect(),
            ObjectKind::Amalgamation => self.problems.keys().cloned().collect(),
        }
    }

    /// Objects declared in loaded files, in resolution order.
    pub fn declared(&self) -> impl Iterator<Item = &(ObjectKind, String)> {
        self.declared.iter()
    }

    /// A name for `sig` among the known signatures.
    pub fn signature_name(&self, sig: &Signature) -> Option<&str> {
        self.signatures
            .iter()
            .find(|(_, e)| *e.value == *sig)
            .map(|(n, _)| n.as_str())
    }

    /// The class `all` or `theory <name>`.
    pub fn class(&self, spec: Option<&str>) -> Result<Class> {
        Ok(match spec {
            None => Class::AllStructures,
            Some(t) => Class::Theory {
                theory: self.theory(t)?.clone(),
            },
        })
    }

    /// Builds the problem; budget fields missing from the file fall back
    /// to `fallback`.
    pub fn resolve_problem(&self, spec: &ProblemSpec, fallback: Budget) -> Result<AmalgamationProblem> {
        let base = self.structure(&spec.base)?;
        let left = self.morphism(&spec.left)?.clone();
        let right = self.morphism(&spec.right)?.clone();
        if left.source != *base || right.source != *base {
            return Err(Error::Semantic(format!("both maps must start at `{}`", spec.base)));
        }
        let class = self.class(spec.class.as_deref())?;
        let budget = spec.budget.over(fallback);
        budget.validate()?;
        Ok(AmalgamationProblem::new(left, right, spec.kinds, class, spec.strong, budget)?.with_strict(spec.strict))
    }

    /// Renders a structure as a `structure` block.
    pub fn render_structure(&self, name: &str, s: &FiniteStructure) -> String {
        let sig = self.signature_name(s.signature()).unwrap_or("?");
        format!("structure {name} over {sig} {s}")
    }
}

fn locate(file: &str, e: Error) -> Error {
    match e {
        Error::Syntax { span, message } => Error::Syntax {
            span,
            message: format!("in {file}, {message}"),
        },
        Error::Shape { span, message } => Error::Shape {
            span,
            message: format!("in {file}, {message}"),
        },
        other => other,
    }
}

fn build_structure(sig: Arc<Signature>, universe: &[String], entries: &[StructureEntry], o: &Origin) -> Result<FiniteStructure> {
    let mut dup = BTreeSet::new();
    for u in universe {
        if !dup.insert(u) {
            return Err(o.error(format!("element `{u}` listed twice")));
        }
    }
    if universe.is_empty() {
        return Err(o.error("universe is empty"));
    }
    let mut b = StructureBuilder::new(sig.clone(), universe.iter().cloned())?;
    for e in entries {
        match e {
            StructureEntry::Table { symbol, span, items } => {
                let at = |e: Error| Error::Semantic(format!("{}:{}:{}: {e}", o.file, span.line, span.column));
                match sig.lookup(symbol) {
                    Some(Symbol::Relation(_)) => {
                        for (args, value) in items {
                            if value.is_some() {
                                return Err(at(Error::Structure(format!("`{symbol}` is a relation; drop `->`"))));
                            }
                            b.add_fact(symbol, args).map_err(at)?;
                        }
                    }
                    Some(Symbol::Function(_)) => {
                        for (args, value) in items {
                            let Some(v) = value else {
                                return Err(at(Error::Structure(format!("`{symbol}` is a function; write `args -> value`"))));
                            };
                            b.set_function(symbol, args, v).map_err(at)?;
                        }
                    }
                    Some(Symbol::Constant(_)) => {
                        return Err(at(Error::Structure(format!("`{symbol}` is a constant; write `{symbol} = element`"))))
                    }
                    None => return Err(at(Error::UnknownSymbol(symbol.clone()))),
                }
            }
            StructureEntry::Constant { symbol, span, value } => {
                b.set_constant(symbol, value)
                    .map_err(|e| Error::Semantic(format!("{}:{}:{}: {e}", o.file, span.line, span.column)))?;
            }
        }
    }
    b.build().map_err(|e| o.error(e))
}

/// The map given by element-name pairs; every source element must appear
/// exactly once.
pub fn morphism_from_pairs(a: &FiniteStructure, b: &FiniteStructure, pairs: &[(String, String)]) -> Result<Morphism> {
    let mut map = vec![None; a.size()];
    for (x, y) in pairs {
        let i = a.element(x).ok_or_else(|| Error::Semantic(format!("unknown source element `{x}`")))?;
        let j = b.element(y).ok_or_else(|| Error::Semantic(format!("unknown target element `{y}`")))?;
        if map[i].replace(j).is_some() {
            return Err(Error::Semantic(format!("source element `{x}` mapped twice")));
        }
    }
    let map = map
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Semantic(format!("source element `{}` is not mapped", a.name(i)))))
        .collect::<Result<Vec<_>>>()?;
    let m = Morphism::new(a.clone(), b.clone(), map)?;
    if !m.is_homomorphism() {
        return Err(Error::NotAHomomorphism);
    }
    Ok(m)
}

/// Parses `a -> b, c -> d` (the body of a `map:` item).
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut p = Parser::new(text)?;
    let pairs = pairs(&mut p)?;
    if !p.at_eof() {
        return p.error("unexpected input after the map");
    }
    Ok(pairs)
}

fn pairs(p: &mut Parser) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    while let Tok::Ident(_) = p.peek() {
        let x = p.ident()?;
        p.expect(&Tok::Arrow)?;
        out.push((x, p.ident()?));
        if !p.eat(&Tok::Comma) {
            break;
        }
    }
    Ok(out)
}

fn parse_items(file: &str, text: &str) -> Result<Vec<Item>> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    let mut last_sig: Option<String> = None;
    let mut unnamed = 0usize;
    while !p.at_eof() {
        let span = p.span();
        let origin = Origin::at(file, span);
        let kw = p.ident()?;
        let item = match kw.as_str() {
            "signature" => {
                let name = p.ident()?;
                last_sig = Some(name.clone());
                Item {
                    kind: ObjectKind::Signature,
                    name,
                    origin,
                    body: signature_body(&mut p)?,
                }
            }
            "structure" => {
                let name = p.ident()?;
                p.keyword("over")?;
                let over = p.ident()?;
                let (universe, entries) = structure_body(&mut p)?;
                Item {
                    kind: ObjectKind::Structure,
                    name,
                    origin,
                    body: Body::Structure { over, universe, entries },
                }
            }
            "theory" => {
                let name = p.ident()?;
                let over = if p.is_keyword("over") {
                    p.bump();
                    Some(p.ident()?)
                } else {
                    last_sig.clone()
                };
                p.expect(&Tok::LBrace)?;
                let sentences = parse_sentences(&mut p)?;
                p.expect(&Tok::RBrace)?;
                Item {
                    kind: ObjectKind::Theory,
                    name,
                    origin,
                    body: Body::Theory { over, sentences },
                }
            }
            "morphism" => {
                let name = p.ident()?;
                p.keyword("from")?;
                let from = p.ident()?;
                p.keyword("to")?;
                let to = p.ident()?;
                p.expect(&Tok::LBrace)?;
                p.keyword("map")?;
                if !p.eat(&Tok::Colon) {
                    let n = p.ident()?;
                    if n != name {
                        return p.error(format!("map label `{n}` differs from the morphism name `{name}`"));
                    }
                    p.expect(&Tok::Colon)?;
                }
                let pairs = pairs(&mut p)?;
                p.eat(&Tok::Semi);
                p.expect(&Tok::RBrace)?;
                Item {
                    kind: ObjectKind::Morphism,
                    name,
                    origin,
                    body: Body::Morphism { from, to, pairs },
                }
            }
            "amalgamation" => {
                let name = if let Tok::Ident(_) = p.peek() {
                    p.ident()?
                } else {
                    unnamed += 1;
                    format!("problem{unnamed}")
                };
                Item {
                    kind: ObjectKind::Amalgamation,
                    name,
                    origin,
                    body: Body::Amalgamation(problem_body(&mut p)?),
                }
            }
            other => {
                return Err(Error::Syntax {
                    span,
                    message: format!(
                        "expected `signature`, `structure`, `theory`, `morphism` or `amalgamation`, found `{other}`"
                    ),
                })
            }
        };
        out.push(item);
    }
    Ok(out)
}

/// `{ field: ...; ... }`, calling `f` after each `field:`.
fn fields(p: &mut Parser, mut f: impl FnMut(&mut Parser, &str, Span) -> Result<()>) -> Result<()> {
    p.expect(&Tok::LBrace)?;
    while !p.eat(&Tok::RBrace) {
        let span = p.span();
        let key = p.ident()?;
        f(p, &key, span)?;
        if !p.eat(&Tok::Semi) && *p.peek() != Tok::RBrace {
            return p.error("expected `;` or `}`");
        }
    }
    Ok(())
}

fn comma_list<T>(p: &mut Parser, mut item: impl FnMut(&mut Parser) -> Result<T>) -> Result<Vec<T>> {
    let mut out = Vec::new();
    if matches!(p.peek(), Tok::Semi | Tok::RBrace) {
        return Ok(out);
    }
    loop {
        out.push(item(p)?);
        if !p.eat(&Tok::Comma) {
            return Ok(out);
        }
    }
}

fn signature_body(p: &mut Parser) -> Result<Body> {
    let (mut relations, mut functions, mut constants) = (Vec::new(), Vec::new(), Vec::new());
    let arity = |p: &mut Parser| -> Result<(String, usize)> {
        let n = p.ident()?;
        p.expect(&Tok::Slash)?;
        Ok((n, p.number()?))
    };
    fields(p, |p, key, span| {
        p.expect(&Tok::Colon)?;
        match key {
            "relations" => relations.extend(comma_list(p, arity)?),
            "functions" => functions.extend(comma_list(p, arity)?),
            "constants" => constants.extend(comma_list(p, |p| p.ident())?),
            other => {
                return Err(Error::Syntax {
                    span,
                    message: format!("expected `relations`, `functions` or `constants`, found `{other}`"),
                })
            }
        }
        Ok(())
    })?;
    Ok(Body::Signature {
        relations,
        functions,
        constants,
    })
}

fn tuple(p: &mut Parser) -> Result<Vec<String>> {
    if p.eat(&Tok::LParen) {
        let t = comma_list(p, |p| p.ident())?;
        p.expect(&Tok::RParen)?;
        Ok(t)
    } else {
        Ok(vec![p.ident()?])
    }
}

fn structure_body(p: &mut Parser) -> Result<(Vec<String>, Vec<StructureEntry>)> {
    let mut universe = None;
    let mut entries = Vec::new();
    fields(p, |p, key, span| {
        if p.eat(&Tok::Eq) {
            entries.push(StructureEntry::Constant {
                symbol: key.to_string(),
                span,
                value: p.ident()?,
            });
            return Ok(());
        }
        p.expect(&Tok::Colon)?;
        if key == "universe" {
            if universe.is_some() {
                return Err(Error::Syntax {
                    span,
                    message: "universe given twice".into(),
                });
            }
            universe = Some(comma_list(p, |p| p.ident())?);
            return Ok(());
        }
        let items = comma_list(p, |p| {
            let args = tuple(p)?;
            let value = if p.eat(&Tok::Arrow) { Some(p.ident()?) } else { None };
            Ok((args, value))
        })?;
        entries.push(StructureEntry::Table {
            symbol: key.to_string(),
            span,
            items,
        });
        Ok(())
    })?;
    let Some(universe) = universe else {
        return p.error("structure has no `universe:` field");
    };
    Ok((universe, entries))
}

fn boolean(p: &mut Parser) -> Result<bool> {
    let span = p.span();
    match p.ident()?.as_str() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(Error::Syntax {
            span,
            message: format!("expected `true` or `false`, found `{other}`"),
        }),
    }
}

fn kinds(p: &mut Parser) -> Result<Kinds> {
    let span = p.span();
    let mut text = String::new();
    let bracketed = p.eat(&Tok::LBracket);
    loop {
        text.push_str(&p.ident()?);
        if !bracketed || !p.eat(&Tok::Comma) {
            break;
        }
        text.push(',');
    }
    if bracketed {
        p.expect(&Tok::RBracket)?;
    }
    text.parse().map_err(|e: Error| Error::Syntax {
        span,
        message: e.to_string(),
    })
}

fn problem_body(p: &mut Parser) -> Result<ProblemSpec> {
    let (mut base, mut left, mut right) = (None, None, None);
    let mut spec = ProblemSpec {
        base: String::new(),
        left: String::new(),
        right: String::new(),
        kinds: Kinds::uniform(crate::morphism::MorphismKind::Hom),
        class: None,
        strong: false,
        strict: false,
        budget: PartialBudget::default(),
    };
    let open = p.span();
    fields(p, |p, key, span| {
        p.expect(&Tok::Colon)?;
        match key {
            "base" => base = Some(p.ident()?),
            "left" => left = Some(p.ident()?),
            "right" => right = Some(p.ident()?),
            "kinds" => spec.kinds = kinds(p)?,
            "class" => {
                let span = p.span();
                spec.class = match p.ident()?.as_str() {
                    "all" | "all_structures" => None,
                    "theory" => Some(p.ident()?),
                    other => {
                        return Err(Error::Syntax {
                            span,
                            message: format!("expected `all` or `theory <name>`, found `{other}`"),
                        })
                    }
                }
            }
            "strong" => spec.strong = boolean(p)?,
            "strict" => spec.strict = boolean(p)?,
            "budget" => spec.budget = budget_body(p)?,
            other => {
                return Err(Error::Syntax {
                    span,
                    message: format!("unknown field `{other}`"),
                })
            }
        }
        Ok(())
    })?;
    let missing = |what: &str| Error::Syntax {
        span: open,
        message: format!("amalgamation problem has no `{what}:` field"),
    };
    spec.base = base.ok_or_else(|| missing("base"))?;
    spec.left = left.ok_or_else(|| missing("left"))?;
    spec.right = right.ok_or_else(|| missing("right"))?;
    Ok(spec)
}

fn budget_body(p: &mut Parser) -> Result<PartialBudget> {
    let mut b = PartialBudget::default();
    p.expect(&Tok::LBrace)?;
    while !p.eat(&Tok::RBrace) {
        let span = p.span();
        let key = p.ident()?;
        p.expect(&Tok::Colon)?;
        let v = p.number()?;
        match key.as_str() {
            "n" => b.n = Some(v),
            "N" => b.big_n = Some(v),
            "k" => b.k = Some(v),
            "node_cap" => b.node_cap = Some(v as u64),
            other => {
                return Err(Error::Syntax {
                    span,
                    message: format!("unknown budget field `{other}`"),
                })
            }
        }
        if !p.eat(&Tok::Comma) && !p.eat(&Tok::Semi) && *p.peek() != Tok::RBrace {
            return p.error("expected `,` or `}`");
        }
    }
    Ok(b)
}

impl fmt::Display for FiniteStructure {
    /// The body of a `structure` block.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = self.signature();
        let name = |e: &usize| self.name(*e).to_string();
        write!(f, "{{ universe: {};", self.names().join(", "))?;
        for (r, (rn, _)) in sig.relations().iter().enumerate() {
            let tuples: Vec<String> = self
                .relation_tuples(r)
                .map(|t| format!("({})", t.iter().map(name).collect::<Vec<_>>().join(", ")))
                .collect();
            if tuples.is_empty() {
                write!(f, " {rn}: ;")?;
            } else {
                write!(f, " {rn}: {};", tuples.join(", "))?;
            }
        }
        for (fi, (fname, arity)) in sig.functions().iter().enumerate() {
            let entries: Vec<String> = self
                .function_table(fi)
                .iter()
                .enumerate()
                .map(|(code, v)| {
                    let args = decode_tuple(code, *arity, self.size());
                    let args = if *arity == 1 {
                        name(&args[0])
                    } else {
                        format!("({})", args.iter().map(name).collect::<Vec<_>>().join(", "))
                    };
                    format!("{args} -> {}", name(v))
                })
                .collect();
            write!(f, " {fname}: {};", entries.join(", "))?;
        }
        for (c, cn) in sig.constants().iter().enumerate() {
            write!(f, " {cn} = {};", name(&self.constant(c)))?;
        }
        write!(f, " }}")
    }
}

/// `signature <name> { ... }`.
pub fn render_signature(name: &str, sig: &Signature) -> String {
    let list = |xs: &[(String, usize)]| xs.iter().map(|(n, a)| format!("{n}/{a}")).collect::<Vec<_>>().join(", ");
    let mut out = format!("signature {name} {{");
    if !sig.relations().is_empty() {
        out.push_str(&format!(" relations: {};", list(sig.relations())));
    }
    if !sig.functions().is_empty() {
        out.push_str(&format!(" functions: {};", list(sig.functions())));
    }
    if !sig.constants().is_empty() {
        out.push_str(&format!(" constants: {};", sig.constants().join(", ")));
    }
    out.push_str(" }");
    out
}

/// `morphism <name> from <a> to <b> { map: ...; }`.
pub fn render_morphism(name: &str, from: &str, to: &str, m: &Morphism) -> String {
    let pairs: Vec<String> = m.map_names().iter().map(|(x, y)| format!("{x} -> {y}")).collect();
    format!("morphism {name} from {from} to {to} {{ map: {}; }}", pairs.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::MorphismKind;

    const FILE: &str = "
        # posets
        signature P { relations: leq/2; }
        structure c2 over P { universe: a, b; leq: (a,a), (a,b), (b,b); }
        structure pt over P { universe: x; leq: (x,x); }
        morphism bot from pt to c2 { map: x -> a; }
        theory Tp { hinductive: forall x. leq(x,x);
                    hinductive: forall x y. leq(x,y) & leq(y,x) -> x = y; }
        amalgamation { base: pt; left: bot; right: bot; kinds: [e,e,e,e];
                       class: theory Tp; strong: true; budget: { N: 4 }; }
    ";

    fn load(text: &str) -> (Workspace, Vec<CheckLine>) {
        let mut w = Workspace::new();
        let lines = w.load_sources(&[("t.posmt".into(), text.into())]).unwrap();
        (w, lines)
    }

    #[test]
    fn reads_every_block() {
        let (w, lines) = load(FILE);
        assert!(lines.iter().all(|l| l.error.is_none()), "{lines:?}");
        assert_eq!(lines.len(), 6);
        assert_eq!(w.structure("c2").unwrap(), &zoo::chain2().with_names(vec!["a".into(), "b".into()]).unwrap());
        assert_eq!(w.morphism("bot").unwrap().map, vec![0]);
        let p = w.resolve_problem(w.problem_spec("problem1").unwrap(), Budget::default()).unwrap();
        assert_eq!(p.budget.big_n, 4);
        assert_eq!(p.budget.n, 3);
        assert!(p.strong);
    }

    #[test]
    fn functions_and_constants() {
        let (w, lines) = load(
            "structure c2 over groups { universe: 0, 1; mul: (0,0)->0, (0,1)->1, (1,0)->1, (1,1)->0;
             inv: 0 -> 0, 1 -> 1; e = 0; }",
        );
        assert!(lines[0].error.is_none(), "{lines:?}");
        assert_eq!(w.structure("c2").unwrap(), &zoo::cyclic_group(2));
    }

    #[test]
    fn display_round_trips() {
        let w = Workspace::new();
        for name in ["chain3", "z3", "loop", "klein"] {
            let s = w.structure(name).unwrap();
            let text = w.render_structure("copy", s);
            let (w2, lines) = load(&text);
            assert!(lines[0].error.is_none(), "{text}: {lines:?}");
            assert_eq!(w2.structure("copy").unwrap(), s, "{text}");
        }
    }

    #[test]
    fn signature_and_morphism_render() {
        let w = Workspace::new();
        assert_eq!(render_signature("g", &w.signature("groups").unwrap()), "signature g { functions: mul/2, inv/1; constants: e; }");
        let m = Morphism::new(zoo::point(), zoo::chain2(), vec![1]).unwrap();
        let text = render_morphism("top", "point", "chain2", &m);
        assert_eq!(text, "morphism top from point to chain2 { map: x -> 1; }");
        let (w2, lines) = load(&text);
        assert!(lines[0].error.is_none());
        assert_eq!(w2.morphism("top").unwrap(), &m);
    }

    #[test]
    fn negation_inside_positive_is_a_shape_error() {
        let mut w = Workspace::new();
        let e = w.load_str("bad.posmt", "theory T over posets {\n  positive: exists x. ! leq(x, x);\n}").unwrap_err();
        let Error::Shape { span, .. } = e else { panic!("{e}") };
        assert_eq!(span.line, 2);
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let mut w = Workspace::new();
        let e = w.load_str("bad.posmt", "signature S {\n  relations: r/x; }").unwrap_err();
        let Error::Syntax { span, message } = e else { panic!("{e}") };
        assert_eq!((span.line, span.column), (2, 16));
        assert!(message.contains("bad.posmt"));
    }

    #[test]
    fn unknown_references_are_semantic() {
        let (_, lines) = load("morphism m from point to nowhere { map: x -> x; }");
        let e = lines[0].error.as_ref().unwrap();
        assert!(e.contains("unknown structure `nowhere`"), "{e}");
        assert!(e.starts_with("t.posmt:1:1"), "{e}");
    }

    #[test]
    fn duplicates_and_dependants_fail() {
        let (_, lines) = load(
            "structure a over posets { universe: x; leq: (x,x); }
             structure a over posets { universe: y; leq: (y,y); }
             structure b over nope { universe: x; }
             morphism m from b to a { map: x -> x; }",
        );
        let errs: Vec<bool> = lines.iter().map(|l| l.error.is_some()).collect();
        assert_eq!(errs, vec![false, true, true, true]);
    }

    #[test]
    fn theory_without_signature_is_rejected() {
        let (_, lines) = load("theory T { positive: exists x. x = x; }");
        assert!(lines[0].error.as_ref().unwrap().contains("no `over`"));
    }

    #[test]
    fn map_label_and_partial_maps() {
        let (w, lines) = load("morphism f from chain2 to chain3 { map f: 0 -> 0, 1 -> 2; }");
        assert!(lines[0].error.is_none(), "{lines:?}");
        assert_eq!(w.morphism("f").unwrap().map, vec![0, 2]);
        let (_, lines) = load("morphism f from chain2 to chain3 { map: 0 -> 0; }");
        assert!(lines[0].error.as_ref().unwrap().contains("not mapped"));
        let (_, lines) = load("morphism f from chain2 to chain3 { map: 0 -> 1, 1 -> 0; }");
        assert!(lines[0].error.as_ref().unwrap().contains("not a homomorphism"));
    }

    #[test]
    fn kinds_forms() {
        let (w, lines) = load(
            "morphism f from point to chain2 { map: x -> 0; }
             amalgamation q { base: point; left: f; right: f; kinds: [i, i, h, h]; class: all; }",
        );
        assert!(lines.iter().all(|l| l.error.is_none()), "{lines:?}");
        let spec = w.problem_spec("q").unwrap();
        assert_eq!(spec.kinds, Kinds::pregeneric(MorphismKind::Immersion, MorphismKind::Hom));
        assert_eq!(spec.class, None);
        assert_eq!(w.origin(ObjectKind::Amalgamation, "q").unwrap().line, 2);
        assert_eq!(w.origin(ObjectKind::Structure, "point").unwrap().file, "<builtin>");
    }
}
