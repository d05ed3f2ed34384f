//! Finite structures over a [`Signature`].
//!
//! Elements are addressed internally by their index in the universe; the
//! opaque string identifiers are kept only for I/O. Relations are stored as
//! dense bit tables and functions as dense value tables, both indexed by the
//! big-endian mixed-radix encoding of the argument tuple.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::Term;
use crate::signature::{Signature, Symbol};

pub type Elem = usize;

/// Index of `tuple` in a table over a universe of size `n`.
pub fn encode_tuple(tuple: &[Elem], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &e| acc * n + e)
}

/// Inverse of [`encode_tuple`].
pub fn decode_tuple(mut code: usize, arity: usize, n: usize) -> Vec<Elem> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    out
}

pub fn table_len(n: usize, arity: usize) -> usize {
    n.pow(arity as u32)
}

/// One atomic fact of a structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fact {
    Relation(usize, Vec<Elem>),
    Function(usize, Vec<Elem>, Elem),
    Constant(usize, Elem),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "StructureRepr", into = "StructureRepr")]
pub struct FiniteStructure {
    signature: Arc<Signature>,
    names: Vec<String>,
    relations: Vec<Vec<bool>>,
    functions: Vec<Vec<Elem>>,
    constants: Vec<Elem>,
}

impl PartialEq for FiniteStructure {
    fn eq(&self, other: &Self) -> bool {
        *self.signature == *other.signature
            && self.names == other.names
            && self.relations == other.relations
            && self.functions == other.functions
            && self.constants == other.constants
    }
}

impl Eq for FiniteStructure {}

/// Name-based serialized form.
#[derive(Serialize, Deserialize)]
struct StructureRepr {
    signature: Signature,
    universe: Vec<String>,
    relations: Vec<(String, Vec<Vec<String>>)>,
    functions: Vec<(String, Vec<(Vec<String>, String)>)>,
    constants: Vec<(String, String)>,
}

impl From<FiniteStructure> for StructureRepr {
    fn from(s: FiniteStructure) -> Self {
        let name = |e: &Elem| s.names[*e].clone();
        let relations = s
            .signature
            .relations()
            .iter()
            .enumerate()
            .map(|(r, (n, _))| (n.clone(), s.relation_tuples(r).map(|t| t.iter().map(name).collect()).collect()))
            .collect();
        let functions = s
            .signature
            .functions()
            .iter()
            .enumerate()
            .map(|(f, (n, arity))| {
                let entries = (0..s.functions[f].len())
                    .map(|code| {
                        let args = decode_tuple(code, *arity, s.size());
                        (args.iter().map(name).collect(), name(&s.functions[f][code]))
                    })
                    .collect();
                (n.clone(), entries)
            })
            .collect();
        let constants = s
            .signature
            .constants()
            .iter()
            .enumerate()
            .map(|(c, n)| (n.clone(), name(&s.constants[c])))
            .collect();
        StructureRepr {
            signature: (*s.signature).clone(),
            universe: s.names.clone(),
            relations,
            functions,
            constants,
        }
    }
}

impl TryFrom<StructureRepr> for FiniteStructure {
    type Error = Error;

    fn try_from(r: StructureRepr) -> Result<Self> {
        let mut b = StructureBuilder::new(Arc::new(r.signature), r.universe)?;
        for (rel, tuples) in r.relations {
            for t in tuples {
                b.add_fact(&rel, &t)?;
            }
        }
        for (fun, entries) in r.functions {
            for (args, value) in entries {
                b.set_function(&fun, &args, &value)?;
            }
        }
        for (c, value) in r.constants {
            b.set_constant(&c, &value)?;
        }
        b.build()
    }
}

impl FiniteStructure {
    /// Builds a structure from index tables, validating every invariant.
    pub fn from_tables(
        signature: Arc<Signature>,
        names: Vec<String>,
        relations: Vec<Vec<bool>>,
        functions: Vec<Vec<Elem>>,
        constants: Vec<Elem>,
    ) -> Result<Self> {
        let s = FiniteStructure {
            signature,
            names,
            relations,
            functions,
            constants,
        };
        s.validate()?;
        Ok(s)
    }

    /// Like [`from_tables`](Self::from_tables) with elements named `0..n`.
    pub fn from_tables_numbered(
        signature: Arc<Signature>,
        n: usize,
        relations: Vec<Vec<bool>>,
        functions: Vec<Vec<Elem>>,
        constants: Vec<Elem>,
    ) -> Result<Self> {
        Self::from_tables(signature, numbered_names(n), relations, functions, constants)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.names.len();
        if n == 0 {
            return Err(Error::Structure("universe must be nonempty".into()));
        }
        let distinct: BTreeSet<&String> = self.names.iter().collect();
        if distinct.len() != n {
            return Err(Error::Structure("duplicate element identifiers".into()));
        }
        let sig = &self.signature;
        if self.relations.len() != sig.relations().len()
            || self.functions.len() != sig.functions().len()
            || self.constants.len() != sig.constants().len()
        {
            return Err(Error::Structure("tables do not match the signature".into()));
        }
        for (r, (name, arity)) in sig.relations().iter().enumerate() {
            if self.relations[r].len() != table_len(n, *arity) {
                return Err(Error::Structure(format!("relation `{name}` table has wrong size")));
            }
        }
        for (f, (name, arity)) in sig.functions().iter().enumerate() {
            if self.functions[f].len() != table_len(n, *arity) {
                return Err(Error::Structure(format!("function `{name}` is not total")));
            }
            if self.functions[f].iter().any(|&v| v >= n) {
                return Err(Error::Structure(format!("function `{name}` leaves the universe")));
            }
        }
        if let Some(c) = self.constants.iter().position(|&v| v >= n) {
            return Err(Error::Structure(format!(
                "constant `{}` outside the universe",
                sig.constants()[c]
            )));
        }
        Ok(())
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn element(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn holds(&self, r: usize, tuple: &[Elem]) -> bool {
        self.relations[r][encode_tuple(tuple, self.size())]
    }

    pub fn apply(&self, f: usize, args: &[Elem]) -> Elem {
        self.functions[f][encode_tuple(args, self.size())]
    }

    pub fn constant(&self, c: usize) -> Elem {
        self.constants[c]
    }

    pub fn relation_table(&self, r: usize) -> &[bool] {
        &self.relations[r]
    }

    pub fn function_table(&self, f: usize) -> &[Elem] {
        &self.functions[f]
    }

    pub fn constant_table(&self) -> &[Elem] {
        &self.constants
    }

    pub fn relation_tuples(&self, r: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
        let arity = self.signature.relation_arity(r);
        let n = self.size();
        self.relations[r]
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(move |(code, _)| decode_tuple(code, arity, n))
    }

    /// Every atomic fact: relation tuples, function graph entries, constants.
    pub fn facts(&self) -> Vec<Fact> {
        let mut out = Vec::new();
        for r in 0..self.relations.len() {
            out.extend(self.relation_tuples(r).map(|t| Fact::Relation(r, t)));
        }
        let n = self.size();
        for (f, table) in self.functions.iter().enumerate() {
            let arity = self.signature.function_arity(f);
            for (code, &v) in table.iter().enumerate() {
                out.push(Fact::Function(f, decode_tuple(code, arity, n), v));
            }
        }
        for (c, &v) in self.constants.iter().enumerate() {
            out.push(Fact::Constant(c, v));
        }
        out
    }

    /// Facts whose elements all lie in `subset`.
    pub fn facts_within(&self, subset: &[bool]) -> Vec<Fact> {
        self.facts()
            .into_iter()
            .filter(|fact| match fact {
                Fact::Relation(_, t) => t.iter().all(|&e| subset[e]),
                Fact::Function(_, args, v) => subset[*v] && args.iter().all(|&e| subset[e]),
                Fact::Constant(_, v) => subset[*v],
            })
            .collect()
    }

    pub fn fact_holds(&self, fact: &Fact) -> bool {
        match fact {
            Fact::Relation(r, t) => self.holds(*r, t),
            Fact::Function(f, args, v) => self.apply(*f, args) == *v,
            Fact::Constant(c, v) => self.constant(*c) == *v,
        }
    }

    /// Evaluates a term under a variable assignment.
    pub fn evaluate_term(&self, term: &Term, env: &HashMap<String, Elem>) -> Result<Elem> {
        match term {
            Term::Var(v) => match env.get(v) {
                Some(&e) if e < self.size() => Ok(e),
                Some(_) => Err(Error::Structure(format!("variable `{v}` bound outside the universe"))),
                None => match self.signature.lookup(v) {
                    Some(Symbol::Constant(c)) => Ok(self.constants[c]),
                    _ => Err(Error::UnboundVariable(v.clone())),
                },
            },
            Term::Const(c) => match self.signature.lookup(c) {
                Some(Symbol::Constant(i)) => Ok(self.constants[i]),
                _ => Err(Error::UnknownSymbol(c.clone())),
            },
            Term::App(f, args) => match self.signature.lookup(f) {
                Some(Symbol::Function(i)) => {
                    let arity = self.signature.function_arity(i);
                    if arity != args.len() {
                        return Err(Error::Arity {
                            symbol: f.clone(),
                            expected: arity,
                            found: args.len(),
                        });
                    }
                    let vals = args
                        .iter()
                        .map(|a| self.evaluate_term(a, env))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(self.apply(i, &vals))
                }
                _ => Err(Error::UnknownSymbol(f.clone())),
            },
        }
    }

    /// Least subset containing `seed` and the constants, closed under every
    /// function.
    pub fn closure(&self, seed: impl IntoIterator<Item = Elem>) -> Vec<bool> {
        let n = self.size();
        let mut inside = vec![false; n];
        for e in seed.into_iter().chain(self.constants.iter().copied()) {
            inside[e] = true;
        }
        loop {
            let mut changed = false;
            for (f, table) in self.functions.iter().enumerate() {
                let arity = self.signature.function_arity(f);
                for (code, &v) in table.iter().enumerate() {
                    if !inside[v] && decode_tuple(code, arity, n).iter().all(|&e| inside[e]) {
                        inside[v] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return inside;
            }
        }
    }

    pub fn is_closed(&self, subset: &[bool]) -> bool {
        self.closure((0..self.size()).filter(|&e| subset[e])) == subset
    }

    /// The substructure generated by `seed`, with its inclusion map.
    pub fn generated_substructure(&self, seed: &BTreeSet<Elem>) -> Result<(FiniteStructure, Vec<Elem>)> {
        if let Some(&e) = seed.iter().find(|&&e| e >= self.size()) {
            return Err(Error::Precondition(format!("seed element {e} outside the universe")));
        }
        let inside = self.closure(seed.iter().copied());
        self.induced_substructure(&inside)
    }

    /// Induced substructure on a function-closed, nonempty subset.
    pub fn induced_substructure(&self, subset: &[bool]) -> Result<(FiniteStructure, Vec<Elem>)> {
        let keep: Vec<Elem> = (0..self.size()).filter(|&e| subset[e]).collect();
        if keep.is_empty() {
            return Err(Error::Structure("generated substructure is empty".into()));
        }
        if !self.is_closed(subset) {
            return Err(Error::Structure("subset is not closed under the functions".into()));
        }
        let mut back = vec![usize::MAX; self.size()];
        for (i, &e) in keep.iter().enumerate() {
            back[e] = i;
        }
        let m = keep.len();
        let relations = (0..self.relations.len())
            .map(|r| {
                let arity = self.signature.relation_arity(r);
                (0..table_len(m, arity))
                    .map(|code| {
                        let t: Vec<Elem> = decode_tuple(code, arity, m).iter().map(|&i| keep[i]).collect();
                        self.holds(r, &t)
                    })
                    .collect()
            })
            .collect();
        let functions = (0..self.functions.len())
            .map(|f| {
                let arity = self.signature.function_arity(f);
                (0..table_len(m, arity))
                    .map(|code| {
                        let t: Vec<Elem> = decode_tuple(code, arity, m).iter().map(|&i| keep[i]).collect();
                        back[self.apply(f, &t)]
                    })
                    .collect()
            })
            .collect();
        let constants = self.constants.iter().map(|&c| back[c]).collect();
        let names = keep.iter().map(|&e| self.names[e].clone()).collect();
        let sub = FiniteStructure::from_tables(self.signature.clone(), names, relations, functions, constants)?;
        Ok((sub, keep))
    }

    /// Relabels elements: element `e` of `self` becomes `perm[e]`.
    pub fn permuted(&self, perm: &[Elem]) -> FiniteStructure {
        let n = self.size();
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let relations = self
            .relations
            .iter()
            .enumerate()
            .map(|(r, table)| {
                let arity = self.signature.relation_arity(r);
                (0..table.len())
                    .map(|code| {
                        let t: Vec<Elem> = decode_tuple(code, arity, n).iter().map(|&e| inv[e]).collect();
                        table[encode_tuple(&t, n)]
                    })
                    .collect()
            })
            .collect();
        let functions = self
            .functions
            .iter()
            .enumerate()
            .map(|(f, table)| {
                let arity = self.signature.function_arity(f);
                (0..table.len())
                    .map(|code| {
                        let t: Vec<Elem> = decode_tuple(code, arity, n).iter().map(|&e| inv[e]).collect();
                        perm[table[encode_tuple(&t, n)]]
                    })
                    .collect()
            })
            .collect();
        let constants = self.constants.iter().map(|&c| perm[c]).collect();
        let mut names = vec![String::new(); n];
        for (old, &new) in perm.iter().enumerate() {
            names[new] = self.names[old].clone();
        }
        FiniteStructure {
            signature: self.signature.clone(),
            names,
            relations,
            functions,
            constants,
        }
    }

    /// Same tables, elements renamed `0..n`.
    pub fn with_numbered_names(&self) -> FiniteStructure {
        FiniteStructure {
            names: numbered_names(self.size()),
            ..self.clone()
        }
    }

    pub fn with_names(&self, names: Vec<String>) -> Result<FiniteStructure> {
        let s = FiniteStructure { names, ..self.clone() };
        s.validate()?;
        Ok(s)
    }

    /// Reinterprets the structure over `signature`, which must extend the
    /// current one by constants only; `extra` gives their values.
    pub fn expand_constants(&self, signature: Arc<Signature>, extra: &[Elem]) -> Result<FiniteStructure> {
        if !self.signature.is_prefix_of(&signature)
            || signature.relations().len() != self.signature.relations().len()
            || signature.functions().len() != self.signature.functions().len()
            || signature.constants().len() != self.signature.constants().len() + extra.len()
        {
            return Err(Error::SignatureMismatch("expansion must only add constants".into()));
        }
        let mut constants = self.constants.clone();
        constants.extend_from_slice(extra);
        FiniteStructure::from_tables(
            signature,
            self.names.clone(),
            self.relations.clone(),
            self.functions.clone(),
            constants,
        )
    }

    /// Restriction to a signature that is a prefix of ours.
    pub fn reduct(&self, signature: Arc<Signature>) -> Result<FiniteStructure> {
        if !signature.is_prefix_of(&self.signature) {
            return Err(Error::SignatureMismatch("reduct signature is not a prefix".into()));
        }
        Ok(FiniteStructure {
            relations: self.relations[..signature.relations().len()].to_vec(),
            functions: self.functions[..signature.functions().len()].to_vec(),
            constants: self.constants[..signature.constants().len()].to_vec(),
            names: self.names.clone(),
            signature,
        })
    }

    /// Whether `self` is a single point on which every relation holds.
    pub fn is_full_point(&self) -> bool {
        self.size() == 1 && self.relations.iter().all(|t| t.iter().all(|&b| b))
    }
}

/// A structure expanded by one fresh constant per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub signature: Arc<Signature>,
    pub structure: FiniteStructure,
    /// Constant naming each expanded element, in expansion order.
    pub constant_names: Vec<String>,
    /// Elements whose preferred constant name was taken and got a suffix.
    pub renamed: Vec<Elem>,
}

/// Adjoins a constant `<prefix><element name>` for every element; names that
/// collide with existing symbols are suffixed with `_1`, `_2`, ...
pub fn expand_with_constants(s: &FiniteStructure, prefix: &str) -> Result<Expansion> {
    let all: Vec<Elem> = s.elements().collect();
    expand_subset_with_constants(s, &all, prefix)
}

/// As [`expand_with_constants`] for the listed elements only; the constant
/// names follow the order of `subset`.
pub fn expand_subset_with_constants(s: &FiniteStructure, subset: &[Elem], prefix: &str) -> Result<Expansion> {
    if subset.iter().any(|&e| e >= s.size()) {
        return Err(Error::Precondition("element outside the universe".into()));
    }
    let sig = s.signature();
    let mut taken: BTreeSet<String> = sig
        .relations()
        .iter()
        .chain(sig.functions())
        .map(|(n, _)| n.clone())
        .chain(sig.constants().iter().cloned())
        .collect();
    let mut constant_names = Vec::with_capacity(subset.len());
    let mut renamed = Vec::new();
    for &e in subset {
        let clean: String = s.names()[e]
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
            .collect();
        let base = format!("{prefix}{clean}");
        let mut candidate = base.clone();
        let mut i = 0;
        while taken.contains(&candidate) {
            i += 1;
            candidate = format!("{base}_{i}");
        }
        if i > 0 {
            renamed.push(e);
        }
        taken.insert(candidate.clone());
        constant_names.push(candidate);
    }
    let signature = Arc::new(sig.with_constants(constant_names.iter().cloned())?);
    let structure = s.expand_constants(signature.clone(), subset)?;
    Ok(Expansion {
        signature,
        structure,
        constant_names,
        renamed,
    })
}

pub fn numbered_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Incremental, name-based construction of a [`FiniteStructure`].
#[derive(Debug, Clone)]
pub struct StructureBuilder {
    signature: Arc<Signature>,
    names: Vec<String>,
    relations: Vec<Vec<bool>>,
    functions: Vec<Vec<Option<Elem>>>,
    constants: Vec<Option<Elem>>,
}

impl StructureBuilder {
    pub fn new<S: Into<String>>(signature: Arc<Signature>, universe: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = universe.into_iter().map(Into::into).collect();
        let n = names.len();
        let relations = signature
            .relations()
            .iter()
            .map(|(_, a)| vec![false; table_len(n, *a)])
            .collect();
        let functions = signature
            .functions()
            .iter()
            .map(|(_, a)| vec![None; table_len(n, *a)])
            .collect();
        let constants = vec![None; signature.constants().len()];
        Ok(StructureBuilder {
            signature,
            names,
            relations,
            functions,
            constants,
        })
    }

    fn elem(&self, name: &str) -> Result<Elem> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Structure(format!("unknown element `{name}`")))
    }

    fn elems<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<Elem>> {
        names.iter().map(|n| self.elem(n.as_ref())).collect()
    }

    pub fn add_fact<S: AsRef<str>>(&mut self, relation: &str, tuple: &[S]) -> Result<&mut Self> {
        let Some(Symbol::Relation(r)) = self.signature.lookup(relation) else {
            return Err(Error::UnknownSymbol(relation.to_string()));
        };
        let arity = self.signature.relation_arity(r);
        if tuple.len() != arity {
            return Err(Error::Arity {
                symbol: relation.to_string(),
                expected: arity,
                found: tuple.len(),
            });
        }
        let t = self.elems(tuple)?;
        let n = self.names.len();
        self.relations[r][encode_tuple(&t, n)] = true;
        Ok(self)
    }

    pub fn set_function<S: AsRef<str>>(&mut self, function: &str, args: &[S], value: &str) -> Result<&mut Self> {
        let Some(Symbol::Function(f)) = self.signature.lookup(function) else {
            return Err(Error::UnknownSymbol(function.to_string()));
        };
        let arity = self.signature.function_arity(f);
        if args.len() != arity {
            return Err(Error::Arity {
                symbol: function.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        let t = self.elems(args)?;
        let v = self.elem(value)?;
        let n = self.names.len();
        let slot = &mut self.functions[f][encode_tuple(&t, n)];
        if let Some(old) = *slot {
            if old != v {
                return Err(Error::Structure(format!("function `{function}` assigned twice at one argument")));
            }
        }
        *slot = Some(v);
        Ok(self)
    }

    pub fn set_constant(&mut self, constant: &str, value: &str) -> Result<&mut Self> {
        let Some(Symbol::Constant(c)) = self.signature.lookup(constant) else {
            return Err(Error::UnknownSymbol(constant.to_string()));
        };
        self.constants[c] = Some(self.elem(value)?);
        Ok(self)
    }

    pub fn build(self) -> Result<FiniteStructure> {
        let functions = self
            .functions
            .into_iter()
            .zip(self.signature.functions())
            .map(|(table, (name, _))| {
                table
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Structure(format!("function `{name}` is not total")))
            })
            .collect::<Result<Vec<_>>>()?;
        let constants = self
            .constants
            .into_iter()
            .zip(self.signature.constants())
            .map(|(v, name)| v.ok_or_else(|| Error::Structure(format!("constant `{name}` is uninterpreted"))))
            .collect::<Result<Vec<_>>>()?;
        FiniteStructure::from_tables(self.signature, self.names, self.relations, functions, constants)
    }
}

/// A structure together with a tuple of distinguished elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedStructure {
    pub structure: FiniteStructure,
    pub anchors: Vec<Elem>,
}

impl PointedStructure {
    pub fn new(structure: FiniteStructure, anchors: Vec<Elem>) -> Result<Self> {
        if anchors.iter().any(|&a| a >= structure.size()) {
            return Err(Error::Precondition("anchor outside the universe".into()));
        }
        Ok(PointedStructure { structure, anchors })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo as ex;

    fn env(pairs: &[(&str, Elem)]) -> HashMap<String, Elem> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn term_evaluation_in_small_groups() {
        // Z2 with + : 1 + 1 = 0
        let z2 = ex::cyclic_group(2);
        let t = Term::App("mul".into(), vec![Term::Var("x".into()), Term::Var("x".into())]);
        assert_eq!(z2.evaluate_term(&t, &env(&[("x", 1)])).unwrap(), 0);

        let z4 = ex::cyclic_group(4);
        // brute-force inverse of 1 in Z4
        let inv1 = (0..4).find(|&y| (1 + y) % 4 == 0).unwrap();
        let t = Term::App("inv".into(), vec![Term::Var("x".into())]);
        assert_eq!(z4.evaluate_term(&t, &env(&[("x", 1)])).unwrap(), inv1);
        assert_eq!(inv1, 3);

        let t = Term::Const("e".into());
        assert_eq!(z4.evaluate_term(&t, &HashMap::new()).unwrap(), z4.constant(0));
    }

    #[test]
    fn term_evaluation_errors() {
        let z2 = ex::cyclic_group(2);
        let t = Term::App("mul".into(), vec![Term::Var("x".into()), Term::Var("y".into())]);
        assert!(matches!(
            z2.evaluate_term(&t, &env(&[("x", 1)])),
            Err(Error::UnboundVariable(_))
        ));
        let t = Term::App("g".into(), vec![Term::Var("x".into())]);
        assert!(matches!(
            z2.evaluate_term(&t, &env(&[("x", 1)])),
            Err(Error::UnknownSymbol(_))
        ));
    }

    #[test]
    fn generated_substructures() {
        let z4 = ex::cyclic_group(4);
        let (sub, incl) = z4.generated_substructure(&BTreeSet::from([2])).unwrap();
        assert_eq!(incl, vec![0, 2]);
        assert_eq!(sub.size(), 2);

        let all: BTreeSet<Elem> = z4.elements().collect();
        let (whole, _) = z4.generated_substructure(&all).unwrap();
        assert_eq!(whole, z4);

        let chain = ex::chain2();
        let (top, incl) = chain.generated_substructure(&BTreeSet::from([1])).unwrap();
        assert_eq!(incl, vec![1]);
        assert_eq!(top.size(), 1);
        assert!(top.holds(0, &[0, 0]));

        assert!(chain.generated_substructure(&BTreeSet::new()).is_err());
    }

    #[test]
    fn builder_requires_totality() {
        let sig = Arc::new(Signature::new(Vec::<(&str, usize)>::new(), [("f", 1)], Vec::<&str>::new()).unwrap());
        let mut b = StructureBuilder::new(sig.clone(), ["a", "b"]).unwrap();
        b.set_function("f", &["a"], "b").unwrap();
        assert!(b.clone().build().is_err());
        b.set_function("f", &["b"], "a").unwrap();
        let s = b.build().unwrap();
        assert_eq!(s.apply(0, &[0]), 1);
        assert!(StructureBuilder::new(sig, Vec::<String>::new()).unwrap().build().is_err());
    }

    #[test]
    fn serde_round_trip() {
        let s = ex::cyclic_group(3);
        let json = serde_json::to_string(&s).unwrap();
        let back: FiniteStructure = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn permutation_round_trip() {
        let s = ex::cyclic_group(4);
        let perm = vec![2, 0, 3, 1];
        let mut inv = vec![0; 4];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        assert_eq!(s.permuted(&perm).permuted(&inv), s);
    }
}
