//! First-order signatures: relation, function and constant symbols.
//!
//! Equality and the antilogy `false` are part of the formula language, not of
//! the signature. Functions have arity at least one; nullary symbols are
//! declared as constants.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// What a symbol name refers to inside a [`Signature`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Relation(usize),
    Function(usize),
    Constant(usize),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "SignatureRepr", into = "SignatureRepr")]
pub struct Signature {
    relations: Vec<(String, usize)>,
    functions: Vec<(String, usize)>,
    constants: Vec<String>,
    index: HashMap<String, Symbol>,
}

#[derive(Serialize, Deserialize)]
struct SignatureRepr {
    relations: Vec<(String, usize)>,
    functions: Vec<(String, usize)>,
    constants: Vec<String>,
}

impl TryFrom<SignatureRepr> for Signature {
    type Error = Error;

    fn try_from(r: SignatureRepr) -> Result<Self> {
        Signature::new(r.relations, r.functions, r.constants)
    }
}

impl From<Signature> for SignatureRepr {
    fn from(s: Signature) -> Self {
        SignatureRepr {
            relations: s.relations,
            functions: s.functions,
            constants: s.constants,
        }
    }
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.relations == other.relations
            && self.functions == other.functions
            && self.constants == other.constants
    }
}

impl Eq for Signature {}

impl Signature {
    pub fn new<R, F, C, S>(relations: R, functions: F, constants: C) -> Result<Self>
    where
        R: IntoIterator<Item = (S, usize)>,
        F: IntoIterator<Item = (S, usize)>,
        C: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let relations: Vec<(String, usize)> =
            relations.into_iter().map(|(n, a)| (n.into(), a)).collect();
        let functions: Vec<(String, usize)> =
            functions.into_iter().map(|(n, a)| (n.into(), a)).collect();
        let constants: Vec<String> = constants.into_iter().map(Into::into).collect();

        let mut index = HashMap::new();
        let mut insert = |name: &str, sym: Symbol| -> Result<()> {
            if name.is_empty() {
                return Err(Error::Signature("empty symbol name".into()));
            }
            if index.insert(name.to_string(), sym).is_some() {
                return Err(Error::Signature(format!("duplicate symbol `{name}`")));
            }
            Ok(())
        };
        for (i, (name, arity)) in relations.iter().enumerate() {
            if *arity == 0 {
                return Err(Error::Signature(format!("relation `{name}` has arity 0")));
            }
            insert(name, Symbol::Relation(i))?;
        }
        for (i, (name, arity)) in functions.iter().enumerate() {
            if *arity == 0 {
                return Err(Error::Signature(format!(
                    "function `{name}` has arity 0; declare it as a constant"
                )));
            }
            insert(name, Symbol::Function(i))?;
        }
        for (i, name) in constants.iter().enumerate() {
            insert(name, Symbol::Constant(i))?;
        }
        Ok(Signature {
            relations,
            functions,
            constants,
            index,
        })
    }

    pub fn empty() -> Self {
        Signature::new::<_, _, _, String>([], [], []).expect("empty signature is valid")
    }

    /// Purely relational signature.
    pub fn relational<'a>(relations: impl IntoIterator<Item = (&'a str, usize)>) -> Result<Self> {
        Signature::new(relations, [], [])
    }

    pub fn relations(&self) -> &[(String, usize)] {
        &self.relations
    }

    pub fn functions(&self) -> &[(String, usize)] {
        &self.functions
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    pub fn relation_arity(&self, r: usize) -> usize {
        self.relations[r].1
    }

    pub fn function_arity(&self, f: usize) -> usize {
        self.functions[f].1
    }

    pub fn is_relational(&self) -> bool {
        self.functions.is_empty() && self.constants.is_empty()
    }

    /// Adds constants, failing on any name collision.
    pub fn with_constants<S: Into<String>>(&self, extra: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut constants = self.constants.clone();
        constants.extend(extra.into_iter().map(Into::into));
        Signature::new(self.relations.clone(), self.functions.clone(), constants)
    }

    /// Union of two signatures; shared names must denote the same kind of
    /// symbol with the same arity.
    pub fn union(&self, other: &Signature) -> Result<Self> {
        let mut relations = self.relations.clone();
        let mut functions = self.functions.clone();
        let mut constants = self.constants.clone();
        for (name, arity) in &other.relations {
            match self.lookup(name) {
                None => relations.push((name.clone(), *arity)),
                Some(Symbol::Relation(i)) if self.relations[i].1 == *arity => {}
                Some(_) => return Err(Error::Signature(format!("incompatible symbol `{name}`"))),
            }
        }
        for (name, arity) in &other.functions {
            match self.lookup(name) {
                None => functions.push((name.clone(), *arity)),
                Some(Symbol::Function(i)) if self.functions[i].1 == *arity => {}
                Some(_) => return Err(Error::Signature(format!("incompatible symbol `{name}`"))),
            }
        }
        for name in &other.constants {
            match self.lookup(name) {
                None => constants.push(name.clone()),
                Some(Symbol::Constant(_)) => {}
                Some(_) => return Err(Error::Signature(format!("incompatible symbol `{name}`"))),
            }
        }
        Signature::new(relations, functions, constants)
    }

    /// Whether every symbol of `self` occurs in `other` with the same role,
    /// arity and index.
    pub fn is_prefix_of(&self, other: &Signature) -> bool {
        other.relations.starts_with(&self.relations)
            && other.functions.starts_with(&self.functions)
            && other.constants.starts_with(&self.constants)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relations.iter().map(|(n, a)| format!("{n}/{a}")).collect();
        let funs: Vec<String> = self.functions.iter().map(|(n, a)| format!("{n}/{a}")).collect();
        write!(
            f,
            "{{ relations: {}; functions: {}; constants: {}; }}",
            rels.join(", "),
            funs.join(", "),
            self.constants.join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_zero_arity() {
        assert!(Signature::new([("R", 1)], [("R", 1)], Vec::<&str>::new()).is_err());
        assert!(Signature::new([("R", 0)], [], Vec::<&str>::new()).is_err());
        assert!(Signature::new(Vec::<(String, usize)>::new(), [("f".to_string(), 0)], Vec::<String>::new()).is_err());
        assert!(Signature::new([("R", 1)], [], ["R"]).is_err());
    }

    #[test]
    fn union_checks_arity() {
        let a = Signature::new([("R", 2)], [], ["c"]).unwrap();
        let b = Signature::new([("R", 2)], [], ["d"]).unwrap();
        let u = a.union(&b).unwrap();
        assert_eq!(u.constants(), &["c".to_string(), "d".to_string()]);
        assert!(a.is_prefix_of(&u));
        let bad = Signature::new([("R", 1)], [], Vec::<&str>::new()).unwrap();
        assert!(a.union(&bad).is_err());
    }
}
