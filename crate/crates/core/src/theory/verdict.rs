//! Budgets and three-valued answers with certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::structure::{Elem, FiniteStructure};

/// Bounds for every semi-decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest model size quantified over.
    pub n: usize,
    /// Largest continuation size searched.
    #[serde(rename = "N")]
    pub big_n: usize,
    /// Largest number of variables in a conjunctive query.
    pub k: usize,
    /// Search node cap.
    pub node_cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            n: 3,
            big_n: 6,
            k: 3,
            node_cap: 1_000_000,
        }
    }
}

impl Budget {
    pub fn new(n: usize, big_n: usize, k: usize) -> Self {
        Budget {
            n,
            big_n,
            k,
            ..Budget::default()
        }
    }

    pub fn with_node_cap(self, node_cap: u64) -> Self {
        Budget { node_cap, ..self }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.n == 0 || self.big_n == 0 || self.k == 0 || self.node_cap == 0 {
            return Err(Error::Precondition("budget values must be positive".into()));
        }
        Ok(())
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} N={} k={} node-cap={}", self.n, self.big_n, self.k, self.node_cap)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    /// Merge of per-instance answers: any no wins, then any unknown.
    pub fn merge(self, other: Answer) -> Answer {
        match (self, other) {
            (Answer::No, _) | (_, Answer::No) => Answer::No,
            (Answer::Unknown, _) | (_, Answer::Unknown) => Answer::Unknown,
            _ => Answer::Yes,
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

/// Checkable evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    None,
    /// A structure realizing what was asked.
    Model { structure: FiniteStructure },
    /// The chase derived `false` from the listed sets.
    Refutation { steps: String },
    /// A homomorphism out of the candidate that is not an immersion.
    NonImmersion {
        target: FiniteStructure,
        map: Vec<Elem>,
    },
    /// Every instance checked, with the count.
    Exhaustive { instances: usize },
    /// Two structures without a common continuation in the class.
    Pair {
        left: FiniteStructure,
        right: FiniteStructure,
        refuted: bool,
    },
    /// Bounded pc models on each side.
    PcModels {
        left: Vec<FiniteStructure>,
        right: Vec<FiniteStructure>,
    },
    /// A pc model and a model whose bounded theories break extremality.
    Extremality {
        pc_model: FiniteStructure,
        model: FiniteStructure,
        which: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub verdict: Answer,
    pub budget: Budget,
    pub certificate: Certificate,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn yes(budget: Budget, certificate: Certificate) -> Self {
        Verdict {
            verdict: Answer::Yes,
            budget,
            certificate,
            notes: Vec::new(),
        }
    }

    pub fn no(budget: Budget, certificate: Certificate) -> Self {
        Verdict {
            verdict: Answer::No,
            budget,
            certificate,
            notes: Vec::new(),
        }
    }

    pub fn unknown(budget: Budget, note: impl Into<String>) -> Self {
        Verdict {
            verdict: Answer::Unknown,
            budget,
            certificate: Certificate::None,
            notes: vec![note.into()],
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.verdict == Answer::No
    }
}

/// Turns budget exhaustion into an unknown verdict.
pub(crate) fn or_unknown(budget: Budget, r: Result<Verdict, Error>) -> Result<Verdict, Error> {
    match r {
        Err(Error::BudgetExhausted(m)) => Ok(Verdict::unknown(budget, m)),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_prefers_no_then_unknown() {
        assert_eq!(Answer::Yes.merge(Answer::Yes), Answer::Yes);
        assert_eq!(Answer::Yes.merge(Answer::Unknown), Answer::Unknown);
        assert_eq!(Answer::Unknown.merge(Answer::No), Answer::No);
    }

    #[test]
    fn json_shape() {
        let v = Verdict::unknown(Budget::default(), "cap");
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["verdict"], "unknown");
        assert_eq!(j["budget"]["N"], 6);
        assert_eq!(j["certificate"]["kind"], "none");
        let back: Verdict = serde_json::from_value(j).unwrap();
        assert_eq!(back, v);
    }
}
