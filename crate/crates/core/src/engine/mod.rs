//! Internal evaluation and search machinery shared by the public modules.

pub(crate) mod chase;
pub(crate) mod compiled;
pub(crate) mod matcher;
pub(crate) mod partial;

pub use matcher::MAX_TARGET;

use crate::error::Result;
use crate::formula::Cq;
use crate::structure::{Elem, FiniteStructure};
use matcher::{find, Constraints, Query};

/// Whether `cq` holds in `s` with its free variables at `tuple`.
pub fn cq_holds(s: &FiniteStructure, cq: &Cq, tuple: &[Elem], cap: u64) -> Result<bool> {
    let q = Query::from_cq(s.signature(), cq)?;
    let fixed = tuple.iter().copied().enumerate().collect();
    let c = Constraints {
        fixed,
        ..Default::default()
    };
    Ok(find(&q, s, &c, cap)?.is_some())
}
