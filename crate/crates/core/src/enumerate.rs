//! Exhaustive enumeration of all structures of bounded size.
//!
//! This is the naive generator: every table cell runs through every value.
//! Model search for theories lives in [`crate::finder`]; this module is kept
//! deliberately plain because tests use it as the reference that the pruned
//! searches are checked against.

use std::collections::HashSet;
use std::sync::Arc;

use crate::canon::{canonical_form, canonical_labeling};
use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::structure::{table_len, FiniteStructure};

pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// Number of labeled structures of size `n`, saturating.
pub fn labeled_count(sig: &Signature, n: usize) -> u64 {
    let n64 = n as u64;
    let mut total: u64 = 1;
    for _ in sig.constants() {
        total = total.saturating_mul(n64);
    }
    for (_, a) in sig.functions() {
        for _ in 0..table_len(n, *a) {
            total = total.saturating_mul(n64);
        }
    }
    for (_, a) in sig.relations() {
        let cells = table_len(n, *a) as u32;
        total = total.saturating_mul(2u64.saturating_pow(cells));
    }
    total
}

/// All structures with universe size `1..=max_size`.
///
/// With `up_to_iso`, exactly one canonical representative per isomorphism
/// class is returned. Output is ordered by size, then by table encoding.
pub fn enumerate_structures(
    sig: &Arc<Signature>,
    max_size: usize,
    up_to_iso: bool,
    cap: u64,
) -> Result<Vec<FiniteStructure>> {
    if max_size == 0 {
        return Err(Error::Precondition("max_size must be at least 1".into()));
    }
    let mut out = Vec::new();
    for n in 1..=max_size {
        out.extend(enumerate_size(sig, n, up_to_iso, cap)?);
    }
    Ok(out)
}

pub fn enumerate_size(sig: &Arc<Signature>, n: usize, up_to_iso: bool, cap: u64) -> Result<Vec<FiniteStructure>> {
    let raw = labeled_count(sig, n);
    if raw > cap {
        return Err(Error::BudgetExhausted(format!(
            "{raw} labeled structures of size {n} exceed the cap {cap}"
        )));
    }
    let fun_cells: Vec<usize> = sig.functions().iter().map(|(_, a)| table_len(n, *a)).collect();
    let rel_cells: Vec<usize> = sig.relations().iter().map(|(_, a)| table_len(n, *a)).collect();
    let consts = sig.constants().len();
    let fun_total: usize = fun_cells.iter().sum();
    let rel_total: usize = rel_cells.iter().sum();

    // odometer: constants, function cells (base n), relation cells (base 2)
    let digits = consts + fun_total + rel_total;
    let base: Vec<usize> = (0..digits).map(|i| if i < consts + fun_total { n } else { 2 }).collect();
    let mut odo = vec![0usize; digits];

    let mut seen = HashSet::new();
    let mut found = Vec::new();
    loop {
        let constants = odo[..consts].to_vec();
        let mut idx = consts;
        let functions: Vec<Vec<usize>> = fun_cells
            .iter()
            .map(|&len| {
                let t = odo[idx..idx + len].to_vec();
                idx += len;
                t
            })
            .collect();
        let relations: Vec<Vec<bool>> = rel_cells
            .iter()
            .map(|&len| {
                let t = odo[idx..idx + len].iter().map(|&d| d == 1).collect();
                idx += len;
                t
            })
            .collect();
        let s = FiniteStructure::from_tables_numbered(sig.clone(), n, relations, functions, constants)?;
        if up_to_iso {
            let (code, _) = canonical_labeling(&s);
            if seen.insert(code.clone()) {
                found.push((code, canonical_form(&s)));
            }
        } else {
            found.push((Vec::new(), s));
        }

        // advance
        let mut i = digits;
        loop {
            if i == 0 {
                if up_to_iso {
                    found.sort_by(|a, b| a.0.cmp(&b.0));
                }
                return Ok(found.into_iter().map(|(_, s)| s).collect());
            }
            i -= 1;
            odo[i] += 1;
            if odo[i] < base[i] {
                break;
            }
            odo[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    fn sig(rel: &[(&str, usize)], fun: &[(&str, usize)]) -> Arc<Signature> {
        Arc::new(Signature::new(rel.iter().copied(), fun.iter().copied(), Vec::<&str>::new()).unwrap())
    }

    #[test]
    fn unary_relation_counts() {
        // size 1: R empty or full; size 2: |R| = 0, 1, 2
        let s = sig(&[("R", 1)], &[]);
        let all = enumerate_structures(&s, 2, true, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(all.len(), 5);
        assert_eq!(all.iter().filter(|s| s.size() == 1).count(), 2);
        let labeled = enumerate_structures(&s, 2, false, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(labeled.len(), 2 + 4);
    }

    #[test]
    fn unary_function_on_a_point() {
        let s = sig(&[], &[("f", 1)]);
        let all = enumerate_structures(&s, 1, true, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].apply(0, &[0]), 0);
    }

    #[test]
    fn binary_relation_on_a_point() {
        let s = sig(&[("leq", 2)], &[]);
        assert_eq!(enumerate_structures(&s, 1, true, DEFAULT_ENUMERATION_CAP).unwrap().len(), 2);
    }

    #[test]
    fn known_class_counts() {
        // digraphs with loops on <= 3 vertices: 2 + 10 + 104
        let s = sig(&[("R", 2)], &[]);
        assert_eq!(enumerate_structures(&s, 3, true, DEFAULT_ENUMERATION_CAP).unwrap().len(), 116);
        // functional graphs on <= 3 points: 1 + 3 + 7
        let s = sig(&[], &[("f", 1)]);
        assert_eq!(enumerate_structures(&s, 3, true, DEFAULT_ENUMERATION_CAP).unwrap().len(), 11);
    }

    #[test]
    fn representatives_are_pairwise_non_isomorphic() {
        let s = sig(&[("R", 2)], &[]);
        let all = enumerate_structures(&s, 3, true, DEFAULT_ENUMERATION_CAP).unwrap();
        for (i, a) in all.iter().enumerate() {
            a.validate().unwrap();
            for b in &all[i + 1..] {
                assert!(!are_isomorphic(a, b));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let s = sig(&[("R", 2)], &[]);
        assert!(matches!(
            enumerate_structures(&s, 4, false, 1000),
            Err(Error::BudgetExhausted(_))
        ));
        assert!(enumerate_structures(&s, 0, false, 1000).is_err());
    }
}
