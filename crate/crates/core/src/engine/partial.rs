//! Structures with undetermined cells, shared by the chase and the model
//! finder.

use std::sync::Arc;

use super::compiled::{Forced, Interp};
use crate::signature::Signature;
use crate::structure::{decode_tuple, encode_tuple, table_len, Elem, FiniteStructure};

/// A cell of an interpretation table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Cell {
    Const(usize),
    Fun(usize, usize),
    Rel(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PartialModel {
    pub sig: Arc<Signature>,
    pub n: usize,
    pub rel: Vec<Vec<Option<bool>>>,
    pub fun: Vec<Vec<Option<Elem>>>,
    pub cst: Vec<Option<Elem>>,
}

/// Setting a cell clashed with its current value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Clash;

impl Interp for PartialModel {
    fn size(&self) -> usize {
        self.n
    }
    fn rel(&self, r: usize, args: &[Elem]) -> Option<bool> {
        self.rel[r][encode_tuple(args, self.n)]
    }
    fn fun(&self, f: usize, args: &[Elem]) -> Option<Elem> {
        self.fun[f][encode_tuple(args, self.n)]
    }
    fn cst(&self, c: usize) -> Option<Elem> {
        self.cst[c]
    }
}

impl PartialModel {
    pub(crate) fn new(sig: Arc<Signature>, n: usize) -> Self {
        let rel = sig.relations().iter().map(|(_, a)| vec![None; table_len(n, *a)]).collect();
        let fun = sig.functions().iter().map(|(_, a)| vec![None; table_len(n, *a)]).collect();
        let cst = vec![None; sig.constants().len()];
        PartialModel { sig, n, rel, fun, cst }
    }

    #[cfg(test)]
    pub(crate) fn from_structure(s: &FiniteStructure) -> Self {
        let sig = s.signature().clone();
        PartialModel {
            n: s.size(),
            rel: (0..sig.relations().len())
                .map(|r| s.relation_table(r).iter().map(|&b| Some(b)).collect())
                .collect(),
            fun: (0..sig.functions().len())
                .map(|f| s.function_table(f).iter().map(|&v| Some(v)).collect())
                .collect(),
            cst: s.constant_table().iter().map(|&v| Some(v)).collect(),
            sig,
        }
    }

    /// Same cells over a universe with `extra` more elements.
    pub(crate) fn enlarged(&self, extra: usize) -> Self {
        let mut out = PartialModel::new(self.sig.clone(), self.n + extra);
        for (r, (_, a)) in self.sig.relations().iter().enumerate() {
            for (code, v) in self.rel[r].iter().enumerate() {
                if v.is_some() {
                    out.rel[r][encode_tuple(&decode_tuple(code, *a, self.n), out.n)] = *v;
                }
            }
        }
        for (f, (_, a)) in self.sig.functions().iter().enumerate() {
            for (code, v) in self.fun[f].iter().enumerate() {
                if v.is_some() {
                    out.fun[f][encode_tuple(&decode_tuple(code, *a, self.n), out.n)] = *v;
                }
            }
        }
        out.cst = self.cst.clone();
        out
    }

    pub(crate) fn get(&self, cell: Cell) -> Option<Elem> {
        match cell {
            Cell::Const(c) => self.cst[c],
            Cell::Fun(f, code) => self.fun[f][code],
            Cell::Rel(r, code) => self.rel[r][code].map(usize::from),
        }
    }

    /// Sets a cell; relation cells take 0 or 1. Returns whether it changed.
    pub(crate) fn set(&mut self, cell: Cell, v: Elem) -> Result<bool, Clash> {
        fn put<T: PartialEq + Copy>(slot: &mut Option<T>, v: T) -> Result<bool, Clash> {
            match *slot {
                Some(old) if old == v => Ok(false),
                Some(_) => Err(Clash),
                None => {
                    *slot = Some(v);
                    Ok(true)
                }
            }
        }
        match cell {
            Cell::Const(c) => put(&mut self.cst[c], v),
            Cell::Fun(f, code) => put(&mut self.fun[f][code], v),
            Cell::Rel(r, code) => put(&mut self.rel[r][code], v == 1),
        }
    }

    pub(crate) fn cell_of(&self, forced: &Forced) -> (Cell, Elem) {
        match forced {
            Forced::Rel(r, args) => (Cell::Rel(*r, encode_tuple(args, self.n)), 1),
            Forced::Fun(f, args, v) => (Cell::Fun(*f, encode_tuple(args, self.n)), *v),
            Forced::Const(c, v) => (Cell::Const(*c), *v),
        }
    }

    pub(crate) fn apply(&mut self, forced: &Forced) -> Result<bool, Clash> {
        let (cell, v) = self.cell_of(forced);
        self.set(cell, v)
    }

    /// Arguments of a cell.
    pub(crate) fn args(&self, cell: Cell) -> Vec<Elem> {
        match cell {
            Cell::Const(_) => Vec::new(),
            Cell::Fun(f, code) => decode_tuple(code, self.sig.function_arity(f), self.n),
            Cell::Rel(r, code) => decode_tuple(code, self.sig.relation_arity(r), self.n),
        }
    }

    /// Every cell, constants first, then by largest argument, functions
    /// before relations.
    pub(crate) fn cells(&self) -> Vec<Cell> {
        let mut out: Vec<(usize, Cell)> = (0..self.cst.len()).map(|c| (0, Cell::Const(c))).collect();
        for f in 0..self.fun.len() {
            for code in 0..self.fun[f].len() {
                let c = Cell::Fun(f, code);
                out.push((self.args(c).into_iter().max().unwrap_or(0) + 1, c));
            }
        }
        for r in 0..self.rel.len() {
            for code in 0..self.rel[r].len() {
                let c = Cell::Rel(r, code);
                out.push((self.args(c).into_iter().max().unwrap_or(0) + 1, c));
            }
        }
        out.sort();
        out.into_iter().map(|(_, c)| c).collect()
    }

    #[cfg(test)]
    pub(crate) fn is_total(&self) -> bool {
        self.cst.iter().all(Option::is_some)
            && self.fun.iter().all(|t| t.iter().all(Option::is_some))
            && self.rel.iter().all(|t| t.iter().all(Option::is_some))
    }

    /// The total structure, with undetermined relation cells false. `None`
    /// if a function or constant cell is undetermined.
    pub(crate) fn to_structure_closed(&self) -> Option<FiniteStructure> {
        let fun = self
            .fun
            .iter()
            .map(|t| t.iter().copied().collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        let cst = self.cst.iter().copied().collect::<Option<Vec<_>>>()?;
        let rel = self.rel.iter().map(|t| t.iter().map(|v| v == &Some(true)).collect()).collect();
        FiniteStructure::from_tables_numbered(self.sig.clone(), self.n, rel, fun, cst).ok()
    }

    /// Elements mentioned by some determined cell, as argument or value.
    pub(crate) fn mentioned(&self) -> Vec<bool> {
        let mut out = vec![false; self.n];
        for c in self.cst.iter().flatten() {
            out[*c] = true;
        }
        for (f, t) in self.fun.iter().enumerate() {
            for (code, v) in t.iter().enumerate() {
                if let Some(v) = v {
                    out[*v] = true;
                    for a in decode_tuple(code, self.sig.function_arity(f), self.n) {
                        out[a] = true;
                    }
                }
            }
        }
        for (r, t) in self.rel.iter().enumerate() {
            for (code, v) in t.iter().enumerate() {
                if v.is_some() {
                    for a in decode_tuple(code, self.sig.relation_arity(r), self.n) {
                        out[a] = true;
                    }
                }
            }
        }
        out
    }

    /// Image under `class` (old element to new element, onto `0..m`).
    /// Function cells with clashing values are reported as pairs to merge.
    pub(crate) fn quotient(&self, class: &[Elem], m: usize) -> (PartialModel, Vec<(Elem, Elem)>) {
        let mut out = PartialModel::new(self.sig.clone(), m);
        let mut clashes = Vec::new();
        for (c, v) in self.cst.iter().enumerate() {
            if let Some(v) = v {
                out.cst[c] = Some(class[*v]);
            }
        }
        for (f, (_, a)) in self.sig.functions().iter().enumerate() {
            for (code, v) in self.fun[f].iter().enumerate() {
                let Some(v) = v else { continue };
                let args: Vec<Elem> = decode_tuple(code, *a, self.n).into_iter().map(|e| class[e]).collect();
                let slot = &mut out.fun[f][encode_tuple(&args, m)];
                match *slot {
                    Some(old) if old != class[*v] => clashes.push((old, class[*v])),
                    _ => *slot = Some(class[*v]),
                }
            }
        }
        for (r, (_, a)) in self.sig.relations().iter().enumerate() {
            for (code, v) in self.rel[r].iter().enumerate() {
                let Some(v) = v else { continue };
                let args: Vec<Elem> = decode_tuple(code, *a, self.n).into_iter().map(|e| class[e]).collect();
                let slot = &mut out.rel[r][encode_tuple(&args, m)];
                *slot = Some(slot.unwrap_or(false) || *v);
            }
        }
        (out, clashes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn round_trip_and_quotient() {
        let c = zoo::chain2();
        let p = PartialModel::from_structure(&c);
        assert!(p.is_total());
        assert_eq!(p.to_structure_closed().unwrap().relation_table(0), c.relation_table(0));
        let (q, clashes) = p.quotient(&[0, 0], 1);
        assert!(clashes.is_empty());
        assert_eq!(q.rel[0], vec![Some(true)]);
        let big = p.enlarged(1);
        assert_eq!(big.rel[0][encode_tuple(&[0, 1], 3)], Some(true));
        assert_eq!(big.rel[0][encode_tuple(&[2, 2], 3)], None);
    }

    #[test]
    fn set_detects_clashes() {
        let mut p = PartialModel::new(zoo::unary_signature(), 2);
        assert_eq!(p.set(Cell::Fun(0, 0), 1), Ok(true));
        assert_eq!(p.set(Cell::Fun(0, 0), 1), Ok(false));
        assert_eq!(p.set(Cell::Fun(0, 0), 0), Err(Clash));
        let (q, clashes) = p.quotient(&[0, 0], 1);
        assert!(clashes.is_empty());
        assert_eq!(q.fun[0], vec![Some(0)]);
    }
}
