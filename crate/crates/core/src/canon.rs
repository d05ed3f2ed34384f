//! Canonical forms for isomorphism reduction.
//!
//! The canonical code of a structure is the lexicographically least table
//! encoding over all relabelings that order elements by an isomorphism
//! invariant colour. Restricting to colour-sorted relabelings keeps the code
//! canonical while shrinking the permutation space.

use crate::structure::{decode_tuple, encode_tuple, Elem, FiniteStructure};

/// Invariant colour of each element.
fn colours(s: &FiniteStructure) -> Vec<Vec<usize>> {
    let n = s.size();
    let sig = s.signature();
    let mut col: Vec<Vec<usize>> = vec![Vec::new(); n];
    for c in 0..sig.constants().len() {
        let v = s.constant(c);
        for (e, col) in col.iter_mut().enumerate() {
            col.push(usize::from(e == v));
        }
    }
    for (r, (_, arity)) in sig.relations().iter().enumerate() {
        let mut counts = vec![vec![0usize; *arity + 1]; n];
        for t in s.relation_tuples(r) {
            for (pos, &e) in t.iter().enumerate() {
                counts[e][pos] += 1;
            }
            if t.iter().all(|&e| e == t[0]) {
                counts[t[0]][*arity] += 1;
            }
        }
        for (e, c) in counts.into_iter().enumerate() {
            col[e].extend(c);
        }
    }
    for (f, (_, arity)) in sig.functions().iter().enumerate() {
        let mut image = vec![0usize; n];
        let mut fixed = vec![0usize; n];
        for (code, &v) in s.function_table(f).iter().enumerate() {
            image[v] += 1;
            let args = decode_tuple(code, *arity, n);
            if args.iter().all(|&a| a == v) {
                fixed[v] = 1;
            }
        }
        for e in 0..n {
            col[e].push(image[e]);
            col[e].push(fixed[e]);
        }
    }
    col
}

/// Encoding of `s` after relabeling by `perm` (old -> new), `inv` its inverse.
fn encode_under(s: &FiniteStructure, perm: &[Elem], inv: &[Elem], out: &mut Vec<usize>) {
    out.clear();
    let n = s.size();
    out.push(n);
    let sig = s.signature();
    for c in 0..sig.constants().len() {
        out.push(perm[s.constant(c)]);
    }
    let mut buf = Vec::new();
    for (f, (_, arity)) in sig.functions().iter().enumerate() {
        let table = s.function_table(f);
        for code in 0..table.len() {
            buf.clear();
            buf.extend(decode_tuple(code, *arity, n).iter().map(|&e| inv[e]));
            out.push(perm[table[encode_tuple(&buf, n)]]);
        }
    }
    for (r, (_, arity)) in sig.relations().iter().enumerate() {
        let table = s.relation_table(r);
        for code in 0..table.len() {
            buf.clear();
            buf.extend(decode_tuple(code, *arity, n).iter().map(|&e| inv[e]));
            out.push(usize::from(table[encode_tuple(&buf, n)]));
        }
    }
}

/// Calls `visit(perm)` for every relabeling that sorts elements by colour.
fn for_each_sorted_relabeling(col: &[Vec<usize>], mut visit: impl FnMut(&[Elem])) {
    let n = col.len();
    let mut order: Vec<Elem> = (0..n).collect();
    order.sort_by(|&a, &b| col[a].cmp(&col[b]));
    // blocks of equal colour in sorted order
    let mut blocks: Vec<Vec<Elem>> = Vec::new();
    for &e in &order {
        match blocks.last_mut() {
            Some(b) if col[b[0]] == col[e] => b.push(e),
            _ => blocks.push(vec![e]),
        }
    }
    let mut perm = vec![0; n];
    fn rec(blocks: &mut [Vec<Elem>], offset: usize, perm: &mut Vec<Elem>, visit: &mut dyn FnMut(&[Elem])) {
        match blocks.split_first_mut() {
            None => visit(perm),
            Some((first, rest)) => {
                let len = first.len();
                permute(first, 0, &mut |p: &[Elem]| {
                    for (i, &e) in p.iter().enumerate() {
                        perm[e] = offset + i;
                    }
                    rec(rest, offset + len, perm, visit);
                });
            }
        }
    }
    rec(&mut blocks, 0, &mut perm, &mut visit);
}

/// Heap-free recursive permutation of `items[k..]`.
fn permute(items: &mut [Elem], k: usize, visit: &mut dyn FnMut(&[Elem])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Canonical code and the relabeling that attains it.
pub fn canonical_labeling(s: &FiniteStructure) -> (Vec<usize>, Vec<Elem>) {
    let col = colours(s);
    let n = s.size();
    let mut best: Option<(Vec<usize>, Vec<Elem>)> = None;
    let mut code = Vec::new();
    let mut inv = vec![0; n];
    for_each_sorted_relabeling(&col, |perm| {
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        encode_under(s, perm, &inv, &mut code);
        match &best {
            Some((b, _)) if *b <= code => {}
            _ => best = Some((code.clone(), perm.to_vec())),
        }
    });
    best.expect("at least one relabeling")
}

pub fn canonical_code(s: &FiniteStructure) -> Vec<usize> {
    canonical_labeling(s).0
}

/// Canonically relabeled copy with numbered element names.
pub fn canonical_form(s: &FiniteStructure) -> FiniteStructure {
    let (_, perm) = canonical_labeling(s);
    s.permuted(&perm).with_numbered_names()
}

pub fn are_isomorphic(a: &FiniteStructure, b: &FiniteStructure) -> bool {
    a.signature() == b.signature() && a.size() == b.size() && canonical_code(a) == canonical_code(b)
}
