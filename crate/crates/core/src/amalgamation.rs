//! `[α, β, γ, δ]`-amalgamation: solving single squares, checking bases and
//! running the theorem harness.
//!
//! A problem is a span `f: A -> B`, `g: A -> C` with required kinds α, β;
//! a solution is an apex `D` in the class with `g': B -> D` of kind γ and
//! `f': C -> D` of kind δ such that `g'∘f = f'∘g`. Strong solutions keep
//! wing elements apart unless both lie in the image of the base.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::partial::{Cell, PartialModel};
use crate::enumerate::enumerate_size;
use crate::error::{Error, Result};
use crate::finder::{complete_minimal, models_of_size, SearchLimits};
use crate::formula::eval_sentence;
use crate::morphism::{
    certify, hom_maps, is_embedding_map, is_hom_map, retraction, strong_immersion, HomConstraint, KindCertificate, Morphism, MorphismKind,
};
use crate::signature::Signature;
use crate::structure::{encode_tuple, Elem, FiniteStructure};
use crate::theory::{pc_models, Answer, Budget, Certificate, Theory, Verdict};

/// The bound at which strong immersions into `target` are certified: large
/// enough to cover every subset of either side.
pub fn kind_bound(source: &FiniteStructure, target: &FiniteStructure) -> usize {
    source.size().max(target.size())
}

fn certify_full(a: &FiniteStructure, b: &FiniteStructure, map: &[Elem], cap: u64) -> Result<KindCertificate> {
    certify(a, b, map, kind_bound(a, b), cap)
}

/// A certificate of at least kind `want`, checking no more than needed.
fn certify_for(a: &FiniteStructure, b: &FiniteStructure, map: &[Elem], want: MorphismKind, cap: u64) -> Result<Option<KindCertificate>> {
    if !is_hom_map(a, b, map) {
        return Ok(None);
    }
    if want == MorphismKind::Hom {
        return Ok(Some(KindCertificate::Hom));
    }
    if !is_embedding_map(a, b, map) {
        return Ok(None);
    }
    if want == MorphismKind::Embedding {
        return Ok(Some(KindCertificate::Embedding));
    }
    let Some(r) = retraction(a, b, map, cap)? else {
        return Ok(None);
    };
    if want == MorphismKind::Immersion {
        return Ok(Some(KindCertificate::Immersion { retraction: r }));
    }
    let bound = kind_bound(a, b);
    Ok(strong_immersion(a, b, map, bound, cap)?
        .holds
        .then_some(KindCertificate::StrongImmersion { retraction: r, bound }))
}

/// The four kinds `[α, β, γ, δ]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Kinds {
    /// `A -> B`.
    pub alpha: MorphismKind,
    /// `A -> C`.
    pub beta: MorphismKind,
    /// `C -> D`, the out-map parallel to `A -> B`.
    pub gamma: MorphismKind,
    /// `B -> D`, the out-map parallel to `A -> C`.
    pub delta: MorphismKind,
}

impl Kinds {
    pub fn new(alpha: MorphismKind, beta: MorphismKind, gamma: MorphismKind, delta: MorphismKind) -> Self {
        Kinds {
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    /// `[α, α, α, α]`.
    pub fn uniform(k: MorphismKind) -> Self {
        Kinds::new(k, k, k, k)
    }

    /// `[α, β, α, β]`.
    pub fn asymmetric(alpha: MorphismKind, beta: MorphismKind) -> Self {
        Kinds::new(alpha, beta, alpha, beta)
    }

    /// `[α, α, β, β]`.
    pub fn pregeneric(alpha: MorphismKind, beta: MorphismKind) -> Self {
        Kinds::new(alpha, alpha, beta, beta)
    }

    /// Required kind of `B -> D`.
    pub fn out_left(&self) -> MorphismKind {
        self.delta
    }

    /// Required kind of `C -> D`.
    pub fn out_right(&self) -> MorphismKind {
        self.gamma
    }

    pub fn as_array(&self) -> [MorphismKind; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }
}

impl fmt::Display for Kinds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.as_array().map(|k| k.letter());
        write!(f, "[{a},{b},{c},{d}]")
    }
}

impl FromStr for Kinds {
    type Err = Error;

    /// Accepts `[i,i,h,h]`, `i,i,h,h` or `iihh`; one letter means all four.
    fn from_str(s: &str) -> Result<Self> {
        let letters: Vec<char> = s
            .chars()
            .filter(|c| !matches!(c, '[' | ']' | ',' | ' '))
            .collect();
        let kinds: Option<Vec<MorphismKind>> = letters.iter().map(|&c| MorphismKind::from_letter(c)).collect();
        match kinds.as_deref() {
            Some([k]) => Ok(Kinds::uniform(*k)),
            Some([a, b, c, d]) => Ok(Kinds::new(*a, *b, *c, *d)),
            _ => Err(Error::Semantic(format!("invalid kind tuple `{s}`: expected four of h, e, i, s"))),
        }
    }
}

/// The class in which wings and apexes live.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum Class {
    /// All structures over the signature of the base.
    AllStructures,
    /// Models of a theory.
    Theory { theory: Theory },
}

impl Class {
    pub fn contains(&self, s: &FiniteStructure) -> Result<bool> {
        match self {
            Class::AllStructures => Ok(true),
            Class::Theory { theory } => theory.is_model(s),
        }
    }

    /// Members with exactly `size` elements, up to isomorphism.
    pub fn members_of_size(&self, sig: &Arc<Signature>, size: usize, cap: u64) -> Result<Vec<FiniteStructure>> {
        match self {
            Class::AllStructures => enumerate_size(sig, size, true, cap),
            Class::Theory { theory } => models_of_size(
                theory.signature(),
                theory.rules(),
                size,
                SearchLimits {
                    node_cap: cap,
                    max_models: None,
                },
            ),
        }
    }

    /// Members with at most `n` elements, up to isomorphism.
    pub fn members(&self, sig: &Arc<Signature>, n: usize, cap: u64) -> Result<Vec<FiniteStructure>> {
        let mut out = Vec::new();
        for size in 1..=n {
            out.extend(self.members_of_size(sig, size, cap)?);
        }
        Ok(out)
    }

    fn rules(&self) -> &[crate::engine::compiled::CRule] {
        match self {
            Class::AllStructures => &[],
            Class::Theory { theory } => theory.rules(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Class::AllStructures => "all structures".into(),
            Class::Theory { theory } => format!("models of {}", theory.name()),
        }
    }
}

/// A span to be completed into a commuting square.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmalgamationProblem {
    /// `f: A -> B`.
    pub left: Morphism,
    /// `g: A -> C`.
    pub right: Morphism,
    pub kinds: Kinds,
    pub class: Class,
    pub strong: bool,
    /// Requires colliding wing elements to come from one base element.
    #[serde(default)]
    pub strict: bool,
    pub budget: Budget,
}

impl AmalgamationProblem {
    /// Builds a problem after checking the spans' kinds and class membership.
    pub fn new(left: Morphism, right: Morphism, kinds: Kinds, class: Class, strong: bool, budget: Budget) -> Result<Self> {
        budget.validate()?;
        if left.source != right.source {
            return Err(Error::Precondition("the two maps must share their source".into()));
        }
        for s in [&left.source, &left.target, &right.target] {
            if s.signature() != left.source.signature() {
                return Err(Error::SignatureMismatch("structures of a problem must share a signature".into()));
            }
            if !class.contains(s)? {
                return Err(Error::Precondition("a structure of the problem is not in the class".into()));
            }
        }
        for (m, k, side) in [(&left, kinds.alpha, "left"), (&right, kinds.beta, "right")] {
            let got = certify_full(&m.source, &m.target, &m.map, budget.node_cap)
                .map_err(|_| Error::Precondition(format!("the {side} map is not a homomorphism")))?
                .kind();
            if got < k {
                return Err(Error::Precondition(format!("the {side} map is a {got}, not a {k}")));
            }
        }
        Ok(AmalgamationProblem {
            left,
            right,
            kinds,
            class,
            strong,
            strict: false,
            budget,
        })
    }

    pub fn with_strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn base(&self) -> &FiniteStructure {
        &self.left.source
    }

    pub fn left_wing(&self) -> &FiniteStructure {
        &self.left.target
    }

    pub fn right_wing(&self) -> &FiniteStructure {
        &self.right.target
    }

    /// Default apex bound `2(|B| + |C|)`.
    pub fn default_apex_bound(&self) -> usize {
        2 * (self.left_wing().size() + self.right_wing().size())
    }
}

/// How a solution was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Quotient,
    General,
    Enumeration,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Quotient => "quotient",
            Route::General => "general",
            Route::Enumeration => "enumeration",
        })
    }
}

/// A commuting square with certified out-maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmalgamationSolution {
    pub apex: FiniteStructure,
    /// `g': B -> D`.
    pub out_left: Vec<Elem>,
    /// `f': C -> D`.
    pub out_right: Vec<Elem>,
    pub out_left_kind: KindCertificate,
    pub out_right_kind: KindCertificate,
    /// Rows `(a, g'(f(a)), f'(g(a)))`.
    pub commutation: Vec<(Elem, Elem, Elem)>,
    /// Whether the strong condition holds (present for strong problems).
    pub disjoint: Option<bool>,
    pub route: Route,
}

impl AmalgamationSolution {
    /// Re-checks every claim of the solution against `p`.
    pub fn verify(&self, p: &AmalgamationProblem) -> Result<(), String> {
        let (b, c, d) = (p.left_wing(), p.right_wing(), &self.apex);
        if self.out_left.len() != b.size() || self.out_right.len() != c.size() {
            return Err("out-map lengths do not match the wings".into());
        }
        if self.out_left.iter().chain(&self.out_right).any(|&x| x >= d.size()) {
            return Err("out-map value outside the apex".into());
        }
        if d.size() > p.budget.big_n {
            return Err("apex exceeds the bound".into());
        }
        if !p.class.contains(d).map_err(|e| e.to_string())? {
            return Err("apex is not in the class".into());
        }
        for (src, map, want, side) in [
            (b, &self.out_left, p.kinds.out_left(), "left"),
            (c, &self.out_right, p.kinds.out_right(), "right"),
        ] {
            let got = certify_full(src, d, map, p.budget.node_cap).map_err(|e| format!("{side} out-map: {e}"))?;
            if got.kind() < want {
                return Err(format!("{side} out-map is a {}, not a {want}", got.kind()));
            }
        }
        for a in p.base().elements() {
            if self.out_left[p.left.map[a]] != self.out_right[p.right.map[a]] {
                return Err(format!("square does not commute at base element {a}"));
            }
        }
        if p.strong && !check_strong_condition(&p.left.map, &p.right.map, &self.out_left, &self.out_right, p.strict) {
            return Err("wing elements outside the base collide".into());
        }
        Ok(())
    }
}

/// The strong condition: `g'(b) = f'(c)` only when `b ∈ f(A)` and
/// `c ∈ g(A)`; `strict` further asks for one `a` with `b = f(a)` and
/// `c = g(a)`.
pub fn check_strong_condition(f: &[Elem], g: &[Elem], out_left: &[Elem], out_right: &[Elem], strict: bool) -> bool {
    for (b, &db) in out_left.iter().enumerate() {
        for (c, &dc) in out_right.iter().enumerate() {
            if db != dc {
                continue;
            }
            let ok = if strict {
                f.iter().zip(g).any(|(&fa, &ga)| fa == b && ga == c)
            } else {
                f.contains(&b) && g.contains(&c)
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Result of solving one problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    Solved { solution: AmalgamationSolution },
    Unsolved { verdict: Verdict },
}

impl Outcome {
    pub fn answer(&self) -> Answer {
        match self {
            Outcome::Solved { .. } => Answer::Yes,
            Outcome::Unsolved { verdict } => verdict.verdict,
        }
    }

    pub fn solution(&self) -> Option<&AmalgamationSolution> {
        match self {
            Outcome::Solved { solution } => Some(solution),
            Outcome::Unsolved { .. } => None,
        }
    }
}

fn build_solution(
    p: &AmalgamationProblem,
    apex: FiniteStructure,
    out_left: Vec<Elem>,
    out_right: Vec<Elem>,
    route: Route,
) -> Result<Option<AmalgamationSolution>> {
    let cap = p.budget.node_cap;
    if !p.class.contains(&apex)? {
        return Ok(None);
    }
    if p.strong && !check_strong_condition(&p.left.map, &p.right.map, &out_left, &out_right, p.strict) {
        return Ok(None);
    }
    let Some(lk) = certify_for(p.left_wing(), &apex, &out_left, p.kinds.out_left(), cap)? else {
        return Ok(None);
    };
    let Some(rk) = certify_for(p.right_wing(), &apex, &out_right, p.kinds.out_right(), cap)? else {
        return Ok(None);
    };
    let commutation: Vec<(Elem, Elem, Elem)> = p
        .base()
        .elements()
        .map(|a| (a, out_left[p.left.map[a]], out_right[p.right.map[a]]))
        .collect();
    if commutation.iter().any(|&(_, x, y)| x != y) {
        return Ok(None);
    }
    Ok(Some(AmalgamationSolution {
        apex,
        out_left,
        out_right,
        out_left_kind: lk,
        out_right_kind: rk,
        commutation,
        disjoint: p.strong.then_some(true),
        route,
    }))
}

/// Solves `p`: quotients of the glued sum first, then a complete search
/// over the class up to the apex bound.
pub fn solve(p: &AmalgamationProblem) -> Result<Outcome> {
    p.budget.validate()?;
    match solve_quotient(p) {
        Ok(Some(s)) => return Ok(Outcome::Solved { solution: s }),
        Ok(None) | Err(Error::BudgetExhausted(_)) => {}
        Err(e) => return Err(e),
    }
    unknown_on_cap(p, solve_general(p))
}

fn unknown_on_cap(p: &AmalgamationProblem, r: Result<Outcome>) -> Result<Outcome> {
    match r {
        Err(Error::BudgetExhausted(m)) => Ok(Outcome::Unsolved {
            verdict: Verdict::unknown(p.budget, m),
        }),
        other => other,
    }
}

/// The glued sum `B ⊔ C / f(a) ~ g(a)`: the glued class of every wing
/// element (B first, then C) and the number of classes.
fn glued_sum(p: &AmalgamationProblem) -> (Vec<usize>, usize) {
    let nb = p.left_wing().size();
    let nc = p.right_wing().size();
    let mut parent: Vec<usize> = (0..nb + nc).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for a in p.base().elements() {
        let x = find(&mut parent, p.left.map[a]);
        let y = find(&mut parent, nb + p.right.map[a]);
        parent[x.max(y)] = x.min(y);
    }
    let mut ids = BTreeMap::new();
    let glue: Vec<usize> = (0..nb + nc)
        .map(|x| {
            let r = find(&mut parent, x);
            let next = ids.len();
            *ids.entry(r).or_insert(next)
        })
        .collect();
    (glue, ids.len())
}

/// Per glued element: B members, C members, and whether it holds a B
/// element outside `f(A)` or a C element outside `g(A)`.
#[derive(Clone, Copy, Default)]
struct BlockInfo {
    bs: usize,
    cs: usize,
    b_out: bool,
    c_out: bool,
}

impl BlockInfo {
    fn add(self, o: BlockInfo) -> BlockInfo {
        BlockInfo {
            bs: self.bs + o.bs,
            cs: self.cs + o.cs,
            b_out: self.b_out || o.b_out,
            c_out: self.c_out || o.c_out,
        }
    }

    fn allowed(&self, p: &AmalgamationProblem) -> bool {
        if p.kinds.out_left() >= MorphismKind::Embedding && self.bs > 1 {
            return false;
        }
        if p.kinds.out_right() >= MorphismKind::Embedding && self.cs > 1 {
            return false;
        }
        !(p.strong && ((self.b_out && self.cs > 0) || (self.c_out && self.bs > 0)))
    }
}

/// Set partitions of `0..n` as restricted growth strings, keeping only
/// those whose blocks satisfy `ok`.
fn partitions(info: &[BlockInfo], max_blocks: usize, p: &AmalgamationProblem, cap: u64) -> Result<Vec<Vec<usize>>> {
    let n = info.len();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    let mut blocks: Vec<BlockInfo> = Vec::new();
    let mut nodes = 0u64;
    fn rec(
        i: usize,
        info: &[BlockInfo],
        max_blocks: usize,
        p: &AmalgamationProblem,
        rgs: &mut Vec<usize>,
        blocks: &mut Vec<BlockInfo>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
        cap: u64,
    ) -> bool {
        *nodes += 1;
        if *nodes > cap {
            return false;
        }
        if i == info.len() {
            out.push(rgs.clone());
            return true;
        }
        for b in 0..=blocks.len() {
            if b == blocks.len() {
                if b == max_blocks || !info[i].allowed(p) {
                    continue;
                }
                blocks.push(info[i]);
            } else {
                let merged = blocks[b].add(info[i]);
                if !merged.allowed(p) {
                    continue;
                }
                let old = std::mem::replace(&mut blocks[b], merged);
                rgs[i] = b;
                let ok = rec(i + 1, info, max_blocks, p, rgs, blocks, out, nodes, cap);
                blocks[b] = old;
                if !ok {
                    return false;
                }
                continue;
            }
            rgs[i] = b;
            let ok = rec(i + 1, info, max_blocks, p, rgs, blocks, out, nodes, cap);
            blocks.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    if !rec(0, info, max_blocks, p, &mut rgs, &mut blocks, &mut out, &mut nodes, cap) {
        return Err(Error::BudgetExhausted(format!("more than {cap} partitions of the glued sum")));
    }
    // finest first
    out.sort_by_key(|r| std::cmp::Reverse(r.iter().max().map_or(0, |m| m + 1)));
    Ok(out)
}

/// The minimal partial apex on the classes of `cls`, or `None` when two
/// function or constant values clash.
fn quotient_seed(p: &AmalgamationProblem, cls: &[usize], m: usize) -> Option<PartialModel> {
    let (b, c) = (p.left_wing(), p.right_wing());
    let nb = b.size();
    let sig = b.signature().clone();
    let mut pm = PartialModel::new(sig.clone(), m);
    for (s, off) in [(b, 0), (c, nb)] {
        let img = |e: Elem| cls[off + e];
        for (r, _) in sig.relations().iter().enumerate() {
            for t in s.relation_tuples(r) {
                let code = encode_tuple(&t.iter().map(|&e| img(e)).collect::<Vec<_>>(), m);
                pm.set(Cell::Rel(r, code), 1).ok()?;
            }
        }
        for (f, (_, arity)) in sig.functions().iter().enumerate() {
            for code in 0..crate::structure::table_len(s.size(), *arity) {
                let args = crate::structure::decode_tuple(code, *arity, s.size());
                let val = img(s.apply(f, &args));
                let ic = encode_tuple(&args.iter().map(|&e| img(e)).collect::<Vec<_>>(), m);
                pm.set(Cell::Fun(f, ic), val).ok()?;
            }
        }
        for k in 0..sig.constants().len() {
            pm.set(Cell::Const(k), img(s.constant(k))).ok()?;
        }
    }
    Some(pm)
}

fn solve_quotient(p: &AmalgamationProblem) -> Result<Option<AmalgamationSolution>> {
    let cap = p.budget.node_cap;
    let nb = p.left_wing().size();
    let (glue, ng) = glued_sum(p);
    let mut info = vec![BlockInfo::default(); ng];
    let in_f: Vec<bool> = (0..nb).map(|b| p.left.map.contains(&b)).collect();
    let in_g: Vec<bool> = p.right_wing().elements().map(|c| p.right.map.contains(&c)).collect();
    for (x, &gx) in glue.iter().enumerate() {
        let i = &mut info[gx];
        if x < nb {
            i.bs += 1;
            i.b_out |= !in_f[x];
        } else {
            i.cs += 1;
            i.c_out |= !in_g[x - nb];
        }
    }
    for rgs in partitions(&info, p.budget.big_n, p, cap)? {
        let m = rgs.iter().max().map_or(0, |x| x + 1);
        let cls: Vec<usize> = glue.iter().map(|&g| rgs[g]).collect();
        let Some(seed) = quotient_seed(p, &cls, m) else {
            continue;
        };
        for extra in 0..=p.budget.big_n - m {
            let start = if extra == 0 { seed.clone() } else { seed.enlarged(extra) };
            if let Some(d) = complete_minimal(start, m, p.class.rules(), cap)? {
                let (ol, or) = (cls[..nb].to_vec(), cls[nb..].to_vec());
                if let Some(s) = build_solution(p, d, ol, or, Route::Quotient)? {
                    return Ok(Some(s));
                }
                break;
            }
        }
    }
    Ok(None)
}

fn charge(used: &mut u64, n: u64, cap: u64) -> Result<()> {
    *used += n;
    if *used > cap {
        return Err(Error::BudgetExhausted(format!("apex search exceeded {cap} nodes")));
    }
    Ok(())
}

/// Complete search: every class member up to the bound as apex, with
/// constrained homomorphism search for the two out-maps.
fn solve_general(p: &AmalgamationProblem) -> Result<Outcome> {
    let cap = p.budget.node_cap;
    let (b, c) = (p.left_wing(), p.right_wing());
    let sig = b.signature().clone();
    let in_f: Vec<bool> = b.elements().map(|x| p.left.map.contains(&x)).collect();
    let mut used = 0u64;
    let mut apexes = 0usize;
    for size in 1..=p.budget.big_n {
        for d in p.class.members_of_size(&sig, size, cap)? {
            apexes += 1;
            charge(&mut used, 1, cap)?;
            let lefts = hom_maps(b, &d, &HomConstraint::default(), p.kinds.out_left() >= MorphismKind::Embedding, cap)?;
            for gl in lefts {
                charge(&mut used, 1, cap)?;
                if certify_for(b, &d, &gl, p.kinds.out_left(), cap)?.is_none() {
                    continue;
                }
                let Some(con) = right_constraint(p, &gl, &in_f, d.size()) else {
                    continue;
                };
                let rights = hom_maps(c, &d, &con, p.kinds.out_right() >= MorphismKind::Embedding, cap)?;
                charge(&mut used, rights.len() as u64, cap)?;
                for fr in rights {
                    if let Some(s) = build_solution(p, d.clone(), gl.clone(), fr, Route::General)? {
                        return Ok(Outcome::Solved { solution: s });
                    }
                }
            }
        }
    }
    Ok(Outcome::Unsolved {
        verdict: Verdict::no(p.budget, Certificate::Exhaustive { instances: apexes })
            .with_note(format!("no apex with at most {} elements", p.budget.big_n)),
    })
}

/// Constraints on `f'` forced by commutation and disjointness, or `None`
/// when commutation is impossible.
fn right_constraint(p: &AmalgamationProblem, gl: &[Elem], in_f: &[bool], dn: usize) -> Option<HomConstraint> {
    let mut con = HomConstraint::default();
    for a in p.base().elements() {
        let (c, v) = (p.right.map[a], gl[p.left.map[a]]);
        match con.required.iter().find(|(x, _)| *x == c) {
            Some(&(_, w)) if w != v => return None,
            Some(_) => {}
            None => con.required.push((c, v)),
        }
    }
    if p.strong {
        for c in p.right_wing().elements() {
            let c_in = p.right.map.contains(&c);
            for (b, &v) in gl.iter().enumerate() {
                if (!c_in || !in_f[b]) && v < dn && !con.forbidden.contains(&(c, v)) {
                    con.forbidden.push((c, v));
                }
            }
        }
    }
    Some(con)
}

/// Reference solver by brute force: every class member up to the bound
/// and every pair of maps, with no search pruning.
pub fn solve_by_enumeration(p: &AmalgamationProblem) -> Result<Outcome> {
    p.budget.validate()?;
    let cap = p.budget.node_cap;
    let (b, c) = (p.left_wing(), p.right_wing());
    let sig = b.signature().clone();
    let sentences: Vec<crate::formula::Formula> = match &p.class {
        Class::AllStructures => Vec::new(),
        Class::Theory { theory } => theory.sentences().iter().map(|s| s.encoding().to_formula()).collect(),
    };
    let mut used = 0u64;
    let r = (|| {
        for size in 1..=p.budget.big_n {
            for d in enumerate_size(&sig, size, true, cap)? {
                let mut member = true;
                for f in &sentences {
                    if !eval_sentence(&d, f)? {
                        member = false;
                        break;
                    }
                }
                if !member {
                    continue;
                }
                for gl in all_maps(b.size(), size) {
                    charge(&mut used, 1, cap)?;
                    if !is_hom_map(b, &d, &gl) {
                        continue;
                    }
                    for fr in all_maps(c.size(), size) {
                        charge(&mut used, 1, cap)?;
                        if !is_hom_map(c, &d, &fr) {
                            continue;
                        }
                        if let Some(s) = build_solution(p, d.clone(), gl.clone(), fr, Route::Enumeration)? {
                            return Ok(Outcome::Solved { solution: s });
                        }
                    }
                }
            }
        }
        Ok(Outcome::Unsolved {
            verdict: Verdict::no(p.budget, Certificate::None).with_note("exhaustive enumeration found no apex"),
        })
    })();
    unknown_on_cap(p, r)
}

/// Every map from `0..n` to `0..m`, in lexicographic order.
fn all_maps(n: usize, m: usize) -> impl Iterator<Item = Vec<Elem>> {
    let total = m.checked_pow(n as u32).unwrap_or(usize::MAX);
    (0..total).map(move |code| crate::structure::decode_tuple(code, n, m))
}

/// One span examined by [`check_basis`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisInstance {
    pub left_wing: usize,
    pub left_map: Vec<Elem>,
    pub right_wing: usize,
    pub right_map: Vec<Elem>,
    pub verdict: Answer,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apex: Option<FiniteStructure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    pub base: FiniteStructure,
    pub kinds: Kinds,
    pub class: String,
    pub strong: bool,
    pub budget: Budget,
    pub wings: Vec<FiniteStructure>,
    pub instances: Vec<BasisInstance>,
    pub verdict: Answer,
}

/// Solves every span from `a` into wings of the class with at most `b.n`
/// elements, by maps of kinds α and β.
pub fn check_basis(a: &FiniteStructure, kinds: Kinds, class: &Class, strong: bool, b: &Budget) -> Result<BasisReport> {
    b.validate()?;
    if !class.contains(a)? {
        return Err(Error::Precondition("the base is not in the class".into()));
    }
    let cap = b.node_cap;
    let wings = class.members(a.signature(), b.n, cap)?;
    let maps = |k: MorphismKind| -> Result<Vec<(usize, Vec<Elem>)>> {
        let mut out = Vec::new();
        for (i, w) in wings.iter().enumerate() {
            for m in hom_maps(a, w, &HomConstraint::default(), k >= MorphismKind::Embedding, cap)? {
                if certify_for(a, w, &m, k, cap)?.is_some() {
                    out.push((i, m));
                }
            }
        }
        Ok(out)
    };
    let lefts = maps(kinds.alpha)?;
    let rights = if kinds.beta == kinds.alpha { lefts.clone() } else { maps(kinds.beta)? };
    let mut spans = Vec::new();
    for l in &lefts {
        for r in &rights {
            spans.push((l.clone(), r.clone()));
        }
    }
    let instances: Vec<BasisInstance> = spans
        .par_iter()
        .map(|((li, lm), (ri, rm))| {
            let p = AmalgamationProblem {
                left: Morphism::new(a.clone(), wings[*li].clone(), lm.clone())?,
                right: Morphism::new(a.clone(), wings[*ri].clone(), rm.clone())?,
                kinds,
                class: class.clone(),
                strong,
                strict: false,
                budget: *b,
            };
            let out = solve(&p)?;
            Ok(BasisInstance {
                left_wing: *li,
                left_map: lm.clone(),
                right_wing: *ri,
                right_map: rm.clone(),
                verdict: out.answer(),
                apex: out.solution().map(|s| s.apex.clone()),
            })
        })
        .collect::<Result<_>>()?;
    let verdict = instances.iter().fold(Answer::Yes, |acc, i| acc.merge(i.verdict));
    Ok(BasisReport {
        base: a.clone(),
        kinds,
        class: class.name(),
        strong,
        budget: *b,
        wings,
        instances,
        verdict,
    })
}

/// Statements exercised by the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Every structure is an `[s,i,s,i]`-strong basis of all structures.
    SiSiStrong,
    /// Every model is an `[i,i,h,h]`-strong basis of its theory.
    IiHhStrong,
    /// Every model is an `[i,h,i,h]`-strong basis of its theory.
    IhIhStrong,
    /// Every pc model is an `[h]`-strong basis of its theory.
    HStrongPc,
    /// A model immersed in an `[h]`-strong basis is one.
    Inheritance,
    /// Items of the list of known amalgamation facts, numbered from 1.
    Example(u8),
}

impl TheoremId {
    pub fn all() -> Vec<TheoremId> {
        let mut v = vec![
            TheoremId::SiSiStrong,
            TheoremId::IiHhStrong,
            TheoremId::IhIhStrong,
            TheoremId::HStrongPc,
            TheoremId::Inheritance,
        ];
        v.extend((1..=7).map(TheoremId::Example));
        v
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremId::SiSiStrong => f.write_str("si-si-strong"),
            TheoremId::IiHhStrong => f.write_str("ii-hh-strong"),
            TheoremId::IhIhStrong => f.write_str("ih-ih-strong"),
            TheoremId::HStrongPc => f.write_str("h-strong-pc"),
            TheoremId::Inheritance => f.write_str("inheritance"),
            TheoremId::Example(i) => write!(f, "example-{i}"),
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::all()
            .into_iter()
            .find(|t| t.to_string() == s)
            .ok_or_else(|| Error::Semantic(format!("unknown theorem `{s}`")))
    }
}

/// Which bases the generator draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BaseFilter {
    Any,
    Pc,
    ImmersedInPc,
}

struct Setup {
    kinds: Kinds,
    strong: bool,
    theory_class: bool,
    bases: BaseFilter,
}

fn setup(id: TheoremId) -> Result<Setup> {
    use MorphismKind::*;
    let s = |kinds, strong, theory_class, bases| Setup {
        kinds,
        strong,
        theory_class,
        bases,
    };
    Ok(match id {
        TheoremId::SiSiStrong => s(Kinds::new(StrongImmersion, Immersion, StrongImmersion, Immersion), true, false, BaseFilter::Any),
        TheoremId::IiHhStrong => s(Kinds::pregeneric(Immersion, Hom), true, true, BaseFilter::Any),
        TheoremId::IhIhStrong => s(Kinds::asymmetric(Immersion, Hom), true, true, BaseFilter::Any),
        TheoremId::HStrongPc => s(Kinds::uniform(Hom), true, true, BaseFilter::Pc),
        TheoremId::Inheritance => s(Kinds::uniform(Hom), true, true, BaseFilter::ImmersedInPc),
        TheoremId::Example(1) => s(Kinds::new(Immersion, Hom, StrongImmersion, Hom), false, false, BaseFilter::Any),
        TheoremId::Example(2) => s(Kinds::asymmetric(StrongImmersion, Immersion), false, false, BaseFilter::Any),
        TheoremId::Example(3) => s(Kinds::asymmetric(Embedding, StrongImmersion), false, false, BaseFilter::Any),
        TheoremId::Example(4) => s(Kinds::asymmetric(Immersion, Hom), false, false, BaseFilter::Any),
        TheoremId::Example(5) => s(Kinds::uniform(Hom), false, true, BaseFilter::Pc),
        TheoremId::Example(6) => {
            return Err(Error::Precondition(
                "the local-rings example needs ring theory, which is outside the finite workbench".into(),
            ))
        }
        TheoremId::Example(7) => s(Kinds::uniform(StrongImmersion), false, false, BaseFilter::Any),
        TheoremId::Example(i) => return Err(Error::Semantic(format!("no example {i}"))),
    })
}

/// Harness parameters.
#[derive(Debug, Clone)]
pub struct HarnessConfig {
    pub theorem: TheoremId,
    pub seed: u64,
    pub instances: usize,
    /// Largest base and wing size.
    pub max_size: usize,
    /// Signature of the all-structures class.
    pub signature: Arc<Signature>,
    /// Theory of the model classes.
    pub theory: Theory,
    /// Fixed apex bound; `None` uses `2(|B| + |C|)` per instance.
    pub apex_bound: Option<usize>,
    pub budget: Budget,
    pub strict: bool,
}

impl HarnessConfig {
    pub fn new(theorem: TheoremId, seed: u64, instances: usize) -> Self {
        HarnessConfig {
            theorem,
            seed,
            instances,
            max_size: 3,
            signature: crate::zoo::poset_signature(),
            theory: crate::zoo::t_pos(),
            apex_bound: None,
            budget: Budget::default(),
            strict: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceOutcome {
    Witnessed,
    /// No apex found within the bound; never read as a refutation.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnessRow {
    pub index: usize,
    pub problem: AmalgamationProblem,
    pub outcome: InstanceOutcome,
    /// The search below the bound completed without an apex.
    pub exhaustive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<AmalgamationSolution>,
    /// Whether the witness passed re-verification.
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub theorem: TheoremId,
    pub seed: u64,
    pub kinds: Kinds,
    pub strong: bool,
    pub class: String,
    pub rows: Vec<HarnessRow>,
    pub witnessed: usize,
    pub total: usize,
}

impl HarnessReport {
    pub fn rate(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.witnessed as f64 / self.total as f64
        }
    }

    /// Every witness re-verified.
    pub fn all_verified(&self) -> bool {
        self.rows.iter().all(|r| r.outcome != InstanceOutcome::Witnessed || r.verified)
    }

    /// Answer for exit codes: yes when every instance is witnessed.
    pub fn answer(&self) -> Answer {
        if self.witnessed == self.total && self.all_verified() {
            Answer::Yes
        } else {
            Answer::Unknown
        }
    }
}

/// Draws instances of the theorem's hypotheses and tries to witness each
/// conclusion within the apex bound.
pub fn verify_theorem(cfg: &HarnessConfig) -> Result<HarnessReport> {
    cfg.budget.validate()?;
    let st = setup(cfg.theorem)?;
    let class = if st.theory_class {
        Class::Theory {
            theory: cfg.theory.clone(),
        }
    } else {
        Class::AllStructures
    };
    let sig = if st.theory_class {
        cfg.theory.signature().clone()
    } else {
        cfg.signature.clone()
    };
    let cap = cfg.budget.node_cap;
    let members = class.members(&sig, cfg.max_size, cap)?;
    let bases: Vec<usize> = match st.bases {
        BaseFilter::Any => (0..members.len()).collect(),
        BaseFilter::Pc | BaseFilter::ImmersedInPc => {
            let b = Budget {
                n: cfg.max_size,
                ..cfg.budget
            };
            let pcs = pc_models(&cfg.theory, &b)?;
            let pc_codes: Vec<Vec<usize>> = pcs.iter().map(crate::canon::canonical_code).collect();
            let mut out = Vec::new();
            for (i, m) in members.iter().enumerate() {
                let keep = if st.bases == BaseFilter::Pc {
                    pc_codes.contains(&crate::canon::canonical_code(m))
                } else {
                    let mut any = false;
                    for pc in &pcs {
                        for map in hom_maps(m, pc, &HomConstraint::default(), true, cap)? {
                            if certify_for(m, pc, &map, MorphismKind::Immersion, cap)?.is_some() {
                                any = true;
                                break;
                            }
                        }
                    }
                    any
                };
                if keep {
                    out.push(i);
                }
            }
            out
        }
    };
    if bases.is_empty() {
        return Err(Error::Precondition("no structure satisfies the theorem's hypotheses".into()));
    }

    // Spans of each kind from each base, computed on demand.
    let mut spans: BTreeMap<(usize, MorphismKind), Vec<(usize, Vec<Elem>)>> = BTreeMap::new();
    let mut spans_of = |base: usize, k: MorphismKind| -> Result<Vec<(usize, Vec<Elem>)>> {
        if let Some(v) = spans.get(&(base, k)) {
            return Ok(v.clone());
        }
        let a = &members[base];
        let mut out = Vec::new();
        for (i, w) in members.iter().enumerate() {
            for m in hom_maps(a, w, &HomConstraint::default(), k >= MorphismKind::Embedding, cap)? {
                if certify_for(a, w, &m, k, cap)?.is_some() {
                    out.push((i, m));
                }
            }
        }
        spans.insert((base, k), out.clone());
        Ok(out)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut problems = Vec::with_capacity(cfg.instances);
    for _ in 0..cfg.instances {
        let mut drawn = None;
        for _ in 0..1000 {
            let base = *bases.choose(&mut rng).expect("nonempty");
            let lefts = spans_of(base, st.kinds.alpha)?;
            let rights = spans_of(base, st.kinds.beta)?;
            if let (Some(l), Some(r)) = (lefts.choose(&mut rng), rights.choose(&mut rng)) {
                drawn = Some((base, l.clone(), r.clone()));
                break;
            }
        }
        let Some((base, (li, lm), (ri, rm))) = drawn else {
            return Err(Error::Precondition("the generator found no spans of the required kinds".into()));
        };
        let a = &members[base];
        let (bw, cw) = (&members[li], &members[ri]);
        let big_n = cfg.apex_bound.unwrap_or(2 * (bw.size() + cw.size()));
        problems.push(AmalgamationProblem {
            left: Morphism::new(a.clone(), bw.clone(), lm)?,
            right: Morphism::new(a.clone(), cw.clone(), rm)?,
            kinds: st.kinds,
            class: class.clone(),
            strong: st.strong,
            strict: cfg.strict,
            budget: Budget { big_n, ..cfg.budget },
        });
    }

    let rows: Vec<HarnessRow> = problems
        .into_par_iter()
        .enumerate()
        .map(|(index, problem)| {
            let (outcome, exhaustive, solution, verified, error) = match solve(&problem) {
                Ok(Outcome::Solved { solution }) => {
                    let check = solution.verify(&problem);
                    (InstanceOutcome::Witnessed, false, Some(solution), check.is_ok(), check.err())
                }
                Ok(Outcome::Unsolved { verdict }) => (InstanceOutcome::BudgetExhausted, verdict.is_no(), None, false, None),
                Err(e) => (InstanceOutcome::BudgetExhausted, false, None, false, Some(e.to_string())),
            };
            HarnessRow {
                index,
                problem,
                outcome,
                exhaustive,
                solution,
                verified,
                error,
            }
        })
        .collect();
    let witnessed = rows.iter().filter(|r| r.outcome == InstanceOutcome::Witnessed).count();
    Ok(HarnessReport {
        theorem: cfg.theorem,
        seed: cfg.seed,
        kinds: st.kinds,
        strong: st.strong,
        class: class.name(),
        total: rows.len(),
        rows,
        witnessed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use MorphismKind::*;

    fn problem(f: Morphism, g: Morphism, kinds: Kinds, class: Class, strong: bool, big_n: usize) -> AmalgamationProblem {
        AmalgamationProblem::new(f, g, kinds, class, strong, Budget::new(3, big_n, 3)).unwrap()
    }

    fn bottom() -> Morphism {
        Morphism::new(zoo::point(), zoo::chain2(), vec![0]).unwrap()
    }

    fn t_pos() -> Class {
        Class::Theory { theory: zoo::t_pos() }
    }

    #[test]
    fn kinds_parse_and_print() {
        let k: Kinds = "[i,i,h,h]".parse().unwrap();
        assert_eq!(k, Kinds::pregeneric(Immersion, Hom));
        assert_eq!(k.to_string(), "[i,i,h,h]");
        assert_eq!("s".parse::<Kinds>().unwrap(), Kinds::uniform(StrongImmersion));
        assert!("[i,x]".parse::<Kinds>().is_err());
    }

    #[test]
    fn glued_at_bottom() {
        let p = problem(bottom(), bottom(), Kinds::uniform(Embedding), t_pos(), true, 4);
        let s = solve(&p).unwrap().solution().cloned().expect("solved");
        assert_eq!(s.apex.size(), 3);
        assert!(zoo::t_pos().is_model(&s.apex).unwrap());
        assert_eq!(s.out_left[0], s.out_right[0]);
        assert_ne!(s.out_left[1], s.out_right[1]);
        assert!(check_strong_condition(&[0], &[0], &s.out_left, &s.out_right, true));
        s.verify(&p).unwrap();
    }

    #[test]
    fn identity_square() {
        let a = zoo::chain3();
        let id = Morphism::identity(&a);
        let p = problem(id.clone(), id, Kinds::uniform(StrongImmersion), Class::AllStructures, true, 3);
        let s = solve(&p).unwrap().solution().cloned().expect("solved");
        assert_eq!(s.apex, a);
        assert_eq!(s.out_left, vec![0, 1, 2]);
        assert!(check_strong_condition(&[0, 1, 2], &[0, 1, 2], &s.out_left, &s.out_right, false));
    }

    #[test]
    fn collapse_is_not_disjoint() {
        assert!(!check_strong_condition(&[0], &[0], &[0, 0], &[0, 0], false));
    }

    #[test]
    fn immersions_of_the_point_amalgamate_strongly() {
        let p = problem(bottom(), bottom(), Kinds::pregeneric(Immersion, Hom), t_pos(), true, 4);
        let out = solve(&p).unwrap();
        let s = out.solution().expect("solved");
        s.verify(&p).unwrap();
        assert_ne!(s.out_left[1], s.out_right[1]);
    }

    #[test]
    fn kind_preconditions_are_checked() {
        let e = AmalgamationProblem::new(bottom(), bottom(), Kinds::uniform(StrongImmersion), t_pos(), false, Budget::default());
        assert!(matches!(e, Err(Error::Precondition(_))));
    }

    #[test]
    fn exhaustive_no() {
        // Two strict chains glued at the bottom cannot meet in a one-point apex.
        let p = problem(bottom(), bottom(), Kinds::uniform(Embedding), t_pos(), false, 1);
        let out = solve(&p).unwrap();
        assert_eq!(out.answer(), Answer::No);
        assert_eq!(solve_by_enumeration(&p).unwrap().answer(), Answer::No);
    }

    #[test]
    fn agrees_with_enumeration_on_small_posets() {
        let members = Class::AllStructures.members(&zoo::digraph_signature(), 2, 1_000_000).unwrap();
        let mut checked = 0;
        for a in members.iter().filter(|m| m.size() == 1) {
            for bw in &members {
                for cw in &members {
                    for f in hom_maps(a, bw, &HomConstraint::default(), false, 1000).unwrap() {
                        for g in hom_maps(a, cw, &HomConstraint::default(), false, 1000).unwrap() {
                            for kinds in [Kinds::uniform(Hom), Kinds::pregeneric(Hom, Embedding)] {
                                let p = AmalgamationProblem::new(
                                    Morphism::new(a.clone(), bw.clone(), f.clone()).unwrap(),
                                    Morphism::new(a.clone(), cw.clone(), g.clone()).unwrap(),
                                    kinds,
                                    Class::AllStructures,
                                    true,
                                    Budget::new(2, 3, 2),
                                )
                                .unwrap();
                                assert_eq!(solve(&p).unwrap().answer(), solve_by_enumeration(&p).unwrap().answer());
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 50);
    }

    #[test]
    fn trivial_group_is_a_basis() {
        let groups = Class::Theory { theory: zoo::t_g() };
        let r = check_basis(&zoo::cyclic_group(1), Kinds::uniform(Hom), &groups, false, &Budget::new(4, 4, 2)).unwrap();
        assert_eq!(r.verdict, Answer::Yes);
        assert_eq!(r.instances.len(), 25);
    }

    #[test]
    fn strong_group_squares_need_room() {
        // Two copies of Z3 meeting only at the identity need nine elements.
        let groups = Class::Theory { theory: zoo::t_g() };
        let r = check_basis(&zoo::cyclic_group(1), Kinds::uniform(Hom), &groups, true, &Budget::new(3, 6, 2)).unwrap();
        assert_eq!(r.verdict, Answer::No);
        let failing: Vec<(usize, usize)> = r
            .instances
            .iter()
            .filter(|i| i.verdict != Answer::Yes)
            .map(|i| (r.wings[i.left_wing].size(), r.wings[i.right_wing].size()))
            .collect();
        assert_eq!(failing, vec![(3, 3)]);
    }

    #[test]
    fn strong_immersions_amalgamate_in_all_structures() {
        let r = check_basis(&zoo::point(), Kinds::uniform(StrongImmersion), &Class::AllStructures, false, &Budget::new(2, 4, 2)).unwrap();
        assert_eq!(r.verdict, Answer::Yes);
        assert!(!r.instances.is_empty());
    }

    #[test]
    fn harness_is_deterministic() {
        let cfg = HarnessConfig::new(TheoremId::IiHhStrong, 7, 6);
        let a = verify_theorem(&cfg).unwrap();
        let b = verify_theorem(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.witnessed, a.total);
        assert!(a.all_verified());
    }

    #[test]
    fn pc_point_absorbs_everything() {
        let mut cfg = HarnessConfig::new(TheoremId::Example(5), 1, 5);
        cfg.apex_bound = Some(1);
        let r = verify_theorem(&cfg).unwrap();
        assert_eq!(r.witnessed, 5);
        assert!(r.rows.iter().all(|row| row.solution.as_ref().unwrap().apex.size() == 1));
    }

    #[test]
    fn strong_kind_sits_opposite_the_strong_wing() {
        let f = Morphism::identity(&zoo::point());
        let g = Morphism::new(zoo::point(), zoo::antichain2(), vec![0]).unwrap();
        let p = problem(f, g, "[s,i,s,i]".parse().unwrap(), Class::AllStructures, true, 4);
        assert_eq!(p.kinds.out_right(), StrongImmersion);
        let s = solve(&p).unwrap().solution().cloned().expect("solved");
        s.verify(&p).unwrap();
        assert_eq!(s.apex.size(), 2);
    }

    #[test]
    fn outer_element_forced_onto_the_base_image() {
        let f = Morphism::new(zoo::chain2(), zoo::chain3(), vec![0, 2]).unwrap();
        let g = Morphism::new(zoo::chain2(), zoo::chain3(), vec![1, 1]).unwrap();
        let p = problem(f, g, Kinds::asymmetric(Immersion, Hom), t_pos(), true, 5);
        assert_eq!(solve(&p).unwrap().answer(), Answer::No);
        let weak = problem(p.left.clone(), p.right.clone(), p.kinds, t_pos(), false, 5);
        assert_eq!(solve(&weak).unwrap().answer(), Answer::Yes);
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in TheoremId::all() {
            assert_eq!(t.to_string().parse::<TheoremId>().unwrap(), t);
        }
        assert!(verify_theorem(&HarnessConfig::new(TheoremId::Example(6), 0, 1)).is_err());
    }
}
