//! One-edit neighborhoods of abstract regexes.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abstraction::{unpreprocess_node, AbstractRegex, Node, Quantifier, RewriteDictionary};
use crate::engine::Engine;
use crate::evaluation::ExampleSet;
use crate::regex::Regex;

pub const DEFAULT_CAP: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TransformationKind {
    BinaryElementInsertion,
    ElementDeletion,
    ElementReplacement,
    QuantifierInsertion,
    QuantifierModification,
    QuantifierAdjustment,
    OperatorInsertion,
    OperatorDeletion,
    ElementAdjustment,
    ElementExchanging,
}

impl TransformationKind {
    pub const ALL: [TransformationKind; 10] = [
        TransformationKind::BinaryElementInsertion,
        TransformationKind::ElementDeletion,
        TransformationKind::ElementReplacement,
        TransformationKind::QuantifierInsertion,
        TransformationKind::QuantifierModification,
        TransformationKind::QuantifierAdjustment,
        TransformationKind::OperatorInsertion,
        TransformationKind::OperatorDeletion,
        TransformationKind::ElementAdjustment,
        TransformationKind::ElementExchanging,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NeighborhoodError {
    #[error("abstract regex has no elements")]
    EmptyRegex,
}

pub type Path = Vec<usize>;

fn fmt_path(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|i| i.to_string()).collect();
    format!("/{}", parts.join("/"))
}

/// Where edits can happen.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sites {
    /// Token nodes.
    pub elements: Vec<Path>,
    /// Bracketed groups.
    pub generalized: Vec<Path>,
    /// `(sequence path, index)`; a sequence of `n` items has `n + 1` slots.
    pub slots: Vec<(Path, usize)>,
}

pub fn element_sites(a: &AbstractRegex) -> Result<Sites, NeighborhoodError> {
    let sites = collect_sites(&a.root);
    if sites.elements.is_empty() && sites.generalized.is_empty() {
        return Err(NeighborhoodError::EmptyRegex);
    }
    Ok(sites)
}

fn collect_sites(root: &Node) -> Sites {
    let mut sites = Sites::default();
    let mut path = Vec::new();
    visit(root, &mut path, &mut |p, n| match n {
        Node::Token(_) => sites.elements.push(p.to_vec()),
        Node::Group(_) => sites.generalized.push(p.to_vec()),
        Node::Seq(items) => sites.slots.extend((0..=items.len()).map(|i| (p.to_vec(), i))),
        _ => {}
    });
    sites
}

fn visit(node: &Node, path: &mut Path, f: &mut impl FnMut(&[usize], &Node)) {
    f(path, node);
    for (i, c) in node.children().iter().enumerate() {
        path.push(i);
        visit(c, path, f);
        path.pop();
    }
}

fn get<'a>(root: &'a Node, path: &[usize]) -> &'a Node {
    path.iter().fold(root, |n, &i| &n.children()[i])
}

fn get_mut<'a>(root: &'a mut Node, path: &[usize]) -> &'a mut Node {
    path.iter().fold(root, |n, &i| &mut n.children_mut()[i])
}

fn replace_at(root: &Node, path: &[usize], new: Node) -> Node {
    let mut r = root.clone();
    *get_mut(&mut r, path) = new;
    r
}

fn seq_items_mut<'a>(root: &'a mut Node, path: &[usize]) -> &'a mut Vec<Node> {
    match get_mut(root, path) {
        Node::Seq(items) => items,
        _ => unreachable!("path does not address a sequence"),
    }
}

/// Restores the structural invariants of a token tree after an edit:
/// alternation and intersection only at expression roots, sequences
/// spliced, unit positions holding units.
pub fn normalize(node: Node) -> Node {
    norm_expr(node)
}

fn norm_expr(node: Node) -> Node {
    match node {
        Node::Alt(ops) => {
            let mut out = Vec::new();
            for op in ops {
                match norm_expr(op) {
                    Node::Alt(inner) => out.extend(inner),
                    other => out.push(other),
                }
            }
            if out.len() == 1 {
                out.pop().unwrap()
            } else {
                Node::Alt(out)
            }
        }
        Node::And(ops) => {
            let mut out = Vec::new();
            for op in ops {
                match norm_expr(op) {
                    Node::And(inner) => out.extend(inner),
                    alt @ Node::Alt(_) => out.push(Node::Seq(vec![Node::Group(Box::new(alt))])),
                    other => out.push(other),
                }
            }
            if out.len() == 1 {
                out.pop().unwrap()
            } else {
                Node::And(out)
            }
        }
        Node::Seq(items) => Node::Seq(norm_items(items)),
        unit => Node::Seq(vec![norm_unit(unit)]),
    }
}

fn norm_items(items: Vec<Node>) -> Vec<Node> {
    let mut out = Vec::new();
    for item in items {
        match item {
            Node::Seq(inner) => out.extend(norm_items(inner)),
            e @ (Node::Alt(_) | Node::And(_)) => match norm_expr(e) {
                Node::Seq(inner) => out.extend(inner),
                other => out.push(Node::Group(Box::new(other))),
            },
            unit => out.push(norm_unit(unit)),
        }
    }
    out
}

fn norm_unit(node: Node) -> Node {
    match node {
        Node::Token(_) => node,
        Node::Group(inner) => Node::Group(Box::new(norm_expr(*inner))),
        Node::Quant(inner, q) => {
            let child = match as_unit(*inner) {
                quant @ Node::Quant(..) => Node::Group(Box::new(Node::Seq(vec![quant]))),
                other => other,
            };
            Node::Quant(Box::new(child), q)
        }
        Node::Not(inner) => Node::Not(Box::new(as_unit(*inner))),
        other => as_unit(other),
    }
}

fn as_unit(node: Node) -> Node {
    if node.is_unit() {
        return norm_unit(node);
    }
    match norm_expr(node) {
        Node::Seq(mut items) if items.len() == 1 => items.pop().unwrap(),
        other => Node::Group(Box::new(other)),
    }
}

/// Candidate repetition bounds for an element, from occurrence counts in
/// the positive examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuantifierBounds {
    pub min: u32,
    pub max: Option<u32>,
}

/// For each positive, the longest chain of back-to-back shortest non-empty
/// matches of `element`. Emits (lo, hi), (lo, inf), (hi, inf) and (lo, lo)
/// where lo and hi are the least and greatest chain lengths over P.
pub fn infer_quantifier_bounds(engine: &Engine, element: &Regex, ex: &ExampleSet) -> Vec<QuantifierBounds> {
    if ex.positive().is_empty() {
        return Vec::new();
    }
    let Ok(mut m) = engine.matcher(element) else {
        return Vec::new();
    };
    let mut lo = u32::MAX;
    let mut hi = 0;
    for w in ex.positive() {
        let chars: Vec<char> = w.chars().collect();
        let n = chars.len();
        // next[i]: end of the shortest non-empty match starting at i
        let mut next = vec![None; n];
        for (i, slot) in next.iter_mut().enumerate() {
            for j in i + 1..=n {
                let sub: String = chars[i..j].iter().collect();
                if m.matches(&sub).unwrap_or(false) {
                    *slot = Some(j);
                    break;
                }
            }
        }
        let mut chain = vec![0u32; n + 1];
        for i in (0..n).rev() {
            chain[i] = next[i].map_or(0, |j| 1 + chain[j]);
        }
        let best = chain.iter().copied().max().unwrap_or(0);
        lo = lo.min(best);
        hi = hi.max(best);
    }
    let mut out = Vec::new();
    for b in [
        QuantifierBounds { min: lo, max: Some(hi) },
        QuantifierBounds { min: lo, max: None },
        QuantifierBounds { min: hi, max: None },
        QuantifierBounds { min: lo, max: Some(lo) },
    ] {
        if !out.contains(&b) {
            out.push(b);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub node: Node,
    pub kind: TransformationKind,
    pub site: Path,
    pub detail: String,
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at {} {}: {}", self.kind, fmt_path(&self.site), self.detail, self.node)
    }
}

#[derive(Debug, Clone)]
pub struct Neighborhood {
    pub origin: AbstractRegex,
    pub members: Vec<Member>,
    /// The origin dictionary plus any quantifiers the edits introduced.
    pub dictionary: Arc<RewriteDictionary>,
    pub truncated: bool,
}

impl Neighborhood {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn concrete(&self, m: &Member) -> Regex {
        unpreprocess_node(&m.node, &self.dictionary).expect("neighbor tokens come from the dictionary")
    }
}

struct Ctx<'a> {
    root: &'a Node,
    dict: &'a RewriteDictionary,
    engine: &'a Engine,
    ex: &'a ExampleSet,
    candidates: Vec<Arc<str>>,
    seqs: Vec<(Path, usize)>,
    atoms: Vec<Path>,
    quants: Vec<Path>,
    nots: Vec<Path>,
    ops: Vec<Path>,
}

type Out = Vec<(Node, Path, String)>;

const SUGAR: [(u32, Option<u32>); 3] = [(0, Some(1)), (0, None), (1, None)];

impl Ctx<'_> {
    fn bounds_for(&self, node: &Node) -> Vec<Quantifier> {
        let mut out: Vec<Quantifier> = match unpreprocess_node(node, self.dict) {
            Ok(r) => infer_quantifier_bounds(self.engine, &r, self.ex)
                .into_iter()
                .map(|b| Quantifier::range(b.min, b.max))
                .collect(),
            Err(_) => Vec::new(),
        };
        for (min, max) in SUGAR {
            out.push(Quantifier::new(min, max));
        }
        out
    }

    fn insertion(&self) -> Out {
        let mut out = Out::new();
        for (p, len) in &self.seqs {
            for slot in 0..=*len {
                for c in &self.candidates {
                    let mut r = self.root.clone();
                    seq_items_mut(&mut r, p).insert(slot, Node::Token(c.clone()));
                    out.push((r, p.clone(), format!("slot {slot} concat <{c}>")));
                }
            }
        }
        for p in &self.atoms {
            let here = get(self.root, p);
            for c in &self.candidates {
                for (sym, mk) in [("|", Node::Alt as fn(Vec<Node>) -> Node), ("&", Node::And)] {
                    let pair = mk(vec![Node::Seq(vec![here.clone()]), Node::Seq(vec![Node::Token(c.clone())])]);
                    let r = replace_at(self.root, p, Node::Group(Box::new(pair)));
                    out.push((r, p.clone(), format!("{sym} <{c}>")));
                }
            }
        }
        for p in &self.ops {
            for c in &self.candidates {
                let mut r = self.root.clone();
                if let Node::Alt(v) | Node::And(v) = get_mut(&mut r, p) {
                    v.push(Node::Seq(vec![Node::Token(c.clone())]));
                }
                out.push((r, p.clone(), format!("operand <{c}>")));
            }
        }
        out
    }

    fn deletion(&self) -> Out {
        let mut out = Out::new();
        for (p, len) in &self.seqs {
            for i in 0..*len {
                let mut r = self.root.clone();
                seq_items_mut(&mut r, p).remove(i);
                out.push((r, p.clone(), format!("item {i}")));
            }
        }
        out
    }

    fn replacement(&self) -> Out {
        let mut out = Out::new();
        for p in &self.atoms {
            let here = get(self.root, p);
            for c in &self.candidates {
                if matches!(here, Node::Token(t) if t == c) {
                    continue;
                }
                let r = replace_at(self.root, p, Node::Token(c.clone()));
                out.push((r, p.clone(), format!("<{c}>")));
            }
        }
        out
    }

    /// Quantifiable positions: atoms and negations not already quantified.
    fn unquantified(&self) -> Vec<Path> {
        let mut v: Vec<Path> = self
            .atoms
            .iter()
            .chain(&self.nots)
            .filter(|p| {
                p.split_last()
                    .is_none_or(|(_, parent)| !matches!(get(self.root, parent), Node::Quant(..) | Node::Not(_)))
            })
            .cloned()
            .collect();
        v.sort();
        v
    }

    fn quantifier_insertion(&self) -> Out {
        let mut out = Out::new();
        for p in self.unquantified() {
            let here = get(self.root, &p);
            for q in self.bounds_for(here) {
                let r = replace_at(self.root, &p, Node::Quant(Box::new(here.clone()), q));
                out.push((r, p.clone(), q.to_string()));
            }
        }
        out
    }

    fn quantifier_modification(&self) -> Out {
        let mut out = Out::new();
        for p in &self.quants {
            let Node::Quant(inner, old) = get(self.root, p) else { unreachable!() };
            let mut qs = self.bounds_for(inner);
            qs.extend(self.dict.quantifiers());
            let mut seen = HashSet::new();
            for q in qs {
                if q == *old || !seen.insert(q) {
                    continue;
                }
                let r = replace_at(self.root, p, Node::Quant(inner.clone(), q));
                out.push((r, p.clone(), q.to_string()));
            }
        }
        out
    }

    /// Moves a quantifier onto a different span: into its group (onto one
    /// item or a sub-span), onto a sibling, or onto a span of siblings that
    /// includes the quantified unit.
    fn quantifier_adjustment(&self) -> Out {
        let mut out = Out::new();
        for p in &self.quants {
            let Some((&idx, seq_path)) = p.split_last() else { continue };
            let Node::Seq(siblings) = get(self.root, seq_path) else { continue };
            let Node::Quant(inner, q) = get(self.root, p) else { unreachable!() };

            let quantify = |items: &[Node]| -> Vec<(Node, &'static str)> {
                let mut v = vec![(Node::Quant(Box::new(Node::Group(Box::new(Node::Seq(items.to_vec())))), *q), "group")];
                if items.len() == 1 && !matches!(items[0], Node::Quant(..)) {
                    v.insert(0, (Node::Quant(Box::new(items[0].clone()), *q), "bare"));
                }
                v
            };

            // Into the group: dissolve it and quantify part of its content.
            if let Node::Group(g) = &**inner {
                if let Node::Seq(content) = &**g {
                    let n = content.len();
                    for j in 0..n {
                        for k in j + 1..=n {
                            if k - j == n {
                                continue;
                            }
                            for (quantified, how) in quantify(&content[j..k]) {
                                let mut items = siblings[..idx].to_vec();
                                items.extend_from_slice(&content[..j]);
                                items.push(quantified);
                                items.extend_from_slice(&content[k..]);
                                items.extend_from_slice(&siblings[idx + 1..]);
                                let r = replace_at(self.root, seq_path, Node::Seq(items));
                                out.push((r, p.clone(), format!("inner {j}..{k} {how}")));
                            }
                        }
                    }
                }
            }

            // Onto siblings, alone or spanning the current unit.
            let plain = (**inner).clone();
            for j in 0..siblings.len() {
                for k in j + 1..=siblings.len() {
                    let covers = j <= idx && idx < k;
                    if (k - j == 1 && j == idx) || (!covers && k - j > 1) {
                        continue;
                    }
                    let mut span: Vec<Node> = siblings[j..k].to_vec();
                    if covers {
                        span[idx - j] = plain.clone();
                    }
                    for (quantified, how) in quantify(&span) {
                        let mut items = siblings.clone();
                        if !covers {
                            items[idx] = plain.clone();
                        }
                        items.splice(j..k, [quantified]);
                        let r = replace_at(self.root, seq_path, Node::Seq(items));
                        out.push((r, p.clone(), format!("span {j}..{k} {how}")));
                    }
                }
            }
        }
        out
    }

    fn operator_insertion(&self) -> Out {
        let mut out = Out::new();
        for (p, len) in &self.seqs {
            let Node::Seq(items) = get(self.root, p) else { unreachable!() };
            for i in 0..*len {
                let item = &items[i];
                let negated = if matches!(item, Node::Quant(..)) {
                    Node::Not(Box::new(Node::Group(Box::new(Node::Seq(vec![item.clone()])))))
                } else {
                    Node::Not(Box::new(item.clone()))
                };
                let mut r = self.root.clone();
                seq_items_mut(&mut r, p)[i] = negated;
                out.push((r, p.clone(), format!("~ item {i}")));
            }
            if *len >= 2 {
                let whole = Node::Not(Box::new(Node::Group(Box::new(Node::Seq(items.clone())))));
                out.push((replace_at(self.root, p, Node::Seq(vec![whole])), p.clone(), "~ all".into()));
            }
            for i in 1..*len {
                for (sym, mk) in [("|", Node::Alt as fn(Vec<Node>) -> Node), ("&", Node::And)] {
                    let split = mk(vec![Node::Seq(items[..i].to_vec()), Node::Seq(items[i..].to_vec())]);
                    let r = replace_at(self.root, p, split);
                    out.push((r, p.clone(), format!("{sym} at {i}")));
                }
            }
        }
        out
    }

    fn operator_deletion(&self) -> Out {
        let mut out = Out::new();
        for p in self.nots.iter().chain(&self.quants) {
            let inner = get(self.root, p).children()[0].clone();
            out.push((replace_at(self.root, p, inner), p.clone(), "unwrap".into()));
        }
        for p in &self.ops {
            let (Node::Alt(v) | Node::And(v)) = get(self.root, p) else { unreachable!() };
            for i in 0..v.len() {
                let mut rest = v.clone();
                rest.remove(i);
                let node = if matches!(get(self.root, p), Node::Alt(_)) {
                    Node::Alt(rest)
                } else {
                    Node::And(rest)
                };
                out.push((replace_at(self.root, p, node), p.clone(), format!("drop operand {i}")));
            }
        }
        out
    }

    fn adjustment(&self) -> Out {
        let mut out = Out::new();
        for (p, len) in &self.seqs {
            let Node::Seq(items) = get(self.root, p) else { unreachable!() };
            for i in 0..*len {
                let moved = items[i].clone();
                let mut without = self.root.clone();
                seq_items_mut(&mut without, p).remove(i);
                for (q, _) in &self.seqs {
                    // Slots of the target sequence after removal; skip
                    // sequences nested inside the moved item.
                    if q.len() > p.len() && q.starts_with(p) && q[p.len()] == i {
                        continue;
                    }
                    let mut q2 = q.clone();
                    if q.len() > p.len() && q.starts_with(p) && q[p.len()] > i {
                        q2[p.len()] -= 1;
                    }
                    let n = match get(&without, &q2) {
                        Node::Seq(v) => v.len(),
                        _ => continue,
                    };
                    for slot in 0..=n {
                        if q == p && slot == i {
                            continue;
                        }
                        let mut r = without.clone();
                        seq_items_mut(&mut r, &q2).insert(slot, moved.clone());
                        out.push((r, p.clone(), format!("item {i} to {} slot {slot}", fmt_path(q))));
                    }
                }
            }
        }
        out
    }

    fn exchanging(&self) -> Out {
        let mut out = Out::new();
        for (a_i, a) in self.atoms.iter().enumerate() {
            for b in &self.atoms[a_i + 1..] {
                if b.starts_with(a) || a.starts_with(b) {
                    continue;
                }
                let (na, nb) = (get(self.root, a), get(self.root, b));
                if na == nb {
                    continue;
                }
                let r = replace_at(&replace_at(self.root, a, nb.clone()), b, na.clone());
                out.push((r, a.clone(), format!("with {}", fmt_path(b))));
            }
        }
        out
    }

    fn run(&self, kind: TransformationKind) -> Out {
        use TransformationKind::*;
        match kind {
            BinaryElementInsertion => self.insertion(),
            ElementDeletion => self.deletion(),
            ElementReplacement => self.replacement(),
            QuantifierInsertion => self.quantifier_insertion(),
            QuantifierModification => self.quantifier_modification(),
            QuantifierAdjustment => self.quantifier_adjustment(),
            OperatorInsertion => self.operator_insertion(),
            OperatorDeletion => self.operator_deletion(),
            ElementAdjustment => self.adjustment(),
            ElementExchanging => self.exchanging(),
        }
    }
}

/// All single-edit variants of `a`, deduplicated and capped at `cap`.
pub fn neighbors(
    a: &AbstractRegex,
    ex: &ExampleSet,
    kinds: &[TransformationKind],
    engine: &Engine,
    cap: usize,
) -> Neighborhood {
    let mut seqs = Vec::new();
    let mut atoms = Vec::new();
    let mut quants = Vec::new();
    let mut nots = Vec::new();
    let mut ops = Vec::new();
    let mut path = Vec::new();
    visit(&a.root, &mut path, &mut |p, n| match n {
        Node::Seq(v) => seqs.push((p.to_vec(), v.len())),
        Node::Token(_) | Node::Group(_) => atoms.push(p.to_vec()),
        Node::Quant(..) => quants.push(p.to_vec()),
        Node::Not(_) => nots.push(p.to_vec()),
        Node::Alt(_) | Node::And(_) => ops.push(p.to_vec()),
    });
    let ctx = Ctx {
        root: &a.root,
        dict: &a.dict,
        engine,
        ex,
        candidates: a.dict.elements(),
        seqs,
        atoms,
        quants,
        nots,
        ops,
    };
    let kinds: BTreeSet<TransformationKind> = kinds.iter().copied().collect();
    let kinds: Vec<TransformationKind> = kinds.into_iter().collect();
    let per_kind: Vec<(TransformationKind, Out)> = kinds.par_iter().map(|&k| (k, ctx.run(k))).collect();

    let mut all: Vec<Member> = Vec::new();
    for (kind, out) in per_kind {
        for (node, site, detail) in out {
            all.push(Member {
                node: normalize(node),
                kind,
                site,
                detail,
            });
        }
    }
    all.sort_by(|x, y| (x.kind, &x.site).cmp(&(y.kind, &y.site)));
    let mut seen: HashSet<Node> = HashSet::new();
    seen.insert(a.root.clone());
    all.retain(|m| seen.insert(m.node.clone()));
    let truncated = all.len() > cap;
    all.truncate(cap);

    let mut dict = (*a.dict).clone();
    let mut quants_seen: HashMap<Quantifier, ()> = HashMap::new();
    for m in &all {
        let mut p = Vec::new();
        visit(&m.node, &mut p, &mut |_, n| {
            if let Node::Quant(_, q) = n {
                if quants_seen.insert(*q, ()).is_none() {
                    dict.add_quantifier(*q);
                }
            }
        });
    }
    Neighborhood {
        origin: a.clone(),
        members: all,
        dictionary: Arc::new(dict),
        truncated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abstraction::preprocess;
    use crate::alphabet::Alphabet;
    use crate::regex::parse;

    fn vowel() -> ExampleSet {
        ExampleSet::from_strs(
            &[
                "E18043699", "U530136382", "U65972791327", "U82433805", "i3390716928",
                "O789821610", "U4765749255", "E6204251", "e6868266", "O50693106874",
            ],
            &["u.", "jz;B", "o45", "FBcW", "I4k,S", "U", "I$#].", "A", "uV", "o20m3u5817"],
        )
        .unwrap()
    }

    fn pre(s: &str, l: u8) -> AbstractRegex {
        let a = Alphabet::default();
        preprocess(&parse(s, &a).unwrap(), l, &a)
    }

    #[test]
    fn sites_of_worked_example() {
        let s = element_sites(&pre("([AEIOUaeiou].*[0-9].*){7,}", 0)).unwrap();
        assert_eq!(s.elements.len(), 4);
        assert_eq!(s.generalized.len(), 1);
        assert_eq!(s.slots.len(), 7);
        let one = element_sites(&pre("[0-9]", 0)).unwrap();
        assert_eq!((one.elements.len(), one.generalized.len(), one.slots.len()), (1, 0, 2));
        assert_eq!(element_sites(&pre("", 0)), Err(NeighborhoodError::EmptyRegex));
    }

    #[test]
    fn quantifier_adjustment_reaches_worked_answer() {
        let e = Engine::default();
        let a = pre("([AEIOUaeiou].*[0-9].*){7,}", 0);
        let n = neighbors(&a, &vowel(), &[TransformationKind::QuantifierAdjustment], &e, DEFAULT_CAP);
        let shown: Vec<String> = n.members.iter().map(|m| m.node.to_string()).collect();
        assert!(shown.contains(&"⟨VOW⟩⟨S⟩⟨NUM⟩⟨Q_{7,}⟩⟨S⟩".to_string()), "{shown:?}");
        assert!(shown.contains(&"⟨VOW⟩⟨S⟩(⟨NUM⟩)⟨Q_{7,}⟩⟨S⟩".to_string()));
    }

    #[test]
    fn deleting_the_only_element_gives_epsilon() {
        let e = Engine::default();
        let n = neighbors(&pre("[0-9]", 0), &vowel(), &[TransformationKind::ElementDeletion], &e, DEFAULT_CAP);
        assert_eq!(n.len(), 1);
        assert_eq!(n.concrete(&n.members[0]), Regex::Epsilon);
        let none = neighbors(&pre("[0-9]", 0), &vowel(), &[], &e, DEFAULT_CAP);
        assert!(none.is_empty());
    }

    #[test]
    fn bounds_from_digit_runs() {
        let e = Engine::default();
        let num = parse("[0-9]", e.alphabet()).unwrap();
        let b = infer_quantifier_bounds(&e, &num, &vowel());
        assert!(b.contains(&QuantifierBounds { min: 7, max: None }), "{b:?}");
        let z = parse("z", e.alphabet()).unwrap();
        assert!(infer_quantifier_bounds(&e, &z, &vowel()).contains(&QuantifierBounds { min: 0, max: Some(0) }));
        let only_neg = ExampleSet::from_strs(&[], &["x"]).unwrap();
        assert!(infer_quantifier_bounds(&e, &z, &only_neg).is_empty());
    }

    #[test]
    fn members_unpreprocess_and_reparse() {
        let e = Engine::default();
        for s in [
            "([AEIOUaeiou].*[0-9].*){7,}",
            "([A-Z]|[a-z]){1,}&.{6,8}&(.*([A-Z]|[a-z]).*)",
            "~(a.*)b",
        ] {
            for l in 0..=2 {
                let a = pre(s, l);
                let n = neighbors(&a, &vowel(), &TransformationKind::ALL, &e, DEFAULT_CAP);
                assert!(!n.is_empty());
                for m in &n.members {
                    let r = n.concrete(m);
                    let printed = r.to_string();
                    assert!(parse(&printed, e.alphabet()).is_ok(), "{m} -> {printed}");
                }
            }
        }
    }

    #[test]
    fn deterministic_order() {
        let e = Engine::default();
        let a = pre("([AEIOUaeiou].*[0-9].*){7,}", 0);
        let x = neighbors(&a, &vowel(), &TransformationKind::ALL, &e, DEFAULT_CAP);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let y = pool.install(|| neighbors(&a, &vowel(), &TransformationKind::ALL, &e, DEFAULT_CAP));
        assert_eq!(x.members, y.members);
        let capped = neighbors(&a, &vowel(), &TransformationKind::ALL, &e, 10);
        assert!(capped.truncated && capped.len() == 10);
        assert_eq!(capped.members[..], x.members[..10]);
    }
}
