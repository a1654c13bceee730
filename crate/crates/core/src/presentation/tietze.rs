//! Tietze simplification.
//!
//! 1. Alias elimination: a relator `g * w^-1` with `|w| <= 1` and `g` not in
//!    `w` removes `g` (every transition generator is such an alias).
//! 2. Free and cyclic reduction; empty and duplicate relators are dropped.
//! 3. Repeated general elimination (a generator occurring once in some
//!    relator) and relator-in-relator substitution while it shortens.
//!
//! Candidates are always taken shortest relator first, ties broken by
//! generator name, so the output is a deterministic function of the input.

use std::collections::HashSet;

use super::{GroupPresentation, Provenance, Word};

pub const DEFAULT_TIETZE_BUDGET: usize = 10_000;

/// Phase 3 eliminations may grow the total relator length up to this
/// multiple of the length after phase 2 (or [`MIN_LENGTH_CAP`]).
const LENGTH_GROWTH: usize = 4;
const MIN_LENGTH_CAP: usize = 256;

struct Work {
    names: Vec<String>,
    alive: Vec<bool>,
    rels: Vec<Word>,
    steps: usize,
    budget: usize,
}

impl Work {
    fn new(p: &GroupPresentation, budget: usize) -> Self {
        Work {
            names: p.generators().to_vec(),
            alive: vec![true; p.generators().len()],
            rels: p.relator_words(),
            steps: 0,
            budget,
        }
    }

    fn exhausted(&self) -> bool {
        self.steps >= self.budget
    }

    fn total(&self) -> usize {
        self.rels.iter().map(Word::len).sum()
    }

    /// Removes relator `ri`, which contains `g` exactly once, and replaces
    /// `g` everywhere else by its solution.
    fn eliminate(&mut self, g: usize, ri: usize) {
        let r = self.rels.remove(ri);
        let pos = r
            .letters()
            .iter()
            .position(|l| l.generator() == g)
            .expect("generator occurs in its defining relator");
        let rot = r.rotate_left(pos);
        let head = rot.letters()[0];
        let rest = Word::new(rot.letters()[1..].to_vec());
        // head * rest = 1
        let value = if head.is_inverse() { rest } else { rest.inverse() };
        for w in &mut self.rels {
            if w.contains(g) {
                *w = w.substitute(g, &value).free_reduce();
            }
        }
        self.alive[g] = false;
        self.steps += 1;
    }

    fn eliminate_aliases(&mut self) {
        while !self.exhausted() {
            let mut best: Option<(usize, &str, usize, usize)> = None;
            for (ri, r) in self.rels.iter().enumerate() {
                let r = r.free_reduce();
                let Some(first) = r.letters().first() else {
                    continue;
                };
                let g = first.generator();
                if r.len() <= 2 && r.occurrences(g) == 1 {
                    let key = (r.len(), self.names[g].as_str(), g, ri);
                    if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                        best = Some(key);
                    }
                }
            }
            match best {
                Some((_, _, g, ri)) => {
                    let reduced = self.rels[ri].free_reduce();
                    self.rels[ri] = reduced;
                    self.eliminate(g, ri);
                }
                None => break,
            }
        }
    }

    fn reduce(&mut self) {
        let mut seen = HashSet::new();
        let rels = std::mem::take(&mut self.rels);
        for r in rels {
            let r = r.cyclic_reduce();
            if r.is_empty() {
                continue;
            }
            if seen.insert(r.cyclic_canonical()) {
                self.rels.push(r);
            }
        }
    }

    fn eliminate_one(&mut self, cap: usize) -> bool {
        let total = self.total();
        let mut cands: Vec<(usize, &str, usize, usize)> = Vec::new();
        for (ri, r) in self.rels.iter().enumerate() {
            let mut seen = HashSet::new();
            for l in r.letters() {
                let g = l.generator();
                if seen.insert(g) && r.occurrences(g) == 1 {
                    cands.push((r.len(), self.names[g].as_str(), g, ri));
                }
            }
        }
        cands.sort();
        for &(len, _, g, ri) in &cands {
            let others: usize = self
                .rels
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != ri)
                .map(|(_, w)| w.occurrences(g))
                .sum();
            let estimate = total - len + others * len.saturating_sub(2);
            if estimate <= cap {
                self.eliminate(g, ri);
                return true;
            }
        }
        false
    }

    /// Shortens one relator using a longer-than-half cyclic piece of
    /// another. Returns whether anything changed.
    fn substitute_one(&mut self) -> bool {
        let n = self.rels.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (self.rels[i].len(), i));
        for &i in &order {
            let ri = &self.rels[i];
            if ri.len() < 2 {
                continue;
            }
            for j in 0..n {
                if i == j || self.rels[j].len() < ri.len() / 2 + 1 {
                    continue;
                }
                if let Some(w) = shorten_with(ri, &self.rels[j]) {
                    self.rels[j] = w;
                    self.steps += 1;
                    return true;
                }
            }
        }
        false
    }

    fn finish(self) -> GroupPresentation {
        let mut map = vec![usize::MAX; self.names.len()];
        let mut names = Vec::new();
        for (g, name) in self.names.into_iter().enumerate() {
            if self.alive[g] {
                map[g] = names.len();
                names.push(name);
            }
        }
        let rels = self
            .rels
            .iter()
            .map(|w| w.map_generators(|g| map[g]))
            .collect();
        GroupPresentation::from_words(names, rels, Provenance::Simplified)
            .expect("surviving generators are unique and cover all letters")
    }
}

/// If some cyclic subword `u` of `target` is also a prefix of a rotation
/// `u*v` of `rel` or its inverse with `|u| > |v|`, replaces it by `v^-1`.
fn shorten_with(rel: &Word, target: &Word) -> Option<Word> {
    let n = rel.len();
    let m = target.len();
    let t = target.letters();
    let inv = rel.inverse();
    let mut best: Option<(usize, usize, Word)> = None;
    for base in [rel, &inv] {
        for k in 0..n {
            let rho = base.rotate_left(k);
            let rl = rho.letters();
            for p in 0..m {
                let mut l = 0;
                while l < n && l < m && rl[l] == t[(p + l) % m] {
                    l += 1;
                }
                if 2 * l > n && best.as_ref().is_none_or(|b| l > b.0) {
                    best = Some((l, p, rho.clone()));
                }
            }
        }
    }
    let (l, p, rho) = best?;
    let v = Word::new(rho.letters()[l..].to_vec());
    let rotated = target.rotate_left(p);
    let z = Word::new(rotated.letters()[l..].to_vec());
    let out = v.inverse().concat(&z).cyclic_reduce();
    (out.len() < m).then_some(out)
}

/// Phase 1 only: removes every generator that is an alias of another
/// generator or of the identity.
pub fn eliminate_aliases(p: &GroupPresentation) -> GroupPresentation {
    let mut w = Work::new(p, usize::MAX);
    w.eliminate_aliases();
    w.finish()
}

/// Simplifies `p` to a presentation of an isomorphic group. `budget` bounds
/// the number of eliminations plus substitutions.
pub fn tietze_simplify(p: &GroupPresentation, budget: usize) -> GroupPresentation {
    let mut w = Work::new(p, budget);
    w.eliminate_aliases();
    w.reduce();
    let cap = (LENGTH_GROWTH * w.total()).max(MIN_LENGTH_CAP);
    while !w.exhausted() {
        if w.eliminate_one(cap) {
            w.reduce();
            continue;
        }
        if w.substitute_one() {
            w.reduce();
            continue;
        }
        break;
    }
    w.reduce();
    w.finish()
}
