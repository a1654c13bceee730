//! Low-index subgroups by backtracking over partial coset tables.
//!
//! Tables are built in standard form: the first undefined entry in
//! row-major order (columns `g0, g0^-1, g1, g1^-1, ...`) is always the one
//! branched on, and a new coset gets the next free number. Every relator is
//! traced at every coset after each definition to force deductions, and a
//! partial table is dropped as soon as re-rooting it at another coset is
//! provably smaller, so exactly one table per conjugacy class survives.

use std::cmp::Ordering as CmpOrdering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::BudgetExceeded;
use crate::presentation::GroupPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexCount {
    /// Conjugacy classes of subgroups of this index.
    pub classes: u64,
    /// Subgroups of this index.
    pub total: u64,
}

const UNDEF: u8 = u8::MAX;

/// Largest supported index.
pub const MAX_INDEX: usize = 64;

#[derive(Clone)]
struct Table {
    cols: usize,
    cosets: usize,
    cells: Vec<u8>,
}

impl Table {
    fn new(cols: usize, capacity: usize) -> Self {
        Table {
            cols,
            cosets: 1,
            cells: vec![UNDEF; cols * capacity],
        }
    }

    #[inline]
    fn get(&self, c: usize, col: usize) -> u8 {
        self.cells[c * self.cols + col]
    }

    #[inline]
    fn set(&mut self, c: usize, col: usize, d: usize) {
        self.cells[c * self.cols + col] = d as u8;
        self.cells[d * self.cols + (col ^ 1)] = c as u8;
    }

    fn first_undefined(&self) -> Option<(usize, usize)> {
        (0..self.cosets * self.cols)
            .find(|&i| self.cells[i] == UNDEF)
            .map(|i| (i / self.cols, i % self.cols))
    }
}

enum Scan {
    Done,
    Deduced,
    Conflict,
}

struct Enumerator<'a> {
    index: usize,
    relators: &'a [Vec<usize>],
    budget: u64,
    nodes: u64,
    classes: u64,
    total: u64,
}

impl Enumerator<'_> {
    /// Traces one relator at coset `c`, deducing the single missing entry if
    /// exactly one is missing.
    fn scan(t: &mut Table, rel: &[usize], c: usize) -> Scan {
        let n = rel.len();
        let mut f = c;
        let mut i = 0;
        while i < n {
            let v = t.get(f, rel[i]);
            if v == UNDEF {
                break;
            }
            f = v as usize;
            i += 1;
        }
        if i == n {
            return if f == c { Scan::Done } else { Scan::Conflict };
        }
        let mut b = c;
        let mut j = n;
        while j > i {
            let v = t.get(b, rel[j - 1] ^ 1);
            if v == UNDEF {
                break;
            }
            b = v as usize;
            j -= 1;
        }
        if j == i {
            // Forward and backward traces met without closing up.
            return if f == b { Scan::Done } else { Scan::Conflict };
        }
        if j == i + 1 {
            let col = rel[i];
            if t.get(f, col) == UNDEF && t.get(b, col ^ 1) == UNDEF {
                t.set(f, col, b);
                return Scan::Deduced;
            }
            return Scan::Conflict;
        }
        Scan::Done
    }

    fn propagate(&self, t: &mut Table) -> bool {
        loop {
            let mut changed = false;
            for c in 0..t.cosets {
                for rel in self.relators {
                    match Self::scan(t, rel, c) {
                        Scan::Done => {}
                        Scan::Deduced => changed = true,
                        Scan::Conflict => return false,
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&mut self, t: Table) -> Result<(), BudgetExceeded> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BudgetExceeded { budget: self.budget });
        }
        let mut t = t;
        if !self.propagate(&mut t) {
            return Ok(());
        }
        let mut fixed = 1u64;
        for base in 1..t.cosets {
            match compare_rerooted(&t, base) {
                Rerooted::Smaller => return Ok(()),
                Rerooted::Equal => fixed += 1,
                Rerooted::Larger | Rerooted::Undecided => {}
            }
        }
        let Some((c, col)) = t.first_undefined() else {
            if t.cosets == self.index {
                self.classes += 1;
                self.total += self.index as u64 / fixed;
            }
            return Ok(());
        };
        for d in 0..t.cosets {
            if t.get(d, col ^ 1) == UNDEF {
                let mut next = t.clone();
                next.set(c, col, d);
                self.search(next)?;
            }
        }
        if t.cosets < self.index {
            let mut next = t.clone();
            let d = next.cosets;
            next.cosets += 1;
            next.set(c, col, d);
            self.search(next)?;
        }
        Ok(())
    }
}

enum Rerooted {
    Smaller,
    Equal,
    Larger,
    Undecided,
}

/// Compares the table standardized from coset `base` with the table itself,
/// as far as the defined entries allow.
fn compare_rerooted(t: &Table, base: usize) -> Rerooted {
    let mut to_new = [UNDEF; MAX_INDEX];
    let mut to_old = [UNDEF; MAX_INDEX];
    to_new[base] = 0;
    to_old[0] = base as u8;
    let mut next = 1usize;
    let mut i = 0usize;
    while i < next {
        let old = to_old[i] as usize;
        for col in 0..t.cols {
            let v = t.get(old, col);
            let o = t.get(i, col);
            if v == UNDEF || o == UNDEF {
                return Rerooted::Undecided;
            }
            if to_new[v as usize] == UNDEF {
                to_new[v as usize] = next as u8;
                to_old[next] = v;
                next += 1;
            }
            match to_new[v as usize].cmp(&o) {
                CmpOrdering::Less => return Rerooted::Smaller,
                CmpOrdering::Greater => return Rerooted::Larger,
                CmpOrdering::Equal => {}
            }
        }
        i += 1;
    }
    if next == t.cosets {
        Rerooted::Equal
    } else {
        Rerooted::Undecided
    }
}

fn relator_columns(p: &GroupPresentation) -> Vec<Vec<usize>> {
    p.relator_words()
        .iter()
        .map(|w| w.cyclic_reduce())
        .filter(|w| !w.is_empty())
        .map(|w| {
            w.letters()
                .iter()
                .map(|l| 2 * l.generator() + usize::from(l.is_inverse()))
                .collect()
        })
        .collect()
}

/// Number of subgroups of index exactly `index`, total and up to
/// conjugacy. `budget` bounds the number of search nodes.
pub fn subgroups_of_index(
    p: &GroupPresentation,
    index: usize,
    budget: u64,
) -> Result<IndexCount, BudgetExceeded> {
    assert!((1..=MAX_INDEX).contains(&index), "index out of range");
    let gens = p.generators().len();
    if gens == 0 {
        let n = u64::from(index == 1);
        return Ok(IndexCount { classes: n, total: n });
    }
    let relators = relator_columns(p);
    let mut e = Enumerator {
        index,
        relators: &relators,
        budget,
        nodes: 0,
        classes: 0,
        total: 0,
    };
    e.search(Table::new(2 * gens, index))?;
    Ok(IndexCount {
        classes: e.classes,
        total: e.total,
    })
}

/// Counts for every index `2..=max_index`, each searched and budgeted on
/// its own.
pub fn low_index_subgroups(
    p: &GroupPresentation,
    max_index: usize,
    budget: u64,
) -> BTreeMap<usize, Result<IndexCount, BudgetExceeded>> {
    (2..=max_index)
        .map(|k| (k, subgroups_of_index(p, k, budget)))
        .collect()
}
