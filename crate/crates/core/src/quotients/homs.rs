//! Counting homomorphisms from a finitely presented group into a finite
//! permutation group by backtracking over generator images.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;
use super::BudgetExceeded;
use crate::presentation::GroupPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomCount {
    pub total: u64,
    pub surjective: u64,
}

/// A relator rewritten over search positions, checked once every position
/// it uses has an image.
struct Check {
    level: usize,
    letters: Vec<(usize, bool)>,
}

struct Search<'a> {
    group: &'a FiniteGroup,
    depth: usize,
    checks: Vec<Vec<Check>>,
    budget: u64,
    nodes: &'a AtomicU64,
}

#[derive(Default)]
struct Tally {
    total: u64,
    surjective: u64,
    nodes: u64,
}

const FLUSH: u64 = 1 << 14;

impl Search<'_> {
    fn satisfied(&self, level: usize, images: &[u32]) -> bool {
        let g = self.group;
        self.checks[level].iter().all(|c| {
            let mut cur = 0u32;
            for &(pos, inverse) in &c.letters {
                let x = images[pos];
                cur = g.mul(cur, if inverse { g.inv(x) } else { x });
            }
            cur == 0
        })
    }

    fn descend(&self, level: usize, images: &mut Vec<u32>, tally: &mut Tally) -> Result<(), BudgetExceeded> {
        if level == self.depth {
            tally.total += 1;
            if self.group.generated_order(images) == self.group.order() {
                tally.surjective += 1;
            }
            return Ok(());
        }
        for x in 0..self.group.order() as u32 {
            tally.nodes += 1;
            if tally.nodes.is_multiple_of(FLUSH) {
                let seen = self.nodes.fetch_add(FLUSH, Ordering::Relaxed) + FLUSH;
                if seen > self.budget {
                    return Err(BudgetExceeded { budget: self.budget });
                }
            }
            images.push(x);
            if self.satisfied(level, images) {
                self.descend(level + 1, images, tally)?;
            }
            images.pop();
        }
        Ok(())
    }
}

/// Counts all homomorphisms `p -> group` and those that are onto.
///
/// Generators are searched in order of decreasing letter count; the first
/// one only ranges over conjugacy class representatives, weighted by class
/// size, since conjugation permutes homomorphisms and preserves
/// surjectivity. `budget` bounds the number of images tried; exceeding it is
/// an error, never a wrong count.
pub fn count_homs(p: &GroupPresentation, group: &FiniteGroup, budget: u64) -> Result<HomCount, BudgetExceeded> {
    let n = p.generators().len();
    let words: Vec<_> = p
        .relator_words()
        .iter()
        .map(|w| w.cyclic_reduce())
        .filter(|w| !w.is_empty())
        .collect();
    if n == 0 {
        let onto = u64::from(group.order() == 1);
        return Ok(HomCount {
            total: 1,
            surjective: onto,
        });
    }

    let mut weight = vec![0usize; n];
    for w in &words {
        for l in w.letters() {
            weight[l.generator()] += 1;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&g| (std::cmp::Reverse(weight[g]), g));
    let mut pos = vec![0; n];
    for (i, &g) in order.iter().enumerate() {
        pos[g] = i;
    }

    let mut checks: Vec<Vec<Check>> = (0..n).map(|_| Vec::new()).collect();
    for w in &words {
        let letters: Vec<(usize, bool)> = w
            .letters()
            .iter()
            .map(|l| (pos[l.generator()], l.is_inverse()))
            .collect();
        let level = letters.iter().map(|&(p, _)| p).max().expect("nonempty");
        checks[level].push(Check { level, letters });
    }
    debug_assert!(checks.iter().enumerate().all(|(i, cs)| cs.iter().all(|c| c.level == i)));

    let nodes = AtomicU64::new(0);
    let search = Search {
        group,
        depth: n,
        checks,
        budget,
        nodes: &nodes,
    };

    let results: Vec<Result<(u64, Tally), BudgetExceeded>> = group
        .classes()
        .par_iter()
        .map(|class| {
            let rep = class[0];
            let mut tally = Tally {
                nodes: 1,
                ..Tally::default()
            };
            let mut images = vec![rep];
            if search.satisfied(0, &images) {
                search.descend(1, &mut images, &mut tally)?;
            }
            Ok((class.len() as u64, tally))
        })
        .collect();

    let mut total = 0u64;
    let mut surjective = 0u64;
    let mut used = 0u64;
    for r in results {
        let (size, t) = r?;
        total += size * t.total;
        surjective += size * t.surjective;
        used += t.nodes;
    }
    // Decided on the exact node count so the outcome does not depend on
    // thread scheduling.
    if used > budget {
        return Err(BudgetExceeded { budget });
    }
    Ok(HomCount { total, surjective })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::quotients::Catalog;

    fn homs(text: &str, group: &str) -> HomCount {
        let c = Catalog::builtin();
        count_homs(&parse_presentation(text).unwrap(), c.get(group).unwrap(), 1 << 40).unwrap()
    }

    #[test]
    fn involutions_of_s3() {
        assert_eq!(homs("gens: a\nrels: a^2", "S3").total, 4);
    }

    #[test]
    fn commuting_pairs_in_s3() {
        // Brute force over all 36 pairs: sum of centralizer orders = 6 + 3*2 + 2*3.
        assert_eq!(homs("gens: a, b\nrels: a*b*a^-1*b^-1", "S3").total, 18);
    }

    #[test]
    fn free_group_counts() {
        let h = homs("gens: a\nrels:", "C6");
        assert_eq!(h, HomCount { total: 6, surjective: 2 });
        let t = homs("gens:\nrels:", "A5");
        assert_eq!(t, HomCount { total: 1, surjective: 0 });
    }

    #[test]
    fn budget_is_reported() {
        let c = Catalog::builtin();
        let p = parse_presentation("gens: a, b, c\nrels:").unwrap();
        assert_eq!(
            count_homs(&p, c.get("A6").unwrap(), 1000),
            Err(BudgetExceeded { budget: 1000 })
        );
    }
}
