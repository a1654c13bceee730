//! Finite permutation groups with a materialized multiplication table, and
//! the catalog of quotient targets.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const BUILTIN_CATALOG: &str = include_str!("../../data/catalog_v1.json");

/// Image list of a permutation of `0..degree`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation(inv)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("group `{group}`: generator {index} is not a permutation of 0..{degree}")]
    InvalidPermutation {
        group: String,
        index: usize,
        degree: usize,
    },
    #[error("group `{group}`: stated order {stated} but the generators give {actual}")]
    OrderMismatch {
        group: String,
        stated: usize,
        actual: usize,
    },
    #[error("group `{group}` has order {order}, above the supported maximum of {max}")]
    TooLarge {
        group: String,
        order: usize,
        max: usize,
    },
    #[error("duplicate group name `{0}`")]
    DuplicateName(String),
}

/// Groups up to this order are materialized as full multiplication tables.
pub const MAX_GROUP_ORDER: usize = 5040;

/// A finite group given by permutation generators. Elements are numbered in
/// breadth-first order from the identity (element 0).
pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    classes: Vec<Vec<u32>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

impl FiniteGroup {
    /// Enumerates the group generated by `generators` and checks that it has
    /// `order` elements.
    pub fn new(
        name: &str,
        degree: usize,
        generators: Vec<Vec<u32>>,
        order: usize,
    ) -> Result<Self, CatalogError> {
        if order > MAX_GROUP_ORDER {
            return Err(CatalogError::TooLarge {
                group: name.to_string(),
                order,
                max: MAX_GROUP_ORDER,
            });
        }
        let mut gens = Vec::with_capacity(generators.len());
        for (index, g) in generators.into_iter().enumerate() {
            let p = (g.len() == degree)
                .then(|| Permutation::from_images(g))
                .flatten()
                .ok_or_else(|| CatalogError::InvalidPermutation {
                    group: name.to_string(),
                    index,
                    degree,
                })?;
            gens.push(p);
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut head = 0;
        while head < elements.len() {
            for g in &gens {
                let q = elements[head].then(g);
                if !index.contains_key(&q) {
                    if elements.len() >= order.max(1) {
                        // One more than stated: report the true order.
                        let actual = count_closure(&gens, degree);
                        return Err(CatalogError::OrderMismatch {
                            group: name.to_string(),
                            stated: order,
                            actual,
                        });
                    }
                    index.insert(q.clone(), elements.len() as u32);
                    elements.push(q);
                }
            }
            head += 1;
        }
        if elements.len() != order {
            return Err(CatalogError::OrderMismatch {
                group: name.to_string(),
                stated: order,
                actual: elements.len(),
            });
        }
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&a.then(b)];
            }
        }
        let inv = elements.iter().map(|a| index[&a.inverse()]).collect();
        let mut group = FiniteGroup {
            name: name.to_string(),
            degree,
            generators: gens,
            elements,
            mul,
            inv,
            classes: Vec::new(),
        };
        group.classes = group.compute_classes();
        Ok(group)
    }

    fn compute_classes(&self) -> Vec<Vec<u32>> {
        let n = self.order();
        let gen_idx: Vec<u32> = self
            .generators
            .iter()
            .map(|g| {
                self.elements
                    .iter()
                    .position(|e| e == g)
                    .expect("generator is an element") as u32
            })
            .collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start as u32];
            class_of[start] = id;
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                for &g in &gen_idx {
                    let y = self.mul(self.mul(self.inv(g), x), g);
                    if class_of[y as usize] == usize::MAX {
                        class_of[y as usize] = id;
                        members.push(y);
                    }
                }
                head += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order() as u32;
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Order of the subgroup generated by the given elements.
    pub fn generated_order(&self, gens: &[u32]) -> usize {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut members = vec![0u32];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
        members.len()
    }
}

fn count_closure(gens: &[Permutation], degree: usize) -> usize {
    let mut seen = std::collections::HashSet::new();
    let id = Permutation::identity(degree);
    seen.insert(id.clone());
    let mut stack = vec![id];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                stack.push(q);
            }
            if seen.len() > 40_320 {
                return seen.len();
            }
        }
    }
    seen.len()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    pub order: usize,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    version: u32,
    groups: Vec<GroupSpec>,
}

/// Ordered list of quotient targets.
#[derive(Debug)]
pub struct Catalog {
    version: u32,
    groups: Vec<FiniteGroup>,
}

impl Catalog {
    /// Version 1: C2..C6, S3, D8, A4, A5, S4, S5, PSL(2,7), A6 and SL(2,5).
    pub fn builtin() -> Catalog {
        Catalog::from_json(BUILTIN_CATALOG).expect("bundled catalog is valid")
    }

    pub fn from_json(text: &str) -> Result<Catalog, CatalogError> {
        let file: CatalogFile = serde_json::from_str(text)?;
        let mut groups: Vec<FiniteGroup> = Vec::with_capacity(file.groups.len());
        for spec in file.groups {
            if groups.iter().any(|g| g.name == spec.name) {
                return Err(CatalogError::DuplicateName(spec.name));
            }
            groups.push(FiniteGroup::new(&spec.name, spec.degree, spec.generators, spec.order)?);
        }
        Ok(Catalog {
            version: file.version,
            groups,
        })
    }

    pub fn version(&self) -> u32 {
        self.version
    }

    pub fn groups(&self) -> &[FiniteGroup] {
        &self.groups
    }

    pub fn get(&self, name: &str) -> Option<&FiniteGroup> {
        self.groups.iter().find(|g| g.name == name)
    }

    pub fn names(&self) -> Vec<String> {
        self.groups.iter().map(|g| g.name.clone()).collect()
    }

    /// Catalog restricted to groups of order at most `max_order`.
    pub fn up_to_order(self, max_order: usize) -> Catalog {
        Catalog {
            version: self.version,
            groups: self
                .groups
                .into_iter()
                .filter(|g| g.order() <= max_order)
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders_match_names() {
        let c = Catalog::builtin();
        let orders: Vec<(String, usize)> = c
            .groups()
            .iter()
            .map(|g| (g.name().to_string(), g.order()))
            .collect();
        let expect = [
            ("C2", 2), ("C3", 3), ("C4", 4), ("C5", 5), ("C6", 6), ("S3", 6), ("D8", 8),
            ("A4", 12), ("A5", 60), ("S4", 24), ("S5", 120), ("PSL(2,7)", 168), ("A6", 360),
            ("SL(2,5)", 120),
        ];
        let expect: Vec<(String, usize)> = expect.iter().map(|(n, o)| (n.to_string(), *o)).collect();
        assert_eq!(orders, expect);
        assert_eq!(c.version(), 1);
    }

    #[test]
    fn class_counts() {
        let c = Catalog::builtin();
        let count = |n: &str| c.get(n).unwrap().classes().len();
        assert_eq!(count("S3"), 3);
        assert_eq!(count("A5"), 5);
        assert_eq!(count("S5"), 7);
        assert_eq!(count("PSL(2,7)"), 6);
        assert_eq!(count("A6"), 7);
        assert_eq!(count("SL(2,5)"), 9);
        assert_eq!(count("D8"), 5);
    }

    #[test]
    fn abelian_flags() {
        let c = Catalog::builtin();
        for g in c.groups() {
            assert_eq!(g.is_abelian(), g.name().starts_with('C'), "{}", g.name());
        }
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(
            FiniteGroup::new("x", 3, vec![vec![0, 0, 1]], 3),
            Err(CatalogError::InvalidPermutation { .. })
        ));
        assert!(matches!(
            FiniteGroup::new("x", 3, vec![vec![1, 2, 0]], 6),
            Err(CatalogError::OrderMismatch { actual: 3, .. })
        ));
        assert!(matches!(
            FiniteGroup::new("x", 3, vec![vec![1, 0, 2], vec![1, 2, 0]], 3),
            Err(CatalogError::OrderMismatch { actual: 6, .. })
        ));
        let dup = r#"{"version": 9, "groups": [
            {"name": "C2", "order": 2, "degree": 2, "generators": [[1, 0]]},
            {"name": "C2", "order": 2, "degree": 2, "generators": [[1, 0]]}]}"#;
        assert!(matches!(Catalog::from_json(dup), Err(CatalogError::DuplicateName(_))));
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::new("1", 1, vec![], 1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.generated_order(&[]), 1);
    }
}
