//! Invariant profiles, verdicts and replayable witnesses.
//!
//! Everything here serializes through `serde_json::Value`, whose maps keep
//! keys sorted, so two runs on equal inputs emit byte-identical text.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{count_homs, subgroups_of_index, BudgetExceeded, Catalog, HomCount, IndexCount, MAX_INDEX};
use crate::homology::first_homology;
use crate::presentation::{serialize, tietze_simplify, Dialect, GroupPresentation, DEFAULT_TIETZE_BUDGET};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_K: usize = 6;
/// Search nodes allowed per profile entry.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug)]
pub struct ProfileConfig<'a> {
    pub catalog: &'a Catalog,
    /// Largest subgroup index searched; indices `2..=k` are reported.
    pub k: usize,
    pub budget: u64,
}

impl<'a> ProfileConfig<'a> {
    pub fn new(catalog: &'a Catalog) -> Self {
        ProfileConfig {
            catalog,
            k: DEFAULT_K,
            budget: DEFAULT_BUDGET,
        }
    }

    fn summary(&self) -> ConfigSummary {
        ConfigSummary {
            catalog_version: self.catalog.version(),
            catalog_groups: self.catalog.names(),
            k: self.k,
            budget: self.budget,
        }
    }
}

/// The parts of a configuration that determine which entries a profile has.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSummary {
    pub catalog_version: u32,
    pub catalog_groups: Vec<String>,
    pub k: usize,
    pub budget: u64,
}

/// One profile entry: a value, or a note that its search hit the budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry<T> {
    Computed(T),
    BudgetExceeded,
}

impl<T> Entry<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Entry::Computed(v) => Some(v),
            Entry::BudgetExceeded => None,
        }
    }
}

impl<T> From<Result<T, BudgetExceeded>> for Entry<T> {
    fn from(r: Result<T, BudgetExceeded>) -> Self {
        r.map_or(Entry::BudgetExceeded, Entry::Computed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantProfile {
    pub config: ConfigSummary,
    /// SHA-256 of the simplified presentation in native text.
    pub presentation_hash: String,
    pub homology: Vec<BigInt>,
    /// In catalog order.
    pub hom_counts: Vec<(String, Entry<HomCount>)>,
    /// Indices `2..=k` in increasing order.
    pub low_index: Vec<(usize, Entry<IndexCount>)>,
}

fn integer(x: &BigInt) -> Value {
    match x.to_u64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

fn homology_value(h: &[BigInt]) -> Value {
    Value::Array(h.iter().map(integer).collect())
}

fn flagged() -> Value {
    json!({ "budget_exceeded": true })
}

fn hom_value(e: &Entry<HomCount>) -> Value {
    match e {
        Entry::Computed(c) => json!({ "total": c.total, "surjective": c.surjective }),
        Entry::BudgetExceeded => flagged(),
    }
}

fn index_value(e: &Entry<IndexCount>) -> Value {
    match e {
        Entry::Computed(c) => json!({ "classes": c.classes, "total": c.total }),
        Entry::BudgetExceeded => flagged(),
    }
}

fn hash_presentation(p: &GroupPresentation) -> String {
    let digest = Sha256::digest(serialize(p, Dialect::Native).as_bytes());
    format!("{digest:x}")
}

fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

impl InvariantProfile {
    /// The comparable part: homology, hom counts and low-index counts.
    pub fn invariants_value(&self) -> Value {
        let homs: Map<String, Value> = self
            .hom_counts
            .iter()
            .map(|(name, e)| (name.clone(), hom_value(e)))
            .collect();
        let low: Map<String, Value> = self
            .low_index
            .iter()
            .map(|(k, e)| (k.to_string(), index_value(e)))
            .collect();
        json!({
            "homology": homology_value(&self.homology),
            "hom_counts": homs,
            "low_index": low,
        })
    }

    pub fn to_value(&self) -> Value {
        let mut v = self.invariants_value();
        let mut config = serde_json::to_value(&self.config).expect("config serializes");
        config["presentation_hash"] = Value::String(self.presentation_hash.clone());
        v["config"] = config;
        v["schema_version"] = Value::from(SCHEMA_VERSION);
        v
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        canonical(&self.to_value())
    }

    pub fn invariants_json(&self) -> String {
        canonical(&self.invariants_value())
    }

    pub fn has_budget_flags(&self) -> bool {
        self.hom_counts.iter().any(|(_, e)| *e == Entry::BudgetExceeded)
            || self.low_index.iter().any(|(_, e)| *e == Entry::BudgetExceeded)
    }

    /// Entry values in comparison order: homology, catalog order, index order.
    fn entries(&self) -> Vec<(Recipe, Option<Value>)> {
        let mut out = vec![(Recipe::Homology, Some(homology_value(&self.homology)))];
        for (name, e) in &self.hom_counts {
            let v = e.value().map(|_| hom_value(e));
            out.push((Recipe::HomCount { group: name.clone() }, v));
        }
        for (k, e) in &self.low_index {
            let v = e.value().map(|_| index_value(e));
            out.push((Recipe::LowIndex { index: *k }, v));
        }
        out
    }
}

fn simplify(p: &GroupPresentation) -> GroupPresentation {
    tietze_simplify(p, DEFAULT_TIETZE_BUDGET)
}

/// Simplifies `p`, then computes every entry. Entries are searched in
/// parallel and budgeted independently; assembly order is fixed.
pub fn profile(p: &GroupPresentation, config: &ProfileConfig<'_>) -> InvariantProfile {
    let s = simplify(p);
    let (homology, (hom_counts, low_index)) = rayon::join(
        || first_homology(&s),
        || {
            rayon::join(
                || {
                    config
                        .catalog
                        .groups()
                        .par_iter()
                        .map(|g| (g.name().to_string(), count_homs(&s, g, config.budget).into()))
                        .collect::<Vec<_>>()
                },
                || {
                    (2..=config.k.min(MAX_INDEX))
                        .into_par_iter()
                        .map(|k| (k, subgroups_of_index(&s, k, config.budget).into()))
                        .collect::<Vec<_>>()
                },
            )
        },
    );
    InvariantProfile {
        config: config.summary(),
        presentation_hash: hash_presentation(&s),
        homology,
        hom_counts,
        low_index,
    }
}

/// How to recompute one profile entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    Homology,
    HomCount { group: String },
    LowIndex { index: usize },
}

impl Recipe {
    /// `homology`, `hom_counts.<group>` or `low_index.<k>`.
    pub fn invariant_name(&self) -> String {
        match self {
            Recipe::Homology => "homology".to_string(),
            Recipe::HomCount { group } => format!("hom_counts.{group}"),
            Recipe::LowIndex { index } => format!("low_index.{index}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub invariant: String,
    pub left: Value,
    pub right: Value,
    pub recipe: Recipe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Distinguished,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub schema_version: u32,
    pub outcome: Outcome,
    pub config: ConfigSummary,
    pub left_hash: String,
    pub right_hash: String,
    /// Entries left out of the comparison because a search hit its budget.
    pub skipped: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn to_json(&self) -> String {
        canonical(&serde_json::to_value(self).expect("verdict serializes"))
    }

    pub fn from_json(text: &str) -> Result<Verdict, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Compares two profiles computed under the same configuration. The first
/// differing entry that neither side had to skip becomes the witness.
pub fn distinguish_profiles(a: &InvariantProfile, b: &InvariantProfile) -> Verdict {
    assert_eq!(a.config, b.config, "profiles computed under different configurations");
    let mut skipped = Vec::new();
    let mut witness = None;
    for ((recipe, x), (_, y)) in a.entries().into_iter().zip(b.entries()) {
        match (x, y) {
            (Some(x), Some(y)) => {
                if x != y && witness.is_none() {
                    witness = Some(Witness {
                        invariant: recipe.invariant_name(),
                        left: x,
                        right: y,
                        recipe,
                    });
                }
            }
            _ => skipped.push(recipe.invariant_name()),
        }
    }
    Verdict {
        schema_version: SCHEMA_VERSION,
        outcome: if witness.is_some() {
            Outcome::Distinguished
        } else {
            Outcome::Inconclusive
        },
        config: a.config.clone(),
        left_hash: a.presentation_hash.clone(),
        right_hash: b.presentation_hash.clone(),
        skipped,
        witness,
    }
}

pub fn distinguish(p: &GroupPresentation, q: &GroupPresentation, config: &ProfileConfig<'_>) -> Verdict {
    let (a, b) = rayon::join(|| profile(p, config), || profile(q, config));
    distinguish_profiles(&a, &b)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("verdict has no witness")]
    NoWitness,
    #[error("verdict was computed with catalog version {verdict}, but catalog version {given} was supplied")]
    CatalogVersion { verdict: u32, given: u32 },
    #[error("group `{0}` is not in the catalog")]
    UnknownGroup(String),
    #[error("index {0} is outside 2..={MAX_INDEX}")]
    BadIndex(usize),
    #[error("witness name `{name}` does not match its recipe `{expected}`")]
    NameMismatch { name: String, expected: String },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Recomputes a single entry of `profile(p, ..)`, returning it in the same
/// JSON form the profile uses.
pub fn recompute(
    recipe: &Recipe,
    p: &GroupPresentation,
    catalog: &Catalog,
    budget: u64,
) -> Result<Value, WitnessError> {
    let s = simplify(p);
    Ok(match recipe {
        Recipe::Homology => homology_value(&first_homology(&s)),
        Recipe::HomCount { group } => {
            let g = catalog
                .get(group)
                .ok_or_else(|| WitnessError::UnknownGroup(group.clone()))?;
            hom_value(&Entry::Computed(count_homs(&s, g, budget)?))
        }
        Recipe::LowIndex { index } => {
            if !(2..=MAX_INDEX).contains(index) {
                return Err(WitnessError::BadIndex(*index));
            }
            index_value(&Entry::Computed(subgroups_of_index(&s, *index, budget)?))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub invariant: String,
    pub left: Value,
    pub right: Value,
    /// Both recomputed values equal the recorded ones and differ from each
    /// other.
    pub passed: bool,
}

/// Replays the witness of `verdict` on `p` and `q`, recomputing only the
/// named entry.
pub fn verify_witness(
    verdict: &Verdict,
    p: &GroupPresentation,
    q: &GroupPresentation,
    catalog: &Catalog,
) -> Result<WitnessCheck, WitnessError> {
    let w = verdict.witness.as_ref().ok_or(WitnessError::NoWitness)?;
    if verdict.config.catalog_version != catalog.version() {
        return Err(WitnessError::CatalogVersion {
            verdict: verdict.config.catalog_version,
            given: catalog.version(),
        });
    }
    let expected = w.recipe.invariant_name();
    if w.invariant != expected {
        return Err(WitnessError::NameMismatch {
            name: w.invariant.clone(),
            expected,
        });
    }
    let budget = verdict.config.budget;
    let (left, right) = rayon::join(
        || recompute(&w.recipe, p, catalog, budget),
        || recompute(&w.recipe, q, catalog, budget),
    );
    let (left, right) = (left?, right?);
    let passed = left == w.left && right == w.right && left != right;
    Ok(WitnessCheck {
        invariant: w.invariant.clone(),
        left,
        right,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn pres(text: &str) -> GroupPresentation {
        parse_presentation(text).unwrap()
    }

    #[test]
    fn trivial_group_profile() {
        let catalog = Catalog::builtin();
        let cfg = ProfileConfig::new(&catalog);
        let pr = profile(&pres("gens:\nrels:"), &cfg);
        assert!(pr.homology.is_empty());
        for (_, e) in &pr.hom_counts {
            assert_eq!(*e, Entry::Computed(HomCount { total: 1, surjective: 0 }));
        }
        for (_, e) in &pr.low_index {
            assert_eq!(*e, Entry::Computed(IndexCount { classes: 0, total: 0 }));
        }
        assert_eq!(pr.low_index.len(), DEFAULT_K - 1);
    }

    #[test]
    fn order_two_profile() {
        let catalog = Catalog::builtin();
        let cfg = ProfileConfig::new(&catalog);
        let pr = profile(&pres("gens: a\nrels: a^2"), &cfg);
        assert_eq!(pr.homology, vec![BigInt::from(2)]);
        let s3 = pr.hom_counts.iter().find(|(n, _)| n == "S3").unwrap();
        assert_eq!(s3.1, Entry::Computed(HomCount { total: 4, surjective: 0 }));
        let c2 = pr.hom_counts.iter().find(|(n, _)| n == "C2").unwrap();
        assert_eq!(c2.1, Entry::Computed(HomCount { total: 2, surjective: 1 }));
    }

    #[test]
    fn json_is_sorted_and_stable() {
        let catalog = Catalog::builtin();
        let cfg = ProfileConfig { k: 3, ..ProfileConfig::new(&catalog) };
        let pa = profile(&pres("gens: a\nrels: a^3"), &cfg);
        let pb = profile(&pres("gens: b\nrels: b^3"), &cfg);
        assert_eq!(pa.invariants_json(), pb.invariants_json());
        assert_ne!(pa.presentation_hash, pb.presentation_hash);
        let a = pa.to_json();
        assert_eq!(a, profile(&pres("gens: a\nrels: a^3"), &cfg).to_json());
        let top: Vec<&str> = a
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        assert_eq!(top, ["config", "hom_counts", "homology", "low_index", "schema_version"]);
    }

    #[test]
    fn same_group_is_inconclusive() {
        let catalog = Catalog::builtin();
        let cfg = ProfileConfig { k: 4, ..ProfileConfig::new(&catalog) };
        let p = pres("gens: a, b\nrels: a*b*a = b*a*b");
        let v = distinguish(&p, &p, &cfg);
        assert_eq!(v.outcome, Outcome::Inconclusive);
        assert!(v.witness.is_none());
        assert!(verify_witness(&v, &p, &p, &catalog) == Err(WitnessError::NoWitness));
    }

    #[test]
    fn homology_witness_replays() {
        let catalog = Catalog::builtin();
        let cfg = ProfileConfig { k: 4, ..ProfileConfig::new(&catalog) };
        let (p, q) = (pres("gens: a\nrels: a^2"), pres("gens: a\nrels: a^3"));
        let v = distinguish(&p, &q, &cfg);
        assert_eq!(v.outcome, Outcome::Distinguished);
        let w = v.witness.as_ref().unwrap();
        assert_eq!(w.recipe, Recipe::Homology);
        assert_eq!((w.left.clone(), w.right.clone()), (json!([2]), json!([3])));

        let round = Verdict::from_json(&v.to_json()).unwrap();
        assert_eq!(round, v);
        assert!(verify_witness(&round, &p, &q, &catalog).unwrap().passed);

        let mut tampered = round.clone();
        tampered.witness.as_mut().unwrap().right = json!([4]);
        let check = verify_witness(&tampered, &p, &q, &catalog).unwrap();
        assert!(!check.passed);
        assert_eq!(check.right, json!([3]));
    }

    #[test]
    fn hom_witness_when_homology_agrees() {
        // Both perfect-free, same H1 = Z; the trefoil maps onto S3, Z does not.
        let catalog = Catalog::builtin();
        let cfg = ProfileConfig { k: 3, ..ProfileConfig::new(&catalog) };
        let z = pres("gens: a\nrels:");
        let trefoil = pres("gens: a, b\nrels: a*b*a = b*a*b");
        let v = distinguish(&z, &trefoil, &cfg);
        let w = v.witness.unwrap();
        assert_eq!(w.invariant, "hom_counts.S3");
        assert_eq!(w.recipe, Recipe::HomCount { group: "S3".into() });
    }

    #[test]
    fn budget_flags_are_skipped() {
        let catalog = Catalog::builtin();
        let cfg = ProfileConfig {
            k: 3,
            budget: 50,
            ..ProfileConfig::new(&catalog)
        };
        let p = pres("gens: a, b\nrels:");
        let pr = profile(&p, &cfg);
        assert!(pr.has_budget_flags());
        assert!(pr.to_json().contains("budget_exceeded"));
        let v = distinguish_profiles(&pr, &pr);
        assert_eq!(v.outcome, Outcome::Inconclusive);
        assert!(!v.skipped.is_empty());
    }
}
