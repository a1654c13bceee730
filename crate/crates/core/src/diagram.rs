//! Oriented link diagrams in PD-JSON form.
//!
//! A diagram is a list of components, each an ordered cyclic list of arcs
//! (the order is the orientation), and a list of crossings. Every crossing
//! names its overstrand arc and the two understrand arcs it separates, with
//! the understrand running from `under_in` to `under_out`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The on-disk document. Field order is the canonical key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PdDocument {
    #[serde(default)]
    pub name: String,
    pub components: Vec<Vec<String>>,
    pub crossings: Vec<PdCrossing>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PdCrossing {
    pub over: String,
    pub under_in: String,
    pub under_out: String,
    pub sign: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }
}

/// A crossing with arcs referenced by index into [`LinkDiagram::arcs`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: Sign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    NoComponents,
    EmptyComponent,
    DuplicateArc,
    UnknownArc,
    BadSign,
    ArcDegree,
    Orientation,
}

/// A broken diagram invariant, naming the offending element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub element: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.element, self.message)
    }
}

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid diagram: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Structure(Vec<Violation>),
    #[error("component {index} out of range ({count} components)")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("expected {expected} framings, got {got}")]
    FramingCount { expected: usize, got: usize },
}

/// Checks every structural invariant of a document. An empty result means
/// the document describes a valid diagram.
pub fn validate(doc: &PdDocument) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut v = |kind, element: String, message: String| {
        out.push(Violation {
            kind,
            element,
            message,
        })
    };
    if doc.components.is_empty() {
        v(
            ViolationKind::NoComponents,
            "diagram".into(),
            "a diagram needs at least one component".into(),
        );
    }
    // arc name -> (component, position)
    let mut place: HashMap<&str, (usize, usize)> = HashMap::new();
    for (ci, comp) in doc.components.iter().enumerate() {
        if comp.is_empty() {
            v(
                ViolationKind::EmptyComponent,
                format!("component {ci}"),
                "component has no arcs".into(),
            );
        }
        for (pos, arc) in comp.iter().enumerate() {
            if place.insert(arc.as_str(), (ci, pos)).is_some() {
                v(
                    ViolationKind::DuplicateArc,
                    format!("arc `{arc}`"),
                    "arc listed more than once".into(),
                );
            }
        }
    }
    let mut ins: HashMap<&str, usize> = HashMap::new();
    let mut outs: HashMap<&str, usize> = HashMap::new();
    for (xi, c) in doc.crossings.iter().enumerate() {
        let element = format!("crossing {xi}");
        for (role, arc) in [("over", &c.over), ("under_in", &c.under_in), ("under_out", &c.under_out)] {
            if !place.contains_key(arc.as_str()) {
                v(
                    ViolationKind::UnknownArc,
                    element.clone(),
                    format!("{role} arc `{arc}` is not in any component"),
                );
            }
        }
        if Sign::from_value(c.sign).is_none() {
            v(
                ViolationKind::BadSign,
                element.clone(),
                format!("sign must be 1 or -1, got {}", c.sign),
            );
        }
        *ins.entry(c.under_in.as_str()).or_default() += 1;
        *outs.entry(c.under_out.as_str()).or_default() += 1;
        if let (Some(&(ca, pa)), Some(&(cb, pb))) =
            (place.get(c.under_in.as_str()), place.get(c.under_out.as_str()))
        {
            let len = doc.components[ca].len();
            if ca != cb || (pa + 1) % len != pb {
                v(
                    ViolationKind::Orientation,
                    element.clone(),
                    format!(
                        "understrand `{}` -> `{}` does not follow the component orientation",
                        c.under_in, c.under_out
                    ),
                );
            }
        }
    }
    for comp in &doc.components {
        for arc in comp {
            let i = ins.get(arc.as_str()).copied().unwrap_or(0);
            let o = outs.get(arc.as_str()).copied().unwrap_or(0);
            let ok = (i == 1 && o == 1) || (comp.len() == 1 && i == 0 && o == 0);
            if !ok {
                v(
                    ViolationKind::ArcDegree,
                    format!("arc `{arc}`"),
                    format!("arc ends {i} and begins {o} times beneath a crossing (expected once each)"),
                );
            }
        }
    }
    out
}

/// A validated oriented link diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    name: String,
    arcs: Vec<String>,
    arc_component: Vec<usize>,
    components: Vec<Vec<usize>>,
    crossings: Vec<Crossing>,
}

impl TryFrom<PdDocument> for LinkDiagram {
    type Error = DiagramError;

    fn try_from(doc: PdDocument) -> Result<Self, Self::Error> {
        let violations = validate(&doc);
        if !violations.is_empty() {
            return Err(DiagramError::Structure(violations));
        }
        let mut arcs = Vec::new();
        let mut arc_component = Vec::new();
        let mut components = Vec::new();
        for (ci, comp) in doc.components.into_iter().enumerate() {
            let mut idx = Vec::with_capacity(comp.len());
            for arc in comp {
                idx.push(arcs.len());
                arcs.push(arc);
                arc_component.push(ci);
            }
            components.push(idx);
        }
        let index: HashMap<&str, usize> =
            arcs.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
        let crossings = doc
            .crossings
            .iter()
            .map(|c| Crossing {
                over: index[c.over.as_str()],
                under_in: index[c.under_in.as_str()],
                under_out: index[c.under_out.as_str()],
                sign: Sign::from_value(c.sign).expect("validated"),
            })
            .collect();
        Ok(LinkDiagram {
            name: doc.name,
            arcs,
            arc_component,
            components,
            crossings,
        })
    }
}

/// Parses and validates a PD-JSON document.
pub fn parse_diagram(text: &str) -> Result<LinkDiagram, DiagramError> {
    let doc: PdDocument = serde_json::from_str(text).map_err(|e| DiagramError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    LinkDiagram::try_from(doc)
}

impl LinkDiagram {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// All arc names, component by component, each component in its
    /// cyclic order.
    pub fn arcs(&self) -> &[String] {
        &self.arcs
    }

    pub fn arc_name(&self, arc: usize) -> &str {
        &self.arcs[arc]
    }

    pub fn component_of(&self, arc: usize) -> usize {
        self.arc_component[arc]
    }

    /// Arc indices of each component in cyclic order.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// The crossing at which `arc` ends (passes under and becomes the next
    /// arc), if any.
    pub fn crossing_ending(&self, arc: usize) -> Option<usize> {
        self.crossings.iter().position(|c| c.under_in == arc)
    }

    /// Whether the component ever passes under a crossing.
    pub fn has_undercrossings(&self, component: usize) -> bool {
        self.crossings
            .iter()
            .any(|c| self.arc_component[c.under_in] == component)
    }

    pub fn to_document(&self) -> PdDocument {
        PdDocument {
            name: self.name.clone(),
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|&a| self.arcs[a].clone()).collect())
                .collect(),
            crossings: self
                .crossings
                .iter()
                .map(|c| PdCrossing {
                    over: self.arcs[c.over].clone(),
                    under_in: self.arcs[c.under_in].clone(),
                    under_out: self.arcs[c.under_out].clone(),
                    sign: c.sign.value(),
                })
                .collect(),
        }
    }

    /// Canonical PD-JSON text (two-space indentation, trailing newline).
    pub fn serialize(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_document()).expect("plain data");
        s.push('\n');
        s
    }

    /// Sum of the signs of the crossings where both strands belong to
    /// `component`.
    pub fn self_writhe(&self, component: usize) -> Result<i64, DiagramError> {
        if component >= self.components.len() {
            return Err(DiagramError::ComponentOutOfRange {
                index: component,
                count: self.components.len(),
            });
        }
        Ok(self
            .crossings
            .iter()
            .filter(|c| {
                self.arc_component[c.over] == component && self.arc_component[c.under_in] == component
            })
            .map(|c| c.sign.value())
            .sum())
    }

    pub fn self_writhes(&self) -> Vec<i64> {
        (0..self.components.len())
            .map(|c| self.self_writhe(c).expect("in range"))
            .collect()
    }

    pub fn total_writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Sum of the signs of all crossings between components `a` and `b`
    /// (either one on top).
    pub fn mixed_sign_sum(&self, a: usize, b: usize) -> i64 {
        self.crossings
            .iter()
            .filter(|c| {
                let o = self.arc_component[c.over];
                let u = self.arc_component[c.under_in];
                (o == a && u == b) || (o == b && u == a)
            })
            .map(|c| c.sign.value())
            .sum()
    }

    /// Sum of the signs of the crossings where `under` passes beneath
    /// `over`. For diagrams of actual links this is the linking number.
    pub fn under_sign_sum(&self, under: usize, over: usize) -> i64 {
        self.crossings
            .iter()
            .filter(|c| self.arc_component[c.under_in] == under && self.arc_component[c.over] == over)
            .map(|c| c.sign.value())
            .sum()
    }

    /// Adds curls so that every component's self-writhe equals its target
    /// framing. Curls for component `c` are inserted at the end of its first
    /// arc, all of the same sign.
    pub fn blackboardize(&self, targets: &[i64]) -> Result<LinkDiagram, DiagramError> {
        if targets.len() != self.components.len() {
            return Err(DiagramError::FramingCount {
                expected: self.components.len(),
                got: targets.len(),
            });
        }
        let mut doc = self.to_document();
        let mut taken: HashSet<String> = self.arcs.iter().cloned().collect();
        for (ci, &target) in targets.iter().enumerate() {
            let delta = target - self.self_writhe(ci)?;
            if delta == 0 {
                continue;
            }
            let sign = delta.signum();
            let count = delta.unsigned_abs() as usize;
            let first = doc.components[ci][0].clone();
            let fresh: Vec<String> = (0..count)
                .map(|_| fresh_name(&first, &mut taken))
                .collect();
            let ending = doc.crossings.iter().position(|c| c.under_in == first);
            match ending {
                Some(xi) => {
                    // first -> n1 -> ... -> nk, and nk takes over where first ended.
                    let mut prev = first.clone();
                    for n in &fresh {
                        doc.crossings.push(PdCrossing {
                            over: prev.clone(),
                            under_in: prev.clone(),
                            under_out: n.clone(),
                            sign,
                        });
                        prev = n.clone();
                    }
                    doc.crossings[xi].under_in = prev;
                    let comp = &mut doc.components[ci];
                    for (k, n) in fresh.into_iter().enumerate() {
                        comp.insert(1 + k, n);
                    }
                }
                None => {
                    // A single arc that never passes under: k curls cut it
                    // into k arcs.
                    let mut ring = vec![first.clone()];
                    ring.extend(fresh.into_iter().take(count - 1));
                    for j in 0..count {
                        doc.crossings.push(PdCrossing {
                            over: ring[j].clone(),
                            under_in: ring[j].clone(),
                            under_out: ring[(j + 1) % count].clone(),
                            sign,
                        });
                    }
                    doc.components[ci] = ring;
                }
            }
        }
        LinkDiagram::try_from(doc)
    }
}

fn fresh_name(base: &str, taken: &mut HashSet<String>) -> String {
    let mut k = 1;
    loop {
        let candidate = format!("{base}{k}");
        if taken.insert(candidate.clone()) {
            return candidate;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn unknot() -> LinkDiagram {
        parse_diagram(r#"{"name": "unknot", "components": [["a"]], "crossings": []}"#).unwrap()
    }

    pub(crate) fn trefoil() -> PdDocument {
        serde_json::from_str(
            r#"{"name": "trefoil", "components": [["a", "b", "c"]], "crossings": [
                {"over": "c", "under_in": "a", "under_out": "b", "sign": 1},
                {"over": "a", "under_in": "b", "under_out": "c", "sign": 1},
                {"over": "b", "under_in": "c", "under_out": "a", "sign": 1}
            ]}"#,
        )
        .unwrap()
    }

    #[test]
    fn crossingless_unknot() {
        let d = unknot();
        assert_eq!(d.arcs().len(), 1);
        assert!(d.crossings().is_empty());
        assert_eq!(d.self_writhe(0).unwrap(), 0);
    }

    #[test]
    fn trefoil_structure() {
        let doc = trefoil();
        assert!(validate(&doc).is_empty());
        let d = LinkDiagram::try_from(doc).unwrap();
        assert_eq!((d.arcs().len(), d.crossings().len(), d.components().len()), (3, 3, 1));
        assert_eq!(d.self_writhe(0).unwrap(), 3);
    }

    #[test]
    fn arc_used_once_is_a_degree_violation() {
        let mut doc = trefoil();
        doc.components[0].push("x".into());
        doc.crossings[2].under_out = "x".into();
        let v = validate(&doc);
        assert!(v
            .iter()
            .any(|v| v.kind == ViolationKind::ArcDegree && v.element == "arc `x`"));
    }

    #[test]
    fn orientation_and_reference_errors() {
        let mut doc = trefoil();
        doc.crossings[0].under_out = "c".into();
        doc.crossings[1].over = "zz".into();
        doc.crossings[2].sign = 2;
        let kinds: Vec<_> = validate(&doc).into_iter().map(|v| v.kind).collect();
        assert!(kinds.contains(&ViolationKind::Orientation));
        assert!(kinds.contains(&ViolationKind::UnknownArc));
        assert!(kinds.contains(&ViolationKind::BadSign));
        assert!(kinds.contains(&ViolationKind::ArcDegree));
    }

    #[test]
    fn empty_and_duplicate() {
        let doc = PdDocument {
            name: String::new(),
            components: vec![vec![], vec!["a".into()], vec!["a".into()]],
            crossings: vec![],
        };
        let kinds: Vec<_> = validate(&doc).into_iter().map(|v| v.kind).collect();
        assert!(kinds.contains(&ViolationKind::EmptyComponent));
        assert!(kinds.contains(&ViolationKind::DuplicateArc));
        let none = PdDocument {
            name: String::new(),
            components: vec![],
            crossings: vec![],
        };
        assert_eq!(validate(&none)[0].kind, ViolationKind::NoComponents);
    }

    #[test]
    fn syntax_error_has_location() {
        match parse_diagram("{\"name\": \"x\",\n \"components\": [[\"a\"]], \"crossings\": [}") {
            Err(DiagramError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn self_writhe_out_of_range() {
        assert!(matches!(
            unknot().self_writhe(1),
            Err(DiagramError::ComponentOutOfRange { .. })
        ));
    }

    #[test]
    fn one_positive_curl() {
        let d = unknot().blackboardize(&[1]).unwrap();
        assert_eq!(d.crossings().len(), 1);
        assert_eq!(d.self_writhe(0).unwrap(), 1);
        let c = d.crossings()[0];
        assert_eq!((c.over, c.under_in, c.under_out), (0, 0, 0));
    }

    #[test]
    fn three_negative_curls() {
        let d = unknot().blackboardize(&[-3]).unwrap();
        assert_eq!(d.crossings().len(), 3);
        assert_eq!(d.arcs(), ["a", "a1", "a2"]);
        assert_eq!(d.self_writhe(0).unwrap(), -3);
    }

    #[test]
    fn identity_targets_leave_diagram_unchanged() {
        let d = LinkDiagram::try_from(trefoil()).unwrap();
        assert_eq!(d.blackboardize(&d.self_writhes()).unwrap(), d);
    }

    #[test]
    fn curls_on_a_crossed_component() {
        let d = LinkDiagram::try_from(trefoil()).unwrap();
        let e = d.blackboardize(&[1]).unwrap();
        assert_eq!(e.self_writhe(0).unwrap(), 1);
        assert_eq!(e.arcs(), ["a", "a1", "a2", "b", "c"]);
        assert_eq!(e.crossings().len(), 5);
    }

    #[test]
    fn framing_count_mismatch() {
        assert!(matches!(
            unknot().blackboardize(&[1, 2]),
            Err(DiagramError::FramingCount { .. })
        ));
    }

    #[test]
    fn round_trip_text() {
        let d = LinkDiagram::try_from(trefoil()).unwrap();
        let text = d.serialize();
        let e = parse_diagram(&text).unwrap();
        assert_eq!(d, e);
        assert_eq!(e.serialize(), text);
    }
}
