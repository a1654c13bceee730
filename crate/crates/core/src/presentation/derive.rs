//! From a blackboard framed link diagram to the fundamental group of the
//! closed manifold obtained by surgery on it.
//!
//! For a crossing where the understrand runs from arc `x` to arc `y` beneath
//! the overstrand `o`, the transition generator `t_xy` and the Wirtinger
//! relation are
//!
//! | sign | transition      | Wirtinger relation |
//! |------|-----------------|--------------------|
//! | +1   | `t_xy = o`      | `x*o = o*y`        |
//! | -1   | `t_xy = o^-1`   | `y*o = o*x`        |
//!
//! so that in both cases `y = t_xy^-1 * x * t_xy`. The filling relator of a
//! component is the product of its transition generators in cyclic order,
//! which is the blackboard longitude read from the diagram.

use std::collections::HashSet;

use super::{GroupPresentation, Provenance, Relator, Word};
use crate::diagram::{LinkDiagram, Sign};

/// Sign convention table: (exponent of the overstrand in `t_xy`, whether the
/// Wirtinger equation is written starting from the outgoing arc).
const fn convention(sign: Sign) -> (bool, bool) {
    match sign {
        // t_xy = o, x*o = o*y
        Sign::Positive => (false, false),
        // t_xy = o^-1, y*o = o*x
        Sign::Negative => (true, true),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub name: String,
    pub crossing: usize,
    pub from: usize,
    pub to: usize,
    /// `over^{+1}` or `over^{-1}` as a word in the arc generators.
    pub definition: Word,
}

fn transition_name(from: &str, to: &str, taken: &mut HashSet<String>) -> String {
    let base = if from.chars().count() == 1 && to.chars().count() == 1 {
        format!("t_{from}{to}")
    } else {
        format!("t_{from}_{to}")
    };
    if taken.insert(base.clone()) {
        return base;
    }
    let mut k = 1;
    loop {
        let c = format!("{base}_{k}");
        if taken.insert(c.clone()) {
            return c;
        }
        k += 1;
    }
}

/// One transition generator per crossing, listed component by component in
/// cyclic arc order. Definitions are words over the arc generators, indexed
/// as in [`LinkDiagram::arcs`].
pub fn transition_generators(diagram: &LinkDiagram) -> Vec<Transition> {
    let mut taken: HashSet<String> = diagram.arcs().iter().cloned().collect();
    let mut out = Vec::with_capacity(diagram.crossings().len());
    for comp in diagram.components() {
        for &arc in comp {
            let Some(xi) = diagram.crossing_ending(arc) else {
                continue;
            };
            let c = diagram.crossings()[xi];
            let (inverse, _) = convention(c.sign);
            out.push(Transition {
                name: transition_name(
                    diagram.arc_name(c.under_in),
                    diagram.arc_name(c.under_out),
                    &mut taken,
                ),
                crossing: xi,
                from: c.under_in,
                to: c.under_out,
                definition: Word::single(c.over, inverse),
            });
        }
    }
    out
}

/// Wirtinger equation of crossing `xi`, with arc `a` mapped to generator
/// `offset + a`.
fn wirtinger_relator(diagram: &LinkDiagram, xi: usize, offset: usize) -> Relator {
    let c = diagram.crossings()[xi];
    let (_, from_out) = convention(c.sign);
    let (first, last) = if from_out {
        (c.under_out, c.under_in)
    } else {
        (c.under_in, c.under_out)
    };
    let g = |a: usize| Word::single(offset + a, false);
    Relator::equation(g(first).concat(&g(c.over)), g(c.over).concat(&g(last)))
}

/// The link exterior's group: arc generators and one relator per crossing,
/// in the same order as the transition generators.
pub fn wirtinger(diagram: &LinkDiagram) -> GroupPresentation {
    let relators = transition_generators(diagram)
        .iter()
        .map(|t| wirtinger_relator(diagram, t.crossing, 0))
        .collect();
    GroupPresentation::new(diagram.arcs().to_vec(), relators, Provenance::Wirtinger)
        .expect("arc generators")
}

/// One relator per component that passes under at least one crossing: the
/// product of its transition generators. Words index transition generators
/// by their position in [`transition_generators`].
pub fn filling_relators(diagram: &LinkDiagram) -> Vec<Word> {
    let transitions = transition_generators(diagram);
    let mut out = Vec::new();
    let mut start = 0;
    for (ci, _) in diagram.components().iter().enumerate() {
        let mut w = Word::empty();
        let mut end = start;
        while end < transitions.len() && diagram.component_of(transitions[end].from) == ci {
            w = w.concat(&Word::single(end, false));
            end += 1;
        }
        if !w.is_empty() {
            out.push(w);
        }
        start = end;
    }
    out
}

/// The closed manifold's group: transition generators followed by arc
/// generators; transition definitions, then filling relators, then
/// Wirtinger relations.
pub fn fundamental_group(diagram: &LinkDiagram) -> GroupPresentation {
    let transitions = transition_generators(diagram);
    let offset = transitions.len();
    let mut generators: Vec<String> = transitions.iter().map(|t| t.name.clone()).collect();
    generators.extend(diagram.arcs().iter().cloned());

    let mut relators = Vec::with_capacity(2 * offset + diagram.components().len());
    for (i, t) in transitions.iter().enumerate() {
        relators.push(Relator::equation(
            Word::single(i, false),
            t.definition.map_generators(|a| offset + a),
        ));
    }
    relators.extend(filling_relators(diagram).into_iter().map(Relator::word));
    for t in &transitions {
        relators.push(wirtinger_relator(diagram, t.crossing, offset));
    }
    GroupPresentation::new(generators, relators, Provenance::Filled)
        .expect("generator names are unique by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::presentation::{serialize, Dialect};

    fn unknot() -> LinkDiagram {
        parse_diagram(r#"{"name": "", "components": [["a"]], "crossings": []}"#).unwrap()
    }

    #[test]
    fn unknot_group_is_infinite_cyclic() {
        let p = fundamental_group(&unknot());
        assert_eq!(serialize(&p, Dialect::Native), "gens: a\nrels:\n");
        assert!(transition_generators(&unknot()).is_empty());
        assert!(filling_relators(&unknot()).is_empty());
        assert_eq!(serialize(&wirtinger(&unknot()), Dialect::Native), "gens: a\nrels:\n");
    }

    #[test]
    fn single_curl() {
        let d = unknot().blackboardize(&[1]).unwrap();
        let p = fundamental_group(&d);
        assert_eq!(
            serialize(&p, Dialect::Native),
            "gens: t_aa, a\nrels: t_aa = a; t_aa; a^2 = a^2\n"
        );
    }

    #[test]
    fn multi_character_arc_names() {
        let d = unknot().blackboardize(&[-2]).unwrap();
        let names: Vec<_> = transition_generators(&d).into_iter().map(|t| t.name).collect();
        assert_eq!(names, ["t_a_a1", "t_a1_a"]);
    }

    #[test]
    fn over_only_component_has_no_filling_relator() {
        // Component 1 (arc "x") only ever passes over component 0.
        let d = parse_diagram(
            r#"{"name": "", "components": [["a", "b"], ["x"]], "crossings": [
                {"over": "x", "under_in": "a", "under_out": "b", "sign": 1},
                {"over": "x", "under_in": "b", "under_out": "a", "sign": -1}
            ]}"#,
        )
        .unwrap();
        assert_eq!(filling_relators(&d).len(), 1);
        let p = fundamental_group(&d);
        assert_eq!(p.generators().len(), 5);
        assert_eq!(p.relators().len(), 5);
    }
}
