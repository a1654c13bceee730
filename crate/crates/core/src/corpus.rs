//! The bundled corpus: four surgery diagrams of hyperbolic homology spheres
//! with their printed fundamental-group presentations, plus the values an
//! independent oracle computed for them.

use crate::diagram::{parse_diagram, LinkDiagram};
use crate::presentation::{parse_presentation, GroupPresentation};

#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub id: &'static str,
    /// File stem under `corpus/`.
    pub stem: &'static str,
    /// Census class shared by the pair this entry belongs to.
    pub class: &'static str,
    /// Reconstructed diagram, PD-JSON.
    pub diagram_json: &'static str,
    /// Printed presentation in native syntax.
    pub printed: &'static str,
}

impl CorpusEntry {
    pub fn diagram(&self) -> LinkDiagram {
        parse_diagram(self.diagram_json).expect("bundled diagram is valid")
    }

    pub fn presentation(&self) -> GroupPresentation {
        parse_presentation(self.printed).expect("bundled presentation is valid")
    }
}

macro_rules! entry {
    ($id:literal, $stem:literal, $class:literal) => {
        CorpusEntry {
            id: $id,
            stem: $stem,
            class: $class,
            diagram_json: include_str!(concat!("../corpus/", $stem, ".pd.json")),
            printed: include_str!(concat!("../corpus/", $stem, ".pres")),
        }
    };
}

pub const CORPUS: [CorpusEntry; 4] = [
    entry!("U[1466]", "u1466", "9_126"),
    entry!("U[1563]", "u1563", "9_126"),
    entry!("U[2125]", "u2125", "9_199"),
    entry!("U[2165]", "u2165", "9_199"),
];

/// The two pairs whose manifolds share every invariant the census used.
pub const PAIRS: [(&str, &str); 2] = [("U[1466]", "U[1563]"), ("U[2125]", "U[2165]")];

/// Trefoil knot group, pinned alongside the corpus.
pub const TREFOIL: &str = "gens: a, b\nrels: a*b*a = b*a*b\n";

/// Oracle output: hom counts per catalog group and low-index counts for
/// every corpus entry and the trefoil.
pub const PINNED_ORACLE: &str = include_str!("../corpus/oracle/pinned.json");

/// Looks an entry up by id (`U[1466]`) or stem (`u1466`).
pub fn entry(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.id == name || e.stem == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{fundamental_group, serialize, Dialect};

    #[test]
    fn diagrams_reproduce_printed_presentations() {
        for e in &CORPUS {
            let derived = serialize(&fundamental_group(&e.diagram()), Dialect::Native);
            assert_eq!(derived, e.printed, "{}", e.id);
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(entry("u2125").unwrap().id, "U[2125]");
        assert_eq!(entry("U[1563]").unwrap().class, "9_126");
        assert!(entry("U[3089]").is_none());
    }
}
