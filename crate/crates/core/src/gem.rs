//! 4-colored graphs and the gem condition.
//!
//! A [`FourGraph`] is stored as four fixed-point-free involutions on the
//! vertex set, one per color. It is a gem when, for every color `i`, each
//! component of the graph with color `i` removed embeds in the sphere with
//! its bicolored cycles as faces. That face set is prescribed, so the check
//! reduces to Euler's formula `V - E + F = 2` per component.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const COLORS: usize = 4;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourGraphDocument {
    pub vertices: usize,
    /// One list of vertex pairs per color.
    pub matchings: Vec<Vec<[usize; 2]>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GemError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("expected {COLORS} matchings, found {0}")]
    ColorCount(usize),
    #[error("color {color}: vertex {vertex} is out of range (graph has {vertices} vertices)")]
    VertexRange { color: usize, vertex: usize, vertices: usize },
    #[error("color {color}: edge {vertex}-{vertex} is a loop")]
    Loop { color: usize, vertex: usize },
    #[error("color {color}: vertex {vertex} is matched more than once")]
    Repeated { color: usize, vertex: usize },
    #[error("color {color}: vertex {vertex} is not matched")]
    Uncovered { color: usize, vertex: usize },
    #[error("graph is not bipartite (odd cycle through vertex {0})")]
    NotBipartite(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourGraph {
    partner: [Vec<usize>; COLORS],
    side: Vec<u8>,
}

impl FourGraph {
    /// `partner[c][v]` is the vertex joined to `v` by color `c`.
    pub fn from_involutions(partner: [Vec<usize>; COLORS]) -> Result<Self, GemError> {
        let n = partner[0].len();
        for (color, p) in partner.iter().enumerate() {
            for v in 0..n {
                let w = *p.get(v).ok_or(GemError::Uncovered { color, vertex: v })?;
                if w >= n {
                    return Err(GemError::VertexRange { color, vertex: w, vertices: n });
                }
                if w == v {
                    return Err(GemError::Loop { color, vertex: v });
                }
                if p[w] != v {
                    return Err(GemError::Repeated { color, vertex: w });
                }
            }
            if p.len() != n {
                return Err(GemError::VertexRange { color, vertex: p.len() - 1, vertices: n });
            }
        }
        let side = two_color(&partner, n)?;
        Ok(FourGraph { partner, side })
    }

    pub fn from_document(doc: &FourGraphDocument) -> Result<Self, GemError> {
        if doc.matchings.len() != COLORS {
            return Err(GemError::ColorCount(doc.matchings.len()));
        }
        let n = doc.vertices;
        let mut partner: [Vec<usize>; COLORS] = Default::default();
        for (color, pairs) in doc.matchings.iter().enumerate() {
            let mut p = vec![usize::MAX; n];
            for &[u, v] in pairs {
                for x in [u, v] {
                    if x >= n {
                        return Err(GemError::VertexRange { color, vertex: x, vertices: n });
                    }
                }
                if u == v {
                    return Err(GemError::Loop { color, vertex: u });
                }
                for x in [u, v] {
                    if p[x] != usize::MAX {
                        return Err(GemError::Repeated { color, vertex: x });
                    }
                }
                p[u] = v;
                p[v] = u;
            }
            if let Some(v) = p.iter().position(|&x| x == usize::MAX) {
                return Err(GemError::Uncovered { color, vertex: v });
            }
            partner[color] = p;
        }
        Self::from_involutions(partner)
    }

    pub fn from_json(text: &str) -> Result<Self, GemError> {
        let doc: FourGraphDocument = serde_json::from_str(text).map_err(|e| GemError::Json(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> FourGraphDocument {
        let matchings = self
            .partner
            .iter()
            .map(|p| {
                (0..p.len())
                    .filter(|&v| v < p[v])
                    .map(|v| [v, p[v]])
                    .collect()
            })
            .collect();
        FourGraphDocument {
            vertices: self.vertex_count(),
            matchings,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.side.len()
    }

    pub fn partner(&self, color: usize, v: usize) -> usize {
        self.partner[color][v]
    }

    /// Side of the bipartition, `0` or `1`; vertex 0 of each component is
    /// on side 0.
    pub fn side(&self, v: usize) -> u8 {
        self.side[v]
    }

    /// Connected components of the subgraph spanned by `colors`, each
    /// sorted, listed by smallest vertex.
    pub fn residues(&self, colors: &[usize]) -> Vec<Vec<usize>> {
        assert!(!colors.is_empty() && colors.iter().all(|&c| c < COLORS), "bad color set");
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                for &c in colors {
                    let w = self.partner[c][v];
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Relabels vertices by `perm` (old to new) and colors by `colors`
    /// (old to new).
    pub fn relabel(&self, perm: &[usize], colors: [usize; COLORS]) -> FourGraph {
        let n = self.vertex_count();
        let mut partner: [Vec<usize>; COLORS] = Default::default();
        for c in 0..COLORS {
            let mut p = vec![0; n];
            for v in 0..n {
                p[perm[v]] = perm[self.partner[c][v]];
            }
            partner[colors[c]] = p;
        }
        FourGraph::from_involutions(partner).expect("relabeling preserves validity")
    }

    pub fn disjoint_union(&self, other: &FourGraph) -> FourGraph {
        let n = self.vertex_count();
        let mut partner = self.partner.clone();
        for (c, p) in partner.iter_mut().enumerate() {
            p.extend(other.partner[c].iter().map(|&w| w + n));
        }
        FourGraph::from_involutions(partner).expect("union of valid graphs")
    }

    /// The 2-vertex graph with four parallel edges.
    pub fn dipole() -> FourGraph {
        FourGraph::from_involutions(std::array::from_fn(|_| vec![1, 0])).expect("valid")
    }
}

fn two_color(partner: &[Vec<usize>; COLORS], n: usize) -> Result<Vec<u8>, GemError> {
    let mut side = vec![u8::MAX; n];
    for start in 0..n {
        if side[start] != u8::MAX {
            continue;
        }
        side[start] = 0;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for p in partner {
                let w = p[v];
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return Err(GemError::NotBipartite(v));
                }
            }
        }
    }
    Ok(side)
}

/// Euler data for one component of the graph with one color removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueReport {
    pub removed_color: usize,
    pub vertices: Vec<usize>,
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "E")]
    pub e: usize,
    /// Bicolored cycles inside the component.
    #[serde(rename = "B")]
    pub b: usize,
    /// `V - E + B`.
    pub euler: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GemReport {
    pub is_gem: bool,
    pub residues: Vec<ResidueReport>,
}

impl GemReport {
    /// Pretty JSON with sorted keys, tagged with the schema version.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["schema_version"] = serde_json::Value::from(crate::quotients::SCHEMA_VERSION);
        let mut s = serde_json::to_string_pretty(&v).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

pub fn is_gem(g: &FourGraph) -> GemReport {
    let mut residues = Vec::new();
    for removed in 0..COLORS {
        let kept: Vec<usize> = (0..COLORS).filter(|&c| c != removed).collect();
        let mut cycles = 0usize;
        let pairs: Vec<[usize; 2]> = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| [i, j]))
            .map(|[i, j]| [kept[i], kept[j]])
            .collect();
        let mut owner = vec![usize::MAX; g.vertex_count()];
        let comps = g.residues(&kept);
        for (k, comp) in comps.iter().enumerate() {
            for &v in comp {
                owner[v] = k;
            }
        }
        let mut b = vec![0usize; comps.len()];
        for pair in &pairs {
            for r in g.residues(pair) {
                b[owner[r[0]]] += 1;
                cycles += 1;
            }
        }
        debug_assert_eq!(b.iter().sum::<usize>(), cycles);
        for (k, comp) in comps.into_iter().enumerate() {
            let v = comp.len();
            let e = 3 * v / 2;
            residues.push(ResidueReport {
                removed_color: removed,
                euler: v as i64 - e as i64 + b[k] as i64,
                vertices: comp,
                v,
                e,
                b: b[k],
            });
        }
    }
    GemReport {
        is_gem: residues.iter().all(|r| r.euler == 2),
        residues,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// K3,3 with colors 0..2 a proper edge coloring and color 3 the
    /// matching `i - (3 + i)`.
    fn k33() -> FourGraph {
        let mut partner: [Vec<usize>; COLORS] = Default::default();
        for (c, p) in partner.iter_mut().enumerate() {
            *p = vec![0; 6];
            for i in 0..3 {
                let j = if c == 3 { 3 + i } else { 3 + (i + c) % 3 };
                p[i] = j;
                p[j] = i;
            }
        }
        FourGraph::from_involutions(partner).unwrap()
    }

    #[test]
    fn dipole_is_a_gem() {
        let r = is_gem(&FourGraph::dipole());
        assert!(r.is_gem);
        assert_eq!(r.residues.len(), 4);
        for x in &r.residues {
            assert_eq!((x.v, x.e, x.b, x.euler), (2, 3, 3, 2));
        }
        assert_eq!(FourGraph::dipole().residues(&[0, 1]), vec![vec![0, 1]]);
    }

    #[test]
    fn k33_is_not_a_gem() {
        let g = k33();
        assert_eq!(g.residues(&[0, 1]), vec![vec![0, 1, 2, 3, 4, 5]]);
        let r = is_gem(&g);
        assert!(!r.is_gem);
        let main = r.residues.iter().find(|x| x.removed_color == 3).unwrap();
        assert_eq!((main.v, main.e, main.b, main.euler), (6, 9, 3, 0));
    }

    #[test]
    fn disjoint_dipoles() {
        let g = FourGraph::dipole().disjoint_union(&FourGraph::dipole());
        assert_eq!(g.residues(&[2, 3]).len(), 2);
        assert!(is_gem(&g).is_gem);
    }

    #[test]
    fn rejects_bad_input() {
        let bad = r#"{"vertices": 2, "matchings": [[[0,1]],[[0,1]],[[0,1]]]}"#;
        assert_eq!(FourGraph::from_json(bad), Err(GemError::ColorCount(3)));
        let uncovered = r#"{"vertices": 4, "matchings": [[[0,1]],[[0,1],[2,3]],[[0,1],[2,3]],[[0,1],[2,3]]]}"#;
        assert_eq!(
            FourGraph::from_json(uncovered),
            Err(GemError::Uncovered { color: 0, vertex: 2 })
        );
        // Colors 0, 1 and 2 close the triangle 0-1-3.
        let odd = r#"{"vertices": 4, "matchings": [[[0,1],[2,3]],[[0,2],[1,3]],[[0,3],[1,2]],[[0,1],[2,3]]]}"#;
        assert!(matches!(FourGraph::from_json(odd), Err(GemError::NotBipartite(_))));
    }

    #[test]
    fn document_round_trip() {
        let g = k33();
        let back = FourGraph::from_document(&g.to_document()).unwrap();
        assert_eq!(back, g);
    }
}
