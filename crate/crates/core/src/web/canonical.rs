use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use super::{Dart, VertexId, Web};

/// Isomorphism invariant of a web as a planar map: two webs get the same key
/// exactly when some relabeling of vertices and edges carries one onto the
/// other, preserving orientations and rotations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub loops: usize,
    pub components: Vec<Vec<u32>>,
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CanonicalKey(loops={}, {:?})",
            self.loops, self.components
        )
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.loops)?;
        for c in &self.components {
            f.write_str("|")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl Web {
    pub fn canonical_key(&self) -> CanonicalKey {
        let mut components: Vec<Vec<u32>> = self
            .components()
            .iter()
            .map(|c| component_code(self, c))
            .collect();
        components.sort();
        CanonicalKey {
            loops: self.loop_count(),
            components,
        }
    }

    /// Canonical code of the component containing `vertices`, which must be
    /// exactly one connected component.
    pub fn component_code(&self, vertices: &[VertexId]) -> Vec<u32> {
        component_code(self, vertices)
    }

    pub fn is_isomorphic(&self, other: &Web) -> bool {
        self.vertices().len() == other.vertices().len()
            && self.edges().len() == other.edges().len()
            && self.canonical_key() == other.canonical_key()
    }
}

fn component_code(w: &Web, vertices: &[VertexId]) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for &v in vertices {
        let vert = w.vertices()[&v];
        for slot in 0..3 {
            let start = Dart {
                edge: vert.edges[slot],
                at_head: !vert.out,
            };
            let code = code_from(w, start);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    best.unwrap_or_default()
}

/// Breadth-first relabeling from a starting dart. Every vertex gets a label
/// in discovery order and a starting slot (the edge it was reached by);
/// the code lists, per vertex, its type and for each slot the neighbour's
/// label and the matching slot at the neighbour.
fn code_from(w: &Web, start: Dart) -> Vec<u32> {
    let v0 = w.dart_vertex(start);
    let mut label: HashMap<VertexId, (u32, usize)> = HashMap::new();
    let s0 = w.vertices()[&v0].slot_of(start.edge).unwrap();
    label.insert(v0, (0, s0));
    let mut order = vec![v0];
    let mut queue = VecDeque::from([v0]);
    let mut rows: BTreeMap<u32, [u32; 7]> = BTreeMap::new();
    while let Some(v) = queue.pop_front() {
        let (lv, sv) = label[&v];
        let vert = w.vertices()[&v];
        let mut row = [u32::from(vert.out), 0, 0, 0, 0, 0, 0];
        for k in 0..3 {
            let e = vert.edges[(sv + k) % 3];
            let u = w.dart_vertex(Dart {
                edge: e,
                at_head: vert.out,
            });
            let uvert = w.vertices()[&u];
            let slot_u = uvert.slot_of(e).unwrap();
            let (lu, su) = *label.entry(u).or_insert_with(|| {
                order.push(u);
                queue.push_back(u);
                ((order.len() - 1) as u32, slot_u)
            });
            row[1 + 2 * k] = lu;
            row[2 + 2 * k] = ((slot_u + 3 - su) % 3) as u32;
        }
        rows.insert(lv, row);
    }
    rows.into_values().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::super::samples::*;
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn relabeled_webs_share_key() {
        let c = cube();
        let vmap: BTreeMap<_, _> = c.vertices().keys().map(|v| (*v, (100 - v, 1))).collect();
        let emap: BTreeMap<_, _> = c.edges().keys().map(|e| (*e, 500 + 3 * e)).collect();
        let r = c.relabel(&vmap, &emap).unwrap();
        assert!(c.is_isomorphic(&r));
    }

    #[test]
    fn different_webs_differ() {
        let (a, _) = theta_chain(1);
        assert_ne!(a.canonical_key(), cube().canonical_key());
        assert_ne!(theta().canonical_key(), Web::circle(1).canonical_key());
        let two = theta().disjoint_union(&theta().offset_ids(1000)).unwrap();
        assert_ne!(two.canonical_key(), theta().canonical_key());
    }
}
