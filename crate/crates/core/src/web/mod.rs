//! Closed Kuperberg webs as combinatorial maps.
//!
//! A web is a planar trivalent graph in which every vertex is a source or a
//! sink, together with verticeless loops. Edges always run from a source
//! ("out") vertex to a sink ("in") vertex, so edge orientation is implied by
//! the vertex types. Each vertex stores its three incident edges in
//! counterclockwise order; that rotation system is the planar embedding.

mod bracket;
mod canonical;
mod json;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use bracket::{kuperberg_bracket, kuperberg_bracket_by, link_bracket, BracketCache};
pub use canonical::CanonicalKey;
pub use json::WebJson;

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    /// `true` for a source (all edges outgoing), `false` for a sink.
    pub out: bool,
    /// Incident edges in counterclockwise order.
    pub edges: [EdgeId; 3],
}

impl Vertex {
    pub fn slot_of(&self, e: EdgeId) -> Option<usize> {
        self.edges.iter().position(|&x| x == e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Edge {
    /// Edge from source vertex `tail` to sink vertex `head`.
    Arc { tail: VertexId, head: VertexId },
    /// Verticeless circle. `container` is the loop it sits directly inside,
    /// if that is known.
    Loop { container: Option<EdgeId> },
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        matches!(self, Edge::Loop { .. })
    }

    /// Euler characteristic of the edge as a closed 1-cell: 1 for an arc,
    /// 0 for a circle.
    pub fn euler(&self) -> i64 {
        if self.is_loop() {
            0
        } else {
            1
        }
    }
}

/// Half-edge: an edge together with one of its ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub edge: EdgeId,
    /// `true` for the end at the head (sink) vertex.
    pub at_head: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Web {
    vertices: BTreeMap<VertexId, Vertex>,
    edges: BTreeMap<EdgeId, Edge>,
}

/// A digon face: sink `x` and source `y` joined by the two edges `d`, with
/// `e_in` the third edge at `x` and `e_out` the third edge at `y`.
/// `d[0]` follows `e_in` counterclockwise at `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DigonSite {
    pub x: VertexId,
    pub y: VertexId,
    pub d: [EdgeId; 2],
    pub e_in: EdgeId,
    pub e_out: EdgeId,
}

impl DigonSite {
    /// Id of the edge that replaces `e_in` and `e_out` once the digon is gone.
    pub fn merged(&self) -> EdgeId {
        self.e_in.min(self.e_out)
    }
}

/// Local data of the two-vertex web piece: `mid` runs from source `vout` to
/// sink `vin`. Around `vin` the counterclockwise order is
/// `(mid, a_lo, b_lo)`, around `vout` it is `(mid, b_hi, a_hi)`; removing the
/// piece joins `a_lo` to `a_hi` and `b_lo` to `b_hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZipSite {
    pub vin: VertexId,
    pub vout: VertexId,
    pub mid: EdgeId,
    pub a_lo: EdgeId,
    pub b_lo: EdgeId,
    pub a_hi: EdgeId,
    pub b_hi: EdgeId,
}

/// A square face, edges and vertices listed along the face walk;
/// `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareSite {
    pub edges: [EdgeId; 4],
    pub vertices: [VertexId; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reduction {
    Empty,
    FreeLoop(EdgeId),
    DigonFace(DigonSite),
    SquareFace(SquareSite),
}

/// Result of splicing edges through deleted vertices: for every new edge the
/// old edges it is made of, in order.
pub(crate) type Splice = BTreeMap<EdgeId, Vec<EdgeId>>;

impl Web {
    pub fn empty() -> Self {
        Self::default()
    }

    /// A single circle with the given id.
    pub fn circle(id: EdgeId) -> Self {
        let mut w = Self::empty();
        w.edges.insert(id, Edge::Loop { container: None });
        w
    }

    /// Build and validate a web from raw parts.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = (VertexId, Vertex)>,
        edges: impl IntoIterator<Item = (EdgeId, Edge)>,
    ) -> Result<Self> {
        let w = Self {
            vertices: vertices.into_iter().collect(),
            edges: edges.into_iter().collect(),
        };
        w.validate()?;
        Ok(w)
    }

    /// Build a web from vertex rotations alone: every edge id must occur at
    /// exactly one source and one sink. `loops` adds free circles.
    pub fn from_rotations(
        vertices: impl IntoIterator<Item = (VertexId, bool, [EdgeId; 3])>,
        loops: impl IntoIterator<Item = EdgeId>,
    ) -> Result<Self> {
        let mut verts = BTreeMap::new();
        let mut tails: HashMap<EdgeId, VertexId> = HashMap::new();
        let mut heads: HashMap<EdgeId, VertexId> = HashMap::new();
        for (id, out, edges) in vertices {
            if verts.insert(id, Vertex { out, edges }).is_some() {
                return Err(Error::InvalidWeb(format!("duplicate vertex {id}")));
            }
            let side = if out { &mut tails } else { &mut heads };
            for e in edges {
                if side.insert(e, id).is_some() {
                    return Err(Error::InvalidWeb(format!("edge {e} repeated at one end")));
                }
            }
        }
        let mut edges = BTreeMap::new();
        for (&e, &tail) in &tails {
            let head = *heads
                .get(&e)
                .ok_or_else(|| Error::InvalidWeb(format!("edge {e} has no head")))?;
            edges.insert(e, Edge::Arc { tail, head });
        }
        if heads.len() != tails.len() {
            return Err(Error::InvalidWeb("edge without a tail".into()));
        }
        for l in loops {
            if edges.insert(l, Edge::Loop { container: None }).is_some() {
                return Err(Error::InvalidWeb(format!("loop id {l} already used")));
            }
        }
        Self::from_parts(verts, edges)
    }

    pub(crate) fn from_parts_unchecked(
        vertices: BTreeMap<VertexId, Vertex>,
        edges: BTreeMap<EdgeId, Edge>,
    ) -> Self {
        Self { vertices, edges }
    }

    pub fn vertices(&self) -> &BTreeMap<VertexId, Vertex> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<EdgeId, Edge> {
        &self.edges
    }

    pub fn vertex(&self, v: VertexId) -> Option<&Vertex> {
        self.vertices.get(&v)
    }

    pub fn edge(&self, e: EdgeId) -> Option<&Edge> {
        self.edges.get(&e)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn loops(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges
            .iter()
            .filter(|(_, e)| e.is_loop())
            .map(|(id, _)| *id)
    }

    pub fn loop_count(&self) -> usize {
        self.loops().count()
    }

    /// `V - E` of the underlying graph; circles contribute nothing.
    pub fn euler_characteristic(&self) -> i64 {
        let arcs = self.edges.values().filter(|e| !e.is_loop()).count();
        self.vertices.len() as i64 - arcs as i64
    }

    /// A fresh id larger than every vertex and edge id in use.
    pub fn fresh_id(&self) -> u32 {
        let v = self.vertices.keys().next_back().copied().unwrap_or(0);
        let e = self.edges.keys().next_back().copied().unwrap_or(0);
        v.max(e) + 1
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidWeb(m));
        for (&id, v) in &self.vertices {
            for (slot, &e) in v.edges.iter().enumerate() {
                match self.edges.get(&e) {
                    Some(Edge::Arc { tail, head }) => {
                        let end = if v.out { *tail } else { *head };
                        if end != id {
                            return bad(format!(
                                "vertex {id} lists edge {e} with wrong orientation"
                            ));
                        }
                    }
                    _ => return bad(format!("vertex {id} slot {slot}: edge {e} is not an arc")),
                }
            }
            if v.edges[0] == v.edges[1] || v.edges[1] == v.edges[2] || v.edges[0] == v.edges[2] {
                return bad(format!("vertex {id} repeats an edge"));
            }
        }
        for (&e, edge) in &self.edges {
            match *edge {
                Edge::Arc { tail, head } => {
                    let t = self.vertices.get(&tail);
                    let h = self.vertices.get(&head);
                    match (t, h) {
                        (Some(t), Some(h)) if t.out && !h.out => {
                            if t.slot_of(e).is_none() || h.slot_of(e).is_none() {
                                return bad(format!("edge {e} missing from its end rotation"));
                            }
                        }
                        _ => {
                            return bad(format!(
                                "edge {e} must run from a source to a sink (all-in/all-out rule)"
                            ))
                        }
                    }
                }
                Edge::Loop { container } => {
                    let mut seen = BTreeSet::from([e]);
                    let mut cur = container;
                    while let Some(c) = cur {
                        if !seen.insert(c) {
                            return bad(format!("loop nesting cycle through {e}"));
                        }
                        match self.edges.get(&c) {
                            Some(Edge::Loop { container }) => cur = *container,
                            _ => return bad(format!("loop {e} nested in non-loop {c}")),
                        }
                    }
                }
            }
        }
        // planarity, one connected component at a time
        let faces = self.faces();
        let mut comp_faces: HashMap<VertexId, i64> = HashMap::new();
        for f in &faces {
            let v = self.dart_vertex(f[0]);
            *comp_faces.entry(self.component_root(v)).or_default() += 1;
        }
        let mut comp_ve: HashMap<VertexId, (i64, i64)> = HashMap::new();
        for &v in self.vertices.keys() {
            comp_ve.entry(self.component_root(v)).or_default().0 += 1;
        }
        for edge in self.edges.values() {
            if let Edge::Arc { tail, .. } = edge {
                comp_ve.entry(self.component_root(*tail)).or_default().1 += 1;
            }
        }
        for (root, (v, e)) in comp_ve {
            let f = comp_faces.get(&root).copied().unwrap_or(0);
            if v - e + f != 2 {
                return bad(format!(
                    "rotation system is not planar (V-E+F = {})",
                    v - e + f
                ));
            }
        }
        Ok(())
    }

    fn component_root(&self, v: VertexId) -> VertexId {
        // smallest vertex id reachable from v
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &e in &self.vertices[&u].edges {
                let w = self.other_end(e, u);
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        *seen.iter().next().unwrap()
    }

    /// Connected components of the trivalent part, each as a sorted vertex list.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for &v in self.vertices.keys() {
            if !seen.insert(v) {
                continue;
            }
            let mut comp = vec![v];
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for &e in &self.vertices[&u].edges {
                    let w = self.other_end(e, u);
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        match self.edges[&e] {
            Edge::Arc { tail, head } => {
                if tail == v {
                    head
                } else {
                    tail
                }
            }
            Edge::Loop { .. } => v,
        }
    }

    pub fn dart_vertex(&self, d: Dart) -> VertexId {
        match self.edges[&d.edge] {
            Edge::Arc { tail, head } => {
                if d.at_head {
                    head
                } else {
                    tail
                }
            }
            Edge::Loop { .. } => panic!("loops have no darts"),
        }
    }

    /// Next dart counterclockwise around the dart's vertex.
    pub fn rotate(&self, d: Dart) -> Dart {
        let v = &self.vertices[&self.dart_vertex(d)];
        let slot = v.slot_of(d.edge).expect("dart at its vertex");
        Dart {
            edge: v.edges[(slot + 1) % 3],
            at_head: d.at_head,
        }
    }

    /// All darts of the trivalent part, in id order.
    pub fn darts(&self) -> Vec<Dart> {
        let mut out = Vec::new();
        for (&e, edge) in &self.edges {
            if !edge.is_loop() {
                out.push(Dart {
                    edge: e,
                    at_head: false,
                });
                out.push(Dart {
                    edge: e,
                    at_head: true,
                });
            }
        }
        out
    }

    /// Faces of the embedding as dart cycles (orbits of rotate-after-flip),
    /// each starting at its smallest dart, listed in order of that dart.
    /// Free loops are not part of any face walk.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        for d in self.darts() {
            if seen.contains(&d) {
                continue;
            }
            let mut face = Vec::new();
            let mut cur = d;
            loop {
                seen.insert(cur);
                face.push(cur);
                cur = self.rotate(Dart {
                    edge: cur.edge,
                    at_head: !cur.at_head,
                });
                if cur == d {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }

    /// Faces counted the way a drawing would show them: every component of
    /// the trivalent part and every circle separates the plane.
    pub fn face_count(&self) -> usize {
        // one unbounded face plus, per component, its bounded faces; each
        // circle adds one face
        let comps = self.components().len();
        let walks = self.faces().len();
        1 + walks - comps + self.loop_count()
    }

    pub fn digon_sites(&self) -> Vec<DigonSite> {
        let mut out = Vec::new();
        for f in self.faces() {
            if f.len() != 2 || f[0].edge == f[1].edge {
                continue;
            }
            let (x, y) = {
                let a = self.dart_vertex(f[0]);
                let b = self.dart_vertex(f[1]);
                if self.vertices[&a].out {
                    (b, a)
                } else {
                    (a, b)
                }
            };
            if x == y {
                continue;
            }
            let xv = &self.vertices[&x];
            let yv = &self.vertices[&y];
            let e_in = *xv
                .edges
                .iter()
                .find(|e| **e != f[0].edge && **e != f[1].edge)
                .unwrap();
            let e_out = *yv
                .edges
                .iter()
                .find(|e| **e != f[0].edge && **e != f[1].edge)
                .unwrap();
            let s = xv.slot_of(e_in).unwrap();
            out.push(DigonSite {
                x,
                y,
                d: [xv.edges[(s + 1) % 3], xv.edges[(s + 2) % 3]],
                e_in,
                e_out,
            });
        }
        out
    }

    pub fn square_sites(&self) -> Vec<SquareSite> {
        let mut out = Vec::new();
        for f in self.faces() {
            if f.len() != 4 {
                continue;
            }
            let edges = [f[0].edge, f[1].edge, f[2].edge, f[3].edge];
            let vertices = [
                self.dart_vertex(f[0]),
                self.dart_vertex(f[1]),
                self.dart_vertex(f[2]),
                self.dart_vertex(f[3]),
            ];
            let distinct_e: BTreeSet<_> = edges.iter().collect();
            let distinct_v: BTreeSet<_> = vertices.iter().collect();
            if distinct_e.len() == 4 && distinct_v.len() == 4 {
                out.push(SquareSite { edges, vertices });
            }
        }
        out
    }

    /// Every applicable reduction: all loops, then digons, then squares.
    pub fn reductions(&self) -> Vec<Reduction> {
        if self.is_empty() {
            return vec![Reduction::Empty];
        }
        let mut out: Vec<Reduction> = self.loops().map(Reduction::FreeLoop).collect();
        out.extend(self.digon_sites().into_iter().map(Reduction::DigonFace));
        out.extend(self.square_sites().into_iter().map(Reduction::SquareFace));
        out
    }

    /// The preferred reduction: an innermost free loop, else a digon face,
    /// else a square face, ties broken by lowest id.
    pub fn find_reduction(&self) -> Result<Reduction> {
        if self.is_empty() {
            return Ok(Reduction::Empty);
        }
        if let Some(l) = self.innermost_loop() {
            return Ok(Reduction::FreeLoop(l));
        }
        if let Some(d) = self.digon_sites().into_iter().next() {
            return Ok(Reduction::DigonFace(d));
        }
        if let Some(s) = self.square_sites().into_iter().next() {
            return Ok(Reduction::SquareFace(s));
        }
        Err(Error::NoReduction)
    }

    /// Lowest-id loop that contains no other loop.
    pub fn innermost_loop(&self) -> Option<EdgeId> {
        let parents: BTreeSet<EdgeId> = self
            .edges
            .values()
            .filter_map(|e| match e {
                Edge::Loop { container } => *container,
                _ => None,
            })
            .collect();
        self.loops().find(|l| !parents.contains(l))
    }

    pub fn zip_site(&self, mid: EdgeId) -> Result<ZipSite> {
        let Some(Edge::Arc { tail, head }) = self.edges.get(&mid).copied() else {
            return Err(Error::InvalidMove(format!(
                "{mid} is not an edge between vertices"
            )));
        };
        let vin = &self.vertices[&head];
        let vout = &self.vertices[&tail];
        let i = vin.slot_of(mid).unwrap();
        let j = vout.slot_of(mid).unwrap();
        Ok(ZipSite {
            vin: head,
            vout: tail,
            mid,
            a_lo: vin.edges[(i + 1) % 3],
            b_lo: vin.edges[(i + 2) % 3],
            b_hi: vout.edges[(j + 1) % 3],
            a_hi: vout.edges[(j + 2) % 3],
        })
    }

    pub fn digon_site_at(&self, x: VertexId, y: VertexId) -> Result<DigonSite> {
        self.digon_sites()
            .into_iter()
            .find(|s| s.x == x && s.y == y)
            .ok_or_else(|| Error::InvalidMove(format!("no digon face between {x} and {y}")))
    }

    pub fn remove_loop(&self, l: EdgeId) -> Result<Web> {
        match self.edges.get(&l) {
            Some(Edge::Loop { .. }) => {}
            _ => return Err(Error::InvalidMove(format!("{l} is not a free loop"))),
        }
        let mut w = self.clone();
        w.edges.remove(&l);
        for e in w.edges.values_mut() {
            if let Edge::Loop { container } = e {
                if *container == Some(l) {
                    *container = match self.edges[&l] {
                        Edge::Loop { container } => container,
                        _ => None,
                    };
                }
            }
        }
        Ok(w)
    }

    pub fn add_loop(&self, l: EdgeId) -> Result<Web> {
        if self.edges.contains_key(&l) {
            return Err(Error::InvalidMove(format!("id {l} already in use")));
        }
        let mut w = self.clone();
        w.edges.insert(l, Edge::Loop { container: None });
        Ok(w)
    }

    /// The same web with the nesting record of its loops dropped.
    pub fn unnested(&self) -> Web {
        let mut w = self.clone();
        for e in w.edges.values_mut() {
            if let Edge::Loop { container } = e {
                *container = None;
            }
        }
        w
    }

    /// Remove the digon face, joining `e_in` and `e_out` into one edge.
    pub fn remove_digon(&self, s: &DigonSite) -> Result<(Web, Splice)> {
        let check = self.digon_sites().contains(s);
        if !check {
            return Err(Error::InvalidMove(format!("{s:?} is not a digon face")));
        }
        self.splice(&[s.x, s.y], &s.d, &[(s.e_in, s.e_out)])
    }

    /// Remove the two-vertex piece around `mid`, joining its legs pairwise.
    pub fn unzip(&self, s: &ZipSite) -> Result<(Web, Splice)> {
        if self.zip_site(s.mid)? != *s {
            return Err(Error::InvalidMove(format!("{s:?} does not match the web")));
        }
        self.splice(
            &[s.vin, s.vout],
            &[s.mid],
            &[(s.a_lo, s.a_hi), (s.b_lo, s.b_hi)],
        )
    }

    /// Delete vertices and edges, then continue each edge that entered a
    /// deleted vertex along its partner from `joins`. New edges take the
    /// smallest id among their constituents.
    fn splice(
        &self,
        remove: &[VertexId],
        delete: &[EdgeId],
        joins: &[(EdgeId, EdgeId)],
    ) -> Result<(Web, Splice)> {
        let removed: BTreeSet<VertexId> = remove.iter().copied().collect();
        let deleted: BTreeSet<EdgeId> = delete.iter().copied().collect();
        let next: HashMap<EdgeId, EdgeId> = joins.iter().copied().collect();
        let prev: HashMap<EdgeId, EdgeId> = joins.iter().map(|&(a, b)| (b, a)).collect();

        let mut touched = BTreeSet::new();
        for (&e, edge) in &self.edges {
            if let Edge::Arc { tail, head } = edge {
                if !deleted.contains(&e) && (removed.contains(tail) || removed.contains(head)) {
                    touched.insert(e);
                }
            }
        }
        // every touched edge must be continued through each removed end
        for &e in &touched {
            let Edge::Arc { tail, head } = self.edges[&e] else {
                unreachable!()
            };
            if removed.contains(&head) && !next.contains_key(&e) {
                return Err(Error::InvalidMove(format!(
                    "edge {e} dangles at removed vertex"
                )));
            }
            if removed.contains(&tail) && !prev.contains_key(&e) {
                return Err(Error::InvalidMove(format!(
                    "edge {e} dangles at removed vertex"
                )));
            }
        }

        let mut splice = Splice::new();
        let mut used = BTreeSet::new();
        let mut new_edges: BTreeMap<EdgeId, Edge> = self
            .edges
            .iter()
            .filter(|(e, _)| !deleted.contains(e) && !touched.contains(e))
            .map(|(e, x)| (*e, *x))
            .collect();
        let mut rename: HashMap<EdgeId, EdgeId> = HashMap::new();

        // open chains start at an edge whose tail survives
        for &start in &touched {
            let Edge::Arc { tail, .. } = self.edges[&start] else {
                unreachable!()
            };
            if removed.contains(&tail) {
                continue;
            }
            let mut chain = vec![start];
            let mut cur = start;
            while let Some(&n) = next.get(&cur) {
                chain.push(n);
                cur = n;
            }
            let Edge::Arc { head, .. } = self.edges[chain.last().unwrap()] else {
                unreachable!()
            };
            let id = *chain.iter().min().unwrap();
            new_edges.insert(id, Edge::Arc { tail, head });
            rename.insert(start, id);
            rename.insert(*chain.last().unwrap(), id);
            used.extend(chain.iter().copied());
            splice.insert(id, chain);
        }
        // closed chains become loops
        for &start in &touched {
            if used.contains(&start) {
                continue;
            }
            let mut chain = vec![start];
            let mut cur = start;
            loop {
                let n = *next
                    .get(&cur)
                    .ok_or_else(|| Error::InvalidMove("broken chain".into()))?;
                if n == start {
                    break;
                }
                chain.push(n);
                cur = n;
            }
            used.extend(chain.iter().copied());
            let id = *chain.iter().min().unwrap();
            new_edges.insert(id, Edge::Loop { container: None });
            splice.insert(id, chain);
        }

        let mut new_vertices = BTreeMap::new();
        for (&v, vert) in &self.vertices {
            if removed.contains(&v) {
                continue;
            }
            let mut vert = *vert;
            for e in vert.edges.iter_mut() {
                if let Some(&r) = rename.get(e) {
                    *e = r;
                }
            }
            new_vertices.insert(v, vert);
        }
        Ok((Web::from_parts_unchecked(new_vertices, new_edges), splice))
    }

    /// The two resolutions of a square face. Resolution `k` keeps the
    /// square edges `k+1` and `k+3` (mod 4) as the strands and drops edges
    /// `k` and `k+2`.
    pub fn resolve_square(&self, s: &SquareSite, k: usize) -> Result<Web> {
        let (first, _) = self.unzip(&self.zip_site(s.edges[(k + 1) % 4])?)?;
        let merged = s.edges[k].min(s.edges[(k + 2) % 4]);
        let digon = first
            .digon_sites()
            .into_iter()
            .find(|d| d.d.contains(&merged) && d.d.contains(&s.edges[(k + 3) % 4]))
            .ok_or_else(|| Error::InvalidMove("square resolution lost its digon".into()))?;
        Ok(first.remove_digon(&digon)?.0)
    }

    /// Apply a relabeling. `vmap` sends vertex ids to `(new id, slot shift)`,
    /// where the new rotation is the old one rotated by the shift.
    pub fn relabel(
        &self,
        vmap: &BTreeMap<VertexId, (VertexId, u8)>,
        emap: &BTreeMap<EdgeId, EdgeId>,
    ) -> Result<Web> {
        let ve = |e: &EdgeId| emap.get(e).copied().unwrap_or(*e);
        let vv = |v: &VertexId| vmap.get(v).map(|x| x.0).unwrap_or(*v);
        let mut vertices = BTreeMap::new();
        for (v, vert) in &self.vertices {
            let shift = vmap.get(v).map(|x| x.1 as usize).unwrap_or(0);
            let edges: [EdgeId; 3] = std::array::from_fn(|s| ve(&vert.edges[(s + shift) % 3]));
            if vertices
                .insert(
                    vv(v),
                    Vertex {
                        out: vert.out,
                        edges,
                    },
                )
                .is_some()
            {
                return Err(Error::InvalidMove("relabeling is not injective".into()));
            }
        }
        let mut edges = BTreeMap::new();
        for (e, edge) in &self.edges {
            let edge = match *edge {
                Edge::Arc { tail, head } => Edge::Arc {
                    tail: vv(&tail),
                    head: vv(&head),
                },
                Edge::Loop { container } => Edge::Loop {
                    container: container.map(|c| ve(&c)),
                },
            };
            if edges.insert(ve(e), edge).is_some() {
                return Err(Error::InvalidMove("relabeling is not injective".into()));
            }
        }
        let w = Web { vertices, edges };
        w.validate()?;
        Ok(w)
    }

    /// Disjoint union; ids of `other` must not collide with ours.
    pub fn disjoint_union(&self, other: &Web) -> Result<Web> {
        let mut w = self.clone();
        for (v, x) in &other.vertices {
            if w.vertices.insert(*v, *x).is_some() {
                return Err(Error::InvalidWeb(format!("vertex id {v} collides")));
            }
        }
        for (e, x) in &other.edges {
            if w.edges.insert(*e, *x).is_some() {
                return Err(Error::InvalidWeb(format!("edge id {e} collides")));
            }
        }
        Ok(w)
    }

    /// Shift every vertex and edge id by `offset`.
    pub fn offset_ids(&self, offset: u32) -> Web {
        let vmap = self
            .vertices
            .keys()
            .map(|v| (*v, (v + offset, 0)))
            .collect();
        let emap = self.edges.keys().map(|e| (*e, e + offset)).collect();
        self.relabel(&vmap, &emap)
            .expect("offset relabeling is injective")
    }
}

/// Standard small webs used throughout tests and examples.
pub mod samples {
    use super::*;

    /// Two vertices joined by three edges.
    pub fn theta() -> Web {
        // sink 0 on the left, source 1 on the right; edges 10 (top),
        // 11 (middle), 12 (bottom)
        Web::from_rotations([(0, false, [12, 11, 10]), (1, true, [10, 11, 12])], []).unwrap()
    }

    /// A ring of `n + 1` digons. Digon `i` joins source `2i + 1` to sink
    /// `2i`; a connector runs from each source to the previous digon's sink.
    /// `theta_chain(0)` is the theta web. Returns the web and its vertex count.
    pub fn theta_chain(n: usize) -> (Web, usize) {
        let k = n + 1;
        let mut verts = Vec::new();
        for i in 0..k {
            let t = 2 * i as u32;
            let s = t + 1;
            let outer = 100 + 2 * i as u32;
            let inner = outer + 1;
            let conn_in = 200 + i as u32;
            let conn_out = 200 + ((i + k - 1) % k) as u32;
            verts.push((t, false, [outer, conn_in, inner]));
            verts.push((s, true, [outer, inner, conn_out]));
        }
        (Web::from_rotations(verts, []).unwrap(), 2 * k)
    }

    /// The cube web: eight vertices, twelve edges, six square faces.
    pub fn cube() -> Web {
        // outer square a0..a3 (ccw), inner square b0..b3, spokes a_i-b_i.
        // a_i is a source for even i, b_i a source for odd i.
        // Edge ids: outer 0..3 (a_i - a_{i+1}), inner 4..7, spokes 8..11.
        let mut verts = Vec::new();
        for i in 0..4u32 {
            let prev = (i + 3) % 4;
            let a_out = i % 2 == 0;
            // a_i sits on the outer square; ccw around it: edge to
            // a_{i+1}, spoke inward, edge to a_{i-1}.
            verts.push((i, a_out, [i, 8 + i, prev]));
            // b_i: ccw order is edge to b_{i-1}, spoke outward, edge to b_{i+1}
            verts.push((4 + i, !a_out, [4 + prev, 8 + i, 4 + i]));
        }
        Web::from_rotations(verts, []).unwrap()
    }
}
