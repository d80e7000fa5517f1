use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::moves::{Local, Move, Saddle};
use super::movie::FoamMovie;
use crate::web::{EdgeId, VertexId};
use crate::{Error, Result};

/// A facet of a closed pre-foam: a connected surface with `genus`, `dots`
/// and `boundary` boundary circles, each glued to a singular circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Facet {
    pub genus: u32,
    pub dots: u32,
    pub boundary: u32,
}

impl Facet {
    /// Euler characteristic with the dots punctured out.
    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64 - self.dots as i64
    }
}

/// Abstract closed foam: facets, and singular circles each listing the
/// facets of its three annuli in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PreFoam {
    pub facets: Vec<Facet>,
    pub circles: Vec<[usize; 3]>,
}

impl PreFoam {
    /// Build from `(genus, dots)` per facet; boundary counts follow from
    /// the circles.
    pub fn new(facets: &[(u32, u32)], circles: Vec<[usize; 3]>) -> Result<Self> {
        let mut f: Vec<Facet> = facets
            .iter()
            .map(|&(genus, dots)| Facet {
                genus,
                dots,
                boundary: 0,
            })
            .collect();
        for c in &circles {
            for &i in c {
                f.get_mut(i)
                    .ok_or_else(|| Error::MalformedFoam(format!("circle uses missing facet {i}")))?
                    .boundary += 1;
            }
        }
        Ok(Self { facets: f, circles })
    }

    /// Closed surface of the given genus with dots.
    pub fn surface(genus: u32, dots: u32) -> Self {
        Self::new(&[(genus, dots)], vec![]).unwrap()
    }

    /// Three dotted discs glued along one circle, in cyclic order.
    pub fn theta(a: u32, b: u32, c: u32) -> Self {
        Self::new(&[(0, a), (0, b), (0, c)], vec![[0, 1, 2]]).unwrap()
    }

    pub fn euler(&self) -> i64 {
        self.facets.iter().map(Facet::euler).sum()
    }

    pub fn disjoint_union(&self, other: &PreFoam) -> PreFoam {
        let n = self.facets.len();
        let mut facets = self.facets.clone();
        facets.extend(other.facets.iter().copied());
        let mut circles = self.circles.clone();
        circles.extend(other.circles.iter().map(|c| c.map(|i| i + n)));
        PreFoam { facets, circles }
    }

    /// Reverse the cyclic order of the annuli at one circle.
    pub fn reverse_circle(&self, k: usize) -> PreFoam {
        let mut p = self.clone();
        p.circles[k].swap(1, 2);
        p
    }

    pub fn add_dots(&self, facet: usize, n: u32) -> PreFoam {
        let mut p = self.clone();
        p.facets[facet].dots += n;
        p
    }

    /// The integer value of the closed foam.
    ///
    /// Surgery along the three annuli of every singular circle leaves a
    /// theta foam per circle and one closed surface per facet. A sphere is
    /// nonzero only with two dots (value -1), a torus only with none
    /// (value 3), and theta foams are nonzero only when the dots near the
    /// circle are a permutation of (0, 1, 2), with the sign of the
    /// permutation. The sum runs over those permutations.
    pub fn evaluate(&self) -> BigInt {
        let mut need = Vec::with_capacity(self.facets.len());
        let mut prefactor = BigInt::from(if self.circles.len().is_multiple_of(2) {
            1
        } else {
            -1
        });
        for f in &self.facets {
            match f.genus {
                0 => {
                    if f.dots > 2 {
                        return BigInt::from(0);
                    }
                    prefactor = -prefactor;
                    need.push(2 - f.dots as i64);
                }
                1 => {
                    if f.dots > 0 {
                        return BigInt::from(0);
                    }
                    prefactor *= 3;
                    need.push(0);
                }
                _ => return BigInt::from(0),
            }
        }
        // each circle contributes 3 to the total need
        if need.iter().sum::<i64>() != 3 * self.circles.len() as i64 {
            return BigInt::from(0);
        }
        let mut slots_left: Vec<i64> = self.facets.iter().map(|f| f.boundary as i64).collect();
        let count = search(&self.circles, 0, &mut need, &mut slots_left);
        prefactor * count
    }
}

/// Permutations of (0, 1, 2) with their signs; an entry `j` on a slot means
/// the slot's side of the surgery carries `2 - j` dots.
const PERMS: [([i64; 3], i64); 6] = [
    ([0, 1, 2], 1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([0, 2, 1], -1),
    ([2, 1, 0], -1),
    ([1, 0, 2], -1),
];

fn search(circles: &[[usize; 3]], k: usize, need: &mut [i64], left: &mut [i64]) -> i64 {
    if k == circles.len() {
        return i64::from(need.iter().all(|n| *n == 0));
    }
    let c = circles[k];
    for &f in &c {
        left[f] -= 1;
    }
    let mut total = 0;
    for (perm, sign) in PERMS {
        for s in 0..3 {
            need[c[s]] -= 2 - perm[s];
        }
        if c.iter().all(|&f| need[f] >= 0 && need[f] <= 2 * left[f]) {
            total += sign * search(circles, k + 1, need, left);
        }
        for s in 0..3 {
            need[c[s]] += 2 - perm[s];
        }
    }
    for &f in &c {
        left[f] += 1;
    }
    total
}

/// Union-find with path halving.
#[derive(Default)]
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn make(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a] = b;
        }
        b
    }
}

#[derive(Clone, Copy)]
struct VertexState {
    arc: usize,
    strips: [usize; 3],
    out: bool,
}

/// Sweeps through a movie keeping, for the current frame, which facet each
/// edge lies on and which singular arc and strips each vertex carries.
#[derive(Default)]
pub(crate) struct Extractor {
    facets: Dsu,
    chi: Vec<i64>,
    dots: Vec<u32>,
    arcs: Dsu,
    strips: Dsu,
    strip_facet: Vec<usize>,
    strip_arc: Vec<usize>,
    edges: HashMap<EdgeId, usize>,
    vertices: HashMap<VertexId, VertexState>,
    /// every vertex ever created: (out, strips)
    history: Vec<(bool, [usize; 3], usize)>,
}

impl Extractor {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    fn new_facet(&mut self, chi: i64) -> usize {
        self.chi.push(chi);
        self.dots.push(0);
        self.facets.make()
    }

    fn tok(&self, e: EdgeId) -> Result<usize> {
        self.edges
            .get(&e)
            .copied()
            .ok_or_else(|| Error::MalformedFoam(format!("edge {e} is not in the current frame")))
    }

    pub(crate) fn apply(&mut self, mv: &Move) -> Result<()> {
        match mv {
            Move::Birth { lp } => {
                let f = self.new_facet(1);
                if self.edges.insert(*lp, f).is_some() {
                    return Err(Error::MalformedFoam(format!("circle {lp} already present")));
                }
            }
            Move::Death { lp } => {
                let f = self
                    .edges
                    .remove(lp)
                    .ok_or_else(|| Error::MalformedFoam(format!("no circle {lp} to cap")))?;
                self.chi[f] += 1;
            }
            Move::Dot { edge } => {
                let f = self.tok(*edge)?;
                self.dots[f] += 1;
            }
            Move::Saddle { saddle } => match *saddle {
                Saddle::Merge { a, b } => {
                    let fa = self.tok(a)?;
                    let fb = self.tok(b)?;
                    self.edges.remove(&a.max(b));
                    let r = self.facets.union(fa, fb);
                    self.chi[r] -= 1;
                    self.edges.insert(a.min(b), r);
                }
                Saddle::Split { lp, new } => {
                    let f = self.tok(lp)?;
                    self.chi[f] -= 1;
                    self.edges.insert(new, f);
                }
            },
            Move::Zip { local } | Move::DigonCup { local } => self.create(local)?,
            Move::Unzip { local } | Move::DigonCap { local } => self.remove(local)?,
            Move::Frame { relabel } => {
                let edges = std::mem::take(&mut self.edges);
                self.edges = edges
                    .into_iter()
                    .map(|(e, t)| (relabel.edge(e), t))
                    .collect();
                let verts = std::mem::take(&mut self.vertices);
                self.vertices = verts
                    .into_iter()
                    .map(|(v, mut st)| {
                        let (w, shift) = relabel.vertex(v);
                        let old = st.strips;
                        for s in 0..3 {
                            st.strips[s] = old[(s + shift as usize) % 3];
                        }
                        (w, st)
                    })
                    .collect();
            }
        }
        Ok(())
    }

    fn create(&mut self, local: &Local) -> Result<()> {
        // sheets of the smaller web's edges continue into their parts
        for m in &local.merged {
            let f = self.edges.remove(&m.id).ok_or_else(|| {
                Error::MalformedFoam(format!("edge {} missing before creation", m.id))
            })?;
            for &p in &m.parts {
                self.edges.insert(p, f);
            }
        }
        for &d in &local.discs {
            let f = self.new_facet(1);
            self.edges.insert(d, f);
        }
        let arc = self.arcs.make();
        let mut states = [(local.sink, false), (local.source, true)].map(|((v, rot), out)| {
            let strips = rot.map(|e| {
                let s = self.strips.make();
                self.strip_facet.push(self.edges[&e]);
                self.strip_arc.push(arc);
                s
            });
            (v, VertexState { arc, strips, out })
        });
        for (a, b) in local.pairs {
            self.strips.union(
                states[0].1.strips[a as usize],
                states[1].1.strips[b as usize],
            );
        }
        for (v, st) in states.iter_mut() {
            self.history.push((st.out, st.strips, st.arc));
            if self.vertices.insert(*v, *st).is_some() {
                return Err(Error::MalformedFoam(format!("vertex {v} already present")));
            }
        }
        Ok(())
    }

    fn remove(&mut self, local: &Local) -> Result<()> {
        let sink = self.take_vertex(local.sink.0)?;
        let source = self.take_vertex(local.source.0)?;
        self.arcs.union(sink.arc, source.arc);
        for (a, b) in local.pairs {
            self.strips
                .union(sink.strips[a as usize], source.strips[b as usize]);
        }
        for &d in &local.discs {
            self.edges
                .remove(&d)
                .ok_or_else(|| Error::MalformedFoam(format!("disc edge {d} missing")))?;
        }
        for m in &local.merged {
            let mut f = None;
            for p in &m.parts {
                let t = self.edges.remove(p).ok_or_else(|| {
                    Error::MalformedFoam(format!("edge {p} missing before removal"))
                })?;
                f = Some(match f {
                    None => self.facets.find(t),
                    Some(r) => self.facets.union(r, t),
                });
            }
            let f = f.ok_or_else(|| Error::MalformedFoam("empty merge".into()))?;
            self.chi[f] += i64::from(!m.is_loop) - m.parts.len() as i64;
            self.edges.insert(m.id, f);
        }
        Ok(())
    }

    fn take_vertex(&mut self, v: VertexId) -> Result<VertexState> {
        self.vertices
            .remove(&v)
            .ok_or_else(|| Error::MalformedFoam(format!("vertex {v} missing")))
    }

    pub(crate) fn finish(mut self) -> Result<PreFoam> {
        if !self.edges.is_empty() || !self.vertices.is_empty() {
            return Err(Error::NotClosed);
        }
        // facets
        let n = self.chi.len();
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut chi = Vec::new();
        let mut dots = Vec::new();
        for t in 0..n {
            let r = self.facets.find(t);
            let i = *index.entry(r).or_insert_with(|| {
                chi.push(0);
                dots.push(0);
                chi.len() - 1
            });
            chi[i] += self.chi[t];
            dots[i] += self.dots[t];
        }
        // strips grouped by singular circle
        let mut circle_strips: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for s in 0..self.strip_facet.len() {
            let root = self.strips.find(s);
            let c = self.arcs.find(self.strip_arc[s]);
            let list = circle_strips.entry(c).or_default();
            if !list.contains(&root) {
                list.push(root);
            }
        }
        let mut strip_facet_root: HashMap<usize, usize> = HashMap::new();
        for s in 0..self.strip_facet.len() {
            let root = self.strips.find(s);
            let f = index[&self.facets.find(self.strip_facet[s])];
            match strip_facet_root.insert(root, f) {
                Some(g) if g != f => {
                    return Err(Error::MalformedFoam("strip lies on two facets".into()));
                }
                _ => {}
            }
        }
        let mut order: BTreeMap<usize, [usize; 3]> = BTreeMap::new();
        for (out, strips, arc) in &self.history {
            let c = self.arcs.find(*arc);
            let r = strips.map(|s| self.strips.find(s));
            let cyc = if *out { r } else { [r[0], r[2], r[1]] };
            match order.get(&c) {
                None => {
                    order.insert(c, cyc);
                }
                Some(prev) => {
                    if !same_cycle(prev, &cyc) {
                        return Err(Error::MalformedFoam(
                            "cyclic orders disagree along a circle".into(),
                        ));
                    }
                }
            }
        }
        let mut boundary = vec![0u32; chi.len()];
        let mut circles = Vec::new();
        for (c, strips) in &circle_strips {
            if strips.len() != 3 {
                return Err(Error::MalformedFoam(format!(
                    "singular circle has {} strip classes",
                    strips.len()
                )));
            }
            let cyc = order[c].map(|s| strip_facet_root[&s]);
            for f in cyc {
                boundary[f] += 1;
            }
            circles.push(cyc);
        }
        let mut facets = Vec::new();
        for i in 0..chi.len() {
            let g2 = 2 - chi[i] - boundary[i] as i64;
            if g2 < 0 || g2 % 2 != 0 {
                return Err(Error::MalformedFoam(format!(
                    "facet with euler characteristic {} and {} boundary circles",
                    chi[i], boundary[i]
                )));
            }
            facets.push(Facet {
                genus: (g2 / 2) as u32,
                dots: dots[i],
                boundary: boundary[i],
            });
        }
        Ok(PreFoam { facets, circles })
    }
}

fn same_cycle(a: &[usize; 3], b: &[usize; 3]) -> bool {
    (0..3).any(|k| (0..3).all(|i| a[i] == b[(i + k) % 3]))
}

/// A closed foam given as consecutive pieces; each piece is a movie read
/// forwards, or backwards when the flag is set.
pub fn extract_chain(parts: &[(&FoamMovie, bool)]) -> Result<PreFoam> {
    let mut ex = Extractor::new();
    let mut prev: Option<&crate::web::Web> = None;
    for (m, reflected) in parts {
        let (start, end) = if *reflected {
            (m.target(), m.source())
        } else {
            (m.source(), m.target())
        };
        match prev {
            None if !start.is_empty() => return Err(Error::NotClosed),
            Some(p) if !std::ptr::eq(p, &**start) && p != &**start => {
                return Err(Error::FrameMismatch)
            }
            _ => {}
        }
        if *reflected {
            for mv in m.moves().iter().rev() {
                ex.apply(&mv.dual())?;
            }
        } else {
            for mv in m.moves() {
                ex.apply(mv)?;
            }
        }
        prev = Some(end);
    }
    if prev.is_some_and(|p| !p.is_empty()) {
        return Err(Error::NotClosed);
    }
    ex.finish()
}

pub fn extract_prefoam(m: &FoamMovie) -> Result<PreFoam> {
    extract_chain(&[(m, false)])
}

pub fn evaluate_closed(m: &FoamMovie) -> Result<BigInt> {
    Ok(extract_prefoam(m)?.evaluate())
}

/// Value of the closed foam made of the given pieces.
pub fn evaluate_chain(parts: &[(&FoamMovie, bool)]) -> Result<BigInt> {
    Ok(extract_chain(parts)?.evaluate())
}
