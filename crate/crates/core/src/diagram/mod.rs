//! Oriented link diagrams given as planar diagram (PD) codes.
//!
//! A crossing `X(i,j,k,l)` lists its four arc labels counterclockwise,
//! starting with the incoming under-strand `i`; the under-strand runs from
//! `i` to `k`. The over-strand runs either `j -> l` or `l -> j`; which one is
//! inferred from the way arc labels are shared between crossings.

mod pd;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::web::{EdgeId, Web};
use crate::{Error, Result};

pub use pd::parse_pd;

/// Edge id given to the middle edge of the web piece at crossing `c` is
/// `MID_BASE + c`; arc labels must stay below it.
pub const MID_BASE: u32 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    /// Arc labels counterclockwise from the incoming under-strand.
    pub arcs: [u32; 4],
    /// `true` when the over-strand runs from `arcs[1]` to `arcs[3]`.
    pub over_forward: bool,
}

impl Crossing {
    /// Positive iff turning the under-strand a quarter turn counterclockwise
    /// gives the direction of the over-strand.
    pub fn sign(&self) -> Sign {
        if self.over_forward {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// The two incoming positions.
    fn incoming(&self) -> [usize; 2] {
        if self.over_forward {
            [0, 1]
        } else {
            [0, 3]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
}

/// JSON form: PD tuples, optionally with the over-strand directions, plus a
/// count of crossingless circle components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub crossings: Vec<[u32; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<bool>>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub free_loops: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl LinkDiagram {
    /// Build from PD tuples, inferring orientations of over-strands.
    pub fn from_pd(tuples: &[[u32; 4]], free_loops: usize) -> Result<Self> {
        let dirs = infer_orientation(tuples)?;
        Self::with_orientation(tuples, &dirs, free_loops)
    }

    /// Build from PD tuples with explicit over-strand directions.
    pub fn with_orientation(
        tuples: &[[u32; 4]],
        over_forward: &[bool],
        free_loops: usize,
    ) -> Result<Self> {
        if tuples.len() != over_forward.len() {
            return Err(Error::InvalidDiagram(
                "orientation list has the wrong length".into(),
            ));
        }
        let d = Self {
            crossings: tuples
                .iter()
                .zip(over_forward)
                .map(|(a, f)| Crossing {
                    arcs: *a,
                    over_forward: *f,
                })
                .collect(),
            free_loops,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Crossingless unlink with `n` components.
    pub fn unlink(n: usize) -> Self {
        Self {
            crossings: Vec::new(),
            free_loops: n,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.free_loops == 0
    }

    pub fn crossing_signs(&self) -> Vec<Sign> {
        self.crossings.iter().map(Crossing::sign).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.crossing_signs()
            .iter()
            .map(|s| if *s == Sign::Positive { 1 } else { -1 })
            .sum()
    }

    /// `(p_plus, p_minus)`
    pub fn sign_counts(&self) -> (usize, usize) {
        let p = self
            .crossing_signs()
            .iter()
            .filter(|s| **s == Sign::Positive)
            .count();
        (p, self.len() - p)
    }

    /// Mirror image: every crossing switched. The under-strand becomes the
    /// old over-strand, so tuples are rotated to start at its incoming end.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [i, j, k, l] = c.arcs;
                if c.over_forward {
                    // old over-strand j -> l becomes the under-strand
                    Crossing {
                        arcs: [j, k, l, i],
                        over_forward: false,
                    }
                } else {
                    Crossing {
                        arcs: [l, i, j, k],
                        over_forward: true,
                    }
                }
            })
            .collect();
        Self {
            crossings,
            free_loops: self.free_loops,
        }
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            crossings: self.crossings.iter().map(|c| c.arcs).collect(),
            orientation: Some(self.crossings.iter().map(|c| c.over_forward).collect()),
            free_loops: self.free_loops,
        }
    }

    pub fn from_json(j: &DiagramJson) -> Result<Self> {
        match &j.orientation {
            Some(o) => Self::with_orientation(&j.crossings, o, j.free_loops),
            None => Self::from_pd(&j.crossings, j.free_loops),
        }
    }

    /// PD text, with crossingless components written as `O`.
    pub fn to_pd_string(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, d, e] = c.arcs;
                format!("X({a},{b},{d},{e})")
            })
            .collect();
        parts.extend(std::iter::repeat_n("O".to_string(), self.free_loops));
        parts.join(" ")
    }

    /// Endpoints `(crossing, position)` of every arc label, in order.
    fn endpoints(&self) -> BTreeMap<u32, Vec<(usize, usize)>> {
        let mut m: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for (p, a) in x.arcs.iter().enumerate() {
                m.entry(*a).or_default().push((c, p));
            }
        }
        m
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDiagram(m));
        let ends = self.endpoints();
        for (a, e) in &ends {
            if *a >= MID_BASE {
                return bad(format!("arc label {a} is too large"));
            }
            if e.len() != 2 {
                return bad(format!("arc {a} has {} endpoints, expected 2", e.len()));
            }
            let heads = e
                .iter()
                .filter(|(c, p)| self.crossings[*c].incoming().contains(p))
                .count();
            if heads != 1 {
                return bad(format!("arc {a} is not consistently oriented"));
            }
        }
        self.check_planar()
    }

    /// Euler's formula on the 4-valent graph, one connected component at a time.
    fn check_planar(&self) -> Result<()> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        let ends = self.endpoints();
        let other = |c: usize, p: usize| -> (usize, usize) {
            let e = &ends[&self.crossings[c].arcs[p]];
            if e[0] == (c, p) {
                e[1]
            } else {
                e[0]
            }
        };
        // components via union-find over crossings
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in ends.values() {
            let (a, b) = (find(&mut parent, e[0].0), find(&mut parent, e[1].0));
            parent[a] = b;
        }
        let mut seen = BTreeSet::new();
        let mut faces: HashMap<usize, i64> = HashMap::new();
        for c in 0..n {
            for p in 0..4 {
                if seen.contains(&(c, p)) {
                    continue;
                }
                let root = find(&mut parent, c);
                *faces.entry(root).or_default() += 1;
                let mut cur = (c, p);
                while seen.insert(cur) {
                    let (oc, op) = other(cur.0, cur.1);
                    cur = (oc, (op + 1) % 4);
                }
            }
        }
        let mut ve: HashMap<usize, (i64, i64)> = HashMap::new();
        for c in 0..n {
            let root = find(&mut parent, c);
            ve.entry(root).or_default().0 += 1;
        }
        for e in ends.values() {
            let root = find(&mut parent, e[0].0);
            ve.entry(root).or_default().1 += 1;
        }
        for (root, (v, e)) in ve {
            if v - e + faces[&root] != 2 {
                return Err(Error::InvalidDiagram("PD data is not planar".into()));
            }
        }
        Ok(())
    }

    /// Number of link components, crossingless circles included.
    pub fn component_count(&self) -> usize {
        let ends = self.endpoints();
        // follow each arc's head to the outgoing arc on the same strand
        let mut next: HashMap<u32, u32> = HashMap::new();
        for x in &self.crossings {
            let [i, j, k, l] = x.arcs;
            next.insert(i, k);
            if x.over_forward {
                next.insert(j, l);
            } else {
                next.insert(l, j);
            }
        }
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &a in ends.keys() {
            if seen.contains(&a) {
                continue;
            }
            count += 1;
            let mut cur = a;
            while seen.insert(cur) {
                cur = next[&cur];
            }
        }
        count + self.free_loops
    }

    /// The web obtained by giving the crossings in `j` their 1-flattening and
    /// all others their 0-flattening. At a positive crossing the
    /// 0-flattening is the oriented smoothing and the 1-flattening is the
    /// two-vertex web piece; at a negative crossing it is the other way round.
    pub fn flatten(&self, j: &BTreeSet<usize>) -> Result<Web> {
        if let Some(&c) = j.iter().find(|c| **c >= self.len()) {
            return Err(Error::InvalidDiagram(format!("no crossing {c}")));
        }
        let full = self.full_web()?;
        let mut w = full;
        for (c, x) in self.crossings.iter().enumerate() {
            let piece = (x.sign() == Sign::Positive) == j.contains(&c);
            if !piece {
                let site = w.zip_site(MID_BASE + c as u32)?;
                w = w.unzip(&site)?.0;
            }
        }
        for n in 0..self.free_loops {
            w = w.add_loop(MID_BASE - 1 - n as u32)?;
        }
        Ok(w)
    }

    /// Same as [`flatten`](Self::flatten) with `j` given as a bitmask.
    pub fn flatten_mask(&self, mask: u64) -> Result<Web> {
        let j = (0..self.len()).filter(|c| mask >> c & 1 == 1).collect();
        self.flatten(&j)
    }

    /// Every crossing replaced by its web piece. Vertex `2c` is the sink and
    /// `2c + 1` the source of crossing `c`.
    fn full_web(&self) -> Result<Web> {
        let mut verts = Vec::with_capacity(2 * self.len());
        for (c, x) in self.crossings.iter().enumerate() {
            let [i, j, k, l] = x.arcs;
            let mid: EdgeId = MID_BASE + c as u32;
            let (vin, vout) = match x.sign() {
                Sign::Positive => ([j, mid, i], [k, l, mid]),
                Sign::Negative => ([mid, l, i], [j, k, mid]),
            };
            verts.push((2 * c as u32, false, vin));
            verts.push((2 * c as u32 + 1, true, vout));
        }
        Web::from_rotations(verts, [])
    }
}

/// Decide the over-strand direction at every crossing. Each arc has one
/// incoming and one outgoing end; under-strand ends are known, and the
/// constraint propagates along arcs. Components that never pass under are
/// oriented so that labels increase along the strand.
fn infer_orientation(tuples: &[[u32; 4]]) -> Result<Vec<bool>> {
    let mut ends: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, t) in tuples.iter().enumerate() {
        for (p, a) in t.iter().enumerate() {
            ends.entry(*a).or_default().push((c, p));
        }
    }
    for (a, e) in &ends {
        if e.len() != 2 {
            return Err(Error::InvalidDiagram(format!(
                "arc {a} has {} endpoints, expected 2",
                e.len()
            )));
        }
    }
    let n = tuples.len();
    let mut dir: Vec<Option<bool>> = vec![None; n];
    // whether position p of crossing c is an incoming end, given dir
    let is_in = |p: usize, f: bool| match p {
        0 => true,
        2 => false,
        1 => f,
        _ => !f,
    };
    let other = |c: usize, p: usize| -> (usize, usize) {
        let e = &ends[&tuples[c][p]];
        if e[0] == (c, p) {
            e[1]
        } else {
            e[0]
        }
    };
    let mut queue: Vec<(usize, usize, bool)> = Vec::new();
    // seed from under-strand ends
    for c in 0..n {
        for p in [0, 2] {
            let (oc, op) = other(c, p);
            queue.push((oc, op, p != 0));
        }
    }
    let mut seed = 0;
    loop {
        while let Some((c, p, want_in)) = queue.pop() {
            let f = match p {
                0 | 2 => {
                    if (p == 0) != want_in {
                        return Err(Error::InvalidDiagram(format!(
                            "inconsistent orientation at crossing {}",
                            c + 1
                        )));
                    }
                    continue;
                }
                1 => want_in,
                _ => !want_in,
            };
            match dir[c] {
                Some(g) if g != f => {
                    return Err(Error::InvalidDiagram(format!(
                        "inconsistent orientation at crossing {}",
                        c + 1
                    )))
                }
                Some(_) => {}
                None => {
                    dir[c] = Some(f);
                    for q in [1, 3] {
                        let (oc, op) = other(c, q);
                        queue.push((oc, op, !is_in(q, f)));
                    }
                }
            }
        }
        while seed < n && dir[seed].is_some() {
            seed += 1;
        }
        if seed == n {
            break;
        }
        // a strand that only passes over: labels increase along it
        let [_, j, _, l] = tuples[seed];
        let forward = l == j + 1 || j > l + 1;
        queue.push((seed, 1, forward));
    }
    Ok(dir.into_iter().map(|d| d.unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(s: &str) -> LinkDiagram {
        parse_pd(s).unwrap()
    }

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    #[test]
    fn trefoil_signs() {
        let t = pd(TREFOIL);
        assert_eq!(t.crossing_signs(), vec![Sign::Positive; 3]);
        assert_eq!(t.mirror().crossing_signs(), vec![Sign::Negative; 3]);
        assert_eq!(t.component_count(), 1);
        assert_eq!(pd("").crossing_signs(), vec![]);
    }

    #[test]
    fn kinks() {
        assert_eq!(pd("X(1,2,2,1)").crossing_signs(), vec![Sign::Positive]);
        assert_eq!(pd("X(1,1,2,2)").crossing_signs(), vec![Sign::Negative]);
    }

    #[test]
    fn positive_kink_flattenings() {
        let k = pd("X(1,2,2,1)");
        let w0 = k.flatten(&BTreeSet::new()).unwrap();
        assert_eq!(w0.loop_count(), 2);
        assert!(w0.vertices().is_empty());
        let w1 = k.flatten(&BTreeSet::from([0])).unwrap();
        assert_eq!(w1.vertices().len(), 2);
        assert_eq!(w1.edges().len(), 3);
        assert!(w1.is_isomorphic(&crate::web::samples::theta()));
    }

    #[test]
    fn all_flattenings_are_valid_webs() {
        for s in [TREFOIL, "X(1,2,2,1)", "X(1,1,2,2)", "X(4,1,3,2) X(2,3,1,4)"] {
            let d = pd(s);
            for m in 0..1u64 << d.len() {
                d.flatten_mask(m).unwrap().validate().unwrap();
            }
        }
    }

    #[test]
    fn unzip_of_web_piece_matches_smoothing() {
        let d = pd(TREFOIL);
        for m in 0..8u64 {
            for b in 0..3 {
                let piece_bit = d.crossing_signs()[b] == Sign::Positive;
                let with = if piece_bit { m | 1 << b } else { m & !(1 << b) };
                let without = with ^ (1 << b);
                let big = d.flatten_mask(with).unwrap();
                let site = big.zip_site(MID_BASE + b as u32).unwrap();
                assert_eq!(
                    big.unzip(&site).unwrap().0,
                    d.flatten_mask(without).unwrap()
                );
            }
        }
    }

    #[test]
    fn mirror_is_involution_and_negates_writhe() {
        let t = pd(TREFOIL);
        assert_eq!(t.mirror().mirror(), t);
        assert_eq!(t.mirror().writhe(), -t.writhe());
        t.mirror().validate().unwrap();
    }

    #[test]
    fn json_round_trip() {
        let t = pd(TREFOIL);
        let s = serde_json::to_string(&t.to_json()).unwrap();
        let back: DiagramJson = serde_json::from_str(&s).unwrap();
        assert_eq!(LinkDiagram::from_json(&back).unwrap(), t);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_pd("X(1,2,3)").is_err());
        assert!(parse_pd("X(1,2,3,4)").is_err());
        assert!(parse_pd("X(1,1,2,2) X(3,3,4,5)").is_err());
        // each label twice but the 4-valent map has genus one
        assert!(parse_pd("X(1,2,3,4) X(3,1,4,2)").is_err());
    }
}
