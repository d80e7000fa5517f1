//! The cube of flattenings, its totalization into q-graded integer chain
//! complexes, and their homology.

pub mod snf;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{LinkDiagram, Sign, MID_BASE};
use crate::foam::FoamMovie;
use crate::web::{link_bracket, Web};
use crate::webhom::{induced_map, IntMatrix, WebBasis};
use crate::{Error, LaurentPoly, Result};

/// The foam along the cube edge at crossing `b`: a zip if `b` is positive,
/// an unzip if it is negative.
pub fn edge_foam(sign: Sign, from: &Arc<Web>, to: &Arc<Web>, b: usize) -> Result<FoamMovie> {
    let mid = MID_BASE + b as u32;
    match sign {
        Sign::Positive => FoamMovie::zip_into(to, to.zip_site(mid)?),
        Sign::Negative => FoamMovie::identity_arc(from.clone()).unzip(mid),
    }
}

/// One vertex of the cube: the flattening `D_J`, its basis and the q-shift
/// `3 p_minus - 2 p_plus - |J|`.
#[derive(Debug)]
pub struct CubeVertex {
    pub mask: u64,
    pub basis: Arc<WebBasis>,
    pub shift: i64,
}

/// Signed maps along the edges `J -> J + {b}` of the cube.
#[derive(Debug)]
pub struct Cube {
    pub n: usize,
    pub p_plus: usize,
    pub p_minus: usize,
    pub vertices: Vec<CubeVertex>,
    pub edges: BTreeMap<(u64, usize), IntMatrix>,
}

impl Cube {
    pub fn new(d: &LinkDiagram) -> Result<Self> {
        let n = d.len();
        if n >= 63 {
            return Err(Error::InvalidDiagram("too many crossings".into()));
        }
        let (p_plus, p_minus) = d.sign_counts();
        let signs = d.crossing_signs();
        let vertices: Vec<CubeVertex> = (0..1u64 << n)
            .into_par_iter()
            .map(|mask| {
                let w = d.flatten_mask(mask)?;
                let size = mask.count_ones() as i64;
                Ok(CubeVertex {
                    mask,
                    basis: WebBasis::cached(&w)?,
                    shift: 3 * p_minus as i64 - 2 * p_plus as i64 - size,
                })
            })
            .collect::<Result<_>>()?;
        let pairs: Vec<(u64, usize)> = (0..1u64 << n)
            .flat_map(|mask| {
                (0..n)
                    .filter(move |b| mask >> b & 1 == 0)
                    .map(move |b| (mask, b))
            })
            .collect();
        let maps: Vec<((u64, usize), IntMatrix)> = pairs
            .into_par_iter()
            .map(|(mask, b)| {
                let from = &vertices[mask as usize].basis;
                let to = &vertices[(mask | 1 << b) as usize].basis;
                let foam = edge_foam(signs[b], from.web(), to.web(), b)?;
                let m = induced_map(&foam, from, to)?;
                let below = (mask & ((1u64 << b) - 1)).count_ones();
                let m = if below % 2 == 1 { -&m } else { m };
                Ok(((mask, b), m))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            n,
            p_plus,
            p_minus,
            vertices,
            edges: maps.into_iter().collect(),
        })
    }

    /// Check that every square face of the cube anticommutes.
    pub fn check_anticommutativity(&self) -> Result<usize> {
        let mut count = 0;
        for mask in 0..1u64 << self.n {
            for a in 0..self.n {
                for b in a + 1..self.n {
                    if mask >> a & 1 == 1 || mask >> b & 1 == 1 {
                        continue;
                    }
                    let via_a = &self.edges[&(mask | 1 << a, b)] * &self.edges[&(mask, a)];
                    let via_b = &self.edges[&(mask | 1 << b, a)] * &self.edges[&(mask, b)];
                    if !(&via_a + &via_b).is_zero() {
                        return Err(Error::NotAnticommutative(format!(
                            "square at {mask:b} in directions {a}, {b}"
                        )));
                    }
                    count += 1;
                }
            }
        }
        Ok(count)
    }
}

/// The part of the total complex in one q-degree: groups `C^i` for
/// `i = min_i, min_i + 1, ...` and differentials `d^i: C^i -> C^(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSlice {
    pub dims: Vec<usize>,
    pub diffs: Vec<IntMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedChainComplex {
    /// Lowest homological degree, `-p_minus`.
    pub min_i: i64,
    pub slices: BTreeMap<i64, QSlice>,
}

impl GradedChainComplex {
    /// Totalize the cube: `C^i` collects the flattenings with
    /// `|J| = i + p_minus`, each basis element in q-degree `deg + shift`.
    pub fn from_cube(cube: &Cube) -> Self {
        let len = cube.n + 1;
        // (q-degree, |J|) -> list of (mask, basis index)
        let mut gens: BTreeMap<i64, Vec<Vec<(u64, usize)>>> = BTreeMap::new();
        for v in &cube.vertices {
            let h = v.mask.count_ones() as usize;
            for (k, d) in v.basis.degrees().iter().enumerate() {
                gens.entry(d + v.shift)
                    .or_insert_with(|| vec![Vec::new(); len])[h]
                    .push((v.mask, k));
            }
        }
        let mut slices = BTreeMap::new();
        for (j, groups) in gens {
            let dims: Vec<usize> = groups.iter().map(Vec::len).collect();
            let mut diffs = Vec::with_capacity(cube.n);
            for h in 0..cube.n {
                let rows = &groups[h + 1];
                let cols = &groups[h];
                let row_index: BTreeMap<(u64, usize), usize> =
                    rows.iter().enumerate().map(|(i, g)| (*g, i)).collect();
                let mut m = IntMatrix::zeros(rows.len(), cols.len());
                for (ci, (mask, k)) in cols.iter().enumerate() {
                    for b in (0..cube.n).filter(|b| mask >> b & 1 == 0) {
                        let target = mask | 1 << b;
                        let edge = &cube.edges[&(*mask, b)];
                        for r in 0..edge.rows() {
                            let v = edge.get(r, *k);
                            if v.is_zero() {
                                continue;
                            }
                            let ri = row_index[&(target, r)];
                            m.set(ri, ci, m.get(ri, ci) + v);
                        }
                    }
                }
                diffs.push(m);
            }
            slices.insert(j, QSlice { dims, diffs });
        }
        Self {
            min_i: -(cube.p_minus as i64),
            slices,
        }
    }

    /// `d^(i+1) d^i = 0` in every q-degree.
    pub fn check_d_squared(&self) -> Result<()> {
        for (j, s) in &self.slices {
            for (h, pair) in s.diffs.windows(2).enumerate() {
                if !(&pair[1] * &pair[0]).is_zero() {
                    return Err(Error::DSquaredNonzero {
                        i: self.min_i + h as i64,
                        j: *j,
                    });
                }
            }
        }
        Ok(())
    }

    /// `Σ (-1)^i q^j dim C^{i,j}`.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (j, s) in &self.slices {
            for (h, d) in s.dims.iter().enumerate() {
                let sign = if (self.min_i + h as i64).rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                };
                p.add_term(*j, BigInt::from(sign * *d as i64));
            }
        }
        p
    }

    pub fn homology(&self) -> Result<BigradedHomology> {
        self.check_d_squared()?;
        let per_slice: Vec<Vec<(i64, i64, HomologyGroup)>> = self
            .slices
            .par_iter()
            .map(|(j, s)| {
                let factors: Vec<Vec<BigInt>> =
                    s.diffs.iter().map(snf::invariant_factors).collect();
                let mut out = Vec::new();
                for (h, dim) in s.dims.iter().enumerate() {
                    let out_rank = factors.get(h).map_or(0, Vec::len);
                    let (in_rank, torsion) = match h.checked_sub(1).and_then(|p| factors.get(p)) {
                        Some(f) => (f.len(), f.iter().filter(|x| !x.is_one()).cloned().collect()),
                        None => (0, Vec::new()),
                    };
                    let group = HomologyGroup {
                        rank: dim - out_rank - in_rank,
                        torsion,
                    };
                    if !group.is_zero() {
                        out.push((self.min_i + h as i64, *j, group));
                    }
                }
                out
            })
            .collect();
        let mut groups = BTreeMap::new();
        for (i, j, g) in per_slice.into_iter().flatten() {
            groups.insert((i, j), g);
        }
        Ok(BigradedHomology { groups })
    }
}

/// `Z^rank ⊕ Z/t_1 ⊕ Z/t_2 ⊕ ...`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(with = "torsion_json")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.rank)
            });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Nonzero groups `H^{i,j}` keyed by `(i, j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedHomology {
    pub groups: BTreeMap<(i64, i64), HomologyGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub i: i64,
    pub j: i64,
    pub rank: usize,
    #[serde(with = "torsion_json")]
    pub torsion: Vec<BigInt>,
}

impl BigradedHomology {
    pub fn get(&self, i: i64, j: i64) -> Option<&HomologyGroup> {
        self.groups.get(&(i, j))
    }

    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for ((i, j), g) in &self.groups {
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            p.add_term(*j, BigInt::from(sign * g.rank as i64));
        }
        p
    }

    /// Free ranks only, as `(i, j) -> rank`.
    pub fn ranks(&self) -> BTreeMap<(i64, i64), usize> {
        self.groups
            .iter()
            .filter(|(_, g)| g.rank > 0)
            .map(|(k, g)| (*k, g.rank))
            .collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.values().any(|g| !g.torsion.is_empty())
    }

    pub fn entries(&self) -> Vec<HomologyEntry> {
        self.groups
            .iter()
            .map(|((i, j), g)| HomologyEntry {
                i: *i,
                j: *j,
                rank: g.rank,
                torsion: g.torsion.clone(),
            })
            .collect()
    }

    pub fn from_entries(entries: &[HomologyEntry]) -> Self {
        let groups = entries
            .iter()
            .map(|e| {
                (
                    (e.i, e.j),
                    HomologyGroup {
                        rank: e.rank,
                        torsion: e.torsion.clone(),
                    },
                )
            })
            .filter(|(_, g)| !g.is_zero())
            .collect();
        Self { groups }
    }
}

impl fmt::Display for BigradedHomology {
    /// One row per homological degree, one column per q-degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return writeln!(f, "(zero)");
        }
        let js: std::collections::BTreeSet<i64> = self.groups.keys().map(|k| k.1).collect();
        let is: std::collections::BTreeSet<i64> = self.groups.keys().map(|k| k.0).collect();
        let cell = |i: i64, j: i64| self.get(i, j).map_or(".".to_string(), |g| g.to_string());
        let mut width = 4;
        for i in &is {
            for j in &js {
                width = width.max(cell(*i, *j).len() + 1);
            }
        }
        write!(f, "{:>5} |", "i\\j")?;
        for j in &js {
            write!(f, "{:>width$}", j)?;
        }
        writeln!(f)?;
        for i in &is {
            write!(f, "{:>5} |", i)?;
            for j in &js {
                write!(f, "{:>width$}", cell(*i, *j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Build the cube, check it, and totalize.
pub fn build_complex(d: &LinkDiagram) -> Result<GradedChainComplex> {
    d.validate()?;
    let cube = Cube::new(d)?;
    cube.check_anticommutativity()?;
    let c = GradedChainComplex::from_cube(&cube);
    c.check_d_squared()?;
    Ok(c)
}

pub fn homology(d: &LinkDiagram) -> Result<BigradedHomology> {
    build_complex(d)?.homology()
}

/// Per-bidegree comparison of two homology tables.
#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub pass: bool,
    pub differences: Vec<Difference>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Difference {
    pub i: i64,
    pub j: i64,
    pub left: String,
    pub right: String,
}

pub fn compare(h1: &BigradedHomology, h2: &BigradedHomology) -> InvarianceReport {
    let keys: std::collections::BTreeSet<_> =
        h1.groups.keys().chain(h2.groups.keys()).copied().collect();
    let show =
        |h: &BigradedHomology, k| h.groups.get(k).map_or("0".to_string(), ToString::to_string);
    let differences: Vec<Difference> = keys
        .iter()
        .filter(|k| h1.groups.get(k) != h2.groups.get(k))
        .map(|k| Difference {
            i: k.0,
            j: k.1,
            left: show(h1, k),
            right: show(h2, k),
        })
        .collect();
    InvarianceReport {
        pass: differences.is_empty(),
        differences,
    }
}

pub fn check_invariance(d1: &LinkDiagram, d2: &LinkDiagram) -> Result<InvarianceReport> {
    Ok(compare(&homology(d1)?, &homology(d2)?))
}

/// Everything the `homology` mode reports about one diagram.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub diagram: String,
    pub bracket: String,
    pub homology: Vec<HomologyEntry>,
    pub euler_check: bool,
}

pub fn homology_report(d: &LinkDiagram) -> Result<HomologyReport> {
    let h = homology(d)?;
    let bracket = link_bracket(d)?;
    Ok(HomologyReport {
        diagram: d.to_pd_string(),
        euler_check: h.euler_characteristic() == bracket,
        bracket: bracket.to_string(),
        homology: h.entries(),
    })
}

/// Torsion orders as plain JSON integers, falling back to decimal strings
/// past `u64`.
mod torsion_json {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let vals: Vec<Value> = v
            .iter()
            .map(|t| match u64::try_from(t) {
                Ok(n) => Value::from(n),
                Err(_) => Value::from(t.to_string()),
            })
            .collect();
        vals.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Value>::deserialize(d)?
            .into_iter()
            .map(|v| match v {
                Value::Number(n) => n
                    .as_u64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom("torsion order must be a positive integer")),
                Value::String(t) => t.parse().map_err(D::Error::custom),
                _ => Err(D::Error::custom("torsion order must be an integer")),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests;
