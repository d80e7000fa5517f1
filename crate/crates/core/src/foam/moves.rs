use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::web::{DigonSite, EdgeId, VertexId, Web, ZipSite};
use crate::{Error, Result};

/// Where a two-vertex move happens, as seen in the web that has the vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Site {
    Zip(ZipSite),
    Digon(DigonSite),
}

/// An edge of the smaller web and the edges of the larger web it is made of.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Merged {
    pub id: EdgeId,
    pub parts: Vec<EdgeId>,
    pub is_loop: bool,
}

/// Precomputed data of a move that creates or removes a sink/source vertex
/// pair: the vertices' rotations in the larger web, the disc facets that
/// appear or disappear, how the strips around the two vertices continue
/// into each other, and how edges of the two webs correspond.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Local {
    pub site: Site,
    pub sink: (VertexId, [EdgeId; 3]),
    pub source: (VertexId, [EdgeId; 3]),
    pub discs: Vec<EdgeId>,
    /// `(slot at sink, slot at source)` pairs lying on one strip.
    pub pairs: [(u8, u8); 3],
    pub merged: Vec<Merged>,
}

impl Local {
    /// The web piece around `site.mid` in `big`; returns the data and the
    /// web with the piece removed.
    pub fn zip(big: &Web, site: ZipSite) -> Result<(Local, Web)> {
        let (small, splice) = big.unzip(&site)?;
        let (sink, source) = rotations(big, site.vin, site.vout);
        let joins = [
            (site.a_lo, site.a_hi),
            (site.b_lo, site.b_hi),
            (site.mid, site.mid),
        ];
        let local = Local {
            site: Site::Zip(site),
            sink,
            source,
            discs: vec![site.mid],
            pairs: slot_pairs(&sink.1, &source.1, joins),
            merged: merged(&small, splice),
        };
        Ok((local, small))
    }

    pub fn digon(big: &Web, site: DigonSite) -> Result<(Local, Web)> {
        let (small, splice) = big.remove_digon(&site)?;
        let (sink, source) = rotations(big, site.x, site.y);
        let joins = [
            (site.e_in, site.e_out),
            (site.d[0], site.d[0]),
            (site.d[1], site.d[1]),
        ];
        let local = Local {
            site: Site::Digon(site),
            sink,
            source,
            discs: site.d.to_vec(),
            pairs: slot_pairs(&sink.1, &source.1, joins),
            merged: merged(&small, splice),
        };
        Ok((local, small))
    }

    /// Recompute the smaller web from the larger one.
    pub fn reduce(&self, big: &Web) -> Result<Web> {
        let small = match self.site {
            Site::Zip(s) => big.unzip(&s)?.0,
            Site::Digon(s) => big.remove_digon(&s)?.0,
        };
        Ok(small)
    }
}

fn rotations(
    big: &Web,
    sink: VertexId,
    source: VertexId,
) -> ((VertexId, [EdgeId; 3]), (VertexId, [EdgeId; 3])) {
    (
        (sink, big.vertices()[&sink].edges),
        (source, big.vertices()[&source].edges),
    )
}

fn slot_pairs(
    sink: &[EdgeId; 3],
    source: &[EdgeId; 3],
    joins: [(EdgeId, EdgeId); 3],
) -> [(u8, u8); 3] {
    let slot = |rot: &[EdgeId; 3], e: EdgeId| rot.iter().position(|x| *x == e).unwrap() as u8;
    joins.map(|(a, b)| (slot(sink, a), slot(source, b)))
}

fn merged(small: &Web, splice: BTreeMap<EdgeId, Vec<EdgeId>>) -> Vec<Merged> {
    splice
        .into_iter()
        .map(|(id, parts)| Merged {
            id,
            parts,
            is_loop: small.edge(id).is_some_and(|e| e.is_loop()),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Saddle {
    /// Two free loops become the loop `min(a, b)`.
    Merge { a: EdgeId, b: EdgeId },
    /// Free loop `lp` becomes `lp` and `new`.
    Split { lp: EdgeId, new: EdgeId },
}

/// Renaming of vertices and edges. Vertex `v` becomes `vmap[v].0` with its
/// rotation turned so that new slot `s` is old slot `s + vmap[v].1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relabel {
    pub vmap: BTreeMap<VertexId, (VertexId, u8)>,
    pub emap: BTreeMap<EdgeId, EdgeId>,
}

impl Relabel {
    pub fn inverse(&self) -> Relabel {
        Relabel {
            vmap: self
                .vmap
                .iter()
                .map(|(v, (w, s))| (*w, (*v, (3 - s % 3) % 3)))
                .collect(),
            emap: self.emap.iter().map(|(a, b)| (*b, *a)).collect(),
        }
    }

    pub fn edge(&self, e: EdgeId) -> EdgeId {
        self.emap.get(&e).copied().unwrap_or(e)
    }

    pub fn vertex(&self, v: VertexId) -> (VertexId, u8) {
        self.vmap.get(&v).copied().unwrap_or((v, 0))
    }
}

/// Elementary foam between consecutive frames of a movie.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    Birth { lp: EdgeId },
    Death { lp: EdgeId },
    Dot { edge: EdgeId },
    Saddle { saddle: Saddle },
    Zip { local: Arc<Local> },
    Unzip { local: Arc<Local> },
    DigonCup { local: Arc<Local> },
    DigonCap { local: Arc<Local> },
    Frame { relabel: Arc<Relabel> },
}

impl Move {
    /// The same piece of foam read backwards in time.
    pub fn dual(&self) -> Move {
        match self {
            Move::Birth { lp } => Move::Death { lp: *lp },
            Move::Death { lp } => Move::Birth { lp: *lp },
            Move::Dot { edge } => Move::Dot { edge: *edge },
            Move::Saddle { saddle } => Move::Saddle {
                saddle: match *saddle {
                    Saddle::Merge { a, b } => Saddle::Split {
                        lp: a.min(b),
                        new: a.max(b),
                    },
                    Saddle::Split { lp, new } => Saddle::Merge { a: lp, b: new },
                },
            },
            Move::Zip { local } => Move::Unzip {
                local: local.clone(),
            },
            Move::Unzip { local } => Move::Zip {
                local: local.clone(),
            },
            Move::DigonCup { local } => Move::DigonCap {
                local: local.clone(),
            },
            Move::DigonCap { local } => Move::DigonCup {
                local: local.clone(),
            },
            Move::Frame { relabel } => Move::Frame {
                relabel: Arc::new(relabel.inverse()),
            },
        }
    }

    /// `chi(boundary) - 2 chi(foam)` of the elementary piece.
    pub fn degree(&self) -> i64 {
        match self {
            Move::Birth { .. } | Move::Death { .. } => -2,
            Move::Dot { .. } | Move::Saddle { .. } => 2,
            Move::Zip { .. } | Move::Unzip { .. } => 1,
            Move::DigonCup { .. } | Move::DigonCap { .. } => -1,
            Move::Frame { .. } => 0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Move::Birth { .. } => "birth",
            Move::Death { .. } => "death",
            Move::Dot { .. } => "dot",
            Move::Saddle { .. } => "saddle",
            Move::Zip { .. } => "zip",
            Move::Unzip { .. } => "unzip",
            Move::DigonCup { .. } => "digon_cup",
            Move::DigonCap { .. } => "digon_cap",
            Move::Frame { .. } => "frame",
        }
    }

    /// Check that the move takes `source` to `target`.
    pub fn check(&self, source: &Web, target: &Web) -> Result<()> {
        let fail = |why: &str| Err(Error::InvalidMove(format!("{}: {why}", self.name())));
        match self {
            Move::Birth { lp } => {
                if source.add_loop(*lp)? != *target {
                    return fail("target is not source plus the new circle");
                }
            }
            Move::Death { lp } => {
                let nested = source
                    .edges()
                    .values()
                    .any(|e| matches!(e, crate::web::Edge::Loop { container: Some(c) } if c == lp));
                if nested {
                    return fail("circle has something inside it");
                }
                if source.remove_loop(*lp)? != *target {
                    return fail("target is not source minus the circle");
                }
            }
            Move::Dot { edge } => {
                if source.edge(*edge).is_none() || source != target {
                    return fail("dot on a missing edge or frames differ");
                }
            }
            Move::Saddle { saddle } => {
                if apply_saddle(source, saddle)? != *target {
                    return fail("target does not match");
                }
            }
            Move::Zip { local } | Move::DigonCup { local } => check_local(local, target, source)?,
            Move::Unzip { local } | Move::DigonCap { local } => check_local(local, source, target)?,
            Move::Frame { relabel } => {
                if source.relabel(&relabel.vmap, &relabel.emap)? != *target {
                    return fail("relabeled source differs from target");
                }
            }
        }
        let site_ok = match self {
            Move::Zip { local } | Move::Unzip { local } => matches!(local.site, Site::Zip(_)),
            Move::DigonCup { local } | Move::DigonCap { local } => {
                matches!(local.site, Site::Digon(_))
            }
            _ => true,
        };
        if !site_ok {
            return fail("site kind does not match the move");
        }
        Ok(())
    }

    pub fn local(&self) -> Option<&Local> {
        match self {
            Move::Zip { local }
            | Move::Unzip { local }
            | Move::DigonCup { local }
            | Move::DigonCap { local } => Some(local),
            _ => None,
        }
    }
}

fn check_local(local: &Local, big: &Web, small: &Web) -> Result<()> {
    let (fresh, _) = match local.site {
        Site::Zip(s) => Local::zip(big, s)?,
        Site::Digon(s) => Local::digon(big, s)?,
    };
    if fresh != *local {
        return Err(Error::InvalidMove(
            "stored move data does not match the frame".into(),
        ));
    }
    if local.reduce(big)? != *small {
        return Err(Error::InvalidMove("smaller frame does not match".into()));
    }
    Ok(())
}

pub(crate) fn apply_saddle(w: &Web, s: &Saddle) -> Result<Web> {
    match *s {
        Saddle::Merge { a, b } => {
            if a == b {
                return Err(Error::InvalidMove(
                    "saddle needs two distinct circles".into(),
                ));
            }
            let keep = a.min(b);
            let gone = a.max(b);
            let w = w.remove_loop(gone)?;
            if !w.edge(keep).is_some_and(|e| e.is_loop()) {
                return Err(Error::InvalidMove(format!("{keep} is not a free loop")));
            }
            Ok(w)
        }
        Saddle::Split { lp, new } => {
            if !w.edge(lp).is_some_and(|e| e.is_loop()) {
                return Err(Error::InvalidMove(format!("{lp} is not a free loop")));
            }
            if new < lp {
                return Err(Error::InvalidMove("split must create a larger id".into()));
            }
            w.add_loop(new)
        }
    }
}
