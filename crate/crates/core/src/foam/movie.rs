use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::moves::{apply_saddle, Local, Move, Relabel, Saddle};
use crate::web::{DigonSite, EdgeId, Web, WebJson, ZipSite};
use crate::{Error, Result};

/// A foam presented as a sequence of webs with one elementary move between
/// each pair of consecutive frames.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoamMovie {
    frames: Vec<Arc<Web>>,
    moves: Vec<Move>,
}

impl FoamMovie {
    /// The product foam `w x [0, 1]`.
    pub fn identity(w: Web) -> Self {
        Self::identity_arc(Arc::new(w))
    }

    pub fn identity_arc(w: Arc<Web>) -> Self {
        Self {
            frames: vec![w],
            moves: Vec::new(),
        }
    }

    /// The empty foam on the empty web.
    pub fn empty() -> Self {
        Self::identity(Web::empty())
    }

    pub fn frames(&self) -> &[Arc<Web>] {
        &self.frames
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn source(&self) -> &Arc<Web> {
        &self.frames[0]
    }

    pub fn target(&self) -> &Arc<Web> {
        self.frames.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.source().is_empty() && self.target().is_empty()
    }

    fn push(mut self, mv: Move, next: Web) -> Self {
        self.moves.push(mv);
        self.frames.push(Arc::new(next));
        self
    }

    /// Add a free circle `lp` bounding a disc.
    pub fn birth(self, lp: EdgeId) -> Result<Self> {
        let next = self.target().add_loop(lp)?;
        Ok(self.push(Move::Birth { lp }, next))
    }

    /// Cap off the free circle `lp`.
    pub fn death(self, lp: EdgeId) -> Result<Self> {
        let mv = Move::Death { lp };
        let next = self.target().remove_loop(lp)?;
        mv.check(self.target(), &next)?;
        Ok(self.push(mv, next))
    }

    pub fn dot(self, edge: EdgeId) -> Result<Self> {
        if self.target().edge(edge).is_none() {
            return Err(Error::InvalidMove(format!(
                "no edge {edge} to put a dot on"
            )));
        }
        let next = (**self.target()).clone();
        Ok(self.push(Move::Dot { edge }, next))
    }

    pub fn dots(mut self, edge: EdgeId, n: usize) -> Result<Self> {
        for _ in 0..n {
            self = self.dot(edge)?;
        }
        Ok(self)
    }

    pub fn saddle(self, saddle: Saddle) -> Result<Self> {
        let next = apply_saddle(self.target(), &saddle)?;
        Ok(self.push(Move::Saddle { saddle }, next))
    }

    /// Remove the web piece around the edge `mid`.
    pub fn unzip(self, mid: EdgeId) -> Result<Self> {
        let site = self.target().zip_site(mid)?;
        let (local, small) = Local::zip(self.target(), site)?;
        Ok(self.push(
            Move::Unzip {
                local: Arc::new(local),
            },
            small,
        ))
    }

    /// Remove a digon face.
    pub fn digon_cap(self, site: DigonSite) -> Result<Self> {
        let (local, small) = Local::digon(self.target(), site)?;
        Ok(self.push(
            Move::DigonCap {
                local: Arc::new(local),
            },
            small,
        ))
    }

    pub fn relabel(self, relabel: Relabel) -> Result<Self> {
        let next = self.target().relabel(&relabel.vmap, &relabel.emap)?;
        Ok(self.push(
            Move::Frame {
                relabel: Arc::new(relabel),
            },
            next,
        ))
    }

    /// The zip creating the web piece of `big` around `site.mid`, as a movie
    /// from the web without the piece to `big`.
    pub fn zip_into(big: &Web, site: ZipSite) -> Result<Self> {
        let (local, small) = Local::zip(big, site)?;
        Ok(Self::identity(small).push(
            Move::Zip {
                local: Arc::new(local),
            },
            big.clone(),
        ))
    }

    /// The cup creating the digon face `site` of `big`.
    pub fn digon_cup_into(big: &Web, site: DigonSite) -> Result<Self> {
        let (local, small) = Local::digon(big, site)?;
        Ok(Self::identity(small).push(
            Move::DigonCup {
                local: Arc::new(local),
            },
            big.clone(),
        ))
    }

    /// `self` followed by `next`; the frames where they meet must agree
    /// exactly.
    pub fn compose(&self, next: &FoamMovie) -> Result<Self> {
        if !Arc::ptr_eq(self.target(), next.source()) && self.target() != next.source() {
            return Err(Error::FrameMismatch);
        }
        let mut frames = self.frames.clone();
        frames.extend(next.frames[1..].iter().cloned());
        let mut moves = self.moves.clone();
        moves.extend(next.moves.iter().cloned());
        Ok(Self { frames, moves })
    }

    /// Read the movie backwards.
    pub fn reflect(&self) -> Self {
        Self {
            frames: self.frames.iter().rev().cloned().collect(),
            moves: self.moves.iter().rev().map(Move::dual).collect(),
        }
    }

    pub fn degree(&self) -> i64 {
        self.moves.iter().map(Move::degree).sum()
    }

    /// Check every frame and every move against its frames.
    pub fn validate(&self) -> Result<()> {
        if self.frames.len() != self.moves.len() + 1 {
            return Err(Error::InvalidMove(
                "frame count must be move count + 1".into(),
            ));
        }
        for f in &self.frames {
            f.validate()?;
        }
        for (i, mv) in self.moves.iter().enumerate() {
            mv.check(&self.frames[i], &self.frames[i + 1])?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> MovieJson {
        MovieJson {
            frames: self.frames.iter().map(|f| f.to_json()).collect(),
            checksums: self.frames.iter().map(|f| frame_checksum(f)).collect(),
            moves: self.moves.clone(),
            degree: self.degree(),
        }
    }

    pub fn from_json(j: &MovieJson) -> Result<Self> {
        let frames: Vec<Arc<Web>> = j
            .frames
            .iter()
            .map(|f| Web::from_json(f).map(Arc::new))
            .collect::<Result<_>>()?;
        if j.checksums.len() != frames.len() {
            return Err(Error::InvalidMove(
                "checksum count does not match frames".into(),
            ));
        }
        for (f, c) in frames.iter().zip(&j.checksums) {
            if frame_checksum(f) != *c {
                return Err(Error::InvalidMove("frame checksum mismatch".into()));
            }
        }
        let m = Self {
            frames,
            moves: j.moves.clone(),
        };
        m.validate()?;
        Ok(m)
    }
}

/// Serialized movie: every frame, its checksum, and the moves between them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MovieJson {
    pub frames: Vec<WebJson>,
    pub checksums: Vec<String>,
    pub moves: Vec<Move>,
    pub degree: i64,
}

/// Short content hash of a labeled web.
pub fn frame_checksum(w: &Web) -> String {
    let text = serde_json::to_string(&w.to_json()).expect("web serializes");
    let digest = Sha256::digest(text.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}
