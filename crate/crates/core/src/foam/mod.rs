//! Foams between webs, presented as movies, and their evaluation.

mod moves;
mod movie;
mod prefoam;

use crate::web::{DigonSite, EdgeId, SquareSite, Web};
use crate::{Error, Result};

pub use moves::{Local, Merged, Move, Relabel, Saddle, Site};
pub use movie::{frame_checksum, FoamMovie, MovieJson};
pub use prefoam::{
    evaluate_chain, evaluate_closed, extract_chain, extract_prefoam, Facet, PreFoam,
};

/// Digon facet (index into `DigonSite::d`) carrying the dot of the cup
/// that includes the upper summand.
pub const TAU1_DOT_FACET: usize = 1;
/// Digon facet carrying the dot of the cap onto the lower summand.
pub const RHO2_DOT_FACET: usize = 0;
/// Square resolutions unzip this side of the square, counted from the
/// first kept side.
pub const PSI_UNZIP_OFFSET: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardKind {
    Tau1,
    Tau2,
    Rho1,
    Rho2,
    Nu1,
    Nu2,
    Psi1,
    Psi2,
    BasicZip,
    BasicUnzip,
    Alpha,
    Beta,
}

/// Named cobordisms between a web and one of its reductions. Every
/// constructor takes the larger web, where the local picture lives.
pub mod standard {
    use super::*;

    /// Cup from the web without the digon, with a dot on one digon facet.
    /// Degree +1.
    pub fn tau1(big: &Web, site: DigonSite) -> Result<FoamMovie> {
        FoamMovie::digon_cup_into(big, site)?.dot(site.d[TAU1_DOT_FACET])
    }

    /// Dotless cup. Degree -1.
    pub fn tau2(big: &Web, site: DigonSite) -> Result<FoamMovie> {
        FoamMovie::digon_cup_into(big, site)
    }

    /// Dotless cap. Degree -1.
    pub fn rho1(big: &Web, site: DigonSite) -> Result<FoamMovie> {
        FoamMovie::identity(big.clone()).digon_cap(site)
    }

    /// Dot on a digon facet, then cap. Degree +1.
    pub fn rho2(big: &Web, site: DigonSite) -> Result<FoamMovie> {
        FoamMovie::identity(big.clone())
            .dot(site.d[RHO2_DOT_FACET])?
            .digon_cap(site)
    }

    /// From a square face to its resolution `k` (0 or 1): unzip one side,
    /// then cap the digon that appears. Degree 0.
    pub fn psi(big: &Web, square: SquareSite, k: usize) -> Result<FoamMovie> {
        let unzip_edge = square.edges[(k + PSI_UNZIP_OFFSET) % 4];
        let first = FoamMovie::identity(big.clone()).unzip(unzip_edge)?;
        let merged = square.edges[k].min(square.edges[(k + 2) % 4]);
        let other = square.edges[(k + 2 * PSI_UNZIP_OFFSET + 1) % 4];
        let mid = first.target().clone();
        let digon = mid
            .digon_sites()
            .into_iter()
            .find(|d| d.d.contains(&merged) && d.d.contains(&other))
            .ok_or_else(|| Error::InvalidMove("square resolution lost its digon".into()))?;
        first.digon_cap(digon)
    }

    /// Reverse of [`psi`]: from resolution `k` back to the square.
    pub fn nu(big: &Web, square: SquareSite, k: usize) -> Result<FoamMovie> {
        Ok(psi(big, square, k)?.reflect())
    }

    pub fn basic_zip(big: &Web, mid: EdgeId) -> Result<FoamMovie> {
        FoamMovie::zip_into(big, big.zip_site(mid)?)
    }

    pub fn basic_unzip(big: &Web, mid: EdgeId) -> Result<FoamMovie> {
        FoamMovie::identity(big.clone()).unzip(mid)
    }

    /// Dotted cups onto a web made of circles only; `dots[i]` dots go on
    /// the `i`-th circle in id order.
    pub fn alpha(w: &Web, dots: &[usize]) -> Result<FoamMovie> {
        if !w.vertices().is_empty() {
            return Err(Error::InvalidMove("cups need a web of circles".into()));
        }
        let loops: Vec<EdgeId> = w.loops().collect();
        if loops.len() != dots.len() {
            return Err(Error::InvalidMove("one dot count per circle".into()));
        }
        let mut m = FoamMovie::empty();
        for (l, d) in loops.iter().zip(dots) {
            m = m.birth(*l)?.dots(*l, *d)?;
        }
        Ok(m)
    }

    /// Reflection of [`alpha`]: dotted caps.
    pub fn beta(w: &Web, dots: &[usize]) -> Result<FoamMovie> {
        Ok(alpha(w, dots)?.reflect())
    }
}

/// Location data for [`standard_foam`].
#[derive(Clone, Debug)]
pub enum FoamLocation {
    Digon(DigonSite),
    Square(SquareSite),
    Edge(EdgeId),
    Dots(Vec<usize>),
}

pub fn standard_foam(kind: StandardKind, big: &Web, at: &FoamLocation) -> Result<FoamMovie> {
    use StandardKind::*;
    let shape = || Error::InvalidMove(format!("{kind:?} does not fit the given location"));
    match (kind, at) {
        (Tau1, FoamLocation::Digon(s)) => standard::tau1(big, *s),
        (Tau2, FoamLocation::Digon(s)) => standard::tau2(big, *s),
        (Rho1, FoamLocation::Digon(s)) => standard::rho1(big, *s),
        (Rho2, FoamLocation::Digon(s)) => standard::rho2(big, *s),
        (Psi1, FoamLocation::Square(s)) => standard::psi(big, *s, 0),
        (Psi2, FoamLocation::Square(s)) => standard::psi(big, *s, 1),
        (Nu1, FoamLocation::Square(s)) => standard::nu(big, *s, 0),
        (Nu2, FoamLocation::Square(s)) => standard::nu(big, *s, 1),
        (BasicZip, FoamLocation::Edge(e)) => standard::basic_zip(big, *e),
        (BasicUnzip, FoamLocation::Edge(e)) => standard::basic_unzip(big, *e),
        (Alpha, FoamLocation::Dots(d)) => standard::alpha(big, d),
        (Beta, FoamLocation::Dots(d)) => standard::beta(big, d),
        _ => Err(shape()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::samples::*;
    use num_bigint::BigInt;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn sphere(dots: usize) -> FoamMovie {
        FoamMovie::empty()
            .birth(1)
            .unwrap()
            .dots(1, dots)
            .unwrap()
            .death(1)
            .unwrap()
    }

    #[test]
    fn sphere_values() {
        for d in 0..5 {
            let expect = if d == 2 { -1 } else { 0 };
            assert_eq!(
                evaluate_closed(&sphere(d)).unwrap(),
                int(expect),
                "{d} dots"
            );
        }
        assert_eq!(evaluate_closed(&FoamMovie::empty()).unwrap(), int(1));
    }

    #[test]
    fn torus_from_saddles() {
        let m = FoamMovie::empty()
            .birth(1)
            .unwrap()
            .saddle(Saddle::Split { lp: 1, new: 2 })
            .unwrap()
            .saddle(Saddle::Merge { a: 1, b: 2 })
            .unwrap()
            .death(1)
            .unwrap();
        let p = extract_prefoam(&m).unwrap();
        assert_eq!(
            p.facets,
            vec![Facet {
                genus: 1,
                dots: 0,
                boundary: 0
            }]
        );
        assert_eq!(p.evaluate(), int(3));
        assert_eq!(m.degree(), 0);
    }

    #[test]
    fn theta_from_digon_cup_and_cap() {
        let t = theta();
        let site = t.digon_sites()[0];
        let cup = FoamMovie::digon_cup_into(&t, site).unwrap();
        let lp = *cup.source().loops().collect::<Vec<_>>().first().unwrap();
        let closed = FoamMovie::empty()
            .birth(lp)
            .unwrap()
            .compose(&cup)
            .unwrap()
            .digon_cap(site)
            .unwrap()
            .death(lp)
            .unwrap();
        closed.validate().unwrap();
        let p = extract_prefoam(&closed).unwrap();
        assert_eq!(p.circles.len(), 1);
        assert_eq!(p.facets.len(), 3);
        assert!(p
            .facets
            .iter()
            .all(|f| f.genus == 0 && f.boundary == 1 && f.dots == 0));
        assert_eq!(p.evaluate(), int(0));
    }

    #[test]
    fn theta_table() {
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let v = PreFoam::theta(a, b, c).evaluate();
                    let expect = match (a, b, c) {
                        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
                        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
                        _ => 0,
                    };
                    assert_eq!(v, int(expect), "theta({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn reflection_is_involution_and_swaps_ends() {
        let t = theta();
        let site = t.digon_sites()[0];
        let m = standard::tau1(&t, site).unwrap();
        assert_eq!(m.reflect().reflect(), m);
        assert_eq!(m.reflect().source(), m.target());
        assert_eq!(m.reflect().degree(), m.degree());
        let b = FoamMovie::empty().birth(5).unwrap();
        assert!(matches!(b.reflect().moves()[0], Move::Death { lp: 5 }));
    }

    #[test]
    fn move_degrees() {
        assert_eq!(FoamMovie::empty().birth(1).unwrap().degree(), -2);
        let two = FoamMovie::empty().birth(1).unwrap().birth(2).unwrap();
        let merged = two.clone().saddle(Saddle::Merge { a: 1, b: 2 }).unwrap();
        assert_eq!(merged.degree() - two.degree(), 2);
        let dotted = two.clone().dot(1).unwrap();
        assert_eq!(dotted.degree() - two.degree(), 2);
        let t = theta();
        let s = t.digon_sites()[0];
        assert_eq!(standard::tau1(&t, s).unwrap().degree(), 1);
        assert_eq!(standard::tau2(&t, s).unwrap().degree(), -1);
        assert_eq!(standard::rho1(&t, s).unwrap().degree(), -1);
        assert_eq!(standard::rho2(&t, s).unwrap().degree(), 1);
    }

    #[test]
    fn dotted_cup_pairing_is_sphere() {
        let c = Web::circle(1);
        let one = standard::alpha(&c, &[1]).unwrap();
        let v = evaluate_chain(&[(&one, false), (&one, true)]).unwrap();
        assert_eq!(v, int(-1));
    }

    #[test]
    fn compose_rejects_mismatch() {
        let a = FoamMovie::empty().birth(1).unwrap();
        let b = FoamMovie::identity(Web::circle(2));
        assert!(matches!(a.compose(&b), Err(Error::FrameMismatch)));
    }

    #[test]
    fn movie_json_round_trip() {
        let t = theta();
        let s = t.digon_sites()[0];
        let m = standard::rho2(&t, s).unwrap();
        let text = serde_json::to_string(&m.to_json()).unwrap();
        let back: MovieJson = serde_json::from_str(&text).unwrap();
        assert_eq!(FoamMovie::from_json(&back).unwrap(), m);
    }

    #[test]
    fn zip_unzip_bubble_on_theta() {
        // two circles zipped into a theta and unzipped again: three discs
        // on one singular circle, no dots
        let t = theta();
        let mid = *t.edges().keys().next().unwrap();
        let zip = standard::basic_zip(&t, mid).unwrap();
        let loops: Vec<_> = zip.source().loops().collect();
        let mut m = FoamMovie::empty();
        for l in &loops {
            m = m.birth(*l).unwrap();
        }
        let m = m.compose(&zip).unwrap().unzip(mid).unwrap();
        let mut m = m;
        for l in &loops {
            m = m.death(*l).unwrap();
        }
        let p = extract_prefoam(&m).unwrap();
        assert_eq!(p.circles.len(), 1);
        assert_eq!(p.euler(), 3);
    }
}
