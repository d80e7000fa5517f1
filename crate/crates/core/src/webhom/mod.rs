//! The web homology F(Γ): a basis of foams from the empty web, the pairing
//! against reflected foams, and the integer matrices that foams induce.

mod matrix;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::foam::{evaluate_chain, standard, FoamMovie, MovieJson};
use crate::web::{DigonSite, EdgeId, Reduction, SquareSite, Web};
use crate::{Error, LaurentPoly, Result};

pub use matrix::IntMatrix;

/// One step of the recursive basis construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionStep {
    Empty,
    Loop(EdgeId),
    Digon(DigonSite),
    Square(SquareSite),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub step: ReductionStep,
    pub children: Vec<ReductionTrace>,
}

/// A basis of F(Γ) made of foams from the empty web to Γ.
#[derive(Debug)]
pub struct WebBasis {
    web: Arc<Web>,
    elements: Vec<FoamMovie>,
    degrees: Vec<i64>,
    trace: ReductionTrace,
    gram: OnceLock<IntMatrix>,
    gram_inverse: OnceLock<std::result::Result<IntMatrix, String>>,
}

impl WebBasis {
    /// Build the basis by repeatedly removing a loop, digon or square.
    /// Loop nesting is dropped first.
    pub fn new(w: &Web) -> Result<Self> {
        let w = Arc::new(w.unnested());
        let (elements, trace) = build(&w)?;
        let degrees = elements.iter().map(FoamMovie::degree).collect();
        Ok(Self {
            web: w,
            elements,
            degrees,
            trace,
            gram: OnceLock::new(),
            gram_inverse: OnceLock::new(),
        })
    }

    /// Shared basis for `w`, built once per labeled web.
    pub fn cached(w: &Web) -> Result<Arc<Self>> {
        static CACHE: OnceLock<RwLock<HashMap<Web, Arc<WebBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let key = w.unnested();
        if let Some(b) = cache.read().unwrap().get(&key) {
            return Ok(b.clone());
        }
        let b = Arc::new(Self::new(&key)?);
        cache.write().unwrap().insert(key, b.clone());
        Ok(b)
    }

    pub fn web(&self) -> &Arc<Web> {
        &self.web
    }

    pub fn elements(&self) -> &[FoamMovie] {
        &self.elements
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn trace(&self) -> &ReductionTrace {
        &self.trace
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `Σ q^deg` over the basis.
    pub fn graded_rank(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for d in &self.degrees {
            p.add_term(*d, BigInt::from(1));
        }
        p
    }

    /// Entry `(j, k)` is the value of `b_k` followed by the reflection of `b_j`.
    pub fn gram(&self) -> Result<&IntMatrix> {
        if let Some(g) = self.gram.get() {
            return Ok(g);
        }
        let g = pairing(self, &FoamMovie::identity_arc(self.web.clone()), self)?;
        Ok(self.gram.get_or_init(|| g))
    }

    pub fn gram_inverse(&self) -> Result<&IntMatrix> {
        let gram = self.gram()?;
        let inv = self
            .gram_inverse
            .get_or_init(|| block_inverse(gram, &self.degrees).map_err(|e| e.to_string()));
        inv.as_ref().map_err(|e| Error::NotUnimodular(e.clone()))
    }

    pub fn to_json(&self) -> BasisJson {
        BasisJson {
            web: self.web.to_json(),
            degrees: self.degrees.clone(),
            movies: self.elements.iter().map(FoamMovie::to_json).collect(),
            trace: self.trace.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisJson {
    pub web: crate::web::WebJson,
    pub degrees: Vec<i64>,
    pub movies: Vec<MovieJson>,
    pub trace: ReductionTrace,
}

fn build(w: &Arc<Web>) -> Result<(Vec<FoamMovie>, ReductionTrace)> {
    let leaf = |step| ReductionTrace {
        step,
        children: vec![],
    };
    match w.find_reduction()? {
        Reduction::Empty => Ok((
            vec![FoamMovie::identity_arc(w.clone())],
            leaf(ReductionStep::Empty),
        )),
        Reduction::FreeLoop(l) => {
            let small = Arc::new(w.remove_loop(l)?);
            let (sub, t) = build(&small)?;
            let mut out = Vec::with_capacity(sub.len() * 3);
            for b in &sub {
                let cup = b.clone().birth(l)?;
                for d in 0..3 {
                    out.push(cup.clone().dots(l, d)?);
                }
            }
            let trace = ReductionTrace {
                step: ReductionStep::Loop(l),
                children: vec![t],
            };
            Ok((out, trace))
        }
        Reduction::DigonFace(s) => {
            let tau1 = standard::tau1(w, s)?;
            let tau2 = standard::tau2(w, s)?;
            let (sub, t) = build(tau1.source())?;
            let mut out = Vec::with_capacity(sub.len() * 2);
            for tau in [&tau1, &tau2] {
                for b in &sub {
                    out.push(b.compose(tau)?);
                }
            }
            let trace = ReductionTrace {
                step: ReductionStep::Digon(s),
                children: vec![t],
            };
            Ok((out, trace))
        }
        Reduction::SquareFace(s) => {
            let mut out = Vec::new();
            let mut children = Vec::new();
            for k in 0..2 {
                let nu = standard::nu(w, s, k)?;
                let (sub, t) = build(nu.source())?;
                for b in &sub {
                    out.push(b.compose(&nu)?);
                }
                children.push(t);
            }
            let trace = ReductionTrace {
                step: ReductionStep::Square(s),
                children,
            };
            Ok((out, trace))
        }
    }
}

/// Matrix of closed evaluations `(j, k) ↦ ⟨c_j, u b_k⟩`, skipping entries
/// whose total degree is nonzero.
fn pairing(from: &WebBasis, u: &FoamMovie, to: &WebBasis) -> Result<IntMatrix> {
    if **u.source() != *from.web || **u.target() != *to.web {
        return Err(Error::FrameMismatch);
    }
    let du = u.degree();
    let cols: Vec<Vec<(usize, BigInt)>> = (0..from.len())
        .into_par_iter()
        .map(|k| {
            let mut col = Vec::new();
            for j in 0..to.len() {
                if to.degrees[j] + du + from.degrees[k] != 0 {
                    continue;
                }
                let v = evaluate_chain(&[
                    (&from.elements[k], false),
                    (u, false),
                    (&to.elements[j], true),
                ])?;
                if !v.is_zero() {
                    col.push((j, v));
                }
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let mut m = IntMatrix::zeros(to.len(), from.len());
    for (k, col) in cols.into_iter().enumerate() {
        for (j, v) in col {
            m.set(j, k, v);
        }
    }
    Ok(m)
}

/// Inverse of a Gram matrix that pairs degree `d` with degree `-d`.
fn block_inverse(g: &IntMatrix, degrees: &[i64]) -> Result<IntMatrix> {
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, d) in degrees.iter().enumerate() {
        by_degree.entry(*d).or_default().push(i);
    }
    let mut inv = IntMatrix::zeros(g.cols(), g.rows());
    for (d, rows) in &by_degree {
        let cols = by_degree.get(&-d).map(Vec::as_slice).unwrap_or(&[]);
        if rows.len() != cols.len() {
            return Err(Error::NotUnimodular(format!(
                "degree {d} has no partner block"
            )));
        }
        let block = g.select(rows, cols).inverse()?;
        for (a, c) in cols.iter().enumerate() {
            for (b, r) in rows.iter().enumerate() {
                inv.set(*c, *r, block.get(a, b).clone());
            }
        }
    }
    debug_assert_eq!(&inv * g, IntMatrix::identity(g.rows()));
    Ok(inv)
}

/// Matrix of `F(u)` with respect to the two bases: column `k` holds the
/// coordinates of `u ∘ b_k`.
pub fn induced_map(u: &FoamMovie, from: &WebBasis, to: &WebBasis) -> Result<IntMatrix> {
    let p = pairing(from, u, to)?;
    let m = to.gram_inverse()? * &p;
    let du = u.degree();
    for j in 0..m.rows() {
        for k in 0..m.cols() {
            if !m.get(j, k).is_zero() && to.degrees[j] != from.degrees[k] + du {
                return Err(Error::NonIntegral(format!(
                    "induced map is not homogeneous of degree {du} at ({j}, {k})"
                )));
            }
        }
    }
    Ok(m)
}

/// Action of a dot on edge `e` of the basis web.
pub fn edge_dot_action(e: EdgeId, b: &WebBasis) -> Result<IntMatrix> {
    let u = FoamMovie::identity_arc(b.web.clone()).dot(e)?;
    induced_map(&u, b, b)
}

pub fn basis(w: &Web) -> Result<WebBasis> {
    WebBasis::new(w)
}

pub fn gram_matrix(b: &WebBasis) -> Result<IntMatrix> {
    b.gram().cloned()
}

/// Outcome of one matrix identity check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

fn check(name: &str, lhs: &IntMatrix, rhs: &IntMatrix) -> IdentityCheck {
    IdentityCheck {
        name: name.to_string(),
        holds: lhs == rhs,
    }
}

/// The five digon identities around `site`, a digon face of `big`.
pub fn digon_identities(big: &Web, site: DigonSite) -> Result<Vec<IdentityCheck>> {
    let tau1 = standard::tau1(big, site)?;
    let tau2 = standard::tau2(big, site)?;
    let rho1 = standard::rho1(big, site)?;
    let rho2 = standard::rho2(big, site)?;
    let b = WebBasis::cached(big)?;
    let s = WebBasis::cached(tau1.source())?;
    let f = |first: &FoamMovie, second: &FoamMovie, from: &WebBasis, to: &WebBasis| {
        induced_map(&first.compose(second)?, from, to)
    };
    let id_small = IntMatrix::identity(s.len());
    let zero_small = IntMatrix::zeros(s.len(), s.len());
    let t1r1 = f(&rho1, &tau1, &b, &b)?;
    let t2r2 = f(&rho2, &tau2, &b, &b)?;
    Ok(vec![
        check("F(rho1 tau1) = Id", &f(&tau1, &rho1, &s, &s)?, &id_small),
        check("-F(rho2 tau2) = Id", &-&f(&tau2, &rho2, &s, &s)?, &id_small),
        check("F(rho1 tau2) = 0", &f(&tau2, &rho1, &s, &s)?, &zero_small),
        check("F(rho2 tau1) = 0", &f(&tau1, &rho2, &s, &s)?, &zero_small),
        check(
            "F(tau1 rho1) - F(tau2 rho2) = Id",
            &(&t1r1 - &t2r2),
            &IntMatrix::identity(b.len()),
        ),
    ])
}

/// The five square identities around `square`, a square face of `big`.
pub fn square_identities(big: &Web, square: SquareSite) -> Result<Vec<IdentityCheck>> {
    let psi = [
        standard::psi(big, square, 0)?,
        standard::psi(big, square, 1)?,
    ];
    let nu = [psi[0].reflect(), psi[1].reflect()];
    let b = WebBasis::cached(big)?;
    let r = [
        WebBasis::cached(psi[0].target())?,
        WebBasis::cached(psi[1].target())?,
    ];
    let pn = |i: usize, j: usize| induced_map(&nu[j].compose(&psi[i])?, &r[j], &r[i]);
    let np = |k: usize| induced_map(&psi[k].compose(&nu[k])?, &b, &b);
    let minus_id = |n: usize| -&IntMatrix::identity(n);
    Ok(vec![
        check("F(psi1 nu1) = -Id", &pn(0, 0)?, &minus_id(r[0].len())),
        check("F(psi2 nu2) = -Id", &pn(1, 1)?, &minus_id(r[1].len())),
        check(
            "F(psi2 nu1) = 0",
            &pn(1, 0)?,
            &IntMatrix::zeros(r[1].len(), r[0].len()),
        ),
        check(
            "F(psi1 nu2) = 0",
            &pn(0, 1)?,
            &IntMatrix::zeros(r[0].len(), r[1].len()),
        ),
        check(
            "F(nu1 psi1) + F(nu2 psi2) = -Id",
            &(&np(0)? + &np(1)?),
            &minus_id(b.len()),
        ),
    ])
}

/// Edge-variable relations at every vertex and on every loop of `w`:
/// the elementary symmetric polynomials in the three edge dots vanish, and
/// the cube of a loop dot vanishes.
pub fn ring_relations(w: &Web) -> Result<Vec<IdentityCheck>> {
    let b = WebBasis::cached(w)?;
    let w = b.web().clone();
    let mut dot = BTreeMap::new();
    for e in w.edges().keys() {
        dot.insert(*e, edge_dot_action(*e, &b)?);
    }
    let zero = IntMatrix::zeros(b.len(), b.len());
    let mut out = Vec::new();
    for (v, vx) in w.vertices() {
        let [x, y, z] = vx.edges.map(|e| &dot[&e]);
        let e1 = &(x + y) + z;
        let e2 = &(&(x * y) + &(x * z)) + &(y * z);
        let e3 = &(x * y) * z;
        out.push(check(&format!("vertex {v}: X+Y+Z = 0"), &e1, &zero));
        out.push(check(&format!("vertex {v}: XY+XZ+YZ = 0"), &e2, &zero));
        out.push(check(&format!("vertex {v}: XYZ = 0"), &e3, &zero));
        let commute = (x * y) == (y * x) && (x * z) == (z * x) && (y * z) == (z * y);
        out.push(IdentityCheck {
            name: format!("vertex {v}: edge dots commute"),
            holds: commute,
        });
    }
    for l in w.loops() {
        out.push(check(&format!("loop {l}: X^3 = 0"), &dot[&l].pow(3), &zero));
    }
    Ok(out)
}
