use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use rayon::prelude::*;

use super::{Reduction, VertexId, Web};
use crate::{LaurentPoly, LinkDiagram, Result};

/// Memo table of per-component evaluations keyed by canonical code.
#[derive(Default)]
pub struct BracketCache {
    table: RwLock<HashMap<Vec<u32>, LaurentPoly>>,
}

impl BracketCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide cache used by [`kuperberg_bracket`].
    pub fn global() -> &'static BracketCache {
        static CACHE: OnceLock<BracketCache> = OnceLock::new();
        CACHE.get_or_init(BracketCache::new)
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, code: &[u32]) -> Option<LaurentPoly> {
        self.table.read().unwrap().get(code).cloned()
    }

    pub fn insert(&self, code: Vec<u32>, value: LaurentPoly) {
        self.table.write().unwrap().insert(code, value);
    }

    /// Snapshot of all entries, for persisting.
    pub fn entries(&self) -> Vec<(Vec<u32>, LaurentPoly)> {
        let t = self.table.read().unwrap();
        let mut v: Vec<_> = t.iter().map(|(k, p)| (k.clone(), p.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn evaluate(&self, w: &Web) -> Result<LaurentPoly> {
        let key = w.canonical_key();
        let mut acc = LaurentPoly::quantum_int(3).pow(key.loops as u32);
        for comp in w.components() {
            acc = &acc * &self.component(&w.subweb(&comp))?;
        }
        Ok(acc)
    }

    fn component(&self, w: &Web) -> Result<LaurentPoly> {
        let verts: Vec<VertexId> = w.vertices().keys().copied().collect();
        let code = w.component_code(&verts);
        if let Some(p) = self.get(&code) {
            return Ok(p);
        }
        let value = match w.find_reduction()? {
            Reduction::DigonFace(s) => {
                &LaurentPoly::quantum_int(2) * &self.evaluate(&w.remove_digon(&s)?.0)?
            }
            Reduction::SquareFace(s) => {
                &self.evaluate(&w.resolve_square(&s, 0)?)?
                    + &self.evaluate(&w.resolve_square(&s, 1)?)?
            }
            Reduction::FreeLoop(_) | Reduction::Empty => unreachable!("connected trivalent web"),
        };
        self.insert(code, value.clone());
        Ok(value)
    }
}

/// Kuperberg bracket of a closed web: circles give `[3]`, digons `[2]`,
/// squares split into their two resolutions, the empty web is 1.
pub fn kuperberg_bracket(w: &Web) -> Result<LaurentPoly> {
    BracketCache::global().evaluate(w)
}

/// Evaluate with no memoization, letting `choose` pick which of the
/// available reductions to apply at every step.
pub fn kuperberg_bracket_by<F>(w: &Web, choose: &mut F) -> Result<LaurentPoly>
where
    F: FnMut(&[Reduction]) -> usize,
{
    let options = w.reductions();
    if options.is_empty() {
        return Err(crate::Error::NoReduction);
    }
    let pick = options[choose(&options) % options.len()];
    Ok(match pick {
        Reduction::Empty => LaurentPoly::one(),
        Reduction::FreeLoop(l) => {
            &LaurentPoly::quantum_int(3) * &kuperberg_bracket_by(&w.remove_loop(l)?, choose)?
        }
        Reduction::DigonFace(s) => {
            &LaurentPoly::quantum_int(2) * &kuperberg_bracket_by(&w.remove_digon(&s)?.0, choose)?
        }
        Reduction::SquareFace(s) => {
            &kuperberg_bracket_by(&w.resolve_square(&s, 0)?, choose)?
                + &kuperberg_bracket_by(&w.resolve_square(&s, 1)?, choose)?
        }
    })
}

/// Bracket of a link diagram: the sum over all flattenings `D_J` of
/// `(-1)^(|J| - p_minus) q^(3 p_minus - 2 p_plus - |J|) <D_J>`.
pub fn link_bracket(d: &LinkDiagram) -> Result<LaurentPoly> {
    let n = d.len();
    let (pp, pm) = d.sign_counts();
    let terms: Vec<LaurentPoly> = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| {
            let size = mask.count_ones() as i64;
            let sign = if (size - pm as i64).rem_euclid(2) == 0 {
                1
            } else {
                -1
            };
            let w = d.flatten_mask(mask)?;
            Ok(
                &LaurentPoly::monomial(sign, 3 * pm as i64 - 2 * pp as i64 - size)
                    * &kuperberg_bracket(&w)?,
            )
        })
        .collect::<Result<_>>()?;
    Ok(terms.iter().fold(LaurentPoly::zero(), |acc, t| &acc + t))
}

impl Web {
    /// The sub-web spanned by a set of vertices closed under adjacency.
    pub fn subweb(&self, vertices: &[VertexId]) -> Web {
        let vs: BTreeMap<_, _> = vertices.iter().map(|v| (*v, self.vertices()[v])).collect();
        let es = vs
            .values()
            .flat_map(|v| v.edges)
            .map(|e| (e, self.edges()[&e]))
            .collect();
        Web::from_parts_unchecked(vs, es)
    }
}
