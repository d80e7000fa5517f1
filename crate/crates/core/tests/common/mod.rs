#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use sl3::cli::{parse_pairs, InvariancePair};
use sl3::diagram::DiagramJson;
use sl3::{LinkDiagram, PreFoam};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

#[derive(Deserialize)]
struct CorpusEntry {
    name: String,
    diagram: DiagramJson,
}

/// Every fixture diagram, by name.
pub fn corpus() -> Vec<(String, LinkDiagram)> {
    let text = std::fs::read_to_string(fixture("corpus.json")).unwrap();
    let entries: Vec<CorpusEntry> = serde_json::from_str(&text).unwrap();
    entries
        .into_iter()
        .map(|e| {
            let d = LinkDiagram::from_json(&e.diagram).unwrap();
            d.validate().unwrap();
            (e.name, d)
        })
        .collect()
}

pub fn corpus_diagram(name: &str) -> LinkDiagram {
    corpus()
        .into_iter()
        .find(|(n, _)| n == name)
        .unwrap_or_else(|| panic!("no fixture named {name}"))
        .1
}

pub fn invariance_pairs() -> Vec<InvariancePair> {
    parse_pairs(&std::fs::read_to_string(fixture("invariance.json")).unwrap()).unwrap()
}

/// Trace on H*(Fl_3): X3 = -X1 - X2, and in top degree the only survivors
/// are X1 X2^2 -> 1 and X1^2 X2 -> -1.
pub fn flag_trace(a: u32, b: u32, c: u32) -> i64 {
    if a + b + c != 3 {
        return 0;
    }
    // expand X1^a X2^b (-X1 - X2)^c
    let mut total = 0;
    for k in 0..=c {
        let coeff = binom(c, k) * if c % 2 == 1 { -1 } else { 1 };
        // X1^(a + k) X2^(b + c - k)
        total += coeff
            * match (a + k, b + c - k) {
                (1, 2) => 1,
                (2, 1) => -1,
                _ => 0,
            };
    }
    total
}

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn theta(a: u32, b: u32, c: u32) -> BigInt {
    BigInt::from(flag_trace(a, b, c))
}

/// Facet data of a pre-foam as `(genus, dots)` plus circles, for rebuilding
/// after local edits.
#[derive(Clone, Debug)]
pub struct Sketch {
    pub facets: Vec<(u32, u32)>,
    pub circles: Vec<[usize; 3]>,
}

impl Sketch {
    pub fn build(&self) -> PreFoam {
        PreFoam::new(&self.facets, self.circles.clone()).unwrap()
    }

    pub fn eval(&self) -> BigInt {
        self.build().evaluate()
    }

    pub fn dotted(&self, facet: usize, n: u32) -> Sketch {
        let mut s = self.clone();
        s.facets[facet].1 += n;
        s
    }

    fn add_facet(&mut self, genus: u32, dots: u32) -> usize {
        self.facets.push((genus, dots));
        self.facets.len() - 1
    }
}

pub fn random_sketch(rng: &mut ChaCha8Rng) -> Sketch {
    let nf = rng.gen_range(1..=4);
    let facets = (0..nf)
        .map(|_| {
            let genus = match rng.gen_range(0..10) {
                0..=5 => 0,
                6..=8 => 1,
                _ => 2,
            };
            (genus, rng.gen_range(0..=2))
        })
        .collect();
    let nc = rng.gen_range(0..=3);
    let circles = (0..nc)
        .map(|_| {
            let mut c = [0; 3];
            for slot in c.iter_mut() {
                *slot = rng.gen_range(0..nf);
            }
            c
        })
        .collect();
    Sketch { facets, circles }
}

/// Outcome of one local relation over many generated closures.
#[derive(Debug)]
pub struct RelationStats {
    pub name: &'static str,
    pub trials: usize,
    pub nonzero: usize,
    pub failures: Vec<String>,
}

impl RelationStats {
    pub fn passed(&self, min_nonzero: usize) -> bool {
        self.failures.is_empty() && self.nonzero >= min_nonzero
    }
}

/// One draw: left side, right side, whether any evaluated term was
/// nonzero, and a description for failures.
type Draw = (BigInt, BigInt, bool, String);

fn nz(v: &BigInt) -> bool {
    *v != BigInt::from(0)
}

type Relation = fn(&mut ChaCha8Rng) -> Draw;

fn separating_surgery(rng: &mut ChaCha8Rng) -> Draw {
    let u = random_sketch(rng);
    let f = rng.gen_range(0..u.facets.len());
    let (g, d) = u.facets[f];
    let mut split = u.clone();
    let g1 = rng.gen_range(0..=g);
    let d1 = rng.gen_range(0..=d);
    split.facets[f] = (g1, d1);
    let f2 = split.add_facet(g - g1, d - d1);
    for c in split.circles.iter_mut() {
        for slot in c.iter_mut() {
            if *slot == f && rng.gen_bool(0.5) {
                *slot = f2;
            }
        }
    }
    let terms: Vec<BigInt> = (0..=2)
        .map(|i| -split.dotted(f, i).dotted(f2, 2 - i).eval())
        .collect();
    let lhs = u.eval();
    let seen = nz(&lhs) || terms.iter().any(nz);
    let rhs = terms.into_iter().sum();
    (lhs, rhs, seen, format!("{u:?} split at {f} into {split:?}"))
}

fn genus_reduction(rng: &mut ChaCha8Rng) -> Draw {
    let mut u = random_sketch(rng);
    let f = rng.gen_range(0..u.facets.len());
    let lower = u.clone();
    u.facets[f].0 += 1;
    let rhs = -BigInt::from(3) * lower.dotted(f, 2).eval();
    let lhs = u.eval();
    let seen = nz(&lhs) || nz(&rhs);
    (lhs, rhs, seen, format!("{u:?} handle on {f}"))
}

fn with_circle(rng: &mut ChaCha8Rng) -> (Sketch, [usize; 3]) {
    let mut u = random_sketch(rng);
    if u.circles.is_empty() {
        let n = u.facets.len();
        u.circles.push([
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
        ]);
    }
    let c = u.circles[rng.gen_range(0..u.circles.len())];
    (u, c)
}

fn dots_e1(rng: &mut ChaCha8Rng) -> Draw {
    let (u, c) = with_circle(rng);
    let terms: Vec<BigInt> = c.iter().map(|&f| u.dotted(f, 1).eval()).collect();
    let seen = terms.iter().any(nz);
    (
        terms.into_iter().sum(),
        BigInt::from(0),
        seen,
        format!("{u:?} at {c:?}"),
    )
}

fn dots_e2(rng: &mut ChaCha8Rng) -> Draw {
    let (u, c) = with_circle(rng);
    let terms: Vec<BigInt> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(x, y)| u.dotted(c[x], 1).dotted(c[y], 1).eval())
        .collect();
    let seen = terms.iter().any(nz);
    (
        terms.into_iter().sum(),
        BigInt::from(0),
        seen,
        format!("{u:?} at {c:?}"),
    )
}

fn dots_e3(rng: &mut ChaCha8Rng) -> Draw {
    let (u, c) = with_circle(rng);
    // interesting when the undotted foam, or some partial dotting, is nonzero
    let lhs = u.dotted(c[0], 1).dotted(c[1], 1).dotted(c[2], 1).eval();
    let seen =
        nz(&u.eval()) || (0..3).any(|k| nz(&u.dotted(c[k], 1).dotted(c[(k + 1) % 3], 1).eval()));
    (lhs, BigInt::from(0), seen, format!("{u:?} at {c:?}"))
}

fn bubble(rng: &mut ChaCha8Rng) -> Draw {
    let base = random_sketch(rng);
    let f = rng.gen_range(0..base.facets.len());
    let (a, b) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
    let mut u = base.clone();
    let d1 = u.add_facet(0, a);
    let d2 = u.add_facet(0, b);
    let reversed = rng.gen_bool(0.5);
    u.circles
        .push(if reversed { [f, d2, d1] } else { [f, d1, d2] });
    let terms: Vec<BigInt> = (0..=2)
        .map(|i| {
            let t = if reversed {
                theta(i, b, a)
            } else {
                theta(i, a, b)
            };
            -t * base.dotted(f, 2 - i).eval()
        })
        .collect();
    let lhs = u.eval();
    let seen = nz(&lhs) || terms.iter().any(nz);
    (lhs, terms.into_iter().sum(), seen, format!("{u:?}"))
}

fn disc_removal(rng: &mut ChaCha8Rng) -> Draw {
    let base = random_sketch(rng);
    let n = base.facets.len();
    let f2 = rng.gen_range(0..n);
    let f3 = if rng.gen_bool(0.2) {
        f2
    } else {
        rng.gen_range(0..n)
    };
    let a = rng.gen_range(0..=2);
    let mut u = base.clone();
    let disc = u.add_facet(0, a);
    u.circles.push([disc, f2, f3]);
    let mut rhs = BigInt::from(0);
    let lhs = u.eval();
    let mut seen = nz(&lhs);
    for i2 in 0..=2 {
        for i3 in 0..=2 {
            let t = theta(a, i2, i3);
            if nz(&t) {
                let term = t * base.dotted(f2, 2 - i2).dotted(f3, 2 - i3).eval();
                seen |= nz(&term);
                rhs += term;
            }
        }
    }
    (lhs, rhs, seen, format!("{u:?}"))
}

fn reversal(rng: &mut ChaCha8Rng) -> Draw {
    let (u, _) = with_circle(rng);
    let k = rng.gen_range(0..u.circles.len());
    let p = u.build();
    let rhs = -p.evaluate();
    let seen = nz(&rhs);
    (
        p.reverse_circle(k).evaluate(),
        rhs,
        seen,
        format!("{u:?} at {k}"),
    )
}

fn multiplicativity(rng: &mut ChaCha8Rng) -> Draw {
    let u = random_sketch(rng).build();
    let v = random_sketch(rng).build();
    let rhs = u.evaluate() * v.evaluate();
    let seen = nz(&rhs);
    (
        u.disjoint_union(&v).evaluate(),
        rhs,
        seen,
        format!("{u:?} and {v:?}"),
    )
}

pub const RELATIONS: [(&str, Relation); 11] = [
    ("surgery formula", separating_surgery),
    ("genus reduction", genus_reduction),
    ("dots: X1 + X2 + X3 = 0", dots_e1),
    ("dots: X1X2 + X1X3 + X2X3 = 0", dots_e2),
    ("dots: X1X2X3 = 0", dots_e3),
    ("bursting bubbles", bubble),
    ("disc removal", disc_removal),
    ("reversing a circle negates", reversal),
    ("multiplicativity", multiplicativity),
    ("vanishing list", vanishing),
    ("nonzero Euler characteristic vanishes", euler_vanishing),
];

/// A foam meeting one of the vanishing conditions evaluates to zero.
fn vanishing(rng: &mut ChaCha8Rng) -> Draw {
    let mut u = random_sketch(rng);
    let n = u.facets.len();
    match rng.gen_range(0..5) {
        0 => u.facets[rng.gen_range(0..n)].0 = rng.gen_range(2..4),
        1 => {
            let f = rng.gen_range(0..n);
            u.facets[f] = (1, rng.gen_range(1..3));
        }
        2 => u.facets[rng.gen_range(0..n)].1 = rng.gen_range(3..5),
        3 => {
            let (f, g) = (u.add_facet(0, 2), u.add_facet(0, 2));
            let h = rng.gen_range(0..n);
            u.circles.push([f, g, h]);
        }
        _ => {
            let f = rng.gen_range(0..n);
            let h = rng.gen_range(0..n);
            u.circles.push([f, f, h]);
        }
    }
    (u.eval(), BigInt::from(0), true, format!("{u:?}"))
}

/// Nonzero Euler characteristic forces zero.
fn euler_vanishing(rng: &mut ChaCha8Rng) -> Draw {
    let u = random_sketch(rng);
    let p = u.build();
    let seen = p.euler() != 0;
    let lhs = if seen { p.evaluate() } else { BigInt::from(0) };
    (lhs, BigInt::from(0), seen, format!("{u:?}"))
}

/// Draw closures for each relation until `target` of them have a nonzero
/// side, or the attempt budget runs out.
pub fn relation_suite(seed: u64, target: usize) -> Vec<RelationStats> {
    RELATIONS
        .iter()
        .enumerate()
        .map(|(k, (name, rel))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed + k as u64);
            let mut stats = RelationStats {
                name,
                trials: 0,
                nonzero: 0,
                failures: vec![],
            };
            let budget = 2000 * target;
            while stats.nonzero < target {
                if stats.trials >= budget {
                    break;
                }
                let (lhs, rhs, seen, what) = rel(&mut rng);
                stats.trials += 1;
                stats.nonzero += usize::from(seen);
                if lhs != rhs && stats.failures.len() < 5 {
                    stats.failures.push(format!("{lhs} != {rhs}: {what}"));
                }
            }
            stats
        })
        .collect()
}
