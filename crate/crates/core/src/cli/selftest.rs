use num_bigint::BigInt;

use crate::complex::homology;
use crate::diagram::parse_pd;
use crate::foam::PreFoam;
use crate::web::samples::{cube, theta, theta_chain};
use crate::web::Web;
use crate::webhom::{
    digon_identities, ring_relations, square_identities, IdentityCheck, IntMatrix, WebBasis,
};
use crate::Result;

fn check(name: impl Into<String>, holds: bool) -> IdentityCheck {
    IdentityCheck {
        name: name.into(),
        holds,
    }
}

fn theta_value(a: u32, b: u32, c: u32) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// Every identity the program knows how to check on small inputs.
pub fn run_selftest() -> Result<Vec<IdentityCheck>> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let v = PreFoam::theta(a, b, c).evaluate();
                out.push(check(
                    format!("theta({a},{b},{c})"),
                    v == BigInt::from(theta_value(a, b, c)),
                ));
            }
        }
    }
    for d in 0..5 {
        let v = PreFoam::surface(0, d).evaluate();
        out.push(check(
            format!("sphere with {d} dots"),
            v == BigInt::from(if d == 2 { -1 } else { 0 }),
        ));
        let v = PreFoam::surface(1, d).evaluate();
        out.push(check(
            format!("torus with {d} dots"),
            v == BigInt::from(if d == 0 { 3 } else { 0 }),
        ));
        for g in 2..4 {
            out.push(check(
                format!("genus {g} with {d} dots"),
                PreFoam::surface(g, d).evaluate() == BigInt::from(0),
            ));
        }
    }
    // cutting a handle: F(genus g + 1, d) = -3 F(genus g, d + 2)
    for g in 0..3 {
        for d in 0..3 {
            let lhs = PreFoam::surface(g + 1, d).evaluate();
            let rhs = -BigInt::from(3) * PreFoam::surface(g, d + 2).evaluate();
            out.push(check(
                format!("handle surgery, genus {g}, {d} dots"),
                lhs == rhs,
            ));
        }
    }
    let circle = WebBasis::new(&Web::circle(0))?;
    let anti = IntMatrix::from_rows(&[vec![0, 0, -1], vec![0, -1, 0], vec![-1, 0, 0]]);
    out.push(check("circle Gram matrix", *circle.gram()? == anti));
    let t = theta();
    for s in t.digon_sites() {
        out.extend(digon_identities(&t, s)?);
    }
    let (chain, _) = theta_chain(2);
    for s in chain.digon_sites() {
        out.extend(digon_identities(&chain, s)?);
    }
    let c = cube();
    for s in c.square_sites() {
        out.extend(square_identities(&c, s)?);
    }
    for w in [t, chain, c] {
        out.extend(ring_relations(&w)?);
    }
    let unknot = homology(&parse_pd("O")?)?;
    for pd in ["X(1,2,2,1)", "X(1,1,2,2)"] {
        out.push(check(
            format!("{pd} has unknot homology"),
            homology(&parse_pd(pd)?)? == unknot,
        ));
    }
    Ok(out)
}
