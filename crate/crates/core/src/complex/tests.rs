use super::*;
use crate::diagram::parse_pd;

const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

fn unknot_table() -> BigradedHomology {
    let z = HomologyGroup {
        rank: 1,
        torsion: vec![],
    };
    BigradedHomology {
        groups: [(0, -2), (0, 0), (0, 2)]
            .into_iter()
            .map(|k| (k, z.clone()))
            .collect(),
    }
}

#[test]
fn empty_diagram_is_z_in_degree_zero() {
    let h = homology(&LinkDiagram::empty()).unwrap();
    assert_eq!(h.entries().len(), 1);
    assert_eq!(h.get(0, 0).unwrap().rank, 1);
}

#[test]
fn crossingless_unknot() {
    let d = parse_pd("O").unwrap();
    let c = build_complex(&d).unwrap();
    assert_eq!(c.min_i, 0);
    let dims: Vec<(i64, Vec<usize>)> = c.slices.iter().map(|(j, s)| (*j, s.dims.clone())).collect();
    assert_eq!(dims, vec![(-2, vec![1]), (0, vec![1]), (2, vec![1])]);
    assert_eq!(c.homology().unwrap(), unknot_table());
}

#[test]
fn kinked_unknots() {
    for pd in ["X(1,2,2,1)", "X(1,1,2,2)"] {
        let d = parse_pd(pd).unwrap();
        assert_eq!(homology(&d).unwrap(), unknot_table(), "{pd}");
    }
}

#[test]
fn positive_kink_cube_ranks() {
    let d = parse_pd("X(1,2,2,1)").unwrap();
    let cube = Cube::new(&d).unwrap();
    // two circles shifted by -2, then a theta shifted by -3
    assert_eq!(cube.vertices[0].basis.len(), 9);
    assert_eq!(cube.vertices[0].shift, -2);
    assert_eq!(cube.vertices[1].basis.len(), 6);
    assert_eq!(cube.vertices[1].shift, -3);
}

#[test]
fn trefoil_complex() {
    let d = parse_pd(TREFOIL).unwrap();
    let cube = Cube::new(&d).unwrap();
    assert_eq!(cube.vertices.len(), 8);
    assert_eq!(cube.edges.len(), 12);
    assert_eq!(cube.check_anticommutativity().unwrap(), 6);
    let c = GradedChainComplex::from_cube(&cube);
    c.check_d_squared().unwrap();
    let bracket = link_bracket(&d).unwrap();
    assert_eq!(c.euler_characteristic(), bracket);
    let h = c.homology().unwrap();
    assert_eq!(h.euler_characteristic(), bracket);
}

#[test]
fn mirror_transposes_free_ranks() {
    let d = parse_pd(TREFOIL).unwrap();
    let h = homology(&d).unwrap();
    let m = homology(&d.mirror()).unwrap();
    let flipped: BTreeMap<(i64, i64), usize> = h
        .ranks()
        .into_iter()
        .map(|((i, j), r)| ((-i, -j), r))
        .collect();
    assert_eq!(m.ranks(), flipped);
}

#[test]
fn compare_reports_differences() {
    let a = unknot_table();
    let mut b = a.clone();
    b.groups.remove(&(0, 2));
    let r = compare(&a, &b);
    assert!(!r.pass);
    assert_eq!(r.differences.len(), 1);
    assert_eq!((r.differences[0].i, r.differences[0].j), (0, 2));
    assert!(compare(&a, &a).pass);
}

#[test]
fn table_display() {
    let text = unknot_table().to_string();
    assert!(text.contains("-2"));
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn torsion_json_round_trip() {
    let e = HomologyEntry {
        i: 3,
        j: -10,
        rank: 0,
        torsion: vec![BigInt::from(3), BigInt::from(u64::MAX) * 5],
    };
    let text = serde_json::to_string(&e).unwrap();
    assert!(text.contains("[3,\""), "{text}");
    let back: HomologyEntry = serde_json::from_str(&text).unwrap();
    assert_eq!(back, e);
}
