mod common;

use sl3::complex::homology;
use sl3::web::link_bracket;

use common::{corpus, corpus_diagram, invariance_pairs};

#[test]
fn corpus_is_small_and_valid() {
    let all = corpus();
    assert!(all.len() >= 20);
    for (name, d) in &all {
        assert!(d.len() <= 4, "{name} has {} crossings", d.len());
    }
}

#[test]
fn kink_fixtures_have_the_named_signs() {
    for (name, writhe) in [
        ("unknot_kink_pos", 1),
        ("unknot_kink_pos_b", 1),
        ("unknot_kink_neg", -1),
        ("unknot_kink_neg_b", -1),
    ] {
        assert_eq!(corpus_diagram(name).writhe(), writhe, "{name}");
    }
}

#[test]
fn reidemeister_two_fixtures_have_zero_writhe_change() {
    for name in [
        "unlink_r2_parallel",
        "unlink_r2_antiparallel",
        "unlink_r2_antiparallel_b",
    ] {
        let d = corpus_diagram(name);
        assert_eq!(d.len(), 2);
        assert_eq!(d.writhe(), 0, "{name}");
        assert_eq!(d.component_count(), 2, "{name}");
    }
}

#[test]
fn paired_diagrams_share_a_bracket() {
    for p in invariance_pairs() {
        let l = link_bracket(&p.left.diagram().unwrap()).unwrap();
        let r = link_bracket(&p.right.diagram().unwrap()).unwrap();
        assert_eq!(l, r, "{}", p.name);
    }
}

#[test]
fn distinct_links_are_told_apart() {
    let h = |n: &str| homology(&corpus_diagram(n)).unwrap();
    assert_ne!(h("trefoil_braid"), h("trefoil_mirror"));
    assert_ne!(h("unknot_0"), h("unlink_0"));
    assert_ne!(h("hopf_pos"), h("hopf_neg"));
    assert_eq!(h("hopf_neg"), h("hopf_reversed"));
}

#[test]
fn trefoil_and_figure_eight_have_three_torsion() {
    for name in ["trefoil_pd", "figure_eight_pd"] {
        let h = homology(&corpus_diagram(name)).unwrap();
        assert!(
            h.entries()
                .iter()
                .any(|e| e.torsion.iter().any(|t| *t == 3.into())),
            "{name}:\n{h}"
        );
    }
}

#[test]
fn figure_eight_is_amphichiral() {
    let d = corpus_diagram("figure_eight_pd");
    let h = homology(&d).unwrap();
    let m = homology(&d.mirror()).unwrap();
    assert_eq!(h.ranks(), m.ranks());
}
