mod common;

use common::{cf_determinant, oracle_homology, table};
use khbord::khovanov::knots::{torus_knot, two_bridge, ALTERNATING_KNOTS};
use khbord::khovanov::{build_complex, determinant, parse_pd, Ring};

#[test]
fn trefoil_reduced_total_is_three() {
    let d = torus_knot(2, 3).unwrap();
    let h = build_complex(&d, true, Ring::F2).unwrap().homology();
    assert_eq!(h.total(), 3);
    assert_eq!(oracle_homology(&d, true, false).values().sum::<usize>(), 3);
}

#[test]
fn corpus_matches_brute_force() {
    for (name, cf) in ALTERNATING_KNOTS {
        let d = two_bridge(cf).unwrap();
        for reduced in [false, true] {
            for (ring, bn) in [(Ring::F2, false), (Ring::R, true)] {
                let ours = table(&build_complex(&d, reduced, ring).unwrap().homology());
                assert_eq!(ours, oracle_homology(&d, reduced, bn), "{name} reduced={reduced} ring={ring:?}");
            }
        }
    }
}

#[test]
fn determinants_match_continued_fractions() {
    for (name, cf) in ALTERNATING_KNOTS {
        assert_eq!(determinant(&two_bridge(cf).unwrap()).unwrap(), cf_determinant(cf), "{name}");
    }
}

#[test]
fn pd_file_round_trip() {
    let d = two_bridge(&[2, 1, 1]).unwrap();
    let text: Vec<String> = d.pd().iter().map(|x| format!("X({},{},{},{})", x[0], x[1], x[2], x[3])).collect();
    let e = parse_pd(&text.join("\n")).unwrap();
    assert_eq!(e.len(), 4);
    assert_eq!(determinant(&e).unwrap(), 5);
    assert_eq!(
        table(&build_complex(&e, false, Ring::F2).unwrap().homology()),
        table(&build_complex(&d, false, Ring::F2).unwrap().homology())
    );
}
