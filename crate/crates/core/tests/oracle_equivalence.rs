mod common;

use common::{closed_surfaces, named_fixtures, wedge_of_spheres};
use tightness::decide::{decide_tight_3, FieldChoice};
use tightness::oracle::{is_injective_on_homology, is_tight_bruteforce};
use tightness::tight_fpt::{decide_tight_f2, is_j_tight_f2};
use tightness::SimplicialComplex;
use tightness::{decide_auto, FieldSpec, Method, Verdict};

#[test]
fn enumeration_counts() {
    let s = closed_surfaces(8);
    println!("{} labelled surfaces", s.len());
    assert!(s.iter().any(|c| c.f_vector().0 == vec![4, 6, 4]));
    assert!(s.iter().any(|c| c.f_vector().0 == vec![6, 12, 8]));
    assert!(s.iter().all(|c| c.is_closed_pseudomanifold() && c.is_connected() && c.facets().len() <= 8));
}

#[test]
fn fptd_matches_oracle_on_closed_surfaces() {
    let surfaces = closed_surfaces(8);
    let mut disagreements = Vec::new();
    for c in surfaces.iter().chain(std::iter::once(&wedge_of_spheres())) {
        let fpt = decide_tight_f2(c).unwrap();
        let brute = is_tight_bruteforce(c, FieldSpec::F2).unwrap();
        if fpt.tight != brute.is_tight() {
            disagreements.push(c.facet_labels());
        }
    }
    assert!(disagreements.is_empty(), "{disagreements:?}");
}

#[test]
fn fptd_matches_oracle_on_twelve_facet_surfaces() {
    let surfaces = closed_surfaces(12);
    assert!(surfaces.iter().any(|c| c.f_vector().0 == vec![6, 15, 10]), "rp2_6 is reachable");
    for c in &surfaces {
        let fpt = decide_tight_f2(c).unwrap();
        let brute = is_tight_bruteforce(c, FieldSpec::F2).unwrap();
        assert_eq!(fpt.tight, brute.is_tight(), "{:?}", c.facet_labels());
    }
}

#[test]
fn fptd_matches_oracle_on_fixtures() {
    for (name, c) in named_fixtures() {
        let fpt = decide_tight_f2(&c).unwrap();
        let brute = is_tight_bruteforce(&c, FieldSpec::F2).unwrap();
        assert_eq!(fpt.tight, brute.is_tight(), "{name}");
    }
}

#[test]
fn poly3_matches_oracle() {
    for (name, c) in named_fixtures().into_iter().filter(|(_, c)| c.dim() == 3 && c.vertex_count() <= 12) {
        for f in [FieldSpec::F2, FieldSpec::Rationals, FieldSpec::prime(3).unwrap()] {
            let r = decide_tight_3(&c, FieldChoice::Fixed(f));
            let brute = is_tight_bruteforce(&c, f).unwrap();
            assert_eq!(r.is_tight(), brute.is_tight(), "{name} over {f}");
        }
    }
}

#[test]
fn auto_matches_brute_on_small_fixtures() {
    for (name, c) in named_fixtures().into_iter().filter(|(_, c)| c.vertex_count() <= 12) {
        for f in [FieldSpec::F2, FieldSpec::Rationals] {
            let auto = decide_auto(&c, FieldChoice::Fixed(f), Method::Auto);
            let brute = is_tight_bruteforce(&c, f).unwrap();
            if auto.verdict != Verdict::NotApplicable {
                assert_eq!(auto.is_tight(), brute.is_tight(), "{name} over {f}: {auto:?}");
            }
        }
    }
}

fn j_tight_brute(c: &SimplicialComplex, j: usize) -> bool {
    let n = c.vertex_count();
    (1u64..(1 << n)).all(|mask| {
        let w: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        is_injective_on_homology(c, &w, j, FieldSpec::F2)
    })
}

#[test]
fn each_degree_matches_oracle() {
    let mut cases: Vec<SimplicialComplex> = closed_surfaces(12);
    cases.extend(named_fixtures().into_iter().map(|(_, c)| c).filter(|c| c.vertex_count() <= 10));
    for c in &cases {
        for j in 0..c.dim() {
            assert_eq!(is_j_tight_f2(c, j).unwrap(), j_tight_brute(c, j), "j = {j}: {:?}", c.facet_labels());
        }
    }
}
