use strata_core::algebra::{homology, CoefficientRing, HomologyGroup, HomologySummary};
use strata_core::constructions::{library, rp2, rp3, sphere, torus};
use strata_core::filtered_complex::FilteredComplex;
use strata_core::intersection_chains::{intersection_complex, simplicial_complex, tame_complex};
use strata_core::perversity::Perversity;

const Z: CoefficientRing = CoefficientRing::Integers;

fn groups(spec: &[(usize, &[i64])]) -> HomologySummary {
    HomologySummary {
        degrees: spec
            .iter()
            .map(|&(f, t)| HomologyGroup {
                free_rank: f,
                torsion: t.to_vec(),
            })
            .collect(),
    }
}

fn simplicial(x: &FilteredComplex, ring: CoefficientRing) -> HomologySummary {
    homology(&simplicial_complex(x, ring).unwrap().complex, ring).unwrap()
}

#[test]
fn library_manifolds() {
    assert_eq!(
        simplicial(&sphere(2), Z),
        groups(&[(1, &[]), (0, &[]), (1, &[])])
    );
    assert_eq!(
        simplicial(&torus(), Z),
        groups(&[(1, &[]), (2, &[]), (1, &[])])
    );
    assert_eq!(
        simplicial(&rp2(), Z),
        groups(&[(1, &[]), (0, &[2]), (0, &[])])
    );
    assert_eq!(
        simplicial(&rp2(), CoefficientRing::PrimeField(2)).ranks(),
        vec![1, 1, 1]
    );
    assert_eq!(
        simplicial(&rp3(), Z),
        groups(&[(1, &[]), (0, &[2]), (0, &[]), (1, &[])])
    );
    let x = rp3();
    assert_eq!(
        (x.count(0), x.count(1), x.count(2), x.count(3)),
        (11, 51, 80, 40)
    );
}

#[test]
fn suspension_of_rp2_zero_perversity() {
    let x = library("sigma_rp2").unwrap().complex;
    assert_eq!(x.num_vertices(), 8);
    assert_eq!(x.strata().len(), 3);
    let p = Perversity::zero(3);
    let h = homology(&intersection_complex(&x, &p, Z).unwrap().complex, Z).unwrap();
    assert_eq!(h, groups(&[(1, &[]), (0, &[2]), (0, &[]), (0, &[])]));
    let t = homology(&tame_complex(&x, &p, Z).unwrap().complex, Z).unwrap();
    assert_eq!(t, h);
}

#[test]
fn suspension_of_rp3_middle() {
    let x = library("sigma_rp3").unwrap().complex;
    assert_eq!(x.num_vertices(), 13);
    assert_eq!(x.count(4), 80);
    let p = Perversity::constant(&x, 1);
    let h = homology(&intersection_complex(&x, &p, Z).unwrap().complex, Z).unwrap();
    assert_eq!(h.degree(2), HomologyGroup::default());
    assert_eq!(
        h.degree(1),
        HomologyGroup {
            free_rank: 0,
            torsion: vec![2]
        }
    );
}
