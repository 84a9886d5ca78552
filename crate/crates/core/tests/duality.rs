use strata_core::algebra::{CoefficientRing, HomologyGroup, Ring};
use strata_core::constructions::{library, recipe, rp2, sphere};
use strata_core::duality::{comparison, duality, fundamental_cycle, orient, pairing, witt};
use strata_core::perversity::Perversity;
use strata_core::Error;

const Z: CoefficientRing = CoefficientRing::Integers;
const Q: CoefficientRing = CoefficientRing::Rationals;
const F2: CoefficientRing = CoefficientRing::PrimeField(2);

#[test]
fn orientations() {
    let s = sphere(2);
    let signs = orient(&s, Ring::Integers).unwrap();
    assert_eq!(signs.len(), 4);
    let g = fundamental_cycle(&s, Z).unwrap();
    assert!(s
        .boundary_matrix(Ring::Integers, 2)
        .mul_vec(Ring::Integers, &g)
        .is_zero());
    assert_eq!(orient(&rp2(), Ring::Integers), Err(Error::NonOrientable));
    assert!(orient(&library("sigma_rp3").unwrap().complex, Ring::Integers).is_ok());
    let srp2 = library("sigma_rp2").unwrap().complex;
    assert_eq!(orient(&srp2, Ring::Integers), Err(Error::NonOrientable));
    assert!(fundamental_cycle(&srp2, F2).is_ok());
    assert!(orient(&recipe("cone(rp2)").unwrap().complex, Ring::Integers).is_err());
}

#[test]
fn sphere_duality() {
    let r = duality(&sphere(2), &Perversity::zero(2), Z).unwrap();
    assert!(r.isomorphism);
    for d in &r.degrees {
        assert_eq!(d.source, d.target);
        if d.source.free_rank == 1 {
            assert_eq!(d.matrix.determinant(Ring::Integers).abs(), 1);
        }
    }
}

#[test]
fn suspension_of_rp3_duality() {
    let x = library("sigma_rp3").unwrap().complex;
    let p = Perversity::constant(&x, 1);
    let r = duality(&x, &p, Z).unwrap();
    assert!(r.isomorphism);
    assert_eq!(
        r.degrees[3].target,
        HomologyGroup {
            free_rank: 0,
            torsion: vec![2]
        }
    );
    assert_eq!(r.degrees[2].target, HomologyGroup::default());
    assert_eq!(r.degrees[3].source, r.degrees[3].target);
}

#[test]
fn mod_two_duality_on_nonorientable_suspension() {
    let x = library("sigma_rp2").unwrap().complex;
    for v in -2..=3 {
        let r = duality(&x, &Perversity::constant(&x, v), F2).unwrap();
        assert!(r.isomorphism, "p = {v}");
    }
}

#[test]
fn product_pairing_is_unimodular() {
    let x = library("s2xs1").unwrap().complex;
    for k in 0..=3 {
        let r = pairing(&x, &Perversity::zero(3), k, Z).unwrap();
        assert_eq!(r.matrix.rows(), 1, "k = {k}");
        assert!(r.unimodular, "k = {k}");
    }
}

#[test]
fn chi_comparison_over_fields() {
    for (name, coeff) in [
        ("sigma_rp2", Q),
        ("sigma_rp2", F2),
        ("sigma_rp3", Q),
        ("cone_torus", F2),
    ] {
        let x = library(name).unwrap().complex;
        for v in -1..=3 {
            let r = comparison(&x, &Perversity::constant(&x, v), coeff).unwrap();
            assert!(
                r.ranks_equal,
                "{name} {coeff} p = {v}: {} vs {}",
                r.blowup, r.dual_tame
            );
            assert!(r.isomorphism, "{name} {coeff} p = {v}");
        }
    }
}

#[test]
fn witt_conditions() {
    assert!(witt(&library("sigma_rp3").unwrap(), Z)
        .unwrap()
        .strata
        .is_empty());
    let s = library("sigma_rp2").unwrap();
    let r = witt(&s, Z).unwrap();
    assert_eq!(r.strata.len(), 2);
    assert!(!r.is_witt());
    assert_eq!(
        r.strata[0].middle,
        HomologyGroup {
            free_rank: 0,
            torsion: vec![2]
        }
    );
    assert!(witt(&s, Q).unwrap().is_witt());
}
