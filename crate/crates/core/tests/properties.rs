use proptest::prelude::*;
use strata_core::algebra::{homology, smith_normal_form, CoefficientRing, DenseMatrix, Ring};
use strata_core::constructions::{library, product_circle, LIBRARY};
use strata_core::intersection_chains::{intersection_complex, is_allowable_resolved, tame_complex};
use strata_core::perversity::{top_value, Perversity};

const Z: CoefficientRing = CoefficientRing::Integers;
const Q: CoefficientRing = CoefficientRing::Rationals;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..=20, c), r))
}

// Transform entries stay within i64, but products of them need not; the
// reconstruction is checked in wider arithmetic.
fn wide(m: &DenseMatrix) -> Vec<Vec<i128>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect()
}

fn wide_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    a.iter()
        .map(|r| {
            (0..b[0].len())
                .map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum())
                .collect()
        })
        .collect()
}

fn space_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(LIBRARY)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_reconstructs(rows in matrix()) {
        let ring = Ring::Integers;
        let m = DenseMatrix::from_rows(&rows);
        let s = smith_normal_form(ring, &m);
        prop_assert_eq!(wide_mul(&wide_mul(&wide(&s.u), &wide(&s.d())), &wide(&s.v)), wide(&m));
        prop_assert_eq!(wide_mul(&wide(&s.u), &wide(&s.u_inv)), wide(&DenseMatrix::identity(m.rows())));
        prop_assert_eq!(wide_mul(&wide(&s.v), &wide(&s.v_inv)), wide(&DenseMatrix::identity(m.cols())));
        prop_assert!(s.diagonal.windows(2).all(|w| w[1] % w[0] == 0));
    }

    #[test]
    fn smith_form_mod_p(rows in matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let ring = Ring::PrimeField(p);
        let m = DenseMatrix::from_rows(&rows.iter().map(|r| r.iter().map(|&v| ring.from_int(v)).collect()).collect::<Vec<_>>());
        let s = smith_normal_form(ring, &m);
        prop_assert_eq!(s.u.mul(ring, &s.d()).mul(ring, &s.v), m);
        prop_assert!(s.diagonal.iter().all(|&d| d == 1));
    }

    #[test]
    fn complement_is_an_involution(name in space_name(), seed in any::<u64>()) {
        let x = library(name).unwrap().complex;
        let p = Perversity::from_fn(&x, |level, id| ((seed >> (level * 7 + id)) % 7) as i64 - 3);
        prop_assert_eq!(p.complement().complement(), p.clone());
        let t = Perversity::from_fn(&x, |level, _| top_value(x.formal_dim() - level));
        prop_assert_eq!(p.add(&p.complement()).unwrap(), t);
    }

    #[test]
    fn allowable_simplices_are_regular(name in space_name(), offsets in prop::collection::vec(0i64..=4, 8)) {
        let x = library(name).unwrap().complex;
        let p = Perversity::from_fn(&x, |level, id| top_value(x.formal_dim() - level) - offsets[(level + id) % 8]);
        let resolved = p.resolve(&x).unwrap();
        for k in 0..=x.dim() {
            for s in x.simplices(k) {
                if is_allowable_resolved(&x, s, &resolved) {
                    prop_assert!(x.is_regular(s));
                    if s.len() > 1 {
                        for i in 0..s.len() {
                            let mut f = s.to_vec();
                            f.remove(i);
                            prop_assert!(x.is_regular(&f));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tame_equals_classical_below_top(name in space_name(), offsets in prop::collection::vec(0i64..=3, 8)) {
        let x = library(name).unwrap().complex;
        let p = Perversity::from_fn(&x, |level, id| top_value(x.formal_dim() - level) - offsets[(level + id) % 8]);
        let classical = homology(&intersection_complex(&x, &p, Z).unwrap().complex, Z).unwrap();
        let tame = homology(&tame_complex(&x, &p, Z).unwrap().complex, Z).unwrap();
        prop_assert_eq!(classical, tame);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn kunneth_with_a_circle(name in prop::sample::select(vec!["rp2", "torus", "sigma_rp2", "cone_rp2", "cone_torus"]), v in -2i64..=3) {
        let s = library(name).unwrap();
        let y = product_circle(&s, 3).complex;
        let x = s.complex;
        let hx = homology(&tame_complex(&x, &Perversity::constant(&x, v), Q).unwrap().complex, Q).unwrap();
        let hy = homology(&tame_complex(&y, &Perversity::constant(&y, v), Q).unwrap().complex, Q).unwrap();
        for k in 0..=y.formal_dim() {
            let expected = hx.degree(k).free_rank + if k > 0 { hx.degree(k - 1).free_rank } else { 0 };
            prop_assert_eq!(hy.degree(k).free_rank, expected, "degree {}", k);
        }
    }
}
