use strata_core::algebra::{homology, CoefficientRing, HomologyGroup, Ring};
use strata_core::blowup::{simplex_boundary, BlowupComplex, BlowupElement, ConeFace, LocalBlowup};
use strata_core::constructions::{library, recipe, sphere};
use strata_core::filtered_complex::JoinDecomposition;
use strata_core::intersection_chains::{tame_complex, PerverseDegree};
use strata_core::perversity::Perversity;

const Z: CoefficientRing = CoefficientRing::Integers;
const R: Ring = Ring::Integers;

fn local(dims: &[i64]) -> LocalBlowup {
    LocalBlowup::new(JoinDecomposition {
        dims: dims.to_vec(),
    })
}

fn el(factors: &[(u32, bool)]) -> BlowupElement {
    BlowupElement {
        factors: factors.iter().map(|&(f, c)| ConeFace::new(f, c)).collect(),
    }
}

#[test]
fn local_coboundary_squares_to_zero() {
    for dims in [
        &[0, 0, 1][..],
        &[1, 0],
        &[-1, 1, 0],
        &[0, -1, 2],
        &[1, 1, 0],
        &[2, 1],
    ] {
        let l = local(dims);
        let d = l.coboundary(R);
        assert!(d.mul(R, &d).is_zero(), "δδ ≠ 0 for {dims:?}");
        let b = l.tensor_boundary(R);
        assert!(b.mul(R, &b).is_zero(), "∂∂ ≠ 0 for {dims:?}");
    }
}

#[test]
fn join_of_three_basis() {
    // Δ = [e0] ∗ [e1] ∗ [e2, e3]: 3 · 3 · 3 basis elements.
    let l = local(&[0, 0, 1]);
    assert_eq!(l.elements().len(), 27);
    assert_eq!(l.basis(0).count(), 8);
    assert_eq!(l.basis(3).count(), 1);
}

#[test]
fn join_of_three_perverse_degrees() {
    let full = 0b11;
    for eps in [false, true] {
        let e = el(&[(1, false), (1, eps), (full, false)]);
        assert_eq!(e.perverse_degree(2), PerverseDegree::Finite(1 + eps as i64));
    }
    let e = el(&[(1, true), (1, false), (1, false)]);
    assert_eq!(e.perverse_degree(2), PerverseDegree::NegInfinity);
    for (f1, e1, f2) in [(0, true, 1), (1, false, 3), (1, true, 2), (0, true, 3)] {
        let e = el(&[(1, false), (f1, e1), (f2, false)]);
        let expected = ConeFace::new(f1, e1).dim() + ConeFace::new(f2, false).dim();
        assert_eq!(e.perverse_degree(2), PerverseDegree::Finite(expected));
    }
    for eps0 in [false, true] {
        let e = el(&[(1, eps0), (1, true), (3, false)]);
        assert_eq!(e.perverse_degree(1), PerverseDegree::NegInfinity);
        let e = el(&[(1, eps0), (1, false), (2, false)]);
        assert_eq!(e.perverse_degree(1), PerverseDegree::Finite(0));
    }
}

#[test]
fn blow_down_commutes_with_boundary() {
    for dims in [&[0, 0, 1][..], &[1, 0], &[-1, 1, 1], &[1, 1, 0]] {
        let l = local(dims);
        let b = l.tensor_boundary(R);
        for (i, e) in l.elements().iter().enumerate() {
            // μ(∂e) as signed faces of Δ.
            let mut lhs: Vec<(u64, i64)> = Vec::new();
            for (j, v) in b.column(i).iter() {
                if let Some(m) = l.mu(&l.elements()[j]) {
                    lhs.push((m, v));
                }
            }
            let rhs = l.mu(e).map(simplex_boundary).unwrap_or_default();
            assert_eq!(normalize(lhs), normalize(rhs), "μ∂ ≠ ∂μ on {e:?}");
        }
    }
}

fn normalize(mut v: Vec<(u64, i64)>) -> Vec<(u64, i64)> {
    v.sort();
    let mut out: Vec<(u64, i64)> = Vec::new();
    for (m, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 += c,
            _ => out.push((m, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}

#[test]
fn tilde_cap_of_top_element() {
    let l = local(&[0, 0, 1]);
    let top = el(&[(1, true), (1, true), (3, false)]);
    let (_, back) = l.tilde_cap(&top).unwrap();
    assert_eq!(back, el(&[(0, true), (0, true), (2, false)]));
    assert_eq!(l.mu(&back), Some(0b1000));
    assert_eq!(l.tilde_cap(&el(&[(1, false), (0, true), (1, false)])), None);
    let bottom = el(&[(1, false), (1, false), (1, false)]);
    let (s, back) = l.tilde_cap(&bottom).unwrap();
    assert_eq!(s, 1);
    assert_eq!(l.mu(&back), Some(0b1111));
}

#[test]
fn manifold_blowup_is_ordinary_cohomology() {
    let x = sphere(2);
    let b = BlowupComplex::new(&x, Z);
    b.complex().check_square_zero(R).unwrap();
    let h = homology(b.complex(), Z).unwrap();
    assert_eq!(h.ranks(), vec![1, 0, 1]);
}

#[test]
fn global_coboundary_squares_to_zero() {
    for name in ["sigma_rp2", "cone_torus", "s1_sigma_rp2"] {
        let x = library(name).unwrap().complex;
        let b = BlowupComplex::new(&x, Z);
        b.complex().check_square_zero(R).unwrap();
    }
}

fn blowup_cohomology(name: &str, p: &Perversity, coeff: CoefficientRing) -> Vec<HomologyGroup> {
    let x = recipe(name).unwrap().complex;
    let b = BlowupComplex::new(&x, coeff);
    let c = b.perverse_subcomplex(p).unwrap();
    homology(&c.complex, coeff).unwrap().degrees
}

#[test]
fn cone_formula_for_blowup() {
    // ℋ^k_p(cL) = ℋ^k_p(L) for k ≤ p(v), zero above.
    let l = library("rp2").unwrap().complex;
    let hl = homology(BlowupComplex::new(&l, Z).complex(), Z).unwrap();
    for pv in -1..=2 {
        let x = library("cone_rp2").unwrap().complex;
        let p = Perversity::constant(&x, pv);
        let h = blowup_cohomology("cone_rp2", &p, Z);
        for k in 0..=3 {
            let expected = if (k as i64) <= pv {
                hl.degree(k)
            } else {
                HomologyGroup::default()
            };
            assert_eq!(
                h.get(k).cloned().unwrap_or_default(),
                expected,
                "p = {pv}, k = {k}"
            );
        }
    }
}

#[test]
fn blowup_matches_tame_homology_rationally() {
    let q = CoefficientRing::Rationals;
    for name in ["sigma_rp3", "suspension(torus)", "s2xs1"] {
        let x = recipe(name).unwrap().complex;
        let n = x.formal_dim();
        for v in -1..=3 {
            let p = Perversity::constant(&x, v);
            let h = blowup_cohomology(name, &p, q);
            let t = homology(&tame_complex(&x, &p, q).unwrap().complex, q).unwrap();
            for k in 0..=n {
                assert_eq!(
                    h.get(k).map_or(0, |g| g.free_rank),
                    t.degree(n - k).free_rank,
                    "{name}, p = {v}, k = {k}"
                );
            }
        }
    }
}

#[test]
fn cell_perverse_degree_on_suspension() {
    let x = library("sigma_rp2").unwrap().complex;
    let b = BlowupComplex::new(&x, Z);
    let top_cells: Vec<usize> = (0..b.num_cells()).filter(|&c| b.cell(c).dim == 3).collect();
    assert!(!top_cells.is_empty());
    for c in top_cells {
        let f = b.factors(c);
        let above = f.total_degree() - f.degree(0);
        let expected = if f.cone[0] {
            PerverseDegree::NegInfinity
        } else {
            PerverseDegree::Finite(above)
        };
        let s = x.stratum_at(x.simplex(3, b.cell(c).simplex), 0).unwrap();
        assert_eq!(b.cell_perverse_degree(c, s), expected);
    }
}
