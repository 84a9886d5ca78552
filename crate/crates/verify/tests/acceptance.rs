//! Acceptance suite: one line per criterion, exact comparisons throughout.
//!
//! Run with `cargo test -p strata-verify --test acceptance`; add `--release`
//! for timings representative of the budgets.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strata_core::algebra::{
    homology, smith_normal_form, CoefficientRing, DenseMatrix, HomologyGroup, HomologySummary,
    Ring, SparseVec,
};
use strata_core::blowup::{BlowupComplex, BlowupElement, ConeFace, LocalBlowup};
use strata_core::constructions::{library, recipe, Space, LIBRARY};
use strata_core::duality::{comparison, witt, DualitySetup};
use strata_core::filtered_complex::{FilteredComplex, JoinDecomposition};
use strata_core::intersection_chains::{
    intersection_complex, is_allowable_resolved, simplicial_complex, tame_complex, PerverseDegree,
};
use strata_core::perversity::{top_value, Perversity};
use strata_core::products::{cap, cup};

const Z: CoefficientRing = CoefficientRing::Integers;
const Q: CoefficientRing = CoefficientRing::Rationals;
const F2: CoefficientRing = CoefficientRing::PrimeField(2);

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: "1",
            name: "suspension formula",
            budget: secs(30),
            run: suspension_formula,
        },
        Criterion {
            id: "2",
            name: "suspension of RP3, p = 1",
            budget: secs(10),
            run: suspension_rp3,
        },
        Criterion {
            id: "3",
            name: "cone formula",
            budget: secs(60),
            run: cone_formula,
        },
        Criterion {
            id: "4a",
            name: "duality, oriented cases and Z/2",
            budget: secs(900),
            run: duality_oriented,
        },
        Criterion {
            id: "4b",
            name: "duality over Z, Q on SigmaRP2, S1 x SigmaRP2",
            budget: secs(900),
            run: duality_nonorientable,
        },
        Criterion {
            id: "5",
            name: "perverse degrees on [e0]*[e1]*[e2,e3]",
            budget: secs(1),
            run: join_example,
        },
        Criterion {
            id: "6",
            name: "cap Leibniz and cup-cap identities",
            budget: secs(120),
            run: product_identities,
        },
        Criterion {
            id: "7",
            name: "allowable simplices and facets are regular",
            budget: secs(10),
            run: small_perversities,
        },
        Criterion {
            id: "8",
            name: "field comparison through chi",
            budget: secs(300),
            run: field_comparison,
        },
        Criterion {
            id: "9",
            name: "Witt pairings nondegenerate",
            budget: secs(300),
            run: witt_pairings,
        },
        Criterion {
            id: "10",
            name: "Thom space pairing [2]",
            budget: secs(300),
            run: thom_space,
        },
        Criterion {
            id: "11",
            name: "d^2 = 0 and Smith form self-checks",
            budget: secs(30),
            run: engine_checks,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= c.budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} {:>3}  {:<46} {:>8.2}s / {:>4}s  {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn space(name: &str) -> Space {
    recipe(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn ordinary_homology(x: &FilteredComplex, coeff: CoefficientRing) -> HomologySummary {
    homology(&simplicial_complex(x, coeff).unwrap().complex, coeff).unwrap()
}

fn reduced(g: HomologyGroup, degree: usize) -> HomologyGroup {
    if degree == 0 {
        HomologyGroup {
            free_rank: g.free_rank.saturating_sub(1),
            torsion: g.torsion,
        }
    } else {
        g
    }
}

fn suspension_formula() -> Outcome {
    let mut checked = 0;
    for m in ["sphere(1)", "sphere(2)", "rp2", "torus", "rp3"] {
        let base = space(m).complex;
        let hm = ordinary_homology(&base, Z);
        let x = space(&format!("suspension({m})")).complex;
        let n = x.formal_dim() as i64;
        for p in -2..=4 {
            let h = homology(
                &intersection_complex(&x, &Perversity::constant(&x, p), Z)
                    .unwrap()
                    .complex,
                Z,
            )
            .unwrap();
            let cut = n - p - 1;
            for i in 0..=n {
                let expected = if i < cut {
                    hm.degree(i as usize)
                } else if i == cut && i != 0 {
                    HomologyGroup::default()
                } else if i != 0 {
                    reduced(hm.degree(i as usize - 1), i as usize - 1)
                } else {
                    HomologyGroup::free(1)
                };
                let got = h.degree(i as usize);
                check(got == expected, || {
                    format!("Sigma {m}, p = {p}, H_{i} = {got}, expected {expected}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} groups match"))
}

fn suspension_rp3() -> Outcome {
    let x = library("sigma_rp3").unwrap().complex;
    let h = homology(
        &intersection_complex(&x, &Perversity::constant(&x, 1), Z)
            .unwrap()
            .complex,
        Z,
    )
    .unwrap();
    let z2 = HomologyGroup {
        free_rank: 0,
        torsion: vec![2],
    };
    check(h.degree(2).is_zero() && h.degree(1) == z2, || {
        format!("got {h}")
    })?;
    Ok(format!("H = {h}"))
}

fn cone_formula() -> Outcome {
    let mut checked = 0;
    for base in ["rp2", "torus", "rp3"] {
        let b = space(base).complex;
        let m = b.formal_dim() as i64;
        let x = space(&format!("cone({base})")).complex;
        for coeff in [Z, Q] {
            let hb = ordinary_homology(&b, coeff);
            for p in -2..=4 {
                let h = homology(
                    &tame_complex(&x, &Perversity::constant(&x, p), coeff)
                        .unwrap()
                        .complex,
                    coeff,
                )
                .unwrap();
                for k in 0..=x.formal_dim() as i64 {
                    let expected = if k < m - p {
                        hb.degree(k as usize)
                    } else {
                        HomologyGroup::default()
                    };
                    let got = h.degree(k as usize);
                    check(got == expected, || {
                        format!("cone {base} {coeff} p = {p}: H_{k} = {got}, expected {expected}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} groups match"))
}

/// Every perversity with values in `−2..=t̄(S)+2` on each singular stratum.
fn perversity_sweep(x: &FilteredComplex) -> Vec<Perversity> {
    let strata: Vec<(usize, usize, usize)> = x
        .singular_strata()
        .map(|(_, s)| (s.level, s.id, s.codim))
        .collect();
    let mut out = vec![Vec::new()];
    for &(level, id, codim) in &strata {
        let mut next = Vec::new();
        for partial in &out {
            for v in -2..=top_value(codim) + 2 {
                let mut p: Vec<((usize, usize), i64)> = Vec::clone(partial);
                p.push(((level, id), v));
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|values| Perversity::Strata {
            formal_dim: x.formal_dim(),
            values: values.into_iter().collect(),
        })
        .collect()
}

fn duality_sweep(name: &str, coeff: CoefficientRing) -> Result<usize, String> {
    let x = space(name).complex;
    let setup = DualitySetup::new(&x, coeff).map_err(|e| format!("{name} over {coeff}: {e}"))?;
    let sweep = perversity_sweep(&x);
    for p in &sweep {
        let r = setup
            .duality(p)
            .map_err(|e| format!("{name} over {coeff}: {e}"))?;
        check(r.isomorphism, || {
            format!("{name} over {coeff}, {p:?}: not an isomorphism")
        })?;
        for d in &r.degrees {
            check(d.source == d.target, || {
                format!("{name} over {coeff}, {p:?}: degree {} groups differ", d.k)
            })?;
        }
    }
    Ok(sweep.len())
}

fn duality_oriented() -> Outcome {
    let mut total = 0;
    for (name, rings) in [
        ("sphere(3)", &[Z, Q, F2][..]),
        ("sigma_rp3", &[Z, Q, F2]),
        ("sigma_rp2", &[F2]),
        ("s1_sigma_rp2", &[F2]),
    ] {
        for &coeff in rings {
            total += duality_sweep(name, coeff)?;
        }
    }
    Ok(format!(
        "{total} (space, ring, perversity) cases are isomorphisms"
    ))
}

fn duality_nonorientable() -> Outcome {
    let mut errors = Vec::new();
    for name in ["sigma_rp2", "s1_sigma_rp2"] {
        for coeff in [Z, Q] {
            if let Err(e) = duality_sweep(name, coeff) {
                errors.push(e);
            }
        }
    }
    if errors.is_empty() {
        return Ok("all cases are isomorphisms".into());
    }
    // Independent of any choice of map: compare the groups in degree 0 / n.
    let mut obstructions = Vec::new();
    for name in ["sigma_rp2", "s1_sigma_rp2"] {
        let x = space(name).complex;
        let n = x.formal_dim();
        let p = Perversity::zero(n);
        for coeff in [Z, Q] {
            let b = BlowupComplex::new(&x, coeff);
            let h0 = homology(&b.perverse_subcomplex(&p).unwrap().complex, coeff)
                .unwrap()
                .degree(0);
            let hn = homology(&tame_complex(&x, &p, coeff).unwrap().complex, coeff)
                .unwrap()
                .degree(n);
            if h0 != hn {
                obstructions.push(format!(
                    "{name} over {coeff}: H^0 = {h0} but tame H_{n} = {hn}"
                ));
            }
        }
    }
    Err(format!(
        "{}; no isomorphism exists for p = 0: {}",
        errors.join("; "),
        obstructions.join("; ")
    ))
}

fn join_example() -> Outcome {
    let l = LocalBlowup::new(JoinDecomposition {
        dims: vec![0, 0, 1],
    });
    let el = |f: [(u32, bool); 3]| BlowupElement {
        factors: f.iter().map(|&(a, c)| ConeFace::new(a, c)).collect(),
    };
    check(l.elements().len() == 27, || {
        format!("{} basis elements", l.elements().len())
    })?;
    let mut count = 0;
    // ‖1_{(Δ0,0)} ⊗ 1_{(Δ1,ε1)} ⊗ 1_{Δ2}‖_2 = 1 + ε1.
    for e1 in [false, true] {
        let e = el([(1, false), (1, e1), (0b11, false)]);
        check(
            e.perverse_degree(2) == PerverseDegree::Finite(1 + e1 as i64),
            || format!("{e:?}"),
        )?;
        count += 1;
    }
    for e in l.elements() {
        let (f0, f1, f2) = (e.factors[0], e.factors[1], e.factors[2]);
        // ‖1_{(F0,1)} ⊗ ⋯‖_2 = −∞, ‖1_{(F0,0)} ⊗ 1_{(F1,ε1)} ⊗ 1_{F2}‖_2 = |(F1,ε1)| + dim F2.
        let expected2 = if f0.cone {
            PerverseDegree::NegInfinity
        } else {
            PerverseDegree::Finite(f1.dim() + f2.dim())
        };
        // ‖⋯ ⊗ 1_{(F1,1)} ⊗ 1_{F2}‖_1 = −∞, ‖⋯ ⊗ 1_{(F1,0)} ⊗ 1_{F2}‖_1 = dim F2.
        let expected1 = if f1.cone {
            PerverseDegree::NegInfinity
        } else {
            PerverseDegree::Finite(f2.dim())
        };
        check(e.perverse_degree(2) == expected2, || format!("‖{e:?}‖_2"))?;
        check(e.perverse_degree(1) == expected1, || format!("‖{e:?}‖_1"))?;
        count += 2;
    }
    Ok(format!("{count} perverse degrees match"))
}

fn random_cochain(rng: &mut ChaCha8Rng, b: &BlowupComplex, k: usize) -> SparseVec {
    let n = b.cells_of_degree(k).len();
    SparseVec::from_entries(
        Ring::Integers,
        (0..n).filter_map(|i| {
            if rng.gen_bool(0.3) {
                Some((i, rng.gen_range(-3..=3)))
            } else {
                None
            }
        }),
    )
}

fn random_regular_chain(rng: &mut ChaCha8Rng, x: &FilteredComplex, dim: usize) -> SparseVec {
    SparseVec::from_entries(
        Ring::Integers,
        (0..x.count(dim))
            .filter(|&s| x.is_regular(x.simplex(dim, s)))
            .filter_map(|s| {
                if rng.gen_bool(0.3) {
                    Some((s, rng.gen_range(-2..=2)))
                } else {
                    None
                }
            }),
    )
}

fn product_identities() -> Outcome {
    const TRIALS: usize = 200;
    let ring = Ring::Integers;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for name in LIBRARY {
        let x = library(name).unwrap().complex;
        let b = BlowupComplex::new(&x, Z);
        let n = x.formal_dim();
        let boundary: Vec<_> = (0..=x.dim())
            .map(|k| strata_core::intersection_chains::regular_boundary_matrix(&x, ring, k))
            .collect();
        for t in 0..TRIALS {
            let dim = rng.gen_range(1..=x.dim());
            let k = rng.gen_range(0..=dim);
            let l = rng.gen_range(0..=dim - k);
            let w = random_cochain(&mut rng, &b, k);
            let e = random_cochain(&mut rng, &b, l);
            let xi = random_regular_chain(&mut rng, &x, dim);
            let sign = |j: usize| if j.is_multiple_of(2) { 1 } else { -1 };
            // 𝔡(ω ∩ ξ) = (δω) ∩ ξ + (−1)^{|ω|} ω ∩ 𝔡ξ.
            let lhs = if dim > k {
                boundary[dim - k].mul_vec(ring, &cap(&b, k, &w, dim, &xi))
            } else {
                SparseVec::new()
            };
            let dw = if k < n {
                cap(
                    &b,
                    k + 1,
                    &b.complex().differential(k).mul_vec(ring, &w),
                    dim,
                    &xi,
                )
            } else {
                SparseVec::new()
            };
            let wd = cap(&b, k, &w, dim - 1, &boundary[dim].mul_vec(ring, &xi));
            check(lhs == dw.add_scaled(ring, &wd, sign(k)), || {
                format!("{name}, trial {t}: Leibniz fails (k = {k}, dim = {dim})")
            })?;
            // (ω ∪ η) ∩ ξ = (−1)^{|ω||η|} η ∩ (ω ∩ ξ).
            let lhs = cap(&b, k + l, &cup(&b, k, &w, l, &e), dim, &xi);
            let rhs = cap(&b, l, &e, dim - k, &cap(&b, k, &w, dim, &xi)).scale(ring, sign(k * l));
            check(lhs == rhs, || {
                format!("{name}, trial {t}: cup-cap fails (k = {k}, l = {l})")
            })?;
        }
    }
    Ok(format!(
        "{TRIALS} triples on each of {} library spaces",
        LIBRARY.len()
    ))
}

fn small_perversities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut allowable = 0;
    for name in LIBRARY {
        let x = library(name).unwrap().complex;
        for _ in 0..20 {
            let rng = std::cell::RefCell::new(&mut rng);
            let p = Perversity::from_fn(&x, |level, _| {
                let t = top_value(x.formal_dim() - level);
                rng.borrow_mut().gen_range(t - 3..=t)
            });
            let resolved = p.resolve(&x).unwrap();
            for k in 0..=x.dim() {
                for s in x.simplices(k) {
                    if !is_allowable_resolved(&x, s, &resolved) {
                        continue;
                    }
                    allowable += 1;
                    check(x.is_regular(s), || {
                        format!("{name}: allowable singular simplex {s:?}")
                    })?;
                    if s.len() < 2 {
                        continue;
                    }
                    for i in 0..s.len() {
                        let mut f = s.to_vec();
                        f.remove(i);
                        check(x.is_regular(&f), || {
                            format!("{name}: {s:?} has singular facet {f:?}")
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("{allowable} allowable simplices checked"))
}

fn field_comparison() -> Outcome {
    let mut cases = 0;
    for name in LIBRARY {
        let x = library(name).unwrap().complex;
        let n = x.formal_dim();
        let mut perversities = vec![
            Perversity::zero(n),
            Perversity::lower_middle(n),
            Perversity::upper_middle(n),
            Perversity::top(n),
        ];
        perversities.push(Perversity::constant(&x, -1));
        perversities.push(Perversity::constant(&x, n as i64));
        for coeff in [Q, F2] {
            for p in &perversities {
                let r = comparison(&x, p, coeff).map_err(|e| format!("{name}: {e}"))?;
                check(r.ranks_equal, || {
                    format!("{name} {coeff} {p:?}: {} vs {}", r.blowup, r.dual_tame)
                })?;
                check(r.isomorphism, || {
                    format!("{name} {coeff} {p:?}: chi is not an isomorphism")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases: equal ranks and chi invertible"))
}

fn witt_pairings() -> Outcome {
    let mut used = Vec::new();
    let mut extra: Vec<&str> = LIBRARY.to_vec();
    extra.extend(["sphere(2)", "sphere(3)"]);
    for name in extra {
        let s = space(name);
        let x = &s.complex;
        let Ok(setup) = DualitySetup::new(x, Z) else {
            continue;
        };
        if !witt(&s, Z).map_err(|e| e.to_string())?.is_witt() {
            continue;
        }
        let n = x.formal_dim();
        let m = Perversity::lower_middle(n).bind(x).unwrap();
        let dm = m.complement();
        for k in 0..=n {
            let r = setup.pairing(&m, &dm, k).map_err(|e| e.to_string())?;
            check(
                r.nondegenerate || r.matrix.rows() + r.matrix.cols() == 0,
                || {
                    format!(
                        "{name}, k = {k}: pairing {:?} is degenerate",
                        r.matrix.to_rows()
                    )
                },
            )?;
        }
        used.push(name);
    }
    check(used.contains(&"sigma_rp3"), || {
        format!("sigma_rp3 not recognized as Witt: {used:?}")
    })?;
    Ok(format!("nondegenerate on {}", used.join(", ")))
}

fn thom_space() -> Outcome {
    let s = library("thom_ts2").map_err(|e| format!("no triangulation available: {e}"))?;
    let x = &s.complex;
    let setup = DualitySetup::new(x, Z).map_err(|e| e.to_string())?;
    let m = Perversity::lower_middle(4).bind(x).unwrap();
    let r = setup
        .pairing(&m, &m.complement(), 2)
        .map_err(|e| e.to_string())?;
    let entries = r.matrix.to_rows();
    check(entries.len() == 1 && entries[0][0].abs() == 2, || {
        format!("pairing matrix {entries:?}")
    })?;
    check(r.nondegenerate && !r.unimodular, || {
        "unexpected unimodularity".into()
    })?;
    Ok(format!(
        "pairing matrix {entries:?}, nondegenerate, not unimodular"
    ))
}

/// `d_1 ⋯ d_k` from the gcd of all `k × k` minors.
fn determinantal_divisors(m: &DenseMatrix) -> Vec<i64> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        if n < k {
            return Vec::new();
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let mut out = Vec::new();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = 0;
        for rows in subsets(m.rows(), k) {
            for cols in subsets(m.cols(), k) {
                let sub = DenseMatrix::from_rows(
                    &rows
                        .iter()
                        .map(|&r| cols.iter().map(|&c| m.get(r, c)).collect())
                        .collect::<Vec<_>>(),
                );
                g = gcd(g, sub.determinant(Ring::Integers));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g);
    }
    out
}

fn engine_checks() -> Outcome {
    let ring = Ring::Integers;
    let mut complexes = 0;
    for name in LIBRARY {
        let x = library(name).unwrap().complex;
        let b = BlowupComplex::new(&x, Z);
        b.complex()
            .check_square_zero(ring)
            .map_err(|e| format!("{name} blow-up: {e}"))?;
        complexes += 1;
        for v in [-1, 0, 1, 3] {
            let p = Perversity::constant(&x, v);
            for c in [
                intersection_complex(&x, &p, Z).unwrap().complex,
                tame_complex(&x, &p, Z).unwrap().complex,
                b.perverse_subcomplex(&p).unwrap().complex,
            ] {
                c.check_square_zero(ring)
                    .map_err(|e| format!("{name}, p = {v}: {e}"))?;
                complexes += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in 0..1000 {
        let (r, c) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let m = DenseMatrix::from_rows(&rows);
        let s = smith_normal_form(ring, &m);
        let back = s.u.mul(ring, &s.d()).mul(ring, &s.v);
        check(back == m, || format!("matrix {t}: U D V != M for {rows:?}"))?;
        check(
            s.u.determinant(ring).abs() == 1 && s.v.determinant(ring).abs() == 1,
            || format!("matrix {t}: transforms not unimodular"),
        )?;
        check(
            s.diagonal.windows(2).all(|w| w[1] % w[0] == 0) && s.diagonal.iter().all(|&d| d > 0),
            || format!("matrix {t}: diagonal {:?} not normalized", s.diagonal),
        )?;
        let products: Vec<i64> = s
            .diagonal
            .iter()
            .scan(1, |acc, &d| {
                *acc *= d;
                Some(*acc)
            })
            .collect();
        let oracle = determinantal_divisors(&m);
        check(products == oracle, || {
            format!(
                "matrix {t}: {:?} vs minors {oracle:?} for {rows:?}",
                s.diagonal
            )
        })?;
    }
    Ok(format!(
        "{complexes} complexes square to zero; 1000 Smith forms match the minors oracle"
    ))
}
