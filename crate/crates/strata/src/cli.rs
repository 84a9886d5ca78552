//! The `strata` command line.
//!
//! Exit codes: `0` success, `1` invalid input or usage, `2` a mathematical
//! check failed (a duality map that is not an isomorphism, a product
//! identity that does not hold).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use strata_core::algebra::{homology, CoefficientRing, Homology, Ring, SparseVec};
use strata_core::blowup::BlowupComplex;
use strata_core::constructions::recipe;
use strata_core::duality::DualitySetup;
use strata_core::filtered_complex::FilteredComplex;
use strata_core::intersection_chains::{
    intersection_complex, regular_boundary_matrix, tame_complex,
};
use strata_core::perversity::{top_value, Perversity};
use strata_core::products::{cap, cup};

use crate::format::{parse_perversity, parse_ring, read_space, ring_name, SpaceFile};
use crate::report::{self, SCHEMA};

#[derive(Debug, Parser)]
#[command(
    name = "strata",
    version,
    about = "Intersection homology and blown-up cohomology of filtered complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a space from a recipe such as `suspension(rp2)` and write it as JSON.
    Make {
        /// Construction recipe, e.g. `suspension(rp2)` or `product_circle(sphere(2), 3)`.
        #[arg(long)]
        recipe: String,
        #[command(flatten)]
        output: Output,
    },
    /// Tame or classical intersection homology.
    Homology {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        common: Common,
        /// Tame intersection homology (the default).
        #[arg(long, conflicts_with = "classical")]
        tame: bool,
        /// Classical intersection homology.
        #[arg(long)]
        classical: bool,
    },
    /// Blown-up intersection cohomology.
    Blowup {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        common: Common,
        /// Also emit cocycles representing the generators.
        #[arg(long)]
        dump_basis: bool,
    },
    /// Check that capping with the fundamental class is an isomorphism.
    Duality {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        common: Common,
    },
    /// Cup pairing between degrees `k` and `n − k`.
    #[command(alias = "pair")]
    Pairing {
        #[command(flatten)]
        space: SpaceArg,
        /// Perversity of the degree-`k` factor.
        #[arg(
            long,
            short = 'p',
            alias = "perversity",
            default_value = "lower-middle"
        )]
        p: String,
        /// Perversity of the degree-`n − k` factor; defaults to the complement of `p`.
        #[arg(long, short = 'q')]
        q: Option<String>,
        /// Degree of the first factor.
        #[arg(long)]
        k: usize,
        /// Coefficients: `Z`, `Q` or a prime field `Fp`.
        #[arg(long, default_value = "Z")]
        ring: String,
        #[command(flatten)]
        output: Output,
    },
    /// Randomized check of the cup and cap product identities.
    CheckProducts {
        #[command(flatten)]
        space: SpaceArg,
        /// Random elements drawn per identity.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Seed of the random elements; equal seeds give equal reports.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coefficients: `Z`, `Q` or a prime field `Fp`.
        #[arg(long, default_value = "Z")]
        ring: String,
        #[command(flatten)]
        output: Output,
    },
    /// Duality over every perversity with values in `min..=t̄(S)+above` on each singular stratum.
    Sweep {
        #[command(flatten)]
        space: SpaceArg,
        /// Coefficients: `Z`, `Q` or a prime field `Fp`.
        #[arg(long, default_value = "Z")]
        ring: String,
        /// Smallest value on each stratum.
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        min: i64,
        /// How far above the top perversity each value may go.
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        above: i64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SpaceArg {
    /// Space as a JSON file.
    #[arg(long)]
    space: Option<PathBuf>,
    /// Space from a construction recipe, e.g. `sigma_rp3`.
    #[arg(long)]
    recipe: Option<String>,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Preset (`zero`, `top`, `lower-middle`, `upper-middle`), inline JSON or a JSON file.
    #[arg(long, default_value = "zero")]
    perversity: String,
    /// Coefficients: `Z`, `Q` or a prime field `Fp` (also `Z/p`).
    #[arg(long, default_value = "Z")]
    ring: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the report here instead of standard output.
    #[arg(short = 'o', long = "output")]
    file: Option<PathBuf>,
}

/// How a command ended.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: unreadable files, invalid complexes, mismatched perversities.
    Invalid(String),
    /// The report was written but a mathematical check failed.
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Check(_) => 2,
        }
    }
}

fn invalid<E: ToString>(e: E) -> Failure {
    Failure::Invalid(e.to_string())
}

/// Parses `args` and runs the command, writing reports to `out` (or to the
/// `-o` file) and diagnostics to standard error. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                Failure::Invalid(msg) => eprintln!("error: {msg}"),
                Failure::Check(msg) => eprintln!("check failed: {msg}"),
            }
            f.code()
        }
    }
}

fn load(space: &SpaceArg) -> Result<FilteredComplex, Failure> {
    match (&space.space, &space.recipe) {
        (Some(path), None) => read_space(path).map_err(Failure::Invalid),
        (None, Some(r)) => recipe(r).map(|s| s.complex).map_err(invalid),
        _ => Err(Failure::Invalid(
            "give exactly one of --space and --recipe".into(),
        )),
    }
}

fn emit<T: Serialize>(value: &T, output: &Output, out: &mut dyn Write) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(invalid)?;
    text.push('\n');
    match &output.file {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(invalid),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Make { recipe: r, output } => {
            let space = recipe(&r).map_err(invalid)?;
            emit(
                &SpaceFile::from_complex(Some(&space.name), &space.complex),
                &output,
                out,
            )
        }
        Command::Homology {
            space,
            common,
            classical,
            ..
        } => {
            let x = load(&space)?;
            let coeff = parse_ring(&common.ring).map_err(Failure::Invalid)?;
            let p = parse_perversity(&common.perversity, &x)
                .map_err(Failure::Invalid)?
                .bind(&x)
                .map_err(invalid)?;
            let pres = if classical {
                intersection_complex(&x, &p, coeff)
            } else {
                tame_complex(&x, &p, coeff)
            }
            .map_err(invalid)?;
            let h = homology(&pres.complex, coeff).map_err(invalid)?;
            let rep = report::HomologyReport {
                schema: SCHEMA,
                command: "homology",
                complex: if classical { "classical" } else { "tame" },
                ring: ring_name(coeff),
                perversity: report::perversity(&p),
                degrees: report::summary(&h, coeff),
            };
            emit(&rep, &common.output, out)
        }
        Command::Blowup {
            space,
            common,
            dump_basis,
        } => {
            let x = load(&space)?;
            let coeff = parse_ring(&common.ring).map_err(Failure::Invalid)?;
            let p = parse_perversity(&common.perversity, &x)
                .map_err(Failure::Invalid)?
                .bind(&x)
                .map_err(invalid)?;
            let b = BlowupComplex::new(&x, coeff);
            let pres = b.perverse_subcomplex(&p).map_err(invalid)?;
            let h = homology(&pres.complex, coeff).map_err(invalid)?;
            let basis = if dump_basis {
                Some(basis(&b, &pres, coeff)?)
            } else {
                None
            };
            let rep = report::BlowupReport {
                schema: SCHEMA,
                command: "blowup",
                ring: ring_name(coeff),
                perversity: report::perversity(&p),
                cells: b.num_cells(),
                degrees: report::summary(&h, coeff),
                basis,
            };
            emit(&rep, &common.output, out)
        }
        Command::Duality { space, common } => {
            let x = load(&space)?;
            let coeff = parse_ring(&common.ring).map_err(Failure::Invalid)?;
            let p = parse_perversity(&common.perversity, &x)
                .map_err(Failure::Invalid)?
                .bind(&x)
                .map_err(invalid)?;
            let setup = DualitySetup::new(&x, coeff).map_err(invalid)?;
            let r = setup.duality(&p).map_err(invalid)?;
            let rep = report::DualityReport {
                schema: SCHEMA,
                command: "duality",
                ring: ring_name(coeff),
                perversity: report::perversity(&p),
                iso: r.isomorphism,
                degrees: r
                    .degrees
                    .iter()
                    .map(|d| report::DualityDegree {
                        k: d.k,
                        cohomology: report::group(d.k, &d.source, coeff),
                        homology: report::group(x.formal_dim() - d.k, &d.target, coeff),
                        matrix: report::matrix(&d.matrix),
                    })
                    .collect(),
            };
            emit(&rep, &common.output, out)?;
            if r.isomorphism {
                Ok(())
            } else {
                Err(Failure::Check(
                    "capping with the fundamental class is not an isomorphism".into(),
                ))
            }
        }
        Command::Pairing {
            space,
            p,
            q,
            k,
            ring,
            output,
        } => {
            let x = load(&space)?;
            let coeff = parse_ring(&ring).map_err(Failure::Invalid)?;
            let p = parse_perversity(&p, &x)
                .map_err(Failure::Invalid)?
                .bind(&x)
                .map_err(invalid)?;
            let q = match q {
                Some(q) => parse_perversity(&q, &x)
                    .map_err(Failure::Invalid)?
                    .bind(&x)
                    .map_err(invalid)?,
                None => p.complement(),
            };
            if k > x.formal_dim() {
                return Err(Failure::Invalid(format!(
                    "--k {k} exceeds the dimension {}",
                    x.formal_dim()
                )));
            }
            let setup = DualitySetup::new(&x, coeff).map_err(invalid)?;
            let r = setup.pairing(&p, &q, k).map_err(invalid)?;
            let rep = report::PairingReport {
                schema: SCHEMA,
                command: "pairing",
                ring: ring_name(coeff),
                k,
                p: report::perversity(&p),
                q: report::perversity(&q),
                matrix: report::matrix(&r.matrix),
                determinant: r.determinant,
                nondegenerate: r.nondegenerate,
                unimodular: r.unimodular,
            };
            emit(&rep, &output, out)
        }
        Command::CheckProducts {
            space,
            trials,
            seed,
            ring,
            output,
        } => {
            let x = load(&space)?;
            let coeff = parse_ring(&ring).map_err(Failure::Invalid)?;
            let identities = check_products(&x, coeff, trials, seed);
            let ok = identities.iter().all(|i| i.failures == 0);
            let rep = report::ProductsReport {
                schema: SCHEMA,
                command: "check-products",
                ring: ring_name(coeff),
                seed,
                identities,
                ok,
            };
            emit(&rep, &output, out)?;
            if ok {
                Ok(())
            } else {
                Err(Failure::Check("a product identity failed".into()))
            }
        }
        Command::Sweep {
            space,
            ring,
            min,
            above,
            output,
        } => {
            let x = load(&space)?;
            let coeff = parse_ring(&ring).map_err(Failure::Invalid)?;
            let setup = DualitySetup::new(&x, coeff).map_err(invalid)?;
            let cases: Vec<report::SweepCase> = sweep_perversities(&x, min, above)
                .par_iter()
                .map(|p| {
                    let r = setup.duality(p).map_err(invalid)?;
                    Ok(report::SweepCase {
                        perversity: report::perversity(p),
                        iso: r.isomorphism,
                        cohomology: r
                            .degrees
                            .iter()
                            .map(|d| report::group(d.k, &d.source, coeff))
                            .collect(),
                    })
                })
                .collect::<Result<_, Failure>>()?;
            let all_iso = cases.iter().all(|c| c.iso);
            let rep = report::SweepReport {
                schema: SCHEMA,
                command: "sweep",
                ring: ring_name(coeff),
                min,
                max_above_top: above,
                cases,
                all_iso,
            };
            emit(&rep, &output, out)?;
            if all_iso {
                Ok(())
            } else {
                Err(Failure::Check("duality fails for some perversity".into()))
            }
        }
    }
}

fn basis(
    b: &BlowupComplex,
    pres: &strata_core::algebra::ChainComplexPresentation,
    coeff: CoefficientRing,
) -> Result<Vec<report::DegreeBasis>, Failure> {
    let ring = coeff.engine();
    let x = b.space();
    let h = Homology::compute(ring, &pres.complex).map_err(invalid)?;
    let mut out = Vec::new();
    for k in 0..=x.formal_dim() {
        let gens = if coeff.reports_torsion() {
            h.generators(k)
        } else {
            h.free_generators(k)
        };
        let cells = b.cells_of_degree(k);
        let mut triplets = Vec::new();
        for (g, coords) in gens.iter().enumerate() {
            for (pos, v) in pres.embed(ring, k, coords).iter() {
                triplets.push([g as i64, pos as i64, ring.to_int(v)]);
            }
        }
        let cells = cells
            .iter()
            .map(|&c| {
                let cell = b.cell(c);
                let f = b.factors(c);
                report::BasisEntry {
                    simplex: x.to_external(x.simplex(cell.dim, cell.simplex)),
                    cone: f.cone[..x.formal_dim()].to_vec(),
                }
            })
            .collect();
        out.push(report::DegreeBasis { k, cells, triplets });
    }
    Ok(out)
}

/// Every perversity with values in `min..=t̄(S)+above` on each singular
/// stratum, in lexicographic order of the stratum values.
pub fn sweep_perversities(x: &FilteredComplex, min: i64, above: i64) -> Vec<Perversity> {
    let strata: Vec<(usize, usize, usize)> = x
        .singular_strata()
        .map(|(_, s)| (s.level, s.id, s.codim))
        .collect();
    let mut out = vec![Vec::new()];
    for &(level, id, codim) in &strata {
        let mut next = Vec::new();
        for partial in &out {
            for v in min..=top_value(codim) + above {
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

fn random_cochain(rng: &mut ChaCha8Rng, ring: Ring, b: &BlowupComplex, k: usize) -> SparseVec {
    let n = b.cells_of_degree(k).len();
    SparseVec::from_entries(
        ring,
        (0..n).filter_map(|i| {
            if rng.gen_bool(0.3) {
                Some((i, ring.from_int(rng.gen_range(-3..=3))))
            } else {
                None
            }
        }),
    )
}

fn random_chain(rng: &mut ChaCha8Rng, ring: Ring, x: &FilteredComplex, dim: usize) -> SparseVec {
    SparseVec::from_entries(
        ring,
        (0..x.count(dim))
            .filter(|&s| x.is_regular(x.simplex(dim, s)))
            .filter_map(|s| {
                if rng.gen_bool(0.3) {
                    Some((s, ring.from_int(rng.gen_range(-2..=2))))
                } else {
                    None
                }
            }),
    )
}

struct Tally {
    name: &'static str,
    trials: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            trials: 0,
            failures: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            self.first.get_or_insert_with(what);
        }
    }

    fn finish(self) -> report::Identity {
        report::Identity {
            name: self.name,
            trials: self.trials,
            failures: self.failures,
            first_failure: self.first,
        }
    }
}

/// Leibniz rules for `∪` and `∩`, associativity of `∪` and
/// `(ω ∪ η) ∩ ξ = (−1)^{|ω||η|} η ∩ (ω ∩ ξ)` on random cochains and chains.
pub fn check_products(
    x: &FilteredComplex,
    coeff: CoefficientRing,
    trials: usize,
    seed: u64,
) -> Vec<report::Identity> {
    let ring = coeff.engine();
    let b = BlowupComplex::new(x, coeff);
    let n = x.formal_dim();
    let top = x.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let boundary: Vec<_> = (0..=top)
        .map(|k| regular_boundary_matrix(x, ring, k))
        .collect();
    let delta = |k: usize, w: &SparseVec| {
        if k < n {
            b.complex().differential(k).mul_vec(ring, w)
        } else {
            SparseVec::new()
        }
    };
    let sign = |j: usize| if j.is_multiple_of(2) { 1 } else { ring.neg(1) };
    let (mut assoc, mut cup_leibniz, mut cap_leibniz, mut cup_cap) = (
        Tally::new("cup associativity"),
        Tally::new("cup Leibniz"),
        Tally::new("cap Leibniz"),
        Tally::new("cup-cap"),
    );
    for t in 0..trials {
        let k = rng.gen_range(0..=n);
        let l = rng.gen_range(0..=n - k);
        let m = rng.gen_range(0..=n - k - l);
        let w = random_cochain(&mut rng, ring, &b, k);
        let e = random_cochain(&mut rng, ring, &b, l);
        let f = random_cochain(&mut rng, ring, &b, m);
        let lhs = cup(&b, k + l, &cup(&b, k, &w, l, &e), m, &f);
        let rhs = cup(&b, k, &w, l + m, &cup(&b, l, &e, m, &f));
        assoc.record(lhs == rhs, || format!("trial {t}, degrees ({k}, {l}, {m})"));
        if k + l < n {
            let lhs = delta(k + l, &cup(&b, k, &w, l, &e));
            let a = cup(&b, k + 1, &delta(k, &w), l, &e);
            let c = cup(&b, k, &w, l + 1, &delta(l, &e));
            cup_leibniz.record(lhs == a.add_scaled(ring, &c, sign(k)), || {
                format!("trial {t}, degrees ({k}, {l})")
            });
        }
        if top == 0 {
            continue;
        }
        let dim = rng.gen_range(1..=top);
        let k = k.min(dim);
        let w = random_cochain(&mut rng, ring, &b, k);
        let xi = random_chain(&mut rng, ring, x, dim);
        let lhs = if dim > k {
            boundary[dim - k].mul_vec(ring, &cap(&b, k, &w, dim, &xi))
        } else {
            SparseVec::new()
        };
        let a = cap(&b, k + 1, &delta(k, &w), dim, &xi);
        let c = cap(&b, k, &w, dim - 1, &boundary[dim].mul_vec(ring, &xi));
        cap_leibniz.record(lhs == a.add_scaled(ring, &c, sign(k)), || {
            format!("trial {t}, k = {k}, dim = {dim}")
        });
        let l = rng.gen_range(0..=dim - k);
        let e = random_cochain(&mut rng, ring, &b, l);
        let lhs = cap(&b, k + l, &cup(&b, k, &w, l, &e), dim, &xi);
        let rhs = cap(&b, l, &e, dim - k, &cap(&b, k, &w, dim, &xi)).scale(ring, sign(k * l));
        cup_cap.record(lhs == rhs, || {
            format!("trial {t}, k = {k}, l = {l}, dim = {dim}")
        });
    }
    vec![
        assoc.finish(),
        cup_leibniz.finish(),
        cap_leibniz.finish(),
        cup_cap.finish(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_checks_exit_with_two() {
        assert_eq!(Failure::Check(String::new()).code(), 2);
        assert_eq!(Failure::Invalid(String::new()).code(), 1);
    }

    #[test]
    fn sweep_is_lexicographic() {
        let x = recipe("sigma_rp3").unwrap().complex;
        let ps = sweep_perversities(&x, -2, 2);
        assert_eq!(ps.len(), 49);
        assert_eq!(report::perversity(&ps[1])[1].value, -1);
        assert_eq!(report::perversity(&ps[48])[0].value, 4);
    }
}
