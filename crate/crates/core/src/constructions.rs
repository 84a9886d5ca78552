//! Builders for cones, suspensions and products with a circle, plus a small
//! library of reference triangulations.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::filtered_complex::{FilteredComplex, RawComplex};

/// A filtered complex with known links of its singular strata.
#[derive(Clone, Debug)]
pub struct Space {
    pub name: String,
    pub complex: FilteredComplex,
    /// Link of each singular stratum `(level, id)` whose link is known.
    pub links: Vec<((usize, usize), Space)>,
}

impl Space {
    pub fn new(name: impl Into<String>, complex: FilteredComplex) -> Self {
        Space {
            name: name.into(),
            complex,
            links: Vec::new(),
        }
    }

    pub fn link(&self, level: usize, id: usize) -> Option<&Space> {
        self.links
            .iter()
            .find(|(k, _)| *k == (level, id))
            .map(|(_, s)| s)
    }
}

fn build(raw: RawComplex) -> FilteredComplex {
    FilteredComplex::build(&raw).expect("library complexes are valid")
}

/// Trivially filtered complex: every vertex at the top level `n`.
pub fn manifold(n: usize, facets: &[&[u32]]) -> FilteredComplex {
    let mut ids: Vec<u32> = facets.iter().flat_map(|f| f.iter().copied()).collect();
    ids.sort_unstable();
    ids.dedup();
    build(RawComplex {
        formal_dim: n,
        vertices: ids.iter().map(|&v| (v, n as i64)).collect(),
        simplices: facets.iter().map(|f| f.to_vec()).collect(),
        orientations: Vec::new(),
    })
}

/// Boundary of the `(n+1)`-simplex.
pub fn sphere(n: usize) -> FilteredComplex {
    let all: Vec<u32> = (0..=n as u32 + 1).collect();
    let facets: Vec<Vec<u32>> = (0..all.len())
        .map(|i| {
            all.iter()
                .copied()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v)
                .collect()
        })
        .collect();
    let refs: Vec<&[u32]> = facets.iter().map(Vec::as_slice).collect();
    manifold(n, &refs)
}

/// Seven-vertex torus.
pub fn torus() -> FilteredComplex {
    let mut facets = Vec::new();
    for i in 0..7u32 {
        facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    let refs: Vec<&[u32]> = facets.iter().map(Vec::as_slice).collect();
    manifold(2, &refs)
}

/// Six-vertex real projective plane.
pub fn rp2() -> FilteredComplex {
    const FACETS: [[u32; 3]; 10] = [
        [0, 1, 3],
        [0, 1, 5],
        [0, 2, 4],
        [0, 2, 5],
        [0, 3, 4],
        [1, 2, 3],
        [1, 2, 4],
        [1, 4, 5],
        [2, 3, 5],
        [3, 4, 5],
    ];
    let refs: Vec<&[u32]> = FACETS.iter().map(|f| f.as_slice()).collect();
    manifold(2, &refs)
}

/// Eleven-vertex real projective 3-space (40 tetrahedra).
pub fn rp3() -> FilteredComplex {
    const FACETS: [[u32; 4]; 40] = [
        [0, 1, 4, 5],
        [0, 1, 4, 9],
        [0, 1, 5, 10],
        [0, 1, 9, 10],
        [0, 2, 3, 7],
        [0, 2, 3, 8],
        [0, 2, 6, 7],
        [0, 2, 6, 8],
        [0, 3, 4, 5],
        [0, 3, 4, 7],
        [0, 3, 5, 8],
        [0, 4, 7, 9],
        [0, 5, 8, 10],
        [0, 6, 7, 9],
        [0, 6, 8, 10],
        [0, 6, 9, 10],
        [1, 2, 3, 7],
        [1, 2, 3, 8],
        [1, 2, 6, 7],
        [1, 2, 6, 8],
        [1, 3, 7, 10],
        [1, 3, 8, 9],
        [1, 3, 9, 10],
        [1, 4, 5, 6],
        [1, 4, 6, 8],
        [1, 4, 8, 9],
        [1, 5, 6, 7],
        [1, 5, 7, 10],
        [3, 4, 5, 6],
        [3, 4, 6, 10],
        [3, 4, 7, 10],
        [3, 5, 6, 9],
        [3, 5, 8, 9],
        [3, 6, 9, 10],
        [4, 6, 8, 10],
        [4, 7, 8, 9],
        [4, 7, 8, 10],
        [5, 6, 7, 9],
        [5, 7, 8, 9],
        [5, 7, 8, 10],
    ];
    let refs: Vec<&[u32]> = FACETS.iter().map(|f| f.as_slice()).collect();
    manifold(3, &refs)
}

fn shifted_links(space: &Space, dl: usize) -> Vec<((usize, usize), Space)> {
    space
        .links
        .iter()
        .map(|((l, id), s)| ((l + dl, *id), s.clone()))
        .collect()
}

/// Adds `apexes` new vertices of level 0 (ids `0..apexes`) joined to all of
/// `x`, whose ids are shifted by `apexes` and levels raised by one.
fn join_apexes(x: &FilteredComplex, apexes: u32) -> FilteredComplex {
    let raw = x.to_raw();
    let mut vertices: Vec<(u32, i64)> = (0..apexes).map(|a| (a, 0)).collect();
    vertices.extend(raw.vertices.iter().map(|&(id, l)| (id + apexes, l + 1)));
    let mut simplices = Vec::new();
    for s in &raw.simplices {
        for a in 0..apexes {
            let mut t = vec![a];
            t.extend(s.iter().map(|v| v + apexes));
            simplices.push(t);
        }
    }
    build(RawComplex {
        formal_dim: x.formal_dim() + 1,
        vertices,
        simplices,
        orientations: Vec::new(),
    })
}

/// Closed cone `c X`: apex at level 0, the levels of `X` raised by one.
pub fn cone(x: &Space) -> Space {
    let complex = join_apexes(&x.complex, 1);
    let mut links = vec![((0, 0), x.clone())];
    links.extend(shifted_links(x, 1));
    Space {
        name: format!("cone({})", x.name),
        complex,
        links,
    }
}

/// Suspension `Σ M` with the two suspension points forming `X_0`.
pub fn suspension(m: &Space) -> Space {
    let complex = join_apexes(&m.complex, 2);
    let mut links = vec![((0, 0), m.clone()), ((0, 1), m.clone())];
    links.extend(shifted_links(m, 1));
    Space {
        name: format!("suspension({})", m.name),
        complex,
        links,
    }
}

/// `S¹ × X` with the circle an `m`-gon, prisms cut into staircases; the
/// circle adds one to every level, so `(S¹ × X)_i = S¹ × X_{i−1}`.
pub fn product_circle(x: &Space, m: u32) -> Space {
    assert!(m >= 3, "the circle needs at least three vertices");
    let c = &x.complex;
    let id = |v: u32, t: u32| c.vertex_id(v) * m + t;
    let vertices: Vec<(u32, i64)> = (0..c.num_vertices() as u32)
        .flat_map(|v| (0..m).map(move |t| (v, t)))
        .map(|(v, t)| (id(v, t), c.level(v) as i64 + 1))
        .collect();
    let mut simplices = Vec::new();
    for s in c.maximal_simplices() {
        for t in 0..m {
            let u = (t + 1) % m;
            for j in 0..s.len() {
                let mut cell: Vec<u32> = s[..=j].iter().map(|&v| id(v, t)).collect();
                cell.extend(s[j..].iter().map(|&v| id(v, u)));
                simplices.push(cell);
            }
        }
    }
    let complex = build(RawComplex {
        formal_dim: c.formal_dim() + 1,
        vertices,
        simplices,
        orientations: Vec::new(),
    });
    Space {
        name: format!("product_circle({}, {m})", x.name),
        complex,
        links: shifted_links(x, 1),
    }
}

/// Thom space of the tangent bundle of `S²`: a derived neighbourhood of the
/// diagonal in `S² × S²` with its frontier (a copy of `RP³`) coned off.
///
/// `S²` is the boundary of the tetrahedron and the square is cut into
/// staircases; stellar subdivisions at every simplex meeting the diagonal,
/// largest first, make the simplicial neighbourhood regular. The cone point
/// has id `0` and level `0`.
pub fn thom_tangent_sphere() -> Space {
    let tris: Vec<Vec<u32>> = (0..4u32)
        .map(|i| (0..4).filter(|&v| v != i).collect())
        .collect();
    let id = |u: u32, w: u32| 4 * u + w + 1;
    let mut tops: BTreeSet<Vec<u32>> = BTreeSet::new();
    for s in &tris {
        for t in &tris {
            // Lattice paths with two steps in each factor.
            for first in 0..4 {
                for second in first + 1..4 {
                    let (mut i, mut j) = (0, 0);
                    let mut cell = vec![id(s[0], t[0])];
                    for step in 0..4 {
                        if step == first || step == second {
                            i += 1;
                        } else {
                            j += 1;
                        }
                        cell.push(id(s[i], t[j]));
                    }
                    cell.sort_unstable();
                    tops.insert(cell);
                }
            }
        }
    }
    let mut diagonal: BTreeSet<u32> = (0..4).map(|u| id(u, u)).collect();
    let meets = |s: &[u32], a: &BTreeSet<u32>| s.iter().any(|v| a.contains(v));

    let mut targets: Vec<Vec<u32>> = BTreeSet::from_iter(tops.iter().flat_map(|t| subsets(t)))
        .into_iter()
        .filter(|s| s.len() > 1 && meets(s, &diagonal))
        .collect();
    targets.sort_by_key(|s| core::cmp::Reverse(s.len()));
    for (b, s) in (17..).zip(targets) {
        if s.iter().all(|v| diagonal.contains(v)) {
            diagonal.insert(b);
        }
        let mut subdivided = BTreeSet::new();
        for t in tops {
            if s.iter().all(|v| t.contains(v)) {
                for &v in &s {
                    let mut u: Vec<u32> = t.iter().copied().filter(|&x| x != v).collect();
                    u.push(b);
                    u.sort_unstable();
                    subdivided.insert(u);
                }
            } else {
                subdivided.insert(t);
            }
        }
        tops = subdivided;
    }

    // Keep the neighbourhood, cone its frontier to a new vertex 0.
    let mut simplices = Vec::new();
    let mut frontier = Vec::new();
    for t in tops.iter().filter(|t| meets(t, &diagonal)) {
        let rest: Vec<u32> = t
            .iter()
            .copied()
            .filter(|v| !diagonal.contains(v))
            .collect();
        if rest.len() == 4 {
            let mut c = vec![0];
            c.extend(&rest);
            simplices.push(c);
            frontier.push(rest);
        }
        simplices.push(t.clone());
    }
    let mut ids: Vec<u32> = simplices
        .iter()
        .flatten()
        .copied()
        .filter(|&v| v != 0)
        .collect();
    ids.sort_unstable();
    ids.dedup();
    let mut vertices = vec![(0, 0)];
    vertices.extend(ids.iter().map(|&v| (v, 4)));
    let complex = build(RawComplex {
        formal_dim: 4,
        vertices,
        simplices,
        orientations: Vec::new(),
    });
    let refs: Vec<&[u32]> = frontier.iter().map(Vec::as_slice).collect();
    let link = Space::new("rp3", manifold(3, &refs));
    Space {
        name: "thom_ts2".into(),
        complex,
        links: vec![((0, 0), link)],
    }
}

fn subsets(t: &[u32]) -> Vec<Vec<u32>> {
    (1..1u32 << t.len())
        .map(|m| {
            t.iter()
                .enumerate()
                .filter(|&(i, _)| m >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// Library spaces: `sphere(n)`, `torus`, `rp2`, `rp3`, `sigma_rp2`,
/// `sigma_rp3`, `cone_rp2`, `cone_torus`, `cone_rp3`, `s2xs1`,
/// `s1_sigma_rp2`, `thom_ts2`.
pub fn library(name: &str) -> Result<Space, Error> {
    recipe(name)
}

/// Parses and evaluates a construction recipe such as
/// `suspension(rp2)` or `product_circle(cone(torus), 4)`.
pub fn recipe(text: &str) -> Result<Space, Error> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(Error::Recipe(format!("trailing input at byte {}", p.pos)));
    }
    eval(&expr)
}

enum Expr {
    Number(u32),
    Call(String, Vec<Expr>),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Recipe(format!(
                "expected a name or number at byte {start}"
            )));
        }
        let word = core::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        if word.bytes().all(|b| b.is_ascii_digit()) {
            return word
                .parse()
                .map(Expr::Number)
                .map_err(|_| Error::Recipe(format!("bad number {word}")));
        }
        self.skip_ws();
        let mut args = Vec::new();
        if self.pos < self.s.len() && self.s[self.pos] == b'(' {
            self.pos += 1;
            loop {
                args.push(self.expr()?);
                self.skip_ws();
                match self.s.get(self.pos) {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => {
                        return Err(Error::Recipe(format!(
                            "expected `,` or `)` at byte {}",
                            self.pos
                        )))
                    }
                }
            }
        }
        Ok(Expr::Call(word.to_string(), args))
    }
}

fn eval(e: &Expr) -> Result<Space, Error> {
    let Expr::Call(name, args) = e else {
        return Err(Error::Recipe("a number is not a space".into()));
    };
    let number = |i: usize| match args.get(i) {
        Some(Expr::Number(v)) => Ok(*v),
        _ => Err(Error::Recipe(format!(
            "{name} expects a number as argument {}",
            i + 1
        ))),
    };
    let arity = |k: usize| {
        if args.len() == k {
            Ok(())
        } else {
            Err(Error::Recipe(format!("{name} takes {k} argument(s)")))
        }
    };
    let space = match name.as_str() {
        "sphere" => {
            arity(1)?;
            let n = number(0)?;
            Space::new(format!("sphere({n})"), sphere(n as usize))
        }
        "torus" => {
            arity(0)?;
            Space::new("torus", torus())
        }
        "rp2" => {
            arity(0)?;
            Space::new("rp2", rp2())
        }
        "rp3" => {
            arity(0)?;
            Space::new("rp3", rp3())
        }
        "cone" => {
            arity(1)?;
            cone(&eval(&args[0])?)
        }
        "suspension" => {
            arity(1)?;
            suspension(&eval(&args[0])?)
        }
        "product_circle" => {
            if args.len() == 1 {
                product_circle(&eval(&args[0])?, 3)
            } else {
                arity(2)?;
                product_circle(&eval(&args[0])?, number(1)?)
            }
        }
        "sigma_rp2" => alias(args, name, "suspension(rp2)")?,
        "sigma_rp3" => alias(args, name, "suspension(rp3)")?,
        "cone_rp2" => alias(args, name, "cone(rp2)")?,
        "cone_torus" => alias(args, name, "cone(torus)")?,
        "cone_rp3" => alias(args, name, "cone(rp3)")?,
        "s2xs1" => alias(args, name, "product_circle(sphere(2), 3)")?,
        "thom_ts2" => {
            arity(0)?;
            thom_tangent_sphere()
        }
        "s1_sigma_rp2" => alias(args, name, "product_circle(suspension(rp2), 3)")?,
        other => return Err(Error::UnknownSpace(other.to_string())),
    };
    Ok(space)
}

fn alias(args: &[Expr], name: &str, target: &str) -> Result<Space, Error> {
    if !args.is_empty() {
        return Err(Error::Recipe(format!("{name} takes no arguments")));
    }
    let mut s = recipe(target)?;
    s.name = name.to_string();
    Ok(s)
}

/// Names accepted by [`library`] without arguments.
pub const LIBRARY: &[&str] = &[
    "torus",
    "rp2",
    "rp3",
    "sigma_rp2",
    "sigma_rp3",
    "cone_rp2",
    "cone_torus",
    "cone_rp3",
    "s2xs1",
    "s1_sigma_rp2",
];
