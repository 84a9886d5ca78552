//! Finite simplicial complexes filtered by vertex levels.
//!
//! A vertex of level `i` lies in the skeleton `X_i` and the skeleton `X_i` is
//! the full subcomplex on vertices of level `≤ i`. Internally vertices are
//! renumbered in `(level, id)` order, so a simplex stored as a sorted list of
//! internal indices lists its vertices by nondecreasing level; this is the
//! order used for face signs and for the join decomposition
//! `Δ = Δ_0 ∗ ⋯ ∗ Δ_n`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Ring, SparseMatrix, SparseVec};
use crate::error::Error;

/// Unvalidated description of a filtered complex, using external vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawComplex {
    pub formal_dim: usize,
    /// `(id, level)` pairs.
    pub vertices: Vec<(u32, i64)>,
    /// Simplices as lists of vertex ids; faces are added automatically.
    pub simplices: Vec<Vec<u32>>,
    /// Optional signs of top simplices.
    pub orientations: Vec<(Vec<u32>, i64)>,
}

/// A connected component of `X_i ∖ X_{i−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub level: usize,
    /// Index among the strata of the same level, ordered by lowest vertex.
    pub id: usize,
    pub codim: usize,
    /// Internal indices of the vertices of this level in the component.
    pub vertices: Vec<u32>,
}

impl Stratum {
    pub fn is_regular(&self) -> bool {
        self.codim == 0
    }
}

/// Sizes of the join factors of a simplex: `dims[i] = dim Δ_i`, `−1` for
/// an empty factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JoinDecomposition {
    pub dims: Vec<i64>,
}

impl JoinDecomposition {
    pub fn dim(&self) -> i64 {
        self.dims.iter().map(|d| d + 1).sum::<i64>() - 1
    }

    pub fn is_regular(&self) -> bool {
        self.dims.last().is_some_and(|&d| d >= 0)
    }

    /// Number of vertices at level `i`.
    pub fn count(&self, i: usize) -> usize {
        (self.dims[i] + 1) as usize
    }
}

#[derive(Clone, Debug)]
pub struct FilteredComplex {
    formal_dim: usize,
    ids: Vec<u32>,
    levels: Vec<usize>,
    simplices: Vec<Vec<Vec<u32>>>,
    index: Vec<BTreeMap<Vec<u32>, usize>>,
    cofacets: Vec<Vec<Vec<usize>>>,
    strata: Vec<Stratum>,
    /// `(level, internal vertex) → stratum position`, for vertices only.
    vertex_stratum: Vec<usize>,
    orientations: Vec<(Vec<u32>, i64)>,
}

impl FilteredComplex {
    pub fn build(raw: &RawComplex) -> Result<Self, Error> {
        let n = raw.formal_dim;
        let mut declared: BTreeMap<u32, usize> = BTreeMap::new();
        for &(id, level) in &raw.vertices {
            if level < 0 || level as usize > n {
                return Err(Error::LevelOutOfRange { vertex: id, level });
            }
            if declared.insert(id, level as usize).is_some() {
                return Err(Error::DuplicateVertex(id));
            }
        }
        if !declared.values().any(|&l| l == n) {
            return Err(Error::EmptyRegularPart);
        }
        let mut order: Vec<(usize, u32)> = declared.iter().map(|(&id, &l)| (l, id)).collect();
        order.sort();
        let ids: Vec<u32> = order.iter().map(|o| o.1).collect();
        let levels: Vec<usize> = order.iter().map(|o| o.0).collect();
        let internal: BTreeMap<u32, u32> = ids
            .iter()
            .enumerate()
            .map(|(k, &id)| (id, k as u32))
            .collect();

        let to_internal = |s: &[u32]| -> Result<Vec<u32>, Error> {
            let mut v = s
                .iter()
                .map(|id| internal.get(id).copied().ok_or(Error::UnknownVertex(*id)))
                .collect::<Result<Vec<u32>, _>>()?;
            v.sort_unstable();
            if v.windows(2).any(|w| w[0] == w[1]) || v.is_empty() {
                return Err(Error::NonSimplicial(s.to_vec()));
            }
            Ok(v)
        };

        let mut maximal: Vec<Vec<u32>> = Vec::new();
        for s in &raw.simplices {
            let v = to_internal(s)?;
            for i in 0..=n {
                let below = v.iter().filter(|&&x| levels[x as usize] <= i).count();
                if below > i + 1 {
                    return Err(Error::DimensionViolation {
                        level: i,
                        simplex: s.clone(),
                        dim: below - 1,
                    });
                }
            }
            maximal.push(v);
        }
        for k in 0..ids.len() as u32 {
            maximal.push(vec![k]);
        }

        let dim = maximal.iter().map(|s| s.len() - 1).max().unwrap_or(0);
        let mut sets: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); dim + 1];
        for s in &maximal {
            if sets[s.len() - 1].contains(s) {
                continue;
            }
            // Enumerate all faces through bitmasks.
            let m = s.len();
            assert!(m <= 24, "simplex too large");
            for mask in 1u32..(1 << m) {
                let face: Vec<u32> = (0..m)
                    .filter(|&b| mask >> b & 1 == 1)
                    .map(|b| s[b])
                    .collect();
                sets[face.len() - 1].insert(face);
            }
        }
        let simplices: Vec<Vec<Vec<u32>>> =
            sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index: Vec<BTreeMap<Vec<u32>, usize>> = simplices
            .iter()
            .map(|list| {
                list.iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        let mut cofacets: Vec<Vec<Vec<usize>>> = simplices
            .iter()
            .map(|l| vec![Vec::new(); l.len()])
            .collect();
        for k in 1..simplices.len() {
            for (j, s) in simplices[k].iter().enumerate() {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    cofacets[k - 1][index[k - 1][&f]].push(j);
                }
            }
        }
        for list in &mut cofacets {
            for c in list {
                c.sort_unstable();
            }
        }

        // Strata: components of the level-i vertices joined by level-i edges.
        let nv = ids.len();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        if simplices.len() > 1 {
            for e in &simplices[1] {
                let (a, b) = (e[0] as usize, e[1] as usize);
                if levels[a] == levels[b] {
                    let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let mut strata: Vec<Stratum> = Vec::new();
        let mut vertex_stratum = vec![usize::MAX; nv];
        let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
        // Internal indices are sorted by level, so strata come out sorted by
        // (level, lowest vertex).
        for v in 0..nv {
            let r = root(&mut parent, v);
            let pos = *by_root.entry(r).or_insert_with(|| {
                let level = levels[v];
                let id = strata.iter().filter(|s| s.level == level).count();
                strata.push(Stratum {
                    level,
                    id,
                    codim: n - level,
                    vertices: Vec::new(),
                });
                strata.len() - 1
            });
            strata[pos].vertices.push(v as u32);
            vertex_stratum[v] = pos;
        }

        Ok(FilteredComplex {
            formal_dim: n,
            ids,
            levels,
            simplices,
            index,
            cofacets,
            strata,
            vertex_stratum,
            orientations: raw.orientations.clone(),
        })
    }

    pub fn formal_dim(&self) -> usize {
        self.formal_dim
    }

    /// Geometric dimension.
    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn vertex_id(&self, v: u32) -> u32 {
        self.ids[v as usize]
    }

    pub fn level(&self, v: u32) -> usize {
        self.levels[v as usize]
    }

    pub fn internal_vertex(&self, id: u32) -> Option<u32> {
        self.ids.iter().position(|&x| x == id).map(|p| p as u32)
    }

    /// Number of `k`-simplices.
    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<u32>] {
        self.simplices.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex(&self, k: usize, i: usize) -> &[u32] {
        &self.simplices[k][i]
    }

    /// Index of a simplex given by sorted internal vertices.
    pub fn find(&self, s: &[u32]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    /// Dimension and index of a simplex given by external ids in any order.
    pub fn find_external(&self, ids: &[u32]) -> Option<(usize, usize)> {
        let mut v = ids
            .iter()
            .map(|&id| self.internal_vertex(id))
            .collect::<Option<Vec<u32>>>()?;
        v.sort_unstable();
        Some((v.len().checked_sub(1)?, self.find(&v)?))
    }

    pub fn to_external(&self, s: &[u32]) -> Vec<u32> {
        s.iter().map(|&v| self.vertex_id(v)).collect()
    }

    /// Indices of the `(k+1)`-simplices having simplex `(k, i)` as a face.
    pub fn cofacets(&self, k: usize, i: usize) -> &[usize] {
        &self.cofacets[k][i]
    }

    pub fn is_regular(&self, s: &[u32]) -> bool {
        s.last().is_some_and(|&v| self.level(v) == self.formal_dim)
    }

    pub fn join_decomposition(&self, s: &[u32]) -> JoinDecomposition {
        let mut dims = vec![-1i64; self.formal_dim + 1];
        for &v in s {
            dims[self.level(v)] += 1;
        }
        JoinDecomposition { dims }
    }

    /// Vertices of `s` at level `i` (the factor `Δ_i`), in order.
    pub fn factor<'a>(&'a self, s: &'a [u32], i: usize) -> impl Iterator<Item = u32> + 'a {
        s.iter().copied().filter(move |&v| self.level(v) == i)
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn singular_strata(&self) -> impl Iterator<Item = (usize, &Stratum)> {
        self.strata
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_regular())
    }

    /// Position in [`Self::strata`] of the stratum `(level, id)`.
    pub fn stratum_position(&self, level: usize, id: usize) -> Option<usize> {
        self.strata
            .iter()
            .position(|s| s.level == level && s.id == id)
    }

    /// Stratum containing the interior of `s`.
    pub fn stratum_of(&self, s: &[u32]) -> usize {
        self.vertex_stratum[*s.last().expect("empty simplex") as usize]
    }

    /// Stratum met by the closed simplex `s` at level `i`, if any.
    pub fn stratum_at(&self, s: &[u32], i: usize) -> Option<usize> {
        s.iter()
            .find(|&&v| self.level(v) == i)
            .map(|&v| self.vertex_stratum[v as usize])
    }

    /// Strata met by the closed simplex `s`, one per occupied level.
    pub fn strata_met(&self, s: &[u32]) -> Vec<usize> {
        let mut out: Vec<usize> = s.iter().map(|&v| self.vertex_stratum[v as usize]).collect();
        out.dedup();
        out
    }

    /// Simplicial boundary `C_k → C_{k−1}`, face `i` with sign `(−1)^i`.
    pub fn boundary_matrix(&self, ring: Ring, k: usize) -> SparseMatrix {
        if k == 0 {
            return SparseMatrix::zeros(0, self.count(0));
        }
        let cols = self
            .simplices(k)
            .iter()
            .map(|s| {
                SparseVec::from_entries(
                    ring,
                    (0..s.len()).map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        (self.index[k - 1][&f], if i % 2 == 0 { 1 } else { -1 })
                    }),
                )
            })
            .collect();
        SparseMatrix::from_columns(self.count(k - 1), cols)
    }

    /// Orientation signs attached to the input, with external ids.
    pub fn supplied_orientations(&self) -> &[(Vec<u32>, i64)] {
        &self.orientations
    }

    /// Maximal simplices, for export.
    pub fn maximal_simplices(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for k in 0..self.simplices.len() {
            for (i, s) in self.simplices[k].iter().enumerate() {
                if k + 1 == self.simplices.len() || self.cofacets[k][i].is_empty() {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Description of the complex with external ids (maximal simplices only).
    pub fn to_raw(&self) -> RawComplex {
        RawComplex {
            formal_dim: self.formal_dim,
            vertices: (0..self.ids.len())
                .map(|v| (self.ids[v], self.levels[v] as i64))
                .collect(),
            simplices: self
                .maximal_simplices()
                .iter()
                .map(|s| self.to_external(s))
                .collect(),
            orientations: self.orientations.clone(),
        }
    }

    /// A copy carrying the given top orientations (external ids).
    pub fn with_orientations(&self, orientations: Vec<(Vec<u32>, i64)>) -> Self {
        FilteredComplex {
            orientations,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(n: usize, verts: &[(u32, i64)], simplices: &[&[u32]]) -> RawComplex {
        RawComplex {
            formal_dim: n,
            vertices: verts.to_vec(),
            simplices: simplices.iter().map(|s| s.to_vec()).collect(),
            orientations: Vec::new(),
        }
    }

    #[test]
    fn tetrahedron_boundary() {
        let r = raw(
            2,
            &[(0, 2), (1, 2), (2, 2), (3, 2)],
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
        );
        let x = FilteredComplex::build(&r).unwrap();
        assert_eq!((x.count(0), x.count(1), x.count(2)), (4, 6, 4));
        assert_eq!(x.strata().len(), 1);
        assert!(x.strata()[0].is_regular());
        let ring = Ring::Integers;
        assert!(x
            .boundary_matrix(ring, 1)
            .mul(ring, &x.boundary_matrix(ring, 2))
            .is_zero());
    }

    #[test]
    fn dimension_violation() {
        // A level-1 vertex spanning a triangle with two other level-1 vertices.
        let r = raw(2, &[(0, 1), (1, 1), (2, 1), (3, 2)], &[&[0, 1, 2, 3]]);
        assert!(matches!(
            FilteredComplex::build(&r),
            Err(Error::DimensionViolation { .. })
        ));
    }

    #[test]
    fn repeated_vertex_rejected() {
        let r = raw(1, &[(0, 1), (1, 1)], &[&[0, 0]]);
        assert!(matches!(
            FilteredComplex::build(&r),
            Err(Error::NonSimplicial(_))
        ));
    }

    #[test]
    fn no_regular_vertex() {
        let r = raw(1, &[(0, 0)], &[&[0]]);
        assert_eq!(
            FilteredComplex::build(&r).unwrap_err(),
            Error::EmptyRegularPart
        );
    }

    #[test]
    fn join_decomposition_counts() {
        let r = raw(3, &[(9, 0), (1, 3), (2, 3)], &[&[1, 9, 2]]);
        let x = FilteredComplex::build(&r).unwrap();
        let s = x.simplex(2, 0).to_vec();
        assert_eq!(x.join_decomposition(&s).dims, vec![0, -1, -1, 1]);
        assert_eq!(x.to_external(&s), vec![9, 1, 2]);
    }
}
