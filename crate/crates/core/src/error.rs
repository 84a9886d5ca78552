use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors raised while building or analysing a filtered complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// The skeleton `X_level` contains a simplex of dimension `dim > level`.
    DimensionViolation {
        level: usize,
        simplex: Vec<u32>,
        dim: usize,
    },
    /// No vertex sits at the top level.
    EmptyRegularPart,
    /// A simplex lists the same vertex twice.
    NonSimplicial(Vec<u32>),
    /// A simplex refers to a vertex that was never declared.
    UnknownVertex(u32),
    /// A vertex level outside `0..=formal_dim`.
    LevelOutOfRange {
        vertex: u32,
        level: i64,
    },
    /// The same vertex id declared twice.
    DuplicateVertex(u32),
    /// A stratum `(level, id)` that does not exist in the complex.
    UnknownStratum {
        level: usize,
        id: usize,
    },
    /// A perversity defined for a different formal dimension or complex.
    PerversityMismatch(String),
    /// GM table violating `p(i) <= p(i+1) <= p(i) + 1`.
    NonMonotoneGm(Vec<i64>),
    /// A nonzero value assigned to a regular stratum.
    RegularStratumValue {
        id: usize,
        value: i64,
    },
    InvalidModulus(u64),
    /// `d∘d != 0` in some degree.
    NotAComplex {
        degree: usize,
    },
    /// The traversal of the regular part found an inconsistent orientation.
    NonOrientable,
    /// An (n-1)-simplex with a number of cofaces other than two.
    NotPseudomanifold {
        face: Vec<u32>,
        cofaces: usize,
    },
    /// Supplied orientations are not coherent.
    IncoherentOrientation(Vec<u32>),
    /// The complex is not pure of dimension `formal_dim`.
    NotPure(Vec<u32>),
    MissingLink {
        level: usize,
        id: usize,
    },
    /// A vector expected to lie in a presented submodule does not.
    NotInSubmodule,
    UnknownSpace(String),
    Recipe(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionViolation {
                level,
                simplex,
                dim,
            } => write!(
                f,
                "skeleton X_{level} contains the {dim}-simplex {simplex:?}"
            ),
            Error::EmptyRegularPart => f.write_str("no vertex at the top level"),
            Error::NonSimplicial(s) => write!(f, "simplex {s:?} repeats a vertex"),
            Error::UnknownVertex(v) => write!(f, "undeclared vertex {v}"),
            Error::LevelOutOfRange { vertex, level } => {
                write!(f, "vertex {vertex} has level {level} outside [0, n]")
            }
            Error::DuplicateVertex(v) => write!(f, "vertex {v} declared twice"),
            Error::UnknownStratum { level, id } => write!(f, "no stratum ({level}, {id})"),
            Error::PerversityMismatch(msg) => write!(f, "perversity mismatch: {msg}"),
            Error::NonMonotoneGm(v) => write!(f, "GM table {v:?} is not a GM perversity"),
            Error::RegularStratumValue { id, value } => {
                write!(f, "regular stratum {id} given nonzero value {value}")
            }
            Error::InvalidModulus(p) => write!(f, "{p} is not a supported prime"),
            Error::NotAComplex { degree } => write!(f, "d∘d != 0 in degree {degree}"),
            Error::NonOrientable => f.write_str("regular part is not orientable"),
            Error::NotPseudomanifold { face, cofaces } => write!(
                f,
                "codimension-one face {face:?} has {cofaces} cofaces instead of 2"
            ),
            Error::IncoherentOrientation(s) => {
                write!(f, "supplied orientation is incoherent at {s:?}")
            }
            Error::NotPure(s) => write!(f, "maximal simplex {s:?} is not top-dimensional"),
            Error::MissingLink { level, id } => {
                write!(f, "no link recorded for stratum ({level}, {id})")
            }
            Error::NotInSubmodule => f.write_str("vector is not in the presented submodule"),
            Error::UnknownSpace(name) => write!(f, "unknown library space `{name}`"),
            Error::Recipe(msg) => write!(f, "bad recipe: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
