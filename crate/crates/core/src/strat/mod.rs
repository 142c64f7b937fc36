//! Triangulated stratified pseudomanifolds, general perversities, allowable chains with
//! stratified coefficients `R₀`, intersection homology and inclusion-induced image groups.
//!
//! Chains live on the regular simplices (those not inside the singular set `X_{n−1}`);
//! boundary faces inside `X_{n−1}` are dropped. Homological indexing is used throughout.

mod complex;
mod ih;
mod perversity;

pub use complex::{ComplexKind, StratSpec, StratifiedComplex, Stratum};
pub use ih::{
    allowable_subspace, duality_chi_report, image_ih, intersection_homology, plain_betti, regular_part_betti,
    DualityReport, IhData, ImageIh,
};
pub use perversity::{weight_perversity_value, Perversity, PerversityOrder};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StratError {
    #[error("empty complex or empty simplex")]
    Empty,
    #[error("simplex {simplex} uses vertex {vertex} outside the vertex range")]
    BadVertex { simplex: String, vertex: usize },
    #[error("simplex {simplex} repeats a vertex")]
    RepeatedVertex { simplex: String },
    #[error("simplex {simplex} is not a face of any top simplex (complex is not pure)")]
    NotPure { simplex: String },
    #[error("regular codimension-one face {face} lies in {cofaces} top simplices")]
    Pseudomanifold { face: String, cofaces: usize },
    #[error("top simplex {simplex} meets X_{level} in a set that is not a face inside X_{level}")]
    IncompatibleFiltration { simplex: String, level: usize },
    #[error("stratum {label} declared twice")]
    DuplicateStratum { label: String },
    #[error("unknown stratum {label}")]
    UnknownStratum { label: String },
    #[error("stratum {label} declared with dimension {declared} but its simplices reach {found:?}")]
    StratumDimension { label: String, declared: usize, found: Option<usize> },
    #[error("singular simplex {simplex} is not a face of the complex")]
    SingularNotFace { simplex: String },
    #[error("simplex {simplex} receives conflicting stratum labels {labels:?}")]
    LabelConflict { simplex: String, labels: Vec<String> },
    #[error("face {face} lies in stratum {face_stratum}, of higher dimension than {stratum}")]
    FaceInHigherStratum { face: String, face_stratum: String, stratum: String },
    #[error("no coherent orientation: conflict at top simplex {simplex}")]
    NonOrientable { simplex: String },
    #[error("perversity has no value for stratum {label}")]
    MissingStratum { label: String },
    #[error("perversity names stratum {label} which the complex does not have")]
    ExtraStratum { label: String },
    #[error("weight for stratum {label} must be a positive rational")]
    NonPositiveWeight { label: String },
    #[error("perversities are not comparable stratum-wise")]
    Incomparable,
    #[error("degree {degree} outside 0..={limit}")]
    DegreeOutOfRange { degree: usize, limit: usize },
}
