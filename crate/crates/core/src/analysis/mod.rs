//! Structure of a configuration: distance classes, balancedness, parameter
//! counts, symmetries, design strength, Hopf fibers, exact values and pictures.

mod design;
mod hopf;
mod recognize;
mod spectrum;
mod svg;
mod symmetry;

pub use design::{design_strength, gegenbauer_sums, gegenbauer_values};
pub use hopf::{hopf_map, hopf_point, HopfImage, HOPF_MERGE_TOLERANCE};
pub use recognize::{
    recognize_value, ExactKind, ExactValue, DEFAULT_MAX_DENOMINATOR, DEFAULT_MAX_DISCRIMINANT,
    QUADRATIC_COEFFICIENT_BOUND, RECOGNITION_TOLERANCE,
};
pub use spectrum::{
    distance_spectrum, is_balanced, parameter_count, Balance, DistanceClass, DistanceSpectrum,
    DEFAULT_CLUSTER_TOLERANCE,
};
pub use svg::{project_svg, random_plane, segment_count};
pub use symmetry::{
    automorphism_group, realize_automorphism, Realization, SymmetryReport, DEFAULT_COLOR_TOLERANCE,
    REALIZATION_TOLERANCE,
};

/// Default rank tolerance for [`parameter_count`] and norm tolerance for [`is_balanced`].
pub const DEFAULT_FORCE_TOLERANCE: f64 = 1e-7;
