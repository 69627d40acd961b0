//! Knot Floer complexes over GF(2)[U], mapping cones for surgery, dual knot
//! complexes, and the contact-geometry bookkeeping built on them.

pub mod complex;
pub mod cone;
pub mod contact;
pub mod dual;
pub mod error;
pub mod gf2;
pub mod json;
pub mod models;
pub mod pipeline;
pub mod reduce;

pub use complex::{check_complex, q, Chain, FilteredComplex, Generator, Slice, ValidationReport, Violation, Q};
pub use cone::{AssembledCone, ConeCell, ConeRange, ConeVertex, Flavor, HatCone, MappingCone, Segment};
pub use contact::{
    c1_plus_one_surgery, c1_positive_integer_surgery, c1_surgery_cobordism, characterize_all_minus_two,
    locate_contact_class, negative_expansion, positive_expansion, reduce_emn, smooth_coefficient, ContactLocator,
    DgsExpansion, DgsKind, EmnReduction, LegendrianData, SmoothCoefficient,
};
pub use contact::{format_rational, parse_rational, rational};
pub use dual::{
    build_dual_cone, distinct_classes, g_map, loss_grading, normal_form, top_alexander, DualCone, GMapReport,
    NormalForm, Summand,
};
pub use error::{FloerError, Result};
pub use json::{complex_from_json, complex_to_json, JsonComplex, JsonEntry, JsonFraction, JsonGenerator};
pub use models::{
    alexander_polynomial, associated_graded, box_complex, build_minus_en, flip, genus, hfk_hat, hfk_minus,
    hfk_minus_module, mirror, staircase, unknot, FlipMap,
};
pub use pipeline::{distinctness_pipeline, emn_pipeline, Case, PipelineReport, PipelineStep};
pub use reduce::{
    cancel_pair, homology, induced_map, reduce, BasisTrace, FieldHomology, GradedRanks, GradingKey, HomologyRing,
    InducedMap, ReducedForm, Reducer, ReductionMode,
};
