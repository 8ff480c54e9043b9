//! Exact and numeric machinery for local rigidity of nearly circular
//! elliptic billiards: expansion coefficients of the action-angle change of
//! variables, caustic-preservation linear systems over cosine fields, good
//! prime selection, and a floating-point elliptic billiard.

pub mod coeff_engine;
pub mod elliptic_geom;
pub mod exact_core;
pub mod prime_select;
pub mod rigidity_system;

pub use exact_core::{
    AlgebraicCos, CosField, ExactError, PolyQ, Rational, SeriesTrig, TensorAlgebraic, TrigPoly,
};
