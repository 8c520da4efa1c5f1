pub mod batch;
pub mod cli;
pub mod cyclic_geometry;
pub mod exact_numbers;
pub mod report;
pub mod scale_calculus;
pub mod sulva_rules;

pub use exact_numbers::{NumError, Rational};
