//! Batch verification over many generated figures.
//!
//! Every check is a pure function of one instance, so batches fan out with
//! rayon when the `parallel` feature is on. The [`sequential`] path is always
//! compiled so the two can be compared; results come back in input order
//! either way.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclic_geometry::{
    brahmagupta_area, brahmagupta_theorem_check, diagonals_orthogonal, pythagorean_param,
    segments_equal_portions, shoelace_area, xii24_verify, CircleParam, CyclicQuad, GeometryError,
    Xii24Report,
};
use crate::exact_numbers::Rational;

/// Outcome of every quad-level check on one figure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadCheck {
    pub orthogonal: bool,
    pub segments_equal_portions: bool,
    /// `None` when the diagonals are not perpendicular.
    pub theorem: Option<bool>,
    /// `None` when some chord is irrational.
    pub area_oracle: Option<bool>,
}

impl QuadCheck {
    pub fn passes(&self) -> bool {
        self.orthogonal == self.segments_equal_portions
            && self.theorem != Some(false)
            && self.area_oracle != Some(false)
    }
}

pub fn check_quad(quad: &CyclicQuad) -> QuadCheck {
    let orthogonal = diagonals_orthogonal(quad);
    let theorem = orthogonal.then(|| brahmagupta_theorem_check(quad).unwrap_or(false));
    let area_oracle = quad.rational_sides().map(|[a, b, c, d]| {
        match (brahmagupta_area(&a, &b, &c, &d), shoelace_area(quad)) {
            (Ok(exact), Ok(surveyed)) => exact == surveyed,
            _ => false,
        }
    });
    QuadCheck {
        orthogonal,
        segments_equal_portions: segments_equal_portions(quad),
        theorem,
        area_oracle,
    }
}

/// Parameters for the half-oblong checks: base endpoint `t`, apex `u`, radius.
pub type Xii24Instance = (CircleParam, CircleParam, Rational);

/// Deterministic random `(t, u, r)` with small numerators and denominators.
pub fn xii24_instances(seed: u64, count: usize) -> Vec<Xii24Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut small = move || Rational::new(rng.gen_range(-40i64..=40), rng.gen_range(1i64..=40));
    (0..count)
        .map(|_| {
            let t = small();
            let u = small();
            let r = small().abs() + Rational::one();
            (CircleParam::Finite(t), CircleParam::Finite(u), r)
        })
        .collect()
}

/// Like [`xii24_instances`] but with Pythagorean parameters, so every side is rational.
pub fn pythagorean_xii24_instances(seed: u64, count: usize) -> Vec<Xii24Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut param = move || pythagorean_param(&Rational::new(rng.gen_range(1i64..=15), rng.gen_range(1i64..=15)));
    (0..count)
        .map(|i| {
            let t = param();
            let u = param();
            (CircleParam::Finite(t), CircleParam::Finite(u), Rational::integer(1 + (i % 4) as i64))
        })
        .collect()
}

fn run_xii24(instance: &Xii24Instance) -> Result<Xii24Report, GeometryError> {
    let (t, u, r) = instance;
    xii24_verify(t, u, r)
}

pub mod sequential {
    use super::*;

    pub fn check_quads(quads: &[CyclicQuad]) -> Vec<QuadCheck> {
        quads.iter().map(check_quad).collect()
    }

    pub fn xii24_sweep(instances: &[Xii24Instance]) -> Vec<Result<Xii24Report, GeometryError>> {
        instances.iter().map(run_xii24).collect()
    }
}

#[cfg(feature = "parallel")]
pub mod parallel {
    use rayon::prelude::*;

    use super::*;

    pub fn check_quads(quads: &[CyclicQuad]) -> Vec<QuadCheck> {
        quads.par_iter().map(check_quad).collect()
    }

    pub fn xii24_sweep(instances: &[Xii24Instance]) -> Vec<Result<Xii24Report, GeometryError>> {
        instances.par_iter().map(run_xii24).collect()
    }
}

#[cfg(feature = "parallel")]
pub use parallel::{check_quads, xii24_sweep};
#[cfg(not(feature = "parallel"))]
pub use sequential::{check_quads, xii24_sweep};
