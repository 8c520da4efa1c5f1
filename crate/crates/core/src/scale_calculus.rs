//! Part-division correspondences between lengths.
//!
//! A [`Correspondence`] `(p, q)` says: divide the reference length into `p`
//! equal parts, and `q` of those parts make up the related length. There is
//! no absolute unit, only a relation between two marked cords, so the pair is
//! never reduced: `(232, 28)` and `(58, 7)` are different objects with the
//! same ratio.
//!
//! [`derive_i59_trace`] scripts the reconstruction of the first half of the
//! Sulba quadrature rule I.59 (divide the diameter into 8 parts, a part into
//! 29, remove 28) from the crude bounds for √2 and the circulature rule I.58.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact_numbers::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScaleError {
    #[error("part counts must be positive, got ({parts}, {related})")]
    NonPositiveParts { parts: u64, related: u64 },
    #[error("refinement factor must be positive")]
    NonPositiveFactor,
    #[error("cannot compose {first} with {second}: `{left}` does not match `{right}`")]
    LabelMismatch {
        first: String,
        second: String,
        left: String,
        right: String,
    },
    #[error("related length ({related} parts) exceeds the whole ({parts} parts)")]
    RelatedExceedsWhole { parts: u64, related: u64 },
    #[error("part count overflow")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Correspondence {
    parts: u64,
    related: u64,
    reference: String,
    target: String,
}

/// `B = A` less `removed` of `A`'s `whole` parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RemovalForm {
    pub whole: u64,
    pub removed: u64,
}

pub fn make_correspondence(
    parts: u64,
    related: u64,
    reference: impl Into<String>,
    target: impl Into<String>,
) -> Result<Correspondence, ScaleError> {
    if parts == 0 || related == 0 {
        return Err(ScaleError::NonPositiveParts { parts, related });
    }
    Ok(Correspondence {
        parts,
        related,
        reference: reference.into(),
        target: target.into(),
    })
}

impl Correspondence {
    /// Number of equal parts the reference length is divided into.
    pub fn parts(&self) -> u64 {
        self.parts
    }

    /// Number of those parts making up the related length.
    pub fn related(&self) -> u64 {
        self.related
    }

    pub fn reference(&self) -> &str {
        &self.reference
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn pair(&self) -> [u64; 2] {
        [self.parts, self.related]
    }

    /// Subdivide every part into `factor` further parts.
    pub fn refine(&self, factor: u64) -> Result<Correspondence, ScaleError> {
        if factor == 0 {
            return Err(ScaleError::NonPositiveFactor);
        }
        Ok(Correspondence {
            parts: self.parts.checked_mul(factor).ok_or(ScaleError::Overflow)?,
            related: self.related.checked_mul(factor).ok_or(ScaleError::Overflow)?,
            ..self.clone()
        })
    }

    /// Divide the related length into `q` parts instead; `p` of them give the reference.
    pub fn invert(&self) -> Correspondence {
        Correspondence {
            parts: self.related,
            related: self.parts,
            reference: self.target.clone(),
            target: self.reference.clone(),
        }
    }

    /// Chain `A→B` with `B→C` into `A→C`. Labels must match exactly.
    pub fn compose(&self, next: &Correspondence) -> Result<Correspondence, ScaleError> {
        if self.target != next.reference {
            return Err(ScaleError::LabelMismatch {
                first: self.to_string(),
                second: next.to_string(),
                left: self.target.clone(),
                right: next.reference.clone(),
            });
        }
        Ok(Correspondence {
            parts: self.parts.checked_mul(next.parts).ok_or(ScaleError::Overflow)?,
            related: self.related.checked_mul(next.related).ok_or(ScaleError::Overflow)?,
            reference: self.reference.clone(),
            target: next.target.clone(),
        })
    }

    /// Related length over reference length, reduced.
    pub fn as_ratio(&self) -> Rational {
        Rational::new(self.related, self.parts)
    }

    pub fn removal_form(&self) -> Result<RemovalForm, ScaleError> {
        if self.related > self.parts {
            return Err(ScaleError::RelatedExceedsWhole {
                parts: self.parts,
                related: self.related,
            });
        }
        Ok(RemovalForm {
            whole: self.parts,
            removed: self.parts - self.related,
        })
    }
}

impl fmt::Display for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) {}→{}",
            self.parts, self.related, self.reference, self.target
        )
    }
}

impl Serialize for Correspondence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.pair().serialize(serializer)
    }
}

/// What a step does to the correspondence it receives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// Replaces the relation by a different, approximate one.
    Approximation,
    /// Applies a rule of the text, which may change the lengths compared.
    Rule,
    /// Subdivides parts; ratio preserved.
    Refinement,
    /// Swaps the roles of the two lengths; ratio inverted.
    Inversion,
}

impl StepKind {
    fn prefix(self) -> &'static str {
        match self {
            StepKind::Approximation => "approximation",
            StepKind::Rule => "rule",
            StepKind::Refinement => "refinement",
            StepKind::Inversion => "inversion",
        }
    }

    /// Reads the kind back from a step description's `kind:` prefix.
    pub fn of_description(description: &str) -> Option<StepKind> {
        let head = description.split(':').next()?;
        [
            StepKind::Approximation,
            StepKind::Rule,
            StepKind::Refinement,
            StepKind::Inversion,
        ]
        .into_iter()
        .find(|k| k.prefix() == head)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationStep {
    pub description: String,
    pub before: Option<Correspondence>,
    pub after: Correspondence,
    pub anchor: String,
}

impl DerivationStep {
    pub fn kind(&self) -> Option<StepKind> {
        StepKind::of_description(&self.description)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    steps: Vec<DerivationStep>,
}

impl Serialize for DerivationTrace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DerivationTrace", 2)?;
        s.serialize_field("steps", &self.steps)?;
        s.serialize_field("final", self.final_correspondence())?;
        s.end()
    }
}

/// Structural violations found by [`DerivationTrace::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("trace has no steps")]
    Empty,
    #[error("step {0} has an empty anchor")]
    MissingAnchor(usize),
    #[error("step {0} does not declare its kind")]
    UndeclaredKind(usize),
    #[error("step {0} is a refinement but changes the ratio")]
    RefinementChangesRatio(usize),
    #[error("step {0} is an inversion but its ratio is not the reciprocal")]
    InversionNotReciprocal(usize),
}

impl DerivationTrace {
    fn new() -> Self {
        DerivationTrace { steps: Vec::new() }
    }

    fn push(&mut self, kind: StepKind, text: &str, after: Correspondence, anchor: &str) {
        let before = self.steps.last().map(|s| s.after.clone());
        self.steps.push(DerivationStep {
            description: format!("{}: {}", kind.prefix(), text),
            before,
            after,
            anchor: anchor.to_string(),
        });
    }

    pub fn steps(&self) -> &[DerivationStep] {
        &self.steps
    }

    pub fn final_correspondence(&self) -> &Correspondence {
        &self
            .steps
            .last()
            .expect("a derivation trace always has at least one step")
            .after
    }

    /// Checks that the ratio changes only at approximation or rule steps,
    /// refinements keep it, inversions take its reciprocal, and every step
    /// carries an anchor.
    pub fn validate(&self) -> Result<(), TraceError> {
        if self.steps.is_empty() {
            return Err(TraceError::Empty);
        }
        for (i, step) in self.steps.iter().enumerate() {
            let n = i + 1;
            if step.anchor.trim().is_empty() {
                return Err(TraceError::MissingAnchor(n));
            }
            let kind = step.kind().ok_or(TraceError::UndeclaredKind(n))?;
            let Some(before) = &step.before else { continue };
            let (old, new) = (before.as_ratio(), step.after.as_ratio());
            match kind {
                StepKind::Refinement if old != new => return Err(TraceError::RefinementChangesRatio(n)),
                StepKind::Inversion if old.recip().ok() != Some(new) => {
                    return Err(TraceError::InversionNotReciprocal(n))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

pub const HALF_DIAGONAL: &str = "half-diagonal";
pub const HALF_SIDE: &str = "half-side";
pub const SIDE: &str = "side";
pub const DIAMETER: &str = "diameter";
pub const EXCESS_HALF_DIAGONAL: &str = "excess E";
pub const EXCESS_RADIUS: &str = "excess e";

const ANCHOR_I58: &str = "Baudhayana Sulbasutra I.58 (circulature: radius = half-side + E/3)";
const ANCHOR_I59: &str =
    "Baudhayana Sulbasutra I.59 (divide the diameter into 8 parts, a part 29-fold, remove 28)";
const ANCHOR_SQRT2: &str = "bounds 1 1/2 > sqrt 2 > 1 1/3 for the half-diagonal over the half-side";

/// The scripted seven-step reconstruction of I.59's division 8 × 29 and
/// removal of 28 parts.
pub fn derive_i59_trace() -> DerivationTrace {
    let corr = |p, q, from, to| make_correspondence(p, q, from, to).expect("scripted counts are positive");
    let mut trace = DerivationTrace::new();

    // √2 ≈ 3/2 puts the half-side at 8 of 12 half-diagonal parts; √2 ≈ 4/3 at 9.
    trace.push(
        StepKind::Approximation,
        "crude bounds 3/2 and 4/3 for sqrt 2; with the half-diagonal in 12 parts the \
         half-side holds 8 (upper bound) or 9 (lower bound) parts; start from 8",
        corr(12, 8, HALF_DIAGONAL, HALF_SIDE),
        ANCHOR_SQRT2,
    );
    trace.push(
        StepKind::Approximation,
        "take the half-side as 8 1/2 of 12 parts; halving every part, the half-diagonal \
         holds 24 parts and the half-side 17",
        corr(24, 17, HALF_DIAGONAL, HALF_SIDE),
        ANCHOR_SQRT2,
    );
    trace.push(
        StepKind::Rule,
        "circulature: the excess E of the half-diagonal over the half-side is 24 - 17 = 7 \
         parts, and the radius exceeds the half-side by e = E/3",
        corr(17, 7, HALF_SIDE, EXCESS_HALF_DIAGONAL),
        ANCHOR_I58,
    );
    trace.push(
        StepKind::Rule,
        "divide every part into 3; the half-side holds 51 = 3 x 17 parts and e = E/3 \
         holds 7 of them",
        corr(51, 7, HALF_SIDE, EXCESS_RADIUS),
        ANCHOR_I58,
    );
    trace.push(
        StepKind::Rule,
        "the radius is half-side + e = 51 + 7 = 58 parts; doubling both, where the side \
         holds 51 parts the diameter holds 58",
        corr(51, 58, SIDE, DIAMETER),
        ANCHOR_I58,
    );
    let conversely = trace.final_correspondence().invert();
    trace.push(
        StepKind::Inversion,
        "conversely, divide the diameter into 58 parts; the side is obtained by removing 7",
        conversely.clone(),
        ANCHOR_I59,
    );
    let refined = conversely.refine(4).expect("factor 4 is positive");
    trace.push(
        StepKind::Refinement,
        "58 is close to 56 = 8 x 7; divide every part into 4: the diameter holds \
         4 x 58 = 8 x 29 parts and the side is obtained by removing 4 x 7 = 28",
        refined,
        ANCHOR_I59,
    );
    trace
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(p: u64, q: u64) -> Correspondence {
        make_correspondence(p, q, "A", "B").unwrap()
    }

    #[test]
    fn construction() {
        let hd = make_correspondence(24, 17, HALF_DIAGONAL, HALF_SIDE).unwrap();
        assert_eq!(hd.pair(), [24, 17]);
        assert_eq!(c(1, 1).pair(), [1, 1]);
        assert_eq!(make_correspondence(15, 13, DIAMETER, SIDE).unwrap().pair(), [15, 13]);
        assert!(matches!(
            make_correspondence(0, 3, "A", "B"),
            Err(ScaleError::NonPositiveParts { .. })
        ));
        assert!(make_correspondence(3, 0, "A", "B").is_err());
    }

    #[test]
    fn refine_examples() {
        assert_eq!(c(58, 7).refine(4).unwrap().pair(), [232, 28]);
        assert_eq!(c(24, 17).refine(1).unwrap(), c(24, 17));
        assert_eq!(c(3, 2).refine(5).unwrap().pair(), [15, 10]);
        assert_eq!(c(3, 2).refine(0), Err(ScaleError::NonPositiveFactor));
        assert_eq!(c(u64::MAX, 1).refine(2), Err(ScaleError::Overflow));
    }

    #[test]
    fn invert_examples() {
        let d = make_correspondence(58, 51, DIAMETER, SIDE).unwrap();
        let s = d.invert();
        assert_eq!(s.pair(), [51, 58]);
        assert_eq!((s.reference(), s.target()), (SIDE, DIAMETER));
        assert_eq!(s.invert(), d);
        assert_eq!(c(1, 1).invert().pair(), [1, 1]);
    }

    #[test]
    fn compose_examples() {
        let side_half = make_correspondence(2, 1, "s", "half-s").unwrap();
        let hd = make_correspondence(24, 17, "half-diag", "half-s").unwrap();
        assert!(matches!(side_half.compose(&hd), Err(ScaleError::LabelMismatch { .. })));

        let ab = make_correspondence(24, 17, "A", "B").unwrap();
        let bc = make_correspondence(17, 7, "B", "C").unwrap();
        let ac = ab.compose(&bc).unwrap();
        assert_eq!(ac.pair(), [408, 119]);
        assert_eq!((ac.reference(), ac.target()), ("A", "C"));
        assert_eq!(ac.as_ratio(), Rational::new(7, 24));

        let id = make_correspondence(1, 1, "B", "B").unwrap();
        assert_eq!(ab.compose(&id).unwrap(), ab);
    }

    #[test]
    fn ratios_and_removal() {
        assert_eq!(c(232, 28).as_ratio(), Rational::new(7, 58));
        assert_eq!(c(1, 1).as_ratio(), Rational::one());
        assert_eq!(c(1393, 1224).as_ratio(), Rational::new(1224, 1393));
        assert_eq!(c(232, 204).removal_form().unwrap(), RemovalForm { whole: 232, removed: 28 });
        assert_eq!(c(58, 51).removal_form().unwrap(), RemovalForm { whole: 58, removed: 7 });
        assert_eq!(c(5, 5).removal_form().unwrap(), RemovalForm { whole: 5, removed: 0 });
        assert!(matches!(c(5, 6).removal_form(), Err(ScaleError::RelatedExceedsWhole { .. })));
    }

    #[test]
    fn i59_trace_shape() {
        let trace = derive_i59_trace();
        trace.validate().unwrap();
        let pairs: Vec<_> = trace.steps().iter().map(|s| s.after.pair()).collect();
        assert_eq!(
            pairs,
            vec![[12, 8], [24, 17], [17, 7], [51, 7], [51, 58], [58, 51], [232, 204]]
        );
        let fin = trace.final_correspondence();
        assert_eq!(fin.removal_form().unwrap(), RemovalForm { whole: 8 * 29, removed: 28 });
        assert_eq!(fin.as_ratio(), Rational::new(51, 58));
        assert_eq!(trace.steps()[5].after.removal_form().unwrap().removed, 7);
        assert!(trace.steps()[0].before.is_none());
        for pair in trace.steps().windows(2) {
            assert_eq!(pair[1].before.as_ref(), Some(&pair[0].after));
        }
    }

    #[test]
    fn trace_json_schema() {
        let text = serde_json::to_string(&derive_i59_trace()).unwrap();
        assert!(text.starts_with(r#"{"steps":[{"description":"#));
        assert!(text.ends_with(r#"],"final":[232,204]}"#));
        let first = &text[..text.find("},{").unwrap()];
        let at = |key: &str| first.find(&format!("\"{key}\":")).unwrap();
        assert!(at("description") < at("before") && at("before") < at("after") && at("after") < at("anchor"));
        let json: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json["steps"][0]["before"], serde_json::Value::Null);
        assert_eq!(json["steps"][1]["before"], serde_json::json!([12, 8]));
        assert_eq!(json["steps"][6]["after"], serde_json::json!([232, 204]));
    }

    #[test]
    fn validate_rejects_bad_refinement() {
        let mut trace = derive_i59_trace();
        trace.steps[6].after = c(232, 200);
        assert_eq!(trace.validate(), Err(TraceError::RefinementChangesRatio(7)));
    }

    fn corr() -> impl Strategy<Value = Correspondence> {
        (1u64..10_000, 1u64..10_000).prop_map(|(p, q)| c(p, q))
    }

    proptest! {
        #[test]
        fn refine_keeps_ratio(x in corr(), k in 1u64..1000) {
            prop_assert_eq!(x.refine(k).unwrap().as_ratio(), x.as_ratio());
        }

        #[test]
        fn invert_is_reciprocal_involution(x in corr()) {
            prop_assert_eq!(x.invert().invert(), x.clone());
            prop_assert_eq!(x.invert().as_ratio(), x.as_ratio().recip().unwrap());
        }

        #[test]
        fn compose_multiplies_ratios(x in corr(), y in corr()) {
            let y = make_correspondence(y.parts(), y.related(), "B", "C").unwrap();
            prop_assert_eq!(x.compose(&y).unwrap().as_ratio(), x.as_ratio() * y.as_ratio());
        }

        #[test]
        fn removal_round_trip(p in 1u64..10_000, q in 1u64..10_000) {
            let x = c(p.max(q), p.min(q));
            let form = x.removal_form().unwrap();
            prop_assert_eq!(c(form.whole, form.whole - form.removed), x);
        }
    }
}
