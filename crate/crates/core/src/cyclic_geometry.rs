//! Exact geometry of cyclic quadrilaterals on a circle centred at the origin.
//!
//! Points carry rational coordinates. Rational points of the circle of radius
//! `r` come from the half-angle parametrization
//! `P(t) = (r(1 − t²)/(1 + t²), 2rt/(1 + t²))`, which misses only `(−r, 0)`;
//! that point is reached through [`CircleParam::Infinite`].
//!
//! Lengths are squared wherever a square root would leave the rationals. When
//! a side itself is needed (Brahmagupta's area formula), the instances use
//! parameters `t = (a² − 1)/(2a)`, for which `1 + t²` is a rational square and
//! every chord between such points is rational.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact_numbers::{sign, sqrt_exact, NumError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(Rational),
    #[error("vertex {index} = {point} is not on the circle of radius {radius}")]
    NotOnCircle {
        index: usize,
        point: RationalPoint,
        radius: Rational,
    },
    #[error("degenerate quadrilateral: {0}")]
    DegenerateQuad(String),
    #[error("sides {0:?} do not form a cyclic quadrilateral")]
    NotRealizable([Rational; 4]),
    #[error("invalid sides {0:?}: sides must be non-negative with at most one zero")]
    InvalidSides([Rational; 4]),
    #[error("perpendicular must be positive")]
    ZeroPerpendicular,
    #[error("degenerate base: {0}")]
    DegenerateBase(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Num(#[from] NumError),
}

type Result<T> = std::result::Result<T, GeometryError>;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RationalPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_ints(x: (i64, i64), y: (i64, i64)) -> Self {
        RationalPoint::new(q(x.0, x.1), q(y.0, y.1))
    }

    pub fn origin() -> Self {
        RationalPoint::new(Rational::zero(), Rational::zero())
    }

    pub fn norm_sq(&self) -> Rational {
        self.x.square() + self.y.square()
    }

    pub fn sub(&self, other: &RationalPoint) -> RationalPoint {
        RationalPoint::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn add(&self, other: &RationalPoint) -> RationalPoint {
        RationalPoint::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn scale(&self, k: &Rational) -> RationalPoint {
        RationalPoint::new(&self.x * k, &self.y * k)
    }

    pub fn neg(&self) -> RationalPoint {
        RationalPoint::new(-&self.x, -&self.y)
    }

    pub fn dot(&self, other: &RationalPoint) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    /// z-component of `self × other`.
    pub fn cross(&self, other: &RationalPoint) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    /// `self + t·(to − self)`.
    pub fn lerp(&self, to: &RationalPoint, t: &Rational) -> RationalPoint {
        self.add(&to.sub(self).scale(t))
    }

    pub fn midpoint(&self, other: &RationalPoint) -> RationalPoint {
        self.lerp(other, &q(1, 2))
    }

    /// Reflection across the line through the origin spanned by `axis`.
    pub fn reflect_across(&self, axis: &RationalPoint) -> RationalPoint {
        let k = Rational::integer(2) * self.dot(axis) * axis.norm_sq().recip().expect("nonzero axis");
        axis.scale(&k).sub(self)
    }
}

impl std::fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.x, &self.y).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (x, y) = <(Rational, Rational)>::deserialize(deserializer)?;
        Ok(RationalPoint { x, y })
    }
}

/// A position on the circle: a half-angle parameter `t`, or the point `(−r, 0)`
/// the parametrization cannot reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircleParam {
    Finite(Rational),
    Infinite,
}

impl From<Rational> for CircleParam {
    fn from(t: Rational) -> Self {
        CircleParam::Finite(t)
    }
}

/// `(r(1 − t²)/(1 + t²), 2rt/(1 + t²))`.
pub fn point_from_param(t: &Rational, r: &Rational) -> RationalPoint {
    let one = Rational::one();
    let denom = (&one + t.square()).recip().expect("1 + t² > 0");
    RationalPoint::new(
        r * (&one - t.square()) * &denom,
        r * Rational::integer(2) * t * &denom,
    )
}

pub fn point_at(param: &CircleParam, r: &Rational) -> RationalPoint {
    match param {
        CircleParam::Finite(t) => point_from_param(t, r),
        CircleParam::Infinite => RationalPoint::new(-r, Rational::zero()),
    }
}

/// Half-angle parameter whose `1 + t²` is the square of `(a² + 1)/(2a)`.
pub fn pythagorean_param(a: &Rational) -> Rational {
    let two_a = Rational::integer(2) * a;
    (a.square() - Rational::one()) * two_a.recip().expect("a ≠ 0")
}

pub fn chord_sq(p: &RationalPoint, q: &RationalPoint) -> Rational {
    p.sub(q).norm_sq()
}

/// Four distinct rational points on the circle `x² + y² = r²` forming a
/// convex quadrilateral in the given order (either orientation).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawQuad")]
pub struct CyclicQuad {
    #[serde(rename = "r")]
    radius: Rational,
    vertices: [RationalPoint; 4],
}

#[derive(Deserialize)]
struct RawQuad {
    r: Rational,
    vertices: [RationalPoint; 4],
}

impl TryFrom<RawQuad> for CyclicQuad {
    type Error = GeometryError;
    fn try_from(raw: RawQuad) -> Result<Self> {
        CyclicQuad::new(raw.r, raw.vertices)
    }
}

/// Sign of the turn `a → b → c`.
fn turn(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> Ordering {
    sign(&b.sub(a).cross(&c.sub(b)))
}

impl CyclicQuad {
    pub fn new(radius: Rational, vertices: [RationalPoint; 4]) -> Result<Self> {
        if !radius.is_positive() {
            return Err(GeometryError::NonPositiveRadius(radius));
        }
        let r_sq = radius.square();
        for (index, v) in vertices.iter().enumerate() {
            if v.norm_sq() != r_sq {
                return Err(GeometryError::NotOnCircle {
                    index,
                    point: v.clone(),
                    radius,
                });
            }
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if vertices[i] == vertices[j] {
                    return Err(GeometryError::DegenerateQuad(format!(
                        "vertices {i} and {j} coincide at {}",
                        vertices[i]
                    )));
                }
            }
        }
        let turns: Vec<Ordering> = (0..4)
            .map(|i| turn(&vertices[i], &vertices[(i + 1) % 4], &vertices[(i + 2) % 4]))
            .collect();
        if turns.contains(&Ordering::Equal) {
            return Err(GeometryError::DegenerateQuad("three consecutive vertices are collinear".into()));
        }
        if turns.iter().any(|t| *t != turns[0]) {
            return Err(GeometryError::DegenerateQuad("vertices are not in circular order".into()));
        }
        Ok(CyclicQuad { radius, vertices })
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    pub fn vertices(&self) -> &[RationalPoint; 4] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &RationalPoint {
        &self.vertices[i % 4]
    }

    /// Squared sides `|AB|², |BC|², |CD|², |DA|²`.
    pub fn sides_sq(&self) -> [Rational; 4] {
        std::array::from_fn(|i| chord_sq(self.vertex(i), self.vertex(i + 1)))
    }

    /// Sides, when all four chords are rational.
    pub fn rational_sides(&self) -> Option<[Rational; 4]> {
        let sq = self.sides_sq();
        let roots: Vec<Rational> = sq.iter().filter_map(|s| sqrt_exact(s).ok()).collect();
        roots.try_into().ok()
    }

    /// Mirror image across the x-axis, vertex order kept (so orientation flips).
    pub fn reflected(&self) -> CyclicQuad {
        CyclicQuad {
            radius: self.radius.clone(),
            vertices: std::array::from_fn(|i| {
                RationalPoint::new(self.vertices[i].x.clone(), -&self.vertices[i].y)
            }),
        }
    }
}

/// Surveyor's formula over the vertex order.
pub fn shoelace_area(quad: &CyclicQuad) -> Result<Rational> {
    let twice: Rational = (0..4).map(|i| quad.vertex(i).cross(quad.vertex(i + 1))).sum();
    if twice.is_zero() {
        return Err(GeometryError::DegenerateQuad("zero area".into()));
    }
    Ok(twice.abs() * q(1, 2))
}

fn check_sides(sides: &[Rational; 4]) -> Result<()> {
    let zeros = sides.iter().filter(|s| s.is_zero()).count();
    if sides.iter().any(Rational::is_negative) || zeros > 1 {
        return Err(GeometryError::InvalidSides(sides.clone()));
    }
    Ok(())
}

/// `(s − a)(s − b)(s − c)(s − d)` with `s` the half-sum of the sides.
///
/// One vanishing side is accepted and gives Heron's formula; see
/// [`has_vanishing_side`].
pub fn brahmagupta_radicand(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<Rational> {
    let sides = [a.clone(), b.clone(), c.clone(), d.clone()];
    check_sides(&sides)?;
    let half_sum: Rational = sides.iter().sum::<Rational>() * q(1, 2);
    let factors: Vec<Rational> = sides.iter().map(|side| &half_sum - side).collect();
    if factors.iter().any(|f| !f.is_positive()) {
        return Err(GeometryError::NotRealizable(sides));
    }
    Ok(factors.into_iter().product())
}

/// The exact area `√radicand`, if it is rational.
pub fn brahmagupta_area(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<Rational> {
    Ok(sqrt_exact(&brahmagupta_radicand(a, b, c, d)?)?)
}

pub fn has_vanishing_side(sides: &[Rational; 4]) -> bool {
    sides.iter().any(Rational::is_zero)
}

/// Product of the half-sums of opposite sides. Depends on the order of `a, b, c, d`.
pub fn crude_area(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<Rational> {
    let sides = [a.clone(), b.clone(), c.clone(), d.clone()];
    if sides.iter().any(Rational::is_negative) {
        return Err(GeometryError::InvalidSides(sides));
    }
    let half = q(1, 2);
    Ok((a + c) * &half * ((b + d) * &half))
}

/// Circumradius `a·b/(2h)` of a triangle from two sides and the perpendicular
/// dropped between them onto the third.
pub fn heart_cord(a: &Rational, b: &Rational, h: &Rational) -> Result<Rational> {
    if !h.is_positive() {
        return Err(GeometryError::ZeroPerpendicular);
    }
    if !a.is_positive() || !b.is_positive() {
        return Err(GeometryError::PreconditionViolated("sides must be positive".into()));
    }
    Ok(a * b * (Rational::integer(2) * h).recip()?)
}

/// Squared form `a²b²/(4h²)` for sides that need not be rational.
pub fn heart_cord_sq(a_sq: &Rational, b_sq: &Rational, h_sq: &Rational) -> Result<Rational> {
    if !h_sq.is_positive() {
        return Err(GeometryError::ZeroPerpendicular);
    }
    Ok(a_sq * b_sq * (Rational::integer(4) * h_sq).recip()?)
}

/// Position `λ` of the foot `H = A + λ(C − A)` of the perpendicular from `B`
/// to the line `AC`.
pub fn foot_param(a: &RationalPoint, c: &RationalPoint, b: &RationalPoint) -> Result<Rational> {
    let base = c.sub(a);
    let len_sq = base.norm_sq();
    if len_sq.is_zero() {
        return Err(GeometryError::DegenerateBase("base endpoints coincide".into()));
    }
    Ok(b.sub(a).dot(&base) * len_sq.recip()?)
}

/// Squared distance from `B` to line `AC` and the foot `H`.
pub fn perpendicular(a: &RationalPoint, c: &RationalPoint, b: &RationalPoint) -> Result<(Rational, RationalPoint)> {
    let lambda = foot_param(a, c, b)?;
    let foot = a.lerp(c, &lambda);
    Ok((chord_sq(b, &foot), foot))
}

/// Where the diagonals `AC` and `BD` meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalCut {
    pub mu_ac: Rational,
    pub mu_bd: Rational,
    pub meet: RationalPoint,
}

pub fn diagonals_cut_params(quad: &CyclicQuad) -> Result<DiagonalCut> {
    let [a, b, c, d] = quad.vertices();
    let ac = c.sub(a);
    let bd = d.sub(b);
    let denom = ac.cross(&bd);
    if denom.is_zero() {
        return Err(GeometryError::DegenerateQuad("diagonals are parallel".into()));
    }
    let inv = denom.recip()?;
    let ab = b.sub(a);
    let mu_ac = ab.cross(&bd) * &inv;
    let mu_bd = ab.cross(&ac) * &inv;
    let meet = a.lerp(c, &mu_ac);
    let zero = Rational::zero();
    let one = Rational::one();
    for mu in [&mu_ac, &mu_bd] {
        if !(mu > &zero && mu < &one) {
            return Err(GeometryError::DegenerateQuad("diagonals meet outside the quadrilateral".into()));
        }
    }
    Ok(DiagonalCut { mu_ac, mu_bd, meet })
}

/// Diagonals orthogonal by the dot product, independent of segments and portions.
pub fn diagonals_orthogonal(quad: &CyclicQuad) -> bool {
    let [a, b, c, d] = quad.vertices();
    c.sub(a).dot(&d.sub(b)).is_zero()
}

/// One diagonal taken as the base of the two triangles on either side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalSplit {
    /// Feet of the perpendiculars from the two opposite vertices (segments).
    pub feet: [Rational; 2],
    /// Where the other diagonal crosses (portions).
    pub cut: Rational,
}

impl DiagonalSplit {
    pub fn segments_are_portions(&self) -> bool {
        self.feet.iter().all(|f| f == &self.cut)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegmentsPortions {
    pub ac: DiagonalSplit,
    pub bd: DiagonalSplit,
}

pub fn segments_and_portions(quad: &CyclicQuad) -> SegmentsPortions {
    let [a, b, c, d] = quad.vertices();
    let cut = diagonals_cut_params(quad).expect("convex quadrilateral diagonals cross inside");
    let feet = |p: &RationalPoint, q: &RationalPoint, x: &RationalPoint, y: &RationalPoint| {
        [
            foot_param(p, q, x).expect("diagonal endpoints distinct"),
            foot_param(p, q, y).expect("diagonal endpoints distinct"),
        ]
    };
    SegmentsPortions {
        ac: DiagonalSplit {
            feet: feet(a, c, b, d),
            cut: cut.mu_ac,
        },
        bd: DiagonalSplit {
            feet: feet(b, d, a, c),
            cut: cut.mu_bd,
        },
    }
}

/// True iff on both diagonals the segments are also the portions, i.e. every
/// perpendicular foot is the meeting point of the diagonals.
pub fn segments_equal_portions(quad: &CyclicQuad) -> bool {
    let sp = segments_and_portions(quad);
    sp.ac.segments_are_portions() && sp.bd.segments_are_portions()
}

/// One side of Brahmagupta's theorem: the line through the diagonal meet
/// perpendicular to `side` hits the opposite side at `hit`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideBisection {
    pub side: [usize; 2],
    pub opposite: [usize; 2],
    pub hit: RationalPoint,
    pub midpoint: RationalPoint,
    pub bisects: bool,
}

pub fn brahmagupta_theorem_sides(quad: &CyclicQuad) -> Result<Vec<SideBisection>> {
    if !segments_equal_portions(quad) {
        return Err(GeometryError::PreconditionViolated("diagonals are not perpendicular".into()));
    }
    let meet = diagonals_cut_params(quad)?.meet;
    (0..4)
        .map(|i| {
            let (p, p2) = (quad.vertex(i), quad.vertex(i + 1));
            let (c, d) = (quad.vertex(i + 2), quad.vertex(i + 3));
            let side = p2.sub(p);
            let normal = RationalPoint::new(-&side.y, side.x.clone());
            let edge = d.sub(c);
            let denom = edge.cross(&normal);
            if denom.is_zero() {
                return Err(GeometryError::DegenerateQuad("opposite side parallel to the perpendicular".into()));
            }
            let w = meet.sub(c).cross(&normal) * denom.recip()?;
            let hit = c.lerp(d, &w);
            let midpoint = c.midpoint(d);
            Ok(SideBisection {
                side: [i, (i + 1) % 4],
                opposite: [(i + 2) % 4, (i + 3) % 4],
                bisects: hit == midpoint,
                hit,
                midpoint,
            })
        })
        .collect()
}

/// Chasles' form of Brahmagupta's theorem, checked exactly on all four sides.
pub fn brahmagupta_theorem_check(quad: &CyclicQuad) -> Result<bool> {
    Ok(brahmagupta_theorem_sides(quad)?.iter().all(|s| s.bisects))
}

pub fn diagonal_lengths_sq(quad: &CyclicQuad) -> (Rational, Rational) {
    let [a, b, c, d] = quad.vertices();
    (chord_sq(a, c), chord_sq(b, d))
}

/// Quad on four circle parameters; the first three vertices form the
/// distinguished triangle whose circumdiameter is checked against `2r`.
pub fn triquadrilateral(params: [CircleParam; 4], r: &Rational) -> Result<CyclicQuad> {
    if !r.is_positive() {
        return Err(GeometryError::NonPositiveRadius(r.clone()));
    }
    let vertices = params.map(|p| point_at(&p, r));
    let quad = CyclicQuad::new(r.clone(), vertices)?;
    let [a, b, c, _] = quad.vertices();
    let (h_sq, _) = perpendicular(a, c, b)?;
    let cord_sq = heart_cord_sq(&chord_sq(a, b), &chord_sq(b, c), &h_sq)?;
    if cord_sq != r.square() {
        return Err(GeometryError::DegenerateQuad(format!(
            "triangle circumradius² {cord_sq} differs from r² {}",
            r.square()
        )));
    }
    Ok(quad)
}

/// Named exact comparison inside a composite report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubVerdict {
    pub name: String,
    pub left: Rational,
    pub right: Rational,
    pub holds: bool,
}

impl SubVerdict {
    pub fn new(name: &str, left: Rational, right: Rational) -> Self {
        SubVerdict {
            name: name.to_string(),
            holds: left == right,
            left,
            right,
        }
    }
}

/// Triangle `ABC` on the diameter `AC`, with the half-oblong identities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Xii24Report {
    pub radius: Rational,
    pub a: RationalPoint,
    pub b: RationalPoint,
    pub c: RationalPoint,
    pub foot: RationalPoint,
    pub lambda: Rational,
    pub a_sq: Rational,
    pub b_sq: Rational,
    pub gamma_sq: Rational,
    pub alpha_sq: Rational,
    pub beta_sq: Rational,
    pub h_sq: Rational,
    pub checks: Vec<SubVerdict>,
}

impl Xii24Report {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// `A = P(t)`, `C` its antipode, `B = P(u)`: the segments `α, β` cut by the
/// foot of the perpendicular from `B` satisfy `α² = a² − h²`, `β² = b² − h²`,
/// `h⁴ = α²β²` (that is `h² = αβ`), and so `γ² = a² + b²`.
pub fn xii24_verify(t: &CircleParam, u: &CircleParam, r: &Rational) -> Result<Xii24Report> {
    if !r.is_positive() {
        return Err(GeometryError::NonPositiveRadius(r.clone()));
    }
    let a = point_at(t, r);
    let c = a.neg();
    let b = point_at(u, r);
    if b == a || b == c {
        return Err(GeometryError::DegenerateBase("apex coincides with a base endpoint".into()));
    }
    let gamma_sq = chord_sq(&a, &c);
    let lambda = foot_param(&a, &c, &b)?;
    let foot = a.lerp(&c, &lambda);
    let alpha_sq = lambda.square() * &gamma_sq;
    let beta_sq = (Rational::one() - &lambda).square() * &gamma_sq;
    let h_sq = chord_sq(&b, &foot);
    let a_sq = chord_sq(&a, &b);
    let b_sq = chord_sq(&b, &c);
    let checks = vec![
        SubVerdict::new("alpha^2 = a^2 - h^2", alpha_sq.clone(), &a_sq - &h_sq),
        SubVerdict::new("beta^2 = b^2 - h^2", beta_sq.clone(), &b_sq - &h_sq),
        SubVerdict::new("h^4 = alpha^2 beta^2", h_sq.square(), &alpha_sq * &beta_sq),
        SubVerdict::new("gamma^2 = a^2 + b^2", gamma_sq.clone(), &a_sq + &b_sq),
    ];
    Ok(Xii24Report {
        radius: r.clone(),
        a,
        b,
        c,
        foot,
        lambda,
        a_sq,
        b_sq,
        gamma_sq,
        alpha_sq,
        beta_sq,
        h_sq,
        checks,
    })
}

/// Rotation by an angle with rational cosine and sine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rotation {
    cos: Rational,
    sin: Rational,
}

impl Rotation {
    pub fn new(cos: Rational, sin: Rational) -> Option<Self> {
        (cos.square() + sin.square() == Rational::one()).then_some(Rotation { cos, sin })
    }

    /// Rotation by `2·atan(t)`.
    pub fn from_param(t: &Rational) -> Self {
        let p = point_from_param(t, &Rational::one());
        Rotation { cos: p.x, sin: p.y }
    }

    pub fn identity() -> Self {
        Rotation {
            cos: Rational::one(),
            sin: Rational::zero(),
        }
    }

    pub fn cos(&self) -> &Rational {
        &self.cos
    }

    pub fn sin(&self) -> &Rational {
        &self.sin
    }

    /// `self` after `other`.
    pub fn then(&self, other: &Rotation) -> Rotation {
        Rotation {
            cos: &self.cos * &other.cos - &self.sin * &other.sin,
            sin: &self.sin * &other.cos + &self.cos * &other.sin,
        }
    }

    pub fn inverse(&self) -> Rotation {
        Rotation {
            cos: self.cos.clone(),
            sin: -&self.sin,
        }
    }

    pub fn apply(&self, p: &RationalPoint) -> RationalPoint {
        RationalPoint::new(
            &p.x * &self.cos - &p.y * &self.sin,
            &p.x * &self.sin + &p.y * &self.cos,
        )
    }
}

/// Walks `start` around the circle through four rotations, which must compose
/// to the identity; the four positions visited are the vertices.
pub fn quad_from_rotations(start: &RationalPoint, rotations: &[Rotation; 4]) -> Result<CyclicQuad> {
    let total = rotations.iter().fold(Rotation::identity(), |acc, r| acc.then(r));
    if total != Rotation::identity() {
        return Err(GeometryError::PreconditionViolated("rotations do not compose to the identity".into()));
    }
    let radius = sqrt_exact(&start.norm_sq())?;
    let mut vertices = Vec::with_capacity(4);
    let mut current = start.clone();
    for rot in rotations {
        vertices.push(current.clone());
        current = rot.apply(&current);
    }
    CyclicQuad::new(radius, vertices.try_into().expect("four vertices"))
}

/// The 24 orderings of four items.
pub fn permutations4<T: Clone>(items: &[T; 4]) -> Vec<[T; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                let d = 6 - a - b - c;
                out.push([a, b, c, d].map(|i| items[i].clone()));
            }
        }
    }
    out
}

/// Shoelace area of the quad walked out by each ordering of `rotations`.
pub fn areas_over_orderings(start: &RationalPoint, rotations: &[Rotation; 4]) -> Result<Vec<Rational>> {
    permutations4(rotations)
        .iter()
        .map(|order| shoelace_area(&quad_from_rotations(start, order)?))
        .collect()
}

/// Counter-clockwise angular order from the positive x-axis.
pub fn angular_cmp(p: &RationalPoint, q: &RationalPoint) -> Ordering {
    let lower = |v: &RationalPoint| v.y.is_negative() || (v.y.is_zero() && v.x.is_negative());
    lower(p)
        .cmp(&lower(q))
        .then_with(|| sign(&q.cross(p)))
}

/// `n`-th term of the Calkin–Wilf enumeration of the positive rationals
/// (`1, 1/2, 2, 1/3, 3/2, 2/3, 3, …`).
pub fn calkin_wilf(n: u64) -> Rational {
    // Stern's diatomic sequence: term n is fusc(n + 1) / fusc(n + 2).
    fn fusc(mut n: u64) -> u64 {
        let (mut a, mut b) = (1u64, 0u64);
        while n > 0 {
            if n & 1 == 1 {
                b += a;
            } else {
                a += b;
            }
            n >>= 1;
        }
        b
    }
    Rational::new(fusc(n + 1), fusc(n + 2))
}

/// Deterministic orthodiagonal cyclic quads with all chords rational.
///
/// Instance `k` uses the diameter `AC` through `A = P(t)`, the vertex
/// `B = P(u)`, and `D` the mirror of `B` across `AC`, so the diagonals are
/// perpendicular by construction. `t` and `u` are Pythagorean parameters
/// drawn from the Calkin–Wilf sequence at offsets set by `seed`; seed 1
/// starts with `t = 0, u = 3/4` on the unit circle.
pub fn orthodiagonal_generator(seed: u64, count: usize) -> Vec<CyclicQuad> {
    let base = seed.max(1) - 1;
    let mut quads = Vec::with_capacity(count);
    let mut k = 0u64;
    while quads.len() < count {
        let t = pythagorean_param(&calkin_wilf(base + k));
        let u = pythagorean_param(&calkin_wilf(base + 2 * k + 2));
        let radius = Rational::integer(1 + (k % 3) as i64);
        k += 1;
        let a = point_from_param(&t, &radius);
        let b = point_from_param(&u, &radius);
        let c = a.neg();
        if b == c {
            continue;
        }
        let d = b.reflect_across(&a);
        if let Ok(quad) = CyclicQuad::new(radius, [a, b, c, d]) {
            quads.push(quad);
        }
    }
    quads
}

/// Deterministic four-point cyclic quads with all chords rational, in general
/// not orthodiagonal. Vertices come from Pythagorean parameters `a = m/n`
/// with small `m, n`, sorted counter-clockwise.
pub fn cyclic_quad_generator(seed: u64, count: usize) -> Vec<CyclicQuad> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut quads = Vec::with_capacity(count);
    while quads.len() < count {
        let radius = Rational::new(rng.gen_range(1..=6i64), rng.gen_range(1..=3i64));
        let mut points: Vec<RationalPoint> = (0..4)
            .map(|_| {
                let a = Rational::new(rng.gen_range(1..=12i64), rng.gen_range(1..=12i64));
                let p = point_from_param(&pythagorean_param(&a), &radius);
                if rng.gen_bool(0.5) {
                    p
                } else {
                    p.neg()
                }
            })
            .collect();
        points.sort_by(angular_cmp);
        points.dedup();
        if let Ok(vertices) = <[RationalPoint; 4]>::try_from(points) {
            if let Ok(quad) = CyclicQuad::new(radius, vertices) {
                quads.push(quad);
            }
        }
    }
    quads
}
