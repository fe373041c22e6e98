//! Exact rational planar primitives.
//!
//! Every predicate in this module is decided by sign tests over
//! arbitrary-precision rationals. There are no floating-point fast paths:
//! the gadget constraints of the SAT reduction and the near-degenerate
//! lower-bound constructions are decided by signs that floats would corrupt.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Exact rational coordinate. Kept canonical (gcd 1, positive denominator)
/// by `num-rational` after every operation.
pub type Coord = BigRational;

/// Builds the rational `n/d`.
pub fn frac(n: i64, d: i64) -> Coord {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the rational `n/1`.
pub fn int(n: i64) -> Coord {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonical string form `num/den`, e.g. `1/4`, `-3/1`. The denominator is
/// always present so files round-trip bit-exactly.
pub fn format_coord(c: &Coord) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Parses the canonical `num/den` form; a bare integer is accepted as `n/1`.
pub fn parse_coord(s: &str) -> Result<Coord, CoordParseError> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| CoordParseError(s.to_string()))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|_| CoordParseError(s.to_string()))?;
    if den.is_zero() {
        return Err(CoordParseError(s.to_string()));
    }
    Ok(BigRational::new(num, den))
}

#[derive(Debug, Error)]
#[error("invalid rational coordinate {0:?}")]
pub struct CoordParseError(pub String);

/// Point color. Matchings always pair a red point with a blue point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Coord,
    pub y: Coord,
    pub color: Color,
}

impl Point {
    pub fn new(x: Coord, y: Coord, color: Color) -> Self {
        Point { x, y, color }
    }

    pub fn red(x: Coord, y: Coord) -> Self {
        Point::new(x, y, Color::Red)
    }

    pub fn blue(x: Coord, y: Coord) -> Self {
        Point::new(x, y, Color::Blue)
    }

    /// Same location, ignoring color.
    pub fn same_position(&self, other: &Point) -> bool {
        self.x == other.x && self.y == other.y
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.color {
            Color::Red => 'R',
            Color::Blue => 'B',
        };
        write!(
            f,
            "{}({}, {})",
            c,
            format_coord(&self.x),
            format_coord(&self.y)
        )
    }
}

/// A matching segment: one red endpoint, one blue endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub red: Point,
    pub blue: Point,
}

impl Segment {
    /// Builds a segment, checking the endpoint colors and distinctness.
    pub fn new(red: Point, blue: Point) -> Result<Self, GeometryError> {
        if red.color != Color::Red || blue.color != Color::Blue {
            return Err(GeometryError::WrongEndpointColor);
        }
        if red.same_position(&blue) {
            return Err(GeometryError::CoincidentEndpoints);
        }
        Ok(Segment { red, blue })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrianglePosition {
    Inside,
    OnBoundary,
    Outside,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("segments share an endpoint")]
    SharedEndpoint,
    #[error("triangle vertices are collinear")]
    DegenerateTriangle,
    #[error("segment endpoints do not have the expected colors")]
    WrongEndpointColor,
    #[error("segment endpoints coincide")]
    CoincidentEndpoints,
}

/// Sign of the exact cross product `(q - p) x (r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    orientation_xy(&p.x, &p.y, &q.x, &q.y, &r.x, &r.y)
}

pub(crate) fn orientation_xy(
    px: &Coord,
    py: &Coord,
    qx: &Coord,
    qy: &Coord,
    rx: &Coord,
    ry: &Coord,
) -> Orientation {
    let cross = (qx - px) * (ry - py) - (qy - py) * (rx - px);
    if cross.is_zero() {
        Orientation::Collinear
    } else if cross.is_positive() {
        Orientation::Ccw
    } else {
        Orientation::Cw
    }
}

fn orient_sign(p: &Point, q: &Point, r: &Point) -> i8 {
    match orientation(p, q, r) {
        Orientation::Ccw => 1,
        Orientation::Cw => -1,
        Orientation::Collinear => 0,
    }
}

/// True iff the open segments `a1 b1` and `a2 b2` intersect in exactly one
/// interior point. Touching at an endpoint or collinear overlap counts as
/// not crossing.
pub fn properly_cross(a1: &Point, b1: &Point, a2: &Point, b2: &Point) -> bool {
    let o1 = orient_sign(a1, b1, a2);
    let o2 = orient_sign(a1, b1, b2);
    let o3 = orient_sign(a2, b2, a1);
    let o4 = orient_sign(a2, b2, b1);
    o1 * o2 < 0 && o3 * o4 < 0
}

/// True iff the two matching segments cross, i.e. their open interiors meet
/// in exactly one point.
///
/// Errors with [`GeometryError::SharedEndpoint`] when the segments share an
/// endpoint location, which cannot occur between two segments of a valid
/// matching.
pub fn segments_cross(s1: &Segment, s2: &Segment) -> Result<bool, GeometryError> {
    let shares = s1.red.same_position(&s2.red)
        || s1.red.same_position(&s2.blue)
        || s1.blue.same_position(&s2.red)
        || s1.blue.same_position(&s2.blue);
    if shares {
        return Err(GeometryError::SharedEndpoint);
    }
    Ok(properly_cross(&s1.red, &s1.blue, &s2.red, &s2.blue))
}

/// True iff `p` lies on the closed segment `a b`.
pub fn point_on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if orient_sign(a, b, p) != 0 {
        return false;
    }
    let xlo = a.x.clone().min(b.x.clone());
    let xhi = a.x.clone().max(b.x.clone());
    let ylo = a.y.clone().min(b.y.clone());
    let yhi = a.y.clone().max(b.y.clone());
    p.x >= xlo && p.x <= xhi && p.y >= ylo && p.y <= yhi
}

/// True iff the closed segments intersect at all (proper crossing, endpoint
/// touch, or collinear overlap).
pub fn closed_segments_intersect(a1: &Point, b1: &Point, a2: &Point, b2: &Point) -> bool {
    if properly_cross(a1, b1, a2, b2) {
        return true;
    }
    point_on_segment(a2, a1, b1)
        || point_on_segment(b2, a1, b1)
        || point_on_segment(a1, a2, b2)
        || point_on_segment(b1, a2, b2)
}

/// One violation found by [`check_general_position`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Three collinear points that do not all share one color.
    MixedCollinearTriple(usize, usize, usize),
    /// Two points at the same location.
    DuplicatePoint(usize, usize),
    /// Red point off the line `y = 0` (red-on-a-line mode only).
    RedOffLine(usize),
    /// Blue point not strictly above the red line (red-on-a-line mode only).
    BlueNotAbove(usize),
}

/// Report listing every general-position violation in a point set.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the general-position assumption: no three collinear points unless
/// they all have the same color, and no duplicate locations.
///
/// With `red_on_line` set, red points are additionally required to lie on
/// `y = 0` and blue points strictly above it; collinearity among red points
/// is exempt anyway because they share a color.
pub fn check_general_position(points: &[Point], red_on_line: bool) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = points.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if points[i].same_position(&points[j]) {
                report.violations.push(Violation::DuplicatePoint(i, j));
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let same_color =
                    points[i].color == points[j].color && points[j].color == points[k].color;
                if same_color {
                    continue;
                }
                if orient_sign(&points[i], &points[j], &points[k]) == 0 {
                    report
                        .violations
                        .push(Violation::MixedCollinearTriple(i, j, k));
                }
            }
        }
    }
    if red_on_line {
        for (i, p) in points.iter().enumerate() {
            match p.color {
                Color::Red => {
                    if !p.y.is_zero() {
                        report.violations.push(Violation::RedOffLine(i));
                    }
                }
                Color::Blue => {
                    if !p.y.is_positive() {
                        report.violations.push(Violation::BlueNotAbove(i));
                    }
                }
            }
        }
    }
    report
}

/// Exact point-in-triangle classification via three orientation signs.
pub fn point_in_triangle(
    p: &Point,
    a: &Point,
    b: &Point,
    c: &Point,
) -> Result<TrianglePosition, GeometryError> {
    let base = orient_sign(a, b, c);
    if base == 0 {
        return Err(GeometryError::DegenerateTriangle);
    }
    let s1 = orient_sign(a, b, p) * base;
    let s2 = orient_sign(b, c, p) * base;
    let s3 = orient_sign(c, a, p) * base;
    if s1 > 0 && s2 > 0 && s3 > 0 {
        Ok(TrianglePosition::Inside)
    } else if s1 >= 0 && s2 >= 0 && s3 >= 0 {
        Ok(TrianglePosition::OnBoundary)
    } else {
        Ok(TrianglePosition::Outside)
    }
}

/// Convex hull vertices in counter-clockwise order, collinear interior
/// points excluded. Accepts any non-empty point set; a fully collinear set
/// yields its two extreme points (or one, for a single point).
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    assert!(!points.is_empty(), "convex_hull needs at least one point");
    let mut sorted: Vec<&Point> = points.iter().collect();
    sorted.sort_by(|a, b| a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y)));
    sorted.dedup_by(|a, b| a.same_position(b));
    if sorted.len() == 1 {
        return vec![sorted[0].clone()];
    }

    let mut lower: Vec<&Point> = Vec::new();
    for p in &sorted {
        while lower.len() >= 2
            && orient_sign(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&Point> = Vec::new();
    for p in sorted.iter().rev() {
        while upper.len() >= 2
            && orient_sign(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let mut hull: Vec<Point> = lower.into_iter().cloned().collect();
    hull.extend(upper.into_iter().cloned());
    if hull.is_empty() {
        // All points collinear: keep the two extremes.
        hull = vec![sorted[0].clone(), sorted[sorted.len() - 1].clone()];
    }
    hull
}

/// True iff all given points are vertices of their convex hull.
pub fn in_convex_position(points: &[Point]) -> bool {
    convex_hull(points).len() == points.len()
}

/// Point-in-convex-region test over a hull vertex list (closed region).
/// Handles degenerate one- and two-vertex hulls.
pub fn point_in_convex_region(p: &Point, hull: &[Point]) -> bool {
    match hull.len() {
        0 => false,
        1 => p.same_position(&hull[0]),
        2 => point_on_segment(p, &hull[0], &hull[1]),
        _ => {
            for i in 0..hull.len() {
                let a = &hull[i];
                let b = &hull[(i + 1) % hull.len()];
                if orient_sign(a, b, p) < 0 {
                    return false;
                }
            }
            true
        }
    }
}

fn region_edges(hull: &[Point]) -> Vec<(usize, usize)> {
    match hull.len() {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        n => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    }
}

/// True iff the closed convex regions spanned by two hulls share any point.
pub fn convex_regions_intersect(a: &[Point], b: &[Point]) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    if a.iter().any(|p| point_in_convex_region(p, b)) {
        return true;
    }
    if b.iter().any(|p| point_in_convex_region(p, a)) {
        return true;
    }
    for (i, j) in region_edges(a) {
        for (k, l) in region_edges(b) {
            if closed_segments_intersect(&a[i], &a[j], &b[k], &b[l]) {
                return true;
            }
        }
    }
    false
}

/// Midpoint helper used by gadget constructions.
pub fn midpoint(a: &Point, b: &Point, color: Color) -> Point {
    let two = BigRational::from_integer(BigInt::from(2));
    Point::new((&a.x + &b.x) / &two, (&a.y + &b.y) / two, color)
}

/// `sqrt(q)` rounded down to a multiple of `2^-precision_bits`, as a
/// rational. Used only for diagnostic length sums; no predicate depends on
/// the result.
pub fn sqrt_approx(q: &Coord, precision_bits: u32) -> Coord {
    assert!(!q.is_negative(), "sqrt of negative rational");
    if q.is_zero() {
        return BigRational::zero();
    }
    // sqrt(n/d) = sqrt(n*d)/d; scale by 4^p so the integer sqrt carries
    // p extra bits.
    let scale = BigInt::one() << (2 * precision_bits);
    let scaled = q.numer() * q.denom() * scale;
    let root = scaled.sqrt();
    let den = q.denom() * (BigInt::one() << precision_bits);
    BigRational::new(root, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(x: i64, y: i64) -> Point {
        Point::red(int(x), int(y))
    }
    fn bp(x: i64, y: i64) -> Point {
        Point::blue(int(x), int(y))
    }

    #[test]
    fn orientation_unit_axes() {
        assert_eq!(
            orientation(&rp(0, 0), &rp(1, 0), &rp(0, 1)),
            Orientation::Ccw
        );
        assert_eq!(
            orientation(&rp(0, 0), &rp(1, 1), &rp(2, 2)),
            Orientation::Collinear
        );
        assert_eq!(
            orientation(&rp(0, 0), &rp(0, 1), &rp(1, 0)),
            Orientation::Cw
        );
    }

    #[test]
    fn orientation_antisymmetry() {
        let (p, q, r) = (rp(3, 1), bp(-2, 5), rp(7, -4));
        let a = orientation(&p, &q, &r);
        let b = orientation(&p, &r, &q);
        let flipped = match a {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        };
        assert_eq!(b, flipped);
    }

    #[test]
    fn crossing_x_shape() {
        let s1 = Segment::new(rp(0, 0), bp(2, 2)).unwrap();
        let s2 = Segment::new(rp(0, 2), bp(2, 0)).unwrap();
        assert!(segments_cross(&s1, &s2).unwrap());
        assert!(segments_cross(&s2, &s1).unwrap());
    }

    #[test]
    fn crossing_parallel_is_false() {
        let s1 = Segment::new(rp(0, 0), bp(1, 0)).unwrap();
        let s2 = Segment::new(rp(0, 1), bp(1, 1)).unwrap();
        assert!(!segments_cross(&s1, &s2).unwrap());
    }

    #[test]
    fn crossing_shared_endpoint_is_error() {
        let s1 = Segment::new(rp(0, 0), bp(2, 2)).unwrap();
        let s2 = Segment::new(rp(4, 0), bp(2, 2)).unwrap();
        assert_eq!(segments_cross(&s1, &s2), Err(GeometryError::SharedEndpoint));
    }

    #[test]
    fn touching_interior_endpoint_is_not_crossing() {
        // Endpoint of s2 lies on the interior of s1.
        let s1 = Segment::new(rp(0, 0), bp(4, 0)).unwrap();
        let s2 = Segment::new(rp(2, 0), bp(2, 3)).unwrap();
        assert!(!segments_cross(&s1, &s2).unwrap());
    }

    #[test]
    fn general_position_flags_mixed_triple() {
        let pts = vec![rp(0, 0), bp(1, 1), rp(2, 2)];
        let report = check_general_position(&pts, false);
        assert_eq!(
            report.violations,
            vec![Violation::MixedCollinearTriple(0, 1, 2)]
        );
    }

    #[test]
    fn general_position_empty_is_valid() {
        assert!(check_general_position(&[], false).is_valid());
    }

    #[test]
    fn general_position_red_on_line_mode() {
        let pts = vec![rp(0, 0), rp(1, 0), bp(2, 1), bp(3, -1)];
        let report = check_general_position(&pts, true);
        assert_eq!(report.violations, vec![Violation::BlueNotAbove(3)]);
    }

    #[test]
    fn triangle_classification() {
        let a = rp(0, 0);
        let b = rp(3, 0);
        let c = rp(0, 3);
        assert_eq!(
            point_in_triangle(&rp(1, 1), &a, &b, &c).unwrap(),
            TrianglePosition::Inside
        );
        assert_eq!(
            point_in_triangle(&rp(0, 0), &a, &b, &c).unwrap(),
            TrianglePosition::OnBoundary
        );
        assert_eq!(
            point_in_triangle(&rp(5, 5), &a, &b, &c).unwrap(),
            TrianglePosition::Outside
        );
        assert_eq!(
            point_in_triangle(&rp(9, 9), &a, &b, &rp(6, 0)),
            Err(GeometryError::DegenerateTriangle)
        );
    }

    #[test]
    fn hull_square_with_center() {
        let pts = vec![rp(0, 0), rp(4, 0), rp(4, 4), rp(0, 4), rp(2, 2)];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
        assert!(!hull.iter().any(|p| p.same_position(&rp(2, 2))));
    }

    #[test]
    fn hull_two_points() {
        let pts = vec![rp(0, 0), bp(5, 1)];
        assert_eq!(convex_hull(&pts).len(), 2);
    }

    #[test]
    fn hull_collinear_set_keeps_extremes() {
        let pts = vec![rp(0, 0), rp(1, 1), rp(2, 2), rp(5, 5)];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 2);
        assert!(hull[0].same_position(&rp(0, 0)) || hull[1].same_position(&rp(0, 0)));
        assert!(hull[0].same_position(&rp(5, 5)) || hull[1].same_position(&rp(5, 5)));
    }

    #[test]
    fn regions_disjoint_and_not() {
        let a = convex_hull(&[rp(0, 0), rp(2, 0), rp(1, 2)]);
        let b = convex_hull(&[rp(5, 0), rp(7, 0), rp(6, 2)]);
        let c = convex_hull(&[rp(1, 1), rp(8, 1), rp(4, 5)]);
        assert!(!convex_regions_intersect(&a, &b));
        assert!(convex_regions_intersect(&a, &c));
        assert!(convex_regions_intersect(&b, &c));
    }

    #[test]
    fn coord_round_trip() {
        let c = frac(-3, 1);
        assert_eq!(format_coord(&c), "-3/1");
        assert_eq!(parse_coord("-3/1").unwrap(), c);
        assert_eq!(parse_coord("7").unwrap(), int(7));
        assert!(parse_coord("1/0").is_err());
    }

    #[test]
    fn sqrt_approx_is_close() {
        let two = int(2);
        let r = sqrt_approx(&two, 80);
        let err = (&r * &r - two).abs();
        assert!(err < frac(1, 1 << 30));
    }
}
