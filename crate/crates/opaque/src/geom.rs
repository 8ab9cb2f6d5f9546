//! Points, segments, and angle conventions.
//!
//! The projection of a point onto direction `alpha` is
//! `x cos alpha + y sin alpha`. Sweep angles live in `[0, 2*PI)`,
//! segment directions in `[0, PI)`; all angle arithmetic is modulo 2π.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use crate::interval::Interval;
use crate::{Error, GEOM_TOL};

/// Point (or vector) in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

/// Precomputed unit direction `(cos alpha, sin alpha)`.
///
/// Hot loops project many points at the same angle; computing the
/// trigonometry once per angle keeps the sweeps cheap.
#[derive(Clone, Copy, Debug)]
pub struct Dir {
    pub cos: f64,
    pub sin: f64,
}

impl Dir {
    pub fn new(alpha: f64) -> Dir {
        Dir {
            cos: alpha.cos(),
            sin: alpha.sin(),
        }
    }

    /// Direction rotated by π (negates both components).
    pub fn opposite(self) -> Dir {
        Dir {
            cos: -self.cos,
            sin: -self.sin,
        }
    }

    /// The perpendicular direction `alpha + π/2`.
    pub fn perp(self) -> Dir {
        Dir {
            cos: -self.sin,
            sin: self.cos,
        }
    }

    pub fn as_vector(self) -> Point2 {
        Point2::new(self.cos, self.sin)
    }
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Point2 {
        Point2 { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Projection onto the direction-`alpha` axis.
    pub fn project(self, alpha: f64) -> f64 {
        self.project_dir(Dir::new(alpha))
    }

    pub fn project_dir(self, d: Dir) -> f64 {
        self.x * d.cos + self.y * d.sin
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Counter-clockwise rotation by `k` quarter turns about the origin.
    ///
    /// Exact in floating point (coordinate swaps and negations only).
    pub fn rotate_quarter(self, k: usize) -> Point2 {
        match k % 4 {
            0 => self,
            1 => Point2::new(-self.y, self.x),
            2 => Point2::new(-self.x, -self.y),
            _ => Point2::new(self.y, -self.x),
        }
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Signed area of the triangle `(o, a, b)`, doubled.
///
/// Positive when `o -> a -> b` turns counter-clockwise.
pub fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Normalizes a sweep angle to `[0, 2π)`.
pub fn normalize_angle(alpha: f64) -> f64 {
    let mut a = alpha.rem_euclid(2.0 * PI);
    if a >= 2.0 * PI {
        a = 0.0;
    }
    a
}

/// Normalizes a line direction to `[0, π)`.
pub fn normalize_direction(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(PI);
    if t >= PI {
        t = 0.0;
    }
    t
}

/// Closed line segment of strictly positive length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    a: Point2,
    b: Point2,
}

impl Segment {
    /// Builds a segment, rejecting non-finite or degenerate endpoints.
    pub fn new(a: Point2, b: Point2) -> Result<Segment, Error> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::NonFinitePoint);
        }
        if a.dist(b) <= GEOM_TOL {
            return Err(Error::DegenerateSegment);
        }
        Ok(Segment { a, b })
    }

    pub fn a(&self) -> Point2 {
        self.a
    }

    pub fn b(&self) -> Point2 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    /// Direction of the segment in `[0, π)`.
    pub fn direction(&self) -> f64 {
        let d = self.b - self.a;
        normalize_direction(d.y.atan2(d.x))
    }

    /// Angle the segment makes with the horizontal axis, in `[0, π/2]`.
    pub fn angle_with_horizontal(&self) -> f64 {
        let t = self.direction();
        t.min(PI - t)
    }

    pub fn point_at(&self, t: f64) -> Point2 {
        self.a + (self.b - self.a) * t
    }

    pub fn midpoint(&self) -> Point2 {
        self.point_at(0.5)
    }

    /// Projection of the segment onto direction `alpha`.
    ///
    /// The measure equals `|s| * |cos(alpha - theta_s)|`.
    pub fn project(&self, alpha: f64) -> Interval {
        self.project_dir(Dir::new(alpha))
    }

    pub fn project_dir(&self, d: Dir) -> Interval {
        Interval::new(self.a.project_dir(d), self.b.project_dir(d))
    }

    pub fn max_endpoint_norm(&self) -> f64 {
        self.a.norm().max(self.b.norm())
    }

    /// Distance from a point to the (closed) segment.
    pub fn distance_to_point(&self, p: Point2) -> f64 {
        let d = self.b - self.a;
        let len2 = d.dot(d);
        let t = ((p - self.a).dot(d) / len2).clamp(0.0, 1.0);
        p.dist(self.point_at(t))
    }

    /// Whether the closed segments intersect (within `tol`).
    pub fn intersects_segment(&self, other: &Segment, tol: f64) -> bool {
        let d1 = cross(self.a, self.b, other.a);
        let d2 = cross(self.a, self.b, other.b);
        let d3 = cross(other.a, other.b, self.a);
        let d4 = cross(other.a, other.b, self.b);
        if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
            && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
        {
            return true;
        }
        self.distance_to_point(other.a) <= tol
            || self.distance_to_point(other.b) <= tol
            || other.distance_to_point(self.a) <= tol
            || other.distance_to_point(self.b) <= tol
    }

    pub fn translate(&self, v: Point2) -> Segment {
        Segment {
            a: self.a + v,
            b: self.b + v,
        }
    }
}

/// Distance from point `p` to the ray with the given origin and direction.
pub fn ray_point_distance(origin: Point2, dir: Dir, p: Point2) -> f64 {
    let v = p - origin;
    let t = v.x * dir.cos + v.y * dir.sin;
    if t <= 0.0 {
        v.norm()
    } else {
        (v.x - t * dir.cos).hypot(v.y - t * dir.sin)
    }
}

/// Distance from the ray `(origin, dir)` to a closed segment; zero if they meet.
pub fn ray_segment_distance(origin: Point2, dir: Dir, seg: &Segment) -> f64 {
    // Proper crossing test: the ray meets the segment's line inside both.
    let d = seg.b - seg.a;
    let denom = dir.cos * d.y - dir.sin * d.x;
    if denom.abs() > 0.0 {
        let w = seg.a - origin;
        let t_ray = (w.x * d.y - w.y * d.x) / denom;
        let t_seg = (w.x * dir.sin - w.y * dir.cos) / denom;
        if t_ray >= 0.0 && (0.0..=1.0).contains(&t_seg) {
            return 0.0;
        }
    }
    let da = ray_point_distance(origin, dir, seg.a);
    let db = ray_point_distance(origin, dir, seg.b);
    let dor = seg.distance_to_point(origin);
    da.min(db).min(dor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    #[test]
    fn point_projection_axis_cases() {
        assert_eq!(Point2::new(1.0, 0.0).project(0.0), 1.0);
        assert!((Point2::new(0.0, 1.0).project(FRAC_PI_2) - 1.0).abs() < 1e-15);
        let v = Point2::new(1.0, 1.0).project(FRAC_PI_4);
        assert!((v - 2.0_f64.sqrt()).abs() < 1e-7);
    }

    #[test]
    fn segment_projection_measure_law() {
        let s = Segment::new(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)).unwrap();
        let i = s.project(0.0);
        assert_eq!((i.lo(), i.hi()), (0.0, 1.0));
        let p = s.project(FRAC_PI_2);
        assert!(p.measure() < 1e-15);
        assert!((s.project(FRAC_PI_3).measure() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_segment_rejected() {
        let p = Point2::new(0.25, -1.0);
        assert!(matches!(Segment::new(p, p), Err(Error::DegenerateSegment)));
        assert!(matches!(
            Segment::new(p, Point2::new(f64::NAN, 0.0)),
            Err(Error::NonFinitePoint)
        ));
    }

    #[test]
    fn direction_is_modulo_pi() {
        let s = Segment::new(Point2::new(0.0, 0.0), Point2::new(-1.0, -1.0)).unwrap();
        assert!((s.direction() - FRAC_PI_4).abs() < 1e-15);
        assert!((normalize_direction(PI) - 0.0).abs() < 1e-15);
        assert!(normalize_angle(-0.5) > 0.0);
    }

    #[test]
    fn ray_distances() {
        let seg = Segment::new(Point2::new(1.0, -1.0), Point2::new(1.0, 1.0)).unwrap();
        let hit = ray_segment_distance(Point2::ORIGIN, Dir::new(0.0), &seg);
        assert_eq!(hit, 0.0);
        // Ray pointing away misses; closest point is the origin side.
        let miss = ray_segment_distance(Point2::ORIGIN, Dir::new(PI), &seg);
        assert!((miss - 1.0).abs() < 1e-12);
    }
}
