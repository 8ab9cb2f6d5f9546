//! Convex polygons: validation, hulls, support projections, clipping.

use crate::geom::{cross, Dir, Point2};
use crate::interval::Interval;
use crate::{Error, GEOM_TOL};

/// Strictly convex polygon with counter-clockwise vertices.
///
/// Collinear vertices are removed on construction; clockwise input is
/// reversed. The vertex list is never empty and has length >= 3.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    /// Validates a vertex list as a strictly convex polygon.
    pub fn new(vertices: Vec<Point2>) -> Result<ConvexPolygon, Error> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinitePoint);
        }
        if vertices.len() < 3 {
            return Err(Error::InsufficientVertices);
        }
        let scale = vertices
            .iter()
            .map(|p| p.x.abs().max(p.y.abs()))
            .fold(1.0, f64::max);
        let eps = GEOM_TOL * scale;
        let eps_cross = GEOM_TOL * scale * scale;

        let mut verts = vertices;
        if signed_area(&verts) < 0.0 {
            verts.reverse();
        }
        // Drop duplicate and collinear vertices until stable; a genuinely
        // reflex turn is an error, not something to repair.
        loop {
            let n = verts.len();
            if n < 3 {
                return Err(Error::InsufficientVertices);
            }
            let mut drop_idx = None;
            for i in 0..n {
                let prev = verts[(i + n - 1) % n];
                let cur = verts[i];
                let next = verts[(i + 1) % n];
                if cur.dist(next) <= eps {
                    drop_idx = Some(i);
                    break;
                }
                let c = cross(prev, cur, next);
                if c.abs() <= eps_cross {
                    drop_idx = Some(i);
                    break;
                }
                if c < 0.0 {
                    return Err(Error::NotConvex);
                }
            }
            match drop_idx {
                Some(i) => {
                    verts.remove(i);
                }
                None => break,
            }
        }
        // Guard against multiply-wound vertex lists: the exterior angles of
        // a simple convex polygon sum to exactly one full turn.
        let mut turn = 0.0;
        let n = verts.len();
        for i in 0..n {
            let a = verts[i];
            let b = verts[(i + 1) % n];
            let c = verts[(i + 2) % n];
            let u = b - a;
            let v = c - b;
            turn += (u.x * v.y - u.y * v.x).atan2(u.dot(v));
        }
        if (turn - 2.0 * std::f64::consts::PI).abs() > 1e-6 {
            return Err(Error::NotConvex);
        }
        Ok(ConvexPolygon { vertices: verts })
    }

    /// Convex hull of a point set (Andrew monotone chain).
    pub fn convex_hull(points: &[Point2]) -> Result<ConvexPolygon, Error> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinitePoint);
        }
        if points.len() < 3 {
            return Err(Error::InsufficientVertices);
        }
        let scale = points
            .iter()
            .map(|p| p.x.abs().max(p.y.abs()))
            .fold(1.0, f64::max);
        let eps_cross = GEOM_TOL * scale * scale;
        let mut pts = points.to_vec();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        pts.dedup_by(|a, b| a.dist(*b) <= GEOM_TOL * scale);

        let build = |iter: &mut dyn Iterator<Item = Point2>| {
            let mut chain: Vec<Point2> = Vec::new();
            for p in iter {
                while chain.len() >= 2
                    && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= eps_cross
                {
                    chain.pop();
                }
                chain.push(p);
            }
            chain
        };
        let lower = build(&mut pts.iter().copied());
        let upper = build(&mut pts.iter().rev().copied());
        let mut hull = lower;
        hull.pop();
        hull.extend(upper.iter().take(upper.len().saturating_sub(1)));
        if hull.len() < 3 {
            return Err(Error::DegenerateHull);
        }
        Ok(ConvexPolygon { vertices: hull })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn centroid(&self) -> Point2 {
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut a = 0.0;
        for (p, q) in self.edges() {
            let w = p.x * q.y - q.x * p.y;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
            a += w;
        }
        Point2::new(cx / (3.0 * a), cy / (3.0 * a))
    }

    /// Support value: the maximal projection of the polygon onto `alpha`.
    pub fn support(&self, alpha: f64) -> f64 {
        self.support_dir(Dir::new(alpha))
    }

    pub fn support_dir(&self, d: Dir) -> f64 {
        self.vertices
            .iter()
            .map(|p| p.project_dir(d))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Projection of the polygon onto direction `alpha` (support interval).
    pub fn project(&self, alpha: f64) -> Interval {
        self.project_dir(Dir::new(alpha))
    }

    pub fn project_dir(&self, d: Dir) -> Interval {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in &self.vertices {
            let v = p.project_dir(d);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Interval::new(lo, hi)
    }

    /// Signed distance from `p` to the boundary: positive inside.
    pub fn interior_depth(&self, p: Point2) -> f64 {
        let mut depth = f64::INFINITY;
        for (a, b) in self.edges() {
            depth = depth.min(cross(a, b, p) / a.dist(b));
        }
        depth
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.interior_depth(p) >= -tol
    }

    pub fn max_vertex_norm(&self) -> f64 {
        self.vertices.iter().map(|p| p.norm()).fold(0.0, f64::max)
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for (i, p) in self.vertices.iter().enumerate() {
            for q in &self.vertices[i + 1..] {
                d = d.max(p.dist(*q));
            }
        }
        d
    }

    /// Intersection with the half-plane `{p : keeps(p) >= 0}` defined by the
    /// directed line through `a` toward `b` (left side kept).
    pub fn intersect_halfplane(&self, a: Point2, b: Point2) -> Result<ConvexPolygon, Error> {
        let clipped = clip_left(&self.vertices, a, b);
        ConvexPolygon::new(clipped)
    }

    pub fn translate(&self, v: Point2) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|p| *p + v).collect(),
        }
    }

    /// Exact counter-clockwise rotation by `k` quarter turns about the origin.
    pub fn rotate_quarter(&self, k: usize) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|p| p.rotate_quarter(k)).collect(),
        }
    }

    pub fn scale_about(&self, c: Point2, factor: f64) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self
                .vertices
                .iter()
                .map(|p| c + (*p - c) * factor)
                .collect(),
        }
    }
}

/// Shoelace area of a raw vertex list (positive when counter-clockwise).
pub fn signed_area(verts: &[Point2]) -> f64 {
    let n = verts.len();
    let mut a = 0.0;
    for i in 0..n {
        let p = verts[i];
        let q = verts[(i + 1) % n];
        a += p.x * q.y - q.x * p.y;
    }
    0.5 * a
}

/// Sutherland-Hodgman clip of a raw convex vertex list against the left
/// half-plane of the directed line `a -> b`. The result may be degenerate
/// (fewer than 3 vertices) when the polygon is cut away.
pub fn clip_left(verts: &[Point2], a: Point2, b: Point2) -> Vec<Point2> {
    let mut out = Vec::with_capacity(verts.len() + 1);
    let n = verts.len();
    if n == 0 {
        return out;
    }
    for i in 0..n {
        let s = verts[i];
        let e = verts[(i + 1) % n];
        let sc = cross(a, b, s);
        let ec = cross(a, b, e);
        let s_in = sc >= 0.0;
        let e_in = ec >= 0.0;
        match (s_in, e_in) {
            (true, true) => out.push(e),
            (true, false) | (false, true) => {
                let denom = sc - ec;
                if denom.abs() > 0.0 {
                    let t = sc / denom;
                    out.push(s + (e - s) * t);
                }
                if e_in {
                    out.push(e);
                }
            }
            (false, false) => {}
        }
    }
    dedup_ring(&mut out);
    out
}

/// Removes consecutive (near-)duplicate vertices from a ring; repeated
/// vertices would otherwise produce zero-length edges that break
/// half-plane decompositions downstream.
fn dedup_ring(verts: &mut Vec<Point2>) {
    if verts.len() < 2 {
        return;
    }
    let scale = verts
        .iter()
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(1.0, f64::max);
    let eps = 1e-12 * scale;
    let mut out: Vec<Point2> = Vec::with_capacity(verts.len());
    for &p in verts.iter() {
        if out.last().is_none_or(|q| q.dist(p) > eps) {
            out.push(p);
        }
    }
    while out.len() >= 2 && out[0].dist(*out.last().expect("non-empty")) <= eps {
        out.pop();
    }
    *verts = out;
}

/// Clip against the right half-plane of `a -> b`.
pub fn clip_right(verts: &[Point2], a: Point2, b: Point2) -> Vec<Point2> {
    clip_left(verts, b, a)
}

/// Intersection of two raw convex vertex lists.
pub fn intersect_convex(subject: &[Point2], clip: &[Point2]) -> Vec<Point2> {
    let n = clip.len();
    if n < 3 || subject.len() < 3 {
        return Vec::new();
    }
    let mut result = subject.to_vec();
    for i in 0..n {
        result = clip_left(&result, clip[i], clip[(i + 1) % n]);
        if result.len() < 3 {
            return Vec::new();
        }
    }
    result
}

/// Decomposes `piece \ q` into disjoint convex pieces (both CCW).
///
/// Pieces with area at or below `drop_eps` are discarded; the discarded
/// total is added to `dropped` so callers can account for it.
pub fn subtract_convex(
    piece: &[Point2],
    q: &[Point2],
    drop_eps: f64,
    dropped: &mut f64,
) -> Vec<Vec<Point2>> {
    let mut out = Vec::new();
    if q.len() < 3 {
        if signed_area(piece) > drop_eps {
            out.push(piece.to_vec());
        } else {
            *dropped += signed_area(piece).max(0.0);
        }
        return out;
    }
    let qscale = q
        .iter()
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(1.0, f64::max);
    let mut rem = piece.to_vec();
    let n = q.len();
    for i in 0..n {
        if rem.len() < 3 {
            break;
        }
        let a = q[i];
        let b = q[(i + 1) % n];
        // A zero-length edge carries no half-plane; clipping against it
        // would misclassify the whole remainder as outside.
        if a.dist(b) <= 1e-12 * qscale {
            continue;
        }
        let outside = clip_right(&rem, a, b);
        if outside.len() >= 3 {
            let area = signed_area(&outside);
            if area > drop_eps {
                out.push(outside);
            } else {
                *dropped += area.max(0.0);
            }
        }
        rem = clip_left(&rem, a, b);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_4;

    pub(crate) fn unit_square() -> ConvexPolygon {
        ConvexPolygon::new(vec![
            Point2::new(-0.5, -0.5),
            Point2::new(0.5, -0.5),
            Point2::new(0.5, 0.5),
            Point2::new(-0.5, 0.5),
        ])
        .unwrap()
    }

    #[test]
    fn metrics_of_simple_shapes() {
        let sq = unit_square();
        assert!((sq.perimeter() - 4.0).abs() < 1e-15);
        assert!((sq.area() - 1.0).abs() < 1e-15);
        let tri = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        assert!((tri.perimeter() - (2.0 + 2.0_f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn square_projections() {
        let sq = unit_square();
        let i = sq.project(FRAC_PI_4);
        let half_diag = 2.0_f64.sqrt() / 2.0;
        assert!((i.lo() + half_diag).abs() < 1e-12);
        assert!((i.hi() - half_diag).abs() < 1e-12);
        let j = sq.project(0.0);
        assert_eq!((j.lo(), j.hi()), (-0.5, 0.5));
    }

    #[test]
    fn hull_absorbs_interior_points() {
        let mut pts = unit_square().vertices().to_vec();
        pts.push(Point2::new(0.0, 0.0));
        let hull = ConvexPolygon::convex_hull(&pts).unwrap();
        assert_eq!(hull.vertices().len(), 4);
        assert!((hull.perimeter() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn collinear_hull_is_degenerate() {
        let pts: Vec<Point2> = (0..5).map(|i| Point2::new(i as f64, 2.0 * i as f64)).collect();
        assert!(matches!(
            ConvexPolygon::convex_hull(&pts),
            Err(Error::DegenerateHull)
        ));
    }

    #[test]
    fn reflex_vertex_rejected() {
        let res = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 2.0),
            Point2::new(1.0, 0.5),
            Point2::new(0.0, 2.0),
        ]);
        assert!(matches!(res, Err(Error::NotConvex)));
    }

    #[test]
    fn clockwise_input_is_normalized() {
        let p = ConvexPolygon::new(vec![
            Point2::new(-0.5, 0.5),
            Point2::new(0.5, 0.5),
            Point2::new(0.5, -0.5),
            Point2::new(-0.5, -0.5),
        ])
        .unwrap();
        assert!(p.area() > 0.0);
    }

    #[test]
    fn subtract_covers_difference() {
        let sq = unit_square();
        let q = vec![
            Point2::new(0.0, -1.0),
            Point2::new(1.0, -1.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ];
        let mut dropped = 0.0;
        let pieces = subtract_convex(sq.vertices(), &q, 1e-14, &mut dropped);
        let total: f64 = pieces.iter().map(|p| signed_area(p)).sum();
        assert!((total - 0.5).abs() < 1e-12);
    }

    proptest! {
        /// project(alpha) equals [-support(alpha+pi), support(alpha)].
        #[test]
        fn support_identity(alpha in 0.0f64..std::f64::consts::TAU) {
            let sq = unit_square();
            let i = sq.project(alpha);
            prop_assert!((i.hi() - sq.support(alpha)).abs() < 1e-12);
            prop_assert!((i.lo() + sq.support(alpha + std::f64::consts::PI)).abs() < 1e-12);
        }

        /// Projection is 1-Lipschitz in alpha scaled by the point norm.
        #[test]
        fn projection_lipschitz(
            x in -3.0f64..3.0, y in -3.0f64..3.0,
            a0 in 0.0f64..6.3, a1 in 0.0f64..6.3,
        ) {
            let p = Point2::new(x, y);
            let lhs = (p.project(a0) - p.project(a1)).abs();
            prop_assert!(lhs <= p.norm() * (a0 - a1).abs() + 1e-12);
        }
    }
}
