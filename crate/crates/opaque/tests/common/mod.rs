//! Shared generators and brute-force oracles for the integration suites.
//!
//! Everything is seeded and deterministic. The oracles here are
//! deliberately independent of the library's certified code paths: line
//! hits are tested by direct endpoint projection, rays by explicit
//! ray-segment distances.

use opaque::certificates::SegmentGroupConfig;
use opaque::bands::BandFunction;
use opaque::geom::{ray_segment_distance, Dir, Point2, Segment};
use opaque::polygon::ConvexPolygon;
use opaque::constructions::Polyline;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random strictly convex polygon: hull of jittered points on an ellipse.
pub fn random_convex_polygon(rng: &mut ChaCha8Rng) -> ConvexPolygon {
    loop {
        let k = rng.gen_range(5..=12);
        let rx = rng.gen_range(0.4..1.5);
        let ry = rng.gen_range(0.4..1.5);
        let cx = rng.gen_range(-0.5..0.5);
        let cy = rng.gen_range(-0.5..0.5);
        let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Point2> = angles
            .iter()
            .map(|&a| {
                let r = rng.gen_range(0.7..1.0);
                Point2::new(cx + rx * r * a.cos(), cy + ry * r * a.sin())
            })
            .collect();
        if let Ok(hull) = ConvexPolygon::convex_hull(&pts) {
            if hull.vertices().len() >= 4 && hull.area() > 0.2 {
                return hull;
            }
        }
    }
}

/// A short segment strictly outside the polygon, placed beyond the
/// support line of a random direction.
pub fn random_outside_segment(rng: &mut ChaCha8Rng, poly: &ConvexPolygon) -> Segment {
    let phi = rng.gen_range(0.0..TAU);
    let u = Dir::new(phi);
    let support = poly.support_dir(u);
    let offset = rng.gen_range(0.05..1.5);
    let along = rng.gen_range(-0.5..0.5);
    let len = rng.gen_range(0.02..0.4);
    let theta = rng.gen_range(0.0..PI);
    // Keep both endpoints beyond the support line: centre distance
    // offset + len guarantees it for any segment direction.
    let dist = support + offset + len;
    let centre = Point2::new(u.cos * dist - u.sin * along, u.sin * dist + u.cos * along);
    let half = Point2::new(theta.cos() * len / 2.0, theta.sin() * len / 2.0);
    Segment::new(centre + half * 1.0, centre + half * -1.0).expect("non-degenerate")
}

/// Random barrier: a handful of arbitrary segments.
pub fn random_segments(rng: &mut ChaCha8Rng, max: usize) -> Vec<Segment> {
    let k = rng.gen_range(1..=max);
    (0..k)
        .map(|_| loop {
            let a = Point2::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            let b = Point2::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            if let Ok(s) = Segment::new(a, b) {
                break s;
            }
        })
        .collect()
}

/// Random valid segment-group configuration (constructed to satisfy all
/// three clauses, then re-validated by the caller).
pub fn random_group_config(rng: &mut ChaCha8Rng) -> SegmentGroupConfig {
    let lambda: f64 = rng.gen_range(0.3..1.4);
    let kappa: f64 = rng.gen_range(0.1 * lambda..0.9 * lambda);
    let n = rng.gen_range(1..=4usize);
    let diameter: f64 = rng.gen_range(1.0..2.0);
    let length = (0.02 * diameter / n as f64).min(diameter * kappa.sin() / (10.0 * n as f64));
    let plus: Vec<Segment> = (0..n)
        .map(|_| {
            let theta = rng.gen_range(lambda + 0.05 * (FRAC_PI_2 - lambda)..PI - lambda - 0.05);
            let xc = rng.gen_range(0.28 * diameter..0.42 * diameter);
            let yc = rng.gen_range(-0.5 * length..0.5 * length);
            let half = Point2::new(theta.cos() * length / 2.0, theta.sin() * length / 2.0);
            let c = Point2::new(xc, yc);
            Segment::new(c + half * -1.0, c + half).expect("non-degenerate")
        })
        .collect();
    let minus = plus
        .iter()
        .map(|s| Segment::new(-s.a(), -s.b()).expect("non-degenerate"))
        .collect();
    SegmentGroupConfig {
        minus,
        plus,
        length,
        lambda,
        kappa,
        diameter,
    }
}

/// Random Lipschitz random-walk band on `[0, 1]`.
pub fn random_walk_band(
    rng: &mut ChaCha8Rng,
    start: f64,
    trend: f64,
    jitter: f64,
    width: f64,
    lipschitz: f64,
    samples: usize,
) -> BandFunction {
    let h = 1.0 / (samples - 1) as f64;
    let mut v = start;
    let mut out = Vec::with_capacity(samples);
    out.push(v);
    for _ in 1..samples {
        let slope = trend + rng.gen_range(-jitter..jitter);
        v += slope * h;
        out.push(v);
    }
    BandFunction::from_samples(0.0, 1.0, out, width, lipschitz).expect("valid walk band")
}

/// A random family satisfying the crossing-lemma hypothesis on `[0, 1]`:
/// returns `(fs, gs, W, D)`.
pub fn random_crossing_family(
    rng: &mut ChaCha8Rng,
    samples: usize,
) -> (Vec<BandFunction>, Vec<BandFunction>, f64, f64) {
    let d: f64 = rng.gen_range(0.5..2.0);
    let lip = 0.5 * d;
    let n = rng.gen_range(1..=4usize);
    let w_total = rng.gen_range(0.02..0.15) * lip;
    let width = w_total / n as f64;
    let spread = rng.gen_range(0.0..0.1) * lip;
    let m0 = rng.gen_range(0.0..0.05) * lip;
    let trend = 0.8 * lip;
    let jitter = 0.1 * lip;
    let fs: Vec<BandFunction> = (0..n)
        .map(|_| {
            let start = -rng.gen_range(0.0..=spread.max(1e-12));
            random_walk_band(rng, start, trend, jitter, width, lip, samples)
        })
        .collect();
    let gs: Vec<BandFunction> = (0..n)
        .map(|_| {
            let start = w_total + width + m0 + rng.gen_range(0.0..=spread.max(1e-12));
            random_walk_band(rng, start, -trend, jitter, width, lip, samples)
        })
        .collect();
    (fs, gs, w_total, d)
}

/// Random polyline with a few vertices.
pub fn random_polyline(rng: &mut ChaCha8Rng) -> Polyline {
    loop {
        let k = rng.gen_range(3..=9);
        let pts: Vec<Point2> = (0..k)
            .map(|_| Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if let Ok(p) = Polyline::new(pts) {
            return p;
        }
    }
}

/// Whether the line `(alpha, v)` meets any segment within `tol`
/// (independent oracle: direct endpoint projections).
pub fn line_hits_segments(alpha: f64, v: f64, segments: &[Segment], tol: f64) -> bool {
    let d = Dir::new(alpha);
    segments.iter().any(|s| {
        let pa = s.a().project_dir(d);
        let pb = s.b().project_dir(d);
        v >= pa.min(pb) - tol && v <= pa.max(pb) + tol
    })
}

/// Uniform random line through the polygon, as `(alpha, offset)`.
pub fn sample_line_through(rng: &mut ChaCha8Rng, poly: &ConvexPolygon) -> (f64, f64) {
    let alpha = rng.gen_range(0.0..PI);
    let p = poly.project(alpha);
    let v = rng.gen_range(p.lo()..=p.hi());
    (alpha, v)
}

/// Random line through a polyline: a point on the curve and a direction.
pub fn sample_line_through_polyline(rng: &mut ChaCha8Rng, curve: &Polyline) -> (f64, f64) {
    let edges = curve.edges();
    let total: f64 = edges.iter().map(Segment::length).sum();
    let mut pick = rng.gen_range(0.0..total);
    let mut point = edges[0].a();
    for e in &edges {
        if pick <= e.length() {
            point = e.point_at(pick / e.length());
            break;
        }
        pick -= e.length();
    }
    let alpha = rng.gen_range(0.0..PI);
    (alpha, point.project(alpha))
}

/// Uniform random point inside a convex polygon (rejection sampling).
pub fn sample_point_inside(rng: &mut ChaCha8Rng, poly: &ConvexPolygon) -> Point2 {
    let (mut lo_x, mut hi_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in poly.vertices() {
        lo_x = lo_x.min(v.x);
        hi_x = hi_x.max(v.x);
        lo_y = lo_y.min(v.y);
        hi_y = hi_y.max(v.y);
    }
    loop {
        let p = Point2::new(rng.gen_range(lo_x..=hi_x), rng.gen_range(lo_y..=hi_y));
        if poly.contains(p, 0.0) {
            return p;
        }
    }
}

/// Whether a ray meets any segment within `tol` (independent oracle).
pub fn ray_hits_segments(origin: Point2, theta: f64, segments: &[Segment], tol: f64) -> bool {
    let d = Dir::new(theta);
    segments
        .iter()
        .any(|s| ray_segment_distance(origin, d, s) <= tol)
}
