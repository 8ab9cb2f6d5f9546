//! Executable lower-bound certificates.
//!
//! Three lemmas turn local geometry into global length bounds for a
//! barrier `B` of a convex object with half-perimeter `p`:
//!
//! - *waste*: if a subset `B'` covers at most `4|B'| - 4 delta` of
//!   clipped projection mass, then `|B| >= p + delta`;
//! - *far outside*: a segment whose line-angle set has measure at most
//!   `2 pi - 4 eps` contributes at most `4 |b| cos eps`;
//! - *segment groups*: two families of `n` steep segments facing each
//!   other across a `kappa`-band of width `W` inside a diameter-`D` disk
//!   jointly cover at most `8 n l - 2 W^2 / D`.
//!
//! Every certificate is conservative: certified quadrature error is
//! subtracted before a bound is claimed, so a certificate never
//! overstates the lower bound.

use std::f64::consts::{PI, TAU};

use crate::coverage::integrate_clipped_coverage;
use crate::geom::{Dir, Segment};
use crate::polygon::ConvexPolygon;
use crate::quadrature::CertifiedIntegral;
use crate::{Error, GEOM_TOL};

/// Jones' bound: any line barrier of a convex object is at least half
/// the perimeter.
pub fn jones_bound(object: &ConvexPolygon) -> f64 {
    0.5 * object.perimeter()
}

/// Certificate produced by the waste lemma.
#[derive(Clone, Debug)]
pub struct WasteCertificate {
    /// Total length of the subset `B'`.
    pub subset_length: f64,
    /// Certified clipped-coverage integral of `B'` against the object.
    pub clipped_integral: CertifiedIntegral,
    /// Proven waste `delta` (conservative; may be non-positive).
    pub delta: f64,
    /// Lower bound `p + delta` on the length of any barrier containing `B'`.
    pub bound: f64,
}

impl WasteCertificate {
    /// Assembles a certificate from an already-computed clipped integral.
    ///
    /// `delta` is derived conservatively: the certified quadrature error
    /// is subtracted so the claimed bound never overstates.
    pub fn from_parts(
        half_perimeter: f64,
        subset_length: f64,
        clipped_integral: CertifiedIntegral,
    ) -> WasteCertificate {
        let delta = (4.0 * subset_length - clipped_integral.value) / 4.0
            - clipped_integral.error_bound / 4.0;
        WasteCertificate {
            subset_length,
            clipped_integral,
            delta,
            bound: half_perimeter + delta,
        }
    }
}

/// Applies the waste lemma to a barrier subset, integrating its clipped
/// coverage against the object. A non-positive `delta` means no waste
/// was proven.
pub fn waste_certificate(
    object: &ConvexPolygon,
    subset: &[Segment],
    tol: f64,
) -> Result<WasteCertificate, Error> {
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let clipped = integrate_clipped_coverage(subset, object, tol);
    let subset_length = subset.iter().map(Segment::length).sum();
    Ok(WasteCertificate::from_parts(
        jones_bound(object),
        subset_length,
        clipped,
    ))
}

/// Certificate produced by the far-outside lemma.
#[derive(Clone, Debug)]
pub struct FarOutsideCertificate {
    /// Certified (upper bound on the) measure of the angle set
    /// `A = { alpha : U(alpha) ∩ b(alpha) != ∅ }`.
    pub angle_set_measure: f64,
    /// `eps = (2 pi - measure) / 4`, conservatively small.
    pub epsilon: f64,
    /// Coverage factor `4 cos eps <= 4`: the segment contributes at most
    /// `factor * |b|` of clipped projection mass.
    pub factor: f64,
}

/// Measures the line-angle set of a segment lying outside a convex
/// object and converts it into a coverage-deficit factor.
///
/// The angle set is measured by an adaptive Lipschitz-certified sweep of
/// the projection-overlap slack; ambiguous slivers around its boundary
/// are counted *into* the measure, so `epsilon` (and hence the claimed
/// factor) is conservative.
pub fn far_outside_certificate(
    segment: &Segment,
    object: &ConvexPolygon,
) -> Result<FarOutsideCertificate, Error> {
    if segment_meets_interior(segment, object) {
        return Err(Error::Precondition(
            "segment must lie outside the object".into(),
        ));
    }
    let lip = 2.0 * object.max_vertex_norm().max(segment.max_endpoint_norm()) + GEOM_TOL;
    // Overlap slack of the two projection intervals; A = { slack >= 0 }.
    let slack = |alpha: f64| -> f64 {
        let d = Dir::new(alpha);
        let u = object.project_dir(d);
        let b = segment.project_dir(d);
        (b.hi() - u.lo()).min(u.hi() - b.lo())
    };
    let mut inside = 0.0f64;
    let mut ambiguous = 0.0f64;
    let mut stack = vec![(0.0, TAU)];
    while let Some((a, b)) = stack.pop() {
        let m = 0.5 * (a + b);
        let hw = 0.5 * (b - a);
        let s = slack(m);
        if s - lip * hw > 0.0 {
            inside += b - a;
        } else if s + lip * hw < 0.0 {
            // certainly disjoint
        } else if hw <= 1e-12 {
            ambiguous += b - a;
        } else {
            stack.push((a, m));
            stack.push((m, b));
        }
    }
    let measure = (inside + ambiguous).min(TAU);
    let epsilon = ((TAU - measure) / 4.0).max(0.0);
    Ok(FarOutsideCertificate {
        angle_set_measure: measure,
        epsilon,
        factor: 4.0 * epsilon.cos(),
    })
}

/// True when the segment enters the interior of the polygon (touching
/// the boundary does not count).
fn segment_meets_interior(segment: &Segment, object: &ConvexPolygon) -> bool {
    // Clip the segment parameter to the polygon's half-planes.
    let mut t0 = 0.0f64;
    let mut t1 = 1.0f64;
    let a = segment.a();
    let b = segment.b();
    for (p, q) in object.edges() {
        let fa = crate::geom::cross(p, q, a);
        let fb = crate::geom::cross(p, q, b);
        let df = fb - fa;
        // inside is f >= 0; clip f(t) = fa + t (fb - fa) >= 0
        if df.abs() < f64::MIN_POSITIVE {
            if fa < 0.0 {
                return false;
            }
            continue;
        }
        let root = -fa / df;
        if df > 0.0 {
            t0 = t0.max(root);
        } else {
            t1 = t1.min(root);
        }
        if t0 > t1 {
            return false;
        }
    }
    if t1 - t0 <= 1e-12 {
        return false;
    }
    let mid = segment.point_at(0.5 * (t0 + t1));
    object.interior_depth(mid) > GEOM_TOL
}

/// Which side of a segment-group configuration a segment belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupSide {
    Minus,
    Plus,
}

/// Hypothesis violations reported by [`validate_segment_group`].
#[derive(Clone, Debug)]
pub enum GroupViolation {
    /// `0 < kappa < lambda < pi/2` fails.
    BadAngles { lambda: f64, kappa: f64 },
    /// The two families have different sizes (or are empty).
    CountMismatch { minus: usize, plus: usize },
    /// A segment's length differs from the common `l`.
    LengthMismatch {
        side: GroupSide,
        index: usize,
        length: f64,
    },
    /// Clause 1: a segment makes angle <= lambda with the horizontal.
    NotSteep {
        side: GroupSide,
        index: usize,
        angle: f64,
    },
    /// Clause 2: an endpoint leaves the disk of diameter `D`.
    OutsideDisk {
        side: GroupSide,
        index: usize,
        norm: f64,
    },
    /// Clause 3: an endpoint violates the band separation `>= W/2`.
    BandSeparation {
        side: GroupSide,
        index: usize,
        value: f64,
    },
}

impl std::fmt::Display for GroupViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupViolation::BadAngles { lambda, kappa } => {
                write!(
                    f,
                    "need 0 < kappa < lambda < pi/2, got kappa={kappa}, lambda={lambda}"
                )
            }
            GroupViolation::CountMismatch { minus, plus } => {
                write!(
                    f,
                    "families must have equal positive size, got {minus} and {plus}"
                )
            }
            GroupViolation::LengthMismatch {
                side,
                index,
                length,
            } => {
                write!(
                    f,
                    "{side:?}[{index}] has length {length}, expected the common l"
                )
            }
            GroupViolation::NotSteep { side, index, angle } => {
                write!(
                    f,
                    "{side:?}[{index}] makes angle {angle} <= lambda with the horizontal"
                )
            }
            GroupViolation::OutsideDisk { side, index, norm } => {
                write!(f, "{side:?}[{index}] has an endpoint at norm {norm} > D/2")
            }
            GroupViolation::BandSeparation { side, index, value } => {
                write!(
                    f,
                    "{side:?}[{index}] violates the band separation: {value} < W/2"
                )
            }
        }
    }
}

/// Two facing families of `n` equal-length steep segments.
#[derive(Clone, Debug)]
pub struct SegmentGroupConfig {
    pub minus: Vec<Segment>,
    pub plus: Vec<Segment>,
    /// Common segment length `l`.
    pub length: f64,
    /// Minimal angle with the horizontal, `lambda` in `(0, pi/2)`.
    pub lambda: f64,
    /// Band angle `kappa` in `(0, lambda)`.
    pub kappa: f64,
    /// Diameter `D` of the disk centred at the origin containing everything.
    pub diameter: f64,
}

impl SegmentGroupConfig {
    pub fn n(&self) -> usize {
        self.minus.len()
    }

    /// Band width `W = n l sin(lambda - kappa)`.
    pub fn width(&self) -> f64 {
        self.n() as f64 * self.length * (self.lambda - self.kappa).sin()
    }
}

/// Checks the three hypotheses of the segment-group lemma pointwise on
/// segment endpoints (sufficient by linearity). Violations are data, not
/// errors; an empty list means the configuration is valid.
pub fn validate_segment_group(cfg: &SegmentGroupConfig) -> Vec<GroupViolation> {
    let mut out = Vec::new();
    if !(0.0 < cfg.kappa && cfg.kappa < cfg.lambda && cfg.lambda < PI / 2.0) {
        out.push(GroupViolation::BadAngles {
            lambda: cfg.lambda,
            kappa: cfg.kappa,
        });
    }
    if cfg.minus.len() != cfg.plus.len() || cfg.minus.is_empty() {
        out.push(GroupViolation::CountMismatch {
            minus: cfg.minus.len(),
            plus: cfg.plus.len(),
        });
    }
    let w_half = 0.5 * cfg.width();
    let (sk, ck) = cfg.kappa.sin_cos();
    for (side, segs, sign) in [
        (GroupSide::Minus, &cfg.minus, -1.0),
        (GroupSide::Plus, &cfg.plus, 1.0),
    ] {
        for (index, seg) in segs.iter().enumerate() {
            if (seg.length() - cfg.length).abs() > 1e-9 * cfg.length.max(1.0) {
                out.push(GroupViolation::LengthMismatch {
                    side,
                    index,
                    length: seg.length(),
                });
            }
            let angle = seg.angle_with_horizontal();
            if angle <= cfg.lambda {
                out.push(GroupViolation::NotSteep { side, index, angle });
            }
            for p in [seg.a(), seg.b()] {
                let norm = p.norm();
                if norm > 0.5 * cfg.diameter + GEOM_TOL {
                    out.push(GroupViolation::OutsideDisk { side, index, norm });
                }
                let s1 = sign * (p.x * sk + p.y * ck);
                let s2 = sign * (p.x * sk - p.y * ck);
                let v = s1.min(s2);
                if v < w_half - GEOM_TOL {
                    out.push(GroupViolation::BandSeparation {
                        side,
                        index,
                        value: v,
                    });
                }
            }
        }
    }
    out
}

/// The raw deficit formula `8 n l - 2 W^2 / D` with `W = n l sin(lambda - kappa)`.
pub fn group_deficit_formula(n: usize, length: f64, lambda: f64, kappa: f64, diameter: f64) -> f64 {
    let w = n as f64 * length * (lambda - kappa).sin();
    8.0 * n as f64 * length - 2.0 * w * w / diameter
}

/// Upper bound on `∫ |(B- ∪ B+)(alpha)| d alpha` for a valid group.
pub fn segment_group_bound(cfg: &SegmentGroupConfig) -> Result<f64, Error> {
    let violations = validate_segment_group(cfg);
    if !violations.is_empty() {
        let text = violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::InvalidGroup(text));
    }
    Ok(group_deficit_formula(
        cfg.n(),
        cfg.length,
        cfg.lambda,
        cfg.kappa,
        cfg.diameter,
    ))
}
