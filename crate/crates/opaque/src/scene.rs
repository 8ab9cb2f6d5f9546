//! Scenes: a convex object (or several) plus a finite straight barrier.

use crate::geom::{Point2, Segment};
use crate::polygon::ConvexPolygon;
use crate::Error;

/// A convex object together with a finite segment barrier.
#[derive(Clone, Debug)]
pub struct Scene {
    pub object: ConvexPolygon,
    pub barrier: Vec<Segment>,
}

impl Scene {
    pub fn new(object: ConvexPolygon, barrier: Vec<Segment>) -> Scene {
        Scene { object, barrier }
    }

    pub fn barrier_length(&self) -> f64 {
        self.barrier.iter().map(Segment::length).sum()
    }

    /// Largest norm among object vertices and barrier endpoints; the
    /// Lipschitz constant of every projected endpoint in the scene.
    pub fn max_point_norm(&self) -> f64 {
        let b = self
            .barrier
            .iter()
            .map(Segment::max_endpoint_norm)
            .fold(0.0, f64::max);
        self.object.max_vertex_norm().max(b)
    }
}

/// A possibly disconnected object (several convex polygons) plus a barrier.
#[derive(Clone, Debug)]
pub struct MultiScene {
    pub objects: Vec<ConvexPolygon>,
    pub barrier: Vec<Segment>,
}

impl MultiScene {
    /// At least one object is required; the barrier may be empty.
    pub fn new(objects: Vec<ConvexPolygon>, barrier: Vec<Segment>) -> Result<MultiScene, Error> {
        if objects.is_empty() {
            return Err(Error::EmptyScene);
        }
        Ok(MultiScene { objects, barrier })
    }

    pub fn barrier_length(&self) -> f64 {
        self.barrier.iter().map(Segment::length).sum()
    }

    /// Diameter of the whole scene's bounding box.
    pub fn bounding_diameter(&self) -> f64 {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut take = |p: Point2| {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        };
        for o in &self.objects {
            for &v in o.vertices() {
                take(v);
            }
        }
        for s in &self.barrier {
            take(s.a());
            take(s.b());
        }
        lo.dist(hi)
    }
}
