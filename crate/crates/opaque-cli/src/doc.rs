//! JSON documents for scenes, curves, and segment-group configurations.
//!
//! Numbers are decimal text (JSON); floats are emitted in shortest
//! round-trip form, so parse-emit round-trips are exact for binary64.

use opaque::certificates::SegmentGroupConfig;
use opaque::constructions::Polyline;
use opaque::geom::{Point2, Segment};
use opaque::polygon::ConvexPolygon;
use opaque::scene::{MultiScene, Scene};
use serde::{Deserialize, Serialize};

pub const DOC_VERSION: u32 = 1;

/// Parse and validation failures, with a distinct process exit code each.
#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("could not read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported document version {0} (expected {DOC_VERSION})")]
    Version(u32),
    #[error("object is not convex: {0}")]
    NonConvex(opaque::Error),
    #[error("invalid barrier segment: {0}")]
    BadSegment(opaque::Error),
    #[error("scene must contain at least one object")]
    EmptyScene,
    #[error("{0}")]
    Invalid(String),
}

impl DocError {
    pub fn exit_code(&self) -> i32 {
        match self {
            DocError::Io(_) => 11,
            DocError::Syntax(_) => 12,
            DocError::NonConvex(_) => 13,
            DocError::BadSegment(_) => 14,
            DocError::Version(_) | DocError::EmptyScene | DocError::Invalid(_) => 15,
        }
    }
}

/// On-disk scene: polygon vertex lists plus segment endpoint pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SceneDocument {
    pub version: u32,
    pub objects: Vec<Vec<[f64; 2]>>,
    pub barrier: Vec<[[f64; 2]; 2]>,
}

impl SceneDocument {
    pub fn from_scene(scene: &Scene) -> SceneDocument {
        SceneDocument {
            version: DOC_VERSION,
            objects: vec![scene.object.vertices().iter().map(|p| [p.x, p.y]).collect()],
            barrier: scene
                .barrier
                .iter()
                .map(|s| [[s.a().x, s.a().y], [s.b().x, s.b().y]])
                .collect(),
        }
    }

    /// Validates the document into scene types.
    pub fn to_multi(&self) -> Result<MultiScene, DocError> {
        if self.version != DOC_VERSION {
            return Err(DocError::Version(self.version));
        }
        if self.objects.is_empty() {
            return Err(DocError::EmptyScene);
        }
        let mut objects = Vec::with_capacity(self.objects.len());
        for verts in &self.objects {
            let pts: Vec<Point2> = verts.iter().map(|&[x, y]| Point2::new(x, y)).collect();
            objects.push(ConvexPolygon::new(pts).map_err(DocError::NonConvex)?);
        }
        let barrier = parse_segments(&self.barrier)?;
        MultiScene::new(objects, barrier).map_err(|_| DocError::EmptyScene)
    }

    /// A single-object line scene.
    pub fn to_scene(&self) -> Result<Scene, DocError> {
        let multi = self.to_multi()?;
        if multi.objects.len() != 1 {
            return Err(DocError::Invalid(format!(
                "expected exactly one object, found {}",
                multi.objects.len()
            )));
        }
        let mut objects = multi.objects;
        Ok(Scene::new(objects.remove(0), multi.barrier))
    }
}

fn parse_segments(raw: &[[[f64; 2]; 2]]) -> Result<Vec<Segment>, DocError> {
    raw.iter()
        .map(|&[[ax, ay], [bx, by]]| {
            Segment::new(Point2::new(ax, ay), Point2::new(bx, by)).map_err(DocError::BadSegment)
        })
        .collect()
}

pub fn parse_scene(bytes: &[u8]) -> Result<(SceneDocument, MultiScene), DocError> {
    let doc: SceneDocument = serde_json::from_slice(bytes)?;
    let multi = doc.to_multi()?;
    Ok((doc, multi))
}

pub fn emit_scene(doc: &SceneDocument) -> String {
    serde_json::to_string_pretty(doc).expect("scene documents serialize") + "\n"
}

/// On-disk polygonal curve for `straighten`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveDocument {
    pub version: u32,
    pub vertices: Vec<[f64; 2]>,
}

impl CurveDocument {
    pub fn to_polyline(&self) -> Result<Polyline, DocError> {
        if self.version != DOC_VERSION {
            return Err(DocError::Version(self.version));
        }
        let pts: Vec<Point2> = self.vertices.iter().map(|&[x, y]| Point2::new(x, y)).collect();
        Polyline::new(pts).map_err(|e| DocError::Invalid(e.to_string()))
    }
}

/// On-disk straightening output: a bare list of segments.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SegmentsDocument {
    pub version: u32,
    pub segments: Vec<[[f64; 2]; 2]>,
}

impl SegmentsDocument {
    pub fn from_segments(segments: &[Segment]) -> SegmentsDocument {
        SegmentsDocument {
            version: DOC_VERSION,
            segments: segments
                .iter()
                .map(|s| [[s.a().x, s.a().y], [s.b().x, s.b().y]])
                .collect(),
        }
    }
}

/// On-disk segment-group configuration for `certify-groups`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDocument {
    pub version: u32,
    pub minus: Vec<[[f64; 2]; 2]>,
    pub plus: Vec<[[f64; 2]; 2]>,
    pub length: f64,
    pub lambda: f64,
    pub kappa: f64,
    pub diameter: f64,
}

impl GroupDocument {
    pub fn to_config(&self) -> Result<SegmentGroupConfig, DocError> {
        if self.version != DOC_VERSION {
            return Err(DocError::Version(self.version));
        }
        Ok(SegmentGroupConfig {
            minus: parse_segments(&self.minus)?,
            plus: parse_segments(&self.plus)?,
            length: self.length,
            lambda: self.lambda,
            kappa: self.kappa,
            diameter: self.diameter,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_identity() {
        let doc = SceneDocument {
            version: 1,
            objects: vec![vec![[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]]],
            barrier: vec![[[-0.5, -0.5], [0.5, 0.5]], [[0.1234567890123456, 0.0], [1.0, 2.0]]],
        };
        let text = emit_scene(&doc);
        let (doc2, _) = parse_scene(text.as_bytes()).unwrap();
        assert_eq!(emit_scene(&doc2), text);
    }

    #[test]
    fn distinct_error_codes() {
        let bad_json = parse_scene(b"{ not json").unwrap_err();
        assert_eq!(bad_json.exit_code(), 12);
        let nonconvex = SceneDocument {
            version: 1,
            objects: vec![vec![[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [1.0, 0.5], [0.0, 2.0]]],
            barrier: vec![],
        };
        assert_eq!(nonconvex.to_multi().unwrap_err().exit_code(), 13);
        let zero_seg = SceneDocument {
            version: 1,
            objects: vec![vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]],
            barrier: vec![[[0.25, 0.25], [0.25, 0.25]]],
        };
        assert_eq!(zero_seg.to_multi().unwrap_err().exit_code(), 14);
        let empty = SceneDocument {
            version: 1,
            objects: vec![],
            barrier: vec![],
        };
        assert_eq!(empty.to_multi().unwrap_err().exit_code(), 15);
    }
}
