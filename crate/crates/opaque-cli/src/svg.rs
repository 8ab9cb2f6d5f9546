//! Deterministic SVG rendering of scenes: objects filled, barrier in
//! thick lines, optional dashed witness-line overlay.

use opaque::geom::Point2;
use opaque::scene::MultiScene;

/// Witness line in `(angle, offset)` form.
#[derive(Clone, Copy, Debug)]
pub struct WitnessLine {
    pub alpha: f64,
    pub offset: f64,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RenderOptions {
    pub witness: Option<WitnessLine>,
}

fn fmt(v: f64) -> String {
    format!("{v:.6}")
}

/// Renders the scene. Output is byte-deterministic for identical inputs.
pub fn render_svg(scene: &MultiScene, options: &RenderOptions) -> String {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut take = |p: Point2| {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    };
    for o in &scene.objects {
        for &v in o.vertices() {
            take(v);
        }
    }
    for s in &scene.barrier {
        take(s.a());
        take(s.b());
    }
    let diam = lo.dist(hi).max(1e-9);
    let pad = 0.1 * diam;
    let stroke = 0.02 * diam;
    // SVG y grows downward; flip y during emission.
    let min_x = lo.x - pad;
    let min_y = -(hi.y + pad);
    let width = (hi.x - lo.x) + 2.0 * pad;
    let height = (hi.y - lo.y) + 2.0 * pad;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">\n",
        fmt(min_x),
        fmt(min_y),
        fmt(width),
        fmt(height)
    ));
    for o in &scene.objects {
        let pts: Vec<String> = o
            .vertices()
            .iter()
            .map(|p| format!("{},{}", fmt(p.x), fmt(-p.y)))
            .collect();
        out.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"#d7dfeb\" stroke=\"#8193ad\" stroke-width=\"{}\"/>\n",
            pts.join(" "),
            fmt(stroke * 0.25)
        ));
    }
    for s in &scene.barrier {
        out.push_str(&format!(
            "  <path d=\"M {} {} L {} {}\" stroke=\"#1f2a44\" stroke-width=\"{}\" stroke-linecap=\"round\" fill=\"none\"/>\n",
            fmt(s.a().x),
            fmt(-s.a().y),
            fmt(s.b().x),
            fmt(-s.b().y),
            fmt(stroke)
        ));
    }
    if let Some(w) = options.witness {
        // The line { p : p . (cos a, sin a) = offset }.
        let d = Point2::new(w.alpha.cos(), w.alpha.sin());
        let t = Point2::new(-d.y, d.x);
        let c = d * w.offset;
        let reach = diam * 1.5;
        let p0 = c + t * reach;
        let p1 = c + t * (-reach);
        out.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#c43333\" stroke-width=\"{}\" stroke-dasharray=\"{},{}\"/>\n",
            fmt(p0.x),
            fmt(-p0.y),
            fmt(p1.x),
            fmt(-p1.y),
            fmt(stroke * 0.5),
            fmt(stroke * 1.5),
            fmt(stroke)
        ));
    }
    out.push_str("</svg>\n");
    out
}
