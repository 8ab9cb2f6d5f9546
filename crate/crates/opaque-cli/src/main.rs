//! Command-line surface for the opaque-set toolkit.
//!
//! Exit codes: 0 success (or Certified), 1 Witness (or a refuted
//! report), 2 Unresolved, 10 usage, 11 I/O, 12 malformed JSON,
//! 13 non-convex object, 14 invalid segment, 15 other document
//! validation, 16 domain preconditions.

mod doc;
mod svg;

use clap::{Parser, Subcommand, ValueEnum};
use std::io::Read;
use std::path::{Path, PathBuf};

use doc::{
    emit_scene, parse_scene, CurveDocument, DocError, GroupDocument, SceneDocument,
    SegmentsDocument,
};
use opaque::certificates::{
    far_outside_certificate, group_deficit_formula, jones_bound, validate_segment_group,
    waste_certificate,
};
use opaque::constructions::{make_square_barrier, straighten, SquareBarrier};
use opaque::coverage::{
    barrier_projection, coverage_gap, integrate_projection_length, integrate_width,
    verify_line_barrier, Verdict,
};
use opaque::geom::Segment;
use opaque::halfline::{figure9_scene, halfline_jones_bound, verify_ray_barrier};
use opaque::square::reproduce_theorem_constants;
use svg::{render_svg, RenderOptions, WitnessLine};

#[derive(Parser)]
#[command(
    name = "opaque",
    version,
    about = "Certified verification and construction of opaque sets (barriers)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    ThreeSides,
    Diagonals,
    TwoSidesHalfDiagonal,
    Steiner,
}

impl From<Variant> for SquareBarrier {
    fn from(v: Variant) -> SquareBarrier {
        match v {
            Variant::ThreeSides => SquareBarrier::ThreeSides,
            Variant::Diagonals => SquareBarrier::Diagonals,
            Variant::TwoSidesHalfDiagonal => SquareBarrier::TwoSidesHalfDiagonal,
            Variant::Steiner => SquareBarrier::HalfDiagonalSteiner,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify that the barrier blocks every line through the object.
    Verify {
        /// Scene JSON file ("-" or omitted: stdin).
        scene: Option<PathBuf>,
        /// Dilation tolerance of the certification.
        #[arg(long, default_value_t = opaque::coverage::DEFAULT_VERIFY_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Verify that the barrier blocks every ray from the object(s).
    VerifyRays {
        scene: Option<PathBuf>,
        /// Uncovered-area tolerance relative to the squared diameter.
        #[arg(long, default_value_t = opaque::halfline::DEFAULT_RAY_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Report barrier length, perimeters, and the Jones-type bounds.
    Length {
        scene: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Project the scene onto one angle and report the coverage gap.
    Project {
        scene: Option<PathBuf>,
        /// Projection angle in radians.
        #[arg(long, allow_hyphen_values = true)]
        angle: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Certified width and projection-length integrals.
    Integrate {
        scene: Option<PathBuf>,
        #[arg(long, default_value_t = opaque::coverage::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Waste certificate of the scene's barrier as the subset B'.
    CertifyWaste {
        scene: Option<PathBuf>,
        #[arg(long, default_value_t = opaque::coverage::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Far-outside certificate of a one-segment barrier.
    CertifyFarOutside {
        scene: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Validate a segment-group configuration and report its bound.
    CertifyGroups {
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Re-verify the constant chain of the square lower bound.
    ReproduceSquareTheorem {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Emit one of the classical unit-square barrier scenes.
    Construct {
        #[arg(long, value_enum)]
        variant: Variant,
        /// Output path (default: stdout).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// The disconnected half-line example: three barrier lengths.
    Figure9 {
        #[arg(long, default_value_t = 0.001)]
        thickness: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Replace a curve by a straight barrier of length <= (1+eps)|curve|.
    Straighten {
        curve: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Render a scene (optionally with a witness line) as SVG.
    Render {
        scene: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, requires = "witness_offset", allow_hyphen_values = true)]
        witness_alpha: Option<f64>,
        #[arg(long, requires = "witness_alpha", allow_hyphen_values = true)]
        witness_offset: Option<f64>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Doc(#[from] DocError),
    #[error("{0}")]
    Domain(#[from] opaque::Error),
    #[error("could not write output: {0}")]
    Write(std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Doc(d) => d.exit_code(),
            CliError::Domain(_) => 16,
            CliError::Write(_) => 11,
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap would exit 2, which collides with Unresolved.
            let _ = err.print();
            std::process::exit(if err.use_stderr() { 10 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>, DocError> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(std::fs::read(p)?),
        _ => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf)?;
            Ok(buf)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(CliError::Write),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_multi(path: Option<&Path>) -> Result<(SceneDocument, opaque::MultiScene), CliError> {
    let bytes = read_input(path)?;
    Ok(parse_scene(&bytes)?)
}

fn load_line_scene(path: Option<&Path>) -> Result<opaque::Scene, CliError> {
    let bytes = read_input(path)?;
    let doc: SceneDocument = serde_json::from_slice(&bytes).map_err(DocError::Syntax)?;
    Ok(doc.to_scene()?)
}

fn verdict_exit<W>(v: &Verdict<W>) -> i32 {
    match v.kind() {
        opaque::coverage::VerdictKind::Certified => 0,
        opaque::coverage::VerdictKind::Witness => 1,
        opaque::coverage::VerdictKind::Unresolved => 2,
    }
}

fn report_line_verdict(v: &Verdict, format: Format) {
    match format {
        Format::Text => match v {
            Verdict::Certified { margin, detail } => {
                println!("verdict: certified");
                println!("margin: {margin:.6e}");
                println!("detail: {detail}");
            }
            Verdict::Witness { witness, detail } => {
                println!("verdict: witness");
                println!("alpha: {}", witness.alpha);
                println!("offset: {}", witness.offset);
                println!("detail: {detail}");
            }
            Verdict::Unresolved { slack, detail } => {
                println!("verdict: unresolved");
                println!("slack: {slack:.6e}");
                println!("detail: {detail}");
            }
        },
        Format::Json => {
            let value = match v {
                Verdict::Certified { margin, detail } => serde_json::json!({
                    "verdict": "certified", "margin": margin, "detail": detail,
                }),
                Verdict::Witness { witness, detail } => serde_json::json!({
                    "verdict": "witness",
                    "alpha": witness.alpha,
                    "offset": witness.offset,
                    "detail": detail,
                }),
                Verdict::Unresolved { slack, detail } => serde_json::json!({
                    "verdict": "unresolved", "slack": slack, "detail": detail,
                }),
            };
            println!("{value:#}");
        }
    }
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Verify { scene, tol, format } => {
            let scene = load_line_scene(scene.as_deref())?;
            let verdict = verify_line_barrier(&scene, tol)?;
            report_line_verdict(&verdict, format);
            Ok(verdict_exit(&verdict))
        }
        Command::VerifyRays { scene, tol, format } => {
            let (_, multi) = load_multi(scene.as_deref())?;
            let verdict = verify_ray_barrier(&multi, tol)?;
            match format {
                Format::Text => match &verdict {
                    Verdict::Certified { margin, detail } => {
                        println!("verdict: certified");
                        println!("margin: {margin:.6e}");
                        println!("detail: {detail}");
                    }
                    Verdict::Witness { witness, detail } => {
                        println!("verdict: witness");
                        println!("origin: ({}, {})", witness.origin.x, witness.origin.y);
                        println!("theta: {}", witness.theta);
                        println!("detail: {detail}");
                    }
                    Verdict::Unresolved { slack, detail } => {
                        println!("verdict: unresolved");
                        println!("slack: {slack:.6e}");
                        println!("detail: {detail}");
                    }
                },
                Format::Json => {
                    let value = match &verdict {
                        Verdict::Certified { margin, detail } => serde_json::json!({
                            "verdict": "certified", "margin": margin, "detail": detail,
                        }),
                        Verdict::Witness { witness, detail } => serde_json::json!({
                            "verdict": "witness",
                            "origin": [witness.origin.x, witness.origin.y],
                            "theta": witness.theta,
                            "detail": detail,
                        }),
                        Verdict::Unresolved { slack, detail } => serde_json::json!({
                            "verdict": "unresolved", "slack": slack, "detail": detail,
                        }),
                    };
                    println!("{value:#}");
                }
            }
            Ok(verdict_exit(&verdict))
        }
        Command::Length { scene, format } => {
            let (_, multi) = load_multi(scene.as_deref())?;
            let barrier_length = multi.barrier_length();
            let perimeters: Vec<f64> = multi.objects.iter().map(|o| o.perimeter()).collect();
            match format {
                Format::Text => {
                    println!("barrier length: {barrier_length}");
                    for (i, p) in perimeters.iter().enumerate() {
                        println!("object {i} perimeter: {p}");
                    }
                    if multi.objects.len() == 1 {
                        println!(
                            "line-barrier lower bound: {}",
                            jones_bound(&multi.objects[0])
                        );
                        println!(
                            "ray-barrier lower bound: {}",
                            halfline_jones_bound(&multi.objects[0])
                        );
                    }
                }
                Format::Json => {
                    let mut value = serde_json::json!({
                        "barrier_length": barrier_length,
                        "perimeters": perimeters,
                    });
                    if multi.objects.len() == 1 {
                        value["line_lower_bound"] =
                            serde_json::json!(jones_bound(&multi.objects[0]));
                        value["ray_lower_bound"] =
                            serde_json::json!(halfline_jones_bound(&multi.objects[0]));
                    }
                    println!("{value:#}");
                }
            }
            Ok(0)
        }
        Command::Project {
            scene,
            angle,
            format,
        } => {
            let scene = load_line_scene(scene.as_deref())?;
            let u = scene.object.project(angle);
            let b = barrier_projection(&scene.barrier, angle);
            let gap = coverage_gap(&scene.object, &scene.barrier, angle);
            match format {
                Format::Text => {
                    println!(
                        "object projection: [{}, {}] measure {}",
                        u.lo(),
                        u.hi(),
                        u.measure()
                    );
                    println!(
                        "barrier projection: {} intervals, measure {}",
                        b.items().len(),
                        b.measure()
                    );
                    for iv in b.items() {
                        println!("  [{}, {}]", iv.lo(), iv.hi());
                    }
                    println!(
                        "gap: {} intervals, measure {}",
                        gap.items().len(),
                        gap.measure()
                    );
                    for iv in gap.items() {
                        println!("  [{}, {}]", iv.lo(), iv.hi());
                    }
                }
                Format::Json => {
                    let to_pairs = |s: &opaque::IntervalSet| -> Vec<[f64; 2]> {
                        s.items().iter().map(|i| [i.lo(), i.hi()]).collect()
                    };
                    println!(
                        "{:#}",
                        serde_json::json!({
                            "angle": angle,
                            "object": [u.lo(), u.hi()],
                            "barrier": to_pairs(&b),
                            "gap": to_pairs(&gap),
                            "gap_measure": gap.measure(),
                        })
                    );
                }
            }
            Ok(0)
        }
        Command::Integrate { scene, tol, format } => {
            let scene = load_line_scene(scene.as_deref())?;
            let width = integrate_width(&scene.object, tol);
            let proj = integrate_projection_length(&scene.barrier);
            match format {
                Format::Text => {
                    println!(
                        "width integral: {} +/- {:.3e} ({} evaluations)",
                        width.value, width.error_bound, width.evaluations
                    );
                    println!("twice perimeter: {}", 2.0 * scene.object.perimeter());
                    println!(
                        "projection-length integral: {} +/- 0 (closed form)",
                        proj.value
                    );
                }
                Format::Json => {
                    println!(
                        "{:#}",
                        serde_json::json!({
                            "width_integral": { "value": width.value, "error_bound": width.error_bound },
                            "twice_perimeter": 2.0 * scene.object.perimeter(),
                            "projection_length": { "value": proj.value, "error_bound": 0.0 },
                        })
                    );
                }
            }
            Ok(0)
        }
        Command::CertifyWaste { scene, tol, format } => {
            let scene = load_line_scene(scene.as_deref())?;
            let cert = waste_certificate(&scene.object, &scene.barrier, tol)?;
            match format {
                Format::Text => {
                    println!("subset length: {}", cert.subset_length);
                    println!(
                        "clipped integral: {} +/- {:.3e}",
                        cert.clipped_integral.value, cert.clipped_integral.error_bound
                    );
                    println!("delta: {}", cert.delta);
                    println!("lower bound: {}", cert.bound);
                }
                Format::Json => {
                    println!(
                        "{:#}",
                        serde_json::json!({
                            "subset_length": cert.subset_length,
                            "clipped_integral": {
                                "value": cert.clipped_integral.value,
                                "error_bound": cert.clipped_integral.error_bound,
                            },
                            "delta": cert.delta,
                            "bound": cert.bound,
                        })
                    );
                }
            }
            Ok(0)
        }
        Command::CertifyFarOutside { scene, format } => {
            let scene = load_line_scene(scene.as_deref())?;
            if scene.barrier.len() != 1 {
                return Err(DocError::Invalid(format!(
                    "certify-far-outside expects exactly one barrier segment, found {}",
                    scene.barrier.len()
                ))
                .into());
            }
            let cert = far_outside_certificate(&scene.barrier[0], &scene.object)?;
            match format {
                Format::Text => {
                    println!("angle set measure: {}", cert.angle_set_measure);
                    println!("epsilon: {}", cert.epsilon);
                    println!("factor: {}", cert.factor);
                    println!(
                        "coverage bound: {} (4|b| = {})",
                        cert.factor * scene.barrier[0].length(),
                        4.0 * scene.barrier[0].length()
                    );
                }
                Format::Json => {
                    println!(
                        "{:#}",
                        serde_json::json!({
                            "angle_set_measure": cert.angle_set_measure,
                            "epsilon": cert.epsilon,
                            "factor": cert.factor,
                        })
                    );
                }
            }
            Ok(0)
        }
        Command::CertifyGroups { config, format } => {
            let bytes = read_input(config.as_deref())?;
            let doc: GroupDocument = serde_json::from_slice(&bytes).map_err(DocError::Syntax)?;
            let cfg = doc.to_config()?;
            let violations = validate_segment_group(&cfg);
            let bound =
                group_deficit_formula(cfg.n(), cfg.length, cfg.lambda, cfg.kappa, cfg.diameter);
            match format {
                Format::Text => {
                    println!("n: {}", cfg.n());
                    println!("width W: {}", cfg.width());
                    println!("bound 8nl - 2W^2/D: {bound}");
                    if violations.is_empty() {
                        println!("valid: true");
                    } else {
                        println!("valid: false");
                        for v in &violations {
                            println!("violation: {v}");
                        }
                    }
                }
                Format::Json => {
                    println!(
                        "{:#}",
                        serde_json::json!({
                            "n": cfg.n(),
                            "width": cfg.width(),
                            "bound": bound,
                            "valid": violations.is_empty(),
                            "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        })
                    );
                }
            }
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
        Command::ReproduceSquareTheorem { format } => {
            let report = reproduce_theorem_constants();
            match format {
                Format::Text => {
                    for (i, row) in report.rows.iter().enumerate() {
                        println!(
                            "{:2}. {:24} {:<22} [{}]  {}  (slack {:.3e})",
                            i + 1,
                            row.name,
                            row.value,
                            row.claim,
                            if row.holds { "OK" } else { "FAIL" },
                            row.slack
                        );
                    }
                    println!("lower bound {}", report.lower_bound);
                }
                Format::Json => {
                    println!(
                        "{:#}",
                        serde_json::json!({
                            "rows": report.rows.iter().map(|r| serde_json::json!({
                                "name": r.name,
                                "value": r.value,
                                "claim": r.claim,
                                "holds": r.holds,
                                "slack": r.slack,
                            })).collect::<Vec<_>>(),
                            "lower_bound": report.lower_bound,
                            "all_hold": report.all_hold(),
                        })
                    );
                }
            }
            Ok(if report.all_hold() { 0 } else { 1 })
        }
        Command::Construct { variant, output } => {
            let scene = make_square_barrier(variant.into());
            let doc = SceneDocument::from_scene(&scene);
            write_output(output.as_deref(), &emit_scene(&doc))?;
            Ok(0)
        }
        Command::Figure9 { thickness, format } => {
            let fig = figure9_scene(thickness)?;
            match format {
                Format::Text => {
                    println!("separate hulls: {:.7}", fig.lengths[0]);
                    println!("full convex hull: {:.7}", fig.lengths[1]);
                    println!("grouped budget: {:.7}", fig.lengths[2]);
                }
                Format::Json => {
                    println!(
                        "{:#}",
                        serde_json::json!({
                            "separate_hulls": fig.lengths[0],
                            "full_hull": fig.lengths[1],
                            "grouped_budget": fig.lengths[2],
                        })
                    );
                }
            }
            Ok(0)
        }
        Command::Straighten { curve, eps, output } => {
            let bytes = read_input(curve.as_deref())?;
            let doc: CurveDocument = serde_json::from_slice(&bytes).map_err(DocError::Syntax)?;
            let polyline = doc.to_polyline()?;
            let out = straighten(&polyline, eps)?;
            let out_len: f64 = out.iter().map(Segment::length).sum();
            eprintln!(
                "straightened {} vertices: length {} (input {})",
                doc.vertices.len(),
                out_len,
                polyline.length()
            );
            let text = serde_json::to_string_pretty(&SegmentsDocument::from_segments(&out))
                .expect("segments serialize")
                + "\n";
            write_output(output.as_deref(), &text)?;
            Ok(0)
        }
        Command::Render {
            scene,
            output,
            witness_alpha,
            witness_offset,
        } => {
            let (_, multi) = load_multi(scene.as_deref())?;
            let witness = witness_alpha
                .zip(witness_offset)
                .map(|(alpha, offset)| WitnessLine { alpha, offset });
            let text = render_svg(&multi, &RenderOptions { witness });
            write_output(output.as_deref(), &text)?;
            Ok(0)
        }
    }
}
