//! Planar projections `(x, y)` of extremals, the reflected family sharing
//! their endpoints, and SVG or CSV rendering.

use crate::error::{CliError, Result};
use crate::format::num;
use cartan_sr::flow::{extremal_with, Covector};
use cartan_sr::ode::OdeOptions;
use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub name: &'static str,
    pub samples: Vec<Sample>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub name: &'static str,
    pub sample: Sample,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElasticaPlot {
    pub curves: Vec<Curve>,
    pub markers: Vec<Marker>,
}

/// Samples on `[0, t_end]` with spacing at most `resolution`.
pub fn sample(l: &Covector, t_end: f64, resolution: f64, ode: &OdeOptions) -> Result<Vec<Sample>> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(CliError::usage(format!(
            "--t-end must be positive and finite, got {t_end}"
        )));
    }
    if !(resolution > 0.0) {
        return Err(CliError::usage("--resolution must be positive"));
    }
    let n = (t_end / resolution).ceil().max(2.0) as usize;
    let sol = extremal_with(l, t_end, ode)?;
    Ok((0..=n)
        .map(|i| {
            let t = t_end * i as f64 / n as f64;
            let y = sol.eval(t);
            Sample {
                t,
                x: y[5],
                y: y[6],
            }
        })
        .collect())
}

/// Map every sample of `c` through `f`.
fn mapped(c: &[Sample], f: impl Fn(f64, f64) -> (f64, f64)) -> Vec<Sample> {
    c.iter()
        .map(|s| {
            let (x, y) = f(s.x, s.y);
            Sample { t: s.t, x, y }
        })
        .collect()
}

/// The three reflections of a planar curve that fix its chord set: in the
/// chord's center, in the chord's perpendicular bisector and in the chord.
pub fn reflections(c: &[Sample]) -> Result<Vec<Curve>> {
    let (a, b) = (c[0], c[c.len() - 1]);
    let (mx, my) = (0.5 * (a.x + b.x), 0.5 * (a.y + b.y));
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len = dx.hypot(dy);
    if !(len > 1e-12) {
        return Err(CliError::usage("reflections need distinct endpoints"));
    }
    let (ux, uy) = (dx / len, dy / len);
    let along = move |x: f64, y: f64| {
        let (px, py) = (x - mx, y - my);
        let s = px * ux + py * uy;
        (s, px - s * ux, py - s * uy)
    };
    Ok(vec![
        Curve {
            name: "center",
            samples: mapped(c, |x, y| (2.0 * mx - x, 2.0 * my - y)),
        },
        Curve {
            name: "bisector",
            samples: mapped(c, |x, y| {
                let (s, nx, ny) = along(x, y);
                (mx - s * ux + nx, my - s * uy + ny)
            }),
        },
        Curve {
            name: "chord",
            samples: mapped(c, |x, y| {
                let (s, nx, ny) = along(x, y);
                (mx + s * ux - nx, my + s * uy - ny)
            }),
        },
    ])
}

pub fn build(
    l: &Covector,
    t_end: f64,
    resolution: f64,
    with_reflections: bool,
    instants: &[(&'static str, f64)],
    ode: &OdeOptions,
) -> Result<ElasticaPlot> {
    let samples = sample(l, t_end, resolution, ode)?;
    let mut markers = Vec::new();
    for &(name, t) in instants {
        if t.is_finite() && t <= t_end * (1.0 + 1e-12) {
            let s = if t >= t_end {
                samples[samples.len() - 1]
            } else {
                let y = extremal_with(l, t, ode)?.eval(t);
                Sample {
                    t,
                    x: y[5],
                    y: y[6],
                }
            };
            markers.push(Marker { name, sample: s });
        }
    }
    let mut curves = Vec::new();
    if with_reflections {
        let r = reflections(&samples)?;
        curves.push(Curve {
            name: "elastica",
            samples,
        });
        curves.extend(r);
    } else {
        curves.push(Curve {
            name: "elastica",
            samples,
        });
    }
    Ok(ElasticaPlot { curves, markers })
}

/// CSV rows `curve,t,x,y`; markers appear as rows named after the instant.
pub fn to_csv(p: &ElasticaPlot) -> String {
    let mut out = String::from("curve,t,x,y\n");
    for c in &p.curves {
        for s in &c.samples {
            writeln!(out, "{},{},{},{}", c.name, num(s.t), num(s.x), num(s.y)).unwrap();
        }
    }
    for m in &p.markers {
        let s = m.sample;
        writeln!(out, "{},{},{},{}", m.name, num(s.t), num(s.x), num(s.y)).unwrap();
    }
    out
}

const WIDTH_PX: f64 = 640.0;
const COLORS: [&str; 4] = ["#1f4e9c", "#c0392b", "#27ae60", "#8e44ad"];

/// A single `<svg>` root in plane units with `y` pointing up; strokes are
/// 2 px and markers are circles of radius 4 px.
pub fn to_svg(p: &ElasticaPlot) -> String {
    let pts = p.curves.iter().flat_map(|c| c.samples.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for s in pts {
        x0 = x0.min(s.x);
        x1 = x1.max(s.x);
        y0 = y0.min(s.y);
        y1 = y1.max(s.y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = 0.05 * span;
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let px_per_unit = WIDTH_PX / w;
    let height_px = (h * px_per_unit).round().max(1.0);
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        WIDTH_PX,
        height_px,
        num(x0 - pad),
        num(-(y1 + pad)),
        num(w),
        num(h)
    )
    .unwrap();
    out.push_str("<g transform=\"scale(1,-1)\" fill=\"none\">\n");
    for (i, c) in p.curves.iter().enumerate() {
        let points: Vec<String> = c
            .samples
            .iter()
            .map(|s| format!("{},{}", num(s.x), num(s.y)))
            .collect();
        writeln!(
            out,
            "<polyline id=\"{}\" stroke=\"{}\" stroke-width=\"2\" vector-effect=\"non-scaling-stroke\" points=\"{}\"/>",
            c.name,
            COLORS[i % COLORS.len()],
            points.join(" ")
        )
        .unwrap();
    }
    for m in &p.markers {
        writeln!(
            out,
            "<circle class=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>",
            m.name,
            num(m.sample.x),
            num(m.sample.y),
            num(4.0 / px_per_unit)
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}
