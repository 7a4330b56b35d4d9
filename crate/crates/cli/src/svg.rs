//! SVG rendering of an interception: solid car path, dashed target path,
//! heading triangles and the two initial turn circles.

use std::fmt::Write;

use dubins_intercept_core::{Configuration, ControlSchedule, TargetTrajectory};

const PX_PER_UNIT: f64 = 60.0;
const MARGIN: f64 = 0.6;

pub struct Figure<'a> {
    pub title: &'a str,
    pub schedule: &'a ControlSchedule,
    pub t_star: f64,
    pub target: &'a TargetTrajectory,
    /// Heading markers per path.
    pub markers: usize,
    /// Polyline vertices per path.
    pub samples: usize,
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Evenly spaced times on `[0, t_end]`, endpoints included.
fn times(t_end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![t_end],
        _ => (0..n).map(|k| t_end * k as f64 / (n - 1) as f64).collect(),
    }
}

fn path_data(points: &[Configuration]) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{}{} {} ", cmd, num(p.x), num(-p.y));
    }
    d.trim_end().to_string()
}

fn marker(out: &mut String, class: &str, p: &Configuration) {
    let deg = -p.phi.radians().to_degrees();
    let _ = writeln!(
        out,
        r#"<g class="marker {class}" transform="translate({} {}) rotate({})"><polygon points="0.2,0 -0.12,0.1 -0.12,-0.1"/></g>"#,
        num(p.x),
        num(-p.y),
        num(deg),
    );
}

pub fn render(fig: &Figure<'_>) -> String {
    let ts = times(fig.t_star, fig.samples.max(2));
    let car: Vec<_> = ts.iter().map(|&t| fig.schedule.config_at(t)).collect();
    let target: Vec<_> = ts.iter().map(|&t| fig.target.at(t)).collect();

    // Guide circles span x ∈ [−2, 2], y ∈ [−1, 1].
    let (mut x0, mut x1, mut y0, mut y1) = (-2.0f64, 2.0f64, -1.0f64, 1.0f64);
    for p in car.iter().chain(&target) {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    let (vx, vy) = (x0 - MARGIN, -y1 - MARGIN);
    let (w, h) = (x1 - x0 + 2.0 * MARGIN, y1 - y0 + 2.0 * MARGIN);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num(w * PX_PER_UNIT),
        num(h * PX_PER_UNIT),
        num(vx),
        num(vy),
        num(w),
        num(h),
    );
    let _ = writeln!(out, "<title>{}</title>", escape(fig.title));
    out.push_str(
        "<g class=\"guides\" fill=\"none\" stroke=\"#999999\" stroke-width=\"0.015\" stroke-dasharray=\"0.04 0.04\">\n\
         <circle cx=\"-1\" cy=\"0\" r=\"1\"/>\n<circle cx=\"1\" cy=\"0\" r=\"1\"/>\n</g>\n",
    );
    let _ = writeln!(
        out,
        r##"<path class="target" d="{}" fill="none" stroke="#666666" stroke-width="0.03" stroke-dasharray="0.15 0.1"/>"##,
        path_data(&target)
    );
    let _ = writeln!(out, r##"<path class="car" d="{}" fill="none" stroke="#000000" stroke-width="0.04"/>"##, path_data(&car));
    out.push_str("<g fill=\"#dddddd\" stroke=\"#666666\" stroke-width=\"0.01\">\n");
    for t in times(fig.t_star, fig.markers) {
        marker(&mut out, "target", &fig.target.at(t));
    }
    out.push_str("</g>\n<g fill=\"#000000\">\n");
    for t in times(fig.t_star, fig.markers) {
        marker(&mut out, "car", &fig.schedule.config_at(t));
    }
    out.push_str("</g>\n</svg>\n");
    out
}
