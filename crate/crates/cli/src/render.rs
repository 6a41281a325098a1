//! Static SVG of an instance, its lines and an optional solution.

use std::fmt::Write as _;

use twoline::io::ResultFile;
use twoline::{Instance, LineLayout};

const SIZE: f64 = 800.0;

struct Frame {
    x0: f64,
    y1: f64,
    scale: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        (x - self.x0) * self.scale
    }

    fn py(&self, y: f64) -> f64 {
        (self.y1 - y) * self.scale
    }
}

fn frame(inst: &Instance, res: Option<&ResultFile>) -> Frame {
    let r = res.and_then(|f| f.radius).unwrap_or(0.0);
    let mut xs = vec![-1.0, 1.0];
    let mut ys = vec![-1.0, 1.0];
    if let LineLayout::Parallel { y1, y2 } = inst.layout {
        ys.extend([y1, y2]);
    }
    for p in &inst.points {
        xs.push(p.x);
        ys.push(p.y);
    }
    for c in res.iter().flat_map(|f| &f.centers) {
        xs.extend([c.x - r, c.x + r]);
        ys.extend([c.y - r, c.y + r]);
    }
    let (x0, x1) = xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let (y0, y1) = ys.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let pad = 0.05 * (x1 - x0).max(y1 - y0);
    let span = (x1 - x0).max(y1 - y0) + 2.0 * pad;
    Frame { x0: x0 - pad, y1: y1 + pad, scale: SIZE / span }
}

fn segment(out: &mut String, f: &Frame, a: (f64, f64), b: (f64, f64)) {
    writeln!(
        out,
        r#"<line class="line" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-width="2"/>"#,
        f.px(a.0),
        f.py(a.1),
        f.px(b.0),
        f.py(b.1)
    )
    .unwrap();
}

pub fn svg(inst: &Instance, res: Option<&ResultFile>) -> String {
    let f = frame(inst, res);
    let (lo, hi) = (f.x0, f.x0 + SIZE / f.scale);
    let (bot, top) = (f.y1 - SIZE / f.scale, f.y1);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    match inst.layout {
        LineLayout::Parallel { y1, y2 } => {
            segment(&mut out, &f, (lo, y1), (hi, y1));
            segment(&mut out, &f, (lo, y2), (hi, y2));
        }
        LineLayout::Perpendicular => {
            segment(&mut out, &f, (lo, 0.0), (hi, 0.0));
            segment(&mut out, &f, (0.0, bot), (0.0, top));
        }
        LineLayout::Corner => {
            segment(&mut out, &f, (0.0, 0.0), (hi, 0.0));
            segment(&mut out, &f, (0.0, 0.0), (0.0, top));
        }
        LineLayout::TJunction => {
            segment(&mut out, &f, (lo, 0.0), (hi, 0.0));
            segment(&mut out, &f, (0.0, 0.0), (0.0, bot));
        }
    }
    if let Some(res) = res {
        let r = res.radius.unwrap_or(0.0);
        for c in &res.centers {
            writeln!(
                out,
                r##"<circle class="disk" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#4a90d9" fill-opacity="0.2" stroke="#1f5fa8"/>"##,
                f.px(c.x),
                f.py(c.y),
                r * f.scale
            )
            .unwrap();
        }
    }
    for p in &inst.points {
        writeln!(
            out,
            r##"<circle class="point" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#c0392b"/>"##,
            f.px(p.x),
            f.py(p.y),
            2.0 + 1.5 * p.w
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
