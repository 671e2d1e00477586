//! SVG drawings of nets and fold specifications at a fixed scale of
//! [`PX_PER_UNIT`] pixels per unit length.

use crate::foldverify::FoldSpec;
use crate::geom::Vec2;
use crate::unfold::Net;
use std::fmt::Write;

pub const PX_PER_UNIT: f64 = 100.0;
const MARGIN: f64 = 20.0;

/// Maps plane coordinates to pixels with the y axis pointing up.
struct Canvas {
    min_x: f64,
    max_y: f64,
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new<'a>(points: impl IntoIterator<Item = &'a Vec2>) -> Canvas {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        Canvas {
            min_x: lo.x,
            max_y: hi.y,
            width: (hi.x - lo.x) * PX_PER_UNIT + 2.0 * MARGIN,
            height: (hi.y - lo.y) * PX_PER_UNIT + 2.0 * MARGIN,
            body: String::new(),
        }
    }

    fn px(&self, p: Vec2) -> (f64, f64) {
        (
            (p.x - self.min_x) * PX_PER_UNIT + MARGIN,
            (self.max_y - p.y) * PX_PER_UNIT + MARGIN,
        )
    }

    fn polygon(&mut self, class: &str, pts: &[Vec2]) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = self.px(p);
                format!("{},{}", fmt_px(x), fmt_px(y))
            })
            .collect();
        let _ = writeln!(
            self.body,
            r#"  <polygon class="{class}" points="{}"/>"#,
            coords.join(" ")
        );
    }

    fn dot(&mut self, class: &str, p: Vec2) {
        let (x, y) = self.px(p);
        let _ = writeln!(
            self.body,
            r#"  <circle class="{class}" cx="{}" cy="{}" r="5"/>"#,
            fmt_px(x),
            fmt_px(y)
        );
    }

    fn finish(self, style: &str) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n  <style>{style}</style>\n{}</svg>\n",
            self.body,
            w = fmt_px(self.width),
            h = fmt_px(self.height),
        )
    }
}

fn fmt_px(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// The face layout of a net with the two ends of its cut path marked.
pub fn net_svg(net: &Net) -> String {
    let mut c = Canvas::new(net.placements.iter().flatten());
    for face in &net.placements {
        c.polygon("face", face);
    }
    c.polygon("boundary", &net.polygon());
    let (a, b) = net.path.endpoints();
    for v in net
        .boundary
        .iter()
        .filter(|v| v.origin == a || v.origin == b)
    {
        c.dot("endpoint", v.position);
    }
    c.finish(
        ".face{fill:#e8eef7;stroke:#5577aa;stroke-width:1} \
         .boundary{fill:none;stroke:#000;stroke-width:2} \
         .endpoint{fill:#c22}",
    )
}

/// The target polygon with every facet image drawn over it.
pub fn fold_svg(spec: &FoldSpec) -> String {
    let target: Vec<Vec2> = spec.target.iter().map(|&[x, y]| Vec2::new(x, y)).collect();
    let images: Vec<Vec<Vec2>> = spec
        .facets
        .iter()
        .zip(&spec.isometries)
        .map(|(f, g)| f.iter().map(|&[x, y]| g.apply(Vec2::new(x, y))).collect())
        .collect();
    let mut c = Canvas::new(target.iter().chain(images.iter().flatten()));
    for img in &images {
        c.polygon("facet", img);
    }
    c.polygon("target", &target);
    c.finish(
        ".facet{fill:#5577aa;fill-opacity:0.25;stroke:#335;stroke-width:1} \
         .target{fill:none;stroke:#000;stroke-width:2}",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foldverify::shipped_specs;
    use crate::hampath::CutPath;
    use crate::solids::{Polyhedron, Solid};
    use crate::unfold::unfold;

    fn points(svg: &str, class: &str) -> Vec<Vec<(f64, f64)>> {
        let tag = format!(r#"<polygon class="{class}" points=""#);
        svg.lines()
            .filter_map(|l| l.trim().strip_prefix(tag.as_str()))
            .map(|rest| {
                rest.trim_end_matches("\"/>")
                    .split(' ')
                    .map(|xy| {
                        let (x, y) = xy.split_once(',').unwrap();
                        (x.parse().unwrap(), y.parse().unwrap())
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn cube_s_net_draws_six_unit_squares() {
        let p = Polyhedron::new(Solid::Cube);
        let net = unfold(&p, &CutPath::new(&p, vec![0, 1, 3, 2, 6, 4, 5, 7]).unwrap()).unwrap();
        let svg = net_svg(&net);
        let faces = points(&svg, "face");
        assert_eq!(faces.len(), 6);
        for f in &faces {
            assert_eq!(f.len(), 4);
            for i in 0..4 {
                let (a, b) = (f[i], f[(i + 1) % 4]);
                let d = ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
                assert!((d - PX_PER_UNIT).abs() < 0.01, "side {d}");
            }
        }
        assert_eq!(svg.matches(r#"class="endpoint""#).count(), 2);
        assert_eq!(svg, net_svg(&net));
    }

    #[test]
    fn fold_overlay_has_one_polygon_per_facet() {
        for (name, spec) in shipped_specs() {
            let svg = fold_svg(&spec);
            assert_eq!(points(&svg, "facet").len(), spec.facets.len(), "{name}");
            assert_eq!(points(&svg, "target").len(), 1);
        }
    }
}
