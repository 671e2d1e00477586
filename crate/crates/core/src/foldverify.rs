//! Checking explicit flat-folding data against a net.
//!
//! A [`FoldSpec`] cuts a net into facets and gives each facet a planar
//! isometry into a target polygon. The data describe a flat folding onto
//! the doubly covered target when the facets tile the net with consistent
//! creases and their images cover the target exactly twice without leaving
//! it. The boundary
//! points that land on the same point of the doubly covered target are
//! glued together; for a zipping this gluing must be perimeter halving.
//!
//! Layer order is not checked. Nothing here searches for foldings.

use crate::geom::{self, Isometry, Vec2};
use crate::hampath::CutPath;
use crate::solids::Polyhedron;
use crate::unfold::{unfold, Net};
use crate::zipper::{self, Zipping};
use crate::Error;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Distance below which two folded points are the same point.
pub const FOLD_TOL: f64 = 1e-7;
/// Minimum number of target samples in the coverage check.
pub const MIN_SAMPLES: usize = 10_000;
const BOUNDARY_SAMPLES: usize = 4_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Gluing {
    /// The perimeter-halving gluing anchored at `anchor`.
    Zip { anchor: f64 },
    /// A gluing that is not a zipping, with the expected degrees of the
    /// gluing tree's junctions (nodes of degree at least 3).
    NonZip { junctions: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldSpec {
    #[serde(default)]
    pub label: String,
    pub net: CutPath,
    /// Facet polygons in net coordinates.
    pub facets: Vec<Vec<[f64; 2]>>,
    /// Map from each facet to the target, index-aligned with `facets`.
    pub isometries: Vec<Isometry>,
    pub target: Vec<[f64; 2]>,
    pub gluing: Gluing,
}

impl FoldSpec {
    pub fn load(path: &Path) -> Result<FoldSpec, Error> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| Error::Json {
            path: path.display().to_string(),
            source,
        })
    }

    /// Net rebuilt from the referenced cut path.
    pub fn build_net(&self) -> Result<Net, Error> {
        let p = Polyhedron::new(self.net.solid);
        let path = CutPath::new(&p, self.net.vertices.clone())?;
        unfold(&p, &path)
    }

    fn facet_polys(&self) -> Vec<Vec<Vec2>> {
        self.facets.iter().map(|f| to_points(f)).collect()
    }

    fn target_poly(&self) -> Vec<Vec2> {
        ccw(to_points(&self.target))
    }

    /// Apply `net_map` to the net side and `target_map` to the target side.
    pub fn transformed(&self, net_map: &Isometry, target_map: &Isometry) -> FoldSpec {
        let back = net_map.inverse();
        let map = |pts: &[[f64; 2]], g: &Isometry| -> Vec<[f64; 2]> {
            pts.iter()
                .map(|&[x, y]| {
                    let q = g.apply(Vec2::new(x, y));
                    [q.x, q.y]
                })
                .collect()
        };
        FoldSpec {
            label: self.label.clone(),
            net: self.net.clone(),
            facets: self.facets.iter().map(|f| map(f, net_map)).collect(),
            isometries: self
                .isometries
                .iter()
                .map(|g| target_map.compose(&g.compose(&back)))
                .collect(),
            target: map(&self.target, target_map),
            gluing: self.gluing.clone(),
        }
    }
}

fn to_points(pts: &[[f64; 2]]) -> Vec<Vec2> {
    pts.iter().map(|&[x, y]| Vec2::new(x, y)).collect()
}

fn ccw(mut poly: Vec<Vec2>) -> Vec<Vec2> {
    if geom::signed_area(&poly) < 0.0 {
        poly.reverse();
    }
    poly
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(pass: bool, detail: impl Into<String>) -> Check {
        Check {
            pass,
            detail: detail.into(),
        }
    }
}

/// Side lengths and interior angles (radians) of the target, in order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetShape {
    pub sides: Vec<f64>,
    pub angles: Vec<f64>,
    pub area: f64,
}

impl TargetShape {
    pub fn of(poly: &[Vec2]) -> TargetShape {
        let n = poly.len();
        TargetShape {
            sides: (0..n).map(|i| poly[i].dist(poly[(i + 1) % n])).collect(),
            angles: geom::interior_angles(poly),
            area: geom::signed_area(poly).abs(),
        }
    }

    /// Smallest interior angle; for a parallelogram this fixes its shape.
    pub fn min_angle(&self) -> f64 {
        self.angles.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Distinct side lengths, ascending, merged within `tol`.
    pub fn distinct_sides(&self, tol: f64) -> Vec<f64> {
        let mut s = self.sides.clone();
        s.sort_by(f64::total_cmp);
        s.dedup_by(|a, b| (*a - *b).abs() <= tol);
        s
    }
}

/// A point of the folded surface where at least three boundary points of
/// the net are glued together.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Junction {
    pub point: [f64; 2],
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GluingTree {
    pub junctions: Vec<Junction>,
    /// Leaves of the tree: `2 + Σ (degree − 2)` over junctions.
    pub leaves: usize,
}

impl GluingTree {
    pub fn is_path(&self) -> bool {
        self.junctions.is_empty()
    }

    pub fn junction_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.junctions.iter().map(|j| j.degree).collect();
        d.sort();
        d
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub label: String,
    pub tiling: Check,
    pub isometries: Check,
    pub creases: Check,
    pub containment: Check,
    pub double_coverage: Check,
    /// Perimeter halving for a zip spec; agreement with the annotated
    /// junction degrees for a non-zip spec.
    pub gluing: Check,
    pub gluing_tree: GluingTree,
    pub target: TargetShape,
    pub samples: usize,
    pub pass: bool,
}

const SHIPPED: [(&str, &str); 8] = [
    (
        "tetrahedron-rhombus",
        include_str!("../data/foldspecs/tetrahedron-rhombus.json"),
    ),
    (
        "cube-s-parallelogram",
        include_str!("../data/foldspecs/cube-s-parallelogram.json"),
    ),
    (
        "cube-z-parallelogram",
        include_str!("../data/foldspecs/cube-z-parallelogram.json"),
    ),
    (
        "octahedron-rectangle-half",
        include_str!("../data/foldspecs/octahedron-rectangle-half.json"),
    ),
    (
        "octahedron-rectangle-sqrt3",
        include_str!("../data/foldspecs/octahedron-rectangle-sqrt3.json"),
    ),
    (
        "octahedron-parallelogram",
        include_str!("../data/foldspecs/octahedron-parallelogram.json"),
    ),
    (
        "octahedron-nonzip-rectangle",
        include_str!("../data/foldspecs/octahedron-nonzip-rectangle.json"),
    ),
    (
        "icosahedron-parallelogram",
        include_str!("../data/foldspecs/icosahedron-parallelogram.json"),
    ),
];

/// The fold specifications bundled with the crate, by name.
pub fn shipped_specs() -> Vec<(&'static str, FoldSpec)> {
    SHIPPED
        .iter()
        .map(|(name, text)| {
            let spec =
                serde_json::from_str(text).unwrap_or_else(|e| panic!("bundled spec {name}: {e}"));
            (*name, spec)
        })
        .collect()
}

/// Whether the facet areas add up to twice the target area.
pub fn target_area_check(f: &FoldSpec) -> bool {
    let facets: f64 = f
        .facet_polys()
        .iter()
        .map(|p| geom::signed_area(p).abs())
        .sum();
    let target = geom::signed_area(&f.target_poly()).abs();
    let net = f.net.solid.surface_area();
    (facets - 2.0 * target).abs() <= 1e-6 * net
}

/// Verify `f` against the net its cut path produces.
pub fn verify_fold(f: &FoldSpec) -> Result<VerificationReport, Error> {
    let net = f.build_net()?;
    verify_fold_on(f, &net)
}

/// Verify `f` against an explicitly supplied net, which may have been moved
/// by a rigid motion.
pub fn verify_fold_on(f: &FoldSpec, net: &Net) -> Result<VerificationReport, Error> {
    let facets = f.facet_polys();
    if facets.is_empty() {
        return Err(Error::MalformedFoldSpec("no facets".into()));
    }
    if facets.len() != f.isometries.len() {
        return Err(Error::MalformedFoldSpec(format!(
            "{} facets but {} isometries",
            facets.len(),
            f.isometries.len()
        )));
    }
    if let Some(i) = facets.iter().position(|p| p.len() < 3) {
        return Err(Error::MalformedFoldSpec(format!(
            "facet {i} has fewer than 3 corners"
        )));
    }
    if f.target.len() < 3 {
        return Err(Error::MalformedFoldSpec(
            "target has fewer than 3 corners".into(),
        ));
    }
    let facets: Vec<Vec<Vec2>> = facets.into_iter().map(ccw).collect();
    let net_poly = ccw(net.polygon());
    let net_area = geom::signed_area(&net_poly);
    let facet_area: f64 = facets.iter().map(|p| geom::signed_area(p)).sum();
    if (facet_area - net_area).abs() > 1e-6 * net_area {
        return Err(Error::BadPartition {
            facets: facet_area,
            net: net_area,
        });
    }
    let target = f.target_poly();
    let folded = Folded {
        facets: &facets,
        isos: &f.isometries,
        target: &target,
    };

    let tiling = check_tiling(&facets, &net_poly);
    let isometries = check_isometries(&facets, &f.isometries);
    let creases = check_creases(&facets, &f.isometries);
    let containment = check_containment(&folded);
    let (double_coverage, samples) = check_coverage(&folded, facet_area);
    let gluing_tree = folded.gluing_tree(net);
    let gluing = match &f.gluing {
        Gluing::Zip { anchor } => check_zip(&folded, net, *anchor, &gluing_tree),
        Gluing::NonZip { junctions } => {
            let got = gluing_tree.junction_degrees();
            let mut want = junctions.clone();
            want.sort();
            Check::new(
                got == want && !gluing_tree.is_path(),
                format!("junction degrees {got:?}, annotated {want:?}"),
            )
        }
    };
    let pass = [
        &tiling,
        &isometries,
        &creases,
        &containment,
        &double_coverage,
        &gluing,
    ]
    .iter()
    .all(|c| c.pass);
    Ok(VerificationReport {
        label: f.label.clone(),
        tiling,
        isometries,
        creases,
        containment,
        double_coverage,
        gluing,
        gluing_tree,
        target: TargetShape::of(&target),
        samples,
        pass,
    })
}

/// Deterministic grid over the bounding box of `poly`, refined until at
/// least `want` points satisfy `keep`.
fn grid_samples(poly: &[Vec2], want: usize, keep: impl Fn(Vec2) -> bool) -> Vec<Vec2> {
    let (mut lo, mut hi) = (poly[0], poly[0]);
    for p in poly {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let mut n = 128;
    loop {
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                // offsets keep samples off the rational lines creases live on
                let u = (i as f64 + 0.5 + 0.0917) / n as f64;
                let v = (j as f64 + 0.5 + 0.0389) / n as f64;
                let p = Vec2::new(lo.x + u * (hi.x - lo.x), lo.y + v * (hi.y - lo.y));
                if keep(p) {
                    out.push(p);
                }
            }
        }
        if out.len() >= want || n >= 4096 {
            return out;
        }
        n *= 2;
    }
}

fn near_any_edge(p: Vec2, polys: &[Vec<Vec2>], tol: f64) -> bool {
    polys
        .iter()
        .any(|q| geom::distance_to_boundary(p, q) <= tol)
}

fn check_tiling(facets: &[Vec<Vec2>], net: &[Vec2]) -> Check {
    for (i, f) in facets.iter().enumerate() {
        if let Some(p) = f
            .iter()
            .find(|&&p| !geom::point_in_polygon_tol(p, net, FOLD_TOL))
        {
            return Check::new(
                false,
                format!(
                    "facet {i} corner ({:.6}, {:.6}) lies outside the net",
                    p.x, p.y
                ),
            );
        }
    }
    // every facet edge runs along the net boundary or along other facets
    for (i, f) in facets.iter().enumerate() {
        let n = f.len();
        for k in 0..n {
            for t in [0.25, 0.5, 0.75] {
                let m = f[k].lerp(f[(k + 1) % n], t);
                let on_net = geom::distance_to_boundary(m, net) <= FOLD_TOL;
                let shared = facets
                    .iter()
                    .enumerate()
                    .any(|(j, g)| j != i && geom::distance_to_boundary(m, g) <= FOLD_TOL);
                if !on_net && !shared {
                    return Check::new(
                        false,
                        format!("edge {k} of facet {i} borders no other facet"),
                    );
                }
            }
        }
    }
    let samples = grid_samples(net, MIN_SAMPLES, |p| {
        geom::point_in_polygon(p, net)
            && geom::distance_to_boundary(p, net) > 1e-6
            && !near_any_edge(p, facets, 1e-6)
    });
    for p in &samples {
        let count = facets
            .iter()
            .filter(|f| geom::point_in_polygon(*p, f))
            .count();
        if count != 1 {
            return Check::new(
                false,
                format!("net point ({:.6}, {:.6}) lies in {count} facets", p.x, p.y),
            );
        }
    }
    Check::new(
        true,
        format!(
            "{} facets tile the net ({} samples)",
            facets.len(),
            samples.len()
        ),
    )
}

fn check_isometries(facets: &[Vec<Vec2>], isos: &[Isometry]) -> Check {
    for (i, (f, g)) in facets.iter().zip(isos).enumerate() {
        if ![g.angle, g.tx, g.ty].iter().all(|v| v.is_finite()) {
            return Check::new(false, format!("isometry {i} has a non-finite parameter"));
        }
        for a in 0..f.len() {
            for b in a + 1..f.len() {
                let d0 = f[a].dist(f[b]);
                let d1 = g.apply(f[a]).dist(g.apply(f[b]));
                if (d0 - d1).abs() > FOLD_TOL {
                    return Check::new(
                        false,
                        format!("isometry {i} changes a distance by {:.3e}", (d0 - d1).abs()),
                    );
                }
            }
        }
    }
    Check::new(
        true,
        format!("{} isometries preserve distances", isos.len()),
    )
}

/// Overlap of two collinear segments, if it has positive length.
fn shared_segment(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> Option<(Vec2, Vec2)> {
    let len = a.dist(b);
    if len <= FOLD_TOL || line_distance(c, a, b) > FOLD_TOL || line_distance(d, a, b) > FOLD_TOL {
        return None;
    }
    let dir = (b - a) * (1.0 / len);
    let (tc, td) = (dir.dot(c - a), dir.dot(d - a));
    let lo = tc.min(td).max(0.0);
    let hi = tc.max(td).min(len);
    (hi - lo > FOLD_TOL).then(|| (a + dir * lo, a + dir * hi))
}

fn line_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let d = b - a;
    d.cross(p - a).abs() / d.norm()
}

fn check_creases(facets: &[Vec<Vec2>], isos: &[Isometry]) -> Check {
    let mut folds = 0;
    let mut flat = 0;
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            let (fi, fj) = (&facets[i], &facets[j]);
            for k in 0..fi.len() {
                let (a, b) = (fi[k], fi[(k + 1) % fi.len()]);
                for l in 0..fj.len() {
                    let (c, d) = (fj[l], fj[(l + 1) % fj.len()]);
                    let Some((p, q)) = shared_segment(a, b, c, d) else {
                        continue;
                    };
                    for r in [p, q] {
                        let gap = isos[i].apply(r).dist(isos[j].apply(r));
                        if gap > FOLD_TOL {
                            return Check::new(
                                false,
                                format!(
                                    "facets {i} and {j} separate by {gap:.3e} along their crease"
                                ),
                            );
                        }
                    }
                    if isos[i].approx_eq(&isos[j], FOLD_TOL) {
                        flat += 1;
                    } else {
                        folds += 1;
                    }
                }
            }
        }
    }
    Check::new(true, format!("{folds} fold creases, {flat} unfolded joins"))
}

struct Folded<'a> {
    facets: &'a [Vec<Vec2>],
    isos: &'a [Isometry],
    target: &'a [Vec2],
}

impl Folded<'_> {
    fn images(&self) -> Vec<Vec<Vec2>> {
        self.facets
            .iter()
            .zip(self.isos)
            .map(|(f, g)| ccw(f.iter().map(|&p| g.apply(p)).collect()))
            .collect()
    }

    /// Facet holding net point `p`, preferring the one it is deepest in.
    fn facet_of(&self, p: Vec2) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, f) in self.facets.iter().enumerate() {
            let d = geom::distance_to_boundary(p, f);
            let depth = if geom::point_in_polygon(p, f) { d } else { -d };
            if depth >= -FOLD_TOL && best.is_none_or(|(_, b)| depth > b) {
                best = Some((i, depth));
            }
        }
        best.map(|(i, _)| i)
    }

    fn fold_point(&self, p: Vec2) -> Option<(Vec2, bool)> {
        self.facet_of(p)
            .map(|i| (self.isos[i].apply(p), self.isos[i].reflect))
    }

    /// Boundary positions glued to boundary point `p`, including `p` itself.
    /// Two boundary points are glued when they fold to the same point and
    /// either lie on the same layer or fold onto the target's rim.
    fn glued_with(&self, net: &Net, p: Vec2) -> Vec<f64> {
        let Some((img, layer)) = self.fold_point(p) else {
            return Vec::new();
        };
        let on_rim = geom::distance_to_boundary(img, self.target) <= FOLD_TOL;
        let n = net.len();
        let mut arcs: Vec<f64> = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            if !on_rim && self.isos[i].reflect != layer {
                continue;
            }
            let pre = self.isos[i].inverse().apply(img);
            if geom::distance_to_boundary(pre, f) > FOLD_TOL && !geom::point_in_polygon(pre, f) {
                continue;
            }
            for k in 0..n {
                let a = &net.boundary[k];
                let b = &net.boundary[(k + 1) % n];
                if geom::point_segment_distance(pre, a.position, b.position) <= FOLD_TOL {
                    let t = a.position.dist(pre) / a.position.dist(b.position);
                    let end = if k + 1 == n { 1.0 } else { b.arc };
                    let s = (a.arc + t * (end - a.arc)).rem_euclid(1.0);
                    if !arcs.iter().any(|&x| circular(x, s) <= 1e-7) {
                        arcs.push(s);
                    }
                }
            }
        }
        arcs
    }

    /// Junctions of the gluing tree. Each point of a junction gathers at
    /// least three boundary wedges; three edge-interior wedges already total
    /// 3π, so every junction contains a net corner and it suffices to look
    /// at corners.
    fn gluing_tree(&self, net: &Net) -> GluingTree {
        let mut junctions: Vec<Junction> = Vec::new();
        for b in &net.boundary {
            let degree = self.glued_with(net, b.position).len();
            if degree < 3 {
                continue;
            }
            let Some((img, _)) = self.fold_point(b.position) else {
                continue;
            };
            if !junctions
                .iter()
                .any(|j| Vec2::new(j.point[0], j.point[1]).dist(img) <= FOLD_TOL)
            {
                junctions.push(Junction {
                    point: [img.x, img.y],
                    degree,
                });
            }
        }
        let leaves = 2 + junctions.iter().map(|j| j.degree - 2).sum::<usize>();
        GluingTree { junctions, leaves }
    }
}

fn circular(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

fn check_containment(folded: &Folded) -> Check {
    for (i, img) in folded.images().iter().enumerate() {
        let n = img.len();
        for k in 0..n {
            for t in [0.0, 0.5] {
                let p = img[k].lerp(img[(k + 1) % n], t);
                if !geom::point_in_polygon_tol(p, folded.target, FOLD_TOL) {
                    return Check::new(
                        false,
                        format!(
                            "image of facet {i} leaves the target at ({:.6}, {:.6})",
                            p.x, p.y
                        ),
                    );
                }
            }
            let (a, b) = (img[k], img[(k + 1) % n]);
            let m = folded.target.len();
            for l in 0..m {
                if geom::segments_cross_properly(
                    a,
                    b,
                    folded.target[l],
                    folded.target[(l + 1) % m],
                    FOLD_TOL,
                ) {
                    return Check::new(
                        false,
                        format!("image of facet {i} crosses target side {l}"),
                    );
                }
            }
        }
    }
    Check::new(true, "every facet image lies in the target")
}

fn check_coverage(folded: &Folded, facet_area: f64) -> (Check, usize) {
    let target_area = geom::signed_area(folded.target);
    if (facet_area - 2.0 * target_area).abs() > 1e-6 * facet_area {
        let msg =
            format!("facet area {facet_area:.9} is not twice the target area {target_area:.9}");
        return (Check::new(false, msg), 0);
    }
    let images = folded.images();
    let samples = grid_samples(folded.target, MIN_SAMPLES, |p| {
        geom::point_in_polygon(p, folded.target)
            && geom::distance_to_boundary(p, folded.target) > 1e-6
            && !near_any_edge(p, &images, 1e-6)
    });
    if samples.len() < MIN_SAMPLES {
        let msg = format!("only {} usable samples", samples.len());
        return (Check::new(false, msg), samples.len());
    }
    for p in &samples {
        let count = images
            .iter()
            .filter(|g| geom::point_in_polygon(*p, g))
            .count();
        if count != 2 {
            let msg = format!(
                "target point ({:.6}, {:.6}) is covered {count} times",
                p.x, p.y
            );
            return (Check::new(false, msg), samples.len());
        }
    }
    let msg = format!("{} samples each covered twice", samples.len());
    (Check::new(true, msg), samples.len())
}

fn check_zip(folded: &Folded, net: &Net, anchor: f64, tree: &GluingTree) -> Check {
    let zipping: Zipping = match zipper::zip_at(net, anchor) {
        Ok(Ok(z)) => z,
        Ok(Err(r)) => {
            let msg = format!(
                "anchor {anchor} violates the angle bound ({:.6} rad)",
                r.event.angle
            );
            return Check::new(false, msg);
        }
        Err(e) => return Check::new(false, e.to_string()),
    };
    let mut offsets: Vec<f64> = (1..BOUNDARY_SAMPLES)
        .map(|i| 0.5 * i as f64 / BOUNDARY_SAMPLES as f64)
        .collect();
    offsets.extend(
        zipping
            .events
            .iter()
            .map(|e| e.offset)
            .filter(|&o| o > 0.0 && o < 0.5),
    );
    for s in offsets {
        let a = net.point_at(anchor + s);
        let b = net.point_at(anchor - s);
        match (folded.fold_point(a), folded.fold_point(b)) {
            (Some((fa, _)), Some((fb, _))) if fa.dist(fb) <= FOLD_TOL * 10.0 => {}
            _ => {
                return Check::new(
                    false,
                    format!("points at offset ±{s:.6} from the anchor do not meet"),
                );
            }
        }
    }
    if !tree.is_path() {
        return Check::new(
            false,
            format!(
                "gluing has junctions of degree {:?}",
                tree.junction_degrees()
            ),
        );
    }
    Check::new(
        true,
        format!("perimeter halving about {anchor:.6} closes up"),
    )
}
