//! Perimeter-halving refoldings ("zippings") of a net.
//!
//! With the perimeter normalized to 1, a zipping anchored at `x` glues the
//! boundary point at `x + s` to the point at `x − s` for `s ∈ (0, 1/2)`; the
//! anchors `x` and `x + 1/2` are the two ends of the zip path. The gluing is
//! a valid Alexandrov gluing, and so determines a unique convex polyhedron,
//! exactly when no glued point collects more than `2π` of angle.
//!
//! A net with a reflex corner `v` of angle `β` admits only a linear number of
//! zippings: either the zip path starts at `v`, or exactly one strictly convex
//! corner `u` with `α + β ≤ 2π` is glued to `v`, which pins `x` to the
//! perimeter midpoint of `u` and `v`. Gluing two corners to `v` would make `v`
//! a junction of degree three in the gluing tree. [`enumerate_zippings`] tries
//! every such candidate.

use crate::geom::EPS_ANG;
use crate::unfold::Net;
use crate::Error;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Slack on arc positions when deciding whether two points coincide.
const ARC_EPS: f64 = 1e-9;
/// Maximum total angle at a glued point.
pub const MAX_GLUED_ANGLE: f64 = 2.0 * PI + EPS_ANG;

/// One point of the glued surface that receives at least one net corner, or
/// one of the two anchors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlueEvent {
    /// Distance from the anchor along the perimeter, in `[0, 1/2]`.
    pub offset: f64,
    /// Arc positions identified here: one for an anchor, two otherwise.
    pub arcs: Vec<f64>,
    /// Boundary corner indices participating, at most two.
    pub vertices: Vec<usize>,
    /// Total angle gathered at the glued point.
    pub angle: f64,
}

impl GlueEvent {
    pub fn is_anchor(&self) -> bool {
        self.arcs.len() == 1
    }

    pub fn curvature(&self) -> f64 {
        2.0 * PI - self.angle
    }
}

/// A point of the glued surface with its total angle and curvature. Points
/// with curvature below `EPS_ANG` are flat and not polyhedron vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexCluster {
    /// Indices into [`Zipping::events`].
    pub events: Vec<usize>,
    pub angle: f64,
    pub curvature: f64,
}

impl VertexCluster {
    pub fn is_vertex(&self) -> bool {
        self.curvature >= EPS_ANG
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Zipping {
    pub anchor: f64,
    pub co_anchor: f64,
    pub events: Vec<GlueEvent>,
    pub clusters: Vec<VertexCluster>,
    /// The pairing is exactly the cut-edge pairing of the source solid.
    pub identity: bool,
    /// Result of [`flat_compatible`], stored for reporting.
    pub flat_compatible: bool,
}

impl Zipping {
    /// Clusters that are genuine vertices of the zipped polyhedron.
    pub fn vertices(&self) -> impl Iterator<Item = &VertexCluster> {
        self.clusters.iter().filter(|c| c.is_vertex())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().count()
    }

    /// Vertex curvatures sorted ascending.
    pub fn curvature_profile(&self) -> Vec<f64> {
        let mut k: Vec<f64> = self.vertices().map(|c| c.curvature).collect();
        k.sort_by(f64::total_cmp);
        k
    }

    pub fn total_curvature(&self) -> f64 {
        self.clusters.iter().map(|c| c.curvature).sum()
    }

    /// Arc position glued to `s`.
    pub fn partner(&self, s: f64) -> f64 {
        (2.0 * self.anchor - s).rem_euclid(1.0)
    }

    /// Whether two zippings glue the same pairs of points.
    pub fn same_gluing(&self, other: &Zipping) -> bool {
        let d = (self.anchor - other.anchor).rem_euclid(0.5);
        d < ARC_EPS || 0.5 - d < ARC_EPS
    }
}

/// A candidate anchor that fails Alexandrov's angle condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rejection {
    pub anchor: f64,
    /// First glued point, walking away from the anchor, whose angle exceeds 2π.
    pub event: GlueEvent,
}

fn circular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Glue the boundary of `net` by perimeter halving about `x`.
pub fn zip_at(net: &Net, x: f64) -> Result<Result<Zipping, Rejection>, Error> {
    net.require_simple()?;
    if !(0.0..1.0).contains(&x) || !x.is_finite() {
        return Err(Error::AnchorOutOfRange(x));
    }
    Ok(zip_unchecked(net, x))
}

/// Perimeter halving on the cyclic angle sequence alone. All glued geometry
/// is determined by the corner angles and arc positions, so this does not
/// look at the planar layout.
pub(crate) fn zip_unchecked(net: &Net, x: f64) -> Result<Zipping, Rejection> {
    // corners grouped by their distance from the anchor
    let mut slots: Vec<(f64, Vec<usize>)> = Vec::new();
    let mut anchor_corner: [Option<usize>; 2] = [None, None];
    for (k, b) in net.boundary.iter().enumerate() {
        let s = (b.arc - x).rem_euclid(1.0);
        if s < ARC_EPS || 1.0 - s < ARC_EPS {
            anchor_corner[0] = Some(k);
            continue;
        }
        if (s - 0.5).abs() < ARC_EPS {
            anchor_corner[1] = Some(k);
            continue;
        }
        let offset = if s < 0.5 { s } else { 1.0 - s };
        match slots.iter_mut().find(|(o, _)| (o - offset).abs() < ARC_EPS) {
            Some((_, ks)) => ks.push(k),
            None => slots.push((offset, vec![k])),
        }
    }
    let angle_of = |k: usize| net.boundary[k].angle;
    let mut events = Vec::with_capacity(slots.len() + 2);
    let x_co = (x + 0.5).rem_euclid(1.0);
    events.push(GlueEvent {
        offset: 0.0,
        arcs: vec![x],
        vertices: anchor_corner[0].into_iter().collect(),
        angle: anchor_corner[0].map_or(PI, angle_of),
    });
    slots.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (offset, ks) in slots {
        let angle =
            ks.iter().map(|&k| angle_of(k)).sum::<f64>() + if ks.len() == 1 { PI } else { 0.0 };
        events.push(GlueEvent {
            offset,
            arcs: vec![(x + offset).rem_euclid(1.0), (x - offset).rem_euclid(1.0)],
            vertices: ks,
            angle,
        });
    }
    events.push(GlueEvent {
        offset: 0.5,
        arcs: vec![x_co],
        vertices: anchor_corner[1].into_iter().collect(),
        angle: anchor_corner[1].map_or(PI, angle_of),
    });
    if let Some(bad) = events.iter().find(|e| e.angle > MAX_GLUED_ANGLE) {
        return Err(Rejection {
            anchor: x,
            event: bad.clone(),
        });
    }
    let clusters = events
        .iter()
        .enumerate()
        .map(|(i, e)| VertexCluster {
            events: vec![i],
            angle: e.angle,
            curvature: (2.0 * PI - e.angle).max(0.0),
        })
        .collect();
    let mut z = Zipping {
        anchor: x,
        co_anchor: x_co,
        events,
        clusters,
        identity: circular_gap(x, 0.0) < ARC_EPS || circular_gap(x, 0.5) < ARC_EPS,
        flat_compatible: false,
    };
    z.flat_compatible = flat_compatible(&z);
    Ok(z)
}

/// Necessary condition for `z` to be a doubly covered convex polygon.
///
/// A corner of interior angle `θ` on a doubly covered polygon has curvature
/// `2π − 2θ`, so each vertex curvature `κ` must map to an angle `π − κ/2`
/// strictly between 0 and π, with at least three corners and the usual angle
/// sum. Flat points are ignored because they are not vertices. This does not
/// decide flatness: the cube's own identity refold passes. Only a verified
/// fold specification establishes that a zipping is flat.
pub fn flat_compatible(z: &Zipping) -> bool {
    let corners: Vec<f64> = z.vertices().map(|c| PI - c.curvature / 2.0).collect();
    let k = corners.len();
    k >= 3
        && corners.iter().all(|&t| t > EPS_ANG && t < PI - EPS_ANG)
        && (corners.iter().sum::<f64>() - (k as f64 - 2.0) * PI).abs() < 1e-6
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "corner", rename_all = "snake_case")]
pub enum CandidateSource {
    /// The zip path starts at the reflex corner itself.
    ReflexAnchor(usize),
    /// The given strictly convex corner is glued to the reflex corner.
    Partner(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub anchor: f64,
    pub source: CandidateSource,
    pub outcome: Result<Zipping, Rejection>,
}

/// A strictly convex corner that cannot be glued to the reflex corner
/// because the two angles together exceed `2π`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pruned {
    pub corner: usize,
    pub angle: f64,
    /// Angle the pair would gather, `α + β`.
    pub total: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZipReport {
    /// Convex net: every anchor gives a convex polyhedron.
    Continuum,
    Discrete {
        /// Boundary index of the reflex corner the search is anchored on.
        reflex: usize,
        reflex_angle: f64,
        candidates: Vec<Candidate>,
        pruned: Vec<Pruned>,
    },
}

impl ZipReport {
    pub fn is_continuum(&self) -> bool {
        matches!(self, ZipReport::Continuum)
    }

    pub fn candidates(&self) -> &[Candidate] {
        match self {
            ZipReport::Continuum => &[],
            ZipReport::Discrete { candidates, .. } => candidates,
        }
    }

    /// Valid zippings, identity refolds included.
    pub fn zippings(&self) -> impl Iterator<Item = &Zipping> {
        self.candidates()
            .iter()
            .filter_map(|c| c.outcome.as_ref().ok())
    }

    /// Valid zippings other than the identity refold.
    pub fn refoldings(&self) -> impl Iterator<Item = &Zipping> {
        self.zippings().filter(|z| !z.identity)
    }

    pub fn rejections(&self) -> impl Iterator<Item = &Rejection> {
        self.candidates()
            .iter()
            .filter_map(|c| c.outcome.as_ref().err())
    }

    pub fn pruned(&self) -> &[Pruned] {
        match self {
            ZipReport::Continuum => &[],
            ZipReport::Discrete { pruned, .. } => pruned,
        }
    }
}

/// Every zipping of `net`, or the continuum marker for a convex net.
pub fn enumerate_zippings(net: &Net) -> Result<ZipReport, Error> {
    net.require_simple()?;
    Ok(enumerate_unchecked(net))
}

pub(crate) fn enumerate_unchecked(net: &Net) -> ZipReport {
    let Some(v) = net.boundary.iter().position(|b| b.is_reflex()) else {
        return ZipReport::Continuum;
    };
    let beta = net.boundary[v].angle;
    let av = net.boundary[v].arc;
    let canonical = |x: f64| {
        let r = x.rem_euclid(0.5);
        if 0.5 - r < ARC_EPS {
            0.0
        } else {
            r
        }
    };
    let mut candidates = vec![(canonical(av), CandidateSource::ReflexAnchor(v))];
    let mut pruned = Vec::new();
    for (i, u) in net.boundary.iter().enumerate() {
        if i == v || !u.is_strictly_convex() {
            continue;
        }
        if u.angle + beta > MAX_GLUED_ANGLE {
            pruned.push(Pruned {
                corner: i,
                angle: u.angle,
                total: u.angle + beta,
            });
            continue;
        }
        // u and v reflect into each other through x: arc(u) + arc(v) ≡ 2x
        candidates.push((canonical((u.arc + av) / 2.0), CandidateSource::Partner(i)));
    }
    let candidates = candidates
        .into_iter()
        .map(|(anchor, source)| Candidate {
            anchor,
            source,
            outcome: zip_unchecked(net, anchor),
        })
        .collect();
    ZipReport::Discrete {
        reflex: v,
        reflex_angle: beta,
        candidates,
        pruned,
    }
}

/// True iff the only zippings of `net` refold the source solid.
pub fn is_zip_rigid(net: &Net) -> Result<bool, Error> {
    let report = enumerate_zippings(net)?;
    Ok(!report.is_continuum() && report.refoldings().next().is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hampath::{enumerate_paths, CutPath};
    use crate::solids::{Polyhedron, Solid};
    use crate::unfold::unfold;
    use proptest::prelude::*;

    const TAU: f64 = 2.0 * PI;

    fn net_for(solid: Solid, path: &[usize]) -> Net {
        let p = Polyhedron::new(solid);
        unfold(&p, &CutPath::new(&p, path.to_vec()).unwrap()).unwrap()
    }

    fn all_nets(solid: Solid) -> Vec<Net> {
        let p = Polyhedron::new(solid);
        enumerate_paths(&p)
            .iter()
            .map(|c| unfold(&p, c).unwrap())
            .collect()
    }

    fn degrees(v: &[f64]) -> Vec<i64> {
        v.iter().map(|a| a.to_degrees().round() as i64).collect()
    }

    /// Perimeter halving on half-edge ticks: every net has unit edges, so
    /// anchors at corners and edge midpoints sit on a grid of `2n` ticks.
    /// Even ticks carry corner angles, odd ticks are edge interiors.
    fn tick_oracle(net: &Net, anchor: usize) -> Option<Vec<i64>> {
        let n = net.len();
        let ticks = 2 * n;
        let angle = |t: usize| -> f64 {
            if t.is_multiple_of(2) {
                net.boundary[t / 2].angle
            } else {
                PI
            }
        };
        let mut curv = Vec::new();
        for j in 0..=n {
            let a = (anchor + j) % ticks;
            let b = (anchor + ticks - j) % ticks;
            let total = if a == b {
                angle(a)
            } else if a % 2 == 1 && b % 2 == 1 {
                continue;
            } else {
                angle(a) + angle(b)
            };
            if total > TAU + 1e-9 {
                return None;
            }
            if TAU - total > 1e-9 {
                curv.push(TAU - total);
            }
        }
        curv.sort_by(f64::total_cmp);
        Some(degrees(&curv))
    }

    const CUBE_T: [usize; 8] = [0, 1, 3, 2, 6, 7, 5, 4];
    const CUBE_S: [usize; 8] = [0, 1, 3, 2, 6, 4, 5, 7];
    const CUBE_Z: [usize; 8] = [0, 1, 3, 7, 5, 4, 6, 2];

    #[test]
    fn zip_matches_tick_oracle_on_small_solids() {
        for solid in [Solid::Tetrahedron, Solid::Cube, Solid::Octahedron] {
            for net in all_nets(solid) {
                for t in 0..2 * net.len() {
                    let x = t as f64 / (2 * net.len()) as f64;
                    let ours = zip_at(&net, x)
                        .unwrap()
                        .ok()
                        .map(|z| degrees(&z.curvature_profile()));
                    assert_eq!(
                        ours,
                        tick_oracle(&net, t),
                        "{solid} {:?} tick {t}",
                        net.path.vertices
                    );
                }
            }
        }
    }

    #[test]
    fn cube_t_net_is_zip_rigid() {
        let net = net_for(Solid::Cube, &CUBE_T);
        assert!(is_zip_rigid(&net).unwrap());
        let id = zip_at(&net, 0.0).unwrap().unwrap();
        assert!(id.identity);
        assert_eq!(degrees(&id.curvature_profile()), vec![90; 8]);
    }

    #[test]
    fn cube_s_and_z_nets_refold() {
        let counts = |path: &[usize]| {
            let rep = enumerate_zippings(&net_for(Solid::Cube, path)).unwrap();
            let mut c: Vec<usize> = rep.refoldings().map(Zipping::vertex_count).collect();
            c.sort();
            c
        };
        // frozen from the tick oracle above
        assert_eq!(counts(&CUBE_S), vec![4, 4, 4, 5, 5, 5]);
        assert_eq!(counts(&CUBE_Z), vec![4, 4, 4, 5, 6, 6]);
    }

    #[test]
    fn s_net_parallelogram_is_flat_compatible() {
        let net = net_for(Solid::Cube, &CUBE_S);
        let rep = enumerate_zippings(&net).unwrap();
        let para: Vec<&Zipping> = rep
            .refoldings()
            .filter(|z| degrees(&z.curvature_profile()) == vec![90, 90, 270, 270])
            .collect();
        assert!(!para.is_empty());
        for z in para {
            assert!(z.flat_compatible);
            let mut corners: Vec<i64> = z
                .vertices()
                .map(|c| (180.0 - c.curvature.to_degrees() / 2.0).round() as i64)
                .collect();
            corners.sort();
            assert_eq!(corners, vec![45, 45, 135, 135]);
        }
    }

    #[test]
    fn screen_is_not_sufficient() {
        let id = zip_at(&net_for(Solid::Cube, &CUBE_T), 0.0)
            .unwrap()
            .unwrap();
        assert!(flat_compatible(&id));
    }

    #[test]
    fn screen_rejects_fewer_than_three_corners() {
        let mut z = zip_at(&net_for(Solid::Cube, &CUBE_T), 0.0)
            .unwrap()
            .unwrap();
        z.clusters.truncate(2);
        assert!(!flat_compatible(&z));
    }

    #[test]
    fn tetrahedron_is_a_continuum() {
        for net in all_nets(Solid::Tetrahedron) {
            let rep = enumerate_zippings(&net).unwrap();
            assert!(rep.is_continuum());
            assert!(!is_zip_rigid(&net).unwrap());
        }
    }

    #[test]
    fn tetrahedron_rhombus_zipping() {
        // anchors at the two obtuse-corner midpoints of the long sides
        let net = &all_nets(Solid::Tetrahedron)[0];
        let found = (0..2 * net.len()).any(|t| {
            let z = zip_at(net, t as f64 / (2 * net.len()) as f64)
                .unwrap()
                .unwrap();
            degrees(&z.curvature_profile()) == vec![120, 120, 240, 240]
        });
        assert!(found);
    }

    #[test]
    fn every_dodecahedron_net_is_zip_rigid() {
        for net in all_nets(Solid::Dodecahedron) {
            let rep = enumerate_zippings(&net).unwrap();
            assert!(rep.refoldings().next().is_none());
            let ZipReport::Discrete {
                reflex_angle,
                pruned,
                ..
            } = &rep
            else {
                panic!("dodecahedron nets are not convex");
            };
            assert_eq!(degrees(&[*reflex_angle]), vec![324]);
            let min = pruned.iter().map(|q| q.angle).fold(f64::INFINITY, f64::min);
            assert_eq!(degrees(&[min]), vec![108]);
            assert!(pruned.iter().all(|q| q.total > MAX_GLUED_ANGLE));
        }
    }

    #[test]
    fn small_solid_invariants() {
        for solid in [Solid::Cube, Solid::Octahedron, Solid::Dodecahedron] {
            let p = Polyhedron::new(solid);
            for net in all_nets(solid) {
                let rep = enumerate_zippings(&net).unwrap();
                let convex = net
                    .boundary
                    .iter()
                    .filter(|b| b.is_strictly_convex())
                    .count();
                assert!(rep.candidates().len() <= 2 * convex + 1);
                let id = zip_at(&net, 0.0).unwrap().unwrap();
                assert!(id.identity);
                assert_eq!(id.vertex_count(), p.num_vertices());
                assert!(id
                    .vertices()
                    .all(|c| (c.curvature - p.vertex_curvature()).abs() < 1e-9));
                for z in rep.zippings() {
                    assert!((z.total_curvature() - 2.0 * TAU).abs() < 1e-6);
                    for e in &z.events {
                        if e.arcs.len() == 2 && e.vertices.len() == 1 {
                            assert!(!net.boundary[e.vertices[0]].is_reflex());
                        }
                    }
                    let mut seen = vec![0; net.len()];
                    for e in &z.events {
                        for &k in &e.vertices {
                            seen[k] += 1;
                        }
                    }
                    assert!(seen.iter().all(|&c| c == 1));
                }
            }
        }
    }

    #[test]
    fn anchor_out_of_range() {
        let net = net_for(Solid::Cube, &CUBE_T);
        assert!(matches!(zip_at(&net, 1.0), Err(Error::AnchorOutOfRange(_))));
        assert!(matches!(
            zip_at(&net, -0.1),
            Err(Error::AnchorOutOfRange(_))
        ));
    }

    #[test]
    fn rejection_reports_first_violation() {
        let net = net_for(Solid::Cube, &CUBE_T);
        let rep = enumerate_zippings(&net).unwrap();
        let r = rep.rejections().next().unwrap();
        assert!(r.event.angle > MAX_GLUED_ANGLE);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn anchor_and_co_anchor_give_the_same_fold(i in 0usize..120, x in 0.0f64..0.5) {
            let p = Polyhedron::new(Solid::Octahedron);
            let c = &enumerate_paths(&p)[i];
            let net = unfold(&p, c).unwrap();
            let a = zip_at(&net, x).unwrap();
            let b = zip_at(&net, x + 0.5).unwrap();
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    prop_assert!(a.same_gluing(&b));
                    prop_assert_eq!(degrees(&a.curvature_profile()), degrees(&b.curvature_profile()));
                }
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "validity differs between x and x + 1/2"),
            }
        }

        #[test]
        fn pairing_is_an_involution(i in 0usize..72, x in 0.0f64..1.0, s in 0.0f64..1.0) {
            let p = Polyhedron::new(Solid::Cube);
            let net = unfold(&p, &enumerate_paths(&p)[i]).unwrap();
            if let Ok(z) = zip_at(&net, x).unwrap() {
                let back = z.partner(z.partner(s));
                prop_assert!((back - s).abs() < 1e-9 || (back - s).abs() > 1.0 - 1e-9);
                // glued points sit at the same distance from the anchor
                let d = |t: f64| { let r = (t - x).rem_euclid(1.0); r.min(1.0 - r) };
                prop_assert!((d(s) - d(z.partner(s))).abs() < 1e-9);
            }
        }

        #[test]
        fn gauss_bonnet_for_random_anchors(i in 0usize..1620, t in 0usize..76) {
            let p = Polyhedron::new(Solid::Dodecahedron);
            let net = unfold(&p, &enumerate_paths(&p)[i]).unwrap();
            if let Ok(z) = zip_at(&net, t as f64 / 76.0).unwrap() {
                prop_assert!((z.total_curvature() - 2.0 * TAU).abs() < 1e-6);
            }
        }
    }
}
