//! Planar development of a solid cut open along a Hamiltonian path.
//!
//! The uncut edges form a spanning tree of the face adjacency graph, so the
//! placement of the faces is unique once the root face is fixed. The boundary
//! of the development traverses the cut path once in each direction: it
//! starts at the first path vertex, runs out along one side of the path and
//! returns along the other, for `2(V − 1)` corners and unit edges.

use crate::geom::{self, Isometry, Vec2, EPS_ANG, EPS_LEN};
use crate::hampath::CutPath;
use crate::solids::{Polyhedron, Solid};
use crate::Error;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryVertex {
    pub position: Vec2,
    /// Interior angle of the net at this corner, radians.
    pub angle: f64,
    /// Position along the boundary with the perimeter normalized to 1.
    pub arc: f64,
    /// Polyhedron vertex this corner develops from.
    pub origin: usize,
    /// Number of face corners making up `angle`.
    pub face_corners: usize,
}

impl BoundaryVertex {
    pub fn is_reflex(&self) -> bool {
        self.angle > PI + EPS_ANG
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.angle < PI - EPS_ANG
    }

    /// Collinear development point.
    pub fn is_straight(&self) -> bool {
        (self.angle - PI).abs() <= EPS_ANG
    }
}

/// One side of a cut edge as it appears on the net boundary, running from
/// corner `i` to corner `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryEdge {
    pub face: usize,
    pub from: usize,
    pub to: usize,
    /// Index of the boundary edge on the other side of the same cut.
    pub twin: usize,
}

#[derive(Clone, Debug)]
pub struct Net {
    pub path: CutPath,
    /// Planar image of each face, vertices in the face's own cyclic order.
    pub placements: Vec<Vec<Vec2>>,
    pub boundary: Vec<BoundaryVertex>,
    pub edges: Vec<BoundaryEdge>,
    pub perimeter: f64,
    /// Faces reached across each uncut edge, as (parent, child) pairs.
    pub dual_tree: Vec<(usize, usize)>,
    face_angle: f64,
    overlap: Option<String>,
}

impl Net {
    pub fn solid(&self) -> Solid {
        self.path.solid
    }

    pub fn face_angle(&self) -> f64 {
        self.face_angle
    }

    pub fn is_simple(&self) -> bool {
        self.overlap.is_none()
    }

    /// Description of the first self-intersection found, if any.
    pub fn overlap(&self) -> Option<&str> {
        self.overlap.as_deref()
    }

    pub fn require_simple(&self) -> Result<(), Error> {
        match &self.overlap {
            None => Ok(()),
            Some(why) => Err(Error::NonSimpleNet(why.clone())),
        }
    }

    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn polygon(&self) -> Vec<Vec2> {
        self.boundary.iter().map(|b| b.position).collect()
    }

    pub fn area(&self) -> f64 {
        geom::signed_area(&self.polygon())
    }

    pub fn is_convex(&self) -> bool {
        self.boundary.iter().all(|b| !b.is_reflex())
    }

    /// The same net moved by `g`. Arc positions are unchanged, so a mirror
    /// image runs clockwise.
    pub fn transformed(&self, g: &Isometry) -> Net {
        let mut out = self.clone();
        for b in &mut out.boundary {
            b.position = g.apply(b.position);
        }
        for face in &mut out.placements {
            for q in face.iter_mut() {
                *q = g.apply(*q);
            }
        }
        out
    }

    /// Point at normalized arc position `s` along the boundary.
    pub fn point_at(&self, s: f64) -> Vec2 {
        let n = self.boundary.len();
        let s = s.rem_euclid(1.0);
        let mut i = n - 1;
        for k in 0..n {
            let next = if k + 1 == n {
                1.0
            } else {
                self.boundary[k + 1].arc
            };
            if s < next {
                i = k;
                break;
            }
        }
        let a = &self.boundary[i];
        let b = &self.boundary[(i + 1) % n];
        let end = if i + 1 == n { 1.0 } else { b.arc };
        let t = (s - a.arc) / (end - a.arc);
        a.position.lerp(b.position, t)
    }
}

/// Interior angles with origins, in boundary order.
pub fn boundary_angle_profile(net: &Net) -> Result<Vec<(f64, usize)>, Error> {
    net.require_simple()?;
    Ok(net.boundary.iter().map(|b| (b.angle, b.origin)).collect())
}

/// Develop `p` cut along `path` into the plane.
///
/// A development whose boundary self-intersects is still returned, with
/// [`Net::is_simple`] false.
pub fn unfold(p: &Polyhedron, path: &CutPath) -> Result<Net, Error> {
    if path.solid != p.solid {
        return Err(Error::InvalidCutPath(format!(
            "path is for the {}, not the {}",
            path.solid, p.solid
        )));
    }
    let path = CutPath::new(p, path.vertices.clone())?;
    let cut: BTreeSet<(usize, usize)> = path.edges().into_iter().collect();
    let is_cut = |a: usize, b: usize| cut.contains(&(a.min(b), a.max(b)));
    let face_angle = p.face_angle();
    let exterior = PI - face_angle;

    let mut placements: Vec<Option<Vec<Vec2>>> = vec![None; p.num_faces()];
    let mut dual_tree = Vec::new();
    let root = 0;
    placements[root] = Some(regular_polygon(
        p.faces[root].len(),
        Vec2::ZERO,
        Vec2::new(1.0, 0.0),
        exterior,
    ));
    let mut queue = VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        let face = &p.faces[f];
        let n = face.len();
        for i in 0..n {
            let (a, b) = (face[i], face[(i + 1) % n]);
            if is_cut(a, b) {
                continue;
            }
            let g = p.face_left_of(b, a).expect("closed surface");
            if placements[g].is_some() {
                continue;
            }
            let pf = placements[f].as_ref().unwrap();
            let (pa, pb) = (pf[i], pf[(i + 1) % n]);
            let gface = &p.faces[g];
            let m = gface.len();
            let j = gface.iter().position(|&v| v == b).unwrap();
            // g runs b -> a counter-clockwise; lay it out from there and rotate
            // the vertex list back into g's own order.
            let ring = regular_polygon(m, pb, pa - pb, exterior);
            let mut placed = vec![Vec2::ZERO; m];
            for (k, q) in ring.into_iter().enumerate() {
                placed[(j + k) % m] = q;
            }
            placements[g] = Some(placed);
            dual_tree.push((f, g));
            queue.push_back(g);
        }
    }
    if placements.iter().any(Option::is_none) || dual_tree.len() + 1 != p.num_faces() {
        return Err(Error::InvalidCutPath(
            "uncut edges do not connect all faces".into(),
        ));
    }
    let placements: Vec<Vec<Vec2>> = placements.into_iter().map(Option::unwrap).collect();
    let pos = |f: usize, v: usize| {
        let i = p.faces[f].iter().position(|&x| x == v).unwrap();
        placements[f][i]
    };
    let next_in_face = |f: usize, v: usize| {
        let face = &p.faces[f];
        let i = face.iter().position(|&x| x == v).unwrap();
        face[(i + 1) % face.len()]
    };

    let v0 = path.vertices[0];
    let v1 = path.vertices[1];
    let start = (p.face_left_of(v0, v1).unwrap(), v0, v1);
    let mut half_edges = vec![start];
    let mut corner_counts = Vec::new();
    let expected = 2 * (p.num_vertices() - 1);
    loop {
        let (f, _u, w) = *half_edges.last().unwrap();
        let mut g = f;
        let mut z = next_in_face(g, w);
        let mut count = 1;
        while !is_cut(w, z) {
            g = p.face_left_of(z, w).unwrap();
            z = next_in_face(g, w);
            count += 1;
        }
        corner_counts.push(count);
        let next = (g, w, z);
        if next == start {
            break;
        }
        if half_edges.len() > expected {
            return Err(Error::InvalidCutPath("boundary walk did not close".into()));
        }
        half_edges.push(next);
    }
    // corner_counts[k] is the angle at the end of half-edge k, i.e. corner k+1.
    corner_counts.rotate_right(1);

    let n = half_edges.len();
    let lengths: Vec<f64> = half_edges
        .iter()
        .map(|&(f, u, w)| pos(f, u).dist(pos(f, w)))
        .collect();
    let perimeter: f64 = lengths.iter().sum();
    let mut arc = 0.0;
    let mut boundary = Vec::with_capacity(n);
    for k in 0..n {
        let (f, u, _) = half_edges[k];
        boundary.push(BoundaryVertex {
            position: pos(f, u),
            angle: corner_counts[k] as f64 * face_angle,
            arc: arc / perimeter,
            origin: u,
            face_corners: corner_counts[k],
        });
        arc += lengths[k];
    }
    let index: HashMap<(usize, usize), usize> = half_edges
        .iter()
        .enumerate()
        .map(|(k, &(_, u, w))| ((u, w), k))
        .collect();
    let edges = half_edges
        .iter()
        .map(|&(f, u, w)| BoundaryEdge {
            face: f,
            from: u,
            to: w,
            twin: index[&(w, u)],
        })
        .collect();

    let polygon: Vec<Vec2> = boundary.iter().map(|b| b.position).collect();
    let overlap = find_self_intersection(&polygon);
    Ok(Net {
        path,
        placements,
        boundary,
        edges,
        perimeter,
        dual_tree,
        face_angle,
        overlap,
    })
}

/// Vertices of a unit regular polygon, counter-clockwise, starting at `start`
/// with its first edge along `dir`.
fn regular_polygon(n: usize, start: Vec2, dir: Vec2, exterior: f64) -> Vec<Vec2> {
    let mut out = Vec::with_capacity(n);
    let mut p = start;
    let mut d = dir.normalized();
    for _ in 0..n {
        out.push(p);
        p = p + d;
        d = d.rotate(exterior);
    }
    out
}

fn find_self_intersection(poly: &[Vec2]) -> Option<String> {
    let n = poly.len();
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = (poly[j], poly[(j + 1) % n]);
            if geom::segments_touch(a, b, c, d, EPS_LEN * 100.0) {
                return Some(format!("boundary edges {i} and {j} intersect"));
            }
        }
    }
    None
}

#[derive(Serialize, Deserialize)]
pub struct NetJson {
    pub provenance: CutPath,
    pub simple: bool,
    pub perimeter: f64,
    pub faces: Vec<Vec<[f64; 2]>>,
    pub boundary: Vec<BoundaryJson>,
}

#[derive(Serialize, Deserialize)]
pub struct BoundaryJson {
    pub x: f64,
    pub y: f64,
    pub angle: f64,
    pub arc: f64,
    pub origin: usize,
}

impl From<&Net> for NetJson {
    fn from(net: &Net) -> Self {
        NetJson {
            provenance: net.path.clone(),
            simple: net.is_simple(),
            perimeter: net.perimeter,
            faces: net
                .placements
                .iter()
                .map(|f| f.iter().map(|p| [p.x, p.y]).collect())
                .collect(),
            boundary: net
                .boundary
                .iter()
                .map(|b| BoundaryJson {
                    x: b.position.x,
                    y: b.position.y,
                    angle: b.angle,
                    arc: b.arc,
                    origin: b.origin,
                })
                .collect(),
        }
    }
}
