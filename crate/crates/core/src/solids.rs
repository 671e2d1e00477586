//! The five Platonic solids with unit edges, plus graph queries on their
//! 1-skeletons.

use crate::geom::{Vec3, EPS_LEN};
use crate::Error;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solid {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl Solid {
    pub const ALL: [Solid; 5] = [
        Solid::Tetrahedron,
        Solid::Cube,
        Solid::Octahedron,
        Solid::Dodecahedron,
        Solid::Icosahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Solid::Tetrahedron => "tetrahedron",
            Solid::Cube => "cube",
            Solid::Octahedron => "octahedron",
            Solid::Dodecahedron => "dodecahedron",
            Solid::Icosahedron => "icosahedron",
        }
    }

    /// Number of sides of each face.
    pub fn face_sides(self) -> usize {
        match self {
            Solid::Tetrahedron | Solid::Octahedron | Solid::Icosahedron => 3,
            Solid::Cube => 4,
            Solid::Dodecahedron => 5,
        }
    }

    /// Interior angle of a face corner: π/3, π/2 or 3π/5.
    pub fn face_angle(self) -> f64 {
        let n = self.face_sides() as f64;
        PI * (n - 2.0) / n
    }

    /// Faces meeting at each vertex.
    pub fn vertex_degree(self) -> usize {
        match self {
            Solid::Tetrahedron | Solid::Cube | Solid::Dodecahedron => 3,
            Solid::Octahedron => 4,
            Solid::Icosahedron => 5,
        }
    }

    /// Surface area for unit edge length.
    pub fn surface_area(self) -> f64 {
        let s3 = 3f64.sqrt();
        match self {
            Solid::Tetrahedron => s3,
            Solid::Cube => 6.0,
            Solid::Octahedron => 2.0 * s3,
            Solid::Dodecahedron => 3.0 * (25.0 + 10.0 * 5f64.sqrt()).sqrt(),
            Solid::Icosahedron => 5.0 * s3,
        }
    }
}

impl fmt::Display for Solid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Solid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Solid::ALL
            .into_iter()
            .find(|k| k.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownSolid(s.to_string()))
    }
}

/// Combinatorial and metric model of a Platonic solid, unit edge length.
///
/// Faces are listed counter-clockwise when seen from outside, so every edge
/// is traversed once in each direction.
#[derive(Clone, Debug, Serialize)]
pub struct Polyhedron {
    pub solid: Solid,
    pub vertices: Vec<Vec3>,
    pub faces: Vec<Vec<usize>>,
    #[serde(skip)]
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
}

/// Build the named solid from its standard coordinates.
pub fn build_solid(name: &str) -> Result<Polyhedron, Error> {
    Ok(Polyhedron::new(name.parse()?))
}

impl Polyhedron {
    pub fn new(solid: Solid) -> Self {
        let raw = raw_coordinates(solid);
        let edge = min_pair_distance(&raw);
        let vertices: Vec<Vec3> = raw.iter().map(|v| v.scale(1.0 / edge)).collect();
        let faces = hull_faces(&vertices);
        let mut edge_set = BTreeSet::new();
        for f in &faces {
            for i in 0..f.len() {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                edge_set.insert((a.min(b), a.max(b)));
            }
        }
        let edges: Vec<(usize, usize)> = edge_set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Polyhedron {
            solid,
            vertices,
            faces,
            edges,
            adjacency,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Undirected edges as sorted index pairs, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        a < self.num_vertices() && self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn face_angle(&self) -> f64 {
        self.solid.face_angle()
    }

    /// Total face angle incident to every vertex.
    pub fn vertex_angle(&self) -> f64 {
        self.solid.face_angle() * self.solid.vertex_degree() as f64
    }

    /// Angular defect `2π − vertex_angle`, identical at every vertex.
    pub fn vertex_curvature(&self) -> f64 {
        2.0 * PI - self.vertex_angle()
    }

    fn check_vertex(&self, v: usize) -> Result<(), Error> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: v,
                count: self.num_vertices(),
            })
        }
    }

    /// BFS distances from `source` in the 1-skeleton.
    pub fn distances_from(&self, source: usize) -> Result<Vec<usize>, Error> {
        self.check_vertex(source)?;
        let mut dist = vec![usize::MAX; self.num_vertices()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Shortest-path edge count between `u` and `v`.
    pub fn graph_distance(&self, u: usize, v: usize) -> Result<usize, Error> {
        self.check_vertex(v)?;
        Ok(self.distances_from(u)?[v])
    }

    pub fn diameter(&self) -> usize {
        (0..self.num_vertices())
            .map(|u| {
                self.distances_from(u)
                    .unwrap()
                    .into_iter()
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    /// Faces containing `v`, in face index order.
    pub fn faces_at(&self, v: usize) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| self.faces[f].contains(&v))
            .collect()
    }

    /// The face to the left of the directed edge `a -> b`, i.e. the face
    /// whose counter-clockwise cycle contains `a` immediately followed by `b`.
    pub fn face_left_of(&self, a: usize, b: usize) -> Option<usize> {
        self.faces.iter().position(|f| {
            let n = f.len();
            (0..n).any(|i| f[i] == a && f[(i + 1) % n] == b)
        })
    }

    /// Graph automorphisms of the 1-skeleton as vertex permutations. For the
    /// Platonic solids these coincide with the full symmetry group, reflections
    /// included.
    pub fn symmetries(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut out = Vec::new();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        // Order vertices so each one after the first is adjacent to an earlier one.
        let order: Vec<usize> = {
            let d = self.distances_from(0).unwrap();
            let mut o: Vec<usize> = (0..n).collect();
            o.sort_by_key(|&v| (d[v], v));
            o
        };
        self.extend_automorphism(&order, 0, &mut map, &mut used, &mut out);
        out.sort();
        out
    }

    fn extend_automorphism(
        &self,
        order: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == order.len() {
            out.push(map.to_vec());
            return;
        }
        let v = order[depth];
        for img in 0..self.num_vertices() {
            if used[img] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| self.is_edge(u, v) == self.is_edge(map[u], img));
            if !consistent {
                continue;
            }
            map[v] = img;
            used[img] = true;
            self.extend_automorphism(order, depth + 1, map, used, out);
            used[img] = false;
            map[v] = usize::MAX;
        }
    }
}

fn raw_coordinates(solid: Solid) -> Vec<Vec3> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut pts = Vec::new();
    match solid {
        Solid::Tetrahedron => {
            pts.extend([
                Vec3::new(1.0, 1.0, 1.0),
                Vec3::new(1.0, -1.0, -1.0),
                Vec3::new(-1.0, 1.0, -1.0),
                Vec3::new(-1.0, -1.0, 1.0),
            ]);
        }
        Solid::Cube => {
            for x in [-1.0, 1.0] {
                for y in [-1.0, 1.0] {
                    for z in [-1.0, 1.0] {
                        pts.push(Vec3::new(x, y, z));
                    }
                }
            }
        }
        Solid::Octahedron => {
            pts.extend([
                Vec3::new(0.0, 0.0, 1.0),
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(0.0, 1.0, 0.0),
                Vec3::new(-1.0, 0.0, 0.0),
                Vec3::new(0.0, -1.0, 0.0),
                Vec3::new(0.0, 0.0, -1.0),
            ]);
        }
        Solid::Icosahedron => {
            for a in [-1.0, 1.0] {
                for b in [-phi, phi] {
                    pts.push(Vec3::new(0.0, a, b));
                    pts.push(Vec3::new(a, b, 0.0));
                    pts.push(Vec3::new(b, 0.0, a));
                }
            }
        }
        Solid::Dodecahedron => {
            for x in [-1.0, 1.0] {
                for y in [-1.0, 1.0] {
                    for z in [-1.0, 1.0] {
                        pts.push(Vec3::new(x, y, z));
                    }
                }
            }
            for a in [-1.0 / phi, 1.0 / phi] {
                for b in [-phi, phi] {
                    pts.push(Vec3::new(0.0, a, b));
                    pts.push(Vec3::new(a, b, 0.0));
                    pts.push(Vec3::new(b, 0.0, a));
                }
            }
        }
    }
    pts
}

fn min_pair_distance(pts: &[Vec3]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            best = best.min((pts[i] - pts[j]).norm());
        }
    }
    best
}

/// Faces of the convex hull of points in convex position, each ordered
/// counter-clockwise seen from outside and starting at its smallest index.
fn hull_faces(pts: &[Vec3]) -> Vec<Vec<usize>> {
    let n = pts.len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
                if normal.norm() < EPS_LEN {
                    continue;
                }
                let side = |p: Vec3| normal.dot(p - pts[i]);
                let mut on_plane = Vec::new();
                let (mut pos, mut neg) = (false, false);
                for (m, &p) in pts.iter().enumerate() {
                    let s = side(p);
                    if s.abs() < 1e-7 {
                        on_plane.push(m);
                    } else if s > 0.0 {
                        pos = true;
                    } else {
                        neg = true;
                    }
                }
                if pos && neg {
                    continue;
                }
                if !seen.insert(on_plane.clone()) {
                    continue;
                }
                // outward normal points away from the remaining points
                let outward = if pos { normal.scale(-1.0) } else { normal };
                faces.push(order_face(pts, &on_plane, outward));
            }
        }
    }
    faces.sort();
    faces
}

fn order_face(pts: &[Vec3], idx: &[usize], outward: Vec3) -> Vec<usize> {
    let c = idx
        .iter()
        .fold(Vec3::default(), |acc, &i| acc + pts[i])
        .scale(1.0 / idx.len() as f64);
    let u = pts[idx[0]] - c;
    let w = outward.cross(u);
    let mut with_angle: Vec<(f64, usize)> = idx
        .iter()
        .map(|&i| {
            let d = pts[i] - c;
            (d.dot(w).atan2(d.dot(u)), i)
        })
        .collect();
    with_angle.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut order: Vec<usize> = with_angle.into_iter().map(|(_, i)| i).collect();
    let start = order
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .map(|(p, _)| p)
        .unwrap();
    order.rotate_left(start);
    order
}
