//! Exhaustive enumeration of Hamiltonian paths and cycles on the 1-skeleton
//! of a Platonic solid.
//!
//! Paths are *labeled*: two paths that differ only by a symmetry of the solid
//! are distinct. Each undirected path is reported once, oriented so that its
//! first vertex has the smaller index.

use crate::solids::{Polyhedron, Solid};
use crate::Error;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CutPath {
    pub solid: Solid,
    pub vertices: Vec<usize>,
}

impl CutPath {
    /// Validate `vertices` as a Hamiltonian path of `p`.
    pub fn new(p: &Polyhedron, vertices: Vec<usize>) -> Result<Self, Error> {
        let n = p.num_vertices();
        if vertices.len() != n {
            return Err(Error::InvalidCutPath(format!(
                "visits {} vertices, the {} has {n}",
                vertices.len(),
                p.solid
            )));
        }
        let mut seen = vec![false; n];
        for &v in &vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { index: v, count: n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidCutPath(format!("vertex {v} repeated")));
            }
        }
        for w in vertices.windows(2) {
            if !p.is_edge(w[0], w[1]) {
                return Err(Error::InvalidCutPath(format!(
                    "{} and {} are not adjacent",
                    w[0], w[1]
                )));
            }
        }
        Ok(CutPath {
            solid: p.solid,
            vertices,
        })
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    pub fn reversed(&self) -> CutPath {
        let mut v = self.vertices.clone();
        v.reverse();
        CutPath {
            solid: self.solid,
            vertices: v,
        }
    }

    /// Path edges as sorted pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.vertices
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .collect()
    }

    /// Same path oriented from its smaller endpoint.
    pub fn canonical(&self) -> CutPath {
        let (a, b) = self.endpoints();
        if a <= b {
            self.clone()
        } else {
            self.reversed()
        }
    }
}

struct Search<'a> {
    p: &'a Polyhedron,
    path: Vec<usize>,
    visited: Vec<bool>,
}

impl Search<'_> {
    /// Depth-first extension of `path`; `accept` sees each complete path.
    fn run(&mut self, accept: &mut dyn FnMut(&[usize])) {
        if self.path.len() == self.p.num_vertices() {
            accept(&self.path);
            return;
        }
        let last = *self.path.last().unwrap();
        for &w in self.p.neighbors(last) {
            if self.visited[w] {
                continue;
            }
            self.visited[w] = true;
            self.path.push(w);
            self.run(accept);
            self.path.pop();
            self.visited[w] = false;
        }
    }
}

fn search_from(p: &Polyhedron, start: usize, accept: &mut dyn FnMut(&[usize])) {
    let mut visited = vec![false; p.num_vertices()];
    visited[start] = true;
    let mut s = Search {
        p,
        path: vec![start],
        visited,
    };
    s.run(accept);
}

/// All labeled Hamiltonian paths, sorted lexicographically.
pub fn enumerate_paths(p: &Polyhedron) -> Vec<CutPath> {
    let mut all: Vec<CutPath> = (0..p.num_vertices())
        .into_par_iter()
        .flat_map_iter(|start| {
            let mut found = Vec::new();
            search_from(p, start, &mut |path| {
                if path[0] < *path.last().unwrap() {
                    found.push(path.to_vec());
                }
            });
            found.into_iter().map(|vertices| CutPath {
                solid: p.solid,
                vertices,
            })
        })
        .collect();
    all.sort();
    all
}

/// All labeled Hamiltonian paths with endpoint set `{u, v}`, oriented from
/// the smaller endpoint and sorted.
pub fn enumerate_paths_between(p: &Polyhedron, u: usize, v: usize) -> Result<Vec<CutPath>, Error> {
    let n = p.num_vertices();
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { index: x, count: n });
        }
    }
    if u == v {
        return Err(Error::SameEndpoints);
    }
    let (a, b) = (u.min(v), u.max(v));
    let mut found = Vec::new();
    search_from(p, a, &mut |path| {
        if *path.last().unwrap() == b {
            found.push(CutPath {
                solid: p.solid,
                vertices: path.to_vec(),
            });
        }
    });
    found.sort();
    Ok(found)
}

/// One endpoint pair per graph distance `d = 1..=diameter`: vertex 0 and the
/// smallest vertex at distance `d` from it. Returned as `(d, 0, v)`.
pub fn distance_class_pairs(p: &Polyhedron) -> Vec<(usize, usize, usize)> {
    let dist = p.distances_from(0).expect("vertex 0 exists");
    (1..=p.diameter())
        .filter_map(|d| dist.iter().position(|&x| x == d).map(|v| (d, 0, v)))
        .collect()
}

/// Number of undirected Hamiltonian cycles containing edge `{a, b}`.
///
/// Removing the edge from such a cycle leaves a Hamiltonian path from `a` to
/// `b`, and every such path closes up through the edge.
pub fn count_cycles_through_edge(p: &Polyhedron, a: usize, b: usize) -> Result<usize, Error> {
    if a >= p.num_vertices() || b >= p.num_vertices() || !p.is_edge(a, b) {
        return Err(Error::NotAnEdge(a, b));
    }
    Ok(enumerate_paths_between(p, a, b)?.len())
}

/// All undirected Hamiltonian cycles, each as a vertex sequence starting at 0
/// with its second vertex smaller than its last.
pub fn enumerate_cycles(p: &Polyhedron) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    search_from(p, 0, &mut |path| {
        let last = *path.last().unwrap();
        if p.is_edge(last, 0) && path[1] < last {
            out.push(path.to_vec());
        }
    });
    out.sort();
    out
}
