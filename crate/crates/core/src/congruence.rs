//! Congruence of nets in the plane and of cut paths in space.
//!
//! A polygon is encoded as the cyclic sequence of quantized (edge length,
//! turning angle) pairs. The encoding is the lexicographically least
//! rotation over both the polygon and its mirror image. Two polygons with the same corners are congruent exactly when
//! these signatures agree. Corners with zero turning are kept, which is
//! harmless for nets because every net edge has unit length.

use crate::geom::{self, Vec2};
use crate::hampath::CutPath;
use crate::solids::Polyhedron;
use crate::unfold::Net;
use crate::Error;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::hash::Hash;

/// Grid step for edge lengths.
pub const LENGTH_QUANTUM: f64 = 1e-6;
/// Grid step for turning angles, radians.
pub const ANGLE_QUANTUM: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalSignature(pub Vec<(i64, i64)>);

impl CanonicalSignature {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn quantize(x: f64, q: f64) -> i64 {
    (x / q).round() as i64
}

fn least_rotation(seq: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let n = seq.len();
    (0..n)
        .map(|r| {
            seq[r..]
                .iter()
                .chain(&seq[..r])
                .copied()
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

/// Signature of a simple polygon given in either orientation.
pub fn polygon_signature(points: &[Vec2]) -> CanonicalSignature {
    let mut pts = points.to_vec();
    if geom::signed_area(&pts) < 0.0 {
        pts.reverse();
    }
    let n = pts.len();
    // edge i runs p_i -> p_{i+1}; turn i is taken at p_{i+1}
    let lengths: Vec<i64> = (0..n)
        .map(|i| quantize(pts[i].dist(pts[(i + 1) % n]), LENGTH_QUANTUM))
        .collect();
    let turns: Vec<i64> = (0..n)
        .map(|i| {
            let turn = geom::turning_angle(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]);
            quantize(turn, ANGLE_QUANTUM)
        })
        .collect();
    let direct: Vec<(i64, i64)> = (0..n).map(|i| (lengths[i], turns[i])).collect();
    // the mirror image, traversed counter-clockwise, visits the edges in
    // reverse with each edge now followed by the turn that preceded it
    let mirror: Vec<(i64, i64)> = (0..n)
        .rev()
        .map(|i| (lengths[i], turns[(i + n - 1) % n]))
        .collect();
    CanonicalSignature(least_rotation(&direct).min(least_rotation(&mirror)))
}

/// Signature of a net's boundary.
pub fn signature(net: &Net) -> Result<CanonicalSignature, Error> {
    net.require_simple()?;
    Ok(polygon_signature(&net.polygon()))
}

/// A set of mutually congruent inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Class<K> {
    pub key: K,
    /// Indices into the input, in input order; the first is the representative.
    pub members: Vec<usize>,
}

pub type CongruenceClass = Class<CanonicalSignature>;
pub type PathClass = Class<Vec<usize>>;

impl<K> Class<K> {
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Partition nets by signature, classes ordered by first occurrence.
pub fn dedupe(nets: &[Net]) -> Result<Vec<CongruenceClass>, Error> {
    let sigs = nets
        .par_iter()
        .map(signature)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(group(sigs))
}

fn group<K: Clone + Eq + Hash>(keys: Vec<K>) -> Vec<Class<K>> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut out: Vec<Class<K>> = Vec::new();
    for (i, k) in keys.into_iter().enumerate() {
        match index.get(&k) {
            Some(&c) => out[c].members.push(i),
            None => {
                index.insert(k.clone(), out.len());
                out.push(Class {
                    key: k,
                    members: vec![i],
                });
            }
        }
    }
    out
}

/// Least image of a cut path under the solid's symmetries and reversal.
/// Paths congruent in space have equal canonical forms.
pub fn canonical_path(path: &CutPath, symmetries: &[Vec<usize>]) -> Vec<usize> {
    symmetries
        .iter()
        .flat_map(|g| {
            let forward: Vec<usize> = path.vertices.iter().map(|&v| g[v]).collect();
            let mut backward = forward.clone();
            backward.reverse();
            [forward, backward]
        })
        .min()
        .unwrap_or_default()
}

/// Partition paths into classes of paths congruent in space.
pub fn path_classes(p: &Polyhedron, paths: &[CutPath]) -> Vec<PathClass> {
    let syms = p.symmetries();
    let keys: Vec<Vec<usize>> = paths.par_iter().map(|c| canonical_path(c, &syms)).collect();
    group(keys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Isometry;
    use crate::hampath::enumerate_paths;
    use crate::solids::Solid;
    use crate::unfold::unfold;
    use proptest::prelude::*;

    fn all_nets(solid: Solid) -> Vec<Net> {
        let p = Polyhedron::new(solid);
        enumerate_paths(&p)
            .iter()
            .map(|c| unfold(&p, c).unwrap())
            .collect()
    }

    /// Orbit count by Burnside's lemma: average number of undirected paths
    /// fixed by each symmetry.
    fn burnside(p: &Polyhedron) -> usize {
        let paths = enumerate_paths(p);
        let syms = p.symmetries();
        let fixed: usize = syms
            .iter()
            .map(|g| {
                paths
                    .iter()
                    .filter(|c| {
                        let img: Vec<usize> = c.vertices.iter().map(|&v| g[v]).collect();
                        let mut rev = img.clone();
                        rev.reverse();
                        img == c.vertices || rev == c.vertices
                    })
                    .count()
            })
            .sum();
        assert_eq!(fixed % syms.len(), 0);
        fixed / syms.len()
    }

    #[test]
    fn path_classes_agree_with_burnside() {
        for solid in Solid::ALL {
            let p = Polyhedron::new(solid);
            let classes = path_classes(&p, &enumerate_paths(&p));
            assert_eq!(classes.len(), burnside(&p), "{solid}");
        }
    }

    #[test]
    fn path_class_counts() {
        let count = |s| {
            let p = Polyhedron::new(s);
            path_classes(&p, &enumerate_paths(&p)).len()
        };
        assert_eq!(count(Solid::Tetrahedron), 1);
        assert_eq!(count(Solid::Cube), 3);
        // frozen from the Burnside oracle
        assert_eq!(count(Solid::Octahedron), 4);
        assert_eq!(count(Solid::Dodecahedron), 18);
        assert_eq!(count(Solid::Icosahedron), 340);
    }

    #[test]
    fn net_classes_match_path_classes_on_small_solids() {
        for (solid, want) in [
            (Solid::Tetrahedron, 1),
            (Solid::Cube, 3),
            (Solid::Octahedron, 4),
        ] {
            assert_eq!(dedupe(&all_nets(solid)).unwrap().len(), want, "{solid}");
        }
    }

    #[test]
    fn cube_s_and_z_differ() {
        let p = Polyhedron::new(Solid::Cube);
        let net = |v: &[usize]| unfold(&p, &CutPath::new(&p, v.to_vec()).unwrap()).unwrap();
        let s = signature(&net(&[0, 1, 3, 2, 6, 4, 5, 7])).unwrap();
        let z = signature(&net(&[0, 1, 3, 7, 5, 4, 6, 2])).unwrap();
        assert_ne!(s, z);
    }

    #[test]
    fn reversed_path_gives_congruent_net() {
        let p = Polyhedron::new(Solid::Icosahedron);
        for c in enumerate_paths(&p).iter().step_by(997) {
            let a = signature(&unfold(&p, c).unwrap()).unwrap();
            let b = signature(&unfold(&p, &c.reversed()).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn dedupe_is_idempotent() {
        let nets = all_nets(Solid::Octahedron);
        let classes = dedupe(&nets).unwrap();
        let reps: Vec<Net> = classes
            .iter()
            .map(|c| nets[c.representative()].clone())
            .collect();
        let again = dedupe(&reps).unwrap();
        assert_eq!(again.len(), reps.len());
        assert!(again.iter().all(|c| c.size() == 1));
        assert_eq!(classes.iter().map(|c| c.size()).sum::<usize>(), nets.len());
    }

    #[test]
    fn square_is_not_a_rhombus() {
        let sq = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ];
        let rh = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.5, 0.8660254037844386),
            Vec2::new(0.5, 0.8660254037844386),
        ];
        assert_ne!(polygon_signature(&sq), polygon_signature(&rh));
    }

    fn l_shape() -> Vec<Vec2> {
        [
            (0.0, 0.0),
            (2.0, 0.0),
            (2.0, 1.0),
            (1.0, 1.0),
            (1.0, 3.0),
            (0.0, 3.0),
        ]
        .iter()
        .map(|&(x, y)| Vec2::new(x, y))
        .collect()
    }

    proptest! {
        #[test]
        fn signature_ignores_rigid_motions(angle in -3.2f64..3.2, tx in -5.0f64..5.0, ty in -5.0f64..5.0, reflect: bool, shift in 0usize..6) {
            let base = l_shape();
            let g = Isometry { reflect, angle, tx, ty };
            let mut moved: Vec<Vec2> = base.iter().map(|&q| g.apply(q)).collect();
            moved.rotate_left(shift);
            prop_assert_eq!(polygon_signature(&base), polygon_signature(&moved));
        }

        #[test]
        fn class_count_ignores_input_order(seed in 0u64..1000) {
            let mut nets = all_nets(Solid::Cube);
            // deterministic shuffle
            let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            for i in (1..nets.len()).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                nets.swap(i, (state >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(dedupe(&nets).unwrap().len(), 3);
        }
    }
}
