//! Small planar and spatial geometry kit used across the crate.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

/// Tolerance for lengths and coordinates.
pub const EPS_LEN: f64 = 1e-9;
/// Tolerance for angles, in radians.
pub const EPS_ANG: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn from_angle(theta: f64) -> Self {
        Vec2::new(theta.cos(), theta.sin())
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn rotate(self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        Vec2::new(self.x / n, self.y / n)
    }

    pub fn lerp(self, o: Vec2, t: f64) -> Self {
        self + (o - self) * t
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

/// Planar isometry `p -> R(angle) * S * p + (tx, ty)` where `S` mirrors
/// across the x-axis when `reflect` is set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub reflect: bool,
    pub angle: f64,
    pub tx: f64,
    pub ty: f64,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        reflect: false,
        angle: 0.0,
        tx: 0.0,
        ty: 0.0,
    };

    pub fn apply(&self, p: Vec2) -> Vec2 {
        let q = if self.reflect {
            Vec2::new(p.x, -p.y)
        } else {
            p
        };
        q.rotate(self.angle) + Vec2::new(self.tx, self.ty)
    }

    /// Linear part applied to a direction.
    pub fn apply_dir(&self, d: Vec2) -> Vec2 {
        let q = if self.reflect {
            Vec2::new(d.x, -d.y)
        } else {
            d
        };
        q.rotate(self.angle)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let t = self.apply(Vec2::new(other.tx, other.ty));
        let angle = if self.reflect {
            self.angle - other.angle
        } else {
            self.angle + other.angle
        };
        Isometry {
            reflect: self.reflect ^ other.reflect,
            angle: normalize_angle(angle),
            tx: t.x,
            ty: t.y,
        }
    }

    pub fn inverse(&self) -> Isometry {
        // p = R S q + t  =>  q = S^-1 R^-1 (p - t)
        let lin = if self.reflect {
            Isometry {
                reflect: true,
                angle: self.angle,
                tx: 0.0,
                ty: 0.0,
            }
        } else {
            Isometry {
                reflect: false,
                angle: -self.angle,
                tx: 0.0,
                ty: 0.0,
            }
        };
        let t = lin.apply(Vec2::new(-self.tx, -self.ty));
        Isometry {
            tx: t.x,
            ty: t.y,
            ..lin
        }
    }

    /// Reflection across the line through `a` and `b`.
    pub fn reflection_across(a: Vec2, b: Vec2) -> Isometry {
        let phi = (b - a).angle();
        // R(phi) S R(-phi) = reflect with angle 2 phi, then fix the translation.
        let lin = Isometry {
            reflect: true,
            angle: normalize_angle(2.0 * phi),
            tx: 0.0,
            ty: 0.0,
        };
        let moved = lin.apply(a);
        Isometry {
            tx: a.x - moved.x,
            ty: a.y - moved.y,
            ..lin
        }
    }

    /// The unique direct or mirrored isometry carrying `a0 -> a1` with
    /// direction `da0` mapped onto `da1`.
    pub fn from_frame(a0: Vec2, da0: Vec2, a1: Vec2, da1: Vec2, reflect: bool) -> Isometry {
        let src = if reflect {
            Vec2::new(da0.x, -da0.y)
        } else {
            da0
        };
        let angle = normalize_angle(da1.angle() - src.angle());
        let lin = Isometry {
            reflect,
            angle,
            tx: 0.0,
            ty: 0.0,
        };
        let m = lin.apply(a0);
        Isometry {
            tx: a1.x - m.x,
            ty: a1.y - m.y,
            ..lin
        }
    }

    pub fn approx_eq(&self, o: &Isometry, tol: f64) -> bool {
        let probes = [Vec2::ZERO, Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)];
        probes
            .iter()
            .all(|&p| self.apply(p).dist(o.apply(p)) <= tol)
    }
}

/// Wrap into `(-π, π]`.
pub fn normalize_angle(a: f64) -> f64 {
    let mut r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}

/// Signed area, positive for counter-clockwise order.
pub fn signed_area(poly: &[Vec2]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| poly[i].cross(poly[(i + 1) % n]))
        .sum::<f64>()
        * 0.5
}

pub fn perimeter(poly: &[Vec2]) -> f64 {
    let n = poly.len();
    (0..n).map(|i| poly[i].dist(poly[(i + 1) % n])).sum()
}

/// Interior angle at each vertex of a counter-clockwise polygon, in `(0, 2π)`.
pub fn interior_angles(poly: &[Vec2]) -> Vec<f64> {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let prev = poly[(i + n - 1) % n];
            let cur = poly[i];
            let next = poly[(i + 1) % n];
            let turn = turning_angle(prev, cur, next);
            PI - turn
        })
        .collect()
}

/// Signed exterior turning angle at `cur`, in `(-π, π]`.
pub fn turning_angle(prev: Vec2, cur: Vec2, next: Vec2) -> f64 {
    let a = cur - prev;
    let b = next - cur;
    a.cross(b).atan2(a.dot(b))
}

/// Distance from `p` to segment `ab`.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Crossing-number point in polygon test. Points on the boundary give an
/// unspecified answer; callers filter those with [`point_segment_distance`].
pub fn point_in_polygon(p: Vec2, poly: &[Vec2]) -> bool {
    let n = poly.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

pub fn distance_to_boundary(p: Vec2, poly: &[Vec2]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| point_segment_distance(p, poly[i], poly[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

/// Inside or within `tol` of the boundary.
pub fn point_in_polygon_tol(p: Vec2, poly: &[Vec2], tol: f64) -> bool {
    distance_to_boundary(p, poly) <= tol || point_in_polygon(p, poly)
}

/// Whether closed segments `ab` and `cd` share any point (within `tol`).
pub fn segments_touch(a: Vec2, b: Vec2, c: Vec2, d: Vec2, tol: f64) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol))
        && ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol))
    {
        return true;
    }
    point_segment_distance(a, c, d) <= tol
        || point_segment_distance(b, c, d) <= tol
        || point_segment_distance(c, a, b) <= tol
        || point_segment_distance(d, a, b) <= tol
}

/// Whether `ab` and `cd` cross at a single point interior to both.
pub fn segments_cross_properly(a: Vec2, b: Vec2, c: Vec2, d: Vec2, tol: f64) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    ((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol))
        && ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol))
}

fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - a)
}

/// Clip a convex or simple polygon against the half-plane left of `a -> b`.
pub fn clip_half_plane(poly: &[Vec2], a: Vec2, b: Vec2) -> Vec<Vec2> {
    let dir = (b - a).normalized();
    let side = |p: Vec2| dir.cross(p - a);
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let sp = side(p);
        let sq = side(q);
        if sp >= -EPS_LEN {
            out.push(p);
        }
        if (sp > EPS_LEN && sq < -EPS_LEN) || (sp < -EPS_LEN && sq > EPS_LEN) {
            let t = sp / (sp - sq);
            out.push(p.lerp(q, t));
        }
    }
    dedup_ring(out)
}

/// Intersection of two convex counter-clockwise polygons.
pub fn clip_convex(subject: &[Vec2], clip: &[Vec2]) -> Vec<Vec2> {
    let n = clip.len();
    let mut out = subject.to_vec();
    for i in 0..n {
        if out.is_empty() {
            break;
        }
        out = clip_half_plane(&out, clip[i], clip[(i + 1) % n]);
    }
    out
}

/// Drop consecutive duplicates and collinear points from a ring.
pub fn dedup_ring(pts: Vec<Vec2>) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last().is_none_or(|q| q.dist(p) > EPS_LEN * 10.0) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].dist(*out.last().unwrap()) <= EPS_LEN * 10.0 {
        out.pop();
    }
    let mut changed = true;
    while changed && out.len() >= 3 {
        changed = false;
        let n = out.len();
        for i in 0..n {
            let prev = out[(i + n - 1) % n];
            let next = out[(i + 1) % n];
            if orient(prev, out[i], next).abs() <= 1e-10
                && (out[i] - prev).dot(next - out[i]) >= 0.0
            {
                out.remove(i);
                changed = true;
                break;
            }
        }
    }
    out
}

pub fn centroid(poly: &[Vec2]) -> Vec2 {
    let n = poly.len() as f64;
    let s = poly.iter().fold(Vec2::ZERO, |acc, &p| acc + p);
    s * (1.0 / n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Vec2, b: Vec2) -> bool {
        a.dist(b) < 1e-12
    }

    #[test]
    fn isometry_inverse_and_compose() {
        let m = Isometry {
            reflect: true,
            angle: 0.7,
            tx: 1.5,
            ty: -2.0,
        };
        let p = Vec2::new(0.3, 4.0);
        assert!(close(m.inverse().apply(m.apply(p)), p));
        let n = Isometry {
            reflect: false,
            angle: -1.1,
            tx: 0.2,
            ty: 0.1,
        };
        assert!(close(m.compose(&n).apply(p), m.apply(n.apply(p))));
        assert!(close(n.compose(&m).apply(p), n.apply(m.apply(p))));
    }

    #[test]
    fn reflection_fixes_its_line() {
        let a = Vec2::new(1.0, 1.0);
        let b = Vec2::new(3.0, 2.0);
        let r = Isometry::reflection_across(a, b);
        assert!(close(r.apply(a), a));
        assert!(close(r.apply(b), b));
        let p = Vec2::new(0.0, 5.0);
        assert!(close(r.apply(r.apply(p)), p));
        assert!(!close(r.apply(p), p));
    }

    #[test]
    fn frame_isometry_maps_frame() {
        let m = Isometry::from_frame(
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(5.0, 5.0),
            Vec2::new(1.0, 1.0),
            true,
        );
        assert!(close(m.apply(Vec2::new(1.0, 0.0)), Vec2::new(5.0, 5.0)));
        let d = m.apply_dir(Vec2::new(0.0, 1.0));
        assert!((d.angle() - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn square_angles_and_area() {
        let sq = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ];
        assert!((signed_area(&sq) - 1.0).abs() < 1e-12);
        for a in interior_angles(&sq) {
            assert!((a - PI / 2.0).abs() < 1e-12);
        }
        let tri = [
            Vec2::new(0.5, -1.0),
            Vec2::new(2.0, 0.5),
            Vec2::new(0.5, 0.5),
        ];
        let clipped = clip_convex(&sq, &tri);
        assert!(signed_area(&clipped) > 0.0);
        assert!(signed_area(&clipped) < 1.0);
    }

    #[test]
    fn crossing_segments() {
        let a = Vec2::new(0.0, 0.0);
        let b = Vec2::new(2.0, 2.0);
        let c = Vec2::new(0.0, 2.0);
        let d = Vec2::new(2.0, 0.0);
        assert!(segments_cross_properly(a, b, c, d, 1e-12));
        assert!(segments_touch(a, b, c, d, 1e-12));
        assert!(!segments_touch(a, Vec2::new(0.5, 0.5), c, d, 1e-12));
        assert!(segments_touch(a, Vec2::new(1.0, 1.0), c, d, 1e-9));
    }
}
