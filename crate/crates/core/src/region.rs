//! Bounded convex rate regions in the nonnegative (R1, R2) quadrant:
//! halfspace intersection, vertex enumeration, box erosion, union hulls,
//! containment and gap measurement. Geometry is tolerance-based; all
//! magnitudes here are rates in bits, at most a few hundred.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::math;

/// Absolute vertex dedup tolerance, in bits.
const DEDUP_TOL: f64 = 1e-9;

/// A halfspace `a * R1 + b * R2 <= c` with `a, b >= 0`.
///
/// Regions built from the rate bounds use only the five directions
/// `(1,0), (0,1), (1,1), (2,1), (1,2)`; union hulls may introduce generic
/// nonnegative directions for edges, stored in the same form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateConstraint {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl RateConstraint {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        assert!(a >= 0.0 && b >= 0.0 && a + b > 0.0);
        RateConstraint { a, b, c }
    }

    pub fn r1(c: f64) -> Self {
        RateConstraint::new(1.0, 0.0, c)
    }

    pub fn r2(c: f64) -> Self {
        RateConstraint::new(0.0, 1.0, c)
    }

    pub fn sum(c: f64) -> Self {
        RateConstraint::new(1.0, 1.0, c)
    }

    pub fn two_one(c: f64) -> Self {
        RateConstraint::new(2.0, 1.0, c)
    }

    pub fn one_two(c: f64) -> Self {
        RateConstraint::new(1.0, 2.0, c)
    }

    fn eval(&self, p: (f64, f64)) -> f64 {
        self.a * p.0 + self.b * p.1
    }

    fn satisfied(&self, p: (f64, f64), tol: f64) -> bool {
        self.c == f64::INFINITY || self.eval(p) <= self.c + tol
    }
}

/// A bounded convex polygon in the nonnegative quadrant.
///
/// `vertices` are counterclockwise, deduplicated, and start at the
/// lexicographically smallest point. An infeasible constraint set is
/// canonicalized to the single vertex `(0, 0)` with `empty` set (rate 0 is
/// always achievable, so the degenerate point is still meaningful).
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegion2D {
    pub constraints: Vec<RateConstraint>,
    pub vertices: Vec<(f64, f64)>,
    pub empty: bool,
}

fn feas_tol(c: f64) -> f64 {
    1e-9 * c.abs().max(1.0)
}

fn line_intersection(
    (a1, b1, c1): (f64, f64, f64),
    (a2, b2, c2): (f64, f64, f64),
) -> Option<(f64, f64)> {
    let det = a1 * b2 - a2 * b1;
    let scale = (a1.abs() + b1.abs()) * (a2.abs() + b2.abs());
    if det.abs() <= 1e-12 * scale.max(1e-300) {
        return None;
    }
    let x = (c1 * b2 - c2 * b1) / det;
    let y = (a1 * c2 - a2 * c1) / det;
    if x.is_finite() && y.is_finite() {
        Some((x, y))
    } else {
        None
    }
}

fn dedup_points(points: &mut Vec<(f64, f64)>) {
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for &p in points.iter() {
        if !out
            .iter()
            .any(|&q| (p.0 - q.0).abs() <= DEDUP_TOL && (p.1 - q.1).abs() <= DEDUP_TOL)
        {
            out.push(p);
        }
    }
    *points = out;
}

/// Counterclockwise order around the centroid, rotated to start at the
/// lexicographically smallest vertex.
fn sort_ccw(points: &mut Vec<(f64, f64)>) {
    if points.len() <= 2 {
        points.sort_by(|p, q| p.partial_cmp(q).unwrap());
        return;
    }
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = points.iter().map(|p| p.1).sum::<f64>() / n;
    points.sort_by(|p, q| {
        let ap = math::atan2(p.1 - cy, p.0 - cx);
        let aq = math::atan2(q.1 - cy, q.0 - cx);
        ap.partial_cmp(&aq).unwrap()
    });
    let start = points
        .iter()
        .enumerate()
        .min_by(|(_, p), (_, q)| p.partial_cmp(q).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    points.rotate_left(start);
}

fn enumerate_vertices(constraints: &[RateConstraint]) -> Vec<(f64, f64)> {
    // Lines: finite constraints plus the two axes.
    let mut lines: Vec<(f64, f64, f64)> = vec![(1.0, 0.0, 0.0), (0.0, 1.0, 0.0)];
    lines.extend(
        constraints
            .iter()
            .filter(|k| k.c.is_finite())
            .map(|k| (k.a, k.b, k.c)),
    );
    let mut points = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let Some(p) = line_intersection(lines[i], lines[j]) else {
                continue;
            };
            if p.0 < -DEDUP_TOL || p.1 < -DEDUP_TOL {
                continue;
            }
            if constraints
                .iter()
                .all(|k| k.satisfied(p, feas_tol(k.c)))
            {
                points.push((p.0.max(0.0), p.1.max(0.0)));
            }
        }
    }
    dedup_points(&mut points);
    sort_ccw(&mut points);
    points
}

fn assemble(constraints: Vec<RateConstraint>) -> RateRegion2D {
    let vertices = enumerate_vertices(&constraints);
    if vertices.is_empty() {
        return RateRegion2D {
            constraints,
            vertices: vec![(0.0, 0.0)],
            empty: true,
        };
    }
    RateRegion2D {
        constraints,
        vertices,
        empty: false,
    }
}

/// Intersects the halfspaces with the nonnegative quadrant and enumerates
/// the polygon vertices. Redundant constraints stay in the list; they just
/// do not contribute vertices.
pub fn region_from_constraints(constraints: &[RateConstraint]) -> Result<RateRegion2D, Error> {
    let region = assemble(constraints.to_vec());
    if region.empty {
        return Ok(region);
    }
    let bound_x = constraints.iter().any(|k| k.a > 0.0 && k.c.is_finite());
    let bound_y = constraints.iter().any(|k| k.b > 0.0 && k.c.is_finite());
    if !bound_x || !bound_y {
        return Err(Error::Unbounded);
    }
    Ok(region)
}

/// The erosion `region ⊖ ([0, gx] x [0, gy])`: every halfspace RHS drops by
/// its support `a * gx + b * gy`, re-clipped to the nonnegative quadrant.
pub fn erode_by_box(region: &RateRegion2D, gx: f64, gy: f64) -> RateRegion2D {
    assert!(gx >= 0.0 && gy >= 0.0);
    if region.empty {
        return region.clone();
    }
    let constraints: Vec<RateConstraint> = region
        .constraints
        .iter()
        .map(|k| RateConstraint {
            a: k.a,
            b: k.b,
            c: if k.c.is_finite() {
                k.c - (k.a * gx + k.b * gy)
            } else {
                k.c
            },
        })
        .collect();
    assemble(constraints)
}

/// True iff `p` satisfies every constraint within `tol` and is within `tol`
/// of the nonnegative quadrant.
pub fn contains(region: &RateRegion2D, p: (f64, f64), tol: f64) -> bool {
    if p.0 < -tol || p.1 < -tol {
        return false;
    }
    if region.empty {
        return p.0 <= tol && p.1 <= tol;
    }
    region.constraints.iter().all(|k| k.satisfied(p, tol))
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Monotone-chain convex hull, counterclockwise without the closing point.
fn convex_hull(mut points: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    dedup_points(&mut points);
    points.sort_by(|p, q| p.partial_cmp(q).unwrap());
    if points.len() <= 2 {
        return points;
    }
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &points {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in points.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

const CANONICAL_DIRECTIONS: [(f64, f64); 5] =
    [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, 1.0), (1.0, 2.0)];

/// Halfspaces for the edges of a counterclockwise hull, snapping normals to
/// the canonical directions when they match exactly enough. Edges whose
/// outward normal points out of the nonnegative quadrant are the axes and
/// stay implicit.
fn constraints_from_hull(hull: &[(f64, f64)]) -> Vec<RateConstraint> {
    let maxx = hull.iter().fold(0.0f64, |m, p| m.max(p.0));
    let maxy = hull.iter().fold(0.0f64, |m, p| m.max(p.1));
    if hull.len() <= 2 {
        return vec![RateConstraint::r1(maxx), RateConstraint::r2(maxy)];
    }
    let mut out = Vec::new();
    let n = hull.len();
    for i in 0..n {
        let p = hull[i];
        let q = hull[(i + 1) % n];
        let d = (q.0 - p.0, q.1 - p.1);
        let len = math::hypot(d.0, d.1);
        if len <= DEDUP_TOL {
            continue;
        }
        // Outward normal of a CCW edge.
        let nx = d.1 / len;
        let ny = -d.0 / len;
        if nx < 1e-12 && ny < 1e-12 {
            continue; // axis-facing edge
        }
        let snapped = CANONICAL_DIRECTIONS.iter().find(|&&(a, b)| {
            let norm = math::hypot(a, b);
            (nx - a / norm).abs() <= 1e-9 && (ny - b / norm).abs() <= 1e-9
        });
        let (a, b) = match snapped {
            Some(&(a, b)) => (a, b),
            None => {
                let m = nx.max(ny);
                (nx.max(0.0) / m, ny.max(0.0) / m)
            }
        };
        let c = (a * p.0 + b * p.1).max(a * q.0 + b * q.1);
        out.push(RateConstraint { a, b, c });
    }
    if out.is_empty() {
        out.push(RateConstraint::r1(maxx));
        out.push(RateConstraint::r2(maxy));
    }
    out
}

/// Convex hull of the union of two regions (both convex, so pooling the
/// vertex sets is exact); constraints are re-derived from the hull edges.
pub fn hull_union(r1: &RateRegion2D, r2: &RateRegion2D) -> RateRegion2D {
    let mut pool = vec![(0.0, 0.0)];
    if !r1.empty {
        pool.extend_from_slice(&r1.vertices);
    }
    if !r2.empty {
        pool.extend_from_slice(&r2.vertices);
    }
    let mut hull = convex_hull(pool);
    if hull.is_empty() {
        hull.push((0.0, 0.0));
    }
    let constraints = constraints_from_hull(&hull);
    sort_ccw(&mut hull);
    RateRegion2D {
        constraints,
        vertices: hull,
        empty: r1.empty && r2.empty,
    }
}

/// The smallest `g >= 0` such that dilating `inner` by `[0, g]^2` covers
/// `outer`, found by bisection to 1e-6 bits.
///
/// Both regions are downward closed, so it suffices that every outer vertex
/// `v`, clipped-shifted to `((v1-g)+, (v2-g)+)`, lies in `inner`.
pub fn max_gap(outer: &RateRegion2D, inner: &RateRegion2D) -> f64 {
    let covered = |g: f64| {
        outer.vertices.iter().all(|&(x, y)| {
            contains(inner, ((x - g).max(0.0), (y - g).max(0.0)), 1e-9)
        })
    };
    if covered(0.0) {
        return 0.0;
    }
    let mut lo = 0.0;
    let mut hi = outer
        .vertices
        .iter()
        .fold(0.0f64, |m, &(x, y)| m.max(x).max(y));
    if !covered(hi) {
        // Inner does not even contain (0,0) within tolerance; no finite
        // dilation helps beyond the outer extent.
        return hi;
    }
    for _ in 0..60 {
        if hi - lo <= 1e-7 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if covered(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
