//! Paths and compact planar sets: the carriers for contour integration,
//! boundary sampling and the admissible sets of the approximation machinery.

use alloc::format;
use alloc::vec::Vec;

// required by the no_std build; test builds see std's inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::holo::c64;
use crate::{Result, C64};

/// Piecewise-linear path. For a closed path the final segment runs from the
/// last vertex back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    vertices: Vec<C64>,
    closed: bool,
}

impl Path {
    pub fn polyline(vertices: Vec<C64>) -> Self {
        let p = Path { vertices, closed: false };
        p.assert_valid();
        p
    }

    pub fn closed(vertices: Vec<C64>) -> Self {
        let p = Path { vertices, closed: true };
        p.assert_valid();
        p
    }

    fn assert_valid(&self) {
        assert!(self.vertices.len() >= 2, "a path needs at least two vertices");
        for w in self.vertices.windows(2) {
            assert!((w[0] - w[1]).norm() > 0.0, "consecutive path vertices must be distinct");
        }
        if self.closed {
            let n = self.vertices.len();
            assert!(
                (self.vertices[n - 1] - self.vertices[0]).norm() > 0.0,
                "closed path endpoints coincide; drop the duplicate vertex"
            );
        }
    }

    pub fn segment(a: C64, b: C64) -> Self {
        Path::polyline(alloc::vec![a, b])
    }

    /// Closed circle approximated by `n` vertices.
    pub fn circle(center: C64, radius: f64, n: usize) -> Self {
        assert!(n >= 3);
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let t = core::f64::consts::TAU * k as f64 / n as f64;
            v.push(center + c64(radius * t.cos(), radius * t.sin()));
        }
        Path::closed(v)
    }

    /// Circle traversed `turns` times, as an open polyline returning to its
    /// start point.
    pub fn circle_turns(center: C64, radius: f64, n: usize, turns: usize) -> Self {
        assert!(turns >= 1 && n >= 3);
        if turns == 1 {
            return Path::circle(center, radius, n);
        }
        let total = n * turns;
        let mut v = Vec::with_capacity(total + 1);
        for k in 0..=total {
            let t = core::f64::consts::TAU * k as f64 / n as f64;
            v.push(center + c64(radius * t.cos(), radius * t.sin()));
        }
        let p = Path { vertices: v, closed: false };
        p.assert_valid();
        p
    }

    pub fn vertices(&self) -> &[C64] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn start(&self) -> C64 {
        self.vertices[0]
    }

    pub fn end(&self) -> C64 {
        if self.closed {
            self.vertices[0]
        } else {
            *self.vertices.last().unwrap()
        }
    }

    /// Directed segments (a, b).
    pub fn segments(&self) -> Vec<(C64, C64)> {
        let mut out = Vec::with_capacity(self.vertices.len());
        for w in self.vertices.windows(2) {
            out.push((w[0], w[1]));
        }
        if self.closed {
            out.push((*self.vertices.last().unwrap(), self.vertices[0]));
        }
        out
    }

    pub fn length(&self) -> f64 {
        self.segments().iter().map(|(a, b)| (*b - *a).norm()).sum()
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.vertices.clone();
        v.reverse();
        Path { vertices: v, closed: self.closed }
    }

    /// Concatenation; panics unless `self` ends where `other` starts.
    pub fn concat(&self, other: &Path) -> Path {
        assert!(!self.closed && !other.closed, "cannot concatenate closed paths");
        assert!(
            (self.end() - other.start()).norm() <= 1e-12,
            "paths do not share an endpoint"
        );
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices[1..]);
        Path { vertices: v, closed: false }
    }

    /// Point at arclength fraction `s` in [0, 1].
    pub fn at(&self, s: f64) -> C64 {
        let segs = self.segments();
        let total = self.length();
        let mut target = s.clamp(0.0, 1.0) * total;
        let last = segs.len() - 1;
        for (i, (a, b)) in segs.iter().enumerate() {
            let l = (*b - *a).norm();
            if target <= l || i == last {
                let t = (target / l).clamp(0.0, 1.0);
                return a + (b - a) * c64(t, 0.0);
            }
            target -= l;
        }
        self.end()
    }

    /// Minimum distance from a point to the path.
    pub fn distance_to(&self, p: C64) -> f64 {
        self.segments()
            .iter()
            .map(|&(a, b)| dist_point_segment(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// `n` points equidistributed by arclength (includes both endpoints for
    /// open paths; excludes the duplicate for closed ones).
    pub fn sample(&self, n: usize) -> Vec<C64> {
        assert!(n >= 2);
        let mut out = Vec::with_capacity(n);
        if self.closed {
            for k in 0..n {
                out.push(self.at(k as f64 / n as f64));
            }
        } else {
            for k in 0..n {
                out.push(self.at(k as f64 / (n - 1) as f64));
            }
        }
        out
    }
}

fn dist_point_segment(p: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * c64(t, 0.0))).norm()
}

/// Axis-aligned closed rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub min: C64,
    pub max: C64,
}

impl Rect {
    pub fn new(min: C64, max: C64) -> Self {
        assert!(min.re < max.re && min.im < max.im, "degenerate rectangle");
        Rect { min, max }
    }

    pub fn center(&self) -> C64 {
        (self.min + self.max) * c64(0.5, 0.0)
    }

    pub fn contains(&self, z: C64, margin: f64) -> bool {
        z.re >= self.min.re - margin
            && z.re <= self.max.re + margin
            && z.im >= self.min.im - margin
            && z.im <= self.max.im + margin
    }

    pub fn interior_contains(&self, z: C64, margin: f64) -> bool {
        z.re > self.min.re + margin
            && z.re < self.max.re - margin
            && z.im > self.min.im + margin
            && z.im < self.max.im - margin
    }

    pub fn circumradius(&self) -> f64 {
        (self.max - self.center()).norm()
    }

    pub fn diameter(&self) -> f64 {
        (self.max - self.min).norm()
    }

    /// Counterclockwise boundary as a closed path.
    pub fn boundary(&self) -> Path {
        Path::closed(alloc::vec![
            self.min,
            c64(self.max.re, self.min.im),
            self.max,
            c64(self.min.re, self.max.im),
        ])
    }

    /// Distance from a point to the boundary (0 when on it).
    pub fn boundary_distance(&self, z: C64) -> f64 {
        let dx = (self.min.re - z.re).max(z.re - self.max.re);
        let dy = (self.min.im - z.im).max(z.im - self.max.im);
        if dx <= 0.0 && dy <= 0.0 {
            // inside: distance to the nearest edge
            (-dx).min(-dy)
        } else {
            (dx.max(0.0).powi(2) + dy.max(0.0).powi(2)).sqrt()
        }
    }
}

/// Supported compact set shapes.
#[derive(Debug, Clone, PartialEq)]
pub enum CompactKind {
    Rectangle(Rect),
    /// `r_inner = 0` describes a closed disk.
    Annulus { center: C64, r_inner: f64, r_outer: f64 },
    /// A finite union of pairwise disjoint rectangles joined by attached
    /// analytic arcs (polyline approximations).
    RectanglesWithArcs { rects: Vec<Rect>, arcs: Vec<Path> },
}

/// Compact subset of the plane with a sampling resolution for boundary
/// measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactSet {
    pub kind: CompactKind,
    pub boundary_samples: usize,
}

impl CompactSet {
    pub fn rectangle(min: C64, max: C64, boundary_samples: usize) -> Self {
        CompactSet { kind: CompactKind::Rectangle(Rect::new(min, max)), boundary_samples }
    }

    pub fn disk(center: C64, radius: f64, boundary_samples: usize) -> Self {
        CompactSet::annulus(center, 0.0, radius, boundary_samples)
    }

    pub fn annulus(center: C64, r_inner: f64, r_outer: f64, boundary_samples: usize) -> Self {
        assert!(r_outer > r_inner && r_inner >= 0.0);
        CompactSet { kind: CompactKind::Annulus { center, r_inner, r_outer }, boundary_samples }
    }

    pub fn rects_with_arcs(rects: Vec<Rect>, arcs: Vec<Path>, boundary_samples: usize) -> Self {
        CompactSet { kind: CompactKind::RectanglesWithArcs { rects, arcs }, boundary_samples }
    }

    /// Natural expansion center for Laurent/Taylor representations.
    pub fn center(&self) -> C64 {
        match &self.kind {
            CompactKind::Rectangle(r) => r.center(),
            CompactKind::Annulus { center, .. } => *center,
            CompactKind::RectanglesWithArcs { rects, .. } => {
                let mut lo = c64(f64::INFINITY, f64::INFINITY);
                let mut hi = c64(-f64::INFINITY, -f64::INFINITY);
                for r in rects {
                    lo = c64(lo.re.min(r.min.re), lo.im.min(r.min.im));
                    hi = c64(hi.re.max(r.max.re), hi.im.max(r.max.im));
                }
                (lo + hi) * c64(0.5, 0.0)
            }
        }
    }

    pub fn diameter(&self) -> f64 {
        match &self.kind {
            CompactKind::Rectangle(r) => r.diameter(),
            CompactKind::Annulus { r_outer, .. } => 2.0 * r_outer,
            CompactKind::RectanglesWithArcs { rects, .. } => {
                let c = self.center();
                2.0 * rects
                    .iter()
                    .map(|r| (r.min - c).norm().max((r.max - c).norm()))
                    .fold(0.0, f64::max)
            }
        }
    }

    /// Radius of a disk about `self.center()` containing the set.
    pub fn circumradius(&self) -> f64 {
        match &self.kind {
            CompactKind::Rectangle(r) => r.circumradius(),
            CompactKind::Annulus { r_outer, .. } => *r_outer,
            CompactKind::RectanglesWithArcs { .. } => self.diameter() * 0.5,
        }
    }

    pub fn contains(&self, z: C64, margin: f64) -> bool {
        match &self.kind {
            CompactKind::Rectangle(r) => r.contains(z, margin),
            CompactKind::Annulus { center, r_inner, r_outer } => {
                let d = (z - center).norm();
                d >= r_inner - margin && d <= r_outer + margin
            }
            CompactKind::RectanglesWithArcs { rects, arcs } => {
                rects.iter().any(|r| r.contains(z, margin))
                    || arcs.iter().any(|a| a.distance_to(z) <= margin)
            }
        }
    }

    /// Strict interior membership with a safety margin off the boundary.
    pub fn interior_contains(&self, z: C64, margin: f64) -> bool {
        match &self.kind {
            CompactKind::Rectangle(r) => r.interior_contains(z, margin),
            CompactKind::Annulus { center, r_inner, r_outer } => {
                let d = (z - center).norm();
                let inner_ok = *r_inner == 0.0 || d > r_inner + margin;
                inner_ok && d < r_outer - margin
            }
            CompactKind::RectanglesWithArcs { rects, .. } => {
                rects.iter().any(|r| r.interior_contains(z, margin))
            }
        }
    }

    /// Boundary sample points (`boundary_samples` in total, split across
    /// components by length).
    pub fn boundary_points(&self) -> Vec<C64> {
        self.boundary_points_n(self.boundary_samples)
    }

    pub fn boundary_points_n(&self, n: usize) -> Vec<C64> {
        match &self.kind {
            CompactKind::Rectangle(r) => r.boundary().sample(n),
            CompactKind::Annulus { center, r_inner, r_outer } => {
                if *r_inner == 0.0 {
                    Path::circle(*center, *r_outer, n.max(8)).sample(n)
                } else {
                    let n_out = (n / 2).max(8);
                    let n_in = (n - n / 2).max(8);
                    let mut pts = Path::circle(*center, *r_outer, n_out.max(8)).sample(n_out);
                    pts.extend(Path::circle(*center, *r_inner, n_in.max(8)).sample(n_in));
                    pts
                }
            }
            CompactKind::RectanglesWithArcs { rects, arcs } => {
                let total_len: f64 = rects.iter().map(|r| r.boundary().length()).sum::<f64>()
                    + arcs.iter().map(|a| a.length()).sum::<f64>();
                let mut pts = Vec::new();
                for r in rects {
                    let b = r.boundary();
                    let k = ((n as f64 * b.length() / total_len) as usize).max(8);
                    pts.extend(b.sample(k));
                }
                for a in arcs {
                    let k = ((n as f64 * a.length() / total_len) as usize).max(8);
                    pts.extend(a.sample(k));
                }
                pts
            }
        }
    }

    /// Positively oriented boundary contours (inner annulus boundary is
    /// traversed clockwise so the set lies to the left).
    pub fn boundary_contours(&self, vertices_per_contour: usize) -> Vec<Path> {
        match &self.kind {
            CompactKind::Rectangle(r) => alloc::vec![r.boundary()],
            CompactKind::Annulus { center, r_inner, r_outer } => {
                let mut out = alloc::vec![Path::circle(*center, *r_outer, vertices_per_contour)];
                if *r_inner > 0.0 {
                    out.push(Path::circle(*center, *r_inner, vertices_per_contour).reversed());
                }
                out
            }
            CompactKind::RectanglesWithArcs { rects, .. } => {
                rects.iter().map(|r| r.boundary()).collect()
            }
        }
    }

    /// Admissibility: attached arcs meet the region boundaries transversally
    /// at their endpoints and are otherwise disjoint from them; regions are
    /// pairwise disjoint. Rectangles and annuli are admissible by
    /// construction.
    pub fn admissible(&self, tol: f64) -> Result<()> {
        let CompactKind::RectanglesWithArcs { rects, arcs } = &self.kind else {
            return Ok(());
        };
        for (i, a) in rects.iter().enumerate() {
            for b in rects.iter().skip(i + 1) {
                let overlap_x = a.min.re < b.max.re && b.min.re < a.max.re;
                let overlap_y = a.min.im < b.max.im && b.min.im < a.max.im;
                if overlap_x && overlap_y {
                    return Err(Error::NotAdmissible("component rectangles overlap".into()));
                }
            }
        }
        for (k, arc) in arcs.iter().enumerate() {
            let on_boundary = |z: C64| rects.iter().any(|r| r.boundary_distance(z) <= tol);
            if !on_boundary(arc.start()) || !on_boundary(arc.end()) {
                return Err(Error::NotAdmissible(format!(
                    "arc {k} does not start and end on a region boundary"
                )));
            }
            // interior of the arc stays off every region
            let samples = arc.sample(64);
            for (j, z) in samples.iter().enumerate() {
                if j == 0 || j == samples.len() - 1 {
                    continue;
                }
                if rects.iter().any(|r| r.contains(*z, -tol)) {
                    return Err(Error::NotAdmissible(format!(
                        "arc {k} re-enters a region away from its endpoints"
                    )));
                }
            }
            // transversality: the first/last arc direction must not be
            // parallel to the boundary edge it meets.
            for (endpoint, dir) in [
                (arc.start(), arc.vertices()[1] - arc.start()),
                (arc.end(), arc.vertices()[arc.vertices().len() - 2] - arc.end()),
            ] {
                let rect = rects
                    .iter()
                    .find(|r| r.boundary_distance(endpoint) <= tol)
                    .expect("endpoint on some boundary");
                let horizontal = (endpoint.im - rect.min.im).abs() <= tol
                    || (endpoint.im - rect.max.im).abs() <= tol;
                let d = dir / dir.norm();
                let tangential = if horizontal { d.im.abs() } else { d.re.abs() };
                if tangential <= tol.max(1e-9) {
                    return Err(Error::NotAdmissible(format!(
                        "arc {k} meets a boundary tangentially"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn path_length_and_sampling() {
        let p = Path::polyline(alloc::vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 1.0)]);
        assert_abs_diff_eq!(p.length(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!((p.at(0.5) - c64(1.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
        let s = p.sample(5);
        assert_eq!(s.len(), 5);
        assert_abs_diff_eq!((s[0] - p.start()).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((s[4] - p.end()).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn circle_is_closed_loop() {
        let p = Path::circle(c64(0.0, 0.0), 1.0, 64);
        assert!(p.is_closed());
        assert_abs_diff_eq!(p.length(), core::f64::consts::TAU, epsilon = 1e-2);
    }

    #[test]
    fn rect_boundary_distance() {
        let r = Rect::new(c64(-1.0, -1.0), c64(1.0, 1.0));
        assert_abs_diff_eq!(r.boundary_distance(c64(0.0, 0.0)), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.boundary_distance(c64(2.0, 0.0)), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.boundary_distance(c64(1.0, 0.3)), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn admissible_rect_with_arc() {
        let d1 = Rect::new(c64(-2.0, 0.5), c64(2.0, 2.0));
        let delta = Rect::new(c64(-2.0, 0.0), c64(2.0, 0.4));
        let arc = Path::segment(c64(0.3, 0.5), c64(0.8, 0.4));
        let k = CompactSet::rects_with_arcs(alloc::vec![d1, delta], alloc::vec![arc], 256);
        assert!(k.admissible(1e-9).is_ok());
        // tangential arc is rejected
        let bad_arc = Path::segment(c64(0.3, 0.5), c64(0.8, 0.5));
        let k2 = CompactSet::rects_with_arcs(alloc::vec![d1, delta], alloc::vec![bad_arc], 256);
        assert!(k2.admissible(1e-9).is_err());
    }

    #[test]
    fn path_distance() {
        let p = Path::segment(c64(0.0, 0.0), c64(2.0, 0.0));
        assert_abs_diff_eq!(p.distance_to(c64(1.0, 1.0)), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.distance_to(c64(3.0, 0.0)), 1.0, epsilon = 1e-15);
    }
}
