//! Uniform-grid domains, sampled fields, node sets, balls, radius schedules,
//! and the oscillation primitive.
//!
//! Points are `[f64; 3]` with unused trailing coordinates fixed to zero, so
//! the same code path serves dimensions 1 to 3. Node `index` and flat `usize`
//! offsets are related by row-major order. Scalar fields take values in the
//! extended reals: `f64::INFINITY` / `f64::NEG_INFINITY` are the explicit
//! flags for the infinite values (NaN is rejected at construction).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::CoreError;
use crate::num::FloatExt;

/// A point of the ambient space; coordinates beyond the domain dimension are 0.
pub type Point = [f64; 3];

/// Euclidean distance between two points.
pub fn dist(p: Point, q: Point) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    let dz = p[2] - q[2];
    (dx * dx + dy * dy + dz * dz).sqrt_()
}

/// A uniform grid over an axis-aligned box in dimension 1, 2 or 3.
#[derive(Clone, Debug, PartialEq)]
pub struct GridDomain {
    dim: usize,
    shape: [usize; 3],
    spacing: f64,
    origin: Point,
}

impl GridDomain {
    /// Creates a grid. `shape` entries beyond `dim` must be 1 (or are forced
    /// to 1 when given as 0); every used axis needs at least 2 nodes.
    pub fn new(dim: usize, shape: [usize; 3], spacing: f64, origin: Point) -> Result<Self, CoreError> {
        if !(1..=3).contains(&dim) {
            return Err(CoreError::BadDimension(dim));
        }
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(CoreError::BadParameter("spacing"));
        }
        let mut shape = shape;
        for a in 0..3 {
            if a < dim {
                if shape[a] < 2 {
                    return Err(CoreError::BadParameter("shape"));
                }
            } else {
                shape[a] = 1;
            }
        }
        if origin.iter().any(|c| !c.is_finite()) {
            return Err(CoreError::BadParameter("origin"));
        }
        Ok(GridDomain { dim, shape, spacing, origin })
    }

    /// Convenience constructor: a `dim`-cube with `n` nodes per axis covering
    /// `[lo, lo + (n-1) h]^dim`.
    pub fn cube(dim: usize, n: usize, spacing: f64, lo: f64) -> Result<Self, CoreError> {
        let mut shape = [1usize; 3];
        for a in 0..dim.min(3) {
            shape[a] = n;
        }
        GridDomain::new(dim, shape, spacing, [lo, lo, lo])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn shape(&self) -> [usize; 3] {
        self.shape
    }
    pub fn spacing(&self) -> f64 {
        self.spacing
    }
    pub fn origin(&self) -> Point {
        self.origin
    }

    /// Total number of nodes.
    pub fn len(&self) -> usize {
        self.shape[0] * self.shape[1] * self.shape[2]
    }
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Volume of one grid cell, `h^n`.
    pub fn cell_volume(&self) -> f64 {
        let mut v = 1.0;
        for _ in 0..self.dim {
            v *= self.spacing;
        }
        v
    }

    /// `h^(n-1)`, the area of one cell face.
    pub fn face_area(&self) -> f64 {
        let mut v = 1.0;
        for _ in 0..self.dim.saturating_sub(1) {
            v *= self.spacing;
        }
        v
    }

    /// Flat index of a multi-index.
    #[inline]
    pub fn flat(&self, idx: [usize; 3]) -> usize {
        (idx[0] * self.shape[1] + idx[1]) * self.shape[2] + idx[2]
    }

    /// Multi-index of a flat index.
    #[inline]
    pub fn unflat(&self, flat: usize) -> [usize; 3] {
        let k = flat % self.shape[2];
        let rest = flat / self.shape[2];
        let j = rest % self.shape[1];
        let i = rest / self.shape[1];
        [i, j, k]
    }

    /// The point located at a flat node index.
    #[inline]
    pub fn point(&self, flat: usize) -> Point {
        let m = self.unflat(flat);
        [
            self.origin[0] + self.spacing * m[0] as f64,
            self.origin[1] + self.spacing * m[1] as f64,
            self.origin[2] + self.spacing * m[2] as f64,
        ]
    }

    /// Bounding box `[lo, hi]` of the node lattice.
    pub fn bounds(&self) -> (Point, Point) {
        let mut hi = self.origin;
        for a in 0..self.dim {
            hi[a] += self.spacing * (self.shape[a] - 1) as f64;
        }
        (self.origin, hi)
    }

    /// Whether a point lies inside the closed bounding box of the lattice.
    pub fn contains_point(&self, p: Point) -> bool {
        let (lo, hi) = self.bounds();
        for a in 0..self.dim {
            if p[a] < lo[a] - 1e-12 || p[a] > hi[a] + 1e-12 {
                return false;
            }
        }
        for a in self.dim..3 {
            if p[a] != 0.0 {
                return false;
            }
        }
        true
    }

    /// Index of the node nearest to `p`.
    pub fn nearest_node(&self, p: Point) -> usize {
        let mut m = [0usize; 3];
        for a in 0..self.dim {
            let raw = ((p[a] - self.origin[a]) / self.spacing).round_();
            let clamped = raw.max(0.0).min((self.shape[a] - 1) as f64);
            m[a] = clamped as usize;
        }
        self.flat(m)
    }

    /// Flat indices of all nodes with `|p - center| < radius` (strict).
    pub fn nodes_within(&self, center: Point, radius: f64) -> Vec<usize> {
        let mut lo = [0usize; 3];
        let mut hi = [0usize; 3];
        for a in 0..3 {
            if a < self.dim {
                let l = ((center[a] - radius - self.origin[a]) / self.spacing).ceil_();
                let h = ((center[a] + radius - self.origin[a]) / self.spacing).floor_();
                if h < 0.0 || l > (self.shape[a] - 1) as f64 {
                    return Vec::new();
                }
                lo[a] = l.max(0.0) as usize;
                hi[a] = h.min((self.shape[a] - 1) as f64) as usize;
            } else {
                lo[a] = 0;
                hi[a] = 0;
            }
        }
        let r2 = radius * radius;
        let mut out = Vec::new();
        for i in lo[0]..=hi[0] {
            for j in lo[1]..=hi[1] {
                for k in lo[2]..=hi[2] {
                    let flat = self.flat([i, j, k]);
                    let p = self.point(flat);
                    let dx = p[0] - center[0];
                    let dy = p[1] - center[1];
                    let dz = p[2] - center[2];
                    if dx * dx + dy * dy + dz * dz < r2 {
                        out.push(flat);
                    }
                }
            }
        }
        out
    }
}

/// An open Euclidean ball.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Self {
        Ball { center, radius }
    }
}

/// Nodes of `domain` strictly inside `ball`.
///
/// Sub-grid balls (`radius < h`) are rejected, as is a ball capturing no node.
pub fn ball_nodes(domain: &GridDomain, ball: &Ball) -> Result<NodeSet, CoreError> {
    if ball.radius < domain.spacing() {
        return Err(CoreError::BallUnresolvable { radius: ball.radius, spacing: domain.spacing() });
    }
    if !domain.contains_point(ball.center) {
        return Err(CoreError::BallOutside);
    }
    let idx = domain.nodes_within(ball.center, ball.radius);
    if idx.is_empty() {
        return Err(CoreError::BallOutside);
    }
    Ok(NodeSet::from_indices(domain.clone(), &idx))
}

/// A scalar field sampled at grid nodes, with values in the extended reals.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    domain: GridDomain,
    values: Vec<f64>,
}

impl ScalarField {
    /// Wraps a value vector. NaN entries are rejected; infinities are allowed
    /// and act as the explicit flags for extended-real values.
    pub fn new(domain: GridDomain, values: Vec<f64>) -> Result<Self, CoreError> {
        if values.len() != domain.len() {
            return Err(CoreError::ShapeMismatch);
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(CoreError::BadParameter("NaN value"));
        }
        Ok(ScalarField { domain, values })
    }

    /// Samples a function of the node position.
    pub fn from_fn(domain: GridDomain, mut f: impl FnMut(Point) -> f64) -> Self {
        let values = (0..domain.len()).map(|i| f(domain.point(i))).collect();
        ScalarField { domain, values }
    }

    pub fn constant(domain: GridDomain, c: f64) -> Self {
        let n = domain.len();
        ScalarField { domain, values: vec![c; n] }
    }

    pub fn domain(&self) -> &GridDomain {
        &self.domain
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    #[inline]
    pub fn get(&self, flat: usize) -> f64 {
        self.values[flat]
    }

    /// Applies a pointwise map; infinities pass through `f` unchanged only if
    /// `f` preserves them, so callers are responsible for the convention.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ScalarField {
        ScalarField {
            domain: self.domain.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// A map into `R^n` sampled at grid nodes; `None` marks undefined nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    domain: GridDomain,
    values: Vec<Option<Point>>,
}

impl VectorField {
    pub fn new(domain: GridDomain, values: Vec<Option<Point>>) -> Result<Self, CoreError> {
        if values.len() != domain.len() {
            return Err(CoreError::ShapeMismatch);
        }
        for v in values.iter().flatten() {
            for a in domain.dim()..3 {
                if v[a] != 0.0 {
                    return Err(CoreError::ShapeMismatch);
                }
            }
            if v.iter().any(|c| c.is_nan()) {
                return Err(CoreError::BadParameter("NaN component"));
            }
        }
        Ok(VectorField { domain, values })
    }

    pub fn from_fn(domain: GridDomain, mut f: impl FnMut(Point) -> Point) -> Self {
        let values = (0..domain.len()).map(|i| Some(f(domain.point(i)))).collect();
        VectorField { domain, values }
    }

    pub fn domain(&self) -> &GridDomain {
        &self.domain
    }
    pub fn values(&self) -> &[Option<Point>] {
        &self.values
    }
    #[inline]
    pub fn get(&self, flat: usize) -> Option<Point> {
        self.values[flat]
    }

    /// One scalar component as a field; undefined nodes become `+inf`.
    pub fn component(&self, axis: usize) -> ScalarField {
        ScalarField {
            domain: self.domain.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.map_or(f64::INFINITY, |p| p[axis]))
                .collect(),
        }
    }
}

/// A subset of grid nodes, stored as a boolean mask.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSet {
    domain: GridDomain,
    mask: Vec<bool>,
}

impl NodeSet {
    pub fn new(domain: GridDomain, mask: Vec<bool>) -> Result<Self, CoreError> {
        if mask.len() != domain.len() {
            return Err(CoreError::ShapeMismatch);
        }
        Ok(NodeSet { domain, mask })
    }

    pub fn empty(domain: GridDomain) -> Self {
        let n = domain.len();
        NodeSet { domain, mask: vec![false; n] }
    }

    pub fn full(domain: GridDomain) -> Self {
        let n = domain.len();
        NodeSet { domain, mask: vec![true; n] }
    }

    pub fn from_indices(domain: GridDomain, indices: &[usize]) -> Self {
        let mut mask = vec![false; domain.len()];
        for &i in indices {
            mask[i] = true;
        }
        NodeSet { domain, mask }
    }

    pub fn from_fn(domain: GridDomain, mut f: impl FnMut(Point) -> bool) -> Self {
        let mask = (0..domain.len()).map(|i| f(domain.point(i))).collect();
        NodeSet { domain, mask }
    }

    pub fn domain(&self) -> &GridDomain {
        &self.domain
    }
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
    #[inline]
    pub fn contains(&self, flat: usize) -> bool {
        self.mask[flat]
    }

    /// Number of nodes in the set.
    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&i| self.mask[i]).collect()
    }

    pub fn complement(&self) -> NodeSet {
        NodeSet {
            domain: self.domain.clone(),
            mask: self.mask.iter().map(|&b| !b).collect(),
        }
    }

    pub fn intersect(&self, other: &NodeSet) -> NodeSet {
        debug_assert_eq!(self.domain, other.domain);
        NodeSet {
            domain: self.domain.clone(),
            mask: self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect(),
        }
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        debug_assert_eq!(self.domain, other.domain);
        NodeSet {
            domain: self.domain.clone(),
            mask: self.mask.iter().zip(&other.mask).map(|(&a, &b)| a || b).collect(),
        }
    }

    pub fn minus(&self, other: &NodeSet) -> NodeSet {
        debug_assert_eq!(self.domain, other.domain);
        NodeSet {
            domain: self.domain.clone(),
            mask: self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && !b).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &NodeSet) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    /// Volume of the set, (node count) * h^n.
    pub fn volume(&self) -> f64 {
        self.count() as f64 * self.domain.cell_volume()
    }
}

/// Oscillation of `w` over the node set `S`: the sup of `|w(p) - w(q)|`.
///
/// Returns 0 for sets with at most one node, and `+inf` as soon as any node
/// of `S` carries an infinite value.
pub fn oscillation(w: &ScalarField, s: &NodeSet) -> f64 {
    debug_assert_eq!(w.domain(), s.domain());
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut n = 0usize;
    for (i, &inside) in s.mask().iter().enumerate() {
        if !inside {
            continue;
        }
        let v = w.get(i);
        if v.is_infinite() {
            return f64::INFINITY;
        }
        lo = lo.min(v);
        hi = hi.max(v);
        n += 1;
    }
    if n <= 1 {
        0.0
    } else {
        hi - lo
    }
}

/// Oscillation of a vector field over `S`: sup of pairwise Euclidean
/// distances `|f(p) - f(q)|`. Undefined nodes count as infinite values.
pub fn oscillation_vec(f: &VectorField, s: &NodeSet) -> f64 {
    debug_assert_eq!(f.domain(), s.domain());
    let mut pts: Vec<Point> = Vec::new();
    for (i, &inside) in s.mask().iter().enumerate() {
        if !inside {
            continue;
        }
        match f.get(i) {
            None => return f64::INFINITY,
            Some(p) => {
                if p.iter().any(|c| c.is_infinite()) {
                    return f64::INFINITY;
                }
                pts.push(p);
            }
        }
    }
    if pts.len() <= 1 {
        return 0.0;
    }
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            best = best.max(dist(pts[i], pts[j]));
        }
    }
    best
}

/// A dyadic radius schedule, the discrete surrogate for limits `r -> 0`.
///
/// Produces the radii `r0 * ratio^k` for `k = 0..=count`; the smallest radius
/// must stay resolvable (`>= 2h`) on the grid it is used with. `window` is
/// the number of smallest radii over which tail estimates are formed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusSchedule {
    pub r0: f64,
    pub ratio: f64,
    pub count: usize,
    pub window: usize,
}

impl RadiusSchedule {
    pub fn new(r0: f64, ratio: f64, count: usize, window: usize) -> Result<Self, CoreError> {
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(CoreError::BadParameter("r0"));
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(CoreError::BadParameter("ratio"));
        }
        if count < 3 {
            return Err(CoreError::BadParameter("count"));
        }
        if window < 2 || window > count + 1 {
            return Err(CoreError::BadParameter("window"));
        }
        Ok(RadiusSchedule { r0, ratio, count, window })
    }

    /// Halving schedule (`ratio = 1/2`) with the default tail window of 2.
    pub fn halving(r0: f64, count: usize) -> Result<Self, CoreError> {
        RadiusSchedule::new(r0, 0.5, count, 2)
    }

    /// Radii in strictly decreasing order.
    pub fn radii(&self) -> Vec<f64> {
        let mut r = self.r0;
        let mut out = Vec::with_capacity(self.count + 1);
        for _ in 0..=self.count {
            out.push(r);
            r *= self.ratio;
        }
        out
    }

    pub fn smallest(&self) -> f64 {
        self.r0 * self.ratio.powf_(self.count as f64)
    }

    /// Checks that every scheduled radius is resolvable on spacing `h`.
    pub fn validate_for(&self, h: f64) -> Result<(), CoreError> {
        if self.smallest() < 2.0 * h - 1e-12 {
            return Err(CoreError::BallUnresolvable { radius: self.smallest(), spacing: h });
        }
        Ok(())
    }
}

/// Tail estimates over the `window` smallest radii of a profile.
///
/// The profile need not be sorted; the `window` entries with the smallest
/// radii are selected.
pub fn tail_estimates(profile: &[(f64, f64)], window: usize) -> Result<(f64, f64), CoreError> {
    if profile.len() < window || window == 0 {
        return Err(CoreError::TooFewSamples { len: profile.len(), window });
    }
    let mut sorted: Vec<(f64, f64)> = profile.to_vec();
    sorted.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let tail = &sorted[sorted.len() - window..];
    let mut tmax = f64::NEG_INFINITY;
    let mut tmin = f64::INFINITY;
    for &(_, v) in tail {
        tmax = tmax.max(v);
        tmin = tmin.min(v);
    }
    Ok((tmax, tmin))
}

/// A sequence of per-radius values with tail estimates, the discrete stand-in
/// for `limsup` / `liminf` as `r -> 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityProfile {
    pub samples: Vec<(f64, f64)>,
    pub tail_max: f64,
    pub tail_min: f64,
}

impl DensityProfile {
    /// Builds a profile from `(radius, value)` samples with strictly
    /// decreasing radii, attaching tail estimates over `window` samples.
    pub fn new(samples: Vec<(f64, f64)>, window: usize) -> Result<Self, CoreError> {
        for pair in samples.windows(2) {
            if !(pair[1].0 < pair[0].0) {
                return Err(CoreError::BadParameter("radii not strictly decreasing"));
            }
        }
        let (tail_max, tail_min) = tail_estimates(&samples, window)?;
        Ok(DensityProfile { samples, tail_max, tail_min })
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|&(_, v)| v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_domain() -> GridDomain {
        // nodes 0..=10 with h = 1
        GridDomain::new(1, [11, 1, 1], 1.0, [0.0, 0.0, 0.0]).unwrap()
    }

    #[test]
    fn ball_nodes_1d_strict() {
        let d = line_domain();
        let b = Ball::new([5.0, 0.0, 0.0], 1.5);
        let s = ball_nodes(&d, &b).unwrap();
        let got = s.indices();
        assert_eq!(got, vec![4, 5, 6]);
    }

    #[test]
    fn ball_nodes_2d_strict_inequality() {
        let d = GridDomain::cube(2, 11, 1.0, 0.0).unwrap();
        let b = Ball::new([5.0, 5.0, 0.0], 1.0);
        let s = ball_nodes(&d, &b).unwrap();
        assert_eq!(s.count(), 1);
        assert!(s.contains(d.flat([5, 5, 0])));
    }

    #[test]
    fn ball_nodes_half_spacing_count() {
        // Brute-force oracle: lattice points p = 0.5 (i, j) with |p| < 1,
        // i.e. i^2 + j^2 < 4. Enumeration gives 9 of them.
        let mut oracle = 0usize;
        for i in -4i64..=4 {
            for j in -4i64..=4 {
                if i * i + j * j < 4 {
                    oracle += 1;
                }
            }
        }
        assert_eq!(oracle, 9);
        let d = GridDomain::new(2, [17, 17, 1], 0.5, [-4.0, -4.0, 0.0]).unwrap();
        let b = Ball::new([0.0, 0.0, 0.0], 1.0);
        let s = ball_nodes(&d, &b).unwrap();
        assert_eq!(s.count(), oracle);
    }

    #[test]
    fn ball_rejects_subgrid_radius() {
        let d = line_domain();
        let b = Ball::new([5.0, 0.0, 0.0], 0.5);
        assert!(matches!(ball_nodes(&d, &b), Err(CoreError::BallUnresolvable { .. })));
    }

    #[test]
    fn ball_outside_box() {
        let d = line_domain();
        let b = Ball::new([50.0, 0.0, 0.0], 2.0);
        assert!(matches!(ball_nodes(&d, &b), Err(CoreError::BallOutside)));
    }

    #[test]
    fn oscillation_constant_is_zero() {
        let d = line_domain();
        let w = ScalarField::constant(d.clone(), 3.25);
        let s = NodeSet::full(d);
        assert_eq!(oscillation(&w, &s), 0.0);
    }

    #[test]
    fn oscillation_linear_on_ball() {
        // w = x1 over a fine 2D ball of radius r: osc approaches 2r.
        let h = 0.01;
        let d = GridDomain::new(2, [201, 201, 1], h, [-1.0, -1.0, 0.0]).unwrap();
        let w = ScalarField::from_fn(d.clone(), |p| p[0]);
        let r = 0.5;
        let s = ball_nodes(&d, &Ball::new([0.0, 0.0, 0.0], r)).unwrap();
        let osc = oscillation(&w, &s);
        assert!((osc - 2.0 * r).abs() <= 2.0 * h + 1e-12, "osc = {osc}");
    }

    #[test]
    fn oscillation_with_infinite_node() {
        let d = line_domain();
        let mut vals = vec![0.0; d.len()];
        vals[3] = f64::INFINITY;
        let w = ScalarField::new(d.clone(), vals).unwrap();
        let s = NodeSet::full(d);
        assert_eq!(oscillation(&w, &s), f64::INFINITY);
    }

    #[test]
    fn tail_estimates_examples() {
        let p = [(1.0, 3.0), (0.5, 2.0), (0.25, 1.0)];
        assert_eq!(tail_estimates(&p, 2).unwrap(), (2.0, 1.0));
        let c = [(1.0, 7.0), (0.5, 7.0), (0.25, 7.0)];
        assert_eq!(tail_estimates(&c, 2).unwrap(), (7.0, 7.0));
        // monotone decreasing profile over the full window
        let m = [(1.0, 5.0), (0.5, 4.0), (0.25, 3.0), (0.125, 2.0)];
        assert_eq!(tail_estimates(&m, 4).unwrap(), (5.0, 2.0));
        assert!(matches!(
            tail_estimates(&p, 4),
            Err(CoreError::TooFewSamples { .. })
        ));
    }

    #[test]
    fn schedule_radii_and_validation() {
        let s = RadiusSchedule::new(0.25, 0.5, 3, 2).unwrap();
        let r = s.radii();
        assert_eq!(r.len(), 4);
        assert!((r[3] - 0.03125).abs() < 1e-15);
        assert!(s.validate_for(0.015).is_ok());
        assert!(s.validate_for(0.02).is_err());
    }

    #[test]
    fn profile_requires_decreasing_radii() {
        assert!(DensityProfile::new(vec![(0.5, 1.0), (0.5, 2.0)], 2).is_err());
        let p = DensityProfile::new(vec![(1.0, 0.0), (0.5, 4.0), (0.25, 2.0)], 2).unwrap();
        assert_eq!(p.tail_max, 4.0);
        assert_eq!(p.tail_min, 2.0);
    }
}
