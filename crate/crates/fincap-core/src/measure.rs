//! Radon-measure surrogates: an absolutely continuous cell density plus
//! weighted lower-dimensional singular parts supported on polylines (2D) or
//! point lists (1D). Evaluation on balls clips segments against the circle
//! exactly; evaluation on node sets clips against the union of grid cells.

use alloc::vec::Vec;

use crate::capacity::{CapacitySolver, PerimeterStencil};
use crate::error::CoreError;
use crate::grid::{dist, Ball, GridDomain, NodeSet, Point, ScalarField};
use crate::num::FloatExt;

/// Support of a singular part: a polyline carrying mass per unit length, or
/// a finite point list carrying mass per point (the 1D case).
#[derive(Clone, Debug, PartialEq)]
pub enum SingularSupport {
    Polyline(Vec<Point>),
    Points(Vec<Point>),
}

/// A weighted lower-dimensional piece of a measure.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularPart {
    pub support: SingularSupport,
    /// Nonnegative density per unit length (polyline) or per point.
    pub weight: f64,
}

/// A positive measure on the grid: `a dL^n` plus singular parts.
#[derive(Clone, Debug, PartialEq)]
pub struct GridMeasure {
    density: ScalarField,
    singular: Vec<SingularPart>,
}

/// Region a measure is evaluated on.
#[derive(Clone, Copy)]
pub enum Region<'a> {
    Ball(&'a Ball),
    Set(&'a NodeSet),
}

impl GridMeasure {
    pub fn new(density: ScalarField, singular: Vec<SingularPart>) -> Result<Self, CoreError> {
        if density.values().iter().any(|&v| !(v >= 0.0) || v.is_infinite()) {
            return Err(CoreError::BadParameter("density"));
        }
        for part in &singular {
            if !(part.weight >= 0.0) || !part.weight.is_finite() {
                return Err(CoreError::BadParameter("singular weight"));
            }
            match &part.support {
                SingularSupport::Polyline(pts) => {
                    if pts.len() < 2 {
                        return Err(CoreError::BadParameter("polyline"));
                    }
                }
                SingularSupport::Points(pts) => {
                    if pts.is_empty() {
                        return Err(CoreError::BadParameter("point support"));
                    }
                }
            }
        }
        Ok(GridMeasure { density, singular })
    }

    /// Lebesgue measure on the domain (`a = 1`, no singular parts).
    pub fn lebesgue(domain: GridDomain) -> Self {
        GridMeasure { density: ScalarField::constant(domain, 1.0), singular: Vec::new() }
    }

    /// Absolutely continuous measure `a dL^n`.
    pub fn from_density(density: ScalarField) -> Result<Self, CoreError> {
        GridMeasure::new(density, Vec::new())
    }

    pub fn density(&self) -> &ScalarField {
        &self.density
    }
    pub fn singular_parts(&self) -> &[SingularPart] {
        &self.singular
    }
    pub fn domain(&self) -> &GridDomain {
        self.density.domain()
    }

    /// The measure scaled by `c >= 0` (density and weights both scaled).
    pub fn scaled(&self, c: f64) -> Result<GridMeasure, CoreError> {
        if !(c >= 0.0) || !c.is_finite() {
            return Err(CoreError::BadParameter("scale"));
        }
        let density = self.density.map(|v| c * v);
        let singular = self
            .singular
            .iter()
            .map(|p| SingularPart { support: p.support.clone(), weight: c * p.weight })
            .collect();
        GridMeasure::new(density, singular)
    }

    /// Total mass of the measure on the whole domain.
    pub fn total_mass(&self) -> f64 {
        let full = NodeSet::full(self.domain().clone());
        measure_of(self, Region::Set(&full))
    }
}

/// Length of the part of segment `[p, q]` strictly inside the ball.
fn segment_in_ball(p: Point, q: Point, ball: &Ball) -> f64 {
    let d = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
    let m = [p[0] - ball.center[0], p[1] - ball.center[1], p[2] - ball.center[2]];
    let a = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    if a == 0.0 {
        return 0.0;
    }
    let b = 2.0 * (d[0] * m[0] + d[1] * m[1] + d[2] * m[2]);
    let c = m[0] * m[0] + m[1] * m[1] + m[2] * m[2] - ball.radius * ball.radius;
    let disc = b * b - 4.0 * a * c;
    if disc <= 0.0 {
        return 0.0;
    }
    let sq = disc.sqrt_();
    let t0 = ((-b - sq) / (2.0 * a)).max(0.0);
    let t1 = ((-b + sq) / (2.0 * a)).min(1.0);
    if t1 <= t0 {
        0.0
    } else {
        (t1 - t0) * a.sqrt_()
    }
}

/// Length of the part of segment `[p, q]` inside the axis box `[lo, hi]`.
fn segment_in_box(p: Point, q: Point, lo: Point, hi: Point, dim: usize) -> f64 {
    let mut t0 = 0.0f64;
    let mut t1 = 1.0f64;
    for a in 0..dim {
        let d = q[a] - p[a];
        if d.abs_() < 1e-300 {
            if p[a] < lo[a] || p[a] > hi[a] {
                return 0.0;
            }
        } else {
            let mut ta = (lo[a] - p[a]) / d;
            let mut tb = (hi[a] - p[a]) / d;
            if ta > tb {
                core::mem::swap(&mut ta, &mut tb);
            }
            t0 = t0.max(ta);
            t1 = t1.min(tb);
            if t0 >= t1 {
                return 0.0;
            }
        }
    }
    (t1 - t0) * dist(p, q)
}

fn support_length_in(part: &SingularPart, domain: &GridDomain, region: Region<'_>) -> f64 {
    match (&part.support, region) {
        (SingularSupport::Points(pts), Region::Ball(b)) => {
            pts.iter().filter(|&&p| dist(p, b.center) < b.radius).count() as f64
        }
        (SingularSupport::Points(pts), Region::Set(s)) => {
            let h2 = domain.spacing() / 2.0;
            pts.iter()
                .filter(|&&p| {
                    let i = domain.nearest_node(p);
                    s.contains(i)
                        && (0..domain.dim()).all(|a| (p[a] - domain.point(i)[a]).abs_() <= h2)
                })
                .count() as f64
        }
        (SingularSupport::Polyline(pts), Region::Ball(b)) => {
            pts.windows(2).map(|seg| segment_in_ball(seg[0], seg[1], b)).sum()
        }
        (SingularSupport::Polyline(pts), Region::Set(s)) => {
            let h2 = domain.spacing() / 2.0;
            let mut total = 0.0;
            for seg in pts.windows(2) {
                // candidate cells: nodes near the segment midpoint
                let reach = 2.0 * h2 + 0.5 * dist(seg[0], seg[1]) + domain.spacing();
                let mid = [
                    0.5 * (seg[0][0] + seg[1][0]),
                    0.5 * (seg[0][1] + seg[1][1]),
                    0.5 * (seg[0][2] + seg[1][2]),
                ];
                for i in domain.nodes_within(mid, reach) {
                    if !s.contains(i) {
                        continue;
                    }
                    let c = domain.point(i);
                    let mut lo = c;
                    let mut hi = c;
                    for a in 0..domain.dim() {
                        lo[a] -= h2;
                        hi[a] += h2;
                    }
                    total += segment_in_box(seg[0], seg[1], lo, hi, domain.dim());
                }
            }
            total
        }
    }
}

/// Evaluates the measure on a region: cell density mass plus singular mass.
///
/// Returns 0 for regions that intersect nothing; the cell mass uses the
/// discrete volume convention `(node count) * h^n` throughout the crate.
pub fn measure_of(nu: &GridMeasure, region: Region<'_>) -> f64 {
    let domain = nu.domain();
    let cell = domain.cell_volume();
    let mut total = 0.0;
    match region {
        Region::Ball(b) => {
            for i in domain.nodes_within(b.center, b.radius) {
                total += nu.density.get(i) * cell;
            }
        }
        Region::Set(s) => {
            for i in s.indices() {
                total += nu.density.get(i) * cell;
            }
        }
    }
    for part in nu.singular_parts() {
        total += part.weight * support_length_in(part, domain, region);
    }
    total
}

/// Discrete volume of a ball: `(node count) * h^n`, the same convention the
/// measure evaluation uses for its density part.
pub fn discrete_ball_volume(domain: &GridDomain, ball: &Ball) -> f64 {
    domain.nodes_within(ball.center, ball.radius).len() as f64 * domain.cell_volume()
}

/// The total-variation density measure of a field: each stencil edge spreads
/// its mass `w |u_p - u_q|` half onto each endpoint cell, so the total mass
/// equals the total variation.
pub fn tv_density_measure(
    u: &ScalarField,
    stencil: &PerimeterStencil,
) -> Result<GridMeasure, CoreError> {
    let domain = u.domain();
    let cell = domain.cell_volume();
    let mut dens = alloc::vec![0.0f64; domain.len()];
    let mut infinite = false;
    stencil.for_each_edge(domain, |p, q, w| {
        let a = u.get(p);
        let b = u.get(q);
        if a.is_infinite() || b.is_infinite() {
            infinite = true;
        } else {
            let m = 0.5 * w * (a - b).abs_() / cell;
            dens[p] += m;
            dens[q] += m;
        }
    });
    if infinite {
        return Err(CoreError::InfiniteValue);
    }
    GridMeasure::from_density(ScalarField::new(domain.clone(), dens)?)
}

/// Report of the sampled membership diagnostic for the measure class.
#[derive(Clone, Debug)]
pub struct ClassMDiagnostic {
    /// Largest observed `nu(A ∩ W) / (delta * nu(W))` over admissible
    /// candidates; a lower bound for the best constant, not a certificate.
    pub worst_ratio: f64,
    /// Indices of candidates that passed the capacity-density hypothesis.
    pub admissible: Vec<usize>,
    /// Indices of candidates that violated it and were skipped.
    pub skipped: Vec<usize>,
}

/// Probes the defining inequality of the measure class on a user-supplied
/// candidate family.
///
/// A candidate `A` is admissible when `capa1(B(x,r) ∩ A) / r^(n-1) < delta`
/// for every `x` in `W`; violating candidates are skipped and reported. For
/// admissible candidates the ratio `nu(A ∩ W) / (delta * nu(W))` is recorded
/// and the largest is returned. Quantifying over all Borel sets is
/// infeasible, so this is a falsifier, never a membership proof.
pub fn class_m_diagnostic(
    nu: &GridMeasure,
    w: &NodeSet,
    delta: f64,
    candidates: &[NodeSet],
    r: f64,
    stencil: &PerimeterStencil,
) -> Result<ClassMDiagnostic, CoreError> {
    if !(delta > 0.0) {
        return Err(CoreError::BadParameter("delta"));
    }
    let domain = nu.domain();
    if w.domain() != domain {
        return Err(CoreError::ShapeMismatch);
    }
    let mut solver = CapacitySolver::new(domain, stencil);
    let scale = r.powf_((domain.dim() - 1) as f64);
    let nu_w = measure_of(nu, Region::Set(w));
    let mut out =
        ClassMDiagnostic { worst_ratio: 0.0, admissible: Vec::new(), skipped: Vec::new() };
    'cand: for (ci, a) in candidates.iter().enumerate() {
        if a.domain() != domain {
            return Err(CoreError::ShapeMismatch);
        }
        // hypothesis check; centers whose ball misses A pass trivially
        for x in w.indices() {
            let ball_idx = domain.nodes_within(domain.point(x), r);
            let local: Vec<usize> = ball_idx.into_iter().filter(|&i| a.contains(i)).collect();
            if local.is_empty() {
                continue;
            }
            if solver.capa1_value(&local) / scale >= delta {
                out.skipped.push(ci);
                continue 'cand;
            }
        }
        out.admissible.push(ci);
        let num = measure_of(nu, Region::Set(&a.intersect(w)));
        let ratio = if num == 0.0 {
            0.0
        } else if nu_w == 0.0 {
            f64::INFINITY
        } else {
            num / (delta * nu_w)
        };
        out.worst_ratio = out.worst_ratio.max(ratio);
    }
    if out.admissible.is_empty() {
        return Err(CoreError::NoAdmissibleCandidate);
    }
    Ok(out)
}
