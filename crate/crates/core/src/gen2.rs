//! Minimal generating sets in ℕ² from a bounded polygon of candidates.
//!
//! * `g₁, g₂ < 0`: `S = {0}`.
//! * `g₁, g₂ > 0`: candidates are the members in the triangle
//!   `hull{O, w₁ + ũ₁, w₂ + ũ₂}`.
//! * otherwise: candidates are the members in the strip parallelogram
//!   `hull{O, u, u + w + ũ, w + ũ}`.

use serde::Serialize;

use crate::arith::{Rational, RationalPoint};
use crate::error::{Error, Result};
use crate::lines::{self, Axis};
use crate::model::{GeneratorSet, LatticePoint, ModularInequality};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    Strip,
    Triangle,
    /// Any other polygon.
    Custom,
}

/// A closed convex polygon, vertices counter-clockwise without repeats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Region2 {
    pub vertices: Vec<RationalPoint>,
    pub kind: RegionKind,
}

impl Region2 {
    /// Convex hull of `points`; a point or a segment when degenerate.
    pub fn hull(points: &[RationalPoint], kind: RegionKind) -> Result<Self> {
        Ok(Region2 {
            vertices: convex_hull(points)?,
            kind,
        })
    }

    /// All lattice points in the closed polygon, sorted graded-lexicographically.
    pub fn lattice_points(&self) -> Result<Vec<LatticePoint>> {
        let v = &self.vertices;
        let Some(first) = v.first() else {
            return Err(Error::UnboundedRegion);
        };
        let (mut xlo, mut xhi, mut ylo, mut yhi) = (first.x, first.x, first.y, first.y);
        for p in v {
            xlo = xlo.min(p.x);
            xhi = xhi.max(p.x);
            ylo = ylo.min(p.y);
            yhi = yhi.max(p.y);
        }
        let edges: Vec<(RationalPoint, RationalPoint)> = if v.len() < 2 {
            Vec::new()
        } else {
            (0..v.len()).map(|i| (v[i], v[(i + 1) % v.len()])).collect()
        };
        let mut out = Vec::new();
        for y in ylo.ceil()..=yhi.floor() {
            let yr = Rational::integer(y);
            let (mut lo, mut hi) = (xlo.ceil(), xhi.floor());
            for &(a, c) in &edges {
                // Inside iff dx·(y - a.y) - dy·(x - a.x) ≥ 0.
                let dx = c.x.checked_sub(a.x)?;
                let dy = c.y.checked_sub(a.y)?;
                let t = dx.checked_mul(yr.checked_sub(a.y)?)?;
                if dy.is_zero() {
                    if t.signum() < 0 {
                        hi = lo - 1;
                    }
                    continue;
                }
                let bound = a.x.checked_add(t.checked_div(dy)?)?;
                if dy.signum() > 0 {
                    hi = hi.min(bound.floor());
                } else {
                    lo = lo.max(bound.ceil());
                }
            }
            for x in lo..=hi {
                out.push(LatticePoint::from([x, y]));
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Andrew's monotone chain over exact rationals, counter-clockwise.
fn convex_hull(points: &[RationalPoint]) -> Result<Vec<RationalPoint>> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.cmp(&b.x).then(a.y.cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return Ok(pts);
    }
    let turn = |o: RationalPoint, a: RationalPoint, b: RationalPoint| -> Result<i128> {
        Ok(a.checked_sub(o)?.cross(b.checked_sub(o)?)?.signum())
    };
    let mut lower: Vec<RationalPoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p)? <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<RationalPoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p)? <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(lower)
}

fn lattice_to_rational(p: &LatticePoint) -> RationalPoint {
    RationalPoint::integer(p.coords()[0], p.coords()[1])
}

/// Members of `S` in the closed polygon, origin excluded.
pub fn enumerate_region(ineq: &ModularInequality, region: &Region2) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::new();
    for p in region.lattice_points()? {
        if !p.is_zero() && ineq.member(&p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// `hull{O, u, u + w + ũ, w + ũ}` for `g₁g₂ ≤ 0`.
pub fn strip_region(ineq: &ModularInequality) -> Result<Region2> {
    let geo = lines::strip_geometry(ineq)?;
    let u = lattice_to_rational(&geo.u);
    let wt = geo.w.checked_add(lattice_to_rational(&geo.u_tilde))?;
    Region2::hull(
        &[RationalPoint::origin(), u, u.checked_add(wt)?, wt],
        RegionKind::Strip,
    )
}

/// `hull{O, w₁ + ũ₁, w₂ + ũ₂}` for `g₁, g₂ > 0`.
pub fn triangle_region(ineq: &ModularInequality) -> Result<Region2> {
    let mut corners = vec![RationalPoint::origin()];
    for axis in [Axis::X, Axis::Y] {
        let w = lines::axis_point(ineq, axis)?;
        let ut = lines::axis_generator(ineq, axis)?;
        corners.push(w.checked_add(lattice_to_rational(&ut))?);
    }
    Region2::hull(&corners, RegionKind::Triangle)
}

/// Whether `h` is a sum of two nonzero members of `S`, found by scanning
/// every `s ⪯ h`.
fn decomposable(ineq: &ModularInequality, h: &LatticePoint) -> Result<bool> {
    let hc = h.coords();
    let mut s = vec![0i128; hc.len()];
    loop {
        // Odometer over the box [0, h].
        let mut i = 0;
        loop {
            if i == hc.len() {
                return Ok(false);
            }
            if s[i] < hc[i] {
                s[i] += 1;
                break;
            }
            s[i] = 0;
            i += 1;
        }
        if s == hc {
            return Ok(false);
        }
        let rest: Vec<i128> = hc.iter().zip(&s).map(|(a, b)| a - b).collect();
        if ineq.member_slice(&s)? && ineq.member_slice(&rest)? {
            return Ok(true);
        }
    }
}

/// The elements of `candidates` that are nonzero members of `S` and not a
/// sum of two nonzero members.
///
/// When the candidates generate `S` the result is its minimal generating set.
pub fn minimalize(
    candidates: impl IntoIterator<Item = LatticePoint>,
    ineq: &ModularInequality,
) -> Result<GeneratorSet> {
    let mut cands = Vec::new();
    for c in candidates {
        if !c.is_zero() && ineq.member(&c)? {
            cands.push(c);
        }
    }
    cands.sort();
    cands.dedup();
    let mut gens: Vec<LatticePoint> = Vec::new();
    for h in cands {
        let mut reducible = false;
        for g in &gens {
            if g.precedes(&h) && ineq.member(&h.checked_sub(g)?)? {
                reducible = true;
                break;
            }
        }
        if !reducible && !decomposable(ineq, &h)? {
            gens.push(h);
        }
    }
    Ok(GeneratorSet::minimal(gens))
}

/// Minimal generating set of `S ⊆ ℕ²`.
pub fn min_gens_n2(ineq: &ModularInequality) -> Result<GeneratorSet> {
    let &[g1, g2] = ineq.g_coeffs() else {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: ineq.dim(),
        });
    };
    if g1 < 0 && g2 < 0 {
        return Ok(GeneratorSet::trivial());
    }
    if g1 > 0 && g2 > 0 {
        return minimalize(enumerate_region(ineq, &triangle_region(ineq)?)?, ineq);
    }
    if g1 <= 0 && g2 <= 0 {
        // g vanishes on one axis and is negative elsewhere: S = ℕu.
        return Ok(GeneratorSet::minimal(vec![lines::compute_u(ineq)?]));
    }
    minimalize(enumerate_region(ineq, &strip_region(ineq)?)?, ineq)
}
