//! Restriction of `S` to rays, proportionally modular numerical semigroups,
//! and the plane vectors `u`, `ũ` and `w`.

use serde::Serialize;

use crate::arith::{self, Rational, RationalPoint};
use crate::error::{Error, Result};
use crate::model::{LatticePoint, ModularInequality};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RayKind {
    /// `c′ > 0`: the ray carries the numerical semigroup `a′x mod b ≤ c′x`.
    ProportionallyModular,
    /// `c′ = 0`: the ray carries `ℕ·(multiple·direction)`.
    FreeLine { multiple: i128 },
    /// `c′ < 0`: only the origin.
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayRestriction {
    /// Primitive: the gcd of its coordinates is 1.
    pub direction: LatticePoint,
    pub a_prime: i128,
    pub c_prime: i128,
    pub b: i128,
    pub kind: RayKind,
}

/// Restrict `S` to the ray spanned by `direction`, which is first made primitive.
pub fn restrict_to_ray(ineq: &ModularInequality, direction: &LatticePoint) -> Result<RayRestriction> {
    if direction.dim() != ineq.dim() {
        return Err(Error::DimensionMismatch {
            expected: ineq.dim(),
            found: direction.dim(),
        });
    }
    let d = direction.coords().iter().fold(0, |acc, &c| arith::gcd(acc, c));
    if d == 0 {
        return Err(Error::ZeroDirection);
    }
    let direction = LatticePoint::new(direction.coords().iter().map(|c| c / d).collect());
    let a_prime = ineq.f().eval(&direction)?;
    let c_prime = ineq.g().eval(&direction)?;
    let b = ineq.b();
    let kind = match c_prime.signum() {
        1 => RayKind::ProportionallyModular,
        0 => RayKind::FreeLine {
            multiple: free_multiple(a_prime, b)?,
        },
        _ => RayKind::Zero,
    };
    Ok(RayRestriction {
        direction,
        a_prime,
        c_prime,
        b,
        kind,
    })
}

/// Least `k ≥ 1` with `k·a ≡ 0 (mod b)`.
fn free_multiple(a: i128, b: i128) -> Result<i128> {
    let r = arith::mod_reduce(a, b)?;
    Ok(b / arith::gcd(r, b))
}

/// Membership in the numerical semigroup `{x ∈ ℕ : a x mod b ≤ c x}`.
fn numerical_member(a: i128, b: i128, c: i128, x: i128) -> Result<bool> {
    let cx = arith::mul(c, x)?;
    if cx >= b {
        return Ok(true);
    }
    Ok(arith::mod_reduce(arith::mul(a, x)?, b)? <= cx)
}

/// Minimal generators of `{x ∈ ℕ : a x mod b ≤ c x}`, in increasing order.
///
/// Every `x ≥ ⌈b/c⌉` is a member, so with multiplicity `m` no generator
/// exceeds `⌈b/c⌉ + m - 1`.
pub fn numerical_min_gens(a: i128, b: i128, c: i128) -> Result<Vec<i128>> {
    if c <= 0 {
        return Err(Error::NonPositiveSlope(c));
    }
    if b <= 0 {
        return Err(Error::NonPositiveModulus);
    }
    let conductor_bound = arith::ceil_div(b, c)?;
    let mut m = 1;
    while !numerical_member(a, b, c, m)? {
        m += 1;
    }
    let top = conductor_bound + m - 1;
    let len = usize::try_from(top + 1).map_err(|_| Error::Overflow)?;
    let mut member = vec![false; len];
    for (x, slot) in member.iter_mut().enumerate().skip(1) {
        *slot = numerical_member(a, b, c, x as i128)?;
    }
    let mut gens = Vec::new();
    for x in m as usize..len {
        if !member[x] {
            continue;
        }
        let reducible = (m as usize..=x / 2).any(|y| member[y] && member[x - y]);
        if !reducible {
            gens.push(x as i128);
        }
    }
    Ok(gens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    #[serde(rename = "OX")]
    X,
    #[serde(rename = "OY")]
    Y,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
        }
    }
}

/// The skeleton of a strip-case semigroup in ℕ².
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StripGeometry {
    /// `g(u) = 0`, `f(u) ≡ 0 (mod b)`, `⪯`-minimal nonzero.
    pub u: LatticePoint,
    /// Smallest nonzero member of `S` on `axis`.
    pub u_tilde: LatticePoint,
    /// `g(w) = b`, on `axis`.
    pub w: RationalPoint,
    pub axis: Axis,
}

fn require_plane(ineq: &ModularInequality) -> Result<(i128, i128)> {
    match ineq.g_coeffs() {
        &[g1, g2] => Ok((g1, g2)),
        other => Err(Error::DimensionMismatch {
            expected: 2,
            found: other.len(),
        }),
    }
}

fn require_strip(ineq: &ModularInequality) -> Result<(i128, i128)> {
    let (g1, g2) = require_plane(ineq)?;
    if g1.signum() * g2.signum() > 0 {
        return Err(Error::SignCondition(format!(
            "expected g1*g2 <= 0, got g = ({g1}, {g2})"
        )));
    }
    Ok((g1, g2))
}

/// Generator of `{x ∈ ℕ² : g(x) = 0, f(x) ≡ 0 (mod b)}`; requires `g₁g₂ ≤ 0`.
pub fn compute_u(ineq: &ModularInequality) -> Result<LatticePoint> {
    let (g1, g2) = require_strip(ineq)?;
    let d = if g1 == 0 {
        [1, 0]
    } else if g2 == 0 {
        [0, 1]
    } else {
        let e = arith::gcd(g1, g2);
        [g2.abs() / e, g1.abs() / e]
    };
    let fd = ineq.f().eval_slice(&d)?;
    LatticePoint::from(d).scale(free_multiple(fd, ineq.b())?)
}

/// The axis carrying `ũ` and `w`: OX when `g₁ > 0`, otherwise OY when `g₂ > 0`.
pub fn strip_axis(ineq: &ModularInequality) -> Result<Axis> {
    let (g1, g2) = require_strip(ineq)?;
    if g1 > 0 {
        Ok(Axis::X)
    } else if g2 > 0 {
        Ok(Axis::Y)
    } else {
        Err(Error::NoPositiveAxis)
    }
}

/// Smallest nonzero member of `S` on a coordinate axis whose `g` coefficient
/// is positive.
pub fn axis_generator(ineq: &ModularInequality, axis: Axis) -> Result<LatticePoint> {
    require_plane(ineq)?;
    let i = axis.index();
    let (a, c) = (ineq.f().coeffs()[i], ineq.g().coeffs()[i]);
    if c <= 0 {
        return Err(Error::NoPositiveAxis);
    }
    let mut x = 1;
    while !numerical_member(a, ineq.b(), c, x)? {
        x += 1;
    }
    let mut p = [0, 0];
    p[i] = x;
    Ok(LatticePoint::from(p))
}

/// `w = {g = b} ∩ axis` for a coordinate axis whose `g` coefficient is positive.
pub fn axis_point(ineq: &ModularInequality, axis: Axis) -> Result<RationalPoint> {
    require_plane(ineq)?;
    let c = ineq.g().coeffs()[axis.index()];
    if c <= 0 {
        return Err(Error::NoPositiveAxis);
    }
    let t = Rational::new(ineq.b(), c)?;
    Ok(match axis {
        Axis::X => RationalPoint::new(t, Rational::ZERO),
        Axis::Y => RationalPoint::new(Rational::ZERO, t),
    })
}

pub fn compute_u_tilde(ineq: &ModularInequality) -> Result<LatticePoint> {
    axis_generator(ineq, strip_axis(ineq)?)
}

pub fn compute_w(ineq: &ModularInequality) -> Result<RationalPoint> {
    axis_point(ineq, strip_axis(ineq)?)
}

pub fn strip_geometry(ineq: &ModularInequality) -> Result<StripGeometry> {
    let axis = strip_axis(ineq)?;
    Ok(StripGeometry {
        u: compute_u(ineq)?,
        u_tilde: axis_generator(ineq, axis)?,
        w: axis_point(ineq, axis)?,
        axis,
    })
}
