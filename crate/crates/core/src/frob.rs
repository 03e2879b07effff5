//! Frobenius vectors of proportionally modular semigroups in ℕ².
//!
//! `q` is a Frobenius vector when `q ∈ G(S) ∖ S` and every point of `G(S)` in
//! `q + Tint(L(S))` is a nonzero member, `Tint` being the open cone.

use serde::Serialize;

use crate::arith::{self, Rational, RationalPoint};
use crate::error::{Error, Result};
use crate::gen2::{self, Region2, RegionKind};
use crate::lines::{self, Axis, StripGeometry};
use crate::model::{dickson_minimal, GeneratorSet, LatticePoint, ModularInequality};

/// Basis `{(a, c), (0, d)}` of a rank-2 sublattice of ℤ², with `a, d > 0` and
/// `0 ≤ c < d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeBasis {
    pub first: [i128; 2],
    pub second: [i128; 2],
}

impl LatticeBasis {
    /// `[ℤ² : G]`.
    pub fn index(&self) -> i128 {
        self.first[0] * self.second[1]
    }

    pub fn contains(&self, z: &[i128]) -> bool {
        let [a, c] = self.first;
        let d = self.second[1];
        if z[0] % a != 0 {
            return false;
        }
        let y = z[1] - (z[0] / a) * c;
        y % d == 0
    }
}

/// Hermite basis of the group generated by the points.
pub fn group_basis(gens: &GeneratorSet) -> Result<LatticeBasis> {
    let mut first: Option<[i128; 2]> = None;
    let mut d = 0i128;
    for g in &gens.points {
        let &[x, y] = g.coords() else {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: g.dim(),
            });
        };
        match first {
            None if x == 0 => d = arith::gcd(d, y),
            None => first = Some(if x < 0 { [-x, -y] } else { [x, y] }),
            Some([a, c]) => {
                let (e, s, t) = ext_gcd(a, x);
                let new = [e, arith::add(arith::mul(s, c)?, arith::mul(t, y)?)?];
                // (x/e)·(a, c) - (a/e)·(x, y) has first coordinate 0.
                let rest = arith::sub(arith::mul(x / e, c)?, arith::mul(a / e, y)?)?;
                d = arith::gcd(d, rest);
                first = Some(new);
            }
        }
    }
    let Some([a, c]) = first else {
        return Err(Error::RankDeficient);
    };
    if d == 0 {
        return Err(Error::RankDeficient);
    }
    Ok(LatticeBasis {
        first: [a, arith::mod_reduce(c, d)?],
        second: [0, d],
    })
}

/// `(e, s, t)` with `e = gcd(a, b) > 0` and `s·a + t·b = e`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrobeniusCase {
    /// `g₁g₂ ≤ 0`.
    Strip,
    /// `g₁, g₂ > 0`.
    Positive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub case: FrobeniusCase,
    /// Non-members in the candidate polygon.
    pub delta: Vec<LatticePoint>,
    /// Elements of `delta` passing the definition.
    pub frobenius_vectors: Vec<LatticePoint>,
    pub minimal_frobenius_vectors: Vec<LatticePoint>,
    pub group_basis: LatticeBasis,
}

/// The data the definition check needs, computed once per semigroup.
pub struct FrobeniusContext<'a> {
    ineq: &'a ModularInequality,
    case: FrobeniusCase,
    strip: Option<StripGeometry>,
    group: LatticeBasis,
}

impl<'a> FrobeniusContext<'a> {
    pub fn new(ineq: &'a ModularInequality) -> Result<Self> {
        let &[g1, g2] = ineq.g_coeffs() else {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: ineq.dim(),
            });
        };
        if g1 <= 0 && g2 <= 0 {
            return Err(Error::OutOfHypothesis(
                "the cone of S has empty interior".into(),
            ));
        }
        let gens = gen2::min_gens_n2(ineq)?;
        let group = group_basis(&gens)?;
        let (case, strip) = if g1 > 0 && g2 > 0 {
            (FrobeniusCase::Positive, None)
        } else {
            (FrobeniusCase::Strip, Some(lines::strip_geometry(ineq)?))
        };
        Ok(FrobeniusContext {
            ineq,
            case,
            strip,
            group,
        })
    }

    pub fn case(&self) -> FrobeniusCase {
        self.case
    }

    pub fn strip_geometry(&self) -> Option<&StripGeometry> {
        self.strip.as_ref()
    }

    pub fn group(&self) -> &LatticeBasis {
        &self.group
    }

    /// Lattice points of the candidate polygon: `hull{O, u, w + u, w}` or
    /// `hull{O, w₁, w₂}`.
    pub fn candidate_region(&self) -> Result<Region2> {
        match &self.strip {
            Some(geo) => {
                let u = RationalPoint::integer(geo.u.coords()[0], geo.u.coords()[1]);
                Region2::hull(
                    &[RationalPoint::origin(), u, geo.w.checked_add(u)?, geo.w],
                    RegionKind::Custom,
                )
            }
            None => Region2::hull(
                &[
                    RationalPoint::origin(),
                    lines::axis_point(self.ineq, Axis::X)?,
                    lines::axis_point(self.ineq, Axis::Y)?,
                ],
                RegionKind::Custom,
            ),
        }
    }

    /// Whether `q ∈ ℕ²` is a Frobenius vector.
    pub fn is_frobenius_vector(&self, q: &LatticePoint) -> Result<bool> {
        let qc = q.coords();
        if qc.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: qc.len(),
            });
        }
        if !q.is_nonneg() || self.ineq.member(q)? || !self.group.contains(qc) {
            return Ok(false);
        }
        match &self.strip {
            Some(geo) => self.strip_check(q, geo),
            None => self.positive_check(q),
        }
    }

    /// Points `z = q + λu + μũ` with `0 < λ ≤ 1` and `0 < μ`, `g(z) < b`.
    /// Beyond `g ≥ b` every point is a member; other `λ` reduce to this range
    /// because membership is invariant under translation by `u`.
    fn strip_check(&self, q: &LatticePoint, geo: &StripGeometry) -> Result<bool> {
        let (u, ut) = (geo.u.coords(), geo.u_tilde.coords());
        let g = self.ineq.g();
        let gq = g.eval(q)?;
        let gut = g.eval(&geo.u_tilde)?;
        let b = self.ineq.b();
        let det = arith::sub(arith::mul(u[0], ut[1])?, arith::mul(u[1], ut[0])?)?;
        if det == 0 || gut <= 0 {
            return Err(Error::Consistency("u and ũ are not independent".into()));
        }
        let mu_max = Rational::new(b - gq, gut)?;
        let qc = q.coords();
        // Bounding box of the parallelogram q + [0,1]·u + [0, μmax]·ũ.
        let far = |i: usize| -> Result<[Rational; 4]> {
            let base = Rational::integer(qc[i]);
            let along_u = base.checked_add(Rational::integer(u[i]))?;
            let along_ut = mu_max.mul_int(ut[i])?;
            Ok([
                base,
                along_u,
                base.checked_add(along_ut)?,
                along_u.checked_add(along_ut)?,
            ])
        };
        let xs = far(0)?;
        let ys = far(1)?;
        let lo = |v: &[Rational; 4]| v.iter().min().map(|r| r.floor()).unwrap_or(0);
        let hi = |v: &[Rational; 4]| v.iter().max().map(|r| r.ceil()).unwrap_or(0);
        for x in lo(&xs)..=hi(&xs) {
            for y in lo(&ys)..=hi(&ys) {
                let t = [x - qc[0], y - qc[1]];
                let lam = Rational::new(t[0] * ut[1] - t[1] * ut[0], det)?;
                let mu = Rational::new(u[0] * t[1] - u[1] * t[0], det)?;
                if lam.signum() <= 0 || lam > Rational::ONE || mu.signum() <= 0 || mu >= mu_max {
                    continue;
                }
                if self.group.contains(&[x, y]) && !self.ineq.member_slice(&[x, y])? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Points `z ⪰ q + (1, 1)` with `g(z) < b`.
    fn positive_check(&self, q: &LatticePoint) -> Result<bool> {
        let (g1, g2) = (self.ineq.g_coeffs()[0], self.ineq.g_coeffs()[1]);
        let b = self.ineq.b();
        let qc = q.coords();
        let mut x = qc[0] + 1;
        while g1 * x + g2 * (qc[1] + 1) < b {
            let mut y = qc[1] + 1;
            while g1 * x + g2 * y < b {
                if self.group.contains(&[x, y]) && !self.ineq.member_slice(&[x, y])? {
                    return Ok(false);
                }
                y += 1;
            }
            x += 1;
        }
        Ok(true)
    }
}

/// Whether `q` is a Frobenius vector of `S`.
pub fn is_frobenius_vector(ineq: &ModularInequality, q: &LatticePoint) -> Result<bool> {
    FrobeniusContext::new(ineq)?.is_frobenius_vector(q)
}

pub fn frobenius_vectors(ineq: &ModularInequality) -> Result<FrobeniusReport> {
    let ctx = FrobeniusContext::new(ineq)?;
    let mut delta = Vec::new();
    for p in ctx.candidate_region()?.lattice_points()? {
        if !ineq.member(&p)? {
            delta.push(p);
        }
    }
    let mut passing = Vec::new();
    for q in &delta {
        if ctx.is_frobenius_vector(q)? {
            passing.push(q.clone());
        }
    }
    let minimal = dickson_minimal(passing.iter().cloned());
    if ctx.case == FrobeniusCase::Strip && !delta.is_empty() {
        let selected = closest_candidate(&ctx, &delta)?;
        if minimal != [selected.clone()] {
            return Err(Error::UniquenessViolated(format!(
                "closest gap {selected}, minimal passing vectors {minimal:?}"
            )));
        }
    }
    Ok(FrobeniusReport {
        case: ctx.case,
        delta,
        frobenius_vectors: passing,
        minimal_frobenius_vectors: minimal,
        group_basis: ctx.group,
    })
}

/// The gap nearest to `{g = b}`: largest `g`, then `⪯`-minimal, then the
/// definition decides between incomparable ones.
fn closest_candidate(ctx: &FrobeniusContext<'_>, delta: &[LatticePoint]) -> Result<LatticePoint> {
    let g = ctx.ineq.g();
    let mut best = i128::MIN;
    for q in delta {
        best = best.max(g.eval(q)?);
    }
    let mut closest = Vec::new();
    for q in delta {
        if g.eval(q)? == best {
            closest.push(q.clone());
        }
    }
    let closest = dickson_minimal(closest);
    if let [only] = closest.as_slice() {
        return Ok(only.clone());
    }
    let mut passing = Vec::new();
    for q in &closest {
        if ctx.is_frobenius_vector(q)? {
            passing.push(q.clone());
        }
    }
    match passing.as_slice() {
        [only] => Ok(only.clone()),
        _ => Err(Error::UniquenessViolated(format!(
            "closest gaps {closest:?}, of which {passing:?} pass"
        ))),
    }
}
