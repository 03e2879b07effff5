//! Apéry sets and the Cohen-Macaulay, Gorenstein and Buchsbaum criteria for
//! semigroups of ℕ² with a two-dimensional cone.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frob::FrobeniusContext;
use crate::gen2::{self, Region2};
use crate::lines;
use crate::model::{GeneratorSet, LatticePoint, ModularInequality};

/// `Ap(u) ∩ Ap(ũ)` and its maximal elements for `a ≤_S b ⇔ b - a ∈ S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AperyData {
    pub u: LatticePoint,
    pub u_tilde: LatticePoint,
    /// Members `h` of the strip polygon, or zero, with `h - u ∉ S` and `h - ũ ∉ S`.
    pub apery_restricted: Vec<LatticePoint>,
    pub maximal_elements: Vec<LatticePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub apery_intersection: Option<Vec<LatticePoint>>,
    pub maximal_elements: Option<Vec<LatticePoint>>,
    /// A gap violating the Cohen-Macaulay criterion.
    pub cm_counterexample: Option<LatticePoint>,
    /// Whether `S̄ = S` on the fundamental window.
    pub closure_equals_s: Option<bool>,
    /// Gaps of `S` in the fundamental region.
    pub gap_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub cohen_macaulay: bool,
    pub gorenstein: bool,
    /// `None` when the criteria do not decide.
    pub buchsbaum: Option<bool>,
    pub witnesses: Witnesses,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Strip,
    Positive,
}

fn shape(ineq: &ModularInequality) -> Result<Shape> {
    let &[g1, g2] = ineq.g_coeffs() else {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: ineq.dim(),
        });
    };
    if g1 <= 0 && g2 <= 0 {
        return Err(Error::OutOfHypothesis(
            "S needs a two-dimensional cone (some g_i > 0)".into(),
        ));
    }
    Ok(if g1 > 0 && g2 > 0 {
        Shape::Positive
    } else {
        Shape::Strip
    })
}

fn minus(h: &LatticePoint, s: &LatticePoint) -> Result<LatticePoint> {
    h.checked_sub(s)
}

/// `Ap(u) ∩ Ap(ũ)`, which lies inside the strip polygon.
pub fn apery_intersection(ineq: &ModularInequality) -> Result<AperyData> {
    if shape(ineq)? != Shape::Strip {
        return Err(Error::SignCondition("Apéry data needs g1*g2 <= 0".into()));
    }
    let geo = lines::strip_geometry(ineq)?;
    let mut candidates = vec![LatticePoint::zero(2)];
    candidates.extend(gen2::enumerate_region(ineq, &gen2::strip_region(ineq)?)?);
    let mut restricted = Vec::new();
    for h in candidates {
        if !ineq.member(&minus(&h, &geo.u)?)? && !ineq.member(&minus(&h, &geo.u_tilde)?)? {
            restricted.push(h);
        }
    }
    restricted.sort();
    let maximal = maximal_elements(ineq, &restricted)?;
    Ok(AperyData {
        u: geo.u,
        u_tilde: geo.u_tilde,
        apery_restricted: restricted,
        maximal_elements: maximal,
    })
}

/// Maximal elements of `set` for `a ≤_S b ⇔ b - a ∈ S`.
pub fn maximal_elements(ineq: &ModularInequality, set: &[LatticePoint]) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::new();
    for a in set {
        let mut dominated = false;
        for c in set {
            if c != a && ineq.member(&minus(c, a)?)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            out.push(a.clone());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmVerdict {
    pub value: bool,
    pub counterexample: Option<LatticePoint>,
    pub gap_count: usize,
}

/// Gaps in the fundamental region.
fn gaps(ctx: &FrobeniusContext<'_>, ineq: &ModularInequality) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::new();
    for p in ctx.candidate_region()?.lattice_points()? {
        if !ineq.member(&p)? {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn is_cohen_macaulay(ineq: &ModularInequality) -> Result<CmVerdict> {
    let shape = shape(ineq)?;
    let ctx = FrobeniusContext::new(ineq)?;
    let gaps = gaps(&ctx, ineq)?;
    match shape {
        Shape::Positive => {
            // The complement is finite: a gap of largest g has every
            // interior translate in S.
            let g = ineq.g();
            let mut witness: Option<(i128, LatticePoint)> = None;
            for q in &gaps {
                let v = g.eval(q)?;
                if witness.as_ref().is_none_or(|(best, _)| v > *best) {
                    witness = Some((v, q.clone()));
                }
            }
            Ok(CmVerdict {
                value: witness.is_none(),
                counterexample: witness.map(|(_, q)| q),
                gap_count: gaps.len(),
            })
        }
        Shape::Strip => {
            let geo = ctx.strip_geometry().ok_or(Error::NoPositiveAxis)?;
            for v in &gaps {
                if ineq.member(&v.checked_add(&geo.u)?)? && ineq.member(&v.checked_add(&geo.u_tilde)?)? {
                    return Err(Error::Consistency(format!(
                        "gap {v} has both {v} + u and {v} + ũ in S"
                    )));
                }
            }
            Ok(CmVerdict {
                value: true,
                counterexample: None,
                gap_count: gaps.len(),
            })
        }
    }
}

/// Gorenstein iff Cohen-Macaulay and `Ap(u) ∩ Ap(ũ)` has one maximal element.
pub fn is_gorenstein(ineq: &ModularInequality) -> Result<(bool, Option<AperyData>)> {
    let cm = is_cohen_macaulay(ineq)?;
    if !cm.value {
        return Ok((false, None));
    }
    if shape(ineq)? == Shape::Positive {
        // S = ℕ².
        return Ok((true, None));
    }
    let data = apery_intersection(ineq)?;
    Ok((data.maximal_elements.len() == 1, Some(data)))
}

/// Whether `S̄ = {s : s + h ∈ S for every minimal generator h}` agrees with
/// `S` on the bounding box of `region`.
fn closure_equals_s(ineq: &ModularInequality, gens: &GeneratorSet, region: &Region2) -> Result<bool> {
    let (mut xmax, mut ymax) = (0, 0);
    for v in &region.vertices {
        xmax = xmax.max(v.x.ceil());
        ymax = ymax.max(v.y.ceil());
    }
    for x in 0..=xmax {
        for y in 0..=ymax {
            let s = LatticePoint::from([x, y]);
            if ineq.member(&s)? {
                continue;
            }
            let mut in_closure = true;
            for h in &gens.points {
                if !ineq.member(&s.checked_add(h)?)? {
                    in_closure = false;
                    break;
                }
            }
            if in_closure {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Some(true)` when `S̄ = S` and `S` is Cohen-Macaulay; `None` outside the
/// strip case, where the criteria do not decide.
pub fn is_buchsbaum(ineq: &ModularInequality) -> Result<(Option<bool>, Option<bool>)> {
    let cm = is_cohen_macaulay(ineq)?;
    match shape(ineq)? {
        Shape::Positive if cm.value => Ok((Some(true), Some(true))),
        Shape::Positive => Ok((None, None)),
        Shape::Strip => {
            let gens = gen2::min_gens_n2(ineq)?;
            let eq = closure_equals_s(ineq, &gens, &gen2::strip_region(ineq)?)?;
            Ok((Some(eq && cm.value), Some(eq)))
        }
    }
}

pub fn properties(ineq: &ModularInequality) -> Result<PropertyReport> {
    let cm = is_cohen_macaulay(ineq)?;
    let (gorenstein, apery) = is_gorenstein(ineq)?;
    let (buchsbaum, closure) = is_buchsbaum(ineq)?;
    if gorenstein && !cm.value {
        return Err(Error::Consistency("Gorenstein without Cohen-Macaulay".into()));
    }
    let (apery_intersection, maximal_elements) = match apery {
        Some(a) => (Some(a.apery_restricted), Some(a.maximal_elements)),
        None => (None, None),
    };
    Ok(PropertyReport {
        cohen_macaulay: cm.value,
        gorenstein,
        buchsbaum,
        witnesses: Witnesses {
            apery_intersection,
            maximal_elements,
            cm_counterexample: cm.counterexample,
            closure_equals_s: closure,
            gap_count: cm.gap_count,
        },
    })
}
