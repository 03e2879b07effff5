//! Generating sets in ℕᵖ by the constructive finiteness argument.
//!
//! With mixed signs in `g`, the cone `g(x) ≥ 0` is cut into slabs
//! `g = 1, …, b - 1`: starting from its Hilbert basis `C₀`, each `C_k` replaces
//! the level-`k` generators by sums that avoid the slab. The generators of `S`
//! are then drawn from `C_{b-1}`, translates of its high elements along the
//! kernel of `g`, and the minimal solutions `M_dk` of `g(x) = d`,
//! `f(x) ≡ k (mod b)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith;
use crate::dioph::{self, ConePartition, DiophSystem, MinimalSolutionSet};
use crate::error::{Error, Result};
use crate::gen2::minimalize;
use crate::model::{GeneratorSet, LatticePoint, ModularInequality};

pub const MAX_DIM: usize = 3;
pub const DEFAULT_CAP: usize = 1_000_000;
pub const CAP_ENV: &str = "PROPMOD_CAP";

/// How the translates of high elements along `V` are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TranslateMode {
    /// `w + Σ rᵢvᵢ` with `0 ≤ rᵢ < b`.
    #[default]
    Combinations,
    /// Every lattice point `z` with `w ≺ z ⪯ w + Σ b·vᵢ`.
    FullBox,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenpOptions {
    /// Largest intermediate set allowed.
    pub cap: usize,
    pub translates: TranslateMode,
}

impl Default for GenpOptions {
    fn default() -> Self {
        GenpOptions {
            cap: cap_from_env(),
            translates: TranslateMode::default(),
        }
    }
}

/// `PROPMOD_CAP` when set to a positive integer, otherwise [`DEFAULT_CAP`].
pub fn cap_from_env() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&c| c > 0)
        .unwrap_or(DEFAULT_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MdkEntry {
    pub d: i128,
    pub k: i128,
    pub solutions: Vec<LatticePoint>,
}

/// Every intermediate set of the construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    /// Minimal solutions of `g(x) = 0`, `f(x) ≡ 0 (mod b)`.
    pub u: MinimalSolutionSet,
    /// Minimal solutions of `g(x) = 0`.
    pub v: MinimalSolutionSet,
    pub c0: ConePartition,
    /// `ck[k - 1]` is `C_k` for `1 ≤ k ≤ b - 1`.
    pub ck: Vec<Vec<LatticePoint>>,
    /// `(C_{b-1} ∖ V) ∪ U`.
    pub c: Vec<LatticePoint>,
    /// `c` together with the member translates of its high elements.
    pub c_tilde: Vec<LatticePoint>,
    pub mdk: Vec<MdkEntry>,
    pub generators: GeneratorSet,
}

fn check_cap(stage: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { stage, size, cap })
    } else {
        Ok(())
    }
}

fn validate(ineq: &ModularInequality) -> Result<()> {
    if ineq.dim() > MAX_DIM {
        return Err(Error::DimensionTooLarge {
            max: MAX_DIM,
            found: ineq.dim(),
        });
    }
    Ok(())
}

pub fn min_gens_np(ineq: &ModularInequality) -> Result<GeneratorSet> {
    min_gens_np_with(ineq, &GenpOptions::default())
}

pub fn min_gens_np_with(ineq: &ModularInequality, opts: &GenpOptions) -> Result<GeneratorSet> {
    validate(ineq)?;
    let g = ineq.g_coeffs();
    if g.iter().all(|&c| c < 0) {
        return Ok(GeneratorSet::trivial());
    }
    if g.iter().all(|&c| c > 0) {
        return positive_generators(ineq, opts);
    }
    Ok(construction_trace_with(ineq, opts)?.generators)
}

/// Smallest `t ≥ 1` with `t·eᵢ ∈ S`; requires `gᵢ > 0`.
fn axis_multiplicity(ineq: &ModularInequality, i: usize) -> Result<i128> {
    let (a, c, b) = (ineq.f().coeffs()[i], ineq.g().coeffs()[i], ineq.b());
    let mut t = 1;
    loop {
        let ct = arith::mul(c, t)?;
        if ct >= b || arith::mod_reduce(arith::mul(a, t)?, b)? <= ct {
            return Ok(t);
        }
        t += 1;
    }
}

/// All `gᵢ > 0`: a minimal generator `h` with `hᵢ ≥ aᵢ` (the axis generator)
/// has `g(h) < b + gᵢaᵢ`, otherwise `h - aᵢeᵢ` would lie in `g ≥ b`. Hence
/// every minimal generator satisfies `g(h) ≤ b - 1 + Σ gᵢaᵢ`.
fn positive_generators(ineq: &ModularInequality, opts: &GenpOptions) -> Result<GeneratorSet> {
    let g = ineq.g_coeffs();
    let mut level = ineq.b() - 1;
    for i in 0..ineq.dim() {
        level = arith::add(level, arith::mul(g[i], axis_multiplicity(ineq, i)?)?)?;
    }
    let mut candidates = Vec::new();
    let mut x = vec![0i128; ineq.dim()];
    simplex_points(g, level, 0, 0, &mut x, &mut |p| {
        if candidates.len() >= opts.cap {
            return Err(Error::CapExceeded {
                stage: "positive-branch candidates",
                size: candidates.len() + 1,
                cap: opts.cap,
            });
        }
        if ineq.member_slice(p)? {
            candidates.push(LatticePoint::new(p.to_vec()));
        }
        Ok(())
    })?;
    minimalize(candidates, ineq)
}

/// Visit every `x ∈ ℕᵖ` with `g(x) ≤ level`, for positive `g`.
fn simplex_points(
    g: &[i128],
    level: i128,
    i: usize,
    used: i128,
    x: &mut Vec<i128>,
    visit: &mut impl FnMut(&[i128]) -> Result<()>,
) -> Result<()> {
    if i == g.len() {
        return visit(x);
    }
    let mut t = 0;
    while arith::add(used, arith::mul(g[i], t)?)? <= level {
        x[i] = t;
        simplex_points(g, level, i + 1, used + g[i] * t, x, visit)?;
        t += 1;
    }
    x[i] = 0;
    Ok(())
}

pub fn construction_trace(ineq: &ModularInequality) -> Result<ConstructionTrace> {
    construction_trace_with(ineq, &GenpOptions::default())
}

pub fn construction_trace_with(ineq: &ModularInequality, opts: &GenpOptions) -> Result<ConstructionTrace> {
    validate(ineq)?;
    let g = ineq.g();
    let g_coeffs = g.coeffs();
    let mixed = g_coeffs.iter().any(|&c| c <= 0) && g_coeffs.iter().any(|&c| c >= 0);
    if !mixed {
        return Err(Error::SignCondition(
            "the slab construction needs g_i * g_j <= 0 for some i, j".into(),
        ));
    }
    let p = ineq.dim();
    let b = ineq.b();

    let u = dioph::minimal_solutions(
        &DiophSystem::new(p)
            .equality(g.clone(), 0)
            .congruence(ineq.f().clone(), 0, b),
    )?;
    let v = dioph::minimal_solutions(&DiophSystem::new(p).equality(g.clone(), 0))?;
    let basis = dioph::cone_hilbert_basis(g)?;
    let c0 = ConePartition::new(&basis.points, g, b)?;
    let v_set: BTreeSet<LatticePoint> = v.points.iter().cloned().collect();

    let mut current: BTreeSet<LatticePoint> = basis.points.iter().cloned().collect();
    let mut ck = Vec::new();
    for k in 1..b {
        let mut level = Vec::new();
        let mut next = BTreeSet::new();
        for s in &current {
            if g.eval(s)? == k {
                level.push(s.clone());
            } else {
                next.insert(s.clone());
            }
        }
        for w in &level {
            next.insert(w.scale(2)?);
            next.insert(w.scale(3)?);
            for s in current.iter().filter(|s| !v_set.contains(*s)) {
                next.insert(w.checked_add(s)?);
                check_cap("slab recursion", next.len(), opts.cap)?;
            }
        }
        check_cap("slab recursion", next.len(), opts.cap)?;
        ck.push(next.iter().cloned().collect::<Vec<_>>());
        current = next;
    }

    let mut c: BTreeSet<LatticePoint> = current.difference(&v_set).cloned().collect();
    c.extend(u.points.iter().cloned());

    let mut c_tilde = c.clone();
    for w in &c {
        if g.eval(w)? < b {
            continue;
        }
        match opts.translates {
            TranslateMode::Combinations => {
                add_combinations(ineq, w, &v.points, &mut c_tilde, opts.cap)?
            }
            TranslateMode::FullBox => add_box(ineq, w, &v.points, &mut c_tilde, opts.cap)?,
        }
    }

    let mut mdk = Vec::new();
    for d in 1..b {
        for k in 0..=d {
            let sys = DiophSystem::new(p)
                .equality(g.clone(), d)
                .congruence(ineq.f().clone(), k, b);
            mdk.push(MdkEntry {
                d,
                k,
                solutions: dioph::minimal_solutions(&sys)?.points,
            });
        }
    }

    let raw = c_tilde
        .iter()
        .cloned()
        .chain(mdk.iter().flat_map(|e| e.solutions.iter().cloned()));
    let generators = minimalize(raw, ineq)?;

    Ok(ConstructionTrace {
        u,
        v,
        c0,
        ck,
        c: c.into_iter().collect(),
        c_tilde: c_tilde.into_iter().collect(),
        mdk,
        generators,
    })
}

/// Insert the members `w + Σ rᵢvᵢ`, `0 ≤ rᵢ < b`.
fn add_combinations(
    ineq: &ModularInequality,
    w: &LatticePoint,
    vs: &[LatticePoint],
    out: &mut BTreeSet<LatticePoint>,
    cap: usize,
) -> Result<()> {
    let b = ineq.b();
    let mut r = vec![0i128; vs.len()];
    loop {
        let mut z = w.clone();
        for (ri, vi) in r.iter().zip(vs) {
            z = z.checked_add(&vi.scale(*ri)?)?;
        }
        if ineq.member(&z)? {
            out.insert(z);
            check_cap("kernel translates", out.len(), cap)?;
        }
        let mut i = 0;
        loop {
            if i == r.len() {
                return Ok(());
            }
            r[i] += 1;
            if r[i] < b {
                break;
            }
            r[i] = 0;
            i += 1;
        }
    }
}

/// Insert the members `z` with `w ≺ z ⪯ w + Σ b·vᵢ`.
fn add_box(
    ineq: &ModularInequality,
    w: &LatticePoint,
    vs: &[LatticePoint],
    out: &mut BTreeSet<LatticePoint>,
    cap: usize,
) -> Result<()> {
    let mut span = vec![0i128; w.dim()];
    for v in vs {
        for (s, &c) in span.iter_mut().zip(v.coords()) {
            *s = arith::add(*s, arith::mul(ineq.b(), c)?)?;
        }
    }
    let size = span
        .iter()
        .try_fold(1i128, |acc, &s| arith::mul(acc, s + 1))?;
    check_cap("kernel box", usize::try_from(size).unwrap_or(usize::MAX), cap)?;
    let mut off = vec![0i128; w.dim()];
    loop {
        let z = w.checked_add(&LatticePoint::new(off.clone()))?;
        if !off.iter().all(|&c| c == 0) && ineq.member(&z)? {
            out.insert(z);
            check_cap("kernel translates", out.len(), cap)?;
        }
        let mut i = 0;
        loop {
            if i == off.len() {
                return Ok(());
            }
            off[i] += 1;
            if off[i] <= span[i] {
                break;
            }
            off[i] = 0;
            i += 1;
        }
    }
}
