//! Minimal non-negative solutions of mixed systems of linear equations,
//! congruences and inequalities, and Hilbert bases of the cones `g(x) ≥ 0`.
//!
//! Every constraint is turned into a homogeneous equation over extra
//! non-negative columns:
//!
//! * `c·x = t` becomes `c·x - t·z = 0`;
//! * `c·x ≡ k (mod m)` becomes `c·x - m·t⁺ + m·t⁻ - k·z = 0`;
//! * `c·x ≥ l` becomes `c·x - s - l·z = 0`;
//!
//! where `z ∈ {0, 1}` carries the right-hand side and is omitted for
//! homogeneous systems. The extended system is solved by Contejean-Devie
//! completion and the solutions are projected back onto `x`.

use std::collections::HashSet;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::model::{dickson_minimal, LatticePoint, LinearForm};

pub const MAX_DIM: usize = 4;

/// Frontier size at which the completion gives up.
pub const DEFAULT_FRONTIER_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equality {
    pub form: LinearForm,
    pub target: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub form: LinearForm,
    pub residue: i128,
    pub modulus: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub form: LinearForm,
    pub lower: i128,
}

/// Conjunction of constraints over `x ∈ ℕᵖ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiophSystem {
    pub dim: usize,
    pub equalities: Vec<Equality>,
    pub congruences: Vec<Congruence>,
    pub inequalities: Vec<Inequality>,
}

impl DiophSystem {
    pub fn new(dim: usize) -> Self {
        DiophSystem {
            dim,
            equalities: Vec::new(),
            congruences: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    /// `form·x = target`.
    pub fn equality(mut self, form: impl Into<LinearForm>, target: i128) -> Self {
        self.equalities.push(Equality {
            form: form.into(),
            target,
        });
        self
    }

    /// `form·x ≡ residue (mod modulus)`.
    pub fn congruence(mut self, form: impl Into<LinearForm>, residue: i128, modulus: i128) -> Self {
        self.congruences.push(Congruence {
            form: form.into(),
            residue,
            modulus,
        });
        self
    }

    /// `form·x ≥ lower`.
    pub fn inequality(mut self, form: impl Into<LinearForm>, lower: i128) -> Self {
        self.inequalities.push(Inequality {
            form: form.into(),
            lower,
        });
        self
    }

    pub fn is_homogeneous(&self) -> bool {
        self.equalities.iter().all(|e| e.target == 0)
            && self.congruences.iter().all(|c| c.residue == 0)
            && self.inequalities.iter().all(|i| i.lower == 0)
    }

    fn validate(&self) -> Result<()> {
        if self.dim > MAX_DIM {
            return Err(Error::DimensionTooLarge {
                max: MAX_DIM,
                found: self.dim,
            });
        }
        if self.equalities.is_empty() && self.congruences.is_empty() && self.inequalities.is_empty() {
            return Err(Error::OutOfHypothesis("system has no constraint".into()));
        }
        let forms = self
            .equalities
            .iter()
            .map(|e| &e.form)
            .chain(self.congruences.iter().map(|c| &c.form))
            .chain(self.inequalities.iter().map(|i| &i.form));
        for form in forms {
            if form.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: form.dim(),
                });
            }
        }
        for c in &self.congruences {
            if c.modulus < 1 {
                return Err(Error::NonPositiveModulus);
            }
            if !(0..c.modulus).contains(&c.residue) {
                return Err(Error::OutOfHypothesis(format!(
                    "residue {} not in [0, {})",
                    c.residue, c.modulus
                )));
            }
        }
        Ok(())
    }

    /// Whether `x` satisfies every constraint. Negative coordinates fail.
    pub fn satisfied_by(&self, x: &[i128]) -> Result<bool> {
        self.check(x, true)
    }

    /// Whether `x` satisfies the homogeneous system with all right-hand sides zero.
    pub fn satisfied_homogeneous(&self, x: &[i128]) -> Result<bool> {
        self.check(x, false)
    }

    fn check(&self, x: &[i128], with_rhs: bool) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        if x.iter().any(|&c| c < 0) {
            return Ok(false);
        }
        let rhs = |v: i128| if with_rhs { v } else { 0 };
        for e in &self.equalities {
            if e.form.eval_slice(x)? != rhs(e.target) {
                return Ok(false);
            }
        }
        for c in &self.congruences {
            if arith::mod_reduce(c.form.eval_slice(x)?, c.modulus)? != rhs(c.residue) {
                return Ok(false);
            }
        }
        for i in &self.inequalities {
            if i.form.eval_slice(x)? < rhs(i.lower) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Solutions of a [`DiophSystem`] that generate all others.
///
/// For an inhomogeneous system these are the `⪯`-minimal solutions. For a
/// homogeneous one they are the irreducible nonzero solutions, which form an
/// antichain unless inequalities are present. The zero vector is never listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalSolutionSet {
    /// Sorted graded-lexicographically.
    pub points: Vec<LatticePoint>,
    pub homogeneous: bool,
    /// Bound on the 1-norm of extended minimal solutions, `None` on overflow.
    pub bound: Option<i128>,
    /// Vectors visited by the completion.
    pub nodes: usize,
}

impl MinimalSolutionSet {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }
}

struct Extended {
    /// Column of the extended matrix for each extended variable.
    columns: Vec<Vec<i128>>,
    /// Upper bound on each extended variable.
    upper: Vec<Option<i128>>,
    rows: usize,
    z: Option<usize>,
}

fn extend(sys: &DiophSystem) -> Result<Extended> {
    let p = sys.dim;
    let homogeneous = sys.is_homogeneous();
    let rows = sys.equalities.len() + sys.congruences.len() + sys.inequalities.len();
    let n = p + 2 * sys.congruences.len() + sys.inequalities.len() + usize::from(!homogeneous);
    let mut columns = vec![vec![0i128; rows]; n];
    let mut upper = vec![None; n];
    let z = (!homogeneous).then_some(n - 1);
    if let Some(z) = z {
        upper[z] = Some(1);
    }
    let mut row = 0;
    let mut extra = p;
    let put_form = |row: usize, form: &LinearForm, columns: &mut Vec<Vec<i128>>| {
        for (j, &c) in form.coeffs().iter().enumerate() {
            columns[j][row] = c;
        }
    };
    for e in &sys.equalities {
        put_form(row, &e.form, &mut columns);
        if let Some(z) = z {
            columns[z][row] = arith::neg(e.target)?;
        }
        row += 1;
    }
    for c in &sys.congruences {
        put_form(row, &c.form, &mut columns);
        columns[extra][row] = -c.modulus;
        columns[extra + 1][row] = c.modulus;
        extra += 2;
        if let Some(z) = z {
            columns[z][row] = -c.residue;
        }
        row += 1;
    }
    for i in &sys.inequalities {
        put_form(row, &i.form, &mut columns);
        columns[extra][row] = -1;
        extra += 1;
        if let Some(z) = z {
            columns[z][row] = arith::neg(i.lower)?;
        }
        row += 1;
    }
    Ok(Extended {
        columns,
        upper,
        rows,
        z,
    })
}

/// `(1 + max row 1-norm)^rows`, the classical bound on minimal solutions of
/// a homogeneous integer system.
fn norm_bound(ext: &Extended) -> Option<i128> {
    let mut max_row = 0i128;
    for r in 0..ext.rows {
        let mut s = 0i128;
        for col in &ext.columns {
            s = s.checked_add(col[r].checked_abs()?)?;
        }
        max_row = max_row.max(s);
    }
    max_row.checked_add(1)?.checked_pow(u32::try_from(ext.rows).ok()?)
}

fn dominates(big: &[i128], small: &[i128]) -> bool {
    small.iter().zip(big).all(|(s, b)| s <= b)
}

/// Contejean-Devie completion: irreducible nonnegative solutions of `A·v = 0`
/// under the column bounds.
fn complete(ext: &Extended, cap: usize) -> Result<(Vec<Vec<i128>>, usize)> {
    let n = ext.columns.len();
    let mut frontier: Vec<(Vec<i128>, Vec<i128>)> = (0..n)
        .map(|j| {
            let mut v = vec![0; n];
            v[j] = 1;
            (v, ext.columns[j].clone())
        })
        .collect();
    let mut found: Vec<Vec<i128>> = Vec::new();
    let mut nodes = 0usize;
    while !frontier.is_empty() {
        nodes += frontier.len();
        let (solved, open): (Vec<_>, Vec<_>) =
            frontier.into_iter().partition(|(_, av)| av.iter().all(|&c| c == 0));
        found.extend(solved.into_iter().map(|(v, _)| v));
        let mut seen: HashSet<Vec<i128>> = HashSet::new();
        let mut next = Vec::new();
        for (v, av) in open {
            for j in 0..n {
                let col = &ext.columns[j];
                if arith::dot(&av, col)? >= 0 {
                    continue;
                }
                if ext.upper[j].is_some_and(|u| v[j] >= u) {
                    continue;
                }
                let mut w = v.clone();
                w[j] += 1;
                if found.iter().any(|s| dominates(&w, s)) || seen.contains(&w) {
                    continue;
                }
                let aw = av
                    .iter()
                    .zip(col)
                    .map(|(&a, &c)| arith::add(a, c))
                    .collect::<Result<Vec<_>>>()?;
                seen.insert(w.clone());
                next.push((w, aw));
            }
        }
        if next.len() > cap {
            return Err(Error::CapExceeded {
                stage: "diophantine completion",
                size: next.len(),
                cap,
            });
        }
        frontier = next;
    }
    Ok((found, nodes))
}

pub fn minimal_solutions(sys: &DiophSystem) -> Result<MinimalSolutionSet> {
    minimal_solutions_capped(sys, DEFAULT_FRONTIER_CAP)
}

pub fn minimal_solutions_capped(sys: &DiophSystem, cap: usize) -> Result<MinimalSolutionSet> {
    sys.validate()?;
    let ext = extend(sys)?;
    let bound = norm_bound(&ext);
    let (ext_solutions, nodes) = complete(&ext, cap)?;
    if let Some(bound) = bound {
        if let Some(v) = ext_solutions.iter().find(|v| v.iter().sum::<i128>() > bound) {
            return Err(Error::Consistency(format!(
                "extended solution {v:?} exceeds the norm bound {bound}"
            )));
        }
    }
    let p = sys.dim;
    let projected = ext_solutions
        .iter()
        .filter(|v| ext.z.is_none_or(|z| v[z] == 1))
        .map(|v| LatticePoint::new(v[..p].to_vec()))
        .filter(|x| !x.is_zero());
    let homogeneous = ext.z.is_none();
    let points = if homogeneous {
        irreducible(sys, projected)?
    } else {
        dickson_minimal(projected)
    };
    for x in &points {
        if !sys.satisfied_by(x.coords())? {
            return Err(Error::Consistency(format!("{x} does not solve the system")));
        }
    }
    Ok(MinimalSolutionSet {
        points,
        homogeneous,
        bound,
        nodes,
    })
}

/// Irreducible elements among generators of a homogeneous solution monoid:
/// `x` is dropped when `x - h` is a solution for a smaller kept `h ⪯ x`.
fn irreducible(
    sys: &DiophSystem,
    gens: impl IntoIterator<Item = LatticePoint>,
) -> Result<Vec<LatticePoint>> {
    let mut sorted: Vec<LatticePoint> = gens.into_iter().collect();
    sorted.sort();
    sorted.dedup();
    let mut kept: Vec<LatticePoint> = Vec::new();
    for x in sorted {
        let mut reducible = false;
        for h in &kept {
            if h.precedes(&x) && sys.satisfied_homogeneous(x.checked_sub(h)?.coords())? {
                reducible = true;
                break;
            }
        }
        if !reducible {
            kept.push(x);
        }
    }
    Ok(kept)
}

/// Hilbert basis of `{x ∈ ℕᵖ : g(x) ≥ 0}`.
pub fn cone_hilbert_basis(g: &LinearForm) -> Result<MinimalSolutionSet> {
    if g.is_zero() {
        return Err(Error::ZeroForm("g"));
    }
    minimal_solutions(&DiophSystem::new(g.dim()).inequality(g.clone(), 0))
}

/// A cone Hilbert basis split by the value of `g` relative to a modulus `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConePartition {
    /// `g = 0`.
    pub zero: Vec<LatticePoint>,
    /// `levels[i - 1]` holds the elements with `g = i`, for `1 ≤ i ≤ b - 1`.
    pub levels: Vec<Vec<LatticePoint>>,
    /// `g ≥ b`.
    pub high: Vec<LatticePoint>,
}

impl ConePartition {
    pub fn new(basis: &[LatticePoint], g: &LinearForm, b: i128) -> Result<Self> {
        let nlevels = usize::try_from(b - 1).map_err(|_| Error::NonPositiveModulus)?;
        let mut part = ConePartition {
            zero: Vec::new(),
            levels: vec![Vec::new(); nlevels],
            high: Vec::new(),
        };
        for x in basis {
            let v = g.eval(x)?;
            if v == 0 {
                part.zero.push(x.clone());
            } else if v >= b {
                part.high.push(x.clone());
            } else if v > 0 {
                part.levels[(v - 1) as usize].push(x.clone());
            } else {
                return Err(Error::Consistency(format!("{x} lies outside the cone")));
            }
        }
        Ok(part)
    }
}
