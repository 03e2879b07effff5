//! Brute-force reference computations over finite boxes.
//!
//! Nothing here calls into the algorithmic modules: membership is evaluated
//! straight from the definition and everything else is exhaustive search.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{LatticePoint, ModularInequality};

/// Largest window scanned exhaustively.
pub const MAX_WINDOW_POINTS: u128 = 10_000_000;

/// The box `[0, B₁] × … × [0, Bₚ]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Window {
    bounds: Vec<i128>,
}

impl Window {
    pub fn new(bounds: Vec<i128>) -> Result<Self> {
        if bounds.iter().any(|&b| b < 0) {
            return Err(Error::OutOfHypothesis("window bounds must be non-negative".into()));
        }
        Ok(Window { bounds })
    }

    pub fn cube(dim: usize, side: i128) -> Result<Self> {
        Window::new(vec![side; dim])
    }

    pub fn bounds(&self) -> &[i128] {
        &self.bounds
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn size(&self) -> u128 {
        self.bounds
            .iter()
            .fold(1u128, |acc, &b| acc.saturating_mul(b as u128 + 1))
    }

    pub fn contains(&self, x: &[i128]) -> bool {
        x.len() == self.dim() && x.iter().zip(&self.bounds).all(|(&c, &b)| (0..=b).contains(&c))
    }

    fn checked_size(&self) -> Result<usize> {
        let n = self.size();
        if n > MAX_WINDOW_POINTS {
            return Err(Error::WindowTooLarge(n));
        }
        Ok(n as usize)
    }

    /// Mixed-radix index, first coordinate fastest.
    fn index(&self, x: &[i128]) -> usize {
        let mut idx = 0usize;
        for (c, b) in x.iter().zip(&self.bounds).rev() {
            idx = idx * (*b as usize + 1) + *c as usize;
        }
        idx
    }

    fn point(&self, mut idx: usize) -> Vec<i128> {
        self.bounds
            .iter()
            .map(|&b| {
                let r = b as usize + 1;
                let c = idx % r;
                idx /= r;
                c as i128
            })
            .collect()
    }

    /// All points, in an order where `y ⪯ x` implies `y` comes first.
    fn points(&self) -> Result<impl Iterator<Item = Vec<i128>> + '_> {
        let n = self.checked_size()?;
        Ok((0..n).map(move |i| self.point(i)))
    }
}

/// `f(x) mod b ≤ g(x)` evaluated literally.
pub fn satisfies(ineq: &ModularInequality, x: &[i128]) -> Result<bool> {
    if x.iter().any(|&c| c < 0) {
        return Ok(false);
    }
    let mut fx = 0i128;
    let mut gx = 0i128;
    for ((&a, &c), &xi) in ineq.f().coeffs().iter().zip(ineq.g().coeffs()).zip(x) {
        fx = a
            .checked_mul(xi)
            .and_then(|t| fx.checked_add(t))
            .ok_or(Error::Overflow)?;
        gx = c
            .checked_mul(xi)
            .and_then(|t| gx.checked_add(t))
            .ok_or(Error::Overflow)?;
    }
    Ok(fx.rem_euclid(ineq.b()) <= gx)
}

fn sorted(mut v: Vec<LatticePoint>) -> Vec<LatticePoint> {
    v.sort();
    v
}

fn member_table(ineq: &ModularInequality, window: &Window) -> Result<Vec<bool>> {
    if window.dim() != ineq.dim() {
        return Err(Error::DimensionMismatch {
            expected: ineq.dim(),
            found: window.dim(),
        });
    }
    window.points()?.map(|x| satisfies(ineq, &x)).collect()
}

/// Members of `S` in the window.
pub fn brute_members(ineq: &ModularInequality, window: &Window) -> Result<Vec<LatticePoint>> {
    let table = member_table(ineq, window)?;
    Ok(sorted(
        table
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| LatticePoint::new(window.point(i)))
            .collect(),
    ))
}

/// ℕ-combinations of `gens` inside the window.
pub fn closure_in_window(gens: &[LatticePoint], window: &Window) -> Result<Vec<LatticePoint>> {
    let n = window.checked_size()?;
    let gens: Vec<&LatticePoint> = gens
        .iter()
        .filter(|g| !g.is_zero() && g.dim() == window.dim() && g.is_nonneg())
        .collect();
    let mut reach = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        let x = window.point(i);
        let hit = i == 0
            || gens.iter().any(|g| {
                let mut y = x.clone();
                for (c, d) in y.iter_mut().zip(g.coords()) {
                    *c -= d;
                }
                y.iter().all(|&c| c >= 0) && reach[window.index(&y)]
            });
        if hit {
            reach[i] = true;
            out.push(LatticePoint::new(x));
        }
    }
    Ok(sorted(out))
}

/// Nonzero members that are not a sum of two nonzero members. Exact for the
/// members lying in the window, since the window is downward closed.
pub fn brute_min_gens(ineq: &ModularInequality, window: &Window) -> Result<Vec<LatticePoint>> {
    let table = member_table(ineq, window)?;
    let mut members: Vec<Vec<i128>> = table
        .iter()
        .enumerate()
        .filter(|(i, &m)| m && *i != 0)
        .map(|(i, _)| window.point(i))
        .collect();
    members.sort_by_key(|x| (x.iter().sum::<i128>(), x.clone()));
    let mut gens: Vec<LatticePoint> = Vec::new();
    'outer: for x in members {
        // Enumerate every s with 0 ≺ s ≺ x.
        let sub = Window::new(x.clone())?;
        for s in sub.points()? {
            if s.iter().all(|&c| c == 0) || s == x {
                continue;
            }
            let rest: Vec<i128> = x.iter().zip(&s).map(|(a, b)| a - b).collect();
            if table[window.index(&s)] && table[window.index(&rest)] {
                continue 'outer;
            }
        }
        gens.push(LatticePoint::new(x));
    }
    Ok(sorted(gens))
}

fn det(a: &[i128], b: &[i128]) -> i128 {
    a[0] * b[1] - a[1] * b[0]
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn require_plane(ineq: &ModularInequality, window: &Window) -> Result<()> {
    if ineq.dim() != 2 || window.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: ineq.dim().max(window.dim()),
        });
    }
    Ok(())
}

/// Lattice of ℤ² in Hermite form, rows `(a, c)` and `(0, d)` with `a, d ≥ 0`.
#[derive(Default)]
struct Hermite {
    a: i128,
    c: i128,
    d: i128,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

impl Hermite {
    fn insert(&mut self, v: &[i128]) {
        let (x, y) = (v[0], v[1]);
        let (g, s, t) = ext_gcd(self.a, x);
        let e = if g == 0 {
            y
        } else {
            // Zero first coordinate: (x/g)·row₁ − (a/g)·v.
            (x / g) * self.c - (self.a / g) * y
        };
        if g != 0 {
            self.c = s * self.c + t * y;
            self.a = g;
        }
        self.d = gcd(self.d, e);
        if self.d != 0 {
            self.c = self.c.rem_euclid(self.d);
        }
    }

    fn contains(&self, z: &[i128]) -> bool {
        let rest = if self.a == 0 {
            if z[0] != 0 {
                return false;
            }
            z[1]
        } else {
            if z[0] % self.a != 0 {
                return false;
            }
            z[1] - (z[0] / self.a) * self.c
        };
        if self.d == 0 {
            rest == 0
        } else {
            rest % self.d == 0
        }
    }
}

/// Extreme rays of the cone spanned by the nonzero members in the window,
/// clockwise first, each the member of least norm on its ray.
fn extreme_rays(members: &[Vec<i128>]) -> Option<(Vec<i128>, Vec<i128>)> {
    let nonzero: Vec<&Vec<i128>> = members.iter().filter(|m| m.iter().any(|&c| c != 0)).collect();
    let first = *nonzero.first()?;
    let (mut lo, mut hi) = (first.clone(), first.clone());
    for m in nonzero {
        let c = det(&lo, m);
        if c < 0 || (c == 0 && m.iter().sum::<i128>() < lo.iter().sum::<i128>()) {
            lo = m.clone();
        }
        let c = det(&hi, m);
        if c > 0 || (c == 0 && m.iter().sum::<i128>() < hi.iter().sum::<i128>()) {
            hi = m.clone();
        }
    }
    Some((lo, hi))
}

/// `⪯`-minimal Frobenius vectors of `S ⊆ ℕ²` found in the window.
///
/// Candidates are the non-members `q ∈ G(S)` in the closed cone of `S`. One
/// passes when every `z ∈ G(S)` of the window with `z - q` in the open cone
/// of `S` is a nonzero member. Only points `q` with
/// `q + r₁ + r₂ + (b, b)` inside the window are tested, `r₁, r₂` being the
/// extreme rays found in the window.
pub fn brute_min_frobenius(ineq: &ModularInequality, window: &Window) -> Result<Vec<LatticePoint>> {
    require_plane(ineq, window)?;
    let table = member_table(ineq, window)?;
    let n = table.len();
    let members: Vec<Vec<i128>> = (0..n).filter(|&i| table[i]).map(|i| window.point(i)).collect();
    let Some((lo, hi)) = extreme_rays(&members) else {
        return Ok(Vec::new());
    };
    if det(&lo, &hi) <= 0 {
        return Err(Error::OutOfHypothesis("the cone of S has empty interior".into()));
    }
    let mut group = Hermite::default();
    for m in &members {
        group.insert(m);
    }
    let in_group = |z: &[i128]| group.contains(z);
    let b = ineq.b();
    let reach: Vec<i128> = (0..2).map(|i| lo[i] + hi[i] + b).collect();
    let bounds = window.bounds();
    let blockers: Vec<Vec<i128>> = (0..n)
        .filter(|&j| j == 0 || !table[j])
        .map(|j| window.point(j))
        .filter(|z| in_group(z))
        .collect();
    let mut passers: Vec<LatticePoint> = Vec::new();
    let mut any_gap = false;
    for i in 0..n {
        let q = window.point(i);
        let in_cone = det(&lo, &q) >= 0 && det(&q, &hi) >= 0;
        if table[i] || !in_cone || !in_group(&q) {
            continue;
        }
        any_gap = true;
        if (0..2).any(|k| q[k] + reach[k] > bounds[k]) {
            continue;
        }
        // Only the origin and gaps of G(S) can block q.
        let passes = blockers.iter().all(|z| {
            let t = [z[0] - q[0], z[1] - q[1]];
            !(det(&lo, &t) > 0 && det(&t, &hi) > 0)
        });
        if passes {
            passers.push(LatticePoint::new(q));
        }
    }
    if any_gap && passers.is_empty() {
        return Err(Error::InsufficientMargin(
            "the window has gaps but no certified Frobenius vector".into(),
        ));
    }
    let passers = sorted(passers);
    let minimal: Vec<LatticePoint> = passers
        .iter()
        .filter(|q| !passers.iter().any(|r| r != *q && r.precedes(q)))
        .cloned()
        .collect();
    Ok(minimal)
}

/// Members `a` of the window with `a - s ∉ S`.
pub fn brute_apery(
    ineq: &ModularInequality,
    s: &LatticePoint,
    window: &Window,
) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::new();
    for a in brute_members(ineq, window)? {
        let d: Vec<i128> = a.coords().iter().zip(s.coords()).map(|(x, y)| x - y).collect();
        if !satisfies(ineq, &d)? {
            out.push(a);
        }
    }
    Ok(out)
}

/// Points `s` of the window with `s + h ∈ S` for every `h` in `gens`.
pub fn brute_closure_semigroup(
    ineq: &ModularInequality,
    gens: &[LatticePoint],
    window: &Window,
) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::new();
    for x in window.points()? {
        let mut all = true;
        for h in gens {
            let y: Vec<i128> = x.iter().zip(h.coords()).map(|(a, b)| a + b).collect();
            if !satisfies(ineq, &y)? {
                all = false;
                break;
            }
        }
        if all {
            out.push(LatticePoint::new(x));
        }
    }
    Ok(sorted(out))
}

/// Whether removing any single generator shrinks the closure in the window.
pub fn is_minimal_in_window(gens: &[LatticePoint], window: &Window) -> Result<bool> {
    let full: HashSet<LatticePoint> = closure_in_window(gens, window)?.into_iter().collect();
    for i in 0..gens.len() {
        let mut rest = gens.to_vec();
        rest.remove(i);
        let smaller = closure_in_window(&rest, window)?;
        if smaller.len() == full.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ineq(f: [i128; 2], g: [i128; 2], b: i128) -> ModularInequality {
        ModularInequality::new(f.to_vec(), g.to_vec(), b).unwrap()
    }

    fn pts(v: &[[i128; 2]]) -> Vec<LatticePoint> {
        v.iter().map(|&p| LatticePoint::from(p)).collect()
    }

    #[test]
    fn hermite_lattice() {
        let mut h = Hermite::default();
        for v in [[2, 0], [0, 2], [1, 1]] {
            h.insert(&v);
        }
        assert!(h.contains(&[3, 1]) && h.contains(&[-1, 1]));
        assert!(!h.contains(&[1, 0]) && !h.contains(&[0, 1]));
        let mut h = Hermite::default();
        for v in [[0, 6], [4, 0], [5, 0], [5, 1]] {
            h.insert(&v);
        }
        assert!(h.contains(&[1, 0]) && h.contains(&[0, 1]));
        let mut h = Hermite::default();
        h.insert(&[3, 6]);
        assert!(h.contains(&[-3, -6]) && !h.contains(&[1, 2]) && !h.contains(&[3, 5]));
    }

    #[test]
    fn members_in_small_window() {
        let e = ineq([3, -2], [1, -3], 11);
        let m = brute_members(&e, &Window::new(vec![5, 1]).unwrap()).unwrap();
        for p in [[4, 0], [5, 0], [5, 1]] {
            assert!(m.contains(&LatticePoint::from(p)));
        }
        assert!(!m.contains(&LatticePoint::from([1, 0])));
        let m = brute_members(&e, &Window::cube(2, 0).unwrap()).unwrap();
        assert_eq!(m, pts(&[[0, 0]]));
        assert!(matches!(
            brute_members(&e, &Window::cube(2, 10_000).unwrap()),
            Err(Error::WindowTooLarge(_))
        ));
    }

    #[test]
    fn closure_examples() {
        let w = Window::new(vec![13, 0]).unwrap();
        let c = closure_in_window(&pts(&[[4, 0], [5, 0]]), &w).unwrap();
        let xs: Vec<i128> = c.iter().map(|p| p.coords()[0]).collect();
        assert_eq!(xs, vec![0, 4, 5, 8, 9, 10, 12, 13]);
        assert_eq!(closure_in_window(&[], &w).unwrap(), pts(&[[0, 0]]));
    }

    #[test]
    fn printed_generators_close_to_members() {
        let e = ineq([3, -2], [1, -3], 11);
        let gens = pts(&[
            [4, 0], [5, 0], [5, 1], [8, 1], [9, 2], [11, 0], [13, 3],
            [14, 4], [18, 5], [19, 6], [23, 7], [28, 9], [33, 11],
        ]);
        let w = Window::cube(2, 20).unwrap();
        assert_eq!(closure_in_window(&gens, &w).unwrap(), brute_members(&e, &w).unwrap());
        let w = Window::cube(2, 40).unwrap();
        assert_eq!(brute_min_gens(&e, &w).unwrap(), sorted(gens));
    }

    #[test]
    fn frobenius_examples() {
        let w = Window::cube(2, 40).unwrap();
        assert_eq!(
            brute_min_frobenius(&ineq([3, 2], [1, -1], 10), &w).unwrap(),
            pts(&[[9, 1]])
        );
        assert!(brute_min_frobenius(&ineq([1, 1], [1, 1], 1), &w).unwrap().is_empty());
        assert_eq!(
            brute_min_frobenius(&ineq([1, 2], [1, 1], 3), &Window::cube(2, 12).unwrap()).unwrap(),
            pts(&[[0, 1]])
        );
    }

    #[test]
    fn frobenius_margin_is_checked() {
        let w = Window::cube(2, 6).unwrap();
        assert!(matches!(
            brute_min_frobenius(&ineq([3, 2], [1, -1], 10), &w),
            Err(Error::InsufficientMargin(_))
        ));
    }
}
