#![allow(dead_code)]

use propmod::{LatticePoint, ModularInequality};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `g₁, g₂ < 0`.
    Trivial,
    /// `g₁, g₂ > 0`.
    Positive,
    /// `g₁g₂ ≤ 0` with some `gᵢ > 0`.
    Strip,
    /// `g ≤ 0` with a zero coefficient: `S = ℕu`.
    Ray,
}

pub fn branch(ineq: &ModularInequality) -> Branch {
    let g = ineq.g_coeffs();
    if g.iter().all(|&c| c < 0) {
        Branch::Trivial
    } else if g.iter().all(|&c| c > 0) {
        Branch::Positive
    } else if g.iter().all(|&c| c <= 0) {
        Branch::Ray
    } else {
        Branch::Strip
    }
}

fn c(f: [i128; 2], g: [i128; 2], b: i128) -> ModularInequality {
    ModularInequality::new(f.to_vec(), g.to_vec(), b).unwrap()
}

/// Fixed plane corpus: coefficients in [-15, 15], moduli in [2, 12].
pub fn corpus() -> Vec<ModularInequality> {
    vec![
        c([3, -2], [1, -3], 11),
        c([7, -1], [1, -14], 5),
        c([3, 2], [1, -1], 10),
        c([11, 0], [1, -3], 11),
        c([1, 2], [1, 1], 3),
        c([1, 1], [1, 1], 2),
        c([0, -10], [-12, -10], 6),
        c([-9, 13], [-12, -7], 6),
        c([2, -8], [-11, -14], 9),
        c([-4, -2], [-9, -12], 11),
        c([15, -9], [-5, -9], 7),
        c([1, -13], [12, 13], 5),
        c([7, 9], [12, 8], 12),
        c([-11, 2], [4, 14], 8),
        c([-14, 9], [6, 11], 8),
        c([-1, -12], [12, 12], 4),
        c([9, -5], [7, 6], 7),
        c([10, -9], [6, 7], 8),
        c([-5, 3], [4, 15], 8),
        c([-8, -9], [1, 0], 11),
        c([8, -8], [0, 13], 8),
        c([-15, 12], [0, -5], 11),
        c([12, 1], [-6, 0], 3),
        c([-5, 12], [-10, 11], 5),
        c([-1, -4], [3, -4], 11),
        c([11, 5], [3, -5], 7),
        c([-5, 15], [12, -12], 4),
        c([6, 7], [13, -14], 5),
        c([3, 6], [-2, 2], 4),
        c([-15, 13], [-8, 3], 7),
        c([-8, -13], [4, -13], 9),
        c([4, -7], [-9, 8], 12),
        c([-2, -9], [14, -2], 6),
        c([-11, 3], [11, -12], 3),
        c([0, -9], [-4, 15], 4),
        c([1, 12], [4, -6], 2),
        c([3, 13], [-11, 15], 12),
        c([-13, -12], [-1, 4], 5),
        c([14, 5], [10, -15], 10),
        c([-10, -8], [-10, 8], 4),
        c([-10, -13], [3, -10], 11),
        c([2, 10], [10, -11], 3),
        c([2, -10], [9, -12], 3),
    ]
}

pub fn pts(v: &[[i128; 2]]) -> Vec<LatticePoint> {
    v.iter().map(|&p| LatticePoint::from(p)).collect()
}

pub fn sorted(mut v: Vec<LatticePoint>) -> Vec<LatticePoint> {
    v.sort();
    v
}
