//! Inequalities `f(x) mod b ≤ g(x)`, lattice points and membership.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, Rational};
use crate::error::{Error, Result};

/// Integer linear form `x ↦ Σ cᵢ xᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm(Vec<i128>);

impl LinearForm {
    pub fn new(coeffs: Vec<i128>) -> Self {
        LinearForm(coeffs)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn eval(&self, x: &LatticePoint) -> Result<i128> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        arith::dot(&self.0, x.coords())
    }

    pub fn eval_slice(&self, x: &[i128]) -> Result<i128> {
        arith::dot(&self.0, x)
    }
}

impl From<Vec<i128>> for LinearForm {
    fn from(v: Vec<i128>) -> Self {
        LinearForm(v)
    }
}

/// A point of ℤᵖ. Members of a semigroup are the non-negative ones; signed
/// points show up as differences in the geometric algorithms.
///
/// Ordering is graded lexicographic: by 1-norm first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<i128>);

impl LatticePoint {
    pub fn new(coords: Vec<i128>) -> Self {
        LatticePoint(coords)
    }

    pub fn zero(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = vec![0; dim];
        v[axis] = 1;
        LatticePoint(v)
    }

    pub fn coords(&self) -> &[i128] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i128> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// 1-norm `Σ |xᵢ|`.
    pub fn norm1(&self) -> i128 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    /// Product order: `self ⪯ other` iff `other - self ∈ ℕᵖ`.
    pub fn precedes(&self, other: &LatticePoint) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &LatticePoint) -> Result<LatticePoint> {
        self.zip_with(other, arith::add)
    }

    pub fn checked_sub(&self, other: &LatticePoint) -> Result<LatticePoint> {
        self.zip_with(other, arith::sub)
    }

    pub fn scale(&self, k: i128) -> Result<LatticePoint> {
        self.0
            .iter()
            .map(|&c| arith::mul(c, k))
            .collect::<Result<Vec<_>>>()
            .map(LatticePoint)
    }

    fn zip_with(
        &self,
        other: &LatticePoint,
        op: impl Fn(i128, i128) -> Result<i128>,
    ) -> Result<LatticePoint> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| op(a, b))
            .collect::<Result<Vec<_>>>()
            .map(LatticePoint)
    }
}

impl Ord for LatticePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.norm1()
            .cmp(&other.norm1())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for LatticePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i128>> for LatticePoint {
    fn from(v: Vec<i128>) -> Self {
        LatticePoint(v)
    }
}

impl<const N: usize> From<[i128; N]> for LatticePoint {
    fn from(v: [i128; N]) -> Self {
        LatticePoint(v.to_vec())
    }
}

/// Keep the `⪯`-minimal elements of `points`, sorted graded-lexicographically.
pub fn dickson_minimal(points: impl IntoIterator<Item = LatticePoint>) -> Vec<LatticePoint> {
    let mut sorted: Vec<LatticePoint> = points.into_iter().collect();
    sorted.sort();
    sorted.dedup();
    let mut out: Vec<LatticePoint> = Vec::new();
    for p in sorted {
        if !out.iter().any(|m| m.precedes(&p)) {
            out.push(p);
        }
    }
    out
}

/// The inequality `f(x) mod b ≤ g(x)` over ℕᵖ, with integer data.
///
/// Its set of ℕ-solutions `S` is a submonoid of ℕᵖ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ModularInequality {
    f: LinearForm,
    g: LinearForm,
    b: i128,
}

impl ModularInequality {
    pub fn new(f: Vec<i128>, g: Vec<i128>, b: i128) -> Result<Self> {
        if f.len() != g.len() {
            return Err(Error::DimensionMismatch {
                expected: f.len(),
                found: g.len(),
            });
        }
        if f.is_empty() {
            return Err(Error::ZeroForm("f"));
        }
        if b <= 0 {
            return Err(Error::NonPositiveModulus);
        }
        let (f, g) = (LinearForm(f), LinearForm(g));
        if f.is_zero() {
            return Err(Error::ZeroForm("f"));
        }
        if g.is_zero() {
            return Err(Error::ZeroForm("g"));
        }
        Ok(ModularInequality { f, g, b })
    }

    pub fn f(&self) -> &LinearForm {
        &self.f
    }

    pub fn g(&self) -> &LinearForm {
        &self.g
    }

    pub fn b(&self) -> i128 {
        self.b
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    /// `g` coefficients, convenient in the plane.
    pub fn g_coeffs(&self) -> &[i128] {
        self.g.coeffs()
    }

    /// Whether `x` lies in `S`. Points with a negative coordinate never do.
    pub fn member(&self, x: &LatticePoint) -> Result<bool> {
        self.member_slice(x.coords())
    }

    pub fn member_slice(&self, x: &[i128]) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        if x.iter().any(|&c| c < 0) {
            return Ok(false);
        }
        let gx = self.g.eval_slice(x)?;
        if gx >= self.b {
            return Ok(true);
        }
        if gx < 0 {
            return Ok(false);
        }
        Ok(arith::mod_reduce(self.f.eval_slice(x)?, self.b)? <= gx)
    }

    /// Parse the JSON schema `{"f": [..], "g": [..], "b": ..}` where every
    /// number is an integer or a string `"p/q"`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: InequalityJson =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        raw.into_inequality()
    }
}

impl fmt::Display for ModularInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} mod {} <= {}",
            render_form(self.f.coeffs()),
            self.b,
            render_form(self.g.coeffs())
        )
    }
}

fn render_form(coeffs: &[i128]) -> String {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let var = NAMES
            .get(i)
            .map(|s| s.to_string())
            .unwrap_or_else(|| format!("x{}", i + 1));
        let mag = if c.abs() == 1 {
            String::new()
        } else {
            c.abs().to_string()
        };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        out.push_str(&mag);
        out.push_str(&var);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Scale a rational inequality by the lcm `d` of all denominators, giving
/// `d·f(x) mod d·b ≤ d·g(x)` with integer data and the same solution set.
pub fn normalize(f: &[Rational], g: &[Rational], b: Rational) -> Result<ModularInequality> {
    if f.len() != g.len() {
        return Err(Error::DimensionMismatch {
            expected: f.len(),
            found: g.len(),
        });
    }
    if b.signum() <= 0 {
        return Err(Error::NonPositiveModulus);
    }
    if f.iter().all(Rational::is_zero) {
        return Err(Error::ZeroForm("f"));
    }
    if g.iter().all(Rational::is_zero) {
        return Err(Error::ZeroForm("g"));
    }
    let d = f
        .iter()
        .chain(g)
        .chain(std::iter::once(&b))
        .try_fold(1i128, |acc, r| arith::lcm(acc, r.denom()))?;
    let scale = |r: &Rational| -> Result<i128> { arith::mul(r.numer(), d / r.denom()) };
    let fi = f.iter().map(scale).collect::<Result<Vec<_>>>()?;
    let gi = g.iter().map(scale).collect::<Result<Vec<_>>>()?;
    ModularInequality::new(fi, gi, scale(&b)?)
}

/// Parse a comma separated vector such as `"3/2,-1"`.
pub fn parse_rational_vector(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Parse a comma separated vector of integers such as `"9,1"`.
pub fn parse_point(text: &str) -> Result<LatticePoint> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i128>()
                .map_err(|_| Error::Parse(s.trim().to_string()))
        })
        .collect::<Result<Vec<_>>>()
        .map(LatticePoint)
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum JsonNumber {
    Int(i64),
    Text(String),
}

impl JsonNumber {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            JsonNumber::Int(n) => Ok(Rational::integer(*n as i128)),
            JsonNumber::Text(s) => s.parse(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InequalityJson {
    f: Vec<JsonNumber>,
    g: Vec<JsonNumber>,
    b: JsonNumber,
}

impl InequalityJson {
    fn into_inequality(self) -> Result<ModularInequality> {
        let conv = |v: &[JsonNumber]| v.iter().map(JsonNumber::to_rational).collect::<Result<Vec<_>>>();
        normalize(&conv(&self.f)?, &conv(&self.g)?, self.b.to_rational()?)
    }
}

/// A finite set of lattice points generating a semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    /// Sorted graded-lexicographically.
    pub points: Vec<LatticePoint>,
    /// No point is zero or an ℕ-combination of the others.
    pub minimal: bool,
    /// The semigroup is `{0}`.
    pub trivial: bool,
}

impl GeneratorSet {
    pub fn trivial() -> Self {
        GeneratorSet {
            points: Vec::new(),
            minimal: true,
            trivial: true,
        }
    }

    pub fn minimal(mut points: Vec<LatticePoint>) -> Self {
        points.sort();
        points.dedup();
        GeneratorSet {
            points,
            minimal: true,
            trivial: false,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn example() -> ModularInequality {
        ModularInequality::new(vec![3, -2], vec![1, -3], 11).unwrap()
    }

    #[test]
    fn normalize_clears_denominators() {
        let ineq = normalize(&[r(3, 2), r(-1, 1)], &[r(1, 1), r(-3, 2)], r(11, 2)).unwrap();
        assert_eq!(ineq, ModularInequality::new(vec![3, -2], vec![2, -3], 11).unwrap());

        let ineq = normalize(&[r(3, 1), r(-2, 1)], &[r(1, 1), r(-3, 1)], r(11, 1)).unwrap();
        assert_eq!(ineq, example());

        let ineq = normalize(&[r(7, 3)], &[r(1, 3)], r(5, 1)).unwrap();
        assert_eq!(ineq, ModularInequality::new(vec![7], vec![1], 15).unwrap());
    }

    #[test]
    fn normalize_rejects_bad_input() {
        assert_eq!(
            normalize(&[r(0, 1)], &[r(1, 1)], r(3, 1)),
            Err(Error::ZeroForm("f"))
        );
        assert_eq!(
            normalize(&[r(1, 1)], &[r(0, 1)], r(3, 1)),
            Err(Error::ZeroForm("g"))
        );
        assert_eq!(
            normalize(&[r(1, 1)], &[r(1, 1)], r(0, 1)),
            Err(Error::NonPositiveModulus)
        );
        assert_eq!(
            normalize(&[r(1, 1)], &[r(1, 1)], r(-3, 2)),
            Err(Error::NonPositiveModulus)
        );
        assert!(matches!(
            normalize(&[r(1, 1), r(2, 1)], &[r(1, 1)], r(3, 1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn membership_examples() {
        let ineq = example();
        assert!(ineq.member(&[4, 0].into()).unwrap());
        assert!(ineq.member(&[0, 0].into()).unwrap());
        assert!(!ineq.member(&[1, 0].into()).unwrap());
        assert!(!ineq.member(&[-1, 0].into()).unwrap());
        assert!(matches!(
            ineq.member(&[1, 0, 0].into()),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn membership_overflow_is_an_error() {
        let ineq = ModularInequality::new(vec![i128::MAX, 1], vec![1, 1], 7).unwrap();
        assert_eq!(ineq.member(&[0, 0].into()), Ok(true));
        assert_eq!(ineq.member(&[2, 0].into()), Err(Error::Overflow));
    }

    #[test]
    fn graded_lex_order() {
        let mut pts: Vec<LatticePoint> =
            vec![[5, 1].into(), [4, 0].into(), [0, 5].into(), [11, 0].into(), [5, 0].into()];
        pts.sort();
        let want: Vec<LatticePoint> =
            vec![[4, 0].into(), [0, 5].into(), [5, 0].into(), [5, 1].into(), [11, 0].into()];
        assert_eq!(pts, want);
    }

    #[test]
    fn dickson_minimal_keeps_antichain() {
        let pts: Vec<LatticePoint> = vec![[2, 3].into(), [1, 1].into(), [0, 5].into(), [1, 4].into()];
        let m = dickson_minimal(pts);
        assert_eq!(m, vec![LatticePoint::from([1, 1]), LatticePoint::from([0, 5])]);
    }

    #[test]
    fn json_schema_accepts_fractions() {
        let ineq =
            ModularInequality::from_json(r#"{"f":["3/2",-1],"g":[1,"-3/2"],"b":"11/2"}"#).unwrap();
        assert_eq!(ineq, ModularInequality::new(vec![3, -2], vec![2, -3], 11).unwrap());
        assert!(ModularInequality::from_json(r#"{"f":[1],"g":[1]}"#).is_err());
        assert!(ModularInequality::from_json(r#"{"f":["a"],"g":[1],"b":2}"#).is_err());
        let out = serde_json::to_string(&example()).unwrap();
        assert_eq!(out, r#"{"f":[3,-2],"g":[1,-3],"b":11}"#);
        assert_eq!(ModularInequality::from_json(&out).unwrap(), example());
    }

    #[test]
    fn display_renders_forms() {
        assert_eq!(example().to_string(), "3x - 2y mod 11 <= x - 3y");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn ineq2() -> impl Strategy<Value = ModularInequality> {
            (
                prop::array::uniform2(-15i128..=15),
                prop::array::uniform2(-15i128..=15),
                1i128..=12,
            )
                .prop_filter_map("nonzero forms", |(f, g, b)| {
                    ModularInequality::new(f.to_vec(), g.to_vec(), b).ok()
                })
        }

        proptest! {
            #[test]
            fn closed_under_addition(ineq in ineq2(), x in prop::array::uniform2(0i128..40), y in prop::array::uniform2(0i128..40)) {
                let (x, y) = (LatticePoint::from(x), LatticePoint::from(y));
                if ineq.member(&x).unwrap() && ineq.member(&y).unwrap() {
                    prop_assert!(ineq.member(&x.checked_add(&y).unwrap()).unwrap());
                }
            }

            #[test]
            fn half_space_above_b_is_contained(ineq in ineq2(), x in prop::array::uniform2(0i128..60)) {
                let x = LatticePoint::from(x);
                if ineq.g().eval(&x).unwrap() >= ineq.b() {
                    prop_assert!(ineq.member(&x).unwrap());
                }
            }

            #[test]
            fn normalization_preserves_solutions(
                fnum in prop::array::uniform2(-12i128..=12), fden in prop::array::uniform2(1i128..=4),
                gnum in prop::array::uniform2(-12i128..=12), gden in prop::array::uniform2(1i128..=4),
                bnum in 1i128..=12, bden in 1i128..=4,
                x in prop::array::uniform2(0i128..30),
            ) {
                let f: Vec<Rational> = (0..2).map(|i| r(fnum[i], fden[i])).collect();
                let g: Vec<Rational> = (0..2).map(|i| r(gnum[i], gden[i])).collect();
                let b = r(bnum, bden);
                prop_assume!(f.iter().any(|c| !c.is_zero()) && g.iter().any(|c| !c.is_zero()));
                let ineq = normalize(&f, &g, b).unwrap();
                // Direct rational evaluation of f(x) mod b <= g(x).
                let fx = f[0].mul_int(x[0]).unwrap().checked_add(f[1].mul_int(x[1]).unwrap()).unwrap();
                let gx = g[0].mul_int(x[0]).unwrap().checked_add(g[1].mul_int(x[1]).unwrap()).unwrap();
                let q = fx.checked_div(b).unwrap().floor();
                let rem = fx.checked_sub(b.mul_int(q).unwrap()).unwrap();
                prop_assert_eq!(rem <= gx, ineq.member(&LatticePoint::from(x)).unwrap());
            }
        }
    }
}
