//! Exact integer and rational helpers: binomials, Gaussian binomials,
//! Bernoulli numbers, power sums, and a small dense polynomial type.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

fn binom_memo() -> &'static RwLock<HashMap<(i64, i64), BigInt>> {
    static MEMO: OnceLock<RwLock<HashMap<(i64, i64), BigInt>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Ordinary binomial coefficient with the combinatorial convention:
/// `C(m,t) = 0` whenever `t < 0`, `t > m` or `m < 0`.
pub fn binom(m: i64, t: i64) -> BigInt {
    if m < 0 || t < 0 || t > m {
        return BigInt::zero();
    }
    let t = t.min(m - t);
    if t == 0 {
        return BigInt::one();
    }
    if t == 1 {
        return BigInt::from(m);
    }
    if let Some(v) = binom_memo().read().unwrap().get(&(m, t)) {
        return v.clone();
    }
    let mut acc = BigInt::one();
    for j in 0..t {
        acc *= m - j;
        acc /= j + 1;
    }
    binom_memo().write().unwrap().insert((m, t), acc.clone());
    acc
}

/// `base^exp` as a `BigInt`.
pub fn pow(base: i64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `base^exp` with the convention `0^0 = 1`; negative exponents give 0.
pub fn pow_i(base: &BigInt, exp: i64) -> BigInt {
    if exp < 0 {
        return BigInt::zero();
    }
    num_traits::pow(base.clone(), exp as usize)
}

/// `C(i,2)` as an exponent, zero for `i < 2`.
pub fn choose2(i: i64) -> u32 {
    if i < 2 {
        0
    } else {
        (i * (i - 1) / 2) as u32
    }
}

fn qbinom_memo() -> &'static RwLock<HashMap<(i64, i64, u64), BigInt>> {
    static MEMO: OnceLock<RwLock<HashMap<(i64, i64, u64), BigInt>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Gaussian binomial `[r s]_q`, returning 0 outside `0 <= s <= r`.
pub fn qbinom(r: i64, s: i64, q: u64) -> Result<BigInt> {
    if q < 2 {
        return Err(Error::param(format!("q-binomial needs q >= 2, got {q}")));
    }
    Ok(gauss(r, s, q))
}

/// Unchecked Gaussian binomial; callers guarantee `q >= 2`.
pub(crate) fn gauss(r: i64, s: i64, q: u64) -> BigInt {
    if r < 0 || s < 0 || s > r {
        return BigInt::zero();
    }
    let s = s.min(r - s);
    if s == 0 {
        return BigInt::one();
    }
    if let Some(v) = qbinom_memo().read().unwrap().get(&(r, s, q)) {
        return v.clone();
    }
    let qb = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..s {
        num *= num_traits::pow(qb.clone(), (r - i) as usize) - 1;
        den *= num_traits::pow(qb.clone(), (s - i) as usize) - 1;
    }
    let v = num / den;
    qbinom_memo().write().unwrap().insert((r, s, q), v.clone());
    v
}

/// `(-1)^e` applied to `x`.
pub fn signed(x: BigInt, e: i64) -> BigInt {
    if e.rem_euclid(2) == 1 {
        -x
    } else {
        x
    }
}

fn bernoulli_memo() -> &'static RwLock<Vec<BigRational>> {
    static MEMO: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

/// Bernoulli number of the first kind (generating function `x/(e^x-1)`,
/// so `B_1 = -1/2`).
pub fn bernoulli(i: usize) -> BigRational {
    if let Some(b) = bernoulli_memo().read().unwrap().get(i) {
        return b.clone();
    }
    let mut memo = bernoulli_memo().write().unwrap();
    while memo.len() <= i {
        let m = memo.len() as i64;
        let mut s = BigRational::zero();
        for (k, bk) in memo.iter().enumerate() {
            s += BigRational::from_integer(binom(m + 1, k as i64)) * bk;
        }
        memo.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    memo[i].clone()
}

/// `sum_{i=1}^{a} i^j`, evaluated through the Bernoulli-number formula.
pub fn power_sum(j: u32, a: &BigInt) -> Result<BigInt> {
    let a = BigRational::from_integer(a.clone());
    let mut s = BigRational::zero();
    for i in 0..=j {
        let term = BigRational::from_integer(binom(j as i64 + 1, i as i64))
            * bernoulli(i as usize)
            * num_traits::pow(a.clone(), (j + 1 - i) as usize);
        if i % 2 == 1 {
            s -= term;
        } else {
            s += term;
        }
    }
    s /= BigRational::from_integer(BigInt::from(j + 1));
    if !s.is_integer() {
        return Err(Error::Inconsistent(format!("power sum formula produced non-integer {s}")));
    }
    Ok(s.to_integer())
}

/// Dense univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPolyQ {
    coeffs: Vec<BigRational>,
}

impl UniPolyQ {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// `x - r`.
    pub fn linear(r: BigRational) -> Self {
        Self::new(vec![-r, BigRational::one()])
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(coeffs.into_iter().map(|c| BigRational::from_integer(c.into())).collect())
    }

    /// `prod (x - r_i)`.
    pub fn from_roots<T: Into<BigInt> + Clone>(roots: &[T]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| acc * Self::linear(BigRational::from_integer(r.clone().into())))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigRational {
        self.eval(&BigRational::from_integer(x.clone()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &BigRational) -> Self {
        let lin = Self::new(vec![c.clone(), BigRational::one()]);
        let mut acc = Self::zero();
        for k in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(k.clone());
        }
        acc
    }

    /// Divide by `x - r`; returns (quotient, remainder).
    pub fn div_linear(&self, r: &BigRational) -> (Self, BigRational) {
        if self.coeffs.is_empty() {
            return (Self::zero(), BigRational::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![BigRational::zero(); n - 1];
        let mut carry = BigRational::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry * r;
            if i == 0 {
                return (Self::new(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Divide out `prod (x - r_i)`, rejecting any supplied value that is not a root.
    pub fn deflate_roots(&self, roots: &[BigRational]) -> Result<Self> {
        let mut p = self.clone();
        for r in roots {
            let (quot, rem) = p.div_linear(r);
            if !rem.is_zero() {
                return Err(Error::NotARoot { root: r.to_string(), remainder: rem.to_string() });
            }
            p = quot;
        }
        Ok(p)
    }

    /// Render with the given variable name, highest degree first.
    pub fn display_var(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = abs.is_one();
            if i == 0 || !unit {
                out.push_str(&abs.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for UniPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

impl fmt::Debug for UniPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPolyQ({self})")
    }
}

impl Add for &UniPolyQ {
    type Output = UniPolyQ;
    fn add(self, rhs: &UniPolyQ) -> UniPolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPolyQ::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPolyQ {
    type Output = UniPolyQ;
    fn sub(self, rhs: &UniPolyQ) -> UniPolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPolyQ::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPolyQ {
    type Output = UniPolyQ;
    fn mul(self, rhs: &UniPolyQ) -> UniPolyQ {
        if self.is_zero() || rhs.is_zero() {
            return UniPolyQ::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPolyQ::new(out)
    }
}

impl Neg for &UniPolyQ {
    type Output = UniPolyQ;
    fn neg(self) -> UniPolyQ {
        UniPolyQ::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPolyQ {
            type Output = UniPolyQ;
            fn $m(self, rhs: UniPolyQ) -> UniPolyQ {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// The unique polynomial of degree below `points.len()` through all points.
pub fn lagrange_interpolate(points: &[(BigRational, BigRational)]) -> Result<UniPolyQ> {
    for (i, (xi, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(Error::DuplicateAbscissa(xi.to_string()));
        }
    }
    // Newton divided differences, then expand.
    let n = points.len();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &points[i].0 - &points[i - level].0;
            dd[i] = num / den;
        }
    }
    let mut acc = UniPolyQ::zero();
    for i in (0..n).rev() {
        acc = &(&acc * &UniPolyQ::linear(points[i].0.clone())) + &UniPolyQ::constant(dd[i].clone());
    }
    Ok(acc)
}

/// Convenience: interpolate integer samples `(x, y)`.
pub fn interpolate_ints(points: &[(BigInt, BigInt)]) -> Result<UniPolyQ> {
    let pts: Vec<_> = points
        .iter()
        .map(|(x, y)| (BigRational::from_integer(x.clone()), BigRational::from_integer(y.clone())))
        .collect();
    lagrange_interpolate(&pts)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Exact `|a - b| <= tol * |b|`.
pub fn within_rel(a: &BigRational, b: &BigRational, tol: &BigRational) -> bool {
    (a - b).abs() <= tol * b.abs()
}

/// Integer `k`th root test helper: returns `Some(r)` when `r^k == x`.
pub fn exact_root(x: u64, k: u32) -> Option<u64> {
    let r = (x as f64).powf(1.0 / k as f64).round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|c| c.checked_pow(k) == Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_convention() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(5, -1), BigInt::zero());
        assert_eq!(binom(5, 6), BigInt::zero());
        assert_eq!(binom(-1, 0), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
        assert_eq!(binom(60, 30), "118264581564861424".parse::<BigInt>().unwrap());
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(qbinom(7, 0, 3).unwrap(), BigInt::one());
        assert_eq!(qbinom(4, 2, 2).unwrap(), BigInt::from(35));
        assert_eq!(qbinom(5, 2, 3).unwrap(), qbinom(5, 3, 3).unwrap());
        assert_eq!(qbinom(3, 5, 2).unwrap(), BigInt::zero());
        assert_eq!(qbinom(-2, 0, 2).unwrap(), BigInt::zero());
        assert!(qbinom(3, 1, 1).is_err());
    }

    #[test]
    fn gaussian_binomial_identities() {
        for q in 2..=5u64 {
            for r in 0..=8i64 {
                for s in 0..=r {
                    for t in 0..=s {
                        assert_eq!(gauss(r, s, q) * gauss(s, t, q), gauss(r, t, q) * gauss(r - t, r - s, q));
                    }
                }
            }
            for i in 1..=8i64 {
                let sum: BigInt = (0..=i).map(|k| signed(gauss(i, k, q) * pow(q as i64, choose2(i - k)), i - k)).sum();
                assert!(sum.is_zero());
            }
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), BigRational::one());
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), BigRational::zero());
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn power_sums_match_direct_summation() {
        assert_eq!(power_sum(1, &BigInt::from(4)).unwrap(), BigInt::from(10));
        assert_eq!(power_sum(2, &BigInt::from(3)).unwrap(), BigInt::from(14));
        assert_eq!(power_sum(3, &BigInt::from(5)).unwrap(), BigInt::from(225));
        for j in 0..=8u32 {
            let mut direct = BigInt::zero();
            for a in 0..=50i64 {
                if a > 0 {
                    direct += pow(a, j);
                }
                assert_eq!(power_sum(j, &BigInt::from(a)).unwrap(), direct);
            }
        }
    }

    #[test]
    fn linear_factors_expand_and_deflate() {
        assert_eq!(UniPolyQ::from_roots(&[1, 2]), UniPolyQ::from_ints([2, -3, 1]));
        let p = UniPolyQ::from_roots(&[1, 2, 4, 8, 10]);
        assert_eq!(p, UniPolyQ::from_ints([-640, 1264, -820, 220, -25, 1]));
        let q = p.deflate_roots(&[int(1), int(2), int(4), int(8)]).unwrap();
        assert_eq!(q, UniPolyQ::from_ints([-10, 1]));
        let err = p.deflate_roots(&[int(3)]).unwrap_err();
        assert!(matches!(err, Error::NotARoot { .. }));
    }

    #[test]
    fn display_format() {
        let p = UniPolyQ::from_ints([1515, -76, 1]);
        assert_eq!(p.display_var("λ"), "λ^2 - 76λ + 1515");
        assert_eq!(UniPolyQ::zero().to_string(), "0");
        assert_eq!(UniPolyQ::new(vec![rat(-1, 2), int(0), int(-1)]).to_string(), "-x^2 - 1/2");
    }

    #[test]
    fn shift_and_pow() {
        let p = UniPolyQ::from_ints([0, 0, 1]);
        assert_eq!(p.shift(&int(-1)), UniPolyQ::from_ints([1, -2, 1]));
        assert_eq!(UniPolyQ::linear(int(2)).pow(3), UniPolyQ::from_ints([-8, 12, -6, 1]));
        assert_eq!(UniPolyQ::x().pow(0), UniPolyQ::one());
    }

    #[test]
    fn interpolation() {
        let sq: Vec<_> = (0..3).map(|x| (int(x), int(x * x))).collect();
        assert_eq!(lagrange_interpolate(&sq).unwrap(), UniPolyQ::from_ints([0, 0, 1]));
        let c: Vec<_> = (0..4).map(|x| (int(x), int(7))).collect();
        assert_eq!(lagrange_interpolate(&c).unwrap().degree(), Some(0));
        let f = UniPolyQ::from_roots(&[1, 2]);
        let pts: Vec<_> = (0..3).map(|x| (int(x), f.eval(&int(x)))).collect();
        assert_eq!(lagrange_interpolate(&pts).unwrap(), f);
        let dup = vec![(int(1), int(1)), (int(1), int(2))];
        assert!(matches!(lagrange_interpolate(&dup), Err(Error::DuplicateAbscissa(_))));
    }

    #[test]
    fn roots() {
        assert_eq!(exact_root(1024, 10), Some(2));
        assert_eq!(exact_root(81, 4), Some(3));
        assert_eq!(exact_root(80, 4), None);
    }
}
