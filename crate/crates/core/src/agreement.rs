//! Agreement numbers `gamma_a(b,c,nu)`: arrays of length `b` over an
//! alphabet `{*, 1, ..., a-1}` with exactly `nu` entries different from `*`,
//! at least `c` of which carry the same symbol.
//!
//! Three routes are provided: the defining recursion (memoized), a
//! brute-force count over all `a^b` arrays, and an exact polynomial in `a`
//! built from Bernoulli numbers.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactmath::{bernoulli, binom, int, pow_i, UniPolyQ};
use crate::gfq::{Elem, Field};
use crate::subspaces::weight;
use crate::{Error, Result};

/// Above this alphabet size `gamma` evaluates the polynomial instead of
/// walking the recursion in `a`.
pub const POLY_THRESHOLD: u64 = 256;

/// Budget for the brute-force oracle (number of arrays).
pub const ORACLE_BUDGET: u64 = 10_000_000;

type Key = (u64, i64, i64, i64);

fn memo() -> &'static RwLock<HashMap<Key, BigInt>> {
    static M: OnceLock<RwLock<HashMap<Key, BigInt>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

fn poly_memo() -> &'static RwLock<HashMap<(i64, i64, i64), UniPolyQ>> {
    static M: OnceLock<RwLock<HashMap<(i64, i64, i64), UniPolyQ>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

fn check(a: u64, b: i64, c: i64, nu: i64) -> Result<()> {
    if a < 1 || b < 1 || c < 0 || nu < 0 {
        return Err(Error::param(format!("agreement numbers need a,b >= 1 and c,nu >= 0; got ({a},{b},{c},{nu})")));
    }
    Ok(())
}

/// `gamma_a(b,c,nu)`. Uses the recursion for `a <= POLY_THRESHOLD` and the
/// polynomial in `a` above it.
///
/// For `c = 0` every array with `nu` non-`*` entries qualifies, so the value
/// is `C(b,nu) (a-1)^nu` (with `0^0 = 1`); this also covers `a = 1`.
pub fn gamma(a: u64, b: i64, c: i64, nu: i64) -> Result<BigInt> {
    check(a, b, c, nu)?;
    if a > POLY_THRESHOLD {
        let p = gamma_poly(b, c, nu)?;
        let v = p.eval_int(&BigInt::from(a));
        if !v.is_integer() {
            return Err(Error::Inconsistent(format!("non-integer agreement polynomial value {v}")));
        }
        return Ok(v.to_integer());
    }
    Ok(gamma_rec(a, b, c, nu))
}

/// The defining recursion, memoized.
pub fn gamma_recursion(a: u64, b: i64, c: i64, nu: i64) -> Result<BigInt> {
    check(a, b, c, nu)?;
    Ok(gamma_rec(a, b, c, nu))
}

fn gamma_rec(a: u64, b: i64, c: i64, nu: i64) -> BigInt {
    if c == 0 {
        return binom(b, nu) * pow_i(&BigInt::from(a - 1), nu);
    }
    if a == 1 || b < c || nu < c || nu > b {
        return BigInt::zero();
    }
    if b == c && nu == c {
        return BigInt::from(a - 1);
    }
    let key = (a, b, c, nu);
    if let Some(v) = memo().read().unwrap().get(&key) {
        return v.clone();
    }
    // Walk a upward from 2 so the recursion depth stays bounded by b.
    let mut v = BigInt::zero();
    for ai in 2..=a {
        let k = (ai, b, c, nu);
        if let Some(x) = memo().read().unwrap().get(&k) {
            v = x.clone();
            continue;
        }
        v = gamma_step(ai, b, c, nu, &v);
        memo().write().unwrap().insert(k, v.clone());
    }
    v
}

/// One step of the recursion; `prev = gamma_{a-1}(b,c,nu)` is the `s = 0` term.
fn gamma_step(a: u64, b: i64, c: i64, nu: i64, prev: &BigInt) -> BigInt {
    let mut v = prev.clone();
    for s in 1..c {
        v += binom(b, s) * gamma_rec(a - 1, b - s, c, nu - s);
    }
    let base = BigInt::from(a as i64 - 2);
    for s in c..=nu {
        v += binom(b, s) * binom(b - s, nu - s) * pow_i(&base, nu - s);
    }
    v
}

/// Count qualifying arrays directly.
pub fn gamma_enum_oracle(a: u64, b: i64, c: i64, nu: i64) -> Result<BigInt> {
    check(a, b, c, nu)?;
    let table = oracle_table(a, b as usize)?;
    Ok(table.iter().filter(|(&(w, m), _)| w == nu as usize && m >= c as usize).map(|(_, &cnt)| BigInt::from(cnt)).sum())
}

/// Histogram of all `a^b` arrays by (number of non-`*` entries, largest
/// multiplicity of a non-`*` symbol).
pub fn oracle_table(a: u64, b: usize) -> Result<HashMap<(usize, usize), u64>> {
    let total = (a as f64).powi(b as i32);
    if total > ORACLE_BUDGET as f64 {
        return Err(Error::CapExceeded {
            what: "agreement oracle arrays",
            cap: ORACLE_BUDGET,
            reached: format!("{a}^{b}"),
        });
    }
    let mut hist = HashMap::new();
    let mut digits = vec![0u64; b];
    let mut counts = vec![0usize; a as usize];
    loop {
        counts.iter_mut().for_each(|c| *c = 0);
        for &d in &digits {
            counts[d as usize] += 1;
        }
        let w = b - counts[0];
        let m = counts[1..].iter().copied().max().unwrap_or(0);
        *hist.entry((w, m)).or_insert(0) += 1;
        let mut i = 0;
        loop {
            if i == b {
                return Ok(hist);
            }
            digits[i] += 1;
            if digits[i] < a {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn faulhaber_memo() -> &'static RwLock<Vec<UniPolyQ>> {
    static M: OnceLock<RwLock<Vec<UniPolyQ>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// `sum_{i=2}^{x} i^j = -1 + (1/(j+1)) sum_{i=0}^{j} (-1)^i C(j+1,i) B_i x^{j+1-i}`
/// as a polynomial in `x`.
fn sum_from_two(j: usize) -> UniPolyQ {
    if let Some(p) = faulhaber_memo().read().unwrap().get(j) {
        return p.clone();
    }
    let mut m = faulhaber_memo().write().unwrap();
    while m.len() <= j {
        let jj = m.len();
        let mut coeffs = vec![BigRational::zero(); jj + 2];
        for i in 0..=jj {
            let mut t = int(binom(jj as i64 + 1, i as i64)) * bernoulli(i);
            if i % 2 == 1 {
                t = -t;
            }
            coeffs[jj + 1 - i] += t / int(jj as i64 + 1);
        }
        coeffs[0] -= BigRational::one();
        m.push(UniPolyQ::new(coeffs));
    }
    m[j].clone()
}

/// Polynomial `p^{b,c,nu}` with `p(a) = gamma_a(b,c,nu)` for every `a >= 1`.
pub fn gamma_poly(b: i64, c: i64, nu: i64) -> Result<UniPolyQ> {
    check(1, b, c, nu)?;
    Ok(gamma_poly_rec(b, c, nu))
}

fn gamma_poly_rec(b: i64, c: i64, nu: i64) -> UniPolyQ {
    if c == 0 {
        // no telescoping here: every array with nu symbols qualifies
        if nu > b {
            return UniPolyQ::zero();
        }
        return UniPolyQ::linear(int(1)).pow(nu as u32).scale(&int(binom(b, nu)));
    }
    if b < c || nu < c || nu > b {
        return UniPolyQ::zero();
    }
    if b == c && nu == c {
        return UniPolyQ::linear(int(1));
    }
    if let Some(p) = poly_memo().read().unwrap().get(&(b, c, nu)) {
        return p.clone();
    }
    let mut u = UniPolyQ::zero();
    for s in 1..c {
        let lower = gamma_poly_rec(b - s, c, nu - s).shift(&int(-1));
        u = &u + &lower.scale(&int(binom(b, s)));
    }
    for s in c..=nu {
        let term = UniPolyQ::linear(int(2)).pow((nu - s) as u32).scale(&int(binom(b, s) * binom(b - s, nu - s)));
        u = &u + &term;
    }
    let mut p = UniPolyQ::zero();
    for (j, uj) in u.coeffs().iter().enumerate() {
        if !uj.is_zero() {
            p = &p + &sum_from_two(j).scale(uj);
        }
    }
    poly_memo().write().unwrap().insert((b, c, nu), p.clone());
    p
}

/// `gamma_q(n, n-d, nu)`: vectors `v` of weight `nu` such that some
/// `xi v + w` (`xi != 0`) has weight at most `d`, for `w` of full support.
/// For `d >= n` every vector of weight `nu` qualifies.
pub fn line_count(q: u64, n: usize, d: usize, nu: usize, w: &[Elem]) -> Result<BigInt> {
    if w.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: w.len() });
    }
    if weight(w) != n {
        return Err(Error::param("w must have full support"));
    }
    gamma(q, n as i64, n.saturating_sub(d) as i64, nu as i64)
}

/// Enumerate all `v` of weight `nu` and test the defining condition directly.
pub fn line_count_enum(f: &Field, n: usize, d: usize, nu: usize, w: &[Elem]) -> Result<BigInt> {
    if w.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: w.len() });
    }
    let q = f.q();
    let total = (q as f64).powi(n as i32);
    if total > ORACLE_BUDGET as f64 {
        return Err(Error::CapExceeded {
            what: "line-count oracle vectors",
            cap: ORACLE_BUDGET,
            reached: format!("{q}^{n}"),
        });
    }
    let mut v = vec![0 as Elem; n];
    let mut count = 0u64;
    loop {
        if weight(&v) == nu {
            let hit = f.units().any(|xi| {
                let comb: Vec<Elem> = v.iter().zip(w).map(|(&x, &y)| f.add(f.mul(xi, x), y)).collect();
                weight(&comb) <= d
            });
            if hit {
                count += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(BigInt::from(count));
            }
            v[i] += 1;
            if (v[i] as u64) < q {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: u64, b: i64, c: i64, nu: i64) -> BigInt {
        gamma(a, b, c, nu).unwrap()
    }

    #[test]
    fn initial_conditions() {
        for a in 2..8u64 {
            for c in 1..5i64 {
                assert_eq!(g(a, c, c, c), BigInt::from(a - 1));
            }
        }
        for b in 1..5 {
            for c in 1..=b {
                for nu in 0..=b {
                    assert!(g(1, b, c, nu).is_zero());
                }
            }
        }
        assert!(g(3, 2, 3, 2).is_zero());
        assert!(g(3, 2, 1, 3).is_zero());
    }

    #[test]
    fn small_values() {
        assert_eq!(g(3, 2, 1, 1), BigInt::from(4));
        assert_eq!(g(2, 2, 1, 1), BigInt::from(2));
        assert_eq!(gamma_enum_oracle(2, 2, 1, 1).unwrap(), BigInt::from(2));
        for a in 1..6u64 {
            for b in 1..6i64 {
                for nu in 0..=b {
                    assert_eq!(g(a, b, 0, nu), binom(b, nu) * pow_i(&BigInt::from(a - 1), nu));
                }
            }
        }
        assert!(gamma(0, 1, 0, 0).is_err());
        assert!(gamma(2, 1, -1, 0).is_err());
    }

    #[test]
    fn recursion_matches_oracle() {
        for a in 1..=4u64 {
            for b in 1..=5i64 {
                for c in 0..=b {
                    for nu in 0..=b + 1 {
                        assert_eq!(g(a, b, c, nu), gamma_enum_oracle(a, b, c, nu).unwrap(), "({a},{b},{c},{nu})");
                    }
                }
            }
        }
    }

    #[test]
    fn polynomials() {
        assert_eq!(gamma_poly(3, 3, 3).unwrap(), UniPolyQ::from_ints([-1, 1]));
        assert_eq!(gamma_poly(2, 1, 1).unwrap(), UniPolyQ::from_ints([-2, 2]));
        assert!(gamma_poly(2, 1, 3).unwrap().is_zero());
        for b in 1..=5i64 {
            for c in 0..=b {
                for nu in 0..=b {
                    let p = gamma_poly(b, c, nu).unwrap();
                    for a in 1..=12u64 {
                        assert_eq!(p.eval_int(&BigInt::from(a)), int(g(a, b, c, nu)));
                    }
                }
            }
        }
    }

    #[test]
    fn large_alphabet_uses_polynomial() {
        let via_poly = g(1009, 5, 2, 4);
        let p = gamma_poly(5, 2, 4).unwrap();
        assert_eq!(int(via_poly.clone()), p.eval_int(&BigInt::from(1009)));
        assert_eq!(via_poly, gamma_recursion(1009, 5, 2, 4).unwrap());
    }

    #[test]
    fn faulhaber_sums() {
        for j in 0..6usize {
            let p = sum_from_two(j);
            for x in 1..10i64 {
                let direct: i64 = (2..=x).map(|i| i.pow(j as u32)).sum();
                assert_eq!(p.eval_int(&BigInt::from(x)), int(direct));
            }
        }
    }

    #[test]
    fn line_counts() {
        let f2 = Field::new(2).unwrap();
        assert_eq!(line_count(2, 2, 1, 1, &[1, 1]).unwrap(), BigInt::from(2));
        assert_eq!(line_count_enum(&f2, 2, 1, 1, &[1, 1]).unwrap(), BigInt::from(2));
        assert!(line_count(2, 3, 2, 0, &[1, 1, 1]).unwrap().is_zero());
        assert!(line_count(2, 2, 1, 1, &[1, 0]).is_err());
        let f4 = Field::new(4).unwrap();
        for d in 1..=3usize {
            for nu in 0..=3usize {
                let a = line_count_enum(&f4, 3, d, nu, &[1, 1, 1]).unwrap();
                let b = line_count_enum(&f4, 3, d, nu, &[1, 2, 3]).unwrap();
                assert_eq!(a, b);
                assert_eq!(a, line_count(4, 3, d, nu, &[1, 2, 3]).unwrap());
            }
        }
        let f3 = Field::new(3).unwrap();
        for n in 1..=5usize {
            for d in 1..=n + 1 {
                for nu in 0..=n {
                    let w = vec![2; n];
                    assert_eq!(line_count_enum(&f3, n, d, nu, &w).unwrap(), line_count(3, n, d, nu, &w).unwrap());
                }
            }
        }
    }
}
