//! Subspace distributions `alpha_k`, code counts `beta_k`, the density of
//! non-MDS codes, and the invertible transforms linking them to Whitney
//! numbers.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactmath::{choose2, gauss, pow, signed};
use crate::gfq::Field;
use crate::hwdl;
use crate::subspaces::{enumerate_subspaces, AtomSet, Subspace, Vector, DEFAULT_ENUM_CAP};
use crate::{Error, Result};

/// Number of `k`-dimensional subspaces of `space` that avoid every atom.
pub fn count_avoiding(f: &Field, space: &Subspace, atoms: &AtomSet, k: usize, cap: u64) -> Result<BigInt> {
    if k > space.rank() {
        return Ok(BigInt::zero());
    }
    let inside = atoms.restrict_to(f, space);
    if k == 0 || inside.is_empty() {
        return Ok(gauss(space.rank() as i64, k as i64, f.q()));
    }
    let lookup: HashSet<&Vector> = inside.vectors().iter().collect();
    let points_per_space = (f.q().pow(k as u32) - 1) / (f.q() - 1);
    let by_points = points_per_space as usize <= inside.len();
    let avoids = |v: &Subspace| -> bool {
        if by_points {
            v.points(f).iter().all(|p| !lookup.contains(p))
        } else {
            inside.vectors().iter().all(|a| !v.contains_unchecked(f, a))
        }
    };
    let count = if space.rank() == space.ambient() {
        enumerate_subspaces(f, space.ambient(), k, cap)?.filter(|v| avoids(v)).count()
    } else {
        space.subspaces_of_rank(f, k, cap)?.iter().filter(|v| avoids(v)).count()
    };
    Ok(BigInt::from(count))
}

/// `alpha_k(F_q^n, A)` by enumeration.
pub fn alpha_enum(f: &Field, atoms: &AtomSet, k: usize) -> Result<BigInt> {
    count_avoiding(f, &Subspace::full(atoms.ambient()), atoms, k, DEFAULT_ENUM_CAP)
}

/// `alpha_0..alpha_n` by enumeration.
pub fn alpha_sequence_enum(f: &Field, atoms: &AtomSet) -> Result<Vec<BigInt>> {
    (0..=atoms.ambient()).map(|k| alpha_enum(f, atoms, k)).collect()
}

/// Number of `k`-subspaces of `F_q^n` avoiding a fixed `a`-dimensional subspace.
pub fn alpha_subspace_closed(q: u64, n: usize, a: usize, k: usize) -> Result<BigInt> {
    if q < 2 || a > n {
        return Err(Error::param("need q >= 2 and a <= n"));
    }
    let (n, a, k) = (n as i64, a as i64, k as i64);
    Ok((0..=k).map(|i| signed(pow(q as i64, choose2(i)) * gauss(a, i, q) * gauss(n - i, k - i, q), i)).sum())
}

/// `w_i = sum_{k<=i} alpha_k [n-k, i-k]_q (-1)^{i-k} q^{C(i-k,2)}` for each
/// index of `alpha`.
pub fn whitney_from_alpha(alpha: &[BigInt], n: usize, q: u64) -> Vec<BigInt> {
    let n = n as i64;
    (0..alpha.len() as i64)
        .map(|i| {
            (0..=i)
                .map(|k| signed(&alpha[k as usize] * gauss(n - k, i - k, q) * pow(q as i64, choose2(i - k)), i - k))
                .sum()
        })
        .collect()
}

/// `alpha_k = sum_{i<=k} w_i [n-i, k-i]_q` for each index of `w`.
pub fn alpha_from_whitney(w: &[BigInt], n: usize, q: u64) -> Vec<BigInt> {
    let n = n as i64;
    (0..w.len() as i64).map(|k| (0..=k).map(|i| &w[i as usize] * gauss(n - i, k - i, q)).sum()).collect()
}

/// Complete a Whitney sequence from its first `rk - crit + 1` entries using
/// `w_i = -sum_{j<i} w_j [rk-j, i-j]_q` for `rk - crit < i <= rk`, then
/// check `chi(q^r) = 0` for `r < crit`. Extra prefix entries must agree.
pub fn whitney_tail_recursion(prefix: &[BigInt], rk: usize, crit: usize, q: u64) -> Result<Vec<BigInt>> {
    if crit > rk {
        return Err(Error::param("critical exponent exceeds rank"));
    }
    let need = rk - crit + 1;
    if prefix.len() < need {
        return Err(Error::param(format!("need the first {need} Whitney numbers, got {}", prefix.len())));
    }
    let mut w = prefix[..need].to_vec();
    for i in need..=rk {
        let s: BigInt = (0..i).map(|j| &w[j] * gauss((rk - j) as i64, (i - j) as i64, q)).sum();
        w.push(-s);
    }
    for (i, given) in prefix.iter().enumerate().skip(need) {
        if w.get(i) != Some(given) {
            return Err(Error::Inconsistent(format!("supplied w_{i} = {given} disagrees with the recursion")));
        }
    }
    for r in 0..crit {
        let lam = pow(q as i64, r as u32);
        let chi: BigInt = w.iter().enumerate().map(|(i, wi)| wi * num_traits::pow(lam.clone(), rk - i)).sum();
        if !chi.is_zero() {
            return Err(Error::Inconsistent(format!("characteristic polynomial does not vanish at q^{r}")));
        }
    }
    Ok(w)
}

/// `(-1)^i w_i = sum_{k=1}^{i} beta_k [n-k, i-k]_q (-1)^{k-1} q^{C(i-k,2)}`,
/// `w_0 = 1`. `beta[0]` is ignored.
pub fn whitney_from_beta(beta: &[BigInt], n: usize, q: u64) -> Vec<BigInt> {
    let n = n as i64;
    (0..beta.len() as i64)
        .map(|i| {
            if i == 0 {
                return BigInt::one();
            }
            let s: BigInt = (1..=i)
                .map(|k| signed(&beta[k as usize] * gauss(n - k, i - k, q) * pow(q as i64, choose2(i - k)), k - 1))
                .sum();
            signed(s, i)
        })
        .collect()
}

/// `beta_k = [n,k]_q - alpha_k` elementwise.
pub fn beta_from_alpha(alpha: &[BigInt], n: usize, q: u64) -> Vec<BigInt> {
    alpha.iter().enumerate().map(|(k, a)| gauss(n as i64, k as i64, q) - a).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaMethod {
    /// Enumerate `k`-subspaces against the atom representatives.
    Enum,
    /// Invert the first `k` Whitney numbers.
    Transform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaMethod {
    /// `[n,k]_q - alpha_k` with `alpha_k` from exact Whitney numbers.
    Complement,
    Enum,
    /// Closed census for `k = 2`.
    Closed2,
}

/// `alpha_k(q,n,d)`: `k`-dimensional codes of length `n` with minimum
/// distance greater than `d`.
pub fn alpha_hwdl(q: u64, n: usize, d: usize, k: usize, method: AlphaMethod) -> Result<BigInt> {
    hwdl::check_params(q, n, d)?;
    if k > n {
        return Ok(BigInt::zero());
    }
    if k == 0 {
        return Ok(BigInt::one());
    }
    if d <= n && k > n - d {
        return Ok(BigInt::zero());
    }
    match method {
        AlphaMethod::Enum => {
            let f = Field::new(q)?;
            alpha_enum(&f, &AtomSet::hwdl(&f, n, d)?, k)
        }
        AlphaMethod::Transform => {
            let w = (0..=k).map(|i| hwdl::whitney_exact(q, n, d, i)).collect::<Result<Vec<_>>>()?;
            Ok(alpha_from_whitney(&w, n, q).pop().unwrap())
        }
    }
}

/// `beta_k(q,n,d)`: `k`-dimensional codes with minimum distance at most `d`.
pub fn beta(q: u64, n: usize, d: usize, k: usize, method: BetaMethod) -> Result<BigInt> {
    hwdl::check_params(q, n, d)?;
    if k == 0 || k > n {
        return Ok(BigInt::zero());
    }
    let total = gauss(n as i64, k as i64, q);
    if d >= n || k > n - d {
        return Ok(total);
    }
    match method {
        BetaMethod::Complement => Ok(total - alpha_hwdl(q, n, d, k, AlphaMethod::Transform)?),
        BetaMethod::Enum => Ok(total - alpha_hwdl(q, n, d, k, AlphaMethod::Enum)?),
        BetaMethod::Closed2 => {
            if k != 2 {
                return Err(Error::param("the closed census is for k = 2"));
            }
            hwdl::beta2_closed(q, n, d)
        }
    }
}

/// Fraction of `k`-dimensional codes of length `n` that are not MDS.
pub fn density_delta(q: u64, n: usize, k: usize) -> Result<BigRational> {
    if k == 0 || k > n {
        return Err(Error::param("density needs 1 <= k <= n"));
    }
    if k == n {
        return Ok(BigRational::zero());
    }
    let b = beta(q, n, n - k, k, BetaMethod::Complement)?;
    Ok(BigRational::new(b, gauss(n as i64, k as i64, q)))
}

/// `[n,k]_q - |A| [n-1,k-1]_q`.
pub fn alpha_lower_bound(q: u64, n: usize, k: usize, atom_count: usize) -> BigInt {
    let (n, k) = (n as i64, k as i64);
    gauss(n, k, q) - BigInt::from(atom_count) * gauss(n - 1, k - 1, q)
}

/// Upper bound on `k`-subspaces meeting two distinct `d`-dimensional
/// coordinate subspaces.
pub fn two_set_upper(q: u64, n: usize, d: usize, k: usize) -> BigInt {
    let (n, k) = (n as i64, k as i64);
    let qi = q as i64;
    let a = (pow(qi, d as u32 - 1) - 1) / (qi - 1);
    let b = (pow(qi, d as u32) - 1) / (qi - 1);
    a * gauss(n - 1, k - 1, q) + &b * &b * gauss(n - 2, k - 2, q)
}

/// Enumerated count of `k`-subspaces meeting both coordinate subspaces
/// `F_q^n(s1)` and `F_q^n(s2)`.
pub fn two_set_meet_count(f: &Field, n: usize, s1: &[usize], s2: &[usize], k: usize) -> Result<BigInt> {
    let a1 = AtomSet::subspace_union(f, n, &[Subspace::coordinate(n, s1)])?;
    let a2 = AtomSet::subspace_union(f, n, &[Subspace::coordinate(n, s2)])?;
    let meets = |v: &Subspace, a: &AtomSet| a.vectors().iter().any(|x| v.contains_unchecked(f, x));
    Ok(BigInt::from(enumerate_subspaces(f, n, k, DEFAULT_ENUM_CAP)?.filter(|v| meets(v, &a1) && meets(v, &a2)).count()))
}
