//! Single-value computations shared by the subcommands and `table`.

use std::collections::BTreeMap;

use clap::ValueEnum;
use num_bigint::BigInt;
use whitlab::distributions::{self, AlphaMethod, BetaMethod};
use whitlab::exactmath::{int, pow};
use whitlab::lattice::charpoly_from_whitney;
use whitlab::{agreement, hwdl, verify, Error, Result, UniPolyQ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhitneyMethod {
    /// Closed form where one exists, otherwise subspace enumeration.
    Exact,
    Closed,
    Alpha,
    Beta,
    Brute,
    Reduction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlphaArg {
    Enum,
    Transform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BetaArg {
    Complement,
    Enum,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GammaMethod {
    Recursion,
    Enum,
    Poly,
}

pub fn method_name<T: ValueEnum>(m: T) -> String {
    m.to_possible_value().expect("no skipped variants").get_name().to_string()
}

/// `w_i(q,n,d)` for every `i` in `indices`.
pub fn whitney(q: u64, n: usize, d: usize, indices: &[usize], method: WhitneyMethod) -> Result<Vec<BigInt>> {
    hwdl::check_params(q, n, d)?;
    if let Some(&i) = indices.iter().find(|&&i| i > n) {
        return Err(Error::InvalidParameter(format!("index {i} exceeds n = {n}")));
    }
    let top = indices.iter().copied().max().unwrap_or(0);
    let pick = |all: Vec<BigInt>| indices.iter().map(|&i| all[i].clone()).collect();
    match method {
        WhitneyMethod::Exact => indices.iter().map(|&i| hwdl::whitney_exact(q, n, d, i)).collect(),
        WhitneyMethod::Closed => indices
            .iter()
            .map(|&i| {
                hwdl::whitney_closed(q, n, d, i)?
                    .ok_or_else(|| Error::InvalidParameter(format!("no closed form for w_{i}({q},{n},{d})")))
            })
            .collect(),
        WhitneyMethod::Alpha => {
            let alpha = (0..=top).map(|k| hwdl::alpha_enum_cached(q, n, d, k)).collect::<Result<Vec<_>>>()?;
            Ok(pick(distributions::whitney_from_alpha(&alpha, n, q)))
        }
        WhitneyMethod::Beta => {
            let beta =
                (0..=top).map(|k| distributions::beta(q, n, d, k, BetaMethod::Enum)).collect::<Result<Vec<_>>>()?;
            Ok(pick(distributions::whitney_from_beta(&beta, n, q)))
        }
        WhitneyMethod::Brute => Ok(pick(verify::brute_whitney_upto(q, n, d, top)?)),
        WhitneyMethod::Reduction => indices.iter().map(|&i| reduction(q, n, d, i)).collect(),
    }
}

fn reduction(q: u64, n: usize, d: usize, i: usize) -> Result<BigInt> {
    if i == 0 {
        return Ok(BigInt::from(1));
    }
    let d = d.min(n);
    let lower: BTreeMap<usize, BigInt> =
        (i..(i * d).min(n)).map(|t| Ok((t, hwdl::whitney_exact(q, t, d.min(t), i)?))).collect::<Result<_>>()?;
    hwdl::reduction_formula(q, n, d, i, &lower)
}

pub fn charpoly(q: u64, n: usize, d: usize, method: WhitneyMethod) -> Result<UniPolyQ> {
    let idx: Vec<usize> = (0..=n).collect();
    Ok(charpoly_from_whitney(&whitney(q, n, d, &idx, method)?))
}

/// Divide out `λ - q^i` for `i = 0, 1, ...` while each is a root. Returns the
/// quotient and the exponents removed.
pub fn deflate_powers(p: &UniPolyQ, q: u64) -> (UniPolyQ, Vec<u32>) {
    let mut p = p.clone();
    let mut removed = Vec::new();
    for e in 0.. {
        if p.degree().unwrap_or(0) == 0 {
            break;
        }
        let (quot, rem) = p.div_linear(&int(pow(q as i64, e)));
        if !num_traits::Zero::is_zero(&rem) {
            break;
        }
        p = quot;
        removed.push(e);
    }
    (p, removed)
}

pub fn alpha(q: u64, n: usize, d: usize, k: usize, m: AlphaArg) -> Result<BigInt> {
    let m = match m {
        AlphaArg::Enum => AlphaMethod::Enum,
        AlphaArg::Transform => AlphaMethod::Transform,
    };
    distributions::alpha_hwdl(q, n, d, k, m)
}

pub fn beta(q: u64, n: usize, d: usize, k: usize, m: BetaArg) -> Result<BigInt> {
    let m = match m {
        BetaArg::Complement => BetaMethod::Complement,
        BetaArg::Enum => BetaMethod::Enum,
        BetaArg::Closed => BetaMethod::Closed2,
    };
    distributions::beta(q, n, d, k, m)
}

pub fn gamma(a: u64, b: i64, c: i64, nu: i64, m: GammaMethod) -> Result<BigInt> {
    match m {
        GammaMethod::Recursion => agreement::gamma(a, b, c, nu),
        GammaMethod::Enum => agreement::gamma_enum_oracle(a, b, c, nu),
        GammaMethod::Poly => {
            let v = agreement::gamma_poly(b, c, nu)?.eval_int(&BigInt::from(a));
            if !v.is_integer() {
                return Err(Error::Inconsistent(format!("non-integral polynomial value {v}")));
            }
            Ok(v.to_integer())
        }
    }
}

/// Smallest `r` with `χ(q^r) != 0`.
pub fn crit(q: u64, n: usize, d: usize, method: WhitneyMethod) -> Result<usize> {
    let chi = charpoly(q, n, d, method)?;
    (0..=n)
        .find(|&r| !num_traits::Zero::is_zero(&chi.eval(&int(pow(q as i64, r as u32)))))
        .ok_or_else(|| Error::Inconsistent("characteristic polynomial vanishes at every q^r, r <= n".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn methods_agree_on_small_case() {
        let idx: Vec<usize> = (0..=5).collect();
        let want: Vec<BigInt> = [1, -25, 220, -820, 1264, -640].map(BigInt::from).to_vec();
        for m in [WhitneyMethod::Exact, WhitneyMethod::Alpha, WhitneyMethod::Beta, WhitneyMethod::Brute] {
            assert_eq!(whitney(2, 5, 3, &idx, m).unwrap(), want, "{m:?}");
        }
    }

    #[test]
    fn reduction_route() {
        let brute = whitney(2, 6, 3, &[2], WhitneyMethod::Brute).unwrap();
        assert_eq!(whitney(2, 6, 3, &[2], WhitneyMethod::Reduction).unwrap(), brute);
    }

    #[test]
    fn deflation() {
        let p = charpoly(3, 6, 3, WhitneyMethod::Exact).unwrap();
        let (quot, removed) = deflate_powers(&p, 3);
        assert_eq!(removed, vec![0, 1, 2, 3]);
        assert_eq!(quot, UniPolyQ::from_ints([1515, -76, 1]));
    }

    #[test]
    fn crit_of_small_geometry() {
        assert_eq!(crit(2, 5, 3, WhitneyMethod::Exact).unwrap(), 4);
        assert_eq!(crit(2, 5, 3, WhitneyMethod::Brute).unwrap(), 4);
    }
}
