//! Finite fields `GF(q)` for prime powers `q`.
//!
//! Elements are dense indices `0..q`. The index of an element of `GF(p^e)`
//! is `sum c_i p^i` where `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` is its
//! residue modulo the defining polynomial, so 0 and 1 are the additive and
//! multiplicative identities.

use crate::{Error, Result};

pub type Elem = u32;

/// Largest field order accepted by default.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

/// Fields up to this order get log/antilog tables.
const LOG_TABLE_MAX: u64 = 1 << 16;

/// Fields up to this order get a full addition table (extension fields, odd p).
const ADD_TABLE_MAX: u64 = 256;

#[derive(Clone, Debug)]
pub struct Field {
    q: u64,
    p: u64,
    e: u32,
    /// Monic modulus, constant term first (length `e + 1`). `[0, 1]` for prime fields.
    modulus: Vec<u64>,
    log: Vec<u32>,
    exp: Vec<Elem>,
    add_table: Vec<Elem>,
    neg_table: Vec<Elem>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for Field {}

/// Split `q` as `p^e` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).take_while(|d| d * d <= q).find(|d| q % d == 0).unwrap_or(q);
    let mut r = q;
    let mut e = 0;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

// Polynomials over F_p as coefficient vectors, constant term first.
fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn digits(mut x: u64, p: u64, e: u32) -> Vec<u64> {
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Monic polynomials of degree `deg` over F_p in lexicographic order of
/// `(c_0, ..., c_{deg-1})`, `c_0` most significant.
fn monic_lex(deg: u32, p: u64) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(deg);
    (0..count).map(move |idx| {
        let mut c = vec![0u64; deg as usize + 1];
        let mut r = idx;
        for i in (0..deg as usize).rev() {
            c[i] = r % p;
            r /= p;
        }
        c[deg as usize] = 1;
        c
    })
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = (f.len() - 1) as u32;
    (1..=deg / 2).all(|k| monic_lex(k, p).all(|g| !poly_rem(f, &g, p).is_empty()))
}

fn lex_min_irreducible(e: u32, p: u64) -> Vec<u64> {
    monic_lex(e, p).find(|f| is_irreducible(f, p)).expect("irreducible polynomials exist in every degree")
}

impl Field {
    /// Construct `GF(q)` with the default order cap.
    pub fn new(q: u64) -> Result<Field> {
        Self::with_cap(q, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(q: u64, cap: u64) -> Result<Field> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > cap {
            return Err(Error::CapExceeded { what: "field order", cap, reached: q.to_string() });
        }
        let modulus = if e == 1 { vec![0, 1] } else { lex_min_irreducible(e, p) };
        let mut f =
            Field { q, p, e, modulus, log: Vec::new(), exp: Vec::new(), add_table: Vec::new(), neg_table: Vec::new() };
        if e > 1 && p != 2 && q <= ADD_TABLE_MAX {
            let mut t = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = f.add_slow(a as Elem, b as Elem);
                }
            }
            f.add_table = t;
        }
        if e > 1 && p != 2 {
            f.neg_table = (0..q).map(|a| f.neg_slow(a as Elem)).collect();
        }
        if e > 1 && q <= LOG_TABLE_MAX {
            f.build_logs();
        }
        Ok(f)
    }

    fn build_logs(&mut self) {
        let q = self.q;
        let g = (2..q).map(|g| g as Elem).find(|&g| self.order_slow(g) == q - 1).unwrap_or(1);
        let mut exp = vec![0 as Elem; 2 * (q as usize - 1)];
        let mut log = vec![0u32; q as usize];
        let mut x: Elem = 1;
        for i in 0..(q - 1) as usize {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        for i in (q - 1) as usize..exp.len() {
            exp[i] = exp[i - (q - 1) as usize];
        }
        self.exp = exp;
        self.log = log;
    }

    fn order_slow(&self, g: Elem) -> u64 {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.mul_slow(x, g);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    fn add_slow(&self, a: Elem, b: Elem) -> Elem {
        let (p, e) = (self.p, self.e);
        let s: Vec<u64> = digits(a as u64, p, e).iter().zip(digits(b as u64, p, e)).map(|(x, y)| (x + y) % p).collect();
        undigits(&s, p) as Elem
    }

    fn neg_slow(&self, a: Elem) -> Elem {
        let p = self.p;
        let s: Vec<u64> = digits(a as u64, p, self.e).iter().map(|x| (p - x) % p).collect();
        undigits(&s, p) as Elem
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p) as Elem;
        }
        let (p, e) = (self.p, self.e);
        let da = digits(a as u64, p, e);
        let db = digits(b as u64, p, e);
        let mut prod = vec![0u64; 2 * e as usize];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, p);
        r.resize(e as usize, 0);
        undigits(&r, p) as Elem
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if self.e == 1 {
            let s = a as u64 + b as u64;
            (if s >= self.p { s - self.p } else { s }) as Elem
        } else if !self.add_table.is_empty() {
            self.add_table[(a as u64 * self.q + b as u64) as usize]
        } else {
            self.add_slow(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            a
        } else if self.e == 1 {
            if a == 0 {
                0
            } else {
                (self.p - a as u64) as Elem
            }
        } else {
            self.neg_table[a as usize]
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.e == 1 {
            ((a as u64 * b as u64) % self.p) as Elem
        } else if !self.log.is_empty() {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        } else {
            self.mul_slow(a, b)
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inv_nonzero(a))
    }

    /// Inverse of an element known to be nonzero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Elem) -> Elem {
        debug_assert!(a != 0);
        if self.e == 1 {
            mod_inv(a as u64, self.p) as Elem
        } else if !self.log.is_empty() {
            let l = self.log[a as usize] as usize;
            self.exp[(self.q as usize - 1 - l) % (self.q as usize - 1)]
        } else {
            let mut r: Elem = 1;
            let mut b = a;
            let mut k = self.q - 2;
            while k > 0 {
                if k & 1 == 1 {
                    r = self.mul_slow(r, b);
                }
                b = self.mul_slow(b, b);
                k >>= 1;
            }
            r
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }

    /// Nonzero elements in index order.
    pub fn units(&self) -> impl Iterator<Item = Elem> {
        1..self.q as Elem
    }
}
