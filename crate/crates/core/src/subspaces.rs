//! Vectors and subspaces of `GF(q)^n` in canonical reduced row-echelon form,
//! plus the atom sets that generate restriction geometries.
//!
//! Coordinates are 0-based throughout.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;

use crate::exactmath::{binom, gauss};
use crate::gfq::{Elem, Field};
use crate::{Error, Result};

/// Default cap on the number of subspaces a single enumeration may yield.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

pub type Vector = Vec<Elem>;

pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

pub fn support(v: &[Elem]) -> Vec<usize> {
    v.iter().enumerate().filter_map(|(i, &x)| (x != 0).then_some(i)).collect()
}

pub fn leading_index(v: &[Elem]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

/// Scale `v` so its first nonzero entry is 1. Zero vectors are returned unchanged.
pub fn normalize(f: &Field, v: &[Elem]) -> Vector {
    match leading_index(v) {
        None => v.to_vec(),
        Some(i) => {
            let s = f.inv_nonzero(v[i]);
            v.iter().map(|&x| f.mul(x, s)).collect()
        }
    }
}

/// Canonical subspace: the unique RREF basis, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    k: usize,
    rows: Vec<Elem>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, [", self.n)?;
        for (i, r) in self.rows().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "])")
    }
}

/// In-place RREF of a row-major `m x n` matrix; returns the rank. Nonzero
/// rows end up first, in pivot order.
fn rref(f: &Field, a: &mut [Elem], m: usize, n: usize) -> usize {
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        let Some(piv) = (r..m).find(|&i| a[i * n + col] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..n {
                a.swap(piv * n + j, r * n + j);
            }
        }
        let s = f.inv_nonzero(a[r * n + col]);
        if s != 1 {
            for j in col..n {
                a[r * n + j] = f.mul(a[r * n + j], s);
            }
        }
        for i in 0..m {
            if i == r {
                continue;
            }
            let c = a[i * n + col];
            if c == 0 {
                continue;
            }
            let c = f.neg(c);
            for j in col..n {
                let t = f.mul(c, a[r * n + j]);
                a[i * n + j] = f.add(a[i * n + j], t);
            }
        }
        r += 1;
    }
    r
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { n, k: 0, rows: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        let mut rows = vec![0; n * n];
        for i in 0..n {
            rows[i * n + i] = 1;
        }
        Subspace { n, k: n, rows }
    }

    /// Row space of `rows`, each of length `n`.
    pub fn span(f: &Field, n: usize, rows: &[Vector]) -> Result<Self> {
        let mut a = Vec::with_capacity(rows.len() * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
            if let Some(&x) = r.iter().find(|&&x| x as u64 >= f.q()) {
                return Err(Error::param(format!("entry {x} is not an element of GF({})", f.q())));
            }
            a.extend_from_slice(r);
        }
        Ok(Self::from_flat(f, n, a))
    }

    fn from_flat(f: &Field, n: usize, mut a: Vec<Elem>) -> Self {
        let m = if n == 0 { 0 } else { a.len() / n };
        let k = rref(f, &mut a, m, n);
        a.truncate(k * n);
        Subspace { n, k, rows: a }
    }

    /// Span of standard basis vectors `e_i` for `i` in `coords`.
    pub fn coordinate(n: usize, coords: &[usize]) -> Self {
        let mut c = coords.to_vec();
        c.sort_unstable();
        c.dedup();
        let mut rows = vec![0; c.len() * n];
        for (r, &i) in c.iter().enumerate() {
            rows[r * n + i] = 1;
        }
        Subspace { n, k: c.len(), rows }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.rows[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.k).map(move |i| self.row(i))
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows().map(|r| leading_index(r).unwrap()).collect()
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::DimensionMismatch { expected: self.n, found: n });
        }
        Ok(())
    }

    /// Residue of `v` after eliminating the pivot columns.
    fn reduce(&self, f: &Field, v: &[Elem]) -> Vector {
        let mut r = v.to_vec();
        for row in self.rows() {
            let p = leading_index(row).unwrap();
            let c = r[p];
            if c == 0 {
                continue;
            }
            let c = f.neg(c);
            for j in p..self.n {
                r[j] = f.add(r[j], f.mul(c, row[j]));
            }
        }
        r
    }

    pub fn contains(&self, f: &Field, v: &[Elem]) -> Result<bool> {
        self.check(v.len())?;
        Ok(self.contains_unchecked(f, v))
    }

    #[inline]
    pub(crate) fn contains_unchecked(&self, f: &Field, v: &[Elem]) -> bool {
        // Fast path: for RREF rows, v is in the span iff v equals the
        // combination of rows weighted by v's pivot-column entries.
        let mut acc = vec![0 as Elem; self.n];
        for row in self.rows() {
            let p = leading_index(row).unwrap();
            let c = v[p];
            if c == 0 {
                continue;
            }
            for j in p..self.n {
                acc[j] = f.add(acc[j], f.mul(c, row[j]));
            }
        }
        acc == v
    }

    pub fn leq(&self, f: &Field, other: &Subspace) -> Result<bool> {
        other.check(self.n)?;
        Ok(self.k <= other.k && self.rows().all(|r| other.contains_unchecked(f, r)))
    }

    pub fn sum(&self, f: &Field, other: &Subspace) -> Result<Subspace> {
        other.check(self.n)?;
        let mut a = self.rows.clone();
        a.extend_from_slice(&other.rows);
        Ok(Self::from_flat(f, self.n, a))
    }

    /// `self + <v>`, computed incrementally against the existing RREF.
    pub fn join_vector(&self, f: &Field, v: &[Elem]) -> Subspace {
        let r = self.reduce(f, v);
        let Some(p) = leading_index(&r) else {
            return self.clone();
        };
        let n = self.n;
        let s = f.inv_nonzero(r[p]);
        let r: Vector = r.iter().map(|&x| f.mul(x, s)).collect();
        let mut rows = Vec::with_capacity((self.k + 1) * n);
        let mut inserted = false;
        for row in self.rows() {
            if !inserted && leading_index(row).unwrap() > p {
                rows.extend_from_slice(&r);
                inserted = true;
            }
            let c = row[p];
            if c == 0 {
                rows.extend_from_slice(row);
            } else {
                let c = f.neg(c);
                rows.extend(row.iter().zip(&r).map(|(&x, &y)| f.add(x, f.mul(c, y))));
            }
        }
        if !inserted {
            rows.extend_from_slice(&r);
        }
        Subspace { n, k: self.k + 1, rows }
    }

    /// Intersection via the Zassenhaus construction.
    pub fn intersect(&self, f: &Field, other: &Subspace) -> Result<Subspace> {
        other.check(self.n)?;
        let n = self.n;
        let w = 2 * n;
        let m = self.k + other.k;
        let mut a = vec![0 as Elem; m * w];
        for (i, r) in self.rows().enumerate() {
            a[i * w..i * w + n].copy_from_slice(r);
            a[i * w + n..(i + 1) * w].copy_from_slice(r);
        }
        for (i, r) in other.rows().enumerate() {
            let i = i + self.k;
            a[i * w..i * w + n].copy_from_slice(r);
        }
        let rank = rref(f, &mut a, m, w);
        let mut out = Vec::new();
        for i in 0..rank {
            let row = &a[i * w..(i + 1) * w];
            if row[..n].iter().all(|&x| x == 0) {
                out.extend_from_slice(&row[n..]);
            }
        }
        Ok(Self::from_flat(f, n, out))
    }

    /// Orthogonal complement with respect to the standard dot product.
    pub fn orthogonal(&self, f: &Field) -> Subspace {
        let n = self.n;
        let piv = self.pivots();
        let mut out = Vec::with_capacity((n - self.k) * n);
        for col in (0..n).filter(|c| !piv.contains(c)) {
            let mut x = vec![0 as Elem; n];
            x[col] = 1;
            for (i, &p) in piv.iter().enumerate() {
                x[p] = f.neg(self.row(i)[col]);
            }
            out.extend_from_slice(&x);
        }
        Self::from_flat(f, n, out)
    }

    /// Union of the supports of all vectors in the subspace.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.rows().any(|r| r[j] != 0)).collect()
    }

    /// One normalized representative of each 1-dimensional subspace.
    pub fn points(&self, f: &Field) -> Vec<Vector> {
        let q = f.q() as usize;
        let mut out = Vec::new();
        for lead in 0..self.k {
            // coefficient 1 on row `lead`, 0 before, arbitrary after
            let tail = self.k - lead - 1;
            let mut coeffs = vec![0 as Elem; tail];
            loop {
                let mut v = self.row(lead).to_vec();
                for (t, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        let row = self.row(lead + 1 + t);
                        for j in 0..self.n {
                            v[j] = f.add(v[j], f.mul(c, row[j]));
                        }
                    }
                }
                out.push(v);
                if !odometer(&mut coeffs, q) {
                    break;
                }
            }
        }
        out
    }

    /// All `j`-dimensional subspaces contained in this one.
    pub fn subspaces_of_rank(&self, f: &Field, j: usize, cap: u64) -> Result<Vec<Subspace>> {
        // Enumerate in coordinates relative to this basis, then map back.
        let inner = enumerate_subspaces(f, self.k, j, cap)?;
        Ok(inner
            .map(|s| {
                let mut a = Vec::with_capacity(s.k * self.n);
                for r in s.rows() {
                    let mut v = vec![0 as Elem; self.n];
                    for (t, &c) in r.iter().enumerate() {
                        if c != 0 {
                            for (x, &y) in v.iter_mut().zip(self.row(t)) {
                                *x = f.add(*x, f.mul(c, y));
                            }
                        }
                    }
                    a.extend(v);
                }
                Self::from_flat(f, self.n, a)
            })
            .collect())
    }

    pub fn random(f: &Field, n: usize, k: usize, rng: &mut impl Rng) -> Subspace {
        loop {
            let a: Vec<Elem> = (0..k * n).map(|_| rng.gen_range(0..f.q()) as Elem).collect();
            let s = Self::from_flat(f, n, a);
            if s.k == k {
                return s;
            }
        }
    }
}

/// Advance a base-`q` counter, least significant digit last. Returns false on wrap.
fn odometer(digits: &mut [Elem], q: usize) -> bool {
    for d in digits.iter_mut().rev() {
        if (*d as usize) + 1 < q {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

/// Next k-combination of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Stream over every `k`-dimensional subspace of `GF(q)^n`, ordered by
/// pivot pattern (lexicographic), then by free entries (odometer, row-major).
pub struct SubspaceIter<'a> {
    f: &'a Field,
    n: usize,
    k: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<Elem>,
    done: bool,
}

impl<'a> SubspaceIter<'a> {
    fn set_pattern(&mut self) {
        self.free.clear();
        for (i, &p) in self.pivots.iter().enumerate() {
            for j in p + 1..self.n {
                if !self.pivots.contains(&j) {
                    self.free.push((i, j));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }
}

impl Iterator for SubspaceIter<'_> {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let n = self.n;
        let mut rows = vec![0 as Elem; self.k * n];
        for (i, &p) in self.pivots.iter().enumerate() {
            rows[i * n + p] = 1;
        }
        for (&(i, j), &d) in self.free.iter().zip(&self.digits) {
            rows[i * n + j] = d;
        }
        let out = Subspace { n, k: self.k, rows };
        if !odometer(&mut self.digits, self.f.q() as usize) {
            if next_combination(&mut self.pivots, n) {
                self.set_pattern();
            } else {
                self.done = true;
            }
        }
        Some(out)
    }
}

pub fn enumerate_subspaces(f: &Field, n: usize, k: usize, cap: u64) -> Result<SubspaceIter<'_>> {
    if k > n {
        return Err(Error::param(format!("subspace rank {k} exceeds ambient dimension {n}")));
    }
    let count = gauss(n as i64, k as i64, f.q());
    if count > cap.into() {
        return Err(Error::CapExceeded { what: "subspace enumeration", cap, reached: count.to_string() });
    }
    let mut it = SubspaceIter { f, n, k, pivots: (0..k).collect(), free: Vec::new(), digits: Vec::new(), done: false };
    it.set_pattern();
    Ok(it)
}

/// Normalized, pairwise non-proportional nonzero vectors: one representative
/// per projective point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomSet {
    q: u64,
    n: usize,
    vectors: Vec<Vector>,
}

impl AtomSet {
    /// Normalize and deduplicate arbitrary nonzero vectors (first occurrence wins).
    pub fn explicit(f: &Field, n: usize, vectors: &[Vector]) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for v in vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
            if let Some(&x) = v.iter().find(|&&x| x as u64 >= f.q()) {
                return Err(Error::param(format!("entry {x} is not an element of GF({})", f.q())));
            }
            if weight(v) == 0 {
                return Err(Error::param("atom vectors must be nonzero"));
            }
            let v = normalize(f, v);
            if seen.insert(v.clone()) {
                out.push(v);
            }
        }
        Ok(AtomSet { q: f.q(), n, vectors: out })
    }

    /// Projective points of Hamming weight `1..=min(d,n)`, ordered by weight,
    /// then support (lexicographic), then entries.
    pub fn hwdl(f: &Field, n: usize, d: usize) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::param("hwdl needs n >= 1 and d >= 1"));
        }
        let q = f.q() as usize;
        let mut vectors = Vec::new();
        for w in 1..=d.min(n) {
            let mut supp: Vec<usize> = (0..w).collect();
            loop {
                let mut vals = vec![0 as Elem; w - 1];
                loop {
                    let mut v = vec![0 as Elem; n];
                    v[supp[0]] = 1;
                    for (t, &c) in vals.iter().enumerate() {
                        v[supp[t + 1]] = c + 1;
                    }
                    vectors.push(v);
                    if !odometer(&mut vals, q - 1) {
                        break;
                    }
                }
                if !next_combination(&mut supp, n) {
                    break;
                }
            }
        }
        Ok(AtomSet { q: f.q(), n, vectors })
    }

    /// Binary odd-weight vectors of length `n`.
    pub fn odd_weight(f: &Field, n: usize) -> Result<Self> {
        if f.q() != 2 {
            return Err(Error::param("the odd-weight geometry is binary"));
        }
        if n == 0 || n > 30 {
            return Err(Error::param("odd-weight geometry needs 1 <= n <= 30"));
        }
        let vectors = (1u32..1 << n)
            .filter(|m| m.count_ones() % 2 == 1)
            .map(|m| (0..n).map(|i| (m >> (n - 1 - i)) & 1).collect())
            .collect();
        Ok(AtomSet { q: 2, n, vectors })
    }

    /// All projective points lying in at least one of the given subspaces.
    pub fn subspace_union(f: &Field, n: usize, spaces: &[Subspace]) -> Result<Self> {
        let mut all = Vec::new();
        for s in spaces {
            s.check(n)?;
            all.extend(s.points(f));
        }
        Self::explicit(f, n, &all)
    }

    /// Parse the text format: a `q n` header line, then one vector per line
    /// as `n` whitespace-separated element indices. `#` starts a comment line.
    pub fn parse(text: &str) -> Result<(Field, Self)> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("missing `q n` header".into()))?;
        let nums = parse_ints(header)?;
        let [q, n] = nums[..] else {
            return Err(Error::Parse(format!("header must be `q n`, got `{header}`")));
        };
        let f = Field::new(q)?;
        let n = n as usize;
        let mut vecs = Vec::new();
        for l in lines {
            let v: Vector = parse_ints(l)?.into_iter().map(|x| x as Elem).collect();
            if v.len() != n {
                return Err(Error::Parse(format!("expected {n} entries, got `{l}`")));
            }
            if v.iter().any(|&x| x as u64 >= q) {
                return Err(Error::Parse(format!("entry out of range for GF({q}): `{l}`")));
            }
            vecs.push(v);
        }
        let atoms = Self::explicit(&f, n, &vecs)?;
        Ok((f, atoms))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn span(&self, f: &Field) -> Subspace {
        let mut s = Subspace::zero(self.n);
        for v in &self.vectors {
            if s.k == self.n {
                break;
            }
            s = s.join_vector(f, v);
        }
        s
    }

    /// Atoms lying in `s`.
    pub fn restrict_to(&self, f: &Field, s: &Subspace) -> AtomSet {
        AtomSet {
            q: self.q,
            n: self.n,
            vectors: self.vectors.iter().filter(|v| s.contains_unchecked(f, v)).cloned().collect(),
        }
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut seen: HashSet<&Vector> = self.vectors.iter().collect();
        let mut vectors = self.vectors.clone();
        for v in &other.vectors {
            if seen.insert(v) {
                vectors.push(v.clone());
            }
        }
        AtomSet { q: self.q, n: self.n, vectors }
    }

    pub fn from_normalized(q: u64, n: usize, vectors: Vec<Vector>) -> AtomSet {
        AtomSet { q, n, vectors }
    }
}

fn parse_ints(l: &str) -> Result<Vec<u64>> {
    l.split_whitespace().map(|t| t.parse::<u64>().map_err(|e| Error::Parse(format!("`{t}`: {e}")))).collect()
}

/// `sum_{j=1}^{min(d,n)} C(n,j) (q-1)^{j-1}`.
pub fn hwdl_atom_count(q: u64, n: usize, d: usize) -> num_bigint::BigInt {
    (1..=d.min(n) as i64).map(|j| binom(n as i64, j) * crate::exactmath::pow(q as i64 - 1, (j - 1) as u32)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(q: u64) -> Field {
        Field::new(q).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let f2 = f(2);
        let s = Subspace::span(&f2, 2, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(s.basis(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(s.pivots(), vec![0, 1]);
        let z = Subspace::span(&f2, 2, &[vec![0, 0]]).unwrap();
        assert_eq!(z.rank(), 0);
        let d = Subspace::span(&f2, 3, &[vec![1, 1, 0], vec![1, 1, 0]]).unwrap();
        assert_eq!(d.basis(), vec![vec![1, 1, 0]]);
        assert!(matches!(Subspace::span(&f2, 3, &[vec![1, 1]]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_subspaces(&f(2), 2, 1, DEFAULT_ENUM_CAP).unwrap().count(), 3);
        assert_eq!(enumerate_subspaces(&f(2), 4, 2, DEFAULT_ENUM_CAP).unwrap().count(), 35);
        let zero: Vec<_> = enumerate_subspaces(&f(3), 4, 0, DEFAULT_ENUM_CAP).unwrap().collect();
        assert_eq!(zero, vec![Subspace::zero(4)]);
        for q in [2u64, 3] {
            let fq = f(q);
            for n in 0..=5 {
                for k in 0..=n {
                    let all: Vec<_> = enumerate_subspaces(&fq, n, k, DEFAULT_ENUM_CAP).unwrap().collect();
                    assert_eq!(all.len().to_string(), gauss(n as i64, k as i64, q).to_string());
                    let uniq: HashSet<_> = all.iter().collect();
                    assert_eq!(uniq.len(), all.len());
                    for s in &all {
                        let again = Subspace::span(&fq, n, &s.basis()).unwrap();
                        assert_eq!(&again, s);
                    }
                }
            }
        }
        assert!(matches!(enumerate_subspaces(&f(2), 6, 3, 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn algebra() {
        let f2 = f(2);
        let u = Subspace::span(&f2, 3, &[vec![1, 1, 0]]).unwrap();
        assert_eq!(u.orthogonal(&f2).orthogonal(&f2), u);
        assert_eq!(u.sum(&f2, &Subspace::zero(3)).unwrap(), u);
        let a = Subspace::coordinate(3, &[0, 1]);
        let b = Subspace::coordinate(3, &[1, 2]);
        assert_eq!(a.intersect(&f2, &b).unwrap(), Subspace::coordinate(3, &[1]));
        assert!(u.leq(&f2, &Subspace::full(3)).unwrap());
        assert!(!a.leq(&f2, &b).unwrap());
        assert!(u.contains(&f2, &[1, 1, 0]).unwrap());
        assert!(!u.contains(&f2, &[1, 0, 0]).unwrap());
    }

    #[test]
    fn join_vector_matches_span() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [2u64, 3, 4, 5] {
            let fq = f(q);
            for _ in 0..200 {
                let k = rng.gen_range(0..5);
                let s = Subspace::random(&fq, 5, k, &mut rng);
                let v: Vector = (0..5).map(|_| rng.gen_range(0..q) as Elem).collect();
                let mut rows = s.basis();
                rows.push(v.clone());
                assert_eq!(s.join_vector(&fq, &v), Subspace::span(&fq, 5, &rows).unwrap());
            }
        }
    }

    #[test]
    fn orthogonality_rank_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (q, n) in [(2u64, 4usize), (3, 3)] {
            let fq = f(q);
            for _ in 0..200 {
                let u = Subspace::random(&fq, n, rng.gen_range(0..=n), &mut rng);
                let v = Subspace::random(&fq, n, rng.gen_range(0..=n), &mut rng);
                let lhs = u.intersect(&fq, &v).unwrap().rank() as i64;
                let perp = u.orthogonal(&fq).intersect(&fq, &v.orthogonal(&fq)).unwrap();
                assert_eq!(lhs, u.rank() as i64 - n as i64 + v.rank() as i64 + perp.rank() as i64);
                assert_eq!(u.orthogonal(&fq).rank(), n - u.rank());
            }
        }
    }

    #[test]
    fn canonicalize_is_basis_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let q = [2u64, 3, 4, 5, 7][rng.gen_range(0..5)];
            let fq = f(q);
            let n = rng.gen_range(1..6);
            let m = rng.gen_range(0..5);
            let rows: Vec<Vector> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(0..q) as Elem).collect()).collect();
            let s = Subspace::span(&fq, n, &rows).unwrap();
            // random invertible row operations
            let mut ops = rows.clone();
            for _ in 0..10 {
                if ops.len() < 2 {
                    break;
                }
                let i = rng.gen_range(0..ops.len());
                let j = rng.gen_range(0..ops.len());
                let c = rng.gen_range(1..q) as Elem;
                if i != j {
                    let rj = ops[j].clone();
                    for (x, y) in ops[i].iter_mut().zip(rj) {
                        *x = fq.add(*x, fq.mul(c, y));
                    }
                } else {
                    for x in ops[i].iter_mut() {
                        *x = fq.mul(*x, c);
                    }
                }
                let j = rng.gen_range(0..ops.len());
                ops.swap(i, j);
            }
            let t = Subspace::span(&fq, n, &ops).unwrap();
            assert_eq!(s, t);
            assert_eq!(Subspace::span(&fq, n, &s.basis()).unwrap(), s);
        }
    }

    #[test]
    fn weights_and_supports() {
        assert_eq!(weight(&[1, 0, 1, 1]), 3);
        assert_eq!(support(&[1, 0, 1, 1]), vec![0, 2, 3]);
        assert!(Subspace::zero(3).support().is_empty());
        let f2 = f(2);
        let u = Subspace::span(&f2, 3, &[vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let mut from_points: Vec<usize> = u.points(&f2).iter().flat_map(|v| support(v)).collect();
        from_points.sort_unstable();
        from_points.dedup();
        assert_eq!(u.support(), from_points);
        assert_eq!(u.support(), vec![0, 1, 2]);
    }

    #[test]
    fn points_of_subspace() {
        for q in [2u64, 3, 4] {
            let fq = f(q);
            let s = Subspace::full(3);
            let pts = s.points(&fq);
            assert_eq!(pts.len() as u64, q * q + q + 1);
            let uniq: HashSet<_> = pts.iter().collect();
            assert_eq!(uniq.len(), pts.len());
            assert!(pts.iter().all(|v| normalize(&fq, v) == *v));
        }
    }

    #[test]
    fn atom_sets() {
        let f2 = f(2);
        assert_eq!(AtomSet::hwdl(&f2, 5, 3).unwrap().len(), 25);
        let o3 = AtomSet::odd_weight(&f2, 3).unwrap();
        let mut got = o3.vectors().to_vec();
        got.sort();
        let mut want = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]];
        want.sort();
        assert_eq!(got, want);
        assert!(AtomSet::odd_weight(&f(3), 3).is_err());
        for q in [2u64, 3, 4] {
            let fq = f(q);
            for n in 1..=8usize {
                for d in 1..=n {
                    let a = AtomSet::hwdl(&fq, n, d).unwrap();
                    assert_eq!(a.len().to_string(), hwdl_atom_count(q, n, d).to_string());
                }
                let all = AtomSet::hwdl(&fq, n, n + 2).unwrap();
                assert_eq!(all.len() as u64, (q.pow(n as u32) - 1) / (q - 1));
            }
        }
        let f3 = f(3);
        let a = AtomSet::explicit(&f3, 2, &[vec![2, 2], vec![1, 1], vec![0, 2]]).unwrap();
        assert_eq!(a.vectors(), &[vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn subspace_union_points() {
        let f2 = f(2);
        let a = Subspace::coordinate(4, &[0, 1]);
        let b = Subspace::coordinate(4, &[1, 2]);
        let u = AtomSet::subspace_union(&f2, 4, &[a, b]).unwrap();
        assert_eq!(u.len(), 3 + 3 - 1);
    }

    #[test]
    fn parse_atom_file() {
        let text = "# binary odd weight\n2 3\n1 0 0\n0 1 0\n\n0 0 1\n1 1 1\n";
        let (fq, a) = AtomSet::parse(text).unwrap();
        assert_eq!(fq.q(), 2);
        assert_eq!(a.len(), 4);
        assert!(AtomSet::parse("6 2\n1 0\n").is_err());
        assert!(AtomSet::parse("2 2\n1 0 1\n").is_err());
        assert!(AtomSet::parse("2 2\n1 2\n").is_err());
        assert!(AtomSet::parse("").is_err());
    }

    #[test]
    fn subspaces_of_a_subspace() {
        let f3 = f(3);
        let u = Subspace::span(&f3, 4, &[vec![1, 2, 0, 1], vec![0, 1, 1, 1], vec![0, 0, 0, 0]]).unwrap();
        let lines = u.subspaces_of_rank(&f3, 1, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(lines.len(), 4);
        assert!(lines.iter().all(|l| l.leq(&f3, &u).unwrap()));
    }
}
