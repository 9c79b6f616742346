//! Restriction geometries `L(A)`: closure under joins, Möbius function,
//! Whitney numbers, characteristic polynomial, critical exponent, and
//! checkers for Möbius-function identities on atomistic lattices.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::distributions;
use crate::exactmath::{choose2, int, pow, signed, UniPolyQ};
use crate::gfq::Field;
use crate::subspaces::{AtomSet, Subspace, DEFAULT_ENUM_CAP};
use crate::{Error, Result};

/// Default cap on the number of lattice elements.
pub const DEFAULT_LATTICE_CAP: usize = 200_000;

/// Fixed-width bitset over atom indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct AtomBits(Vec<u64>);

impl AtomBits {
    pub fn new(len: usize) -> Self {
        AtomBits(vec![0; len.div_ceil(64)])
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Self::new(len);
        for i in idx {
            b.insert(i);
        }
        b
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_subset(&self, other: &AtomBits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &AtomBits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == 0)
    }

    pub fn and(&self, other: &AtomBits) -> AtomBits {
        AtomBits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn or_assign(&mut self, other: &AtomBits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b))
    }
}

/// The lattice `L(A)` of subspaces spanned by subsets of an atom set.
///
/// Elements are grouped by rank; index 0 is the zero space. The order
/// relation is containment of atom sets, which is exact because every
/// element is the span of the atoms it contains.
pub struct RestrictionGeometry {
    field: Field,
    atoms: AtomSet,
    elements: Vec<Subspace>,
    rank_start: Vec<usize>,
    incidence: Vec<AtomBits>,
    lower_covers: Vec<Vec<u32>>,
    index: HashMap<Subspace, u32>,
    mobius: Vec<i128>,
    complete: bool,
}

impl RestrictionGeometry {
    pub fn build(f: &Field, atoms: &AtomSet) -> Result<Self> {
        Self::build_with(f, atoms, DEFAULT_LATTICE_CAP, None)
    }

    /// Build ranks `0..=max_rank` (all ranks when `None`), failing once more
    /// than `cap` elements have been produced.
    pub fn build_with(f: &Field, atoms: &AtomSet, cap: usize, max_rank: Option<usize>) -> Result<Self> {
        if atoms.q() != f.q() {
            return Err(Error::FieldMismatch { left: atoms.q(), right: f.q() });
        }
        let n = atoms.ambient();
        let na = atoms.len();
        let mut g = RestrictionGeometry {
            field: f.clone(),
            atoms: atoms.clone(),
            elements: vec![Subspace::zero(n)],
            rank_start: vec![0, 1],
            incidence: vec![AtomBits::new(na)],
            lower_covers: vec![Vec::new()],
            index: HashMap::new(),
            mobius: Vec::new(),
            complete: true,
        };
        g.index.insert(Subspace::zero(n), 0);
        let top = max_rank.unwrap_or(usize::MAX);
        let mut rank = 0;
        while rank < top {
            let (lo, hi) = (g.rank_start[rank], g.rank_start[rank + 1]);
            for x in lo..hi {
                let mut covered = g.incidence[x].clone();
                for a in 0..na {
                    if covered.contains(a) {
                        continue;
                    }
                    let y = g.elements[x].join_vector(f, &atoms.vectors()[a]);
                    let yi = match g.index.get(&y) {
                        Some(&yi) => yi as usize,
                        None => {
                            let bits = AtomBits::from_indices(
                                na,
                                (0..na).filter(|&b| y.contains_unchecked(f, &atoms.vectors()[b])),
                            );
                            let yi = g.elements.len();
                            if yi >= cap {
                                return Err(Error::CapExceeded {
                                    what: "lattice elements",
                                    cap: cap as u64,
                                    reached: format!("{} elements through rank {}", yi, rank + 1),
                                });
                            }
                            g.index.insert(y.clone(), yi as u32);
                            g.elements.push(y);
                            g.incidence.push(bits);
                            g.lower_covers.push(Vec::new());
                            yi
                        }
                    };
                    covered.or_assign(&g.incidence[yi]);
                    g.lower_covers[yi].push(x as u32);
                }
            }
            if g.elements.len() == hi {
                break;
            }
            g.rank_start.push(g.elements.len());
            rank += 1;
        }
        g.complete = g.rank() == atoms.span(f).rank();
        g.compute_mobius()?;
        Ok(g)
    }

    fn compute_mobius(&mut self) -> Result<()> {
        let len = self.elements.len();
        let mut mu = vec![0i128; len];
        mu[0] = 1;
        let mut stamp = vec![0u32; len];
        let mut stack = Vec::new();
        for y in 1..len {
            let gen = y as u32;
            let mut sum: i128 = 0;
            for &z in &self.lower_covers[y] {
                stamp[z as usize] = gen;
                stack.push(z);
            }
            while let Some(z) = stack.pop() {
                let z = z as usize;
                sum = sum.checked_add(mu[z]).ok_or_else(|| Error::Inconsistent("Möbius value overflow".into()))?;
                for &w in &self.lower_covers[z] {
                    if stamp[w as usize] != gen {
                        stamp[w as usize] = gen;
                        stack.push(w);
                    }
                }
            }
            mu[y] = -sum;
        }
        self.mobius = mu;
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn atoms(&self) -> &AtomSet {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// False when built with a rank limit below the top.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Highest rank present.
    pub fn rank(&self) -> usize {
        self.rank_start.len() - 2
    }

    pub fn rank_of(&self, x: usize) -> usize {
        self.elements[x].rank()
    }

    pub fn element(&self, x: usize) -> &Subspace {
        &self.elements[x]
    }

    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    pub fn rank_range(&self, r: usize) -> std::ops::Range<usize> {
        if r + 1 >= self.rank_start.len() {
            return 0..0;
        }
        self.rank_start[r]..self.rank_start[r + 1]
    }

    /// Element counts per rank.
    pub fn rank_sizes(&self) -> Vec<usize> {
        self.rank_start.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).map(|&i| i as usize)
    }

    pub fn incidence(&self, x: usize) -> &AtomBits {
        &self.incidence[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[u32] {
        &self.lower_covers[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.incidence[x].is_subset(&self.incidence[y])
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        let s = self.elements[x].sum(&self.field, &self.elements[y]).unwrap();
        self.index_of(&s).expect("lattice is closed under joins")
    }

    /// The largest element of `L(sub)` below `x`, for an atom subset `sub`.
    pub fn restrict(&self, x: usize, sub: &AtomBits) -> usize {
        let mut s = Subspace::zero(self.atoms.ambient());
        for a in self.incidence[x].and(sub).iter() {
            s = s.join_vector(&self.field, &self.atoms.vectors()[a]);
        }
        self.index_of(&s).expect("spans of atom subsets are elements")
    }

    pub fn mobius(&self, x: usize) -> BigInt {
        BigInt::from(self.mobius[x])
    }

    pub fn mobius_values(&self) -> Vec<BigInt> {
        self.mobius.iter().map(|&m| BigInt::from(m)).collect()
    }

    /// `w_i` for every rank present.
    pub fn whitney(&self) -> Vec<BigInt> {
        (0..=self.rank()).map(|r| self.rank_range(r).map(|x| self.mobius[x]).sum::<i128>().into()).collect()
    }

    pub fn charpoly(&self) -> Result<UniPolyQ> {
        if !self.complete {
            return Err(Error::param("characteristic polynomial needs the full lattice"));
        }
        Ok(charpoly_from_whitney(&self.whitney()))
    }

    /// Both critical-exponent formulas, asserted equal.
    pub fn critical_exponent(&self) -> Result<usize> {
        let chi = self.charpoly()?;
        let rk = self.rank();
        let q = self.field.q() as i64;
        let via_chi = (0..=rk)
            .find(|&r| !chi.eval(&int(pow(q, r as u32))).is_zero())
            .ok_or_else(|| Error::Inconsistent("characteristic polynomial vanishes at q^rk".into()))?;
        let span = self.atoms.span(&self.field);
        let mut kmax = 0;
        for k in (0..=span.rank()).rev() {
            let a = distributions::count_avoiding(&self.field, &span, &self.atoms, k, DEFAULT_ENUM_CAP)?;
            if !a.is_zero() {
                kmax = k;
                break;
            }
        }
        let via_alpha = span.rank() - kmax;
        if via_chi != via_alpha {
            return Err(Error::Inconsistent(format!(
                "critical exponent {via_chi} from χ but {via_alpha} from the subspace distribution"
            )));
        }
        Ok(via_chi)
    }

    /// Möbius values of the sublattice `L(sub)` for an atom subset, keyed by
    /// element index of this geometry.
    pub fn sub_mobius(&self, sub: &AtomBits) -> HashMap<usize, BigInt> {
        let members: Vec<usize> = (0..self.len()).filter(|&x| self.restrict(x, sub) == x).collect();
        let mut mu: HashMap<usize, BigInt> = HashMap::new();
        for &x in &members {
            if x == 0 {
                mu.insert(0, BigInt::one());
                continue;
            }
            let s: BigInt = members
                .iter()
                .filter(|&&y| y != x && self.rank_of(y) < self.rank_of(x) && self.leq(y, x))
                .map(|y| mu[y].clone())
                .sum();
            mu.insert(x, -s);
        }
        mu
    }

    /// `mu_L(x, y)` restricted to members of `members` (a sublattice), for all `y >= x`.
    fn interval_mobius(&self, members: &[usize], x: usize) -> HashMap<usize, BigInt> {
        let mut mu: HashMap<usize, BigInt> = HashMap::new();
        let mut up: Vec<usize> = members.iter().copied().filter(|&y| self.leq(x, y)).collect();
        up.sort_by_key(|&y| (self.rank_of(y), y));
        for &y in &up {
            if y == x {
                mu.insert(y, BigInt::one());
                continue;
            }
            let s: BigInt =
                up.iter().filter(|&&z| z != y && self.leq(z, y) && mu.contains_key(&z)).map(|z| mu[z].clone()).sum();
            mu.insert(y, -s);
        }
        mu
    }

    fn members(&self, sub: &AtomBits) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.restrict(x, sub) == x).collect()
    }

    fn all_atoms(&self) -> AtomBits {
        AtomBits::from_indices(self.atoms.len(), 0..self.atoms.len())
    }

    /// Nested-lattice identity for `A ⊆ B`, `x ∈ L(A)`, `S ⊆ L(B)`:
    /// `sum_{z ∈ L(A) ∩ S} mu_A(x,z) = sum_{t ∈ L(B), t^A = x} sum_{y ∈ S, y >= t} mu_B(t,y)`.
    pub fn check_nested(&self, a: &AtomBits, b: &AtomBits, x: usize, s: &[usize]) -> Result<IdentityReport> {
        if !a.is_subset(b) {
            return Err(Error::param("nested identity needs A ⊆ B"));
        }
        let la = self.members(a);
        let lb = self.members(b);
        if !la.contains(&x) {
            return Err(Error::param("x must lie in L(A)"));
        }
        if s.iter().any(|y| !lb.contains(y)) {
            return Err(Error::param("S must be a subset of L(B)"));
        }
        let mu_a = self.interval_mobius(&la, x);
        let lhs: BigInt = s.iter().filter(|z| la.contains(z)).filter_map(|z| mu_a.get(z).cloned()).sum();
        let mut rhs = BigInt::zero();
        for &t in &lb {
            if self.restrict(t, a) != x {
                continue;
            }
            let mu_b = self.interval_mobius(&lb, t);
            for y in s {
                if let Some(m) = mu_b.get(y) {
                    rhs += m;
                }
            }
        }
        Ok(IdentityReport::scalar(lhs, rhs))
    }

    /// Decomposition over atom subsets covering all atoms:
    /// `mu(x) = sum_{x_1 ∨ ... ∨ x_L = x} prod mu_{A_l}(x_l)` for every `x`.
    pub fn check_decomposition(&self, parts: &[AtomBits]) -> Result<IdentityReport> {
        let mut cover = AtomBits::new(self.atoms.len());
        for p in parts {
            cover.or_assign(p);
        }
        if cover != self.all_atoms() {
            return Err(Error::param("decomposition parts must cover all atoms"));
        }
        let mut acc: HashMap<usize, BigInt> = HashMap::from([(0, BigInt::one())]);
        for p in parts {
            let mu_p = self.sub_mobius(p);
            let mut next: HashMap<usize, BigInt> = HashMap::new();
            for (&z, vz) in &acc {
                for (&xl, ml) in &mu_p {
                    *next.entry(self.join(z, xl)).or_default() += vz * ml;
                }
            }
            acc = next;
        }
        let lhs = self.mobius_values();
        let rhs = (0..self.len()).map(|x| acc.get(&x).cloned().unwrap_or_default()).collect();
        Ok(IdentityReport::vector(lhs, rhs))
    }

    /// Two-part decomposition for `A ∪ B = At`:
    /// `mu(x) = sum_{x_A ∈ L(A), x_B ∈ L(B), x_B^A = 0, x_A ∨ x_B = x} mu_A(x_A) mu_B(x_B)`.
    pub fn check_two_part(&self, a: &AtomBits, b: &AtomBits) -> Result<IdentityReport> {
        let mut cover = a.clone();
        cover.or_assign(b);
        if cover != self.all_atoms() {
            return Err(Error::param("A ∪ B must be all atoms"));
        }
        let mu_a = self.sub_mobius(a);
        let mu_b = self.sub_mobius(b);
        let mut acc: HashMap<usize, BigInt> = HashMap::new();
        for (&xb, mb) in &mu_b {
            if self.restrict(xb, a) != 0 {
                continue;
            }
            for (&xa, ma) in &mu_a {
                *acc.entry(self.join(xa, xb)).or_default() += ma * mb;
            }
        }
        let lhs = self.mobius_values();
        let rhs = (0..self.len()).map(|x| acc.get(&x).cloned().unwrap_or_default()).collect();
        Ok(IdentityReport::vector(lhs, rhs))
    }

    /// Modular factorization of Whitney numbers through an element `t`
    /// (assumed modular; not checked):
    /// `w_i = sum_j w_j([0,t]) sum_{x ∈ L(B), rk x = i-j, x ∧ t = 0} mu_B(x)`.
    pub fn check_modular_factor(&self, t: usize, b: &AtomBits) -> Result<IdentityReport> {
        let mut cover = b.clone();
        cover.or_assign(&self.incidence[t]);
        if cover != self.all_atoms() {
            return Err(Error::param("B together with the atoms below t must be all atoms"));
        }
        let rk = self.rank();
        let mut wt = vec![BigInt::zero(); rk + 1];
        for y in 0..self.len() {
            if self.leq(y, t) {
                wt[self.rank_of(y)] += self.mobius(y);
            }
        }
        let mu_b = self.sub_mobius(b);
        let mut inner = vec![BigInt::zero(); rk + 1];
        for (&x, m) in &mu_b {
            if self.incidence[x].is_disjoint(&self.incidence[t]) {
                inner[self.rank_of(x)] += m;
            }
        }
        let lhs = self.whitney();
        let rhs = (0..=rk).map(|i| (0..=i).map(|j| &wt[j] * &inner[i - j]).sum()).collect();
        Ok(IdentityReport::vector(lhs, rhs))
    }
}

/// Both sides of an identity, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub holds: bool,
    #[serde(serialize_with = "ser_bigs")]
    pub lhs: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigs")]
    pub rhs: Vec<BigInt>,
}

pub(crate) fn ser_bigs<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub(crate) fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl IdentityReport {
    fn scalar(lhs: BigInt, rhs: BigInt) -> Self {
        Self::vector(vec![lhs], vec![rhs])
    }

    fn vector(lhs: Vec<BigInt>, rhs: Vec<BigInt>) -> Self {
        IdentityReport { holds: lhs == rhs, lhs, rhs }
    }
}

/// `sum_i w_i λ^{rk-i}` with `rk = w.len() - 1`.
pub fn charpoly_from_whitney(w: &[BigInt]) -> UniPolyQ {
    UniPolyQ::from_ints(w.iter().rev().cloned())
}

/// Möbius value of `U` in `L(A)` from the subspace distribution of `U`:
/// `mu_A(U) = sum_j (-1)^{i-j} q^{C(i-j,2)} alpha_j(U,A)`, `i = rk U`.
pub fn mobius_via_distribution(f: &Field, u: &Subspace, atoms: &AtomSet) -> Result<BigInt> {
    let inside = atoms.restrict_to(f, u);
    if inside.span(f) != *u {
        return Err(Error::NotInLattice);
    }
    let i = u.rank() as i64;
    let q = f.q() as i64;
    let mut mu = BigInt::zero();
    for j in 0..=i {
        let a = distributions::count_avoiding(f, u, &inside, j as usize, DEFAULT_ENUM_CAP)?;
        mu += signed(a * pow(q, choose2(i - j)), i - j);
    }
    Ok(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspaces::Vector;

    fn geom(q: u64, atoms: impl Fn(&Field) -> AtomSet) -> RestrictionGeometry {
        let f = Field::new(q).unwrap();
        let a = atoms(&f);
        RestrictionGeometry::build(&f, &a).unwrap()
    }

    #[test]
    fn small_lattices() {
        let g = geom(2, |f| AtomSet::hwdl(f, 2, 2).unwrap());
        assert_eq!(g.len(), 5);
        assert_eq!(g.mobius_values(), [1, -1, -1, -1, 2].map(BigInt::from).to_vec());
        let o3 = geom(2, |f| AtomSet::odd_weight(f, 3).unwrap());
        assert_eq!(o3.rank_sizes(), vec![1, 4, 6, 1]);
        assert_eq!(o3.charpoly().unwrap(), UniPolyQ::from_ints([-3, 6, -4, 1]));
        let f2 = Field::new(2).unwrap();
        let empty = AtomSet::explicit(&f2, 3, &[]).unwrap();
        let e = RestrictionGeometry::build(&f2, &empty).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.whitney(), vec![BigInt::one()]);
    }

    #[test]
    fn full_lattice_whitney() {
        for q in [2u64, 3, 4] {
            let f = Field::new(q).unwrap();
            for n in 1..=4usize {
                let g = RestrictionGeometry::build(&f, &AtomSet::hwdl(&f, n, n).unwrap()).unwrap();
                let want: Vec<BigInt> = (0..=n as i64)
                    .map(|i| signed(pow(q as i64, choose2(i)) * crate::exactmath::gauss(n as i64, i, q), i))
                    .collect();
                assert_eq!(g.whitney(), want);
                let roots: Vec<BigInt> = (0..n as u32).map(|i| pow(q as i64, i)).collect();
                assert_eq!(g.charpoly().unwrap(), UniPolyQ::from_roots(&roots));
            }
        }
    }

    #[test]
    fn table_row_two_five_three() {
        let g = geom(2, |f| AtomSet::hwdl(f, 5, 3).unwrap());
        assert_eq!(g.charpoly().unwrap(), UniPolyQ::from_roots(&[1, 2, 4, 8, 10]));
        assert_eq!(g.critical_exponent().unwrap(), 4);
    }

    #[test]
    fn critical_exponents() {
        let g = geom(2, |f| AtomSet::hwdl(f, 3, 2).unwrap());
        assert_eq!(g.critical_exponent().unwrap(), 2);
        let g = geom(3, |f| AtomSet::hwdl(f, 3, 3).unwrap());
        assert_eq!(g.critical_exponent().unwrap(), 3);
    }

    #[test]
    fn mobius_from_distribution() {
        let f = Field::new(2).unwrap();
        let a = AtomSet::hwdl(&f, 2, 2).unwrap();
        assert_eq!(mobius_via_distribution(&f, &Subspace::full(2), &a).unwrap(), BigInt::from(2));
        assert_eq!(mobius_via_distribution(&f, &Subspace::zero(2), &a).unwrap(), BigInt::one());
        let line = Subspace::coordinate(2, &[0]);
        assert_eq!(mobius_via_distribution(&f, &line, &a).unwrap(), BigInt::from(-1));
        let a1 = AtomSet::hwdl(&f, 2, 1).unwrap();
        let diag = Subspace::span(&f, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(mobius_via_distribution(&f, &diag, &a1), Err(Error::NotInLattice));
        for q in [2u64, 3] {
            let f = Field::new(q).unwrap();
            let a = AtomSet::hwdl(&f, 4, 2).unwrap();
            let g = RestrictionGeometry::build(&f, &a).unwrap();
            for x in 0..g.len() {
                assert_eq!(mobius_via_distribution(&f, g.element(x), &a).unwrap(), g.mobius(x));
            }
        }
    }

    #[test]
    fn truncated_build_matches_prefix() {
        let f = Field::new(3).unwrap();
        let a = AtomSet::hwdl(&f, 4, 2).unwrap();
        let full = RestrictionGeometry::build(&f, &a).unwrap();
        let part = RestrictionGeometry::build_with(&f, &a, DEFAULT_LATTICE_CAP, Some(2)).unwrap();
        assert!(!part.is_complete());
        assert_eq!(part.whitney(), full.whitney()[..3].to_vec());
        assert!(part.charpoly().is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let f = Field::new(2).unwrap();
        let a = AtomSet::hwdl(&f, 5, 5).unwrap();
        let err = RestrictionGeometry::build_with(&f, &a, 50, None).err().unwrap();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn identity_examples() {
        let f = Field::new(2).unwrap();
        let o3 = AtomSet::odd_weight(&f, 3).unwrap();
        let g = RestrictionGeometry::build(&f, &o3).unwrap();
        let parts: Vec<AtomBits> = (0..o3.len()).map(|i| AtomBits::from_indices(o3.len(), [i])).collect();
        assert!(g.check_decomposition(&parts).unwrap().holds);

        let h = AtomSet::hwdl(&f, 3, 2).unwrap();
        let g = RestrictionGeometry::build(&f, &h).unwrap();
        let plane = Subspace::coordinate(3, &[0, 1]);
        let a: Vec<usize> = (0..h.len()).filter(|&i| plane.contains_unchecked(&f, &h.vectors()[i])).collect();
        let b: Vec<usize> = (0..h.len()).filter(|i| !a.contains(i)).collect();
        let (ab, bb) = (AtomBits::from_indices(h.len(), a), AtomBits::from_indices(h.len(), b));
        assert!(g.check_two_part(&ab, &bb).unwrap().holds);

        let h = AtomSet::hwdl(&f, 4, 3).unwrap();
        let g = RestrictionGeometry::build(&f, &h).unwrap();
        let t = g.index_of(&Subspace::coordinate(4, &[0, 1, 2])).unwrap();
        let below: Vec<Vector> = h.vectors().iter().filter(|v| v[3] != 0).cloned().collect();
        let b = AtomBits::from_indices(h.len(), (0..h.len()).filter(|&i| below.contains(&h.vectors()[i])));
        let rep = g.check_modular_factor(t, &b).unwrap();
        assert!(rep.holds, "{rep:?}");

        let all = AtomBits::from_indices(h.len(), 0..h.len());
        let rep = g.check_nested(&b, &all, 0, &(0..g.len()).collect::<Vec<_>>()).unwrap();
        assert!(rep.holds, "{rep:?}");
    }
}
