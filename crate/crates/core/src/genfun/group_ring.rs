use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::lattice::LatticeVector;

/// Element of `Z[M]`: a finite sum `Σ a_m e^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    rank: usize,
    terms: BTreeMap<LatticeVector, BigInt>,
}

impl GroupRingElement {
    pub fn zero(rank: usize) -> Self {
        GroupRingElement { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(LatticeVector::zero(rank), BigInt::one())
    }

    /// `coeff · e^m`
    pub fn monomial(m: LatticeVector, coeff: BigInt) -> Self {
        let mut g = Self::zero(m.rank());
        g.add_term(m, coeff);
        g
    }

    /// `1 − e^m`
    pub fn one_minus(m: &LatticeVector) -> Self {
        &Self::one(m.rank()) - &Self::monomial(m.clone(), BigInt::one())
    }

    /// `S_m = e^m − 1`
    pub fn s_variable(m: &LatticeVector) -> Self {
        &Self::monomial(m.clone(), BigInt::one()) - &Self::one(m.rank())
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (LatticeVector, BigInt)>) -> Self {
        let mut g = Self::zero(rank);
        for (m, c) in terms {
            g.add_term(m, c);
        }
        g
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<LatticeVector, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &LatticeVector) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: LatticeVector, coeff: BigInt) {
        debug_assert_eq!(m.rank(), self.rank);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.rank);
        }
        GroupRingElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.rank);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Terms ordered by the value of `grading`, then lexicographically.
    pub fn graded_terms(&self, grading: &LatticeVector) -> Vec<(&LatticeVector, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(m, _)| (m.dot(grading), (*m).clone()));
        v
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&GroupRingElement> for GroupRingElement {
    fn add_assign(&mut self, rhs: &GroupRingElement) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.scale(&-BigInt::one())
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut acc: HashMap<LatticeVector, BigInt> = HashMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                *acc.entry(a + b).or_default() += x * y;
            }
        }
        GroupRingElement {
            rank: self.rank,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (sign, abs) = (c.is_negative(), c.abs());
            match (i, sign) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_zero() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "e^{m}")?;
            } else {
                write!(f, "{abs}*e^{m}")?;
            }
        }
        Ok(())
    }
}
