use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::GroupRingElement;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

/// A summable series in normal form `numerator / ∏ (1 − e^{m_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGenFun {
    numerator: GroupRingElement,
    /// Sorted; repeated vectors mean repeated factors.
    denominator: Vec<LatticeVector>,
}

impl RationalGenFun {
    pub fn new(numerator: GroupRingElement, mut denominator: Vec<LatticeVector>) -> Result<Self> {
        for m in &denominator {
            if m.rank() != numerator.rank() {
                return Err(Error::RankMismatch { expected: numerator.rank(), got: m.rank() });
            }
            if m.is_zero() {
                return Err(Error::ZeroDenominatorVector);
            }
        }
        denominator.sort();
        Ok(RationalGenFun { numerator, denominator })
    }

    pub fn zero(rank: usize) -> Self {
        RationalGenFun { numerator: GroupRingElement::zero(rank), denominator: Vec::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::from_element(GroupRingElement::one(rank))
    }

    pub fn from_element(numerator: GroupRingElement) -> Self {
        RationalGenFun { numerator, denominator: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.numerator.rank()
    }

    pub fn numerator(&self) -> &GroupRingElement {
        &self.numerator
    }

    pub fn denominator(&self) -> &[LatticeVector] {
        &self.denominator
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        RationalGenFun { numerator: self.numerator.scale(k), denominator: self.denominator.clone() }
    }

    /// Sum over the least common multiset of denominator factors.
    pub fn add(&self, other: &RationalGenFun) -> RationalGenFun {
        let mine = multiplicities(&self.denominator);
        let theirs = multiplicities(&other.denominator);
        let mut common = mine.clone();
        for (m, k) in &theirs {
            let e = common.entry(*m).or_insert(0);
            *e = (*e).max(*k);
        }
        let lift = |own: &BTreeMap<&LatticeVector, usize>, num: &GroupRingElement| {
            let mut out = num.clone();
            for (m, k) in &common {
                let have = own.get(m).copied().unwrap_or(0);
                for _ in have..*k {
                    out = &out * &GroupRingElement::one_minus(m);
                }
            }
            out
        };
        let numerator = &lift(&mine, &self.numerator) + &lift(&theirs, &other.numerator);
        let denominator =
            common.iter().flat_map(|(m, k)| std::iter::repeat_n((*m).clone(), *k)).collect();
        RationalGenFun { numerator, denominator }
    }

    pub fn mul(&self, other: &RationalGenFun) -> RationalGenFun {
        let mut denominator = self.denominator.clone();
        denominator.extend(other.denominator.iter().cloned());
        denominator.sort();
        RationalGenFun { numerator: &self.numerator * &other.numerator, denominator }
    }

    /// `∏ (1 − e^{m})` over the denominator.
    pub fn denominator_product(&self) -> GroupRingElement {
        denominator_product(self.rank(), &self.denominator)
    }
}

pub(crate) fn denominator_product(rank: usize, factors: &[LatticeVector]) -> GroupRingElement {
    factors
        .iter()
        .fold(GroupRingElement::one(rank), |acc, m| &acc * &GroupRingElement::one_minus(m))
}

fn multiplicities(v: &[LatticeVector]) -> BTreeMap<&LatticeVector, usize> {
    let mut out = BTreeMap::new();
    for m in v {
        *out.entry(m).or_insert(0) += 1;
    }
    out
}

/// Equality of sums, decided by cross-multiplication in `Z[M]`.
pub fn genfun_equal(a: &RationalGenFun, b: &RationalGenFun) -> bool {
    if a.rank() != b.rank() {
        return false;
    }
    // Cancel the common part of the denominators first; it does not change
    // the answer and keeps the products small.
    let mut mb = multiplicities(&b.denominator);
    let mut only_a = Vec::new();
    for m in &a.denominator {
        match mb.get_mut(m) {
            Some(k) if *k > 0 => *k -= 1,
            _ => only_a.push(m.clone()),
        }
    }
    let only_b: Vec<LatticeVector> =
        mb.into_iter().flat_map(|(m, k)| std::iter::repeat_n(m.clone(), k)).collect();
    let lhs = &a.numerator * &denominator_product(a.rank(), &only_b);
    let rhs = &b.numerator * &denominator_product(b.rank(), &only_a);
    lhs == rhs
}

impl fmt::Display for RationalGenFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({}) / (", self.numerator)?;
        for (i, m) in self.denominator.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "(1 - e^{m})")?;
        }
        write!(f, ")")
    }
}

impl RationalGenFun {
    /// `coeff · e^m / ∏ (1 − e^{d})`.
    pub fn monomial_over(m: LatticeVector, coeff: BigInt, denominator: Vec<LatticeVector>) -> Result<Self> {
        Self::new(GroupRingElement::monomial(m, coeff), denominator)
    }

    pub fn geometric(m: &LatticeVector) -> Result<Self> {
        Self::new(GroupRingElement::one(m.rank()), vec![m.clone()])
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_empty()
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }
}
