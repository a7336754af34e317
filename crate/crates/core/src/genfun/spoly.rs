use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::GroupRingElement;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

/// Integer polynomial in the variables `S_w = e^w − 1`, one per generator `w`.
///
/// Exponent tuples are aligned with `variables`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPolynomial {
    rank: usize,
    variables: Vec<LatticeVector>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl SPolynomial {
    pub fn zero(rank: usize, variables: Vec<LatticeVector>) -> Self {
        SPolynomial { rank, variables, terms: BTreeMap::new() }
    }

    pub fn constant(rank: usize, variables: Vec<LatticeVector>, c: BigInt) -> Self {
        let mut p = Self::zero(rank, variables);
        let n = p.variables.len();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(rank: usize, variables: Vec<LatticeVector>) -> Self {
        Self::constant(rank, variables, BigInt::one())
    }

    pub fn variable(rank: usize, variables: Vec<LatticeVector>, i: usize) -> Self {
        let mut p = Self::zero(rank, variables);
        let mut e = vec![0; p.variables.len()];
        e[i] = 1;
        p.add_term(e, BigInt::one());
        p
    }

    /// `∏ (1 + S_i)^{e_i}`, the expansion of `e^{Σ e_i w_i}`.
    pub fn exp_of_combination(rank: usize, variables: Vec<LatticeVector>, exps: &[u32]) -> Self {
        let mut p = SPolynomial::zero(rank, variables);
        p.add_exp_of_combination(exps, &[]);
        p
    }

    /// Adds `∏ (1 + S_i)^{e_i} · ∏ S_i^{s_i}` in place; `shift` may be empty.
    pub fn add_exp_of_combination(&mut self, exps: &[u32], shift: &[u32]) {
        let n = self.variables.len();
        let mut base = vec![0u32; n];
        for (b, s) in base.iter_mut().zip(shift) {
            *b = *s;
        }
        let mut terms: Vec<(Vec<u32>, BigInt)> = vec![(base, BigInt::one())];
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let binom = binomials(e);
            let mut next = Vec::with_capacity(terms.len() * binom.len());
            for (mono, c) in &terms {
                for (j, b) in binom.iter().enumerate() {
                    let mut m = mono.clone();
                    m[i] += j as u32;
                    next.push((m, c * b));
                }
            }
            terms = next;
        }
        for (e, c) in terms {
            self.add_term(e, c);
        }
    }

    pub fn from_terms(
        rank: usize,
        variables: Vec<LatticeVector>,
        terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>,
    ) -> Result<Self> {
        let mut p = Self::zero(rank, variables);
        for (e, c) in terms {
            if e.len() != p.variables.len() {
                return Err(Error::InvalidInput(format!(
                    "exponent tuple of length {} for {} variables",
                    e.len(),
                    p.variables.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn variables(&self) -> &[LatticeVector] {
        &self.variables
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        debug_assert_eq!(exps.len(), self.variables.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &SPolynomial) {
        assert_eq!(self.variables, other.variables, "variable lists differ");
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &SPolynomial) -> SPolynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn mul(&self, other: &SPolynomial) -> SPolynomial {
        assert_eq!(self.variables, other.variables, "variable lists differ");
        let mut out = SPolynomial::zero(self.rank, self.variables.clone());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    /// Multiplies by the monomial `∏ S_i^{e_i}`.
    pub fn shift(&self, exps: &[u32]) -> SPolynomial {
        SPolynomial {
            rank: self.rank,
            variables: self.variables.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> SPolynomial {
        let mut out = SPolynomial::zero(self.rank, self.variables.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn with_variables(&self, variables: &[LatticeVector]) -> Result<SPolynomial> {
        let map: Vec<usize> = self
            .variables
            .iter()
            .map(|v| {
                variables.iter().position(|w| w == v).ok_or_else(|| {
                    Error::InvalidInput(format!("variable S[{v}] missing from target list"))
                })
            })
            .collect::<Result<_>>()?;
        let mut out = SPolynomial::zero(self.rank, variables.to_vec());
        for (e, c) in &self.terms {
            let mut ne = vec![0; variables.len()];
            for (i, &x) in e.iter().enumerate() {
                ne[map[i]] += x;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// First negative term in display order.
    pub fn first_negative(&self) -> Option<(Vec<u32>, BigInt)> {
        self.sorted_terms()
            .into_iter()
            .find(|(_, c)| c.is_negative())
            .map(|(e, c)| (e.clone(), c.clone()))
    }

    /// Terms ordered by total degree, then by exponent tuple descending.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        v
    }

    /// Substitutes `S_w = e^w − 1` and expands in `Z[M]`.
    pub fn substitute(&self) -> GroupRingElement {
        // Horner in each variable in turn; BTreeMap order keeps groups contiguous.
        let x: Vec<GroupRingElement> = self.variables.iter().map(GroupRingElement::s_variable).collect();
        let terms: Vec<TermRef> = self.terms.iter().collect();
        horner(self.rank, &x, &terms, 0)
    }

    pub fn monomial_string(&self, exps: &[u32]) -> String {
        let mut parts = Vec::new();
        for (i, &k) in exps.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(format!("S[{}]", self.variables[i])),
                _ => parts.push(format!("S[{}]^{k}", self.variables[i])),
            }
        }
        parts.join("*")
    }
}

type TermRef<'a> = (&'a Vec<u32>, &'a BigInt);

fn horner(rank: usize, x: &[GroupRingElement], terms: &[TermRef], i: usize) -> GroupRingElement {
    if i == x.len() {
        let mut out = GroupRingElement::zero(rank);
        for (_, c) in terms {
            out.add_term(LatticeVector::zero(rank), (*c).clone());
        }
        return out;
    }
    let mut groups: Vec<(u32, &[TermRef])> = Vec::new();
    let mut start = 0;
    while start < terms.len() {
        let k = terms[start].0[i];
        let mut end = start + 1;
        while end < terms.len() && terms[end].0[i] == k {
            end += 1;
        }
        groups.push((k, &terms[start..end]));
        start = end;
    }
    let mut acc = GroupRingElement::zero(rank);
    let mut level = groups.last().map_or(0, |g| g.0);
    for (k, group) in groups.iter().rev() {
        while level > *k {
            acc = &acc * &x[i];
            level -= 1;
        }
        acc += &horner(rank, x, group, i + 1);
    }
    for _ in 0..level {
        acc = &acc * &x[i];
    }
    acc
}

fn binomials(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = row[k as usize].clone() * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

impl fmt::Display for SPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let (neg, abs) = (c.is_negative(), c.abs());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = self.monomial_string(e);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    #[test]
    fn substitution_examples() {
        let w = lv(&[1, 2]);
        let vars = vec![w.clone()];
        assert_eq!(SPolynomial::one(2, vars.clone()).substitute(), GroupRingElement::one(2));
        let p = SPolynomial::one(2, vars.clone()).add(&SPolynomial::variable(2, vars.clone(), 0));
        assert_eq!(p.substitute(), GroupRingElement::monomial(w, BigInt::one()));
    }

    #[test]
    fn exp_of_combination_matches_substitution() {
        let vars = vec![lv(&[1, 0]), lv(&[0, 1])];
        let p = SPolynomial::exp_of_combination(2, vars, &[2, 1]);
        assert_eq!(p.terms().len(), 6);
        assert_eq!(p.substitute(), GroupRingElement::monomial(lv(&[2, 1]), BigInt::one()));
    }

    #[test]
    fn display_and_negativity() {
        let vars = vec![lv(&[1, 0]), lv(&[1, 2]), lv(&[1, 1])];
        let p = SPolynomial::constant(2, vars.clone(), BigInt::from(2))
            .add(&SPolynomial::variable(2, vars.clone(), 2));
        assert_eq!(p.to_string(), "2 + S[(1,1)]");
        assert!(p.is_nonnegative());
        let q = p.add(&SPolynomial::variable(2, vars, 0).scale(&BigInt::from(-3)));
        assert_eq!(q.to_string(), "2 - 3*S[(1,0)] + S[(1,1)]");
        assert_eq!(q.first_negative().unwrap().1, BigInt::from(-3));
    }

    #[test]
    fn variable_reindexing() {
        let p = SPolynomial::variable(1, vec![lv(&[2])], 0);
        let q = p.with_variables(&[lv(&[1]), lv(&[2])]).unwrap();
        assert_eq!(q.coefficient(&[0, 1]), BigInt::one());
        assert!(p.with_variables(&[lv(&[1])]).is_err());
    }
}
