//! Local Hirzebruch classes at torus-fixed points, χ_y-genera of fans and
//! Laurent expansions of cone sums.
//!
//! Classes are written in `δ = −1 − y`; in text `δ` is shown as `(-1-y)`.

mod laurent;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cone::{dual_cone, dual_face_by_indices, face_lattice, semigroup_generators, Cone, Fan};
use crate::error::Result;
use crate::genfun::sums::sum_over_cells;
use crate::genfun::{interior_sum, CertifiedConeSum, RationalGenFun, SPolynomial};
use crate::lattice::LatticeVector;

pub use laurent::{laurent_expand, LaurentExpansion, PowerSeries};

pub const ORBIT_MARKER: &str = "[Ω_σ]";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalTerm {
    /// Ray indices of the face `τ` of `σ`.
    pub face: Vec<usize>,
    /// `codim τ`, the power of `(1 + y)`.
    pub delta_power: usize,
    /// Sum over the relative interior of `σ∨ ∩ τ⊥`.
    pub contribution: CertifiedConeSum,
}

/// `Σ_{τ ≼ σ} (1+y)^{codim τ} Σ_{m ∈ Int(σ∨ ∩ τ⊥)} e^m [Ω_σ]`, one term per face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HirzebruchLocalClass {
    pub sigma: Cone,
    pub dual: Cone,
    pub terms: Vec<LocalTerm>,
    pub orbit_marker: &'static str,
}

pub fn local_class(sigma: &Cone) -> Result<HirzebruchLocalClass> {
    let dual = dual_cone(sigma)?;
    let lattice = face_lattice(sigma);
    let d = sigma.rank();
    let mut terms = Vec::with_capacity(lattice.len());
    for face in &lattice.faces {
        let df = dual_face_by_indices(sigma, &face.rays)?;
        terms.push(LocalTerm {
            face: face.rays.clone(),
            delta_power: d - face.dim,
            contribution: interior_sum(&df.cone),
        });
    }
    Ok(HirzebruchLocalClass { sigma: sigma.clone(), dual, terms, orbit_marker: ORBIT_MARKER })
}

/// The `τ = {0}` term: `δ^d` and the interior sum of `σ∨`.
pub fn open_orbit_class(sigma: &Cone) -> Result<(usize, CertifiedConeSum)> {
    let dual = dual_cone(sigma)?;
    Ok((sigma.rank(), interior_sum(&dual)))
}

impl HirzebruchLocalClass {
    /// `Σ (1+y)^{codim τ} · value_τ` at an integer `y`.
    pub fn specialize_y(&self, y: &BigInt) -> RationalGenFun {
        let base = y + BigInt::one();
        let rays = self.dual.rays();
        let mut parts = Vec::new();
        for t in &self.terms {
            let w = num_traits::pow(base.clone(), t.delta_power);
            if w.is_zero() {
                continue;
            }
            let v = &t.contribution.value;
            let cell: Vec<usize> = v
                .denominator()
                .iter()
                .map(|m| rays.iter().position(|r| r == m).expect("face rays are rays of the dual"))
                .collect();
            parts.push((cell, v.numerator().scale(&w)));
        }
        sum_over_cells(self.sigma.rank(), rays, &mut parts).expect("rays are nonzero")
    }

    /// Whole class over `∏ 1/S_r` (rays of `σ∨`) with numerator polynomial in `δ`.
    pub fn collapsed(&self) -> Result<CollapsedLocalClass> {
        let gens = semigroup_generators(&self.dual);
        let rank = self.sigma.rank();
        let vars = gens.generators.clone();
        let mut by_delta = vec![SPolynomial::zero(rank, vars.clone()); rank + 1];
        for t in &self.terms {
            let c = &t.contribution;
            let mut shift = vec![0u32; vars.len()];
            for (i, r) in self.dual.rays().iter().enumerate() {
                if !c.ray_denominator.contains(r) {
                    shift[i] += 1;
                }
            }
            // (1+y)^c = (−1)^c δ^c
            let negative = (c.sign < 0) ^ (t.delta_power % 2 == 1);
            let s = if negative { -BigInt::one() } else { BigInt::one() };
            let p = c.certificate.with_variables(&vars)?.shift(&shift).scale(&s);
            by_delta[t.delta_power].add_assign(&p);
        }
        Ok(CollapsedLocalClass { denominator: self.dual.rays().to_vec(), by_delta })
    }
}

pub fn todd_specialize(h: &HirzebruchLocalClass) -> RationalGenFun {
    h.specialize_y(&BigInt::zero())
}

pub fn specialize_y(h: &HirzebruchLocalClass, y: &BigInt) -> RationalGenFun {
    h.specialize_y(y)
}

/// `∏ 1/S_r · Σ_c δ^c N_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapsedLocalClass {
    pub denominator: Vec<LatticeVector>,
    /// `N_c` indexed by the power of `δ`.
    pub by_delta: Vec<SPolynomial>,
}

impl CollapsedLocalClass {
    pub fn is_nonnegative(&self) -> bool {
        self.by_delta.iter().all(SPolynomial::is_nonnegative)
    }

    /// Value at an integer `y`, as a rational generating function.
    pub fn value_at(&self, y: &BigInt) -> RationalGenFun {
        let delta = -y - BigInt::one();
        let rank = self.by_delta[0].rank();
        let mut num = SPolynomial::zero(rank, self.by_delta[0].variables().to_vec());
        for (c, p) in self.by_delta.iter().enumerate() {
            num.add_assign(&p.scale(&num_traits::pow(delta.clone(), c)));
        }
        // 1/S_r = −1/(1 − e^r)
        let s = if self.denominator.len() % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        RationalGenFun::new(num.substitute().scale(&s), self.denominator.clone())
            .expect("rays are nonzero")
    }
}

impl fmt::Display for CollapsedLocalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.denominator.is_empty() {
            let rays: Vec<String> = self.denominator.iter().map(|r| format!("S[{r}]")).collect();
            write!(f, "1/({}) * ", rays.join("*"))?;
        }
        write!(f, "(")?;
        let mut first = true;
        for (c, p) in self.by_delta.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match c {
                0 => write!(f, "({p})")?,
                1 => write!(f, "(-1-y) * ({p})")?,
                _ => write!(f, "(-1-y)^{c} * ({p})")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

/// Polynomial in `y` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiYPolynomial {
    pub coefficients: Vec<BigInt>,
}

impl ChiYPolynomial {
    pub fn from_coefficients(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        ChiYPolynomial { coefficients }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn evaluate(&self, y: &BigInt) -> BigInt {
        self.coefficients.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c)
    }
}

impl fmt::Display for ChiYPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let coeff = if abs.is_one() && k > 0 { String::new() } else { abs.to_string() };
            let sep = if coeff.is_empty() || k == 0 { "" } else { "*" };
            match k {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}{sep}y")?,
                _ => write!(f, "{coeff}{sep}y^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `Σ_{σ ∈ Σ} (−1 − y)^{codim σ}`.
pub fn chi_y(fan: &Fan) -> Result<ChiYPolynomial> {
    fan.check_face_closed()?;
    let n = fan.rank();
    let mut coefficients = vec![BigInt::zero(); n + 1];
    for cone in fan.cones() {
        let c = n - fan.dim_of(cone);
        // (−1 − y)^c = (−1)^c Σ_k C(c,k) y^k
        let mut binom = BigInt::one();
        for k in 0..=c {
            let term = if c.is_multiple_of(2) { binom.clone() } else { -binom.clone() };
            coefficients[k] += term;
            binom = binom * BigInt::from(c - k) / BigInt::from(k + 1);
        }
    }
    Ok(ChiYPolynomial::from_coefficients(coefficients))
}
