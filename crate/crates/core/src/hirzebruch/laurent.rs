use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::genfun::RationalGenFun;
use crate::lattice::LatticeVector;

/// Multivariate power series over `Q`, known up to total degree `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    nvars: usize,
    max_degree: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn degree(e: &[u32]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

impl PowerSeries {
    pub fn zero(nvars: usize, max_degree: usize) -> Self {
        PowerSeries { nvars, max_degree, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, max_degree: usize, c: BigRational) -> Self {
        let mut s = Self::zero(nvars, max_degree);
        s.add_term(vec![0; nvars], c);
        s
    }

    pub fn one(nvars: usize, max_degree: usize) -> Self {
        Self::constant(nvars, max_degree, BigRational::one())
    }

    /// The linear form `Σ m_i t_i`.
    pub fn linear_form(m: &LatticeVector, max_degree: usize) -> Self {
        let n = m.rank();
        let mut s = Self::zero(n, max_degree);
        for (i, c) in m.coords().iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            s.add_term(e, BigRational::from_integer(c.clone()));
        }
        s
    }

    /// `Σ_j a_j ℓ^j` for the linear form `ℓ = m`.
    pub fn compose_linear(m: &LatticeVector, coefficients: &[BigRational], max_degree: usize) -> Self {
        let l = Self::linear_form(m, max_degree);
        let mut power = Self::one(m.rank(), max_degree);
        let mut out = Self::zero(m.rank(), max_degree);
        for a in coefficients.iter().take(max_degree + 1) {
            out = out.add(&power.scale(a));
            power = power.mul(&l);
        }
        out
    }

    /// `e^{m·t}` truncated.
    pub fn exp_linear(m: &LatticeVector, max_degree: usize) -> Self {
        Self::compose_linear(m, &exp_coefficients(max_degree), max_degree)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() || degree(&e) > self.max_degree {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        let max_degree = max_degree.min(self.max_degree);
        PowerSeries {
            nvars: self.nvars,
            max_degree,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| degree(e) <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let mut out = self.truncate(other.max_degree);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> PowerSeries {
        let mut out = PowerSeries::zero(self.nvars, self.max_degree);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.max_degree.min(other.max_degree);
        let mut out = PowerSeries::zero(self.nvars, n);
        for (a, x) in &self.terms {
            let da = degree(a);
            for (b, y) in &other.terms {
                if da + degree(b) > n {
                    continue;
                }
                out.add_term(a.iter().zip(b).map(|(p, q)| p + q).collect(), x * y);
            }
        }
        out
    }

    /// Exact product with a polynomial; the result is known one degree
    /// further per unit of polynomial degree.
    pub fn mul_linear(&self, m: &LatticeVector) -> PowerSeries {
        let mut out = PowerSeries::zero(self.nvars, self.max_degree + 1);
        for (e, x) in &self.terms {
            for (i, c) in m.coords().iter().enumerate() {
                let mut f = e.clone();
                f[i] += 1;
                out.add_term(f, x * BigRational::from_integer(c.clone()));
            }
        }
        out
    }

    /// Inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Option<PowerSeries> {
        let c0 = self.coefficient(&vec![0; self.nvars]);
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        // 1/(c0(1 + v)) = (1/c0) Σ (−v)^k
        let mut neg_v = self.scale(&-inv0.clone());
        neg_v.terms.remove(&vec![0; self.nvars]);
        let mut out = PowerSeries::one(self.nvars, self.max_degree);
        let mut power = out.clone();
        for _ in 0..self.max_degree {
            power = power.mul(&neg_v);
            if power.terms.is_empty() {
                break;
            }
            out = out.add(&power);
        }
        Some(out.scale(&inv0))
    }

    fn variable_name(&self, i: usize) -> String {
        if self.nvars == 1 {
            "t".to_string()
        } else {
            format!("t{}", i + 1)
        }
    }

    fn monomial_string(&self, e: &[u32]) -> String {
        let mut parts = Vec::new();
        for (i, &k) in e.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(self.variable_name(i)),
                _ => parts.push(format!("{}^{k}", self.variable_name(i))),
            }
        }
        parts.join("*")
    }

    /// Terms by total degree, then exponent tuple descending.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
        v
    }
}

fn exp_coefficients(n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut fact = BigInt::one();
    for j in 0..=n {
        if j > 0 {
            fact *= BigInt::from(j);
        }
        out.push(BigRational::new(BigInt::one(), fact.clone()));
    }
    out
}

/// Displays a signed rational coefficient times a monomial.
fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl IntoIterator<Item = (String, &'a BigRational)>,
) -> fmt::Result {
    let mut first = true;
    for (mono, c) in terms {
        let abs = c.abs();
        match (first, c.is_negative()) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{abs}*{mono}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.sorted_terms().into_iter().map(|(e, c)| (self.monomial_string(e), c)))?;
        write!(f, " + O({})", self.max_degree + 1)
    }
}

/// `(∏ 1/p_i) · series`, with primitive linear forms `p_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentExpansion {
    pub pole_factors: Vec<LatticeVector>,
    /// Known up to total degree `truncation_order + pole_factors.len()`.
    pub series: PowerSeries,
    /// Highest Laurent degree that is exact.
    pub truncation_order: usize,
}

impl LaurentExpansion {
    /// Coefficient of `t^j` in a one-variable expansion.
    pub fn univariate_coefficient(&self, j: i64) -> Option<BigRational> {
        if self.series.nvars() != 1 || j > self.truncation_order as i64 {
            return None;
        }
        let k = self.pole_factors.len() as i64;
        let idx = j + k;
        if idx < 0 {
            return Some(BigRational::zero());
        }
        let mut scale = BigRational::one();
        for p in &self.pole_factors {
            scale /= BigRational::from_integer(p.coords()[0].clone());
        }
        Some(self.series.coefficient(&[idx as u32]) * scale)
    }

    /// Equality of the represented Laurent series up to the common order,
    /// by cross-multiplying pole factors.
    pub fn equivalent(&self, other: &LaurentExpansion) -> bool {
        if self.series.nvars() != other.series.nvars() {
            return false;
        }
        let order = self.truncation_order.min(other.truncation_order);
        let bound = order + self.pole_factors.len() + other.pole_factors.len();
        let lhs = other.pole_factors.iter().fold(self.series.clone(), |s, p| s.mul_linear(p));
        let rhs = self.pole_factors.iter().fold(other.series.clone(), |s, p| s.mul_linear(p));
        lhs.truncate(bound).terms == rhs.truncate(bound).terms
    }

    fn linear_form_string(&self, p: &LatticeVector) -> String {
        let ones = PowerSeries::linear_form(p, 1);
        let terms = ones.sorted_terms();
        let mut s = String::new();
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let mono = ones.monomial_string(e);
            let abs = c.abs();
            let sign = match (i, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            if abs.is_one() {
                s.push_str(&format!("{sign}{mono}"));
            } else {
                s.push_str(&format!("{sign}{abs}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for LaurentExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.pole_factors.is_empty() {
            let poles: Vec<String> =
                self.pole_factors.iter().map(|p| format!("({})", self.linear_form_string(p))).collect();
            write!(f, "1/({}) * ", poles.join("*"))?;
        }
        write!(f, "({})", self.series)
    }
}

/// Expands `g` after `e^m ↦ Σ_j (m·t)^j / j!`.
///
/// Each denominator factor is split as `1/(1 − e^m) = (1/m) · 1/u(m)` with
/// `u(m) = −(1 + m/2 + m²/6 + …)`; a non-primitive `m = g·p` contributes the
/// pole `p` and a factor `1/g` to the series.
pub fn laurent_expand(g: &RationalGenFun, order: usize) -> Result<LaurentExpansion> {
    let n = g.rank();
    let poles = g.denominator().len();
    let max_degree = order + poles;
    let mut series = PowerSeries::zero(n, max_degree);
    for (u, a) in g.numerator().terms() {
        series = series.add(&PowerSeries::exp_linear(u, max_degree).scale(&BigRational::from_integer(a.clone())));
    }
    // u(m) = −Σ_j m^j/(j+1)!
    let unit_coefficients: Vec<BigRational> =
        exp_coefficients(max_degree + 1).into_iter().skip(1).map(|c| -c).collect();
    let mut pole_factors = Vec::with_capacity(poles);
    for m in g.denominator() {
        if m.is_zero() {
            return Err(Error::ZeroDenominatorVector);
        }
        let content = m.content();
        let unit = PowerSeries::compose_linear(m, &unit_coefficients, max_degree);
        let inverse = unit.inverse().expect("constant term is −1");
        series = series.mul(&inverse).scale(&BigRational::new(BigInt::one(), content));
        pole_factors.push(m.primitive()?);
    }
    Ok(LaurentExpansion { pole_factors, series, truncation_order: order })
}
