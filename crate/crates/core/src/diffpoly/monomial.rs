use std::cmp::Ordering;

/// The jet `w^var_order`, i.e. the `order`-th x-derivative of variable `var`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetVariable {
    pub var: u16,
    pub order: u16,
}

impl JetVariable {
    pub fn new(var: usize, order: u32) -> Self {
        Self { var: var as u16, order: order as u16 }
    }
}

/// `ε^eps · Π jet^exp` with factors sorted by jet and positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffMonomial {
    eps: u32,
    degree: u32,
    factors: Vec<(JetVariable, u32)>,
}

impl DiffMonomial {
    pub fn one() -> Self {
        Self { eps: 0, degree: 0, factors: Vec::new() }
    }

    pub fn jet(jet: JetVariable, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        Self { eps: 0, degree: exp, factors: vec![(jet, exp)] }
    }

    /// Builds a monomial from arbitrary factors, merging repeats and dropping
    /// zero exponents.
    pub fn from_factors(eps: u32, factors: impl IntoIterator<Item = (JetVariable, u32)>) -> Self {
        let mut fs: Vec<(JetVariable, u32)> = factors.into_iter().filter(|f| f.1 > 0).collect();
        fs.sort_by_key(|f| f.0);
        let mut merged: Vec<(JetVariable, u32)> = Vec::with_capacity(fs.len());
        for (j, e) in fs {
            match merged.last_mut() {
                Some(last) if last.0 == j => last.1 += e,
                _ => merged.push((j, e)),
            }
        }
        let degree = merged.iter().map(|f| f.1).sum();
        Self { eps, degree, factors: merged }
    }

    pub fn eps(&self) -> u32 {
        self.eps
    }

    /// Polynomial degree (sum of exponents).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(JetVariable, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.eps == 0 && self.factors.is_empty()
    }

    pub fn with_eps(&self, eps: u32) -> Self {
        Self { eps, degree: self.degree, factors: self.factors.clone() }
    }

    /// Total jet order `Σ order·exp` (the differential degree without ε).
    pub fn jet_order(&self) -> u32 {
        self.factors.iter().map(|(j, e)| j.order as u32 * e).sum()
    }

    /// `deg` with `deg ε = −1`.
    pub fn deg(&self) -> i64 {
        self.jet_order() as i64 - self.eps as i64
    }

    pub fn odeg(&self, weights: &[u32]) -> u32 {
        self.factors.iter().map(|(j, e)| weights[j.var as usize] * e).sum()
    }

    pub fn max_order(&self) -> Option<u16> {
        self.factors.iter().map(|f| f.0.order).max()
    }

    pub fn exponent(&self, jet: JetVariable) -> u32 {
        self.factors
            .binary_search_by_key(&jet, |f| f.0)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mentions_var(&self, var: usize) -> bool {
        self.factors.iter().any(|f| f.0.var as usize == var)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut k) = (0, 0);
        while i < self.factors.len() && k < other.factors.len() {
            let (a, b) = (self.factors[i], other.factors[k]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    factors.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push(b);
                    k += 1;
                }
                Ordering::Equal => {
                    factors.push((a.0, a.1 + b.1));
                    i += 1;
                    k += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[k..]);
        Self { eps: self.eps + other.eps, degree: self.degree + other.degree, factors }
    }

    /// Lowers the exponent of `jet` by `k`; `None` if it is smaller than `k`.
    pub fn divide_jet(&self, jet: JetVariable, k: u32) -> Option<Self> {
        let idx = self.factors.binary_search_by_key(&jet, |f| f.0).ok()?;
        let e = self.factors[idx].1;
        if e < k {
            return None;
        }
        let mut factors = self.factors.clone();
        if e == k {
            factors.remove(idx);
        } else {
            factors[idx].1 -= k;
        }
        Some(Self { eps: self.eps, degree: self.degree - k, factors })
    }

    /// Applies `f` to every jet; factors are re-sorted and merged.
    pub fn map_jets(&self, f: impl Fn(JetVariable) -> JetVariable) -> Self {
        Self::from_factors(self.eps, self.factors.iter().map(|&(j, e)| (f(j), e)))
    }
}

/// Ascending ε power, then descending polynomial degree, then lexicographic
/// on `(variable, jet order, exponent)`.
impl Ord for DiffMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.eps
            .cmp(&other.eps)
            .then_with(|| other.degree.cmp(&self.degree))
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for DiffMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_merges_factors() {
        let u = DiffMonomial::jet(JetVariable::new(0, 0), 1);
        let vx = DiffMonomial::jet(JetVariable::new(1, 1), 2).with_eps(1);
        let p = u.mul(&vx).mul(&u);
        assert_eq!(p.factors(), &[(JetVariable::new(0, 0), 2), (JetVariable::new(1, 1), 2)]);
        assert_eq!(p.eps(), 1);
        assert_eq!(p.degree(), 4);
        assert_eq!(p.jet_order(), 2);
        assert_eq!(p.deg(), 1);
        assert_eq!(p.odeg(&[2, 1]), 6);
    }

    #[test]
    fn ordering_is_eps_then_degree() {
        let v2 = DiffMonomial::jet(JetVariable::new(1, 0), 2);
        let u = DiffMonomial::jet(JetVariable::new(0, 0), 1);
        assert!(v2 < u);
        assert!(u < v2.with_eps(2));
    }

    #[test]
    fn divide_jet() {
        let m = DiffMonomial::from_factors(0, [(JetVariable::new(0, 1), 2), (JetVariable::new(0, 1), 1)]);
        assert_eq!(m.exponent(JetVariable::new(0, 1)), 3);
        assert!(m.divide_jet(JetVariable::new(0, 1), 4).is_none());
        assert!(m.divide_jet(JetVariable::new(0, 1), 3).unwrap().is_one());
    }
}
