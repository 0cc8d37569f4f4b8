use std::collections::BTreeMap;

use num_traits::One;

use super::{DiffMonomial, DiffPoly, JetVariable};
use crate::error::{Error, Result};
use crate::scalar::{factorial, rat, rat_int, Gauss};

/// A linear differential operator `Σ a_n ∂x^n` with differential-polynomial
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOperatorExpr {
    terms: BTreeMap<u32, DiffPoly>,
}

impl LinearOperatorExpr {
    pub fn terms(&self) -> impl Iterator<Item = (u32, &DiffPoly)> {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    pub fn coeff(&self, n: u32) -> Option<&DiffPoly> {
        self.terms.get(&n)
    }

    pub fn apply(&self, g: &DiffPoly) -> Result<DiffPoly> {
        let trunc = self.terms.values().map(DiffPoly::truncation).min().unwrap_or(g.truncation());
        let mut out = DiffPoly::zero(g.ring(), trunc.min(g.truncation()));
        let mut dg = g.clone();
        let mut k = 0;
        for (&n, c) in &self.terms {
            while k < n {
                dg = dg.dx();
                k += 1;
            }
            out = out.try_add(&c.try_mul(&dg)?)?;
        }
        Ok(out)
    }
}

impl DiffPoly {
    /// Total x-derivative `Σ w^α_{i+1} ∂/∂w^α_i`.
    pub fn dx(&self) -> Self {
        let mut out = Self::zero(&self.ring, self.trunc);
        for (m, c) in &self.terms {
            for &(j, e) in m.factors() {
                let lowered = m.divide_jet(j, 1).expect("factor present");
                let up = JetVariable { var: j.var, order: j.order + 1 };
                out.add_term(lowered.mul(&DiffMonomial::jet(up, 1)), &c.scale(&rat_int(e as i64)));
            }
        }
        out
    }

    pub fn dx_n(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |p, _| p.dx())
    }

    /// `e^{i m ε ∂x} p = Σ_k (i m ε)^k / k! ∂x^k p`, truncated.
    pub fn exp_shift(&self, m: i64) -> Self {
        if m == 0 || self.is_zero() {
            return self.clone();
        }
        let min_eps = self.terms.keys().map(DiffMonomial::eps).min().unwrap_or(0);
        let mut out = self.clone();
        let mut d = self.clone();
        let mut factor = Gauss::one();
        for k in 1..=self.trunc.saturating_sub(min_eps) {
            d = d.dx();
            factor = factor.mul_i().scale(&rat_int(m));
            let c = factor.scale(&factorial(k).recip());
            out = &out + &d.mul_eps(k).scale(&c);
        }
        out
    }

    /// `∂p/∂w^var_order`.
    pub fn partial(&self, jet: JetVariable) -> Self {
        let mut out = Self::zero(&self.ring, self.trunc);
        for (m, c) in &self.terms {
            let e = m.exponent(jet);
            if e > 0 {
                out.add_term(m.divide_jet(jet, 1).expect("present"), &c.scale(&rat_int(e as i64)));
            }
        }
        out
    }

    /// `∂p/∂w^var` with respect to the undifferentiated variable only.
    pub fn partial0(&self, var: usize) -> Self {
        self.partial(JetVariable::new(var, 0))
    }

    /// `ε∂/∂ε + Σ w^γ_n ∂/∂w^γ_n`: scales each monomial by its ε power plus
    /// its polynomial degree.
    pub fn euler_d(&self) -> Self {
        Self::from_terms(
            &self.ring,
            self.trunc,
            self.terms.iter().map(|(m, c)| (m.clone(), c.scale(&rat_int((m.eps() + m.degree()) as i64)))),
        )
    }

    /// All jets that occur, grouped by variable.
    pub fn jets(&self) -> Vec<JetVariable> {
        let mut js: Vec<JetVariable> = self.terms.keys().flat_map(|m| m.factors().iter().map(|f| f.0)).collect();
        js.sort();
        js.dedup();
        js
    }

    /// The linearization `f_* = Σ_n (∂f/∂w^var_n) ∂x^n`.
    pub fn linearize(&self, var: usize) -> LinearOperatorExpr {
        let terms = self
            .jets()
            .into_iter()
            .filter(|j| j.var as usize == var)
            .map(|j| (j.order as u32, self.partial(j)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        LinearOperatorExpr { terms }
    }

    /// Inverts `∂x` on total derivatives, returning the potential with zero
    /// constant term.
    pub fn integrate_x(&self) -> Result<Self> {
        let mut rest = self.clone();
        let mut potential = Self::zero(&self.ring, self.trunc);
        while !rest.is_zero() {
            let top = rest
                .terms
                .keys()
                .flat_map(|m| m.factors().iter().map(|f| f.0))
                .max_by_key(|j| (j.order, j.var))
                .filter(|j| j.order > 0)
                .ok_or_else(|| Error::NotTotalDerivative(rest.to_string()))?;
            let below = JetVariable { var: top.var, order: top.order - 1 };
            let mut step = Self::zero(&self.ring, self.trunc);
            for (m, c) in &rest.terms {
                match m.exponent(top) {
                    0 => {}
                    1 => {
                        let a = m.divide_jet(top, 1).expect("present");
                        if a.max_order().is_some_and(|o| o >= top.order) {
                            return Err(Error::NotTotalDerivative(rest.to_string()));
                        }
                        let e = a.exponent(below);
                        let g = a.mul(&DiffMonomial::jet(below, 1));
                        step.add_term(g, &c.scale(&rat(1, e as i64 + 1)));
                    }
                    _ => return Err(Error::NotTotalDerivative(rest.to_string())),
                }
            }
            rest = &rest - &step.dx();
            potential = &potential + &step;
        }
        Ok(potential)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::RingSpec;
    use crate::scalar::{rat, rat_int};

    #[test]
    fn dx_examples() {
        let r = RingSpec::single_w();
        let w = DiffPoly::var(&r, 6, 0);
        assert_eq!((&w * &w).dx().to_string(), "2*w*w_1");
        assert!(DiffPoly::constant(&r, 6, Gauss::from_int(5)).dx().is_zero());
        let r = RingSpec::uv();
        let u = DiffPoly::var(&r, 6, 0);
        let v = DiffPoly::var(&r, 6, 1);
        assert_eq!((&u * &v).dx(), &(&u.dx() * &v) + &(&u * &v.dx()));
    }

    #[test]
    fn exp_shift_of_variable() {
        let r = RingSpec::uv();
        let v = DiffPoly::var(&r, 3, 1);
        let s = v.exp_shift(1);
        assert_eq!(s.to_string(), "v + I*ep*v_1 - 1/2*ep^2*v_2 - 1/6*I*ep^3*v_3");
        assert_eq!(v.exp_shift(0), v);
        assert_eq!(s.exp_shift(-1), v);
    }

    #[test]
    fn partials_and_euler() {
        let r = RingSpec::uw();
        let u = DiffPoly::var(&r, 6, 0);
        let w = DiffPoly::var(&r, 6, 1);
        let p = &u * &w.pow(2);
        assert_eq!(p.partial0(0), w.pow(2));
        assert!(u.dx().partial0(0).is_zero());
        let q = &u.dx() * &w;
        let q = q.mul_eps(2);
        assert_eq!(q.euler_d(), q.scale_rat(&rat_int(4)));
    }

    #[test]
    fn linearization() {
        let r = RingSpec::single_w();
        let w = DiffPoly::var(&r, 6, 0);
        let f = w.pow(2).scale_rat(&rat(1, 2));
        let lin = f.linearize(0);
        assert_eq!(lin.terms().count(), 1);
        assert_eq!(lin.coeff(0), Some(&w));
        let g = DiffPoly::jet(&r, 6, 0, 3);
        assert_eq!(lin.apply(&g).unwrap(), &w * &g);
        let lin = w.dx().linearize(0);
        assert_eq!(lin.coeff(1).unwrap().to_string(), "1");
    }

    #[test]
    fn integration_inverts_dx() {
        let r = RingSpec::uv();
        let u = DiffPoly::var(&r, 6, 0);
        let v = DiffPoly::var(&r, 6, 1);
        let g = &(&u * &v.dx_n(2)).mul_eps(2) + &(&v.pow(3) - &u.dx().pow(2).mul_eps(2));
        assert_eq!(g.dx().integrate_x().unwrap(), g);
        assert!((&u * &v).integrate_x().is_err());
        assert!(u.dx().pow(2).integrate_x().is_err());
    }
}
