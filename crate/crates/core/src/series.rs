//! Truncated one-variable power series `Σ c_k z^k, k = 0..=order`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{factorial, rat, rat_int, Field, Gauss, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Series<C: Field> {
    coeffs: Vec<C>,
}

pub type TaylorSeries = Series<Rational>;

impl<C: Field> Series<C> {
    /// Coefficients of `z^0..=z^order`; missing entries are zero.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        Self { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![C::one()], order)
    }

    pub fn z(order: usize) -> Self {
        Self::new(vec![C::zero(), C::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    /// Even-index coefficients `c_0, c_2, c_4, …`.
    pub fn even_coeffs(&self) -> Vec<C> {
        self.coeffs.iter().step_by(2).cloned().collect()
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self { coeffs: (0..=n).map(|k| self.coeffs[k].add_ref(&rhs.coeffs[k])).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self { coeffs: (0..=n).map(|k| self.coeffs[k].sub_ref(&rhs.coeffs[k])).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self { coeffs: out }
    }

    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs[0].inv_ref()?;
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(c0.clone());
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                acc = acc.add_ref(&self.coeffs[j].mul_ref(&out[k - j]));
            }
            out.push(-(acc.mul_ref(&c0)));
        }
        Ok(Self { coeffs: out })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Square root with constant term 1; requires `c_0 = 1`.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitOperator(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let half = C::from_rational(rat(1, 2));
        let mut out: Vec<C> = vec![C::one()];
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc = acc.sub_ref(&out[j].mul_ref(&out[k - j]));
            }
            out.push(acc.mul_ref(&half));
        }
        Ok(Self { coeffs: out })
    }

    /// `d/dz`; the result has order one less.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let coeffs = (1..=n.max(1))
            .map(|k| {
                self.coeffs
                    .get(k)
                    .map(|c| c.mul_ref(&C::from_rational(rat_int(k as i64))))
                    .unwrap_or_else(C::zero)
            })
            .collect();
        Self { coeffs }
    }

    /// Division by `z^k` when the first `k` coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::Invalid(format!("series is not divisible by z^{k}")));
        }
        let order = self.order().saturating_sub(k);
        Ok(Self::new(self.coeffs.iter().skip(k).cloned().collect(), order))
    }

    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().take(self.order() + 1 - k.min(self.order() + 1)).cloned());
        Self::new(coeffs, self.order())
    }

    /// `exp(c·z)`.
    pub fn exp_linear(c: &C, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut pow = C::one();
        for k in 0..=order {
            coeffs.push(pow.mul_ref(&C::from_rational(factorial(k as u32).recip())));
            pow = pow.mul_ref(c);
        }
        Self { coeffs }
    }
}

impl TaylorSeries {
    /// `sin(z/2)`.
    pub fn sin_half(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| {
                if k % 2 == 0 {
                    Rational::zero()
                } else {
                    let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
                    rat_int(sign) / (factorial(k as u32) * Rational::from_integer(2.into()).pow(k as i32))
                }
            })
            .collect();
        Self::new(coeffs, order)
    }

    /// `cos(z/2)`.
    pub fn cos_half(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| {
                if k % 2 == 1 {
                    Rational::zero()
                } else {
                    let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
                    rat_int(sign) / (factorial(k as u32) * Rational::from_integer(2.into()).pow(k as i32))
                }
            })
            .collect();
        Self::new(coeffs, order)
    }

    pub fn to_gauss(&self) -> Series<Gauss> {
        Series { coeffs: self.coeffs.iter().cloned().map(Gauss::real).collect() }
    }
}

impl Series<Gauss> {
    /// Real part, or `None` if any coefficient has an imaginary part.
    pub fn to_real(&self) -> Option<TaylorSeries> {
        self.coeffs
            .iter()
            .map(|c| c.is_real().then(|| c.re.clone()))
            .collect::<Option<Vec<_>>>()
            .map(|coeffs| Series { coeffs })
    }
}

impl<C: Field> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_sqrt() {
        let s = TaylorSeries::new(vec![rat_int(1), rat_int(0), rat(1, 24), rat_int(0), rat(7, 5760)], 4);
        let inv = s.inv().unwrap();
        assert_eq!(inv.coeff(2), rat(-1, 24));
        assert_eq!(s.mul(&inv), TaylorSeries::one(4));
        let r = s.sqrt().unwrap();
        assert_eq!(r.mul(&r), s);
    }

    #[test]
    fn trig_halves() {
        let s = TaylorSeries::sin_half(7);
        let c = TaylorSeries::cos_half(7);
        // sin² + cos² = 1
        assert_eq!(s.mul(&s).add(&c.mul(&c)), TaylorSeries::one(7));
        assert_eq!(s.coeff(3), rat(-1, 48));
    }

    #[test]
    fn derivative_and_shifts() {
        let e = TaylorSeries::exp_linear(&rat_int(1), 6);
        assert_eq!(e.derivative(), e.truncate(5));
        let zs = TaylorSeries::z(6).mul(&e);
        assert_eq!(zs.shift_down(1).unwrap(), e.truncate(5));
        assert!(e.shift_down(1).is_err());
        assert_eq!(e.shift_up(2).coeff(2), rat_int(1));
    }

    #[test]
    fn sqrt_rejects_non_unit() {
        let s = TaylorSeries::new(vec![rat_int(4)], 2);
        assert!(s.sqrt().is_err());
    }
}
