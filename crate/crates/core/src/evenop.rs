//! Constant-coefficient operators in `ε∂x`.
//!
//! [`EvenOp`] holds `Σ_g c_g (ε∂x)^{2g}` with rational coefficients; the named
//! instances are built from the Taylor expansions of their generating
//! functions `K̂(z)`, `z = ε∂x`. [`ConstOp`] holds general Gaussian-rational
//! series `Σ_k c_k (ε∂x)^k`, used for shift quotients such as `(1+Λ)⁻¹`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::scalar::{rat, rat_int, Gauss, Rational};
use crate::series::{Series, TaylorSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenOp {
    coeffs: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedOp {
    /// `iε∂x / (Λ^{1/2} − Λ^{−1/2})`, with `L̂(z) = (z/2)/sin(z/2)`.
    L,
    /// `(2/(iε∂x))(Λ−1)/(Λ+1)`, with `R̂(z) = 2tan(z/2)/z`.
    R,
    /// Same closed form as `R`, expanded from complex exponentials.
    X,
    /// `√R`.
    T,
    Linv,
    Rinv,
}

impl FromStr for NamedOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "L" => Self::L,
            "R" => Self::R,
            "X" => Self::X,
            "T" => Self::T,
            "Linv" => Self::Linv,
            "Rinv" => Self::Rinv,
            _ => return Err(Error::Invalid(format!("unknown operator `{s}`"))),
        })
    }
}

impl EvenOp {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "an operator needs at least its constant term");
        Self { coeffs }
    }

    pub fn identity(max_g: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); max_g + 1];
        coeffs[0] = Rational::one();
        Self { coeffs }
    }

    /// Reads the even part of `K̂(z)`.
    pub fn from_hat(series: &TaylorSeries) -> Self {
        Self { coeffs: series.even_coeffs() }
    }

    /// Highest index `G` of the stored coefficients.
    pub fn max_g(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> Rational {
        self.coeffs.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    /// `K̂(z) = Σ c_g z^{2g}` to order `2G`.
    pub fn hat_series(&self) -> TaylorSeries {
        let mut c = vec![Rational::zero(); 2 * self.max_g() + 1];
        for (g, k) in self.coeffs.iter().enumerate() {
            c[2 * g] = k.clone();
        }
        TaylorSeries::new(c, 2 * self.max_g())
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::from_hat(&self.hat_series().mul(&other.hat_series()))
    }

    fn check_unit(&self) -> Result<()> {
        if self.coeffs[0].is_one() {
            Ok(())
        } else {
            Err(Error::NonUnitOperator(self.coeffs[0].to_string()))
        }
    }

    pub fn invert(&self) -> Result<Self> {
        self.check_unit()?;
        Ok(Self::from_hat(&self.hat_series().inv()?))
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.check_unit()?;
        Ok(Self::from_hat(&self.hat_series().sqrt()?))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// `Σ c_g ε^{2g} ∂x^{2g} p`, truncated to the truncation of `p`.
    pub fn apply(&self, p: &DiffPoly) -> DiffPoly {
        let mut out = p.scale_rat(&self.coeffs[0]);
        let mut d = p.clone();
        for (g, c) in self.coeffs.iter().enumerate().skip(1) {
            if 2 * g as u32 > p.truncation() {
                break;
            }
            d = d.dx().dx();
            if !c.is_zero() {
                out = &out + &d.mul_eps(2 * g as u32).scale_rat(c);
            }
        }
        out
    }

    pub fn to_const_op(&self) -> ConstOp {
        let mut c = vec![Gauss::zero(); 2 * self.max_g() + 1];
        for (g, k) in self.coeffs.iter().enumerate() {
            c[2 * g] = Gauss::real(k.clone());
        }
        ConstOp { coeffs: c }
    }
}

impl fmt::Display for EvenOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `sin(z/2)/z` to order `n`.
fn sinc_half(n: usize) -> TaylorSeries {
    TaylorSeries::sin_half(n + 1).shift_down(1).expect("sin has no constant term")
}

/// Builds a named operator through `(ε∂x)^{2G}`.
pub fn make_named(name: NamedOp, max_g: usize) -> EvenOp {
    let n = 2 * max_g;
    let hat = match name {
        NamedOp::L => sinc_half(n).inv().expect("unit constant term").scale(&rat(1, 2)),
        NamedOp::R => {
            let tan_over_z = sinc_half(n).div(&TaylorSeries::cos_half(n)).expect("cos(0) = 1");
            tan_over_z.scale(&rat_int(2))
        }
        NamedOp::X => x_hat_from_exponentials(n),
        NamedOp::T => return make_named(NamedOp::R, max_g).sqrt().expect("R is normalized"),
        NamedOp::Linv => return make_named(NamedOp::L, max_g).invert().expect("L is normalized"),
        NamedOp::Rinv => return make_named(NamedOp::R, max_g).invert().expect("R is normalized"),
    };
    EvenOp::from_hat(&hat)
}

/// `(2/(iz))(e^{iz}−1)/(e^{iz}+1)` expanded over ℚ(i).
fn x_hat_from_exponentials(n: usize) -> TaylorSeries {
    let e = Series::<Gauss>::exp_linear(&Gauss::i(), n + 1);
    let one = Series::<Gauss>::one(n + 1);
    let num = e.sub(&one).shift_down(1).expect("e^{iz} - 1 vanishes at 0");
    let den = e.add(&one).truncate(n);
    let ratio = num.div(&den).expect("e^0 + 1 = 2");
    let x = ratio.scale(&Gauss::i().inv().expect("i is invertible").scale(&rat_int(2)));
    x.to_real().expect("X̂ has real coefficients")
}

/// `Σ_k c_k (ε∂x)^k` with Gaussian-rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstOp {
    coeffs: Vec<Gauss>,
}

impl ConstOp {
    pub fn new(coeffs: Vec<Gauss>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    /// Converts a series `f(y)` in `y = iε∂x` into an operator in `ε∂x`.
    pub fn from_series_in_i_eps_dx(f: &Series<Gauss>) -> Self {
        Self {
            coeffs: f.coeffs().iter().enumerate().map(|(k, c)| c * &Gauss::i_pow(k as i64)).collect(),
        }
    }

    /// `Λ^m = e^{imε∂x}`.
    pub fn shift(m: i64, order: usize) -> Self {
        Self::from_series_in_i_eps_dx(&Series::exp_linear(&Gauss::from_int(m), order))
    }

    /// `(1 + Λ)⁻¹`.
    pub fn one_plus_shift_inverse(order: usize) -> Self {
        let e = Series::<Gauss>::exp_linear(&Gauss::one(), order);
        let s = e.add(&Series::one(order));
        Self::from_series_in_i_eps_dx(&s.inv().expect("constant term 2"))
    }

    /// `(Λ − 1)/(Λ + 1)`.
    pub fn shift_ratio(order: usize) -> Self {
        let e = Series::<Gauss>::exp_linear(&Gauss::one(), order);
        let one = Series::one(order);
        let r = e.sub(&one).div(&e.add(&one)).expect("constant term 2");
        Self::from_series_in_i_eps_dx(&r)
    }

    pub fn coeffs(&self) -> &[Gauss] {
        &self.coeffs
    }

    pub fn compose(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len()) - 1;
        let a = Series::new(self.coeffs.clone(), n);
        let b = Series::new(other.coeffs.clone(), n);
        Self { coeffs: a.mul(&b).coeffs().to_vec() }
    }

    pub fn apply(&self, p: &DiffPoly) -> DiffPoly {
        let mut out = p.scale(&self.coeffs[0]);
        let mut d = p.clone();
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            if k as u32 > p.truncation() {
                break;
            }
            d = d.dx();
            if !c.is_zero() {
                out = &out + &d.mul_eps(k as u32).scale(c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::RingSpec;

    fn rats(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn named_fixtures() {
        assert_eq!(make_named(NamedOp::L, 2).coeffs(), rats(&[(1, 1), (1, 24), (7, 5760)]));
        assert_eq!(make_named(NamedOp::R, 2).coeffs(), rats(&[(1, 1), (1, 12), (1, 120)]));
        assert_eq!(make_named(NamedOp::X, 2).coeffs(), rats(&[(1, 1), (1, 12), (1, 120)]));
        assert_eq!(make_named(NamedOp::T, 2).coeffs(), rats(&[(1, 1), (1, 24), (19, 5760)]));
        assert_eq!(make_named(NamedOp::Linv, 1).coeff(1), rat(-1, 24));
    }

    #[test]
    fn x_equals_r_at_every_order() {
        for g in 0..7 {
            assert_eq!(make_named(NamedOp::X, g), make_named(NamedOp::R, g));
        }
    }

    #[test]
    fn inverse_and_root_consistency() {
        assert_eq!(EvenOp::identity(3).invert().unwrap(), EvenOp::identity(3));
        for name in [NamedOp::L, NamedOp::R, NamedOp::T] {
            let a = make_named(name, 4);
            assert_eq!(a.compose(&a.invert().unwrap()), EvenOp::identity(4));
            let s = a.sqrt().unwrap();
            assert_eq!(s.compose(&s), a);
        }
        let bad = EvenOp::new(rats(&[(2, 1), (1, 3)]));
        assert!(matches!(bad.invert(), Err(Error::NonUnitOperator(_))));
        assert!(bad.sqrt().is_err());
    }

    #[test]
    fn application() {
        let r = RingSpec::uv();
        let v = DiffPoly::var(&r, 4, 1);
        let rv = make_named(NamedOp::R, 2).apply(&v);
        assert_eq!(rv.to_string(), "v + 1/12*ep^2*v_2 + 1/120*ep^4*v_4");
        assert_eq!(EvenOp::identity(2).apply(&rv), rv);
        let u = DiffPoly::var(&r, 2, 0);
        assert_eq!(make_named(NamedOp::L, 2).apply(&u).to_string(), "u + 1/24*ep^2*u_2");
        let p = &v * &v.dx();
        let l = make_named(NamedOp::L, 2);
        assert_eq!(l.apply(&p.dx()), l.apply(&p).dx());
    }

    #[test]
    fn hat_series_round_trip_and_composition() {
        let l = make_named(NamedOp::L, 3);
        assert_eq!(EvenOp::from_hat(&l.hat_series()), l);
        assert_eq!(EvenOp::identity(2).hat_series(), TaylorSeries::one(4));
        let r = make_named(NamedOp::R, 3);
        assert_eq!(l.compose(&r).hat_series(), l.hat_series().mul(&r.hat_series()));
    }

    #[test]
    fn shift_quotients() {
        // (1+Λ)⁻¹ has constant term 1/2 and (Λ−1)/(Λ+1) = (iε∂x/2) R.
        let inv = ConstOp::one_plus_shift_inverse(6);
        assert_eq!(inv.coeffs()[0], Gauss::real(rat(1, 2)));
        let ratio = ConstOp::shift_ratio(7);
        let r = make_named(NamedOp::R, 3).to_const_op();
        let half_i_z = ConstOp::new(vec![Gauss::zero(), Gauss::new(rat_int(0), rat(1, 2))]);
        let mut expected = ConstOp::new(vec![Gauss::zero(); 8]);
        for (k, c) in r.coeffs().iter().enumerate() {
            expected.coeffs[k + 1] = c * &half_i_z.coeffs()[1];
        }
        assert_eq!(ratio, expected);
        let ring = RingSpec::uv();
        let v = DiffPoly::var(&ring, 5, 1);
        let one_plus = ConstOp::shift(1, 6).coeffs().to_vec();
        let mut one_plus = ConstOp::new(one_plus);
        one_plus.coeffs[0] = &one_plus.coeffs[0] + &Gauss::one();
        assert_eq!(inv.apply(&one_plus.apply(&v)), v);
    }
}
