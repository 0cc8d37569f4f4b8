//! Exact coefficient arithmetic over ℚ and ℚ(i).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

/// Builds `num/den`, reduced.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_arith(a: &Rational, b: &Rational, kind: ArithKind) -> Result<Rational> {
    Ok(match kind {
        ArithKind::Add => a + b,
        ArithKind::Sub => a - b,
        ArithKind::Mul => a * b,
        ArithKind::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a / b
        }
    })
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok();
            let d = BigInt::from_str(d.trim()).ok();
            match (n, d) {
                (Some(_), Some(d)) if d.is_zero() => return Err(Error::DivisionByZero),
                (Some(n), Some(d)) => Some(Rational::new(n, d)),
                _ => None,
            }
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    };
    parsed.ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: format!("invalid rational literal `{s}`"),
    })
}

/// An element `re + im·i` of the Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

pub type Gauss = GaussianRational;

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(rat_int(n))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// `i^k` for any integer k.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { re: &self.re * r, im: &self.im * r }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Self { re: -&self.im, im: self.re.clone() }
    }

    /// Division by `i`.
    pub fn div_i(&self) -> Self {
        Self { re: self.im.clone(), im: -&self.re }
    }
}

pub fn gauss_arith(a: &Gauss, b: &Gauss, kind: ArithKind) -> Result<Gauss> {
    Ok(match kind {
        ArithKind::Add => a + b,
        ArithKind::Sub => a - b,
        ArithKind::Mul => a * b,
        ArithKind::Div => a.checked_div(b)?,
    })
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self::real(re)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a Gauss> for &'a Gauss {
    type Output = Gauss;
    fn add(self, rhs: &Gauss) -> Gauss {
        Gauss { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a Gauss> for &'a Gauss {
    type Output = Gauss;
    fn sub(self, rhs: &Gauss) -> Gauss {
        Gauss { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a Gauss> for &'a Gauss {
    type Output = Gauss;
    fn mul(self, rhs: &Gauss) -> Gauss {
        // Most coefficients in practice are real.
        if self.im.is_zero() && rhs.im.is_zero() {
            return Gauss::real(&self.re * &rhs.re);
        }
        Gauss {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -&self.re, im: -&self.im }
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -self.re, im: -self.im }
    }
}

impl Add for Gauss {
    type Output = Gauss;
    fn add(self, rhs: Gauss) -> Gauss {
        &self + &rhs
    }
}

impl Sub for Gauss {
    type Output = Gauss;
    fn sub(self, rhs: Gauss) -> Gauss {
        &self - &rhs
    }
}

impl Mul for Gauss {
    type Output = Gauss;
    fn mul(self, rhs: Gauss) -> Gauss {
        &self * &rhs
    }
}

impl AddAssign<&Gauss> for Gauss {
    fn add_assign(&mut self, rhs: &Gauss) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Gauss> for Gauss {
    fn sub_assign(&mut self, rhs: &Gauss) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

/// Prints `a`, `b*I`, `a+b*I` or `a-b*I`, with `I`/`-I` for unit imaginary
/// parts.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &Rational| -> String {
            if im.is_one() {
                "I".to_string()
            } else if (-im).is_one() {
                "-I".to_string()
            } else {
                format!("{im}*I")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", im_part(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}{}", self.re, im_part(&self.im))
                } else {
                    write!(f, "{}+{}", self.re, im_part(&self.im))
                }
            }
        }
    }
}

/// Coefficient field for truncated series and linear algebra.
pub trait Field:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self>
{
    fn from_rational(r: Rational) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn inv_ref(&self) -> Result<Self>;
}

impl Field for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv_ref(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

impl Field for Gauss {
    fn from_rational(r: Rational) -> Self {
        Gauss::real(r)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv_ref(&self) -> Result<Self> {
        self.inv()
    }
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    Rational::from_integer((1..=n).map(BigInt::from).product())
}

/// `n!!` (with `0!! = (-1)!! = 1`).
pub fn double_factorial(n: i64) -> Rational {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    Rational::from_integer(acc)
}

pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(a: i64, b: i64) -> Gauss {
        Gauss::new(rat_int(a), rat_int(b))
    }

    #[test]
    fn rational_examples() {
        assert_eq!(rat_arith(&rat(1, 2), &rat(1, 3), ArithKind::Add).unwrap(), rat(5, 6));
        let x = rat(-7, 9);
        assert_eq!(rat_arith(&x, &rat_int(1), ArithKind::Mul).unwrap(), x);
        let s = rat_arith(&rat(7, 5760), &rat(19, 5760), ArithKind::Add).unwrap();
        assert_eq!(s, rat(13, 2880));
        assert_eq!(s.to_string(), "13/2880");
        assert!(matches!(
            rat_arith(&x, &rat_int(0), ArithKind::Div),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(gauss_arith(&Gauss::i(), &Gauss::i(), ArithKind::Mul).unwrap(), g(-1, 0));
        assert_eq!(gauss_arith(&g(1, 1), &g(1, -1), ArithKind::Div).unwrap(), Gauss::i());
        let x = Gauss::new(rat(3, 4), rat(-2, 7));
        assert_eq!(gauss_arith(&x, &Gauss::zero(), ArithKind::Add).unwrap(), x);
        assert!(gauss_arith(&x, &Gauss::zero(), ArithKind::Div).is_err());
    }

    #[test]
    fn textual_forms() {
        assert_eq!(rat_int(3).to_string(), "3");
        assert_eq!(rat(-2, 6).to_string(), "-1/3");
        assert_eq!(Gauss::new(rat(1, 2), rat(-3, 4)).to_string(), "1/2-3/4*I");
        assert_eq!(Gauss::new(rat(1, 2), rat_int(1)).to_string(), "1/2+I");
        assert_eq!(Gauss::new(rat_int(0), rat(2, 3)).to_string(), "2/3*I");
        assert_eq!(parse_rational(" -10/4 ").unwrap(), rat(-5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(double_factorial(5), rat_int(15));
        assert_eq!(double_factorial(-1), rat_int(1));
        assert_eq!(binomial(6, 2), rat_int(15));
        assert_eq!(factorial(5), rat_int(120));
        assert_eq!(Gauss::i_pow(-1), -Gauss::i());
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_gauss() -> impl Strategy<Value = Gauss> {
        (arb_rat(), arb_rat()).prop_map(|(a, b)| Gauss::new(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn gaussian_field_axioms(a in arb_gauss(), b in arb_gauss(), c in arb_gauss()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Gauss::one());
            }
            prop_assert_eq!(&a - &a, Gauss::zero());
        }

        #[test]
        fn rationals_stay_reduced(a in arb_rat(), b in arb_rat()) {
            let p = &a * &b;
            prop_assert!(p.denom().is_positive());
            prop_assert_eq!(num_integer::Integer::gcd(p.numer(), p.denom()), if p.is_zero() { p.denom().clone() } else { BigInt::one() });
        }
    }
}
