//! The ring of shift operators `Σ a_n Λ^n`, `Λ = e^{iε∂x}`, with
//! differential-polynomial coefficients.
//!
//! Operators are finite windows of possibly infinite series. Each operator
//! records the lowest power of `Λ` down to which its stored coefficients are
//! exact (`None` for genuinely finite operators such as the Lax operator);
//! products are only ever reported down to the power where both factors are
//! still exact.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::diffpoly::{DiffPoly, Ring};
use crate::error::{Error, Result};
use crate::evenop::ConstOp;
use crate::scalar::{rat, Gauss};

#[derive(Clone, Debug, PartialEq)]
pub struct ShiftOp {
    ring: Ring,
    trunc: u32,
    coeffs: BTreeMap<i32, DiffPoly>,
    exact_low: Option<i32>,
}

impl ShiftOp {
    pub fn zero(ring: &Ring, trunc: u32) -> Self {
        Self { ring: ring.clone(), trunc, coeffs: BTreeMap::new(), exact_low: None }
    }

    /// A finite operator from `(power, coefficient)` pairs.
    pub fn from_coeffs(ring: &Ring, trunc: u32, coeffs: impl IntoIterator<Item = (i32, DiffPoly)>) -> Self {
        let mut op = Self::zero(ring, trunc);
        for (n, c) in coeffs {
            op.add_coeff(n, &c);
        }
        op
    }

    /// `Λ^n`.
    pub fn lambda(ring: &Ring, trunc: u32, n: i32) -> Self {
        Self::from_coeffs(ring, trunc, [(n, DiffPoly::constant(ring, trunc, Gauss::one()))])
    }

    pub fn identity(ring: &Ring, trunc: u32) -> Self {
        Self::lambda(ring, trunc, 0)
    }

    /// Marks the operator as a truncation of an infinite series, exact only
    /// for powers `≥ low`.
    pub fn with_exact_low(mut self, low: i32) -> Self {
        self.exact_low = Some(low);
        self.coeffs.retain(|n, _| *n >= low);
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn exact_low(&self) -> Option<i32> {
        self.exact_low
    }

    pub fn coeff(&self, n: i32) -> DiffPoly {
        self.coeffs.get(&n).cloned().unwrap_or_else(|| DiffPoly::zero(&self.ring, self.trunc))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i32, &DiffPoly)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    pub fn top_power(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_coeff(&mut self, n: i32, c: &DiffPoly) {
        if self.exact_low.is_some_and(|low| n < low) {
            return;
        }
        let c = c.truncate(self.trunc);
        let sum = match self.coeffs.remove(&n) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(n, sum);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    fn combine_low(a: Option<i32>, b: Option<i32>) -> Option<i32> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, None) | (None, x) => x,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.ring, self.trunc.min(other.trunc));
        out.exact_low = Self::combine_low(self.exact_low, other.exact_low);
        for (n, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.add_coeff(*n, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Gauss::one()))
    }

    pub fn scale(&self, c: &Gauss) -> Self {
        let mut out = Self::zero(&self.ring, self.trunc);
        out.exact_low = self.exact_low;
        for (n, a) in &self.coeffs {
            out.add_coeff(*n, &a.scale(c));
        }
        out
    }

    /// Lowest power at which `self · other` is exact, if any.
    fn product_low(&self, other: &Self) -> Option<i32> {
        let from_self = self.exact_low.map(|l| l + other.top_power().unwrap_or(i32::MIN / 4));
        let from_other = other.exact_low.map(|l| l + self.top_power().unwrap_or(i32::MIN / 4));
        Self::combine_low(from_self, from_other)
    }

    /// `(fΛ^m)(gΛ^n) = f·(Λ^m g)·Λ^{m+n}`, down to the power where both
    /// factors are exact.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let low = self.product_low(other);
        self.mul_down_to(other, low)
    }

    /// Product restricted to powers `≥ min_power`; fails if the factors are
    /// not exact that far down.
    pub fn mul_to(&self, other: &Self, min_power: i32) -> Result<Self> {
        if let Some(low) = self.product_low(other) {
            if min_power < low {
                let depth = (low - min_power) as u32 + self.exact_low.or(other.exact_low).map_or(0, |l| (-l).max(0) as u32);
                return Err(Error::WindowOverflow { needed: min_power, available: low, depth });
            }
        }
        self.mul_down_to(other, Some(min_power))
    }

    fn mul_down_to(&self, other: &Self, low: Option<i32>) -> Result<Self> {
        self.check(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = Self::zero(&self.ring, trunc);
        out.exact_low = low;
        for (&m, f) in &self.coeffs {
            for (&n, g) in &other.coeffs {
                if low.is_some_and(|l| m + n < l) {
                    continue;
                }
                let term = f * &g.exp_shift(m as i64);
                out.add_coeff(m + n, &term);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::identity(&self.ring, self.trunc);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `A_+ = Σ_{n≥0} a_n Λ^n`.
    pub fn plus_part(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            trunc: self.trunc,
            coeffs: self.coeffs.range(0..).map(|(n, c)| (*n, c.clone())).collect(),
            exact_low: None,
        }
    }

    /// `(iε)⁻¹[A, B]`; the ε⁰ part of the commutator must vanish. The
    /// truncation drops by one.
    pub fn commutator_over_ieps(&self, other: &Self) -> Result<Self> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        let c = ab.sub(&ba)?;
        let trunc = c.trunc.checked_sub(1).ok_or_else(|| Error::Invalid("truncation 0 cannot be divided by ε".into()))?;
        let mut out = Self::zero(&self.ring, trunc);
        out.exact_low = c.exact_low;
        for (&n, a) in &c.coeffs {
            if !a.eps_part(0).is_zero() {
                return Err(Error::NonzeroClassicalCommutator { power: n });
            }
            out.add_coeff(n, &a.div_eps(1)?.scale(&-Gauss::i()));
        }
        Ok(out)
    }

    /// Set ε = 0 and `Λ → z`.
    pub fn dispersionless_symbol(&self) -> SymbolPoly {
        SymbolPoly::from_coeffs(self.coeffs.iter().map(|(n, c)| (*n, c.at_eps_zero())))
    }

    fn check_monic(&self, degree: i32) -> Result<()> {
        let ok = self.top_power() == Some(degree) && self.coeff(degree) == DiffPoly::constant(&self.ring, self.trunc, Gauss::one());
        if ok && self.exact_low.is_none() {
            Ok(())
        } else {
            Err(Error::NotMonic { expected: degree, found: self.to_string() })
        }
    }
}

/// `B = Λ + Σ_{n≤0} b_n Λ^n` with `B² = A`, computing `b_0, …, b_{−depth}`.
pub fn shift_sqrt(a: &ShiftOp, depth: u32) -> Result<ShiftOp> {
    a.check_monic(2)?;
    let (ring, trunc) = (a.ring.clone(), a.trunc);
    let inv = ConstOp::one_plus_shift_inverse(trunc as usize);
    let mut b: BTreeMap<i32, DiffPoly> = BTreeMap::new();
    for k in 0..=depth as i32 {
        let n = -k;
        let mut known = a.coeff(n + 1);
        for i in (n + 1)..=0 {
            let j = n + 1 - i;
            if j > 0 || j < n + 1 {
                continue;
            }
            if let (Some(bi), Some(bj)) = (b.get(&i), b.get(&j)) {
                known = &known - &(bi * &bj.exp_shift(i as i64));
            }
        }
        b.insert(n, inv.apply(&known));
    }
    let mut root = ShiftOp::lambda(&ring, trunc, 1);
    for (n, c) in b {
        root.add_coeff(n, &c);
    }
    Ok(root.with_exact_low(-(depth as i32)))
}

/// `(L^{d+1/2})_+`, computed as `(L^d · L^{1/2})_+` with root depth `2d`.
pub fn lax_power_plus(lax: &ShiftOp, d: u32) -> Result<ShiftOp> {
    lax_power_plus_with_depth(lax, d, 2 * d)
}

/// As [`lax_power_plus`] with an explicit root depth; needs `depth ≥ 2d`.
pub fn lax_power_plus_with_depth(lax: &ShiftOp, d: u32, depth: u32) -> Result<ShiftOp> {
    lax.check_monic(2)?;
    if depth < 2 * d {
        return Err(Error::WindowOverflow { needed: 0, available: 2 * d as i32 - depth as i32, depth: 2 * d });
    }
    let root = shift_sqrt(lax, depth)?;
    let ld = lax.pow(d)?;
    Ok(ld.mul_to(&root, 0)?.plus_part())
}

/// Commutative symbol `Σ c_m z^m` with ε-free coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolPoly {
    coeffs: BTreeMap<i32, DiffPoly>,
}

impl SymbolPoly {
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (i32, DiffPoly)>) -> Self {
        let mut out = BTreeMap::new();
        for (n, c) in coeffs {
            if !c.is_zero() {
                out.insert(n, c);
            }
        }
        Self { coeffs: out }
    }

    pub fn coeff(&self, n: i32) -> Option<&DiffPoly> {
        self.coeffs.get(&n)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i32, &DiffPoly)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<i32, DiffPoly> = BTreeMap::new();
        for (m, f) in &self.coeffs {
            for (n, g) in &other.coeffs {
                let p = f * g;
                let e = out.remove(&(m + n));
                out.insert(m + n, match e {
                    Some(old) => &old + &p,
                    None => p,
                });
            }
        }
        Self::from_coeffs(out)
    }

    /// Restricts to powers `≥ low`.
    pub fn clip(&self, low: i32) -> Self {
        Self { coeffs: self.coeffs.range(low..).map(|(n, c)| (*n, c.clone())).collect() }
    }
}

impl fmt::Display for ShiftOp {
    /// `(a_m)*Lm + … + (a_k)*Lk`, highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().rev().map(|(n, c)| format!("({c})*L{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().rev().map(|(n, c)| format!("({c})*z^{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The Lax operator `Λ² + ((v + Λv)/2)Λ + u` over the `(u, v)` ring.
pub fn lax_operator(ring: &Ring, trunc: u32) -> ShiftOp {
    let u = DiffPoly::var(ring, trunc, 0);
    let v = DiffPoly::var(ring, trunc, 1);
    let mid = (&v + &v.exp_shift(1)).scale_rat(&rat(1, 2));
    ShiftOp::from_coeffs(ring, trunc, [(2, DiffPoly::constant(ring, trunc, Gauss::one())), (1, mid), (0, u)])
}

impl Zero for SymbolPoly {
    fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl std::ops::Add for SymbolPoly {
    type Output = SymbolPoly;
    fn add(self, rhs: SymbolPoly) -> SymbolPoly {
        let mut out = self.coeffs;
        for (n, c) in rhs.coeffs {
            let e = out.remove(&n);
            out.insert(n, match e {
                Some(old) => &old + &c,
                None => c,
            });
        }
        SymbolPoly::from_coeffs(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::RingSpec;
    use crate::scalar::rat_int;

    fn setup(e: u32) -> (Ring, DiffPoly, DiffPoly) {
        let r = RingSpec::uv();
        let u = DiffPoly::var(&r, e, 0);
        let v = DiffPoly::var(&r, e, 1);
        (r, u, v)
    }

    #[test]
    fn multiplication_twists_by_shift() {
        let (r, u, v) = setup(4);
        let a = ShiftOp::from_coeffs(&r, 4, [(1, v.clone())]);
        let b = ShiftOp::from_coeffs(&r, 4, [(1, u.clone())]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff(2), &v * &u.exp_shift(1));
        assert_eq!(p.top_power(), Some(2));
        let id = ShiftOp::identity(&r, 4);
        assert_eq!(a.mul(&id).unwrap(), a);
    }

    #[test]
    fn plus_part_examples() {
        let (r, u, v) = setup(4);
        let one = DiffPoly::constant(&r, 4, Gauss::one());
        let a = ShiftOp::from_coeffs(&r, 4, [(-1, u.clone()), (0, v.clone()), (1, one.clone())]);
        let p = a.plus_part();
        assert_eq!(p, ShiftOp::from_coeffs(&r, 4, [(0, v), (1, one)]));
        assert_eq!(p.plus_part(), p);
        let l = lax_operator(&r, 4);
        assert_eq!(l.plus_part(), l);
    }

    #[test]
    fn lax_root() {
        let (r, u, v) = setup(5);
        let l = lax_operator(&r, 5);
        let b = shift_sqrt(&l, 3).unwrap();
        assert_eq!(b.coeff(0), v.scale_rat(&rat(1, 2)));
        let expected = ConstOp::one_plus_shift_inverse(5).apply(&(&u - &v.pow(2).scale_rat(&rat(1, 4))));
        assert_eq!(b.coeff(-1), expected);
        let sq = b.mul(&b).unwrap();
        for n in -1..=2 {
            assert_eq!(sq.coeff(n), l.coeff(n), "power {n}");
        }
        assert_eq!(sq.exact_low(), Some(-2));
    }

    #[test]
    fn sqrt_rejects_wrong_shape() {
        let (r, u, _) = setup(3);
        let a = ShiftOp::from_coeffs(&r, 3, [(2, u.clone())]);
        assert!(matches!(shift_sqrt(&a, 2), Err(Error::NotMonic { .. })));
        let b = ShiftOp::lambda(&r, 3, 3);
        assert!(shift_sqrt(&b, 2).is_err());
    }

    #[test]
    fn commutator_examples() {
        let (r, u, v) = setup(4);
        let a = ShiftOp::from_coeffs(&r, 4, [(1, v.clone())]);
        assert!(a.commutator_over_ieps(&a).unwrap().is_zero());
        let b = ShiftOp::from_coeffs(&r, 4, [(0, u.clone())]);
        let c = a.commutator_over_ieps(&b).unwrap();
        assert_eq!(c.top_power(), Some(1));
        assert_eq!(c.coeff(1).at_eps_zero(), (&v * &u.dx()).truncate(3));
        let l2 = ShiftOp::lambda(&r, 4, 2);
        let l1 = ShiftOp::lambda(&r, 4, 1);
        assert!(l2.commutator_over_ieps(&l1).unwrap().is_zero());
    }

    #[test]
    fn symbol_is_multiplicative() {
        let (r, u, v) = setup(4);
        let l = lax_operator(&r, 4);
        let s = l.dispersionless_symbol();
        assert_eq!(s.coeff(2).unwrap().to_string(), "1");
        assert_eq!(s.coeff(1).unwrap(), &v.at_eps_zero());
        assert_eq!(s.coeff(0).unwrap(), &u.at_eps_zero());
        let a = ShiftOp::from_coeffs(&r, 4, [(1, &u * &v), (-1, v.dx())]);
        assert_eq!(l.mul(&a).unwrap().dispersionless_symbol(), s.mul(&a.dispersionless_symbol()));
    }

    #[test]
    fn lax_power_plus_matches_root_power() {
        let (r, u, v) = setup(4);
        let l = lax_operator(&r, 4);
        for d in 0..=2u32 {
            let p = lax_power_plus(&l, d).unwrap();
            let b = shift_sqrt(&l, 2 * d).unwrap();
            let mut acc = b.clone();
            for k in 1..(2 * d + 1) {
                acc = acc.mul_to(&b, -((2 * d - k) as i32)).unwrap();
            }
            assert_eq!(p, acc.plus_part(), "d = {d}");
            assert_eq!(lax_power_plus_with_depth(&l, d, 2 * d + 2).unwrap(), p);
        }
        let p0 = lax_power_plus(&l, 0).unwrap();
        assert_eq!(p0.coeff(0), v.scale_rat(&rat(1, 2)));
        let sym = lax_power_plus(&l, 1).unwrap().dispersionless_symbol();
        let c0 = sym.coeff(0).unwrap().set_var_zero(0);
        assert_eq!(c0, v.at_eps_zero().pow(3).scale_rat(&rat(-1, 16)));
        let _ = u;
        assert!(matches!(lax_power_plus_with_depth(&l, 2, 3), Err(Error::WindowOverflow { .. })));
    }

    #[test]
    fn window_overflow_names_depth() {
        let (r, _, _) = setup(3);
        let l = lax_operator(&r, 3);
        let b = shift_sqrt(&l, 1).unwrap();
        let err = b.mul_to(&b, -3).unwrap_err();
        assert!(matches!(err, Error::WindowOverflow { .. }));
        assert_eq!(b.mul(&b).unwrap().exact_low(), Some(0));
        let _ = rat_int(0);
    }
}
