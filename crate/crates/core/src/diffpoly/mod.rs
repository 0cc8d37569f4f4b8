//! The ring of differential polynomials with ε-truncation.
//!
//! A [`DiffPoly`] is a finite sum of Gaussian-rational multiples of
//! [`DiffMonomial`]s, truncated after a fixed power `ε^E`. Binary operations
//! require identical ring descriptors and keep the smaller truncation.

mod calculus;
mod flow;
mod grade;
mod monomial;
mod ring;
mod subst;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Gauss, Rational};

pub use calculus::LinearOperatorExpr;
pub use flow::{commutator_flows, flow_derive, Family, Flow, FlowLabel};
pub use grade::{GradeKind, GradeReport};
pub use monomial::{DiffMonomial, JetVariable};
pub use ring::{Ring, RingSpec};
pub use subst::linear_substitute;

/// Default truncation: terms through `ε^6` are retained.
pub const DEFAULT_TRUNCATION: u32 = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct DiffPoly {
    ring: Ring,
    trunc: u32,
    terms: BTreeMap<DiffMonomial, Gauss>,
}

impl DiffPoly {
    pub fn zero(ring: &Ring, trunc: u32) -> Self {
        Self { ring: ring.clone(), trunc, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, trunc: u32, c: impl Into<Gauss>) -> Self {
        Self::from_terms(ring, trunc, [(DiffMonomial::one(), c.into())])
    }

    /// The jet `w^var_order`.
    pub fn jet(ring: &Ring, trunc: u32, var: usize, order: u32) -> Self {
        Self::from_terms(ring, trunc, [(DiffMonomial::jet(JetVariable::new(var, order), 1), Gauss::one())])
    }

    pub fn var(ring: &Ring, trunc: u32, var: usize) -> Self {
        Self::jet(ring, trunc, var, 0)
    }

    /// Looks up a variable by name, e.g. `"v"`.
    pub fn named(ring: &Ring, trunc: u32, name: &str) -> Result<Self> {
        let var = ring.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, trunc, var))
    }

    /// `ε^k`.
    pub fn eps(ring: &Ring, trunc: u32, k: u32) -> Self {
        Self::from_terms(ring, trunc, [(DiffMonomial::one().with_eps(k), Gauss::one())])
    }

    pub fn from_terms(
        ring: &Ring,
        trunc: u32,
        terms: impl IntoIterator<Item = (DiffMonomial, Gauss)>,
    ) -> Self {
        let mut p = Self::zero(ring, trunc);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Highest retained power of ε.
    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, &Gauss)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &DiffMonomial) -> Gauss {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Adds `c·m`, dropping it if `m` is beyond the truncation.
    pub fn add_term(&mut self, m: DiffMonomial, c: &Gauss) {
        if m.eps() > self.trunc || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.truncate(self.trunc.min(other.trunc));
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.truncate(self.trunc.min(other.trunc));
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = Self::zero(&self.ring, trunc);
        for (ma, ca) in &self.terms {
            if ma.eps() > trunc {
                break;
            }
            for (mb, cb) in &other.terms {
                if ma.eps() + mb.eps() > trunc {
                    break;
                }
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Gauss) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring, self.trunc);
        }
        Self {
            ring: self.ring.clone(),
            trunc: self.trunc,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        self.scale(&Gauss::real(r.clone()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(&self.ring, self.trunc, Gauss::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by `ε^k`, dropping terms pushed past the truncation.
    pub fn mul_eps(&self, k: u32) -> Self {
        Self::from_terms(
            &self.ring,
            self.trunc,
            self.terms.iter().map(|(m, c)| (m.with_eps(m.eps() + k), c.clone())),
        )
    }

    /// Divides by `ε^k`; fails if any term has a lower ε power. The
    /// truncation drops by `k`.
    pub fn div_eps(&self, k: u32) -> Result<Self> {
        if k > self.trunc {
            return Err(Error::Invalid(format!("cannot divide by ε^{k} at truncation {}", self.trunc)));
        }
        let mut out = Self::zero(&self.ring, self.trunc - k);
        for (m, c) in &self.terms {
            if m.eps() < k {
                return Err(Error::Invalid(format!("term {} is not divisible by ε^{k}", self.single(m, c))));
            }
            out.add_term(m.with_eps(m.eps() - k), c);
        }
        Ok(out)
    }

    /// Restricts to terms with ε power at most `trunc` (never raises it).
    pub fn truncate(&self, trunc: u32) -> Self {
        let trunc = trunc.min(self.trunc);
        Self {
            ring: self.ring.clone(),
            trunc,
            terms: self.terms.iter().filter(|(m, _)| m.eps() <= trunc).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Same terms, declared to a different truncation. Terms beyond a lower
    /// truncation are dropped; raising it asserts the missing orders vanish.
    pub fn with_truncation(&self, trunc: u32) -> Self {
        Self {
            ring: self.ring.clone(),
            trunc,
            terms: self.terms.iter().filter(|(m, _)| m.eps() <= trunc).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// The `ε^k` part, with `ε^k` kept in the monomials.
    pub fn eps_part(&self, k: u32) -> Self {
        Self {
            ring: self.ring.clone(),
            trunc: self.trunc,
            terms: self.terms.iter().filter(|(m, _)| m.eps() == k).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// The `ε^k` coefficient as an ε-free polynomial.
    pub fn eps_coeff(&self, k: u32) -> Self {
        Self {
            ring: self.ring.clone(),
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.eps() == k)
                .map(|(m, c)| (m.with_eps(0), c.clone()))
                .collect(),
        }
    }

    /// Sets ε = 0.
    pub fn at_eps_zero(&self) -> Self {
        self.eps_coeff(0)
    }

    /// Sets every jet of `var` to zero.
    pub fn set_var_zero(&self, var: usize) -> Self {
        Self {
            ring: self.ring.clone(),
            trunc: self.trunc,
            terms: self.terms.iter().filter(|(m, _)| !m.mentions_var(var)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn filter_terms(&self, mut keep: impl FnMut(&DiffMonomial, &Gauss) -> bool) -> Self {
        Self {
            ring: self.ring.clone(),
            trunc: self.trunc,
            terms: self.terms.iter().filter(|(m, c)| keep(m, c)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Gauss) -> Gauss) -> Self {
        Self::from_terms(&self.ring, self.trunc, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Same terms over another ring with the same number of variables.
    pub fn rename_ring(&self, ring: &Ring) -> Result<Self> {
        if ring.len() != self.ring.len() {
            return Err(Error::RingMismatch(self.ring.to_string(), ring.to_string()));
        }
        Ok(Self { ring: ring.clone(), trunc: self.trunc, terms: self.terms.clone() })
    }

    /// Re-labels variables: variable `i` becomes `perm[i]` of `ring`.
    pub fn permute_vars(&self, ring: &Ring, perm: &[usize]) -> Self {
        Self::from_terms(
            ring,
            self.trunc,
            self.terms
                .iter()
                .map(|(m, c)| (m.map_jets(|j| JetVariable::new(perm[j.var as usize], j.order as u32)), c.clone())),
        )
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Gauss::is_real)
    }

    pub fn real_part(&self) -> Self {
        self.map_coeffs(|c| Gauss::real(c.re.clone()))
    }

    pub fn imag_part(&self) -> Self {
        self.map_coeffs(|c| Gauss::real(c.im.clone()))
    }

    /// Only even powers of ε occur.
    pub fn is_even_in_eps(&self) -> bool {
        self.terms.keys().all(|m| m.eps() % 2 == 0)
    }

    /// Membership in the degree-zero part: every term has ε power equal to
    /// its total jet order.
    pub fn is_degree_zero(&self) -> bool {
        self.terms.keys().all(|m| m.deg() == 0)
    }

    /// Every term has `odeg = weight`.
    pub fn is_odeg_homogeneous(&self, weight: u32) -> bool {
        let w = self.ring.odeg_weights();
        self.terms.keys().all(|m| m.odeg(w) == weight)
    }

    pub fn max_jet_order(&self) -> Option<u16> {
        self.terms.keys().filter_map(DiffMonomial::max_order).max()
    }

    pub fn max_eps(&self) -> Option<u32> {
        self.terms.keys().map(DiffMonomial::eps).max()
    }

    fn single(&self, m: &DiffMonomial, c: &Gauss) -> Self {
        Self::from_terms(&self.ring, self.trunc, [(m.clone(), c.clone())])
    }

    /// Canonical text of a monomial without its coefficient; empty for 1.
    pub fn monomial_text(&self, m: &DiffMonomial, with_eps: bool) -> String {
        let mut parts = Vec::new();
        if with_eps {
            match m.eps() {
                0 => {}
                1 => parts.push("ep".to_string()),
                k => parts.push(format!("ep^{k}")),
            }
        }
        for (j, e) in m.factors() {
            let mut s = self.ring.name(j.var as usize).to_string();
            if j.order > 0 {
                s.push_str(&format!("_{}", j.order));
            }
            if *e > 1 {
                s.push_str(&format!("^{e}"));
            }
            parts.push(s);
        }
        parts.join("*")
    }

    /// Terms grouped by ε power, each as `(monomial text without ε, coeff)`.
    pub fn eps_groups(&self) -> Vec<(u32, Vec<(String, Gauss)>)> {
        let mut groups: Vec<(u32, Vec<(String, Gauss)>)> = Vec::new();
        for (m, c) in &self.terms {
            let text = self.monomial_text(m, false);
            match groups.last_mut() {
                Some((k, g)) if *k == m.eps() => g.push((text, c.clone())),
                _ => groups.push((m.eps(), vec![(text, c.clone())])),
            }
        }
        groups
    }
}

/// Renders one signed term; returns (is_negative, magnitude text).
fn term_text(coeff: &Gauss, mono: &str) -> (bool, String) {
    let with_mono = |c: String| if mono.is_empty() { c } else { format!("{c}*{mono}") };
    if coeff.im.is_zero() {
        let neg = coeff.re.is_negative();
        let a = coeff.re.abs();
        let s = if a.is_one() && !mono.is_empty() { mono.to_string() } else { with_mono(a.to_string()) };
        (neg, s)
    } else if coeff.re.is_zero() {
        let neg = coeff.im.is_negative();
        let b = coeff.im.abs();
        let i_text = if b.is_one() { "I".to_string() } else { format!("{b}*I") };
        (neg, with_mono(i_text))
    } else {
        (false, with_mono(format!("({coeff})")))
    }
}

/// Canonical printing: ascending ε power, then monomial order, reduced
/// coefficients, `" + "`/`" - "` separators.
impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, body) = term_text(c, &self.monomial_text(m, true));
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<'a> $tr<&'a DiffPoly> for &'a DiffPoly {
            type Output = DiffPoly;
            /// Panics if the rings differ; use the `try_` form to get an error.
            fn $method(self, rhs: &DiffPoly) -> DiffPoly {
                self.$try(rhs).expect("differential polynomials over different rings")
            }
        }
        impl $tr<DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $method(self, rhs: DiffPoly) -> DiffPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $method(self, rhs: &DiffPoly) -> DiffPoly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<DiffPoly> for &'a DiffPoly {
            type Output = DiffPoly;
            fn $method(self, rhs: DiffPoly) -> DiffPoly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        self.scale(&-Gauss::one())
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn uv(e: u32) -> (Ring, DiffPoly, DiffPoly) {
        let r = RingSpec::uv();
        let u = DiffPoly::var(&r, e, 0);
        let v = DiffPoly::var(&r, e, 1);
        (r, u, v)
    }

    #[test]
    fn basic_arithmetic() {
        let (r, u, v) = uv(6);
        assert_eq!((&v * &v).to_string(), "v^2");
        let evx = DiffPoly::jet(&r, 6, 1, 1).mul_eps(1);
        assert_eq!(&(&u + &evx) - &evx, u);
        let p = &v * &v;
        let q = &u * &v;
        assert!(p.is_odeg_homogeneous(2) && q.is_odeg_homogeneous(3));
        assert!((&p * &q).is_odeg_homogeneous(5));
    }

    #[test]
    fn truncation_takes_minimum() {
        let (r, _, v) = uv(6);
        let e4 = DiffPoly::eps(&r, 4, 3);
        let p = &v.mul_eps(2) * &e4;
        assert!(p.is_zero());
        assert_eq!(p.truncation(), 4);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let (_, u, _) = uv(6);
        let w = DiffPoly::var(&RingSpec::single_w(), 6, 0);
        assert!(matches!(u.try_add(&w), Err(Error::RingMismatch(..))));
        assert!(u.try_mul(&w).is_err());
    }

    #[test]
    fn printing() {
        let (r, u, v) = uv(6);
        let p = &(&v * &v).scale_rat(&rat(-1, 4)) + &u;
        assert_eq!(p.to_string(), "-1/4*v^2 + u");
        let q = DiffPoly::jet(&r, 6, 0, 1).mul_eps(1).scale(&Gauss::new(rat_int(0), rat(1, 2)));
        assert_eq!(q.to_string(), "1/2*I*ep*u_1");
        let c = DiffPoly::constant(&r, 6, Gauss::new(rat_int(1), rat_int(-2)));
        assert_eq!(c.to_string(), "(1-2*I)");
        assert_eq!(DiffPoly::zero(&r, 6).to_string(), "0");
        assert_eq!((-&DiffPoly::jet(&r, 6, 1, 2).mul_eps(2)).to_string(), "-ep^2*v_2");
    }

    #[test]
    fn eps_division() {
        let (_, u, _) = uv(6);
        let p = u.mul_eps(2);
        assert_eq!(p.div_eps(2).unwrap(), u.truncate(4));
        assert!(u.div_eps(1).is_err());
    }
}
