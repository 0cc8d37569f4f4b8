//! Genus-zero data of the extended 2-spin theory (vector potential, oriented
//! associativity, principal densities) and the generating series relations
//! among `I₁, I₂, X̂, L̂, T̂`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::diffpoly::{DiffPoly, Ring};
use crate::error::{Error, Result};
use crate::evenop::{make_named, NamedOp};
use crate::scalar::{factorial, rat, rat_int, Gauss, Rational};
use crate::series::{Series, TaylorSeries};

/// Polynomial in `(v¹, v²)` with rational coefficients, keyed by exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((a, b), c);
        p
    }

    /// `v¹` (`var = 0`) or `v²` (`var = 1`).
    pub fn var(var: usize) -> Self {
        if var == 0 {
            Self::monomial(Rational::one(), 1, 0)
        } else {
            Self::monomial(Rational::one(), 0, 1)
        }
    }

    fn add_term(&mut self, e: (u32, u32), c: Rational) {
        let sum = self.terms.remove(&e).unwrap_or_else(Rational::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * r);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            for ((p, q), d) in &other.terms {
                out.add_term((a + p, b + q), c * d);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            let (n, e) = if var == 0 { (a, (a.wrapping_sub(1), b)) } else { (b, (a, b.wrapping_sub(1))) };
            if n > 0 {
                out.add_term(e, c * rat_int(n as i64));
            }
        }
        out
    }

    /// Antiderivative in `var` vanishing at `var = 0`.
    pub fn integrate(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            let (n, e) = if var == 0 { (a + 1, (a + 1, b)) } else { (b + 1, (a, b + 1)) };
            out.add_term(e, c / rat_int(n as i64));
        }
        out
    }

    /// Sets `var = 0`.
    pub fn restrict_zero(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            if (var == 0 && a == 0) || (var == 1 && b == 0) {
                out.add_term((a, b), c.clone());
            }
        }
        out
    }

    pub fn mentions(&self, var: usize) -> bool {
        self.terms.keys().any(|&(a, b)| if var == 0 { a > 0 } else { b > 0 })
    }

    /// The same polynomial with `v¹, v²` read as the first two variables of
    /// `ring`.
    pub fn to_diffpoly(&self, ring: &Ring, trunc: u32) -> DiffPoly {
        let (x, y) = (DiffPoly::var(ring, trunc, 0), DiffPoly::var(ring, trunc, 1));
        self.terms.iter().fold(DiffPoly::zero(ring, trunc), |acc, (&(a, b), c)| {
            &acc + &(&x.pow(a) * &y.pow(b)).scale_rat(c)
        })
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (name, e) in [("v1", a), ("v2", b)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            let body = match (factors.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => factors.join("*"),
                (false, false) => format!("{mag}*{}", factors.join("*")),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Components `F¹, F²` of a vector potential in `(v¹, v²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorPotential {
    pub components: [Poly2; 2],
}

impl VectorPotential {
    /// `c^α_{βγ} = ∂²F^α/∂v^β∂v^γ` (indices from 0).
    pub fn structure_constant(&self, alpha: usize, beta: usize, gamma: usize) -> Poly2 {
        self.components[alpha].partial(beta).partial(gamma)
    }
}

/// `F¹ = (v¹)²/2`, `F² = v¹v² − (v²)³/12`.
pub fn potential_extended_2spin() -> VectorPotential {
    let v1 = Poly2::var(0);
    let v2 = Poly2::var(1);
    VectorPotential {
        components: [v1.pow(2).scale(&rat(1, 2)), v1.mul(&v2).sub(&v2.pow(3).scale(&rat(1, 12)))],
    }
}

/// Failed instances of the unit axiom and of oriented associativity.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AssociativityReport {
    pub failures: Vec<String>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `c^α_{1β} = δ^α_β` and the symmetry of
/// `Σ_μ c^α_{βμ} c^μ_{γδ}` in `(β, γ)`.
pub fn oriented_associativity_check(p: &VectorPotential) -> AssociativityReport {
    let mut failures = Vec::new();
    for alpha in 0..2 {
        for beta in 0..2 {
            let c = p.structure_constant(alpha, 0, beta);
            let expected = Poly2::constant(if alpha == beta { Rational::one() } else { Rational::zero() });
            if c != expected {
                failures.push(format!("unit: c^{}_1{} = {c}, expected {expected}", alpha + 1, beta + 1));
            }
        }
    }
    let prod = |alpha: usize, beta: usize, gamma: usize, delta: usize| {
        (0..2).fold(Poly2::zero(), |acc, mu| {
            acc.add(&p.structure_constant(alpha, beta, mu).mul(&p.structure_constant(mu, gamma, delta)))
        })
    };
    for alpha in 0..2 {
        for delta in 0..2 {
            let lhs = prod(alpha, 0, 1, delta);
            let rhs = prod(alpha, 1, 0, delta);
            if lhs != rhs {
                failures.push(format!("associativity (α={}, δ={}): {lhs} != {rhs}", alpha + 1, delta + 1));
            }
        }
    }
    AssociativityReport { failures }
}

/// The densities `ψ^α_{β,d}` for both `α`, indices from 0.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalDensity {
    pub beta: usize,
    pub d: u32,
    pub components: [Poly2; 2],
}

/// Integrates the gradient `(g1, g2)` to the potential vanishing at the
/// origin, in both orders.
fn integrate_gradient(g: &[Poly2; 2], context: impl Fn() -> String) -> Result<Poly2> {
    if g[0].partial(1) != g[1].partial(0) {
        return Err(Error::Integrability(context()));
    }
    let first = g[0].integrate(0);
    let by_v1 = first.add(&g[1].sub(&first.partial(1)).integrate(1));
    let second = g[1].integrate(1);
    let by_v2 = second.add(&g[0].sub(&second.partial(0)).integrate(0));
    if by_v1 != by_v2 {
        return Err(Error::Integrability(format!("{}: integration orders disagree", context())));
    }
    Ok(by_v1)
}

/// `ψ^α_{β,0} = ∂F^α/∂v^β` and `∂ψ^α_{β,d}/∂v^γ = c^α_{γμ} ψ^μ_{β,d−1}`,
/// `ψ(0) = 0` for `d ≥ 1`.
pub fn principal_density(p: &VectorPotential, beta: usize, d: u32) -> Result<PrincipalDensity> {
    let mut psi = [p.components[0].partial(beta), p.components[1].partial(beta)];
    for k in 1..=d {
        let mut next = [Poly2::zero(), Poly2::zero()];
        for (alpha, slot) in next.iter_mut().enumerate() {
            let grad = [0, 1].map(|gamma| {
                (0..2).fold(Poly2::zero(), |acc, mu| acc.add(&p.structure_constant(alpha, gamma, mu).mul(&psi[mu])))
            });
            *slot = integrate_gradient(&grad, || format!("psi^{}_{{{},{k}}}", alpha + 1, beta + 1))?;
        }
        psi = next;
    }
    Ok(PrincipalDensity { beta, d, components: psi })
}

/// `(v²)^{2d+β}/((−2)^{d+β−1}(2d+β)!!)` (with `β ∈ {1, 2}`): `ψ²_{β,d}` at `v¹ = 0`.
pub fn density_closed_form_v2(beta: u32, d: u32) -> Poly2 {
    let n = 2 * d + beta;
    let e = d + beta - 1;
    let sign = if e.is_multiple_of(2) { 1 } else { -1 };
    let c = rat_int(sign) / (rat_int(2).pow(e as i32) * crate::scalar::double_factorial(n as i64));
    Poly2::monomial(c, 0, n)
}

/// `(v¹)^{d+1}/(d+1)!`: `ψ¹_{1,d}`.
pub fn density_closed_form_v1(d: u32) -> Poly2 {
    Poly2::monomial(rat_int(1) / factorial(d + 1), d + 1, 0)
}

/// `sec(z/2)` through `z^order`.
pub fn i1_series(order: usize) -> TaylorSeries {
    TaylorSeries::cos_half(order).inv().expect("cos(0) = 1")
}

/// `2(e^{iz}−1)/((e^{iz/2}−e^{−iz/2})(e^{iz}+1))` over ℚ(i).
pub fn i1_from_exponentials(order: usize) -> Series<Gauss> {
    let n = order + 1;
    let e = |c: Gauss| Series::<Gauss>::exp_linear(&c, n);
    let one = Series::<Gauss>::one(n);
    let half_i = Gauss::new(rat(0, 1), rat(1, 2));
    let num = e(Gauss::i()).sub(&one).shift_down(1).expect("vanishes at 0");
    let sine = e(half_i.clone()).sub(&e(-half_i)).shift_down(1).expect("vanishes at 0");
    let den = sine.mul(&e(Gauss::i()).add(&one).truncate(order));
    num.div(&den).expect("nonzero constant term").scale(&Gauss::from_int(2))
}

/// `I₂ = L̂·T̂` through `z^order` (`order` even).
pub fn i2_series(order: usize) -> TaylorSeries {
    let g = order / 2;
    make_named(NamedOp::L, g).hat_series().mul(&make_named(NamedOp::T, g).hat_series())
}

/// `(iz/(e^{iz/2}−e^{−iz/2}))·√X̂`, the branch with value 1 at 0.
pub fn i2_from_exponentials(order: usize) -> Series<Gauss> {
    let n = order + 1;
    let e = |c: Gauss| Series::<Gauss>::exp_linear(&c, n);
    let half_i = Gauss::new(rat(0, 1), rat(1, 2));
    let sine = e(half_i.clone()).sub(&e(-half_i)).shift_down(1).expect("vanishes at 0");
    let prefactor = Series::<Gauss>::one(order).scale(&Gauss::i()).div(&sine).expect("nonzero constant term");
    let x = make_named(NamedOp::X, order / 2).hat_series().to_gauss();
    prefactor.mul(&x.sqrt().expect("X̂(0) = 1"))
}

/// One relation of the series report.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCheck {
    pub id: &'static str,
    pub lhs: String,
    pub rhs: String,
}

impl SeriesCheck {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn check(id: &'static str, lhs: impl fmt::Display, rhs: impl fmt::Display) -> SeriesCheck {
    SeriesCheck { id, lhs: lhs.to_string(), rhs: rhs.to_string() }
}

/// The relations `I₁ = X̂L̂`, `I₂ = T̂⁻¹I₁`, `I₂² = L̂I₁`, the closed forms of
/// `I₁, I₂`, `I_{2,1}`, and the ODE of `T̂`, all through `z^{2G}`.
pub fn series_relations_check(max_g: usize) -> Vec<SeriesCheck> {
    let n = 2 * max_g;
    let hat = |op: NamedOp| make_named(op, max_g).hat_series();
    let (l, x, t, r) = (hat(NamedOp::L), hat(NamedOp::X), hat(NamedOp::T), hat(NamedOp::R));
    let i1 = i1_series(n);
    let i2 = i2_series(n);
    let mut out = vec![
        check("I1 = X*L", &i1, x.mul(&l)),
        check("I2 = T^-1*I1", &i2, t.inv().expect("unit").mul(&i1)),
        check("I2^2 = L*I1", i2.mul(&i2), l.mul(&i1)),
        check("I1 closed form", i1.to_gauss(), i1_from_exponentials(n)),
        check("I2 closed form", i2.to_gauss(), i2_from_exponentials(n)),
        check("I2 g=1", i2.coeff(2), intersection_constant("I21").expect("registered")),
    ];
    let half = rat(1, 2);
    let bracket = Series::one(n)
        .scale(&-half.clone())
        .add(&r.inv().expect("unit").scale(&half))
        .add(&r.shift_up(2).truncate(n).scale(&rat(1, 8)));
    let rate = bracket.shift_down(1).expect("bracket vanishes at 0");
    let lhs = t.derivative().truncate(n.saturating_sub(2));
    let rhs = rate.truncate(n - 1).mul(&t.truncate(n - 1)).truncate(n.saturating_sub(2));
    out.push(check("T ODE", lhs, rhs));
    out
}

/// Constants fixed by the underlying intersection theory.
pub fn intersection_constants() -> BTreeMap<&'static str, Rational> {
    BTreeMap::from([("I21", rat(1, 12)), ("L1", rat(1, 24)), ("T1", rat(1, 24)), ("P2200_eps2_uu2", rat(-1, 24)), ("P2200_eps2_u1u1", rat(-1, 48))])
}

pub fn intersection_constant(name: &str) -> Option<Rational> {
    intersection_constants().get(name).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potential_structure_constants() {
        let f = potential_extended_2spin();
        assert_eq!(f.structure_constant(1, 1, 1).to_string(), "-1/2*v2");
        assert!(!f.components[0].mentions(1));
        assert!(oriented_associativity_check(&f).passed());
    }

    #[test]
    fn degenerate_potential_fails_unit() {
        let f = VectorPotential { components: [Poly2::var(0), Poly2::var(1)] };
        let report = oriented_associativity_check(&f);
        assert!(report.failures.iter().any(|s| s.starts_with("unit")));
    }

    #[test]
    fn constant_structure_reduces_to_commuting_matrices() {
        let v1 = Poly2::var(0);
        let v2 = Poly2::var(1);
        let f = VectorPotential {
            components: [v1.pow(2).scale(&rat(1, 2)), v1.mul(&v2).add(&v2.pow(2).scale(&rat(3, 2)))],
        };
        assert!(oriented_associativity_check(&f).passed());
    }

    #[test]
    fn densities_match_closed_forms() {
        let f = potential_extended_2spin();
        let p20 = principal_density(&f, 1, 0).unwrap();
        assert_eq!(p20.components[1].to_string(), "v1 - 1/4*v2^2");
        for d in 0..=3 {
            let p1 = principal_density(&f, 0, d).unwrap();
            assert_eq!(p1.components[0], density_closed_form_v1(d));
            for beta in 1..=2u32 {
                let p = principal_density(&f, beta as usize - 1, d).unwrap();
                assert_eq!(p.components[1].restrict_zero(0), density_closed_form_v2(beta, d), "beta {beta} d {d}");
            }
        }
    }

    #[test]
    fn series_values() {
        let i1: Vec<Rational> = i1_series(4).even_coeffs();
        assert_eq!(i1, vec![rat(1, 1), rat(1, 8), rat(5, 384)]);
        assert_eq!(i2_series(4).coeff(4), rat(1, 160));
        for c in series_relations_check(5) {
            assert!(c.passed(), "{}: {} vs {}", c.id, c.lhs, c.rhs);
        }
    }
}
