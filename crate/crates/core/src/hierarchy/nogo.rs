use std::collections::BTreeSet;

use num_traits::Zero;

use crate::diffpoly::{commutator_flows, DiffMonomial, DiffPoly, Family, Flow, FlowLabel, RingSpec};
use crate::error::Result;
use crate::scalar::{rat, Gauss, Rational};

/// Commutator of the `t²₀` flow with the one-parameter `t¹₁` candidate
/// `u¹_s = ∂x((u¹)²/2 + (ε²/24)u¹_xx)`, `u²_s = ∂x(−(u²)³/6 + u¹u² + αε²u²_xx)`.
pub fn nogo_commutator(alpha: &Rational, e: u32) -> Result<Vec<DiffPoly>> {
    let ring = RingSpec::dr();
    let u1 = DiffPoly::var(&ring, e, 0);
    let u2 = DiffPoly::var(&ring, e, 1);
    let s1 = &u1.pow(2).scale_rat(&rat(1, 2)) + &u1.dx_n(2).mul_eps(2).scale_rat(&rat(1, 24));
    let s2 = &(&u2.pow(3).scale_rat(&rat(-1, 6)) + &(&u1 * &u2)) + &u2.dx_n(2).mul_eps(2).scale_rat(alpha);
    let t20 = Flow::from_potentials(
        FlowLabel::new(Family::T2, 0),
        vec![DiffPoly::zero(&ring, e), &u2.pow(2).scale_rat(&rat(-1, 4)) + &u1],
    )?;
    let t11 = Flow::from_potentials(FlowLabel::new(Family::T1, 1), vec![s1, s2])?;
    commutator_flows(&t20, &t11)
}

#[derive(Clone, Debug, PartialEq)]
pub struct NogoReport {
    /// Commutator at `α = 0`.
    pub constant: Vec<DiffPoly>,
    /// Commutator at `α = 1` minus the one at `α = 0`.
    pub slope: Vec<DiffPoly>,
    /// A coefficient that no `α` can cancel, if one exists.
    pub obstruction: Option<String>,
    /// The unique `α` cancelling every coefficient, if one exists.
    pub solution: Option<Gauss>,
    pub nonzero_at_zero: bool,
    pub nonzero_at_one_24th: bool,
}

impl NogoReport {
    /// No value of `α` makes the flows commute.
    pub fn certified(&self) -> bool {
        self.obstruction.is_some() && self.solution.is_none() && self.nonzero_at_zero && self.nonzero_at_one_24th
    }
}

/// Certifies that `c0 + α·c1 = 0` has no solution `α`.
pub fn nogo_check(e: u32) -> Result<NogoReport> {
    let constant = nogo_commutator(&rat(0, 1), e)?;
    let at_one = nogo_commutator(&rat(1, 1), e)?;
    let slope: Vec<DiffPoly> = at_one.iter().zip(&constant).map(|(a, c)| a - c).collect();
    let mut obstruction = None;
    let mut alpha: Option<(Gauss, String)> = None;
    'outer: for (k, (c0, c1)) in constant.iter().zip(&slope).enumerate() {
        let support: BTreeSet<DiffMonomial> = c0.terms().chain(c1.terms()).map(|(m, _)| m.clone()).collect();
        for m in support {
            let (a, b) = (c0.coeff(&m), c1.coeff(&m));
            let label = format!("component {}, monomial {}", k + 1, c0.monomial_text(&m, true));
            if b.is_zero() {
                obstruction = Some(format!("{label}: {a} with no α-dependence"));
                break 'outer;
            }
            let value = -(a.checked_div(&b).expect("nonzero slope"));
            match &alpha {
                Some((prev, at)) if *prev != value => {
                    obstruction = Some(format!("{label} needs α = {value}, {at} needs α = {prev}"));
                    break 'outer;
                }
                Some(_) => {}
                None => alpha = Some((value, label)),
            }
        }
    }
    let solution = if obstruction.is_none() { alpha.map(|a| a.0).or(Some(Gauss::zero())) } else { None };
    let nonzero_at_zero = constant.iter().any(|p| !p.is_zero());
    let nonzero_at_one_24th = nogo_commutator(&rat(1, 24), e)?.iter().any(|p| !p.is_zero());
    Ok(NogoReport { constant, slope, obstruction, solution, nonzero_at_zero, nonzero_at_one_24th })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_alpha_commutes() {
        let report = nogo_check(4).unwrap();
        assert!(report.certified(), "{report:?}");
        assert!(report.slope.iter().any(|p| !p.is_zero()));
    }

    #[test]
    fn commutator_is_affine_in_alpha() {
        let c0 = nogo_commutator(&rat(0, 1), 4).unwrap();
        let c1 = nogo_commutator(&rat(1, 1), 4).unwrap();
        let c3 = nogo_commutator(&rat(3, 1), 4).unwrap();
        for k in 0..2 {
            let predicted = &c0[k] + &(&c1[k] - &c0[k]).scale_rat(&rat(3, 1));
            assert_eq!(predicted, c3[k]);
        }
    }
}
