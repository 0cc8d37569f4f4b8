use crate::diffpoly::{DiffPoly, Family, Flow, FlowLabel, JetVariable, RingSpec};
use crate::error::Result;
use crate::scalar::{rat, Gauss, Rational};

use super::lax::dkdv_flow;
use super::miura::{chart_map, miura_transport, Chart};
use super::qcb::topological_flows;

/// The DR flows `t¹₀`, `t²₀`, `t¹₁` over `(u¹, u²)`, obtained by
/// transporting the extended hierarchy along `u = u¹`, `v = √R u²`.
pub fn dr_flows(e: u32) -> Result<[Flow; 3]> {
    let uv = RingSpec::uv();
    let t10 = Flow::from_potentials(
        FlowLabel::new(Family::T1, 0),
        vec![DiffPoly::var(&uv, e, 0), DiffPoly::var(&uv, e, 1)],
    )?;
    let (_, t11) = topological_flows(e)?;
    let t20 = dkdv_flow(0, e)?;
    let map = chart_map(Chart::Dr, e);
    Ok([miura_transport(&t10, &map)?, miura_transport(&t20, &map)?, miura_transport(&t11, &map)?])
}

/// One instance `∂P^α_{1,1}/∂u^β = D P^α_{β,0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DilatonCase {
    pub alpha: usize,
    pub beta: usize,
    pub lhs: DiffPoly,
    pub rhs: DiffPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DrReport {
    /// `ε²∂x²` coefficient of the `u¹`-linear part of `P²_{2,0}`.
    pub t1: Rational,
    /// `ε²` coefficient of the `u¹`-free part of `P²_{2,0}`.
    pub p2200_eps2: DiffPoly,
    pub p2200_eps2_expected: DiffPoly,
    pub dilaton: Vec<DilatonCase>,
}

impl DrReport {
    pub fn t1_ok(&self) -> bool {
        self.t1 == rat(1, 24)
    }

    pub fn p2200_ok(&self) -> bool {
        self.p2200_eps2 == self.p2200_eps2_expected
    }

    pub fn dilaton_ok(&self) -> bool {
        self.dilaton.iter().all(|c| c.lhs == c.rhs)
    }

    pub fn passed(&self) -> bool {
        self.t1_ok() && self.p2200_ok() && self.dilaton_ok()
    }
}

/// Checks the genus-one values and the dilaton identity on the transported
/// flows, to `ε^E`.
pub fn dr_checks(e: u32) -> Result<DrReport> {
    let [t10, t20, t11] = dr_flows(e)?;
    let ring = RingSpec::dr();
    let pot = |f: &Flow, a: usize| f.potential(a).cloned().expect("transported flows carry potentials");
    let p220 = pot(&t20, 1);
    let linear = p220.filter_terms(|m, _| m.mentions_var(0));
    let u1_xx = crate::diffpoly::DiffMonomial::jet(JetVariable::new(0, 2), 1).with_eps(2);
    let t1 = linear.coeff(&u1_xx);
    let t1 = if t1.is_real() { t1.re } else { rat(0, 1) };
    let u2 = DiffPoly::var(&ring, e, 1);
    let expected = (&(&u2 * &u2.dx_n(2)).scale(&Gauss::from_int(2)) + &u2.dx().pow(2)).scale_rat(&rat(-1, 48));
    let p2200_eps2 = p220.set_var_zero(0).eps_coeff(2);
    let base = [&t10, &t20];
    let mut dilaton = Vec::new();
    for alpha in 0..2 {
        for (beta, flow) in base.iter().enumerate() {
            dilaton.push(DilatonCase {
                alpha: alpha + 1,
                beta: beta + 1,
                lhs: pot(&t11, alpha).partial0(beta),
                rhs: pot(flow, alpha).euler_d(),
            });
        }
    }
    let p2200_eps2_expected = expected.truncate(p2200_eps2.truncation());
    Ok(DrReport { t1, p2200_eps2, p2200_eps2_expected, dilaton })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_values_and_dilaton() {
        let report = dr_checks(4).unwrap();
        assert_eq!(report.t1, rat(1, 24));
        assert_eq!(report.p2200_eps2.to_string(), "-1/24*u2*u2_2 - 1/48*u2_1^2");
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.dilaton.len(), 4);
    }

    #[test]
    fn first_components_are_trivial() {
        let [t10, t20, t11] = dr_flows(4).unwrap();
        assert_eq!(t10.potential(0).unwrap().to_string(), "u1");
        assert_eq!(t10.potential(1).unwrap().to_string(), "u2");
        assert!(t20.potential(0).unwrap().is_zero());
        assert_eq!(t11.potential(0).unwrap().to_string(), "1/2*u1^2");
    }
}
