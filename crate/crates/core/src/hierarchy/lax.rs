use crate::diffpoly::{DiffPoly, Family, Flow, FlowLabel, RingSpec};
use crate::error::{Error, Result};
use crate::evenop::ConstOp;
use crate::scalar::{double_factorial, factorial, rat_int, Gauss, Rational};
use crate::shiftring::{lax_operator, lax_power_plus};

fn shape(d: u32, detail: impl Into<String>) -> Error {
    Error::Shape { context: format!("tau_{d} flow"), detail: detail.into() }
}

/// `∂L/∂τ_d = (iε)⁻¹ (2^d/(2d+1)!!) [L^{d+1/2}_+, L]` over `(u, v)`, to `ε^E`.
///
/// The `v` component carries its potential `DK_{2,d}`.
pub fn dkdv_flow(d: u32, e: u32) -> Result<Flow> {
    let ring = RingSpec::uv();
    let lax = lax_operator(&ring, e + 1);
    let plus = lax_power_plus(&lax, d)?;
    let bracket = plus.commutator_over_ieps(&lax)?;
    let norm = Gauss::real(rat_int(1i64 << d) / double_factorial(2 * d as i64 + 1));
    let rhs = bracket.scale(&norm);
    for (n, c) in rhs.coeffs() {
        match n {
            1 => {}
            0 => return Err(shape(d, format!("u component is nonzero: {c}"))),
            _ => return Err(shape(d, format!("Λ^{n} coefficient is nonzero: {c}"))),
        }
    }
    let c = rhs.coeff(1);
    let v_t = ConstOp::one_plus_shift_inverse(e as usize).apply(&c.scale(&Gauss::from_int(2)));
    if !v_t.is_real() {
        return Err(shape(d, format!("v component has imaginary part {}", v_t.imag_part())));
    }
    if !v_t.is_even_in_eps() {
        return Err(shape(d, "v component has odd powers of ε"));
    }
    let dk = v_t.integrate_x()?;
    if !dk.is_degree_zero() {
        return Err(shape(d, format!("potential is not of degree zero: {dk}")));
    }
    if !dk.is_odeg_homogeneous(2 * d + 2) {
        return Err(shape(d, format!("potential is not of odeg {}: {dk}", 2 * d + 2)));
    }
    Flow::from_potentials(FlowLabel::new(Family::Tau, d), vec![DiffPoly::zero(&ring, e), dk])
}

/// `τ_0, …, τ_{max_d}`.
pub fn lax_flows(max_d: u32, e: u32) -> Result<Vec<Flow>> {
    use rayon::prelude::*;
    (0..=max_d).into_par_iter().map(|d| dkdv_flow(d, e)).collect()
}

/// `v^{2d+2}/((−4)^{d+1}(d+1)!)`.
pub fn dispersionless_dk2_coefficient(d: u32) -> Rational {
    let sign = if (d + 1).is_multiple_of(2) { 1 } else { -1 };
    rat_int(sign) / (rat_int(4).pow(d as i32 + 1) * factorial(d + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::commutator_flows;
    use crate::evenop::NamedOp;
    use crate::hierarchy::apply_named;
    use crate::scalar::rat;

    #[test]
    fn first_flow_closed_form() {
        let f = dkdv_flow(0, 6).unwrap();
        let r = RingSpec::uv();
        let u = DiffPoly::var(&r, 6, 0);
        let v = DiffPoly::var(&r, 6, 1);
        let expected = apply_named(NamedOp::R, &(&v.pow(2) - &u.scale(&Gauss::from_int(4)))).scale_rat(&rat(-1, 4));
        assert_eq!(f.potential(1).unwrap(), &expected);
        assert!(f.rhs_of(0).is_zero());
        assert!(f.potential(1).unwrap().to_string().starts_with("-1/4*v^2 + u"));
    }

    #[test]
    fn dispersionless_limits() {
        for d in 0..=2 {
            let f = dkdv_flow(d, 2).unwrap();
            let p = f.potential(1).unwrap().at_eps_zero().set_var_zero(0);
            let v = DiffPoly::var(&RingSpec::uv(), 2, 1);
            assert_eq!(p, v.pow(2 * d + 2).scale_rat(&dispersionless_dk2_coefficient(d)), "d = {d}");
        }
        assert_eq!(dispersionless_dk2_coefficient(1), rat(1, 32));
    }

    #[test]
    fn low_flows_commute() {
        let f0 = dkdv_flow(0, 4).unwrap();
        let f1 = dkdv_flow(1, 4).unwrap();
        assert!(commutator_flows(&f0, &f1).unwrap().iter().all(DiffPoly::is_zero));
        assert!(f1.potential(1).unwrap().is_real());
    }
}
