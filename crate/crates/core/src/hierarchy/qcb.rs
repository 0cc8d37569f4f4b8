use crate::diffpoly::{flow_derive, commutator_flows, DiffPoly, Family, Flow, FlowLabel, JetVariable, RingSpec};
use crate::error::{Error, Result};
use crate::evenop::{ConstOp, NamedOp};
use crate::scalar::{binomial, rat, Gauss};

use super::apply_named;

const U: usize = 0;
const W: usize = 1;

/// The data of the `t²₀`, `t¹₁` pair in the `(u, w)` chart:
/// `w_t = ∂x Q + u_x` and `w_s = ∂x(C + B)`, with `B = uw + B̃(u_x, w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Qcb {
    pub q: DiffPoly,
    pub c: DiffPoly,
    pub b: DiffPoly,
    pub b_tilde: DiffPoly,
}

fn r(p: &DiffPoly) -> DiffPoly {
    apply_named(NamedOp::R, p)
}

fn r_inv(p: &DiffPoly) -> DiffPoly {
    apply_named(NamedOp::Rinv, p)
}

/// `Q, C, B, B̃` at `θ = 1`, to `ε^E`.
pub fn build_qcb(e: u32) -> Qcb {
    let ring = RingSpec::uw();
    let u = DiffPoly::var(&ring, e, U);
    let w = DiffPoly::var(&ring, e, W);
    let rw = r(&w);
    let rw2 = rw.pow(2);
    let q = rw2.scale_rat(&rat(-1, 4));
    let c = &(&(&w * &rw2).scale_rat(&rat(-1, 8)) - &r_inv(&rw.pow(3)).scale_rat(&rat(1, 24)))
        - &(&rw * &r(&rw2).dx_n(2)).mul_eps(2).scale_rat(&rat(1, 32));
    let b = &(&(&u * &w).scale_rat(&rat(1, 2)) + &r_inv(&(&u * &rw)).scale_rat(&rat(1, 2)))
        + &(&r(&u).dx_n(2) * &rw).mul_eps(2).scale_rat(&rat(1, 8));
    let b_tilde = lower_u_jets(&(&b - &(&u * &w))).expect("B - uw is linear in u_x");
    Qcb { q, c, b, b_tilde }
}

/// Replaces every `u_n` by `u_{n−1}`; every `u` jet must have order `≥ 1`.
fn lower_u_jets(p: &DiffPoly) -> Result<DiffPoly> {
    let mut out = DiffPoly::zero(p.ring(), p.truncation());
    for (m, c) in p.terms() {
        if m.factors().iter().any(|(j, _)| j.var as usize == U && j.order == 0) {
            return Err(Error::Shape { context: "B - uw".into(), detail: format!("contains undifferentiated u: {p}") });
        }
        let lowered = m.map_jets(|j| if j.var as usize == U { JetVariable::new(U, j.order as u32 - 1) } else { j });
        out.add_term(lowered, c);
    }
    Ok(out)
}

/// `B̃(u, w) + B̃(w, u)`; zero exactly when `B̃` is antisymmetric.
pub fn b_tilde_antisymmetry_residual(qcb: &Qcb) -> DiffPoly {
    let swapped = qcb.b_tilde.permute_vars(qcb.b_tilde.ring(), &[W, U]);
    &qcb.b_tilde + &swapped
}

fn pair_flows(qcb: &Qcb) -> Result<(Flow, Flow)> {
    let ring = qcb.q.ring().clone();
    let e = qcb.q.truncation();
    let u = DiffPoly::var(&ring, e, U);
    let t20 = Flow::new(FlowLabel::new(Family::T2, 0), vec![DiffPoly::zero(&ring, e), &qcb.q.dx() + &u.dx()])?;
    let t11 = Flow::new(FlowLabel::new(Family::T1, 1), vec![&u * &u.dx(), (&qcb.c + &qcb.b).dx()])?;
    Ok((t20, t11))
}

/// `[P₁, P₂, P₃]`: the components of `D_{t²₀}D_{t¹₁}w − D_{t¹₁}D_{t²₀}w` of
/// `w`-weight 4, 2 and 0.
pub fn qcb_commutator_parts(qcb: &Qcb) -> Result<[DiffPoly; 3]> {
    let (t20, t11) = pair_flows(qcb)?;
    let comm = commutator_flows(&t20, &t11)?;
    let graded = comm[W].grade_by_var(W);
    let zero = DiffPoly::zero(comm[W].ring(), comm[W].truncation());
    let part = |k: i64| graded.get(&k).cloned().unwrap_or_else(|| zero.clone());
    if let Some(k) = graded.keys().find(|k| ![0, 2, 4].contains(*k)) {
        return Err(Error::Shape { context: "Q, C, B commutator".into(), detail: format!("unexpected w-weight {k}") });
    }
    Ok([part(4), part(2), part(0)])
}

/// `f_* g = Σ_n ∂f/∂w_n ∂x^n g`.
fn linearization(f: &DiffPoly, g: &DiffPoly) -> Result<DiffPoly> {
    let zero = DiffPoly::zero(f.ring(), g.truncation());
    let flow = Flow::new(FlowLabel::new(Family::Named("lin".into()), 0), vec![zero, g.clone()])?;
    flow_derive(&flow, f)
}

/// `P₁, P₂, P₃` from their closed expressions:
/// `∂x[C_*∂xQ − Q_*∂xC]`, `∂x[C_*u_x + B(u, ∂xQ) − Q_*∂xB]`, `∂x[B(u, u_x) − uu_x]`.
pub fn qcb_explicit_parts(qcb: &Qcb) -> Result<[DiffPoly; 3]> {
    let ring = qcb.q.ring().clone();
    let e = qcb.q.truncation();
    let u = DiffPoly::var(&ring, e, U);
    let qx = qcb.q.dx();
    let p1 = &linearization(&qcb.c, &qx)? - &linearization(&qcb.q, &qcb.c.dx())?;
    let b_at_qx = qcb.b.substitute(&[u.clone(), qx.clone()])?;
    let p2 = &(&linearization(&qcb.c, &u.dx())? + &b_at_qx) - &linearization(&qcb.q, &qcb.b.dx())?;
    let p3 = &qcb.b.substitute(&[u.clone(), u.dx()])? - &(&u * &u.dx());
    Ok([p1.dx(), p2.dx(), p3.dx()])
}

/// `K(uv + Ku·Kv) − Ku·v − u·Kv` with `K = (Λ−1)/(Λ+1)`, over `(u, v)`.
pub fn lambda_identity_residual(e: u32) -> DiffPoly {
    let ring = RingSpec::uv();
    let u = DiffPoly::var(&ring, e, 0);
    let v = DiffPoly::var(&ring, e, 1);
    let k = ConstOp::shift_ratio(e as usize);
    let (ku, kv) = (k.apply(&u), k.apply(&v));
    let lhs = k.apply(&(&(&u * &v) + &(&ku * &kv)));
    &(&lhs - &(&ku * &v)) - &(&u * &kv)
}

/// Difference of the two sides of
/// `Σ_{n, 1≤i≤n+1} C(n+1, i) ∂Q/∂w_n u_{i−1} w_{n+1−i} = −½ Rw·(Ru·w + (ε²/4)∂x R(Ru·∂x Rw))`.
pub fn q_binomial_identity_residual(qcb: &Qcb) -> DiffPoly {
    let ring = qcb.q.ring().clone();
    let e = qcb.q.truncation();
    let jet = |var: usize, n: u32| DiffPoly::jet(&ring, e, var, n);
    let mut lhs = DiffPoly::zero(&ring, e);
    for j in qcb.q.jets() {
        let n = j.order as u32;
        let dq = qcb.q.partial(j);
        for i in 1..=n + 1 {
            let term = &(&dq * &jet(U, i - 1)) * &jet(W, n + 1 - i);
            lhs = &lhs + &term.scale_rat(&binomial(n + 1, i));
        }
    }
    let u = DiffPoly::var(&ring, e, U);
    let w = DiffPoly::var(&ring, e, W);
    let (ru, rw) = (r(&u), r(&w));
    let inner = &(&ru * &w) + &r(&(&ru * &rw.dx())).dx().mul_eps(2).scale_rat(&rat(1, 4));
    let rhs = (&rw * &inner).scale_rat(&rat(-1, 2));
    &lhs - &rhs
}

/// The `t²₀` and `t¹₁` flows over `(u, v)` in closed form, to `ε^E`.
pub fn topological_flows(e: u32) -> Result<(Flow, Flow)> {
    let ring = RingSpec::uv();
    let u = DiffPoly::var(&ring, e, 0);
    let v = DiffPoly::var(&ring, e, 1);
    let v2_4u = &v.pow(2) - &u.scale(&Gauss::from_int(4));
    let q20 = r(&v2_4u).scale_rat(&rat(-1, 4));
    let dk11 = &(&(&v.pow(3).scale_rat(&rat(-1, 24)) + &(&u * &v).scale_rat(&rat(1, 2)))
        - &r(&(&r_inv(&v) * &v2_4u)).scale_rat(&rat(1, 8)))
        - &r(&(&v * &r(&v2_4u).dx_n(2))).mul_eps(2).scale_rat(&rat(1, 32));
    let t20 = Flow::from_potentials(FlowLabel::new(Family::T2, 0), vec![DiffPoly::zero(&ring, e), q20])?;
    let t11 = Flow::from_potentials(FlowLabel::new(Family::T1, 1), vec![u.pow(2).scale_rat(&rat(1, 2)), dk11])?;
    Ok((t20, t11))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::{DiffMonomial, GradeKind};
    use crate::hierarchy::dkdv_flow;

    fn w_power(k: u32) -> DiffMonomial {
        DiffMonomial::jet(JetVariable::new(W, 0), k)
    }

    #[test]
    fn leading_terms_and_degrees() {
        let qcb = build_qcb(6);
        assert_eq!(qcb.q.at_eps_zero().to_string(), "-1/4*w^2");
        assert_eq!(qcb.q.eps_coeff(2).to_string(), "-1/24*w*w_2");
        assert_eq!(qcb.c.at_eps_zero().to_string(), "-1/6*w^3");
        assert_eq!(qcb.b.at_eps_zero().to_string(), "u*w");
        assert!(qcb.q.is_odeg_homogeneous(2) && qcb.c.is_odeg_homogeneous(3) && qcb.b.is_odeg_homogeneous(3));
        for p in [&qcb.q, &qcb.c, &qcb.b] {
            assert!(p.is_even_in_eps() && p.is_degree_zero() && p.is_real());
        }
        assert_eq!(qcb.b.grade(GradeKind::Deg).len(), 1);
        assert_eq!(qcb.q.coeff(&w_power(2)), Gauss::real(rat(-1, 4)));
    }

    #[test]
    fn compatibility_conditions_hold() {
        let qcb = build_qcb(6);
        for p in qcb_commutator_parts(&qcb).unwrap() {
            assert!(p.is_zero(), "{p}");
        }
        for p in qcb_explicit_parts(&qcb).unwrap() {
            assert!(p.is_zero(), "{p}");
        }
        assert!(b_tilde_antisymmetry_residual(&qcb).is_zero());
        assert!(q_binomial_identity_residual(&qcb).is_zero());
        assert!(lambda_identity_residual(6).is_zero());
    }

    #[test]
    fn explicit_parts_track_perturbations() {
        let mut qcb = build_qcb(4);
        let ring = qcb.q.ring().clone();
        let w = DiffPoly::var(&ring, 4, W);
        let u = DiffPoly::var(&ring, 4, U);
        qcb.c = &qcb.c + &(&w.pow(2) * &w.dx_n(2)).mul_eps(2).scale_rat(&rat(1, 5));
        qcb.b = &qcb.b + &(&u * &w.dx_n(2)).mul_eps(2).scale_rat(&rat(1, 7));
        let a = qcb_commutator_parts(&qcb).unwrap();
        let b = qcb_explicit_parts(&qcb).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().any(|p| !p.is_zero()));
    }

    #[test]
    fn closed_form_pair() {
        let (t20, t11) = topological_flows(6).unwrap();
        assert_eq!(t20.rhs(), dkdv_flow(0, 6).unwrap().rhs());
        assert!(commutator_flows(&t20, &t11).unwrap().iter().all(DiffPoly::is_zero));
        let dk = t11.potential(1).unwrap();
        let v = DiffPoly::var(&RingSpec::uv(), 6, 1);
        assert_eq!(dk.at_eps_zero().set_var_zero(0), v.pow(3).scale_rat(&rat(-1, 6)));
        assert!(dk.is_odeg_homogeneous(3) && dk.is_even_in_eps() && dk.is_degree_zero());
        assert_eq!(t11.rhs_of(0).to_string(), "u*u_1");
    }
}
