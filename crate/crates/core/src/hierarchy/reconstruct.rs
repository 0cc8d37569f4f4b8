use std::collections::BTreeMap;

use num_traits::Zero;

use crate::diffpoly::{flow_derive, DiffMonomial, DiffPoly, Family, Flow, FlowLabel, JetVariable, Ring, RingSpec};
use crate::error::{Error, Result};
use crate::linsolve::{solve, LinearOutcome};
use crate::scalar::{double_factorial, factorial, rat_int, Gauss, Rational};

use super::miura::{chart_map, miura_transport, Chart};
use super::qcb::build_qcb;

const U: usize = 0;
const W: usize = 1;

/// Size and rank of the linear system solved at one power of `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCertificate {
    pub order: u32,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub kernel_dim: usize,
}

/// The potential `P` of `∂w/∂t¹_d = ∂x P` over `(u, w)`, with one
/// certificate per power of `ε` (empty for the base case `d = 0`).
#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction {
    pub index: u32,
    pub potential: DiffPoly,
    pub certificates: Vec<OrderCertificate>,
}

impl Reconstruction {
    pub fn is_unique(&self) -> bool {
        self.certificates.iter().all(|c| c.kernel_dim == 0)
    }
}

/// `1/((−2)^d (2d+1)!!)`, the coefficient of `w^{2d+1}` in `P` at `ε = 0`.
pub fn seed_coefficient(d: u32) -> Rational {
    let sign = if d.is_multiple_of(2) { 1 } else { -1 };
    rat_int(sign) / (rat_int(2).pow(d as i32) * double_factorial(2 * d as i64 + 1))
}

/// Monomials with `ε^order`, total jet order `order` and `odeg` `weight`.
fn ansatz(ring: &Ring, weight: u32, order: u32) -> Vec<DiffMonomial> {
    let jets: Vec<JetVariable> =
        (0..ring.len()).flat_map(|v| (0..=order).map(move |n| JetVariable::new(v, n))).collect();
    let mut out = Vec::new();
    let mut factors = Vec::new();
    fn go(
        ring: &Ring,
        jets: &[JetVariable],
        weight: u32,
        order: u32,
        factors: &mut Vec<(JetVariable, u32)>,
        eps: u32,
        out: &mut Vec<DiffMonomial>,
    ) {
        if weight == 0 {
            if order == 0 {
                out.push(DiffMonomial::from_factors(eps, factors.iter().copied()));
            }
            return;
        }
        let Some((&j, rest)) = jets.split_first() else { return };
        let w = ring.odeg(j.var as usize);
        let mut k = 0;
        loop {
            if k > 0 {
                factors.push((j, k));
            }
            go(ring, rest, weight - k * w, order - k * j.order as u32, factors, eps, out);
            if k > 0 {
                factors.pop();
            }
            k += 1;
            if k * w > weight || k * j.order as u32 > order {
                break;
            }
        }
    }
    go(ring, &jets, weight, order, &mut factors, order, &mut out);
    out
}

/// `D_t ∂x M − M_*-part of D_τ ∂x Q` for the `t²₀` flow `w_t = ∂x Q + u_x`.
fn linear_part(t20: &Flow, qx: &DiffPoly, m: &DiffPoly) -> Result<DiffPoly> {
    let mx = m.dx();
    let zero = DiffPoly::zero(m.ring(), m.truncation());
    let along = Flow::new(FlowLabel::new(Family::Named("ansatz".into()), 0), vec![zero, mx.clone()])?;
    Ok(&flow_derive(t20, &mx)? - &flow_derive(&along, qx)?)
}

fn t20_flow(q: &DiffPoly, trunc: u32) -> Result<(Flow, DiffPoly)> {
    let ring = q.ring();
    let q = q.truncate(trunc);
    let u = DiffPoly::var(ring, trunc, U);
    let qx = q.dx();
    let flow = Flow::new(FlowLabel::new(Family::T2, 0), vec![DiffPoly::zero(ring, trunc), &qx + &u.dx()])?;
    Ok((flow, qx))
}

/// Solves, power by power in `ε`, for the unique `P` of `odeg 2d+1` with
/// `P|_{ε=0,u=0} = c0·w^{2d+1}` such that `u_s = ∂x(u^{d+1}/(d+1)!)`,
/// `w_s = ∂x P` commutes with `u_t = 0`, `w_t = ∂x Q + u_x`.
pub fn reconstruct_extended_flow(q: &DiffPoly, d: u32, c0: &Rational, e: u32) -> Result<Reconstruction> {
    let ring = q.ring().clone();
    if ring.len() != 2 {
        return Err(Error::RingMismatch(ring.to_string(), RingSpec::uw().to_string()));
    }
    let w = DiffPoly::var(&ring, e, W);
    if d == 0 {
        return Ok(Reconstruction { index: 0, potential: w, certificates: Vec::new() });
    }
    let weight = 2 * d + 1;
    let seed = DiffMonomial::jet(JetVariable::new(W, 0), weight);
    let u_pot = DiffPoly::var(&ring, e, U).pow(d + 1).scale_rat(&(rat_int(1) / factorial(d + 1)));
    let mut p = DiffPoly::from_terms(&ring, e, [(seed.clone(), Gauss::real(c0.clone()))]);
    let mut certificates = Vec::new();
    for order in 0..=e {
        let (t20, qx) = t20_flow(q, order)?;
        let known = &linear_part(&t20, &qx, &p.truncate(order))? - &u_pot.truncate(order).dx_n(2);
        let rhs = -known.eps_coeff(order);
        let unknowns: Vec<DiffMonomial> = ansatz(&ring, weight, order).into_iter().filter(|m| *m != seed).collect();
        let columns: Vec<DiffPoly> = unknowns
            .iter()
            .map(|m| {
                let basis = DiffPoly::from_terms(&ring, order, [(m.clone(), Gauss::from_int(1))]);
                linear_part(&t20, &qx, &basis).map(|l| l.eps_coeff(order))
            })
            .collect::<Result<_>>()?;
        let mut rows: BTreeMap<DiffMonomial, usize> = BTreeMap::new();
        for poly in columns.iter().chain(std::iter::once(&rhs)) {
            for (m, _) in poly.terms() {
                let next = rows.len();
                rows.entry(m.clone()).or_insert(next);
            }
        }
        let mut matrix = vec![vec![Gauss::zero(); unknowns.len()]; rows.len()];
        for (j, col) in columns.iter().enumerate() {
            for (m, c) in col.terms() {
                matrix[rows[m]][j] = c.clone();
            }
        }
        let mut b = vec![Gauss::zero(); rows.len()];
        for (m, c) in rhs.terms() {
            b[rows[m]] = c.clone();
        }
        let equations = rows.len();
        match solve(matrix, b, unknowns.len()) {
            LinearOutcome::Inconsistent { .. } => return Err(Error::Inconsistent { order }),
            LinearOutcome::Solved { kernel_dim, .. } if kernel_dim > 0 => {
                return Err(Error::NotUnique { order, kernel: kernel_dim })
            }
            LinearOutcome::Solved { solution, rank, .. } => {
                for (m, x) in unknowns.iter().zip(solution) {
                    p.add_term(m.clone(), &x);
                }
                certificates.push(OrderCertificate { order, unknowns: unknowns.len(), equations, rank, kernel_dim: 0 });
            }
        }
    }
    Ok(Reconstruction { index: d, potential: p, certificates })
}

/// The extended flow `t¹_d` over `(u, v)`: `u_s = ∂x(u^{d+1}/(d+1)!)`,
/// `v_s = ∂x DK_{1,d}` with `DK_{1,d} = R P(u, R⁻¹v)`.
pub fn extended_flow(d: u32, e: u32) -> Result<(Flow, Reconstruction)> {
    let qcb = build_qcb(e);
    let rec = reconstruct_extended_flow(&qcb.q, d, &seed_coefficient(d), e)?;
    let ring = qcb.q.ring().clone();
    let u_pot = DiffPoly::var(&ring, e, U).pow(d + 1).scale_rat(&(rat_int(1) / factorial(d + 1)));
    let in_uw = Flow::from_potentials(FlowLabel::new(Family::T1, d), vec![u_pot, rec.potential.clone()])?;
    let to_uv = chart_map(Chart::Uw, e).inverse()?;
    Ok((miura_transport(&in_uw, &to_uv)?, rec))
}
