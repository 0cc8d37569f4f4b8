use std::collections::BTreeMap;
use std::fmt;

use super::{DiffPoly, JetVariable, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Discrete KdV times `τ_d` (identified with `t²_d`).
    Tau,
    /// Extended times `t¹_d`.
    T1,
    /// `t²_d` in charts other than `(u, v)`.
    T2,
    /// A DR-hierarchy time `t^β_d`.
    DrT(u8),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlowLabel {
    pub family: Family,
    pub index: u32,
}

impl FlowLabel {
    pub fn new(family: Family, index: u32) -> Self {
        Self { family, index }
    }
}

impl fmt::Display for FlowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Tau => write!(f, "tau_{}", self.index),
            Family::T1 => write!(f, "t1_{}", self.index),
            Family::T2 => write!(f, "t2_{}", self.index),
            Family::DrT(b) => write!(f, "dr-t{}_{}", b, self.index),
            Family::Named(n) => write!(f, "{}_{}", n, self.index),
        }
    }
}

/// An evolutionary vector field `∂w^α/∂t = rhs^α`, one component per ring
/// variable. Components that are total derivatives carry their potential.
#[derive(Clone, Debug, PartialEq)]
pub struct Flow {
    pub label: FlowLabel,
    ring: Ring,
    rhs: Vec<DiffPoly>,
    potentials: Vec<Option<DiffPoly>>,
}

impl Flow {
    pub fn new(label: FlowLabel, rhs: Vec<DiffPoly>) -> Result<Self> {
        let ring = rhs.first().map(|p| p.ring().clone()).ok_or_else(|| Error::Invalid("empty flow".into()))?;
        if rhs.len() != ring.len() {
            return Err(Error::MissingFlowComponent(ring.name(rhs.len().min(ring.len() - 1)).to_string()));
        }
        if let Some(p) = rhs.iter().find(|p| p.ring() != &ring) {
            return Err(Error::RingMismatch(ring.to_string(), p.ring().to_string()));
        }
        let potentials = vec![None; rhs.len()];
        Ok(Self { label, ring, rhs, potentials })
    }

    /// Flow `∂w^α/∂t = ∂x P^α`.
    pub fn from_potentials(label: FlowLabel, potentials: Vec<DiffPoly>) -> Result<Self> {
        let rhs = potentials.iter().map(DiffPoly::dx).collect();
        let mut flow = Self::new(label, rhs)?;
        flow.potentials = potentials.into_iter().map(Some).collect();
        Ok(flow)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rhs(&self) -> &[DiffPoly] {
        &self.rhs
    }

    pub fn rhs_of(&self, var: usize) -> &DiffPoly {
        &self.rhs[var]
    }

    pub fn potential(&self, var: usize) -> Option<&DiffPoly> {
        self.potentials[var].as_ref()
    }

    pub fn truncation(&self) -> u32 {
        self.rhs.iter().map(DiffPoly::truncation).min().unwrap_or(0)
    }

    pub fn truncate(&self, trunc: u32) -> Self {
        Self {
            label: self.label.clone(),
            ring: self.ring.clone(),
            rhs: self.rhs.iter().map(|p| p.truncate(trunc)).collect(),
            potentials: self.potentials.iter().map(|p| p.as_ref().map(|p| p.truncate(trunc))).collect(),
        }
    }

    /// Attaches potentials, checking `rhs = ∂x potential` for each.
    pub fn with_potentials(mut self, potentials: Vec<Option<DiffPoly>>) -> Result<Self> {
        for (i, p) in potentials.iter().enumerate() {
            if let Some(p) = p {
                let lhs = p.dx().truncate(self.rhs[i].truncation());
                if lhs != self.rhs[i].truncate(p.truncation()) {
                    return Err(Error::Shape {
                        context: format!("flow {}", self.label),
                        detail: format!("potential of {} does not integrate the right-hand side", self.ring.name(i)),
                    });
                }
            }
        }
        self.potentials = potentials;
        Ok(self)
    }
}

/// `D_F g = Σ_{α,n} (∂g/∂w^α_n) ∂x^n F^α`.
pub fn flow_derive(flow: &Flow, g: &DiffPoly) -> Result<DiffPoly> {
    if g.ring() != flow.ring() {
        return Err(Error::RingMismatch(g.ring().to_string(), flow.ring().to_string()));
    }
    let mut by_jet: BTreeMap<JetVariable, DiffPoly> = BTreeMap::new();
    for j in g.jets() {
        by_jet.insert(j, g.partial(j));
    }
    let trunc = g.truncation().min(flow.truncation());
    let mut out = DiffPoly::zero(g.ring(), trunc);
    let mut derivs: Vec<Vec<DiffPoly>> = flow.rhs.iter().map(|r| vec![r.clone()]).collect();
    for (j, dg) in by_jet {
        let (var, order) = (j.var as usize, j.order as usize);
        let ds = &mut derivs[var];
        while ds.len() <= order {
            let next = ds.last().expect("nonempty").dx();
            ds.push(next);
        }
        out = &out + &(&dg * &ds[order]);
    }
    Ok(out)
}

/// Per-variable `D_F(G^α) − D_G(F^α)`; all zero iff the flows commute to the
/// retained order.
pub fn commutator_flows(f: &Flow, g: &Flow) -> Result<Vec<DiffPoly>> {
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch(f.ring().to_string(), g.ring().to_string()));
    }
    (0..f.ring().len())
        .map(|a| Ok(&flow_derive(f, g.rhs_of(a))? - &flow_derive(g, f.rhs_of(a))?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::RingSpec;
    use crate::scalar::Gauss;

    fn label(s: &str) -> FlowLabel {
        FlowLabel::new(Family::Named(s.into()), 0)
    }

    #[test]
    fn translation_flow() {
        let r = RingSpec::single_w();
        let w = DiffPoly::var(&r, 6, 0);
        let f = Flow::new(label("x"), vec![w.dx()]).unwrap();
        assert_eq!(flow_derive(&f, &w.pow(2)).unwrap().to_string(), "2*w*w_1");
        let zero = Flow::new(label("0"), vec![DiffPoly::zero(&r, 6)]).unwrap();
        assert!(flow_derive(&zero, &w.pow(3)).unwrap().is_zero());
    }

    #[test]
    fn burgers_component() {
        let r = RingSpec::uv();
        let u = DiffPoly::var(&r, 6, 0);
        let v = DiffPoly::var(&r, 6, 1);
        let f = Flow::new(label("b"), vec![&u * &u.dx(), v.dx_n(3)]).unwrap();
        let d = flow_derive(&f, &u.pow(2)).unwrap();
        assert_eq!(d, (&u.pow(2) * &u.dx()).scale(&Gauss::from_int(2)));
    }

    #[test]
    fn missing_component() {
        let r = RingSpec::uv();
        let u = DiffPoly::var(&r, 6, 0);
        assert!(matches!(Flow::new(label("m"), vec![u]), Err(Error::MissingFlowComponent(_))));
    }

    #[test]
    fn commutators() {
        let r = RingSpec::single_w();
        let w = DiffPoly::var(&r, 6, 0);
        let f = Flow::from_potentials(label("f"), vec![&w.pow(2) + &w.dx_n(2).mul_eps(2)]).unwrap();
        assert!(commutator_flows(&f, &f).unwrap().iter().all(DiffPoly::is_zero));
        let tr = Flow::new(label("x"), vec![w.dx()]).unwrap();
        assert!(commutator_flows(&tr, &f).unwrap().iter().all(DiffPoly::is_zero));
        let g = Flow::from_potentials(label("g"), vec![w.pow(3)]).unwrap();
        assert!(commutator_flows(&f, &g).unwrap().iter().any(|p| !p.is_zero()));
    }
}
