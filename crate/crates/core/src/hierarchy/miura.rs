use std::fmt;
use std::str::FromStr;

use crate::diffpoly::{linear_substitute, DiffPoly, Flow, Ring, RingSpec};
use crate::error::{Error, Result};
use crate::evenop::{EvenOp, NamedOp};

use super::named;

/// A diagonal change of variables: source variable `α` equals
/// `images[α].0` applied to target variable `images[α].1`.
#[derive(Clone, Debug, PartialEq)]
pub struct MiuraMap {
    source: Ring,
    target: Ring,
    images: Vec<(EvenOp, usize)>,
}

impl MiuraMap {
    pub fn new(source: &Ring, target: &Ring, images: Vec<(EvenOp, usize)>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::IncompleteMap(source.name(images.len().min(source.len() - 1)).to_string()));
        }
        let mut hit = vec![false; target.len()];
        for (_, t) in &images {
            if *t >= target.len() || std::mem::replace(&mut hit[*t], true) {
                return Err(Error::IncompleteMap(format!("target variable {t}")));
            }
        }
        if let Some(t) = hit.iter().position(|h| !h) {
            return Err(Error::IncompleteMap(target.name(t).to_string()));
        }
        Ok(Self { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(ring: &Ring, max_g: usize) -> Self {
        let images = (0..ring.len()).map(|i| (EvenOp::identity(max_g), i)).collect();
        Self { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    /// Source polynomial rewritten in target variables.
    pub fn pull(&self, p: &DiffPoly) -> Result<DiffPoly> {
        linear_substitute(p, &self.images, &self.target)
    }

    pub fn inverse(&self) -> Result<Self> {
        let mut images = vec![None; self.target.len()];
        for (alpha, (op, t)) in self.images.iter().enumerate() {
            images[*t] = Some((op.invert()?, alpha));
        }
        let images = images.into_iter().map(|x| x.expect("bijective map")).collect();
        Ok(Self { source: self.target.clone(), target: self.source.clone(), images })
    }
}

/// Rewrites the system `∂x^α/∂t = F^α` in the target variables.
pub fn miura_transport(flow: &Flow, map: &MiuraMap) -> Result<Flow> {
    if flow.ring() != &map.source {
        return Err(Error::RingMismatch(flow.ring().to_string(), map.source.to_string()));
    }
    let inverses: Vec<EvenOp> = map.images.iter().map(|(op, _)| op.invert()).collect::<Result<_>>()?;
    let n = map.target.len();
    let mut rhs = vec![None; n];
    let mut pots = vec![None; n];
    for (alpha, (_, t)) in map.images.iter().enumerate() {
        rhs[*t] = Some(inverses[alpha].apply(&map.pull(flow.rhs_of(alpha))?));
        if let Some(p) = flow.potential(alpha) {
            pots[*t] = Some(inverses[alpha].apply(&map.pull(p)?));
        }
    }
    let rhs = rhs.into_iter().map(|x| x.expect("bijective map")).collect();
    Flow::new(flow.label.clone(), rhs)?.with_potentials(pots)
}

/// Coordinate charts of the extended hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `(u, v)`, where the Lax operator lives.
    Uv,
    /// `(w¹, w²)`, the hierarchy of topological type.
    W,
    /// `(u¹, u²)`, the DR hierarchy.
    Dr,
    /// `(u, w)` with `v = Rw`.
    Uw,
}

impl Chart {
    pub fn ring(self) -> Ring {
        match self {
            Chart::Uv => RingSpec::uv(),
            Chart::W => RingSpec::w(),
            Chart::Dr => RingSpec::dr(),
            Chart::Uw => RingSpec::uw(),
        }
    }
}

impl FromStr for Chart {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uv" => Ok(Chart::Uv),
            "w" => Ok(Chart::W),
            "dr" => Ok(Chart::Dr),
            "uw" => Ok(Chart::Uw),
            _ => Err(Error::Invalid(format!("unknown chart {s}"))),
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Chart::Uv => "uv",
            Chart::W => "w",
            Chart::Dr => "dr",
            Chart::Uw => "uw",
        };
        write!(f, "{s}")
    }
}

/// The map from `(u, v)` to `chart`:
/// `u = L⁻¹w¹, v = L⁻¹w²`; `u = u¹, v = √R u²`; `v = Rw`.
pub fn chart_map(chart: Chart, trunc: u32) -> MiuraMap {
    let uv = RingSpec::uv();
    let g = super::op_depth(trunc);
    let id = EvenOp::identity(g);
    let images = match chart {
        Chart::Uv => vec![(id.clone(), 0), (id, 1)],
        Chart::W => vec![(named(NamedOp::Linv, trunc), 0), (named(NamedOp::Linv, trunc), 1)],
        Chart::Dr => vec![(id, 0), (named(NamedOp::T, trunc), 1)],
        Chart::Uw => vec![(id, 0), (named(NamedOp::R, trunc), 1)],
    };
    MiuraMap::new(&uv, &chart.ring(), images).expect("chart maps are bijective")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::{apply_named, dkdv_flow};
    use crate::scalar::{rat, Gauss};

    #[test]
    fn identity_and_round_trip() {
        let f = dkdv_flow(0, 6).unwrap();
        let id = MiuraMap::identity(f.ring(), 3);
        assert_eq!(miura_transport(&f, &id).unwrap(), f);
        for chart in [Chart::W, Chart::Dr, Chart::Uw] {
            let m = chart_map(chart, 6);
            let there = miura_transport(&f, &m).unwrap();
            let back = miura_transport(&there, &m.inverse().unwrap()).unwrap();
            assert_eq!(back, f, "{chart}");
        }
    }

    #[test]
    fn dr_chart_linear_part_is_sqrt_r() {
        let f = miura_transport(&dkdv_flow(0, 6).unwrap(), &chart_map(Chart::Dr, 6)).unwrap();
        let r = RingSpec::dr();
        let u1 = DiffPoly::var(&r, 6, 0);
        let p = f.potential(1).unwrap();
        let linear = p.filter_terms(|m, _| m.degree() == 1);
        assert_eq!(linear, apply_named(NamedOp::T, &u1));
        assert_eq!(linear.eps_coeff(2).to_string(), "1/24*u1_2");
        let _ = (rat(1, 1), Gauss::from_int(1));
    }

    #[test]
    fn rejects_non_bijective_maps() {
        let uv = RingSpec::uv();
        let id = EvenOp::identity(2);
        assert!(MiuraMap::new(&uv, &uv, vec![(id.clone(), 0), (id.clone(), 0)]).is_err());
        assert!(MiuraMap::new(&uv, &uv, vec![(id, 0)]).is_err());
        let degenerate = EvenOp::new(vec![rat(0, 1), rat(1, 1)]);
        let bad = MiuraMap::new(&uv, &uv, vec![(degenerate, 0), (EvenOp::identity(1), 1)]).unwrap();
        assert!(miura_transport(&dkdv_flow(0, 2).unwrap(), &bad).is_err());
    }
}
