use std::collections::HashMap;

use super::{DiffMonomial, DiffPoly, JetVariable, Ring};
use crate::error::{Error, Result};
use crate::evenop::EvenOp;

impl DiffPoly {
    /// Substitutes `w^α ↦ images[α]` (jets go to x-derivatives of the image).
    /// All images must share one target ring.
    pub fn substitute(&self, images: &[DiffPoly]) -> Result<DiffPoly> {
        if images.len() < self.ring.len() {
            return Err(Error::IncompleteMap(self.ring.name(images.len()).to_string()));
        }
        let target = images[0].ring().clone();
        let trunc = images.iter().map(DiffPoly::truncation).fold(self.trunc, u32::min);
        let mut jet_images: HashMap<JetVariable, Vec<DiffPoly>> = HashMap::new();
        let mut out = DiffPoly::zero(&target, trunc);
        for (m, c) in &self.terms {
            let mut acc = DiffPoly::from_terms(&target, trunc, [(DiffMonomial::one().with_eps(m.eps()), c.clone())]);
            for &(j, e) in m.factors() {
                let img = &images[j.var as usize];
                if img.ring() != &target {
                    return Err(Error::RingMismatch(target.to_string(), img.ring().to_string()));
                }
                let powers = jet_images.entry(j).or_insert_with(|| vec![img.dx_n(j.order as u32).truncate(trunc)]);
                while powers.len() < e as usize {
                    let next = &powers[powers.len() - 1] * &powers[0];
                    powers.push(next);
                }
                acc = &acc * &powers[e as usize - 1];
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }
}

/// Substitutes `w^α ↦ K_α x^{β(α)}` for constant-coefficient operators `K_α`
/// and target variables `x^β` of `target`.
pub fn linear_substitute(p: &DiffPoly, map: &[(EvenOp, usize)], target: &Ring) -> Result<DiffPoly> {
    if map.len() < p.ring().len() {
        return Err(Error::IncompleteMap(p.ring().name(map.len()).to_string()));
    }
    let images: Vec<DiffPoly> = map
        .iter()
        .map(|(op, var)| op.apply(&DiffPoly::var(target, p.truncation(), *var)))
        .collect();
    p.substitute(&images)
}
