use std::collections::BTreeMap;

use super::DiffPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradeKind {
    /// Jet order minus ε power.
    Deg,
    /// Weighted count of dependent variables (ring weights, ε weight 0).
    Odeg,
}

/// Homogeneous components of a polynomial keyed by weight.
pub type GradeReport = BTreeMap<i64, DiffPoly>;

impl DiffPoly {
    pub fn grade(&self, kind: GradeKind) -> GradeReport {
        let weights = self.ring.odeg_weights().to_vec();
        self.grade_by(|m| match kind {
            GradeKind::Deg => m.deg(),
            GradeKind::Odeg => m.odeg(&weights) as i64,
        })
    }

    /// Grading by the `odeg` contribution of a single variable.
    pub fn grade_by_var(&self, var: usize) -> GradeReport {
        let w = self.ring.odeg(var) as i64;
        self.grade_by(|m| {
            m.factors().iter().filter(|f| f.0.var as usize == var).map(|f| f.1 as i64).sum::<i64>() * w
        })
    }

    pub fn grade_by(&self, weight: impl Fn(&super::DiffMonomial) -> i64) -> GradeReport {
        let mut out: GradeReport = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(weight(m))
                .or_insert_with(|| DiffPoly::zero(&self.ring, self.trunc))
                .add_term(m.clone(), c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::RingSpec;

    #[test]
    fn deg_and_odeg_reports() {
        let r = RingSpec::uv();
        let v = DiffPoly::var(&r, 6, 1);
        let u = DiffPoly::var(&r, 6, 0);
        let p = &v.dx_n(2).mul_eps(2) + &v.pow(2);
        let deg = p.grade(GradeKind::Deg);
        assert_eq!(deg.len(), 1);
        assert_eq!(deg[&0], p);
        let odeg = p.grade(GradeKind::Odeg);
        assert_eq!(odeg[&1], v.dx_n(2).mul_eps(2));
        assert_eq!(odeg[&2], v.pow(2));
        let uv = &u * &v;
        assert!(uv.grade(GradeKind::Odeg).contains_key(&3));
        let sum = odeg.values().fold(DiffPoly::zero(&r, 6), |a, b| &a + b);
        assert_eq!(sum, p);
    }
}
