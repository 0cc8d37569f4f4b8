use std::fmt;
use std::sync::Arc;

/// Names and `odeg` weights of the dependent variables of a ring of
/// differential polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    names: Vec<String>,
    odeg: Vec<u32>,
}

pub type Ring = Arc<RingSpec>;

impl RingSpec {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, u32)>) -> Ring {
        let (names, odeg) = vars.into_iter().map(|(n, w)| (n.into(), w)).unzip();
        Arc::new(Self { names, odeg })
    }

    /// `(u, v)` with `odeg u = 2`, `odeg v = 1`.
    pub fn uv() -> Ring {
        Self::new([("u", 2), ("v", 1)])
    }

    /// `(w1, w2)`, the chart of the hierarchy of topological type.
    pub fn w() -> Ring {
        Self::new([("w1", 2), ("w2", 1)])
    }

    /// `(u1, u2)`, the chart of the DR hierarchy.
    pub fn dr() -> Ring {
        Self::new([("u1", 2), ("u2", 1)])
    }

    /// `(u, w)`, the chart in which the compatibility analysis is done.
    pub fn uw() -> Ring {
        Self::new([("u", 2), ("w", 1)])
    }

    /// A single variable `w` of weight 1.
    pub fn single_w() -> Ring {
        Self::new([("w", 1)])
    }

    pub fn by_name(name: &str) -> Option<Ring> {
        match name {
            "uv" => Some(Self::uv()),
            "w" => Some(Self::w()),
            "dr" => Some(Self::dr()),
            "uw" => Some(Self::uw()),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn odeg(&self, var: usize) -> u32 {
        self.odeg[var]
    }

    pub fn odeg_weights(&self) -> &[u32] {
        &self.odeg
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names.join(", "))
    }
}
