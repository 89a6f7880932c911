//! Cover ideals of graphs, monomial localization and monomial primes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::monomial::{Monomial, MonomialIdeal};

/// A set of variables `W`, standing for the monomial prime `P_W = (x_k : k ∈ W)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeSupport {
    arity: usize,
    vars: Vec<usize>,
}

impl PrimeSupport {
    pub fn new<I: IntoIterator<Item = usize>>(arity: usize, vars: I) -> Result<Self> {
        let mut vars: Vec<usize> = vars.into_iter().collect();
        vars.sort_unstable();
        vars.dedup();
        if vars.is_empty() {
            return Err(Error::EmptySupport);
        }
        if let Some(&k) = vars.iter().find(|&&k| k >= arity) {
            return Err(Error::VariableOutOfRange { index: k, arity });
        }
        Ok(PrimeSupport { arity, vars })
    }

    /// All variables: the homogeneous maximal ideal.
    pub fn maximal(arity: usize) -> Self {
        assert!(arity > 0, "arity must be positive");
        PrimeSupport { arity, vars: (0..arity).collect() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn is_maximal(&self) -> bool {
        self.vars.len() == self.arity
    }

    pub(crate) fn indicator(&self) -> Vec<bool> {
        let mut keep = vec![false; self.arity];
        for &k in &self.vars {
            keep[k] = true;
        }
        keep
    }

    pub fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::generated_by_vars(self.arity, self.vars.iter().copied()).expect("checked")
    }

    /// Parse `max`, or a comma/space separated list such as `0,1,5` or `x0,x1`.
    pub fn parse(s: &str, arity: usize) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("max") || t.eq_ignore_ascii_case("m") {
            if arity == 0 {
                return Err(Error::ZeroArity);
            }
            return Ok(PrimeSupport::maximal(arity));
        }
        let vars = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.trim_start_matches('x')
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad variable {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PrimeSupport::new(arity, vars)
    }
}

impl fmt::Display for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{k}")?;
        }
        write!(f, ")")
    }
}

/// `J(G)` as the intersection of the edge primes `(x_u, x_v)`.
///
/// An edgeless graph gives the unit ideal.
pub fn cover_ideal_by_edges(g: &Graph) -> MonomialIdeal {
    let arity = g.n().max(1);
    let primes: Vec<MonomialIdeal> = g
        .edges()
        .into_iter()
        .map(|(u, v)| MonomialIdeal::generated_by_vars(arity, [u, v]).expect("in range"))
        .collect();
    MonomialIdeal::intersect_all(arity, &primes).expect("same arity")
}

/// `J(G)` generated by the indicator monomials of the minimal vertex covers.
pub fn cover_ideal_by_covers(g: &Graph) -> MonomialIdeal {
    let arity = g.n().max(1);
    let gens = g
        .minimal_vertex_covers()
        .into_iter()
        .map(|c| Monomial::from_support(arity, c.vertices).expect("in range"));
    MonomialIdeal::minimalize(arity, gens).expect("same arity")
}

/// The cover ideal, computed by both constructions; they must agree.
pub fn cover_ideal(g: &Graph) -> Result<MonomialIdeal> {
    let by_covers = cover_ideal_by_covers(g);
    let by_edges = cover_ideal_by_edges(g);
    if by_covers != by_edges {
        return Err(Error::Certificate(format!(
            "cover ideal constructions disagree: {by_edges} vs {by_covers}"
        )));
    }
    Ok(by_covers)
}

/// Monomial localization at `P_W`: every variable outside `W` is set to 1.
/// The arity is kept; dead variables stay at exponent zero.
pub fn localize(i: &MonomialIdeal, w: &PrimeSupport) -> Result<MonomialIdeal> {
    if i.arity() != w.arity() {
        return Err(Error::ArityMismatch { left: i.arity(), right: w.arity() });
    }
    Ok(i.restrict(&w.indicator()))
}
