//! Monomials and monomial ideals.
//!
//! A [`Monomial`] is a dense exponent vector over a fixed number of variables
//! `x0, x1, ...`. A [`MonomialIdeal`] is stored by its minimal generating set
//! in lexicographic order of exponent vectors, so two ideals are equal exactly
//! when their representations are identical.
//!
//! All operations check arity and never silently mix rings.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Candidate sets larger than this are filtered on the rayon pool.
const PAR_THRESHOLD: usize = 4096;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Monomial {
    exps: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Monomial {
    type Error = Error;

    fn try_from(exps: Vec<u32>) -> Result<Self> {
        Monomial::new(exps)
    }
}

impl From<Monomial> for Vec<u32> {
    fn from(m: Monomial) -> Self {
        m.exps
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_arity(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::ArityMismatch { left, right })
    }
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        if exps.is_empty() {
            return Err(Error::ZeroArity);
        }
        Ok(Monomial { exps })
    }

    /// The monomial 1.
    pub fn one(arity: usize) -> Self {
        assert!(arity > 0, "arity must be positive");
        Monomial { exps: vec![0; arity] }
    }

    /// The variable `x_k`.
    pub fn var(k: usize, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        if k >= arity {
            return Err(Error::VariableOutOfRange { index: k, arity });
        }
        let mut exps = vec![0; arity];
        exps[k] = 1;
        Ok(Monomial { exps })
    }

    /// Squarefree monomial with the given support.
    pub fn from_support<I: IntoIterator<Item = usize>>(arity: usize, support: I) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        let mut exps = vec![0; arity];
        for k in support {
            if k >= arity {
                return Err(Error::VariableOutOfRange { index: k, arity });
            }
            exps[k] = 1;
        }
        Ok(Monomial { exps })
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, k: usize) -> u32 {
        self.exps[k]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, _)| k)
            .collect()
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        check_arity(self.arity(), other.arity())?;
        Ok(self.divides_unchecked(other))
    }

    #[inline]
    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        check_arity(self.arity(), other.arity())?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// Multiply by `x_k`.
    pub fn mul_var(&self, k: usize) -> Result<Monomial> {
        if k >= self.arity() {
            return Err(Error::VariableOutOfRange { index: k, arity: self.arity() });
        }
        let mut exps = self.exps.clone();
        exps[k] += 1;
        Ok(Monomial { exps })
    }

    pub fn pow(&self, s: u32) -> Monomial {
        Monomial { exps: self.exps.iter().map(|e| e * s).collect() }
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        check_arity(self.arity(), other.arity())?;
        Ok(self.lcm_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        check_arity(self.arity(), other.arity())?;
        Ok(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect(),
        })
    }

    /// `self / gcd(self, other)`.
    pub fn strip(&self, other: &Monomial) -> Result<Monomial> {
        check_arity(self.arity(), other.arity())?;
        Ok(self.strip_unchecked(other))
    }

    pub(crate) fn strip_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        }
    }

    /// Exact quotient `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Result<Option<Monomial>> {
        if !other.divides(self)? {
            return Ok(None);
        }
        Ok(Some(self.strip_unchecked(other)))
    }

    /// Set the exponent of every variable outside `keep` to zero.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(keep)
                .map(|(&e, &k)| if k { e } else { 0 })
                .collect(),
        }
    }

    /// Folded support bitmask; `a | b` implies `mask(a) ⊆ mask(b)`.
    #[inline]
    pub(crate) fn mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (k, _)| m | (1u64 << (k % 64)))
    }

    /// Parse `x0^2*x1`, `1`, or a JSON exponent array such as `[2,1]`.
    ///
    /// When `arity` is `None` the text form takes the smallest arity that
    /// fits its variables.
    pub fn parse(s: &str, arity: Option<usize>) -> Result<Monomial> {
        let t = s.trim();
        let m = if t.starts_with('[') {
            let exps: Vec<u32> = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            Monomial::new(exps)?
        } else {
            let pairs = parse_text_factors(t)?;
            let needed = pairs.iter().map(|&(k, _)| k + 1).max().unwrap_or(1);
            let n = arity.unwrap_or(needed);
            if n == 0 {
                return Err(Error::ZeroArity);
            }
            if needed > n {
                return Err(Error::VariableOutOfRange { index: needed - 1, arity: n });
            }
            let mut exps = vec![0; n];
            for (k, e) in pairs {
                exps[k] += e;
            }
            Monomial { exps }
        };
        if let Some(n) = arity {
            check_arity(n, m.arity())?;
        }
        Ok(m)
    }
}

fn parse_text_factors(t: &str) -> Result<Vec<(usize, u32)>> {
    if t == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for factor in t.split('*') {
        let f = factor.trim();
        let rest = f
            .strip_prefix('x')
            .ok_or_else(|| Error::Parse(format!("expected a variable like x3, got {f:?}")))?;
        let (idx, exp) = match rest.split_once('^') {
            Some((i, e)) => (i.trim(), e.trim()),
            None => (rest, "1"),
        };
        let k: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad variable index in {f:?}")))?;
        let e: u32 = exp
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {f:?}")))?;
        out.push((k, e));
    }
    Ok(out)
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{k}")?;
            } else {
                write!(f, "x{k}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Divisibility-minimal, deduplicated elements of `cands`, in lex order.
///
/// Candidates are processed in layers of equal total degree: a monomial can
/// only be divided by a distinct monomial of strictly smaller degree, so each
/// layer is filtered against the survivors of earlier layers. Layers are
/// filtered in parallel when large; the result does not depend on scheduling.
pub(crate) fn minimal_elements(cands: Vec<Monomial>) -> Vec<Monomial> {
    let mut keyed: Vec<(u64, u64, Monomial)> = if cands.len() >= PAR_THRESHOLD {
        cands.into_par_iter().map(|m| (m.degree(), m.mask(), m)).collect()
    } else {
        cands.into_iter().map(|m| (m.degree(), m.mask(), m)).collect()
    };
    keyed.par_sort_unstable_by(|a, b| a.0.cmp(&b.0).then_with(|| a.2.cmp(&b.2)));
    keyed.dedup_by(|a, b| a.2 == b.2);

    let mut kept: Vec<(u64, Monomial)> = Vec::new();
    let mut start = 0;
    while start < keyed.len() {
        let deg = keyed[start].0;
        let end = start + keyed[start..].partition_point(|c| c.0 == deg);
        let layer = &keyed[start..end];
        let survives = |c: &(u64, u64, Monomial)| {
            !kept
                .iter()
                .any(|(mask, g)| mask & !c.1 == 0 && g.divides_unchecked(&c.2))
        };
        let survivors: Vec<(u64, Monomial)> = if layer.len() * kept.len().max(1) >= PAR_THRESHOLD {
            layer
                .par_iter()
                .filter(|c| survives(c))
                .map(|c| (c.1, c.2.clone()))
                .collect()
        } else {
            layer
                .iter()
                .filter(|c| survives(c))
                .map(|c| (c.1, c.2.clone()))
                .collect()
        };
        kept.extend(survivors);
        start = end;
    }
    let mut out: Vec<Monomial> = kept.into_iter().map(|(_, m)| m).collect();
    out.par_sort_unstable();
    out
}

/// A monomial ideal, stored by its minimal generators in lex order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IdealRepr", into = "IdealRepr")]
pub struct MonomialIdeal {
    arity: usize,
    gens: Vec<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct IdealRepr {
    arity: usize,
    generators: Vec<Vec<u32>>,
}

impl TryFrom<IdealRepr> for MonomialIdeal {
    type Error = Error;

    fn try_from(r: IdealRepr) -> Result<Self> {
        let gens = r
            .generators
            .into_iter()
            .map(Monomial::new)
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(r.arity, gens)
    }
}

impl From<MonomialIdeal> for IdealRepr {
    fn from(i: MonomialIdeal) -> Self {
        IdealRepr {
            arity: i.arity,
            generators: i.gens.into_iter().map(|m| m.exps).collect(),
        }
    }
}

impl MonomialIdeal {
    /// Ideal generated by `gens`, reduced to its minimal generating set.
    pub fn minimalize<I: IntoIterator<Item = Monomial>>(arity: usize, gens: I) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        let gens: Vec<Monomial> = gens.into_iter().collect();
        for g in &gens {
            check_arity(arity, g.arity())?;
        }
        Ok(MonomialIdeal { arity, gens: minimal_elements(gens) })
    }

    pub fn zero(arity: usize) -> Self {
        assert!(arity > 0, "arity must be positive");
        MonomialIdeal { arity, gens: Vec::new() }
    }

    pub fn unit(arity: usize) -> Self {
        MonomialIdeal { arity, gens: vec![Monomial::one(arity)] }
    }

    /// The homogeneous maximal ideal `(x0, ..., x_{n-1})`.
    pub fn maximal(arity: usize) -> Self {
        Self::generated_by_vars(arity, 0..arity).expect("indices in range")
    }

    /// `(x_k : k in vars)`.
    pub fn generated_by_vars<I: IntoIterator<Item = usize>>(arity: usize, vars: I) -> Result<Self> {
        let gens = vars
            .into_iter()
            .map(|k| Monomial::var(k, arity))
            .collect::<Result<Vec<_>>>()?;
        Self::minimalize(arity, gens)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    fn check(&self, other: &MonomialIdeal) -> Result<()> {
        check_arity(self.arity, other.arity)
    }

    /// `m ∈ self`.
    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        check_arity(self.arity, m.arity())?;
        Ok(self.contains_unchecked(m))
    }

    #[inline]
    pub(crate) fn contains_unchecked(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides_unchecked(m))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check(other)?;
        Ok(self.gens.iter().all(|g| other.contains_unchecked(g)))
    }

    /// `self ⊋ other`.
    pub fn strictly_contains(&self, other: &MonomialIdeal) -> Result<bool> {
        Ok(other.is_subset_of(self)? && !self.is_subset_of(other)?)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check(other)?;
        let cands: Vec<Monomial> = if self.len() * other.len() >= PAR_THRESHOLD {
            self.gens
                .par_iter()
                .flat_map_iter(|a| other.gens.iter().map(move |b| a.mul_unchecked(b)))
                .collect()
        } else {
            self.gens
                .iter()
                .flat_map(|a| other.gens.iter().map(move |b| a.mul_unchecked(b)))
                .collect()
        };
        Ok(MonomialIdeal { arity: self.arity, gens: minimal_elements(cands) })
    }

    /// `self^s`, minimalizing after every multiplication. `self^0` is the unit ideal.
    pub fn power(&self, s: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.arity);
        for _ in 0..s {
            acc = acc.product(self).expect("same arity");
        }
        acc
    }

    /// All powers `self^1, ..., self^s_max`, sharing intermediate products.
    pub fn powers(&self, s_max: u32) -> Vec<MonomialIdeal> {
        let mut out = Vec::with_capacity(s_max as usize);
        let mut acc = MonomialIdeal::unit(self.arity);
        for _ in 0..s_max {
            acc = acc.product(self).expect("same arity");
            out.push(acc.clone());
        }
        out
    }

    /// Ideal intersection via pairwise lcms of generators.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check(other)?;
        let cands: Vec<Monomial> = if self.len() * other.len() >= PAR_THRESHOLD {
            self.gens
                .par_iter()
                .flat_map_iter(|a| other.gens.iter().map(move |b| a.lcm_unchecked(b)))
                .collect()
        } else {
            self.gens
                .iter()
                .flat_map(|a| other.gens.iter().map(move |b| a.lcm_unchecked(b)))
                .collect()
        };
        Ok(MonomialIdeal { arity: self.arity, gens: minimal_elements(cands) })
    }

    /// Intersection of several ideals, folding from the fewest generators up.
    /// The empty intersection is the unit ideal.
    pub fn intersect_all(arity: usize, ideals: &[MonomialIdeal]) -> Result<MonomialIdeal> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        for i in ideals {
            check_arity(arity, i.arity)?;
        }
        let mut order: Vec<&MonomialIdeal> = ideals.iter().collect();
        order.sort_by_key(|i| i.len());
        let mut acc = MonomialIdeal::unit(arity);
        for i in order {
            acc = acc.intersect(i)?;
        }
        Ok(acc)
    }

    /// `self : m = { f : f·m ∈ self }`.
    pub fn colon_monomial(&self, m: &Monomial) -> Result<MonomialIdeal> {
        check_arity(self.arity, m.arity())?;
        Ok(self.colon_monomial_unchecked(m))
    }

    fn colon_monomial_unchecked(&self, m: &Monomial) -> MonomialIdeal {
        let cands = self.gens.iter().map(|g| g.strip_unchecked(m)).collect();
        MonomialIdeal { arity: self.arity, gens: minimal_elements(cands) }
    }

    /// `self ∩ (base : g)`, computed as the sum over generators `c` of `self`
    /// of `c · (base : c·g)`.
    fn intersect_with_colon(&self, base: &MonomialIdeal, g: &Monomial) -> MonomialIdeal {
        let part = |c: &Monomial| -> Vec<Monomial> {
            let cg = c.mul_unchecked(g);
            if base.contains_unchecked(&cg) {
                vec![c.clone()]
            } else {
                base.colon_monomial_unchecked(&cg)
                    .gens
                    .iter()
                    .map(|u| c.mul_unchecked(u))
                    .collect()
            }
        };
        let cands: Vec<Monomial> = if self.len() >= 64 {
            self.gens.par_iter().flat_map_iter(part).collect()
        } else {
            self.gens.iter().flat_map(part).collect()
        };
        MonomialIdeal { arity: self.arity, gens: minimal_elements(cands) }
    }

    /// `self : K`, the intersection over generators `g` of `K` of `self : g`.
    pub fn colon_ideal(&self, k: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check(k)?;
        let (first, rest) = k.gens.split_first().ok_or(Error::ZeroDivisorIdeal)?;
        let mut acc = self.colon_monomial_unchecked(first);
        for g in rest {
            acc = acc.intersect_with_colon(self, g);
        }
        Ok(acc)
    }

    /// Keep only variables flagged in `keep`; the others are set to 1.
    pub(crate) fn restrict(&self, keep: &[bool]) -> MonomialIdeal {
        let cands = self.gens.iter().map(|g| g.restrict(keep)).collect();
        MonomialIdeal { arity: self.arity, gens: minimal_elements(cands) }
    }

    /// Parse an ideal from JSON (`{"arity":n,"generators":[[..],..]}` or a bare
    /// array of exponent arrays) or from text such as `(x0*x1, x2^2)`.
    /// Text `0` or `()` is the zero ideal.
    pub fn parse(s: &str, arity: Option<usize>) -> Result<MonomialIdeal> {
        let t = s.trim();
        let ideal = if t.starts_with('{') {
            serde_json::from_str::<MonomialIdeal>(t).map_err(|e| Error::Parse(e.to_string()))?
        } else if t.starts_with('[') {
            let rows: Vec<Vec<u32>> =
                serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            let n = match (arity, rows.first()) {
                (Some(n), _) => n,
                (None, Some(r)) => r.len(),
                (None, None) => {
                    return Err(Error::Parse("cannot infer arity of an empty generator list".into()))
                }
            };
            let gens = rows.into_iter().map(Monomial::new).collect::<Result<Vec<_>>>()?;
            MonomialIdeal::minimalize(n, gens)?
        } else {
            let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t).trim();
            let factors: Vec<Vec<(usize, u32)>> = if inner.is_empty() || inner == "0" {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|g| parse_text_factors(g.trim()))
                    .collect::<Result<_>>()?
            };
            let needed = factors.iter().flatten().map(|&(k, _)| k + 1).max().unwrap_or(1);
            let n = arity.unwrap_or(needed);
            if needed > n {
                return Err(Error::VariableOutOfRange { index: needed - 1, arity: n });
            }
            let gens = factors
                .into_iter()
                .map(|fs| {
                    let mut exps = vec![0; n];
                    for (k, e) in fs {
                        exps[k] += e;
                    }
                    Monomial::new(exps)
                })
                .collect::<Result<Vec<_>>>()?;
            MonomialIdeal::minimalize(n, gens)?
        };
        if let Some(n) = arity {
            check_arity(n, ideal.arity)?;
        }
        Ok(ideal)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
