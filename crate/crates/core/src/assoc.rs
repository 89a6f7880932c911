//! Associated-prime membership for monomial ideals.
//!
//! For a monomial ideal `I` and a monomial prime `P_W`, `P_W ∈ Ass(R/I)`
//! exactly when the localization `L` of `I` at `W` satisfies `L : P_W ⊋ L`.
//! Every positive answer carries a witness monomial `T` with `T ∉ L` and
//! `T·x_k ∈ L` for all `k ∈ W`, and the certificate is re-checked before a
//! report is handed out.
//!
//! Three independent routes are provided:
//! * the colon test above ([`prime_in_ass`], [`max_ideal_in_ass`]);
//! * an exhaustive witness search over the box of exponents that any witness
//!   must lie in ([`witness_search`]);
//! * for cover ideals of `H_q`, a pruned search over the candidates allowed by
//!   the per-triangle bounds ([`pruned_witness_search`]), using a membership
//!   oracle that never materializes `J^s`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cover::{cover_ideal, localize, PrimeSupport};
use crate::error::{Error, Result};
use crate::graph::{Graph, GridLabel};
use crate::monomial::{Monomial, MonomialIdeal};

/// Default cap on the number of supports `ass_scan` may enumerate.
pub const DEFAULT_SUBSET_GUARD: u128 = 1 << 20;

/// Default cap on the number of monomials `witness_search` may visit.
pub const DEFAULT_WITNESS_BUDGET: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ColonTest,
    WitnessSearch,
    PrunedSearch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssReport {
    pub prime: PrimeSupport,
    /// Exponent `s` when the ideal is known to be a power `J^s`.
    pub power: Option<u32>,
    pub member: bool,
    pub witness: Option<Monomial>,
    pub method: Method,
    /// Number of candidate witnesses examined by search methods.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates_examined: Option<u64>,
}

impl AssReport {
    pub fn with_power(mut self, s: u32) -> Self {
        self.power = Some(s);
        self
    }
}

/// `T ∉ I` and `T·x_k ∈ I` for every `k` in `w`.
pub fn is_witness(i: &MonomialIdeal, w: &PrimeSupport, t: &Monomial) -> Result<bool> {
    if i.contains(t)? {
        return Ok(false);
    }
    for &k in w.vars() {
        if !i.contains(&t.mul_var(k)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_nontrivial(i: &MonomialIdeal) -> Result<()> {
    if i.is_zero() {
        Err(Error::TrivialIdeal("zero"))
    } else if i.is_unit() {
        Err(Error::TrivialIdeal("unit"))
    } else {
        Ok(())
    }
}

/// Colon test on an already localized ideal.
fn colon_test(local: &MonomialIdeal, w: &PrimeSupport) -> Result<AssReport> {
    let mut report = AssReport {
        prime: w.clone(),
        power: None,
        member: false,
        witness: None,
        method: Method::ColonTest,
        candidates_examined: None,
    };
    if local.is_unit() {
        return Ok(report);
    }
    let colon = local.colon_ideal(&w.ideal())?;
    // generators are in lex order, so the first one outside `local` is the least
    let witness = colon.generators().iter().find(|g| !local.contains_unchecked(g)).cloned();
    if let Some(t) = witness {
        if !is_witness(local, w, &t)? {
            return Err(Error::Certificate(format!("colon generator {t} is not a witness for {w}")));
        }
        report.member = true;
        report.witness = Some(t);
    }
    Ok(report)
}

/// `𝔪 ∈ Ass(R/I)` via `I : 𝔪 ⊋ I`; equivalently `depth(R/I) = 0`.
pub fn max_ideal_in_ass(i: &MonomialIdeal) -> Result<AssReport> {
    check_nontrivial(i)?;
    colon_test(i, &PrimeSupport::maximal(i.arity()))
}

/// `P_W ∈ Ass(R/I)`: localize at `W`, then run the colon test by `P_W`.
pub fn prime_in_ass(i: &MonomialIdeal, w: &PrimeSupport) -> Result<AssReport> {
    check_nontrivial(i)?;
    let local = localize(i, w)?;
    colon_test(&local, w)
}

/// Exhaustive search for the lex-least witness of `P_W ∈ Ass(R/I)`.
///
/// A witness `T` has `T_k < max_g g_k` for every `k ∈ W` (some generator must
/// divide `T·x_k` but not `T`) and is supported on `W` after localization, so
/// the search box is finite. Refuses when the box exceeds `budget`.
pub fn witness_search(i: &MonomialIdeal, w: &PrimeSupport, budget: u128) -> Result<AssReport> {
    check_nontrivial(i)?;
    let local = localize(i, w)?;
    let mut report = AssReport {
        prime: w.clone(),
        power: None,
        member: false,
        witness: None,
        method: Method::WitnessSearch,
        candidates_examined: Some(0),
    };
    if local.is_unit() {
        return Ok(report);
    }
    let bounds: Vec<u32> = w
        .vars()
        .iter()
        .map(|&k| local.generators().iter().map(|g| g.exponent(k)).max().unwrap_or(0))
        .collect();
    if bounds.contains(&0) {
        // some variable of W never appears: P_W cannot be associated
        return Ok(report);
    }
    let size: u128 = bounds.iter().map(|&b| b as u128).product();
    if size > budget {
        return Err(Error::BudgetExceeded { what: "witness search", needed: size, limit: budget });
    }
    let mut exps = vec![0u32; local.arity()];
    let mut examined = 0u64;
    loop {
        examined += 1;
        let t = Monomial::new(exps.clone())?;
        if is_witness(&local, w, &t)? {
            report.member = true;
            report.witness = Some(t);
            break;
        }
        // odometer over W in lex order (last variable fastest)
        let mut pos = w.len();
        loop {
            if pos == 0 {
                report.candidates_examined = Some(examined);
                return Ok(report);
            }
            pos -= 1;
            let k = w.vars()[pos];
            if exps[k] + 1 < bounds[pos] {
                exps[k] += 1;
                break;
            }
            exps[k] = 0;
        }
    }
    report.candidates_examined = Some(examined);
    Ok(report)
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Nonempty supports of size at most `cap`, by size then lex.
fn supports(arity: usize, cap: usize, guard: u128) -> Result<Vec<PrimeSupport>> {
    let cap = cap.min(arity);
    let needed: u128 = (1..=cap).map(|k| binomial(arity as u128, k as u128)).sum();
    if needed > guard {
        return Err(Error::BudgetExceeded { what: "prime support scan", needed, limit: guard });
    }
    let mut out = Vec::with_capacity(needed as usize);
    for size in 1..=cap {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            out.push(PrimeSupport::new(arity, combo.iter().copied())?);
            let mut pos = size;
            let advanced = loop {
                if pos == 0 {
                    break false;
                }
                pos -= 1;
                if combo[pos] < arity - size + pos {
                    combo[pos] += 1;
                    for r in pos + 1..size {
                        combo[r] = combo[r - 1] + 1;
                    }
                    break true;
                }
            };
            if !advanced {
                break;
            }
        }
    }
    Ok(out)
}

/// Colon-test reports for every support `W` with `|W| <= cap` (all supports
/// when `cap` is `None`). Refuses, rather than truncating, past `guard`.
pub fn ass_scan(i: &MonomialIdeal, cap: Option<usize>, guard: u128) -> Result<Vec<AssReport>> {
    check_nontrivial(i)?;
    let ws = supports(i.arity(), cap.unwrap_or(i.arity()), guard)?;
    ws.par_iter().map(|w| prime_in_ass(i, w)).collect()
}

/// The associated primes among a list of reports.
pub fn members(reports: &[AssReport]) -> Vec<PrimeSupport> {
    reports.iter().filter(|r| r.member).map(|r| r.prime.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerAss {
    pub power: u32,
    pub generators: usize,
    pub reports: Vec<AssReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub power: u32,
    pub prime: PrimeSupport,
    pub witness: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersistenceReport {
    pub per_power: Vec<PowerAss>,
    /// `(s, P)` with `P ∈ Ass(R/J^s)` but `P ∉ Ass(R/J^(s+1))`.
    pub violations: Vec<Violation>,
}

impl PersistenceReport {
    pub fn persists(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compare `Ass(R/J^s)` with `Ass(R/J^(s+1))` for `s = 1..s_max-1`, over all
/// supports (subject to `guard`) or over `primes` when given.
pub fn persistence_check(
    j: &MonomialIdeal,
    s_max: u32,
    primes: Option<&[PrimeSupport]>,
    guard: u128,
) -> Result<PersistenceReport> {
    if s_max < 2 {
        return Err(Error::InvalidArgument(format!("s_max must be at least 2, got {s_max}")));
    }
    check_nontrivial(j)?;
    let ws = match primes {
        Some(list) => {
            for w in list {
                if w.arity() != j.arity() {
                    return Err(Error::ArityMismatch { left: j.arity(), right: w.arity() });
                }
            }
            list.to_vec()
        }
        None => supports(j.arity(), j.arity(), guard)?,
    };
    let powers = j.powers(s_max);
    let mut per_power = Vec::with_capacity(powers.len());
    for (idx, js) in powers.iter().enumerate() {
        let s = idx as u32 + 1;
        let reports = ws
            .par_iter()
            .map(|w| prime_in_ass(js, w).map(|r| r.with_power(s)))
            .collect::<Result<Vec<_>>>()?;
        per_power.push(PowerAss { power: s, generators: js.len(), reports });
    }
    let mut violations = Vec::new();
    for s in 1..s_max {
        let (lo, hi) = (&per_power[s as usize - 1], &per_power[s as usize]);
        for (a, b) in lo.reports.iter().zip(&hi.reports) {
            if a.member && !b.member {
                // re-run both memberships from scratch
                let again_lo = prime_in_ass(&powers[s as usize - 1], &a.prime)?;
                let again_hi = prime_in_ass(&powers[s as usize], &a.prime)?;
                if !again_lo.member || again_hi.member {
                    return Err(Error::Certificate(format!(
                        "violation at s = {s} for {} did not reproduce",
                        a.prime
                    )));
                }
                violations.push(Violation {
                    power: s,
                    prime: a.prime.clone(),
                    witness: again_lo.witness.expect("member reports carry a witness"),
                });
            }
        }
    }
    Ok(PersistenceReport { per_power, violations })
}

/// Decides `m ∈ J^s` for a squarefree `J` by searching for `s` generators
/// whose product divides `m`, without computing `J^s`.
#[derive(Clone, Debug)]
pub struct ProductMembership {
    gens: Vec<Vec<u32>>,
    power: u32,
}

impl ProductMembership {
    pub fn new(j: &MonomialIdeal, power: u32) -> Self {
        ProductMembership {
            gens: j.generators().iter().map(|g| g.exponents().to_vec()).collect(),
            power,
        }
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        let mut rest = m.exponents().to_vec();
        let mut failed = HashSet::new();
        self.search(&mut rest, self.power, 0, &mut failed)
    }

    fn search(&self, rest: &mut Vec<u32>, depth: u32, start: usize, failed: &mut HashSet<(Vec<u32>, u32, usize)>) -> bool {
        if depth == 0 {
            return true;
        }
        let key = (rest.clone(), depth, start);
        if failed.contains(&key) {
            return false;
        }
        for gi in start..self.gens.len() {
            let g = &self.gens[gi];
            if g.iter().zip(rest.iter()).all(|(a, b)| a <= b) {
                for (r, a) in rest.iter_mut().zip(g) {
                    *r -= a;
                }
                let found = self.search(rest, depth - 1, gi, failed);
                for (r, a) in rest.iter_mut().zip(g) {
                    *r += a;
                }
                if found {
                    return true;
                }
            }
        }
        failed.insert(key);
        false
    }
}

/// Exponent patterns `(e_0, ..., e_{p-1})` a witness may take on one clique
/// column: every entry at most `s - 1`, total at least `s (p - 1)`.
pub fn clique_patterns(p: usize, s: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; p];
    fn rec(pos: usize, cur: &mut Vec<u32>, s: u32, need: u32, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            if cur.iter().sum::<u32>() >= need {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..s {
            cur[pos] = e;
            rec(pos + 1, cur, s, need, out);
        }
    }
    rec(0, &mut cur, s, s * (p as u32 - 1), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Search for a witness of `𝔪 ∈ Ass(R/J(H_q)^s)` among the monomials allowed
/// by the per-variable bound `s - 1` and the per-triangle total bound `2s`.
/// The full-exponent monomial `(∏x)^(s-1)` is skipped only when it is itself
/// in `J^s`. Membership is decided by [`ProductMembership`].
pub fn pruned_witness_search(p: usize, q: usize, s: u32) -> Result<AssReport> {
    pruned_witness_search_capped(p, q, s, DEFAULT_WITNESS_BUDGET)
}

/// [`pruned_witness_search`] refusing when the candidate count exceeds `cap`.
pub fn pruned_witness_search_capped(p: usize, q: usize, s: u32, cap: u128) -> Result<AssReport> {
    if p != 3 || !(3..=4).contains(&s) {
        return Err(Error::Unsupported(format!(
            "pruned witness search covers p = 3 and s in {{3, 4}}, got p = {p}, s = {s}"
        )));
    }
    let h = Graph::build_hpq(p, q)?;
    let patterns = clique_patterns(p, s).len() as u128;
    let needed = patterns.checked_pow(q as u32).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::BudgetExceeded { what: "pruned witness search", needed, limit: cap });
    }
    let j = cover_ideal(&h)?;
    pruned_search_with(&j, p, q, s, &ProductMembership::new(&j, s))
}

pub(crate) fn pruned_search_with(
    j: &MonomialIdeal,
    p: usize,
    q: usize,
    s: u32,
    oracle: &ProductMembership,
) -> Result<AssReport> {
    let n = p * q;
    let patterns = clique_patterns(p, s);
    let full = Monomial::new(vec![s - 1; n])?;
    let skip_full = oracle.contains(&full);
    let total: u128 = (patterns.len() as u128).pow(q as u32);

    let decode = |mut idx: u128| -> Monomial {
        let mut exps = vec![0u32; n];
        // column q varies fastest
        for i in (1..=q).rev() {
            let pat = &patterns[(idx % patterns.len() as u128) as usize];
            idx /= patterns.len() as u128;
            for (row, &e) in pat.iter().enumerate() {
                exps[GridLabel::new(i, row).index(p)] = e;
            }
        }
        Monomial::new(exps).expect("positive arity")
    };
    let is_candidate_witness = |t: &Monomial| -> bool {
        !oracle.contains(t) && (0..n).all(|k| oracle.contains(&t.mul_var(k).expect("in range")))
    };

    let hits: Vec<(u128, Monomial)> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let t = decode(idx);
            if skip_full && t == full {
                return None;
            }
            is_candidate_witness(&t).then_some((idx, t))
        })
        .collect();
    let examined = if skip_full { total - 1 } else { total } as u64;
    let witness = hits.into_iter().min_by_key(|(idx, _)| *idx).map(|(_, t)| t);

    if let Some(t) = &witness {
        // independent re-check against explicit generators of J^s
        let js = j.power(s);
        if !is_witness(&js, &PrimeSupport::maximal(n), t)? {
            return Err(Error::Certificate(format!("pruned witness {t} fails against J^{s}")));
        }
    }
    Ok(AssReport {
        prime: PrimeSupport::maximal(n),
        power: Some(s),
        member: witness.is_some(),
        witness,
        method: Method::PrunedSearch,
        candidates_examined: Some(examined),
    })
}

/// The decomposition `(∏x)^3 = M_1 M_2 M_3 M_4 N` of `H_q` with each `M_i`
/// a vertex cover, split by the parity of `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeDecomposition {
    pub q: usize,
    pub covers: Vec<Monomial>,
    pub remainder: Monomial,
}

impl CubeDecomposition {
    pub fn construct(q: usize) -> Result<Self> {
        if q < 4 {
            return Err(Error::InvalidArgument(format!("q must be at least 4, got {q}")));
        }
        let n = 3 * q;
        let idx = |i: usize, j: usize| GridLabel::new(i, j).index(3);
        // rows of each triangle per cover, indexed [cover][kind]
        let (remainder_row, odd, even, last): (usize, [[usize; 2]; 4], [[usize; 2]; 4], Option<[[usize; 2]; 4]>) =
            if q % 2 == 1 {
                (
                    0,
                    [[0, 1], [0, 2], [1, 2], [1, 2]],
                    [[1, 2], [1, 2], [0, 1], [0, 2]],
                    Some([[0, 2], [0, 1], [1, 2], [1, 2]]),
                )
            } else {
                (
                    1,
                    [[0, 2], [0, 2], [0, 1], [1, 2]],
                    [[0, 1], [1, 2], [0, 2], [0, 2]],
                    None,
                )
            };
        let mut covers = Vec::with_capacity(4);
        for c in 0..4 {
            let mut support = Vec::with_capacity(2 * q);
            for i in 1..=q {
                let rows = match last {
                    Some(l) if i == q => l[c],
                    _ if i % 2 == 1 => odd[c],
                    _ => even[c],
                };
                support.extend(rows.iter().map(|&r| idx(i, r)));
            }
            covers.push(Monomial::from_support(n, support)?);
        }
        let remainder = Monomial::from_support(n, (1..=q).map(|i| idx(i, remainder_row)))?;
        Ok(CubeDecomposition { q, covers, remainder })
    }

    /// Every `M_i` is a vertex cover of `H_q` and the product is `(∏x)^3`.
    pub fn verify(&self) -> Result<bool> {
        let h = Graph::build_hpq(3, self.q)?;
        let n = h.n();
        if self.covers.len() != 4 || self.remainder.arity() != n {
            return Ok(false);
        }
        let mut product = self.remainder.clone();
        for m in &self.covers {
            if m.arity() != n || !m.is_squarefree() {
                return Ok(false);
            }
            let is_cover = h
                .edges()
                .iter()
                .all(|&(u, v)| m.exponent(u) > 0 || m.exponent(v) > 0);
            if !is_cover {
                return Ok(false);
            }
            product = product.mul(m)?;
        }
        Ok(product == Monomial::new(vec![3; n])?)
    }
}

pub fn verify_obs_power3(q: usize) -> Result<bool> {
    CubeDecomposition::construct(q)?.verify()
}
