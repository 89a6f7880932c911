//! End-to-end check that the cover ideal `J` of `H_q = H_{3,q}` has
//! `𝔪 ∈ Ass(R/J^3)` and `𝔪 ∉ Ass(R/J^4)`, so `J` fails both the persistence
//! property and non-increasing depth.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::assoc::{self, is_witness, AssReport};
use crate::coloring::{is_critically_chromatic, CriticalReport};
use crate::cover::{cover_ideal, PrimeSupport};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct ReproduceOptions {
    /// Run the colon-ideal route in addition to the pruned search.
    pub colon_route: bool,
    /// Needed for `q >= 6`.
    pub allow_slow: bool,
    pub candidate_cap: u128,
    pub time_budget: Option<Duration>,
}

impl ReproduceOptions {
    /// Colon route on for `q = 4`, and for larger `q` only with `allow_slow`.
    pub fn for_q(q: usize, allow_slow: bool) -> Self {
        ReproduceOptions {
            colon_route: q == 4 || allow_slow,
            allow_slow,
            candidate_cap: assoc::DEFAULT_WITNESS_BUDGET,
            time_budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerVerdict {
    pub power: u32,
    /// Minimal generators of `J^s`, when the powers were materialized.
    pub generators: Option<usize>,
    pub pruned: AssReport,
    pub colon: Option<AssReport>,
    /// `depth(R/J^s) = 0`, read off from `𝔪 ∈ Ass(R/J^s)`.
    pub depth_zero: bool,
    pub routes_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub q: usize,
    pub vertices: usize,
    pub edges: usize,
    pub minimal_covers: usize,
    pub critical: CriticalReport,
    pub cube_decomposition: bool,
    pub cube: PowerVerdict,
    pub fourth: PowerVerdict,
    pub persistence_fails: bool,
    pub depth_increases: bool,
    pub verdict: String,
}

struct Clock {
    start: Instant,
    budget: Option<Duration>,
}

impl Clock {
    fn check(&self, stage: &str) -> Result<()> {
        match self.budget {
            Some(b) if self.start.elapsed() > b => {
                Err(Error::Refused(format!("time budget of {b:?} exhausted before {stage}")))
            }
            _ => Ok(()),
        }
    }
}

pub fn verify_theorem(q: usize, opts: &ReproduceOptions) -> Result<TheoremReport> {
    if q >= 6 && !opts.allow_slow {
        return Err(Error::Refused(format!("q = {q} is slow; pass --allow-slow to run it")));
    }
    let clock = Clock { start: Instant::now(), budget: opts.time_budget };
    let h = Graph::build_hpq(3, q)?;
    let j = cover_ideal(&h)?;
    let n = h.n();

    clock.check("the criticality check")?;
    let critical = is_critically_chromatic(&h, 4)?;
    let cube_decomposition = assoc::verify_obs_power3(q)?;

    let powers = if opts.colon_route { j.powers(4) } else { Vec::new() };
    let mut verdicts = Vec::with_capacity(2);
    for s in [3u32, 4] {
        clock.check(&format!("the s = {s} searches"))?;
        let pruned = assoc::pruned_witness_search_capped(3, q, s, opts.candidate_cap)?;
        let colon = if opts.colon_route {
            clock.check(&format!("the s = {s} colon test"))?;
            Some(assoc::max_ideal_in_ass(&powers[s as usize - 1])?.with_power(s))
        } else {
            None
        };
        let generators = powers.get(s as usize - 1).map(|js| js.len());
        let routes_agree = colon.as_ref().is_none_or(|c| c.member == pruned.member);
        verdicts.push(PowerVerdict {
            power: s,
            generators,
            depth_zero: pruned.member,
            pruned,
            colon,
            routes_agree,
        });
    }
    let fourth = verdicts.pop().expect("two entries");
    let cube = verdicts.pop().expect("two entries");

    let agree = cube.routes_agree && fourth.routes_agree;
    let persistence_fails = agree && cube.pruned.member && !fourth.pruned.member;
    let verdict = if !agree {
        "routes disagree; no verdict".to_string()
    } else if persistence_fails {
        "persistence violated at s=3; non-increasing depth fails".to_string()
    } else {
        format!(
            "no violation: m in Ass(J^3) = {}, m in Ass(J^4) = {}",
            cube.pruned.member, fourth.pruned.member
        )
    };
    let report = TheoremReport {
        q,
        vertices: n,
        edges: h.edge_count(),
        minimal_covers: j.len(),
        critical,
        cube_decomposition,
        cube,
        fourth,
        persistence_fails,
        depth_increases: persistence_fails,
        verdict,
    };
    revalidate(&report, &j)?;
    Ok(report)
}

/// Re-check every witness in a report against freshly computed powers.
pub fn revalidate(report: &TheoremReport, j: &crate::MonomialIdeal) -> Result<()> {
    let max = PrimeSupport::maximal(j.arity());
    for v in [&report.cube, &report.fourth] {
        let reports = std::iter::once(&v.pruned).chain(v.colon.as_ref());
        for r in reports {
            match (&r.witness, r.member) {
                (Some(t), true) => {
                    if !is_witness(&j.power(v.power), &max, t)? {
                        return Err(Error::Certificate(format!("witness {t} fails for s = {}", v.power)));
                    }
                }
                (None, false) => {}
                _ => return Err(Error::Certificate("member flag and witness disagree".into())),
            }
        }
    }
    Ok(())
}
