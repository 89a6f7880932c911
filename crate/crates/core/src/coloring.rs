//! Exact chromatic numbers, vertex-criticality, the explicit `p`-colorings of
//! `H_{p,q}`, and a bounded scan over expansions of critical graphs.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GridLabel};

/// A vertex coloring with colors `0..num_colors`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub num_colors: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        let num_colors = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        Coloring { colors, num_colors }
    }

    /// Number of distinct colors actually used.
    pub fn used_colors(&self) -> usize {
        let mut seen = vec![false; self.num_colors];
        for &c in &self.colors {
            seen[c] = true;
        }
        seen.iter().filter(|&&b| b).count()
    }

    /// Edge scan: adjacent vertices get different colors.
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n() && g.edges().iter().all(|&(u, v)| self.colors[u] != self.colors[v])
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.n() {
            return Err(Error::Certificate(format!(
                "coloring has {} entries for {} vertices",
                self.colors.len(),
                g.n()
            )));
        }
        if let Some((u, v)) = g.edges().into_iter().find(|&(u, v)| self.colors[u] == self.colors[v]) {
            return Err(Error::Certificate(format!(
                "vertices {} and {} are adjacent and both have color {}",
                g.label(u),
                g.label(v),
                self.colors[u]
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticResult {
    pub chromatic_number: usize,
    pub coloring: Coloring,
    /// A clique certifying the lower bound found by the greedy search.
    pub clique: Vec<usize>,
}

/// Greedy clique: for each start vertex repeatedly add the candidate with
/// most candidate neighbors; keep the largest.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut best = Vec::new();
    for start in 0..n {
        let mut clique = vec![start];
        let mut cand = g.neighbors(start).clone();
        while let Some(v) = cand.iter().max_by_key(|&v| (cand.intersection_len(g.neighbors(v)), std::cmp::Reverse(v))) {
            clique.push(v);
            cand = cand.intersection(g.neighbors(v));
        }
        if clique.len() > best.len() {
            clique.sort_unstable();
            best = clique;
        }
    }
    best
}

/// DSATUR greedy coloring; an upper bound on the chromatic number.
pub fn dsatur_greedy(g: &Graph) -> Coloring {
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    for _ in 0..n {
        let v = pick_dsatur(g, &colors).expect("uncolored vertex remains");
        let forbidden: Vec<usize> = g.neighbors(v).iter().map(|u| colors[u]).filter(|&c| c != usize::MAX).collect();
        colors[v] = (0..).find(|c| !forbidden.contains(c)).expect("unbounded");
    }
    Coloring::new(colors)
}

fn saturation(g: &Graph, colors: &[usize], v: usize) -> usize {
    let mut seen: Vec<usize> = g.neighbors(v).iter().map(|u| colors[u]).filter(|&c| c != usize::MAX).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn pick_dsatur(g: &Graph, colors: &[usize]) -> Option<usize> {
    (0..g.n())
        .filter(|&v| colors[v] == usize::MAX)
        .max_by_key(|&v| {
            let uncolored_deg = g.neighbors(v).iter().filter(|&u| colors[u] == usize::MAX).count();
            (saturation(g, colors, v), uncolored_deg, std::cmp::Reverse(v))
        })
}

/// A proper coloring with at most `k` colors, if one exists. The vertices of
/// `clique` are pre-colored `0, 1, ...` to break symmetry.
pub fn k_coloring(g: &Graph, k: usize, clique: &[usize]) -> Option<Coloring> {
    let n = g.n();
    if n == 0 {
        return Some(Coloring::new(Vec::new()));
    }
    if clique.len() > k {
        return None;
    }
    let mut colors = vec![usize::MAX; n];
    for (c, &v) in clique.iter().enumerate() {
        colors[v] = c;
    }
    let used = clique.len();
    if backtrack(g, k, &mut colors, used, n - clique.len()) {
        Some(Coloring::new(colors))
    } else {
        None
    }
}

fn backtrack(g: &Graph, k: usize, colors: &mut Vec<usize>, used: usize, remaining: usize) -> bool {
    if remaining == 0 {
        return true;
    }
    let v = pick_dsatur(g, colors).expect("remaining > 0");
    let mut forbidden = vec![false; k];
    for u in g.neighbors(v).iter() {
        if colors[u] != usize::MAX {
            forbidden[colors[u]] = true;
        }
    }
    // a brand-new color is interchangeable with any other unused one
    let limit = (used + 1).min(k);
    for c in 0..limit {
        if forbidden[c] {
            continue;
        }
        colors[v] = c;
        if backtrack(g, k, colors, used.max(c + 1), remaining - 1) {
            return true;
        }
    }
    colors[v] = usize::MAX;
    false
}

/// Exact chromatic number with a witness coloring and clique.
pub fn chromatic_number(g: &Graph) -> ChromaticResult {
    let clique = greedy_clique(g);
    let mut best = dsatur_greedy(g);
    let lower = clique.len().max(usize::from(g.n() > 0));
    let mut k = best.used_colors();
    while k > lower {
        match k_coloring(g, k - 1, &clique) {
            Some(c) => {
                best = c;
                k = best.used_colors();
            }
            None => break,
        }
    }
    debug_assert!(best.is_proper(g));
    ChromaticResult { chromatic_number: k, coloring: best, clique }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalReport {
    pub s: usize,
    pub chromatic_number: usize,
    pub critical: bool,
    /// Vertices whose deletion leaves the chromatic number at least `s`.
    pub surviving: Vec<usize>,
    pub surviving_labels: Vec<String>,
}

/// `χ(G) = s` and `χ(G \ v) < s` for every vertex `v`.
pub fn is_critically_chromatic(g: &Graph, s: usize) -> Result<CriticalReport> {
    if s == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let chi = chromatic_number(g).chromatic_number;
    let surviving: Vec<usize> = (0..g.n())
        .into_par_iter()
        .map(|v| -> Result<Option<usize>> {
            let h = g.delete_vertex(v)?;
            let clique = greedy_clique(&h);
            Ok(k_coloring(&h, s - 1, &clique).is_none().then_some(v))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(CriticalReport {
        s,
        chromatic_number: chi,
        critical: chi == s && surviving.is_empty(),
        surviving_labels: surviving.iter().map(|&v| g.label(v).to_string()).collect(),
        surviving,
    })
}

/// Which parity case of the explicit construction applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HpqCase {
    /// `p` even, `q` odd.
    EvenOdd,
    /// `p` even, `q` even.
    EvenEven,
    /// `p` odd, `q` even.
    OddEven,
    /// `p` odd, `q` odd.
    OddOdd,
}

impl HpqCase {
    pub fn of(p: usize, q: usize) -> Self {
        match (p.is_multiple_of(2), q.is_multiple_of(2)) {
            (true, false) => HpqCase::EvenOdd,
            (true, true) => HpqCase::EvenEven,
            (false, true) => HpqCase::OddEven,
            (false, false) => HpqCase::OddOdd,
        }
    }
}

/// Colors `p - j` on a column, then swap the colors of rows `0` and `(p+1)/2`.
fn switched_column(p: usize, j: usize) -> usize {
    let half = p.div_ceil(2);
    match j {
        0 => (p - half) % p,
        _ if j == half => 0,
        _ => (p - j) % p,
    }
}

/// Color of `x_{i,j}` in the explicit `p`-coloring of `H_{p,q}`.
fn hpq_color(p: usize, q: usize, i: usize, j: usize) -> usize {
    match HpqCase::of(p, q) {
        HpqCase::EvenOdd => {
            if i % 2 == 1 {
                j
            } else {
                (j + 1) % p
            }
        }
        HpqCase::EvenEven => {
            if i % 2 == 1 {
                j
            } else {
                (p + 1 - j) % p
            }
        }
        HpqCase::OddEven => {
            if i % 2 == 1 {
                j
            } else {
                switched_column(p, j)
            }
        }
        HpqCase::OddOdd => {
            if i == q {
                switched_column(p, j)
            } else if i % 2 == 1 {
                j
            } else {
                (j + p - 1) % p
            }
        }
    }
}

/// The explicit `p`-coloring of `H_{p,q}` for `p, q >= 4`, checked proper and
/// using exactly `p` colors before it is returned.
pub fn explicit_coloring_hpq(p: usize, q: usize) -> Result<Coloring> {
    if p < 4 {
        return Err(Error::InvalidArgument(format!("the explicit coloring needs p >= 4, got {p}")));
    }
    let g = Graph::build_hpq(p, q)?;
    let colors = (0..g.n())
        .map(|v| {
            let l = GridLabel::from_index(v, p);
            hpq_color(p, q, l.i, l.j)
        })
        .collect();
    let c = Coloring::new(colors);
    c.check(&g)?;
    if c.used_colors() != p || c.num_colors != p {
        return Err(Error::Certificate(format!("coloring uses {} colors, expected {p}", c.used_colors())));
    }
    Ok(c)
}

const PALETTE: [&str; 10] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf", "#999999",
    "#66c2a5",
];

/// Static SVG drawing of `H_{p,q}` with a coloring: column `i` left to right,
/// row `j` top to bottom, twist edges drawn as arcs below the grid.
pub fn render_hpq_svg(p: usize, q: usize, coloring: &Coloring) -> Result<String> {
    let g = Graph::build_hpq(p, q)?;
    if coloring.colors.len() != g.n() {
        return Err(Error::InvalidArgument("coloring does not match the graph".into()));
    }
    let (dx, dy, margin) = (90.0, 70.0, 50.0);
    let pos = |v: usize| {
        let l = GridLabel::from_index(v, p);
        (margin + dx * (l.i - 1) as f64, margin + dy * l.j as f64)
    };
    let width = 2.0 * margin + dx * (q - 1) as f64;
    let height = 2.0 * margin + dy * (p - 1) as f64 + 40.0 * p as f64;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (u, v) in g.edges() {
        let (lu, lv) = (GridLabel::from_index(u, p), GridLabel::from_index(v, p));
        let (x1, y1) = pos(u);
        let (x2, y2) = pos(v);
        if lu.i == lv.i && lu.j.abs_diff(lv.j) > 1 {
            // non-adjacent rows of a clique: bow sideways so lines stay distinct
            let bow = 12.0 * lu.j.abs_diff(lv.j) as f64;
            let _ = writeln!(
                s,
                r##"<path d="M {x1} {y1} Q {} {} {x2} {y2}" fill="none" stroke="#888" stroke-width="1"/>"##,
                x1 + bow,
                (y1 + y2) / 2.0
            );
        } else if lu.i != lv.i && lu.i.abs_diff(lv.i) > 1 {
            let depth = height - 20.0 - 30.0 * (p - 1 - lu.j.min(lv.j)) as f64 / p as f64 * 2.0;
            let _ = writeln!(
                s,
                r##"<path d="M {x1} {y1} C {x1} {depth} {x2} {depth} {x2} {y2}" fill="none" stroke="#bbb" stroke-width="1" stroke-dasharray="4 3"/>"##
            );
        } else {
            let _ = writeln!(s, r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#555" stroke-width="1.5"/>"##);
        }
    }
    for v in 0..g.n() {
        let (x, y) = pos(v);
        let c = coloring.colors[v];
        let fill = PALETTE[c % PALETTE.len()];
        let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="14" fill="{fill}" stroke="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{}" font-size="12" text-anchor="middle" font-family="sans-serif">{c}</text>"#,
            y + 4.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="9" font-family="sans-serif">{}</text>"#,
            x + 16.0,
            y - 10.0,
            g.label(v)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureScanReport {
    pub s: usize,
    pub max_w: usize,
    pub examined: u64,
    /// Expansion sets `W` for which `G[W]` is critically `(s+1)`-chromatic.
    pub hits: Vec<Vec<usize>>,
}

/// Search the expansions `G[W]` with `|W| <= max_w` for one that is
/// critically `(s+1)`-chromatic. `G` must itself be critically `s`-chromatic.
pub fn conjecture_scan(g: &Graph, s: usize, max_w: usize, budget: u128) -> Result<ConjectureScanReport> {
    let base = is_critically_chromatic(g, s)?;
    if !base.critical {
        return Err(Error::InvalidArgument(format!("graph is not critically {s}-chromatic")));
    }
    let n = g.n();
    let max_w = max_w.min(n);
    let needed: u128 = (0..=max_w).map(|k| binomial(n as u128, k as u128)).sum();
    if needed > budget {
        return Err(Error::BudgetExceeded { what: "expansion scan", needed, limit: budget });
    }
    let mut subsets: Vec<Vec<usize>> = Vec::with_capacity(needed as usize);
    for k in 0..=max_w {
        combinations(n, k, &mut subsets);
    }
    let hits: Vec<Vec<usize>> = subsets
        .par_iter()
        .map(|w| -> Result<Option<Vec<usize>>> {
            let e = g.expand_at(w)?;
            Ok(is_critically_chromatic(&e, s + 1)?.critical.then(|| w.clone()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(ConjectureScanReport { s, max_w, examined: subsets.len() as u64, hits })
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

fn combinations(n: usize, k: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), out);
}
