//! Brute-force oracles on plain exponent vectors, sharing no code with the
//! library beyond its public types.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cover_persist::{Monomial, MonomialIdeal};

pub type Exps = Vec<u32>;

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn member(gens: &[Exps], m: &[u32]) -> bool {
    gens.iter().any(|g| divides(g, m))
}

pub fn gens_of(i: &MonomialIdeal) -> Vec<Exps> {
    i.generators().iter().map(|g| g.exponents().to_vec()).collect()
}

/// Keep the elements not strictly divisible by another element.
pub fn naive_minimal(set: &[Exps]) -> BTreeSet<Exps> {
    let uniq: BTreeSet<Exps> = set.iter().cloned().collect();
    uniq.iter()
        .filter(|m| !uniq.iter().any(|o| o != *m && divides(o, m)))
        .cloned()
        .collect()
}

pub fn same_ideal(i: &MonomialIdeal, expected: &BTreeSet<Exps>) -> bool {
    gens_of(i).into_iter().collect::<BTreeSet<_>>() == *expected
}

/// Every exponent vector in `[0, bound]^n`.
pub fn box_points(n: usize, bound: u32) -> Vec<Exps> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn max_exp(gens: &[Exps]) -> u32 {
    gens.iter().flatten().copied().max().unwrap_or(0)
}

pub fn mul(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn ideal(n: usize, gens: &[Exps]) -> MonomialIdeal {
    MonomialIdeal::minimalize(n, gens.iter().map(|g| Monomial::new(g.clone()).unwrap())).unwrap()
}

/// `I : K` from the definition, read off on the box that holds its generators.
pub fn colon_oracle(n: usize, i: &[Exps], k: &[Exps]) -> BTreeSet<Exps> {
    let pts: Vec<Exps> = box_points(n, max_exp(i))
        .into_iter()
        .filter(|m| k.iter().all(|g| member(i, &mul(m, g))))
        .collect();
    naive_minimal(&pts)
}

pub fn intersect_oracle(n: usize, i: &[Exps], k: &[Exps]) -> BTreeSet<Exps> {
    let pts: Vec<Exps> = box_points(n, max_exp(i).max(max_exp(k)))
        .into_iter()
        .filter(|m| member(i, m) && member(k, m))
        .collect();
    naive_minimal(&pts)
}

pub fn power_oracle(gens: &[Exps], s: u32) -> BTreeSet<Exps> {
    let n = gens[0].len();
    let mut acc: Vec<Exps> = vec![vec![0; n]];
    for _ in 0..s {
        acc = acc.iter().flat_map(|a| gens.iter().map(move |g| mul(a, g))).collect();
        acc = naive_minimal(&acc).into_iter().collect();
    }
    acc.into_iter().collect()
}

/// Irredundant irreducible decomposition by splitting a mixed generator
/// `x_i^a h` into `(I + x_i^a) ∩ (I + h)`; each component is returned as the
/// exponent vector of its pure powers (0 for an absent variable).
pub fn irreducible_components(n: usize, gens: &[Exps]) -> Vec<Exps> {
    fn split(gens: Vec<Exps>, out: &mut Vec<Exps>) {
        let gens: Vec<Exps> = naive_minimal(&gens).into_iter().collect();
        let mixed = gens.iter().position(|g| g.iter().filter(|&&e| e > 0).count() > 1);
        match mixed {
            None => {
                let mut comp = vec![0; gens[0].len()];
                for g in &gens {
                    let (k, &e) = g.iter().enumerate().find(|(_, &e)| e > 0).expect("unit ideal excluded");
                    comp[k] = e;
                }
                out.push(comp);
            }
            Some(idx) => {
                let g = &gens[idx];
                let k = g.iter().position(|&e| e > 0).unwrap();
                let mut pure = vec![0; g.len()];
                pure[k] = g[k];
                let mut rest = g.clone();
                rest[k] = 0;
                let mut a = gens.clone();
                a.push(pure);
                let mut b = gens.clone();
                b.push(rest);
                split(a, out);
                split(b, out);
            }
        }
    }
    let mut comps = Vec::new();
    split(gens.to_vec(), &mut comps);
    let comps: Vec<Exps> = comps.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    let comp_gens = |c: &Exps| -> Vec<Exps> {
        c.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                let mut v = vec![0; n];
                v[k] = e;
                v
            })
            .collect()
    };
    let bound = max_exp(gens);
    let pts = box_points(n, bound);
    let mut keep = comps.clone();
    let mut idx = 0;
    while idx < keep.len() {
        let others: Vec<Vec<Exps>> =
            keep.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, c)| comp_gens(c)).collect();
        let mine = comp_gens(&keep[idx]);
        let redundant = !others.is_empty()
            && pts.iter().all(|m| !others.iter().all(|o| member(o, m)) || member(&mine, m));
        if redundant {
            keep.remove(idx);
        } else {
            idx += 1;
        }
    }
    keep
}

/// Associated primes as supports, from the irredundant irreducible components.
pub fn ass_oracle(n: usize, gens: &[Exps]) -> BTreeSet<Vec<usize>> {
    irreducible_components(n, gens)
        .iter()
        .map(|c| c.iter().enumerate().filter(|(_, &e)| e > 0).map(|(k, _)| k).collect())
        .collect()
}

/// Edges of `H_{p,q}` on vertices `(i-1)p + j`, built from the definition.
pub fn hpq_edges(p: usize, q: usize) -> Vec<(usize, usize)> {
    let v = |i: usize, j: usize| (i - 1) * p + j;
    let mut e = Vec::new();
    for i in 1..=q {
        for a in 0..p {
            for b in a + 1..p {
                e.push((v(i, a), v(i, b)));
            }
        }
    }
    for i in 1..q {
        for j in 0..p {
            e.push((v(i, j), v(i + 1, j)));
        }
    }
    for j in 0..p {
        e.push((v(1, j), v(q, p - 1 - j)));
    }
    e
}

/// Minimal vertex covers by checking every subset.
pub fn brute_minimal_covers(n: usize, edges: &[(usize, usize)]) -> BTreeSet<Vec<usize>> {
    assert!(n <= 20);
    let is_cover = |mask: u32| edges.iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1);
    (0u32..1 << n)
        .filter(|&m| is_cover(m) && (0..n).all(|v| m >> v & 1 == 0 || !is_cover(m & !(1 << v))))
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect()
}

/// Plain backtracking `k`-colorability in vertex order.
pub fn colorable(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    fn go(v: usize, adj: &[Vec<usize>], k: usize, col: &mut Vec<usize>, used: usize) -> bool {
        if v == adj.len() {
            return true;
        }
        // a fresh color is only tried once
        for c in 0..k.min(used + 1) {
            if adj[v].iter().all(|&u| u >= v || col[u] != c) {
                col[v] = c;
                if go(v + 1, adj, k, col, used.max(c + 1)) {
                    return true;
                }
            }
        }
        false
    }
    go(0, &adj, k, &mut vec![usize::MAX; n], 0)
}

pub fn delete_vertex(n: usize, edges: &[(usize, usize)], v: usize) -> (usize, Vec<(usize, usize)>) {
    let f = |u: usize| if u > v { u - 1 } else { u };
    (n - 1, edges.iter().filter(|&&(a, b)| a != v && b != v).map(|&(a, b)| (f(a), f(b))).collect())
}

/// `m ∈ J^s` for `J` generated by `covers`, by trying all multisets.
pub fn in_power_of(covers: &[Exps], s: u32, m: &[u32]) -> bool {
    fn go(covers: &[Exps], start: usize, s: u32, m: &mut Vec<u32>) -> bool {
        if s == 0 {
            return true;
        }
        for c in start..covers.len() {
            if divides(&covers[c], m) {
                for (a, b) in m.iter_mut().zip(&covers[c]) {
                    *a -= b;
                }
                let ok = go(covers, c, s - 1, m);
                for (a, b) in m.iter_mut().zip(&covers[c]) {
                    *a += b;
                }
                if ok {
                    return true;
                }
            }
        }
        false
    }
    go(covers, 0, s, &mut m.to_vec())
}

pub fn support_vec(n: usize, set: &[usize]) -> Exps {
    let mut v = vec![0; n];
    for &k in set {
        v[k] = 1;
    }
    v
}
