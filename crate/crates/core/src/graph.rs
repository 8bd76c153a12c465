//! Host graphs on `[n]` and their edge-list text format.
//!
//! Random graphs use ChaCha8 (`rand_chacha` 0.3) seeded through
//! `SeedableRng::seed_from_u64`. Pairs `{u, v}`, `u < v`, are visited in
//! lexicographic order and each draws one `u64`; the pair becomes an edge
//! when the top 53 bits, read as a fraction in `[0, 1)`, are below `p`.
//! That rule is frozen: the same `(n, p, seed)` gives the same graph on any
//! platform and in any later version.

use std::fmt::Write as _;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::set::{VertexSet, MAX_VERTICES};

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    n: usize,
    #[serde(skip)]
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("graph must have at least one vertex".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::budget("vertex count", n, MAX_VERTICES));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u - 1] |= 1 << (v - 1);
        self.adj[v - 1] |= 1 << (u - 1);
    }

    /// Builds a graph from 1-indexed edges, rejecting loops and repeats.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_new_edge(u, v).map_err(Error::InvalidArgument)?;
            g.add_edge(u, v);
        }
        Ok(g)
    }

    fn check_new_edge(&self, u: usize, v: usize) -> std::result::Result<(), String> {
        let n = self.n;
        if u == 0 || v == 0 || u > n || v > n {
            return Err(format!("edge {{{u},{v}}} has a vertex outside 1..={n}"));
        }
        if u == v {
            return Err(format!("self-loop at vertex {u}"));
        }
        if self.has_edge(u, v) {
            return Err(format!("duplicate edge {{{u},{v}}}"));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Neighbourhood of `v` as a set.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(self.adj[v - 1])
    }

    #[inline]
    pub(crate) fn adj_bits(&self) -> &[u64] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u - 1] >> (v - 1) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            let higher = self.adj[u - 1] >> u;
            for off in VertexSet::from_bits(higher).iter() {
                out.push((u, u + off));
            }
        }
        out
    }

    /// Union of the neighbourhoods of the members of `a`.
    #[inline]
    pub fn neighborhood(&self, a: VertexSet) -> VertexSet {
        let mut bits = 0;
        let mut rest = a.bits();
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            bits |= self.adj[i];
            rest &= rest - 1;
        }
        VertexSet::from_bits(bits)
    }

    /// Undirected path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for i in 1..n {
            g.add_edge(i, i + 1);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
        }
        let mut g = Graph::path(n)?;
        g.add_edge(n, 1);
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Graph::empty(n)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 1..=n {
            for v in u + 1..=n {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Complete multipartite graph; parts take consecutive labels in the
    /// order given.
    pub fn complete_multipartite(spec: &PartSpec) -> Result<Self> {
        let n = spec.vertex_count();
        let mut g = Graph::empty(n)?;
        let part = spec.part_of();
        for u in 1..=n {
            for v in u + 1..=n {
                if part[u - 1] != part[v - 1] {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    /// One part of size `4m` followed by `2^(2m)` parts of size `2m`.
    pub fn sperner_gap_family(m: usize) -> Result<Self> {
        Graph::complete_multipartite(&PartSpec::sperner_gap(m)?)
    }

    /// For `0 <= i <= m`, `2^(2^m - 2^i)` parts of size `2^i`.
    pub fn tower_family(m: usize) -> Result<Self> {
        Graph::complete_multipartite(&PartSpec::tower(m)?)
    }

    /// `G(n, p)`; see the module documentation for the sampling rule.
    pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!("edge probability {p} not in [0, 1]")));
        }
        let mut g = Graph::empty(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        for u in 1..=n {
            for v in u + 1..=n {
                let x = (rng.next_u64() >> 11) as f64 * SCALE;
                if x < p {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    /// Parses `"n m"` followed by `m` lines `"u v"`. Line numbers in errors
    /// are 1-based. Trailing whitespace (including `\r`) is ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .split('\n')
            .map(str::trim_end)
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header \"n m\"".into(),
        })?;
        let (n, m) = parse_pair(header).map_err(|message| Error::Parse { line: hline, message })?;
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::Parse {
                line: hline,
                message: format!("vertex count {n} not in 1..={MAX_VERTICES}"),
            });
        }
        let mut g = Graph::empty(n)?;
        let mut seen = 0;
        for (line, body) in lines {
            if seen == m {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the declared {m} edges"),
                });
            }
            let (u, v) = parse_pair(body).map_err(|message| Error::Parse { line, message })?;
            g.check_new_edge(u, v)
                .map_err(|message| Error::Parse { line, message })?;
            g.add_edge(u, v);
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse {
                line: text.split('\n').count(),
                message: format!("expected {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_pair(line: &str) -> std::result::Result<(usize, usize), String> {
    let mut it = line.split_whitespace();
    let mut next = || -> std::result::Result<usize, String> {
        let tok = it.next().ok_or_else(|| format!("expected two integers in {line:?}"))?;
        tok.parse().map_err(|_| format!("not a non-negative integer: {tok:?}"))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(format!("expected two integers in {line:?}"));
    }
    Ok((a, b))
}

/// Part sizes of a complete multipartite graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartSpec {
    sizes: Vec<usize>,
}

impl PartSpec {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidArgument("part list is empty".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidArgument("part sizes must be positive".into()));
        }
        Ok(PartSpec { sizes })
    }

    pub fn sperner_gap(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be positive".into()));
        }
        let count = checked_pow2(2 * m)?;
        let n = 4 * m + count.saturating_mul(2 * m);
        if n > MAX_VERTICES {
            return Err(Error::budget("vertex count", n, MAX_VERTICES));
        }
        let mut sizes = vec![4 * m];
        sizes.extend(std::iter::repeat(2 * m).take(count));
        PartSpec::new(sizes)
    }

    pub fn tower(m: usize) -> Result<Self> {
        if m >= 6 {
            return Err(Error::budget("vertex count", format!("more than 2^{}", 1u64 << m), MAX_VERTICES));
        }
        let top = 1usize << m;
        let mut sizes = Vec::new();
        for i in 0..=m {
            let count = checked_pow2(top - (1 << i))?;
            let size = 1usize << i;
            if count.saturating_mul(size) > 1 << 20 {
                return Err(Error::budget("vertex count", format!(">{}", 1 << 20), MAX_VERTICES));
            }
            sizes.extend(std::iter::repeat(size).take(count));
        }
        let spec = PartSpec::new(sizes)?;
        let n = spec.vertex_count();
        if n > MAX_VERTICES {
            return Err(Error::budget("vertex count", n, MAX_VERTICES));
        }
        Ok(spec)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn vertex_count(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Part index of each vertex (0-indexed by vertex).
    pub fn part_of(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .enumerate()
            .flat_map(|(p, &s)| std::iter::repeat(p).take(s))
            .collect()
    }
}

fn checked_pow2(e: usize) -> Result<usize> {
    if e >= 32 {
        return Err(Error::budget("vertex count", format!("2^{e}"), MAX_VERTICES));
    }
    Ok(1 << e)
}
