//! Width of a band of consecutive layers of `Q(G)` by minimum flow on the
//! cover digraph.
//!
//! Inside a band the order is the transitive closure of the covers
//! `A < A + b`, so a minimum chain cover is a maximum matching of the closure.
//! The matching is the maximum flow of the network
//!
//! ```text
//! s -> out(v)         capacity 1
//! in(v) -> t          capacity 1
//! out(v) -> in(u)     unbounded, for each cover v < u
//! in(v) -> out(v)     unbounded
//! ```
//!
//! whose residual graph is walked implicitly. Matchings between consecutive
//! layers give the starting flow and Dinic's algorithm finishes it.

use rustc_hash::FxHashMap;

use super::matching::{hopcroft_karp, Bipartite, NIL};
use crate::cube::enumerate_up_to;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::{mask, VertexSet};

/// Largest band the flow solver accepts.
pub const BAND_ELEMENT_LIMIT: usize = 4_000_000;
/// Largest number of cover edges inside the band.
pub const BAND_EDGE_LIMIT: usize = 40_000_000;

const INF: u32 = u32::MAX;

pub(crate) struct BandSolution {
    /// The band, layer by layer, lexicographic inside each layer.
    pub elements: Vec<VertexSet>,
    /// Index chains, each increasing.
    pub chains: Vec<Vec<u32>>,
    pub antichain: Vec<u32>,
}

struct Network {
    n: usize,
    up_off: Vec<usize>,
    up_to: Vec<u32>,
    down_off: Vec<usize>,
    down_src: Vec<u32>,
    down_edge: Vec<u32>,
    flow: Vec<u32>,
    through: Vec<u32>,
    src_used: Vec<bool>,
    sink_used: Vec<bool>,
}

fn band_elements(g: &Graph, lo: usize, hi: usize) -> Result<Vec<VertexSet>> {
    let mut out = Vec::new();
    for a in enumerate_up_to(g, hi) {
        if a.len() >= lo {
            if out.len() == BAND_ELEMENT_LIMIT {
                return Err(Error::budget("band width", format!("more than {BAND_ELEMENT_LIMIT} sets"), BAND_ELEMENT_LIMIT));
            }
            out.push(a);
        }
    }
    out.sort_by_key(|a| a.len());
    Ok(out)
}

impl Network {
    fn build(g: &Graph, elements: &[VertexSet], hi: usize) -> Result<Network> {
        let n = elements.len();
        let index: FxHashMap<u64, u32> = elements.iter().enumerate().map(|(i, a)| (a.bits(), i as u32)).collect();
        let full = mask(g.n());
        let mut up_off = Vec::with_capacity(n + 1);
        let mut up_to = Vec::new();
        up_off.push(0);
        for &a in elements {
            if a.len() < hi {
                let free = full & !a.union(g.neighborhood(a)).bits();
                let mut rest = free;
                while rest != 0 {
                    let low = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    up_to.push(index[&(a.bits() | low)]);
                }
                if up_to.len() > BAND_EDGE_LIMIT {
                    return Err(Error::budget("band width", format!("more than {BAND_EDGE_LIMIT} cover edges"), BAND_EDGE_LIMIT));
                }
            }
            up_off.push(up_to.len());
        }
        let m = up_to.len();
        let mut down_off = vec![0usize; n + 1];
        for &u in &up_to {
            down_off[u as usize + 1] += 1;
        }
        for i in 0..n {
            down_off[i + 1] += down_off[i];
        }
        let mut fill = down_off.clone();
        let mut down_src = vec![0u32; m];
        let mut down_edge = vec![0u32; m];
        for v in 0..n {
            for e in up_off[v]..up_off[v + 1] {
                let u = up_to[e] as usize;
                down_src[fill[u]] = v as u32;
                down_edge[fill[u]] = e as u32;
                fill[u] += 1;
            }
        }
        Ok(Network {
            n,
            up_off,
            up_to,
            down_off,
            down_src,
            down_edge,
            flow: vec![0; m],
            through: vec![0; n],
            src_used: vec![false; n],
            sink_used: vec![false; n],
        })
    }

    /// Unit flows from maximum matchings between consecutive layers.
    fn seed(&mut self, layer_start: &[usize]) {
        for w in layer_start.windows(3) {
            let (a, b, c) = (w[0], w[1], w[2]);
            let mut offsets = Vec::with_capacity(b - a + 1);
            let mut targets = Vec::with_capacity(self.up_off[b] - self.up_off[a]);
            offsets.push(0);
            for v in a..b {
                targets.extend(self.up_to[self.up_off[v]..self.up_off[v + 1]].iter().map(|&u| u - b as u32));
                offsets.push(targets.len());
            }
            let bip = Bipartite {
                left: b - a,
                right: c - b,
                offsets,
                targets,
            };
            let m = hopcroft_karp(&bip);
            for (i, &j) in m.mate_left.iter().enumerate() {
                if j == NIL {
                    continue;
                }
                let (v, u) = (a + i, b + j as usize);
                let e = (self.up_off[v]..self.up_off[v + 1]).find(|&e| self.up_to[e] as usize == u).unwrap();
                self.flow[e] = 1;
                self.src_used[v] = true;
                self.sink_used[u] = true;
            }
        }
    }

    // Nodes: out(v) = v, in(v) = n + v, s = 2n, t = 2n + 1.

    fn bfs(&self, level: &mut [u32], queue: &mut Vec<u32>) -> Option<u32> {
        let n = self.n;
        level.fill(INF);
        queue.clear();
        for v in 0..n {
            if !self.src_used[v] {
                level[v] = 1;
                queue.push(v as u32);
            }
        }
        let mut t_level = None;
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head] as usize;
            head += 1;
            let next = level[x] + 1;
            if t_level.is_some_and(|t| next >= t) {
                continue;
            }
            let visit = |y: usize, level: &mut [u32], queue: &mut Vec<u32>| {
                if level[y] == INF {
                    level[y] = next;
                    queue.push(y as u32);
                }
            };
            if x < n {
                for e in self.up_off[x]..self.up_off[x + 1] {
                    visit(n + self.up_to[e] as usize, level, queue);
                }
                if self.through[x] > 0 {
                    visit(n + x, level, queue);
                }
            } else {
                let u = x - n;
                if !self.sink_used[u] && t_level.is_none() {
                    t_level = Some(next);
                }
                visit(u, level, queue);
                for k in self.down_off[u]..self.down_off[u + 1] {
                    if self.flow[self.down_edge[k] as usize] > 0 {
                        visit(self.down_src[k] as usize, level, queue);
                    }
                }
            }
        }
        t_level
    }

    fn arc_count(&self, x: usize) -> usize {
        if x < self.n {
            self.up_off[x + 1] - self.up_off[x] + 1
        } else {
            let u = x - self.n;
            2 + self.down_off[u + 1] - self.down_off[u]
        }
    }

    /// Head of the `k`-th arc at `x` if it has residual capacity. The sink is
    /// reported as `usize::MAX`.
    fn arc(&self, x: usize, k: usize) -> Option<usize> {
        let n = self.n;
        if x < n {
            let deg = self.up_off[x + 1] - self.up_off[x];
            if k < deg {
                Some(n + self.up_to[self.up_off[x] + k] as usize)
            } else {
                (self.through[x] > 0).then_some(n + x)
            }
        } else {
            let u = x - n;
            match k {
                0 => (!self.sink_used[u]).then_some(usize::MAX),
                1 => Some(u),
                _ => {
                    let slot = self.down_off[u] + k - 2;
                    (self.flow[self.down_edge[slot] as usize] > 0).then_some(self.down_src[slot] as usize)
                }
            }
        }
    }

    fn push(&mut self, x: usize, k: usize) {
        let n = self.n;
        if x < n {
            let deg = self.up_off[x + 1] - self.up_off[x];
            if k < deg {
                self.flow[self.up_off[x] + k] += 1;
            } else {
                self.through[x] -= 1;
            }
        } else {
            let u = x - n;
            match k {
                0 => self.sink_used[u] = true,
                1 => self.through[u] += 1,
                _ => self.flow[self.down_edge[self.down_off[u] + k - 2] as usize] -= 1,
            }
        }
    }

    fn dinic(&mut self) -> Vec<u32> {
        let n = self.n;
        let mut level = vec![INF; 2 * n];
        let mut queue = Vec::new();
        let mut cur = vec![0usize; 2 * n];
        let mut stack: Vec<usize> = Vec::new();
        while let Some(t_level) = self.bfs(&mut level, &mut queue) {
            cur.fill(0);
            for root in 0..n {
                if self.src_used[root] || level[root] != 1 {
                    continue;
                }
                stack.clear();
                stack.push(root);
                while let Some(&x) = stack.last() {
                    let mut moved = false;
                    while cur[x] < self.arc_count(x) {
                        if let Some(y) = self.arc(x, cur[x]) {
                            if y == usize::MAX {
                                if level[x] + 1 == t_level {
                                    for &z in &stack {
                                        self.push(z, cur[z]);
                                    }
                                    self.src_used[root] = true;
                                    stack.clear();
                                    moved = true;
                                    break;
                                }
                            } else if level[y] == level[x] + 1 && level[y] < t_level {
                                stack.push(y);
                                moved = true;
                                break;
                            }
                        }
                        cur[x] += 1;
                    }
                    if !moved {
                        level[x] = INF;
                        stack.pop();
                        if let Some(&p) = stack.last() {
                            cur[p] += 1;
                        }
                    }
                }
            }
        }
        level
    }

    /// Splits the flow into source-to-sink paths; `succ[v] = u` when a path
    /// leaves through `out(v)` and ends at `in(u)`.
    fn decompose(&mut self) -> Vec<u32> {
        let n = self.n;
        let mut succ = vec![NIL; n];
        let mut ptr: Vec<usize> = self.up_off[..n].to_vec();
        for v in 0..n {
            if !self.src_used[v] {
                continue;
            }
            let mut x = v;
            loop {
                while self.flow[ptr[x]] == 0 {
                    ptr[x] += 1;
                }
                let e = ptr[x];
                self.flow[e] -= 1;
                let u = self.up_to[e] as usize;
                if self.sink_used[u] {
                    self.sink_used[u] = false;
                    succ[v] = u as u32;
                    break;
                }
                self.through[u] -= 1;
                x = u;
            }
        }
        succ
    }
}

/// Minimum chain cover and maximum antichain of layers `lo..=hi` of `Q(g)`.
pub(crate) fn solve_band(g: &Graph, lo: usize, hi: usize) -> Result<BandSolution> {
    let elements = band_elements(g, lo, hi)?;
    let n = elements.len();
    let mut net = Network::build(g, &elements, hi)?;
    let mut layer_start = vec![0usize];
    for i in 1..n {
        if elements[i].len() != elements[i - 1].len() {
            layer_start.push(i);
        }
    }
    layer_start.push(n);
    net.seed(&layer_start);
    let level = net.dinic();
    let antichain = (0..n).filter(|&v| level[v] != INF && level[n + v] == INF).map(|v| v as u32).collect();

    let had_pred = net.sink_used.clone();
    let succ = net.decompose();
    let mut chains = Vec::new();
    for start in 0..n {
        if had_pred[start] {
            continue;
        }
        let mut chain = vec![start as u32];
        let mut x = start;
        while succ[x] != NIL {
            x = succ[x] as usize;
            chain.push(x as u32);
        }
        chains.push(chain);
    }
    Ok(BandSolution {
        elements,
        chains,
        antichain,
    })
}
