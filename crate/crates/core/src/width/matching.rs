//! Hopcroft–Karp maximum bipartite matching on a CSR adjacency.

pub(crate) const NIL: u32 = u32::MAX;
const INF: u32 = u32::MAX;

/// Left vertices `0..left`, right vertices `0..right`, edges left to right.
pub(crate) struct Bipartite {
    pub left: usize,
    pub right: usize,
    pub offsets: Vec<usize>,
    pub targets: Vec<u32>,
}

impl Bipartite {
    #[inline]
    fn adj(&self, u: usize) -> &[u32] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }
}

pub(crate) struct Matching {
    pub mate_left: Vec<u32>,
    pub mate_right: Vec<u32>,
    pub size: usize,
}

pub(crate) fn hopcroft_karp(g: &Bipartite) -> Matching {
    let mut ml = vec![NIL; g.left];
    let mut mr = vec![NIL; g.right];
    let mut size = 0;
    for u in 0..g.left {
        if let Some(&v) = g.adj(u).iter().find(|&&v| mr[v as usize] == NIL) {
            ml[u] = v;
            mr[v as usize] = u as u32;
            size += 1;
        }
    }

    let mut dist = vec![INF; g.left];
    let mut cur = vec![0usize; g.left];
    let mut queue = Vec::with_capacity(g.left);
    let mut stack: Vec<u32> = Vec::new();
    loop {
        queue.clear();
        for u in 0..g.left {
            if ml[u] == NIL {
                dist[u] = 0;
                queue.push(u as u32);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            for &v in g.adj(u) {
                let w = mr[v as usize];
                if w == NIL {
                    found = true;
                } else if dist[w as usize] == INF {
                    dist[w as usize] = dist[u] + 1;
                    queue.push(w);
                }
            }
        }
        if !found {
            break;
        }

        cur.copy_from_slice(&g.offsets[..g.left]);
        for root in 0..g.left {
            if ml[root] != NIL {
                continue;
            }
            stack.clear();
            stack.push(root as u32);
            while let Some(&top) = stack.last() {
                let u = top as usize;
                let end = g.offsets[u + 1];
                let mut advanced = false;
                while cur[u] < end {
                    let v = g.targets[cur[u]];
                    let w = mr[v as usize];
                    if w == NIL {
                        for &x in stack.iter().rev() {
                            let x = x as usize;
                            let y = g.targets[cur[x]];
                            ml[x] = y;
                            mr[y as usize] = x as u32;
                        }
                        size += 1;
                        stack.clear();
                        advanced = true;
                        break;
                    }
                    if dist[w as usize] == dist[u] + 1 {
                        stack.push(w);
                        advanced = true;
                        break;
                    }
                    cur[u] += 1;
                }
                if !advanced {
                    dist[u] = INF;
                    stack.pop();
                    if let Some(&p) = stack.last() {
                        cur[p as usize] += 1;
                    }
                }
            }
        }
    }
    Matching {
        mate_left: ml,
        mate_right: mr,
        size,
    }
}

/// Alternating reachability from the unmatched left vertices, as
/// `(left visited, right visited)`.
pub(crate) fn alternating_reach(g: &Bipartite, m: &Matching) -> (Vec<bool>, Vec<bool>) {
    let mut seen_l = vec![false; g.left];
    let mut seen_r = vec![false; g.right];
    let mut queue: Vec<u32> = (0..g.left as u32).filter(|&u| m.mate_left[u as usize] == NIL).collect();
    for &u in &queue {
        seen_l[u as usize] = true;
    }
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head] as usize;
        head += 1;
        for &v in g.adj(u) {
            if seen_r[v as usize] {
                continue;
            }
            seen_r[v as usize] = true;
            let w = m.mate_right[v as usize];
            if w != NIL && !seen_l[w as usize] {
                seen_l[w as usize] = true;
                queue.push(w);
            }
        }
    }
    (seen_l, seen_r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn csr(left: usize, right: usize, edges: &[(usize, usize)]) -> Bipartite {
        let mut adj = vec![Vec::new(); left];
        for &(u, v) in edges {
            adj[u].push(v as u32);
        }
        let mut offsets = vec![0];
        let mut targets = Vec::new();
        for a in adj {
            targets.extend(a);
            offsets.push(targets.len());
        }
        Bipartite { left, right, offsets, targets }
    }

    fn brute(left: usize, edges: &[(usize, usize)]) -> usize {
        fn go(u: usize, left: usize, edges: &[(usize, usize)], used: u64) -> usize {
            if u == left {
                return 0;
            }
            let mut best = go(u + 1, left, edges, used);
            for &(a, b) in edges {
                if a == u && used >> b & 1 == 0 {
                    best = best.max(1 + go(u + 1, left, edges, used | 1 << b));
                }
            }
            best
        }
        go(0, left, edges, 0)
    }

    #[test]
    fn needs_augmenting_path() {
        let g = csr(2, 2, &[(0, 0), (0, 1), (1, 0)]);
        let m = hopcroft_karp(&g);
        assert_eq!(m.size, 2);
        assert_eq!(m.mate_left, vec![1, 0]);
    }

    proptest! {
        #[test]
        fn matches_brute_force_and_koenig(
            left in 1usize..7,
            right in 1usize..7,
            raw in proptest::collection::vec((0usize..7, 0usize..7), 0..20),
        ) {
            let mut edges: Vec<_> = raw.into_iter().filter(|&(u, v)| u < left && v < right).collect();
            edges.sort_unstable();
            edges.dedup();
            let g = csr(left, right, &edges);
            let m = hopcroft_karp(&g);
            prop_assert_eq!(m.size, brute(left, &edges));
            let (zl, zr) = alternating_reach(&g, &m);
            // cover = (L \ Z) + (R n Z) touches every edge and has size |M|
            let cover = zl.iter().filter(|&&z| !z).count() + zr.iter().filter(|&&z| z).count();
            prop_assert_eq!(cover, m.size);
            for &(u, v) in &edges {
                prop_assert!(!zl[u] || zr[v]);
            }
        }
    }
}
