//! Exact integer max-flow / min-cut on a fixed sparse graph with per-solve
//! terminal capacities (Dinic's algorithm).
//!
//! The neighbor arcs are built once; each solve supplies source and sink
//! capacities per node and reuses all scratch buffers, so repeated cuts on
//! the same grid cost no allocation. Callers quantize their real weights to
//! `u64` and use an "infinite" capacity strictly larger than the sum of all
//! finite capacities; every augmenting path crosses at least one finite arc,
//! which keeps all intermediate values in range.

use alloc::vec;
use alloc::vec::Vec;

/// A fixed undirected graph prepared for repeated s-t cuts with varying
/// terminal capacities.
pub struct GridCut {
    n: usize,
    first: Vec<u32>,
    to: Vec<u32>,
    twin: Vec<u32>,
    base_cap: Vec<u64>,
    // per-solve scratch
    cap: Vec<u64>,
    src: Vec<u64>,
    snk: Vec<u64>,
    level: Vec<i32>,
    iter: Vec<u32>,
    queue: Vec<u32>,
}

impl GridCut {
    /// Builds the arc structure from undirected edges `(u, v, cap)`.
    pub fn new(n: usize, edges: &[(u32, u32, u64)]) -> Self {
        let m = edges.len();
        let mut deg = vec![0u32; n + 1];
        for &(u, v, _) in edges {
            deg[u as usize + 1] += 1;
            deg[v as usize + 1] += 1;
        }
        let mut first = deg;
        for i in 0..n {
            first[i + 1] += first[i];
        }
        let mut to = vec![0u32; 2 * m];
        let mut twin = vec![0u32; 2 * m];
        let mut base_cap = vec![0u64; 2 * m];
        let mut cursor = first.clone();
        for &(u, v, c) in edges {
            let eu = cursor[u as usize];
            cursor[u as usize] += 1;
            let ev = cursor[v as usize];
            cursor[v as usize] += 1;
            to[eu as usize] = v;
            to[ev as usize] = u;
            twin[eu as usize] = ev;
            twin[ev as usize] = eu;
            base_cap[eu as usize] = c;
            base_cap[ev as usize] = c;
        }
        GridCut {
            n,
            first,
            to,
            twin,
            base_cap,
            cap: vec![0; 2 * m],
            src: vec![0; n],
            snk: vec![0; n],
            level: vec![-1; n],
            iter: vec![0; n],
            queue: Vec::with_capacity(n),
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    fn bfs(&mut self) -> bool {
        self.level.fill(-1);
        self.queue.clear();
        for i in 0..self.n {
            if self.src[i] > 0 {
                self.level[i] = 0;
                self.queue.push(i as u32);
            }
        }
        let mut reached = false;
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head] as usize;
            head += 1;
            if self.snk[u] > 0 {
                reached = true;
            }
            for e in self.first[u]..self.first[u + 1] {
                let v = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    self.queue.push(v as u32);
                }
            }
        }
        reached
    }

    fn dfs(&mut self, u: usize, limit: u64) -> u64 {
        let mut pushed = 0u64;
        if self.snk[u] > 0 {
            let d = limit.min(self.snk[u]);
            self.snk[u] -= d;
            pushed += d;
            if pushed == limit {
                return pushed;
            }
        }
        while self.iter[u] < self.first[u + 1] {
            let e = self.iter[u] as usize;
            let v = self.to[e] as usize;
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, (limit - pushed).min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    let t = self.twin[e] as usize;
                    self.cap[t] += d;
                    pushed += d;
                    if pushed == limit {
                        return pushed;
                    }
                    continue;
                }
            }
            self.iter[u] += 1;
        }
        pushed
    }

    /// Runs a min-cut with the given terminal capacities and returns the
    /// source side. `terminals` assigns `(source_cap, sink_cap)` per node.
    pub fn min_cut(&mut self, mut terminals: impl FnMut(usize) -> (u64, u64)) -> Vec<bool> {
        self.cap.copy_from_slice(&self.base_cap);
        for i in 0..self.n {
            let (s, t) = terminals(i);
            // cancel opposing terminals so only the surplus flows
            let common = s.min(t);
            self.src[i] = s - common;
            self.snk[i] = t - common;
        }
        while self.bfs() {
            self.iter.copy_from_slice(&self.first[..self.n]);
            for i in 0..self.n {
                if self.src[i] > 0 && self.level[i] == 0 {
                    let pushed = self.dfs(i, self.src[i]);
                    self.src[i] -= pushed;
                }
            }
        }
        // source side: residual-reachable from nodes with leftover source
        self.level.fill(-1);
        self.queue.clear();
        for i in 0..self.n {
            if self.src[i] > 0 {
                self.level[i] = 0;
                self.queue.push(i as u32);
            }
        }
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head] as usize;
            head += 1;
            for e in self.first[u]..self.first[u + 1] {
                let v = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && self.level[v] < 0 {
                    self.level[v] = 0;
                    self.queue.push(v as u32);
                }
            }
        }
        (0..self.n).map(|i| self.level[i] >= 0).collect()
    }
}
