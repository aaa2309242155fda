//! Brute-force reference implementation shared by the integration tests.
//! Written against the move definitions only, with no code from the crate.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

pub struct Oracle {
    adj: Vec<Vec<bool>>,
}

impl Oracle {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![vec![false; vertex_count]; vertex_count];
        for &(u, v) in edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Oracle { adj }
    }

    pub fn of(g: &rubbling::Graph) -> Self {
        Oracle::new(g.vertex_count(), g.edges())
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn successors(&self, s: &[u32]) -> Vec<Vec<u32>> {
        let n = self.n();
        let mut out = Vec::new();
        for to in 0..n {
            for v in 0..n {
                if !self.adj[v][to] {
                    continue;
                }
                if s[v] >= 2 {
                    let mut t = s.to_vec();
                    t[v] -= 2;
                    t[to] += 1;
                    out.push(t);
                }
                for w in v + 1..n {
                    if self.adj[w][to] && s[v] >= 1 && s[w] >= 1 {
                        let mut t = s.to_vec();
                        t[v] -= 1;
                        t[w] -= 1;
                        t[to] += 1;
                        out.push(t);
                    }
                }
            }
        }
        out
    }

    /// Every distribution reachable from `p`, including `p`.
    pub fn closure(&self, p: &[u32]) -> HashSet<Vec<u32>> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(p.to_vec());
        queue.push_back(p.to_vec());
        while let Some(s) = queue.pop_front() {
            for t in self.successors(&s) {
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    pub fn profile(&self, p: &[u32]) -> Vec<u32> {
        let mut best = p.to_vec();
        for s in self.closure(p) {
            for (b, c) in best.iter_mut().zip(&s) {
                *b = (*b).max(*c);
            }
        }
        best
    }

    pub fn k_solvable(&self, p: &[u32], k: u32) -> bool {
        self.profile(p).iter().all(|&c| c >= k)
    }

    pub fn solvable(&self, p: &[u32]) -> bool {
        self.k_solvable(p, 1)
    }

    pub fn set_max(&self, p: &[u32], set: &[usize]) -> u32 {
        self.closure(p).iter().map(|s| set.iter().map(|&v| s[v]).sum()).max().unwrap_or(0)
    }
}

/// All count vectors of length `n` summing to `m`.
pub fn all_distributions(n: usize, m: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur[i] = c;
            rec(i + 1, left - c, cur, out);
        }
    }
    if n == 0 {
        if m == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, m, &mut cur, &mut out);
    out
}
