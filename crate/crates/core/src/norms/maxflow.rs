//! Dinic's algorithm on real capacities with capacity-scaling phases.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    rev: usize,
    cap: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        Self { adj: vec![Vec::new(); nodes], level: vec![-1; nodes], next: vec![0; nodes] }
    }

    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: f64) {
        let rf = self.adj[to].len();
        let rt = self.adj[from].len();
        self.adj[from].push(Arc { to, rev: rf, cap });
        self.adj[to].push(Arc { to: from, rev: rt, cap: 0.0 });
    }

    fn bfs(&mut self, s: usize, t: usize, threshold: f64) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for a in &self.adj[u] {
                if a.cap >= threshold && self.level[a.to] < 0 {
                    self.level[a.to] = self.level[u] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: f64, threshold: f64) -> f64 {
        if u == t {
            return pushed;
        }
        while self.next[u] < self.adj[u].len() {
            let i = self.next[u];
            let Arc { to, cap, .. } = self.adj[u][i];
            if cap >= threshold && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, t, pushed.min(cap), threshold);
                if got > 0.0 {
                    self.adj[u][i].cap -= got;
                    let rev = self.adj[u][i].rev;
                    self.adj[to][rev].cap += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0.0
    }

    /// Maximum flow; residual arcs below `eps` count as saturated.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, eps: f64) -> f64 {
        let max_cap = self.adj[s].iter().map(|a| a.cap).fold(0.0, f64::max);
        let mut total = 0.0;
        if max_cap <= eps {
            return total;
        }
        let mut threshold = max_cap.log2().floor().exp2();
        loop {
            let threshold_eff = threshold.max(eps);
            while self.bfs(s, t, threshold_eff) {
                self.next.fill(0);
                loop {
                    let f = self.dfs(s, t, f64::INFINITY, threshold_eff);
                    if f <= 0.0 {
                        break;
                    }
                    total += f;
                }
            }
            if threshold <= eps {
                break;
            }
            threshold *= 0.5;
        }
        total
    }

    /// Nodes reachable from `s` through arcs with residual above `eps`.
    pub(crate) fn source_side(&self, s: usize, eps: f64) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for a in &self.adj[u] {
                if a.cap > eps && !seen[a.to] {
                    seen[a.to] = true;
                    stack.push(a.to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        // CLRS example, max flow 23
        let mut g = FlowNetwork::new(6);
        for (u, v, c) in [
            (0, 1, 16.0),
            (0, 2, 13.0),
            (1, 3, 12.0),
            (2, 1, 4.0),
            (2, 4, 14.0),
            (3, 2, 9.0),
            (3, 5, 20.0),
            (4, 3, 7.0),
            (4, 5, 4.0),
        ] {
            g.add_arc(u, v, c);
        }
        assert!((g.max_flow(0, 5, 1e-12) - 23.0).abs() < 1e-12);
        let side = g.source_side(0, 1e-12);
        assert!(side[0] && !side[5]);
    }

    #[test]
    fn fractional_capacities() {
        let mut g = FlowNetwork::new(4);
        g.add_arc(0, 1, 0.3);
        g.add_arc(0, 2, 1e-3);
        g.add_arc(1, 3, 0.1);
        g.add_arc(2, 3, 5.0);
        g.add_arc(1, 2, 0.05);
        assert!((g.max_flow(0, 3, 1e-15) - 0.151).abs() < 1e-14);
    }
}
