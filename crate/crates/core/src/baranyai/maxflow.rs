//! Dinic's max-flow, used by the stagewise factorization construction.

#[derive(Debug, Clone, Copy)]
struct Edge {
    to: usize,
    cap: u64,
    rev: usize,
}

/// Handle to a forward edge; lets the caller read residual capacity after
/// the flow has been computed.
#[derive(Debug, Clone, Copy)]
pub(super) struct EdgeRef {
    from: usize,
    idx: usize,
}

pub(super) struct FlowNetwork {
    graph: Vec<Vec<Edge>>,
}

impl FlowNetwork {
    pub(super) fn new(nodes: usize) -> Self {
        Self {
            graph: vec![Vec::new(); nodes],
        }
    }

    pub(super) fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> EdgeRef {
        let idx = self.graph[from].len();
        let rev = self.graph[to].len();
        self.graph[from].push(Edge { to, cap, rev });
        self.graph[to].push(Edge {
            to: from,
            cap: 0,
            rev: idx,
        });
        EdgeRef { from, idx }
    }

    /// Remaining capacity on a forward edge; zero means saturated.
    pub(super) fn residual(&self, e: EdgeRef) -> u64 {
        self.graph[e.from][e.idx].cap
    }

    pub(super) fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let n = self.graph.len();
        let mut flow = 0;
        loop {
            let level = self.bfs_levels(source);
            if level[sink].is_none() {
                return flow;
            }
            let mut iter = vec![0usize; n];
            loop {
                let pushed = self.dfs(source, sink, u64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
    }

    fn bfs_levels(&self, source: usize) -> Vec<Option<u32>> {
        let mut level = vec![None; self.graph.len()];
        level[source] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = level[v].unwrap();
            for e in &self.graph[v] {
                if e.cap > 0 && level[e.to].is_none() {
                    level[e.to] = Some(d + 1);
                    queue.push_back(e.to);
                }
            }
        }
        level
    }

    fn dfs(
        &mut self,
        v: usize,
        sink: usize,
        limit: u64,
        level: &[Option<u32>],
        iter: &mut [usize],
    ) -> u64 {
        if v == sink {
            return limit;
        }
        while iter[v] < self.graph[v].len() {
            let Edge { to, cap, rev } = self.graph[v][iter[v]];
            if cap > 0 && level[to] == Some(level[v].unwrap() + 1) {
                let pushed = self.dfs(to, sink, limit.min(cap), level, iter);
                if pushed > 0 {
                    self.graph[v][iter[v]].cap -= pushed;
                    self.graph[to][rev].cap += pushed;
                    return pushed;
                }
            }
            iter[v] += 1;
        }
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bipartite_flow() {
        // source 0, left {1,2}, right {3,4}, sink 5
        let mut net = FlowNetwork::new(6);
        let s1 = net.add_edge(0, 1, 1);
        let s2 = net.add_edge(0, 2, 1);
        net.add_edge(1, 3, 1);
        net.add_edge(1, 4, 1);
        net.add_edge(2, 3, 1);
        net.add_edge(3, 5, 1);
        net.add_edge(4, 5, 1);
        assert_eq!(net.max_flow(0, 5), 2);
        assert_eq!(net.residual(s1), 0);
        assert_eq!(net.residual(s2), 0);
    }

    #[test]
    fn bottleneck_limits_flow() {
        let mut net = FlowNetwork::new(4);
        net.add_edge(0, 1, 10);
        net.add_edge(1, 2, 3);
        net.add_edge(2, 3, 10);
        assert_eq!(net.max_flow(0, 3), 3);
    }
}
