use std::collections::VecDeque;

use super::AisGraph;

/// Connected components, largest first; ties keep the order of their smallest node.
/// Members of each component are sorted.
pub fn connected_components(g: &AisGraph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            for next in g.neighbors(node) {
                if !seen[next] {
                    seen[next] = true;
                    members.push(next);
                    queue.push_back(next);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    // stable sort keeps discovery order among equal sizes
    components.sort_by_key(|c| std::cmp::Reverse(c.len()));
    components
}

/// Zero-degree nodes, ascending.
pub fn hermits(g: &AisGraph) -> Vec<usize> {
    (0..g.node_count()).filter(|&i| g.degree(i) == 0).collect()
}
