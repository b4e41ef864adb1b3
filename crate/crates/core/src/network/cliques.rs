use super::AisGraph;

/// True iff every pair of distinct nodes in `nodes` is adjacent.
pub fn verify_clique(g: &AisGraph, nodes: &[usize]) -> bool {
    nodes
        .iter()
        .enumerate()
        .all(|(i, &a)| nodes[i + 1..].iter().all(|&b| a == b || g.has_edge(a, b)))
}

/// All maximal cliques (Bron–Kerbosch with pivoting). Each clique is sorted;
/// the list is ordered by size descending, then lexicographically.
pub fn maximal_cliques(g: &AisGraph) -> Vec<Vec<usize>> {
    let neighbours: Vec<Vec<usize>> = (0..g.node_count())
        .map(|i| g.neighbors(i).collect())
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    let candidates: Vec<usize> = (0..g.node_count()).collect();
    expand(&neighbours, &mut current, candidates, Vec::new(), &mut out);
    for clique in &mut out {
        clique.sort_unstable();
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out
}

fn intersect(sorted: &[usize], with: &[usize]) -> Vec<usize> {
    sorted
        .iter()
        .copied()
        .filter(|x| with.binary_search(x).is_ok())
        .collect()
}

fn expand(
    neighbours: &[Vec<usize>],
    current: &mut Vec<usize>,
    mut candidates: Vec<usize>,
    mut excluded: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(current.clone());
        }
        return;
    }
    // pivot maximises |candidates ∩ N(pivot)|
    let pivot = candidates
        .iter()
        .chain(&excluded)
        .copied()
        .max_by_key(|&u| intersect(&candidates, &neighbours[u]).len())
        .expect("candidates nonempty");
    let branch: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|v| neighbours[pivot].binary_search(v).is_err())
        .collect();
    for v in branch {
        current.push(v);
        expand(
            neighbours,
            current,
            intersect(&candidates, &neighbours[v]),
            intersect(&excluded, &neighbours[v]),
            out,
        );
        current.pop();
        candidates.retain(|&c| c != v);
        let pos = excluded.binary_search(&v).unwrap_or_else(|p| p);
        excluded.insert(pos, v);
    }
}
