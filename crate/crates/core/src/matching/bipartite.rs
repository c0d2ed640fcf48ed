//! Maximum-cardinality bipartite matching (Kuhn's augmenting paths).

/// `adj[l]` lists the right-side neighbours of left vertex `l`. Returns
/// `(match_left, match_right)`. Deterministic: left vertices are processed
/// in order and neighbours tried in the given order.
pub fn max_bipartite_matching(
    n_left: usize,
    n_right: usize,
    adj: &[Vec<usize>],
) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    assert_eq!(adj.len(), n_left);
    let mut match_left: Vec<Option<usize>> = vec![None; n_left];
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];

    fn try_augment(
        l: usize,
        adj: &[Vec<usize>],
        visited: &mut [bool],
        match_left: &mut [Option<usize>],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for &r in &adj[l] {
            if visited[r] {
                continue;
            }
            visited[r] = true;
            let free = match match_right[r] {
                None => true,
                Some(l2) => try_augment(l2, adj, visited, match_left, match_right),
            };
            if free {
                match_left[l] = Some(r);
                match_right[r] = Some(l);
                return true;
            }
        }
        false
    }

    for l in 0..n_left {
        let mut visited = vec![false; n_right];
        try_augment(l, adj, &mut visited, &mut match_left, &mut match_right);
    }
    (match_left, match_right)
}
