//! Dense assignment problem (maximum-weight perfect bipartite matching) via
//! the Hungarian algorithm with potentials, O(n^3).

const INF: i64 = i64::MAX / 4;

/// Square cost matrix stored row-major.
pub struct CostMatrix {
    n: usize,
    cost: Vec<i64>,
}

impl CostMatrix {
    pub fn filled(n: usize, value: i64) -> CostMatrix {
        CostMatrix { n, cost: vec![value; n * n] }
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.cost[row * self.n + col] = value;
    }

    fn get(&self, row: usize, col: usize) -> i64 {
        self.cost[row * self.n + col]
    }
}

/// Returns a minimum-cost perfect assignment as `row_to_col`, plus its cost.
/// All entries must be finite; use a large penalty for undesirable cells.
pub fn min_cost_assignment(costs: &CostMatrix) -> (Vec<usize>, i64) {
    let n = costs.n;
    if n == 0 {
        return (vec![], 0);
    }
    // 1-based arrays; p[j] is the row assigned to column j, p[0] is scratch.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = costs.get(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut row_to_col = vec![0usize; n];
    let mut total = 0i64;
    for j in 1..=n {
        row_to_col[p[j] - 1] = j - 1;
        total += costs.get(p[j] - 1, j - 1);
    }
    (row_to_col, total)
}

/// Maximum-weight perfect assignment. `weights[(r, c)]` may be `None` for
/// forbidden cells; a perfect assignment over allowed cells must exist.
pub fn max_weight_assignment(
    n: usize,
    weight: impl Fn(usize, usize) -> Option<i64>,
) -> (Vec<usize>, i64) {
    let mut max_abs: i64 = 1;
    let mut costs = CostMatrix::filled(n, 0);
    let mut allowed = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if let Some(w) = weight(r, c) {
                allowed.push((r, c, w));
                max_abs = max_abs.max(w.abs());
            }
        }
    }
    // Any assignment using a forbidden cell costs more than any allowed one.
    let big = (n as i64 + 2) * (max_abs + 1);
    for cell in costs.cost.iter_mut() {
        *cell = big;
    }
    for (r, c, w) in allowed {
        costs.set(r, c, -w);
    }
    let (assignment, cost) = min_cost_assignment(&costs);
    for (r, &c) in assignment.iter().enumerate() {
        assert!(costs.get(r, c) != big, "no perfect assignment over allowed cells");
    }
    (assignment, -cost)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_max_assignment() {
        // Classic 3x3: optimum picks 4 + 6 + 5.
        let w = [[4, 1, 3], [2, 0, 5], [3, 2, 6]];
        let (_, value) = max_weight_assignment(3, |r, c| Some(w[r][c]));
        // Brute force: max over permutations.
        let mut best = i64::MIN;
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for p in perms {
            best = best.max((0..3).map(|r| w[r][p[r]]).sum());
        }
        assert_eq!(value, best);
    }

    #[test]
    fn forbidden_cells_avoided() {
        // Diagonal always allowed at weight 0, one lucrative off-diagonal pair.
        let (asg, value) = max_weight_assignment(3, |r, c| {
            if r == c {
                Some(0)
            } else if (r, c) == (0, 1) || (r, c) == (1, 0) {
                Some(7)
            } else {
                None
            }
        });
        assert_eq!(value, 14);
        assert_eq!(asg, vec![1, 0, 2]);
    }

    #[test]
    fn empty_matrix() {
        let (asg, value) = max_weight_assignment(0, |_, _| Some(0));
        assert!(asg.is_empty());
        assert_eq!(value, 0);
    }
}
