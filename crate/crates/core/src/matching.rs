//! Bottleneck assignment: minimise the largest cost of a perfect matching.

/// Perfect matching in the bipartite graph `allowed[i][j]`, as `perm[i] = j`.
fn perfect_matching(allowed: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = allowed.len();
    let mut match_col: Vec<Option<usize>> = vec![None; n];

    fn augment(
        i: usize,
        allowed: &[Vec<bool>],
        seen: &mut [bool],
        match_col: &mut [Option<usize>],
    ) -> bool {
        for j in 0..allowed.len() {
            if allowed[i][j] && !seen[j] {
                seen[j] = true;
                let free = match match_col[j] {
                    None => true,
                    Some(other) => augment(other, allowed, seen, match_col),
                };
                if free {
                    match_col[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }

    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, allowed, &mut seen, &mut match_col) {
            return None;
        }
    }
    let mut perm = vec![0; n];
    for (j, m) in match_col.iter().enumerate() {
        perm[m.expect("perfect matching covers every column")] = j;
    }
    Some(perm)
}

/// Minimises `max_i costs[i][perm[i]]` over permutations.
///
/// Bisects over the sorted distinct cost values, testing each threshold with
/// an augmenting-path matching. Returns the optimal value and a permutation
/// attaining it, preferring the identity when it is optimal.
pub fn bottleneck_assignment(costs: &[Vec<f64>]) -> (f64, Vec<usize>) {
    let n = costs.len();
    if n == 0 {
        return (0.0, Vec::new());
    }
    let identity_cost = (0..n).map(|i| costs[i][i]).fold(0.0, f64::max);
    let mut values: Vec<f64> = costs.iter().flatten().copied().collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    let feasible = |thr: f64| {
        let allowed: Vec<Vec<bool>> = costs
            .iter()
            .map(|row| row.iter().map(|&c| c <= thr).collect())
            .collect();
        perfect_matching(&allowed)
    };
    let (mut lo, mut hi) = (0usize, values.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(values[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let best = values[lo];
    if identity_cost <= best {
        return (best, (0..n).collect());
    }
    let perm = feasible(best).expect("largest threshold admits every edge");
    (best, perm)
}

/// Optimal pairing of two equally long lists of complex values, minimising
/// the largest distance. Returns that distance and `perm` with `a[i] ~ b[perm[i]]`.
pub fn pair_values(a: &[crate::matrix::C64], b: &[crate::matrix::C64]) -> (f64, Vec<usize>) {
    let costs: Vec<Vec<f64>> = a
        .iter()
        .map(|x| b.iter().map(|y| (x - y).norm()).collect())
        .collect();
    bottleneck_assignment(&costs)
}
