//! Backtracking search for index relabelings of small square matrices.
//! Used to recognise Cartan matrices and to match McKay graphs to Dynkin
//! diagrams; sizes never exceed 9.

/// Finds `perm` with `a[perm[i]][perm[j]] == b[i][j]` for all `i, j`.
pub fn find_isomorphism(a: &[Vec<i64>], b: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut found = None;
    search(a, b, &mut perm, &mut used, &mut |p| {
        found = Some(p.to_vec());
        true
    });
    found
}

/// All `perm` with `a[perm[i]][perm[j]] == a[i][j]`, in lexicographic order.
pub fn automorphisms(a: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(a, a, &mut perm, &mut used, &mut |p| {
        out.push(p.to_vec());
        false
    });
    out
}

/// Depth-first extension of a partial relabeling; `visit` returns true to stop.
fn search(
    a: &[Vec<i64>],
    b: &[Vec<i64>],
    perm: &mut Vec<usize>,
    used: &mut [bool],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let n = a.len();
    let i = perm.len();
    if i == n {
        return visit(perm);
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let consistent = a[cand][cand] == b[i][i]
            && (0..i).all(|j| a[cand][perm[j]] == b[i][j] && a[perm[j]][cand] == b[j][i]);
        if !consistent {
            continue;
        }
        used[cand] = true;
        perm.push(cand);
        if search(a, b, perm, used, visit) {
            return true;
        }
        perm.pop();
        used[cand] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_has_flip() {
        let a3 = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(automorphisms(&a3), vec![vec![0, 1, 2], vec![2, 1, 0]]);
    }

    #[test]
    fn relabels_asymmetric_matrix() {
        let b2 = vec![vec![2, -2], vec![-1, 2]];
        let c2 = vec![vec![2, -1], vec![-2, 2]];
        assert_eq!(find_isomorphism(&b2, &c2), Some(vec![1, 0]));
        let g2 = vec![vec![2, -1], vec![-3, 2]];
        assert_eq!(find_isomorphism(&b2, &g2), None);
    }
}
