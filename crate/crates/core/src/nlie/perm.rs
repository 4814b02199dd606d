//! Permutations and their signs.

/// All permutations of `0..n` in lexicographic order, each with its sign `±1`.
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(n, &mut current, &mut used, 1, &mut out);
    out
}

fn extend(n: usize, current: &mut Vec<usize>, used: &mut [bool], sign: i8, out: &mut Vec<(Vec<usize>, i8)>) {
    if current.len() == n {
        out.push((current.clone(), sign));
        return;
    }
    // choosing the k-th smallest unused element contributes k inversions
    let mut rank = 0;
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        current.push(i);
        extend(n, current, used, if rank % 2 == 0 { sign } else { -sign }, out);
        current.pop();
        used[i] = false;
        rank += 1;
    }
}

/// Sorts `tuple` ascending and returns the sign of the sorting permutation,
/// or `None` if an entry repeats.
pub fn sort_with_sign(tuple: &[usize]) -> Option<(Vec<usize>, i8)> {
    let mut inversions = 0usize;
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            if tuple[i] == tuple[j] {
                return None;
            }
            if tuple[i] > tuple[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = tuple.to_vec();
    sorted.sort_unstable();
    Some((sorted, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}
