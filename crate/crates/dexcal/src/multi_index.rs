//! Strictly increasing multi-indices labelling wedge basis elements
//! `dX^{a₁} ⋯ dX^{a_p}` with `a₁ < ⋯ < a_p`, plus the sign bookkeeping for
//! merging, inserting, and deleting axes.

/// All strictly increasing tuples of length `p` drawn from `0..dim`, in
/// lexicographic order.
pub fn multi_indices(dim: usize, p: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fn rec(dim: usize, p: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for a in start..dim {
            cur.push(a as u8);
            rec(dim, p, a + 1, cur, out);
            cur.pop();
        }
    }
    rec(dim, p, 0, &mut cur, &mut out);
    out
}

/// Number of increasing tuples: `C(dim, p)`.
pub fn num_multi_indices(dim: usize, p: usize) -> usize {
    if p > dim {
        return 0;
    }
    let mut n = 1usize;
    for i in 0..p {
        n = n * (dim - i) / (i + 1);
    }
    n
}

/// Position of `idx` in the lexicographic enumeration of its length.
pub fn rank(dim: usize, idx: &[u8]) -> usize {
    let mut r = 0usize;
    let mut prev = 0usize;
    for (i, &a) in idx.iter().enumerate() {
        for b in prev..a as usize {
            r += num_multi_indices(dim - b - 1, idx.len() - i - 1);
        }
        prev = a as usize + 1;
    }
    r
}

/// Inserts axis `b` into the increasing tuple `idx`, returning the new tuple
/// and the sign `(−1)^{#{a ∈ idx : a < b}}` of `dX^b · dX^idx` reordered to
/// increasing form. Returns `None` if `b` already occurs.
pub fn insert(idx: &[u8], b: u8) -> Option<(Vec<u8>, i32)> {
    if idx.contains(&b) {
        return None;
    }
    let pos = idx.iter().take_while(|&&a| a < b).count();
    let mut out = idx.to_vec();
    out.insert(pos, b);
    Some((out, if pos % 2 == 0 { 1 } else { -1 }))
}

/// Removes the axis at 0-based position `r` from `idx`, returning the
/// reduced tuple and the annihilation sign `(−1)^r`.
pub fn delete_at(idx: &[u8], r: usize) -> (Vec<u8>, i32) {
    let mut out = idx.to_vec();
    out.remove(r);
    (out, if r % 2 == 0 { 1 } else { -1 })
}

/// Merges two disjoint increasing tuples, returning the sorted union and
/// the sign of the shuffle permutation taking `a ++ b` to sorted order.
/// Returns `None` if the tuples intersect.
pub fn merge(a: &[u8], b: &[u8]) -> Option<(Vec<u8>, i32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1i32;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the a.len() − i remaining entries of a.
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, sign))
}

/// Complement of `idx` within `0..dim`, in increasing order.
pub fn complement(dim: usize, idx: &[u8]) -> Vec<u8> {
    (0..dim as u8).filter(|a| !idx.contains(a)).collect()
}

/// Sign accumulated by applying the annihilators for the axes of `idx`
/// (in increasing order) successively to the top form `dX^{0⋯dim−1}`:
/// each application of the annihilator for `a_i` contributes
/// `(−1)^{position of a_i in the remaining tuple}`.
pub fn annihilation_sign(dim: usize, idx: &[u8]) -> i32 {
    let mut remaining: Vec<u8> = (0..dim as u8).collect();
    let mut sign = 1i32;
    for &a in idx {
        let r = remaining.iter().position(|&x| x == a).expect("axis present");
        if r % 2 == 1 {
            sign = -sign;
        }
        remaining.remove(r);
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_and_rank_agree() {
        for dim in 0..6 {
            for p in 0..=dim {
                let all = multi_indices(dim, p);
                assert_eq!(all.len(), num_multi_indices(dim, p));
                for (i, idx) in all.iter().enumerate() {
                    assert_eq!(rank(dim, idx), i);
                }
            }
        }
    }

    #[test]
    fn merge_signs_match_transposition_count() {
        // dX¹dX⁰ = −dX⁰dX¹ ; dX²(dX⁰dX¹) needs two swaps.
        assert_eq!(merge(&[1], &[0]), Some((vec![0, 1], -1)));
        assert_eq!(merge(&[2], &[0, 1]), Some((vec![0, 1, 2], 1)));
        assert_eq!(merge(&[1, 2], &[0]), Some((vec![0, 1, 2], 1)));
        assert_eq!(merge(&[0, 2], &[1]), Some((vec![0, 1, 2], -1)));
        assert_eq!(merge(&[0, 1], &[1]), None);
    }

    #[test]
    fn insert_matches_merge() {
        for dim in 1..5u8 {
            for p in 0..dim as usize {
                for idx in multi_indices(dim as usize, p) {
                    for b in 0..dim {
                        assert_eq!(insert(&idx, b), merge(&[b], &idx));
                    }
                }
            }
        }
    }

    #[test]
    fn annihilation_signs_in_two_dims() {
        // c⁰ then c¹ on dX⁰dX¹: both deletions at position 0 → +1;
        // singles: c⁰ hits position 0 (+), c¹ hits position 1 (−).
        assert_eq!(annihilation_sign(2, &[]), 1);
        assert_eq!(annihilation_sign(2, &[0]), 1);
        assert_eq!(annihilation_sign(2, &[1]), -1);
        assert_eq!(annihilation_sign(2, &[0, 1]), 1);
    }
}
