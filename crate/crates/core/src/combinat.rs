//! Enumeration helpers: sorted tuples, subset masks, shuffle signs, compositions.

use crate::algebra::parity;

/// Non-decreasing tuples in `{0..dim}^n`, lexicographic.
#[derive(Debug, Clone)]
pub struct SortedTuples {
    dim: usize,
    next: Option<Vec<usize>>,
}

impl SortedTuples {
    pub fn new(n: usize, dim: usize) -> Self {
        SortedTuples {
            dim,
            next: if dim == 0 && n > 0 { None } else { Some(vec![0; n]) },
        }
    }
}

impl Iterator for SortedTuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut nxt = cur.clone();
        let mut pos = nxt.len();
        while pos > 0 {
            pos -= 1;
            if nxt[pos] + 1 < self.dim {
                let v = nxt[pos] + 1;
                for x in &mut nxt[pos..] {
                    *x = v;
                }
                self.next = Some(nxt);
                return Some(cur);
            }
        }
        Some(cur)
    }
}

/// Tuples over blocks: positions grouped into consecutive blocks, each block
/// non-decreasing, blocks independent. Used to enumerate basis tuples up to
/// simultaneous permutation of (basis index, ψ-label) pairs when labels are
/// sorted.
pub fn block_sorted_tuples(blocks: &[usize], dim: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &len in blocks {
        let parts: Vec<Vec<usize>> = SortedTuples::new(len, dim).collect();
        let mut next = Vec::with_capacity(out.len() * parts.len());
        for prefix in &out {
            for p in &parts {
                let mut t = prefix.clone();
                t.extend_from_slice(p);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Lengths of runs of equal consecutive values.
pub fn run_lengths<T: PartialEq>(xs: &[T]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        if i > 0 && xs[i - 1] == *x {
            *out.last_mut().unwrap() += 1;
        } else {
            out.push(1);
        }
    }
    out
}

pub fn mask_indices(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Koszul sign of moving the entries selected by `mask` (kept in order) in
/// front of the others (kept in order), for entries of the given degrees.
pub fn shuffle_sign(degrees: &[i64], mask: usize) -> i64 {
    let mut odd_unselected_before = 0i64;
    let mut sign = 1;
    for (pos, &d) in degrees.iter().enumerate() {
        let odd = parity(d) == 1;
        if mask >> pos & 1 == 1 {
            if odd && odd_unselected_before % 2 == 1 {
                sign = -sign;
            }
        } else if odd {
            odd_unselected_before += 1;
        }
    }
    sign
}

/// Sign of the permutation `perm` (new position k holds old entry perm[k])
/// acting on graded entries with the given degrees.
pub fn permutation_sign(degrees: &[i64], perm: &[usize]) -> i64 {
    let mut sign = 1;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && parity(degrees[perm[a]]) == 1 && parity(degrees[perm[b]]) == 1 {
                sign = -sign;
            }
        }
    }
    sign
}

/// All compositions of `n` into positive parts, in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Multisets of `n` nonnegative integers with the given sum, as
/// non-increasing sequences, in lexicographic order of the sequence.
pub fn partitions_into(n: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, total: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for v in 0..=max.min(total) {
            prefix.push(v);
            rec(n - 1, total - v, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, total, total, &mut Vec::new(), &mut out);
    out
}

/// All sequences of `n` nonnegative integers with the given sum.
pub fn sequences_with_sum(n: usize, total: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in sequences_with_sum(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_tuple_counts() {
        // multisets of size 3 from 4 elements
        assert_eq!(SortedTuples::new(3, 4).count(), 20);
        assert_eq!(SortedTuples::new(0, 4).count(), 1);
        let all: Vec<_> = SortedTuples::new(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn block_tuples() {
        assert_eq!(block_sorted_tuples(&[2, 1], 2).len(), 3 * 2);
        assert_eq!(run_lengths(&[3, 3, 1, 0, 0]), vec![2, 1, 2]);
    }

    #[test]
    fn shuffle_signs() {
        // (θa, θb) -> (θb, θa)
        assert_eq!(shuffle_sign(&[1, 1], 0b10), -1);
        assert_eq!(shuffle_sign(&[1, 0, 1], 0b100), -1);
        assert_eq!(shuffle_sign(&[1, 2, 1], 0b110), -1);
        assert_eq!(shuffle_sign(&[1, 1, 1], 0b110), 1);
        assert_eq!(permutation_sign(&[1, 1, 1], &[1, 2, 0]), 1);
        assert_eq!(permutation_sign(&[1, 1, 1], &[1, 0, 2]), -1);
    }

    #[test]
    fn composition_counts() {
        for n in 1..=8 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
    }

    #[test]
    fn partitions_and_sequences() {
        assert_eq!(partitions_into(3, 2), vec![vec![1, 1, 0], vec![2, 0, 0]]);
        assert_eq!(sequences_with_sum(2, 2).len(), 3);
        assert_eq!(sequences_with_sum(0, 1).len(), 0);
    }
}
