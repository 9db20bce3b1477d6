//! ψ-class intersection numbers in genus 0 and 1.
//!
//! Genus 0 uses the closed formula; genus 1 runs the genus-one topological
//! recursion down to genus-0 leaves, memoized on sorted keys.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

/// `⟨τ_{d_1}⋯τ_{d_n}⟩_0`; zero off the dimension `Σd = n - 3` and for `n < 3`.
pub fn genus0(d: &[i64]) -> Rational {
    let n = d.len() as i64;
    if n < 3 || d.iter().any(|&x| x < 0) || d.iter().sum::<i64>() != n - 3 {
        return Rational::ZERO;
    }
    let mut v = factorial((n - 3) as u32);
    for &x in d {
        v = &v / &factorial(x as u32);
    }
    v
}

fn cache() -> &'static RwLock<HashMap<Vec<i64>, Rational>> {
    static CACHE: OnceLock<RwLock<HashMap<Vec<i64>, Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `⟨τ_{d_1}⋯τ_{d_n}⟩_1`; zero off the dimension `Σd = n` and for `n < 1`.
pub fn genus1(d: &[i64]) -> Rational {
    let n = d.len() as i64;
    if n < 1 || d.iter().any(|&x| x < 0) || d.iter().sum::<i64>() != n {
        return Rational::ZERO;
    }
    let mut key = d.to_vec();
    key.sort_unstable();
    if let Some(v) = cache().read().unwrap().get(&key) {
        return v.clone();
    }
    // largest entry; after sorting, ties resolve to the lowest original index
    let i = key.len() - 1;
    let v = trr1_reduce(&key, i);
    cache().write().unwrap().insert(key, v.clone());
    v
}

pub fn correlator(genus: u32, d: &[i64]) -> Rational {
    match genus {
        0 => genus0(d),
        1 => genus1(d),
        _ => panic!("genus {genus} is not supported"),
    }
}

fn with_zeros(d: &[i64], zeros: usize) -> Vec<i64> {
    let mut v = d.to_vec();
    v.extend(std::iter::repeat(0).take(zeros));
    v
}

fn split(d: &[i64], mask: usize) -> (Vec<i64>, Vec<i64>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (k, &x) in d.iter().enumerate() {
        if mask >> k & 1 == 1 {
            a.push(x);
        } else {
            b.push(x);
        }
    }
    (a, b)
}

/// One genus-one recursion step at point `i` (requires `d_i >= 1`).
pub fn trr1_reduce(d: &[i64], i: usize) -> Rational {
    assert!(d[i] >= 1, "reduction point must carry a positive exponent");
    let n = d.len();
    let mut dp = d.to_vec();
    dp[i] -= 1;
    let mut total = Rational::ZERO;
    for mask in 0usize..1 << n {
        if mask >> i & 1 == 0 {
            continue;
        }
        let (di, dj) = split(&dp, mask);
        let a = genus0(&with_zeros(&di, 1));
        if a.is_zero() {
            continue;
        }
        let b = genus1(&with_zeros(&dj, 1));
        total += &(&a * &b);
    }
    total += &(&Rational::new(1, 24) * &genus0(&with_zeros(&dp, 2)));
    total
}

fn check_indices(n: usize, idx: &[usize]) -> Result<()> {
    for (a, &x) in idx.iter().enumerate() {
        if x >= n {
            return Err(Error::PreconditionViolation(format!("index {x} out of range for {n} points")));
        }
        if idx[..a].contains(&x) {
            return Err(Error::PreconditionViolation(format!("index {x} repeated")));
        }
    }
    Ok(())
}

fn bumped(d: &[i64], i: usize) -> Vec<i64> {
    let mut v = d.to_vec();
    v[i] += 1;
    v
}

/// `Σ_{I⊔J} ⟨τ_{d_I} τ_0⟩_0 ⟨τ_0 τ_{d_J}⟩_0` over splittings with `inside ⊂ I`, `outside ⊂ J`.
fn genus0_splitting_sum(d: &[i64], inside: &[usize], outside: &[usize]) -> Rational {
    let mut total = Rational::ZERO;
    for mask in 0usize..1 << d.len() {
        if inside.iter().any(|&i| mask >> i & 1 == 0) || outside.iter().any(|&j| mask >> j & 1 == 1) {
            continue;
        }
        let (di, dj) = split(d, mask);
        total += &(&genus0(&with_zeros(&di, 1)) * &genus0(&with_zeros(&dj, 1)));
    }
    total
}

/// Genus-zero recursion at points `i, j, k`.
pub fn trr0_check(d: &[i64], i: usize, j: usize, k: usize) -> Result<bool> {
    check_indices(d.len(), &[i, j, k])?;
    let lhs = genus0(&bumped(d, i));
    Ok(lhs == genus0_splitting_sum(d, &[i], &[j, k]))
}

/// Symmetric genus-zero recursion at points `i, j`.
pub fn trr0_sym_check(d: &[i64], i: usize, j: usize) -> Result<bool> {
    check_indices(d.len(), &[i, j])?;
    let lhs = genus0(&bumped(d, i)) + genus0(&bumped(d, j));
    Ok(lhs == genus0_splitting_sum(d, &[i], &[j]))
}

/// Reducing at every point with positive exponent gives the same value.
pub fn trr1_consistency(d: &[i64]) -> bool {
    let n = d.len() as i64;
    if d.iter().any(|&x| x < 0) || d.iter().sum::<i64>() != n {
        return true;
    }
    let target = genus1(d);
    (0..d.len()).filter(|&i| d[i] >= 1).all(|i| trr1_reduce(d, i) == target)
}

/// Nonzero correlators of the given genus for `1 <= n <= n_max`, keys sorted
/// in non-increasing order.
pub fn table(genus: u32, n_max: usize) -> Vec<(Vec<i64>, Rational)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let total = n as i64 - 3 + 3 * genus as i64;
        if total < 0 {
            continue;
        }
        for d in crate::combinat::partitions_into(n, total as usize) {
            let d: Vec<i64> = d.into_iter().map(|x| x as i64).collect();
            let v = correlator(genus, &d);
            if !v.is_zero() {
                out.push((d, v));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub d: Vec<i64>,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheFile {
    pub genus1: Vec<CacheEntry>,
}

/// Snapshot of the genus-one memo table, sorted by key.
pub fn cache_snapshot() -> CacheFile {
    let mut genus1: Vec<CacheEntry> = cache()
        .read()
        .unwrap()
        .iter()
        .map(|(d, v)| CacheEntry {
            d: d.clone(),
            value: v.clone(),
        })
        .collect();
    genus1.sort_by(|a, b| (a.d.len(), &a.d).cmp(&(b.d.len(), &b.d)));
    CacheFile { genus1 }
}

pub fn cache_to_json() -> String {
    serde_json::to_string_pretty(&cache_snapshot()).expect("cache serializes")
}

/// Loads cached values after re-deriving each of them; rejects any mismatch.
pub fn load_cache_json(text: &str) -> Result<usize> {
    let file: CacheFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let mut verified = Vec::with_capacity(file.genus1.len());
    for entry in file.genus1 {
        let mut key = entry.d.clone();
        key.sort_unstable();
        let recomputed = genus1(&key);
        if recomputed != entry.value {
            return Err(Error::Format(format!(
                "cached value {} for {:?} disagrees with recursion value {}",
                entry.value, entry.d, recomputed
            )));
        }
        verified.push(key);
    }
    Ok(verified.len())
}

pub fn cache_len() -> usize {
    cache().read().unwrap().len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn genus0_values() {
        assert_eq!(genus0(&[0, 0, 0]), q(1, 1));
        assert_eq!(genus0(&[1, 1, 0, 0, 0]), q(2, 1));
        assert_eq!(genus0(&[1, 0, 0]), q(0, 1));
        assert_eq!(genus0(&[0, 0]), q(0, 1));
        assert_eq!(genus0(&[-1, 1, 0, 0]), q(0, 1));
        assert_eq!(genus0(&[2, 0, 0, 0, 0]), q(1, 1));
    }

    #[test]
    fn genus1_values() {
        assert_eq!(genus1(&[1]), q(1, 24));
        assert_eq!(genus1(&[2]), q(0, 1));
        assert_eq!(genus1(&[0, 2]), q(1, 24));
        assert_eq!(genus1(&[2, 0]), q(1, 24));
        assert_eq!(genus1(&[1, 1]), q(1, 24));
        assert_eq!(genus1(&[]), q(0, 1));
    }

    #[test]
    fn trr0_small_case() {
        assert!(trr0_check(&[0, 0, 0, 0], 0, 1, 2).unwrap());
        assert_eq!(genus0(&[1, 0, 0, 0]), q(1, 1));
        assert!(trr0_sym_check(&[0, 0, 0, 0], 0, 1).unwrap());
        assert!(trr0_check(&[0, 0, 0], 0, 0, 1).is_err());
        assert!(trr0_sym_check(&[0, 0], 0, 2).is_err());
    }

    #[test]
    fn trr1_two_points() {
        assert!(trr1_consistency(&[1, 1]));
        assert_eq!(trr1_reduce(&[1, 1], 0), trr1_reduce(&[1, 1], 1));
        assert!(trr1_consistency(&[3, 0, 0]));
    }

    #[test]
    fn tables() {
        let t1 = table(1, 2);
        assert!(t1.contains(&(vec![1], q(1, 24))));
        assert!(table(1, 0).is_empty());
        let t0 = table(0, 3);
        assert_eq!(t0, vec![(vec![0, 0, 0], q(1, 1))]);
    }

    #[test]
    fn cache_roundtrip() {
        genus1(&[2, 1, 0]);
        let json = cache_to_json();
        assert!(load_cache_json(&json).unwrap() >= 1);
        let bad = r#"{"genus1":[{"d":[1],"value":"1/12"}]}"#;
        assert!(load_cache_json(bad).is_err());
        assert!(load_cache_json("not json").is_err());
    }
}
