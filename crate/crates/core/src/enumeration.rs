//! Enumeration and counting of Sidon 4-sets in `[n]` and in `Z_k`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::quad::{ModularSidonQuad, SidonQuad};

/// Range of the smaller element `s` of a pair `{s, l - s}` with `1 ≤ s < l - s ≤ n`.
/// Empty when `lo > hi`.
#[inline]
fn pair_smalls(n: usize, l: usize) -> (usize, usize) {
    let lo = if l > n { l - n } else { 1 };
    let hi = l.saturating_sub(1) / 2;
    (lo, hi)
}

/// Number of unordered pairs `{a ≠ b} ⊆ [n]` with `a + b = l`.
#[inline]
pub fn pairs_with_sum(n: usize, l: usize) -> u64 {
    let (lo, hi) = pair_smalls(n, l);
    if hi >= lo { (hi - lo + 1) as u64 } else { 0 }
}

/// Streams every Sidon 4-set of `[n]` once.
///
/// Order: by side sum ascending, then by `(x1, x2, x3, x4)` ascending.
#[derive(Debug, Clone)]
pub struct Quads {
    n: usize,
    sum: usize,
    // (s1, s2): smaller elements of the outer and inner pair, s1 < s2
    cursor: Option<(usize, usize)>,
}

impl Quads {
    fn enter_sum(&mut self) {
        let (lo, hi) = pair_smalls(self.n, self.sum);
        self.cursor = (hi > lo).then(|| (hi - 1, hi));
    }
}

impl Iterator for Quads {
    type Item = SidonQuad;

    fn next(&mut self) -> Option<SidonQuad> {
        let last_sum = (2 * self.n).saturating_sub(1);
        while self.cursor.is_none() {
            self.sum += 1;
            if self.sum > last_sum {
                return None;
            }
            self.enter_sum();
        }
        let (s1, s2) = self.cursor.unwrap();
        let l = self.sum;
        let quad = SidonQuad::from_sorted_unchecked(l - s1, l - s2, s2, s1);

        let (lo, hi) = pair_smalls(self.n, l);
        self.cursor = if s2 > s1 + 1 {
            Some((s1, s2 - 1))
        } else if s1 > lo {
            Some((s1 - 1, hi))
        } else {
            None
        };
        Some(quad)
    }
}

pub fn enumerate_quads(n: usize) -> Quads {
    // sum 2 has no pairs, so starting there with an empty cursor is harmless
    Quads { n, sum: 2, cursor: None }
}

/// `n³/12 − 3n²/8 + 5n/12 − θ`, with `θ = 1/8` for odd `n` and `0` otherwise.
pub fn total_quads_formula(n: usize) -> u64 {
    let n = n as i128;
    let theta_24 = if n % 2 == 1 { 3 } else { 0 };
    let numerator = 2 * n * n * n - 9 * n * n + 10 * n - theta_24;
    debug_assert_eq!(numerator % 24, 0);
    (numerator / 24) as u64
}

/// `Σ_l C(p(l), 2)` where `p(l)` counts pairs summing to `l`.
pub fn count_quads_by_sums(n: usize) -> u64 {
    (3..2 * n)
        .map(|l| {
            let p = pairs_with_sum(n, l);
            p * p.saturating_sub(1) / 2
        })
        .sum()
}

/// All Sidon 4-sets of `[n]` that contain `x`, each once.
///
/// Pairs `x` with its same-side partner `j`, then with every other pair
/// summing to `x + j`.
pub fn quads_containing(n: usize, x: usize) -> Vec<SidonQuad> {
    let mut out = Vec::new();
    for j in (1..=n).filter(|&j| j != x) {
        let l = x + j;
        let (lo, hi) = pair_smalls(n, l);
        let own = x.min(j);
        for s in (lo..=hi).filter(|&s| s != own) {
            out.extend(SidonQuad::from_values([x, j, s, l - s]));
        }
    }
    out
}

/// Exact number of Sidon 4-sets in `[n]` containing both `b < a`.
///
/// Two disjoint families: `a, b` on the same side (`a + b = x + y`) or on
/// opposite sides (`a + x = b + y`, so `y − x = a − b`).
pub fn f_n_exact(n: usize, b: usize, a: usize) -> Result<u64> {
    if b == 0 || b >= a || a > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= b < a <= n, got b = {b}, a = {a}, n = {n}"
        )));
    }
    let (lo, hi) = pair_smalls(n, a + b);
    let same_side = (lo..=hi).filter(|&s| s != b).count() as u64;

    let d = a - b;
    let opposite = (1..=n - d)
        .filter(|&x| x != a && x != b && x + d != b && x + d != a)
        .count() as u64;

    Ok(same_side + opposite)
}

/// The family `S(k)`: every pairing `{α+β ≡ γ+δ}` of four distinct residues in `{1..k}`.
///
/// Scans all pairs of disjoint residue pairs directly, so it stays
/// independent of the closed-form count.
pub fn enumerate_modular_quads(k: usize) -> Vec<ModularSidonQuad> {
    let k = k as u32;
    let pairs: Vec<(u32, u32)> =
        (1..=k).flat_map(|a| (a + 1..=k).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for (i, &p) in pairs.iter().enumerate() {
        for &q in &pairs[i + 1..] {
            if let Some(quad) = ModularSidonQuad::new(p, q, k) {
                out.push(quad);
            }
        }
    }
    out
}

/// `|S(k)| = k³/8 − k²/2 + θk`, `θ = 1/2` for even `k`, `3/8` for odd `k`.
///
/// Only established for `k ≥ 4`; smaller `k` is rejected.
pub fn modular_count_formula(k: usize) -> Result<u64> {
    if k < 4 {
        return Err(Error::InvalidParameter(format!(
            "|S(k)| formula holds for k >= 4, got {k}"
        )));
    }
    let k = k as u128;
    let theta_8 = if k.is_multiple_of(2) { 4 } else { 3 };
    let numerator = k * k * k - 4 * k * k + theta_8 * k;
    debug_assert_eq!(numerator % 8, 0);
    Ok((numerator / 8) as u64)
}

/// Buckets `S(k)` by side-sum residue `u ∈ {1..k}`. Every `u` has an entry.
pub fn partition_modular(k: usize) -> BTreeMap<u32, Vec<ModularSidonQuad>> {
    let mut buckets: BTreeMap<u32, Vec<ModularSidonQuad>> =
        (1..=k as u32).map(|u| (u, Vec::new())).collect();
    for quad in enumerate_modular_quads(k) {
        buckets.entry(quad.bucket(k as u32)).or_default().push(quad);
    }
    buckets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::make_quad;

    /// Oracle: test every 4-subset of `[n]`.
    fn brute_quads(n: usize) -> Vec<SidonQuad> {
        let mut out = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    for d in c + 1..=n {
                        out.extend(SidonQuad::from_values([a, b, c, d]));
                    }
                }
            }
        }
        out
    }

    /// Oracle: all residue 4-sets times their three pairings.
    fn brute_modular(k: u32) -> usize {
        let mut count = 0;
        for a in 1..=k {
            for b in a + 1..=k {
                for c in b + 1..=k {
                    for d in c + 1..=k {
                        let pairings = [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))];
                        count += pairings
                            .iter()
                            .filter(|(p, q)| ModularSidonQuad::new(*p, *q, k).is_some())
                            .count();
                    }
                }
            }
        }
        count
    }

    #[test]
    fn small_enumerations() {
        let q4: Vec<_> = enumerate_quads(4).collect();
        assert_eq!(q4, vec![make_quad(4, 3, 2, 1, 4).unwrap().unwrap()]);

        let q5: Vec<_> = enumerate_quads(5).map(|q| q.elements()).collect();
        assert_eq!(q5, vec![[4, 3, 2, 1], [5, 4, 2, 1], [5, 4, 3, 2]]);

        assert_eq!(enumerate_quads(3).count(), 0);
        assert_eq!(enumerate_quads(1).count(), 0);
        assert_eq!(enumerate_quads(0).count(), 0);
    }

    #[test]
    fn enumeration_matches_brute_force_as_sets() {
        for n in 0..=25 {
            let mut ours: Vec<_> = enumerate_quads(n).collect();
            let total = ours.len();
            ours.sort();
            ours.dedup();
            assert_eq!(ours.len(), total, "duplicates at n = {n}");
            let mut brute = brute_quads(n);
            brute.sort();
            assert_eq!(ours, brute, "n = {n}");
        }
    }

    #[test]
    fn enumeration_order_is_sum_then_lexicographic() {
        let quads: Vec<_> = enumerate_quads(30).collect();
        for w in quads.windows(2) {
            let key = |q: &SidonQuad| (q.side_sum(), q.elements());
            assert!(key(&w[0]) < key(&w[1]), "{} then {}", w[0], w[1]);
        }
    }

    #[test]
    fn total_counts() {
        for (n, expected) in [(4, 1), (5, 3), (10, 50)] {
            assert_eq!(brute_quads(n).len() as u64, expected);
            assert_eq!(total_quads_formula(n), expected);
            assert_eq!(count_quads_by_sums(n), expected);
        }
        for n in 0..4 {
            assert_eq!(total_quads_formula(n), 0);
            assert_eq!(count_quads_by_sums(n), 0);
        }
        assert_eq!(count_quads_by_sums(1000), total_quads_formula(1000));
    }

    #[test]
    fn quads_containing_matches_filter() {
        for n in [4, 5, 9, 16] {
            for x in 1..=n {
                let mut ours = quads_containing(n, x);
                ours.sort();
                let expected: Vec<_> = {
                    let mut v: Vec<_> = enumerate_quads(n).filter(|q| q.contains(x)).collect();
                    v.sort();
                    v
                };
                assert_eq!(ours, expected, "n = {n}, x = {x}");
            }
        }
    }

    #[test]
    fn modular_examples() {
        let s4 = enumerate_modular_quads(4);
        let expected = vec![
            ModularSidonQuad::new((1, 2), (3, 4), 4).unwrap(),
            ModularSidonQuad::new((1, 4), (2, 3), 4).unwrap(),
        ];
        assert_eq!(s4, expected);
        assert_eq!(enumerate_modular_quads(5).len(), 5);
        assert_eq!(brute_modular(5), 5);
        assert_eq!(brute_modular(6), 12);
        assert!(enumerate_modular_quads(3).is_empty());

        assert_eq!(modular_count_formula(4).unwrap(), 2);
        assert_eq!(modular_count_formula(5).unwrap(), 5);
        assert_eq!(modular_count_formula(6).unwrap(), 12);
        assert!(modular_count_formula(3).is_err());

        for k in 4..=20 {
            assert_eq!(enumerate_modular_quads(k).len(), brute_modular(k as u32), "k = {k}");
        }
    }

    #[test]
    fn modular_partition() {
        let buckets = partition_modular(4);
        assert_eq!(buckets[&3], vec![ModularSidonQuad::new((1, 2), (3, 4), 4).unwrap()]);
        assert_eq!(buckets[&1], vec![ModularSidonQuad::new((1, 4), (2, 3), 4).unwrap()]);
        assert!(buckets[&2].is_empty() && buckets[&4].is_empty());

        for k in 4..=12 {
            let buckets = partition_modular(k);
            assert_eq!(buckets.len(), k);
            let mut all: Vec<_> = buckets.values().flatten().copied().collect();
            assert_eq!(all.len(), enumerate_modular_quads(k).len());
            all.sort();
            all.dedup();
            assert_eq!(all.len(), enumerate_modular_quads(k).len());
            for (u, quads) in &buckets {
                for q in quads {
                    let (a, b) = q.pair_a();
                    assert_eq!((a + b) % k as u32, u % k as u32);
                }
            }
        }
    }

    #[test]
    fn f_n_examples_and_oracle() {
        assert_eq!(f_n_exact(10, 1, 2).unwrap(), 7);
        assert_eq!(f_n_exact(10, 1, 10).unwrap(), 4);
        assert!(f_n_exact(10, 2, 2).is_err());
        assert!(f_n_exact(10, 3, 11).is_err());
        assert!(f_n_exact(10, 0, 1).is_err());

        for n in [4, 7, 12, 17] {
            let quads: Vec<_> = enumerate_quads(n).collect();
            for a in 1..=n {
                for b in 1..a {
                    let naive =
                        quads.iter().filter(|q| q.contains(a) && q.contains(b)).count() as u64;
                    assert_eq!(f_n_exact(n, b, a).unwrap(), naive, "n = {n}, pair ({b}, {a})");
                }
            }
        }
    }
}
