//! Representation functions `r_{A+B}(m)`, interval compression, and t-fold
//! additive energy, together with the closed forms for symmetric intervals.
//!
//! Everything here is exact integer arithmetic. Profiles are built by direct
//! pairwise accumulation.

use crate::error::{Error, Result};

/// A finite set of integers, stored strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntSet(Vec<i64>);

impl IntSet {
    /// Sorts the input; duplicates are rejected.
    pub fn new(mut values: Vec<i64>) -> Result<Self> {
        values.sort_unstable();
        if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!("duplicate element {}", w[0])));
        }
        Ok(Self(values))
    }

    /// `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: i64, hi: i64) -> Self {
        Self((lo..=hi).collect())
    }

    /// `[-alpha, alpha]`.
    pub fn symmetric(alpha: i64) -> Self {
        Self::interval(-alpha, alpha)
    }

    pub fn from_elements(elements: &[usize]) -> Self {
        let mut v: Vec<i64> = elements.iter().map(|&x| x as i64).collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn min(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.0.last().copied()
    }
}

/// `m ↦ r(m)` over a contiguous window `[lo, hi]`; zero outside it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RepProfile {
    lo: i64,
    counts: Vec<u64>,
}

impl RepProfile {
    /// Indicator function of `set`.
    pub fn indicator(set: &IntSet) -> Self {
        match (set.min(), set.max()) {
            (Some(lo), Some(hi)) => {
                let mut counts = vec![0; (hi - lo + 1) as usize];
                for &a in set.as_slice() {
                    counts[(a - lo) as usize] = 1;
                }
                Self { lo, counts }
            }
            _ => Self::default(),
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Upper end of the window; below `lo` for an empty profile.
    pub fn hi(&self) -> i64 {
        self.lo + self.counts.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    #[inline]
    pub fn get(&self, m: i64) -> u64 {
        let offset = m - self.lo;
        if offset < 0 {
            return 0;
        }
        self.counts.get(offset as usize).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `(m, r(m))` for every `m` in the window, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts.iter().enumerate().map(move |(i, &c)| (self.lo + i as i64, c))
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Sum-convolution of two profiles, i.e. the profile of the multiset sum.
    pub fn convolve(&self, other: &RepProfile) -> RepProfile {
        if self.is_empty() || other.is_empty() {
            return RepProfile::default();
        }
        let mut counts = vec![0u64; self.counts.len() + other.counts.len() - 1];
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.counts.iter().enumerate() {
                counts[i + j] += a * b;
            }
        }
        RepProfile { lo: self.lo + other.lo, counts }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        let Some(first) = self.counts.iter().position(|&c| c != 0) else {
            return RepProfile::default();
        };
        let last = self.counts.iter().rposition(|&c| c != 0).unwrap();
        self.counts.truncate(last + 1);
        self.counts.drain(..first);
        self.lo += first as i64;
        self
    }

    /// `Σ_m self(m) · other(target - m)`.
    fn pair_with(&self, other: &RepProfile, target: i64) -> u64 {
        self.iter()
            .filter(|&(_, c)| c != 0)
            .map(|(m, c)| c * other.get(target - m))
            .sum()
    }
}

/// `r_{A+B}(m)` for every `m`. An empty input gives the empty profile.
pub fn rep_profile(a: &IntSet, b: &IntSet) -> RepProfile {
    let (Some(a_lo), Some(a_hi), Some(b_lo), Some(b_hi)) = (a.min(), a.max(), b.min(), b.max())
    else {
        return RepProfile::default();
    };
    let lo = a_lo + b_lo;
    let mut counts = vec![0u64; (a_hi + b_hi - lo + 1) as usize];
    for &x in a.as_slice() {
        for &y in b.as_slice() {
            counts[(x + y - lo) as usize] += 1;
        }
    }
    RepProfile { lo, counts }
}

/// `#{(a, b) : a + b ≡ m (mod n)}` indexed by residues `m ∈ {1..n}`.
pub fn cyclic_rep_profile(a: &IntSet, b: &IntSet, n: usize) -> Result<RepProfile> {
    if n == 0 {
        return Err(Error::InvalidParameter("modulus must be positive".into()));
    }
    for (position, &x) in a.as_slice().iter().chain(b.as_slice()).enumerate() {
        if x < 1 || x > n as i64 {
            return Err(Error::OutOfRange { position, value: x, n });
        }
    }
    let mut counts = vec![0u64; n];
    for &x in a.as_slice() {
        for &y in b.as_slice() {
            // residue of x + y in {1..n}, stored at index residue - 1
            counts[((x + y - 1) as usize) % n] += 1;
        }
    }
    Ok(RepProfile { lo: 1, counts })
}

/// `I(J) = [-⌈j/2⌉, ⌈j/2⌉]` for a set of `size` elements.
pub fn interval_compress(size: usize) -> Result<IntSet> {
    if size == 0 {
        return Err(Error::InvalidParameter("interval compression of an empty set".into()));
    }
    Ok(IntSet::symmetric(size.div_ceil(2) as i64))
}

pub fn negate_set(a: &IntSet) -> IntSet {
    IntSet(a.as_slice().iter().rev().map(|&x| -x).collect())
}

/// `E_t(A_1, …, A_t)`: the number of tuples, one element per set, summing to zero.
///
/// The sets are split in two halves, each half is folded into a profile by
/// convolution, and the halves are paired at total zero.
pub fn additive_energy(sets: &[IntSet]) -> Result<u64> {
    if sets.len() < 2 {
        return Err(Error::InvalidParameter("additive energy needs at least two sets".into()));
    }
    if sets.iter().any(IntSet::is_empty) {
        return Ok(0);
    }
    let fold = |part: &[IntSet]| {
        part[1..]
            .iter()
            .fold(RepProfile::indicator(&part[0]), |acc, s| acc.convolve(&RepProfile::indicator(s)))
    };
    let (left, right) = sets.split_at(sets.len() / 2);
    Ok(fold(left).pair_with(&fold(right), 0))
}

fn require_positive(name: &str, value: i64) -> Result<()> {
    if value < 1 {
        return Err(Error::InvalidParameter(format!("{name} must be at least 1, got {value}")));
    }
    Ok(())
}

/// `r_{A+B}(m)` for `A = [-α, α]`, `B = [-β, β]`, `1 ≤ α ≤ β`.
pub fn closed_rep_two_intervals(alpha: i64, beta: i64, m: i64) -> Result<u64> {
    require_positive("alpha", alpha)?;
    if alpha > beta {
        return Err(Error::InvalidParameter(format!("need alpha <= beta, got {alpha} > {beta}")));
    }
    let m = m.abs();
    Ok(if m <= beta - alpha {
        (2 * alpha + 1) as u64
    } else if m <= alpha + beta {
        (beta + alpha + 1 - m) as u64
    } else {
        0
    })
}

/// `r_{J+J}(m)` for `J = [-α, α]`.
pub fn closed_rep_one_interval(alpha: i64, m: i64) -> Result<u64> {
    require_positive("alpha", alpha)?;
    let m = m.abs();
    Ok(if m <= 2 * alpha { (2 * alpha + 1 - m) as u64 } else { 0 })
}

/// `E_4(J, J, J, J) = 16α³/3 + 8α² + 14α/3 + 1` for `J = [-α, α]`.
pub fn closed_energy4_interval(alpha: i64) -> Result<u64> {
    require_positive("alpha", alpha)?;
    let a = alpha as i128;
    let thirds = 16 * a * a * a + 14 * a;
    debug_assert_eq!(thirds % 3, 0);
    Ok((thirds / 3 + 8 * a * a + 1) as u64)
}

fn dominance_preconditions(alphas: [i64; 4]) -> Result<i64> {
    for a in alphas {
        require_positive("alpha_i", a)?;
    }
    let total: i64 = alphas.iter().sum();
    if total % 4 != 0 {
        return Err(Error::InvalidParameter(format!(
            "alpha_1 + ... + alpha_4 = {total} is not divisible by 4"
        )));
    }
    Ok(total)
}

/// Checks `r_{A1+A2}(m) + r_{A3+A4}(m) ≤ 2 r_{J+J}(m)` with `A_i = [-α_i, α_i]`
/// and `J = [-α/4, α/4]`, `α = Σ α_i`, evaluating every term from profiles.
pub fn check_sum_dominance(alphas: [i64; 4], m: i64) -> Result<bool> {
    let total = dominance_preconditions(alphas)?;
    if 2 * m.abs() > total {
        return Err(Error::InvalidParameter(format!("|m| = {} exceeds alpha / 2", m.abs())));
    }
    let [a1, a2, a3, a4] = alphas.map(IntSet::symmetric);
    let j = IntSet::symmetric(total / 4);
    let lhs = rep_profile(&a1, &a2).get(m) + rep_profile(&a3, &a4).get(m);
    Ok(lhs <= 2 * rep_profile(&j, &j).get(m))
}

/// [`check_sum_dominance`] restricted to `|m| ≤ min(α1 + α2, α3 + α4)`, where
/// both representation counts can be nonzero. Outside that window the plain
/// inequality can fail (e.g. `α = (1, 1, 1, 5)`, `m = 4`: `0 + 3 > 2·1`), but
/// there the product `r_{A1+A2}(m) r_{A3+A4}(m)` vanishes anyway.
///
/// Returns `None` when `m` lies outside the window.
pub fn check_sum_dominance_on_joint_support(alphas: [i64; 4], m: i64) -> Result<Option<bool>> {
    dominance_preconditions(alphas)?;
    let [a1, a2, a3, a4] = alphas;
    if m.abs() > (a1 + a2).min(a3 + a4) {
        return Ok(None);
    }
    check_sum_dominance(alphas, m).map(Some)
}

/// Checks `Σ_m r_{A1+A2}(m) r_{A3+A4}(m) ≤ Σ_{|m| ≤ α/2} r_{J+J}(m)²` for
/// the same interval family as [`check_sum_dominance`].
pub fn check_energy_dominance(alphas: [i64; 4]) -> Result<bool> {
    let total = dominance_preconditions(alphas)?;
    let [a1, a2, a3, a4] = alphas.map(IntSet::symmetric);
    let j = IntSet::symmetric(total / 4);
    let left = rep_profile(&a1, &a2);
    let right = rep_profile(&a3, &a4);
    let lhs: u64 = left.iter().map(|(m, c)| c * right.get(m)).sum();
    let jj = rep_profile(&j, &j);
    let half = total / 2;
    let rhs: u64 = (-half..=half).map(|m| jj.get(m).pow(2)).sum();
    Ok(lhs <= rhs)
}

/// Checks `E_t(A_1..A_t) ≤ E_t(I(A_1)..I(A_t))`. Holds trivially when a set is empty.
pub fn check_lev(sets: &[IntSet]) -> Result<bool> {
    let lhs = additive_energy(sets)?;
    if sets.iter().any(IntSet::is_empty) {
        return Ok(true);
    }
    let compressed = sets
        .iter()
        .map(|s| interval_compress(s.len()))
        .collect::<Result<Vec<_>>>()?;
    Ok(lhs <= additive_energy(&compressed)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[i64]) -> IntSet {
        IntSet::new(v.to_vec()).unwrap()
    }

    /// Oracle: count tuples by walking the full product.
    fn brute_energy(sets: &[IntSet]) -> u64 {
        fn go(sets: &[IntSet], acc: i64) -> u64 {
            match sets.split_first() {
                None => u64::from(acc == 0),
                Some((head, rest)) => head.as_slice().iter().map(|&x| go(rest, acc + x)).sum(),
            }
        }
        go(sets, 0)
    }

    #[test]
    fn intset_rejects_duplicates() {
        assert!(IntSet::new(vec![3, 1, 3]).is_err());
        assert_eq!(set(&[3, -1, 2]).as_slice(), &[-1, 2, 3]);
    }

    #[test]
    fn rep_profile_examples() {
        let p = rep_profile(&set(&[0]), &set(&[0]));
        assert_eq!((p.lo(), p.hi(), p.get(0), p.get(1)), (0, 0, 1, 0));

        let p = rep_profile(&IntSet::symmetric(1), &IntSet::symmetric(2));
        assert_eq!(p.get(0), 3);
        assert_eq!((p.get(2), p.get(-2)), (2, 2));
        assert_eq!((p.get(3), p.get(-3)), (1, 1));
        assert_eq!(p.get(4), 0);

        let p = rep_profile(&set(&[1, 2]), &set(&[1, 2]));
        assert_eq!((p.get(2), p.get(3), p.get(4)), (1, 2, 1));
        assert_eq!(p.total(), 4);

        assert!(rep_profile(&IntSet::default(), &set(&[1])).is_empty());
    }

    #[test]
    fn cyclic_profile_examples() {
        let p = cyclic_rep_profile(&set(&[1, 5]), &set(&[2, 6]), 8).unwrap();
        let expected: Vec<u64> = vec![0, 0, 2, 0, 0, 0, 2, 0];
        assert_eq!(p.counts(), expected.as_slice());

        let full = IntSet::interval(1, 8);
        let p = cyclic_rep_profile(&full, &full, 8).unwrap();
        assert!(p.counts().iter().all(|&c| c == 8));

        // mod-4 classes of Z_8: r(1 + 2 + 4t) = 8/4
        let p = cyclic_rep_profile(&set(&[1, 5]), &set(&[2, 6]), 8).unwrap();
        for t in 0..2 {
            assert_eq!(p.get(3 + 4 * t), 2);
        }

        assert!(cyclic_rep_profile(&set(&[0]), &set(&[1]), 8).is_err());
        assert!(cyclic_rep_profile(&set(&[1]), &set(&[9]), 8).is_err());
    }

    #[test]
    fn interval_compress_examples() {
        assert_eq!(interval_compress(5).unwrap(), IntSet::symmetric(3));
        assert_eq!(interval_compress(1).unwrap(), IntSet::symmetric(1));
        assert_eq!(interval_compress(4).unwrap(), IntSet::symmetric(2));
        assert!(interval_compress(0).is_err());
    }

    #[test]
    fn negate_examples() {
        assert_eq!(negate_set(&set(&[1, 2])), set(&[-2, -1]));
        assert_eq!(negate_set(&set(&[0])), set(&[0]));
        let a = set(&[3, 7, 9]);
        assert_eq!(negate_set(&negate_set(&a)), a);
    }

    #[test]
    fn energy_examples() {
        assert_eq!(additive_energy(&[set(&[1, -1]), set(&[1, -1])]).unwrap(), 2);
        let j = IntSet::symmetric(1);
        assert_eq!(additive_energy(&[j.clone(), j.clone(), j.clone(), j]).unwrap(), 19);
        assert_eq!(additive_energy(&[set(&[5]), set(&[-5])]).unwrap(), 1);
        assert_eq!(additive_energy(&[set(&[1]), IntSet::default()]).unwrap(), 0);
        assert!(additive_energy(&[set(&[1])]).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_rep_two_intervals(1, 2, 0).unwrap(), 3);
        assert_eq!(closed_rep_two_intervals(1, 2, 3).unwrap(), 1);
        assert_eq!(closed_rep_two_intervals(2, 5, 8).unwrap(), 0);
        assert!(closed_rep_two_intervals(3, 2, 0).is_err());
        assert!(closed_rep_two_intervals(0, 2, 0).is_err());

        assert_eq!(closed_rep_one_interval(1, 0).unwrap(), 3);
        assert_eq!(closed_rep_one_interval(1, 2).unwrap(), 1);
        assert_eq!(closed_rep_one_interval(3, 7).unwrap(), 0);
        assert!(closed_rep_one_interval(0, 0).is_err());

        // Oracle values from walking [-α, α]^4: 81 tuples at α = 1, 625 at α = 2.
        let brute = |a| {
            let j = IntSet::symmetric(a);
            brute_energy(&[j.clone(), j.clone(), j.clone(), j])
        };
        assert_eq!(brute(1), 19);
        assert_eq!(brute(2), 85);
        assert_eq!(closed_energy4_interval(1).unwrap(), 19);
        assert_eq!(closed_energy4_interval(2).unwrap(), 85);
        assert!(closed_energy4_interval(0).is_err());
    }

    #[test]
    fn dominance_examples() {
        assert!(check_sum_dominance([1, 1, 1, 1], 0).unwrap());
        assert!(check_sum_dominance([1, 1, 3, 3], 2).unwrap());
        assert!(check_sum_dominance([1, 1, 1, 2], 0).is_err());
        assert!(check_sum_dominance([1, 1, 1, 1], 3).is_err());
        assert!(check_energy_dominance([1, 2, 3, 2]).unwrap());

        // 0 + r_{[-1,1]+[-5,5]}(4) = 3 against 2 r_{J+J}(4) = 2 with J = [-2, 2]
        assert!(!check_sum_dominance([1, 1, 1, 5], 4).unwrap());
        assert!(!check_sum_dominance([1, 1, 1, 5], -4).unwrap());
        assert_eq!(check_sum_dominance_on_joint_support([1, 1, 1, 5], 4).unwrap(), None);
        assert_eq!(check_sum_dominance_on_joint_support([1, 1, 1, 5], 2).unwrap(), Some(true));
        assert!(check_energy_dominance([1, 1, 1, 5]).unwrap());
    }

    #[test]
    fn lev_examples() {
        let j = IntSet::symmetric(2);
        let sets = [j.clone(), j.clone(), j];
        let compressed: Vec<_> = sets.iter().map(|s| interval_compress(s.len()).unwrap()).collect();
        assert_eq!(compressed[0], IntSet::symmetric(3));
        assert!(check_lev(&sets).unwrap());
        assert!(check_lev(&[set(&[3, 9, 10]), set(&[-1, 4])]).unwrap());
    }

    fn small_set() -> impl Strategy<Value = IntSet> {
        proptest::collection::btree_set(-10i64..=10, 1..=8)
            .prop_map(|s| IntSet::new(s.into_iter().collect()).unwrap())
    }

    proptest! {
        #[test]
        fn profile_mass_and_symmetry(a in small_set(), b in small_set()) {
            let p = rep_profile(&a, &b);
            prop_assert_eq!(p.total(), (a.len() * b.len()) as u64);
            prop_assert_eq!(&p, &rep_profile(&b, &a));
            let lo = a.min().unwrap() + b.min().unwrap();
            let hi = a.max().unwrap() + b.max().unwrap();
            prop_assert_eq!((p.lo(), p.hi()), (lo, hi));
        }

        #[test]
        fn energy_matches_brute_force(sets in proptest::collection::vec(small_set(), 2..=4)) {
            prop_assert_eq!(additive_energy(&sets).unwrap(), brute_energy(&sets));
        }

        #[test]
        fn lev_holds(sets in proptest::collection::vec(small_set(), 2..=4)) {
            prop_assert!(check_lev(&sets).unwrap());
        }
    }
}
