//! Counting Sidon 4-sets under a coloring.
//!
//! Three independent routes to the rainbow count over `[n]`:
//!
//! * [`count_rainbow_naive`] scans every Sidon 4-set.
//! * [`count_rainbow_fast`] sums `r_{X_i+X_j}(l) · r_{X_s+X_t}(l)` over the
//!   three ways of splitting each 4-set of colors into two sides. A rainbow
//!   4-set with side sum `l` is counted by exactly one term, so this holds
//!   for any coloring, not only the mod-k one.
//! * [`rainbow_via_energy`] (k = 4) evaluates
//!   `E_4(X1,X2,−X3,−X4) + E_4(X1,X3,−X2,−X4) + E_4(X1,X4,−X2,−X3)`.
//!
//! The cyclic counters follow the same convention in `Z_n`, where a pairing
//! is part of the solution: the same four residues may be counted more than
//! once if they admit several pairings.

use crate::coloring::{Coloring, Domain};
use crate::enumeration::{enumerate_quads, f_n_exact};
use crate::error::{Error, Result};
use crate::quad::{ClassBreakdown, QuadClass, SidonQuad};
use crate::repfn::{additive_energy, cyclic_rep_profile, negate_set, rep_profile, IntSet};
use crate::Rational;

/// Memory ceiling for the dense pair profiles of [`count_rainbow_fast`].
pub const DEFAULT_PROFILE_BUDGET_BYTES: usize = 1 << 30;

fn require_domain(c: &Coloring, domain: Domain) -> Result<()> {
    if c.domain() != domain {
        return Err(Error::DomainMismatch { expected: domain.as_str() });
    }
    Ok(())
}

pub fn classify_quad(q: &SidonQuad, c: &Coloring) -> Result<QuadClass> {
    require_domain(c, Domain::Interval)?;
    let elements = q.elements();
    if let Some((position, &x)) = elements.iter().enumerate().find(|(_, &x)| x > c.n()) {
        return Err(Error::OutOfRange { position, value: x as i64, n: c.n() });
    }
    Ok(QuadClass::from_colors(elements.map(|x| c.color(x))))
}

/// Full breakdown by color pattern, scanning every Sidon 4-set of `[n]`.
pub fn count_rainbow_naive(c: &Coloring) -> Result<ClassBreakdown> {
    require_domain(c, Domain::Interval)?;
    let mut breakdown = ClassBreakdown::default();
    for q in enumerate_quads(c.n()) {
        breakdown.record(QuadClass::from_colors(q.elements().map(|x| c.color(x))));
    }
    Ok(breakdown)
}

/// The three ways to split colors `i < j < s < t` into two sides.
const SPLITS: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];

/// Index of the unordered color pair `i < j` in row-major upper-triangular order.
#[inline]
fn pair_index(k: usize, i: usize, j: usize) -> usize {
    i * (2 * k - i - 1) / 2 + (j - i - 1)
}

/// Sums the split products over every 4-subset of colors, given dense pair
/// profiles indexed by `pair_index` and a common sum window of `width`.
fn sum_over_color_quads(k: usize, profiles: &[Vec<u64>], width: usize) -> u64 {
    let mut total = 0u64;
    for i in 0..k {
        for j in i + 1..k {
            for s in j + 1..k {
                for t in s + 1..k {
                    let colors = [i, j, s, t];
                    for [(a, b), (x, y)] in SPLITS {
                        let left = &profiles[pair_index(k, colors[a], colors[b])];
                        let right = &profiles[pair_index(k, colors[x], colors[y])];
                        total += (0..width).map(|l| left[l] * right[l]).sum::<u64>();
                    }
                }
            }
        }
    }
    total
}

/// Rainbow count via pair representation profiles, with the default memory budget.
pub fn count_rainbow_fast(c: &Coloring) -> Result<u64> {
    count_rainbow_fast_with_budget(c, DEFAULT_PROFILE_BUDGET_BYTES)
}

/// Falls back to the naive scan when the `C(k,2)` dense profiles would exceed `budget_bytes`.
pub fn count_rainbow_fast_with_budget(c: &Coloring, budget_bytes: usize) -> Result<u64> {
    require_domain(c, Domain::Interval)?;
    let (n, k) = (c.n(), c.k());
    if k < 4 {
        return Ok(0);
    }
    let width = 2 * n + 1;
    let needed = (k * (k - 1) / 2).saturating_mul(width).saturating_mul(8);
    if needed > budget_bytes {
        return Ok(count_rainbow_naive(c)?.rainbow);
    }
    let classes: Vec<IntSet> = c.classes().iter().map(|x| IntSet::from_elements(x)).collect();
    let mut profiles = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            let p = rep_profile(&classes[i], &classes[j]);
            let mut dense = vec![0u64; width];
            for (m, count) in p.iter() {
                dense[m as usize] = count;
            }
            profiles.push(dense);
        }
    }
    Ok(sum_over_color_quads(k, &profiles, width))
}

/// Rainbow count for a 4-coloring as a sum of three 4-fold additive energies.
pub fn rainbow_via_energy(c: &Coloring) -> Result<u64> {
    require_domain(c, Domain::Interval)?;
    if c.k() != 4 {
        return Err(Error::InvalidParameter(format!(
            "energy decomposition needs exactly 4 colors, got {}",
            c.k()
        )));
    }
    let x: Vec<IntSet> = c.classes().iter().map(|v| IntSet::from_elements(v)).collect();
    let neg: Vec<IntSet> = x.iter().map(negate_set).collect();
    let terms = [
        [&x[0], &x[1], &neg[2], &neg[3]],
        [&x[0], &x[2], &neg[1], &neg[3]],
        [&x[0], &x[3], &neg[1], &neg[2]],
    ];
    terms.iter().try_fold(0u64, |acc, sets| {
        let owned: Vec<IntSet> = sets.iter().map(|&s| s.clone()).collect();
        Ok(acc + additive_energy(&owned)?)
    })
}

/// Brute-force rainbow count in `Z_n`: every pair of disjoint residue pairs
/// with equal sums mod `n`, each pairing counted once.
pub fn count_rainbow_cyclic_naive(c: &Coloring) -> Result<u64> {
    require_domain(c, Domain::Cyclic)?;
    let n = c.n();
    let mut count = 0u64;
    for x in 1..=n {
        for y in x + 1..=n {
            let (cx, cy) = (c.color(x), c.color(y));
            if cx == cy {
                continue;
            }
            // second pair {z < w} with z > x so each pair of pairs is seen once
            for z in x + 1..=n {
                if z == y {
                    continue;
                }
                let w = ((x + y + 2 * n - z - 1) % n) + 1;
                if w <= z || w == y {
                    continue;
                }
                let (cz, cw) = (c.color(z), c.color(w));
                if cz != cw && cz != cx && cz != cy && cw != cx && cw != cy {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Cyclic analogue of [`count_rainbow_fast`] with sums taken over residues `{1..n}`.
pub fn count_rainbow_cyclic_fast(c: &Coloring) -> Result<u64> {
    require_domain(c, Domain::Cyclic)?;
    let (n, k) = (c.n(), c.k());
    if k < 4 {
        return Ok(0);
    }
    let classes: Vec<IntSet> = c.classes().iter().map(|x| IntSet::from_elements(x)).collect();
    let mut profiles = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            profiles.push(cyclic_rep_profile(&classes[i], &classes[j], n)?.counts().to_vec());
        }
    }
    Ok(sum_over_color_quads(k, &profiles, n))
}

/// The set `M` of monochromatic pairs, in size only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonochromaticPairs {
    pub count: u64,
    /// `n²/(2k) − n/2`
    pub bound: Rational,
}

impl MonochromaticPairs {
    pub fn bound_holds(&self) -> bool {
        Rational::from_integer(self.count as i128) >= self.bound
    }
}

/// `|M| = Σ_i C(|X_i|, 2)` and its convexity lower bound.
pub fn monochromatic_pairs(c: &Coloring) -> Result<MonochromaticPairs> {
    require_domain(c, Domain::Interval)?;
    let count = c.class_sizes().iter().map(|&s| (s * s.saturating_sub(1) / 2) as u64).sum();
    let (n, k) = (c.n() as i128, c.k() as i128);
    let bound = Rational::new(n * n, 2 * k) - Rational::new(n, 2);
    Ok(MonochromaticPairs { count, bound })
}

/// `(1/6) Σ_{pairs in M} f_n(pair)`: every non-rainbow 4-set has a
/// monochromatic pair and at most six of them.
pub fn non_rainbow_lower_bound(c: &Coloring) -> Result<Rational> {
    require_domain(c, Domain::Interval)?;
    let n = c.n();
    let mut sum: u64 = 0;
    for class in c.classes() {
        for (idx, &a) in class.iter().enumerate() {
            for &b in &class[..idx] {
                sum += f_n_exact(n, b, a)?;
            }
        }
    }
    Ok(Rational::new(sum as i128, 6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{mod_coloring, random_coloring};
    use crate::enumeration::total_quads_formula;
    use crate::quad::make_quad;

    fn interval(k: usize, colors: &[u32]) -> Coloring {
        Coloring::new(Domain::Interval, k, colors.to_vec()).unwrap()
    }

    fn cyclic(c: &Coloring) -> Coloring {
        c.with_domain(Domain::Cyclic)
    }

    /// Oracle for the cyclic count: every ordered 4-tuple of distinct
    /// residues solving the equation, divided by the 8 orderings of a pairing.
    fn cyclic_by_tuples(c: &Coloring) -> u64 {
        let n = c.n();
        let mut tuples = 0u64;
        for x in 1..=n {
            for y in 1..=n {
                for z in 1..=n {
                    let w = ((x + y + 2 * n - z - 1) % n) + 1;
                    let v = [x, y, z, w];
                    let colors = v.map(|e| c.color(e));
                    if QuadClass::from_colors(colors) == QuadClass::Rainbow {
                        tuples += 1;
                    }
                }
            }
        }
        assert_eq!(tuples % 8, 0);
        tuples / 8
    }

    #[test]
    fn classify_examples() {
        let q = make_quad(4, 3, 2, 1, 4).unwrap().unwrap();
        assert_eq!(classify_quad(&q, &mod_coloring(4, 4).unwrap()).unwrap(), QuadClass::Rainbow);
        assert_eq!(
            classify_quad(&q, &Coloring::constant(Domain::Interval, 4, 4).unwrap()).unwrap(),
            QuadClass::Monochromatic
        );
        let q = make_quad(5, 4, 2, 1, 5).unwrap().unwrap();
        let c = interval(4, &[1, 2, 3, 4, 1]);
        assert_eq!(classify_quad(&q, &c).unwrap(), QuadClass::ThreeColored);
        assert!(classify_quad(&q, &cyclic(&c)).is_err());
        assert!(classify_quad(&q, &interval(4, &[1, 2, 3, 4])).is_err());
    }

    #[test]
    fn naive_examples() {
        let b = count_rainbow_naive(&mod_coloring(4, 4).unwrap()).unwrap();
        assert_eq!(b, ClassBreakdown { rainbow: 1, ..Default::default() });

        let b = count_rainbow_naive(&interval(4, &[1, 2, 3, 4, 1])).unwrap();
        assert_eq!((b.rainbow, b.three_colored, b.total()), (2, 1, 3));

        for n in [4, 9, 20] {
            let b = count_rainbow_naive(&Coloring::constant(Domain::Interval, n, 3).unwrap())
                .unwrap();
            assert_eq!(b.rainbow, 0);
            assert_eq!(b.monochromatic, total_quads_formula(n));
        }
    }

    #[test]
    fn fast_and_energy_examples() {
        assert_eq!(count_rainbow_fast(&mod_coloring(4, 4).unwrap()).unwrap(), 1);
        let c = interval(4, &[1, 2, 3, 4, 1]);
        assert_eq!(count_rainbow_fast(&c).unwrap(), 2);
        assert_eq!(rainbow_via_energy(&c).unwrap(), 2);

        let c8 = mod_coloring(8, 4).unwrap();
        let naive = count_rainbow_naive(&c8).unwrap().rainbow;
        assert_eq!(rainbow_via_energy(&c8).unwrap(), naive);
        assert_eq!(count_rainbow_fast(&c8).unwrap(), naive);

        // color 4 unused
        let c = interval(4, &[1, 2, 3, 1, 2, 3, 2, 1, 3]);
        assert_eq!(count_rainbow_fast(&c).unwrap(), 0);
        assert_eq!(rainbow_via_energy(&c).unwrap(), 0);

        assert!(rainbow_via_energy(&mod_coloring(10, 5).unwrap()).is_err());
        assert_eq!(count_rainbow_fast(&mod_coloring(10, 3).unwrap()).unwrap(), 0);
    }

    #[test]
    fn fast_budget_fallback_agrees() {
        let c = random_coloring(60, 6, 11).unwrap();
        assert_eq!(
            count_rainbow_fast_with_budget(&c, 0).unwrap(),
            count_rainbow_fast(&c).unwrap()
        );
    }

    #[test]
    fn methods_agree_on_random_colorings() {
        for seed in 0..40 {
            let n = 4 + (seed as usize * 7) % 60;
            let k = 4 + (seed as usize) % 5;
            let c = random_coloring(n, k, seed).unwrap();
            let naive = count_rainbow_naive(&c).unwrap();
            assert_eq!(naive.total(), total_quads_formula(n));
            assert_eq!(count_rainbow_fast(&c).unwrap(), naive.rainbow, "seed {seed}");
            if k == 4 {
                assert_eq!(rainbow_via_energy(&c).unwrap(), naive.rainbow, "seed {seed}");
            }
        }
    }

    #[test]
    fn rainbow_count_ignores_color_labels() {
        let c = random_coloring(40, 5, 3).unwrap();
        let perm = [3u32, 5, 1, 2, 4];
        let relabeled: Vec<u32> = c.colors().iter().map(|&x| perm[x as usize - 1]).collect();
        let d = interval(5, &relabeled);
        assert_eq!(count_rainbow_naive(&c).unwrap(), count_rainbow_naive(&d).unwrap());
    }

    #[test]
    fn cyclic_examples() {
        let c = cyclic(&mod_coloring(8, 4).unwrap());
        assert_eq!(count_rainbow_cyclic_naive(&c).unwrap(), 16);
        assert_eq!(count_rainbow_cyclic_fast(&c).unwrap(), 16);
        assert_eq!(cyclic_by_tuples(&c), 16);

        let c12 = cyclic(&mod_coloring(12, 4).unwrap());
        assert_eq!(count_rainbow_cyclic_naive(&c12).unwrap(), 54);
        assert_eq!(count_rainbow_cyclic_fast(&c12).unwrap(), 54);

        let constant = Coloring::constant(Domain::Cyclic, 9, 4).unwrap();
        assert_eq!(count_rainbow_cyclic_naive(&constant).unwrap(), 0);
        assert_eq!(count_rainbow_cyclic_fast(&constant).unwrap(), 0);

        // Z_5 with every residue its own color: each member of S(5) is rainbow.
        let c5 = cyclic(&mod_coloring(5, 5).unwrap());
        assert_eq!(count_rainbow_cyclic_naive(&c5).unwrap(), 5);
        assert_eq!(cyclic_by_tuples(&c5), 5);

        assert!(count_rainbow_cyclic_naive(&mod_coloring(8, 4).unwrap()).is_err());
        assert!(count_rainbow_naive(&c).is_err());
    }

    #[test]
    fn cyclic_methods_agree() {
        for seed in 0..25 {
            let n = 4 + (seed as usize * 5) % 40;
            let k = 4 + (seed as usize) % 3;
            let c = cyclic(&random_coloring(n, k, seed).unwrap());
            let naive = count_rainbow_cyclic_naive(&c).unwrap();
            assert_eq!(count_rainbow_cyclic_fast(&c).unwrap(), naive, "seed {seed}");
            assert_eq!(cyclic_by_tuples(&c), naive, "seed {seed}");
        }
    }

    #[test]
    fn monochromatic_pair_examples() {
        let m = monochromatic_pairs(&mod_coloring(8, 4).unwrap()).unwrap();
        assert_eq!(m.count, 4);
        assert!(m.bound_holds());
        let m = monochromatic_pairs(&Coloring::constant(Domain::Interval, 10, 4).unwrap()).unwrap();
        assert_eq!(m.count, 45);
        assert_eq!(monochromatic_pairs(&mod_coloring(6, 6).unwrap()).unwrap().count, 0);
        for seed in 0..20 {
            assert!(monochromatic_pairs(&random_coloring(50, 5, seed).unwrap()).unwrap().bound_holds());
        }
    }

    #[test]
    fn non_rainbow_bound_examples() {
        let constant = Coloring::constant(Domain::Interval, 10, 4).unwrap();
        let bound = non_rainbow_lower_bound(&constant).unwrap();
        // every pair of every quad is monochromatic: the bound is exactly the total
        assert_eq!(bound, Rational::from_integer(50));
        assert_eq!(non_rainbow_lower_bound(&mod_coloring(7, 7).unwrap()).unwrap(), Rational::from_integer(0));
        for seed in 0..15 {
            let c = random_coloring(30 + seed as usize, 4 + seed as usize % 3, seed).unwrap();
            let b = count_rainbow_naive(&c).unwrap();
            let lhs = Rational::from_integer(b.non_rainbow() as i128);
            assert!(lhs >= non_rainbow_lower_bound(&c).unwrap());
        }
    }
}
