//! Sidon 4-sets over the integers and over `Z_k`, plus the per-pattern tally.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Four distinct integers `x1 > x2 > x3 > x4` with `x1 + x4 = x2 + x3`.
///
/// Over the integers the pairing is forced: the extremes sit on one side of
/// the equation and the middles on the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SidonQuad {
    x1: usize,
    x2: usize,
    x3: usize,
    x4: usize,
}

impl SidonQuad {
    /// Canonicalizes four values in any order. Returns `None` for repeated
    /// values or when they do not solve the equation.
    pub fn from_values(values: [usize; 4]) -> Option<Self> {
        let mut v = values;
        v.sort_unstable_by(|a, b| b.cmp(a));
        if v[0] == v[1] || v[1] == v[2] || v[2] == v[3] {
            return None;
        }
        (v[0] + v[3] == v[1] + v[2]).then_some(Self { x1: v[0], x2: v[1], x3: v[2], x4: v[3] })
    }

    /// Builds from the two sides directly. Caller guarantees `x1 > x2 > x3 > x4` and the equation.
    pub(crate) fn from_sorted_unchecked(x1: usize, x2: usize, x3: usize, x4: usize) -> Self {
        debug_assert!(x1 > x2 && x2 > x3 && x3 > x4 && x1 + x4 == x2 + x3);
        Self { x1, x2, x3, x4 }
    }

    pub fn elements(&self) -> [usize; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    /// The common side sum `x1 + x4 = x2 + x3`.
    pub fn side_sum(&self) -> usize {
        self.x1 + self.x4
    }

    pub fn outer(&self) -> (usize, usize) {
        (self.x1, self.x4)
    }

    pub fn inner(&self) -> (usize, usize) {
        (self.x2, self.x3)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements().contains(&x)
    }

    pub fn to_csv(&self) -> String {
        format!("{},{},{},{}", self.x1, self.x2, self.x3, self.x4)
    }
}

impl fmt::Display for SidonQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}+{} = {}+{}}}", self.x1, self.x4, self.x2, self.x3)
    }
}

/// Validates that all four values lie in `[1, n]`, then canonicalizes.
///
/// `Ok(None)` means the values are in range but do not form a Sidon 4-set.
pub fn make_quad(a: i64, b: i64, c: i64, d: i64, n: usize) -> Result<Option<SidonQuad>> {
    let mut values = [0usize; 4];
    for (position, &v) in [a, b, c, d].iter().enumerate() {
        if v < 1 || v > n as i64 {
            return Err(Error::OutOfRange { position, value: v, n });
        }
        values[position] = v as usize;
    }
    Ok(SidonQuad::from_values(values))
}

/// A solution `{α+β ≡ γ+δ}` in `Z_k` with four distinct residues in `{1..k}`.
///
/// The pairing is part of the object: the same four residues can carry more
/// than one valid pairing, and those are different quads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModularSidonQuad {
    pair_a: (u32, u32),
    pair_b: (u32, u32),
}

impl ModularSidonQuad {
    /// Canonicalizes the two sides; `None` unless the residues are distinct
    /// members of `{1..k}` and the side sums agree modulo `k`.
    pub fn new(side1: (u32, u32), side2: (u32, u32), k: u32) -> Option<Self> {
        let order = |(a, b): (u32, u32)| if a <= b { (a, b) } else { (b, a) };
        let (p, q) = (order(side1), order(side2));
        let all = [p.0, p.1, q.0, q.1];
        if all.iter().any(|&r| r == 0 || r > k) {
            return None;
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if all[i] == all[j] {
                    return None;
                }
            }
        }
        if (p.0 + p.1) % k != (q.0 + q.1) % k {
            return None;
        }
        let (pair_a, pair_b) = if p <= q { (p, q) } else { (q, p) };
        Some(Self { pair_a, pair_b })
    }

    pub fn pair_a(&self) -> (u32, u32) {
        self.pair_a
    }

    pub fn pair_b(&self) -> (u32, u32) {
        self.pair_b
    }

    /// The side-sum residue in `{1..k}`.
    pub fn bucket(&self, k: u32) -> u32 {
        (self.pair_a.0 + self.pair_a.1 - 1) % k + 1
    }
}

impl fmt::Display for ModularSidonQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}+{} ≡ {}+{}}}",
            self.pair_a.0, self.pair_a.1, self.pair_b.0, self.pair_b.1
        )
    }
}

/// Color pattern of a 4-set: how many distinct colors it sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadClass {
    Rainbow,
    Monochromatic,
    TwoColored,
    ThreeColored,
}

impl QuadClass {
    pub fn from_colors(colors: [u32; 4]) -> Self {
        let mut distinct = 1;
        for i in 1..4 {
            if !colors[..i].contains(&colors[i]) {
                distinct += 1;
            }
        }
        match distinct {
            1 => QuadClass::Monochromatic,
            2 => QuadClass::TwoColored,
            3 => QuadClass::ThreeColored,
            _ => QuadClass::Rainbow,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClassBreakdown {
    pub rainbow: u64,
    pub monochromatic: u64,
    pub two_colored: u64,
    pub three_colored: u64,
}

impl ClassBreakdown {
    pub fn record(&mut self, class: QuadClass) {
        match class {
            QuadClass::Rainbow => self.rainbow += 1,
            QuadClass::Monochromatic => self.monochromatic += 1,
            QuadClass::TwoColored => self.two_colored += 1,
            QuadClass::ThreeColored => self.three_colored += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.rainbow + self.monochromatic + self.two_colored + self.three_colored
    }

    pub fn non_rainbow(&self) -> u64 {
        self.total() - self.rainbow
    }

    /// `{"n":…,"k":…,"rainbow":…,"monochromatic":…,"two":…,"three":…,"total":…}`
    pub fn to_json(&self, n: usize, k: usize) -> String {
        format!(
            "{{\"n\":{},\"k\":{},\"rainbow\":{},\"monochromatic\":{},\"two\":{},\"three\":{},\"total\":{}}}",
            n,
            k,
            self.rainbow,
            self.monochromatic,
            self.two_colored,
            self.three_colored,
            self.total()
        )
    }
}
