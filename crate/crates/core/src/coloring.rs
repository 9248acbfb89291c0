//! Colorings of the interval `[n] = {1..n}` or the cyclic group `Z_n`.
//!
//! Elements are always numbered `1..=n`. In the cyclic domain the element
//! `n` stands for the residue class of `0`, and every lookup is reduced into
//! the window `{1..n}` first.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Interval,
    Cyclic,
}

impl Domain {
    pub fn as_str(self) -> &'static str {
        match self {
            Domain::Interval => "interval",
            Domain::Cyclic => "cyclic",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A `k`-coloring of `n` elements. Not necessarily surjective.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    domain: Domain,
    k: usize,
    colors: Vec<u32>,
}

/// Wire shape of the JSON format. Field order fixes the serialized text.
#[derive(Serialize, Deserialize)]
struct ColoringRecord {
    domain: Domain,
    n: i64,
    k: i64,
    colors: Vec<i64>,
}

impl Coloring {
    /// Builds a coloring from explicit colors; `colors[i]` is the color of element `i + 1`.
    pub fn new(domain: Domain, k: usize, colors: Vec<u32>) -> Result<Self> {
        if colors.is_empty() {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if let Some((index, &color)) = colors
            .iter()
            .enumerate()
            .find(|(_, &c)| c == 0 || c as usize > k)
        {
            return Err(Error::ColorOutOfRange { index, color: color as i64, k });
        }
        Ok(Self { domain, k, colors })
    }

    /// Every element gets color 1.
    pub fn constant(domain: Domain, n: usize, k: usize) -> Result<Self> {
        Self::new(domain, k, vec![1; n])
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Color of element `x` in `1..=n`.
    ///
    /// Panics if `x` is outside `1..=n`.
    #[inline]
    pub fn color(&self, x: usize) -> u32 {
        self.colors[x - 1]
    }

    /// Color of the residue class of `x`, for any integer `x`.
    #[inline]
    pub fn color_mod(&self, x: i64) -> u32 {
        let n = self.n() as i64;
        self.colors[(x - 1).rem_euclid(n) as usize]
    }

    /// The color classes `X_1..X_k`, each sorted ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.k];
        for (i, &c) in self.colors.iter().enumerate() {
            classes[c as usize - 1].push(i + 1);
        }
        classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.colors {
            sizes[c as usize - 1] += 1;
        }
        sizes
    }

    pub fn with_domain(&self, domain: Domain) -> Self {
        Self { domain, ..self.clone() }
    }

    /// Returns a copy with element `x` recolored.
    pub fn recolored(&self, x: usize, color: u32) -> Result<Self> {
        if x == 0 || x > self.n() {
            return Err(Error::OutOfRange { position: 0, value: x as i64, n: self.n() });
        }
        if color == 0 || color as usize > self.k {
            return Err(Error::ColorOutOfRange { index: x - 1, color: color as i64, k: self.k });
        }
        let mut colors = self.colors.clone();
        colors[x - 1] = color;
        Ok(Self { colors, ..self.clone() })
    }

    pub fn to_json(&self) -> String {
        let record = ColoringRecord {
            domain: self.domain,
            n: self.n() as i64,
            k: self.k as i64,
            colors: self.colors.iter().map(|&c| c as i64).collect(),
        };
        serde_json::to_string(&record).expect("coloring record is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: ColoringRecord = serde_json::from_str(text).map_err(|e| Error::Malformed {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if record.n < 1 {
            return Err(Error::InvalidParameter(format!("n must be at least 1, got {}", record.n)));
        }
        if record.k < 1 {
            return Err(Error::InvalidParameter(format!("k must be at least 1, got {}", record.k)));
        }
        if record.colors.len() as i64 != record.n {
            return Err(Error::LengthMismatch { n: record.n as usize, len: record.colors.len() });
        }
        let k = record.k as usize;
        let mut colors = Vec::with_capacity(record.colors.len());
        for (index, &color) in record.colors.iter().enumerate() {
            if color < 1 || color > record.k {
                return Err(Error::ColorOutOfRange { index, color, k });
            }
            colors.push(color as u32);
        }
        Ok(Self { domain: record.domain, k, colors })
    }
}

/// `c(i) = i mod k` with residues taken in `{1..k}`.
pub fn mod_coloring(n: usize, k: usize) -> Result<Coloring> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "mod coloring needs 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let colors = (0..n).map(|i| (i % k) as u32 + 1).collect();
    Coloring::new(Domain::Interval, k, colors)
}

/// Independent uniform colors from a ChaCha8 stream seeded with `seed`.
pub fn random_coloring(n: usize, k: usize, seed: u64) -> Result<Coloring> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter("n and k must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colors = (0..n).map(|_| rng.gen_range(1..=k as u32)).collect();
    Coloring::new(Domain::Interval, k, colors)
}

pub fn parse_coloring(text: &str) -> Result<Coloring> {
    Coloring::from_json(text.trim())
}

pub fn serialize_coloring(coloring: &Coloring) -> String {
    coloring.to_json()
}

/// Parses JSON-lines: one coloring per non-blank line. Errors carry the 1-based line number.
pub fn parse_coloring_lines(text: &str) -> Result<Vec<Coloring>> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            parse_coloring(line).map_err(|e| match e {
                Error::Malformed { column, message, .. } => {
                    Error::Malformed { line: i + 1, column, message }
                }
                other => other,
            })
        })
        .collect()
}
