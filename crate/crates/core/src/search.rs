//! Searching for colorings with many rainbow Sidon 4-sets.
//!
//! Exhaustive search walks canonical colorings only: colors are introduced
//! in order of first occurrence, so each coloring is visited once per orbit
//! of color relabelings. Local search is best-improvement hill climbing over
//! single-element recolorings.

use serde_json::json;

use crate::coloring::{mod_coloring, random_coloring, Coloring, Domain};
use crate::counting::count_rainbow_naive;
use crate::enumeration::{enumerate_quads, quads_containing};
use crate::error::{Error, Result};
use crate::quad::{QuadClass, SidonQuad};

/// Canonical colorings visited by default: admits `n = 12, k = 4`.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    Exhaustive,
    LocalSearch,
}

impl SearchMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMethod::Exhaustive => "exhaustive",
            SearchMethod::LocalSearch => "local_search",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub best_count: u64,
    pub best_coloring: Coloring,
    pub method: SearchMethod,
    pub restarts: u64,
    pub moves: u64,
    pub seed: u64,
    /// True only for a completed exhaustive search.
    pub exact: bool,
}

impl SearchResult {
    fn verified(self) -> Result<Self> {
        let recount = count_rainbow_naive(&self.best_coloring)?.rainbow;
        assert_eq!(recount, self.best_count, "search reported a count its witness does not have");
        Ok(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let witness: serde_json::Value =
            serde_json::from_str(&self.best_coloring.to_json()).expect("valid coloring JSON");
        json!({
            "n": self.best_coloring.n(),
            "k": self.best_coloring.k(),
            "best_count": self.best_count,
            "method": self.method.as_str(),
            "restarts": self.restarts,
            "moves": self.moves,
            "seed": self.seed,
            "exact": self.exact,
            "coloring": witness,
        })
    }
}

#[inline]
fn is_rainbow(colors: [u32; 4]) -> bool {
    QuadClass::from_colors(colors) == QuadClass::Rainbow
}

/// `Σ_{j ≤ min(k, n)} S(n, j)`: colorings of `[n]` with at most `k` colors, up to relabeling.
pub fn canonical_coloring_count(n: usize, k: usize) -> u128 {
    // stirling[j] = S(i, j) for the current i
    let mut stirling = vec![0u128; k + 1];
    stirling[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            stirling[j] = stirling[j].saturating_mul(j as u128).saturating_add(stirling[j - 1]);
        }
        stirling[0] = 0;
    }
    stirling[1..].iter().fold(0u128, |acc, &s| acc.saturating_add(s))
}

/// Relabels colors in order of first occurrence.
fn canonical_form(colors: &[u32]) -> Vec<u32> {
    let top = colors.iter().copied().max().unwrap_or(0) as usize;
    let mut relabel = vec![0u32; top + 1];
    let mut next = 0;
    colors
        .iter()
        .map(|&c| {
            if relabel[c as usize] == 0 {
                next += 1;
                relabel[c as usize] = next;
            }
            relabel[c as usize]
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveOptions {
    /// Maximum number of canonical colorings the search may need to cover.
    pub budget: u128,
    /// Skip a coloring when its mirror image `x ↦ n + 1 − x` is canonically smaller.
    pub reflection_pruning: bool,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_EXHAUSTIVE_BUDGET, reflection_pruning: false }
    }
}

/// Quads grouped by their largest element, as `[x2, x3, x4]`.
fn quads_by_top(n: usize) -> Vec<Vec<[usize; 3]>> {
    let mut by_top = vec![Vec::new(); n + 1];
    for q in enumerate_quads(n) {
        let [x1, x2, x3, x4] = q.elements();
        by_top[x1].push([x2, x3, x4]);
    }
    by_top
}

struct Exhaustive<'a> {
    n: usize,
    k: u32,
    by_top: &'a [Vec<[usize; 3]>],
    // quads whose largest element exceeds x
    remaining_after: Vec<u64>,
    colors: Vec<u32>, // colors[x] for x in 1..=n; index 0 unused
    reflection: bool,
    best: Option<(u64, Vec<u32>)>,
}

impl Exhaustive<'_> {
    fn run(&mut self, x: usize, used: u32, count: u64) {
        if let Some((best, _)) = &self.best {
            if count + self.remaining_after[x - 1] <= *best {
                return;
            }
        }
        if x > self.n {
            if self.reflection && self.mirror_is_smaller() {
                return;
            }
            self.best = Some((count, self.colors[1..].to_vec()));
            return;
        }
        let top = (used + 1).min(self.k);
        for color in 1..=top {
            self.colors[x] = color;
            let gained = self.by_top[x]
                .iter()
                .filter(|[a, b, d]| {
                    is_rainbow([color, self.colors[*a], self.colors[*b], self.colors[*d]])
                })
                .count() as u64;
            self.run(x + 1, used.max(color), count + gained);
        }
    }

    fn mirror_is_smaller(&self) -> bool {
        let mirrored: Vec<u32> = self.colors[1..].iter().rev().copied().collect();
        canonical_form(&mirrored).as_slice() < &self.colors[1..]
    }
}

/// Exact maximum rainbow count over all `k`-colorings of `[n]`.
pub fn exhaustive_ar(n: usize, k: usize) -> Result<SearchResult> {
    exhaustive_ar_with(n, k, ExhaustiveOptions::default())
}

pub fn exhaustive_ar_with(n: usize, k: usize, options: ExhaustiveOptions) -> Result<SearchResult> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter("n and k must be at least 1".into()));
    }
    let required = canonical_coloring_count(n, k);
    if required > options.budget {
        return Err(Error::BudgetExceeded { required, budget: options.budget });
    }
    let by_top = quads_by_top(n);
    let mut remaining_after = vec![0u64; n + 1];
    for x in (0..n).rev() {
        remaining_after[x] = remaining_after[x + 1] + by_top[x + 1].len() as u64;
    }
    let mut search = Exhaustive {
        n,
        k: k as u32,
        by_top: &by_top,
        remaining_after,
        colors: vec![0; n + 1],
        reflection: options.reflection_pruning,
        best: None,
    };
    search.run(1, 0, 0);
    let (best_count, colors) = search.best.expect("at least one canonical coloring exists");
    SearchResult {
        best_count,
        best_coloring: Coloring::new(Domain::Interval, k, colors)?,
        method: SearchMethod::Exhaustive,
        restarts: 0,
        moves: 0,
        seed: 0,
        exact: true,
    }
    .verified()
}

/// Change in rainbow count if element `i` is recolored to `new_color`.
pub fn delta_recolor(c: &Coloring, i: usize, new_color: u32) -> Result<i64> {
    if c.domain() != Domain::Interval {
        return Err(Error::DomainMismatch { expected: "interval" });
    }
    if i == 0 || i > c.n() {
        return Err(Error::OutOfRange { position: 0, value: i as i64, n: c.n() });
    }
    if new_color == 0 || new_color as usize > c.k() {
        return Err(Error::ColorOutOfRange { index: i - 1, color: new_color as i64, k: c.k() });
    }
    Ok(quads_containing(c.n(), i)
        .iter()
        .map(|q| quad_delta(q.elements(), c.colors(), i, new_color))
        .sum())
}

#[inline]
fn quad_delta(elements: [usize; 4], colors: &[u32], i: usize, new_color: u32) -> i64 {
    let before = elements.map(|x| colors[x - 1]);
    let after = elements.map(|x| if x == i { new_color } else { colors[x - 1] });
    is_rainbow(after) as i64 - is_rainbow(before) as i64
}

/// Quads plus, for every element, the indices of the quads containing it.
struct Incidence {
    quads: Vec<SidonQuad>,
    containing: Vec<Vec<u32>>,
}

impl Incidence {
    fn new(n: usize) -> Self {
        let quads: Vec<SidonQuad> = enumerate_quads(n).collect();
        let mut containing = vec![Vec::new(); n + 1];
        for (idx, q) in quads.iter().enumerate() {
            for x in q.elements() {
                containing[x].push(idx as u32);
            }
        }
        Self { quads, containing }
    }

    fn delta(&self, colors: &[u32], i: usize, new_color: u32) -> i64 {
        self.containing[i]
            .iter()
            .map(|&q| quad_delta(self.quads[q as usize].elements(), colors, i, new_color))
            .sum()
    }

    fn rainbow(&self, colors: &[u32]) -> u64 {
        self.quads
            .iter()
            .filter(|q| is_rainbow(q.elements().map(|x| colors[x - 1])))
            .count() as u64
    }
}

/// Climbs until no move improves or `max_moves` moves were made.
/// Returns the final count and the number of moves applied.
fn climb(inc: &Incidence, colors: &mut [u32], k: u32, max_moves: u64) -> (u64, u64) {
    let mut count = inc.rainbow(colors);
    let mut moves = 0;
    while moves < max_moves {
        let mut best: Option<(i64, usize, u32)> = None;
        for i in 1..=colors.len() {
            let current = colors[i - 1];
            for color in (1..=k).filter(|&c| c != current) {
                let d = inc.delta(colors, i, color);
                if d > best.map_or(0, |b| b.0) {
                    best = Some((d, i, color));
                }
            }
        }
        let Some((d, i, color)) = best else { break };
        colors[i - 1] = color;
        count = (count as i64 + d) as u64;
        moves += 1;
    }
    (count, moves)
}

/// Hill climbing from the mod-k coloring (restart 0) and from `restarts`
/// random colorings (restart `r` seeded with `seed + r`).
pub fn local_search(
    n: usize,
    k: usize,
    seed: u64,
    restarts: u64,
    max_moves: u64,
) -> Result<SearchResult> {
    if k < 4 || n < k {
        return Err(Error::InvalidParameter(format!("need n >= k >= 4, got n = {n}, k = {k}")));
    }
    let inc = Incidence::new(n);
    let mut best: Option<(u64, Vec<u32>)> = None;
    let mut total_moves = 0;
    for r in 0..=restarts {
        let start = if r == 0 {
            mod_coloring(n, k)?
        } else {
            random_coloring(n, k, seed.wrapping_add(r))?
        };
        let mut colors = start.colors().to_vec();
        let (count, moves) = climb(&inc, &mut colors, k as u32, max_moves);
        total_moves += moves;
        if best.as_ref().is_none_or(|(b, _)| count > *b) {
            best = Some((count, colors));
        }
    }
    let (best_count, colors) = best.expect("restart 0 always runs");
    SearchResult {
        best_count,
        best_coloring: Coloring::new(Domain::Interval, k, colors)?,
        method: SearchMethod::LocalSearch,
        restarts,
        moves: total_moves,
        seed,
        exact: false,
    }
    .verified()
}

/// Looks for a surjective 4-coloring of `[n]` whose smallest class has at
/// least `(n + 1)/6` elements and which has no rainbow Sidon 4-set.
pub fn fox_counterexample(n: usize) -> Result<Option<Coloring>> {
    fox_counterexample_with_budget(n, DEFAULT_EXHAUSTIVE_BUDGET)
}

pub fn fox_counterexample_with_budget(n: usize, budget: u128) -> Result<Option<Coloring>> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("need n >= 4, got {n}")));
    }
    let required = canonical_coloring_count(n, 4);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let by_top = quads_by_top(n);
    let mut colors = vec![0u32; n + 1];
    let mut sizes = [0usize; 5];
    Ok(fox_walk(n, 1, 0, false, &by_top, &mut colors, &mut sizes)
        .map(|c| Coloring::new(Domain::Interval, 4, c).expect("colors within 1..=4")))
}

fn fox_walk(
    n: usize,
    x: usize,
    used: u32,
    has_rainbow: bool,
    by_top: &[Vec<[usize; 3]>],
    colors: &mut Vec<u32>,
    sizes: &mut [usize; 5],
) -> Option<Vec<u32>> {
    if has_rainbow {
        return None;
    }
    if x > n {
        let min_class = sizes[1..].iter().copied().min().unwrap();
        return (used == 4 && 6 * min_class > n).then(|| colors[1..].to_vec());
    }
    for color in 1..=(used + 1).min(4) {
        colors[x] = color;
        sizes[color as usize] += 1;
        let rainbow_here = by_top[x]
            .iter()
            .any(|[a, b, d]| is_rainbow([color, colors[*a], colors[*b], colors[*d]]));
        let found = fox_walk(n, x + 1, used.max(color), rainbow_here, by_top, colors, sizes);
        sizes[color as usize] -= 1;
        if found.is_some() {
            return found;
        }
    }
    None
}

/// True when every 4-coloring of `[n]` with smallest class at least `(n + 1)/6`
/// has a rainbow Sidon 4-set.
pub fn fox_spot_check(n: usize) -> Result<bool> {
    Ok(fox_counterexample(n)?.is_none())
}
