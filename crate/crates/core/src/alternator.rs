//! Admissible intervals, switching, and the alternator that decides whether a
//! disjoint pair of Schrijver vertices is an almost-interlacing edge.
//!
//! An alternator for a pair `AB` is a set of control pairs `⟨c_i, d_i⟩` with
//!
//! 1. `1 <= c_1 < ... < c_m <= k - 1`,
//! 2. `k + 1 <= d_m < ... < d_1 <= n`,
//! 3. every `[d_i, c_i]` admissible for `AB`,
//! 4. switching `AB` along `[d_1, c_1], ..., [d_m, c_m]` yields an interlacing pair.
//!
//! The standard alternator additionally has `d_i + 1 ∈ A ∪ B` for every `i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclic::{closed_count, interval_mask, is_interlacing, CyclicInterval, ElemSet, GroundSet, Openness};
use crate::error::{Error, Result};

/// A control pair `⟨c, d⟩`, certifying the interval `[d, c]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ControlPair {
    pub c: u32,
    pub d: u32,
}

impl fmt::Display for ControlPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.c, self.d)
    }
}

/// Control pairs in index order (`c` increasing, `d` decreasing).
///
/// The empty alternator certifies an interlacing pair.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Alternator {
    pairs: Vec<ControlPair>,
}

impl Alternator {
    pub fn empty() -> Self {
        Alternator::default()
    }

    /// Wraps control pairs as given; nothing is validated, see [`is_alternator`].
    pub fn from_pairs(pairs: Vec<ControlPair>) -> Self {
        Alternator { pairs }
    }

    pub fn pairs(&self) -> &[ControlPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The control elements `C`.
    pub fn controls(&self) -> ElemSet {
        self.pairs.iter().map(|p| p.c).collect()
    }

    /// The partner elements `D`.
    pub fn partners(&self) -> ElemSet {
        self.pairs.iter().map(|p| p.d).collect()
    }

    /// `C ∪ D`
    pub fn as_set(&self) -> ElemSet {
        self.controls() | self.partners()
    }

    /// The intervals `[d_i, c_i]` in switching order.
    pub fn intervals(&self, g: &GroundSet) -> Result<Vec<CyclicInterval>> {
        self.pairs
            .iter()
            .map(|p| CyclicInterval::closed(p.d, p.c, g))
            .collect()
    }
}

impl fmt::Display for Alternator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("(empty)");
        }
        for (i, p) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// An alternator together with the edge it certifies, 1-based throughout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: u32,
    pub k: u32,
    pub a: ElemSet,
    pub b: ElemSet,
    pub pairs: Vec<ControlPair>,
}

impl Certificate {
    pub fn new(g: &GroundSet, a: ElemSet, b: ElemSet, alt: &Alternator) -> Self {
        Certificate {
            n: g.n(),
            k: g.k(),
            a,
            b,
            pairs: alt.pairs().to_vec(),
        }
    }
}

/// Line-oriented text form: `n`, `k`, `A`, `B`, then one `pair c d` line per control pair.
impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        writeln!(f, "k {}", self.k)?;
        writeln!(f, "A {}", join(self.a))?;
        writeln!(f, "B {}", join(self.b))?;
        writeln!(f, "m {}", self.pairs.len())?;
        for p in &self.pairs {
            writeln!(f, "pair {} {}", p.c, p.d)?;
        }
        Ok(())
    }
}

fn join(s: ElemSet) -> String {
    s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

/// `|I_A| = |I_B| = c`, where `c` is the end of `I`.
pub fn is_weakly_admissible(a: ElemSet, b: ElemSet, interval: &CyclicInterval) -> bool {
    let c = interval.end();
    a.is_disjoint(b) && interval.count(a) == c && interval.count(b) == c
}

/// Weakly admissible with both endpoints outside `A ∪ B`.
pub fn is_admissible(a: ElemSet, b: ElemSet, interval: &CyclicInterval) -> bool {
    let ab = a | b;
    is_weakly_admissible(a, b, interval) && !ab.contains(interval.start()) && !ab.contains(interval.end())
}

/// Exchanges the elements of `I ∩ (A ∪ B)` between `A` and `B`.
pub fn switch(a: ElemSet, b: ElemSet, interval: &CyclicInterval) -> (ElemSet, ElemSet) {
    let moved = interval.mask() & (a | b);
    (a ^ moved, b ^ moved)
}

/// Left fold of [`switch`]; the empty sequence is the identity.
pub fn switch_along(a: ElemSet, b: ElemSet, intervals: &[CyclicInterval]) -> (ElemSet, ElemSet) {
    intervals.iter().fold((a, b), |(a, b), i| switch(a, b, i))
}

/// Every closed `[d, c]` with `c, d ∈ [n]` that is weakly `AB`-admissible, as `(d, c)`.
pub fn weakly_admissible_intervals(a: ElemSet, b: ElemSet, g: &GroundSet) -> Vec<(u32, u32)> {
    let n = g.n();
    let mut out = Vec::new();
    for c in 1..=n {
        for d in 1..=n {
            if closed_count(d, c, a, n) == c && closed_count(d, c, b, n) == c {
                out.push((d, c));
            }
        }
    }
    out
}

/// The depth of `d` in `X`: the unique `c ∈ [k - 1]` with `|[d, c]_X| = c` and
/// `c ∉ X`, or the sentinel `k` when no such `c` exists.
pub fn depth(x: ElemSet, d: u32, g: &GroundSet) -> Result<u32> {
    let (n, k) = (g.n(), g.k());
    if d < k || d > n {
        return Err(Error::OutOfRange {
            what: "d",
            value: d,
            lo: k,
            hi: n,
        });
    }
    Ok((1..k)
        .find(|&c| !x.contains(c) && closed_count(d, c, x, n) == c)
        .unwrap_or(k))
}

/// Checks all four alternator conditions for `alt` against the pair `AB`.
pub fn is_alternator(a: ElemSet, b: ElemSet, alt: &Alternator, g: &GroundSet) -> bool {
    let (n, k) = (g.n(), g.k());
    if !a.is_disjoint(b) {
        return false;
    }
    let pairs = alt.pairs();
    let controls_ok = pairs.iter().all(|p| p.c >= 1 && p.c < k)
        && pairs.windows(2).all(|w| w[0].c < w[1].c);
    let partners_ok = pairs.iter().all(|p| p.d > k && p.d <= n)
        && pairs.windows(2).all(|w| w[0].d > w[1].d);
    if !controls_ok || !partners_ok {
        return false;
    }
    let ab = a | b;
    let admissible = pairs.iter().all(|p| {
        !ab.contains(p.c)
            && !ab.contains(p.d)
            && closed_count(p.d, p.c, a, n) == p.c
            && closed_count(p.d, p.c, b, n) == p.c
    });
    if !admissible {
        return false;
    }
    let (a2, b2) = pairs.iter().fold((a, b), |(a, b), p| {
        let moved = interval_mask(p.d, p.c, Openness::Closed, n) & (a | b);
        (a ^ moved, b ^ moved)
    });
    is_interlacing(a2, b2, g)
}

fn check_pair(a: ElemSet, b: ElemSet, g: &GroundSet) -> Result<()> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if !a.is_disjoint(b) {
        return Err(Error::NotDisjoint {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    Ok(())
}

/// Finds the standard `AB`-alternator, or `None` when `AB` is not almost-interlacing.
///
/// Each gap `(x, y)` between same-side consecutive elements of `A ∪ B` inside
/// `[k, n]` receives the partner `y - 1`; each control element is the depth of
/// its partner in `A`. The candidate is re-checked against every condition
/// before it is returned.
pub fn find_standard_alternator(a: ElemSet, b: ElemSet, g: &GroundSet) -> Result<Option<Alternator>> {
    check_pair(a, b, g)?;
    if is_interlacing(a, b, g) {
        return Ok(Some(Alternator::empty()));
    }
    let k = g.k();
    let ab = a | b;
    let elems = ab.to_vec();
    let mut partners: Vec<u32> = elems
        .windows(2)
        .filter(|w| w[0] >= k && (a.contains(w[0]) == a.contains(w[1])))
        .map(|w| w[1] - 1)
        .collect();
    partners.sort_unstable_by(|x, y| y.cmp(x));

    let mut pairs = Vec::with_capacity(partners.len());
    for d in partners {
        let c = depth(a, d, g)?;
        if c == k {
            return Ok(None);
        }
        pairs.push(ControlPair { c, d });
    }
    let alt = Alternator::from_pairs(pairs);
    Ok(is_alternator(a, b, &alt, g).then_some(alt))
}

/// Every `AB`-alternator, by exhaustive search over `C ⊆ [k - 1]` and
/// `D ⊆ [k + 1, n]`. Exponential in `n`; meant as a test oracle.
pub fn enumerate_alternators(a: ElemSet, b: ElemSet, g: &GroundSet) -> Result<Vec<Alternator>> {
    check_pair(a, b, g)?;
    let (n, k) = (g.n(), g.k());
    let control_pool = ElemSet::range(1, k - 1).to_vec();
    let partner_pool = ElemSet::range(k + 1, n).to_vec();
    let mut found = Vec::new();
    for cmask in 0u64..(1 << control_pool.len()) {
        let controls: Vec<u32> = select(&control_pool, cmask);
        let m = controls.len();
        for dmask in 0u64..(1 << partner_pool.len()) {
            if dmask.count_ones() as usize != m {
                continue;
            }
            let mut partners = select(&partner_pool, dmask);
            partners.reverse();
            let alt = Alternator::from_pairs(
                controls
                    .iter()
                    .zip(&partners)
                    .map(|(&c, &d)| ControlPair { c, d })
                    .collect(),
            );
            if is_alternator(a, b, &alt, g) {
                found.push(alt);
            }
        }
    }
    found.sort();
    Ok(found)
}

fn select(pool: &[u32], mask: u64) -> Vec<u32> {
    pool.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect()
}

/// Almost-interlacing test for `k = 2`: interlacing, or `1 < a_1 < b_1 < b_2 < a_2`
/// after naming the sets so that `a_1 < b_1`.
pub fn xg_edge_characterization_k2(a: ElemSet, b: ElemSet, g: &GroundSet) -> Result<bool> {
    if g.k() != 2 {
        return Err(Error::WrongK {
            expected: 2,
            actual: g.k(),
        });
    }
    check_pair(a, b, g)?;
    if is_interlacing(a, b, g) {
        return Ok(true);
    }
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    if a[0] > b[0] {
        std::mem::swap(&mut a, &mut b);
    }
    Ok(1 < a[0] && a[0] < b[0] && b[0] < b[1] && b[1] < a[1])
}
