//! Cyclic intervals on `[n] = {1, ..., n}` with the convention `n + 1 = 1`.
//!
//! Elements are 1-based everywhere in the public API. Internally a set of
//! elements is a `u64` mask where bit `e - 1` stands for element `e`, which
//! caps the cycle length at [`MAX_N`].

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported cycle length.
pub const MAX_N: u32 = 64;

/// A subset of `[n]` stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ElemSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a set from 1-based elements. Panics on elements outside `1..=64`.
    pub fn from_elems<I: IntoIterator<Item = u32>>(elems: I) -> Self {
        elems.into_iter().fold(ElemSet::EMPTY, |s, e| s.with(e))
    }

    /// Builds a set from 1-based elements, checking them against `[n]`.
    pub fn try_from_elems<I: IntoIterator<Item = u32>>(elems: I, n: u32) -> Result<Self> {
        let mut s = ElemSet::EMPTY;
        for e in elems {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            s = s.with(e);
        }
        Ok(s)
    }

    /// `{lo, lo + 1, ..., hi}` as plain integers (no wraparound); empty if `lo > hi`.
    pub fn range(lo: u32, hi: u32) -> Self {
        if lo > hi || hi == 0 {
            return ElemSet::EMPTY;
        }
        let lo = lo.max(1);
        ElemSet(low_bits(hi) & !low_bits(lo - 1))
    }

    #[inline]
    pub fn contains(self, e: u32) -> bool {
        e >= 1 && e <= 64 && self.0 >> (e - 1) & 1 == 1
    }

    #[inline]
    pub fn with(self, e: u32) -> Self {
        assert!((1..=64).contains(&e), "element {e} out of range");
        ElemSet(self.0 | 1 << (e - 1))
    }

    #[inline]
    pub fn without(self, e: u32) -> Self {
        if (1..=64).contains(&e) {
            ElemSet(self.0 & !(1 << (e - 1)))
        } else {
            self
        }
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: ElemSet) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elems {
        Elems(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }
}

#[inline]
fn low_bits(count: u32) -> u64 {
    if count >= 64 {
        u64::MAX
    } else {
        (1u64 << count) - 1
    }
}

/// Ascending iterator over the elements of an [`ElemSet`].
#[derive(Clone)]
pub struct Elems(u64);

impl Iterator for Elems {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elems {}

impl FromIterator<u32> for ElemSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        ElemSet::from_elems(iter)
    }
}

impl BitOr for ElemSet {
    type Output = ElemSet;
    fn bitor(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 | rhs.0)
    }
}

impl BitAnd for ElemSet {
    type Output = ElemSet;
    fn bitand(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 & rhs.0)
    }
}

impl BitXor for ElemSet {
    type Output = ElemSet;
    fn bitxor(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 ^ rhs.0)
    }
}

impl Sub for ElemSet {
    type Output = ElemSet;
    fn sub(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 & !rhs.0)
    }
}

/// Complement within all 64 positions; intersect with [`GroundSet::full`] to stay in `[n]`.
impl Not for ElemSet {
    type Output = ElemSet;
    fn not(self) -> ElemSet {
        ElemSet(!self.0)
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElemSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let elems = Vec::<u32>::deserialize(d)?;
        if let Some(&bad) = elems.iter().find(|&&e| e == 0 || e > MAX_N) {
            return Err(serde::de::Error::custom(format!("element {bad} out of range")));
        }
        Ok(ElemSet::from_elems(elems))
    }
}

/// The pair `(n, k)`: the cycle `C_n` and the subset size `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    n: u32,
    k: u32,
}

impl GroundSet {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if k < 1 || n < 2 * k || n > MAX_N {
            return Err(Error::InvalidGroundSet { n, k });
        }
        Ok(GroundSet { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// All of `[n]`.
    pub fn full(&self) -> ElemSet {
        ElemSet(low_bits(self.n))
    }

    /// Clockwise successor, `n + 1 = 1`.
    pub fn succ(&self, e: u32) -> u32 {
        if e == self.n {
            1
        } else {
            e + 1
        }
    }

    /// Counterclockwise predecessor, `0 = n`.
    pub fn pred(&self, e: u32) -> u32 {
        if e == 1 {
            self.n
        } else {
            e - 1
        }
    }

    pub fn check_element(&self, e: u32) -> Result<()> {
        if e == 0 || e > self.n {
            Err(Error::ElementOutOfRange { element: e, n: self.n })
        } else {
            Ok(())
        }
    }

    /// True iff no two elements of `x` are adjacent on `C_n` (including `{n, 1}`).
    pub fn is_independent(&self, x: ElemSet) -> bool {
        if !x.is_subset(self.full()) {
            return false;
        }
        if self.n == 1 {
            return true;
        }
        let rotated = ((x.0 << 1) | (x.0 >> (self.n - 1))) & self.full().0;
        x.0 & rotated == 0
    }

    /// True iff `x` is a vertex of `SG(n, k)`.
    pub fn is_vertex(&self, x: ElemSet) -> bool {
        x.len() == self.k && self.is_independent(x)
    }

    pub fn check_vertex(&self, x: ElemSet) -> Result<()> {
        if self.is_vertex(x) {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                set: x.to_string(),
                n: self.n,
                k: self.k,
            })
        }
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, k={})", self.n, self.k)
    }
}

/// Which endpoints of an interval are excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Openness {
    /// `[a, b]`
    Closed,
    /// `(a, b)`
    Open,
    /// `(a, b]`
    OpenLeft,
    /// `[a, b)`
    OpenRight,
}

/// An arc of `C_n` read clockwise from `start` to `end`.
///
/// Open and half-open variants are the closed arc minus the excluded
/// endpoint(s), so `(a, a)` and `[a, a)` are empty while `[a, a - 1]` is all
/// of `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicInterval {
    start: u32,
    end: u32,
    openness: Openness,
    n: u32,
}

impl CyclicInterval {
    pub fn new(start: u32, end: u32, openness: Openness, g: &GroundSet) -> Result<Self> {
        g.check_element(start)?;
        g.check_element(end)?;
        Ok(CyclicInterval {
            start,
            end,
            openness,
            n: g.n,
        })
    }

    /// `[a, b]`
    pub fn closed(a: u32, b: u32, g: &GroundSet) -> Result<Self> {
        Self::new(a, b, Openness::Closed, g)
    }

    /// `(a, b)`
    pub fn open(a: u32, b: u32, g: &GroundSet) -> Result<Self> {
        Self::new(a, b, Openness::Open, g)
    }

    /// `(a, b]`
    pub fn open_left(a: u32, b: u32, g: &GroundSet) -> Result<Self> {
        Self::new(a, b, Openness::OpenLeft, g)
    }

    /// `[a, b)`
    pub fn open_right(a: u32, b: u32, g: &GroundSet) -> Result<Self> {
        Self::new(a, b, Openness::OpenRight, g)
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn end(&self) -> u32 {
        self.end
    }

    pub fn openness(&self) -> Openness {
        self.openness
    }

    /// Membership mask of the interval.
    pub fn mask(&self) -> ElemSet {
        interval_mask(self.start, self.end, self.openness, self.n)
    }

    pub fn contains(&self, e: u32) -> bool {
        self.mask().contains(e)
    }

    pub fn len(&self) -> u32 {
        self.mask().len()
    }

    pub fn is_empty(&self) -> bool {
        self.mask().is_empty()
    }

    /// Elements in clockwise order from `start`.
    pub fn members(&self) -> Vec<u32> {
        clockwise(self.mask(), self.start, self.n)
    }

    /// `I_X = I ∩ X`, in clockwise order from `start`.
    pub fn restrict(&self, x: ElemSet) -> Vec<u32> {
        clockwise(self.mask() & x, self.start, self.n)
    }

    /// `|I ∩ X|`
    pub fn count(&self, x: ElemSet) -> u32 {
        (self.mask() & x).len()
    }

    /// The first element of `I_X` in clockwise order.
    pub fn first_in(&self, x: ElemSet) -> Option<u32> {
        first_clockwise(self.mask() & x, self.start, self.n)
    }

    /// The last element of `I_X` in clockwise order.
    pub fn last_in(&self, x: ElemSet) -> Option<u32> {
        let members = self.restrict(x);
        members.last().copied()
    }
}

impl fmt::Display for CyclicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = match self.openness {
            Openness::Closed => ('[', ']'),
            Openness::Open => ('(', ')'),
            Openness::OpenLeft => ('(', ']'),
            Openness::OpenRight => ('[', ')'),
        };
        write!(f, "{l}{},{}{r}", self.start, self.end)
    }
}

/// Mask of the cyclic interval with the given endpoints; endpoints must lie in `[n]`.
pub(crate) fn interval_mask(start: u32, end: u32, openness: Openness, n: u32) -> ElemSet {
    debug_assert!((1..=n).contains(&start) && (1..=n).contains(&end));
    let closed = if start <= end {
        ElemSet::range(start, end)
    } else {
        ElemSet::range(start, n) | ElemSet::range(1, end)
    };
    match openness {
        Openness::Closed => closed,
        Openness::Open => closed.without(start).without(end),
        Openness::OpenLeft => closed.without(start),
        Openness::OpenRight => closed.without(end),
    }
}

/// `|[d, c] ∩ X|` for a closed interval, without constructing it.
#[inline]
pub(crate) fn closed_count(d: u32, c: u32, x: ElemSet, n: u32) -> u32 {
    (interval_mask(d, c, Openness::Closed, n) & x).len()
}

fn clockwise(set: ElemSet, start: u32, n: u32) -> Vec<u32> {
    let tail = set & ElemSet::range(start, n);
    let head = set & ElemSet::range(1, start - 1);
    tail.iter().chain(head.iter()).collect()
}

fn first_clockwise(set: ElemSet, start: u32, n: u32) -> Option<u32> {
    (set & ElemSet::range(start, n))
        .min()
        .or_else(|| (set & ElemSet::range(1, start - 1)).min())
}

/// All `X`-consecutive pairs `⟨a, b⟩`, starting from the smallest element of `X`.
pub fn consecutive_pairs(x: ElemSet, g: &GroundSet) -> Result<Vec<(u32, u32)>> {
    if !x.is_subset(g.full()) {
        let bad = (x - g.full()).min().unwrap_or(0);
        return Err(Error::ElementOutOfRange { element: bad, n: g.n });
    }
    if x.len() < 2 {
        return Err(Error::TooFewElements { len: x.len() });
    }
    let elems = x.to_vec();
    let pairs = elems
        .iter()
        .zip(elems.iter().cycle().skip(1))
        .map(|(&a, &b)| (a, b))
        .collect();
    Ok(pairs)
}

/// True iff, reading `I` clockwise, the elements of `A ∪ B` alternate between `A` and `B`.
pub fn alternate_on(a: ElemSet, b: ElemSet, interval: &CyclicInterval) -> bool {
    if !a.is_disjoint(b) {
        return false;
    }
    let mut last: Option<bool> = None;
    for e in interval.restrict(a | b) {
        let in_a = a.contains(e);
        if last == Some(in_a) {
            return false;
        }
        last = Some(in_a);
    }
    true
}

/// True iff `A` and `B` alternate all the way round `C_n`, including across `n, 1`.
pub fn is_interlacing(a: ElemSet, b: ElemSet, g: &GroundSet) -> bool {
    if !a.is_disjoint(b) || !(a | b).is_subset(g.full()) {
        return false;
    }
    let mut first: Option<bool> = None;
    let mut last: Option<bool> = None;
    for e in (a | b).iter() {
        let in_a = a.contains(e);
        if last == Some(in_a) {
            return false;
        }
        first.get_or_insert(in_a);
        last = Some(in_a);
    }
    match (first, last) {
        (Some(f), Some(l)) => (a | b).len() < 2 || f != l,
        _ => true,
    }
}
