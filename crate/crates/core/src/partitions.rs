//! Partition combinatorics for the cochain bases.
//!
//! A [`Partition`] is a non-decreasing list of parts. Most of the theory
//! only needs strict and regular partitions, but the type admits repeated
//! parts so that unions of marked partitions stay representable.
//!
//! Parts are allowed down to `-1`, the smallest index of the Witt algebra,
//! so that the same enumerators index the slices of `L_0` and `L_{-1}`.
//! Everything that talks about density, specialness and leading parts is
//! parameterised by a [`KContext`] and rejects parts below `k`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Smallest index that can occur anywhere (the generator `e_{-1}`).
pub const MIN_INDEX: i32 = -1;

/// The minimal allowed part, i.e. the `k` of `L_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KContext {
    k: i32,
}

impl KContext {
    pub fn new(k: i32) -> Result<Self> {
        if k < MIN_INDEX {
            return Err(Error::InvalidK(k));
        }
        Ok(Self { k })
    }

    /// The context of `L_1`, where most of the theory lives.
    pub const fn one() -> Self {
        Self { k: 1 }
    }

    pub const fn k(self) -> i32 {
        self.k
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<i32>,
}

impl Partition {
    /// Builds a partition from non-decreasing parts. The empty list is
    /// rejected; use [`Partition::empty`] where an empty value is meant.
    pub fn new(parts: Vec<i32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition { parts, reason: "empty" });
        }
        Self::with_parts(parts)
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    fn with_parts(parts: Vec<i32>) -> Result<Self> {
        if parts.iter().any(|&p| p < MIN_INDEX) {
            return Err(Error::InvalidPartition { parts, reason: "part below -1" });
        }
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPartition { parts, reason: "parts not non-decreasing" });
        }
        Ok(Self { parts })
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<i32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] <= w[1]));
        Self { parts }
    }

    pub fn parts(&self) -> &[i32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<i32> {
        self.parts
    }

    pub fn degree(&self) -> i32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn min_part(&self) -> Option<i32> {
        self.parts.first().copied()
    }

    pub fn max_part(&self) -> Option<i32> {
        self.parts.last().copied()
    }

    pub fn contains(&self, part: i32) -> bool {
        self.parts.binary_search(&part).is_ok()
    }

    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_regular(&self) -> bool {
        self.parts.windows(2).all(|w| w[1] - w[0] >= 2)
    }

    pub fn is_dense(&self) -> bool {
        self.parts.windows(2).all(|w| w[1] - w[0] == 2)
    }

    pub fn is_odd(&self) -> bool {
        self.parts.iter().all(|p| p.rem_euclid(2) == 1)
    }

    pub fn is_even(&self) -> bool {
        self.parts.iter().all(|p| p.rem_euclid(2) == 0)
    }

    /// Union of the part multisets.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable();
        Partition { parts }
    }

    fn check_k(&self, ctx: KContext) -> Result<()> {
        match self.min_part() {
            Some(m) if m < ctx.k() => Err(Error::BelowK { partition: self.to_string(), k: ctx.k() }),
            _ => Ok(()),
        }
    }

    fn check_regular_k(&self, ctx: KContext) -> Result<()> {
        if self.is_empty() {
            return Err(Error::InvalidPartition { parts: Vec::new(), reason: "empty" });
        }
        self.check_k(ctx)?;
        if !self.is_regular() {
            return Err(Error::NotRegular(self.to_string()));
        }
        Ok(())
    }

    /// Special k-partition: regular with largest part `< 2(k + q - 1)`.
    /// For `k = 1` these are exactly `<1, 3, ..., 2q-1>`.
    pub fn is_special_k(&self, ctx: KContext) -> Result<bool> {
        self.check_k(ctx)?;
        if self.is_empty() {
            return Ok(false);
        }
        Ok(self.is_regular() && self.special_bound(ctx))
    }

    fn special_bound(&self, ctx: KContext) -> bool {
        let q = self.len() as i32;
        self.max_part().is_some_and(|top| top < 2 * (ctx.k() + q - 1))
    }

    fn is_simple_unchecked(&self, ctx: KContext) -> bool {
        self.is_dense() || (self.is_regular() && self.special_bound(ctx))
    }

    /// Splits a regular k-partition into simple components (dense or
    /// special), taking the longest simple prefix at each step.
    pub fn canonical_decomposition(&self, ctx: KContext) -> Result<Vec<Partition>> {
        self.check_regular_k(ctx)?;
        Ok(self
            .component_ranges(ctx)
            .into_iter()
            .map(|(a, b)| Partition { parts: self.parts[a..b].to_vec() })
            .collect())
    }

    fn component_ranges(&self, ctx: KContext) -> Vec<(usize, usize)> {
        let n = self.parts.len();
        let mut out = Vec::new();
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            for candidate in (start + 2..=n).rev() {
                let block = Partition { parts: self.parts[start..candidate].to_vec() };
                if block.is_simple_unchecked(ctx) {
                    end = candidate;
                    break;
                }
            }
            out.push((start, end));
            start = end;
        }
        out
    }

    /// Minimal parts of the odd non-special simple components, ascending.
    pub fn leading_parts(&self, ctx: KContext) -> Result<Vec<i32>> {
        Ok(self
            .canonical_decomposition(ctx)?
            .into_iter()
            .filter(|c| c.is_odd() && !c.special_bound(ctx))
            .filter_map(|c| c.min_part())
            .collect())
    }

    /// Number of leading parts.
    pub fn ind(&self, ctx: KContext) -> Result<usize> {
        Ok(self.leading_parts(ctx)?.len())
    }

    /// Membership in `R_k(n)`: every simple component is special or has
    /// even degree.
    pub fn in_r_set(&self, ctx: KContext) -> Result<bool> {
        Ok(self.canonical_decomposition(ctx)?.iter().all(|c| c.special_bound(ctx) || c.degree().rem_euclid(2) == 0))
    }

    /// Prefix-sum dominance order on partitions of one degree: shorter is
    /// smaller, equal lengths compare every prefix sum.
    pub fn tl_compare(&self, other: &Partition) -> Result<TlOrdering> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        if self == other {
            return Ok(TlOrdering::Equal);
        }
        match self.len().cmp(&other.len()) {
            Ordering::Less => return Ok(TlOrdering::Less),
            Ordering::Greater => return Ok(TlOrdering::Greater),
            Ordering::Equal => {}
        }
        let (mut sa, mut sb) = (0i64, 0i64);
        let (mut le, mut ge) = (true, true);
        for (a, b) in self.parts.iter().zip(&other.parts) {
            sa += *a as i64;
            sb += *b as i64;
            le &= sa <= sb;
            ge &= sa >= sb;
        }
        Ok(match (le, ge) {
            (true, false) => TlOrdering::Less,
            (false, true) => TlOrdering::Greater,
            _ => TlOrdering::Incomparable,
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ">")
    }
}

/// Result of comparing two marked partitions in the triangular order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TlOrdering {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// A partition together with a set of marked (distinct) parts.
///
/// In the cochain picture a marked part `i` contributes the factor
/// `δ_1(e_i)` instead of `e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedPartition {
    base: Partition,
    marks: Vec<i32>,
}

impl MarkedPartition {
    pub fn new(base: Partition, mut marks: Vec<i32>) -> Result<Self> {
        marks.sort_unstable();
        let distinct = marks.windows(2).all(|w| w[0] < w[1]);
        if !distinct || marks.iter().any(|m| !base.contains(*m)) {
            return Err(Error::InvalidMarks { parts: base.into_parts(), marks });
        }
        Ok(Self { base, marks })
    }

    pub fn unmarked(base: Partition) -> Self {
        Self { base, marks: Vec::new() }
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn marks(&self) -> &[i32] {
        &self.marks
    }

    pub fn is_marked(&self, part: i32) -> bool {
        self.marks.binary_search(&part).is_ok()
    }

    pub fn degree(&self) -> i32 {
        self.base.degree()
    }

    /// Cochain length: every marked part adds one.
    pub fn len(&self) -> usize {
        self.base.len() + self.marks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn reduced_len(&self) -> usize {
        self.base.len()
    }

    /// Regular base with parts `>= max(k, 1)` and marks among the leading
    /// parts.
    pub fn is_regular(&self, ctx: KContext) -> bool {
        let floor = ctx.k().max(1);
        if self.base.is_empty() || self.base.min_part().is_some_and(|m| m < floor) {
            return false;
        }
        if !self.base.is_regular() {
            return false;
        }
        match self.base.leading_parts(ctx) {
            Ok(leading) => self.marks.iter().all(|m| leading.contains(m)),
            Err(_) => false,
        }
    }

    /// Union of bases and marks; `None` when the marks overlap or a marked
    /// part would be repeated in the merged base.
    pub fn union(&self, other: &MarkedPartition) -> Option<MarkedPartition> {
        let base = self.base.union(&other.base);
        let mut marks = self.marks.clone();
        marks.extend_from_slice(&other.marks);
        marks.sort_unstable();
        if marks.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let repeated = |m: &i32| base.parts().iter().filter(|p| *p == m).count() > 1;
        if marks.iter().any(repeated) {
            return None;
        }
        Some(MarkedPartition { base, marks })
    }

    /// The triangular order: compare bases first, and on equal bases
    /// compare the sorted mark lists lexicographically (a proper prefix
    /// comes first).
    pub fn tl_compare(&self, other: &MarkedPartition) -> Result<TlOrdering> {
        match self.base.tl_compare(&other.base)? {
            TlOrdering::Equal => Ok(match self.marks.cmp(&other.marks) {
                Ordering::Less => TlOrdering::Less,
                Ordering::Greater => TlOrdering::Greater,
                Ordering::Equal => TlOrdering::Equal,
            }),
            other => Ok(other),
        }
    }

    /// Splits a regular marked partition along the canonical decomposition
    /// of its base.
    pub fn canonical_decomposition(&self, ctx: KContext) -> Result<Vec<MarkedPartition>> {
        let comps = self.base.canonical_decomposition(ctx)?;
        Ok(comps
            .into_iter()
            .map(|c| {
                let marks = self.marks.iter().copied().filter(|m| c.contains(*m)).collect();
                MarkedPartition { base: c, marks }
            })
            .collect())
    }
}

impl From<Partition> for MarkedPartition {
    fn from(base: Partition) -> Self {
        Self::unmarked(base)
    }
}

impl fmt::Display for MarkedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, p) in self.base.parts().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            if self.is_marked(*p) {
                write!(f, "*")?;
            }
        }
        write!(f, ">")
    }
}

/// Parses `"<1,4*,6,7*>"` or `"1,4*,6,7*"`; a trailing `*` marks a part.
impl FromStr for MarkedPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('<').trim_end_matches('>');
        let mut parts = Vec::new();
        let mut marks = Vec::new();
        for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (num, marked) = match tok.strip_suffix('*') {
                Some(stripped) => (stripped, true),
                None => (tok, false),
            };
            let value: i32 = num
                .trim()
                .parse()
                .map_err(|_| Error::InvalidPartition { parts: parts.clone(), reason: "unparsable part" })?;
            parts.push(value);
            if marked {
                marks.push(value);
            }
        }
        MarkedPartition::new(Partition::new(parts)?, marks)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mp: MarkedPartition = s.parse()?;
        if !mp.marks.is_empty() {
            return Err(Error::InvalidMarks { parts: mp.base.into_parts(), marks: mp.marks });
        }
        Ok(mp.base)
    }
}

/// All increasing sequences with consecutive gaps `>= gap`, parts `>= min`,
/// exactly `len` parts summing to `n`, in lexicographic order.
pub fn gapped_sequences(n: i32, len: usize, min: i32, gap: i32) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    gapped_rec(n, len, min, gap, &mut cur, &mut out);
    out
}

/// Smallest sum of `len` parts starting at `first` with step `gap`.
fn min_sum(first: i32, len: usize, gap: i32) -> i64 {
    let len = len as i64;
    len * first as i64 + gap as i64 * len * (len - 1) / 2
}

fn gapped_rec(n: i32, len: usize, min: i32, gap: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
    if len == 0 {
        if n == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if len == 1 {
        if n >= min {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
        }
        return;
    }
    let mut p = min;
    while min_sum(p, len, gap) <= n as i64 {
        cur.push(p);
        gapped_rec(n - p, len - 1, p + gap, gap, cur, out);
        cur.pop();
        p += 1;
    }
}

/// Largest length a sequence with the given gap and minimum can have while
/// summing to `n`. The minimal sum is convex in the length, so scanning
/// stops once it exceeds `n` while increasing.
fn max_len(n: i32, min: i32, gap: i32) -> usize {
    let mut best = 0;
    let mut len = 1;
    loop {
        let s = min_sum(min, len, gap);
        if s <= n as i64 {
            best = len;
        } else if s > min_sum(min, len - 1, gap) {
            return best;
        }
        len += 1;
    }
}

/// Strict partitions of degree `n`, length `q`, smallest part `>= k`.
pub fn enumerate_strict(n: i32, q: usize, ctx: KContext) -> Vec<Partition> {
    gapped_sequences(n, q, ctx.k(), 1).into_iter().map(Partition::from_sorted_unchecked).collect()
}

/// Regular partitions of degree `n` (any length) with parts `>= min`.
pub fn enumerate_regular(n: i32, min: i32) -> Vec<Partition> {
    let mut out: Vec<Partition> = (1..=max_len(n, min, 2))
        .flat_map(|len| gapped_sequences(n, len, min, 2))
        .map(Partition::from_sorted_unchecked)
        .collect();
    out.sort();
    out
}

/// Number of strict sequences of every length: the largest `q` with a
/// nonempty slice `C^q_(n)(L_k)`.
pub fn max_strict_len(n: i32, ctx: KContext) -> usize {
    max_len(n, ctx.k(), 1)
}

/// Every `size`-element subset, in order of positions.
pub fn subsets_of_size<T: Clone>(items: &[T], size: usize) -> Vec<Vec<T>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if items.len() < size {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, first) in items.iter().enumerate() {
        for mut rest in subsets_of_size(&items[i + 1..], size - 1) {
            rest.insert(0, first.clone());
            out.push(rest);
        }
    }
    out
}

/// Every subset of `items`, in lexicographic order of the sorted subsets.
pub fn all_subsets<T: Clone + Ord>(items: &[T]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = (0..=items.len()).flat_map(|s| subsets_of_size(items, s)).collect();
    out.sort();
    out
}

/// Regular marked k-partitions with degree `n` and length `q`
/// (base length plus number of marks).
pub fn enumerate_regular_marked(n: i32, q: usize, ctx: KContext) -> Vec<MarkedPartition> {
    let floor = ctx.k().max(1);
    let mut out = Vec::new();
    for base_len in 1..=q {
        for parts in gapped_sequences(n, base_len, floor, 2) {
            let base = Partition::from_sorted_unchecked(parts);
            let leading = base.leading_parts(ctx).expect("regular k-partition");
            for marks in subsets_of_size(&leading, q - base_len) {
                out.push(MarkedPartition { base: base.clone(), marks });
            }
        }
    }
    out.sort();
    out
}

/// `R_k(n)`: regular k-partitions of degree `n` whose simple components
/// are special or of even degree.
pub fn enumerate_r(n: i32, ctx: KContext) -> Vec<Partition> {
    enumerate_regular(n, ctx.k().max(1)).into_iter().filter(|p| p.in_r_set(ctx).expect("regular")).collect()
}

/// Pairs `(K, L)` with `K` strict, `L` regular, `|K| + 2|L| = q`,
/// `2||K|| + 4||L|| = n`, and `|k - l| >= 2` for every odd `k` in `K` and
/// every `l` in `L`. Either side may be empty.
pub fn enumerate_p(n: i32, q: usize) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    if n < 0 || n % 2 != 0 {
        return out;
    }
    let one = KContext::one();
    for l_len in 0..=q / 2 {
        let k_len = q - 2 * l_len;
        let mut l_deg = 0;
        while 4 * l_deg <= n {
            let k_deg = (n - 4 * l_deg) / 2;
            let ks = strict_or_empty(k_deg, k_len, one);
            let ls = regular_or_empty(l_deg, l_len);
            for k in &ks {
                for l in &ls {
                    let separated = k
                        .parts()
                        .iter()
                        .filter(|a| a.rem_euclid(2) == 1)
                        .all(|a| l.parts().iter().all(|b| (a - b).abs() >= 2));
                    if separated {
                        out.push((k.clone(), l.clone()));
                    }
                }
            }
            l_deg += 1;
        }
    }
    out.sort();
    out
}

fn strict_or_empty(n: i32, len: usize, ctx: KContext) -> Vec<Partition> {
    if len == 0 {
        return if n == 0 { vec![Partition::empty()] } else { Vec::new() };
    }
    enumerate_strict(n, len, ctx)
}

fn regular_or_empty(n: i32, len: usize) -> Vec<Partition> {
    if len == 0 {
        return if n == 0 { vec![Partition::empty()] } else { Vec::new() };
    }
    gapped_sequences(n, len, 1, 2).into_iter().map(Partition::from_sorted_unchecked).collect()
}

/// Regular marked 1-partitions of degree `n`, length `q`, all of whose
/// simple components have even degree.
pub fn enumerate_m0(n: i32, q: usize) -> Vec<MarkedPartition> {
    let one = KContext::one();
    enumerate_regular_marked(n, q, one)
        .into_iter()
        .filter(|mp| mp.base().canonical_decomposition(one).expect("regular").iter().all(|c| c.degree() % 2 == 0))
        .collect()
}

/// Special k-partitions of length `q`, found by enumeration.
pub fn enumerate_special_k(q: usize, ctx: KContext) -> Vec<Partition> {
    if q == 0 {
        return Vec::new();
    }
    let k = ctx.k();
    let bound = 2 * (k + q as i32 - 1);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(q);
    special_rec(k, bound, q, &mut cur, &mut out);
    out
}

fn special_rec(next_min: i32, bound: i32, remaining: usize, cur: &mut Vec<i32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_sorted_unchecked(cur.clone()));
        return;
    }
    let mut p = next_min;
    while p + 2 * (remaining as i32 - 1) < bound {
        cur.push(p);
        special_rec(p + 2, bound, remaining - 1, cur, out);
        cur.pop();
        p += 1;
    }
}

pub fn count_special_k(q: usize, ctx: KContext) -> usize {
    enumerate_special_k(q, ctx).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[i32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn mp(s: &str) -> MarkedPartition {
        s.parse().unwrap()
    }

    fn k(k: i32) -> KContext {
        KContext::new(k).unwrap()
    }

    #[test]
    fn predicates() {
        assert!(p(&[1, 4, 6, 7]).is_strict());
        assert!(!p(&[2, 2, 3]).is_strict());
        assert!(p(&[5]).is_strict());

        assert!(p(&[2, 4, 6]).is_regular());
        assert!(!p(&[1, 2]).is_regular());
        assert!(p(&[12]).is_regular());

        assert!(p(&[3, 5, 7]).is_dense());
        assert!(!p(&[4, 8]).is_dense());
        assert!(p(&[9]).is_dense());
    }

    #[test]
    fn special_k() {
        assert!(p(&[1, 3, 5]).is_special_k(k(1)).unwrap());
        assert!(p(&[3, 5, 9]).is_special_k(k(3)).unwrap());
        assert!(!p(&[5, 7]).is_special_k(k(1)).unwrap());
        assert!(p(&[1, 3]).is_special_k(k(2)).is_err());
    }

    #[test]
    fn canonical_decomposition_examples() {
        let i = p(&[3, 5, 9, 13, 15, 18]);
        let strs = |v: Vec<Partition>| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        assert_eq!(strs(i.canonical_decomposition(k(1)).unwrap()), ["<3,5>", "<9>", "<13,15>", "<18>"]);
        assert_eq!(strs(i.canonical_decomposition(k(2)).unwrap()), ["<3,5>", "<9>", "<13,15>", "<18>"]);
        assert_eq!(strs(i.canonical_decomposition(k(3)).unwrap()), ["<3,5,9>", "<13,15>", "<18>"]);
        assert_eq!(strs(p(&[7]).canonical_decomposition(k(1)).unwrap()), ["<7>"]);
        assert!(p(&[1, 2]).canonical_decomposition(k(1)).is_err());
    }

    #[test]
    fn leading_parts_and_ind() {
        let i = p(&[3, 5, 9, 13, 15, 18]);
        assert_eq!(i.leading_parts(k(1)).unwrap(), vec![3, 9, 13]);
        assert_eq!(i.ind(k(2)).unwrap(), 2);
        assert_eq!(i.leading_parts(k(3)).unwrap(), vec![13]);
        assert!(p(&[2, 4, 6]).leading_parts(k(1)).unwrap().is_empty());
    }

    #[test]
    fn regular_marked() {
        assert!(mp("5*,7").is_regular(k(1)));
        assert!(!mp("1*,3").is_regular(k(1)));
        assert!(!mp("4*").is_regular(k(1)));
    }

    #[test]
    fn order_examples() {
        assert_eq!(mp("5*").tl_compare(&mp("2,3")).unwrap(), TlOrdering::Less);
        assert_eq!(mp("3,9*").tl_compare(&mp("5,7*")).unwrap(), TlOrdering::Less);
        assert_eq!(mp("3*,6").tl_compare(&mp("3,6*")).unwrap(), TlOrdering::Less);
        assert_eq!(mp("3,6*").tl_compare(&mp("3*,6")).unwrap(), TlOrdering::Greater);
        assert_eq!(mp("1,4,7").tl_compare(&mp("2,3,7")).unwrap(), TlOrdering::Less);
        assert_eq!(mp("1,6,6").tl_compare(&mp("2,3,8")).unwrap(), TlOrdering::Incomparable);
        assert!(mp("5").tl_compare(&mp("6")).is_err());
    }

    #[test]
    fn strict_enumeration() {
        let s = |v: Vec<Partition>| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        assert_eq!(s(enumerate_strict(5, 2, k(1))), ["<1,4>", "<2,3>"]);
        assert_eq!(s(enumerate_strict(3, 1, k(1))), ["<3>"]);
        assert!(enumerate_strict(4, 2, k(2)).is_empty());
        assert_eq!(s(enumerate_strict(0, 2, k(-1))), ["<-1,1>"]);
        assert_eq!(s(enumerate_strict(0, 3, k(-1))), ["<-1,0,1>"]);
    }

    #[test]
    fn regular_marked_enumeration() {
        let s = |v: Vec<MarkedPartition>| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        assert_eq!(s(enumerate_regular_marked(5, 2, k(1))), ["<1,4>", "<5*>"]);
        assert_eq!(s(enumerate_regular_marked(4, 2, k(1))), ["<1,3>"]);
    }

    #[test]
    fn r_set_examples() {
        let mut r12: Vec<String> = enumerate_r(12, k(1)).iter().map(|c| c.to_string()).collect();
        r12.sort();
        let mut expected = vec!["<12>", "<2,10>", "<4,8>", "<5,7>", "<1,3,8>", "<2,4,6>"];
        expected.sort();
        assert_eq!(r12, expected);
        assert!(enumerate_r(0, k(1)).is_empty());
        let r4: Vec<String> = enumerate_r(4, k(1)).iter().map(|c| c.to_string()).collect();
        assert_eq!(r4, ["<1,3>", "<4>"]);
        let r2: Vec<String> = enumerate_r(2, k(2)).iter().map(|c| c.to_string()).collect();
        assert_eq!(r2, ["<2>"]);
    }

    #[test]
    fn r_set_matches_filter_of_all_regular_partitions() {
        // independent filter: enumerate every subset of 1..=n with gaps >= 2
        for n in 1..=16 {
            let mut brute = Vec::new();
            for mask in 0u32..(1 << n) {
                let parts: Vec<i32> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                if parts.iter().sum::<i32>() != n || parts.is_empty() {
                    continue;
                }
                let part = p(&parts);
                if part.is_regular() && part.in_r_set(k(1)).unwrap() {
                    brute.push(part);
                }
            }
            brute.sort();
            assert_eq!(enumerate_r(n, k(1)), brute, "n = {n}");
        }
    }

    #[test]
    fn p_set_examples() {
        assert!(enumerate_p(3, 2).is_empty());
        assert!(enumerate_p(6, 3).is_empty());
        assert_eq!(enumerate_p(2, 1), vec![(p(&[1]), Partition::empty())]);
        assert_eq!(enumerate_p(4, 2), vec![(Partition::empty(), p(&[1]))]);
    }

    #[test]
    fn m0_examples() {
        let s = |v: Vec<MarkedPartition>| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        assert_eq!(s(enumerate_m0(2, 1)), ["<2>"]);
        assert!(enumerate_m0(5, 2).is_empty());
        assert_eq!(s(enumerate_m0(4, 2)), ["<1,3>"]);
    }

    #[test]
    fn special_counts() {
        assert_eq!(count_special_k(3, k(1)), 1);
        assert_eq!(count_special_k(2, k(3)), 6);
        let two: Vec<String> = enumerate_special_k(1, k(2)).iter().map(|c| c.to_string()).collect();
        assert_eq!(two, ["<2>", "<3>"]);
    }

    #[test]
    fn parse_and_display() {
        let m = mp("<1,4*,6,7*>");
        assert_eq!(m.marks(), &[4, 7]);
        assert_eq!(m.len(), 6);
        assert_eq!(m.reduced_len(), 4);
        assert_eq!(m.to_string(), "<1,4*,6,7*>");
        assert!("<3,2>".parse::<MarkedPartition>().is_err());
        assert!(MarkedPartition::new(p(&[1, 3]), vec![2]).is_err());
    }

    #[test]
    fn empty_partition_is_rejected_by_operations() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::empty().canonical_decomposition(k(1)).is_err());
    }
}
