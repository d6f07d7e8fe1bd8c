//! The graded Chevalley-Eilenberg complex of `L_k` over GF(2).
//!
//! Chains and cochains are identified through the orthonormal monomial
//! basis, so a cochain is simply a set of wedge monomials `e_I` (a monomial
//! is present or absent). The coboundary on generators is
//!
//! ```text
//! δ_k(e_i) = Σ_{a+b=i, k<=a<b} (a+b) e_a ∧ e_b      (mod 2)
//! ```
//!
//! extended to monomials as a derivation. In characteristic 2 there are no
//! signs anywhere.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign};
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::partitions::{gapped_sequences, max_strict_len, KContext, Partition};

/// A wedge monomial `e_{i_1} ∧ ... ∧ e_{i_q}` with `i_1 < ... < i_q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn new(indices: Vec<i32>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition { parts: indices, reason: "monomial indices must strictly increase" });
        }
        Ok(Self(indices))
    }

    fn from_sorted(indices: Vec<i32>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self(indices)
    }

    pub fn indices(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn min_index(&self) -> Option<i32> {
        self.0.first().copied()
    }

    pub fn contains(&self, i: i32) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Wedge of two monomials, `None` when an index repeats.
    pub fn wedge(&self, other: &Monomial) -> Option<Monomial> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some(Monomial(out))
    }

    /// Replaces the entry at `pos` by the given new indices; `None` if one
    /// of them collides with the remaining entries.
    fn replace_at(&self, pos: usize, new: &[i32]) -> Option<Monomial> {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len() + new.len());
        out.extend(self.0.iter().enumerate().filter(|(i, _)| *i != pos).map(|(_, v)| *v));
        for &x in new {
            match out.binary_search(&x) {
                Ok(_) => return None,
                Err(at) => out.insert(at, x),
            }
        }
        Some(Monomial(out))
    }
}

impl From<Partition> for Monomial {
    fn from(p: Partition) -> Self {
        Monomial(p.into_parts())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, idx) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "^")?;
            }
            write!(f, "e{idx}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A GF(2)-linear combination of wedge monomials.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Cochain {
    terms: BTreeSet<Monomial>,
}

impl Cochain {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The generator `e_i`.
    pub fn e(i: i32) -> Self {
        Self::from(Monomial(vec![i]))
    }

    /// The monomial `e_{i_1} ∧ ... ∧ e_{i_q}`; indices may be unsorted, a
    /// repeated index gives zero.
    pub fn wedge_of(indices: &[i32]) -> Self {
        let mut v = indices.to_vec();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Self::zero();
        }
        Self::from(Monomial(v))
    }

    /// Sum of monomials given as index lists (each may be unsorted).
    pub fn from_index_lists<I, L>(lists: I) -> Self
    where
        I: IntoIterator<Item = L>,
        L: AsRef<[i32]>,
    {
        lists.into_iter().fold(Self::zero(), |acc, l| acc + Self::wedge_of(l.as_ref()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Adds one monomial (mod 2).
    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    /// `(q, n)` shared by every term, or `None` for zero or mixed cochains.
    pub fn bidegree(&self) -> Option<(usize, i32)> {
        let mut it = self.terms.iter();
        let first = it.next()?;
        let bd = (first.len(), first.degree());
        it.all(|m| (m.len(), m.degree()) == bd).then_some(bd)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.bidegree().is_some()
    }

    pub fn min_index(&self) -> Option<i32> {
        self.terms.iter().filter_map(Monomial::min_index).min()
    }

    pub fn wedge(&self, other: &Cochain) -> Cochain {
        wedge(self, other)
    }

    /// Parity of the number of shared monomials: the pairing under which the
    /// monomial basis is orthonormal.
    pub fn pairing(&self, other: &Cochain) -> bool {
        self.terms.intersection(&other.terms).count() % 2 == 1
    }
}

impl From<Monomial> for Cochain {
    fn from(m: Monomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        Self { terms }
    }
}

impl AddAssign<&Cochain> for Cochain {
    fn add_assign(&mut self, rhs: &Cochain) {
        for m in &rhs.terms {
            self.toggle(m.clone());
        }
    }
}

impl AddAssign for Cochain {
    fn add_assign(&mut self, rhs: Cochain) {
        for m in rhs.terms {
            self.toggle(m);
        }
    }
}

impl Add for Cochain {
    type Output = Cochain;

    fn add(mut self, rhs: Cochain) -> Cochain {
        self += rhs;
        self
    }
}

impl Add<&Cochain> for &Cochain {
    type Output = Cochain;

    fn add(self, rhs: &Cochain) -> Cochain {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::iter::Sum for Cochain {
    fn sum<I: Iterator<Item = Cochain>>(iter: I) -> Self {
        iter.fold(Cochain::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Bilinear wedge product; monomials sharing an index vanish.
pub fn wedge(a: &Cochain, b: &Cochain) -> Cochain {
    let mut out = Cochain::zero();
    for x in &a.terms {
        for y in &b.terms {
            if let Some(m) = x.wedge(y) {
                out.toggle(m);
            }
        }
    }
    out
}

/// Pairs `(a, b)` with `a + b = i`, `k <= a < b`, and odd coefficient
/// `a + b`.
pub fn coboundary_pairs(i: i32, ctx: KContext) -> Vec<(i32, i32)> {
    let mut out = Vec::new();
    let mut a = ctx.k();
    while a < i - a {
        let b = i - a;
        let coefficient = a + b;
        if coefficient.rem_euclid(2) == 1 {
            out.push((a, b));
        }
        a += 1;
    }
    out
}

fn check_min(c: &Cochain, min: i32) -> Result<()> {
    match c.min_index() {
        Some(i) if i < min => Err(Error::IndexBelowMinimum { index: i, min }),
        _ => Ok(()),
    }
}

fn coboundary_with<F>(c: &Cochain, ctx: KContext, pairs: F) -> Result<Cochain>
where
    F: Fn(i32) -> Vec<(i32, i32)>,
{
    check_min(c, ctx.k())?;
    let mut out = Cochain::zero();
    for m in &c.terms {
        for (pos, &i) in m.0.iter().enumerate() {
            for (a, b) in pairs(i) {
                if let Some(t) = m.replace_at(pos, &[a, b]) {
                    out.toggle(t);
                }
            }
        }
    }
    Ok(out)
}

/// The coboundary `δ_k`. Raises the length by one and keeps the degree.
pub fn coboundary(c: &Cochain, ctx: KContext) -> Result<Cochain> {
    coboundary_with(c, ctx, |i| coboundary_pairs(i, ctx))
}

/// `δ_1`, the coboundary of `L_1`.
pub fn delta1(c: &Cochain) -> Cochain {
    coboundary(c, KContext::one()).expect("L_1 cochain")
}

/// `δ_1(e_i)`.
pub fn delta1_e(i: i32) -> Cochain {
    delta1(&Cochain::e(i))
}

/// The chain boundary `d`: contracts every index pair `(i_a, i_b)` into
/// `(i_a + i_b) e_{i_a + i_b}`.
pub fn boundary(c: &Cochain, ctx: KContext) -> Result<Cochain> {
    check_min(c, ctx.k())?;
    let mut out = Cochain::zero();
    for m in &c.terms {
        let idx = &m.0;
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                let s = idx[a] + idx[b];
                if s.rem_euclid(2) == 0 {
                    continue;
                }
                let mut rest: Vec<i32> =
                    idx.iter().enumerate().filter(|(j, _)| *j != a && *j != b).map(|(_, v)| *v).collect();
                if let Err(at) = rest.binary_search(&s) {
                    rest.insert(at, s);
                    out.toggle(Monomial(rest));
                }
            }
        }
    }
    Ok(out)
}

/// Action of `e_r` on cochains: `Σ_a i_a · (i_a replaced by i_a - r)`.
/// `min` is the smallest index the ambient algebra allows.
pub fn e_action(r: i32, c: &Cochain, min: i32) -> Result<Cochain> {
    check_min(c, min)?;
    let mut out = Cochain::zero();
    for m in &c.terms {
        for (pos, &i) in m.0.iter().enumerate() {
            let shifted = i - r;
            if shifted < min {
                return Err(Error::IndexBelowMinimum { index: shifted, min });
            }
            if i.rem_euclid(2) == 0 {
                continue;
            }
            if let Some(t) = m.replace_at(pos, &[shifted]) {
                out.toggle(t);
            }
        }
    }
    Ok(out)
}

/// Deliberate corruption of the coboundary, used as a negative control for
/// the verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Keeps every pair `a + b = i` regardless of the parity of `a + b`.
    IgnoreParity,
}

/// The basis of `C^q_(n)(L_k)` and the matrix of `δ_k` into `C^{q+1}_(n)`.
#[derive(Clone, Debug)]
pub struct GradedSlice {
    ctx: KContext,
    n: i32,
    q: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    delta: BitMatrix,
}

impl GradedSlice {
    pub fn ctx(&self) -> KContext {
        self.ctx
    }

    pub fn n(&self) -> i32 {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Columns indexed by this slice's basis, rows by the basis of the
    /// `(q + 1, n)` slice.
    pub fn delta_matrix(&self) -> &BitMatrix {
        &self.delta
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn coords(&self, c: &Cochain) -> Result<BitVec> {
        let mut v = BitVec::zeros(self.dim());
        for m in c.terms() {
            let i = self.index_of(m).ok_or_else(|| Error::NotInSlice(m.to_string()))?;
            v.flip(i);
        }
        Ok(v)
    }

    pub fn cochain(&self, v: &BitVec) -> Cochain {
        assert_eq!(v.len(), self.dim());
        let mut c = Cochain::zero();
        for i in v.ones() {
            c.toggle(self.basis[i].clone());
        }
        c
    }
}

/// Strictly increasing index lists of length `q`, sum `n`, entries `>= k`.
pub fn slice_basis(ctx: KContext, n: i32, q: usize) -> Vec<Monomial> {
    if q == 0 {
        return Vec::new();
    }
    gapped_sequences(n, q, ctx.k(), 1).into_iter().map(Monomial::from_sorted).collect()
}

/// The cochain complex of one `L_k`, with memoized slices.
#[derive(Debug)]
pub struct Complex {
    ctx: KContext,
    fault: Option<Fault>,
    slices: RwLock<HashMap<(i32, usize), Arc<GradedSlice>>>,
}

impl Complex {
    pub fn new(ctx: KContext) -> Self {
        Self { ctx, fault: None, slices: RwLock::new(HashMap::new()) }
    }

    pub fn with_fault(ctx: KContext, fault: Fault) -> Self {
        Self { ctx, fault: Some(fault), slices: RwLock::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> KContext {
        self.ctx
    }

    pub fn fault(&self) -> Option<Fault> {
        self.fault
    }

    pub fn coboundary(&self, c: &Cochain) -> Result<Cochain> {
        match self.fault {
            None => coboundary(c, self.ctx),
            Some(Fault::IgnoreParity) => coboundary_with(c, self.ctx, |i| {
                let k = self.ctx.k();
                (k..).take_while(|a| *a < i - *a).map(|a| (a, i - a)).collect()
            }),
        }
    }

    /// Largest `q` with a nonempty slice in degree `n`.
    pub fn max_q(&self, n: i32) -> usize {
        max_strict_len(n, self.ctx)
    }

    pub fn slice(&self, n: i32, q: usize) -> Arc<GradedSlice> {
        if let Some(s) = self.slices.read().expect("slice cache poisoned").get(&(n, q)) {
            return Arc::clone(s);
        }
        let built = Arc::new(self.build_slice(n, q));
        let mut cache = self.slices.write().expect("slice cache poisoned");
        Arc::clone(cache.entry((n, q)).or_insert(built))
    }

    fn build_slice(&self, n: i32, q: usize) -> GradedSlice {
        let basis = slice_basis(self.ctx, n, q);
        let target = slice_basis(self.ctx, n, q + 1);
        let target_index: HashMap<&Monomial, usize> = target.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut delta = BitMatrix::zeros(target.len(), basis.len());
        for (j, m) in basis.iter().enumerate() {
            let image = self.coboundary(&Cochain::from(m.clone())).expect("basis respects k");
            for t in image.terms() {
                delta.flip(target_index[t], j);
            }
        }
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        GradedSlice { ctx: self.ctx, n, q, basis, index, delta }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(k: i32) -> KContext {
        KContext::new(k).unwrap()
    }

    fn c(lists: &[&[i32]]) -> Cochain {
        Cochain::from_index_lists(lists.iter().copied())
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&Cochain::e(1), &Cochain::e(2)), c(&[&[1, 2]]));
        assert!(wedge(&Cochain::e(1), &Cochain::e(1)).is_zero());
        let s = Cochain::e(1) + Cochain::e(2);
        assert!(wedge(&s, &s).is_zero());
    }

    #[test]
    fn coboundary_examples() {
        assert_eq!(coboundary(&Cochain::e(5), k(1)).unwrap(), c(&[&[1, 4], &[2, 3]]));
        assert!(coboundary(&Cochain::e(4), k(1)).unwrap().is_zero());
        assert!(coboundary(&c(&[&[1, 2]]), k(1)).unwrap().is_zero());
        assert_eq!(coboundary(&Cochain::e(3), k(1)).unwrap(), c(&[&[1, 2]]));
        assert!(coboundary(&Cochain::e(0), k(1)).is_err());
    }

    #[test]
    fn coboundary_low_k() {
        // [e_{-1}, e_0] = e_{-1} and [e_{-1}, e_2] = 3 e_1, [e_0, e_1] = e_1
        assert_eq!(coboundary(&Cochain::e(-1), k(-1)).unwrap(), c(&[&[-1, 0]]));
        assert_eq!(coboundary(&Cochain::e(1), k(-1)).unwrap(), c(&[&[-1, 2], &[0, 1]]));
        assert!(coboundary(&Cochain::e(0), k(-1)).unwrap().is_zero());
        assert_eq!(coboundary(&Cochain::e(1), k(0)).unwrap(), c(&[&[0, 1]]));
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(boundary(&c(&[&[1, 2]]), k(1)).unwrap(), Cochain::e(3));
        assert!(boundary(&c(&[&[2, 4]]), k(1)).unwrap().is_zero());
        // pairs (1,2)->3 collides with e3, (1,3) even, (2,3)->5
        assert_eq!(boundary(&c(&[&[1, 2, 3]]), k(1)).unwrap(), c(&[&[1, 5]]));
    }

    #[test]
    fn e_action_examples() {
        assert!(e_action(-1, &Cochain::e(2), 1).unwrap().is_zero());
        assert_eq!(e_action(-1, &Cochain::e(3), 1).unwrap(), Cochain::e(4));
        let eps35 = c(&[&[3, 5], &[1, 7]]);
        assert_eq!(e_action(-1, &eps35, 1).unwrap(), delta1_e(9));
        assert!(e_action(2, &Cochain::e(1), 1).is_err());
    }

    #[test]
    fn slice_examples() {
        let cx = Complex::new(k(1));
        let s = cx.slice(5, 2);
        assert_eq!(s.basis(), &[Monomial(vec![1, 4]), Monomial(vec![2, 3])]);
        assert_eq!((s.delta_matrix().rows(), s.delta_matrix().cols()), (0, 2));

        let s = cx.slice(3, 1);
        assert_eq!(s.basis(), &[Monomial(vec![3])]);
        let image = cx.slice(3, 2).cochain(&s.delta_matrix().column(0));
        assert_eq!(image, c(&[&[1, 2]]));

        assert_eq!(Complex::new(k(2)).slice(4, 2).dim(), 0);
        assert!(Arc::ptr_eq(&cx.slice(5, 2), &cx.slice(5, 2)));
    }

    #[test]
    fn max_q_bounds_nonempty_slices() {
        for kk in -1..=3 {
            let cx = Complex::new(k(kk));
            for n in 0..25 {
                let top = cx.max_q(n);
                if top > 0 {
                    assert!(cx.slice(n, top).dim() > 0, "k={kk} n={n}");
                }
                assert_eq!(cx.slice(n, top + 1).dim(), 0, "k={kk} n={n}");
            }
        }
    }

    fn cochain_strategy(min: i32, max: i32, len: usize) -> impl Strategy<Value = Cochain> {
        prop::collection::vec(prop::collection::btree_set(min..=max, len), 0..5).prop_map(|sets| {
            sets.into_iter().fold(Cochain::zero(), |acc, s| acc + Cochain::wedge_of(&s.into_iter().collect::<Vec<_>>()))
        })
    }

    proptest! {
        #[test]
        fn wedge_is_associative_and_commutative(
            a in cochain_strategy(1, 12, 1),
            b in cochain_strategy(1, 12, 2),
            d in cochain_strategy(1, 12, 2),
        ) {
            prop_assert_eq!(wedge(&a, &b), wedge(&b, &a));
            prop_assert_eq!(wedge(&wedge(&a, &b), &d), wedge(&a, &wedge(&b, &d)));
        }

        #[test]
        fn coboundary_is_a_derivation(
            kk in -1i32..=2,
            a in cochain_strategy(2, 14, 2),
            b in cochain_strategy(2, 14, 1),
        ) {
            let ctx = k(kk);
            let lhs = coboundary(&wedge(&a, &b), ctx).unwrap();
            let rhs = wedge(&coboundary(&a, ctx).unwrap(), &b) + wedge(&a, &coboundary(&b, ctx).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn e_minus_one_commutes_with_delta1(a in cochain_strategy(1, 16, 2)) {
            let lhs = e_action(-1, &delta1(&a), 1).unwrap();
            let rhs = delta1(&e_action(-1, &a, 1).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
