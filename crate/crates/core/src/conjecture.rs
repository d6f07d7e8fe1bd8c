//! The bigraded exterior algebra on `E`, `X_i`, `Y_i`, its relation ideal,
//! and the two counting reductions of the presentation conjecture for
//! `H*(L_1)`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology::{Class, Engine};
use crate::complex::Cochain;
use crate::error::Result;
use crate::gf2::{BitMatrix, BitVec};
use crate::monomials::{gen_e, gen_x, gen_y};
use crate::partitions::{enumerate_m0, enumerate_p, gapped_sequences};
use crate::report::CheckReport;

/// A square-free word in `E`, `X_i`, `Y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BigradedMonomial {
    pub has_e: bool,
    pub x: Vec<i32>,
    pub y: Vec<i32>,
}

impl BigradedMonomial {
    pub fn one() -> Self {
        Self { has_e: false, x: Vec::new(), y: Vec::new() }
    }

    pub fn e() -> Self {
        Self { has_e: true, ..Self::one() }
    }

    pub fn x(i: i32) -> Self {
        Self { x: vec![i], ..Self::one() }
    }

    pub fn y(i: i32) -> Self {
        Self { y: vec![i], ..Self::one() }
    }

    pub fn bidegree(&self) -> (usize, i32) {
        let e = usize::from(self.has_e);
        let q = e + self.x.len() + 2 * self.y.len();
        let n = e as i32 + 2 * self.x.iter().sum::<i32>() + 4 * self.y.iter().sum::<i32>();
        (q, n)
    }

    /// The product, or `None` when a generator repeats.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        if self.has_e && other.has_e {
            return None;
        }
        Some(Self { has_e: self.has_e || other.has_e, x: merge(&self.x, &other.x)?, y: merge(&self.y, &other.y)? })
    }
}

fn merge(a: &[i32], b: &[i32]) -> Option<Vec<i32>> {
    let mut out: Vec<i32> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    let len = out.len();
    out.dedup();
    (out.len() == len).then_some(out)
}

impl fmt::Display for BigradedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors: Vec<String> = Vec::new();
        if self.has_e {
            factors.push("E".into());
        }
        factors.extend(self.x.iter().map(|i| format!("X{i}")));
        factors.extend(self.y.iter().map(|i| format!("Y{i}")));
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("^"))
        }
    }
}

/// Strictly increasing positive sequences of the given length and sum.
fn strict_sets(sum: i32, len: usize) -> Vec<Vec<i32>> {
    if len == 0 {
        return if sum == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    gapped_sequences(sum, len, 1, 1)
}

/// Every monomial of bidegree `(q, n)`.
pub fn monomials_in_bidegree(q: usize, n: i32) -> Vec<BigradedMonomial> {
    let mut out = Vec::new();
    for has_e in [false, true] {
        let e = usize::from(has_e);
        if e > q {
            continue;
        }
        let rest_n = n - e as i32;
        for y_len in 0..=(q - e) / 2 {
            let x_len = q - e - 2 * y_len;
            let mut y_sum = 0;
            while 4 * y_sum <= rest_n {
                let x_twice = rest_n - 4 * y_sum;
                if x_twice % 2 == 0 {
                    for y in strict_sets(y_sum, y_len) {
                        for x in strict_sets(x_twice / 2, x_len) {
                            out.push(BigradedMonomial { has_e, x, y: y.clone() });
                        }
                    }
                }
                y_sum += 1;
            }
        }
    }
    out.sort();
    out
}

/// One generator of the relation ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGenerator {
    pub name: String,
    /// The `i` of the family; 1 for `E X_1` and `E Y_1`.
    pub index: i32,
    pub bidegree: (usize, i32),
    pub terms: Vec<BigradedMonomial>,
}

fn product(a: BigradedMonomial, b: BigradedMonomial) -> BigradedMonomial {
    a.mul(&b).expect("distinct generators")
}

/// The ideal generators whose bidegree fits under `(q, n)`: `E X_1`,
/// `E Y_1`, `G_i = Σ_a X_{2a+1} Y_{i-a}` at `(3, 4i+2)` and
/// `H_i = Σ_a Y_{i-a} Y_{i+a+1}` at `(4, 8i+4)`.
pub fn ideal_generators(q: usize, n: i32) -> Vec<IdealGenerator> {
    let single = |name: &str, bidegree, m| IdealGenerator { name: name.into(), index: 1, bidegree, terms: vec![m] };
    let mut out = vec![
        single("E.X1", (2, 3), product(BigradedMonomial::e(), BigradedMonomial::x(1))),
        single("E.Y1", (3, 5), product(BigradedMonomial::e(), BigradedMonomial::y(1))),
    ];
    for i in (1..).take_while(|i| 4 * i + 2 <= n) {
        out.push(IdealGenerator {
            name: format!("G{i}"),
            index: i,
            bidegree: (3, 4 * i + 2),
            terms: (0..i).map(|a| product(BigradedMonomial::x(2 * a + 1), BigradedMonomial::y(i - a))).collect(),
        });
    }
    for i in (1..).take_while(|i| 8 * i + 4 <= n) {
        out.push(IdealGenerator {
            name: format!("H{i}"),
            index: i,
            bidegree: (4, 8 * i + 4),
            terms: (0..i).map(|a| product(BigradedMonomial::y(i - a), BigradedMonomial::y(i + a + 1))).collect(),
        });
    }
    out.retain(|g| g.bidegree.0 <= q && g.bidegree.1 <= n);
    out
}

/// The ideal in one bidegree: the monomial basis and columns spanning the
/// ideal's slice.
#[derive(Clone, Debug)]
pub struct IdealSlice {
    pub q: usize,
    pub n: i32,
    pub monomials: Vec<BigradedMonomial>,
    pub spanning: BitMatrix,
}

impl IdealSlice {
    pub fn new(q: usize, n: i32) -> Self {
        let monomials = monomials_in_bidegree(q, n);
        let index: HashMap<&BigradedMonomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut columns = Vec::new();
        for g in ideal_generators(q, n) {
            let (gq, gn) = g.bidegree;
            for m in monomials_in_bidegree(q - gq, n - gn) {
                let mut col = BitVec::zeros(monomials.len());
                for t in &g.terms {
                    if let Some(p) = t.mul(&m) {
                        col.flip(index[&p]);
                    }
                }
                if !col.is_zero() {
                    columns.push(col);
                }
            }
        }
        let spanning = BitMatrix::from_columns(monomials.len(), &columns);
        Self { q, n, monomials, spanning }
    }

    pub fn rank(&self) -> usize {
        self.spanning.rank()
    }

    pub fn quotient_dim(&self) -> usize {
        self.monomials.len() - self.rank()
    }
}

pub fn ideal_rank(q: usize, n: i32) -> usize {
    IdealSlice::new(q, n).rank()
}

/// Both reductions of the conjecture at one cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureCell {
    pub n: i32,
    pub q: usize,
    pub monomials: usize,
    pub ideal_rank: usize,
    pub quotient: usize,
    pub cohomology: usize,
    pub pairs: usize,
    pub m0: usize,
}

impl ConjectureCell {
    pub fn hilbert_holds(&self) -> bool {
        self.quotient == self.cohomology
    }

    pub fn counting_holds(&self) -> bool {
        self.pairs == self.m0
    }
}

pub fn conjecture_cell(engine: &Engine, q: usize, n: i32) -> ConjectureCell {
    let slice = IdealSlice::new(q, n);
    let rank = slice.rank();
    ConjectureCell {
        n,
        q,
        monomials: slice.monomials.len(),
        ideal_rank: rank,
        quotient: slice.monomials.len() - rank,
        cohomology: engine.k(1).dim(n, q),
        pairs: enumerate_p(n, q).len(),
        m0: enumerate_m0(n, q).len(),
    }
}

/// Quotient dimension against `dim H^q_(n)(L_1)`. A quotient smaller than
/// the cohomology contradicts generation by `e, x_i, y_i` and is recorded
/// as a failure; any other mismatch is a finding.
pub fn conjecture_hilbert_check(engine: &Engine, q: usize, n: i32) -> (ConjectureCell, CheckReport) {
    let cell = conjecture_cell(engine, q, n);
    let mut report = CheckReport::new(format!("presentation Hilbert q={q} n={n}"));
    report.check(cell.quotient >= cell.cohomology, || {
        format!("(q={q}, n={n}): quotient {} below cohomology {}", cell.quotient, cell.cohomology)
    });
    (cell, report)
}

/// `|P^q(n)|` against `|M_0^q(n)|`.
pub fn counting_identity_check(q: usize, n: i32) -> CheckReport {
    let mut report = CheckReport::new(format!("counting identity q={q} n={n}"));
    let (p, m) = (enumerate_p(n, q).len(), enumerate_m0(n, q).len());
    report.check(p == m, || format!("(q={q}, n={n}): |P| = {p}, |M0| = {m}"));
    report
}

/// Every cell of degree `n <= n_max` through both reductions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureScan {
    pub n_max: i32,
    pub cells: Vec<ConjectureCell>,
}

impl ConjectureScan {
    /// Cells with nothing on either side are skipped.
    pub fn run(engine: &Engine, n_max: i32) -> Self {
        let h = engine.k(1);
        let mut cells = Vec::new();
        for n in 0..=n_max {
            let q_top = h.complex().max_q(n).max(max_word_len(n));
            for q in 1..=q_top {
                let cell = conjecture_cell(engine, q, n);
                if cell.monomials + cell.cohomology + cell.pairs + cell.m0 > 0 {
                    cells.push(cell);
                }
            }
        }
        Self { n_max, cells }
    }

    pub fn hilbert_holds(&self) -> bool {
        self.cells.iter().all(ConjectureCell::hilbert_holds)
    }

    pub fn counting_holds(&self) -> bool {
        self.cells.iter().all(ConjectureCell::counting_holds)
    }

    /// The counting identity is equivalent to the conjecture as a whole,
    /// not cell by cell, so the reductions agree when both hold on the
    /// whole range or both fail somewhere in it.
    pub fn consistent(&self) -> bool {
        self.hilbert_holds() == self.counting_holds()
    }

    /// Cells where the quotient is smaller than the cohomology, which
    /// would contradict generation by `e, x_i, y_i`.
    pub fn generation_violations(&self) -> Vec<&ConjectureCell> {
        self.cells.iter().filter(|c| c.quotient < c.cohomology).collect()
    }

    pub fn mismatches(&self) -> Vec<&ConjectureCell> {
        self.cells.iter().filter(|c| !c.hilbert_holds() || !c.counting_holds()).collect()
    }
}

/// Longest word of degree `n`: `E` and `X_1, X_2, ...`.
fn max_word_len(n: i32) -> usize {
    let mut len = 0;
    let mut used = 1;
    while used + 2 * (len as i32 + 1) <= n {
        len += 1;
        used += 2 * len as i32;
    }
    len + 2
}

/// Every ideal generator with index at most `i_max` maps to the zero class.
pub fn pi_image_check(engine: &Engine, i_max: i32) -> Result<CheckReport> {
    let h = engine.k(1);
    let mut report = CheckReport::new(format!("pi kills the ideal generators i<={i_max}"));
    let mut classes: HashMap<BigradedMonomial, Class> = HashMap::new();
    let mut image = |m: &BigradedMonomial| -> Result<Class> {
        if let Some(c) = classes.get(m) {
            return Ok(c.clone());
        }
        let mut cochain = Cochain::wedge_of(&[]);
        if m.has_e {
            cochain = cochain.wedge(&gen_e());
        }
        for &i in &m.x {
            cochain = cochain.wedge(&gen_x(i)?);
        }
        for &i in &m.y {
            cochain = cochain.wedge(&gen_y(i)?);
        }
        let (q, n) = m.bidegree();
        let c = h.class_in(n, q, &cochain)?;
        classes.insert(m.clone(), c.clone());
        Ok(c)
    };
    for g in ideal_generators(4, 8 * i_max + 4).into_iter().filter(|g| g.index <= i_max) {
        let (q, n) = g.bidegree;
        let mut sum = h.class_in(n, q, &Cochain::zero())?;
        for t in &g.terms {
            sum = sum.add(&image(t)?)?;
        }
        report.check(sum.is_zero(), || format!("{} maps to a nonzero class", g.name));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shown(q: usize, n: i32) -> Vec<String> {
        monomials_in_bidegree(q, n).iter().map(ToString::to_string).collect()
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(shown(1, 1), ["E"]);
        assert_eq!(shown(1, 4), ["X2"]);
        assert_eq!(shown(2, 4), ["Y1"]);
        assert_eq!(shown(2, 3), ["E^X1"]);
        assert!(shown(0, 0) == ["1"]);
        assert_eq!(BigradedMonomial::x(1).mul(&BigradedMonomial::x(1)), None);
    }

    /// Exhaustive scan over all words in generators of bounded index.
    fn brute_count(q: usize, n: i32) -> usize {
        let gens: Vec<BigradedMonomial> = std::iter::once(BigradedMonomial::e())
            .chain((1..=n / 2).map(BigradedMonomial::x))
            .chain((1..=n / 4).map(BigradedMonomial::y))
            .collect();
        let mut count = 0;
        for mask in 0u64..(1 << gens.len()) {
            let mut m = BigradedMonomial::one();
            for (i, g) in gens.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    m = m.mul(g).unwrap();
                }
            }
            if m.bidegree() == (q, n) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn monomial_counts_match_scan() {
        for n in 0..=14 {
            for q in 0..=6 {
                assert_eq!(monomials_in_bidegree(q, n).len(), brute_count(q, n), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn ideal_examples() {
        assert_eq!(ideal_rank(2, 3), 1);
        assert_eq!(ideal_rank(3, 6), 1);
        assert_eq!(ideal_rank(2, 4), 0);
        assert!(ideal_generators(4, 12).iter().any(|g| g.name == "H1" && g.bidegree == (4, 12)));
        let slice = IdealSlice::new(4, 12);
        assert!(slice.monomials.contains(&BigradedMonomial { has_e: false, x: vec![], y: vec![1, 2] }));
        for n in 0..=16 {
            for q in 0..=6 {
                let s = IdealSlice::new(q, n);
                assert!(s.rank() <= s.monomials.len());
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        let engine = Engine::new();
        for (q, n, expect) in [(1, 2, 1), (2, 3, 0), (2, 4, 1)] {
            let (cell, report) = conjecture_hilbert_check(&engine, q, n);
            assert!(report.passed());
            assert_eq!((cell.quotient, cell.cohomology), (expect, expect));
        }
    }

    #[test]
    fn counting_examples() {
        assert!(counting_identity_check(1, 2).passed());
        assert_eq!(enumerate_p(2, 1).len(), 1);
        for q in 0..=4 {
            assert_eq!(enumerate_p(7, q).len(), 0);
        }
    }

    #[test]
    fn scan_small() {
        let engine = Engine::new();
        let scan = ConjectureScan::run(&engine, 12);
        assert!(scan.consistent());
        assert!(scan.hilbert_holds() && scan.counting_holds());
        assert!(scan.generation_violations().is_empty());
        let cell = scan.cells.iter().find(|c| (c.n, c.q) == (12, 2)).unwrap();
        assert_eq!((cell.quotient, cell.cohomology, cell.pairs, cell.m0), (3, 3, 3, 3));
        assert_eq!(ConjectureScan::run(&engine, 2).cells.len(), 2);
    }

    #[test]
    fn pi_examples() {
        let engine = Engine::new();
        let r = pi_image_check(&engine, 2).unwrap();
        assert!(r.passed(), "{r}");
    }
}
