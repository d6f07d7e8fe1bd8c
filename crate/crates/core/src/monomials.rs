//! e-monomials and ε-monomials of `C*(L_1)`.
//!
//! The e-monomial of a marked partition `<I;J>` is the wedge of `e_i` over
//! unmarked parts and `δ_1(e_i)` over marked ones. Regular e-monomials form
//! a basis of `C*(L_1)`; ε-monomials are corrected versions, built per
//! simple component, on which `δ_1` acts by a closed formula.

use std::collections::{BTreeSet, HashMap};

use crate::complex::{delta1, delta1_e, slice_basis, Cochain, Monomial};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, SpanReducer};
use crate::partitions::{enumerate_regular_marked, KContext, MarkedPartition, Partition, TlOrdering};

/// A nonzero e-monomial together with its shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EMonomial {
    pub shape: MarkedPartition,
    pub value: Cochain,
}

/// An ε-monomial of a regular marked partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsMonomial {
    pub shape: MarkedPartition,
    pub value: Cochain,
}

/// Expands `e_<I;J>`; `None` when the wedge collapses to zero.
pub fn e_monomial(mp: &MarkedPartition) -> Result<Option<EMonomial>> {
    if let Some(m) = mp.base().min_part() {
        if m < 1 {
            return Err(Error::BelowK { partition: mp.to_string(), k: 1 });
        }
    }
    let value = e_monomial_value(mp);
    Ok((!value.is_zero()).then(|| EMonomial { shape: mp.clone(), value }))
}

fn e_monomial_value(mp: &MarkedPartition) -> Cochain {
    let mut acc = Cochain::from(Monomial::new(Vec::new()).expect("empty monomial"));
    for &p in mp.base().parts() {
        let factor = if mp.is_marked(p) { delta1_e(p) } else { Cochain::e(p) };
        acc = acc.wedge(&factor);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Regular e-monomials of one bidegree written in the monomial basis of
/// `C^q_(n)(L_1)`, with a solver for coordinates in that basis.
#[derive(Clone, Debug)]
pub struct RegularBasis {
    n: i32,
    q: usize,
    shapes: Vec<MarkedPartition>,
    coords: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    columns: Vec<BitVec>,
    reducer: SpanReducer,
}

impl RegularBasis {
    pub fn new(n: i32, q: usize) -> Self {
        let one = KContext::one();
        let shapes = enumerate_regular_marked(n, q, one);
        let coords = slice_basis(one, n, q);
        let index: HashMap<Monomial, usize> = coords.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let columns: Vec<BitVec> = shapes
            .iter()
            .map(|s| {
                let value = e_monomial_value(s);
                BitVec::from_indices(coords.len(), value.terms().map(|m| index[m]))
            })
            .collect();
        let mut reducer = SpanReducer::new(coords.len(), columns.len());
        for c in &columns {
            reducer.insert(c);
        }
        Self { n, q, shapes, coords, index, columns, reducer }
    }

    pub fn n(&self) -> i32 {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn shapes(&self) -> &[MarkedPartition] {
        &self.shapes
    }

    /// Column `j` is the expansion of the `j`-th regular e-monomial.
    pub fn matrix(&self) -> crate::gf2::BitMatrix {
        crate::gf2::BitMatrix::from_columns(self.coords.len(), &self.columns)
    }

    pub fn is_square(&self) -> bool {
        self.shapes.len() == self.coords.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.reducer.rank() == self.shapes.len()
    }

    /// Coordinates of a cochain of this bidegree in the regular e-basis.
    pub fn decompose(&self, c: &Cochain) -> Result<BTreeSet<MarkedPartition>> {
        let mut v = BitVec::zeros(self.coords.len());
        for m in c.terms() {
            let i = self.index.get(m).ok_or_else(|| Error::NotInSlice(m.to_string()))?;
            v.flip(*i);
        }
        let combo =
            self.reducer.express(&v).ok_or_else(|| Error::NotInSlice("cochain outside the regular span".into()))?;
        Ok(combo.ones().map(|j| self.shapes[j].clone()).collect())
    }
}

/// Coordinates of a homogeneous `L_1` cochain in the regular e-monomial
/// basis.
pub fn decompose(c: &Cochain) -> Result<BTreeSet<MarkedPartition>> {
    if c.is_zero() {
        return Ok(BTreeSet::new());
    }
    let (q, n) = c.bidegree().ok_or(Error::NotHomogeneous)?;
    RegularBasis::new(n, q).decompose(c)
}

/// Whether every shape other than `top` is strictly below it.
pub fn strictly_below(top: &MarkedPartition, terms: &BTreeSet<MarkedPartition>) -> Result<bool> {
    for t in terms.iter().filter(|t| *t != top) {
        if t.tl_compare(top)? != TlOrdering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ_{r=0}^{(a-1)/2} x_{a-2r} ∧ e_{a+2r+2}` with `x = δ_1(e)` when
/// `marked`, else `x = e`: the length-two ε-cocycles.
fn pair_cocycle(a: i32, marked: bool) -> Cochain {
    (0..=(a - 1) / 2)
        .map(|r| {
            let low = if marked { delta1_e(a - 2 * r) } else { Cochain::e(a - 2 * r) };
            low.wedge(&Cochain::e(a + 2 * r + 2))
        })
        .sum()
}

/// ε of a dense partition (a simple component), marked at its minimum when
/// `marked` is set. Returns `None` when the mark is not allowed, i.e. the
/// component is not odd and non-special.
pub fn simple_epsilon(ip: &Partition, marked: bool) -> Result<Option<EpsMonomial>> {
    let one = KContext::one();
    let Some(lead) = ip.min_part() else {
        return Err(Error::InvalidPartition { parts: Vec::new(), reason: "empty" });
    };
    if lead < 1 {
        return Err(Error::BelowK { partition: ip.to_string(), k: 1 });
    }
    if !ip.is_dense() {
        return Err(Error::NotDense(ip.to_string()));
    }
    let odd_non_special = ip.is_odd() && !ip.is_special_k(one)?;
    if marked && !odd_non_special {
        return Ok(None);
    }
    let value = if odd_non_special && ip.len().is_multiple_of(2) {
        // consecutive disjoint pairs; only the first pair carries the mark
        let parts = ip.parts();
        let mut acc = pair_cocycle(parts[0], marked);
        for i in (2..parts.len()).step_by(2) {
            acc = acc.wedge(&pair_cocycle(parts[i], false));
        }
        acc
    } else {
        let e_i = Cochain::wedge_of(ip.parts());
        if marked {
            delta1(&e_i)
        } else {
            e_i
        }
    };
    if value.is_zero() {
        return Err(Error::VanishingMonomial(ip.to_string()));
    }
    let marks = if marked { vec![lead] } else { Vec::new() };
    let shape = MarkedPartition::new(ip.clone(), marks)?;
    Ok(Some(EpsMonomial { shape, value }))
}

/// ε of a regular marked partition: the wedge of the ε's of its simple
/// components.
pub fn epsilon_monomial(mp: &MarkedPartition) -> Result<EpsMonomial> {
    let one = KContext::one();
    if !mp.is_regular(one) {
        return Err(Error::SingularMarked(mp.to_string()));
    }
    let mut value: Option<Cochain> = None;
    for comp in mp.canonical_decomposition(one)? {
        let eps = simple_epsilon(comp.base(), !comp.marks().is_empty())?
            .ok_or_else(|| Error::SingularMarked(comp.to_string()))?;
        value = Some(match value {
            None => eps.value,
            Some(v) => v.wedge(&eps.value),
        });
    }
    let value = value.unwrap_or_default();
    if value.is_zero() {
        return Err(Error::VanishingMonomial(mp.to_string()));
    }
    Ok(EpsMonomial { shape: mp.clone(), value })
}

/// Component-wise prediction of `δ_1(ε_<I;J>)`: each unmarked odd
/// non-special component of odd length contributes the ε-monomial with its
/// minimum marked; everything else is closed.
pub fn delta_on_epsilon(mp: &MarkedPartition) -> Result<Cochain> {
    let one = KContext::one();
    if !mp.is_regular(one) {
        return Err(Error::SingularMarked(mp.to_string()));
    }
    let mut out = Cochain::zero();
    for comp in mp.canonical_decomposition(one)? {
        let base = comp.base();
        let active = comp.marks().is_empty() && base.is_odd() && !base.is_special_k(one)? && base.len() % 2 == 1;
        if active {
            let lead = base.min_part().expect("nonempty component");
            let mut marks = mp.marks().to_vec();
            marks.push(lead);
            let target = MarkedPartition::new(mp.base().clone(), marks)?;
            out += epsilon_monomial(&target)?.value;
        }
    }
    Ok(out)
}

/// The class `e`: the cocycle `e_1`.
pub fn gen_e() -> Cochain {
    Cochain::e(1)
}

/// `x(i) = e_{2i}`, `i >= 1`.
pub fn gen_x(i: i32) -> Result<Cochain> {
    if i < 1 {
        return Err(Error::OutOfRange(format!("x({i}) needs i >= 1")));
    }
    Ok(Cochain::e(2 * i))
}

/// `y(i) = Σ_{r=0}^{i-1} e_{2i-2r-1} ∧ e_{2i+2r+1}`, `i >= 1`.
pub fn gen_y(i: i32) -> Result<Cochain> {
    if i < 1 {
        return Err(Error::OutOfRange(format!("y({i}) needs i >= 1")));
    }
    Ok((0..i).map(|r| Cochain::wedge_of(&[2 * i - 2 * r - 1, 2 * i + 2 * r + 1])).sum())
}

/// `z(i) = Σ_{r=0}^{i-2} δ_1(e_{2i-2r-1}) ∧ e_{2i+2r+1}`, `i >= 2`.
pub fn gen_z(i: i32) -> Result<Cochain> {
    if i < 2 {
        return Err(Error::OutOfRange(format!("z({i}) needs i >= 2")));
    }
    Ok((0..=i - 2).map(|r| delta1_e(2 * i - 2 * r - 1).wedge(&Cochain::e(2 * i + 2 * r + 1))).sum())
}
