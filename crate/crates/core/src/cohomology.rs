//! Brute-force cohomology of the graded slices, class coordinates, cup
//! products, and the dimension formulas as checkable predictions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::complex::{delta1, delta1_e, e_action, wedge, Cochain, Complex, Fault};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, SpanReducer};
use crate::monomials::{epsilon_monomial, gen_x, gen_y, gen_z};
use crate::partitions::{all_subsets, enumerate_r, enumerate_regular, KContext, MarkedPartition, Partition};
use crate::report::CheckReport;

/// Coefficients of `Σ_q dim H^q_(n) t^q`, indexed by `q`.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poincare(Vec<u64>);

impl Poincare {
    pub fn from_coefficients(mut coefficients: Vec<u64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        Self(coefficients)
    }

    pub fn coefficient(&self, q: usize) -> u64 {
        self.0.get(q).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    fn add_shifted_binomial(&mut self, shift: usize, power: usize) {
        let needed = shift + power + 1;
        if self.0.len() < needed {
            self.0.resize(needed, 0);
        }
        let mut binom = 1u64;
        for j in 0..=power {
            self.0[shift + j] += binom;
            binom = binom * (power - j) as u64 / (j as u64 + 1);
        }
    }
}

impl fmt::Display for Poincare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (q, &c) in self.0.iter().enumerate().filter(|(_, c)| **c != 0) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c == 1 && q > 0 { String::new() } else { c.to_string() };
            match q {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{coeff}t")?,
                _ => write!(f, "{coeff}t^{q}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poincare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `Σ_{I ∈ R_k(n)} (1 + t)^{ind_k(I)} t^{|I|}`.
pub fn predicted_poincare(ctx: KContext, n: i32) -> Result<Poincare> {
    if ctx.k() < 1 {
        return Err(Error::OutOfRange(format!("the dimension formula needs k >= 1, got {}", ctx.k())));
    }
    let mut p = Poincare::default();
    for part in enumerate_r(n, ctx) {
        p.add_shifted_binomial(part.len(), part.ind(ctx)?);
    }
    Ok(Poincare::from_coefficients(p.0))
}

/// Cocycle representatives of a basis of `H^q_(n)(L_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyBasis {
    pub k: i32,
    pub n: i32,
    pub q: usize,
    pub dim: usize,
    pub representatives: Vec<Cochain>,
}

/// A cohomology class, as coordinates over the representatives of its
/// slice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Class {
    k: i32,
    n: i32,
    q: usize,
    coords: BitVec,
}

impl Class {
    pub fn n(&self) -> i32 {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn coords(&self) -> &BitVec {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add(&self, other: &Class) -> Result<Class> {
        if (self.k, self.n, self.q) != (other.k, other.n, other.q) {
            return Err(Error::IncompatibleClasses(format!(
                "({}, {}, {}) vs ({}, {}, {})",
                self.k, self.n, self.q, other.k, other.n, other.q
            )));
        }
        let mut coords = self.coords.clone();
        coords.xor_assign(&other.coords);
        Ok(Class { coords, ..self.clone() })
    }
}

/// Image of the incoming coboundary, with the kernel complement filled in
/// once requested.
#[derive(Debug)]
struct SliceCohomology {
    /// Columns of `δ: C^{q-1} -> C^q` first, then the representatives.
    reducer: SpanReducer,
    image_columns: usize,
    representatives: Option<Vec<BitVec>>,
    /// Offer ids of the representatives inside `reducer`.
    rep_ids: Vec<usize>,
}

/// Cohomology of one `L_k`, computed slice by slice and memoized.
#[derive(Debug)]
pub struct Cohomology {
    complex: Complex,
    ranks: RwLock<HashMap<(i32, usize), usize>>,
    slices: RwLock<HashMap<(i32, usize), Arc<SliceCohomology>>>,
}

impl Cohomology {
    pub fn new(ctx: KContext) -> Self {
        Self::from_complex(Complex::new(ctx))
    }

    pub fn from_complex(complex: Complex) -> Self {
        Self { complex, ranks: RwLock::default(), slices: RwLock::default() }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn ctx(&self) -> KContext {
        self.complex.ctx()
    }

    /// Rank of `δ` leaving `C^q_(n)`.
    pub fn delta_rank(&self, n: i32, q: usize) -> usize {
        if let Some(r) = self.ranks.read().expect("rank cache").get(&(n, q)) {
            return *r;
        }
        let r = self.complex.slice(n, q).delta_matrix().rank();
        self.ranks.write().expect("rank cache").insert((n, q), r);
        r
    }

    /// `dim ker δ_q - rank δ_{q-1}`; `C^0` is zero, so `q = 0` gives 0.
    /// Saturates when a faulty coboundary does not square to zero.
    pub fn dim(&self, n: i32, q: usize) -> usize {
        if q == 0 {
            return 0;
        }
        let c = self.complex.slice(n, q).dim();
        c.saturating_sub(self.delta_rank(n, q) + self.delta_rank(n, q - 1))
    }

    /// The brute-force Poincaré polynomial of degree `n`.
    pub fn poincare(&self, n: i32) -> Poincare {
        let top = self.complex.max_q(n);
        Poincare::from_coefficients((0..=top).map(|q| self.dim(n, q) as u64).collect())
    }

    fn image(&self, n: i32, q: usize) -> Arc<SliceCohomology> {
        if let Some(s) = self.slices.read().expect("cohomology cache").get(&(n, q)) {
            return Arc::clone(s);
        }
        let target = self.complex.slice(n, q);
        let columns: Vec<BitVec> = if q == 0 {
            Vec::new()
        } else {
            let src = self.complex.slice(n, q - 1);
            (0..src.dim()).map(|j| src.delta_matrix().column(j)).collect()
        };
        let mut reducer = SpanReducer::new(target.dim(), columns.len() + target.dim());
        for c in &columns {
            reducer.insert(c);
        }
        let built = Arc::new(SliceCohomology {
            reducer,
            image_columns: columns.len(),
            representatives: None,
            rep_ids: Vec::new(),
        });
        let mut cache = self.slices.write().expect("cohomology cache");
        Arc::clone(cache.entry((n, q)).or_insert(built))
    }

    fn full(&self, n: i32, q: usize) -> Arc<SliceCohomology> {
        let img = self.image(n, q);
        if img.representatives.is_some() {
            return img;
        }
        let slice = self.complex.slice(n, q);
        let mut reducer = img.reducer.clone();
        let mut reps = Vec::new();
        let mut rep_ids = Vec::new();
        if q > 0 {
            for v in slice.delta_matrix().kernel_basis() {
                let id = reducer.offered();
                if reducer.insert(&v) {
                    reps.push(v);
                    rep_ids.push(id);
                }
            }
        }
        let built = Arc::new(SliceCohomology {
            reducer,
            image_columns: img.image_columns,
            representatives: Some(reps),
            rep_ids,
        });
        let mut cache = self.slices.write().expect("cohomology cache");
        cache.insert((n, q), Arc::clone(&built));
        built
    }

    /// Representatives chosen greedily from the kernel basis, skipping
    /// vectors already in the span of the image and earlier choices.
    pub fn basis(&self, n: i32, q: usize) -> CohomologyBasis {
        let full = self.full(n, q);
        let slice = self.complex.slice(n, q);
        let representatives: Vec<Cochain> =
            full.representatives.as_ref().expect("filled").iter().map(|v| slice.cochain(v)).collect();
        CohomologyBasis { k: self.ctx().k(), n, q, dim: representatives.len(), representatives }
    }

    fn homogeneous_slice_coords(&self, c: &Cochain, n: i32, q: usize) -> Result<BitVec> {
        let slice = self.complex.slice(n, q);
        slice.coords(c)
    }

    fn check_cocycle(&self, c: &Cochain) -> Result<()> {
        if self.complex.coboundary(c)?.is_zero() {
            Ok(())
        } else {
            Err(Error::NotCocycle)
        }
    }

    /// Whether a homogeneous cochain is `δ` of something.
    pub fn is_coboundary(&self, c: &Cochain) -> Result<bool> {
        if c.is_zero() {
            return Ok(true);
        }
        let (q, n) = c.bidegree().ok_or(Error::NotHomogeneous)?;
        let v = self.homogeneous_slice_coords(c, n, q)?;
        Ok(self.image(n, q).reducer.contains(&v))
    }

    /// A cochain `b` with `δ b = c`, if one exists.
    pub fn coboundary_preimage(&self, c: &Cochain) -> Result<Option<Cochain>> {
        if c.is_zero() {
            return Ok(Some(Cochain::zero()));
        }
        let (q, n) = c.bidegree().ok_or(Error::NotHomogeneous)?;
        if q == 0 {
            return Ok(None);
        }
        let v = self.homogeneous_slice_coords(c, n, q)?;
        let img = self.image(n, q);
        Ok(img.reducer.express(&v).map(|combo| {
            let src = self.complex.slice(n, q - 1);
            let mut pre = BitVec::zeros(src.dim());
            for j in combo.ones().filter(|j| *j < img.image_columns) {
                pre.flip(j);
            }
            src.cochain(&pre)
        }))
    }

    /// The class of a cocycle in the `(q, n)` slice. The bidegree is explicit
    /// so that zero cochains have a class.
    pub fn class_in(&self, n: i32, q: usize, c: &Cochain) -> Result<Class> {
        if !c.is_homogeneous() || c.bidegree().is_some_and(|bd| bd != (q, n)) {
            return Err(Error::NotHomogeneous);
        }
        self.check_cocycle(c)?;
        let v = self.homogeneous_slice_coords(c, n, q)?;
        let full = self.full(n, q);
        let combo = full.reducer.express(&v).expect("cocycles lie in image + representatives");
        let mut coords = BitVec::zeros(full.rep_ids.len());
        for (i, id) in full.rep_ids.iter().enumerate() {
            if combo.get(*id) {
                coords.set(i, true);
            }
        }
        Ok(Class { k: self.ctx().k(), n, q, coords })
    }

    /// The class of a nonzero homogeneous cocycle.
    pub fn class_of(&self, c: &Cochain) -> Result<Class> {
        let (q, n) = c.bidegree().ok_or(Error::NotHomogeneous)?;
        self.class_in(n, q, c)
    }

    /// The representative cocycle of a class.
    pub fn representative(&self, class: &Class) -> Cochain {
        let basis = self.basis(class.n, class.q);
        class.coords.ones().map(|i| basis.representatives[i].clone()).sum()
    }

    /// Cup product through the wedge of representatives.
    pub fn cup(&self, a: &Class, b: &Class) -> Result<Class> {
        if a.k != self.ctx().k() || b.k != self.ctx().k() {
            return Err(Error::IncompatibleClasses(format!("classes of L_{} and L_{}", a.k, b.k)));
        }
        let product = wedge(&self.representative(a), &self.representative(b));
        self.class_in(a.n + b.n, a.q + b.q, &product)
    }
}

/// Per-`k` cohomology engines shared by the checks and the CLI.
#[derive(Debug, Default)]
pub struct Engine {
    fault: Option<Fault>,
    by_k: RwLock<BTreeMap<i32, Arc<Cohomology>>>,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    /// An engine whose coboundary is deliberately wrong.
    pub fn with_fault(fault: Fault) -> Self {
        Self { fault: Some(fault), by_k: RwLock::default() }
    }

    pub fn get(&self, ctx: KContext) -> Arc<Cohomology> {
        if let Some(c) = self.by_k.read().expect("engine cache").get(&ctx.k()) {
            return Arc::clone(c);
        }
        let complex = match self.fault {
            None => Complex::new(ctx),
            Some(f) => Complex::with_fault(ctx, f),
        };
        let built = Arc::new(Cohomology::from_complex(complex));
        let mut cache = self.by_k.write().expect("engine cache");
        Arc::clone(cache.entry(ctx.k()).or_insert(built))
    }

    pub fn k(&self, k: i32) -> Arc<Cohomology> {
        self.get(KContext::new(k).expect("k >= -1"))
    }
}

fn l1(engine: &Engine) -> Arc<Cohomology> {
    engine.get(KContext::one())
}

/// Compares brute-force dimensions with the partition formula for one
/// degree.
pub fn poincare_check(engine: &Engine, ctx: KContext, n: i32) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("poincare k={} n={n}", ctx.k()));
    let brute = engine.get(ctx).poincare(n);
    let predicted = predicted_poincare(ctx, n)?;
    report.check(brute == predicted, || format!("k={} n={n}: brute {brute} vs predicted {predicted}", ctx.k()));
    Ok(report)
}

/// Every ε-monomial over `R(n)` is a nonzero cocycle, and those of length
/// `q` give a basis of `H^q_(n)(L_1)`.
pub fn epsilon_basis_check(engine: &Engine, n: i32) -> Result<CheckReport> {
    let one = KContext::one();
    let h = l1(engine);
    let mut report = CheckReport::new(format!("H*(L_1) epsilon basis n={n}"));
    let mut by_q: BTreeMap<usize, Vec<Class>> = BTreeMap::new();
    for base in enumerate_r(n, one) {
        for marks in all_subsets(&base.leading_parts(one)?) {
            let shape = MarkedPartition::new(base.clone(), marks)?;
            let eps = epsilon_monomial(&shape)?;
            let closed = delta1(&eps.value).is_zero();
            report.check(closed, || format!("epsilon {shape} is not closed"));
            if closed {
                by_q.entry(shape.len()).or_default().push(h.class_in(n, shape.len(), &eps.value)?);
            }
        }
    }
    for q in 1..=h.complex().max_q(n).max(by_q.keys().copied().max().unwrap_or(0)) {
        let classes = by_q.remove(&q).unwrap_or_default();
        let dim = h.dim(n, q);
        report.check(classes.len() == dim, || format!("n={n} q={q}: {} epsilon classes, dim {dim}", classes.len()));
        let mut span = SpanReducer::new(h.basis(n, q).dim, classes.len());
        let independent = classes.iter().all(|c| span.insert(c.coords()));
        report.check(independent, || format!("n={n} q={q}: epsilon classes are dependent"));
    }
    Ok(report)
}

fn even(n: i32) -> u64 {
    u64::from(n.rem_euclid(2) == 0)
}

/// Predicted `dim H^q_(n)(L_0)` from the `L_1` dimensions.
pub fn predicted_l0_dim(engine: &Engine, n: i32, q: usize) -> u64 {
    let h = l1(engine);
    match q {
        0 => 0,
        1 => even(n),
        _ => even(n) * (h.dim(n, q - 1) + h.dim(n, q)) as u64,
    }
}

/// Predicted `dim H^q_(n)(L_{-1})` from the `L_1` dimensions.
pub fn predicted_lminus1_dim(engine: &Engine, n: i32, q: usize) -> u64 {
    let h = l1(engine);
    match q {
        0 => 0,
        1 => even(n),
        _ => {
            let sum = h.dim(n + 1, q - 2) + h.dim(n, q - 1) + h.dim(n + 1, q - 1) + h.dim(n, q);
            even(n) * sum as u64
        }
    }
}

fn low_k_check(engine: &Engine, k: i32, n: i32, q_max: Option<usize>) -> CheckReport {
    let h = engine.k(k);
    let mut report = CheckReport::new(format!("H*(L_{k}) n={n}"));
    let top = q_max.unwrap_or_else(|| h.complex().max_q(n));
    for q in 1..=top {
        let brute = h.dim(n, q) as u64;
        let predicted = if k == 0 { predicted_l0_dim(engine, n, q) } else { predicted_lminus1_dim(engine, n, q) };
        report.check(brute == predicted, || format!("L_{k} n={n} q={q}: brute {brute} vs predicted {predicted}"));
    }
    report
}

/// Brute-force `H^q_(n)(L_0)` against `[n even]·([q=1] + H^{q-1}(L_1) + H^q(L_1))`.
pub fn l0_dims_check(engine: &Engine, n: i32, q_max: Option<usize>) -> CheckReport {
    low_k_check(engine, 0, n, q_max)
}

/// Brute-force `H^q_(n)(L_{-1})` against the four-summand prediction.
pub fn lminus1_dims_check(engine: &Engine, n: i32, q_max: Option<usize>) -> CheckReport {
    low_k_check(engine, -1, n, q_max)
}

/// A named cocycle of `C^2_(n)(L_{-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCocycle {
    pub name: String,
    pub value: Cochain,
}

/// `u_{a,b}(n) = e_{2a} ∧ e_{2b}` for `2a + 2b = n`, `0 <= a < b`, and
/// `v(n) = Σ_{r=0}^{n/4} e_{n/2-2r-1} ∧ e_{n/2+2r+1}` when `4 | n`.
pub fn h2_lminus1_basis(n: i32) -> Result<Vec<NamedCocycle>> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::OutOfRange(format!("central extensions are listed for even n >= 2, got {n}")));
    }
    let half = n / 2;
    let mut out: Vec<NamedCocycle> = (0..)
        .take_while(|a| *a < half - *a)
        .map(|a| NamedCocycle {
            name: format!("u({a},{})", half - a),
            value: Cochain::wedge_of(&[2 * a, 2 * (half - a)]),
        })
        .collect();
    if n % 4 == 0 {
        let value = (0..=n / 4).map(|r| Cochain::wedge_of(&[half - 2 * r - 1, half + 2 * r + 1])).sum();
        out.push(NamedCocycle { name: "v".into(), value });
    }
    Ok(out)
}

/// The listed cocycles are closed, independent in cohomology, and as many
/// as `dim H^2_(n)(L_{-1}) = ⌊n/4⌋ + 1`.
pub fn h2_lminus1_check(engine: &Engine, n: i32) -> Result<CheckReport> {
    let h = engine.k(-1);
    let mut report = CheckReport::new(format!("H^2(L_-1) basis n={n}"));
    let cocycles = h2_lminus1_basis(n)?;
    let dim = h.dim(n, 2);
    let expected = (n / 4 + 1) as usize;
    report.check(dim == expected, || format!("n={n}: dim {dim} vs floor(n/4)+1 = {expected}"));
    report.check(cocycles.len() == expected, || format!("n={n}: {} cocycles listed", cocycles.len()));
    let mut span = SpanReducer::new(h.basis(n, 2).dim, cocycles.len());
    for c in &cocycles {
        match h.class_in(n, 2, &c.value) {
            Ok(class) => report.check(span.insert(class.coords()), || format!("n={n}: {} is dependent", c.name)),
            Err(e) => report.fail(format!("n={n}: {}: {e}", c.name)),
        }
    }
    Ok(report)
}

/// `e_{-1}(ε_{a,a+2}) = δ_1(e_{2a+3})` and
/// `e_{-1}(ε_{a̲,a+2}) = δ_1(e_a ∧ e_{a+3})` for odd `a`, plus
/// `e_{-1}(e_i) = 0` for even `i` at `i = a + 1`.
///
/// The marked identity only holds up to a coboundary once `a >= 5`
/// (at `a = 5` the difference is `δ_1(e_3 ∧ e_10)`), so both sides are
/// compared in `H*(L_1)`, which is all the connecting map needs.
pub fn bockstein_witness_check(engine: &Engine, a: i32) -> Result<CheckReport> {
    let h = l1(engine);
    if a < 1 || a % 2 == 0 {
        return Err(Error::OutOfRange(format!("a must be odd and positive, got {a}")));
    }
    let mut report = CheckReport::new(format!("e_-1 witnesses a={a}"));
    let pair = |marked: bool| -> Cochain {
        (0..=(a - 1) / 2)
            .map(|r| {
                let low = if marked { delta1_e(a - 2 * r) } else { Cochain::e(a - 2 * r) };
                low.wedge(&Cochain::e(a + 2 * r + 2))
            })
            .sum()
    };
    let lhs = e_action(-1, &pair(false), 1)?;
    let rhs = delta1_e(2 * a + 3);
    report.check(h.is_coboundary(&(&lhs + &rhs))?, || format!("a={a}: e_-1(eps_(a,a+2)) = {lhs}"));
    let lhs = e_action(-1, &pair(true), 1)?;
    let rhs = delta1(&Cochain::wedge_of(&[a, a + 3]));
    report.check(h.is_coboundary(&(&lhs + &rhs))?, || format!("a={a}: e_-1(eps_(a*,a+2)) = {lhs}, expected {rhs}"));
    let even_action = e_action(-1, &Cochain::e(a + 1), 1)?;
    report.check(even_action.is_zero(), || format!("e_-1(e_{}) = {even_action}", a + 1));
    Ok(report)
}

fn sum_classes(h: &Cohomology, n: i32, q: usize, classes: impl IntoIterator<Item = Result<Class>>) -> Result<Class> {
    let mut acc = h.class_in(n, q, &Cochain::zero())?;
    for c in classes {
        acc = acc.add(&c?)?;
    }
    Ok(acc)
}

/// The multiplicative relations among `e, x_i, y_i, z_i` in `H*(L_1)`,
/// checked as class identities for `i <= i_max`.
pub fn generator_relations_check(engine: &Engine, i_max: i32) -> Result<CheckReport> {
    let h = l1(engine);
    let mut report = CheckReport::new(format!("generator relations i<={i_max}"));
    let class = |c: Cochain| h.class_of(&c);
    let x = |i: i32| -> Result<Class> { class(gen_x(i)?) };
    let y = |i: i32| -> Result<Class> { class(gen_y(i)?) };
    let e = class(crate::monomials::gen_e())?;

    report.check(wedge(&crate::monomials::gen_e(), &crate::monomials::gen_e()).is_zero(), || "e^2 != 0".into());
    report.check(h.cup(&e, &x(1)?)?.is_zero(), || "e.x1 != 0".into());
    report.check(h.cup(&e, &y(1)?)?.is_zero(), || "e.y1 != 0".into());
    for i in 1..=i_max {
        let (xi, yi) = (gen_x(i)?, gen_y(i)?);
        report.check(wedge(&xi, &xi).is_zero(), || format!("x({i})^2 != 0 as a cochain"));
        report.check(wedge(&yi, &yi).is_zero(), || format!("y({i})^2 != 0 as a cochain"));
        report.check(!x(i)?.is_zero(), || format!("x_{i} is zero"));
        report.check(!y(i)?.is_zero(), || format!("y_{i} is zero"));

        let n = 4 * i + 2;
        let s = sum_classes(&h, n, 3, (0..i).map(|a| h.cup(&x(2 * a + 1)?, &y(i - a)?)))?;
        report.check(s.is_zero(), || format!("sum x_(2a+1) y_(i-a) != 0 at i={i}"));

        let n = 8 * i + 4;
        let s = sum_classes(&h, n, 4, (0..i).map(|a| h.cup(&y(i - a)?, &y(i + a + 1)?)))?;
        report.check(s.is_zero(), || format!("sum y_(i-a) y_(i+a+1) != 0 at i={i}"));

        if i >= 2 {
            let z = class(gen_z(i)?)?;
            report.check(!z.is_zero(), || format!("z_{i} is zero"));
            let s = sum_classes(&h, 4 * i, 3, (1..i).map(|a| h.cup(&x(2 * a)?, &y(i - a)?)))?;
            report.check(s == z, || format!("z_{i} != sum x_(2a) y_(i-a)"));
        }
    }
    Ok(report)
}

fn beta(i: i32) -> i32 {
    i.rem_euclid(2)
}

/// The three cochain identities behind the relations, with their explicit
/// `δ_1`-potentials.
pub fn generator_witness_check(i_max: i32) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("generator witness identities i<={i_max}"));
    for i in 1..=i_max {
        if i >= 2 {
            let products: Cochain = (1..i).map(|a| Ok(gen_x(2 * a)?.wedge(&gen_y(i - a)?))).sum::<Result<Cochain>>()?;
            let potential: Cochain =
                (0..=(i - 2) / 2).map(|m| Cochain::wedge_of(&[2 * i - 4 * m - 3, 2 * i + 4 * m + 3])).sum();
            let rhs = products + delta1(&potential);
            let z = gen_z(i)?;
            report.check(z == rhs, || format!("z({i}) witness fails: difference {}", &z + &rhs));
        }
        let products: Cochain = (0..i).map(|a| Ok(gen_x(2 * a + 1)?.wedge(&gen_y(i - a)?))).sum::<Result<Cochain>>()?;
        let potential: Cochain = (1..=(i + 1) / 2)
            .map(|m| Cochain::wedge_of(&[4 * m - 1 - 2 * beta(i), 4 * (i - m) + 3 + 2 * beta(i)]))
            .sum();
        let rhs = delta1(&potential);
        report.check(products == rhs, || format!("x-odd witness fails at i={i}: difference {}", &products + &rhs));

        let yy: Cochain = (0..i).map(|a| Ok(gen_y(i - a)?.wedge(&gen_y(i + a + 1)?))).sum::<Result<Cochain>>()?;
        report.check(yy.is_zero(), || format!("sum y(i-a) y(i+a+1) = {yy} at i={i}"));
    }
    Ok(report)
}

/// Homology dimension of the span of `{ε_<I;J>}` for one regular `I`,
/// computed in ε-coordinates. Fails if `δ_1` leaves the span.
pub fn t_complex_dim(base: &Partition) -> Result<std::result::Result<usize, String>> {
    let one = KContext::one();
    let leading = base.leading_parts(one)?;
    let n = base.degree();
    // ε-monomials grouped by number of marks
    let mut grades: Vec<Vec<Cochain>> = vec![Vec::new(); leading.len() + 1];
    for marks in all_subsets(&leading) {
        let shape = MarkedPartition::new(base.clone(), marks)?;
        grades[shape.marks().len()].push(epsilon_monomial(&shape)?.value);
    }
    let complex = Complex::new(one);
    let mut ranks = vec![0usize; grades.len()];
    for j in 0..grades.len().saturating_sub(1) {
        let q = base.len() + j + 1;
        let slice = complex.slice(n, q);
        let mut span = SpanReducer::new(slice.dim(), grades[j + 1].len());
        for t in &grades[j + 1] {
            span.insert(&slice.coords(t)?);
        }
        let mut images = Vec::new();
        for src in &grades[j] {
            let image = slice.coords(&delta1(src))?;
            match span.express(&image) {
                Some(combo) => images.push(combo),
                None => return Ok(Err(format!("delta leaves T*({base}) at {} marks", j))),
            }
        }
        ranks[j] = crate::gf2::BitMatrix::from_columns(grades[j + 1].len(), &images).rank();
    }
    let mut total = 0;
    for j in 0..grades.len() {
        let incoming = if j == 0 { 0 } else { ranks[j - 1] };
        total += grades[j].len() - ranks[j] - incoming;
    }
    let last = grades.len() - 1;
    let dangling = base.ind(one)? > 0 && grades[last].is_empty();
    debug_assert!(!dangling);
    Ok(Ok(total))
}

/// `δ_1` preserves each `T*(I)`, and the homology of `T*(I)` has the
/// dimension of the tensor product of its components' homologies.
pub fn kunneth_check(n: i32) -> Result<CheckReport> {
    let one = KContext::one();
    let mut report = CheckReport::new(format!("T*(I) block structure and Kunneth n={n}"));
    for base in enumerate_regular(n, 1) {
        let whole = match t_complex_dim(&base)? {
            Ok(d) => d,
            Err(msg) => {
                report.fail(msg);
                continue;
            }
        };
        let mut product = 1;
        for comp in base.canonical_decomposition(one)? {
            match t_complex_dim(&comp)? {
                Ok(d) => product *= d,
                Err(msg) => report.fail(msg),
            }
        }
        report.check(whole == product, || format!("T*({base}): homology {whole} vs product {product}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(k: i32) -> KContext {
        KContext::new(k).unwrap()
    }

    fn c(lists: &[&[i32]]) -> Cochain {
        Cochain::from_index_lists(lists.iter().copied())
    }

    #[test]
    fn degree_twelve_example() {
        let h = Cohomology::new(k(1));
        assert_eq!(h.dim(12, 2), 3);
        assert_eq!(h.dim(12, 1), 1);
        assert_eq!(h.dim(3, 1), 0);
        assert_eq!(h.poincare(12).to_string(), "t + 3t^2 + 3t^3");
        assert_eq!(predicted_poincare(k(1), 12).unwrap().to_string(), "t + 3t^2 + 3t^3");
    }

    #[test]
    fn predicted_examples() {
        assert_eq!(predicted_poincare(k(1), 4).unwrap().to_string(), "t + t^2");
        assert_eq!(predicted_poincare(k(2), 2).unwrap().to_string(), "t");
        assert!(predicted_poincare(k(0), 2).is_err());
    }

    #[test]
    fn basis_examples() {
        let h = Cohomology::new(k(1));
        let b = h.basis(12, 1);
        assert_eq!(b.representatives, vec![Cochain::e(12)]);
        assert_eq!(h.basis(4, 1).representatives, vec![Cochain::e(4)]);
        let h0 = Cohomology::new(k(0));
        for q in 1..=5 {
            assert_eq!(h0.dim(7, q), 0);
        }
        for q in 1..=4 {
            let b = h.basis(12, q);
            assert_eq!(b.dim, h.dim(12, q));
            for r in &b.representatives {
                assert!(delta1(r).is_zero());
            }
        }
    }

    #[test]
    fn class_of_examples() {
        let h = Cohomology::new(k(1));
        assert!(h.class_of(&delta1_e(5)).unwrap().is_zero());
        assert!(!h.class_of(&gen_y(1).unwrap()).unwrap().is_zero());
        assert!(h.class_of(&c(&[&[1, 2]])).unwrap().is_zero());
        assert_eq!(h.class_of(&Cochain::e(5)), Err(Error::NotCocycle));
        assert_eq!(h.class_of(&(Cochain::e(2) + Cochain::e(4))), Err(Error::NotHomogeneous));
        let pre = h.coboundary_preimage(&c(&[&[1, 2]])).unwrap().unwrap();
        assert_eq!(delta1(&pre), c(&[&[1, 2]]));
    }

    #[test]
    fn cup_examples() {
        let h = Cohomology::new(k(1));
        let e = h.class_of(&Cochain::e(1)).unwrap();
        let x1 = h.class_of(&gen_x(1).unwrap()).unwrap();
        assert!(h.cup(&e, &x1).unwrap().is_zero());
        for i in 1..=4 {
            let xi = h.class_of(&gen_x(i).unwrap()).unwrap();
            assert!(h.cup(&xi, &xi).unwrap().is_zero());
        }
        let x2 = h.class_of(&gen_x(2).unwrap()).unwrap();
        let y1 = h.class_of(&gen_y(1).unwrap()).unwrap();
        let z2 = h.class_of(&gen_z(2).unwrap()).unwrap();
        assert_eq!(h.cup(&x2, &y1).unwrap(), z2);
    }

    #[test]
    fn h1_basis_examples() {
        let engine = Engine::new();
        for n in [4, 7, 12] {
            let r = epsilon_basis_check(&engine, n).unwrap();
            assert!(r.passed(), "{r}");
        }
        let total: u64 = l1(&engine).poincare(12).total();
        assert_eq!(total, 7);
    }

    #[test]
    fn low_k_examples() {
        let engine = Engine::new();
        assert_eq!(engine.k(0).dim(12, 2), 4);
        assert_eq!(predicted_l0_dim(&engine, 12, 2), 4);
        assert_eq!(engine.k(0).dim(0, 1), 1);
        assert_eq!(engine.k(-1).dim(4, 2), 2);
        assert_eq!(engine.k(-1).dim(2, 2), 1);
        for q in 1..=4 {
            assert_eq!(engine.k(-1).dim(9, q), 0);
        }
        assert!(l0_dims_check(&engine, 12, None).passed());
        assert!(lminus1_dims_check(&engine, 12, None).passed());
    }

    #[test]
    fn extension_cocycles() {
        let names = |n| h2_lminus1_basis(n).unwrap().into_iter().map(|c| c.value).collect::<Vec<_>>();
        assert_eq!(names(4), vec![c(&[&[0, 4]]), c(&[&[1, 3], &[-1, 5]])]);
        assert_eq!(names(2), vec![c(&[&[0, 2]])]);
        assert_eq!(names(6).len(), 2);
        assert_eq!(names(8).len(), 3);
        assert!(h2_lminus1_basis(5).is_err());
        let engine = Engine::new();
        for n in [2, 4, 6, 8, 12] {
            let r = h2_lminus1_check(&engine, n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn bockstein_examples() {
        let engine = Engine::new();
        for a in [1, 3, 5, 7, 9] {
            let r = bockstein_witness_check(&engine, a).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(bockstein_witness_check(&engine, 4).is_err());
        let marked: Cochain = [5, 3, 1].iter().map(|&i| delta1_e(i).wedge(&Cochain::e(12 - i))).sum();
        let lhs = e_action(-1, &marked, 1).unwrap();
        assert_eq!(lhs + delta1(&c(&[&[5, 8]])), delta1(&c(&[&[3, 10]])));
    }

    #[test]
    fn generator_relations_small() {
        let engine = Engine::new();
        let r = generator_relations_check(&engine, 3).unwrap();
        assert!(r.passed(), "{r}");
        let r = generator_witness_check(5).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn kunneth_small() {
        for n in 1..=12 {
            let r = kunneth_check(n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
