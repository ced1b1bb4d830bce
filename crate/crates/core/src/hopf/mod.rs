//! Finite-dimensional Hopf algebras given by structure constants, and
//! arithmetic on their elements and tensor powers.
//!
//! A basis tensor `e_{i_1} ⊗ … ⊗ e_{i_k}` has row-major index
//! `((i_1·d + i_2)·d + …)·d + i_k` where `d = dim H`.

mod expr;
mod verify;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::FamilyKind;
use crate::linalg::{kernel, Accumulator, SparseMat, SparseVec, Subspace};
use crate::scalars::{FieldSpec, Scalar};

pub use expr::Parsed;
pub use verify::{Check, VerifyReport};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Raw structure tables used to construct a [`HopfData`].
#[derive(Clone, Debug)]
pub struct HopfTables {
    pub field: FieldSpec,
    pub family: Option<FamilyKind>,
    pub labels: Vec<String>,
    /// Parseable product of generators for each basis element.
    pub words: Vec<String>,
    pub generators: Vec<(String, SparseVec)>,
    /// `mult[i*d + j]` is `e_i e_j`.
    pub mult: Vec<SparseVec>,
    pub unit: usize,
    pub comult: Vec<SparseVec>,
    pub counit: Vec<Scalar>,
    pub antipode: Option<Vec<SparseVec>>,
}

/// An immutable finite-dimensional bialgebra (Hopf algebra when an antipode is present).
#[derive(Debug)]
pub struct HopfData {
    id: u64,
    t: HopfTables,
}

impl Clone for HopfData {
    /// A clone is a new instance: its elements do not mix with the original's.
    fn clone(&self) -> Self {
        HopfData::new(self.t.clone())
    }
}

/// Element of `H^{⊗K}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor<const K: usize> {
    parent: u64,
    v: SparseVec,
}

pub type Elem = Tensor<1>;
pub type Tensor2 = Tensor<2>;
pub type Tensor3 = Tensor<3>;

/// Placement of a 2-tensor inside `H^{⊗3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leg {
    L12,
    L13,
    L23,
}

impl<const K: usize> Tensor<K> {
    pub fn coeffs(&self) -> &SparseVec {
        &self.v
    }

    pub fn into_coeffs(self) -> SparseVec {
        self.v
    }

    pub fn parent_id(&self) -> u64 {
        self.parent
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Tensor {
            parent: self.parent,
            v: self.v.scale(c),
        }
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.parent != o.parent {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(Tensor {
            parent: self.parent,
            v: self.v.add(&o.v),
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(Tensor {
            parent: self.parent,
            v: self.v.sub(&o.v),
        })
    }
}

impl<const K: usize> fmt::Debug for Tensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor<{K}>@{} {:?}", self.parent, self.v)
    }
}

impl<const K: usize> Add for &Tensor<K> {
    type Output = Tensor<K>;
    fn add(self, o: &Tensor<K>) -> Tensor<K> {
        self.try_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<const K: usize> Sub for &Tensor<K> {
    type Output = Tensor<K>;
    fn sub(self, o: &Tensor<K>) -> Tensor<K> {
        self.try_sub(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<const K: usize> Add for Tensor<K> {
    type Output = Tensor<K>;
    fn add(self, o: Tensor<K>) -> Tensor<K> {
        &self + &o
    }
}

impl<const K: usize> Sub for Tensor<K> {
    type Output = Tensor<K>;
    fn sub(self, o: Tensor<K>) -> Tensor<K> {
        &self - &o
    }
}

impl<const K: usize> Neg for &Tensor<K> {
    type Output = Tensor<K>;
    fn neg(self) -> Tensor<K> {
        Tensor {
            parent: self.parent,
            v: self.v.neg(),
        }
    }
}

impl<const K: usize> Neg for Tensor<K> {
    type Output = Tensor<K>;
    fn neg(self) -> Tensor<K> {
        -&self
    }
}

fn digits(mut idx: usize, d: usize, k: usize) -> smallvec::SmallVec<[usize; 4]> {
    let mut out = smallvec::SmallVec::from_elem(0, k);
    for slot in (0..k).rev() {
        out[slot] = idx % d;
        idx /= d;
    }
    out
}

impl HopfData {
    pub fn new(t: HopfTables) -> Self {
        let d = t.labels.len();
        assert_eq!(t.mult.len(), d * d, "mult table size");
        assert_eq!(t.comult.len(), d, "comult table size");
        assert_eq!(t.counit.len(), d, "counit table size");
        assert!(t.unit < d, "unit index");
        if let Some(s) = &t.antipode {
            assert_eq!(s.len(), d, "antipode table size");
        }
        HopfData {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            t,
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn tables(&self) -> &HopfTables {
        &self.t
    }

    pub fn field(&self) -> FieldSpec {
        self.t.field
    }

    pub fn family(&self) -> Option<&FamilyKind> {
        self.t.family.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.t.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.t.labels
    }

    pub fn words(&self) -> &[String] {
        &self.t.words
    }

    pub fn unit_index(&self) -> usize {
        self.t.unit
    }

    pub fn has_antipode(&self) -> bool {
        self.t.antipode.is_some()
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.t.generators.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// Index of the basis element with the given canonical label.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.t.labels.iter().position(|l| l == label)
    }

    fn pow_dim(&self, k: usize) -> usize {
        self.dim().pow(k as u32)
    }

    fn wrap<const K: usize>(&self, v: SparseVec) -> Tensor<K> {
        debug_assert_eq!(v.dim(), self.pow_dim(K));
        Tensor { parent: self.id, v }
    }

    fn own<const K: usize>(&self, t: &Tensor<K>) -> Result<()> {
        if t.parent != self.id {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    fn owned<const K: usize>(&self, t: &Tensor<K>) {
        self.own(t).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Wraps a coefficient vector of dimension `(dim H)^K`.
    pub fn tensor_from_vec<const K: usize>(&self, v: SparseVec) -> Result<Tensor<K>> {
        if v.dim() != self.pow_dim(K) {
            return Err(Error::DimensionMismatch(v.dim(), self.pow_dim(K)));
        }
        if v.field() != self.field() {
            return Err(Error::MixedField(v.field().to_string(), self.field().to_string()));
        }
        Ok(self.wrap(v))
    }

    pub fn zero<const K: usize>(&self) -> Tensor<K> {
        self.wrap(SparseVec::zero(self.field(), self.pow_dim(K)))
    }

    /// `1 ⊗ … ⊗ 1`.
    pub fn one<const K: usize>(&self) -> Tensor<K> {
        let u = self.t.unit;
        let idx = (0..K).fold(0, |acc, _| acc * self.dim() + u);
        self.basis_tensor(idx)
    }

    pub fn basis_tensor<const K: usize>(&self, idx: usize) -> Tensor<K> {
        self.wrap(SparseVec::unit(self.field(), self.pow_dim(K), idx))
    }

    pub fn basis(&self, i: usize) -> Elem {
        self.basis_tensor(i)
    }

    pub fn scalar<const K: usize>(&self, c: &Scalar) -> Tensor<K> {
        self.one::<K>().scale(c)
    }

    /// The named generator as an element.
    pub fn gen(&self, name: &str) -> Result<Elem> {
        self.t
            .generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| self.wrap(v.clone()))
            .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))
    }

    /// Product of named generators, e.g. `["g", "x1", "x1"]`.
    pub fn word(&self, names: &[&str]) -> Result<Elem> {
        let mut acc = self.one::<1>();
        for n in names {
            acc = self.mul(&acc, &self.gen(n)?);
        }
        Ok(acc)
    }

    // ---- raw operations on coefficient vectors ----

    pub(crate) fn mul_raw(&self, k: usize, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let d = self.dim();
        let field = self.field();
        let n = self.pow_dim(k);
        if k == 1 {
            let mut acc = Accumulator::new(field, n);
            for (i, x) in a.iter() {
                for (j, y) in b.iter() {
                    acc.add_vec(&(x * y), &self.t.mult[i * d + j]);
                }
            }
            return acc.finish();
        }
        let bd: Vec<_> = b.iter().map(|(j, y)| (digits(j, d, k), y)).collect();
        let mut acc = Accumulator::new(field, n);
        let mut partial: Vec<(usize, Scalar)> = Vec::new();
        let mut next: Vec<(usize, Scalar)> = Vec::new();
        for (i, x) in a.iter() {
            let da = digits(i, d, k);
            for (db, y) in &bd {
                partial.clear();
                partial.push((0, x * *y));
                for l in 0..k {
                    let m = &self.t.mult[da[l] * d + db[l]];
                    next.clear();
                    for (idx, s) in &partial {
                        for (j, t) in m.iter() {
                            next.push((idx * d + j, s * t));
                        }
                    }
                    std::mem::swap(&mut partial, &mut next);
                    if partial.is_empty() {
                        break;
                    }
                }
                for (idx, s) in partial.drain(..) {
                    acc.add(idx, s);
                }
            }
        }
        acc.finish()
    }

    /// Replaces slot `slot` of an `n`-fold tensor by the image of a basis map
    /// whose images live in `H^{⊗m}` (`m = 0` for scalar-valued maps).
    pub(crate) fn map_slot(&self, v: &SparseVec, n: usize, slot: usize, images: &[SparseVec], m: usize) -> SparseVec {
        let d = self.dim();
        let low_size = d.pow((n - slot - 1) as u32);
        let img_size = d.pow(m as u32);
        let out_dim = d.pow((n - 1 + m) as u32);
        let mut acc = Accumulator::new(self.field(), out_dim);
        for (idx, c) in v.iter() {
            let low = idx % low_size;
            let s = (idx / low_size) % d;
            let high = idx / (low_size * d);
            for (j, y) in images[s].iter() {
                acc.add((high * img_size + j) * low_size + low, c * y);
            }
        }
        acc.finish()
    }

    /// Inserts `1` so that it becomes slot `pos` of an `(n+1)`-fold tensor.
    pub(crate) fn insert_unit(&self, v: &SparseVec, n: usize, pos: usize) -> SparseVec {
        let d = self.dim();
        let low_size = d.pow((n - pos) as u32);
        let u = self.t.unit;
        let entries = v
            .iter()
            .map(|(idx, c)| {
                let low = idx % low_size;
                let high = idx / low_size;
                ((high * d + u) * low_size + low, c.clone())
            })
            .collect();
        SparseVec::from_entries(self.field(), d.pow((n + 1) as u32), entries)
    }

    /// Permutes tensor slots: slot `i` of the input lands in slot `perm[i]`.
    pub(crate) fn permute(&self, v: &SparseVec, perm: &[usize]) -> SparseVec {
        let d = self.dim();
        let k = perm.len();
        let entries = v
            .iter()
            .map(|(idx, c)| {
                let ds = digits(idx, d, k);
                let mut out = smallvec::SmallVec::<[usize; 4]>::from_elem(0, k);
                for i in 0..k {
                    out[perm[i]] = ds[i];
                }
                (out.iter().fold(0, |acc, &x| acc * d + x), c.clone())
            })
            .collect();
        SparseVec::from_entries(self.field(), v.dim(), entries)
    }

    pub(crate) fn kron(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let n = b.dim();
        let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                entries.push((i * n + j, x * y));
            }
        }
        SparseVec::from_sorted(self.field(), a.dim() * n, entries)
    }

    pub(crate) fn comult_table(&self) -> &[SparseVec] {
        &self.t.comult
    }

    pub(crate) fn counit_images(&self) -> Vec<SparseVec> {
        self.t
            .counit
            .iter()
            .map(|c| SparseVec::from_dense(self.field(), std::slice::from_ref(c)))
            .collect()
    }

    pub(crate) fn antipode_table(&self) -> Result<&[SparseVec]> {
        self.t.antipode.as_deref().ok_or(Error::NoAntipode)
    }

    // ---- typed operations ----

    pub fn try_mul<const K: usize>(&self, a: &Tensor<K>, b: &Tensor<K>) -> Result<Tensor<K>> {
        self.own(a)?;
        self.own(b)?;
        Ok(self.wrap(self.mul_raw(K, &a.v, &b.v)))
    }

    /// Product in `H^{⊗K}`; panics if an operand belongs to another algebra.
    pub fn mul<const K: usize>(&self, a: &Tensor<K>, b: &Tensor<K>) -> Tensor<K> {
        self.try_mul(a, b).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Product of several factors, left to right.
    pub fn product<const K: usize>(&self, factors: &[&Tensor<K>]) -> Tensor<K> {
        let mut acc = self.one::<K>();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn pow<const K: usize>(&self, a: &Tensor<K>, e: u32) -> Tensor<K> {
        let mut acc = self.one::<K>();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// `a ⊗ b`.
    pub fn tensor2(&self, a: &Elem, b: &Elem) -> Tensor2 {
        self.owned(a);
        self.owned(b);
        self.wrap(self.kron(&a.v, &b.v))
    }

    /// `a ⊗ b ⊗ c`.
    pub fn tensor3(&self, a: &Elem, b: &Elem, c: &Elem) -> Tensor3 {
        self.owned(a);
        self.owned(b);
        self.owned(c);
        self.wrap(self.kron(&self.kron(&a.v, &b.v), &c.v))
    }

    pub fn delta(&self, a: &Elem) -> Tensor2 {
        self.owned(a);
        self.wrap(self.map_slot(&a.v, 1, 0, &self.t.comult, 2))
    }

    pub fn counit(&self, a: &Elem) -> Scalar {
        self.owned(a);
        let mut acc = self.field().zero();
        for (i, c) in a.v.iter() {
            acc += &(c * &self.t.counit[i]);
        }
        acc
    }

    pub fn antipode(&self, a: &Elem) -> Result<Elem> {
        self.own(a)?;
        let s = self.antipode_table()?;
        Ok(self.wrap(self.map_slot(&a.v, 1, 0, s, 1)))
    }

    /// `t^op`: swaps the two legs.
    pub fn flip(&self, t: &Tensor2) -> Tensor2 {
        self.owned(t);
        self.wrap(self.permute(&t.v, &[1, 0]))
    }

    /// Leg embedding `t_12`, `t_13` or `t_23`.
    pub fn leg(&self, t: &Tensor2, leg: Leg) -> Tensor3 {
        self.owned(t);
        let pos = match leg {
            Leg::L12 => 2,
            Leg::L13 => 1,
            Leg::L23 => 0,
        };
        self.wrap(self.insert_unit(&t.v, 2, pos))
    }

    /// `(Δ ⊗ Id)(t)`.
    pub fn delta_left(&self, t: &Tensor2) -> Tensor3 {
        self.owned(t);
        self.wrap(self.map_slot(&t.v, 2, 0, &self.t.comult, 2))
    }

    /// `(Id ⊗ Δ)(t)`.
    pub fn delta_right(&self, t: &Tensor2) -> Tensor3 {
        self.owned(t);
        self.wrap(self.map_slot(&t.v, 2, 1, &self.t.comult, 2))
    }

    /// `(ε ⊗ Id)(t)`.
    pub fn counit_left(&self, t: &Tensor2) -> Elem {
        self.owned(t);
        self.wrap(self.map_slot(&t.v, 2, 0, &self.counit_images(), 0))
    }

    /// `(Id ⊗ ε)(t)`.
    pub fn counit_right(&self, t: &Tensor2) -> Elem {
        self.owned(t);
        self.wrap(self.map_slot(&t.v, 2, 1, &self.counit_images(), 0))
    }

    /// `(S ⊗ Id)(t)`.
    pub fn antipode_left(&self, t: &Tensor2) -> Result<Tensor2> {
        self.own(t)?;
        Ok(self.wrap(self.map_slot(&t.v, 2, 0, self.antipode_table()?, 1)))
    }

    /// `(Id ⊗ S)(t)`.
    pub fn antipode_right(&self, t: &Tensor2) -> Result<Tensor2> {
        self.own(t)?;
        Ok(self.wrap(self.map_slot(&t.v, 2, 1, self.antipode_table()?, 1)))
    }

    /// `m(t)`: multiplies the two legs.
    pub fn multiply_legs(&self, t: &Tensor2) -> Elem {
        self.owned(t);
        let d = self.dim();
        let mut acc = Accumulator::new(self.field(), d);
        for (idx, c) in t.v.iter() {
            acc.add_vec(c, &self.t.mult[idx]);
        }
        self.wrap(acc.finish())
    }

    /// Applies `f ⊗ g` given by basis images in `H`.
    pub fn map2(&self, t: &Tensor2, f: &[SparseVec], g: &[SparseVec]) -> Tensor2 {
        self.owned(t);
        let v = self.map_slot(&t.v, 2, 0, f, 1);
        self.wrap(self.map_slot(&v, 2, 1, g, 1))
    }

    // ---- printing ----

    /// Expression string in generator words, e.g. `1/2*g (x) x1 - x1 (x) 1`.
    pub fn format<const K: usize>(&self, t: &Tensor<K>) -> String {
        self.format_raw(&t.v, K)
    }

    pub fn format_raw(&self, v: &SparseVec, k: usize) -> String {
        let d = self.dim();
        let mut out = String::new();
        for (idx, c) in v.iter() {
            let w: Vec<&str> = digits(idx, d, k).iter().map(|&i| self.t.words[i].as_str()).collect();
            let word = w.join(" (x) ");
            let term = if c.is_one() {
                word
            } else if (-c).is_one() {
                format!("-{word}")
            } else {
                format!("{c}*{word}")
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Label-based rendering, e.g. `g^1*x{1} ⊗ g^0*x{2}`.
    pub fn format_labels<const K: usize>(&self, t: &Tensor<K>) -> String {
        let d = self.dim();
        let terms: Vec<String> =
            t.v.iter()
                .map(|(idx, c)| {
                    let w: Vec<&str> = digits(idx, d, K).iter().map(|&i| self.t.labels[i].as_str()).collect();
                    format!("({c})[{}]", w.join(" ⊗ "))
                })
                .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    // ---- subspaces ----

    /// `{T ∈ H⊗H : T·Δ(a) = Δ(a)·T}`.
    pub fn centralizer_of_coproduct(&self, a: &Elem) -> Subspace {
        let da = self.delta(a);
        self.commutant(&da)
    }

    /// `{T ∈ H⊗H : T·s = s·T}`.
    pub fn commutant(&self, s: &Tensor2) -> Subspace {
        self.owned(s);
        let n = self.pow_dim(2);
        let cols: Vec<SparseVec> = (0..n)
            .into_par_iter()
            .map(|k| {
                let e = SparseVec::unit(self.field(), n, k);
                self.mul_raw(2, &e, &s.v).sub(&self.mul_raw(2, &s.v, &e))
            })
            .collect();
        kernel(&SparseMat::from_columns(self.field(), n, &cols))
    }

    /// Primitive elements `{x : Δ(x) = x⊗1 + 1⊗x}`.
    pub fn primitives(&self) -> Subspace {
        let d = self.dim();
        let cols: Vec<SparseVec> = (0..d)
            .map(|i| {
                let e = self.basis(i);
                let p = self.tensor2(&e, &self.one()) + self.tensor2(&self.one(), &e);
                (self.delta(&e) - p).v
            })
            .collect();
        kernel(&SparseMat::from_columns(self.field(), d * d, &cols))
    }
}
