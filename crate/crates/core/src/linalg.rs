//! Exact sparse linear algebra: vectors, row-major matrices, an incremental
//! echelon form, and subspaces kept in reduced row-echelon form.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scalars::{FieldSpec, Scalar};

/// Sparse vector; entries sorted by index, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseVec {
    field: FieldSpec,
    dim: usize,
    entries: Vec<(usize, Scalar)>,
}

impl std::fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SparseVec[{}]{{", self.dim)?;
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}: {v}")?;
        }
        write!(f, "}}")
    }
}

impl SparseVec {
    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        SparseVec {
            field,
            dim,
            entries: Vec::new(),
        }
    }

    pub fn unit(field: FieldSpec, dim: usize, i: usize) -> Self {
        assert!(i < dim, "index {i} out of range {dim}");
        SparseVec {
            field,
            dim,
            entries: vec![(i, field.one())],
        }
    }

    /// Builds a vector from unsorted entries, summing duplicates.
    pub fn from_entries(field: FieldSpec, dim: usize, mut entries: Vec<(usize, Scalar)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            assert!(i < dim, "index {i} out of range {dim}");
            match out.last_mut() {
                Some((j, w)) if *j == i => *w += &v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec {
            field,
            dim,
            entries: out,
        }
    }

    /// Builds a vector from a dense slice.
    pub fn from_dense(field: FieldSpec, values: &[Scalar]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        SparseVec {
            field,
            dim: values.len(),
            entries,
        }
    }

    pub(crate) fn from_sorted(field: FieldSpec, dim: usize, entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(i, v)| *i < dim && !v.is_zero()));
        SparseVec { field, dim, entries }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// Coefficient at `i`, zero if absent.
    pub fn coeff(&self, i: usize) -> Scalar {
        self.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    fn check(&self, o: &SparseVec) {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        assert_eq!(self.field, o.field, "field mismatch");
    }

    /// `self + c * o`.
    pub fn axpy(&self, c: &Scalar, o: &SparseVec) -> SparseVec {
        self.check(o);
        if c.is_zero() || o.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &o.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, c * &b[j].1));
                j += 1;
            } else {
                let v = &a[i].1 + &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec {
            field: self.field,
            dim: self.dim,
            entries: out,
        }
    }

    pub fn add(&self, o: &SparseVec) -> SparseVec {
        self.axpy(&self.field.one(), o)
    }

    pub fn sub(&self, o: &SparseVec) -> SparseVec {
        self.axpy(&self.field.int(-1), o)
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            field: self.field,
            dim: self.dim,
            entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero(self.field, self.dim);
        }
        SparseVec {
            field: self.field,
            dim: self.dim,
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn dot(&self, o: &SparseVec) -> Scalar {
        self.check(o);
        let mut acc = self.field.zero();
        let (a, b) = (&self.entries, &o.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += &(&a[i].1 * &b[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Image under a map sending entry `i` to its index in a larger or smaller space.
    pub fn reindex(&self, dim: usize, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(
            self.field,
            dim,
            self.entries.iter().map(|(i, v)| (f(*i), v.clone())).collect(),
        )
    }

    /// Image under the ring morphism into F_p (see [`Scalar::to_prime`]).
    pub fn to_prime(&self, p: u64) -> Result<SparseVec> {
        let field = FieldSpec::prime(p)?;
        let mut entries = Vec::with_capacity(self.entries.len());
        for (i, v) in &self.entries {
            let w = v.to_prime(p)?;
            if !w.is_zero() {
                entries.push((*i, w));
            }
        }
        Ok(SparseVec {
            field,
            dim: self.dim,
            entries,
        })
    }
}

/// Accumulates coefficients by index before building a [`SparseVec`].
pub struct Accumulator {
    field: FieldSpec,
    dim: usize,
    map: HashMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        Accumulator {
            field,
            dim,
            map: HashMap::new(),
        }
    }

    pub fn add(&mut self, i: usize, v: Scalar) {
        debug_assert!(i < self.dim);
        match self.map.get_mut(&i) {
            Some(w) => *w += &v,
            None => {
                self.map.insert(i, v);
            }
        }
    }

    pub fn add_vec(&mut self, c: &Scalar, v: &SparseVec) {
        for (i, x) in v.iter() {
            self.add(i, c * x);
        }
    }

    pub fn finish(self) -> SparseVec {
        let mut entries: Vec<(usize, Scalar)> = self.map.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        entries.sort_unstable_by_key(|e| e.0);
        SparseVec {
            field: self.field,
            dim: self.dim,
            entries,
        }
    }
}

/// Sparse matrix stored as a list of sparse rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMat {
    field: FieldSpec,
    cols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        SparseMat {
            field,
            cols,
            rows: vec![SparseVec::zero(field, cols); rows],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        SparseMat {
            field,
            cols: n,
            rows: (0..n).map(|i| SparseVec::unit(field, n, i)).collect(),
        }
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<SparseVec>) -> Self {
        for r in &rows {
            assert_eq!(r.dim(), cols, "row dimension mismatch");
        }
        SparseMat { field, cols, rows }
    }

    /// Matrix whose `j`-th column is `columns[j]` (each of dimension `rows`).
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[SparseVec]) -> Self {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.dim(), rows, "column dimension mismatch");
            for (i, v) in c.iter() {
                buckets[i].push((j, v.clone()));
            }
        }
        let cols = columns.len();
        SparseMat {
            field,
            cols,
            rows: buckets
                .into_iter()
                .map(|e| SparseVec::from_sorted(field, cols, e))
                .collect(),
        }
    }

    /// Builds a dense matrix from rows of small integers (for tests and literals).
    pub fn from_ints(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        SparseMat {
            field,
            cols,
            rows: rows
                .iter()
                .map(|r| SparseVec::from_dense(field, &r.iter().map(|&x| field.int(x)).collect::<Vec<_>>()))
                .collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(SparseVec::is_zero)
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.rows[i].coeff(j)
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(v.dim(), self.cols, "dimension mismatch");
        let entries = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let x = r.dot(v);
                (!x.is_zero()).then_some((i, x))
            })
            .collect();
        SparseVec::from_sorted(self.field, self.rows.len(), entries)
    }

    pub fn transpose(&self) -> SparseMat {
        SparseMat::from_columns(self.field, self.cols, &self.rows)
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().rows
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.nrows(), "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = Accumulator::new(self.field, other.cols);
                for (k, v) in r.iter() {
                    acc.add_vec(v, &other.rows[k]);
                }
                acc.finish()
            })
            .collect();
        SparseMat {
            field: self.field,
            cols: other.cols,
            rows,
        }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SparseMat {
            field: self.field,
            cols: self.cols,
            rows,
        }
    }
}

/// Row-echelon form built one row at a time.
///
/// Stored rows have a unit leading entry and are reduced against all pivots
/// that existed when they were inserted. [`Echelon::into_subspace`] finishes
/// the back-substitution to the canonical reduced form.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_of: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivot_of: vec![None; dim],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against every stored pivot.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(v.dim(), self.dim, "dimension mismatch");
        let mut v = v.clone();
        let mut from = 0usize;
        loop {
            let hit = v.entries[from..]
                .iter()
                .position(|(c, _)| self.pivot_of[*c].is_some())
                .map(|k| k + from);
            let Some(k) = hit else { break };
            let (c, coef) = v.entries[k].clone();
            let row = &self.rows[self.pivot_of[c].unwrap()];
            v = v.axpy(&-coef, row);
            from = v.entries.partition_point(|e| e.0 <= c);
        }
        v
    }

    /// Inserts `v`; returns whether it increased the rank.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((c, lead)) = r.leading() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading entry");
        let r = r.scale(&inv);
        self.pivot_of[c] = Some(self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Canonical reduced row-echelon basis of the row space.
    pub fn into_subspace(self) -> Subspace {
        let mut order: Vec<usize> = (0..self.dim).filter(|&c| self.pivot_of[c].is_some()).collect();
        order.reverse();
        let mut finished = Echelon::new(self.field, self.dim);
        let mut out: Vec<(usize, SparseVec)> = Vec::with_capacity(order.len());
        for c in order {
            let row = &self.rows[self.pivot_of[c].unwrap()];
            // Pivots already finalised all lie to the right of c.
            let r = finished.reduce(row);
            finished.pivot_of[c] = Some(finished.rows.len());
            finished.rows.push(r.clone());
            out.push((c, r));
        }
        out.reverse();
        Subspace {
            field: self.field,
            ambient: self.dim,
            basis: out.into_iter().map(|(_, r)| r).collect(),
        }
    }
}

/// Row-reduces `m`, returning its rank and reduced row-echelon form (zero rows dropped).
pub fn rref(m: &SparseMat) -> (usize, SparseMat) {
    let s = Subspace::from_vectors(m.field, m.cols, m.rows.iter());
    let rank = s.dim();
    (
        rank,
        SparseMat {
            field: m.field,
            cols: m.cols,
            rows: s.basis,
        },
    )
}

/// Null space of `m`.
pub fn kernel(m: &SparseMat) -> Subspace {
    kernel_of_rows(m.field, m.cols, m.rows.iter())
}

/// Null space of the matrix with the given rows, reduced incrementally.
pub fn kernel_of_rows<'a>(field: FieldSpec, cols: usize, rows: impl IntoIterator<Item = &'a SparseVec>) -> Subspace {
    let mut e = Echelon::new(field, cols);
    for r in rows {
        e.insert(r);
        if e.rank() == cols {
            break;
        }
    }
    let row_space = e.into_subspace();
    row_space.kernel_of_basis()
}

/// Canonical solution of `m x = rhs` with free coordinates set to zero, if one exists.
pub fn solve(m: &SparseMat, rhs: &SparseVec) -> Option<SparseVec> {
    assert_eq!(rhs.dim(), m.nrows(), "dimension mismatch");
    let n = m.cols;
    let mut e = Echelon::new(m.field, n + 1);
    for (i, r) in m.rows.iter().enumerate() {
        let mut entries = r.entries.clone();
        if let Some(b) = rhs.get(i) {
            entries.push((n, b.clone()));
        }
        e.insert(&SparseVec::from_sorted(m.field, n + 1, entries));
    }
    let s = e.into_subspace();
    let mut sol = Vec::new();
    for row in &s.basis {
        let (p, _) = row.leading().unwrap();
        if p == n {
            return None;
        }
        if let Some(b) = row.get(n) {
            sol.push((p, b.clone()));
        }
    }
    Some(SparseVec::from_sorted(m.field, n, sol))
}

/// A linear subspace held as its canonical reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: (0..ambient).map(|i| SparseVec::unit(field, ambient, i)).collect(),
        }
    }

    pub fn from_vectors<'a>(field: FieldSpec, ambient: usize, vs: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut e = Echelon::new(field, ambient);
        for v in vs {
            e.insert(v);
        }
        e.into_subspace()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.leading().unwrap().0).collect()
    }

    fn same_ambient(&self, o: &Subspace) -> Result<()> {
        if self.ambient != o.ambient {
            return Err(Error::DimensionMismatch(self.ambient, o.ambient));
        }
        Ok(())
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        assert_eq!(v.dim(), self.ambient, "dimension mismatch");
        let coords: Vec<Scalar> = self.basis.iter().map(|b| v.coeff(b.leading().unwrap().0)).collect();
        let mut w = v.clone();
        for (c, b) in coords.iter().zip(&self.basis) {
            w = w.axpy(&-c, b);
        }
        w.is_zero().then_some(coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> Result<bool> {
        self.same_ambient(o)?;
        Ok(self.basis.iter().all(|b| o.contains(b)))
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.same_ambient(o)?;
        Ok(Subspace::from_vectors(
            self.field,
            self.ambient,
            self.basis.iter().chain(o.basis.iter()),
        ))
    }

    /// Intersection as the common kernel of both annihilators.
    pub fn intersect(&self, o: &Subspace) -> Result<Subspace> {
        self.same_ambient(o)?;
        let a = self.annihilator();
        let b = o.annihilator();
        Ok(kernel_of_rows(
            self.field,
            self.ambient,
            a.basis.iter().chain(b.basis.iter()),
        ))
    }

    /// `{y : y·v = 0 for all v in self}`.
    pub fn annihilator(&self) -> Subspace {
        self.kernel_of_basis()
    }

    /// Kernel of the matrix whose rows are this (reduced) basis.
    fn kernel_of_basis(&self) -> Subspace {
        let n = self.ambient;
        let mut is_pivot = vec![false; n];
        for b in &self.basis {
            is_pivot[b.leading().unwrap().0] = true;
        }
        // For a free column f: e_f - sum_r B[r][f] e_{pivot(r)}.
        let mut by_free: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        for b in &self.basis {
            let p = b.leading().unwrap().0;
            for (c, v) in b.iter().skip(1) {
                by_free[c].push((p, -v));
            }
        }
        let vecs: Vec<SparseVec> = (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut e = std::mem::take(&mut by_free[f]);
                e.push((f, self.field.one()));
                SparseVec::from_entries(self.field, n, e)
            })
            .collect();
        Subspace::from_vectors(self.field, n, vecs.iter())
    }

    /// Image of every basis vector under the ring morphism into F_p, re-reduced.
    pub fn to_prime(&self, p: u64) -> Result<Subspace> {
        let field = FieldSpec::prime(p)?;
        let vs = self.basis.iter().map(|b| b.to_prime(p)).collect::<Result<Vec<_>>>()?;
        Ok(Subspace::from_vectors(field, self.ambient, vs.iter()))
    }
}
