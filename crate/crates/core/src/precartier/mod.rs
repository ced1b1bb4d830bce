//! Infinitesimal R-matrices as solutions of exact linear systems in `χ ∈ H⊗H`.
//!
//! | tag | condition |
//! |---|---|
//! | `cqtr1` | `χΔ(b) = Δ(b)χ` for every basis element `b` |
//! | `cqtr2` | `R₁₂(Id⊗Δ)(χ) = R₁₂χ₁₂ + χ₁₃R₁₂` |
//! | `cqtr3` | `R₂₃(Δ⊗Id)(χ) = R₂₃χ₂₃ + χ₁₃R₂₃` |
//! | `counit_left` | `(ε⊗Id)(χ) = 0` |
//! | `counit_right` | `(Id⊗ε)(χ) = 0` |
//! | `cartier` | `Rχ = χ^op R` |
//! | `cocycle` | `χ₁₂ + (Δ⊗Id)(χ) = χ₂₃ + (Id⊗Δ)(χ)` |
//!
//! `cqtr2` and `cqtr3` are the left-multiplied forms of
//! `(Id⊗Δ)(χ) = χ₁₂ + R₁₂⁻¹χ₁₃R₁₂` and its 23-analogue, which [`AxiomChecker`]
//! evaluates directly.

mod classify;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hochschild::coboundaries;
use crate::hopf::{Check, Elem, HopfData, Leg, Tensor2, VerifyReport};
use crate::linalg::{kernel, Accumulator, SparseMat, SparseVec, Subspace};
use crate::quasitriangular::{r_inverse, verify_qtr};

pub use classify::{classify, expected_dims, ClassificationReport, Classifier, Dims, Expected, Flags};

/// Names one group of linear conditions on `χ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockTag {
    Cqtr1,
    Cqtr2,
    Cqtr3,
    CounitLeft,
    CounitRight,
    Cartier,
    Cocycle,
}

impl BlockTag {
    pub const ALL: [BlockTag; 7] = [
        BlockTag::Cqtr1,
        BlockTag::Cqtr2,
        BlockTag::Cqtr3,
        BlockTag::CounitLeft,
        BlockTag::CounitRight,
        BlockTag::Cartier,
        BlockTag::Cocycle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BlockTag::Cqtr1 => "cqtr1",
            BlockTag::Cqtr2 => "cqtr2",
            BlockTag::Cqtr3 => "cqtr3",
            BlockTag::CounitLeft => "counit_left",
            BlockTag::CounitRight => "counit_right",
            BlockTag::Cartier => "cartier",
            BlockTag::Cocycle => "cocycle",
        }
    }

    pub fn needs_r(self) -> bool {
        matches!(self, BlockTag::Cqtr2 | BlockTag::Cqtr3 | BlockTag::Cartier)
    }
}

impl fmt::Display for BlockTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BlockTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BlockTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown block tag {s:?}")))
    }
}

/// The linear maps behind every block, acting on raw `H⊗H` coordinates.
struct BlockMaps<'a> {
    h: &'a HopfData,
    r: Option<SparseVec>,
    r12: Option<SparseVec>,
    r23: Option<SparseVec>,
}

impl<'a> BlockMaps<'a> {
    fn new(h: &'a HopfData, r: Option<&Tensor2>) -> Self {
        let r = r.map(|r| r.coeffs().clone());
        let r12 = r.as_ref().map(|r| h.insert_unit(r, 2, 2));
        let r23 = r.as_ref().map(|r| h.insert_unit(r, 2, 0));
        BlockMaps { h, r, r12, r23 }
    }

    fn rows(&self, tag: BlockTag) -> usize {
        let d = self.h.dim();
        match tag {
            BlockTag::Cqtr1 | BlockTag::Cqtr2 | BlockTag::Cqtr3 | BlockTag::Cocycle => d * d * d,
            BlockTag::CounitLeft | BlockTag::CounitRight => d,
            BlockTag::Cartier => d * d,
        }
    }

    fn commutator(&self, v: &SparseVec, s: &SparseVec) -> SparseVec {
        self.h.mul_raw(2, v, s).sub(&self.h.mul_raw(2, s, v))
    }

    fn apply(&self, tag: BlockTag, v: &SparseVec) -> SparseVec {
        let h = self.h;
        let d = h.dim();
        let comult = h.comult_table();
        let need = |x: &Option<SparseVec>| x.clone().unwrap_or_else(|| panic!("block {tag} needs an R-matrix"));
        match tag {
            BlockTag::Cqtr1 => {
                let dd = d * d;
                let mut entries = Vec::new();
                for (b, db) in comult.iter().enumerate() {
                    entries.extend(
                        self.commutator(v, db)
                            .into_entries()
                            .into_iter()
                            .map(|(i, c)| (b * dd + i, c)),
                    );
                }
                SparseVec::from_entries(h.field(), d * dd, entries)
            }
            BlockTag::Cqtr2 => {
                let r12 = need(&self.r12);
                let lhs = h.mul_raw(3, &r12, &h.map_slot(v, 2, 1, comult, 2));
                let a = h.mul_raw(3, &r12, &h.insert_unit(v, 2, 2));
                let b = h.mul_raw(3, &h.insert_unit(v, 2, 1), &r12);
                lhs.sub(&a).sub(&b)
            }
            BlockTag::Cqtr3 => {
                let r23 = need(&self.r23);
                let lhs = h.mul_raw(3, &r23, &h.map_slot(v, 2, 0, comult, 2));
                let a = h.mul_raw(3, &r23, &h.insert_unit(v, 2, 0));
                let b = h.mul_raw(3, &h.insert_unit(v, 2, 1), &r23);
                lhs.sub(&a).sub(&b)
            }
            BlockTag::CounitLeft => h.map_slot(v, 2, 0, &h.counit_images(), 0),
            BlockTag::CounitRight => h.map_slot(v, 2, 1, &h.counit_images(), 0),
            BlockTag::Cartier => {
                let r = need(&self.r);
                h.mul_raw(2, &r, v).sub(&h.mul_raw(2, &h.permute(v, &[1, 0]), &r))
            }
            BlockTag::Cocycle => {
                let a = h.insert_unit(v, 2, 2).add(&h.map_slot(v, 2, 0, comult, 2));
                let b = h.insert_unit(v, 2, 0).add(&h.map_slot(v, 2, 1, comult, 2));
                a.sub(&b)
            }
        }
    }

    fn matrix(&self, tag: BlockTag) -> SparseMat {
        let h = self.h;
        let n = h.dim() * h.dim();
        let cols: Vec<SparseVec> = (0..n)
            .into_par_iter()
            .map(|k| self.apply(tag, &SparseVec::unit(h.field(), n, k)))
            .collect();
        SparseMat::from_columns(h.field(), self.rows(tag), &cols)
    }
}

/// The pre-Cartier conditions as matrices acting on the coordinates of `χ`.
#[derive(Debug)]
pub struct ChiSystem<'a> {
    parent: &'a HopfData,
    r: Option<Tensor2>,
    blocks: Vec<(BlockTag, SparseMat)>,
}

impl<'a> ChiSystem<'a> {
    pub fn parent(&self) -> &HopfData {
        self.parent
    }

    pub fn r(&self) -> Option<&Tensor2> {
        self.r.as_ref()
    }

    pub fn blocks(&self) -> &[(BlockTag, SparseMat)] {
        &self.blocks
    }

    pub fn block(&self, tag: BlockTag) -> Option<&SparseMat> {
        self.blocks.iter().find(|(t, _)| *t == tag).map(|(_, m)| m)
    }

    /// Number of unknowns, `(dim H)²`.
    pub fn ncols(&self) -> usize {
        self.parent.dim() * self.parent.dim()
    }

    /// The given blocks stacked vertically.
    pub fn stacked(&self, tags: &[BlockTag]) -> Result<SparseMat> {
        let mut out: Option<SparseMat> = None;
        for &t in tags {
            let m = self
                .block(t)
                .ok_or_else(|| Error::Range(format!("system has no {t} block")))?;
            out = Some(match out {
                None => m.clone(),
                Some(acc) => acc.stack(m),
            });
        }
        Ok(out.unwrap_or_else(|| SparseMat::zero(self.parent.field(), 0, self.ncols())))
    }

    /// Common kernel of the given blocks.
    pub fn solve(&self, tags: &[BlockTag]) -> Result<Subspace> {
        Ok(kernel(&self.stacked(tags)?))
    }
}

/// Assembles every block; those involving `R` only when `r` is given, after
/// checking that it is quasitriangular.
pub fn build_system<'a>(h: &'a HopfData, r: Option<&Tensor2>) -> Result<ChiSystem<'a>> {
    if let Some(r) = r {
        require_qtr(h, r)?;
    }
    let maps = BlockMaps::new(h, r);
    let blocks = BlockTag::ALL
        .into_iter()
        .filter(|t| r.is_some() || !t.needs_r())
        .map(|t| (t, maps.matrix(t)))
        .collect();
    Ok(ChiSystem {
        parent: h,
        r: r.cloned(),
        blocks,
    })
}

fn require_qtr(h: &HopfData, r: &Tensor2) -> Result<()> {
    let rep = verify_qtr(h, r);
    if rep.passed() {
        Ok(())
    } else {
        let names: Vec<&str> = rep.failed().map(|c| c.name.as_str()).collect();
        Err(Error::NotQuasitriangular(names.join(", ")))
    }
}

/// `{v ∈ space : f(v) = 0}`, computed on coordinates in the basis of `space`.
fn restrict(space: &Subspace, out_dim: usize, f: impl Fn(&SparseVec) -> SparseVec + Sync) -> Subspace {
    let basis = space.basis();
    if basis.is_empty() {
        return space.clone();
    }
    let field = space.field();
    let images: Vec<SparseVec> = basis.par_iter().map(&f).collect();
    let coords = kernel(&SparseMat::from_columns(field, out_dim, &images));
    let vs: Vec<SparseVec> = coords
        .basis()
        .iter()
        .map(|c| {
            let mut acc = Accumulator::new(field, space.ambient_dim());
            for (i, x) in c.iter() {
                acc.add_vec(x, &basis[i]);
            }
            acc.finish()
        })
        .collect();
    Subspace::from_vectors(field, space.ambient_dim(), vs.iter())
}

/// Kernel of `cqtr1`. Since `Δ` is multiplicative it is enough to commute
/// with `Δ` of each generator; the result equals the full block's kernel.
fn commutant_of_coproduct(h: &HopfData) -> Result<Subspace> {
    let n = h.dim() * h.dim();
    let maps = BlockMaps::new(h, None);
    let mut space = Subspace::full(h.field(), n);
    let mut gens: Vec<Elem> = h.generator_names().iter().map(|g| h.gen(g)).collect::<Result<_>>()?;
    if gens.is_empty() {
        gens = (0..h.dim()).map(|i| h.basis(i)).collect();
    }
    for g in gens {
        let dg = h.delta(&g).into_coeffs();
        space = restrict(&space, n, |v| maps.commutator(v, &dg));
    }
    Ok(space)
}

/// The space of all infinitesimal R-matrices for `(h, r)`: the common kernel of
/// `cqtr1`, `cqtr2` and `cqtr3`. Every basis vector is rechecked against the
/// direct form of the axioms, and the counit conditions are confirmed on it.
pub fn solve_infinitesimal(h: &HopfData, r: &Tensor2) -> Result<Subspace> {
    require_qtr(h, r)?;
    let n = h.dim() * h.dim();
    let maps = BlockMaps::new(h, Some(r));
    let mut space = commutant_of_coproduct(h)?;
    for tag in [BlockTag::Cqtr2, BlockTag::Cqtr3] {
        space = restrict(&space, maps.rows(tag), |v| maps.apply(tag, v));
    }
    let checker = AxiomChecker::new(h, Some(r))?;
    for v in space.basis() {
        let chi = h.tensor_from_vec::<2>(v.clone())?;
        let rep = checker.check(
            &chi,
            &[
                BlockTag::Cqtr1,
                BlockTag::Cqtr2,
                BlockTag::Cqtr3,
                BlockTag::CounitLeft,
                BlockTag::CounitRight,
            ],
        );
        if !rep.passed() {
            return Err(Error::AxiomsViolated(format!(
                "solver output {} fails: {rep}",
                h.format(&chi)
            )));
        }
    }
    debug_assert_eq!(space.ambient_dim(), n);
    Ok(space)
}

/// Kernel of `cqtr1` together with both counit conditions: contains the
/// infinitesimal R-matrices for every R.
pub fn solve_rfree(h: &HopfData) -> Result<Subspace> {
    let maps = BlockMaps::new(h, None);
    let mut space = commutant_of_coproduct(h)?;
    for tag in [BlockTag::CounitLeft, BlockTag::CounitRight] {
        space = restrict(&space, maps.rows(tag), |v| maps.apply(tag, v));
    }
    Ok(space)
}

/// The elements of `chi_space` with `Rχ = χ^op R`.
pub fn cartier_subspace(h: &HopfData, r: &Tensor2, chi_space: &Subspace) -> Subspace {
    let maps = BlockMaps::new(h, Some(r));
    restrict(chi_space, maps.rows(BlockTag::Cartier), |v| {
        maps.apply(BlockTag::Cartier, v)
    })
}

/// Whether the Cartier part of `chi_space` is exactly its intersection with
/// the 2-coboundaries.
pub fn cartier_coboundary_check(h: &HopfData, r: &Tensor2, chi_space: &Subspace) -> Result<bool> {
    let cart = cartier_subspace(h, r, chi_space);
    let cut = chi_space.intersect(&coboundaries(h, 2)?)?;
    Ok(cart == cut)
}

/// `m(S⊗Id)(χ)`.
pub fn casimir(h: &HopfData, chi: &Tensor2) -> Result<Elem> {
    Ok(h.multiply_legs(&h.antipode_left(chi)?))
}

/// Evaluates each condition on a given `χ` with the typed tensor operations,
/// using `R⁻¹` in `cqtr2` and `cqtr3`.
pub struct AxiomChecker<'a> {
    h: &'a HopfData,
    r: Option<Tensor2>,
    rinv: Option<Tensor2>,
}

impl<'a> AxiomChecker<'a> {
    pub fn new(h: &'a HopfData, r: Option<&Tensor2>) -> Result<Self> {
        let rinv = r.map(|r| r_inverse(h, r)).transpose()?;
        Ok(AxiomChecker { h, r: r.cloned(), rinv })
    }

    /// The defect of one condition; zero exactly when it holds. For `cqtr1`
    /// the defects for all basis elements are concatenated.
    pub fn residual(&self, tag: BlockTag, chi: &Tensor2) -> SparseVec {
        let h = self.h;
        let need = |x: &Option<Tensor2>| x.clone().unwrap_or_else(|| panic!("condition {tag} needs an R-matrix"));
        match tag {
            BlockTag::Cqtr1 => {
                let d = h.dim();
                let mut entries = Vec::new();
                for b in 0..d {
                    let db = h.delta(&h.basis(b));
                    let c = h.mul(chi, &db) - h.mul(&db, chi);
                    entries.extend(
                        c.into_coeffs()
                            .into_entries()
                            .into_iter()
                            .map(|(i, x)| (b * d * d + i, x)),
                    );
                }
                SparseVec::from_entries(h.field(), d * d * d, entries)
            }
            BlockTag::Cqtr2 => {
                let (r, ri) = (h.leg(&need(&self.r), Leg::L12), h.leg(&need(&self.rinv), Leg::L12));
                let rhs = h.leg(chi, Leg::L12) + h.product(&[&ri, &h.leg(chi, Leg::L13), &r]);
                (h.delta_right(chi) - rhs).into_coeffs()
            }
            BlockTag::Cqtr3 => {
                let (r, ri) = (h.leg(&need(&self.r), Leg::L23), h.leg(&need(&self.rinv), Leg::L23));
                let rhs = h.leg(chi, Leg::L23) + h.product(&[&ri, &h.leg(chi, Leg::L13), &r]);
                (h.delta_left(chi) - rhs).into_coeffs()
            }
            BlockTag::CounitLeft => h.counit_left(chi).into_coeffs(),
            BlockTag::CounitRight => h.counit_right(chi).into_coeffs(),
            BlockTag::Cartier => {
                let r = need(&self.r);
                (h.mul(&r, chi) - h.mul(&h.flip(chi), &r)).into_coeffs()
            }
            BlockTag::Cocycle => {
                let lhs = h.leg(chi, Leg::L12) + h.delta_left(chi);
                let rhs = h.leg(chi, Leg::L23) + h.delta_right(chi);
                (lhs - rhs).into_coeffs()
            }
        }
    }

    pub fn check(&self, chi: &Tensor2, tags: &[BlockTag]) -> VerifyReport {
        let mut rep = VerifyReport::default();
        for &t in tags {
            let res = self.residual(t, chi);
            rep.push(Check::single(t.as_str(), res.is_zero(), || {
                format!("{} nonzero coordinates", res.nnz())
            }));
        }
        rep
    }
}

/// Checks the three defining conditions and both counit conditions on `χ`.
pub fn verify_infinitesimal(h: &HopfData, r: &Tensor2, chi: &Tensor2) -> Result<VerifyReport> {
    let c = AxiomChecker::new(h, Some(r))?;
    Ok(c.check(
        chi,
        &[
            BlockTag::Cqtr1,
            BlockTag::Cqtr2,
            BlockTag::Cqtr3,
            BlockTag::CounitLeft,
            BlockTag::CounitRight,
        ],
    ))
}

#[cfg(test)]
mod tests;
