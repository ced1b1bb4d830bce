//! Cobar complex of a bialgebra with trivial coefficients.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::FamilyKind;
use crate::hopf::{Check, Elem, HopfData, Leg, Tensor2, VerifyReport};
use crate::linalg::{kernel, solve, SparseMat, SparseVec, Subspace};

/// Highest degree for which the differential is assembled.
pub const MAX_DEGREE: usize = 3;

/// Matrix of `bⁿ : H^{⊗n} → H^{⊗(n+1)}` in the tensor-power bases.
#[derive(Clone, Debug)]
pub struct CobarDifferential {
    pub degree: usize,
    pub matrix: SparseMat,
}

impl CobarDifferential {
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.matrix.mul_vec(v)
    }
}

/// `bⁿ = Σ_{i=0}^{n+1} (−1)ⁱ δⁱ` with `δ⁰ = 1⊗·`, `δⁱ = Δ` on slot `i`, `δ^{n+1} = ·⊗1`.
pub fn b_matrix(h: &HopfData, n: usize) -> Result<CobarDifferential> {
    if n > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(n));
    }
    let f = h.field();
    let d = h.dim();
    if n == 0 {
        let zero = SparseVec::zero(f, d);
        return Ok(CobarDifferential {
            degree: 0,
            matrix: SparseMat::from_columns(f, d, &[zero]),
        });
    }
    let src = d.pow(n as u32);
    let comult = h.comult_table();
    let cols: Vec<SparseVec> = (0..src)
        .into_par_iter()
        .map(|j| {
            let e = SparseVec::unit(f, src, j);
            let mut acc = h.insert_unit(&e, n, 0);
            for i in 1..=n {
                let t = h.map_slot(&e, n, i - 1, comult, 2);
                acc = if i % 2 == 1 { acc.sub(&t) } else { acc.add(&t) };
            }
            let last = h.insert_unit(&e, n, n);
            if (n + 1) % 2 == 1 {
                acc.sub(&last)
            } else {
                acc.add(&last)
            }
        })
        .collect();
    Ok(CobarDifferential {
        degree: n,
        matrix: SparseMat::from_columns(f, d * src, &cols),
    })
}

fn cohomology_degree(n: usize) -> Result<()> {
    if (1..=2).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree(n))
    }
}

/// `Zⁿ = ker bⁿ`.
pub fn cocycles(h: &HopfData, n: usize) -> Result<Subspace> {
    cohomology_degree(n)?;
    Ok(kernel(&b_matrix(h, n)?.matrix))
}

/// `Bⁿ = im b^{n−1}`.
pub fn coboundaries(h: &HopfData, n: usize) -> Result<Subspace> {
    cohomology_degree(n)?;
    let b = b_matrix(h, n - 1)?;
    let d = h.dim();
    Ok(Subspace::from_vectors(
        h.field(),
        d.pow(n as u32),
        b.matrix.columns().iter(),
    ))
}

/// Cocycles, coboundaries and the cohomology dimension in one degree.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: usize,
    pub z: Subspace,
    pub b: Subspace,
}

impl Cohomology {
    pub fn h_dim(&self) -> usize {
        self.z.dim() - self.b.dim()
    }
}

pub fn cohomology(h: &HopfData, n: usize) -> Result<Cohomology> {
    let z = cocycles(h, n)?;
    let b = coboundaries(h, n)?;
    assert!(b.is_subspace_of(&z)?, "coboundaries not contained in cocycles");
    Ok(Cohomology { degree: n, z, b })
}

/// `dim Zⁿ − dim Bⁿ`.
pub fn h_dim(h: &HopfData, n: usize) -> Result<usize> {
    Ok(cohomology(h, n)?.h_dim())
}

/// Some `α` with `b¹(α) = t`, with free coordinates set to zero, if `t ∈ B²`.
pub fn coboundary_preimage(h: &HopfData, t: &Tensor2) -> Option<Elem> {
    let b1 = b_matrix(h, 1).expect("degree 1 is supported");
    let a = solve(&b1.matrix, t.coeffs())?;
    Some(h.tensor_from_vec::<1>(a).expect("dimension matches"))
}

/// Direct check of `χ₁₂ + (Δ⊗Id)(χ) = χ₂₃ + (Id⊗Δ)(χ)`.
pub fn is_2_cocycle(h: &HopfData, chi: &Tensor2) -> bool {
    let lhs = h.leg(chi, Leg::L12) + h.delta_left(chi);
    let rhs = h.leg(chi, Leg::L23) + h.delta_right(chi);
    lhs == rhs
}

/// The decomposition `Z² = B² ⊕ I` on E(n), where `I` is spanned by `gx_i⊗x_l`, `l ≥ i`.
#[derive(Clone, Debug)]
pub struct EnZ2Decomposition {
    pub n: usize,
    pub dim_z2: usize,
    pub dim_b2: usize,
    pub dim_i: usize,
    pub i_basis: Vec<Tensor2>,
    pub report: VerifyReport,
}

pub fn en_z2_decomposition(h: &HopfData) -> Result<EnZ2Decomposition> {
    let n = match h.family() {
        Some(FamilyKind::En(n)) => *n,
        other => {
            return Err(Error::WrongFamily {
                expected: "en".into(),
                got: other.map_or("unnamed".into(), |f| f.to_string()),
            })
        }
    };
    let co = cohomology(h, 2)?;
    let g = h.gen("g")?;
    let xs = (1..=n).map(|i| h.gen(&format!("x{i}"))).collect::<Result<Vec<_>>>()?;
    let mut i_basis = Vec::new();
    for i in 0..n {
        let gx = h.mul(&g, &xs[i]);
        for x in &xs[i..] {
            i_basis.push(h.tensor2(&gx, x));
        }
    }
    let f = h.field();
    let amb = h.dim() * h.dim();
    let span_i = Subspace::from_vectors(f, amb, i_basis.iter().map(|t| t.coeffs()));
    let sum = co.b.sum(&span_i)?;
    let cap = co.b.intersect(&span_i)?;
    let expected = n * (n + 1) / 2;
    let (dz, db) = (co.z.dim(), co.b.dim());

    let mut report = VerifyReport::default();
    report.push(Check::single("dim_z2_split", dz == db + expected, || {
        format!("dim Z² = {dz}, dim B² = {db}, expected difference {expected}")
    }));
    report.push(Check::single(
        "i_independent_mod_b2",
        sum.dim() == db + expected,
        || format!("dim(B² + I) = {}, expected {}", sum.dim(), db + expected),
    ));
    report.push(Check::single("i_cap_b2_zero", cap.dim() == 0, || {
        format!("dim(I ∩ B²) = {}", cap.dim())
    }));
    let outside: Vec<Option<String>> = i_basis
        .iter()
        .map(|t| (!co.z.contains(t.coeffs())).then(|| h.format(t)))
        .collect();
    report.push(Check::from_outcomes("i_in_z2", outside));
    report.push(Check::single("z2_equals_b2_plus_i", sum == co.z, || {
        "B² + I differs from Z²".into()
    }));
    let want_b2 = 1usize << (n + 1);
    report.push(Check::single("dim_b2", db == want_b2, || {
        format!("dim B² = {db}, expected {want_b2}")
    }));
    Ok(EnZ2Decomposition {
        n,
        dim_z2: dz,
        dim_b2: db,
        dim_i: span_i.dim(),
        i_basis,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilySpec};

    fn fam(k: FamilyKind) -> HopfData {
        build(&FamilySpec::default_field(k)).unwrap()
    }

    #[test]
    fn b1_of_unit_and_of_x1x2() {
        let h = fam(FamilyKind::En(2));
        let b1 = b_matrix(&h, 1).unwrap();
        assert_eq!(b1.apply(h.one::<1>().coeffs()), *h.one::<2>().coeffs());
        let (g, x1, x2) = (h.gen("g").unwrap(), h.gen("x1").unwrap(), h.gen("x2").unwrap());
        let x12 = h.mul(&x1, &x2);
        let want = h.tensor2(&h.mul(&g, &x1), &x2) - h.tensor2(&h.mul(&g, &x2), &x1);
        assert_eq!(b1.apply(x12.coeffs()), *want.coeffs());
    }

    #[test]
    fn complex_squares_to_zero() {
        for k in [
            FamilyKind::En(2),
            FamilyKind::H8,
            FamilyKind::Radford { r: 2, n: 2 },
            FamilyKind::AC2n(2),
        ] {
            let h = fam(k);
            for n in 0..2 {
                let a = b_matrix(&h, n).unwrap();
                let b = b_matrix(&h, n + 1).unwrap();
                let prod = b.matrix.mul(&a.matrix);
                assert!(
                    prod.rows().iter().all(SparseVec::is_zero),
                    "{:?} degree {n}",
                    h.family()
                );
            }
        }
        let h = fam(FamilyKind::En(1));
        let b2 = b_matrix(&h, 2).unwrap();
        let b3 = b_matrix(&h, 3).unwrap();
        assert!(b3.matrix.mul(&b2.matrix).rows().iter().all(SparseVec::is_zero));
        assert!(matches!(b_matrix(&h, 4), Err(Error::UnsupportedDegree(4))));
        assert!(matches!(cocycles(&h, 3), Err(Error::UnsupportedDegree(3))));
    }

    #[test]
    fn low_degree_dimensions() {
        assert_eq!(cocycles(&fam(FamilyKind::En(2)), 1).unwrap().dim(), 0);
        assert_eq!(cocycles(&fam(FamilyKind::GroupAlgebra(vec![2])), 1).unwrap().dim(), 0);
        let h8 = fam(FamilyKind::H8);
        let c = cohomology(&h8, 2).unwrap();
        assert_eq!(c.h_dim(), 0);
        assert_eq!(c.z, c.b);
        for n in 1..=4 {
            assert_eq!(h_dim(&fam(FamilyKind::En(n)), 2).unwrap(), n * (n + 1) / 2, "n = {n}");
        }
    }

    #[test]
    fn cocycle_basis_satisfies_the_equation_directly() {
        for k in [FamilyKind::En(2), FamilyKind::H8] {
            let h = fam(k);
            for v in cocycles(&h, 2).unwrap().basis() {
                let t = h.tensor_from_vec::<2>(v.clone()).unwrap();
                assert!(is_2_cocycle(&h, &t));
            }
        }
        let h = fam(FamilyKind::En(1));
        let gx = h.mul(&h.gen("g").unwrap(), &h.gen("x1").unwrap());
        assert!(!is_2_cocycle(&h, &h.tensor2(&gx, &h.one())));
    }

    #[test]
    fn preimages() {
        let h = fam(FamilyKind::En(2));
        assert_eq!(coboundary_preimage(&h, &h.zero::<2>()), Some(h.zero::<1>()));
        let (g, x1, x2) = (h.gen("g").unwrap(), h.gen("x1").unwrap(), h.gen("x2").unwrap());
        let (gx1, gx2) = (h.mul(&g, &x1), h.mul(&g, &x2));
        let t = h.tensor2(&gx1, &x2) - h.tensor2(&gx2, &x1);
        let a = coboundary_preimage(&h, &t).unwrap();
        let b1 = b_matrix(&h, 1).unwrap();
        assert_eq!(b1.apply(a.coeffs()), *t.coeffs());
        assert_eq!(b1.apply(h.mul(&x1, &x2).coeffs()), *t.coeffs());
        assert_eq!(coboundary_preimage(&h, &h.tensor2(&gx1, &x1)), None);
    }

    #[test]
    fn en_decomposition() {
        for n in 1..=3 {
            let d = en_z2_decomposition(&fam(FamilyKind::En(n))).unwrap();
            assert!(d.report.passed(), "n = {n}: {}", d.report);
            assert_eq!(d.dim_i, n * (n + 1) / 2);
            assert_eq!(d.dim_b2, 1 << (n + 1));
        }
        assert!(en_z2_decomposition(&fam(FamilyKind::H8)).is_err());
    }
}
