use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{cartier_subspace, solve_infinitesimal, solve_rfree, BlockMaps, BlockTag};
use crate::error::Result;
use crate::families::{build, FamilyKind, FamilySpec};
use crate::hochschild::{cohomology, Cohomology};
use crate::hopf::HopfData;
use crate::linalg::Subspace;
use crate::quasitriangular::{build_r, RSpec};

/// One expected dimension, with the statement it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub quantity: String,
    pub value: usize,
    pub statement: String,
}

fn exp(quantity: &str, value: usize, statement: &str) -> Expected {
    Expected {
        quantity: quantity.into(),
        value,
        statement: statement.into(),
    }
}

/// The known dimensions for a family (and R-matrix kind), as data.
pub fn expected_dims(kind: &FamilyKind, r: Option<&RSpec>) -> Vec<Expected> {
    let with_r = r.is_some();
    let mut out = Vec::new();
    match kind {
        FamilyKind::En(n) => {
            let n = *n;
            if with_r {
                out.push(exp(
                    "precartier",
                    n * n,
                    "E(n): the infinitesimal R-matrices are span{g x_p ⊗ x_q}, for every A",
                ));
                out.push(exp(
                    "cartier",
                    n * (n - 1) / 2,
                    "E(n): Cartier exactly when the matrix Γ is antisymmetric",
                ));
            }
            out.push(exp("h2", n * (n + 1) / 2, "E(n): H² has dimension n(n+1)/2"));
            out.push(exp(
                "b2",
                1 << (n + 1),
                "E(n): B² is the image of b¹, which is injective since P(E(n)) = 0",
            ));
        }
        FamilyKind::AC2n(2) if with_r => {
            out.push(exp(
                "precartier",
                1,
                "A_{C2×C2}: the infinitesimal R-matrices are α x⊗xg",
            ));
            out.push(exp("cartier", 0, "A_{C2×C2}: Cartier only for χ = 0"));
        }
        FamilyKind::H8 | FamilyKind::H2n2(2) => {
            if with_r {
                out.push(exp("precartier", 0, "H8 has no non-trivial infinitesimal R-matrices"));
            }
            out.push(exp("h2", 0, "H²(H8, k) = 0"));
        }
        FamilyKind::H2n2(_) if with_r => {
            out.push(exp(
                "precartier",
                0,
                "H_{2n²}, n ≥ 3, has no non-trivial infinitesimal R-matrices",
            ));
        }
        FamilyKind::AC4Dual if with_r => {
            out.push(exp(
                "precartier",
                0,
                "(A''_{C4})* has no non-trivial infinitesimal R-matrices",
            ));
        }
        FamilyKind::Radford { r, .. } if *r >= 2 => {
            out.push(exp(
                "rfree",
                0,
                "Radford algebras with r ≥ 2 have no non-trivial infinitesimal R-matrices",
            ));
        }
        FamilyKind::GroupAlgebra(_) if with_r => {
            out.push(exp("precartier", 0, "abelian group algebras have only χ = 0"));
        }
        _ => {}
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub precartier: Option<usize>,
    pub cartier: Option<usize>,
    pub z2: Option<usize>,
    pub b2: Option<usize>,
    pub h2: Option<usize>,
    pub rfree: usize,
}

impl Dims {
    pub fn get(&self, quantity: &str) -> Option<usize> {
        match quantity {
            "precartier" => self.precartier,
            "cartier" => self.cartier,
            "z2" => self.z2,
            "b2" => self.b2,
            "h2" => self.h2,
            "rfree" => Some(self.rfree),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    /// Both counit conditions hold on the computed solution space.
    pub counit_auto_satisfied: Option<bool>,
    /// The Cartier subspace equals the solution space cut with B².
    pub cartier_equals_coboundary_cut: Option<bool>,
    /// Every entry of `expected` agrees with the computed dimension.
    pub matches_paper_theorem: bool,
    /// Only a lower bound is known for this family; the dimension is reported, not checked.
    pub paper_partial: bool,
    /// For A_{C2^n}: `x⊗xg` lies in the solution space.
    pub contains_known_solution: Option<bool>,
    pub precartier_in_rfree: Option<bool>,
    pub precartier_in_z2: Option<bool>,
    /// For H_{2n²}: only group-supported R-matrices were searched.
    pub group_supported_r_assumed: bool,
}

/// Everything computed for one family and R-matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub family: String,
    pub params: Value,
    pub field: String,
    pub r: Option<String>,
    pub dims: Dims,
    pub basis: Vec<String>,
    pub cartier_basis: Vec<String>,
    pub flags: Flags,
    pub expected: Vec<Expected>,
    pub mismatches: Vec<String>,
}

impl ClassificationReport {
    /// Compares the dimensions against `table`, replacing the stored table.
    /// Entries for quantities that were not computed are dropped.
    pub fn apply_expected(&mut self, mut table: Vec<Expected>) {
        table.retain(|e| self.dims.get(&e.quantity).is_some());
        self.mismatches = table
            .iter()
            .filter_map(|e| {
                let v = self.dims.get(&e.quantity)?;
                (v != e.value).then(|| format!("{}: expected {}, computed {v} ({})", e.quantity, e.value, e.statement))
            })
            .collect();
        self.flags.matches_paper_theorem = self.mismatches.is_empty();
        self.expected = table;
    }
}

fn family_params(kind: &FamilyKind) -> (String, Value) {
    match kind {
        FamilyKind::GroupAlgebra(v) => ("group".into(), json!({ "orders": v })),
        FamilyKind::En(n) => ("en".into(), json!({ "n": n })),
        FamilyKind::AC2n(n) => ("ac2n".into(), json!({ "n": n })),
        FamilyKind::H2n2(n) => ("h2n2".into(), json!({ "n": n })),
        FamilyKind::H8 => ("h8".into(), json!({})),
        FamilyKind::Radford { r, n } => ("radford".into(), json!({ "r": r, "n": n })),
        FamilyKind::AC4Dual => ("ac4dual".into(), json!({})),
        FamilyKind::TensorProduct(a, b) => (
            "tensor".into(),
            json!({ "left": a.to_string(), "right": b.to_string() }),
        ),
    }
}

/// Classifies several R-matrices on one algebra, computing the R-independent
/// parts once.
pub struct Classifier<'a> {
    h: &'a HopfData,
    cohomology: bool,
    rfree: OnceLock<Subspace>,
    z2: OnceLock<Cohomology>,
}

impl<'a> Classifier<'a> {
    pub fn new(h: &'a HopfData) -> Self {
        Classifier {
            h,
            cohomology: true,
            rfree: OnceLock::new(),
            z2: OnceLock::new(),
        }
    }

    /// Skips Z², B² and H² (their dims are then reported as absent).
    pub fn without_cohomology(mut self) -> Self {
        self.cohomology = false;
        self
    }

    pub fn rfree(&self) -> Result<&Subspace> {
        if let Some(s) = self.rfree.get() {
            return Ok(s);
        }
        let s = solve_rfree(self.h)?;
        Ok(self.rfree.get_or_init(|| s))
    }

    pub fn cohomology(&self) -> Result<&Cohomology> {
        if let Some(c) = self.z2.get() {
            return Ok(c);
        }
        let c = cohomology(self.h, 2)?;
        Ok(self.z2.get_or_init(|| c))
    }

    pub fn classify(&self, rspec: Option<&RSpec>) -> Result<ClassificationReport> {
        let h = self.h;
        let kind = h.family().cloned();
        let (family, params) = kind.as_ref().map_or(("unnamed".into(), json!({})), family_params);
        let rfree = self.rfree()?;
        let co = if self.cohomology {
            Some(self.cohomology()?)
        } else {
            None
        };
        let mut dims = Dims {
            rfree: rfree.dim(),
            z2: co.map(|c| c.z.dim()),
            b2: co.map(|c| c.b.dim()),
            h2: co.map(Cohomology::h_dim),
            ..Dims::default()
        };
        let mut flags = Flags {
            paper_partial: matches!(kind, Some(FamilyKind::AC2n(n)) if n >= 3),
            group_supported_r_assumed: matches!(kind, Some(FamilyKind::H2n2(n)) if n >= 3),
            ..Flags::default()
        };
        let fmt = |s: &Subspace| -> Result<Vec<String>> {
            s.basis()
                .iter()
                .map(|v| Ok(h.format(&h.tensor_from_vec::<2>(v.clone())?)))
                .collect()
        };
        let (mut basis, mut cartier_basis) = (Vec::new(), Vec::new());
        if let Some(spec) = rspec {
            let r = build_r(h, spec)?;
            let chi = solve_infinitesimal(h, &r)?;
            let cart = cartier_subspace(h, &r, &chi);
            dims.precartier = Some(chi.dim());
            dims.cartier = Some(cart.dim());
            let maps = BlockMaps::new(h, None);
            flags.counit_auto_satisfied = Some(chi.basis().iter().all(|v| {
                maps.apply(BlockTag::CounitLeft, v).is_zero() && maps.apply(BlockTag::CounitRight, v).is_zero()
            }));
            flags.precartier_in_rfree = Some(chi.is_subspace_of(rfree)?);
            if let Some(co) = co {
                flags.precartier_in_z2 = Some(chi.is_subspace_of(&co.z)?);
                flags.cartier_equals_coboundary_cut = Some(cart == chi.intersect(&co.b)?);
            }
            if let Some(FamilyKind::AC2n(_)) = kind {
                let t = h.parse::<2>("x (x) x*g")?;
                flags.contains_known_solution = Some(chi.contains(t.coeffs()));
            }
            basis = fmt(&chi)?;
            cartier_basis = fmt(&cart)?;
        }
        let mut report = ClassificationReport {
            family,
            params,
            field: h.field().to_string(),
            r: rspec.map(ToString::to_string),
            dims,
            basis,
            cartier_basis,
            flags,
            expected: Vec::new(),
            mismatches: Vec::new(),
        };
        let table = kind.as_ref().map_or_else(Vec::new, |k| expected_dims(k, rspec));
        report.apply_expected(table);
        Ok(report)
    }
}

/// Builds the family and classifies one R-matrix (or only the R-free bound).
pub fn classify(spec: &FamilySpec, rspec: Option<&RSpec>) -> Result<ClassificationReport> {
    let h = build(spec)?;
    Classifier::new(&h).classify(rspec)
}
