//! Exhaustive axiom checks over basis tuples.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::HopfData;
use crate::linalg::SparseVec;

/// Outcome of one named identity checked over many instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    /// First failing instance, if any.
    pub witness: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn single(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        Check {
            name: name.into(),
            instances: 1,
            failures: usize::from(!ok),
            witness: (!ok).then(witness),
        }
    }

    /// Aggregates `(ok, witness)` outcomes in order.
    pub fn from_outcomes(name: impl Into<String>, outcomes: Vec<Option<String>>) -> Self {
        let instances = outcomes.len();
        let mut failures = 0;
        let mut witness = None;
        for o in outcomes.into_iter().flatten() {
            failures += 1;
            if witness.is_none() {
                witness = Some(o);
            }
        }
        Check {
            name: name.into(),
            instances,
            failures,
            witness,
        }
    }
}

/// A list of checks; passes when every check passes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: VerifyReport) {
        self.checks.extend(other.checks);
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAIL" };
            write!(f, "{status:4} {} ({} instances", c.name, c.instances)?;
            if c.failures > 0 {
                write!(f, ", {} failures", c.failures)?;
            }
            write!(f, ")")?;
            if let Some(w) = &c.witness {
                write!(f, " witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl HopfData {
    fn e(&self, i: usize) -> SparseVec {
        SparseVec::unit(self.field(), self.dim(), i)
    }

    fn lab(&self, i: usize) -> &str {
        &self.labels()[i]
    }

    /// Associativity, unit, coassociativity, counit, and multiplicativity of Δ and ε.
    pub fn verify_bialgebra(&self) -> VerifyReport {
        let d = self.dim();
        let u = self.unit_index();
        let field = self.field();
        let mult = &self.tables().mult;
        let comult = self.comult_table();
        let counit = &self.tables().counit;
        let mut r = VerifyReport::default();

        let assoc: Vec<Option<String>> = (0..d * d * d)
            .into_par_iter()
            .map(|t| {
                let (i, j, k) = (t / (d * d), (t / d) % d, t % d);
                let left = self.mul_raw(1, &mult[i * d + j], &self.e(k));
                let right = self.mul_raw(1, &self.e(i), &mult[j * d + k]);
                (left != right).then(|| format!("({})({})({})", self.lab(i), self.lab(j), self.lab(k)))
            })
            .collect();
        r.push(Check::from_outcomes("associativity", assoc));

        let unit: Vec<Option<String>> = (0..d)
            .map(|i| {
                let ok = mult[u * d + i] == self.e(i) && mult[i * d + u] == self.e(i);
                (!ok).then(|| self.lab(i).to_string())
            })
            .collect();
        r.push(Check::from_outcomes("unit", unit));

        let coassoc: Vec<Option<String>> = (0..d)
            .into_par_iter()
            .map(|i| {
                let l = self.map_slot(&comult[i], 2, 0, comult, 2);
                let rr = self.map_slot(&comult[i], 2, 1, comult, 2);
                (l != rr).then(|| self.lab(i).to_string())
            })
            .collect();
        r.push(Check::from_outcomes("coassociativity", coassoc));

        let eps = self.counit_images();
        let counit_law: Vec<Option<String>> = (0..d)
            .map(|i| {
                let l = self.map_slot(&comult[i], 2, 0, &eps, 0);
                let rr = self.map_slot(&comult[i], 2, 1, &eps, 0);
                (l != self.e(i) || rr != self.e(i)).then(|| self.lab(i).to_string())
            })
            .collect();
        r.push(Check::from_outcomes("counit", counit_law));

        let one2 = SparseVec::unit(field, d * d, u * d + u);
        r.push(Check::single("delta_unit", comult[u] == one2, || {
            self.lab(u).to_string()
        }));
        let dm: Vec<Option<String>> = (0..d * d)
            .into_par_iter()
            .map(|t| {
                let (i, j) = (t / d, t % d);
                let l = self.map_slot(&mult[t], 1, 0, comult, 2);
                let rr = self.mul_raw(2, &comult[i], &comult[j]);
                (l != rr).then(|| format!("({})({})", self.lab(i), self.lab(j)))
            })
            .collect();
        r.push(Check::from_outcomes("delta_multiplicative", dm));

        r.push(Check::single("counit_unit", counit[u].is_one(), || {
            self.lab(u).to_string()
        }));
        let em: Vec<Option<String>> = (0..d * d)
            .map(|t| {
                let (i, j) = (t / d, t % d);
                let mut l = field.zero();
                for (k, c) in mult[t].iter() {
                    l += &(c * &counit[k]);
                }
                (l != &counit[i] * &counit[j]).then(|| format!("({})({})", self.lab(i), self.lab(j)))
            })
            .collect();
        r.push(Check::from_outcomes("counit_multiplicative", em));
        r
    }

    /// [`verify_bialgebra`](Self::verify_bialgebra) plus both antipode identities.
    pub fn verify_hopf(&self) -> VerifyReport {
        let mut r = self.verify_bialgebra();
        let d = self.dim();
        let Ok(s) = self.antipode_table() else {
            r.push(Check::single("antipode_present", false, || "no antipode table".into()));
            return r;
        };
        let comult = self.comult_table();
        let counit = &self.tables().counit;
        let mult = &self.tables().mult;
        let anti: Vec<Option<String>> = (0..d)
            .into_par_iter()
            .map(|i| {
                let expected = SparseVec::unit(self.field(), d, self.unit_index()).scale(&counit[i]);
                let mut bad = Vec::new();
                for slot in 0..2 {
                    let t = self.map_slot(&comult[i], 2, slot, s, 1);
                    let mut acc = crate::linalg::Accumulator::new(self.field(), d);
                    for (idx, c) in t.iter() {
                        acc.add_vec(c, &mult[idx]);
                    }
                    if acc.finish() != expected {
                        bad.push(if slot == 0 { "m(S⊗Id)Δ" } else { "m(Id⊗S)Δ" });
                    }
                }
                (!bad.is_empty()).then(|| format!("{} at {}", bad.join(","), self.lab(i)))
            })
            .collect();
        r.push(Check::from_outcomes("antipode", anti));
        r
    }
}
