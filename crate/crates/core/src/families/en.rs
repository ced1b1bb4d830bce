use super::{assemble, Draft, FamilyKind, GenData};
use crate::error::Result;
use crate::hopf::HopfData;
use crate::linalg::SparseVec;
use crate::scalars::FieldSpec;

/// Basis index of `g^j x_P` in E(n), with `P` given as a bitmask (bit `i-1` for `x_i`).
pub fn en_index(j: usize, mask: usize) -> usize {
    mask * 2 + j
}

/// Sign exponents for reordering products of the `x_i` in E(n).
#[derive(Clone, Debug)]
pub struct SignTables {
    n: usize,
    big_s: Vec<i32>,
    small_s: Vec<u8>,
}

impl SignTables {
    pub fn new(n: usize) -> Self {
        let nn = 1usize << n;
        let mut big_s = vec![0; nn * nn];
        let mut small_s = vec![0; nn * n];
        for p in 0..nn {
            let members: Vec<usize> = (0..n).filter(|i| p >> i & 1 == 1).collect();
            // F ⊆ P: sum of 1-based positions of F inside P, minus r(r+1)/2.
            let mut f = p;
            loop {
                let mut pos_sum = 0i32;
                let mut r = 0i32;
                for (k, &i) in members.iter().enumerate() {
                    if f >> i & 1 == 1 {
                        pos_sum += k as i32 + 1;
                        r += 1;
                    }
                }
                big_s[p * nn + f] = pos_sum - r * (r + 1) / 2;
                if f == 0 {
                    break;
                }
                f = (f - 1) & p;
            }
            for &i in &members {
                small_s[p * n + i] = members.iter().filter(|&&k| k > i).count() as u8;
            }
        }
        SignTables { n, big_s, small_s }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `S(F, P)` for bitmasks `f ⊆ p`.
    pub fn big_s(&self, f: usize, p: usize) -> i32 {
        debug_assert_eq!(f & !p, 0);
        self.big_s[p * (1 << self.n) + f]
    }

    /// `s(P, i)` for `i` (1-based) in `P`: the number of members of `P` above `i`.
    pub fn small_s(&self, p: usize, i: usize) -> u8 {
        debug_assert!(p >> (i - 1) & 1 == 1);
        self.small_s[p * self.n + i - 1]
    }

    /// Parity of the permutation sorting the concatenation `x_P x_Q` (disjoint `P`, `Q`).
    pub fn merge_sign(p: usize, q: usize) -> u32 {
        let mut inv = 0;
        let mut rest = q;
        while rest != 0 {
            let b = rest.trailing_zeros();
            inv += (p >> (b + 1)).count_ones();
            rest &= rest - 1;
        }
        inv
    }
}

pub(super) fn label(j: usize, mask: usize, n: usize) -> String {
    let p: Vec<String> = (1..=n)
        .filter(|i| mask >> (i - 1) & 1 == 1)
        .map(|i| i.to_string())
        .collect();
    format!("g^{j}*x{{{}}}", p.join(","))
}

pub(super) fn build(field: FieldSpec, n: usize) -> Result<HopfData> {
    field.require_invertible(2, "E(n) needs characteristic other than 2")?;
    let nn = 1usize << n;
    let d = 2 * nn;
    let signs = SignTables::new(n);
    let sgn = |e: u32| {
        if e.is_multiple_of(2) {
            field.one()
        } else {
            field.int(-1)
        }
    };
    let mut labels = vec![String::new(); d];
    let mut words = vec![String::new(); d];
    let mut factors = vec![Vec::new(); d];
    for mask in 0..nn {
        for j in 0..2 {
            let i = en_index(j, mask);
            labels[i] = label(j, mask, n);
            let mut w: Vec<String> = Vec::new();
            if j == 1 {
                w.push("g".into());
                factors[i].push(0);
            }
            for k in 1..=n {
                if mask >> (k - 1) & 1 == 1 {
                    w.push(format!("x{k}"));
                    factors[i].push(k);
                }
            }
            words[i] = if w.is_empty() { "1".into() } else { w.join("*") };
        }
    }
    let mut mult = Vec::with_capacity(d * d);
    for a in 0..d {
        let (j, p) = (a % 2, a / 2);
        for b in 0..d {
            let (k, q) = (b % 2, b / 2);
            if p & q != 0 {
                mult.push(SparseVec::zero(field, d));
                continue;
            }
            let e = p.count_ones() * k as u32 + SignTables::merge_sign(p, q);
            mult.push(SparseVec::unit(field, d, en_index((j + k) % 2, p | q)).scale(&sgn(e)));
        }
    }
    let mut gens = vec![("g".to_string(), en_index(1, 0))];
    for k in 1..=n {
        gens.push((format!("x{k}"), en_index(0, 1 << (k - 1))));
    }
    let e = |i: usize| SparseVec::unit(field, d, i);
    let e2 = |a: usize, b: usize| SparseVec::unit(field, d * d, a * d + b);
    let g = en_index(1, 0);
    let one = en_index(0, 0);
    let mut gd = GenData {
        delta: vec![e2(g, g)],
        counit: vec![field.one()],
        antipode: vec![e(g)],
    };
    for k in 1..=n {
        let x = en_index(0, 1 << (k - 1));
        let gx = en_index(1, 1 << (k - 1));
        gd.delta.push(e2(x, one).add(&e2(g, x)));
        gd.counit.push(field.zero());
        gd.antipode.push(e(gx).neg());
    }

    // Closed forms for Δ(g^j x_P) and S(g^j x_P).
    let mut comult = Vec::with_capacity(d);
    let mut antipode = Vec::with_capacity(d);
    for i in 0..d {
        let (j, p) = (i % 2, i / 2);
        let mut entries = Vec::new();
        let mut f = p;
        loop {
            let s = signs.big_s(f, p);
            let left = en_index((f.count_ones() as usize + j) % 2, p & !f);
            let right = en_index(j, f);
            entries.push((left * d + right, sgn(s.rem_euclid(2) as u32)));
            if f == 0 {
                break;
            }
            f = (f - 1) & p;
        }
        comult.push(SparseVec::from_entries(field, d * d, entries));
        let sz = p.count_ones() as usize;
        antipode.push(e(en_index((sz + j) % 2, p)).scale(&sgn((sz * (j + 1)) as u32)));
    }

    let draft = Draft {
        field,
        family: FamilyKind::En(n),
        labels,
        words,
        gens,
        factors,
        mult,
        unit: one,
    };
    assemble(draft, gd, Some(comult), Some(antipode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_unchecked, FamilySpec};

    fn e(n: usize) -> HopfData {
        build_unchecked(&FamilySpec::new(FamilyKind::En(n), FieldSpec::RATIONAL)).unwrap()
    }

    #[test]
    fn labels_are_canonical() {
        let h = e(3);
        assert_eq!(h.labels()[en_index(1, 0b101)], "g^1*x{1,3}");
        assert_eq!(h.labels()[0], "g^0*x{}");
        assert_eq!(h.words()[en_index(1, 0b101)], "g*x1*x3");
    }

    #[test]
    fn sign_tables_match_transposition_oracle() {
        for n in 1..=4 {
            let h = e(n);
            let t = SignTables::new(n);
            for p in 0..1usize << n {
                assert_eq!(t.big_s(0, p), 0);
                assert_eq!(t.big_s(p, p), 0);
                for i in 1..=n {
                    if p >> (i - 1) & 1 == 0 {
                        continue;
                    }
                    let rest = h.basis(en_index(0, p & !(1 << (i - 1))));
                    let xi = h.gen(&format!("x{i}")).unwrap();
                    let mut rhs = h.mul(&rest, &xi);
                    if t.small_s(p, i) % 2 == 1 {
                        rhs = -rhs;
                    }
                    assert_eq!(h.basis(en_index(0, p)), rhs, "n={n} P={p:b} i={i}");
                }
            }
        }
    }

    #[test]
    fn closed_coproduct_matches_generator_products() {
        for n in 1..=4 {
            let h = e(n);
            for i in 0..h.dim() {
                let word: Vec<&str> = if h.words()[i] == "1" {
                    vec![]
                } else {
                    h.words()[i].split('*').collect()
                };
                let mut acc = h.one::<2>();
                for w in &word {
                    acc = h.mul(&acc, &h.delta(&h.gen(w).unwrap()));
                }
                assert_eq!(h.delta(&h.basis(i)), acc, "n={n} {}", h.labels()[i]);
            }
        }
    }

    #[test]
    fn antipode_squared_is_conjugation_by_g() {
        let h = e(3);
        let g = h.gen("g").unwrap();
        for i in 0..h.dim() {
            let b = h.basis(i);
            let s2 = h.antipode(&h.antipode(&b).unwrap()).unwrap();
            assert_eq!(s2, h.product(&[&g, &b, &g]));
        }
    }

    #[test]
    fn refuses_characteristic_two() {
        assert!(build_unchecked(&FamilySpec::new(FamilyKind::En(1), FieldSpec::prime(2).unwrap())).is_err());
    }
}
