//! Elements of Q(ζ_M) as polynomials in t reduced modulo Φ_M(t).

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use smallvec::SmallVec;

use super::rational::Rational;
use crate::error::{Error, Result};

pub(crate) type Coeffs = SmallVec<[Rational; 2]>;

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut out = m;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Integer coefficients of Φ_M, lowest degree first.
pub fn cyclotomic_poly(m: u32) -> Vec<i64> {
    // Φ_M = (t^M - 1) / prod_{d | M, d < M} Φ_d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (i, &di) in den.iter().enumerate() {
                rem[k + i] -= c * di;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

thread_local! {
    static PHI_CACHE: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

pub(crate) fn phi_poly(order: u32) -> Rc<Vec<i64>> {
    PHI_CACHE.with(|c| {
        c.borrow_mut()
            .entry(order)
            .or_insert_with(|| Rc::new(cyclotomic_poly(order)))
            .clone()
    })
}

pub(crate) fn trim(c: &mut Coeffs) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

/// Reduce a coefficient vector modulo Φ_order and trim trailing zeros.
pub(crate) fn reduce(order: u32, mut c: Vec<Rational>) -> Coeffs {
    let phi = phi_poly(order);
    let deg = phi.len() - 1;
    if c.len() > deg {
        for k in (deg..c.len()).rev() {
            if c[k].is_zero() {
                continue;
            }
            let lead = std::mem::take(&mut c[k]);
            for (i, &pi) in phi[..deg].iter().enumerate() {
                if pi != 0 {
                    let t = lead.mul(&Rational::from_int(pi));
                    c[k - deg + i] = c[k - deg + i].sub(&t);
                }
            }
        }
        c.truncate(deg);
    }
    let mut out: Coeffs = c.into_iter().collect();
    trim(&mut out);
    out
}

pub(crate) fn add(a: &[Rational], b: &[Rational]) -> Coeffs {
    let n = a.len().max(b.len());
    let mut out: Coeffs = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[Rational]) -> Coeffs {
    a.iter().map(Rational::neg).collect()
}

pub(crate) fn scale(a: &[Rational], r: &Rational) -> Coeffs {
    if r.is_zero() {
        return Coeffs::new();
    }
    a.iter().map(|x| x.mul(r)).collect()
}

pub(crate) fn mul(order: u32, a: &[Rational], b: &[Rational]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Coeffs::new();
    }
    if a.len() == 1 {
        return scale(b, &a[0]);
    }
    if b.len() == 1 {
        return scale(a, &b[0]);
    }
    let mut prod = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] = prod[i + j].add(&x.mul(y));
            }
        }
    }
    reduce(order, prod)
}

/// Inverse via the multiplication-by-a matrix on the power basis.
#[allow(clippy::needless_range_loop)]
pub(crate) fn inv(order: u32, a: &[Rational]) -> Result<Coeffs> {
    if a.is_empty() {
        return Err(Error::DivisionByZero);
    }
    if a.len() == 1 {
        let mut out = Coeffs::new();
        out.push(a[0].inv()?);
        return Ok(out);
    }
    let deg = phi_poly(order).len() - 1;
    // column j of the matrix is a * t^j
    let mut cols: Vec<Coeffs> = Vec::with_capacity(deg);
    for j in 0..deg {
        let mut tj = vec![Rational::zero(); j + 1];
        tj[j] = Rational::one();
        cols.push(mul(order, a, &tj));
    }
    // augmented rows: [M | e_0]
    let mut m: Vec<Vec<Rational>> = (0..deg)
        .map(|i| {
            let mut row: Vec<Rational> = (0..deg).map(|j| cols[j].get(i).cloned().unwrap_or_default()).collect();
            row.push(if i == 0 { Rational::one() } else { Rational::zero() });
            row
        })
        .collect();
    for c in 0..deg {
        let p = (c..deg).find(|&r| !m[r][c].is_zero()).ok_or(Error::DivisionByZero)?;
        m.swap(c, p);
        let pinv = m[c][c].inv()?;
        for x in m[c].iter_mut() {
            *x = x.mul(&pinv);
        }
        for r in 0..deg {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..=deg {
                    let t = f.mul(&m[c][k]);
                    m[r][k] = m[r][k].sub(&t);
                }
            }
        }
    }
    let mut out: Coeffs = m.into_iter().map(|row| row[deg].clone()).collect();
    trim(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        for m in 1..40u32 {
            assert_eq!(cyclotomic_poly(m).len() as u64 - 1, totient(m as u64));
        }
    }
}
