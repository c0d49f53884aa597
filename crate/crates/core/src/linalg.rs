//! Linear algebra over the scalar field and over a prime field image of it.
//!
//! Rank decisions on large candidate families are made after evaluating at a
//! fixed point modulo a 61-bit prime; every value that is reported is then
//! recomputed exactly on the selected square subsystem.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::scalars::{inv_mod, Scalar, MOD_P};

/// Operations shared by [`Scalar`] and [`Fp`].
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_scalar(s: &Scalar) -> Self;
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        Scalar::inv(self).ok()
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
}

/// Evaluation point for the modular image of `v`.
pub const EVAL_POINT: u64 = 0x1d2c_3b4a_5968_7786 % MOD_P;

/// Element of `Z/pZ`, `p = 2^61 - 1`, standing for a scalar evaluated at [`EVAL_POINT`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp(pub u64);

impl Coeff for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= MOD_P { s - MOD_P } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + MOD_P - o.0 })
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % MOD_P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { MOD_P - self.0 })
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(Fp(inv_mod(self.0, MOD_P)))
        }
    }
    fn from_scalar(s: &Scalar) -> Self {
        Fp(s.eval_mod(EVAL_POINT).expect("scalar has a pole at the evaluation point"))
    }
}

pub type Matrix<C> = Vec<Vec<C>>;

/// Greedy maximal independent subset of rows, scanning in order. Returns the
/// chosen row indices.
pub fn independent_rows<C: Coeff>(m: &Matrix<C>) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<C>)> = Vec::new(); // (pivot column, reduced row)
    let mut chosen = Vec::new();
    for (r, row) in m.iter().enumerate() {
        let mut row = row.clone();
        for (pc, b) in &basis {
            if !row[*pc].is_zero() {
                let f = row[*pc].clone();
                for (x, y) in row.iter_mut().zip(b) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        if let Some(pc) = row.iter().position(|x| !x.is_zero()) {
            let inv = row[pc].inv().expect("nonzero");
            for x in row.iter_mut() {
                *x = x.mul(&inv);
            }
            basis.push((pc, row));
            chosen.push(r);
        }
    }
    chosen
}

pub fn rank<C: Coeff>(m: &Matrix<C>) -> usize {
    independent_rows(m).len()
}

fn pivot_key(s: &Scalar) -> (i64, usize) {
    let size: usize = s.numer().terms().len() + s.denom().terms().len();
    (s.val0().unwrap_or(i64::MAX), size)
}

/// Reduced row echelon form over the scalar field. Pivots are chosen column by
/// column among the remaining rows, preferring the entry of least valuation at 0.
pub fn rref(mut m: Matrix<Scalar>) -> (Matrix<Scalar>, Vec<usize>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows).filter(|&k| !m[k][c].is_zero()).min_by_key(|&k| pivot_key(&m[k][c]));
        let k = match best {
            Some(k) => k,
            None => continue,
        };
        m.swap(r, k);
        let inv = m[r][c].inv().expect("nonzero pivot");
        m[r] = m[r].iter().map(|x| x * &inv).collect();
        for k in 0..rows {
            if k != r && !m[k][c].is_zero() {
                let f = m[k][c].clone();
                let pr = m[r].clone();
                for (x, y) in m[k].iter_mut().zip(&pr) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank_exact(m: &Matrix<Scalar>) -> usize {
    rref(m.clone()).1.len()
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn solve(a: &Matrix<Scalar>, b: &[Scalar]) -> Result<Vec<Scalar>> {
    let n = a.len();
    let aug: Matrix<Scalar> = a
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (red, piv) = rref(aug);
    if piv.len() != n || piv.iter().any(|&p| p >= n) {
        return Err(Error::Invalid("singular linear system".into()));
    }
    Ok(red.iter().map(|row| row[n].clone()).collect())
}

/// Inverse of a square nonsingular matrix.
pub fn inverse(a: &Matrix<Scalar>) -> Result<Matrix<Scalar>> {
    let n = a.len();
    let aug: Matrix<Scalar> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let (red, piv) = rref(aug);
    if piv.len() != n || piv.iter().any(|&p| p >= n) {
        return Err(Error::Invalid("singular matrix".into()));
    }
    Ok(red.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mat_vec(a: &Matrix<Scalar>, x: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|row| row.iter().zip(x).filter(|(p, q)| !p.is_zero() && !q.is_zero()).map(|(p, q)| p * q).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(k: i64) -> Scalar {
        Scalar::from_int(k)
    }

    #[test]
    fn solve_small() {
        let a = vec![vec![s(2), s(1)], vec![s(1), Scalar::v_pow(1)]];
        let x = solve(&a, &[s(1), s(0)]).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![s(1), s(0)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_vec(&inv, &[s(1), s(0)]), x);
    }

    #[test]
    fn ranks_agree() {
        let v = Scalar::v_pow(1);
        let m = vec![vec![s(1), v.clone()], vec![v.clone(), &v * &v]];
        assert_eq!(rank_exact(&m), 1);
        let mf: Matrix<Fp> = m.iter().map(|r| r.iter().map(Fp::from_scalar).collect()).collect();
        assert_eq!(rank(&mf), 1);
        assert_eq!(independent_rows(&mf), vec![0]);
    }

    #[test]
    fn fp_field_laws() {
        let a = Fp::from_scalar(&Scalar::v_pow(3));
        let b = a.inv().unwrap();
        assert_eq!(a.mul(&b), Fp::one());
        assert_eq!(a.sub(&a), Fp::zero());
        assert_eq!(a.add(&a.neg()), Fp::zero());
    }
}
