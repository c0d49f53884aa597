//! The commutative subalgebra generated by the `H(i,s)` at a single node,
//! modelled as symmetric functions in the power-sum basis.
//!
//! `H(i,s)` corresponds to `p_s`. The families `xi`, `chi` and `theta` are the
//! coefficients of the exponential generating series
//!
//! ```text
//! xi(z)    = exp(  sum_s H_s / [s] z^s )
//! chi(z)   = exp( -sum_s H_s / [s] z^s )
//! theta(z) = exp( (v^-1 - v) sum_s H_s z^s )
//! ```
//!
//! and the Schur element `b(i, lambda)` is the Jacobi-Trudi determinant in the
//! `xi` family.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::scalars::{qint, Scalar};

/// A partition, stored with weakly decreasing positive parts.
pub type Partition = Vec<u32>;

/// Sorts parts decreasingly and drops zeros.
pub fn normalize_partition(mut parts: Vec<u32>) -> Partition {
    parts.retain(|&p| p > 0);
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Node-free linear combination of power-sum monomials.
pub type PowerSum = BTreeMap<Partition, Scalar>;

fn ps_add_into(acc: &mut PowerSum, lam: Partition, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&lam) {
        Some(x) => {
            *x = &*x + &c;
            if x.is_zero() {
                acc.remove(&lam);
            }
        }
        None => {
            acc.insert(lam, c);
        }
    }
}

fn merge_partitions(a: &[u32], b: &[u32]) -> Partition {
    let mut v: Vec<u32> = a.iter().chain(b.iter()).copied().collect();
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

fn ps_mul(a: &PowerSum, b: &PowerSum) -> PowerSum {
    let mut out = PowerSum::new();
    for (la, ca) in a {
        for (lb, cb) in b {
            ps_add_into(&mut out, merge_partitions(la, lb), ca * cb);
        }
    }
    out
}

fn ps_one() -> PowerSum {
    let mut m = PowerSum::new();
    m.insert(Vec::new(), Scalar::one());
    m
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Family {
    Xi,
    Chi,
    Theta,
}

fn family_weight(f: Family, r: i64) -> Scalar {
    // coefficient of p_r z^r inside the exponent
    match f {
        Family::Xi => qint(r).inv().expect("[r] is nonzero for r >= 1"),
        Family::Chi => -qint(r).inv().expect("[r] is nonzero for r >= 1"),
        Family::Theta => &Scalar::v_pow(-1) - &Scalar::v_pow(1),
    }
}

fn family_cache() -> &'static Mutex<HashMap<Family, Vec<PowerSum>>> {
    static C: OnceLock<Mutex<HashMap<Family, Vec<PowerSum>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Degree-`s` coefficient of `exp(sum_r c_r p_r z^r)` via
/// `s f_s = sum_{r=1}^s r c_r p_r f_{s-r}`.
fn family_coeff(f: Family, s: usize) -> PowerSum {
    let mut cache = family_cache().lock().expect("symfunc cache poisoned");
    let seq = cache.entry(f).or_insert_with(|| vec![ps_one()]);
    while seq.len() <= s {
        let n = seq.len();
        let mut acc = PowerSum::new();
        for r in 1..=n {
            let c = &family_weight(f, r as i64) * &Scalar::from_int(r as i64);
            for (lam, x) in &seq[n - r] {
                ps_add_into(&mut acc, merge_partitions(lam, &[r as u32]), &c * x);
            }
        }
        let inv_n = Scalar::from_int(n as i64).inv().expect("n >= 1");
        let acc = acc.into_iter().map(|(l, c)| (l, &c * &inv_n)).collect();
        seq.push(acc);
    }
    seq[s].clone()
}

/// Element of the symmetric-function algebra attached to one node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymElement {
    pub node: usize,
    pub coeffs: PowerSum,
}

impl SymElement {
    pub fn zero(node: usize) -> Self {
        SymElement { node, coeffs: PowerSum::new() }
    }

    pub fn one(node: usize) -> Self {
        SymElement { node, coeffs: ps_one() }
    }

    /// The power-sum monomial `p_lambda`.
    pub fn power_sum(node: usize, lam: &[u32]) -> Self {
        let mut coeffs = PowerSum::new();
        coeffs.insert(normalize_partition(lam.to_vec()), Scalar::one());
        SymElement { node, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &SymElement) -> SymElement {
        let mut c = self.coeffs.clone();
        for (l, x) in &o.coeffs {
            ps_add_into(&mut c, l.clone(), x.clone());
        }
        SymElement { node: self.node, coeffs: c }
    }

    pub fn sub(&self, o: &SymElement) -> SymElement {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> SymElement {
        let mut c = PowerSum::new();
        for (l, x) in &self.coeffs {
            ps_add_into(&mut c, l.clone(), x * s);
        }
        SymElement { node: self.node, coeffs: c }
    }

    pub fn mul(&self, o: &SymElement) -> SymElement {
        SymElement { node: self.node, coeffs: ps_mul(&self.coeffs, &o.coeffs) }
    }

    pub fn bar(&self) -> SymElement {
        SymElement {
            node: self.node,
            coeffs: self.coeffs.iter().map(|(l, c)| (l.clone(), c.bar())).collect(),
        }
    }
}

fn checked_degree(s: i64) -> Result<usize> {
    if s < 0 {
        Err(Error::NegativeDegree(s))
    } else {
        Ok(s as usize)
    }
}

/// `xi(i,s)` in power sums.
pub fn xi_coeff(node: usize, s: i64) -> Result<SymElement> {
    Ok(SymElement { node, coeffs: family_coeff(Family::Xi, checked_degree(s)?) })
}

/// `chi(i,s)` in power sums.
pub fn chi_coeff(node: usize, s: i64) -> Result<SymElement> {
    Ok(SymElement { node, coeffs: family_coeff(Family::Chi, checked_degree(s)?) })
}

/// `theta(i,s)` in power sums.
pub fn theta_coeff(node: usize, s: i64) -> Result<SymElement> {
    Ok(SymElement { node, coeffs: family_coeff(Family::Theta, checked_degree(s)?) })
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap's algorithm with sign tracking
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut even = true;
    out.push((a.clone(), even));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            even = !even;
            out.push((a.clone(), even));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Schur element `b(i, lambda) = det(xi_{lambda_r - r + c})`.
pub fn schur(node: usize, lam: &[u32]) -> SymElement {
    let lam = normalize_partition(lam.to_vec());
    let l = lam.len();
    if l == 0 {
        return SymElement::one(node);
    }
    let entry = |r: usize, c: usize| -> Option<PowerSum> {
        let k = lam[r] as i64 - r as i64 + c as i64;
        if k < 0 {
            None
        } else {
            Some(family_coeff(Family::Xi, k as usize))
        }
    };
    let mut acc = PowerSum::new();
    'perm: for (perm, even) in permutations(l) {
        let mut prod = ps_one();
        for (r, &c) in perm.iter().enumerate() {
            match entry(r, c) {
                Some(e) => prod = ps_mul(&prod, &e),
                None => continue 'perm,
            }
        }
        let sign = if even { Scalar::one() } else { Scalar::from_int(-1) };
        for (lam, x) in prod {
            ps_add_into(&mut acc, lam, &x * &sign);
        }
    }
    SymElement { node, coeffs: acc }
}

fn factorial(k: u32) -> Scalar {
    Scalar::from_int((1..=k as i64).product::<i64>().max(1))
}

/// Norm of `p_lambda` given the per-part value `g(m)` for `(p_m, p_m)`.
pub fn power_sum_norm<F: Fn(u32) -> Scalar>(lam: &[u32], g: F) -> Scalar {
    let mut out = Scalar::one();
    let mut k = 0usize;
    while k < lam.len() {
        let m = lam[k];
        let mut mult = 0u32;
        while k < lam.len() && lam[k] == m {
            out = &out * &g(m);
            mult += 1;
            k += 1;
        }
        out = &out * &factorial(mult);
    }
    out
}

/// `(p_m, p_m) = [2m] / (m (v^-1 - v))`.
pub fn h_norm(m: u32) -> Scalar {
    let den = &(&Scalar::v_pow(-1) - &Scalar::v_pow(1)) * &Scalar::from_int(m as i64);
    qint(2 * m as i64).checked_div(&den).expect("nonzero")
}

/// The diagonal pairing on one node's symmetric functions; distinct nodes pair to zero.
pub fn pair_h(x: &SymElement, y: &SymElement) -> Scalar {
    if x.node != y.node {
        return Scalar::zero();
    }
    let mut acc = Scalar::zero();
    for (lam, cx) in &x.coeffs {
        if let Some(cy) = y.coeffs.get(lam) {
            acc = &acc + &(&(cx * cy) * &power_sum_norm(lam, h_norm));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vmv() -> Scalar {
        &Scalar::v_pow(-1) - &Scalar::v_pow(1)
    }

    #[test]
    fn theta_low_degrees() {
        assert_eq!(theta_coeff(0, 0).unwrap(), SymElement::one(0));
        assert_eq!(theta_coeff(0, 1).unwrap(), SymElement::power_sum(0, &[1]).scale(&vmv()));
        assert!(theta_coeff(0, -1).is_err());
    }

    #[test]
    fn xi_degree_one_is_p1() {
        assert_eq!(xi_coeff(0, 1).unwrap(), SymElement::power_sum(0, &[1]));
    }

    #[test]
    fn schur_small() {
        assert_eq!(schur(0, &[1]), SymElement::power_sum(0, &[1]));
        // h2 = p2/[2] + p1^2/2
        let h2 = xi_coeff(0, 2).unwrap();
        let expect = SymElement::power_sum(0, &[2])
            .scale(&qint(2).inv().unwrap())
            .add(&SymElement::power_sum(0, &[1, 1]).scale(&Scalar::from_int(1).checked_div(&Scalar::from_int(2)).unwrap()));
        assert_eq!(h2, expect);
        assert_eq!(schur(0, &[2]), h2);
        let h1 = xi_coeff(0, 1).unwrap();
        assert_eq!(schur(0, &[1, 1]), h1.mul(&h1).sub(&h2));
    }

    #[test]
    fn pair_h_examples() {
        let p1 = SymElement::power_sum(0, &[1]);
        let p2 = SymElement::power_sum(0, &[2]);
        assert_eq!(pair_h(&p1, &p1), qint(2).checked_div(&vmv()).unwrap());
        assert!(pair_h(&p1, &p2).is_zero());
        let t1 = theta_coeff(0, 1).unwrap();
        assert_eq!(pair_h(&t1, &t1), &Scalar::v_pow(-2) - &Scalar::v_pow(2));
        assert!(pair_h(&p1, &SymElement::power_sum(1, &[1])).is_zero());
    }

    #[test]
    fn partitions_count() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }
}
