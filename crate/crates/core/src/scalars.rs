//! Exact arithmetic in the rational function field `Q(v)`.
//!
//! A [`Laurent`] is a sparse integer Laurent polynomial in `v`; a [`Scalar`]
//! is a reduced quotient of two of them. Every constructor and operation
//! leaves the value in canonical form, so structural equality is equality
//! of rational functions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer Laurent polynomial, stored as `(exponent, coefficient)` pairs with
/// strictly increasing exponents and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: Vec<(i64, BigInt)>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Laurent { terms: vec![(exp, c)] }
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(it: I) -> Self {
        let mut v: Vec<(i64, BigInt)> = it.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Laurent { terms: out }
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.terms.last().map(|t| &t.1)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        Laurent { terms }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_int(&self, c: &BigInt) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, x)| (*e, x / c)).collect(),
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let take = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match take {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Laurent { terms: out }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return Laurent {
                terms: self.terms.iter().map(|(x, y)| (x + e, y * c)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return other.mul_ref(self);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.max_exp().unwrap() + other.max_exp().unwrap();
        let width = (hi - lo + 1) as usize;
        if width <= 4 * (self.terms.len() * other.terms.len()) + 64 {
            let mut dense = vec![BigInt::zero(); width];
            for (ea, ca) in &self.terms {
                for (eb, cb) in &other.terms {
                    dense[(ea + eb - lo) as usize] += ca * cb;
                }
            }
            Laurent {
                terms: dense
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (lo + k as i64, c))
                    .collect(),
            }
        } else {
            Laurent::from_terms(
                self.terms
                    .iter()
                    .flat_map(|(ea, ca)| other.terms.iter().map(move |(eb, cb)| (ea + eb, ca * cb))),
            )
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Laurent::one();
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Value at `v = a` in `Z/pZ`.
    pub fn eval_mod(&self, a: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let cm = bigint_mod(c, p);
            let pw = if *e >= 0 {
                pow_mod(a, *e as u64, p)
            } else {
                inv_mod(pow_mod(a, (-e) as u64, p), p)
            };
            acc = ((acc as u128 + (cm as u128 * pw as u128) % p as u128) % p as u128) as u64;
        }
        acc
    }

    // Dense coefficient vector of `self * v^{-min_exp}`; index = degree.
    fn to_dense(&self) -> Vec<BigInt> {
        let lo = match self.min_exp() {
            Some(e) => e,
            None => return Vec::new(),
        };
        let mut d = vec![BigInt::zero(); (self.max_exp().unwrap() - lo + 1) as usize];
        for (e, c) in &self.terms {
            d[(e - lo) as usize] = c.clone();
        }
        d
    }

    fn from_dense(d: Vec<BigInt>, lo: i64) -> Self {
        Laurent {
            terms: d
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (lo + k as i64, c))
                .collect(),
        }
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        self.merge(o, false)
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        self.merge(o, true)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        self.mul_ref(o)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

pub(crate) const MOD_P: u64 = (1u64 << 61) - 1;

fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.iter_u64_digits().next().unwrap_or(0)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * a as u128) % p as u128) as u64;
        }
        a = ((a as u128 * a as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

// ---------------------------------------------------------------------------
// dense polynomial helpers (degree-indexed, nonnegative exponents)

fn trim(p: &mut Vec<BigInt>) {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
}

fn dense_content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let c = dense_content(&p);
    if !c.is_zero() && !c.is_one() {
        for x in p.iter_mut() {
            *x /= &c;
        }
    }
    p
}

/// Pseudo-remainder of `a` by `b` (b nonzero).
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        let off = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[off + k] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let ca = dense_content(a);
    let cb = dense_content(b);
    let c = ca.gcd(&cb);
    if a.len() == 1 || b.len() == 1 {
        return vec![c];
    }
    let (mut x, mut y) = if a.len() >= b.len() {
        (primitive(a.to_vec()), primitive(b.to_vec()))
    } else {
        (primitive(b.to_vec()), primitive(a.to_vec()))
    };
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![c];
        }
        let r = prem(&x, &y);
        x = y;
        y = primitive(r);
    }
    let mut g: Vec<BigInt> = x.into_iter().map(|t| t * &c).collect();
    if g.last().map_or(false, |l| l.is_negative()) {
        for t in g.iter_mut() {
            *t = -&*t;
        }
    }
    g
}

/// Exact division `a / b` over `Z[v]`; `b` must divide `a`.
fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return Vec::new();
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = &r[dr] / &b[db];
        let off = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[off + k] -= &c * bc;
        }
        q[off] = c;
        trim(&mut r);
    }
    q
}

/// Greatest common divisor in `Z[v]` of two Laurent polynomials, returned
/// with lowest exponent zero and positive leading coefficient. Powers of `v`
/// are ignored (they are units in the Laurent ring).
fn laurent_gcd(a: &Laurent, b: &Laurent) -> Laurent {
    if a.terms.len() == 1 || b.terms.len() == 1 {
        let g = a.content().gcd(&b.content());
        return Laurent::monomial(g, 0);
    }
    Laurent::from_dense(dense_gcd(&a.to_dense(), &b.to_dense()), 0)
}

fn laurent_div_exact(a: &Laurent, b: &Laurent) -> Laurent {
    if b.is_one() {
        return a.clone();
    }
    if b.terms.len() == 1 {
        let (e, c) = &b.terms[0];
        return a.div_int(c).shift(-e);
    }
    let lo = a.min_exp().unwrap_or(0) - b.min_exp().unwrap_or(0);
    Laurent::from_dense(dense_div_exact(&a.to_dense(), &b.to_dense()), lo)
}

// ---------------------------------------------------------------------------

/// Rational function in `v` with integer coefficients, kept in canonical
/// form: `num / den` coprime in `Z[v]`, `den` with lowest exponent zero and
/// positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Laurent,
    den: Laurent,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Laurent::zero(), den: Laurent::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Laurent::one(), den: Laurent::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Scalar { num: Laurent::from_int(c), den: Laurent::one() }
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Scalar { num: Laurent::monomial(c, 0), den: Laurent::one() }
    }

    /// `v^k`.
    pub fn v_pow(k: i64) -> Self {
        Scalar { num: Laurent::monomial(BigInt::one(), k), den: Laurent::one() }
    }

    pub fn from_laurent(p: Laurent) -> Self {
        Scalar { num: p, den: Laurent::one() }
    }

    /// `num / den`; fails when `den` is zero.
    pub fn from_ratio(num: Laurent, den: Laurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Laurent, den: Laurent) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        let k = den.min_exp().unwrap();
        let (mut num, mut den) = (num.shift(-k), den.shift(-k));
        if !den.is_one() {
            let g = laurent_gcd(&num, &den);
            if !g.is_one() {
                num = laurent_div_exact(&num, &g);
                den = laurent_div_exact(&den, &g);
            }
            if den.leading().unwrap().is_negative() {
                num = -&num;
                den = -&den;
            }
        }
        Scalar { num, den }
    }

    pub fn numer(&self) -> &Laurent {
        &self.num
    }

    pub fn denom(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &o.inv_unchecked())
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_unchecked())
    }

    fn inv_unchecked(&self) -> Scalar {
        Self::canonical(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: i64) -> Result<Scalar> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// The bar map `v -> v^{-1}`.
    pub fn bar(&self) -> Scalar {
        Self::canonical(self.num.bar(), self.den.bar())
    }

    /// Order of vanishing at `v = 0`; `None` stands for `+inf` (the zero scalar).
    pub fn val0(&self) -> Option<i64> {
        // den has a nonzero constant term, so only the numerator contributes
        self.num.min_exp()
    }

    /// Membership in the local ring of functions regular at `v = 0`.
    pub fn in_a(&self) -> bool {
        self.val0().map_or(true, |k| k >= 0)
    }

    /// Value at `v = 0` of a scalar in the local ring, as a rational number
    /// `(numerator, denominator)`. `None` when the scalar has a pole at 0.
    pub fn residue(&self) -> Option<(BigInt, BigInt)> {
        match self.val0() {
            None => Some((BigInt::zero(), BigInt::one())),
            Some(k) if k < 0 => None,
            Some(_) => {
                let n = self.num.coeff(0);
                let d = self.den.coeff(0);
                let g = n.gcd(&d);
                if n.is_zero() {
                    return Some((BigInt::zero(), BigInt::one()));
                }
                let (mut n, mut d) = (n / &g, d / &g);
                if d.is_negative() {
                    n = -n;
                    d = -d;
                }
                Some((n, d))
            }
        }
    }

    /// Value at `v = a` modulo the fixed 61-bit prime; `None` on a pole.
    pub fn eval_mod(&self, a: u64) -> Option<u64> {
        let d = self.den.eval_mod(a, MOD_P);
        if d == 0 {
            return None;
        }
        let n = self.num.eval_mod(a, MOD_P);
        Some(((n as u128 * inv_mod(d, MOD_P) as u128) % MOD_P as u128) as u64)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: &self.num + &o.num, den: Laurent::one() };
        }
        if self.den == o.den {
            return Scalar::canonical(&self.num + &o.num, self.den.clone());
        }
        let g = laurent_gcd(&self.den, &o.den);
        if g.is_one() {
            let num = &(&self.num * &o.den) + &(&o.num * &self.den);
            return Scalar::canonical(num, &self.den * &o.den);
        }
        let b1 = laurent_div_exact(&self.den, &g);
        let d1 = laurent_div_exact(&o.den, &g);
        let num = &(&self.num * &d1) + &(&o.num * &b1);
        Scalar::canonical(num, &(&b1 * &d1) * &g)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: &self.num * &o.num, den: Laurent::one() };
        }
        // cross-cancel before multiplying
        let g1 = if o.den.is_one() { Laurent::one() } else { laurent_gcd(&self.num, &o.den) };
        let g2 = if self.den.is_one() { Laurent::one() } else { laurent_gcd(&o.num, &self.den) };
        let n1 = laurent_div_exact(&self.num, &g1);
        let d2 = laurent_div_exact(&o.den, &g1);
        let n2 = laurent_div_exact(&o.num, &g2);
        let d1 = laurent_div_exact(&self.den, &g2);
        let mut num = &n1 * &n2;
        let mut den = &d1 * &d2;
        if den.leading().unwrap().is_negative() {
            num = -&num;
            den = -&den;
        }
        let k = den.min_exp().unwrap();
        Scalar { num: num.shift(-k), den: den.shift(-k) }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| &a + &b)
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::from_int(c)
    }
}

// ---------------------------------------------------------------------------
// q-integers

/// `[l]_v = (v^{-l} - v^l) / (v^{-1} - v)`, a Laurent polynomial for every integer `l`.
pub fn qint(l: i64) -> Scalar {
    qint_at(l, 1)
}

/// `[l]_{v^r}`: the quantum integer in the variable `v^r`.
pub fn qint_at(l: i64, r: i64) -> Scalar {
    if l == 0 {
        return Scalar::zero();
    }
    let (sign, n) = if l < 0 { (-1, -l) } else { (1, l) };
    // v^{-r(n-1)} + v^{-r(n-3)} + ... + v^{r(n-1)}
    let terms = (0..n).map(|k| (r * (2 * k - (n - 1)), BigInt::from(sign)));
    Scalar::from_laurent(Laurent::from_terms(terms))
}

/// `[l]_v! = [l][l-1]...[1]`; `[0]! = 1`.
pub fn qfact(l: u32) -> Scalar {
    qfact_at(l, 1)
}

pub fn qfact_at(l: u32, r: i64) -> Scalar {
    (1..=l as i64).fold(Scalar::one(), |acc, k| &acc * &qint_at(k, r))
}

/// Quantum binomial `[r]!/([k]![r-k]!)` for `0 <= k <= r`, zero otherwise.
pub fn qbinom(r: i64, k: i64) -> Scalar {
    qbinom_at(r, k, 1)
}

pub fn qbinom_at(r: i64, k: i64, vr: i64) -> Scalar {
    if r < 0 || k < 0 || k > r {
        return Scalar::zero();
    }
    // product formula keeps intermediates polynomial-sized
    let num = qfact_at(r as u32, vr);
    let den = &qfact_at(k as u32, vr) * &qfact_at((r - k) as u32, vr);
    num.checked_div(&den).expect("q-factorials are nonzero")
}

// ---------------------------------------------------------------------------
// text form

fn fmt_laurent(p: &Laurent, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (e, c)) in p.terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        match (*e, a.is_one()) {
            (0, _) => write!(f, "{}", a)?,
            (1, true) => write!(f, "v")?,
            (1, false) => write!(f, "{}v", a)?,
            (e, true) => write!(f, "v^{}", e)?,
            (e, false) => write!(f, "{}v^{}", a, e)?,
        }
    }
    Ok(())
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_laurent(self, f)
    }
}

impl fmt::Display for Scalar {
    /// Laurent polynomials print bare (`v^-2 + 1 + v^2`); proper fractions
    /// as `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> Laurent {
        Laurent::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    fn s(terms: &[(i64, i64)]) -> Scalar {
        Scalar::from_laurent(lp(terms))
    }

    #[test]
    fn add_v_and_inverse() {
        let r = &Scalar::v_pow(1) + &Scalar::v_pow(-1);
        // (v^2 + 1)/v as a Laurent polynomial
        assert_eq!(r, s(&[(-1, 1), (1, 1)]));
    }

    #[test]
    fn multiply_by_inverse_is_one() {
        let a = s(&[(0, 1), (2, -1)]);
        assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn divide_by_zero_errors() {
        assert!(matches!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero)));
        assert!(Scalar::from_ratio(Laurent::one(), Laurent::zero()).is_err());
    }

    #[test]
    fn qint_values() {
        assert!(qint(0).is_zero());
        assert!(qint(1).is_one());
        assert_eq!(qint(3), s(&[(-2, 1), (0, 1), (2, 1)]));
        assert_eq!(qint(-3), -qint(3));
    }

    #[test]
    fn qint_matches_defining_quotient() {
        for l in -6..=6 {
            let num = s(&[(-l, 1), (l, -1)]);
            let den = s(&[(-1, 1), (1, -1)]);
            assert_eq!(num.checked_div(&den).unwrap(), qint(l));
        }
    }

    #[test]
    fn qfact_and_binomials() {
        assert_eq!(qfact(2), s(&[(-1, 1), (1, 1)]));
        assert_eq!(qbinom(2, 1), s(&[(-1, 1), (1, 1)]));
        assert!(qbinom(3, 5).is_zero());
        assert!(qbinom(4, 0).is_one());
    }

    #[test]
    fn bar_examples() {
        assert_eq!(Scalar::v_pow(1).bar(), Scalar::v_pow(-1));
        assert_eq!(qint(3).bar(), qint(3));
        let a = s(&[(0, 1), (2, -1)]);
        assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn valuations() {
        let a = Scalar::from_ratio(lp(&[(2, 1)]), lp(&[(0, 1), (1, -1)])).unwrap();
        assert_eq!(a.val0(), Some(2));
        assert!(!Scalar::v_pow(-1).in_a());
        assert_eq!(Scalar::zero().val0(), None);
    }

    #[test]
    fn canonical_denominator() {
        // (2 - 2v^2) / (4 v^3) = (1 - v^2)/(2 v^3)
        let a = Scalar::from_ratio(lp(&[(0, 2), (2, -2)]), lp(&[(3, 4)])).unwrap();
        assert_eq!(a.denom(), &lp(&[(0, 2)]));
        assert_eq!(a.numer(), &lp(&[(-3, 1), (-1, -1)]));
        // 1/(v^-2 - 1) = v^2/(1 - v^2) = -v^2/(v^2 - 1)
        let b = Scalar::one().checked_div(&s(&[(-2, 1), (0, -1)])).unwrap();
        assert_eq!(b.denom(), &lp(&[(0, -1), (2, 1)]));
        assert_eq!(b.numer(), &lp(&[(2, -1)]));
    }

    #[test]
    fn residue_at_zero() {
        let a = Scalar::from_ratio(lp(&[(0, 3), (1, 1)]), lp(&[(0, 6), (1, 1)])).unwrap();
        assert_eq!(a.residue(), Some((BigInt::from(1), BigInt::from(2))));
        assert_eq!(Scalar::v_pow(-1).residue(), None);
    }
}
