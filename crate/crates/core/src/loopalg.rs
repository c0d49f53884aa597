//! Words in the generators `E(i,l)`, `H(i,s)` and the symmetric-function
//! letters, their weights, linear combinations and the rewriting rules that
//! follow from the defining relations.
//!
//! Node indices are 0-based in memory and 1-based in text.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{qbinom_at, qfact_at, qint, Scalar};
use crate::symfunc::{chi_coeff, schur, theta_coeff, xi_coeff, SymElement};

/// Symmetrizable generalized Cartan matrix with its symmetrizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    a: Vec<Vec<i64>>,
    r: Vec<i64>,
    b: Vec<Vec<i64>>,
}

impl CartanData {
    pub fn new(a: Vec<Vec<i64>>, r: Vec<i64>) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::Cartan("rank must be positive".into()));
        }
        if r.len() != n || a.iter().any(|row| row.len() != n) {
            return Err(Error::Cartan("matrix and symmetrizer sizes disagree".into()));
        }
        if r.iter().any(|&x| x <= 0) {
            return Err(Error::Cartan("symmetrizers must be positive".into()));
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(Error::Cartan(format!("diagonal entry {} is not 2", i + 1)));
            }
            for j in 0..n {
                if i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0)) {
                    return Err(Error::Cartan(format!("bad off-diagonal entry ({},{})", i + 1, j + 1)));
                }
            }
        }
        let b: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| r[i] * a[i][j]).collect()).collect();
        for i in 0..n {
            for j in 0..n {
                if b[i][j] != b[j][i] {
                    return Err(Error::Cartan("D*A is not symmetric".into()));
                }
            }
        }
        Ok(CartanData { a, r, b })
    }

    /// Cartan data of type A_n.
    pub fn type_a(n: usize) -> Self {
        let a = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i as i64 - j as i64).abs() {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        CartanData::new(a, vec![1; n]).expect("type A is valid")
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn sym(&self, i: usize) -> i64 {
        self.r[i]
    }

    /// `(alpha, beta)` on Q-parts.
    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * yj * self.b[i][j];
            }
        }
        s
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.rank() {
            Err(Error::UnknownNode { node: node + 1, rank: self.rank() })
        } else {
            Ok(())
        }
    }
}

/// Loop-degree truncation interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub dmin: i64,
    pub dmax: i64,
}

impl Window {
    pub fn new(dmin: i64, dmax: i64) -> Result<Self> {
        if dmin > dmax {
            Err(Error::Window(dmin, dmax))
        } else {
            Ok(Window { dmin, dmax })
        }
    }

    pub fn contains(&self, d: i64) -> bool {
        self.dmin <= d && d <= self.dmax
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.dmin..=self.dmax
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.dmin, self.dmax)
    }
}

/// Element of `Q x Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub qpart: Vec<i64>,
    pub loopdeg: i64,
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight { qpart: vec![0; rank], loopdeg: 0 }
    }

    pub fn root(rank: usize, node: usize, deg: i64) -> Self {
        let mut q = vec![0; rank];
        q[node] = 1;
        Weight { qpart: q, loopdeg: deg }
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight {
            qpart: self.qpart.iter().zip(&o.qpart).map(|(a, b)| a + b).collect(),
            loopdeg: self.loopdeg + o.loopdeg,
        }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight {
            qpart: self.qpart.iter().zip(&o.qpart).map(|(a, b)| a - b).collect(),
            loopdeg: self.loopdeg - o.loopdeg,
        }
    }

    /// `|alpha_0|`, the height of the Q-part.
    pub fn height(&self) -> i64 {
        self.qpart.iter().map(|x| x.abs()).sum()
    }

    pub fn is_nonneg(&self) -> bool {
        self.qpart.iter().all(|&x| x >= 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, x) in self.qpart.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ";{}>", self.loopdeg)
    }
}

/// A generator letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    E(usize, i64),
    H(usize, i64),
    Xi(usize, i64),
    Chi(usize, i64),
    Theta(usize, i64),
    Schur(usize, Vec<u32>),
}

impl Letter {
    pub fn node(&self) -> usize {
        match self {
            Letter::E(i, _)
            | Letter::H(i, _)
            | Letter::Xi(i, _)
            | Letter::Chi(i, _)
            | Letter::Theta(i, _)
            | Letter::Schur(i, _) => *i,
        }
    }

    pub fn is_e(&self) -> bool {
        matches!(self, Letter::E(..))
    }

    pub fn loopdeg(&self) -> i64 {
        match self {
            Letter::E(_, d) | Letter::H(_, d) | Letter::Xi(_, d) | Letter::Chi(_, d) | Letter::Theta(_, d) => *d,
            Letter::Schur(_, p) => p.iter().map(|&x| x as i64).sum(),
        }
    }

    pub fn weight(&self, rank: usize) -> Weight {
        match self {
            Letter::E(i, l) => Weight::root(rank, *i, *l),
            other => Weight { qpart: vec![0; rank], loopdeg: other.loopdeg() },
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E(i, l) => write!(f, "E({},{})", i + 1, l),
            Letter::H(i, s) => write!(f, "H({},{})", i + 1, s),
            Letter::Xi(i, s) => write!(f, "xi({},{})", i + 1, s),
            Letter::Chi(i, s) => write!(f, "chi({},{})", i + 1, s),
            Letter::Theta(i, s) => write!(f, "theta({},{})", i + 1, s),
            Letter::Schur(i, p) => {
                write!(f, "b({},[", i + 1)?;
                for (k, x) in p.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", x)?;
                }
                write!(f, "])")
            }
        }
    }
}

pub type Word = Vec<Letter>;

pub fn word_weight(w: &[Letter], rank: usize) -> Weight {
    w.iter().fold(Weight::zero(rank), |acc, l| acc.add(&l.weight(rank)))
}

pub fn fmt_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter().map(|l| l.to_string()).collect()
}

/// Finite linear combination of words with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(vec![l])
    }

    pub fn e(node: usize, deg: i64) -> Self {
        Self::letter(Letter::E(node, deg))
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(w, c);
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Letter]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, o: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &o.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::one());
        r
    }

    pub fn sub(&self, o: &Element) -> Element {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::from_int(-1));
        r
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Free (concatenation) product.
    pub fn mul(&self, o: &Element) -> Element {
        let mut r = Element::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                r.add_term(w, c1 * c2);
            }
        }
        r
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<F: Fn(&Scalar) -> Scalar>(&self, f: F) -> Element {
        let mut r = Element::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), f(c));
        }
        r
    }

    /// Keeps the terms whose words satisfy `keep`.
    pub fn filter<F: Fn(&Word) -> bool>(&self, keep: F) -> Element {
        Element { terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    /// Common weight of all terms; `None` for zero.
    pub fn weight(&self, rank: usize) -> Result<Option<Weight>> {
        let mut it = self.terms.keys().map(|w| word_weight(w, rank));
        let first = match it.next() {
            Some(w) => w,
            None => return Ok(None),
        };
        for w in it {
            if w != first {
                return Err(Error::Inhomogeneous);
            }
        }
        Ok(Some(first))
    }

    pub fn has_only_e(&self) -> bool {
        self.terms.keys().all(|w| w.iter().all(Letter::is_e))
    }

    pub fn max_node(&self) -> Option<usize> {
        self.terms.keys().flat_map(|w| w.iter().map(Letter::node)).max()
    }
}

impl fmt::Display for Element {
    /// Terms in word order; `(c) * word`, coefficient omitted when it is 1
    /// and the word omitted when it is empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{}", fmt_word(w))?;
            } else if w.is_empty() {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({}) * {}", c, fmt_word(w))?;
            }
        }
        Ok(())
    }
}

/// Finite linear combination of pairs of words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::pure(Vec::new(), Vec::new(), Scalar::one())
    }

    pub fn pure(a: Word, b: Word, c: Scalar) -> Self {
        let mut t = TensorElement::zero();
        t.add_term(a, b, c);
        t
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &[Letter], b: &[Letter]) -> Scalar {
        self.terms.get(&(a.to_vec(), b.to_vec())).cloned().unwrap_or_else(Scalar::zero)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "({}) * ", c)?;
            }
            write!(f, "{} (x) {}", fmt_word(a), fmt_word(b))?;
        }
        Ok(())
    }
}

/// `(x1 (x) x2)(y1 (x) y2) = v^{-(wt x2, wt y1)} x1 y1 (x) x2 y2`.
pub fn tensor_multiply(t: &TensorElement, u: &TensorElement, cartan: &CartanData) -> TensorElement {
    let n = cartan.rank();
    let mut out = TensorElement::zero();
    for ((x1, x2), c1) in &t.terms {
        let w2 = word_weight(x2, n);
        for ((y1, y2), c2) in &u.terms {
            let w1 = word_weight(y1, n);
            let twist = Scalar::v_pow(-cartan.form(&w2.qpart, &w1.qpart));
            let mut a = x1.clone();
            a.extend(y1.iter().cloned());
            let mut b = x2.clone();
            b.extend(y2.iter().cloned());
            out.add_term(a, b, &(c1 * c2) * &twist);
        }
    }
    out
}

/// The `H`-word with power-sum monomial `lam` at `node`.
fn h_word(node: usize, lam: &[u32]) -> Word {
    lam.iter().rev().map(|&m| Letter::H(node, m as i64)).collect()
}

/// Converts a symmetric-function element to an algebra element in `H` letters.
pub fn sym_to_element(s: &SymElement) -> Element {
    let mut e = Element::zero();
    for (lam, c) in &s.coeffs {
        e.add_term(h_word(s.node, lam), c.clone());
    }
    e
}

fn letter_expansion(l: &Letter) -> Result<Option<Element>> {
    let sym = match l {
        Letter::E(..) => return Ok(None),
        Letter::H(_, s) if *s >= 1 => return Ok(None),
        Letter::H(_, s) => return Err(Error::Invalid(format!("H letters need positive degree, got {}", s))),
        Letter::Xi(i, s) => xi_coeff(*i, *s)?,
        Letter::Chi(i, s) => chi_coeff(*i, *s)?,
        Letter::Theta(i, s) => theta_coeff(*i, *s)?,
        Letter::Schur(i, p) => schur(*i, p),
    };
    Ok(Some(sym_to_element(&sym)))
}

/// Rewrites all `xi`, `chi`, `theta` and Schur letters as combinations of `H`-words.
pub fn expand_sym(x: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for (w, c) in x.terms() {
        let mut acc = Element::one();
        let mut plain: Word = Vec::new();
        for l in w {
            match letter_expansion(l)? {
                None => plain.push(l.clone()),
                Some(ex) => {
                    acc = acc.mul(&Element::word(std::mem::take(&mut plain))).mul(&ex);
                }
            }
        }
        acc = acc.mul(&Element::word(plain));
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

/// Splits a normal-ordered word into its E-prefix and H-suffix.
pub fn split_eh(w: &[Letter]) -> (&[Letter], &[Letter]) {
    let k = w.iter().position(|l| !l.is_e()).unwrap_or(w.len());
    (&w[..k], &w[k..])
}

fn insert_h(h: &[Letter], l: &Letter) -> Word {
    let mut out = h.to_vec();
    let pos = out.iter().position(|x| x > l).unwrap_or(out.len());
    out.insert(pos, l.clone());
    out
}

/// Moves every `H` letter to the right of every `E` letter using
/// `[H(i,s), E(j,l)] = [s b_ij]/s E(j,l+s)`; the `H` suffix is sorted.
/// Symmetric-function letters are expanded into `H` letters first.
pub fn normal_order_h(x: &Element, cartan: &CartanData) -> Result<Element> {
    let x = expand_sym(x)?;
    let mut out = Element::zero();
    for (w, c) in x.terms() {
        // fold from the right: the accumulator is always normal ordered
        let mut acc = Element::one();
        for l in w.iter().rev() {
            let mut next = Element::zero();
            for (u, a) in acc.terms() {
                let (e, h) = split_eh(u);
                match l {
                    Letter::E(..) => {
                        let mut nw = vec![l.clone()];
                        nw.extend_from_slice(u);
                        next.add_term(nw, a.clone());
                    }
                    Letter::H(i, s) => {
                        let mut nw = e.to_vec();
                        nw.extend(insert_h(h, l));
                        next.add_term(nw, a.clone());
                        for p in 0..e.len() {
                            if let Letter::E(j, d) = e[p] {
                                let k = qint(s * cartan.b(*i, j)).checked_div(&Scalar::from_int(*s))?;
                                if k.is_zero() {
                                    continue;
                                }
                                let mut nw = e.to_vec();
                                nw[p] = Letter::E(j, d + s);
                                nw.extend_from_slice(h);
                                next.add_term(nw, a * &k);
                            }
                        }
                    }
                    _ => unreachable!("expanded above"),
                }
            }
            acc = next;
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

/// LHS - RHS of the quadratic relation
/// `v^b E(i,l+1)E(j,m) - E(j,m)E(i,l+1) = E(i,l)E(j,m+1) - v^b E(j,m+1)E(i,l)`.
pub fn quadratic_residual(cartan: &CartanData, i: usize, j: usize, l: i64, m: i64) -> Result<Element> {
    cartan.check_node(i)?;
    cartan.check_node(j)?;
    let vb = Scalar::v_pow(cartan.b(i, j));
    let mut r = Element::zero();
    r.add_term(vec![Letter::E(i, l + 1), Letter::E(j, m)], vb.clone());
    r.add_term(vec![Letter::E(j, m), Letter::E(i, l + 1)], Scalar::from_int(-1));
    r.add_term(vec![Letter::E(i, l), Letter::E(j, m + 1)], Scalar::from_int(-1));
    r.add_term(vec![Letter::E(j, m + 1), Letter::E(i, l)], vb);
    Ok(r)
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations_of(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// The individual signed words of the loop Serre relation, before collection.
pub fn serre_terms(cartan: &CartanData, i: usize, j: usize, degs: &[i64], lp: i64) -> Result<Vec<(Word, Scalar)>> {
    cartan.check_node(i)?;
    cartan.check_node(j)?;
    if i == j {
        return Err(Error::Invalid("Serre relation needs distinct nodes".into()));
    }
    let r = 1 - cartan.a(i, j);
    if degs.len() as i64 != r {
        return Err(Error::Invalid(format!("Serre relation for ({},{}) needs {} degrees, got {}", i + 1, j + 1, r, degs.len())));
    }
    let ri = cartan.sym(i);
    let mut out = Vec::new();
    for sigma in permutations_of(r as usize) {
        for k in 0..=r as usize {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let c = &qbinom_at(r, k as i64, ri) * &Scalar::from_int(sign);
            let mut w: Word = Vec::with_capacity(r as usize + 1);
            for &s in &sigma[..k] {
                w.push(Letter::E(i, degs[s]));
            }
            w.push(Letter::E(j, lp));
            for &s in &sigma[k..] {
                w.push(Letter::E(i, degs[s]));
            }
            out.push((w, c));
        }
    }
    Ok(out)
}

/// The loop Serre relation as a free-algebra element.
pub fn serre_residual(cartan: &CartanData, i: usize, j: usize, degs: &[i64], lp: i64) -> Result<Element> {
    let mut r = Element::zero();
    for (w, c) in serre_terms(cartan, i, j, degs, lp)? {
        r.add_term(w, c);
    }
    Ok(r)
}

fn first_inversion(e: &[Letter]) -> Option<usize> {
    (0..e.len().saturating_sub(1)).find(|&p| match (&e[p], &e[p + 1]) {
        (Letter::E(_, a), Letter::E(_, b)) => a < b,
        _ => false,
    })
}

/// Rewrites single-node E-words into words with weakly decreasing degrees
/// using the rank-one consequences of the quadratic relation. The `H` suffix
/// of each normal-ordered word passes through.
pub fn straighten_rank1(x: &Element, node: usize, cartan: &CartanData) -> Result<Element> {
    cartan.check_node(node)?;
    let x = normal_order_h(x, cartan)?;
    for (w, _) in x.terms() {
        if split_eh(w).0.iter().any(|l| l.node() != node) {
            return Err(Error::MixedNodes(node + 1));
        }
    }
    let vb = Scalar::v_pow(cartan.b(node, node));
    let minus_one = Scalar::from_int(-1);
    let mut done = Element::zero();
    let mut todo: BTreeMap<Word, Scalar> = x.into_terms().collect();
    while let Some((w, c)) = todo.pop_first() {
        let (e, h) = split_eh(&w);
        let p = match first_inversion(e) {
            None => {
                done.add_term(w, c);
                continue;
            }
            Some(p) => p,
        };
        let (a, b) = match (&e[p], &e[p + 1]) {
            (Letter::E(_, a), Letter::E(_, b)) => (*a, *b),
            _ => unreachable!(),
        };
        let mk = |x: i64, y: i64| -> Word {
            let mut nw = e[..p].to_vec();
            nw.push(Letter::E(node, x));
            nw.push(Letter::E(node, y));
            nw.extend_from_slice(&e[p + 2..]);
            nw.extend_from_slice(h);
            nw
        };
        let mut push = |w: Word, k: Scalar| {
            let k = &c * &k;
            if k.is_zero() {
                return;
            }
            let entry = todo.entry(w).or_insert_with(Scalar::zero);
            *entry = &*entry + &k;
        };
        if b == a + 1 {
            push(mk(b, a), vb.clone());
        } else {
            push(mk(b, a), vb.clone());
            push(mk(b - 1, a + 1), minus_one.clone());
            push(mk(a + 1, b - 1), vb.clone());
        }
        todo.retain(|_, c| !c.is_zero());
    }
    Ok(done)
}

/// One divided-power block `E(i,n)^(s)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DpBlock {
    pub node: usize,
    pub deg: i64,
    pub power: u32,
}

/// Groups consecutive equal E-letters into divided-power blocks.
pub fn dp_blocks(e: &[Letter]) -> Vec<DpBlock> {
    let mut out: Vec<DpBlock> = Vec::new();
    for l in e {
        if let Letter::E(i, d) = l {
            match out.last_mut() {
                Some(b) if b.node == *i && b.deg == *d => b.power += 1,
                _ => out.push(DpBlock { node: *i, deg: *d, power: 1 }),
            }
        }
    }
    out
}

/// `prod [s]_{v_i}!` over the blocks of an E-word: the word equals this
/// factor times the corresponding divided-power monomial.
pub fn dp_factor(e: &[Letter], cartan: &CartanData) -> Scalar {
    dp_blocks(e)
        .iter()
        .fold(Scalar::one(), |acc, b| &acc * &qfact_at(b.power, cartan.sym(b.node)))
}

/// Text form of a word with repeated letters shown as divided powers.
pub fn fmt_dp_word(w: &[Letter]) -> String {
    let (e, h) = split_eh(w);
    if w.is_empty() {
        return "1".into();
    }
    let mut s = String::new();
    for b in dp_blocks(e) {
        if b.power == 1 {
            s.push_str(&format!("E({},{})", b.node + 1, b.deg));
        } else {
            s.push_str(&format!("E({},{})^({})", b.node + 1, b.deg, b.power));
        }
    }
    for l in h {
        s.push_str(&l.to_string());
    }
    s
}

/// Coefficients of `x` with respect to divided-power words: the coefficient of
/// a word is multiplied by its `dp_factor`.
pub fn to_dp_coordinates(x: &Element, cartan: &CartanData) -> Vec<(Word, Scalar)> {
    x.terms()
        .map(|(w, c)| (w.clone(), c * &dp_factor(split_eh(w).0, cartan)))
        .collect()
}
