//! The coproduct on the positive half, its counit, the Hopf pairing and the
//! derivations `F'(i,n)`.
//!
//! Pairings are evaluated on normal-ordered words `e h` (E-word followed by an
//! H-word) through the factorisation `(e h, e' h') = (e, e') (h, h')`. On
//! E-words the pairing peels the first letter of the right argument:
//! `(x, E(i,n) y) = (F'(i,n) x, y) / (v^-2 - 1)`, where `F'` has the closed form
//!
//! ```text
//! F'(i,n)(E_1 ... E_k) = sum over p with node_p = i, deg_p <= n of
//!     v^{-sum_{q<p} b(node_q,i)} sum_{t_1+..+t_{p-1} = n - deg_p}
//!     prod_q kappa(i,node_q,t_q) E'_1 ... E'_{p-1} E_{p+1} ... E_k
//! ```
//!
//! with `E'_q = E(node_q, deg_q - t_q)` and `kappa(i,j,t) = (theta(i,t), theta(j,t))`.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::linalg::{Coeff, Fp};
use crate::loopalg::{
    normal_order_h, split_eh, tensor_multiply, word_weight, CartanData, Element, Letter, TensorElement, Weight, Window,
    Word,
};
use crate::scalars::{qint, Scalar};

/// Per-coefficient-type memo of pairings and structure constants.
struct PairCache<C> {
    memo: HashMap<(Word, Word), C>,
    kappa: HashMap<(i64, i64), C>,
    g: HashMap<(i64, i64), C>,
    vpow: HashMap<i64, C>,
    inv_norm: C,
}

impl<C: Coeff> PairCache<C> {
    fn new() -> Self {
        let norm = &Scalar::v_pow(-2) - &Scalar::one();
        PairCache {
            memo: HashMap::new(),
            kappa: HashMap::new(),
            g: HashMap::new(),
            vpow: HashMap::new(),
            inv_norm: C::from_scalar(&norm.inv().expect("nonzero")),
        }
    }

    fn vpow(&mut self, k: i64) -> C {
        self.vpow.entry(k).or_insert_with(|| C::from_scalar(&Scalar::v_pow(k))).clone()
    }

    /// `(theta(i,t), theta(j,t)) = v^{-(t-1)b}(v^{-b} - v^b)` for `t >= 1`.
    fn kappa(&mut self, b: i64, t: i64) -> C {
        if t == 0 {
            return C::one();
        }
        self.kappa
            .entry((b, t))
            .or_insert_with(|| {
                let s = &Scalar::v_pow(-(t - 1) * b) * &(&Scalar::v_pow(-b) - &Scalar::v_pow(b));
                C::from_scalar(&s)
            })
            .clone()
    }

    /// `(H(i,s), H(j,s)) = [s b] / (s (v^-1 - v))`.
    fn g(&mut self, b: i64, s: i64) -> C {
        self.g
            .entry((b, s))
            .or_insert_with(|| {
                let den = &(&Scalar::v_pow(-1) - &Scalar::v_pow(1)) * &Scalar::from_int(s);
                C::from_scalar(&qint(s * b).checked_div(&den).expect("nonzero"))
            })
            .clone()
    }
}

/// Holds the Cartan data, the truncation window and the pairing memo tables.
/// Safe to share between threads.
pub struct PairingContext {
    pub cartan: CartanData,
    pub window: Window,
    exact: Mutex<PairCache<Scalar>>,
    modular: Mutex<PairCache<Fp>>,
    pub(crate) spaces: crate::space::SpaceCache,
}

impl std::fmt::Debug for PairingContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PairingContext").field("cartan", &self.cartan).field("window", &self.window).finish()
    }
}

impl Clone for PairingContext {
    fn clone(&self) -> Self {
        PairingContext::new(self.cartan.clone(), self.window)
    }
}

/// Verdict of the windowed zero test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroVerdict {
    Nonzero,
    PresumedZero,
}

impl std::fmt::Display for ZeroVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ZeroVerdict::Nonzero => write!(f, "Nonzero"),
            ZeroVerdict::PresumedZero => write!(f, "PresumedZero"),
        }
    }
}

fn e_signature(w: &[Letter], rank: usize) -> (Vec<i64>, i64) {
    let wt = word_weight(w, rank);
    (wt.qpart, wt.loopdeg)
}

/// Closed-form `F'(i,n)` on a single E-word, with coefficients in `C`.
fn fprime_word_with<C: Coeff>(cartan: &CartanData, cache: &mut PairCache<C>, i: usize, n: i64, w: &[Letter]) -> Vec<(Word, C)> {
    let mut out = Vec::new();
    let mut twist = 0i64;
    for p in 0..w.len() {
        let (np, dp) = match w[p] {
            Letter::E(a, d) => (a, d),
            _ => unreachable!("E-words only"),
        };
        if np == i && dp <= n {
            let total = n - dp;
            let prefix: Vec<(usize, i64, i64)> = w[..p]
                .iter()
                .map(|l| match l {
                    Letter::E(a, d) => (*a, *d, cartan.b(i, *a)),
                    _ => unreachable!(),
                })
                .collect();
            let base = cache.vpow(-twist);
            let mut cur: Vec<i64> = vec![0; prefix.len()];
            compositions(&prefix, total, 0, &mut cur, &mut |ts: &[i64]| {
                let mut c = base.clone();
                for (q, &t) in ts.iter().enumerate() {
                    if t > 0 {
                        c = c.mul(&cache.kappa(prefix[q].2, t));
                    }
                }
                let mut nw: Word = prefix.iter().zip(ts).map(|(&(a, d, _), &t)| Letter::E(a, d - t)).collect();
                nw.extend_from_slice(&w[p + 1..]);
                out.push((nw, c));
            });
        }
        twist += cartan.b(np, i);
    }
    out
}

/// Enumerates `t_q >= 0` with the given sum; positions whose kappa vanishes
/// (`b = 0`) are pinned to zero.
fn compositions<F: FnMut(&[i64])>(prefix: &[(usize, i64, i64)], remaining: i64, q: usize, cur: &mut Vec<i64>, f: &mut F) {
    if q == prefix.len() {
        if remaining == 0 {
            f(cur);
        }
        return;
    }
    let maxt = if prefix[q].2 == 0 { 0 } else { remaining };
    for t in 0..=maxt {
        cur[q] = t;
        compositions(prefix, remaining - t, q + 1, cur, f);
    }
    cur[q] = 0;
}

fn pair_e_with<C: Coeff>(cartan: &CartanData, cache: &mut PairCache<C>, x: &[Letter], y: &[Letter]) -> C {
    if x.len() != y.len() {
        return C::zero();
    }
    if y.is_empty() {
        return C::one();
    }
    let n = cartan.rank();
    if e_signature(x, n) != e_signature(y, n) {
        return C::zero();
    }
    let key = (x.to_vec(), y.to_vec());
    if let Some(c) = cache.memo.get(&key) {
        return c.clone();
    }
    let (i, d) = match y[0] {
        Letter::E(i, d) => (i, d),
        _ => unreachable!(),
    };
    let mut acc = C::zero();
    for (w, c) in fprime_word_with(cartan, cache, i, d, x) {
        let p = pair_e_with(cartan, cache, &w, &y[1..]);
        if !p.is_zero() {
            acc = acc.add(&c.mul(&p));
        }
    }
    acc = acc.mul(&cache.inv_norm);
    cache.memo.insert(key, acc.clone());
    acc
}

/// Pairing of two sorted H-words: a sum over degree-preserving matchings.
fn pair_h_with<C: Coeff>(cartan: &CartanData, cache: &mut PairCache<C>, x: &[Letter], y: &[Letter]) -> C {
    if x.len() != y.len() {
        return C::zero();
    }
    let hs = |w: &[Letter]| -> Vec<(i64, usize)> {
        let mut v: Vec<(i64, usize)> = w
            .iter()
            .map(|l| match l {
                Letter::H(i, s) => (*s, *i),
                _ => unreachable!("H-words only"),
            })
            .collect();
        v.sort();
        v
    };
    let (a, b) = (hs(x), hs(y));
    if a.iter().map(|p| p.0).ne(b.iter().map(|p| p.0)) {
        return C::zero();
    }
    // group by degree; the form is a product of permanents
    let mut acc = C::one();
    let mut k = 0;
    while k < a.len() {
        let s = a[k].0;
        let mut e = k;
        while e < a.len() && a[e].0 == s {
            e += 1;
        }
        let rows: Vec<usize> = a[k..e].iter().map(|p| p.1).collect();
        let cols: Vec<usize> = b[k..e].iter().map(|p| p.1).collect();
        let m: Vec<Vec<C>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| cache.g(cartan.b(r, c), s)).collect())
            .collect();
        acc = acc.mul(&permanent(&m));
        if acc.is_zero() {
            return acc;
        }
        k = e;
    }
    acc
}

fn permanent<C: Coeff>(m: &[Vec<C>]) -> C {
    fn go<C: Coeff>(m: &[Vec<C>], row: usize, used: &mut Vec<bool>) -> C {
        if row == m.len() {
            return C::one();
        }
        let mut acc = C::zero();
        for c in 0..m.len() {
            if !used[c] && !m[row][c].is_zero() {
                used[c] = true;
                acc = acc.add(&m[row][c].mul(&go(m, row + 1, used)));
                used[c] = false;
            }
        }
        acc
    }
    go(m, 0, &mut vec![false; m.len()])
}

fn pair_words_with<C: Coeff>(cartan: &CartanData, cache: &mut PairCache<C>, x: &[Letter], y: &[Letter]) -> C {
    let (ex, hx) = split_eh(x);
    let (ey, hy) = split_eh(y);
    let h = pair_h_with(cartan, cache, hx, hy);
    if h.is_zero() {
        return h;
    }
    h.mul(&pair_e_with(cartan, cache, ex, ey))
}

impl PairingContext {
    pub fn new(cartan: CartanData, window: Window) -> Self {
        PairingContext {
            cartan,
            window,
            exact: Mutex::new(PairCache::new()),
            modular: Mutex::new(PairCache::new()),
            spaces: Default::default(),
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// Same data with another window; caches are not shared.
    pub fn with_window(&self, window: Window) -> PairingContext {
        PairingContext::new(self.cartan.clone(), window)
    }

    /// Pairing of two normal-ordered words.
    pub fn pair_words(&self, x: &[Letter], y: &[Letter]) -> Scalar {
        let mut c = self.exact.lock().expect("pairing cache poisoned");
        pair_words_with(&self.cartan, &mut c, x, y)
    }

    /// Modular image of [`Self::pair_words`].
    pub fn pair_words_fp(&self, x: &[Letter], y: &[Letter]) -> Fp {
        let mut c = self.modular.lock().expect("pairing cache poisoned");
        pair_words_with(&self.cartan, &mut c, x, y)
    }

    /// Pairing of normal-ordered elements.
    pub fn pair_normal(&self, x: &Element, y: &Element) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let p = self.pair_words(a, b);
                if !p.is_zero() {
                    acc = &acc + &(&(ca * cb) * &p);
                }
            }
        }
        acc
    }

    pub fn pair_normal_fp(&self, x: &Element, y: &Element) -> Fp {
        let mut acc = Fp::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let p = self.pair_words_fp(a, b);
                if !p.is_zero() {
                    acc = acc.add(&Fp::from_scalar(ca).mul(&Fp::from_scalar(cb)).mul(&p));
                }
            }
        }
        acc
    }

    /// The Hopf pairing `(x, y)`.
    pub fn hopf_pair(&self, x: &Element, y: &Element) -> Result<Scalar> {
        let xn = normal_order_h(x, &self.cartan)?;
        let yn = normal_order_h(y, &self.cartan)?;
        Ok(self.pair_normal(&xn, &yn))
    }

    /// Matrix of pairings.
    pub fn gram(&self, rows: &[Element], cols: &[Element]) -> Result<Vec<Vec<Scalar>>> {
        let rn: Vec<Element> = rows.iter().map(|x| normal_order_h(x, &self.cartan)).collect::<Result<_>>()?;
        let cn: Vec<Element> = cols.iter().map(|x| normal_order_h(x, &self.cartan)).collect::<Result<_>>()?;
        Ok(rn.iter().map(|r| cn.iter().map(|c| self.pair_normal(r, c)).collect()).collect())
    }

    /// `F'(i,n)` on an element of the E-subalgebra.
    pub fn fprime(&self, i: usize, n: i64, x: &Element) -> Result<Element> {
        self.cartan.check_node(i)?;
        let x = normal_order_h(x, &self.cartan)?;
        if !x.has_only_e() {
            return Err(Error::HLetters);
        }
        Ok(self.fprime_e(i, n, &x))
    }

    /// `F'(i,n)` on an element already known to contain only E-letters.
    pub(crate) fn fprime_e(&self, i: usize, n: i64, x: &Element) -> Element {
        let mut cache = self.exact.lock().expect("pairing cache poisoned");
        let mut out = Element::zero();
        for (w, c) in x.terms() {
            for (nw, k) in fprime_word_with(&self.cartan, &mut cache, i, n, w) {
                out.add_term(nw, c * &k);
            }
        }
        out
    }

    /// The coproduct, with the tail of `Delta'(E(i,n))` cut at loop degree `window.dmin`.
    pub fn coproduct(&self, x: &Element) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for (w, c) in x.terms() {
            let mut acc = TensorElement::one();
            for l in w {
                acc = tensor_multiply(&acc, &self.letter_coproduct(l)?, &self.cartan);
            }
            for ((a, b), k) in acc.terms() {
                out.add_term(a.clone(), b.clone(), c * k);
            }
        }
        Ok(out)
    }

    fn letter_coproduct(&self, l: &Letter) -> Result<TensorElement> {
        let one = Scalar::one();
        let grouplike = |mk: &dyn Fn(i64) -> Letter, m: i64| -> Result<TensorElement> {
            if m < 0 {
                return Err(Error::NegativeDegree(m));
            }
            let lw = |s: i64| if s == 0 { Vec::new() } else { vec![mk(s)] };
            let mut t = TensorElement::zero();
            for s in 0..=m {
                t.add_term(lw(m - s), lw(s), Scalar::one());
            }
            Ok(t)
        };
        match l {
            Letter::E(i, n) => {
                let mut t = TensorElement::pure(vec![l.clone()], Vec::new(), one);
                let mut s = 0;
                while n - s >= self.window.dmin {
                    let th = if s == 0 { Vec::new() } else { vec![Letter::Theta(*i, s)] };
                    t.add_term(th, vec![Letter::E(*i, n - s)], Scalar::one());
                    s += 1;
                }
                Ok(t)
            }
            Letter::H(_, s) => {
                if *s < 1 {
                    return Err(Error::Invalid("H letters need positive degree".into()));
                }
                let mut t = TensorElement::pure(vec![l.clone()], Vec::new(), one.clone());
                t.add_term(Vec::new(), vec![l.clone()], one);
                Ok(t)
            }
            Letter::Theta(i, m) => grouplike(&|s| Letter::Theta(*i, s), *m),
            Letter::Xi(i, m) => grouplike(&|s| Letter::Xi(*i, s), *m),
            Letter::Chi(i, m) => grouplike(&|s| Letter::Chi(*i, s), *m),
            Letter::Schur(i, lam) => {
                // Jacobi-Trudi in the grouplike xi letters
                let mut acc = TensorElement::zero();
                for (word, sign) in schur_xi_words(*i, lam) {
                    let mut t = TensorElement::one();
                    for x in &word {
                        t = tensor_multiply(&t, &self.letter_coproduct(x)?, &self.cartan);
                    }
                    for ((a, b), k) in t.terms() {
                        acc.add_term(a.clone(), b.clone(), &Scalar::from_int(sign) * k);
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Windowed zero test: pairs `x` against every word of each of its weight
    /// components whose letters lie in `window` (or the context window).
    pub fn is_zero_windowed(&self, x: &Element) -> Result<ZeroVerdict> {
        self.is_zero_in(x, self.window)
    }

    pub fn is_zero_in(&self, x: &Element, window: Window) -> Result<ZeroVerdict> {
        let x = normal_order_h(x, &self.cartan)?;
        for (wt, part) in split_by_weight(&x, self.rank()) {
            for y in crate::space::test_words(&wt, window, self.rank(), true) {
                let mut acc = Scalar::zero();
                for (w, c) in part.terms() {
                    let p = self.pair_words(w, &y);
                    if !p.is_zero() {
                        acc = &acc + &(c * &p);
                    }
                }
                if !acc.is_zero() {
                    return Ok(ZeroVerdict::Nonzero);
                }
            }
        }
        Ok(ZeroVerdict::PresumedZero)
    }

    /// The smallest window containing the context window and every letter degree of `x`.
    pub fn hull(&self, x: &Element) -> Window {
        hull_window(self.window, x)
    }
}

/// `w` extended by every E-letter degree of `x`.
pub fn hull_window(mut w: Window, x: &Element) -> Window {
    for (word, _) in x.terms() {
        for l in word {
            if let Letter::E(_, d) = l {
                w.dmin = w.dmin.min(*d);
                w.dmax = w.dmax.max(*d);
            }
        }
    }
    w
}

/// Splits an element into weight components.
pub fn split_by_weight(x: &Element, rank: usize) -> Vec<(Weight, Element)> {
    let mut m: std::collections::BTreeMap<Weight, Element> = std::collections::BTreeMap::new();
    for (w, c) in x.terms() {
        m.entry(word_weight(w, rank)).or_default().add_term(w.clone(), c.clone());
    }
    m.into_iter().collect()
}

/// Jacobi-Trudi expansion of a Schur letter as signed words in `xi` letters.
pub fn schur_xi_words(node: usize, lam: &[u32]) -> Vec<(Word, i64)> {
    let lam = crate::symfunc::normalize_partition(lam.to_vec());
    let l = lam.len();
    let mut out = Vec::new();
    let perms = {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for k in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(k, n - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(l)
    };
    for p in perms {
        let mut inv = 0;
        for a in 0..l {
            for b in a + 1..l {
                if p[a] > p[b] {
                    inv += 1;
                }
            }
        }
        let mut word = Vec::new();
        let mut ok = true;
        for (r, &c) in p.iter().enumerate() {
            let k = lam[r] as i64 - r as i64 + c as i64;
            if k < 0 {
                ok = false;
                break;
            }
            if k > 0 {
                word.push(Letter::Xi(node, k));
            }
        }
        if ok {
            out.push((word, if inv % 2 == 0 { 1 } else { -1 }));
        }
    }
    out
}

/// The counit: 1 on the empty word and on words of degree-zero grouplike letters.
pub fn counit(x: &Element) -> Scalar {
    let mut acc = Scalar::zero();
    for (w, c) in x.terms() {
        let ok = w.iter().all(|l| match l {
            Letter::E(..) | Letter::H(..) => false,
            Letter::Xi(_, s) | Letter::Chi(_, s) | Letter::Theta(_, s) => *s == 0,
            Letter::Schur(_, p) => p.iter().all(|&x| x == 0),
        });
        if ok {
            acc = &acc + c;
        }
    }
    acc
}
