//! Windowed weight spaces: the span of all normal-ordered words of a fixed
//! weight whose E-letters have loop degrees in a window, with a basis picked
//! out by the pairing and coordinates computed from the inverse Gram matrix.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::Result;
use crate::linalg::{independent_rows, inverse, mat_vec, Coeff, Fp, Matrix};
use crate::loopalg::{split_eh, Element, Letter, Weight, Window, Word};
use crate::pairing::PairingContext;
use crate::scalars::Scalar;

pub(crate) type SpaceKey = (Weight, Window, bool);

#[derive(Default)]
pub(crate) struct SpaceCache {
    map: Mutex<HashMap<SpaceKey, Arc<WeightSpace>>>,
}

/// All E-words with node content `q` and letter degrees in `window` summing to `d`.
pub fn e_words(q: &[i64], d: i64, window: Window) -> Vec<Word> {
    let k: i64 = q.iter().sum();
    let mut out = Vec::new();
    if q.iter().any(|&x| x < 0) {
        return out;
    }
    let mut rem = q.to_vec();
    let mut cur = Vec::new();
    fn go(rem: &mut Vec<i64>, left: i64, d: i64, w: Window, cur: &mut Word, out: &mut Vec<Word>) {
        if left == 0 {
            if d == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // remaining letters after this one must fit the leftover degree
        for node in 0..rem.len() {
            if rem[node] == 0 {
                continue;
            }
            for deg in w.degrees() {
                let rest = d - deg;
                if rest < (left - 1) * w.dmin || rest > (left - 1) * w.dmax {
                    continue;
                }
                rem[node] -= 1;
                cur.push(Letter::E(node, deg));
                go(rem, left - 1, rest, w, cur, out);
                cur.pop();
                rem[node] += 1;
            }
        }
    }
    go(&mut rem, k, d, window, &mut cur, &mut out);
    out
}

/// Sorted H-words of total degree `s` over `rank` nodes.
pub fn h_words(s: i64, rank: usize) -> Vec<Word> {
    fn go(s: i64, max: (i64, usize), rank: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if s == 0 {
            let mut w = cur.clone();
            w.sort();
            out.push(w);
            return;
        }
        // letters are generated in decreasing (degree, node) order to avoid repeats
        for deg in (1..=s.min(max.0)).rev() {
            for node in (0..rank).rev() {
                if (deg, node) > max {
                    continue;
                }
                cur.push(Letter::H(node, deg));
                go(s - deg, (deg, node), rank, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if s >= 0 {
        go(s, (s, rank.saturating_sub(1)), rank, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Number of pairs `p < q` where the later letter should come first in the
/// preferred (degree-decreasing, node-increasing) order.
fn inversions(e: &[Letter]) -> usize {
    let key = |l: &Letter| match l {
        Letter::E(i, d) => (-*d, *i as i64),
        _ => (0, 0),
    };
    let mut n = 0;
    for p in 0..e.len() {
        for q in p + 1..e.len() {
            if key(&e[q]) < key(&e[p]) {
                n += 1;
            }
        }
    }
    n
}

/// Test words of weight `wt`: windowed E-words, followed (when `with_h`) by
/// sorted H-words absorbing the remaining loop degree. Ordered by preference
/// for basis selection.
pub fn test_words(wt: &Weight, window: Window, rank: usize, with_h: bool) -> Vec<Word> {
    let k: i64 = wt.qpart.iter().sum();
    let mut out = Vec::new();
    if wt.qpart.iter().any(|&x| x < 0) {
        return out;
    }
    let (lo, hi) = (k * window.dmin, k * window.dmax);
    for e_deg in lo..=hi {
        let s = wt.loopdeg - e_deg;
        if s < 0 || (!with_h && s != 0) {
            continue;
        }
        let es = e_words(&wt.qpart, e_deg, window);
        if es.is_empty() {
            continue;
        }
        let hs = h_words(s, rank);
        for e in &es {
            for h in &hs {
                let mut w = e.clone();
                w.extend(h.iter().cloned());
                out.push(w);
            }
        }
    }
    let sort_key = |w: &Word| {
        let (e, h) = split_eh(w);
        let degs: Vec<(i64, usize)> = e
            .iter()
            .map(|l| match l {
                Letter::E(i, d) => (-*d, *i),
                _ => (0, 0),
            })
            .collect();
        (inversions(e), h.len(), degs, h.to_vec())
    };
    out.sort_by_key(sort_key);
    out
}

/// A windowed weight space with a basis selected from its test words.
pub struct WeightSpace {
    pub weight: Weight,
    pub window: Window,
    pub with_h: bool,
    pub words: Vec<Word>,
    pub basis: Vec<Word>,
    gram_inv: Matrix<Scalar>,
    /// modular pairings of basis words (rows) against all words (columns)
    basis_vs_words: Matrix<Fp>,
}

impl WeightSpace {
    fn build(ctx: &PairingContext, weight: &Weight, window: Window, with_h: bool) -> Result<WeightSpace> {
        let words = test_words(weight, window, ctx.rank(), with_h);
        let n = words.len();
        let mut g: Matrix<Fp> = vec![vec![Fp::zero(); n]; n];
        for a in 0..n {
            for b in a..n {
                let p = ctx.pair_words_fp(&words[a], &words[b]);
                g[a][b] = p;
                g[b][a] = p;
            }
        }
        let chosen = independent_rows(&g);
        let basis: Vec<Word> = chosen.iter().map(|&k| words[k].clone()).collect();
        let exact: Matrix<Scalar> = basis.iter().map(|a| basis.iter().map(|b| ctx.pair_words(a, b)).collect()).collect();
        let gram_inv = inverse(&exact)?;
        let basis_vs_words = chosen.iter().map(|&k| g[k].clone()).collect();
        Ok(WeightSpace { weight: weight.clone(), window, with_h, words, basis, gram_inv, basis_vs_words })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a normal-ordered element assumed to lie in the span.
    pub fn coords(&self, ctx: &PairingContext, x: &Element) -> Vec<Scalar> {
        let rhs: Vec<Scalar> = self.basis.iter().map(|b| pair_elem_word(ctx, x, b)).collect();
        mat_vec(&self.gram_inv, &rhs)
    }

    pub fn element(&self, coords: &[Scalar]) -> Element {
        let mut e = Element::zero();
        for (w, c) in self.basis.iter().zip(coords) {
            e.add_term(w.clone(), c.clone());
        }
        e
    }

    /// Modular check that `x` agrees with the combination `coords` against every test word.
    pub fn represents(&self, ctx: &PairingContext, x: &Element, coords: &[Scalar]) -> bool {
        let cf: Vec<Fp> = coords.iter().map(Fp::from_scalar).collect();
        self.words.iter().enumerate().all(|(k, y)| {
            let lhs = pair_elem_word_fp(ctx, x, y);
            let rhs = cf.iter().zip(&self.basis_vs_words).fold(Fp::zero(), |acc, (c, row)| acc.add(&c.mul(&row[k])));
            lhs == rhs
        })
    }
}

pub(crate) fn pair_elem_word(ctx: &PairingContext, x: &Element, y: &[Letter]) -> Scalar {
    let mut acc = Scalar::zero();
    for (w, c) in x.terms() {
        let p = ctx.pair_words(w, y);
        if !p.is_zero() {
            acc = &acc + &(c * &p);
        }
    }
    acc
}

pub(crate) fn pair_elem_word_fp(ctx: &PairingContext, x: &Element, y: &[Letter]) -> Fp {
    let mut acc = Fp::zero();
    for (w, c) in x.terms() {
        let p = ctx.pair_words_fp(w, y);
        if !p.is_zero() {
            acc = acc.add(&Fp::from_scalar(c).mul(&p));
        }
    }
    acc
}

impl PairingContext {
    /// The cached weight space for `(weight, window, with_h)`.
    pub fn space(&self, weight: &Weight, window: Window, with_h: bool) -> Result<Arc<WeightSpace>> {
        let key = (weight.clone(), window, with_h);
        if let Some(s) = self.spaces.map.lock().expect("space cache poisoned").get(&key) {
            return Ok(s.clone());
        }
        let s = Arc::new(WeightSpace::build(self, weight, window, with_h)?);
        self.spaces.map.lock().expect("space cache poisoned").insert(key, s.clone());
        Ok(s)
    }

    /// Rewrites each weight component of `x` in the selected basis of its hull
    /// space, so that elements equal up to the windowed test compare equal.
    /// Components the basis fails to represent are left untouched.
    pub fn canonical(&self, x: &Element) -> Result<Element> {
        let x = crate::loopalg::normal_order_h(x, &self.cartan)?;
        let mut out = Element::zero();
        for (wt, part) in crate::pairing::split_by_weight(&x, self.rank()) {
            let sp = self.space(&wt, self.hull(&part), !part.has_only_e())?;
            let c = sp.coords(self, &part);
            if sp.represents(self, &part, &c) {
                out = out.add(&sp.element(&c));
            } else {
                out = out.add(&part);
            }
        }
        Ok(out)
    }
}
