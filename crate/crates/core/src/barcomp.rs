//! The slope filtration of weight spaces, jets in the completion, and the
//! truncated bar-involution.
//!
//! Everything here is relative to a window of loop degrees: spans are built
//! from words whose E-letters lie in the window, and the infinite tails of the
//! bar-involution are cut at the window's lower end.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::linalg::{independent_rows, rref, Fp};
use crate::loopalg::{expand_sym, normal_order_h, sym_to_element, Element, Letter, Weight, Window, Word};
use crate::pairing::{hull_window, PairingContext};
use crate::space::pair_elem_word_fp;
use crate::scalars::Scalar;
use crate::symfunc::{chi_coeff, xi_coeff, SymElement};

/// `d / |α₀|`, or `+∞` when `α₀ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slope {
    Finite(Rational64),
    Infinite,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{}", r),
            Slope::Infinite => write!(f, "inf"),
        }
    }
}

pub fn slope(w: &Weight) -> Slope {
    let h = w.height();
    if h == 0 {
        Slope::Infinite
    } else {
        Slope::Finite(Rational64::new(w.loopdeg, h))
    }
}

fn slope_le(s: Slope, m: Rational64) -> bool {
    s.cmp(&Slope::Finite(m)) != Ordering::Greater
}

/// Spanning family of `W_m[α]` inside the window, with its rank.
#[derive(Clone, Debug)]
pub struct WSpan {
    pub weight: Weight,
    pub level: Rational64,
    pub window: Window,
    pub family: Vec<Element>,
    pub rank: usize,
    /// members of `family` independent modulo a prime; they span the same space
    independent: Vec<Element>,
    /// reduced echelon rows in the coordinates of `space_window`
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    space_window: Window,
}

/// Nonzero `β₀ <= q` in the product order.
fn sub_vectors(q: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &x in q {
        out = out.into_iter().flat_map(|p| (0..=x).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out.retain(|v| v.iter().any(|&k| k != 0));
    out
}

/// Products `x·y` of basis words, `wt x = β`, `μ(β) <= m`, `β <= α`, `β != 0`.
fn w_family(ctx: &PairingContext, alpha: &Weight, m: Rational64, window: Window) -> Result<Vec<Element>> {
    let mut fam = Vec::new();
    for b0 in sub_vectors(&alpha.qpart) {
        let k: i64 = b0.iter().sum();
        let rest0: Vec<i64> = alpha.qpart.iter().zip(&b0).map(|(a, b)| a - b).collect();
        let rk: i64 = rest0.iter().sum();
        let lo = k * window.dmin;
        let hi = alpha.loopdeg - rk * window.dmin;
        for d in lo..=hi {
            let beta = Weight { qpart: b0.clone(), loopdeg: d };
            if !slope_le(slope(&beta), m) {
                continue;
            }
            let rest = alpha.sub(&beta);
            let xs = ctx.space(&beta, window, true)?;
            let ys = ctx.space(&rest, window, true)?;
            for x in &xs.basis {
                for y in &ys.basis {
                    let mut w: Word = x.clone();
                    w.extend(y.iter().cloned());
                    fam.push(normal_order_h(&Element::word(w), &ctx.cartan)?);
                }
            }
        }
    }
    Ok(fam)
}

fn hull_of<'a, I: IntoIterator<Item = &'a Element>>(base: Window, xs: I) -> Window {
    xs.into_iter().fold(base, hull_window)
}

pub fn w_filtration_span(ctx: &PairingContext, alpha: &Weight, m: Rational64, window: Window) -> Result<WSpan> {
    let family = w_family(ctx, alpha, m, window)?;
    let space_window = hull_of(window, &family);
    let sp = ctx.space(alpha, space_window, true)?;
    // Rows independent mod p are independent over Q(v); exact elimination
    // then only sees a set no larger than the dimension.
    let modular: Vec<Vec<Fp>> =
        family.iter().map(|f| sp.basis.iter().map(|b| pair_elem_word_fp(ctx, f, b)).collect()).collect();
    let independent: Vec<Element> = independent_rows(&modular).into_iter().map(|k| family[k].clone()).collect();
    let coords: Vec<Vec<Scalar>> = independent.iter().map(|f| sp.coords(ctx, f)).collect();
    let (rows, pivots) = if coords.is_empty() { (Vec::new(), Vec::new()) } else { rref(coords) };
    Ok(WSpan { weight: alpha.clone(), level: m, window, rank: pivots.len(), family, independent, rows, pivots, space_window })
}

/// A class in `U[α] / W_m[α]`, stored as its reduced representative.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub weight: Weight,
    pub level: Rational64,
    pub window: Window,
    pub value: Element,
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q: Vec<String> = self.weight.qpart.iter().map(|k| k.to_string()).collect();
        writeln!(f, "weight=<{};{}> level={} window={}", q.join(","), self.weight.loopdeg, self.level, self.window)?;
        write!(f, "{}", self.value)
    }
}

fn homogeneous_weight(ctx: &PairingContext, x: &Element) -> Result<Weight> {
    Ok(x.weight(ctx.rank())?.unwrap_or_else(|| Weight::zero(ctx.rank())))
}

/// `jet_m(x)` computed over words in `window` (extended by the letters of `x`).
pub fn jet_in(ctx: &PairingContext, x: &Element, m: Rational64, window: Window) -> Result<Jet> {
    let x = normal_order_h(&expand_sym(x)?, &ctx.cartan)?;
    let alpha = homogeneous_weight(ctx, &x)?;
    let window = hull_of(window, [&x]);
    if x.is_zero() {
        return Ok(Jet { weight: alpha, level: m, window, value: x });
    }
    let span = w_filtration_span(ctx, &alpha, m, window)?;
    let sw = hull_of(span.space_window, [&x]);
    let span = if sw == span.space_window { span } else { reproject(ctx, span, sw)? };
    let sp = ctx.space(&alpha, span.space_window, true)?;
    let mut c = sp.coords(ctx, &x);
    for (row, &p) in span.rows.iter().zip(&span.pivots) {
        if c[p].is_zero() {
            continue;
        }
        let f = c[p].clone();
        for (a, b) in c.iter_mut().zip(row) {
            if !b.is_zero() {
                *a = &*a - &(&f * b);
            }
        }
    }
    Ok(Jet { weight: alpha, level: m, window, value: sp.element(&c) })
}

/// Recomputes the echelon rows of a span in a larger space window.
fn reproject(ctx: &PairingContext, span: WSpan, sw: Window) -> Result<WSpan> {
    let sp = ctx.space(&span.weight, sw, true)?;
    let coords: Vec<Vec<Scalar>> = span.independent.iter().map(|f| sp.coords(ctx, f)).collect();
    let (rows, pivots) = if coords.is_empty() { (Vec::new(), Vec::new()) } else { rref(coords) };
    Ok(WSpan { rank: pivots.len(), rows, pivots, space_window: sw, ..span })
}

pub fn jet(ctx: &PairingContext, x: &Element, m: Rational64) -> Result<Jet> {
    jet_in(ctx, x, m, ctx.window)
}

/// `r_m(x) = x - jet_m(x)`.
pub fn r_m(ctx: &PairingContext, x: &Element, m: Rational64) -> Result<Element> {
    let j = jet(ctx, x, m)?;
    let x = normal_order_h(&expand_sym(x)?, &ctx.cartan)?;
    ctx.canonical(&x.sub(&j.value))
}

/// Product of jets at level `n`. The factors must be known at levels
/// `a.level <= n` and `b.level <= n - |α₀(a)|`.
pub fn jet_multiply(ctx: &PairingContext, a: &Jet, b: &Jet, n: Rational64) -> Result<Jet> {
    let need_b = n - Rational64::from_integer(a.weight.height());
    if a.level > n {
        return Err(Error::Padding { have: a.level.to_string(), need: format!("<= {} (left factor)", n) });
    }
    if b.level > need_b {
        return Err(Error::Padding { have: b.level.to_string(), need: format!("<= {} (right factor)", need_b) });
    }
    let w = Window::new(a.window.dmin.min(b.window.dmin), a.window.dmax.max(b.window.dmax))?;
    let p = normal_order_h(&a.value.mul(&b.value), &ctx.cartan)?;
    let mut j = jet_in(ctx, &p, n, w)?;
    if p.is_zero() {
        j.weight = a.weight.add(&b.weight);
    }
    Ok(j)
}

/// `φ(E(i,l))` with ξ letters kept symbolic, truncated to E-degrees `>= dmin`.
pub fn bar_generator(i: usize, l: i64, dmin: i64) -> Element {
    let mut out = Element::e(i, l);
    // compositions (l_1, ..., l_t) of total at most l - dmin
    fn go(i: usize, l: i64, dmin: i64, parts: &mut Vec<i64>, out: &mut Element) {
        let total: i64 = parts.iter().sum();
        for next in 1..=(l - dmin - total) {
            parts.push(next);
            let t = parts.len();
            let sign = if t % 2 == 0 { 1 } else { -1 };
            let head: i64 = parts[..t - 1].iter().sum();
            let c = &(&Scalar::v_pow(-next) - &Scalar::v_pow(next)) * &Scalar::v_pow(-head);
            let mut w = vec![Letter::E(i, l - total - next)];
            w.extend(parts.iter().map(|&s| Letter::Xi(i, s)));
            out.add_term(w, &Scalar::from_int(sign) * &c);
            go(i, l, dmin, parts, out);
            parts.pop();
        }
    }
    go(i, l, dmin, &mut Vec::new(), &mut out);
    out
}

/// `bar_generator` in power sums. Summing the compositions with a fixed last
/// part `k` over their leading parts yields the coefficient `χ_{s-k}` of
/// `ξ(z)^{-1}`, so the degree-`s` tail is
/// `-Σ_k (v^{-k} - v^k) v^{-(s-k)} χ_{s-k} ξ_k`.
pub fn bar_generator_ps(i: usize, l: i64, dmin: i64) -> Result<Element> {
    let mut out = Element::e(i, l);
    for s in 1..=(l - dmin) {
        let mut tail = SymElement::zero(i);
        for k in 1..=s {
            let c = &(&Scalar::v_pow(k) - &Scalar::v_pow(-k)) * &Scalar::v_pow(k - s);
            tail = tail.add(&chi_coeff(i, s - k)?.mul(&xi_coeff(i, k)?).scale(&c));
        }
        out = out.add(&Element::e(i, l - s).mul(&sym_to_element(&tail)));
    }
    Ok(out)
}

/// The bar-involution on an element, with E-tails cut below `ctx.window.dmin`;
/// the result is expanded to power sums and normal ordered.
pub fn bar_element(ctx: &PairingContext, x: &Element) -> Result<Element> {
    let x = expand_sym(x)?;
    let dmin = ctx.window.dmin;
    let mut out = Element::zero();
    for (w, c) in x.terms() {
        let mut acc = Element::scalar(c.bar());
        for l in w {
            let img = match l {
                Letter::E(i, d) => bar_generator_ps(*i, *d, dmin)?,
                other => Element::letter(other.clone()),
            };
            acc = acc.mul(&img);
        }
        out = out.add(&acc);
    }
    normal_order_h(&out, &ctx.cartan)
}

/// Depth below `ctx.window.dmin` at which φ must be cut so that the dropped
/// tails of a relation pair to zero with every test word of the window:
/// one more than the spread between the highest E-degree of `x` and `dmin`.
pub fn bar_padding(ctx: &PairingContext, x: &Element) -> i64 {
    let top = x.terms().flat_map(|(w, _)| w.iter()).filter(|l| l.is_e()).map(Letter::loopdeg).max();
    top.map_or(0, |t| (t - ctx.window.dmin + 1).max(0))
}

/// `φ(x)` cut at `dmin - bar_padding(x)`; compare it inside `ctx.window`.
pub fn bar_padded(ctx: &PairingContext, x: &Element) -> Result<Element> {
    let w = Window::new(ctx.window.dmin - bar_padding(ctx, x), ctx.window.dmax)?;
    bar_element(&ctx.with_window(w), x)
}

/// Coefficient of `z^l` in `φ(E_i(z))·θ⁺_i(z) - E_i(z)`, summed over the
/// E-degrees that the truncation keeps.
pub fn currents_residual(ctx: &PairingContext, i: usize, l: i64) -> Result<Element> {
    let mut acc = Element::e(i, l).scale(&Scalar::from_int(-1));
    for s in 0..=(l - ctx.window.dmin) {
        let phi = bar_element(ctx, &Element::e(i, l - s))?;
        let th = if s == 0 { Element::one() } else { Element::letter(Letter::Theta(i, s)) };
        acc = acc.add(&phi.mul(&th));
    }
    normal_order_h(&expand_sym(&acc)?, &ctx.cartan)
}
