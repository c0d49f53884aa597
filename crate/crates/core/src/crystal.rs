//! Divided powers, the W'/Z' splitting, string decompositions and the loop
//! Kashiwara operators, plus bounded generation of crystal lattices.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{independent_rows, solve, Coeff, Fp, Matrix};
use crate::loopalg::{normal_order_h, split_eh, CartanData, Element, Letter, Weight, Word};
use crate::pairing::{split_by_weight, PairingContext};
use crate::scalars::{qfact_at, Scalar};
use crate::space::{pair_elem_word, pair_elem_word_fp};

pub use crate::lattice::{crystal_report, generate_lattice, mod_v_basis, LatticeBasis, LatticeGenerator, ResidueReport, Seed};

/// `E(i,n)^s x / [s]_{v_i}!`, and `0` for negative `s`.
pub fn divided_power_e(cartan: &CartanData, i: usize, n: i64, s: i64, x: &Element) -> Element {
    if s < 0 {
        return Element::zero();
    }
    let mut y = x.clone();
    for _ in 0..s {
        y = Element::e(i, n).mul(&y);
    }
    let f = qfact_at(s as u32, cartan.sym(i)).inv().expect("quantum factorials are nonzero");
    y.scale(&f)
}

fn e_only(ctx: &PairingContext, x: &Element) -> Result<Element> {
    let x = normal_order_h(x, &ctx.cartan)?;
    if !x.has_only_e() {
        return Err(Error::HLetters);
    }
    Ok(x)
}

/// Splits `x = w + z` with `w` in the span of `E(i,m)·u` (`m <= k`) and `z`
/// killed by every `F'(i,m)`, `m <= k`, working in the hull window of each
/// weight component.
pub fn decompose_z(ctx: &PairingContext, i: usize, k: i64, x: &Element) -> Result<(Element, Element)> {
    ctx.cartan.check_node(i)?;
    let x = e_only(ctx, x)?;
    let (mut w_all, mut z_all) = (Element::zero(), Element::zero());
    for (wt, part) in split_by_weight(&x, ctx.rank()) {
        let (w, z) = decompose_part(ctx, i, k, &wt, &part)?;
        w_all = w_all.add(&w);
        z_all = z_all.add(&z);
    }
    Ok((w_all, z_all))
}

fn decompose_part(ctx: &PairingContext, i: usize, k: i64, wt: &Weight, x: &Element) -> Result<(Element, Element)> {
    let win = ctx.hull(x);
    let mut family: Vec<Word> = Vec::new();
    if wt.qpart[i] > 0 {
        for m in win.dmin..=k.min(win.dmax) {
            let lower = wt.sub(&Weight::root(ctx.rank(), i, m));
            for b in &ctx.space(&lower, win, false)?.basis {
                let mut f = vec![Letter::E(i, m)];
                f.extend(b.iter().cloned());
                family.push(f);
            }
        }
    }
    if family.is_empty() {
        return Ok((Element::zero(), x.clone()));
    }
    let g: Matrix<Fp> = family.iter().map(|a| family.iter().map(|b| ctx.pair_words_fp(a, b)).collect()).collect();
    let rows = independent_rows(&g);
    let w = if rows.is_empty() {
        Element::zero()
    } else {
        let sub: Vec<&Word> = rows.iter().map(|&r| &family[r]).collect();
        let gs: Matrix<Scalar> = sub.iter().map(|a| sub.iter().map(|b| ctx.pair_words(a, b)).collect()).collect();
        let rhs: Vec<Scalar> = sub.iter().map(|f| pair_elem_word(ctx, x, f)).collect();
        let gamma = solve(&gs, &rhs)?;
        let mut w = Element::zero();
        for (f, c) in sub.iter().zip(gamma) {
            w.add_term((*f).clone(), c);
        }
        w
    };
    let z = x.sub(&w);
    if let Some(f) = family.iter().find(|f| !pair_elem_word_fp(ctx, &z, f).is_zero()) {
        return Err(Error::WindowClosure(format!(
            "weight {} does not split at node {} below degree {}: residual pairs with {}",
            wt,
            i + 1,
            k,
            crate::loopalg::fmt_word(f)
        )));
    }
    Ok((ctx.canonical(&w)?, ctx.canonical(&z)?))
}

fn require_z(ctx: &PairingContext, i: usize, n: i64, x: &Element) -> Result<Element> {
    let x = e_only(ctx, x)?;
    let (w, _) = decompose_z(ctx, i, n - 1, &x)?;
    if !w.is_zero() {
        return Err(Error::NotInZ { node: i + 1, k: n - 1 });
    }
    Ok(x)
}

/// `[x, F'x, F'^2 x, ...]` up to the last nonzero power.
fn fprime_powers(ctx: &PairingContext, i: usize, n: i64, x: &Element) -> Result<Vec<Element>> {
    let cap = split_by_weight(x, ctx.rank()).iter().map(|(w, _)| w.qpart[i]).max().unwrap_or(0);
    let mut out = vec![x.clone()];
    loop {
        let y = ctx.fprime_e(i, n, out.last().expect("nonempty"));
        if y.is_zero() {
            break;
        }
        if out.len() as i64 > cap {
            return Err(Error::NilpotencyCap { node: i + 1, n, cap });
        }
        out.push(y);
    }
    Ok(out)
}

fn pi_from_powers(ctx: &PairingContext, i: usize, n: i64, t: usize, pw: &[Element]) -> Result<Element> {
    let mut acc = Element::zero();
    for s in 0.. {
        let Some(p) = pw.get(s + t) else { break };
        let sign = if s % 2 == 0 { 1 } else { -1 };
        let c = &Scalar::from_int(sign) * &Scalar::v_pow(-((s * s.saturating_sub(1)) as i64) / 2);
        acc.add_scaled(&divided_power_e(&ctx.cartan, i, n, s as i64, p), &c);
    }
    ctx.canonical(&acc)
}

/// The projector `Pi(i,n,t) = sum_s (-1)^s v^(-s(s-1)/2) E(i,n)^(s) F'(i,n)^(s+t)`.
pub fn pi_projector(ctx: &PairingContext, i: usize, n: i64, t: u32, x: &Element) -> Result<Element> {
    let x = require_z(ctx, i, n, x)?;
    let pw = fprime_powers(ctx, i, n, &x)?;
    pi_from_powers(ctx, i, n, t as usize, &pw)
}

/// `x = sum_N E(i,n)^(N) y_N` with every `y_N` killed by `F'(i,n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StringDecomposition {
    pub node: usize,
    pub deg: i64,
    pub components: BTreeMap<u32, Element>,
}

impl StringDecomposition {
    pub fn reassemble(&self, cartan: &CartanData) -> Element {
        let mut acc = Element::zero();
        for (nn, y) in &self.components {
            acc = acc.add(&divided_power_e(cartan, self.node, self.deg, *nn as i64, y));
        }
        acc
    }
}

impl fmt::Display for StringDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.components.iter().map(|(k, y)| format!("{} -> {}", k, y)).collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

fn string_unchecked(ctx: &PairingContext, i: usize, n: i64, z: &Element) -> Result<StringDecomposition> {
    let pw = fprime_powers(ctx, i, n, z)?;
    let mut components = BTreeMap::new();
    for nn in 0..pw.len() {
        let y = pi_from_powers(ctx, i, n, nn, &pw)?;
        let y = y.scale(&Scalar::v_pow((nn * nn.saturating_sub(1) / 2) as i64));
        if !y.is_zero() {
            components.insert(nn as u32, y);
        }
    }
    Ok(StringDecomposition { node: i, deg: n, components })
}

pub fn string_decompose(ctx: &PairingContext, i: usize, n: i64, x: &Element) -> Result<StringDecomposition> {
    let x = require_z(ctx, i, n, x)?;
    string_unchecked(ctx, i, n, &x)
}

/// Ẽ (`raise = true`) or F̃ on an E-only element.
fn kashiwara_e_part(ctx: &PairingContext, i: usize, n: i64, x: &Element, raise: bool) -> Result<Element> {
    let (_, z) = decompose_z(ctx, i, n - 1, x)?;
    if z.is_zero() {
        return Ok(Element::zero());
    }
    let sd = string_unchecked(ctx, i, n, &z)?;
    let mut acc = Element::zero();
    for (nn, y) in &sd.components {
        let s = if raise { *nn as i64 + 1 } else { *nn as i64 - 1 };
        acc = acc.add(&divided_power_e(&ctx.cartan, i, n, s, y));
    }
    ctx.canonical(&acc)
}

fn kashiwara(ctx: &PairingContext, i: usize, n: i64, x: &Element, raise: bool) -> Result<Element> {
    ctx.cartan.check_node(i)?;
    let x = normal_order_h(x, &ctx.cartan)?;
    // group by H tail; the operators act on the E factor only
    let mut by_tail: BTreeMap<Word, Element> = BTreeMap::new();
    for (w, c) in x.terms() {
        let (e, h) = split_eh(w);
        by_tail.entry(h.to_vec()).or_default().add_term(e.to_vec(), c.clone());
    }
    let mut out = Element::zero();
    for (h, e) in by_tail {
        let y = kashiwara_e_part(ctx, i, n, &e, raise)?;
        out = out.add(&y.mul(&Element::word(h)));
    }
    Ok(out)
}

/// The loop Kashiwara operator Ẽ(i,n).
pub fn kashiwara_e(ctx: &PairingContext, i: usize, n: i64, x: &Element) -> Result<Element> {
    kashiwara(ctx, i, n, x, true)
}

/// The loop Kashiwara operator F̃(i,n).
pub fn kashiwara_f(ctx: &PairingContext, i: usize, n: i64, x: &Element) -> Result<Element> {
    kashiwara(ctx, i, n, x, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::qint;
    use crate::Window;

    fn ctx() -> PairingContext {
        PairingContext::new(CartanData::type_a(1), Window::new(-1, 2).unwrap())
    }

    fn e(n: i64) -> Element {
        Element::e(0, n)
    }

    #[test]
    fn divided_powers() {
        let c = CartanData::type_a(1);
        let x = e(1);
        assert_eq!(divided_power_e(&c, 0, 0, 0, &x), x);
        assert!(divided_power_e(&c, 0, 0, -1, &x).is_zero());
        let two = divided_power_e(&c, 0, 1, 2, &Element::one());
        assert_eq!(two.scale(&qint(2)), e(1).mul(&e(1)));
    }

    #[test]
    fn splitting_examples() {
        let c = ctx();
        assert_eq!(decompose_z(&c, 0, 0, &Element::one()).unwrap(), (Element::zero(), Element::one()));
        assert_eq!(decompose_z(&c, 0, 0, &e(1)).unwrap(), (Element::zero(), e(1)));
        assert_eq!(decompose_z(&c, 0, 1, &e(1)).unwrap(), (e(1), Element::zero()));
    }

    #[test]
    fn projector_examples() {
        let c = ctx();
        assert_eq!(pi_projector(&c, 0, 1, 0, &Element::one()).unwrap(), Element::one());
        assert!(pi_projector(&c, 0, 1, 0, &e(1)).unwrap().is_zero());
        assert_eq!(pi_projector(&c, 0, 1, 1, &e(1)).unwrap(), Element::one());
        assert!(matches!(pi_projector(&c, 0, 1, 0, &e(0)), Err(Error::NotInZ { .. })));
    }

    #[test]
    fn string_examples() {
        let c = ctx();
        let sd = string_decompose(&c, 0, 1, &e(1).mul(&e(1))).unwrap();
        assert_eq!(sd.components.len(), 1);
        assert_eq!(sd.components[&2], Element::scalar(qint(2)));
        assert_eq!(sd.reassemble(&c.cartan), e(1).mul(&e(1)));
    }

    #[test]
    fn kashiwara_examples() {
        let c = ctx();
        assert_eq!(kashiwara_e(&c, 0, 1, &Element::one()).unwrap(), e(1));
        assert_eq!(kashiwara_f(&c, 0, 1, &e(1)).unwrap(), Element::one());
        let e2 = divided_power_e(&c.cartan, 0, 1, 2, &Element::one());
        assert_eq!(kashiwara_e(&c, 0, 1, &e(1)).unwrap(), e2);
        assert!(kashiwara_f(&c, 0, 1, &Element::one()).unwrap().is_zero());
    }
}
