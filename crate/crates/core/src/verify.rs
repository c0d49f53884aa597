//! Verification suites. Each suite runs a family of exact identity checks on
//! a context and reports one `CHECK <name> <PASS|FAIL> <detail>` line per
//! family.

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::barcomp::{bar_element, bar_generator, bar_padded, currents_residual, jet, jet_multiply, r_m, w_filtration_span};
use crate::crystal::{
    decompose_z, divided_power_e, generate_lattice, kashiwara_e, kashiwara_f, pi_projector, string_decompose, Seed,
};
use crate::error::{Error, Result};
use crate::lattice::crystal_report;
use crate::linalg::rank_exact;
use crate::loopalg::{
    expand_sym, normal_order_h, quadratic_residual, serre_residual, serre_terms, straighten_rank1, word_weight,
    CartanData, Element, Letter, Weight, Window, Word,
};
use crate::pairing::{PairingContext, ZeroVerdict};
use crate::scalars::{qint, Laurent, Scalar};
use crate::space::test_words;
use crate::symfunc::{chi_coeff, pair_h, partitions, theta_coeff, xi_coeff, SymElement};

pub const SUITES: [&str; 12] = [
    "scalars",
    "symfunc",
    "relations",
    "pairing",
    "fprime-lemmas",
    "qboson",
    "projectors",
    "kashiwara",
    "bar",
    "jets",
    "pbw",
    "crystal",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Failures of conjectural checks are reported but do not fail the run.
    pub conjectural: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    /// Free-form lines printed before the checks.
    pub preamble: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.pass || c.conjectural)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.preamble {
            out.push_str(l);
            out.push('\n');
        }
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("CHECK {} {} {}\n", c.name, status, c.detail));
        }
        out
    }

    fn push(&mut self, t: Tally) {
        self.checks.push(t.finish());
    }
}

/// Counts cases of one family and keeps the first few failures.
struct Tally {
    name: String,
    total: usize,
    bad: usize,
    examples: Vec<String>,
    note: String,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally { name: name.to_string(), total: 0, bad: 0, examples: Vec::new(), note: String::new() }
    }

    fn record(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.bad += 1;
            if self.examples.len() < 2 {
                self.examples.push(label());
            }
        }
    }

    /// Errors count as failures.
    fn record_res(&mut self, r: Result<bool>, label: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, label),
            Err(e) => {
                let l = label();
                self.record(false, || format!("{}: {}", l, e));
            }
        }
    }

    fn finish(self) -> Check {
        let mut detail = format!("{}/{}", self.total - self.bad, self.total);
        if !self.note.is_empty() {
            detail.push(' ');
            detail.push_str(&self.note);
        }
        if !self.examples.is_empty() {
            detail.push_str(&format!(" first failures: {}", self.examples.join("; ")));
        }
        Check { name: self.name, pass: self.bad == 0 && self.total > 0, conjectural: false, detail }
    }
}

/// Runs a named suite. Unknown names are an error.
pub fn run(suite: &str, ctx: &PairingContext) -> Result<Report> {
    match suite {
        "scalars" => Ok(scalars()),
        "symfunc" => symfunc(),
        "relations" => relations(ctx),
        "pairing" => pairing(ctx),
        "fprime-lemmas" => fprime_lemmas(ctx),
        "qboson" => qboson(ctx),
        "projectors" => projectors(ctx),
        "kashiwara" => kashiwara(ctx),
        "bar" => bar(ctx),
        "jets" => jets(ctx),
        "pbw" => pbw(ctx),
        "crystal" => crystal(ctx, 3),
        _ => Err(Error::Invalid(format!("unknown suite '{}' (known: {})", suite, SUITES.join(", ")))),
    }
}

// ---------- shared helpers ----------

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed)
}

/// Zero test in the hull of `x`, so that letters below the window are seen.
fn vanishes(ctx: &PairingContext, x: &Element) -> Result<bool> {
    Ok(ctx.is_zero_in(x, ctx.hull(x))? == ZeroVerdict::PresumedZero)
}

fn vanishes_in_window(ctx: &PairingContext, x: &Element) -> Result<bool> {
    Ok(ctx.is_zero_windowed(x)? == ZeroVerdict::PresumedZero)
}

/// All E-words of length `1..=len` with degrees in `degs`.
fn e_words(rank: usize, len: usize, degs: &[i64]) -> Vec<Word> {
    let mut layer: Vec<Word> = vec![Vec::new()];
    let mut out = Vec::new();
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..rank {
                for &d in degs {
                    let mut nw = w.clone();
                    nw.push(Letter::E(i, d));
                    next.push(nw);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn window_degs(w: Window) -> Vec<i64> {
    w.degrees().collect()
}

/// Window degrees clipped to `[lo, hi]`, or the window itself when the clip is empty.
fn clipped(w: Window, lo: i64, hi: i64) -> Vec<i64> {
    let d: Vec<i64> = w.degrees().filter(|d| (lo..=hi).contains(d)).collect();
    if d.is_empty() {
        window_degs(w)
    } else {
        d
    }
}

fn random_scalar(r: &mut ChaCha8Rng) -> Scalar {
    let mut poly = || {
        let n = r.gen_range(1..=3);
        Laurent::from_terms((0..n).map(|_| (r.gen_range(-3..=3), r.gen_range(-3i64..=3).into())))
    };
    let num = poly();
    let mut den = poly();
    if den.is_zero() {
        den = Laurent::one();
    }
    Scalar::from_ratio(num, den).expect("nonzero denominator")
}

fn vmv() -> Scalar {
    &Scalar::v_pow(-2) - &Scalar::one()
}

// ---------- scalars ----------

fn scalars() -> Report {
    let mut rep = Report::default();
    let mut r = rng();
    let xs: Vec<Scalar> = (0..1000).map(|_| random_scalar(&mut r)).collect();

    let mut t = Tally::new("scalars.bar-involution");
    for x in &xs {
        t.record(&x.bar().bar() == x, || x.to_string());
    }
    rep.push(t);

    let mut t = Tally::new("scalars.field-congruence");
    for k in 0..200 {
        let (a, b, c) = (&xs[k], &xs[k + 200], &xs[k + 400]);
        let mut ok = &(&(a + b) - b) == a && &(a * &(b + c)) == &(&(a * b) + &(a * c));
        if !b.is_zero() {
            ok &= &(a * b).checked_div(b).expect("nonzero") == a;
        }
        t.record(ok, || format!("{} {} {}", a, b, c));
    }
    rep.push(t);

    let mut t = Tally::new("scalars.qint-addition");
    for m in 0..=10 {
        for n in 0..=10 {
            let rhs = &(&Scalar::v_pow(-n) * &qint(m)) + &(&Scalar::v_pow(m) * &qint(n));
            t.record(qint(m + n) == rhs, || format!("m={} n={}", m, n));
        }
    }
    rep.push(t);

    let mut t = Tally::new("scalars.valuation");
    for k in 0..300 {
        let (a, b) = (&xs[k], &xs[k + 300]);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let p = a * b;
        let mut ok = p.val0() == Some(a.val0().expect("nonzero") + b.val0().expect("nonzero"));
        if a.in_a() && b.in_a() {
            ok &= (a + b).in_a() && p.in_a();
        }
        t.record(ok, || format!("{} {}", a, b));
    }
    rep.push(t);
    rep
}

// ---------- symmetric functions ----------

fn sym_sum(node: usize, parts: impl Iterator<Item = Result<SymElement>>) -> Result<SymElement> {
    parts.fold(Ok(SymElement::zero(node)), |acc, x| Ok(acc?.add(&x?)))
}

fn symfunc() -> Result<Report> {
    let mut rep = Report::default();
    let node = 0;

    let mut t = Tally::new("symfunc.xi-chi-inverse");
    for s in 1..=8i64 {
        let sum = sym_sum(node, (0..=s).map(|r| Ok(xi_coeff(node, r)?.mul(&chi_coeff(node, s - r)?))))?;
        t.record(sum.is_zero(), || format!("s={}", s));
    }
    rep.push(t);

    let mut t = Tally::new("symfunc.theta-factorization");
    for s in 0..=8i64 {
        let rhs = sym_sum(
            node,
            (0..=s).map(|r| {
                let c = &Scalar::v_pow(-r) * &Scalar::v_pow(s - r);
                Ok(xi_coeff(node, r)?.mul(&chi_coeff(node, s - r)?).scale(&c))
            }),
        )?;
        t.record(theta_coeff(node, s)? == rhs, || format!("s={}", s));
    }
    rep.push(t);

    let mut t = Tally::new("symfunc.pair-h-gram");
    for d in 1..=6u32 {
        let ps: Vec<SymElement> = partitions(d).iter().map(|l| SymElement::power_sum(node, l)).collect();
        let mut ok = true;
        for (a, x) in ps.iter().enumerate() {
            for (b, y) in ps.iter().enumerate() {
                let g = pair_h(x, y);
                ok &= g == pair_h(y, x);
                ok &= if a == b { !g.is_zero() } else { g.is_zero() };
            }
        }
        t.record(ok, || format!("degree {}", d));
    }
    rep.push(t);

    let mut t = Tally::new("symfunc.pair-h-bilinear");
    let x = xi_coeff(node, 2)?;
    let y = theta_coeff(node, 2)?;
    let z = chi_coeff(node, 2)?;
    let c = Scalar::from_ratio(Laurent::from_terms([(1, 2.into())]), Laurent::from_terms([(0, 1.into()), (2, 1.into())]))?;
    t.record(pair_h(&x.scale(&c).add(&y), &z) == &(&c * &pair_h(&x, &z)) + &pair_h(&y, &z), || "xi,theta,chi".into());
    rep.push(t);
    Ok(rep)
}

// ---------- relations ----------

fn serre_instances(ctx: &PairingContext) -> Vec<(usize, usize, Vec<i64>, i64)> {
    let c = &ctx.cartan;
    let degs = window_degs(ctx.window);
    let base = degs.iter().copied().find(|&d| d >= 0 && d + 1 <= ctx.window.dmax).unwrap_or(ctx.window.dmin);
    let top = (base + 1).min(ctx.window.dmax);
    let mut out = Vec::new();
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            if i == j || c.a(i, j) == 0 {
                continue;
            }
            let r = (1 - c.a(i, j)) as usize;
            let mut d1 = vec![base; r];
            d1[r - 1] = top;
            out.push((i, j, d1, base));
            out.push((i, j, vec![base; r], top));
        }
    }
    out
}

fn relations(ctx: &PairingContext) -> Result<Report> {
    let mut rep = Report::default();
    let c = &ctx.cartan;
    let w = ctx.window;

    let mut t = Tally::new("relations.quadratic");
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            for l in w.dmin..w.dmax {
                for m in w.dmin..w.dmax {
                    let r = quadratic_residual(c, i, j, l, m)?;
                    t.record_res(vanishes_in_window(ctx, &r), || format!("({},{};{},{})", i + 1, j + 1, l, m));
                }
            }
        }
    }
    rep.push(t);

    let inst = serre_instances(ctx);
    if !inst.is_empty() {
        let mut t = Tally::new("relations.serre");
        for (i, j, d, lp) in inst {
            let r = serre_residual(c, i, j, &d, lp)?;
            t.record_res(vanishes_in_window(ctx, &r), || format!("({},{};{:?};{})", i + 1, j + 1, d, lp));
        }
        rep.push(t);
    }

    // straightening against the pairing, on sampled single-node words
    let mut t = Tally::new("relations.straighten-sound");
    let mut g = Tally::new("relations.grading");
    let mut r = rng();
    let degs = window_degs(w);
    for k in 0..200 {
        let node = k % c.rank();
        let len = r.gen_range(1..=3);
        let word: Word = (0..len).map(|_| Letter::E(node, degs[r.gen_range(0..degs.len())])).collect();
        let x = Element::word(word.clone());
        let s = straighten_rank1(&x, node, c)?;
        let wt = word_weight(&word, c.rank());
        g.record(s.weight(c.rank())?.map_or(true, |sw| sw == wt), || Element::word(word.clone()).to_string());
        let mut ok = true;
        for y in test_words(&wt, w, c.rank(), false) {
            let y = Element::word(y);
            ok &= ctx.hopf_pair(&x, &y)? == ctx.hopf_pair(&s, &y)?;
        }
        t.record(ok, || x.to_string());
    }
    rep.push(t);

    let mut t = Tally::new("relations.normal-order-idempotent");
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            for s in 1..=2 {
                for &l in degs.iter().take(3) {
                    let x = Element::word(vec![Letter::H(i, s), Letter::E(j, l), Letter::H(j, 1)]);
                    let n = normal_order_h(&x, c)?;
                    let wt = x.weight(c.rank())?;
                    g.record(n.weight(c.rank())? == wt, || x.to_string());
                    t.record(normal_order_h(&n, c)? == n, || x.to_string());
                }
            }
        }
    }
    rep.push(t);
    rep.push(g);
    Ok(rep)
}

// ---------- pairing ----------

fn pairing(ctx: &PairingContext) -> Result<Report> {
    let mut rep = Report::default();
    let c = &ctx.cartan;
    let w = ctx.window;
    let inv = vmv().inv()?;

    let mut t = Tally::new("pairing.base-values");
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            for k in w.degrees() {
                for l in w.degrees() {
                    let want = if i == j && k == l { inv.clone() } else { Scalar::zero() };
                    t.record(ctx.hopf_pair(&Element::e(i, k), &Element::e(j, l))? == want, || format!("E({},{}) E({},{})", i + 1, k, j + 1, l));
                }
            }
        }
    }
    let p1 = SymElement::power_sum(0, &[1]);
    let want = qint(2).checked_div(&(&Scalar::v_pow(-1) - &Scalar::v_pow(1)))?;
    t.record(pair_h(&p1, &p1) == want, || "(p1,p1)".into());
    for x in [Element::e(0, w.dmin), Element::letter(Letter::H(0, 1))] {
        t.record(ctx.hopf_pair(&x, &Element::letter(Letter::H(0, 1)))?.is_zero() == x.has_only_e(), || format!("{} vs H(1,1)", x));
    }
    rep.push(t);

    // two-letter Gram values on every node with b_ii = 2 whose window holds 0 and 1
    if w.contains(0) && w.contains(1) {
        let mut t = Tally::new("pairing.gram-two-letters");
        for i in (0..c.rank()).filter(|&i| c.b(i, i) == 2) {
            let a = Element::word(vec![Letter::E(i, 1), Letter::E(i, 0)]);
            let b = Element::word(vec![Letter::E(i, 0), Letter::E(i, 1)]);
            let d2 = &vmv() * &vmv();
            let g = ctx.gram(&[a.clone(), b.clone()], &[a.clone(), b.clone()])?;
            t.record(g[0][0] == Scalar::v_pow(-4).checked_div(&d2)?, || "(E1E0,E1E0)".into());
            t.record(g[1][0] == Scalar::v_pow(-2).checked_div(&d2)?, || "(E0E1,E1E0)".into());
            t.record(rank_exact(&g) == 1, || "rank".into());
        }
        rep.push(t);
    }

    let mut t = Tally::new("pairing.symmetry");
    let degs = clipped(w, -1, 2);
    let maxlen = if c.rank() == 1 { 3 } else { 2 };
    let words = e_words(c.rank(), maxlen, &degs);
    for (a, x) in words.iter().enumerate() {
        for y in words.iter().skip(a) {
            if word_weight(x, c.rank()) != word_weight(y, c.rank()) {
                continue;
            }
            t.record(ctx.pair_words(x, y) == ctx.pair_words(y, x), || format!("{} {}", Element::word(x.clone()), Element::word(y.clone())));
        }
    }
    rep.push(t);

    // (x, F'_{i,n} y) against (E_{i,n} x, y)
    let mut derived = Tally::new("pairing.admissibility-derived-sign");
    let mut quoted = Tally::new("pairing.admissibility-quoted-sign");
    let singles = e_words(c.rank(), 1, &degs);
    let pairs: Vec<Word> = e_words(c.rank(), 2, &degs).into_iter().filter(|w| w.len() == 2).collect();
    for x in &singles {
        for i in 0..c.rank() {
            for &n in &degs {
                let ex = Element::word([vec![Letter::E(i, n)], x.clone()].concat());
                let wt = word_weight(x, c.rank()).add(&Weight::root(c.rank(), i, n));
                for y in pairs.iter().filter(|y| word_weight(y, c.rank()) == wt) {
                    let y = Element::word(y.clone());
                    let lhs = ctx.hopf_pair(&Element::word(x.clone()), &ctx.fprime(i, n, &y)?)?;
                    let rhs = ctx.hopf_pair(&ex, &y)?;
                    let vi = Scalar::v_pow(-2 * c.sym(i));
                    let label = || format!("x={} i={} n={} y={}", Element::word(x.clone()), i + 1, n, y);
                    derived.record(lhs == &vmv() * &rhs, label);
                    quoted.record(lhs == &(&Scalar::one() - &vi) * &rhs, label);
                }
            }
        }
    }
    quoted.note = "(factor 1 - v_i^-2; the defining formulas give v^-2 - 1)".into();
    rep.push(derived);
    rep.push(quoted);

    let mut t = Tally::new("pairing.fprime-values");
    for i in 0..c.rank() {
        for n in w.degrees() {
            t.record(ctx.fprime(i, n, &Element::one())?.is_zero(), || format!("F'({},{})1", i + 1, n));
            t.record(ctx.fprime(i, n, &Element::e(i, n))? == Element::one(), || format!("F'({},{})E", i + 1, n));
        }
        if c.b(i, i) == 2 {
            let x = Element::word(vec![Letter::E(i, 1), Letter::E(i, 0)]);
            let want = Element::e(i, 0).scale(&Scalar::v_pow(-4));
            t.record(ctx.fprime(i, 1, &x)? == want, || format!("F'({},1)E(1)E(0)", i + 1));
        }
    }
    rep.push(t);
    Ok(rep)
}

// ---------- F' lemmas ----------

/// `F'_{ops[0]} ... F'_{ops[k-1]} x`, innermost operator last.
fn fprime_chain(ctx: &PairingContext, ops: &[(usize, i64)], x: &Element) -> Result<Element> {
    let mut y = x.clone();
    for &(i, n) in ops.iter().rev() {
        if y.is_zero() {
            break;
        }
        y = ctx.fprime(i, n, &y)?;
    }
    Ok(y)
}

fn lowest_degree(w: &[Letter], node: usize) -> Option<i64> {
    w.iter().filter(|l| l.is_e() && l.node() == node).map(Letter::loopdeg).min()
}

fn fprime_lemmas(ctx: &PairingContext) -> Result<Report> {
    let mut rep = Report::default();
    let c = &ctx.cartan;
    let w = ctx.window;
    let rank = c.rank();
    let degs = window_degs(w);
    let words2 = e_words(rank, 2, &degs);

    // F'_{i,l+1}F'_{j,m} - v^b F'_{j,m}F'_{i,l+1} - v^b F'_{i,l}F'_{j,m+1} + F'_{j,m+1}F'_{i,l}
    let mut t = Tally::new("fprime-lemmas.quadratic");
    for i in 0..rank {
        for j in 0..rank {
            let vb = Scalar::v_pow(c.b(i, j));
            for l in w.dmin..w.dmax {
                for m in w.dmin..w.dmax {
                    let target = Weight::root(rank, i, l + 1).add(&Weight::root(rank, j, m));
                    for x in words2.iter().filter(|x| word_weight(x, rank) == target) {
                        let x = Element::word(x.clone());
                        let mut acc = fprime_chain(ctx, &[(i, l + 1), (j, m)], &x)?;
                        acc.add_scaled(&fprime_chain(ctx, &[(j, m), (i, l + 1)], &x)?, &-&vb);
                        acc.add_scaled(&fprime_chain(ctx, &[(i, l), (j, m + 1)], &x)?, &-&vb);
                        acc.add_scaled(&fprime_chain(ctx, &[(j, m + 1), (i, l)], &x)?, &Scalar::one());
                        t.record(acc.is_zero(), || format!("({},{};{},{}) on {}", i + 1, j + 1, l, m, x));
                    }
                }
            }
        }
    }
    rep.push(t);

    let inst = serre_instances(ctx);
    if !inst.is_empty() {
        let mut t = Tally::new("fprime-lemmas.serre");
        for (i, j, d, lp) in inst {
            let terms = serre_terms(c, i, j, &d, lp)?;
            let target = word_weight(&terms[0].0, rank);
            let len = terms[0].0.len();
            for x in e_words(rank, len, &degs).into_iter().filter(|x| x.len() == len && word_weight(x, rank) == target) {
                let x = Element::word(x);
                let mut acc = Element::zero();
                for (word, coeff) in &terms {
                    let ops: Vec<(usize, i64)> = word.iter().map(|l| (l.node(), l.loopdeg())).collect();
                    acc.add_scaled(&fprime_chain(ctx, &ops, &x)?, coeff);
                }
                t.record(acc.is_zero(), || format!("({},{};{:?};{}) on {}", i + 1, j + 1, d, lp, x));
            }
        }
        rep.push(t);
    }

    // F'_{i,m}E_{j,n} - v^-b E_{j,n}F'_{i,m} - δ - Σ_t v^-tb (v^-b - v^b) E_{j,n-t}F'_{i,m-t}
    let mut t = Tally::new("fprime-lemmas.commutation");
    let mut skipped = 0usize;
    let mut inputs: Vec<Word> = vec![Vec::new()];
    inputs.extend(words2.iter().cloned());
    for i in 0..rank {
        for j in 0..rank {
            let b = c.b(i, j);
            let k = &Scalar::v_pow(-b) - &Scalar::v_pow(b);
            for m in w.degrees() {
                for n in w.degrees() {
                    for x in &inputs {
                        let reach = lowest_degree(x, i).map_or(0, |lo| (m - lo).max(0));
                        if n - reach < w.dmin {
                            skipped += 1;
                            continue;
                        }
                        let xe = Element::word(x.clone());
                        let mut acc = ctx.fprime(i, m, &Element::e(j, n).mul(&xe))?;
                        acc.add_scaled(&Element::e(j, n).mul(&ctx.fprime(i, m, &xe)?), &-&Scalar::v_pow(-b));
                        if i == j && n == m {
                            acc.add_scaled(&xe, &Scalar::from_int(-1));
                        }
                        for s in 1..=reach {
                            let f = ctx.fprime(i, m - s, &xe)?;
                            if !f.is_zero() {
                                let cst = &Scalar::v_pow(-s * b) * &k;
                                acc.add_scaled(&Element::e(j, n - s).mul(&f), &-&cst);
                            }
                        }
                        t.record_res(vanishes(ctx, &acc), || format!("F'({},{})E({},{}) on {}", i + 1, m, j + 1, n, xe));
                    }
                }
            }
        }
    }
    t.note = format!("({} inputs whose tail leaves the window skipped)", skipped);
    rep.push(t);

    let mut t = Tally::new("fprime-lemmas.zprime-subalgebra");
    let singles = e_words(rank, 1, &degs);
    for i in 0..rank {
        for k in w.dmin..w.dmax {
            let mut zs = Vec::new();
            for x in &words2 {
                let z = decompose_z(ctx, i, k, &Element::word(x.clone()))?.1;
                if !z.is_zero() {
                    zs.push(z);
                }
            }
            let mut z1s = Vec::new();
            for x in &singles {
                let z = decompose_z(ctx, i, k, &Element::word(x.clone()))?.1;
                if !z.is_zero() {
                    z1s.push(z);
                }
            }
            for a in zs.iter().filter(|z| z.len() <= 2).step_by(3) {
                for b in &z1s {
                    let p = a.mul(b);
                    let r = decompose_z(ctx, i, k, &p).and_then(|(wpart, _)| vanishes(ctx, &wpart));
                    t.record_res(r, || format!("i={} k={} ({})({})", i + 1, k, a, b));
                }
            }
        }
    }
    rep.push(t);
    Ok(rep)
}

// ---------- q-Boson and divided powers ----------

/// Nonzero Z'_{i,n-1}-parts of the given words.
/// Distinct nonzero `Z'`-parts (below degree `n`) of the given words, with the
/// number of candidates dropped because an `F'(i,m)`, `m < n`, fails to kill
/// them exactly. That happens when the obstruction lands below the window.
fn zprime_parts(ctx: &PairingContext, i: usize, n: i64, words: &[Word]) -> Result<(Vec<Element>, usize)> {
    let mut out: Vec<Element> = Vec::new();
    let mut dropped = 0;
    for x in words {
        let z = decompose_z(ctx, i, n - 1, &Element::word(x.clone()))?.1;
        if z.is_zero() || out.contains(&z) {
            continue;
        }
        let mut killed = true;
        for m in ctx.hull(&z).dmin..n {
            if !vanishes(ctx, &ctx.fprime(i, m, &z)?)? {
                killed = false;
                break;
            }
        }
        if killed {
            out.push(z);
        } else {
            dropped += 1;
        }
    }
    Ok((out, dropped))
}

fn qboson(ctx: &PairingContext) -> Result<Report> {
    let mut rep = Report::default();
    let c = &ctx.cartan;
    let rank = c.rank();
    let degs = clipped(ctx.window, -1, 2);
    let mut short: Vec<Word> = vec![Vec::new()];
    short.extend(e_words(rank, 1, &degs));
    let mut long = short.clone();
    long.extend(e_words(rank, 2, &degs).into_iter().filter(|w| w.len() == 2));

    let mut q = Tally::new("qboson.relation");
    let mut d = Tally::new("qboson.divided-powers");
    let mut skipped = 0;
    for i in 0..rank {
        let vi = |k: i64| Scalar::v_pow(k * c.sym(i));
        for &n in &degs {
            let e = Element::e(i, n);
            let (zs, dropped) = zprime_parts(ctx, i, n, &long)?;
            skipped += dropped;
            for z in zs {
                let mut acc = ctx.fprime(i, n, &e.mul(&z))?;
                acc.add_scaled(&e.mul(&ctx.fprime(i, n, &z)?), &-&vi(-2));
                acc.add_scaled(&z, &Scalar::from_int(-1));
                q.record_res(vanishes(ctx, &acc), || format!("i={} n={} z={}", i + 1, n, z));

                let smax = if z.terms().all(|(w, _)| w.len() <= 1) { 4 } else { 2 };
                let fz = ctx.fprime(i, n, &z)?;
                for s in 1..=smax {
                    let mut acc = ctx.fprime(i, n, &divided_power_e(c, i, n, s, &z))?;
                    acc.add_scaled(&divided_power_e(c, i, n, s, &fz), &-&vi(-2 * s));
                    acc.add_scaled(&divided_power_e(c, i, n, s - 1, &z), &-&vi(-(s - 1)));
                    d.record_res(vanishes(ctx, &acc), || format!("i={} n={} s={} z={}", i + 1, n, s, z));
                }
            }
        }
    }
    let note = format!("({} projections not in Z' skipped)", skipped);
    q.note = note.clone();
    d.note = note;
    rep.push(q);
    rep.push(d);
    Ok(rep)
}

// ---------- projectors ----------

fn projectors(ctx: &PairingContext) -> Result<Report> {
    let mut rep = Report::default();
    let c = &ctx.cartan;
    let rank = c.rank();
    let degs = clipped(ctx.window, -1, 2);
    let mut words: Vec<Word> = vec![Vec::new()];
    words.extend(e_words(rank, 2, &degs));

    let mut kill = Tally::new("projectors.fprime-kills-pi");
    let mut sum = Tally::new("projectors.string-sum-identity");
    let mut inj = Tally::new("projectors.e-injective");
    let mut skipped = 0;
    for i in 0..rank {
        for &n in &degs {
            let (zs, dropped) = zprime_parts(ctx, i, n, &words)?;
            skipped += dropped;
            for z in zs {
                for t in 0..=3u32 {
                    let r = pi_projector(ctx, i, n, t, &z).and_then(|p| vanishes(ctx, &ctx.fprime(i, n, &p)?));
                    kill.record_res(r, || format!("i={} n={} t={} z={}", i + 1, n, t, z));
                }
                let r = string_decompose(ctx, i, n, &z).and_then(|sd| vanishes(ctx, &sd.reassemble(c).sub(&z)));
                sum.record_res(r, || format!("i={} n={} z={}", i + 1, n, z));
            }
            // Gram rank of Z'-parts of a weight space against that of their E-translates
            let mut weights: Vec<Weight> = words.iter().map(|w| word_weight(w, rank)).collect();
            weights.sort();
            weights.dedup();
            for wt in weights {
                let sp = ctx.space(&wt, ctx.window, false)?;
                let zs = zprime_parts(ctx, i, n, &sp.basis)?.0;
                if zs.is_empty() {
                    continue;
                }
                let ez: Vec<Element> = zs.iter().map(|z| Element::e(i, n).mul(z)).collect();
                let r0 = rank_exact(&ctx.gram(&zs, &zs)?);
                let r1 = rank_exact(&ctx.gram(&ez, &ez)?);
                inj.record(r0 == r1, || format!("i={} n={} weight {:?}: {} vs {}", i + 1, n, wt, r0, r1));
            }
        }
    }
    let note = format!("({} projections not in Z' skipped)", skipped);
    kill.note = note.clone();
    sum.note = note;
    rep.push(kill);
    rep.push(sum);
    rep.push(inj);
    Ok(rep)
}

// ---------- Kashiwara operators ----------

fn kashiwara(ctx: &PairingContext) -> Result<Report> {
    let mut rep = Report::default();
    let c = &ctx.cartan;
    let mut t = Tally::new("kashiwara.examples");
    for i in 0..c.rank() {
        for n in ctx.window.degrees() {
            let e = Element::e(i, n);
            t.record_res(kashiwara_e(ctx, i, n, &Element::one()).map(|y| y == e), || format!("E~({},{})1", i + 1, n));
            t.record_res(kashiwara_f(ctx, i, n, &e).map(|y| y == Element::one()), || format!("F~({},{})E", i + 1, n));
            t.record_res(kashiwara_f(ctx, i, n, &Element::one()).map(|y| y.is_zero()), || format!("F~({},{})1", i + 1, n));
            let r = kashiwara_e(ctx, i, n, &e).and_then(|y| vanishes(ctx, &y.sub(&divided_power_e(c, i, n, 2, &Element::one()))));
            t.record_res(r, || format!("E~({},{})E", i + 1, n));
        }
    }
    rep.push(t);

    let depth = if c.rank() == 1 { 2 } else { 1 };
    let lat = generate_lattice(ctx, depth, &[Seed::One])?;
    let mut t = Tally::new("kashiwara.f-inverts-e");
    for g in &lat.generators {
        for i in 0..c.rank() {
            for n in ctx.window.degrees() {
                let r: Result<Option<bool>> = (|| {
                    let y = kashiwara_e(ctx, i, n, &g.element)?;
                    if vanishes(ctx, &y)? {
                        return Ok(None);
                    }
                    let back = kashiwara_f(ctx, i, n, &y)?;
                    Ok(Some(vanishes(ctx, &back.sub(&g.element))?))
                })();
                match r {
                    Ok(None) => {}
                    Ok(Some(ok)) => t.record(ok, || format!("F~E~({},{}) on {}", i + 1, n, g.label(&lat.seeds))),
                    Err(e) => t.record(false, || format!("({},{}) on {}: {}", i + 1, n, g.label(&lat.seeds), e)),
                }
            }
        }
    }
    t.note = format!("(depth <= {} generators, nonzero images)", depth);
    rep.push(t);
    Ok(rep)
}

// ---------- bar involution ----------

fn rat(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn bar(ctx: &PairingContext) -> Result<Report> {
    let mut rep = Report::default();
    let c = &ctx.cartan;
    let w = ctx.window;
    let nu = &Scalar::v_pow(-1) - &Scalar::v_pow(1);

    let mut t = Tally::new("bar.generator-terms");
    for i in 0..c.rank() {
        for l in w.degrees() {
            let mut one = Element::e(i, l);
            one.add_term(vec![Letter::E(i, l - 1), Letter::Xi(i, 1)], -&nu);
            t.record(bar_generator(i, l, l - 1) == one, || format!("t=1 at ({},{})", i + 1, l));
            t.record(bar_generator(i, l, l) == Element::e(i, l), || format!("empty tail at ({},{})", i + 1, l));
            let two = bar_generator(i, l, l - 2).coeff(&[Letter::E(i, l - 2), Letter::Xi(i, 1), Letter::Xi(i, 1)]);
            t.record(two == &nu * &Scalar::v_pow(-1), || format!("t=2 at ({},{})", i + 1, l));
        }
    }
    rep.push(t);

    let mut t = Tally::new("bar.fixes-xi-bars-scalars");
    for i in 0..c.rank() {
        for s in 1..=3 {
            let xi = Element::letter(Letter::Xi(i, s));
            let r = bar_element(ctx, &xi).and_then(|b| Ok(b == normal_order_h(&expand_sym(&xi)?, c)?));
            t.record_res(r, || format!("xi({},{})", i + 1, s));
        }
    }
    let v = Element::scalar(Scalar::v_pow(1));
    t.record_res(bar_element(ctx, &v).map(|b| b == Element::scalar(Scalar::v_pow(-1))), || "v".into());
    rep.push(t);

    let mut t = Tally::new("bar.involution-jets");
    for i in 0..c.rank() {
        for l in w.degrees().filter(|&l| l >= 0) {
            let x = Element::e(i, l);
            let r = (|| {
                let y = bar_element(ctx, &bar_element(ctx, &x)?)?;
                let mut ok = true;
                for m in w.degrees() {
                    ok &= jet(ctx, &y, rat(m))?.value == jet(ctx, &x, rat(m))?.value;
                }
                Ok(ok)
            })();
            t.record_res(r, || format!("E({},{})", i + 1, l));
        }
    }
    rep.push(t);

    // relations: each residual is tested in the window spanned by its own letters
    let mut t = Tally::new("bar.quadratic");
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            for l in w.dmin..w.dmax {
                for m in w.dmin..w.dmax {
                    let r = quadratic_residual(c, i, j, l, m)?;
                    let sub = ctx.with_window(Window::new(l.min(m), l.max(m) + 1)?);
                    let res = bar_padded(&sub, &r).and_then(|b| vanishes_in_window(&sub, &b));
                    t.record_res(res, || format!("({},{};{},{})", i + 1, j + 1, l, m));
                }
            }
        }
    }
    t.note = "(padded cut, tested in the residual's own degree range)".into();
    rep.push(t);

    if let Some((i, j, d, lp)) = serre_instances(ctx).into_iter().next() {
        let mut t = Tally::new("bar.serre");
        let lo = d.iter().copied().chain([lp]).min().expect("nonempty");
        let hi = d.iter().copied().chain([lp]).max().expect("nonempty");
        let sub = ctx.with_window(Window::new(lo, hi)?);
        let r = serre_residual(c, i, j, &d, lp)?;
        t.record_res(bar_padded(&sub, &r).and_then(|b| vanishes_in_window(&sub, &b)), || format!("({},{};{:?};{})", i + 1, j + 1, d, lp));
        rep.push(t);
    }

    let mut t = Tally::new("bar.currents");
    let padded = ctx.with_window(Window::new(w.dmin - 2, w.dmax)?);
    for i in 0..c.rank() {
        for l in w.degrees() {
            let r = currents_residual(&padded, i, l).and_then(|x| Ok(ctx.is_zero_in(&x, w)? == ZeroVerdict::PresumedZero));
            t.record_res(r, || format!("z^{} at node {}", l, i + 1));
        }
    }
    rep.push(t);

    // φ of a W_m-member stays in W_m, computed over the padded window
    let mut t = Tally::new("bar.filtration");
    for i in 0..c.rank().min(1) {
        for d in [2 * w.dmin + 1, 2 * w.dmin + 2] {
            let alpha = Weight { qpart: (0..c.rank()).map(|k| if k == i { 2 } else { 0 }).collect(), loopdeg: d };
            let m = rat(w.dmin);
            let span = w_filtration_span(ctx, &alpha, m, w)?;
            for f in &span.family {
                let pc = ctx.with_window(Window::new(w.dmin - bar_padding_of(ctx, f), w.dmax)?);
                let r = (|| {
                    let b = bar_element(&pc, f)?;
                    let j = crate::barcomp::jet_in(&pc, &b, m, pc.window)?;
                    vanishes(&pc, &j.value)
                })();
                t.record_res(r, || format!("{} at level {}", f, m));
            }
        }
    }
    rep.push(t);
    Ok(rep)
}

fn bar_padding_of(ctx: &PairingContext, x: &Element) -> i64 {
    crate::barcomp::bar_padding(ctx, x)
}

// ---------- jets ----------

fn random_word(r: &mut ChaCha8Rng, node: usize, degs: &[i64], len: usize) -> Element {
    Element::word((0..len).map(|_| Letter::E(node, degs[r.gen_range(0..degs.len())])).collect())
}

fn jets(ctx: &PairingContext) -> Result<Report> {
    let mut rep = Report::default();
    let c = &ctx.cartan;
    // Weight spaces with H-letters grow fast with the window width; the
    // checks run in the part of the window within [-1, 2].
    let sub = clipped(ctx.window, -1, 2);
    let ctx = &ctx.with_window(Window::new(sub[0], sub[sub.len() - 1])?);
    let w = ctx.window;
    rep.preamble.push(format!("checks run in window {}", w));
    let degs = window_degs(w);
    let levels: Vec<Rational64> = degs.iter().map(|&d| rat(d)).chain([Rational64::new(2 * w.dmin + 1, 2)]).collect();
    let mut r = rng();

    let mut idem = Tally::new("jets.idempotence");
    let mut dec = Tally::new("jets.decomposition");
    let mut empty = Tally::new("jets.empty-span");
    for k in 0..20 {
        let node = k % c.rank();
        let x = random_word(&mut r, node, &degs, 2);
        let res = (|| {
            let cx = ctx.canonical(&x)?;
            let below = jet(ctx, &x, rat(w.dmin - 1))?;
            empty.record(ctx.canonical(&below.value)? == cx, || x.to_string());
            for &m in &levels {
                let j = jet(ctx, &x, m)?;
                idem.record(jet(ctx, &j.value, m)?.value == j.value, || format!("{} at {}", x, m));
                let back = ctx.canonical(&r_m(ctx, &x, m)?.add(&j.value))?;
                dec.record(back == cx, || format!("{} at {}", x, m));
            }
            Ok::<_, Error>(())
        })();
        if let Err(e) = res {
            idem.record(false, || format!("{}: {}", x, e));
        }
    }
    rep.push(idem);
    rep.push(dec);
    rep.push(empty);

    let mut mono = Tally::new("jets.span-monotone");
    let alpha = Weight { qpart: (0..c.rank()).map(|k| if k == 0 { 2 } else { 0 }).collect(), loopdeg: w.dmin + w.dmax };
    let mut prev = 0usize;
    for &m in &degs {
        let s = w_filtration_span(ctx, &alpha, rat(m), w)?;
        mono.record(s.rank >= prev, || format!("level {}", m));
        prev = s.rank;
    }
    rep.push(mono);

    // Products reach height 3, whose spaces grow quickly with the window width,
    // so they are formed in the part of the window within [-1, 1].
    let near = clipped(w, -1, 1);
    let ctx = &ctx.with_window(Window::new(near[0], near[near.len() - 1])?);
    let degs = near;
    rep.preamble.push(format!("products formed in window {}", ctx.window));
    let mut unit = Tally::new("jets.unit-and-weight");
    let mut stab = Tally::new("jets.padding-stability");
    for k in 0..100 {
        let a = random_word(&mut r, 0, &degs, 1 + k % 2);
        let b = random_word(&mut r, 0, &degs, 1);
        let n = rat(degs[r.gen_range(0..degs.len())]);
        let res = (|| {
            let ha = rat(a.weight(c.rank())?.expect("nonzero").height());
            let wa = a.weight(c.rank())?.expect("nonzero");
            let wb = b.weight(c.rank())?.expect("nonzero");
            let p1 = jet_multiply(ctx, &jet(ctx, &a, n)?, &jet(ctx, &b, n - ha)?, n)?;
            let p2 = jet_multiply(ctx, &jet(ctx, &a, n - 1)?, &jet(ctx, &b, n - ha - 1)?, n)?;
            unit.record(p1.weight == wa.add(&wb), || format!("{} {}", a, b));
            let u = jet_multiply(ctx, &jet(ctx, &Element::one(), n)?, &jet(ctx, &b, n)?, n)?;
            unit.record(u.value == jet(ctx, &b, n)?.value, || format!("1·{}", b));
            Ok::<_, Error>(p1.value == p2.value)
        })();
        stab.record_res(res, || format!("{} · {} at {}", a, b, n));
    }
    rep.push(unit);
    rep.push(stab);

    let mut assoc = Tally::new("jets.associativity");
    for _ in 0..30 {
        let (a, b, x) = (random_word(&mut r, 0, &degs, 1), random_word(&mut r, 0, &degs, 1), random_word(&mut r, 0, &degs, 1));
        let n = rat(degs[r.gen_range(0..degs.len())]);
        let res = (|| {
            let (ja, jb, jx) = (jet(ctx, &a, n)?, jet(ctx, &b, n - 1)?, jet(ctx, &x, n - 2)?);
            let left = jet_multiply(ctx, &jet_multiply(ctx, &ja, &jb, n)?, &jx, n)?;
            let right = jet_multiply(ctx, &ja, &jet_multiply(ctx, &jb, &jx, n - 1)?, n)?;
            Ok(left.value == right.value)
        })();
        assoc.record_res(res, || format!("{} {} {} at {}", a, b, x, n));
    }
    rep.push(assoc);
    Ok(rep)
}

// ---------- PBW monomials ----------

/// Strictly decreasing degrees with positive exponents, total exponent `<= max_count`.
pub fn pbw_e_parts(node: usize, degs: &[i64], max_count: u32) -> Vec<Vec<(i64, u32)>> {
    let mut sorted: Vec<i64> = degs.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    fn go(node: usize, d: &[i64], left: u32, cur: &mut Vec<(i64, u32)>, out: &mut Vec<Vec<(i64, u32)>>) {
        out.push(cur.clone());
        for (k, &deg) in d.iter().enumerate() {
            for s in 1..=left {
                cur.push((deg, s));
                go(node, &d[k + 1..], left - s, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(node, &sorted, max_count, &mut Vec::new(), &mut out);
    out
}

/// `E^{(s1)}_{n1} ... E^{(sk)}_{nk} · b(node, λ)`.
pub fn pbw_element(cartan: &CartanData, node: usize, e: &[(i64, u32)], lam: &[u32]) -> Element {
    let mut x = if lam.is_empty() { Element::one() } else { Element::letter(Letter::Schur(node, lam.to_vec())) };
    for &(d, s) in e.iter().rev() {
        x = divided_power_e(cartan, node, d, s as i64, &x);
    }
    x
}

fn pbw(ctx: &PairingContext) -> Result<Report> {
    let mut rep = Report::default();
    let c = &ctx.cartan;
    let node = 0;
    let degs = clipped(ctx.window, 0, 2);
    let seeds: Vec<Vec<u32>> = vec![vec![], vec![1], vec![2], vec![1, 1]];
    let parts = pbw_e_parts(node, &degs, 3);

    let mut by_weight: std::collections::BTreeMap<Weight, Vec<Element>> = Default::default();
    for e in &parts {
        for lam in &seeds {
            let x = pbw_element(c, node, e, lam);
            let wt = x.weight(c.rank())?.unwrap_or_else(|| Weight::zero(c.rank()));
            by_weight.entry(wt).or_default().push(x);
        }
    }
    let mut t = Tally::new("pbw.gram-rank");
    for (wt, xs) in &by_weight {
        let g = ctx.gram(xs, xs)?;
        let rk = rank_exact(&g);
        t.record(rk == xs.len(), || format!("weight {:?}: rank {} of {}", wt, rk, xs.len()));
    }
    t.note = format!("({} monomials, degrees {:?})", parts.len() * seeds.len(), degs);
    rep.push(t);

    // straightening every word spans exactly the decreasing monomials
    let mut t = Tally::new("pbw.straightening-span");
    let mut spans: std::collections::BTreeMap<Weight, Vec<Vec<(Word, Scalar)>>> = Default::default();
    for word in e_words(1, 3, &degs) {
        let word: Word = word.into_iter().map(|l| Letter::E(node, l.loopdeg())).collect();
        let s = straighten_rank1(&Element::word(word.clone()), node, c)?;
        spans.entry(word_weight(&word, c.rank())).or_default().push(crate::loopalg::to_dp_coordinates(&s, c));
    }
    let mut counts: std::collections::BTreeMap<Weight, usize> = Default::default();
    for e in parts.iter().filter(|e| !e.is_empty()) {
        let x = pbw_element(c, node, e, &[]);
        *counts.entry(x.weight(c.rank())?.expect("nonzero")).or_default() += 1;
    }
    for (wt, rows) in &spans {
        let mut cols: Vec<Word> = rows.iter().flat_map(|r| r.iter().map(|(w, _)| w.clone())).collect();
        cols.sort();
        cols.dedup();
        let m: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| cols.iter().map(|w| r.iter().find(|(x, _)| x == w).map_or(Scalar::zero(), |(_, s)| s.clone())).collect())
            .collect();
        let rk = rank_exact(&m);
        let want = counts.get(wt).copied().unwrap_or(0);
        t.record(rk == want, || format!("weight {:?}: span {} vs {} monomials", wt, rk, want));
    }
    rep.push(t);
    Ok(rep)
}

// ---------- crystal ----------

/// Wraps the lattice report; items 1-5 are the conjectural ones.
pub fn crystal(ctx: &PairingContext, depth: usize) -> Result<Report> {
    let lines = crystal_report(ctx, depth)?;
    let mut rep = Report { preamble: lines.clone(), checks: Vec::new() };
    for l in &lines {
        let mut it = l.splitn(4, ' ');
        let (Some("ITEM"), Some(k), Some(status), rest) = (it.next(), it.next(), it.next(), it.next()) else {
            continue;
        };
        let k: usize = k.parse().map_err(|_| Error::Invalid(format!("malformed report line: {}", l)))?;
        let conjectural = k <= 5;
        let mut detail = rest.unwrap_or("").to_string();
        if status == "WINDOW-LIMITED" {
            detail = format!("window-limited {}", detail);
        }
        rep.checks.push(Check { name: format!("crystal.item-{}", k), pass: status == "PASS", conjectural, detail });
    }
    Ok(rep)
}
