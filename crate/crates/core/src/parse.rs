//! Text input: scalars, elements, Cartan configuration files and lattice seeds.
//!
//! ```text
//! element := term (('+'|'-') term)*
//! term    := [scalar ['*']] word | scalar
//! word    := gen+ | '1'
//! gen     := E(i,l) | H(i,s) | xi(i,s) | chi(i,s) | theta(i,s) | b(i,[parts])
//! ```
//! Node indices are 1-based in text. Scalars are integer Laurent expressions
//! in `v` with `+ - * / ^` and parentheses; at the top level of a term they
//! are juxtaposed factors such as `2v^3` or `(1 - v^2)/(v^3)`.

use crate::error::{Error, Result};
use crate::lattice::Seed;
use crate::loopalg::{CartanData, Element, Letter, Word};
use crate::scalars::Scalar;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { s: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn rest_starts_with(&mut self, kw: &str) -> bool {
        self.skip_ws();
        self.s[self.pos..].starts_with(kw.as_bytes())
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.s.len() && (self.s[self.pos] == b'-' || self.s[self.pos] == b'+') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let t = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        t.parse().or_else(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn unsigned(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii").parse().or_else(|_| {
            self.pos = start;
            self.err("expected a number")
        })
    }

    // ---- scalars ----

    /// Full expression, used inside parentheses and for standalone scalars.
    fn scalar_expr(&mut self) -> Result<Scalar> {
        let mut acc = if self.eat(b'-') {
            -&self.scalar_product(true)?
        } else {
            self.eat(b'+');
            self.scalar_product(true)?
        };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.scalar_product(true)?;
            } else if self.eat(b'-') {
                acc = &acc - &self.scalar_product(true)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn atom_start(&mut self) -> bool {
        matches!(self.peek(), Some(b'0'..=b'9') | Some(b'v') | Some(b'('))
    }

    /// Juxtaposed or `/`-separated factors; `*` is consumed only when `star`.
    fn scalar_product(&mut self, star: bool) -> Result<Scalar> {
        let mut acc = self.scalar_power()?;
        loop {
            if self.eat(b'/') {
                let d = self.scalar_power()?;
                acc = acc.checked_div(&d).map_err(|_| Error::Parse { pos: self.pos, msg: "division by zero".into() })?;
            } else if star && self.peek() == Some(b'*') {
                self.pos += 1;
                acc = &acc * &self.scalar_power()?;
            } else if self.atom_start() && !self.gen_start() {
                acc = &acc * &self.scalar_power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn scalar_power(&mut self) -> Result<Scalar> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.scalar_expr()?;
                self.expect(b')')?;
                e
            }
            Some(b'v') => {
                self.pos += 1;
                Scalar::v_pow(1)
            }
            Some(b'0'..=b'9') => {
                self.skip_ws();
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let t = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                Scalar::from_bigint(t.parse().expect("digits"))
            }
            _ => return self.err("expected a scalar"),
        };
        if self.eat(b'^') {
            let k = self.integer()?;
            return base.pow(k).map_err(|_| Error::Parse { pos: self.pos, msg: "zero to a negative power".into() });
        }
        Ok(base)
    }

    // ---- elements ----

    fn gen_start(&mut self) -> bool {
        ["E(", "H(", "xi(", "chi(", "theta(", "b("].iter().any(|k| self.rest_starts_with(k))
    }

    fn node(&mut self, rank: usize) -> Result<usize> {
        let start = self.pos;
        let i = self.integer()?;
        if i < 1 || i as usize > rank {
            self.pos = start;
            return Err(Error::UnknownNode { node: i.max(0) as usize, rank });
        }
        Ok(i as usize - 1)
    }

    fn gen(&mut self, rank: usize) -> Result<Letter> {
        let kinds = ["theta(", "chi(", "xi(", "E(", "H(", "b("];
        let kind = match kinds.iter().find(|k| self.rest_starts_with(k)) {
            Some(k) => *k,
            None => return self.err("expected a generator"),
        };
        self.pos += kind.len();
        let i = self.node(rank)?;
        self.expect(b',')?;
        let l = if kind == "b(" {
            self.expect(b'[')?;
            let mut parts = Vec::new();
            if !self.eat(b']') {
                loop {
                    parts.push(self.unsigned()? as u32);
                    if self.eat(b']') {
                        break;
                    }
                    self.expect(b',')?;
                }
            }
            self.expect(b')')?;
            return Ok(Letter::Schur(i, parts));
        } else {
            self.integer()?
        };
        self.expect(b')')?;
        let nonneg = |p: &Self, l: i64| if l < 0 { p.err("degree must be nonnegative") } else { Ok(l) };
        Ok(match kind {
            "E(" => Letter::E(i, l),
            "H(" => {
                if l < 1 {
                    return self.err("H needs a positive degree");
                }
                Letter::H(i, l)
            }
            "xi(" => Letter::Xi(i, nonneg(self, l)?),
            "chi(" => Letter::Chi(i, nonneg(self, l)?),
            _ => Letter::Theta(i, nonneg(self, l)?),
        })
    }

    fn word(&mut self, rank: usize) -> Result<Word> {
        if !self.gen_start() {
            if self.eat(b'1') {
                return Ok(Vec::new());
            }
            return self.err("expected a word");
        }
        let mut w = Vec::new();
        while self.gen_start() {
            w.push(self.gen(rank)?);
        }
        Ok(w)
    }

    fn term(&mut self, rank: usize) -> Result<(Word, Scalar)> {
        if self.gen_start() {
            return Ok((self.word(rank)?, Scalar::one()));
        }
        let c = self.scalar_product(false)?;
        if self.eat(b'*') {
            return Ok((self.word(rank)?, c));
        }
        if self.gen_start() {
            return Ok((self.word(rank)?, c));
        }
        Ok((Vec::new(), c))
    }

    fn element(&mut self, rank: usize) -> Result<Element> {
        let mut out = Element::zero();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let (w, c) = self.term(rank)?;
            out.add_term(w, &c * &Scalar::from_int(sign));
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        if !self.at_end() {
            return self.err("unexpected trailing input");
        }
        Ok(out)
    }
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let mut p = Parser::new(text);
    let s = p.scalar_expr()?;
    if !p.at_end() {
        return p.err("unexpected trailing input");
    }
    Ok(s)
}

/// Parses an element over a Cartan datum of the given rank.
pub fn parse_element(text: &str, rank: usize) -> Result<Element> {
    Parser::new(text).element(rank)
}

/// Canonical text of an element; `parse_element` inverts it.
pub fn serialize(x: &Element) -> String {
    x.to_string()
}

/// `1` or a single Schur letter `b(j,[λ])`.
pub fn parse_seed(text: &str, rank: usize) -> Result<Seed> {
    if text.trim() == "1" {
        return Ok(Seed::One);
    }
    let mut p = Parser::new(text);
    let l = p.gen(rank)?;
    if !p.at_end() {
        return p.err("a seed is a single b(j,[parts]) letter or 1");
    }
    match l {
        Letter::Schur(j, lam) => Ok(Seed::Schur(j, lam)),
        _ => Err(Error::Parse { pos: 0, msg: "a seed is a single b(j,[parts]) letter or 1".into() }),
    }
}

/// Reads the `rank / row ... / sym ...` configuration format.
pub fn parse_cartan(text: &str) -> Result<CartanData> {
    let mut rank = None;
    let mut rows = Vec::new();
    let mut sym = None;
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let key = it.next().expect("nonempty line");
        let nums: std::result::Result<Vec<i64>, _> = it.map(str::parse::<i64>).collect();
        let nums = nums.map_err(|_| Error::Cartan(format!("line {}: expected integers", ln + 1)))?;
        match key {
            "rank" if nums.len() == 1 && nums[0] > 0 => rank = Some(nums[0] as usize),
            "row" => rows.push(nums),
            "sym" => sym = Some(nums),
            _ => return Err(Error::Cartan(format!("line {}: unrecognized '{}'", ln + 1, line))),
        }
    }
    let rank = rank.ok_or_else(|| Error::Cartan("missing rank line".into()))?;
    if rows.len() != rank {
        return Err(Error::Cartan(format!("expected {} rows, found {}", rank, rows.len())));
    }
    let sym = sym.ok_or_else(|| Error::Cartan("missing sym line".into()))?;
    CartanData::new(rows, sym)
}
