//! Einstein-index expressions over gamma matrices.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := [scalar] factor+
//! factor := 'G' index+ | 'eta' ['_'] '[' name ',' name ']'
//!         | 'eps' ['_'] '[' name (',' name)* ']' | 'Id' | '(' expr ')'
//! index  := '^' name | '_' name | '^{' name+ '}' | '_{' name+ '}'
//! scalar := integer ['/' integer] ['i'] | 'i'
//! ```
//!
//! All indices of one `G` factor form a single antisymmetrized gamma. A name
//! used twice in a term is summed, and must appear once up and once down.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{ratio, ExactMatrix, GaussianRational};
use crate::gamma::GammaRep;

use super::registry::levi_civita;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Index {
    pub name: String,
    pub up: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Gamma(Vec<Index>),
    Eta(Index, Index),
    Eps(Vec<Index>),
    Id,
    Paren(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: GaussianRational,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) { Ok(()) } else { Err(perr(self.pos, format!("expected '{}'", c))) }
    }

    fn starts_with(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let n = kw.chars().count();
        self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(kw.chars())
    }

    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_alphanumeric() {
            if self.pos > start && !self.chars[self.pos].is_ascii_digit() && self.chars[start].is_ascii_digit() {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos || !self.chars[start].is_alphabetic() {
            self.pos = start;
            return Err(perr(start, "expected an index name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn integer(&mut self) -> Option<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.chars[start..self.pos].iter().collect::<String>().parse().ok()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut sign = 1;
        if self.eat('-') {
            sign = -1;
        } else {
            self.eat('+');
        }
        loop {
            let mut t = self.term()?;
            if sign < 0 {
                t.coeff = -&t.coeff;
            }
            terms.push(t);
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(Expr { terms })
    }

    fn scalar(&mut self) -> Result<Option<GaussianRational>> {
        self.skip_ws();
        let start = self.pos;
        if let Some(n) = self.integer() {
            let mut q = 1;
            if self.eat('/') {
                q = self.integer().ok_or_else(|| perr(self.pos, "expected a denominator"))?;
                if q == 0 {
                    return Err(perr(self.pos, "zero denominator"));
                }
            }
            let r = GaussianRational::real(ratio(n, q));
            if self.chars.get(self.pos) == Some(&'i') && !self.ident_continues(self.pos + 1) {
                self.pos += 1;
                return Ok(Some(&r * &GaussianRational::i()));
            }
            return Ok(Some(r));
        }
        self.pos = start;
        if self.chars.get(self.pos) == Some(&'i') && !self.ident_continues(self.pos + 1) {
            self.pos += 1;
            return Ok(Some(GaussianRational::i()));
        }
        Ok(None)
    }

    fn ident_continues(&self, at: usize) -> bool {
        self.chars.get(at).is_some_and(|c| c.is_alphanumeric())
    }

    fn term(&mut self) -> Result<Term> {
        let coeff = self.scalar()?.unwrap_or_else(GaussianRational::one);
        let mut factors = Vec::new();
        while let Some(f) = self.factor()? {
            factors.push(f);
        }
        if factors.is_empty() {
            let msg = match self.peek() {
                Some(c) => format!("unexpected '{}'", c),
                None => "expected a factor".to_string(),
            };
            return Err(perr(self.pos, msg));
        }
        Ok(Term { coeff, factors })
    }

    fn bracket_names(&mut self, up: bool) -> Result<Vec<Index>> {
        self.expect('[')?;
        let mut out = vec![Index { name: self.name()?, up }];
        while self.eat(',') {
            out.push(Index { name: self.name()?, up });
        }
        self.expect(']')?;
        Ok(out)
    }

    fn factor(&mut self) -> Result<Option<Factor>> {
        match self.peek() {
            None | Some('+') | Some('-') | Some(')') => Ok(None),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(Some(Factor::Paren(Box::new(e))))
            }
            Some(_) if self.starts_with("Id") && !self.ident_continues(self.pos + 2) => {
                self.pos += 2;
                Ok(Some(Factor::Id))
            }
            Some(_) if self.starts_with("eta") => {
                let at = self.pos;
                self.pos += 3;
                let up = !self.eat('_');
                let idx = self.bracket_names(up)?;
                if idx.len() != 2 {
                    return Err(perr(at, "eta takes two indices"));
                }
                Ok(Some(Factor::Eta(idx[0].clone(), idx[1].clone())))
            }
            Some(_) if self.starts_with("eps") => {
                self.pos += 3;
                let up = !self.eat('_');
                Ok(Some(Factor::Eps(self.bracket_names(up)?)))
            }
            Some('G') => {
                self.pos += 1;
                let mut idx = Vec::new();
                loop {
                    let up = match self.chars.get(self.pos) {
                        Some('^') => true,
                        Some('_') => false,
                        _ => break,
                    };
                    self.pos += 1;
                    if self.eat('{') {
                        idx.push(Index { name: self.name()?, up });
                        while self.peek() != Some('}') {
                            idx.push(Index { name: self.name()?, up });
                        }
                        self.expect('}')?;
                    } else {
                        idx.push(Index { name: self.name()?, up });
                    }
                }
                if idx.is_empty() {
                    return Err(perr(self.pos, "gamma needs at least one index"));
                }
                Ok(Some(Factor::Gamma(idx)))
            }
            Some(c) => Err(perr(self.pos, format!("unknown token '{}'", c))),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, src: text };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(perr(p.pos, format!("unexpected '{}' after expression in \"{}\"", c, p.src)));
    }
    e.check_indices()?;
    Ok(e)
}

fn fmt_index_group(f: &mut fmt::Formatter<'_>, idx: &[Index]) -> fmt::Result {
    let mut i = 0;
    while i < idx.len() {
        let up = idx[i].up;
        let mut j = i;
        while j < idx.len() && idx[j].up == up {
            j += 1;
        }
        let mark = if up { '^' } else { '_' };
        if j - i == 1 {
            write!(f, "{}{}", mark, idx[i].name)?;
        } else {
            let names: Vec<&str> = idx[i..j].iter().map(|x| x.name.as_str()).collect();
            write!(f, "{}{{{}}}", mark, names.join(" "))?;
        }
        i = j;
    }
    Ok(())
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Gamma(idx) => {
                write!(f, "G")?;
                fmt_index_group(f, idx)
            }
            Factor::Eta(a, b) => write!(f, "eta{}[{},{}]", if a.up { "" } else { "_" }, a.name, b.name),
            Factor::Eps(idx) => {
                let names: Vec<&str> = idx.iter().map(|x| x.name.as_str()).collect();
                write!(f, "eps{}[{}]", if idx[0].up { "" } else { "_" }, names.join(","))
            }
            Factor::Id => write!(f, "Id"),
            Factor::Paren(e) => write!(f, "({})", e),
        }
    }
}

fn fmt_coeff(c: &GaussianRational) -> String {
    let part = |r: &crate::exactnum::Rational| {
        if r.is_integer() { r.numer().to_string() } else { format!("{}/{}", r.numer(), r.denom()) }
    };
    if c.im == crate::exactnum::rat(0) {
        part(&c.re)
    } else if c.re == crate::exactnum::rat(0) {
        format!("{}i", part(&c.im))
    } else {
        format!("({})", c)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_real() && t.coeff.re < crate::exactnum::rat(0)
                || t.coeff.re == crate::exactnum::rat(0) && t.coeff.im < crate::exactnum::rat(0);
            let c = if neg { -&t.coeff } else { t.coeff.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !c.is_one() {
                write!(f, "{} ", fmt_coeff(&c))?;
            }
            let fs: Vec<String> = t.factors.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", fs.join(" "))?;
        }
        Ok(())
    }
}

/// Free indices of a term or expression, with positions, sorted by name.
type Free = BTreeMap<String, bool>;

impl Factor {
    fn occurrences(&self) -> Result<Vec<Index>> {
        Ok(match self {
            Factor::Gamma(idx) | Factor::Eps(idx) => idx.clone(),
            Factor::Eta(a, b) => vec![a.clone(), b.clone()],
            Factor::Id => vec![],
            Factor::Paren(e) => e.free()?.into_iter().map(|(name, up)| Index { name, up }).collect(),
        })
    }
}

impl Term {
    /// Free indices and summed names.
    fn index_split(&self) -> Result<(Free, Vec<String>)> {
        let mut seen: BTreeMap<String, Vec<bool>> = BTreeMap::new();
        for f in &self.factors {
            for i in f.occurrences()? {
                seen.entry(i.name).or_default().push(i.up);
            }
        }
        let mut free = Free::new();
        let mut dummies = Vec::new();
        for (name, pos) in seen {
            match pos.as_slice() {
                [up] => {
                    free.insert(name, *up);
                }
                [a, b] if a != b => dummies.push(name),
                [true, true] => return Err(Error::InvalidArgument(format!("repeated upper index '{}'", name))),
                [false, false] => return Err(Error::InvalidArgument(format!("repeated lower index '{}'", name))),
                _ => return Err(Error::InvalidArgument(format!("index '{}' appears more than twice", name))),
            }
        }
        Ok((free, dummies))
    }
}

impl Expr {
    pub fn free(&self) -> Result<Free> {
        let mut out: Option<Free> = None;
        for t in &self.terms {
            let (free, _) = t.index_split()?;
            match &out {
                None => out = Some(free),
                Some(prev) if *prev != free => {
                    return Err(Error::InvalidArgument(format!(
                        "free indices differ between summands: {:?} vs {:?}",
                        prev.keys().collect::<Vec<_>>(),
                        free.keys().collect::<Vec<_>>()
                    )))
                }
                _ => {}
            }
        }
        Ok(out.unwrap_or_default())
    }

    fn check_indices(&self) -> Result<()> {
        for t in &self.terms {
            for f in &t.factors {
                if let Factor::Paren(e) = f {
                    e.check_indices()?;
                }
            }
        }
        self.free().map(|_| ())
    }
}

/// Indexed family of matrices: one entry per assignment of the free indices
/// (in name order).
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub free: Vec<(String, bool)>,
    pub values: Vec<(Vec<usize>, ExactMatrix)>,
}

impl Evaluation {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (vals, m) in &self.values {
            if !self.free.is_empty() {
                let label: Vec<String> =
                    self.free.iter().zip(vals).map(|((n, up), v)| format!("{}{}={}", if *up { "^" } else { "_" }, n, v)).collect();
                out.push_str(&format!("[{}] ", label.join(" ")));
            }
            match m.as_scalar() {
                Some(c) if c.is_zero() => out.push_str("0\n"),
                Some(c) => out.push_str(&format!("{}·Id\n", c)),
                None => out.push_str(&format!("\n{}", m)),
            }
        }
        out
    }
}

struct Evaluator<'a> {
    rep: &'a GammaRep,
}

impl Evaluator<'_> {
    fn gamma(&self, idx: &[Index], env: &BTreeMap<String, usize>) -> Result<ExactMatrix> {
        let vals: Vec<usize> = idx.iter().map(|i| env[&i.name]).collect();
        let m = self.rep.gamma_anti(&vals)?;
        let flips = idx.iter().filter(|i| i.up && self.rep.eta(env[&i.name]) < 0).count();
        Ok(if flips % 2 == 1 { -&m } else { m })
    }

    fn factor(&self, f: &Factor, env: &BTreeMap<String, usize>) -> Result<ExactMatrix> {
        let n = self.rep.size();
        Ok(match f {
            Factor::Gamma(idx) => self.gamma(idx, env)?,
            Factor::Eta(a, b) => {
                let (x, y) = (env[&a.name], env[&b.name]);
                ExactMatrix::scalar(n, GaussianRational::int(self.rep.eta_ab(x, y)))
            }
            Factor::Eps(idx) => {
                if idx.len() != self.rep.dim() {
                    return Err(Error::Dimension(format!("eps with {} indices needs D = {}, got {}", idx.len(), idx.len(), self.rep.dim())));
                }
                let vals: Vec<usize> = idx.iter().map(|i| env[&i.name]).collect();
                let mut s = levi_civita(&vals);
                if !idx[0].up && self.rep.eta(0) < 0 {
                    s = -s;
                }
                ExactMatrix::scalar(n, GaussianRational::int(s))
            }
            Factor::Id => ExactMatrix::identity(n),
            Factor::Paren(e) => self.expr(e, env)?,
        })
    }

    fn term(&self, t: &Term, env: &BTreeMap<String, usize>) -> Result<ExactMatrix> {
        let (_, dummies) = t.index_split()?;
        let d = self.rep.dim();
        let n = self.rep.size();
        let mut acc = ExactMatrix::zeros(n, n);
        let total = d.pow(dummies.len() as u32);
        for k in 0..total {
            let mut env = env.clone();
            let mut r = k;
            for name in &dummies {
                env.insert(name.clone(), r % d);
                r /= d;
            }
            let mut m = ExactMatrix::identity(n);
            for f in &t.factors {
                m = &m * &self.factor(f, &env)?;
                if m.is_zero() {
                    break;
                }
            }
            acc = &acc + &m;
        }
        Ok(acc.scale(&t.coeff))
    }

    fn expr(&self, e: &Expr, env: &BTreeMap<String, usize>) -> Result<ExactMatrix> {
        let n = self.rep.size();
        e.terms.iter().try_fold(ExactMatrix::zeros(n, n), |acc, t| Ok(&acc + &self.term(t, env)?))
    }
}

pub fn eval_expr(e: &Expr, rep: &GammaRep) -> Result<Evaluation> {
    let free: Vec<(String, bool)> = e.free()?.into_iter().collect();
    let d = rep.dim();
    let ev = Evaluator { rep };
    let mut values = Vec::new();
    let total = d.pow(free.len() as u32);
    for k in 0..total {
        let mut vals = vec![0; free.len()];
        let mut r = k;
        for v in vals.iter_mut().rev() {
            *v = r % d;
            r /= d;
        }
        let env: BTreeMap<String, usize> = free.iter().map(|(n, _)| n.clone()).zip(vals.iter().copied()).collect();
        values.push((vals, ev.expr(e, &env)?));
    }
    Ok(Evaluation { free, values })
}

/// Parses and evaluates at dimension `dim`.
pub fn eval_text(text: &str, dim: usize) -> Result<Evaluation> {
    let e = parse_expr(text)?;
    eval_expr(&e, &GammaRep::build(dim)?)
}
