//! Reader for the `.pcp` polycyclic-presentation text format.
//!
//! ```text
//! # S(27): Heisenberg group mod 3
//! p=3; gens a,b,c;
//! b^a = b*c;      # conjugation: b^a = a⁻¹ba
//! a^3 = 1;        # power relation (optional, defaults to 1)
//! ```
//!
//! Statements are separated by `;`. A power relation `x^p = w` may only
//! use generators listed after `x`; a conjugation relation `y^x = w`
//! requires `x` to be listed before `y`. Omitted relations default to
//! `x^p = 1` and `y^x = y`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A word as a sequence of `(generator index, exponent)` factors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<(usize, u32)>);

impl Word {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters with exponents expanded (`b^2*c` → `[b, b, c]`).
    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n(g, e as usize))
    }

    /// Drops zero exponents and merges adjacent factors of the same generator
    /// while the merged exponent stays below `p`.
    fn normalized(self, p: u32) -> Self {
        let mut out: Vec<(usize, u32)> = Vec::new();
        for (g, e) in self.0 {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((lg, le)) if *lg == g && *le + e < p => *le += e,
                _ => out.push((g, e)),
            }
        }
        Self(out)
    }

    fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    names[g].clone()
                } else {
                    format!("{}^{e}", names[g])
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A parsed polycyclic presentation with generators of relative order `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub prime: u32,
    pub generators: Vec<String>,
    /// `power_relations[i]` is the right-hand side of `g_i^p`.
    pub power_relations: Vec<Word>,
    /// `(i, j) ↦ w` encodes `g_j^{g_i} = w` for `i < j`.
    pub conjugation_relations: BTreeMap<(usize, usize), Word>,
    pub source_text: String,
}

impl Presentation {
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Right-hand side of `g_j^{g_i}`, `None` when the pair commutes by default.
    pub fn conjugate_rhs(&self, i: usize, j: usize) -> Option<&Word> {
        self.conjugation_relations.get(&(i, j))
    }

    /// Canonical text form; parses back to the same presentation.
    pub fn to_text(&self) -> String {
        let mut s = format!("p={}; gens {};", self.prime, self.generators.join(","));
        for (i, w) in self.power_relations.iter().enumerate() {
            if !w.is_identity() {
                s.push_str(&format!(
                    " {}^{} = {};",
                    self.generators[i],
                    self.prime,
                    w.render(&self.generators)
                ));
            }
        }
        for (&(i, j), w) in &self.conjugation_relations {
            s.push_str(&format!(
                " {}^{} = {};",
                self.generators[j],
                self.generators[i],
                w.render(&self.generators)
            ));
        }
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Eq,
    Caret,
    Star,
    Comma,
    Semi,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Num(n) => write!(f, "number `{n}`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let tok = match c {
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
                continue;
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            '=' | '^' | '*' | ',' | ';' => {
                bump(&mut chars);
                match c {
                    '=' => Tok::Eq,
                    '^' => Tok::Caret,
                    '*' => Tok::Star,
                    ',' => Tok::Comma,
                    _ => Tok::Semi,
                }
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    bump(&mut chars);
                }
                Tok::Num(s.parse().map_err(|_| perr(l, col, "number too large"))?)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    bump(&mut chars);
                }
                Tok::Ident(s)
            }
            other => return Err(perr(l, col, format!("unexpected character {other:?}"))),
        };
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    prime: Option<u32>,
    gens: Option<Vec<String>>,
    powers: Vec<Option<Word>>,
    conj: BTreeMap<(usize, usize), Word>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: impl Into<String>) -> Error {
        let t = self.peek();
        perr(t.line, t.column, msg)
    }

    fn expect(&mut self, want: Tok) -> Result<Spanned> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(perr(t.line, t.column, format!("expected {want}, found {}", t.tok)))
        }
    }

    fn ident(&mut self) -> Result<Spanned> {
        let t = self.next();
        match t.tok {
            Tok::Ident(_) => Ok(t),
            ref other => Err(perr(t.line, t.column, format!("expected identifier, found {other}"))),
        }
    }

    fn gen_index(&self, name: &str, at: &Spanned) -> Result<usize> {
        let gens = self
            .gens
            .as_ref()
            .ok_or_else(|| perr(at.line, at.column, "relation before `gens` declaration"))?;
        gens.iter()
            .position(|g| g == name)
            .ok_or_else(|| perr(at.line, at.column, format!("unknown generator `{name}`")))
    }

    fn prime(&self, at: &Spanned) -> Result<u32> {
        self.prime
            .ok_or_else(|| perr(at.line, at.column, "relation before `p=` declaration"))
    }

    fn run(&mut self) -> Result<()> {
        loop {
            match self.peek().tok.clone() {
                Tok::End => return Ok(()),
                Tok::Semi => {
                    self.next();
                    continue;
                }
                _ => {}
            }
            self.statement()?;
            match self.peek().tok {
                Tok::Semi => {
                    self.next();
                }
                Tok::End => return Ok(()),
                ref other => return Err(self.err_here(format!("expected `;`, found {other}"))),
            }
        }
    }

    fn statement(&mut self) -> Result<()> {
        let head = self.peek().clone();
        match (&head.tok, self.peek2()) {
            (Tok::Ident(k), Tok::Eq) if k == "p" => {
                self.next();
                self.next();
                if self.prime.is_some() {
                    return Err(perr(head.line, head.column, "prime declared twice"));
                }
                let t = self.next();
                match t.tok {
                    Tok::Num(n) if is_prime(n) && n < 1 << 16 => {
                        self.prime = Some(n as u32);
                        Ok(())
                    }
                    Tok::Num(n) => Err(perr(t.line, t.column, format!("{n} is not a prime"))),
                    other => Err(perr(t.line, t.column, format!("expected prime, found {other}"))),
                }
            }
            (Tok::Ident(k), Tok::Ident(_)) if k == "gens" => {
                self.next();
                if self.prime.is_none() {
                    return Err(perr(head.line, head.column, "`gens` before `p=` declaration"));
                }
                if self.gens.is_some() {
                    return Err(perr(head.line, head.column, "generators declared twice"));
                }
                let mut names: Vec<String> = Vec::new();
                loop {
                    let t = self.ident()?;
                    let Tok::Ident(name) = t.tok else { unreachable!() };
                    if names.contains(&name) {
                        return Err(perr(t.line, t.column, format!("duplicate generator `{name}`")));
                    }
                    names.push(name);
                    if self.peek().tok == Tok::Comma {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.powers = vec![None; names.len()];
                self.gens = Some(names);
                Ok(())
            }
            (Tok::Ident(_), Tok::Caret) => self.relation(),
            (other, _) => Err(perr(head.line, head.column, format!("unexpected {other}"))),
        }
    }

    fn relation(&mut self) -> Result<()> {
        let lhs = self.ident()?;
        let Tok::Ident(lhs_name) = lhs.tok.clone() else { unreachable!() };
        let p = self.prime(&lhs)?;
        let target = self.gen_index(&lhs_name, &lhs)?;
        self.expect(Tok::Caret)?;
        let sup = self.next();
        let conj_by = match &sup.tok {
            Tok::Num(n) if *n == p as u64 => None,
            Tok::Num(n) => {
                return Err(perr(
                    sup.line,
                    sup.column,
                    format!("power relation exponent must be the prime {p}, found {n}"),
                ))
            }
            Tok::Ident(name) if name == "p" && self.gen_index(name, &sup).is_err() => None,
            Tok::Ident(name) => Some(self.gen_index(name, &sup)?),
            other => {
                return Err(perr(sup.line, sup.column, format!("expected exponent or generator, found {other}")))
            }
        };
        self.expect(Tok::Eq)?;
        let word_at = self.peek().clone();
        let word = self.word(p)?;
        match conj_by {
            None => {
                if let Some(&(g, _)) = word.0.iter().find(|&&(g, _)| g <= target) {
                    let names = self.gens.as_ref().expect("gens declared");
                    return Err(perr(
                        word_at.line,
                        word_at.column,
                        format!(
                            "power relation for `{}` may only use later generators, found `{}`",
                            names[target], names[g]
                        ),
                    ));
                }
                if self.powers[target].is_some() {
                    return Err(perr(lhs.line, lhs.column, format!("duplicate power relation for `{lhs_name}`")));
                }
                self.powers[target] = Some(word);
            }
            Some(by) => {
                if by >= target {
                    return Err(perr(
                        sup.line,
                        sup.column,
                        "conjugation relation `y^x` requires `x` to precede `y` in `gens`",
                    ));
                }
                if self.conj.insert((by, target), word).is_some() {
                    return Err(perr(lhs.line, lhs.column, "duplicate conjugation relation"));
                }
            }
        }
        Ok(())
    }

    fn word(&mut self, p: u32) -> Result<Word> {
        if let Tok::Num(1) = self.peek().tok {
            self.next();
            return Ok(Word::identity());
        }
        let mut factors = Vec::new();
        loop {
            let t = self.ident()?;
            let Tok::Ident(name) = &t.tok else { unreachable!() };
            let g = self.gen_index(name, &t)?;
            let mut e = 1u32;
            if self.peek().tok == Tok::Caret {
                self.next();
                let n = self.next();
                match n.tok {
                    Tok::Num(v) if v < p as u64 => e = v as u32,
                    Tok::Num(v) => {
                        return Err(perr(n.line, n.column, format!("exponent {v} out of range [0, {p})")))
                    }
                    other => return Err(perr(n.line, n.column, format!("expected exponent, found {other}"))),
                }
            }
            factors.push((g, e));
            if self.peek().tok == Tok::Star {
                self.next();
            } else {
                break;
            }
        }
        Ok(Word(factors).normalized(p))
    }
}

/// Parses `.pcp` text into a [`Presentation`].
pub fn parse_pcp(text: &str) -> Result<Presentation> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
        prime: None,
        gens: None,
        powers: Vec::new(),
        conj: BTreeMap::new(),
    };
    parser.run()?;
    let end = parser.peek().clone();
    let prime = parser
        .prime
        .ok_or_else(|| perr(end.line, end.column, "missing `p=` declaration"))?;
    let generators = parser
        .gens
        .ok_or_else(|| perr(end.line, end.column, "missing `gens` declaration"))?;
    Ok(Presentation {
        prime,
        generators,
        power_relations: parser
            .powers
            .into_iter()
            .map(|w| w.unwrap_or_default())
            .collect(),
        conjugation_relations: parser.conj,
        source_text: text.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_heisenberg() {
        let p = parse_pcp("p=3; gens a,b,c; b^a = b*c; c^a = c; c^b = c;").unwrap();
        assert_eq!(p.prime, 3);
        assert_eq!(p.generators, vec!["a", "b", "c"]);
        assert_eq!(p.conjugate_rhs(0, 1), Some(&Word(vec![(1, 1), (2, 1)])));
        assert!(p.power_relations.iter().all(Word::is_identity));
    }

    #[test]
    fn single_generator() {
        let p = parse_pcp("p=3; gens a;").unwrap();
        assert_eq!(p.num_generators(), 1);
    }

    #[test]
    fn unknown_generator_is_located() {
        let err = parse_pcp("p=3; gens a,b; b^a = q;").unwrap_err();
        match err {
            Error::Parse { line, column, message } => {
                assert_eq!((line, column), (1, 22));
                assert!(message.contains("unknown generator `q`"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_whitespace_and_literal_p() {
        let text = "# modular group\np = 3 ;\n gens a , b , c ;\n a^p = c ; # power\n b^a = b*c^2\n";
        let p = parse_pcp(text).unwrap();
        assert_eq!(p.power_relations[0], Word(vec![(2, 1)]));
        assert_eq!(p.conjugate_rhs(0, 1), Some(&Word(vec![(1, 1), (2, 2)])));
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            ("p=4; gens a;", "not a prime"),
            ("p=3; gens a,b; a^3 = b^3;", "out of range"),
            ("p=3; gens a,b; b^3 = a;", "later generators"),
            ("p=3; gens a,b; a^b = a;", "precede"),
            ("p=3; gens a,b; a^2 = b;", "must be the prime"),
            ("p=3; gens a,a;", "duplicate generator"),
            ("p=3; gens a; a^3 = 1 1;", "expected `;`"),
            ("gens a;", "before `p=`"),
            ("p=3; gens a; $", "unexpected character"),
            ("p=3;", "missing `gens`"),
            ("p=3; gens a,b; b^a = b; b^a = b;", "duplicate conjugation"),
        ];
        for (text, needle) in cases {
            let err = parse_pcp(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?}: {err}");
        }
    }

    #[test]
    fn error_position_on_later_line() {
        let err = parse_pcp("p=3;\ngens a,b;\nb^a = b*z;").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 9, .. }), "{err:?}");
    }

    #[test]
    fn text_round_trip() {
        let p = parse_pcp("p=5; gens a,b,c,d; a^5 = d^2; b^a = b*c; c^a = c*d^4; c^b = c*d;").unwrap();
        let q = parse_pcp(&p.to_text()).unwrap();
        assert_eq!(p.power_relations, q.power_relations);
        assert_eq!(p.conjugation_relations, q.conjugation_relations);
        assert_eq!(p.generators, q.generators);
    }
}
