//! Words and relations in named generators, e.g. `gk = kg^-1` or `(gh)^2 = 1`.
//!
//! Generators are single ASCII letters. A word is read as a composition of
//! maps, so `gh` means "apply `h`, then `g`".

use std::fmt;
use std::iter::Peekable;
use std::str::Chars;

use super::AmbientError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Identity,
    Generator(char),
    Group(Word),
}

/// A product of powers of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<(Atom, i64)>);

impl Word {
    pub fn parse(s: &str) -> Result<Word, AmbientError> {
        let mut p = Parser {
            src: s,
            it: s.chars().peekable(),
        };
        let w = p.word()?;
        p.skip_ws();
        match p.it.next() {
            None => Ok(w),
            Some(c) => Err(p.err(format!("unexpected '{c}'"))),
        }
    }

    pub fn generators(&self) -> Vec<char> {
        let mut out = Vec::new();
        for (a, _) in &self.0 {
            match a {
                Atom::Generator(c) => out.push(*c),
                Atom::Group(w) => out.extend(w.generators()),
                Atom::Identity => {}
            }
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (a, e) in &self.0 {
            match a {
                Atom::Identity => write!(f, "1")?,
                Atom::Generator(c) => write!(f, "{c}")?,
                Atom::Group(w) => write!(f, "({w})")?,
            }
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Splits `w1 = w2 = ...` into its sides (at least two).
pub fn parse_relation(s: &str) -> Result<Vec<Word>, AmbientError> {
    let sides = s
        .split('=')
        .map(Word::parse)
        .collect::<Result<Vec<_>, _>>()?;
    if sides.len() < 2 {
        return Err(AmbientError::WordSyntax {
            input: s.to_string(),
            reason: "missing '='".into(),
        });
    }
    Ok(sides)
}

struct Parser<'a> {
    src: &'a str,
    it: Peekable<Chars<'a>>,
}

impl Parser<'_> {
    fn err(&self, reason: String) -> AmbientError {
        AmbientError::WordSyntax {
            input: self.src.to_string(),
            reason,
        }
    }

    fn skip_ws(&mut self) {
        while self
            .it
            .peek()
            .is_some_and(|c| c.is_whitespace() || *c == '*')
        {
            self.it.next();
        }
    }

    fn word(&mut self) -> Result<Word, AmbientError> {
        let mut terms = Vec::new();
        loop {
            self.skip_ws();
            let atom = match self.it.peek().copied() {
                Some('1') => {
                    self.it.next();
                    Atom::Identity
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    self.it.next();
                    Atom::Generator(c)
                }
                Some('(') => {
                    self.it.next();
                    let inner = self.word()?;
                    self.skip_ws();
                    if self.it.next() != Some(')') {
                        return Err(self.err("unbalanced '('".into()));
                    }
                    Atom::Group(inner)
                }
                _ => break,
            };
            let exp = self.exponent()?;
            terms.push((atom, exp));
        }
        if terms.is_empty() {
            return Err(self.err("empty word".into()));
        }
        Ok(Word(terms))
    }

    fn exponent(&mut self) -> Result<i64, AmbientError> {
        self.skip_ws();
        if self.it.peek() != Some(&'^') {
            return Ok(1);
        }
        self.it.next();
        self.skip_ws();
        let neg = self.it.peek() == Some(&'-');
        if neg {
            self.it.next();
        }
        let mut digits = String::new();
        while let Some(c) = self.it.peek().copied().filter(char::is_ascii_digit) {
            digits.push(c);
            self.it.next();
        }
        let v: i64 = digits
            .parse()
            .map_err(|_| self.err("expected an exponent after '^'".into()))?;
        Ok(if neg { -v } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_relations() {
        let r = parse_relation("gk = kg^-1").unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].to_string(), "kg^-1");
        let r = parse_relation("g^8=h^2=k^2=1").unwrap();
        assert_eq!(r.len(), 4);
        assert_eq!(r[3].0, vec![(Atom::Identity, 1)]);
        let w = Word::parse("(g h)^2 * k").unwrap();
        assert_eq!(w.to_string(), "(gh)^2k");
        assert_eq!(w.generators(), vec!['g', 'h', 'k']);
        assert_eq!(
            Word::parse("g^0").unwrap().0,
            vec![(Atom::Generator('g'), 0)]
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_relation("gk").is_err());
        assert!(Word::parse("").is_err());
        assert!(Word::parse("g^").is_err());
        assert!(Word::parse("(gh").is_err());
        assert!(Word::parse("g$").is_err());
        assert!(parse_relation("g = ").is_err());
    }
}
