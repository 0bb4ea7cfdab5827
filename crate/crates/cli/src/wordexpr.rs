//! Word expressions over presentation generators.
//!
//! Grammar:
//!
//! ```text
//! expr := term ('*' term)*
//! term := atom ('^' int)?
//! atom := name | '(' expr ')' | '[' expr ',' expr ']'
//! ```
//!
//! Products evaluate left to right; `[a, b]` is the left-normed commutator
//! `a⁻¹b⁻¹ab`; exponents may be negative. Whitespace is insignificant.

use bvl_core::Group;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("syntax error at position {0}")]
    SyntaxError(usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordExpr {
    Gen(String),
    /// Two or more factors, evaluated left to right.
    Product(Vec<WordExpr>),
    Power(Box<WordExpr>, i64),
    Comm(Box<WordExpr>, Box<WordExpr>),
}

/// Parse `text` against a set of generator names.
pub fn parse_word(text: &str, names: &[String]) -> Result<WordExpr, WordError> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        names,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(WordError::SyntaxError(p.pos));
    }
    Ok(expr)
}

/// Parse against the group's generator names and evaluate to an element id.
pub fn evaluate_word(g: &Group, text: &str) -> Result<u32, WordError> {
    let expr = parse_word(text, g.pres().names())?;
    Ok(eval(&expr, g))
}

/// Evaluate a parsed expression. Names were validated during parsing, so
/// evaluation cannot fail on a group with the same presentation names.
pub fn eval(expr: &WordExpr, g: &Group) -> u32 {
    match expr {
        WordExpr::Gen(name) => {
            let i = g
                .pres()
                .index_of(name)
                .expect("name validated at parse time");
            g.generator(i)
        }
        WordExpr::Product(factors) => factors
            .iter()
            .fold(g.identity(), |acc, f| g.mul(acc, eval(f, g))),
        WordExpr::Power(base, k) => g.pow(eval(base, g), *k),
        WordExpr::Comm(a, b) => g.comm(eval(a, g), eval(b, g)),
    }
}

/// Render an expression to text; `parse_word(render(e))` reconstructs `e`.
#[cfg(test)]
pub fn render(expr: &WordExpr) -> String {
    match expr {
        WordExpr::Gen(name) => name.clone(),
        WordExpr::Product(factors) => factors
            .iter()
            .map(|f| match f {
                WordExpr::Product(_) => format!("({})", render(f)),
                _ => render(f),
            })
            .collect::<Vec<_>>()
            .join("*"),
        WordExpr::Power(base, k) => {
            let b = match **base {
                WordExpr::Product(_) | WordExpr::Power(..) => format!("({})", render(base)),
                _ => render(base),
            };
            format!("{b}^{k}")
        }
        WordExpr::Comm(a, b) => format!("[{},{}]", render(a), render(b)),
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), WordError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(WordError::SyntaxError(self.pos))
        }
    }

    fn expr(&mut self) -> Result<WordExpr, WordError> {
        let mut factors = vec![self.term()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.term()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            WordExpr::Product(factors)
        })
    }

    fn term(&mut self) -> Result<WordExpr, WordError> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.int()?;
            Ok(WordExpr::Power(Box::new(atom), k))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<WordExpr, WordError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                Ok(WordExpr::Comm(Box::new(a), Box::new(b)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .text
                    .get(self.pos)
                    .is_some_and(|&c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.text[start..self.pos])
                    .expect("ascii range")
                    .to_string();
                if !self.names.contains(&name) {
                    return Err(WordError::UnknownGenerator(name));
                }
                Ok(WordExpr::Gen(name))
            }
            _ => Err(WordError::SyntaxError(self.pos)),
        }
    }

    fn int(&mut self) -> Result<i64, WordError> {
        self.skip_ws();
        let start = self.pos;
        if self.text.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii range")
            .parse()
            .map_err(|_| WordError::SyntaxError(start))
    }
}
