//! Raw bracket expressions and the text grammars for Lie and commutative
//! polynomials.
//!
//! ```text
//! poly  := ['-'] term (('+' | '-') term)*
//! term  := [INT '*'] atom | INT
//! atom  := 'x' INT | '[' poly (',' poly)+ ']'
//!
//! cpoly := ['-'] cterm (('+' | '-') cterm)*
//! cterm := INT ['*' factor ('*' factor)*] | factor ('*' factor)*
//! factor := 'x' INT ['^' INT]
//! ```
//!
//! Brackets are left-normed: `[a,b,c]` is `[[a,b],c]`. Entries may themselves
//! be brackets or sums; they are expanded by bilinearity when normal-forming.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freemetab::{CommMonomial, CommPoly};
use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieExpr {
    Generator(Vertex),
    /// Left-normed bracket of at least two entries.
    Bracket(Vec<LieExpr>),
    Sum(Vec<(BigInt, LieExpr)>),
}

impl LieExpr {
    pub fn word(letters: &[Vertex]) -> LieExpr {
        match letters {
            [v] => LieExpr::Generator(*v),
            _ => LieExpr::Bracket(letters.iter().map(|&v| LieExpr::Generator(v)).collect()),
        }
    }

    /// Largest generator index mentioned, 0 if none.
    pub fn max_vertex(&self) -> Vertex {
        match self {
            LieExpr::Generator(v) => *v,
            LieExpr::Bracket(items) => items.iter().map(LieExpr::max_vertex).max().unwrap_or(0),
            LieExpr::Sum(terms) => terms.iter().map(|(_, e)| e.max_vertex()).max().unwrap_or(0),
        }
    }
}

pub fn parse_lie(text: &str) -> Result<LieExpr> {
    let mut p = Parser::new(text);
    let e = p.lie_poly()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_comm(text: &str) -> Result<CommPoly> {
    let mut p = Parser::new(text);
    let f = p.comm_poly()?;
    p.finish()?;
    Ok(f)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(pos);
        Error::syntax(line, column, message)
    }

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
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn unexpected(&mut self, wanted: &str) -> Error {
        let found = match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        };
        self.error_at(self.pos, format!("expected {wanted}, found {found}"))
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("an operator or end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small_integer(&mut self, what: &str) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let n = self.integer()?;
        u32::try_from(n).map_err(|_| self.error_at(start, format!("{what} is too large")))
    }

    fn generator(&mut self) -> Result<Vertex> {
        let start = self.pos;
        self.expect('x')?;
        let v = self.small_integer("generator index")?;
        if v == 0 {
            let (line, _) = self.location(start);
            return Err(Error::semantic(line, "generators are numbered from x1"));
        }
        Ok(v)
    }

    fn sign(&mut self) -> Option<BigInt> {
        if self.eat('+') {
            Some(BigInt::one())
        } else if self.eat('-') {
            Some(-BigInt::one())
        } else {
            None
        }
    }

    fn lie_poly(&mut self) -> Result<LieExpr> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') { -BigInt::one() } else { BigInt::one() };
        loop {
            if let Some((c, e)) = self.lie_term()? {
                terms.push((sign * c, e));
            }
            match self.sign() {
                Some(s) => sign = s,
                None => break,
            }
        }
        Ok(match terms.len() {
            1 if terms[0].0.is_one() => terms.pop().expect("one term").1,
            _ => LieExpr::Sum(terms),
        })
    }

    /// `None` for a literal `0`.
    fn lie_term(&mut self) -> Result<Option<(BigInt, LieExpr)>> {
        let mut coeff = BigInt::one();
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let start = self.pos;
            coeff = self.integer()?;
            if !self.eat('*') {
                if coeff.is_zero() {
                    return Ok(None);
                }
                let (line, _) = self.location(start);
                return Err(Error::semantic(
                    line,
                    "a non-zero integer constant is not an element of the Lie ring",
                ));
            }
        }
        let atom = self.lie_atom()?;
        Ok(Some((coeff, atom)))
    }

    fn lie_atom(&mut self) -> Result<LieExpr> {
        match self.peek() {
            Some('x') => Ok(LieExpr::Generator(self.generator()?)),
            Some('[') => {
                self.pos += 1;
                let mut items = vec![self.lie_poly()?];
                while self.eat(',') {
                    items.push(self.lie_poly()?);
                }
                if items.len() < 2 {
                    return Err(self.unexpected("`,`"));
                }
                self.expect(']')?;
                Ok(LieExpr::Bracket(items))
            }
            _ => Err(self.unexpected("a generator `xI` or `[`")),
        }
    }

    fn comm_poly(&mut self) -> Result<CommPoly> {
        let mut out = CommPoly::zero();
        let mut sign = if self.eat('-') { -BigInt::one() } else { BigInt::one() };
        loop {
            let (c, m) = self.comm_term()?;
            out.add_term(m, sign * c);
            match self.sign() {
                Some(s) => sign = s,
                None => break,
            }
        }
        Ok(out)
    }

    fn comm_term(&mut self) -> Result<(BigInt, CommMonomial)> {
        let mut coeff = BigInt::one();
        let mut letters: Vec<Vertex> = Vec::new();
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.integer()?;
            if !self.eat('*') {
                return Ok((coeff, CommMonomial::one()));
            }
        }
        loop {
            let v = self.generator()?;
            let e = if self.eat('^') {
                self.small_integer("exponent")?
            } else {
                1
            };
            letters.extend(std::iter::repeat_n(v, e as usize));
            if !self.eat('*') {
                break;
            }
        }
        Ok((coeff, CommMonomial::from_letters(&letters)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freemetab::{normal_form, LiePoly};

    #[test]
    fn two_term_expression() {
        let e = parse_lie("[x2,x1,x3] - 2*[x3,x1]").unwrap();
        let LieExpr::Sum(terms) = &e else {
            panic!("expected a sum, got {e:?}")
        };
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].0, BigInt::from(1));
        assert_eq!(terms[0].1, LieExpr::word(&[2, 1, 3]));
        assert_eq!(terms[1].0, BigInt::from(-2));
        assert_eq!(terms[1].1, LieExpr::word(&[3, 1]));
    }

    #[test]
    fn nested_and_summed_entries() {
        let e = parse_lie("[[x2,x1],[x3,x1]]").unwrap();
        assert!(normal_form(&e).is_zero());
        let e = parse_lie("[x2 + x1, x1]").unwrap();
        assert_eq!(normal_form(&e).to_string(), "[x2,x1]");
        assert_eq!(parse_lie(" - x3 ").unwrap(), LieExpr::Sum(vec![(BigInt::from(-1), LieExpr::Generator(3))]));
        assert!(normal_form(&parse_lie("0").unwrap()).is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_lie("[x1]"),
            Err(Error::syntax(1, 4, "expected `,`, found `]`"))
        );
        assert!(matches!(parse_lie("[x1,x2"), Err(Error::Syntax { line: 1, column: 7, .. })));
        assert!(matches!(parse_lie("x1 x2"), Err(Error::Syntax { line: 1, column: 4, .. })));
        assert!(matches!(parse_lie("3"), Err(Error::Semantic { .. })));
        assert!(matches!(parse_lie("x0"), Err(Error::Semantic { .. })));
        assert!(matches!(parse_lie("[x1,\n y2]"), Err(Error::Syntax { line: 2, column: 2, .. })));
    }

    #[test]
    fn comm_grammar() {
        let f = parse_comm("x1^2*x3 - 3*x2 + 4").unwrap();
        assert_eq!(f.to_string(), "x1^2*x3 - 3*x2 + 4");
        assert_eq!(parse_comm("x2*x4").unwrap().to_string(), "x2*x4");
        assert!(parse_comm("x1^").is_err());
        assert!(parse_comm("x1 +").is_err());
        let g = parse_comm("x1*x1 - x1^2").unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn display_round_trip() {
        let e = parse_lie("[x2,x3,x1] - 5*[x1,x4] + x2").unwrap();
        let p = normal_form(&e);
        let again: LiePoly = normal_form(&parse_lie(&p.to_string()).unwrap());
        assert_eq!(p, again);
    }
}
