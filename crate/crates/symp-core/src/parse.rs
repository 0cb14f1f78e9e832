//! Text grammar for rational-coefficient forms, shared by model files
//! and the CLI.
//!
//! Terms are `c * e{i}^e{j}^…` joined by `+`/`-`; coefficients are
//! integers or `p/q`; a bare `1` (or any coefficient without a blade)
//! denotes a degree-0 term. Blade factors may appear in any order and
//! are normalized through the wedge product, so `e2^e1` parses as
//! `-e1^e2`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::blade::Blade;
use crate::form::Form;
use crate::scalar::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col_base: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize, col_base: usize) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
            line,
            col_base,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col_base + self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a digit"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let neg = self.eat(b'-');
        let mag = self.digits()?;
        Ok(if neg { -mag } else { mag })
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        let numer = self.integer()?;
        if self.eat(b'/') {
            let denom = self.digits()?;
            if denom.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(Rat::new(numer, denom))
        } else {
            Ok(Rat::from_integer(numer))
        }
    }

    /// `e<digits>(^e<digits>)*` folded through the wedge product.
    fn blade_product(&mut self, dim: usize) -> Result<Form<Rat>, ParseError> {
        let mut acc = Form::unit(dim);
        loop {
            if !self.eat(b'e') {
                return Err(self.error("expected a frame factor like e1"));
            }
            let ix_pos = self.pos;
            let ix = self.digits()?;
            let index: usize = ix.try_into().map_err(|_| ParseError {
                line: self.line,
                col: self.col_base + ix_pos,
                message: "frame index too large".into(),
            })?;
            if index == 0 || index > dim {
                return Err(ParseError {
                    line: self.line,
                    col: self.col_base + ix_pos,
                    message: format!("frame index e{index} out of range for dimension {dim}"),
                });
            }
            let one = Form::term(
                dim,
                Blade::one_form(index, dim).unwrap(),
                Rat::from_integer(1.into()),
            );
            acc = acc.wedge(&one);
            self.skip_ws();
            if !self.eat(b'^') {
                break;
            }
            self.skip_ws();
        }
        Ok(acc)
    }

    fn term(&mut self, dim: usize) -> Result<Form<Rat>, ParseError> {
        self.skip_ws();
        let negated = self.eat(b'-');
        self.skip_ws();
        let form = match self.peek() {
            Some(b'0'..=b'9') => {
                let c = self.rational()?;
                self.skip_ws();
                if self.eat(b'*') {
                    self.skip_ws();
                    let blade = self.blade_product(dim)?;
                    blade.scale(&c)
                } else {
                    Form::constant(dim, c)
                }
            }
            Some(b'e') => self.blade_product(dim)?,
            _ => return Err(self.error("expected a coefficient or a frame factor")),
        };
        Ok(if negated { form.negate() } else { form })
    }
}

/// Parse a form over the coframe `e_1..e_dim`. `line` and `col_base` seed
/// error positions when the text is a slice of a larger file.
pub fn parse_form_at(
    src: &str,
    dim: usize,
    line: usize,
    col_base: usize,
) -> Result<Form<Rat>, ParseError> {
    let mut cur = Cursor::new(src, line, col_base);
    cur.skip_ws();
    let mut acc = cur.term(dim)?;
    loop {
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.bump();
                let t = cur.term(dim)?;
                acc = acc.plus(&t);
            }
            Some(b'-') => {
                cur.bump();
                let t = cur.term(dim)?;
                acc = acc.minus(&t);
            }
            Some(c) => {
                return Err(cur.error(format!("unexpected character '{}'", c as char)));
            }
        }
    }
    Ok(acc)
}

/// Parse a form with error positions starting at column 1 of line 1.
pub fn parse_form(src: &str, dim: usize) -> Result<Form<Rat>, ParseError> {
    parse_form_at(src, dim, 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint};
    use proptest::prelude::*;

    fn e(ix: &[usize]) -> Form<Rat> {
        Form::term(4, Blade::from_indices(ix, 4).unwrap(), rint(1))
    }

    #[test]
    fn parses_basic_grammar() {
        assert_eq!(parse_form("1", 4).unwrap(), Form::unit(4));
        assert_eq!(
            parse_form("1 * e1^e2 + 1 * e3^e4", 4).unwrap(),
            e(&[1, 2]).plus(&e(&[3, 4]))
        );
        assert_eq!(
            parse_form("e1^e2 - e3^e4", 4).unwrap(),
            e(&[1, 2]).minus(&e(&[3, 4]))
        );
        assert_eq!(
            parse_form("-1/2 * e2", 4).unwrap(),
            e(&[2]).scale(&rat(-1, 2))
        );
        // Reordered factors pick up the permutation sign; repeats vanish.
        assert_eq!(parse_form("e2^e1", 4).unwrap(), e(&[1, 2]).negate());
        assert!(parse_form("e1^e1", 4).unwrap().is_zero());
    }

    #[test]
    fn reports_positions() {
        let err = parse_form("1 * e9", 4).unwrap_err();
        assert_eq!((err.line, err.col), (1, 6));
        let err = parse_form("1 * e1 + ?", 4).unwrap_err();
        assert_eq!(err.col, 10);
        let err = parse_form("1/0", 4).unwrap_err();
        assert!(err.message.contains("zero denominator"));
    }

    proptest! {
        /// Printing then parsing is the identity on canonical forms.
        #[test]
        fn print_parse_roundtrip(entries in proptest::collection::vec(
            (0usize..16, -9i64..=9, 1i64..=4), 0..6)
        ) {
            let blades: Vec<Blade> = (0..=4).flat_map(|k| Blade::enumerate(4, k)).collect();
            let form = Form::from_terms(
                4,
                entries.into_iter().map(|(bi, n, d)| (blades[bi % blades.len()], rat(n, d))),
            );
            let printed = form.to_string();
            if form.is_zero() {
                prop_assert_eq!(printed, "0");
            } else {
                let reparsed = parse_form(&printed, 4).unwrap();
                prop_assert_eq!(reparsed, form);
            }
        }
    }
}
