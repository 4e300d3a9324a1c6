//! Recursive-descent parser for ket expressions such as
//! `0.5|100> + 0.5|010> - (0.5+0.5i)*|001>`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := coeff? ket
//! coeff  := real | '(' real (('+'|'-') real 'i')? ')' | coeff '*'
//! ket    := '|' bit+ '>'
//! real   := decimal literal with optional exponent
//! ```
//!
//! Whitespace between tokens is ignored. A leading sign on the first term is
//! accepted. Error positions are byte offsets into the input.

use crate::error::{Error, Result};
use crate::linalg::Complex;

use super::state::{PureState, MAX_QUBITS};

/// Tolerance on the unit norm of a parsed expression when renormalization
/// was not requested. Loose enough for amplitudes typed as truncated
/// decimals such as `0.70710678`.
pub const PARSE_NORM_TOL: f64 = 1e-6;

/// Parses a ket expression.
///
/// With `normalize` any nonzero expression is rescaled to unit norm. Without
/// it the expression must already have unit norm within [`PARSE_NORM_TOL`];
/// the residual rounding is then divided out so the state is exactly
/// normalized.
pub fn parse_ket(expr: &str, normalize: bool) -> Result<PureState> {
    let terms = Parser::new(expr).expr()?;
    let n_qubits = terms[0].bits.len();
    let mut amps = vec![Complex::new(0.0, 0.0); 1 << n_qubits];
    for t in &terms {
        amps[t.index] += t.coeff;
    }
    let n2: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    if !normalize && (n2 - 1.0).abs() > PARSE_NORM_TOL {
        if n2.sqrt() <= super::state::ZERO_NORM {
            return Err(Error::ZeroVector);
        }
        return Err(Error::NotNormalized { norm_sq: n2 });
    }
    PureState::new(n_qubits, amps, true)
}

#[derive(Debug)]
struct Term {
    coeff: Complex,
    bits: String,
    index: usize,
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => self.error(
                self.pos,
                format!("expected '{}', found '{}'", byte as char, b as char),
            ),
            None => self.error(
                self.pos,
                format!("expected '{}', found end of input", byte as char),
            ),
        }
    }

    fn expr(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut sign = 1.0;
        match self.peek() {
            None => return self.error(self.pos, "empty expression"),
            Some(b'+') => self.pos += 1,
            Some(b'-') => {
                sign = -1.0;
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            self.skip_ws();
            let start = self.pos;
            let mut term = self.term()?;
            term.coeff *= sign;
            if let Some(first) = terms.first() {
                let first: &Term = first;
                if first.bits.len() != term.bits.len() {
                    return Err(Error::MixedQubitCounts {
                        position: start,
                        expected: first.bits.len(),
                        found: term.bits.len(),
                    });
                }
            }
            terms.push(term);
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => sign = 1.0,
                Some(b'-') => sign = -1.0,
                Some(b) => {
                    return self.error(
                        self.pos,
                        format!("expected '+' or '-', found '{}'", b as char),
                    )
                }
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Term> {
        let coeff = match self.peek() {
            Some(b'|') => Complex::new(1.0, 0.0),
            Some(_) => {
                let c = self.coeff()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                }
                c
            }
            None => return self.error(self.pos, "expected a term, found end of input"),
        };
        let (bits, index) = self.ket()?;
        Ok(Term { coeff, bits, index })
    }

    fn coeff(&mut self) -> Result<Complex> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let re = self.real(true)?;
            let c = match self.peek() {
                Some(b')') => Complex::new(re, 0.0),
                Some(s @ (b'+' | b'-')) => {
                    self.pos += 1;
                    let im = self.real(false)?;
                    self.expect(b'i')?;
                    Complex::new(re, if s == b'-' { -im } else { im })
                }
                Some(b'i') => {
                    self.pos += 1;
                    Complex::new(0.0, re)
                }
                _ => return self.error(self.pos, "expected ')' or an imaginary part"),
            };
            self.expect(b')')?;
            Ok(c)
        } else {
            Ok(Complex::new(self.real(false)?, 0.0))
        }
    }

    /// Decimal literal `[sign] digits [. digits] [e [sign] digits]`.
    fn real(&mut self, allow_sign: bool) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let b = self.bytes;
        let mut i = self.pos;
        if allow_sign && i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        let int_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        let mut digits = i - int_start;
        if i < b.len() && b[i] == b'.' {
            i += 1;
            let frac_start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            digits += i - frac_start;
        }
        if digits == 0 {
            return self.error(start, "expected a number");
        }
        if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
            let mut j = i + 1;
            if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                j += 1;
            }
            let exp_start = j;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if j == exp_start {
                return self.error(j, "malformed exponent");
            }
            i = j;
        }
        let text = &self.src[start..i];
        let value: f64 = match text.parse() {
            Ok(v) => v,
            Err(_) => return self.error(start, format!("invalid number '{text}'")),
        };
        if !value.is_finite() {
            return self.error(start, format!("number '{text}' is not finite"));
        }
        self.pos = i;
        Ok(value)
    }

    fn ket(&mut self) -> Result<(String, usize)> {
        self.expect(b'|')?;
        let start = self.pos;
        let mut bits = String::new();
        while let Some(&b) = self.bytes.get(self.pos) {
            match b {
                b'0' | b'1' => {
                    bits.push(b as char);
                    self.pos += 1;
                }
                _ => break,
            }
        }
        if bits.is_empty() {
            return self.error(start, "ket needs at least one bit");
        }
        if bits.len() > MAX_QUBITS {
            return self.error(
                start,
                format!(
                    "ket has {} qubits, at most {MAX_QUBITS} supported",
                    bits.len()
                ),
            );
        }
        match self.bytes.get(self.pos) {
            Some(b'>') => self.pos += 1,
            Some(&b) => {
                return self.error(
                    self.pos,
                    format!("expected '>' or a bit, found '{}'", b as char),
                )
            }
            None => return self.error(self.pos, "unterminated ket"),
        }
        let index = usize::from_str_radix(&bits, 2).expect("bits are binary digits");
        Ok((bits, index))
    }
}
