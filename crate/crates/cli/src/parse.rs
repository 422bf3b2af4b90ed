//! The ring-spec surface syntax.
//!
//! ```text
//! spec     := term { "x" term }            left-associative product
//! term     := "Z" UINT
//!           | "M2(" "Z" UINT ")"
//!           | "Z" UINT "[x]/(" poly ")"
//! poly     := monomial { ("+"|"-") monomial }
//! monomial := [UINT] [ "x" [ "^" UINT ] ]
//! ```
//!
//! Whitespace between tokens is ignored; keywords are case-sensitive.
//! Errors carry the byte offset they were raised at and a stable short
//! code, with separate codes for syntax and each semantic condition.

use std::fmt;

use cleangraph_core::ring::{is_prime, RingSpec};

/// Inputs larger than this are rejected before any semantic size cap is
/// consulted.
pub const UINT_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: &'static str },
    UintTooLarge { value: String },
    TrailingInput,
    ZeroModulus,
    NonPrime { value: u64 },
    NonMonic,
    DegreeZero,
}

impl ParseErrorKind {
    /// Stable machine-readable code, one per error class.
    pub fn code(&self) -> &'static str {
        match self {
            ParseErrorKind::Syntax { .. } => "syntax",
            ParseErrorKind::UintTooLarge { .. } => "uint-range",
            ParseErrorKind::TrailingInput => "trailing-input",
            ParseErrorKind::ZeroModulus => "zero-modulus",
            ParseErrorKind::NonPrime { .. } => "non-prime",
            ParseErrorKind::NonMonic => "non-monic",
            ParseErrorKind::DegreeZero => "degree",
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error [{}] at byte {}: ", self.kind.code(), self.offset)?;
        match &self.kind {
            ParseErrorKind::Syntax { expected } => write!(f, "expected {expected}"),
            ParseErrorKind::UintTooLarge { value } => {
                write!(f, "integer {value} exceeds the input limit {UINT_LIMIT}")
            }
            ParseErrorKind::TrailingInput => write!(f, "unexpected trailing input"),
            ParseErrorKind::ZeroModulus => write!(f, "Z0 is not a ring; the modulus must be >= 1"),
            ParseErrorKind::NonPrime { value } => write!(f, "{value} is not prime"),
            ParseErrorKind::NonMonic => write!(f, "modulus polynomial must be monic"),
            ParseErrorKind::DegreeZero => {
                write!(f, "modulus polynomial must have degree >= 1")
            }
        }
    }
}

impl std::error::Error for ParseError {}

pub fn parse_ring_spec(text: &str) -> Result<RingSpec, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error_here(ParseErrorKind::TrailingInput));
    }
    Ok(spec)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            offset: self.pos,
            kind,
        }
    }

    fn error_at(&self, offset: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { offset, kind }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8, expected: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error_here(ParseErrorKind::Syntax { expected }))
        }
    }

    fn uint(&mut self, expected: &'static str) -> Result<(u64, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut digits = 0usize;
        let mut value: u64 = 0;
        while let Some(b @ b'0'..=b'9') = self.peek() {
            digits += 1;
            self.pos += 1;
            value = value.saturating_mul(10).saturating_add((b - b'0') as u64);
            if value > UINT_LIMIT {
                // consume the rest of the number so the message shows it all
                while matches!(self.peek(), Some(b'0'..=b'9')) {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.bytes[start..self.pos])
                    .unwrap_or("?")
                    .to_string();
                return Err(self.error_at(start, ParseErrorKind::UintTooLarge { value: text }));
            }
        }
        if digits == 0 {
            return Err(self.error_here(ParseErrorKind::Syntax { expected }));
        }
        Ok((value, start))
    }

    fn spec(&mut self) -> Result<RingSpec, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            if self.eat(b'x') {
                let rhs = self.term()?;
                acc = RingSpec::product(acc, rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RingSpec, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'M') => {
                self.pos += 1;
                if !self.eat(b'2') {
                    return Err(self.error_here(ParseErrorKind::Syntax { expected: "M2(" }));
                }
                self.expect(b'(', "( after M2")?;
                self.expect(b'Z', "Z inside M2(...)")?;
                let (p, at) = self.uint("modulus after Z")?;
                if !is_prime(p) {
                    return Err(self.error_at(at, ParseErrorKind::NonPrime { value: p }));
                }
                self.expect(b')', ") closing M2(...)")?;
                Ok(RingSpec::M2p(p))
            }
            Some(b'Z') => {
                self.pos += 1;
                let (n, at) = self.uint("modulus after Z")?;
                self.skip_ws();
                if self.peek() == Some(b'[') {
                    self.pos += 1;
                    if !is_prime(n) {
                        return Err(self.error_at(at, ParseErrorKind::NonPrime { value: n }));
                    }
                    self.expect(b'x', "x inside [...]")?;
                    self.expect(b']', "] after [x")?;
                    self.expect(b'/', "/ after [x]")?;
                    self.expect(b'(', "( opening the modulus polynomial")?;
                    self.skip_ws();
                    let poly_at = self.pos;
                    let coeffs = self.poly(n)?;
                    self.expect(b')', ") closing the modulus polynomial")?;
                    let degree = coeffs.iter().rposition(|&c| c != 0);
                    match degree {
                        None | Some(0) => {
                            Err(self.error_at(poly_at, ParseErrorKind::DegreeZero))
                        }
                        Some(d) if coeffs[d] != 1 => {
                            Err(self.error_at(poly_at, ParseErrorKind::NonMonic))
                        }
                        Some(d) => Ok(RingSpec::QuotPoly {
                            p: n,
                            coeffs: coeffs[..=d].to_vec(),
                        }),
                    }
                } else {
                    if n == 0 {
                        return Err(self.error_at(at, ParseErrorKind::ZeroModulus));
                    }
                    Ok(RingSpec::Zn(n))
                }
            }
            _ => Err(self.error_here(ParseErrorKind::Syntax {
                expected: "a ring term (Z<n>, M2(Z<p>), or Z<p>[x]/(f))",
            })),
        }
    }

    /// Accumulates monomials into a little-endian coefficient vector,
    /// reduced mod p.
    fn poly(&mut self, p: u64) -> Result<Vec<u64>, ParseError> {
        let mut coeffs: Vec<u64> = Vec::new();
        let mut negate = false;
        loop {
            let (coeff, power) = self.monomial()?;
            let power = power as usize;
            if coeffs.len() <= power {
                coeffs.resize(power + 1, 0);
            }
            let signed = if negate { (p - coeff % p) % p } else { coeff % p };
            coeffs[power] = (coeffs[power] + signed) % p;
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => return Ok(coeffs),
            }
        }
    }

    fn monomial(&mut self) -> Result<(u64, u64), ParseError> {
        self.skip_ws();
        let mut coeff: Option<u64> = None;
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            coeff = Some(self.uint("coefficient")?.0);
        }
        self.skip_ws();
        if self.eat(b'x') {
            self.skip_ws();
            let power = if self.eat(b'^') {
                self.uint("exponent after ^")?.0
            } else {
                1
            };
            Ok((coeff.unwrap_or(1), power))
        } else {
            match coeff {
                Some(c) => Ok((c, 0)),
                None => Err(self.error_here(ParseErrorKind::Syntax {
                    expected: "a monomial (coefficient and/or x power)",
                })),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_rings() {
        assert_eq!(parse_ring_spec("Z12").unwrap(), RingSpec::Zn(12));
        assert_eq!(parse_ring_spec("  Z1 ").unwrap(), RingSpec::Zn(1));
        assert_eq!(parse_ring_spec("M2(Z3)").unwrap(), RingSpec::M2p(3));
        assert_eq!(parse_ring_spec("M2( Z 5 )").unwrap(), RingSpec::M2p(5));
    }

    #[test]
    fn products_are_left_associative() {
        assert_eq!(
            parse_ring_spec("Z3 x Z4").unwrap(),
            RingSpec::product(RingSpec::Zn(3), RingSpec::Zn(4))
        );
        assert_eq!(
            parse_ring_spec("Z2xZ3xZ5").unwrap(),
            RingSpec::product(
                RingSpec::product(RingSpec::Zn(2), RingSpec::Zn(3)),
                RingSpec::Zn(5)
            )
        );
    }

    #[test]
    fn quotient_polynomials() {
        assert_eq!(
            parse_ring_spec("Z2[x]/(x^2)").unwrap(),
            RingSpec::QuotPoly {
                p: 2,
                coeffs: vec![0, 0, 1]
            }
        );
        assert_eq!(
            parse_ring_spec("Z2[x]/(x^2+x+1)").unwrap(),
            RingSpec::QuotPoly {
                p: 2,
                coeffs: vec![1, 1, 1]
            }
        );
        assert_eq!(
            parse_ring_spec("Z3[x]/(x^2 - 1)").unwrap(),
            RingSpec::QuotPoly {
                p: 3,
                coeffs: vec![2, 0, 1]
            }
        );
        // 4x^2 reduces to x^2 mod 3
        assert_eq!(
            parse_ring_spec("Z3[x]/(4x^2)").unwrap(),
            RingSpec::QuotPoly {
                p: 3,
                coeffs: vec![0, 0, 1]
            }
        );
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let err = parse_ring_spec("Q5").unwrap_err();
        assert_eq!(err.offset, 0);
        assert_eq!(err.kind.code(), "syntax");

        let err = parse_ring_spec("Z3 x").unwrap_err();
        assert_eq!(err.offset, 4);

        let err = parse_ring_spec("Z3 # Z4").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::TrailingInput);
        assert_eq!(err.offset, 3);

        let err = parse_ring_spec("M2(Z3]").unwrap_err();
        assert_eq!(err.offset, 5);
    }

    #[test]
    fn semantic_errors_have_distinct_codes() {
        let err = parse_ring_spec("Z0").unwrap_err();
        assert_eq!(err.kind.code(), "zero-modulus");
        assert_eq!(err.offset, 1);

        let err = parse_ring_spec("M2(Z4)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NonPrime { value: 4 });
        assert_eq!(err.offset, 4);

        let err = parse_ring_spec("Z6[x]/(x^2)").unwrap_err();
        assert_eq!(err.kind.code(), "non-prime");

        let err = parse_ring_spec("Z3[x]/(2x^2)").unwrap_err();
        assert_eq!(err.kind.code(), "non-monic");
        assert_eq!(err.offset, 7);

        let err = parse_ring_spec("Z3[x]/(2)").unwrap_err();
        assert_eq!(err.kind.code(), "degree");

        // x + x over Z2 cancels to the zero polynomial
        let err = parse_ring_spec("Z2[x]/(x + x)").unwrap_err();
        assert_eq!(err.kind.code(), "degree");

        let err = parse_ring_spec("Z9999999").unwrap_err();
        assert_eq!(err.kind.code(), "uint-range");
    }

    #[test]
    fn display_parse_fixed_point_on_samples() {
        for text in [
            "Z12",
            "Z3 x Z4",
            "Z2 x Z3 x Z5",
            "M2(Z7)",
            "Z2[x]/(x^2)",
            "Z3[x]/(x^3 + 2x + 1)",
            "Z5[x]/(x^2 + 4)",
        ] {
            let spec = parse_ring_spec(text).unwrap();
            let printed = spec.to_string();
            assert_eq!(parse_ring_spec(&printed).unwrap(), spec, "{text} -> {printed}");
        }
    }
}
