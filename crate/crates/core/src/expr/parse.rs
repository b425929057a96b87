use thiserror::Error;

use super::Expr;

/// Syntax error with the byte offset where parsing stopped.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Parses a guard expression.
///
/// Grammar, with `!` binding tighter than `&`, and `&` tighter than `|`:
///
/// ```text
/// expr  := or
/// or    := and ('|' and)*
/// and   := unary ('&' unary)*
/// unary := '!' unary | place | '(' expr ')'
/// place := [A-Za-z_][A-Za-z0-9_]*
/// ```
///
/// Atoms are returned as names; binding them to places happens later.
pub fn parse_expr(text: &str) -> Result<Expr<String>, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.or()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { offset: self.pos, message: message.into() }
    }

    fn or(&mut self) -> Result<Expr<String>, ParseError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            lhs = Expr::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr<String>, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            lhs = Expr::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr<String>, ParseError> {
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(Expr::not(self.unary()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.or()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                // Identifier bytes are ASCII, so this slice is valid UTF-8.
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Expr::atom(name.to_string()))
            }
            Some(c) => Err(self.error(format!("expected place, '!' or '(' but found '{}'", c as char))),
            None => Err(self.error("expected place, '!' or '(' but input ended")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr<String> {
        Expr::atom(s.to_string())
    }

    #[test]
    fn precedence_and_binds_tighter_than_or() {
        assert_eq!(parse_expr("p1 & p2 | p3").unwrap(), Expr::or(Expr::and(p("p1"), p("p2")), p("p3")));
    }

    #[test]
    fn negation_of_group() {
        assert_eq!(parse_expr("!(p1 & p2)").unwrap(), Expr::not(Expr::and(p("p1"), p("p2"))));
    }

    #[test]
    fn unbalanced_paren_reports_offset() {
        let err = parse_expr("p1 & (p2 |").unwrap_err();
        assert_eq!(err.offset, 10);
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(parse_expr("  !!a_1&\tb ").unwrap(), parse_expr("!!a_1 & b").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("").is_err());
        assert_eq!(parse_expr("p1 p2").unwrap_err().offset, 3);
        assert_eq!(parse_expr("1p").unwrap_err().offset, 0);
        assert!(parse_expr("p1 & ()").is_err());
        assert!(parse_expr("p1)").is_err());
    }
}
