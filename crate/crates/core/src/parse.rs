//! Text format for group words.
//!
//! Grammar (whitespace ignored everywhere):
//!
//! ```text
//! word   := item*
//! item   := atom ('^' integer)?
//! atom   := letter | '(' word ')'
//! letter := a | b | A | B        (or x | y | X | Y for x/y words)
//! ```
//!
//! Uppercase is the inverse of lowercase, and `a^-1` parses the same as `A`.
//! Results are always freely reduced.

use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

/// Guard against exponent bombs like `(ab)^99999999`.
const MAX_EXPANDED_LEN: usize = 1 << 22;

#[derive(Clone, Copy)]
pub(crate) enum Alphabet {
    AB,
    XY,
}

impl Alphabet {
    fn classify(self, c: char) -> Option<Letter> {
        match (self, c) {
            (Alphabet::AB, 'a') | (Alphabet::XY, 'x') => Some(Letter::A),
            (Alphabet::AB, 'A') | (Alphabet::XY, 'X') => Some(Letter::AInv),
            (Alphabet::AB, 'b') | (Alphabet::XY, 'y') => Some(Letter::B),
            (Alphabet::AB, 'B') | (Alphabet::XY, 'Y') => Some(Letter::BInv),
            _ => None,
        }
    }

    fn expected(self) -> &'static str {
        match self {
            Alphabet::AB => "one of a, b, A, B, or '('",
            Alphabet::XY => "one of x, y, X, Y, or '('",
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    alphabet: Alphabet,
    src_len: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, alphabet: Alphabet) -> Parser<'a> {
        Parser {
            chars: src.char_indices().collect(),
            pos: 0,
            alphabet,
            src_len: src.len(),
            _src: src,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn byte_pos(&mut self) -> usize {
        self.peek().map(|(b, _)| b).unwrap_or(self.src_len)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    /// Parse items until end of input or an unconsumed ')'.
    fn word(&mut self, depth: usize) -> Result<Word, ParseError> {
        let mut acc = Word::empty();
        while let Some((at, c)) = self.peek() {
            let atom = if c == ')' {
                break;
            } else if c == '(' {
                if depth > 64 {
                    return err(at, "parenthesis nesting too deep");
                }
                self.bump();
                let inner = self.word(depth + 1)?;
                match self.peek() {
                    Some((_, ')')) => self.bump(),
                    _ => return err(self.byte_pos(), "expected ')'"),
                }
                inner
            } else if let Some(l) = self.alphabet.classify(c) {
                self.bump();
                Word::single(l)
            } else {
                return err(
                    at,
                    format!(
                        "unexpected character '{c}', expected {}",
                        self.alphabet.expected()
                    ),
                );
            };
            let exponent = self.exponent()?;
            let piece = atom.power(exponent);
            if acc.len() + piece.len() > MAX_EXPANDED_LEN {
                return err(self.byte_pos(), "expanded word exceeds length limit");
            }
            acc = acc.concat(&piece);
        }
        Ok(acc)
    }

    /// Parse an optional `^ integer` suffix; defaults to 1.
    fn exponent(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some((_, '^')) => self.bump(),
            _ => return Ok(1),
        }
        let mut negative = false;
        if let Some((_, c)) = self.peek() {
            if c == '-' {
                negative = true;
                self.bump();
            } else if c == '+' {
                self.bump();
            }
        }
        let at = self.byte_pos();
        let mut digits = 0usize;
        let mut value: i64 = 0;
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            let Some(d) = c.to_digit(10) else { break };
            self.bump();
            digits += 1;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as i64))
                .filter(|&v| v as usize <= MAX_EXPANDED_LEN)
                .ok_or(ParseError {
                    position: at,
                    message: "exponent too large".into(),
                })?;
        }
        if digits == 0 {
            return err(at, "expected an integer after '^'");
        }
        Ok(if negative { -value } else { value })
    }

    fn finish(mut self, out: Word) -> Result<Word, ParseError> {
        match self.peek() {
            None => Ok(out),
            Some((at, c)) => err(at, format!("unexpected character '{c}'")),
        }
    }
}

pub(crate) fn parse_with_alphabet(src: &str, alphabet: Alphabet) -> Result<Word, ParseError> {
    let mut p = Parser::new(src, alphabet);
    let word = p.word(0)?;
    p.finish(word)
}

/// Parse a word over a, b (uppercase = inverse).
pub fn parse_word(src: &str) -> Result<Word, ParseError> {
    parse_with_alphabet(src, Alphabet::AB)
}
