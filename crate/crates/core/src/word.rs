//! Reading generator words such as `b a b^-1` or `t^3 s^-2`.
//!
//! Tokens are whitespace-separated. Each token is a generator name with an
//! optional `^k` suffix (`k` a signed integer); the token `1` is the identity.

use crate::error::WordError;
use crate::factor::FactorElement;
use crate::product::{FreeProduct, NormalForm, Side};

/// Largest accepted `|k|` in a `^k` suffix.
pub const MAX_EXPONENT: i64 = 1_000_000;

/// One parsed token: a generator (by side and index) raised to a power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token {
    pub side: Side,
    pub generator: usize,
    pub exponent: i64,
    pub position: usize,
}

fn tokens_with_positions(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let base = text.as_ptr() as usize;
    text.split_whitespace()
        .map(move |tok| (tok.as_ptr() as usize - base, tok))
}

impl FreeProduct {
    fn lookup(&self, name: &str) -> Option<(Side, usize)> {
        [Side::First, Side::Second].into_iter().find_map(|side| {
            self.naming(side)
                .generators
                .iter()
                .position(|n| n == name)
                .map(|i| (side, i))
        })
    }

    /// Splits `text` into generator tokens without multiplying them out.
    pub fn tokenize(&self, text: &str) -> Result<Vec<Token>, WordError> {
        let mut out = Vec::new();
        for (position, tok) in tokens_with_positions(text) {
            if tok == "1" {
                continue;
            }
            let (name, exponent) = match tok.split_once('^') {
                None => (tok, 1),
                Some((name, exp)) => {
                    if name.is_empty() {
                        return Err(WordError::Malformed {
                            token: tok.to_string(),
                            position,
                            reason: "missing generator name",
                        });
                    }
                    let exponent: i64 = exp.parse().map_err(|_| WordError::Malformed {
                        token: tok.to_string(),
                        position,
                        reason: "exponent is not an integer",
                    })?;
                    if exponent.abs() > MAX_EXPONENT {
                        return Err(WordError::Malformed {
                            token: tok.to_string(),
                            position,
                            reason: "exponent out of range",
                        });
                    }
                    (name, exponent)
                }
            };
            let (side, generator) =
                self.lookup(name)
                    .ok_or_else(|| WordError::UnknownGenerator {
                        name: name.to_string(),
                        position,
                    })?;
            out.push(Token {
                side,
                generator,
                exponent,
                position,
            });
        }
        Ok(out)
    }

    /// Parses a word and returns the normal form of its product.
    pub fn parse_word(&self, text: &str) -> Result<NormalForm, WordError> {
        let mut acc = NormalForm::identity();
        for token in self.tokenize(text)? {
            let factor = self.factor(token.side);
            let gen: &FactorElement = &factor.generators()[token.generator];
            if let Some(value) = factor.power(gen, token.exponent) {
                let letter = self
                    .element(token.side, value)
                    .expect("powers of generators are valid elements");
                acc = self.multiply(&acc, &letter);
            }
        }
        Ok(acc)
    }
}
