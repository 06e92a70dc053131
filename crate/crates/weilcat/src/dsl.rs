//! Surface syntax for algebras, elements, and morphisms.
//!
//! ```text
//! algebra  := "N" | factor ("@" factor)*     factor := "W" ("^" NAT)?
//! element  := "0" | term ("+" term)*         term   := (NAT "*")? monomial
//! monomial := GEN ("*" GEN)*                 GEN    := "x" NAT
//! morphism := "[" algebra "->" algebra "]" "{" GEN "->" element (";" GEN "->" element)* "}"
//! ```
//!
//! Whitespace never matters, and a morphism whose source is N has the empty
//! body `{ }`. Syntax errors carry the 1-based line and column of the
//! offending token. Semantic errors (duplicate assignment, missing
//! generator, index out of range, failed morphism check) are a separate
//! class. Printing is the `Display` of each value; parse ∘ print is the
//! identity.

use num_traits::ToPrimitive;
use serde_json::json;
use thiserror::Error;

use crate::weil::{
    check_hom, normalize_monomial, Element, HomVerdict, Monomial, Natural, WeilAlgebra,
    WeilMorphism,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("semantic error: {message}")]
    Semantic { message: String },
}

fn semantic(message: impl Into<String>) -> DslError {
    DslError::Semantic {
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    N,
    W,
    At,
    Caret,
    Star,
    Plus,
    Arrow,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Semi,
    Nat(Natural),
    Gen(Natural),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::N => "'N'".to_string(),
            Tok::W => "'W'".to_string(),
            Tok::At => "'@'".to_string(),
            Tok::Caret => "'^'".to_string(),
            Tok::Star => "'*'".to_string(),
            Tok::Plus => "'+'".to_string(),
            Tok::Arrow => "'->'".to_string(),
            Tok::LBracket => "'['".to_string(),
            Tok::RBracket => "']'".to_string(),
            Tok::LBrace => "'{'".to_string(),
            Tok::RBrace => "'}'".to_string(),
            Tok::Semi => "';'".to_string(),
            Tok::Nat(n) => format!("number {n}"),
            Tok::Gen(n) => format!("generator x{n}"),
            Tok::End => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(input: &str) -> Result<Vec<Spanned>, DslError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = input.chars().peekable();

    let read_digits = |chars: &mut std::iter::Peekable<std::str::Chars>, col: &mut usize| {
        let mut digits = String::new();
        while let Some(c) = chars.peek().filter(|c| c.is_ascii_digit()) {
            digits.push(*c);
            chars.next();
            *col += 1;
        }
        digits
    };

    while let Some(&c) = chars.peek() {
        let (tok_line, tok_col) = (line, col);
        let err = |message: String| DslError::Syntax {
            line: tok_line,
            col: tok_col,
            message,
        };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
                continue;
            }
            '@' | '^' | '*' | '+' | '[' | ']' | '{' | '}' | ';' => {
                chars.next();
                col += 1;
                out.push(Spanned {
                    tok: match c {
                        '@' => Tok::At,
                        '^' => Tok::Caret,
                        '*' => Tok::Star,
                        '+' => Tok::Plus,
                        '[' => Tok::LBracket,
                        ']' => Tok::RBracket,
                        '{' => Tok::LBrace,
                        '}' => Tok::RBrace,
                        _ => Tok::Semi,
                    },
                    line: tok_line,
                    col: tok_col,
                });
            }
            '-' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    out.push(Spanned {
                        tok: Tok::Arrow,
                        line: tok_line,
                        col: tok_col,
                    });
                } else {
                    return Err(err("expected '>' after '-'".to_string()));
                }
            }
            'N' => {
                chars.next();
                col += 1;
                out.push(Spanned {
                    tok: Tok::N,
                    line: tok_line,
                    col: tok_col,
                });
            }
            'W' => {
                chars.next();
                col += 1;
                out.push(Spanned {
                    tok: Tok::W,
                    line: tok_line,
                    col: tok_col,
                });
            }
            'x' => {
                chars.next();
                col += 1;
                let digits = read_digits(&mut chars, &mut col);
                if digits.is_empty() {
                    return Err(err("expected an index after 'x'".to_string()));
                }
                out.push(Spanned {
                    tok: Tok::Gen(digits.parse().expect("digits form a natural")),
                    line: tok_line,
                    col: tok_col,
                });
            }
            c if c.is_ascii_digit() => {
                let digits = read_digits(&mut chars, &mut col);
                out.push(Spanned {
                    tok: Tok::Nat(digits.parse().expect("digits form a natural")),
                    line: tok_line,
                    col: tok_col,
                });
            }
            other => {
                return Err(err(format!("unexpected character '{other}'")));
            }
        }
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(input: &str) -> Result<Self, DslError> {
        Ok(Parser {
            toks: lex(input)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Spanned {
        let s = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        s
    }

    fn error_here(&self, message: String) -> DslError {
        let s = &self.toks[self.pos];
        DslError::Syntax {
            line: s.line,
            col: s.col,
            message,
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), DslError> {
        if self.peek() == &tok {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(format!("expected {what}, found {}", self.peek().describe())))
        }
    }

    fn expect_end(&self) -> Result<(), DslError> {
        if self.peek() == &Tok::End {
            Ok(())
        } else {
            Err(self.error_here(format!(
                "expected end of input, found {}",
                self.peek().describe()
            )))
        }
    }

    fn algebra(&mut self) -> Result<WeilAlgebra, DslError> {
        if self.peek() == &Tok::N {
            self.next();
            return Ok(WeilAlgebra::nat());
        }
        let mut widths = Vec::new();
        loop {
            self.expect(Tok::W, "'N' or 'W'")?;
            let width = if self.peek() == &Tok::Caret {
                self.next();
                match self.peek().clone() {
                    Tok::Nat(n) => {
                        self.next();
                        n.to_u32()
                            .ok_or_else(|| semantic(format!("block width {n} out of range")))?
                    }
                    _ => {
                        return Err(self.error_here(format!(
                            "expected a width after '^', found {}",
                            self.peek().describe()
                        )))
                    }
                }
            } else {
                1
            };
            widths.push(width);
            if self.peek() == &Tok::At {
                self.next();
            } else {
                break;
            }
        }
        WeilAlgebra::new(widths).map_err(|e| semantic(e.to_string()))
    }

    fn generator_index(&mut self, ambient: &WeilAlgebra, role: &str) -> Result<u32, DslError> {
        match self.peek().clone() {
            Tok::Gen(n) => {
                self.next();
                let idx = n.to_u32().unwrap_or(0);
                if idx == 0 || idx > ambient.generator_count() {
                    return Err(semantic(format!(
                        "index out of range: x{n} is not a generator of the {role} {ambient}"
                    )));
                }
                Ok(idx)
            }
            other => Err(self.error_here(format!(
                "expected a generator, found {}",
                other.describe()
            ))),
        }
    }

    fn element(&mut self, ambient: &WeilAlgebra) -> Result<Element, DslError> {
        if self.peek() == &Tok::Nat(Natural::from(0u32)) && self.peek2() != &Tok::Star {
            self.next();
            return Element::from_terms(ambient.clone(), []).map_err(|e| semantic(e.to_string()));
        }
        let mut terms: Vec<(Monomial, Natural)> = Vec::new();
        loop {
            let coef = match self.peek().clone() {
                Tok::Nat(n) => {
                    self.next();
                    self.expect(Tok::Star, "'*' after a coefficient")?;
                    n
                }
                _ => Natural::from(1u32),
            };
            let mut indices = vec![self.generator_index(ambient, "ambient algebra")?];
            while self.peek() == &Tok::Star {
                self.next();
                indices.push(self.generator_index(ambient, "ambient algebra")?);
            }
            if let Some(m) =
                normalize_monomial(ambient, &indices).map_err(|e| semantic(e.to_string()))?
            {
                terms.push((m, coef));
            }
            if self.peek() == &Tok::Plus {
                self.next();
            } else {
                break;
            }
        }
        Element::from_terms(ambient.clone(), terms).map_err(|e| semantic(e.to_string()))
    }

    fn morphism_shape(&mut self) -> Result<(WeilAlgebra, WeilAlgebra, Vec<Element>), DslError> {
        self.expect(Tok::LBracket, "'['")?;
        let source = self.algebra()?;
        self.expect(Tok::Arrow, "'->'")?;
        let target = self.algebra()?;
        self.expect(Tok::RBracket, "']'")?;
        self.expect(Tok::LBrace, "'{'")?;

        let n = source.generator_count() as usize;
        let mut images: Vec<Option<Element>> = vec![None; n];
        if self.peek() != &Tok::RBrace {
            loop {
                let idx = self.generator_index(&source, "source")? as usize;
                self.expect(Tok::Arrow, "'->'")?;
                let image = self.element(&target)?;
                if images[idx - 1].replace(image).is_some() {
                    return Err(semantic(format!("duplicate assignment for generator x{idx}")));
                }
                if self.peek() == &Tok::Semi {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBrace, "'}'")?;

        let mut resolved = Vec::with_capacity(n);
        for (i, slot) in images.into_iter().enumerate() {
            match slot {
                Some(e) => resolved.push(e),
                None => {
                    return Err(semantic(format!(
                        "missing generator: x{} has no image",
                        i + 1
                    )))
                }
            }
        }
        Ok((source, target, resolved))
    }
}

/// Parses an algebra, e.g. `N`, `W^2`, `W@W^3`.
pub fn parse_algebra(input: &str) -> Result<WeilAlgebra, DslError> {
    let mut p = Parser::new(input)?;
    let a = p.algebra()?;
    p.expect_end()?;
    Ok(a)
}

/// Parses an element of `ambient`, normalizing as it goes.
pub fn parse_element(input: &str, ambient: &WeilAlgebra) -> Result<Element, DslError> {
    let mut p = Parser::new(input)?;
    let e = p.element(ambient)?;
    p.expect_end()?;
    Ok(e)
}

/// Parses a morphism and checks it is one; a failed check is a semantic
/// error naming the violating generator pair.
pub fn parse_morphism(input: &str) -> Result<WeilMorphism, DslError> {
    let (source, target, images) = parse_morphism_shape(input)?;
    match check_hom(&source, &target, &images).map_err(|e| semantic(e.to_string()))? {
        HomVerdict::Hom => WeilMorphism::new(source, target, images)
            .map_err(|e| semantic(e.to_string())),
        HomVerdict::Violation { i, j, product } => Err(semantic(format!(
            "not a morphism: images of related generators x{i}, x{j} have product {product}"
        ))),
    }
}

/// Parses the shape of a morphism without the homomorphism check, so the
/// check itself can be reported as a verdict instead of an error.
pub fn parse_morphism_shape(
    input: &str,
) -> Result<(WeilAlgebra, WeilAlgebra, Vec<Element>), DslError> {
    let mut p = Parser::new(input)?;
    let shape = p.morphism_shape()?;
    p.expect_end()?;
    Ok(shape)
}

fn nat_json(n: &Natural) -> serde_json::Value {
    n.to_u64()
        .map(serde_json::Value::from)
        .unwrap_or_else(|| serde_json::Value::from(n.to_string()))
}

pub fn algebra_json(a: &WeilAlgebra) -> serde_json::Value {
    json!({ "widths": a.widths() })
}

pub fn element_json(e: &Element) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = e
        .terms()
        .map(|(m, c)| json!({ "mono": m.indices(), "coef": nat_json(c) }))
        .collect();
    serde_json::Value::from(terms)
}

pub fn morphism_json(m: &WeilMorphism) -> serde_json::Value {
    json!({
        "src": algebra_json(m.source()),
        "tgt": algebra_json(m.target()),
        "images": m.images().iter().map(element_json).collect::<Vec<_>>(),
    })
}
