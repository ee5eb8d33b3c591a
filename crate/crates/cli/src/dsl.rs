//! The `.set` input language.
//!
//! ```text
//! vars x, y;
//! set T = { |x| <= 1 and |x*y| <= 1 } or positive { |y| <= 1/2 * |x^2| };
//! ```
//!
//! `<` and `<=` mean the same thing (the closure has the same bounded
//! ring). A right-hand side `|m|` without a constant means `1 * |m|`.
//! `positive` restricts a block to the positive orthant. `#` starts a
//! comment.

use std::fmt;

use boundring_core::algebra::{format_monomial, parse_rational};
use boundring_core::{ExponentVector, MonomialConstraint, Rational, SetSpec, SignRegime, Tentacle};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedSet {
    pub vars: Vec<String>,
    pub name: String,
    pub spec: SetSpec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Sym(&'static str),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Number(s) => write!(f, "'{s}'"),
            Tok::Sym(s) => write!(f, "'{s}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 10] = ["<=", "<", "|", "*", "^", ",", ";", "=", "{", "}"];

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (lno, col) = (li + 1, i + 1);
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                out.push(Spanned { tok: Tok::Ident(word), line: lno, col });
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.' || chars[i] == '/') {
                    i += 1;
                }
                let num: String = chars[start..i].iter().collect();
                out.push(Spanned { tok: Tok::Number(num), line: lno, col });
            } else {
                let rest: String = chars[i..].iter().take(2).collect();
                let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
                    return Err(ParseError {
                        line: lno,
                        col,
                        message: format!("unexpected character '{c}'"),
                    });
                };
                i += sym.len();
                out.push(Spanned { tok: Tok::Sym(sym), line: lno, col });
            }
        }
    }
    let (line, col) = out.last().map_or((1, 1), |t| (t.line, t.col + 1));
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    vars: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let t = &self.toks[self.pos];
        Err(ParseError {
            line: t.line,
            col: t.col,
            message: message.into(),
        })
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(x) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(format!("expected '{s}', found {}", self.peek()))
        }
    }

    fn eat_keyword(&mut self, k: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(x) if x == k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, k: &str) -> Result<(), ParseError> {
        if self.eat_keyword(k) {
            Ok(())
        } else {
            self.error(format!("expected '{k}', found {}", self.peek()))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(s)
            }
            t => self.error(format!("expected a name, found {t}")),
        }
    }

    fn vars_decl(&mut self) -> Result<Vec<String>, ParseError> {
        let mut vars = Vec::new();
        loop {
            let name = self.ident()?;
            if vars.contains(&name) {
                self.pos -= 1;
                return self.error(format!("variable '{name}' declared twice"));
            }
            vars.push(name);
            if !self.eat_sym(",") {
                break;
            }
        }
        self.expect_sym(";")?;
        Ok(vars)
    }

    fn monomial(&mut self) -> Result<ExponentVector, ParseError> {
        let n = self.vars.len();
        let mut e = vec![0i64; n];
        loop {
            match self.peek().clone() {
                Tok::Number(s) if s == "1" => {
                    self.pos += 1;
                }
                Tok::Ident(name) => {
                    let Some(i) = self.vars.iter().position(|v| *v == name) else {
                        return self.error(format!("unknown variable '{name}'"));
                    };
                    self.pos += 1;
                    let mut k = 1;
                    if self.eat_sym("^") {
                        k = match self.peek().clone() {
                            Tok::Number(s) => match s.parse::<i64>() {
                                Ok(k) if k >= 1 && k <= 1 << 20 => k,
                                _ => return self.error("exponent must be a positive integer"),
                            },
                            t => return self.error(format!("expected an exponent, found {t}")),
                        };
                        self.pos += 1;
                    }
                    e[i] += k;
                }
                t => return self.error(format!("expected a variable or 1, found {t}")),
            }
            if !self.eat_sym("*") {
                break;
            }
        }
        Ok(e.into())
    }

    fn bar_monomial(&mut self) -> Result<ExponentVector, ParseError> {
        self.expect_sym("|")?;
        let m = self.monomial()?;
        self.expect_sym("|")?;
        Ok(m)
    }

    fn constraint(&mut self) -> Result<MonomialConstraint, ParseError> {
        let alpha = self.bar_monomial()?;
        if !(self.eat_sym("<=") || self.eat_sym("<")) {
            return self.error(format!("expected '<=' or '<', found {}", self.peek()));
        }
        let (bound, beta) = match self.peek().clone() {
            Tok::Sym("|") => (Rational::from_integer(1.into()), self.bar_monomial()?),
            Tok::Number(s) => {
                let Ok(c) = parse_rational(&s) else {
                    return self.error(format!("malformed number '{s}'"));
                };
                self.pos += 1;
                let beta = if self.eat_sym("*") {
                    self.bar_monomial()?
                } else {
                    ExponentVector::zero(self.vars.len())
                };
                (c, beta)
            }
            t => return self.error(format!("expected a positive rational or |monomial|, found {t}")),
        };
        match MonomialConstraint::new(alpha, beta, bound) {
            Ok(c) => Ok(c),
            Err(e) => self.error(e.to_string()),
        }
    }

    fn block(&mut self) -> Result<Tentacle, ParseError> {
        let regime = if self.eat_keyword("positive") {
            SignRegime::PositiveOrthant
        } else {
            SignRegime::Absolute
        };
        self.expect_sym("{")?;
        let mut cs = Vec::new();
        if !self.eat_sym("}") {
            loop {
                cs.push(self.constraint()?);
                if !self.eat_keyword("and") {
                    break;
                }
            }
            self.expect_sym("}")?;
        }
        Ok(Tentacle::new(self.vars.len(), cs, regime).expect("constraints built for these vars"))
    }
}

/// Default variable names for `n` variables.
pub fn default_vars(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Parses a `.set` file. `nvars` supplies default names when the file has
/// no `vars` line, and must agree with it otherwise.
pub fn parse_set(text: &str, nvars: Option<usize>) -> Result<ParsedSet, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        vars: Vec::new(),
    };
    p.vars = if p.eat_keyword("vars") {
        let vars = p.vars_decl()?;
        if let Some(n) = nvars.filter(|&n| n != vars.len()) {
            return Err(ParseError {
                line: 1,
                col: 1,
                message: format!("--n {n} disagrees with the {} declared variables", vars.len()),
            });
        }
        vars
    } else {
        match nvars {
            Some(n) if n > 0 => default_vars(n),
            _ => return p.error("missing 'vars' declaration (or pass --n)"),
        }
    };
    p.expect_keyword("set")?;
    let name = p.ident()?;
    p.expect_sym("=")?;
    let mut tentacles = vec![p.block()?];
    while p.eat_keyword("or") {
        tentacles.push(p.block()?);
    }
    p.expect_sym(";")?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {} after the set", p.peek()));
    }
    let spec = SetSpec::new(p.vars.len(), tentacles).expect("at least one block");
    Ok(ParsedSet {
        vars: p.vars,
        name,
        spec,
    })
}

/// Renders a set back into the input language.
pub fn to_dsl(vars: &[String], name: &str, spec: &SetSpec) -> String {
    let blocks: Vec<String> = spec
        .tentacles()
        .iter()
        .map(|t| {
            let cs: Vec<String> = t
                .constraints()
                .iter()
                .map(|c| {
                    let lhs = format_monomial(c.alpha(), vars);
                    if c.beta().is_zero() {
                        format!("|{lhs}| <= {}", c.bound())
                    } else {
                        format!("|{lhs}| <= {} * |{}|", c.bound(), format_monomial(c.beta(), vars))
                    }
                })
                .collect();
            let prefix = match t.regime() {
                SignRegime::Absolute => "",
                SignRegime::PositiveOrthant => "positive ",
            };
            if cs.is_empty() {
                format!("{prefix}{{ }}")
            } else {
                format!("{prefix}{{ {} }}", cs.join(" and "))
            }
        })
        .collect();
    format!("vars {};\nset {name} = {};\n", vars.join(", "), blocks.join(" or "))
}
