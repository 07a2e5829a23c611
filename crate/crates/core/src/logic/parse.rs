use super::{Formula, LinearConstraint, ProbabilityTerm};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Number(f64),
    Knows(String),
    Common(Vec<String>),
    Prob(String),
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Plus,
    Minus,
    Star,
    Cmp(Cmp),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Cmp {
    Ge,
    Le,
    Gt,
    Lt,
    Eq,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let next = chars.get(i + 1).copied();
        match c {
            '!' | '~' | '¬' => {
                out.push(Token::Not);
                i += 1;
            }
            '&' | '∧' => {
                out.push(Token::And);
                i += 1;
            }
            '|' | '∨' => {
                out.push(Token::Or);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '[' => {
                out.push(Token::LBracket);
                i += 1;
            }
            ']' => {
                out.push(Token::RBracket);
                i += 1;
            }
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '-' if next == Some('>') => {
                out.push(Token::Implies);
                i += 2;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '>' | '<' | '=' => {
                let (cmp, len) = match (c, next) {
                    ('>', Some('=')) => (Cmp::Ge, 2),
                    ('<', Some('=')) => (Cmp::Le, 2),
                    ('>', _) => (Cmp::Gt, 1),
                    ('<', _) => (Cmp::Lt, 1),
                    _ => (Cmp::Eq, 1),
                };
                out.push(Token::Cmp(cmp));
                i += len;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_digit()
                        || chars[i] == '.'
                        || ((chars[i] == 'e' || chars[i] == 'E') && i > start)
                        || ((chars[i] == '-' || chars[i] == '+')
                            && matches!(chars[i - 1], 'e' | 'E')))
                {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let value = text
                    .parse::<f64>()
                    .map_err(|_| invalid(format!("malformed number `{text}`")))?;
                out.push(Token::Number(value));
            }
            c if is_ident_char(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                if matches!(name.as_str(), "K" | "C" | "P") && chars.get(i) == Some(&'{') {
                    let close = chars[i..]
                        .iter()
                        .position(|&c| c == '}')
                        .ok_or_else(|| invalid(format!("unterminated `{name}{{` operator")))?;
                    let inside: String = chars[i + 1..i + close].iter().collect();
                    i += close + 1;
                    let ids: Vec<String> = inside
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect();
                    if ids.is_empty() {
                        return Err(invalid(format!("`{name}{{}}` needs an agent")));
                    }
                    out.push(match name.as_str() {
                        "C" => Token::Common(ids),
                        _ if ids.len() != 1 => {
                            return Err(invalid(format!("`{name}{{..}}` takes exactly one agent")))
                        }
                        "K" => Token::Knows(ids[0].clone()),
                        _ => Token::Prob(ids[0].clone()),
                    });
                } else if chars.get(i) == Some(&'(') {
                    // Ground predicate atom such as `bird(tweety)`.
                    let close = chars[i..]
                        .iter()
                        .position(|&c| c == ')')
                        .ok_or_else(|| invalid(format!("unterminated arguments of `{name}`")))?;
                    let inside: String = chars[i + 1..i + close].iter().collect();
                    let args: Vec<&str> = inside.split(',').map(str::trim).collect();
                    if args.iter().any(|a| a.is_empty() || !a.chars().all(is_ident_char)) {
                        return Err(invalid(format!("malformed arguments in `{name}({inside})`")));
                    }
                    i += close + 1;
                    out.push(Token::Ident(format!("{name}({})", args.join(","))));
                } else {
                    out.push(Token::Ident(name));
                }
            }
            other => return Err(invalid(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(invalid(format!("expected {want:?}, found {t:?}"))),
            None => Err(invalid(format!("expected {want:?}, found end of input"))),
        }
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Token::Implies) {
            self.bump();
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Token::Or) {
            self.bump();
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.bump();
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().cloned() {
            Some(Token::Not) => {
                self.bump();
                Ok(self.unary()?.not())
            }
            Some(Token::Knows(a)) => {
                self.bump();
                Ok(Formula::knows(a, self.unary()?))
            }
            Some(Token::Common(g)) => {
                self.bump();
                Ok(Formula::common(g, self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek().cloned() {
            Some(Token::LParen) => {
                self.bump();
                let f = self.implication()?;
                self.expect(Token::RParen)?;
                Ok(f)
            }
            Some(Token::Ident(name)) => {
                self.bump();
                Ok(match name.as_str() {
                    "true" => Formula::True,
                    "false" => Formula::False,
                    _ => Formula::Atom(name),
                })
            }
            Some(Token::Number(_)) | Some(Token::Prob(_)) | Some(Token::Minus) => self.linear(),
            Some(t) => Err(invalid(format!("unexpected token {t:?}"))),
            None => Err(invalid("unexpected end of input")),
        }
    }

    fn term(&mut self, sign: f64) -> Result<ProbabilityTerm> {
        let mut coefficient = sign;
        if let Some(Token::Number(n)) = self.peek().cloned() {
            self.bump();
            coefficient *= n;
            if self.peek() == Some(&Token::Star) {
                self.bump();
            }
        }
        let agent = match self.bump() {
            Some(Token::Prob(a)) => a,
            other => return Err(invalid(format!("expected P{{agent}}[..], found {other:?}"))),
        };
        self.expect(Token::LBracket)?;
        let formula = self.implication()?;
        self.expect(Token::RBracket)?;
        Ok(ProbabilityTerm {
            coefficient,
            agent,
            formula,
        })
    }

    fn linear(&mut self) -> Result<Formula> {
        let mut terms = Vec::new();
        let first_sign = if self.peek() == Some(&Token::Minus) {
            self.bump();
            -1.0
        } else {
            1.0
        };
        terms.push(self.term(first_sign)?);
        loop {
            let sign = match self.peek() {
                Some(Token::Plus) => 1.0,
                Some(Token::Minus) => -1.0,
                _ => break,
            };
            self.bump();
            terms.push(self.term(sign)?);
        }
        let cmp = match self.bump() {
            Some(Token::Cmp(c)) => c,
            other => return Err(invalid(format!("expected comparison, found {other:?}"))),
        };
        let negative = if self.peek() == Some(&Token::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let bound = match self.bump() {
            Some(Token::Number(n)) => {
                if negative {
                    -n
                } else {
                    n
                }
            }
            other => return Err(invalid(format!("expected numeric bound, found {other:?}"))),
        };
        let ge = LinearConstraint {
            terms: terms.clone(),
            bound,
        };
        let le = LinearConstraint {
            terms: terms
                .into_iter()
                .map(|t| ProbabilityTerm {
                    coefficient: -t.coefficient,
                    ..t
                })
                .collect(),
            bound: -bound,
        };
        Ok(match cmp {
            Cmp::Ge => Formula::Linear(ge),
            Cmp::Le => Formula::Linear(le),
            Cmp::Gt => Formula::Linear(le).not(),
            Cmp::Lt => Formula::Linear(ge).not(),
            Cmp::Eq => Formula::Linear(ge).and(Formula::Linear(le)),
        })
    }
}

/// Parses the shared surface syntax.
pub fn parse(src: &str) -> Result<Formula> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(invalid("empty formula"));
    }
    let mut p = Parser { tokens, pos: 0 };
    let f = p.implication()?;
    if let Some(t) = p.peek() {
        return Err(invalid(format!("trailing input at {t:?} in `{src}`")));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_associativity() {
        let f = parse("p | q & r").unwrap();
        assert_eq!(f, Formula::atom("p").or(Formula::atom("q").and(Formula::atom("r"))));
        let g = parse("p -> q -> r").unwrap();
        assert_eq!(
            g,
            Formula::atom("p").implies(Formula::atom("q").implies(Formula::atom("r")))
        );
        let h = parse("!K{a} p").unwrap();
        assert_eq!(h, Formula::knows("a", Formula::atom("p")).not());
    }

    #[test]
    fn linear_constraints() {
        let f = parse("1*P{a}[p] - 2*P{a}[q] >= 0").unwrap();
        let Formula::Linear(lin) = f else { panic!() };
        assert_eq!(lin.terms.len(), 2);
        assert_eq!(lin.terms[1].coefficient, -2.0);
        assert_eq!(lin.bound, 0.0);

        let eq = parse("P{a}[K{b} p] = 1").unwrap();
        assert!(matches!(eq, Formula::And(..)));
        let le = parse("P{a}[p] <= 0.25").unwrap();
        let Formula::Linear(lin) = le else { panic!() };
        assert_eq!(lin.terms[0].coefficient, -1.0);
        assert_eq!(lin.bound, -0.25);
        assert!(parse("-P{a}[p] >= -1").is_ok());
    }

    #[test]
    fn predicate_atoms() {
        let f = parse("connected(paris, bonn)").unwrap();
        assert_eq!(f, Formula::atom("connected(paris,bonn)"));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "p &", "(p", "K{} p", "P{a}[p]", "p q", "P{a,b}[p] >= 1", "p $ q"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }
}
