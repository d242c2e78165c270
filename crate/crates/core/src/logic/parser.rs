//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! formula := implies
//! implies := or ("->" implies)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "!" unary | "D" group unary | "K" group unary | "hatD" group unary
//!          | "alive" group | "dead" group | "true" | "false" | propid
//!          | "(" formula ")"
//! group   := "{" (name ("," name)*)? "}"
//! ```

use alloc::string::String;

use super::agents::{is_agent_name, AgentSet, Roster};
use super::formula::{is_prop_name, Formula, PropId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {expected}")]
    Syntax { offset: usize, expected: &'static str },
    #[error("unknown agent `{name}` at byte {offset}")]
    UnknownAgent { offset: usize, name: String },
    #[error("unknown token `{found}` at byte {offset}")]
    UnknownToken { offset: usize, found: char },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownAgent { offset, .. }
            | ParseError::UnknownToken { offset, .. } => *offset,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'s> {
    Ident(&'s str),
    LBrace,
    RBrace,
    Comma,
    LParen,
    RParen,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Eof,
}

struct Lexer<'s> {
    src: &'s str,
    pos: usize,
}

impl<'s> Lexer<'s> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Returns the next token and its starting byte offset without consuming.
    fn peek(&mut self) -> Result<(Tok<'s>, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::Eof, start));
        };
        let tok = match c {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '!' => Tok::Bang,
            '&' => Tok::Amp,
            '|' => Tok::Pipe,
            '-' if rest.starts_with("->") => Tok::Arrow,
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let len = rest
                    .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                    .unwrap_or(rest.len());
                Tok::Ident(&rest[..len])
            }
            other => {
                return Err(ParseError::UnknownToken {
                    offset: start,
                    found: other,
                })
            }
        };
        Ok((tok, start))
    }

    fn bump(&mut self, tok: Tok<'s>) {
        self.pos += match tok {
            Tok::Ident(s) => s.len(),
            Tok::Arrow => 2,
            Tok::Eof => 0,
            _ => 1,
        };
    }

    fn next(&mut self) -> Result<(Tok<'s>, usize), ParseError> {
        let (tok, at) = self.peek()?;
        self.bump(tok);
        Ok((tok, at))
    }

    fn expect(&mut self, want: Tok<'static>, expected: &'static str) -> Result<(), ParseError> {
        let (tok, offset) = self.next()?;
        if tok == want {
            Ok(())
        } else {
            Err(ParseError::Syntax { offset, expected })
        }
    }
}

struct Parser<'s, 'r> {
    lex: Lexer<'s>,
    roster: &'r Roster,
}

/// Parses `text` against `roster`, expanding every derived connective into
/// the four primitive constructors.
pub fn parse_formula(text: &str, roster: &Roster) -> Result<Formula, ParseError> {
    let mut p = Parser {
        lex: Lexer { src: text, pos: 0 },
        roster,
    };
    let f = p.implies()?;
    let (tok, offset) = p.lex.peek()?;
    if tok != Tok::Eof {
        return Err(ParseError::Syntax {
            offset,
            expected: "end of input",
        });
    }
    Ok(f)
}

impl Parser<'_, '_> {
    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.lex.peek()?.0 == Tok::Arrow {
            self.lex.bump(Tok::Arrow);
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while self.lex.peek()?.0 == Tok::Pipe {
            self.lex.bump(Tok::Pipe);
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.lex.peek()?.0 == Tok::Amp {
            self.lex.bump(Tok::Amp);
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let (tok, offset) = self.lex.next()?;
        match tok {
            Tok::Bang => Ok(Formula::not(self.unary()?)),
            Tok::LParen => {
                let f = self.implies()?;
                self.lex.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident("D") => {
                let g = self.group()?;
                Ok(Formula::d(g, self.unary()?))
            }
            Tok::Ident("K") => {
                let (g, at) = (self.group()?, offset);
                if g.len() != 1 {
                    return Err(ParseError::Syntax {
                        offset: at,
                        expected: "exactly one agent after `K`",
                    });
                }
                Ok(Formula::d(g, self.unary()?))
            }
            Tok::Ident("hatD") => {
                let g = self.group()?;
                Ok(Formula::hat_d(g, self.unary()?))
            }
            Tok::Ident("alive") => Ok(Formula::alive(self.group()?)),
            Tok::Ident("dead") => Ok(Formula::dead(self.group()?)),
            Tok::Ident("true") => Ok(Formula::top()),
            Tok::Ident("false") => Ok(Formula::bottom()),
            Tok::Ident(name) if is_prop_name(name) => {
                Ok(Formula::Atom(PropId::new(name).expect("checked name")))
            }
            Tok::Ident(_) => Err(ParseError::Syntax {
                offset,
                expected: "proposition (`[a-z][a-zA-Z0-9_]*`) or operator",
            }),
            _ => Err(ParseError::Syntax {
                offset,
                expected: "formula",
            }),
        }
    }

    fn group(&mut self) -> Result<AgentSet, ParseError> {
        self.lex.expect(Tok::LBrace, "`{`")?;
        let mut set = AgentSet::EMPTY;
        if self.lex.peek()?.0 == Tok::RBrace {
            self.lex.bump(Tok::RBrace);
            return Ok(set);
        }
        loop {
            let (tok, offset) = self.lex.next()?;
            let Tok::Ident(name) = tok else {
                return Err(ParseError::Syntax {
                    offset,
                    expected: "agent name",
                });
            };
            if !is_agent_name(name) {
                return Err(ParseError::Syntax {
                    offset,
                    expected: "agent name",
                });
            }
            let idx = self
                .roster
                .index_of(name)
                .ok_or_else(|| ParseError::UnknownAgent {
                    offset,
                    name: name.into(),
                })?;
            set = set.with(idx);
            let (tok, offset) = self.lex.next()?;
            match tok {
                Tok::Comma => continue,
                Tok::RBrace => return Ok(set),
                _ => {
                    return Err(ParseError::Syntax {
                        offset,
                        expected: "`,` or `}`",
                    })
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn roster() -> Roster {
        Roster::new(["a", "b", "c"]).unwrap()
    }

    fn parse(s: &str) -> Formula {
        parse_formula(s, &roster()).unwrap()
    }

    #[test]
    fn grammar_examples() {
        let ab = AgentSet::from_agents([0, 1]);
        assert_eq!(parse("D{a,b} p"), Formula::d(ab, Formula::prop("p")));
        assert_eq!(parse("D{b,a,b} p"), parse("D{a,b} p"));
        assert_eq!(
            parse("alive{a}"),
            Formula::not(Formula::d(
                AgentSet::singleton(0),
                Formula::not(Formula::top())
            ))
        );
        assert_eq!(
            parse("dead{a}"),
            Formula::d(AgentSet::singleton(0), Formula::bottom())
        );
        assert_eq!(
            parse("dead{a,c}"),
            Formula::and(Formula::dead_agent(0), Formula::dead_agent(2))
        );
        assert_eq!(parse("K{b} p"), parse("D{b} p"));
        assert_eq!(parse("hatD{a} p"), parse("!D{a} !p"));
    }

    #[test]
    fn precedence_and_associativity() {
        let p = Formula::prop("p");
        let q = Formula::prop("q");
        let r = Formula::prop("r");
        assert_eq!(
            parse("p -> q -> r"),
            Formula::implies(p.clone(), Formula::implies(q.clone(), r.clone()))
        );
        assert_eq!(
            parse("p | q & r"),
            Formula::or(p.clone(), Formula::and(q.clone(), r.clone()))
        );
        assert_eq!(
            parse("p & q & r"),
            Formula::and(Formula::and(p.clone(), q.clone()), r)
        );
        assert_eq!(
            parse("D{a} p & q"),
            Formula::and(Formula::k(0, p.clone()), q.clone())
        );
        assert_eq!(parse("  !  ( p ) "), Formula::not(p));
    }

    #[test]
    fn errors_carry_offsets() {
        let r = roster();
        assert_eq!(
            parse_formula("D{a,x} p", &r),
            Err(ParseError::UnknownAgent {
                offset: 4,
                name: "x".into()
            })
        );
        assert_eq!(
            parse_formula("p # q", &r),
            Err(ParseError::UnknownToken {
                offset: 2,
                found: '#'
            })
        );
        assert_eq!(parse_formula("(p & q", &r).unwrap_err().offset(), 6);
        assert!(matches!(
            parse_formula("p q", &r),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
        assert!(parse_formula("K{a,b} p", &r).is_err());
        assert!(parse_formula("P", &r).is_err());
        assert!(parse_formula("", &r).is_err());
        assert!(parse_formula("p -", &r).is_err());
    }

    #[test]
    fn print_parse_examples() {
        let r = roster();
        for s in ["D{a} p", "(p & !q)", "D{} p", "true", "false", "!D{a,b,c} (p & D{} false)"] {
            assert_eq!(parse(s).display(&r).to_string(), s);
        }
    }
}
