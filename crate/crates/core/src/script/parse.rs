use super::ast::{Arg, Listener, ListenerEvent, ScriptAst, Subject, TriggerCall, TriggerName};
use super::lexer::{tokenize, Pos, Spanned, Token};
use super::ScriptError;
use crate::number::Number;

/// Parses MAMLScript source into an AST.
///
/// ```text
/// script   := listener* ;
/// listener := "on" "(" string "," (string | number) ("," string)? ")" "{" stmt* "}" ;
/// stmt     := call ";" ;
/// call     := ident "(" (arg ("," arg)*)? ")" ;
/// arg      := string | call ;
/// ```
pub fn parse_script(code: &str) -> Result<ScriptAst, ScriptError> {
    let tokens = tokenize(code).map_err(|e| ScriptError::Lex { pos: e.pos, message: e.message })?;
    let mut p = Parser { tokens, at: 0 };
    let mut listeners = Vec::new();
    while p.peek() != &Token::Eof {
        listeners.push(p.listener()?);
    }
    Ok(ScriptAst { listeners })
}

enum ListenerArg {
    Str(String, Pos),
    Num(f64, Pos),
}

struct Parser {
    tokens: Vec<Spanned>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].token
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].pos
    }

    fn next(&mut self) -> Spanned {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ScriptError {
        ScriptError::Parse { pos: self.pos(), expected: expected.to_owned(), found: self.peek().describe() }
    }

    fn expect(&mut self, token: Token, expected: &str) -> Result<(), ScriptError> {
        if *self.peek() == token {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn listener(&mut self) -> Result<Listener, ScriptError> {
        if !matches!(self.peek(), Token::Ident(s) if s == "on") {
            return Err(self.unexpected("`on`"));
        }
        self.next();
        self.expect(Token::LParen, "`(`")?;

        let event_pos = self.pos();
        let event = match self.next().token {
            Token::Str(name) => {
                ListenerEvent::from_name(&name).ok_or(ScriptError::UnknownListener { pos: event_pos, name })?
            }
            other => {
                return Err(ScriptError::Parse {
                    pos: event_pos,
                    expected: "listener name string".into(),
                    found: other.describe(),
                })
            }
        };

        let mut args = Vec::new();
        while *self.peek() == Token::Comma {
            self.next();
            let pos = self.pos();
            match self.next().token {
                Token::Str(s) => args.push(ListenerArg::Str(s, pos)),
                Token::Number(n) => args.push(ListenerArg::Num(n, pos)),
                other => {
                    return Err(ScriptError::Parse {
                        pos,
                        expected: "string or number".into(),
                        found: other.describe(),
                    })
                }
            }
        }
        self.expect(Token::RParen, "`,` or `)`")?;
        let (subject, key_name) = listener_subject(event, event_pos, args)?;

        self.expect(Token::LBrace, "`{`")?;
        let mut body = Vec::new();
        while *self.peek() != Token::RBrace {
            body.push(self.call(false)?);
            self.expect(Token::Semi, "`;`")?;
        }
        self.next();
        Ok(Listener { event, subject, key_name, body })
    }

    fn call(&mut self, nested: bool) -> Result<TriggerCall, ScriptError> {
        let pos = self.pos();
        let name = match self.peek() {
            Token::Ident(name) => name.clone(),
            _ => return Err(self.unexpected(if nested { "string or trigger call" } else { "trigger call or `}`" })),
        };
        self.next();
        let trigger = TriggerName::from_name(&name).ok_or(ScriptError::UnknownTrigger { pos, name })?;
        if nested && !trigger.returns_value() {
            return Err(ScriptError::NestedNonValueTrigger { pos, name: trigger.as_str().into() });
        }
        if !nested && trigger.returns_value() {
            return Err(ScriptError::BareValueTrigger { pos, name: trigger.as_str().into() });
        }

        self.expect(Token::LParen, "`(`")?;
        let mut args = Vec::new();
        if *self.peek() != Token::RParen {
            loop {
                let arg_pos = self.pos();
                let arg = match self.peek() {
                    Token::Str(_) => match self.next().token {
                        Token::Str(s) => Arg::Literal(s),
                        _ => unreachable!(),
                    },
                    Token::Ident(_) => Arg::Call(self.call(true)?),
                    _ => return Err(self.unexpected("string or trigger call")),
                };
                args.push((arg, arg_pos));
                if *self.peek() != Token::Comma {
                    break;
                }
                self.next();
            }
        }
        self.expect(Token::RParen, "`,` or `)`")?;

        if args.len() != trigger.arity() {
            return Err(ScriptError::Arity {
                pos,
                name: trigger.as_str().into(),
                expected: trigger.arity().to_string(),
                found: args.len(),
            });
        }
        for (i, (arg, arg_pos)) in args.iter().enumerate() {
            let content_slot = trigger == TriggerName::Swap && i == 0;
            match arg {
                Arg::Call(_) if !content_slot => {
                    return Err(ScriptError::BadArgument {
                        pos: *arg_pos,
                        name: trigger.as_str().into(),
                        reason: "element id must be a string literal".into(),
                    })
                }
                Arg::Literal(s) if !content_slot && s.is_empty() => {
                    return Err(ScriptError::BadArgument {
                        pos: *arg_pos,
                        name: trigger.as_str().into(),
                        reason: "element id must not be empty".into(),
                    })
                }
                _ => {}
            }
        }
        Ok(TriggerCall::new(trigger, args.into_iter().map(|(a, _)| a).collect()))
    }
}

fn listener_subject(
    event: ListenerEvent,
    pos: Pos,
    args: Vec<ListenerArg>,
) -> Result<(Subject, Option<String>), ScriptError> {
    let name = event.as_str();
    let (expected, expected_str) = match event {
        ListenerEvent::Keydown => (2, "2"),
        _ => (1, "1"),
    };
    if args.len() != expected {
        return Err(ScriptError::Arity { pos, name: name.into(), expected: expected_str.into(), found: args.len() });
    }
    let bad = |pos: Pos, reason: &str| ScriptError::BadArgument { pos, name: name.into(), reason: reason.into() };
    let mut args = args.into_iter();
    let subject = match (event, args.next().expect("arity checked")) {
        (ListenerEvent::Timer, ListenerArg::Num(n, p)) => Subject::Seconds(
            Number::new(n).filter(|n| n.get() > 0.0).ok_or_else(|| bad(p, "interval must be positive"))?,
        ),
        (ListenerEvent::Timer, ListenerArg::Str(_, p)) => return Err(bad(p, "interval must be a number of seconds")),
        (_, ListenerArg::Str(id, p)) if id.is_empty() => return Err(bad(p, "element id must not be empty")),
        (_, ListenerArg::Str(id, _)) => Subject::Element(id),
        (_, ListenerArg::Num(_, p)) => return Err(bad(p, "expected an element id string")),
    };
    let key_name = match args.next() {
        Some(ListenerArg::Str(key, p)) if key.is_empty() => return Err(bad(p, "key name must not be empty")),
        Some(ListenerArg::Str(key, _)) => Some(key),
        Some(ListenerArg::Num(_, p)) => return Err(bad(p, "key name must be a string")),
        None => None,
    };
    Ok((subject, key_name))
}
