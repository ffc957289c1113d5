//! Line-oriented circuit description language (`.wqc` files).
//!
//! ```text
//! # comment
//! modes 4
//! had 1
//! pbs 1 2 -> 3 4
//! pc 1 2 -> 3
//! cnot 1 2
//! vgate 4 2
//! ```
//!
//! One statement per line, whitespace-separated tokens, 1-based mode labels.
//! `modes N` must be the first statement. V-gate aux rails are implicit and
//! allocated above the declared modes in statement order.

use std::fmt;

use crate::circuit::Circuit;
use crate::fock::ModeId;

pub const FILE_EXTENSION: &str = "wqc";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    UnknownKeyword,
    Arity,
    BadInteger,
    MissingModesDecl,
    DuplicateModesDecl,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.span.line, self.span.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatementKind {
    ModesDecl {
        count: u32,
    },
    Had {
        mode: ModeId,
    },
    Pbs {
        in1: ModeId,
        in2: ModeId,
        out1: ModeId,
        out2: ModeId,
    },
    Pc {
        in1: ModeId,
        in2: ModeId,
        out: ModeId,
    },
    Cnot {
        control: ModeId,
        target: ModeId,
    },
    Vgate {
        control: ModeId,
        target: ModeId,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Statement {
    pub kind: StatementKind,
    pub span: SourceSpan,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (column, (byte, ch)) in code.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((byte, column + 1)),
            (true, Some((b, col))) => {
                tokens.push(Token {
                    text: &code[b..byte],
                    column: col,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, col)) = start {
        tokens.push(Token {
            text: &code[b..],
            column: col,
        });
    }
    tokens
}

fn error(line: usize, column: usize, kind: ParseErrorKind, message: String) -> ParseError {
    ParseError {
        span: SourceSpan { line, column },
        message,
        kind,
    }
}

fn parse_statement(line_no: usize, tokens: &[Token<'_>]) -> Result<Statement, ParseError> {
    let keyword = &tokens[0];
    let span = SourceSpan {
        line: line_no,
        column: keyword.column,
    };
    let args = &tokens[1..];
    let int = |t: &Token<'_>| -> Result<u32, ParseError> {
        match t.text.parse::<u32>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(error(
                line_no,
                t.column,
                ParseErrorKind::BadInteger,
                format!("expected a positive integer, found {:?}", t.text),
            )),
        }
    };
    let mode = |t: &Token<'_>| int(t).map(ModeId);
    let arity = |expected: &str| {
        error(
            line_no,
            keyword.column,
            ParseErrorKind::Arity,
            format!(
                "{} expects {expected}, found {} argument(s)",
                keyword.text,
                args.len()
            ),
        )
    };
    let arrow = |t: &Token<'_>| -> Result<(), ParseError> {
        if t.text == "->" {
            Ok(())
        } else {
            Err(error(
                line_no,
                t.column,
                ParseErrorKind::Arity,
                format!(
                    "{} expects \"->\" between inputs and outputs, found {:?}",
                    keyword.text, t.text
                ),
            ))
        }
    };

    let kind = match keyword.text {
        "modes" => match args {
            [n] => StatementKind::ModesDecl { count: int(n)? },
            _ => return Err(arity("1 argument: the mode count")),
        },
        "had" => match args {
            [m] => StatementKind::Had { mode: mode(m)? },
            _ => return Err(arity("1 argument: the mode")),
        },
        "cnot" => match args {
            [c, t] => StatementKind::Cnot {
                control: mode(c)?,
                target: mode(t)?,
            },
            _ => return Err(arity("2 arguments: control target")),
        },
        "vgate" => match args {
            [c, t] => StatementKind::Vgate {
                control: mode(c)?,
                target: mode(t)?,
            },
            _ => return Err(arity("2 arguments: control target")),
        },
        "pbs" => match args {
            [a, b, arr, c, d] => {
                let (in1, in2) = (mode(a)?, mode(b)?);
                arrow(arr)?;
                StatementKind::Pbs {
                    in1,
                    in2,
                    out1: mode(c)?,
                    out2: mode(d)?,
                }
            }
            _ => return Err(arity("in1 in2 -> out1 out2")),
        },
        "pc" => match args {
            [a, b, arr, c] => {
                let (in1, in2) = (mode(a)?, mode(b)?);
                arrow(arr)?;
                StatementKind::Pc {
                    in1,
                    in2,
                    out: mode(c)?,
                }
            }
            _ => return Err(arity("in1 in2 -> out")),
        },
        other => {
            return Err(error(
                line_no,
                keyword.column,
                ParseErrorKind::UnknownKeyword,
                format!("unknown keyword {other:?}"),
            ))
        }
    };
    Ok(Statement { kind, span })
}

/// Parses every line, collecting at most one error per line.
pub fn parse_statements(source: &str) -> (Vec<Statement>, Vec<ParseError>) {
    let mut statements = Vec::new();
    let mut errors = Vec::new();
    let mut declared: Option<SourceSpan> = None;
    let mut missing_reported = false;

    for (index, line) in source.lines().enumerate() {
        let line_no = index + 1;
        let tokens = tokenize(line);
        if tokens.is_empty() {
            continue;
        }
        let is_modes = tokens[0].text == "modes";
        if !is_modes && declared.is_none() && !missing_reported {
            missing_reported = true;
            errors.push(error(
                line_no,
                tokens[0].column,
                ParseErrorKind::MissingModesDecl,
                "the first statement must be \"modes N\"".into(),
            ));
            continue;
        }
        match parse_statement(line_no, &tokens) {
            Ok(stmt) => {
                if let StatementKind::ModesDecl { .. } = stmt.kind {
                    if let Some(first) = declared {
                        errors.push(error(
                            line_no,
                            stmt.span.column,
                            ParseErrorKind::DuplicateModesDecl,
                            format!("modes already declared at line {}", first.line),
                        ));
                        continue;
                    }
                    declared = Some(stmt.span);
                }
                statements.push(stmt);
            }
            Err(e) => {
                if is_modes && declared.is_none() {
                    // A malformed declaration still counts as the declaration.
                    declared = Some(e.span);
                }
                errors.push(e);
            }
        }
    }
    if declared.is_none() && !missing_reported {
        errors.push(error(
            1,
            1,
            ParseErrorKind::MissingModesDecl,
            "no \"modes N\" declaration".into(),
        ));
    }
    (statements, errors)
}

/// Parses a circuit. Either a circuit or a non-empty error list, never both.
pub fn parse(source: &str) -> Result<Circuit, Vec<ParseError>> {
    let (statements, errors) = parse_statements(source);
    if !errors.is_empty() {
        return Err(errors);
    }
    let mut circuit: Option<Circuit> = None;
    for stmt in statements {
        if let StatementKind::ModesDecl { count } = stmt.kind {
            circuit = Some(Circuit::new(count as usize));
            continue;
        }
        let c = circuit
            .as_mut()
            .expect("declaration precedes gates when no errors were found");
        match stmt.kind {
            StatementKind::ModesDecl { .. } => unreachable!(),
            StatementKind::Had { mode } => c.had(mode.label()),
            StatementKind::Pbs {
                in1,
                in2,
                out1,
                out2,
            } => c.pbs(in1.label(), in2.label(), out1.label(), out2.label()),
            StatementKind::Pc { in1, in2, out } => c.pc(in1.label(), in2.label(), out.label()),
            StatementKind::Cnot { control, target } => c.cnot(control.label(), target.label()),
            StatementKind::Vgate { control, target } => c.vgate(control.label(), target.label()),
        };
    }
    Ok(circuit.expect("a declaration exists when no errors were found"))
}

/// Canonical text: declaration first, one gate per line, single spaces.
pub fn serialize(circuit: &Circuit) -> String {
    let mut out = format!("modes {}\n", circuit.modes());
    for gate in circuit.gates() {
        out.push_str(&gate.to_string());
        out.push('\n');
    }
    out
}
