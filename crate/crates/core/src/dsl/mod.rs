//! Text format for presentations, Hopf data, braidings and check requests.
//!
//! Operator precedence, lowest first: `+ -`, `* /`, `|` (tensor), `.`
//! (algebra product), unary minus, `^`. Negative exponents apply to scalars.

mod document;
mod expr;
mod lexer;

pub use document::{
    parse_document, parse_element, parse_scalar, parse_tensor, print_document, CheckDecl, Document, ModelDecl,
};
pub use lexer::{lex, Pos, Tok};
