//! A small text language for trace expressions and the bundled corpus of
//! trace relations.
//!
//! Grammar, whitespace-insensitive:
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*'? factor)*
//! factor  := primary ('^' int)*
//! primary := 'tr' '(' nc ')' | '(' expr ')' | rational
//! nc      := ['+'|'-'] ncterm (('+'|'-') ncterm)*
//! ncterm  := [rational '*'?] ncfactor ('*'? ncfactor)*
//! ncfactor:= ncatom ('^' int)*
//! ncatom  := 'x' | 'y' | '[' nc ',' nc ']' | '(' nc ')'
//! ```
//!
//! In a sum, a leading rational of a term is its coefficient. A single
//! unsigned term is read as a plain product.

mod ast;
mod corpus;
mod parser;
mod pure;

pub use ast::{Expr, Nc};
pub use corpus::{
    load_corpus, load_corpus_from, parse_corpus, Corpus, RelationGroup, RelationRecord, VDef,
    VTerm, WTerm, CORPUS_ENV,
};
pub use parser::{parse, parse_nc};
pub use pure::PurePoly;
