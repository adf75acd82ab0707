//! Form grammar, form files, normal-form validation and the built-in corpus.

mod corpus;
mod document;
mod parse;
mod validate;

pub use corpus::{corpus, sweep_base, Caveat, CorpusEntry, CorpusForm};
pub use document::{parse_document, parse_document_with, parse_field, render_document, Expectations, FormDocument};
pub use parse::{parse_form, ParseError};
pub use validate::{first_partials_rank, validate, NormalForm, Shape, ValidateOptions, ValidationError};
