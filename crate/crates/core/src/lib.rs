//! Finite quantum logics built by pasting contexts together.
//!
//! A [`Logic`] is a set of atoms (elementary propositions, optionally
//! realized by rays with exact ℚ(√2) coordinates) grouped into contexts of
//! mutually orthogonal atoms. The crate checks realizations exactly,
//! enumerates the noncontextual two-valued states, derives the implication
//! rules they obey, detects parity and collapse obstructions, draws
//! Greechie/Tkadlec diagrams and compares the classical rules against
//! predictions for a maximally entangled pair.
//!
//! ```
//! use qlogic::{analysis, corpus, parse_logic};
//!
//! let logic = parse_logic(corpus::CABELLO18).unwrap();
//! assert!(analysis::enumerate_states(&logic).empty);
//! assert!(analysis::parity_obstruction(&logic).is_some());
//! ```

pub mod analysis;
pub mod cli;
pub mod corpus;
pub mod diagrams;
pub mod model;
pub mod parser;
pub mod quad;
pub mod quantum;

pub use model::{inner_product, rays_collinear, Atom, Context, Logic, ModelError, Ray};
pub use parser::{parse_logic, serialize_logic, ParseError, ParseErrorKind, Position};
pub use quad::Quad;
