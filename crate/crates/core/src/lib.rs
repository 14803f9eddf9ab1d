//! Büchi automata language inclusion by antichain fixpoints over families of
//! right quasiorders.
//!
//! ```
//! use forq::engine::{decide_inclusion, EngineOptions, Verdict};
//! use forq::io::parse_pair;
//!
//! let a = "p\na,p->p\nb,p->p\np\n";
//! let b = "q\na,q->q\nb,q->r\nb,r->r\nr\n";
//! let (a, b) = parse_pair(a, b).unwrap();
//! let r = decide_inclusion(&a, &b, &EngineOptions::default()).unwrap();
//! assert_eq!(r.verdict, Verdict::NotIncluded);
//! ```

pub mod ba;
pub mod bench;
pub mod engine;
mod error;
pub mod forq;
pub mod io;
pub mod membership;
pub mod testkit;

pub use ba::{Alphabet, Buchi, State, StateSet, Symbol, Word};
pub use engine::{decide_inclusion, EngineOptions, InclusionResult, Lasso, Verdict};
pub use error::{Error, Result};
