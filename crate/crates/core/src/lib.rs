//! Intuitionistic strong Löb logic: a terminating sequent calculus with
//! countermodel extraction, a cut-eliminating G3 calculus and Craig
//! interpolation.

pub mod formula;
pub mod fuzz;
pub mod g3;
pub mod g4;
pub mod interpolation;
pub mod order;
pub mod parser;
pub mod semantics;
pub mod sequent;

pub use formula::Formula;
pub use g3::{G3Proof, Profile, RuleG3};
pub use g4::{decide, extract_proof, search, G4Proof, RuleG4, SearchNode};
pub use interpolation::{interpolate, SplitSequent};
pub use order::{box_count, degree, multiset_less, sequent_less, weight, SearchOrderContext};
pub use parser::{parse_formula, parse_sequent, parse_split, ParseError, SourceSpan};
pub use semantics::KripkeModel;
pub use sequent::Sequent;
