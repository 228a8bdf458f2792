//! Finitely presented groups.

pub mod abelian;
pub mod families;
pub mod luttinger;
pub mod presentation;
pub mod snf;
pub mod text;
pub mod tietze;
pub mod van_kampen;
pub mod word;

pub use abelian::{abelianize, abelianize_with_certificate, AbelianGroupDescription, Abelianization};
pub use families::{make_y_n_pq_presentation, make_y_n_presentation, y_n_surgery_data, SurgeryTorus};
pub use luttinger::{luttinger_quotient, torus_surgery_quotient};
pub use presentation::Presentation;
pub use snf::{smith_normal_form, verify_certificate, BigMatrix, Matrix, SmithForm};
pub use text::{parse_presentation, parse_word};
pub use tietze::{tietze_simplify, TietzeMove, TietzeStep, Transcript};
pub use van_kampen::{van_kampen_sum, DeclaredFact, FactKind, Gluing, Pi1Datum};
pub use word::{free_reduce, GenId, Word};
