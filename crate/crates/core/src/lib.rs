//! Grassmann and Schubert codes over small finite fields, orthogonal
//! parity-check families built from lines in Schubert varieties, and a
//! one-step majority-logic decoder.

pub mod code;
pub mod count;
pub mod decoder;
pub mod field;
pub mod grassmann;
pub mod io;
pub mod linalg;
pub mod ortho;
pub mod schubert;
pub mod verify;
