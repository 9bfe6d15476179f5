//! Numerical library for the complex continuations of quantum 6j symbols
//! (levels 0, 1, 3), the Clebsch-Gordan intertwiners of principal unitary
//! representations of the quantum Lorentz group, and the q-Racah /
//! Askey-Wilson polynomial layer underneath them, together with a
//! verification harness that turns every identity among these objects into a
//! numerical residual check.

pub mod error;
pub mod harness;
pub mod scalar;

pub mod qhyper;
pub mod lorentz;
pub mod qnum;
pub mod qpolys;
pub mod sixj;
pub mod su2q;
pub mod verify;

pub use error::{QError, QResult};
pub use qnum::{HalfInt, PrecisionMode, QContext};
