//! Hyperbolic toral automorphisms ("cat maps") and their exact quantization:
//! the discrete-time chaotic model where quantum expectation values and
//! classical transport can be compared in integer arithmetic.

mod line;
mod map;
mod quantum;
mod trig;

pub use line::{line_frequency, line_transport, line_transport_trig, LineDensity, LineFrequency, TorusLine};
pub use map::{CatMap, Rational};
pub use quantum::{factorize, quantum_character_ev, CharacterEv, Generator, QuantizedCatMap, TorusState};
pub use trig::TrigPolynomial;
