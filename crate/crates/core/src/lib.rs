//! Quantum discord of qubit-qudit (`2 x d`) states.
//!
//! Two measures are provided:
//!
//! * entropic discord, with projective measurements on the qubit, searched
//!   over the measurement sphere ([`entropic`]);
//! * geometric discord, the squared Hilbert-Schmidt distance to the nearest
//!   classical-quantum state, in closed form ([`geometric`]).
//!
//! States whose four `d x d` blocks each have X sparsity ("extended X")
//! decompose into at most 4x4 blocks, and their measurement-conditional
//! states are X matrices with 2x2 closed-form spectra ([`xblocks`]).
//!
//! ```
//! use xdiscord::{entropic_discord, geometric_discord, named, OptMode};
//!
//! let bell = named::bell(1).unwrap();
//! let e = entropic_discord(&bell, OptMode::Full).unwrap();
//! let g = geometric_discord(&bell).unwrap();
//! assert!((e.discord - 1.0).abs() < 1e-9);
//! assert!((g.value - 0.5).abs() < 1e-12);
//! ```

pub mod cli;
pub mod entropic;
pub mod error;
pub mod geometric;
pub mod matcore;
pub mod optim;
pub mod states;
pub mod xblocks;

pub use entropic::{entropic_discord, DiscordResult, MeasurementAngles, OptMode};
pub use error::{Error, Result};
pub use geometric::{geometric_discord, GeometricDiscord};
pub use matcore::ComplexMatrix;
pub use states::{named, DensityMatrix};
