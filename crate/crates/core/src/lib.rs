//! Sylvester-type Hadamard matrix constructions over GF(2).
//!
//! Matrices are kept in `{0,1}` form (`0` for `+1`, `1` for `-1`). The crate
//! provides the Sylvester product, the generalized Sylvester construction of
//! No and Song, and a two-pool construction that mixes `m` matrices of order
//! `k` with `k` matrices of order `m`. For each output it extracts the binary
//! Hadamard code and computes its rank and kernel dimension, which are
//! invariant under Hadamard equivalence.
//!
//! ```
//! use hadamard_core::{modified, signature, sylvester_power, ModifiedInputs};
//!
//! let h2 = sylvester_power(1).unwrap();
//! let inputs = ModifiedInputs::new(vec![h2.clone(), h2.clone()], vec![h2.clone(), h2]).unwrap();
//! let h4 = modified(&inputs);
//! assert_eq!(signature(&h4).unwrap().to_string(), "order=4 rank=3 kernel=3 mindist=2");
//! ```

pub mod constructions;
pub mod error;
pub mod explorer;
pub mod gf2;
pub mod hadamard;
pub mod hadcode;
pub mod io;
pub mod par;

pub use constructions::{modified, no_song, sylvester_product, ModifiedInputs};
pub use error::{Error, Result};
pub use explorer::{
    build_pool, enumerate_assignments, explore, Assignment, AssignmentPlan, Construction,
    ExplorationReport, ExploreOptions, Family, PoolSpec, SignatureCount, Strategy,
};
pub use gf2::{add_constant, gf2_rank, hamming_distance, xor, BinaryMatrix, BitVector};
pub use hadamard::{
    apply_transform, find_violation, is_hadamard, is_valid_order, normalize, paley_i,
    sylvester_power, EquivalenceTransform, HadamardMatrix, Violation,
};
pub use hadcode::{code_from_matrix, signature, BinaryCode, HadamardCode, InvariantSignature};
pub use io::{read_matrix, write_matrix, Alphabet};
pub use par::Execution;
