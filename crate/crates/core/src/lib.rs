//! Schubert problems on Grassmannians and their Galois groups.
//!
//! * [`partitions`]: partitions, contexts, problems, reducedness.
//! * [`counting`]: solution counts via Littlewood–Richardson products and
//!   two-row Kostka numbers.
//! * [`reduction`]: the moves turning any problem into a reduced one.
//! * [`transitivity`]: excess components and double-transitivity verdicts.
//! * [`vakil2n`]: at-least-alternating certificates on `Gr(2, n)`.
//! * [`fieldlinalg`]: exact linear algebra over finite fields.
//! * [`gr48`]: enumeration on `Gr(4, 8)` and Frobenius sampling for the
//!   imprimitive families.

mod bigdec;
pub mod counting;
pub mod fieldlinalg;
pub mod gr48;
pub mod partitions;
pub mod reduction;
pub mod transitivity;
pub mod vakil2n;
