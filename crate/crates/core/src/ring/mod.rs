//! Exact arithmetic over the coefficient field Q(t1, t2, u1..ur).

mod elem;
mod mono;
mod parse;

pub use elem::{Assignment, RingElem, RingError};
pub use mono::{var_name, MPoly, Mono, VAR_T1, VAR_T2};
pub use parse::{parse_elem, ParseError};

/// Number of ring variables for a given rank: t1, t2, u1..ur.
pub fn nvars_for_rank(rank: usize) -> usize {
    rank + 2
}

/// The variable index of u_k (1-based k).
pub fn var_u(k: usize) -> usize {
    debug_assert!(k >= 1);
    1 + k
}
