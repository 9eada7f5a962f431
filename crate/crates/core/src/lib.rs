// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod distribution;
pub mod families;
pub mod numerics;
pub mod polylog;
pub mod ppcc;
