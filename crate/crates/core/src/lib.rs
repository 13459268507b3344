pub mod baseline;
pub mod channel;
pub mod code;
pub mod cost;
pub mod error;
pub mod kernels;
pub mod leaf;
pub mod perm;
pub mod rng;
pub mod sim;
pub mod sprld;
