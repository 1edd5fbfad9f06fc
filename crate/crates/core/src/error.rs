use thiserror::Error;

use crate::ring::{ElementClass, Quat};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus exponent {n} outside supported range 1..={max}")]
    ModulusOutOfRange { n: u32, max: u32 },

    #[error("modulus cap exceeded: n = {n} is above the cap of {cap} for {what}")]
    CapExceeded { what: &'static str, n: u32, cap: u32 },

    #[error("modulus mismatch: 2^{left} vs 2^{right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("residue {value} is not canonical modulo 2^{n}")]
    NonCanonical { value: i64, n: u32 },

    #[error("cannot parse quaternion from {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("the zero quaternion has no normalized form")]
    ZeroQuaternion,

    #[error("{quat} is not a vertex (classified as {class})")]
    NotAVertex { quat: Quat, class: ElementClass },

    #[error("adjacency is only defined between distinct vertices, got {0} twice")]
    EqualVertices(Quat),

    #[error("graph is disconnected: no path from vertex {from} to vertex {to}")]
    Disconnected { from: Quat, to: Quat },

    #[error("snapshot disagrees with the product oracle on ({a}, {b})")]
    AuditMismatch { a: Quat, b: Quat },

    #[error("cycle validation failed: {0}")]
    InvalidCycle(String),

    #[error("no Hamiltonian path found through {0} vertices")]
    PathSearchFailed(usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
