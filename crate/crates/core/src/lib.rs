//! Rebit (real qubit) states and channels: Bloch-disk geometry, the
//! rotation–diagonal–rotation factorization of channels, a closed-form
//! complete-positivity test and the resulting channel taxonomy.

pub mod bloch;
pub mod canonical;
pub mod channel;
pub mod classify;
pub mod cp;
pub mod error;
pub mod linalg;
pub mod verify;

pub use bloch::{density_from_bloch, BlochVector, DensityMatrix};
pub use canonical::{decompose_channel, reconstruct, CanonicalForm};
pub use channel::{orthogonal_channel, AffineChannel, OrthogonalChannel};
pub use classify::{
    classify, image_ellipse, kraus_rank, sample_cp_channel, Axis, ChannelClass, ImageEllipse,
};
pub use cp::{admissible_pentagon, cp_conditions, is_cp, CpReport};
pub use error::{RebitError, Result};
pub use linalg::{Mat2, Rotation2, Vec2};
