pub mod artifact;
pub mod block;
pub mod corpus;
pub mod cube;
mod error;
pub mod fm;
pub mod group;
pub mod serial;
pub mod space;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use group::{ElementId, Group, GroupTable};
