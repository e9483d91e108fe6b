//! Linear-space representations for special group classes: cyclic groups,
//! semidirect products (including Z-groups), and simple groups.

mod composite;
mod cyclic;
mod fbmap;
mod simple;

pub use composite::{CompositeRep, FactorRep};
pub use cyclic::CyclicRep;
pub use fbmap::ForwardBackwardMap;
pub use simple::{PathRep, SimpleRep, DEFAULT_MAX_GENERATORS};
