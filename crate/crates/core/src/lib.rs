//! Finite lattices, closure and interior systems, Galois connections and
//! sup-preserving aggregation functions.

pub mod aggregation;
pub mod closure;
pub mod decomposition;
pub mod error;
pub mod fca;
pub mod fixtures;
pub mod galois;
pub mod io;
pub mod lattice;
pub mod map;
pub mod random;

pub use aggregation::{build, AggSlot, AggTable, SupAggSpec, SupAggregation};
pub use closure::{ClosureSystem, InteriorSystem, System, SystemIso};
pub use decomposition::{
    birkhoff_subdirect, product_compose, product_decompose, subdirect_decompose_aggregation, MapMatrix,
    SubdirectEmbedding, SublatticeView,
};
pub use error::{Error, Result};
pub use fca::{concepts, crisp_concepts, load_context, ManyValuedContext, ValueMapFamily};
pub use galois::{lower_adjoint, upper_adjoint, GaloisPair};
pub use lattice::{ElementRef, FiniteLattice, ProductCodec};
pub use map::LatticeMap;
