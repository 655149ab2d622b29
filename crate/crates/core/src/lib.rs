//! Finite, dimension-truncated combinatorics of simplicial and bisimplicial
//! sets, groupoid nerves, cellular certificates and strict Segal/Bousfield
//! diagnostics.

pub mod bisset;
pub mod category;
pub mod cellular;
pub mod corpus;
pub mod division;
pub mod error;
pub mod json;
pub mod maps;
pub mod ordinal;
pub mod segal;
pub(crate) mod presheaf;
pub mod shapes;
pub mod sset;

pub use error::{Error, Result};
pub use maps::{enumerate_maps, lifting, LiftingReport, MapEnumeration};
pub use ordinal::OrdinalMap;
pub use sset::{pi0, pushout, EzForm, Pushout, SMap, SSet, Subcomplex};
pub use shapes::{
    conical_degeneracy, conical_face, idelta2_automorphism, igroupoid_nerve, make_shape, standard_simplex,
    ConicalSimplex, ShapeHandle, ShapeKind,
};
pub use category::{core, FinCat, FinGroupoid, Functor};
pub use bisset::{BiMap, BiSSet};
pub use cellular::{
    build_igroupoid_filtration, cone_to_horn_chain, spine_cone_factorization, verify_certificate, CellularCertificate,
    CertificateReport,
};
pub use segal::{
    beta2, bousfield_map, cofree_core, core_bisimplicial, ho, ho_b, segal_map, DiscreteSegalSpace, EdgeShape,
    FractionTable,
};
