//! Classical diagram categories inside PBRs: binary relations and partitions.

mod partition;
mod relation;

pub use partition::{
    compose_deformed_partition, partition_compose, partition_defect, psi, DeformedPartition, Partition,
};
pub use relation::{brel_compose, is_in_subcategory_e_hat, is_phi1_image, phi1, phi2, BinaryRelation, RelationKind};
