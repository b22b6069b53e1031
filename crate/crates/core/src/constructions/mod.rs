//! Builders for the standard example families.

pub mod face;
pub mod groupoid;
pub mod instances;
pub mod quiver;

pub use face::{face_algebra, face_algebra_quotient, FaceAlgebra, FaceMode, FaceQuotient, Identification};
pub use groupoid::{groupoid_algebra, groupoid_closed_form_report, Group, Groupoid, Morphism};
pub use instances::{kq_comodule, kq_comodule_instances, matrix_frobenius_example, two_cycle, unit_object_instance, MatrixFrobenius};
pub use quiver::{path_algebra_wba, Arrow, Path, Quiver};
