pub mod analyze;
pub mod constants;
pub mod greens;
pub mod monoid;
pub mod tessellate;
