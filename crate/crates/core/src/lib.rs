//! Symbolic and numeric workbench for 2-nondegenerate para-CR structures
//! defined by a pair of PDEs `z_y = F(x,y,z,z_x)`, `z_xxx = H(x,y,z,z_x,z_xx)`.

pub mod cartan;
pub mod expr;
pub mod exterior;
pub mod models;
pub mod paracr;
pub mod suite;
pub mod symmetry;
