//! Difference schemes for the Fokker-Planck angular diffusion operator
//! `d/dmu [(1 - mu^2) df/dmu]` on Gauss-Legendre and uniform meshes, with the
//! tools to measure how fast they converge.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod mesh;
pub mod quadrature;
pub mod report;
pub mod schemes;
pub mod verify;

pub use error::{Error, Result};
pub use mesh::{
    cell_geometry, haldy_ligou_mesh, lee_mesh, shifted_uniform_mesh, uniform_mesh, CellGeometry,
    Mesh, MeshFamily,
};
pub use quadrature::{gl_rule, hr_rule, legendre_eval, rule, Mode, QuadratureRule};
pub use schemes::{
    assemble_type1, assemble_type2, morel_alpha, rk4_alpha, AlphaCoefficients, AlphaSource,
    Diffusivity, FnDiffusivity, FokkerPlanck, TridiagonalOperator,
};
