//! Graph polynomials, Dodgson minors and the local data at 3- and 4-valent
//! vertices.

mod bareiss;
mod dodgson;
mod trees;

pub use bareiss::{determinant, BareissEntry};
pub use dodgson::{
    dodgson, graph_polynomial, DodgsonBackend, DodgsonSpec, ExpandedMatrix, GraphPolyBackend,
};
pub use trees::{forest_polynomial, incidence_minor, spanning_forests, spanning_trees};
mod local;
pub use local::{
    sign_between, surgery, textbook_b_sign, textbook_c_sign, FourValentData, Surgery,
    ThreeValentData, B_SIGNS, C_SIGNS, E8888_SIGNS,
};
