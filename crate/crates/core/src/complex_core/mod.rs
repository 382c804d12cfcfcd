//! Bounded complexes of finitely generated free abelian groups, chain maps,
//! the degreewise split exact structure and the tensor action.

mod complex;
mod decompose;
mod exact;
mod map;
mod tensor;

pub use complex::{make_complex, shift, standard_complex, Complex, StandardKind};
pub use decompose::{Decomposition, Piece};
pub use exact::{
    biproduct, cone_inclusion, cone_object, conjugate, copair, pair, pullback_along_deflation, pushout_along_inflation,
    split_epi_witness, split_mono_witness, unit_conflation, Biproduct, Conflation, Pullback, Pushout,
};
pub use map::{ChainMap, GradedMap};
pub use tensor::{associator, tensor, tensor_left, tensor_maps, Block, TensorLayout};
