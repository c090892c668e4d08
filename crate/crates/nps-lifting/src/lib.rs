//! Meta-reduction constructors: lifting games across solution-embedding
//! reductions and rewriting selection games as interdiction or adjustable
//! hardness gadgets, with exhaustive winner-preservation verification.

mod gadget;
mod lift;
mod pair;

pub use gadget::{
    gadget_selection_to_adjustable, gadget_selection_to_interdiction, GadgetError, GadgetOutput,
};
pub use lift::{lift_adjustable, lift_interdiction, lift_selection, LiftError};
pub use pair::{decode_pair, encode_pair, verify_lift, LiftReport, LiftedGamePair, MimicStep};
