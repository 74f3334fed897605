pub mod algebra;
pub mod cyclotomic;
pub mod number_field;
pub mod ideals;
pub mod orbits;
pub mod verify;
pub mod certify;
