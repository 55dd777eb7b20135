pub mod constants;
pub mod figures;
pub mod functional;
pub mod verify;
