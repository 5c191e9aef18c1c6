pub mod cards;
pub mod compiler;
pub mod engine;
pub mod harness;
pub mod tm;
