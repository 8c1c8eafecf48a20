//! Finite models of ordered-fiber algebras, spans of bisimplicial sets,
//! Waldhausen S-constructions and Hall numbers.

pub mod hallnum;
pub mod laxhall;
pub mod ordalg;
pub mod protoexact;
pub mod segcheck;
pub mod simpcore;
pub mod spanengine;
pub mod twistposet;
