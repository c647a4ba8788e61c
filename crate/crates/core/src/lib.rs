//! Exact low-degree cohomology of finite groups and Lie rings.

pub mod abelian;
pub mod catalog;
pub mod fp;
pub mod cli;
pub mod cohomology;
pub mod gmodule;
pub mod groups;
pub mod limits;
pub mod liering;
pub mod theorems;
