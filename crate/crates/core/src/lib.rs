//! Prime splitting via Newton polygons and common index divisors of sextic
//! number fields.

pub mod engstrom;
pub mod fq;
pub mod ore;
pub mod parse;
pub mod polygon;
pub mod quadrinomial;
pub mod report;
pub mod scan;
pub mod verify;
pub mod zpoly;
