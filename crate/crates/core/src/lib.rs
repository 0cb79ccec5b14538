pub mod disconnect;
pub mod element;
pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod iso;
pub mod layers;
pub mod orientation;
pub mod retro;
pub mod rewrite;
pub mod samples;
