pub mod algebra;
pub mod khovanov;
pub mod specseq;
pub mod bordered;
pub mod paperdata;
pub mod cli;
