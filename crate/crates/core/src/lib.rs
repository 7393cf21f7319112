pub mod branch;
pub mod cheb;
pub mod cli;
pub mod density;
pub mod error;
pub mod factor;
pub mod fixed;
pub mod poly;
pub mod quad;
pub mod roots;
pub mod salem;
pub mod sim;
pub mod special;
