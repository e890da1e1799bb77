pub mod algebra;
pub mod error;
pub mod formulas;
pub mod oracle;
pub mod polymat;
pub mod simclass;
pub mod verify;

pub use error::{Error, Result};
