pub mod bounds;
pub mod engine;
pub mod error;
pub mod exact;
pub mod gegenbauer;
pub mod mustar;
pub mod oracle;
pub mod quad;
pub mod trig;
pub mod verify;

pub use error::{Error, Result};
