//! File formats and exporters.

pub mod dot;
pub mod input;
pub mod olog;

pub use dot::export_dot;
pub use input::{read_complex, read_group, read_rep, read_strata, InputError};
pub use olog::{export_olog, import_olog, OlogError, OlogExport, OlogImport};
