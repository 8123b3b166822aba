pub mod sld;
pub mod report;
