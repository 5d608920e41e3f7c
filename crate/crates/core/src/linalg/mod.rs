pub mod exact;
pub mod numeric;
