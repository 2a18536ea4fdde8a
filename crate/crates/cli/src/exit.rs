pub const OK: u8 = 0;
pub const USAGE: u8 = 2;
pub const RESOURCE: u8 = 3;
pub const IO: u8 = 4;
pub const INVALID_INPUT: u8 = 5;
