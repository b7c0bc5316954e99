#![no_main]

use degree_forge::format::{parse_family, write_family};
use libfuzzer_sys::fuzz_target;

// Anything that parses must print and parse back to the same family.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(f) = parse_family(text) else { return };
    let printed = write_family(&f);
    let g = parse_family(&printed).expect("printed family parses");
    assert_eq!(f, g);
    assert_eq!(write_family(&g), printed);
});
