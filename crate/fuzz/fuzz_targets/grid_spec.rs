#![no_main]

use degree_forge::grid::{Grid, MAX_POINTS};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(spec) = std::str::from_utf8(data) else { return };
    if let Ok(g) = Grid::parse(spec) {
        assert!(g.len() <= MAX_POINTS);
    }
});
