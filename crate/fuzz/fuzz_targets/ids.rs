#![no_main]

use degree_forge::bounds::{BoundId, InequalityId};
use degree_forge::constructions::ConstructionKind;
use degree_forge::search::{ProbeId, Restrict};
use degree_forge::transforms::SaturationMode;
use libfuzzer_sys::fuzz_target;

fn round_trip<T: std::str::FromStr + std::fmt::Display + PartialEq + std::fmt::Debug>(s: &str) {
    if let Ok(v) = s.parse::<T>() {
        assert_eq!(v.to_string().parse::<T>().ok(), Some(v));
    }
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    round_trip::<BoundId>(s);
    round_trip::<InequalityId>(s);
    round_trip::<ConstructionKind>(s);
    round_trip::<ProbeId>(s);
    round_trip::<SaturationMode>(s);
    let _ = s.parse::<Restrict>();
});
