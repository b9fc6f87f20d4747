#![no_main]

use abelian::GroupSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = text.parse::<GroupSpec>() else { return };
    let printed = spec.to_string();
    assert_eq!(printed.parse::<GroupSpec>().unwrap(), spec);
});
