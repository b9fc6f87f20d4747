#![no_main]

use abelian::intlinalg::{snf, IntMatrix};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(m) = text.parse::<IntMatrix>() else { return };
    let printed = m.to_string();
    assert_eq!(printed.parse::<IntMatrix>().unwrap(), m);
    // keep elimination cheap enough for the fuzzer
    if m.rows() <= 8 && m.cols() <= 8 {
        assert!(snf(&m).certifies(&m));
    }
});
