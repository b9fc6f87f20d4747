#![no_main]

use abelian::decompose::DecompositionRecord;
use abelian::groups::{AbelianGroup, ClassGroup, CyclicProduct, ZnStar};
use abelian::verify_decomposition;
use libfuzzer_sys::fuzz_target;
use std::sync::OnceLock;

fn groups() -> &'static [Box<dyn AbelianGroup>] {
    static GROUPS: OnceLock<Vec<Box<dyn AbelianGroup>>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        vec![
            Box::new(ZnStar::new(15u32).unwrap()),
            Box::new(ZnStar::new(1001u32).unwrap()),
            Box::new(ClassGroup::new(-23).unwrap()),
            Box::new(CyclicProduct::new(&[6, 10, 15]).unwrap()),
        ]
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(record) = DecompositionRecord::from_json(text) else { return };
    let reparsed = DecompositionRecord::from_json(&record.to_json()).unwrap();
    assert_eq!(reparsed, record);
    for g in groups() {
        if let Ok(dec) = record.to_decomposition(g.as_ref()) {
            let _ = verify_decomposition(g.as_ref(), &dec);
        }
    }
});
