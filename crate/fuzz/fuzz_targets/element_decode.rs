#![no_main]

use abelian::groups::{AbelianGroup, ClassGroup, CyclicProduct, ZnStar};
use libfuzzer_sys::fuzz_target;
use std::sync::OnceLock;

fn groups() -> &'static [Box<dyn AbelianGroup>] {
    static GROUPS: OnceLock<Vec<Box<dyn AbelianGroup>>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        vec![
            Box::new(ZnStar::new(1001u32).unwrap()),
            Box::new(ZnStar::new(1u64 << 61).unwrap()),
            Box::new(ClassGroup::new(-3299).unwrap()),
            Box::new(CyclicProduct::new(&[6, 10, 15]).unwrap()),
        ]
    })
}

// First byte picks the group. The rest is tried both as a textual element
// and as a raw encoding.
fuzz_target!(|data: &[u8]| {
    let Some((&which, rest)) = data.split_first() else { return };
    let g = groups()[usize::from(which) % groups().len()].as_ref();
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok(a) = g.parse_element(text) {
            assert!(g.is_element(a.as_bytes()));
            assert_eq!(g.parse_element(&g.display(&a)).unwrap(), a);
            assert_eq!(g.op(&a, &g.inverse(&a)), g.identity());
        }
    }
    if let Ok(a) = g.element_from_bytes(rest) {
        assert_eq!(a.as_bytes(), rest);
        assert_eq!(g.parse_element(&g.display(&a)).unwrap(), a);
        assert_eq!(g.op(&a, &g.identity()), a);
    }
});
