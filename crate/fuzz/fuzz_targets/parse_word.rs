#![no_main]
use std::sync::OnceLock;

use freeprod_core::factor::FactorGroup;
use freeprod_core::FreeProduct;
use libfuzzer_sys::fuzz_target;

fn groups() -> &'static [FreeProduct; 2] {
    static GROUPS: OnceLock<[FreeProduct; 2]> = OnceLock::new();
    GROUPS.get_or_init(|| {
        [
            FreeProduct::cyclic_pair(2, 3).unwrap(),
            FreeProduct::new(
                FactorGroup::integers(),
                FactorGroup::cyclic_standard(5).unwrap(),
            ),
        ]
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for fp in groups() {
        let Ok(g) = fp.parse_word(text) else {
            continue;
        };
        fp.validate(&g).expect("parser output is a normal form");
        let rendered = fp.render(&g);
        assert_eq!(fp.parse_word(&rendered).as_ref(), Ok(&g), "{rendered}");
        assert!(fp.multiply(&g, &fp.invert(&g)).is_identity());
        let c = fp.cyclically_reduce(&g);
        assert!(fp.is_cyclically_reduced(&c.result));
        assert_eq!(fp.conjugate(&fp.invert(&c.conjugator), &c.result), g);
    }
});
