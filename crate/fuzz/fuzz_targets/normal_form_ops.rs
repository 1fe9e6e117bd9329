#![no_main]
use std::sync::OnceLock;

use freeprod_core::factor::FactorGroup;
use freeprod_core::{FreeProduct, NormalForm};
use libfuzzer_sys::fuzz_target;

fn groups() -> &'static [FreeProduct; 3] {
    static GROUPS: OnceLock<[FreeProduct; 3]> = OnceLock::new();
    GROUPS.get_or_init(|| {
        // S₃ as permutations of {0,1,2}, generated by a 3-cycle and a swap.
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| idx([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        let s3 = FactorGroup::from_table(table, &[1, 3]).unwrap();
        [
            FreeProduct::cyclic_pair(2, 3).unwrap(),
            FreeProduct::new(s3, FactorGroup::integers()),
            FreeProduct::new(
                FactorGroup::free(2).unwrap(),
                FactorGroup::cyclic(4, &[1, 3]).unwrap(),
            ),
        ]
    })
}

/// Each byte picks a generator (low nibble) and an exponent in -4..=3.
fn decode(fp: &FreeProduct, bytes: impl Iterator<Item = u8>) -> NormalForm {
    let gens = fp.generator_letters();
    bytes.fold(NormalForm::identity(), |acc, b| {
        let letter = gens[(b & 0x0f) as usize % gens.len()].clone();
        let g = fp.normal_form(vec![letter]).unwrap();
        fp.multiply(&acc, &fp.power(&g, (b >> 4) as i64 % 8 - 4))
    })
}

fuzz_target!(|data: &[u8]| {
    let Some((&which, rest)) = data.split_first() else {
        return;
    };
    if rest.len() > 96 {
        return;
    }
    let fp = &groups()[which as usize % 3];
    let part = |k: usize| decode(fp, rest.iter().skip(k).step_by(3).copied());
    let (x, y, z) = (part(0), part(1), part(2));
    for g in [&x, &y, &z] {
        fp.validate(g).unwrap();
    }
    assert_eq!(
        fp.multiply(&fp.multiply(&x, &y), &z),
        fp.multiply(&x, &fp.multiply(&y, &z))
    );
    assert!(fp.multiply(&x, &fp.invert(&x)).is_identity());
    assert!(fp.word_length(&fp.multiply(&x, &y)) <= fp.word_length(&x) + fp.word_length(&y));

    let c = fp.cyclically_reduce(&x);
    assert!(fp.is_cyclically_reduced(&c.result));
    assert_eq!(fp.conjugate(&c.conjugator, &x), c.result);

    let conj = fp.conjugate(&y, &x);
    assert!(fp.are_conjugate(&x, &conj));
    assert_eq!(fp.canonical_class_key(&x), fp.canonical_class_key(&conj));
    assert_eq!(
        fp.are_conjugate(&x, &z),
        fp.canonical_class_key(&x) == fp.canonical_class_key(&z)
    );
});
