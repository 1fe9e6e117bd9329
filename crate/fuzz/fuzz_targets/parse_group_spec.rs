#![no_main]
use freeprod_core::schema::GroupSpecFile;
use freeprod_core::NormalForm;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(file) = GroupSpecFile::from_slice(data) else {
        return;
    };
    let Ok(fp) = file.build() else {
        return;
    };
    // A valid spec must give a usable group: every generator renders to a
    // word that parses back to itself and has an inverse.
    for letter in fp.generator_letters() {
        let g = fp.normal_form(vec![letter]).expect("generator is a letter");
        let text = fp.render(&g);
        if let Ok(back) = fp.parse_word(&text) {
            assert_eq!(back, g, "{text}");
        }
        let inv = fp.invert(&g);
        assert!(fp.multiply(&g, &inv).is_identity());
        assert_eq!(fp.cyclically_reduce(&g).result, g);
    }
    let _ = fp.render(&NormalForm::identity());
});
