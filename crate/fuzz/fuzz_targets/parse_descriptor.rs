#![no_main]
use freeprod_core::schema::DescriptorFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(d) = DescriptorFile::from_slice(data) else {
        return;
    };
    if let Ok(c) = d.classify() {
        assert_eq!(c.trace.last(), Some(&c.rule));
    }
});
