//! Prints element and conjugacy-class growth for a few small free products.

use freeprod_core::growth::{count_conjugacy_classes, growth_rate_estimate, EnumerationConfig};
use freeprod_core::FreeProduct;

fn main() {
    let cases = [
        ("Z2*Z2", FreeProduct::cyclic_pair(2, 2).unwrap()),
        ("Z2*Z3", FreeProduct::cyclic_pair(2, 3).unwrap()),
        ("Z*Z", FreeProduct::free_rank_two()),
    ];
    for (name, fp) in cases {
        let max_k = if name == "Z*Z" { 8 } else { 12 };
        let table = count_conjugacy_classes(&fp, &EnumerationConfig::new(max_k)).unwrap();
        println!("{name}");
        print!("{}", table.to_csv());
        println!("{:?}\n", growth_rate_estimate(&table).unwrap());
    }
}
