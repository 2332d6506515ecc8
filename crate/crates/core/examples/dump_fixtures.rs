//! Regenerate the shipped fixture JSON files from the built-in data.
//!
//! Usage: `cargo run -p motzeta --example dump_fixtures [out_dir]`

use motzeta::fixtures;
use motzeta::resolution::ResolutionFamily;

fn main() {
    let out = std::env::args().nth(1).unwrap_or_else(|| "fixtures".into());
    std::fs::create_dir_all(&out).expect("create output directory");
    let dump = |name: &str, fam: &ResolutionFamily| {
        let path = format!("{out}/{name}.json");
        let text = serde_json::to_string_pretty(fam).expect("serialize fixture");
        std::fs::write(&path, text + "\n").expect("write fixture");
        println!("wrote {path}");
    };
    dump("line", &ResolutionFamily::from_datum(fixtures::line()));
    dump("node", &ResolutionFamily::from_datum(fixtures::node()));
    dump("cusp", &ResolutionFamily::from_datum(fixtures::cusp()));
    dump(
        "coords2",
        &ResolutionFamily::from_datum(fixtures::coordinates(2)),
    );
    dump("pair_2_3", &fixtures::pair_product(2, 3));
    dump("pair_2_5", &fixtures::pair_product(2, 5));
    dump("pair_3_4", &fixtures::pair_product(3, 4));
}
