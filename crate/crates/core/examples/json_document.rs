//! Writing a GKM graph to JSON and reading it back.

use gkm::axial::SpanMode;
use gkm::families::gen_grassmannian;
use gkm::io::{emit_gkm, parse_gkm, GkmDocument};

fn main() {
    let gkm = gen_grassmannian(1);
    let doc = GkmDocument::from_gkm(&gkm).expect("builtin ids follow the X / X~ convention");
    let text = emit_gkm(&doc);
    print!("{text}");

    let back = parse_gkm(&text).unwrap().to_gkm(SpanMode::Integer).unwrap();
    println!("round trip equal: {}", back == gkm);

    let broken = text.replacen("[-1, 0]", "[-1]", 1);
    println!("{}", parse_gkm(&broken).unwrap_err());
}
