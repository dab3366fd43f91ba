use std::env;
use std::fs;
use std::path::PathBuf;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    let header_path = crate_dir.join("include").join("msasb.h");

    let bindings = cbindgen::generate(&crate_dir).expect("cbindgen failed");
    let mut header = Vec::new();
    bindings.write(&mut header);

    // write only on change so cargo does not rebuild in a loop
    let current = fs::read(&header_path).unwrap_or_default();
    if current != header {
        fs::create_dir_all(header_path.parent().unwrap()).unwrap();
        fs::write(&header_path, header).expect("could not write header");
    }
}
