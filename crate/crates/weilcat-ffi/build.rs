use std::env;
use std::path::PathBuf;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").expect("cargo sets manifest dir"));
    let out_dir = PathBuf::from(env::var("OUT_DIR").expect("cargo sets OUT_DIR"));
    let generated = out_dir.join("weilcat.h");

    let config = cbindgen::Config::from_file(crate_dir.join("cbindgen.toml"))
        .expect("cbindgen.toml parses");
    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("header generation succeeds")
        .write_to_file(&generated);

    // Keep the committed header current; a read-only checkout still builds
    // because the canonical copy lives in OUT_DIR.
    let committed = crate_dir.join("include").join("weilcat.h");
    let fresh = std::fs::read(&generated).expect("generated header readable");
    if std::fs::read(&committed).ok().as_deref() != Some(fresh.as_slice()) {
        let _ = std::fs::create_dir_all(committed.parent().expect("include dir has a parent"));
        let _ = std::fs::write(&committed, fresh);
    }
}
