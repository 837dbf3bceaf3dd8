use std::env;

fn main() {
    let crate_dir = env::var("CARGO_MANIFEST_DIR").unwrap();
    let output_file = format!("{crate_dir}/include/geocurve.h");
    println!("cargo:rerun-if-changed=src/lib.rs");

    let mut config = cbindgen::Config::default();
    config.enumeration.prefix_with_name = true;
    config.enumeration.rename_variants = cbindgen::RenameRule::ScreamingSnakeCase;

    cbindgen::Builder::new()
        .with_config(config)
        .with_crate(&crate_dir)
        .with_language(cbindgen::Language::C)
        .with_include_guard("GEOCURVE_H")
        .with_documentation(true)
        .with_tab_width(4)
        .with_parse_deps(false)
        .generate()
        .expect("Unable to generate bindings")
        .write_to_file(output_file);
}
