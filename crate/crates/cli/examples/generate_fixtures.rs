//! Regenerates the bundled fixture files under `fixtures/` at the repo
//! root. Run from anywhere in the workspace:
//!
//! ```text
//! cargo run -p arank-cli --example generate_fixtures
//! ```

use std::path::{Path, PathBuf};

use arank_cli::identity_io::{save_identities, LoadedIdentity};
use arank_core::speedup::{
    cw2_prime_decomposition, cw2_prime_scalars, cw_border_decomposition, cw_minrank_scalars,
};
use arank_core::spectrum::{schoenhage_identity, strassen_identity};

fn fixtures_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) {
    let json = serde_json::to_string_pretty(value).expect("serializable");
    std::fs::write(path, json + "\n").unwrap_or_else(|e| panic!("write {path:?}: {e}"));
    println!("wrote {}", path.display());
}

fn main() {
    let root = fixtures_root();
    std::fs::create_dir_all(root.join("decompositions")).expect("mkdir");
    std::fs::create_dir_all(root.join("weights")).expect("mkdir");

    save_identities(
        &root.join("schoenhage.json"),
        &[LoadedIdentity {
            identity: schoenhage_identity(),
            assert_3tau_below: Some("2.516094".into()),
        }],
    )
    .expect("write schoenhage.json");
    println!("wrote {}", root.join("schoenhage.json").display());

    save_identities(
        &root.join("strassen7.json"),
        &[LoadedIdentity {
            identity: strassen_identity(),
            assert_3tau_below: Some("2.81".into()),
        }],
    )
    .expect("write strassen7.json");
    println!("wrote {}", root.join("strassen7.json").display());

    for q in 2..=5usize {
        let dec = cw_border_decomposition(q).expect("q >= 2");
        assert!(dec.verify().expect("verify").pass);
        write_json(&root.join(format!("decompositions/cw_q{q}.json")), &dec);
        let sc = cw_minrank_scalars(q).expect("q >= 2");
        write_json(&root.join(format!("weights/minrank_q{q}.json")), &sc);
    }

    let prime = cw2_prime_decomposition();
    assert!(prime.verify().expect("verify").pass);
    write_json(&root.join("decompositions/cw2_prime.json"), &prime);
    write_json(&root.join("weights/cw2_prime.json"), &cw2_prime_scalars());
}
