//! Regenerates the bundled group-representation catalog under `data/`.

use std::path::Path;

use hecke_core::gelfand::{builtin_catalog, CATALOG_FILES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    std::fs::create_dir_all(&dir)?;
    for (entry, file) in builtin_catalog().iter().zip(CATALOG_FILES) {
        let path = dir.join(file);
        std::fs::write(&path, serde_json::to_string_pretty(entry)? + "\n")?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
