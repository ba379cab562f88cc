//! Drives the batch front-end from code: writes a config, runs it twice and
//! shows the second run is served from the cache.
//!
//! cargo run --example cli_run

use torus_minimal::cli::main_with_args;

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("torus-minimal-cli-example");
    std::fs::create_dir_all(&dir)?;
    let cfg = dir.join("cat.cfg");
    std::fs::write(
        &cfg,
        "command=simulate\nfamily=linearToral\nmatrix=2,1,1,1\nn=128\nnonwandering=true\n",
    )?;
    let out = dir.join("out");
    for _ in 0..2 {
        let code = main_with_args([
            "torus-minimal",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        println!("exit {code}");
    }
    println!("{}", std::fs::read_to_string(out.join("manifest.json"))?);
    Ok(())
}
