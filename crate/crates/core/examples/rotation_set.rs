//! Rotation-set estimates: a translation collapses to a point, the shear
//! `x += sin²(πy)/2` spreads over the segment `[0, 1/2] × {0}`.
//!
//! cargo run --release --example rotation_set

use torus_minimal::dynamics::rotation::polygon_hausdorff;
use torus_minimal::dynamics::{rotation_set_estimate, TorusMapSpec};

fn main() -> torus_minimal::Result<()> {
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let t = rotation_set_estimate(&TorusMapSpec::translation(golden, 2f64.sqrt() - 1.0), 1024, 10_000)?;
    println!("translation: hull {:?}, diameter {:.2e}", t.hull, t.diameter);

    let s = rotation_set_estimate(&TorusMapSpec::skew_shear(0.0, 0.0, 0.5), 1024, 10_000)?;
    println!(
        "shear: hull {:?}, area {:.2e}, distance to [0,1/2]x{{0}} {:.2e}",
        s.hull,
        s.area,
        polygon_hausdorff(&s.hull, &[[0.0, 0.0], [0.5, 0.0]])
    );
    Ok(())
}
