//! Complexes built from a sublattice: the full torus on the projective plane
//! and the diagonal in the product of two lines.
//!
//! ```bash
//! cargo run --example hhl_resolution
//! ```

use toric_cox::hhl::{hhl_complex, hhl_invariance, phi_zero, HHLComplex};
use toric_cox::linalg::IntMatrix;
use toric_cox::report::{hhl_stabilizer, Context};

fn show(ctx: &Context, c: &HHLComplex) -> Result<(), Box<dyn std::error::Error>> {
    for j in (0..c.terms.len()).rev() {
        let terms: Vec<String> = c.term_classes(j).iter().map(|x| format!("O({})", ctx.class_name(x))).collect();
        println!("  degree {j}: {}", terms.join(" + "));
    }
    for j in 1..c.terms.len() {
        for row in &c.differential[j] {
            println!("    d{j} row [{}]", row.iter().map(|p| p.render()).collect::<Vec<_>>().join(", "));
        }
    }
    let stab = hhl_stabilizer(ctx, c);
    let inv = hhl_invariance(c, &ctx.group, &stab, &ctx.cg)?;
    println!("  d^2 = 0: {}, invariant under {} elements: {}", c.is_chain_complex(), stab.len(), inv.passed());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p2 = Context::builtin("P2")?;
    println!("P2, φ = 0");
    show(&p2, &hhl_complex(&phi_zero(2), &p2.rays, &p2.cg)?)?;
    println!("P2, φ = id");
    show(&p2, &hhl_complex(&IntMatrix::identity(2), &p2.rays, &p2.cg)?)?;
    let q = Context::builtin("P1xP1")?;
    println!("P1xP1, φ = diagonal");
    show(&q, &hhl_complex(&IntMatrix::from_i64_rows(&[&[1], &[1]]), &q.rays, &q.cg)?)?;
    Ok(())
}
