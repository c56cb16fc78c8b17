//! Reading a toric variety from JSON, with a named class basis, and printing
//! the full report.
//!
//! ```bash
//! cargo run --example custom_input
//! ```

use toric_cox::input::ToricInput;
use toric_cox::report::{report_all, Context, Report};

const HIRZEBRUCH_1: &str = r#"{
  "format": 1,
  "name": "F1",
  "lattice_rank": 2,
  "rays": [[1, 0], [0, 1], [-1, 1], [0, -1]],
  "max_cones": [[0, 1], [1, 2], [2, 3], [0, 3]],
  "class_basis": { "labels": ["F", "E"], "divisors": [[1, 0, 0, 0], [0, 0, 0, 1]] }
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let input = ToricInput::parse(HIRZEBRUCH_1)?;
    let report = report_all(&Context::new(input)?)?;
    print!("{}", report.render_text());
    let json = report.to_json();
    assert_eq!(Report::from_json(&json)?, report);
    println!("\nJSON report is {} bytes and re-parses to the same value", json.len());
    Ok(())
}
