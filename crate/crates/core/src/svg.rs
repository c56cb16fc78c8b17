//! Pictures of a two-dimensional stratification on the fundamental square.
//! Only straight lines, circles and text are emitted.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::bondal::ThetaCollection;
use crate::error::{Error, Result};
use crate::linalg::{ceil_rat, floor_rat, to_rat, Rat};
use crate::polytope::Polytope;
use crate::rays::RayConfig;

const SIZE: i64 = 400;
const MARGIN: i64 = 40;

/// `x` rounded half away from zero to six decimals.
pub fn decimal6(x: &Rat) -> String {
    let scale = BigInt::from(1_000_000);
    let y = x * Rat::from_integer(scale.clone());
    let half = Rat::new(1.into(), 2.into());
    let r = if y.is_negative() { -floor_rat(&(-y + half)) } else { floor_rat(&(y + half)) };
    let (q, m) = r.abs().div_rem(&scale);
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{q}.{m:0>6}")
}

fn px(theta: &[Rat]) -> (String, String) {
    let s = Rat::from_integer(SIZE.into());
    let m = Rat::from_integer(MARGIN.into());
    let x = &m + &theta[0] * &s;
    let y = &m + (Rat::from_integer(1.into()) - &theta[1]) * &s;
    (decimal6(&x), decimal6(&y))
}

fn line(o: &mut String, a: &[Rat], b: &[Rat], class: &str) {
    let (x1, y1) = px(a);
    let (x2, y2) = px(b);
    let _ = writeln!(o, r#"  <line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// The square `[0,1]²`, the lines `⟨k, u_ρ⟩ ∈ ℤ` through it, a dot at each
/// vertex stratum and every stratum's label at its sample point.
pub fn plot_strata(rays: &RayConfig, theta: &ThetaCollection, label: impl Fn(usize) -> String) -> Result<String> {
    if rays.dim() != 2 {
        return Err(Error::Precondition(format!("plots need lattice rank 2, got {}", rays.dim())));
    }
    let total = SIZE + 2 * MARGIN;
    let mut o = String::new();
    let _ = writeln!(o, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {total} {total}" width="{total}" height="{total}">"#);
    let _ = writeln!(
        o,
        "  <style>line {{ stroke: black; stroke-width: 1.5; }} line.square {{ stroke: gray; stroke-dasharray: 4 3; }} circle {{ fill: black; }} text {{ font-family: sans-serif; font-size: 11px; text-anchor: middle; }}</style>"
    );
    let z = Rat::from_integer(0.into());
    let one = Rat::from_integer(1.into());
    let corners = [[z.clone(), z.clone()], [one.clone(), z.clone()], [one.clone(), one.clone()], [z.clone(), one.clone()]];
    for i in 0..4 {
        line(&mut o, &corners[i], &corners[(i + 1) % 4], "square");
    }
    let square = Polytope::cube(&[z.clone(), z.clone()], &[one.clone(), one.clone()]);
    for u in rays.rays_rat() {
        let (lo, hi) = square.range_of(u);
        let mut c = ceil_rat(&lo);
        while c <= floor_rat(&hi) {
            if let Some(seg) = square.cut_equal(u, &to_rat(&c)) {
                if let [a, b] = seg.vertices() {
                    line(&mut o, a, b, "wall");
                }
            }
            c += 1;
        }
    }
    for s in theta.strata.iter().filter(|s| s.dim == 0) {
        let (x, y) = px(&s.sample.0);
        let _ = writeln!(o, r#"  <circle cx="{x}" cy="{y}" r="3"/>"#);
    }
    for s in &theta.strata {
        let (x, y) = px(&s.sample.0);
        let _ = writeln!(o, r#"  <text x="{x}" y="{y}" dy="-5">{}</text>"#, escape(&label(s.id)));
    }
    o.push_str("</svg>\n");
    Ok(o)
}
