//! Acceptance criteria, one verdict line each. Run with
//! `cargo test --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use proptest::test_runner::{Config, TestCaseError, TestRunner};

use common::*;
use toric_cox::bondal::equivariance_violations;
use toric_cox::class_group::{class_group, DivisorClass};
use toric_cox::coxcat::{theta_orbit_report, SodKind};
use toric_cox::gkz::{chamber_action_table, enumerate_chambers, is_group_action};
use toric_cox::hhl::{hhl_complex, hhl_invariance, phi_zero};
use toric_cox::linalg::IntMatrix;
use toric_cox::rays::RayConfig;
use toric_cox::refine::{equivariant_refinement, verify_compatibility};
use toric_cox::report::{hhl_stabilizer, Context};
use toric_cox::symmetry::compute_symmetry_group;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn class(ctx: &Context, d: &Data, name: &str) -> Option<usize> {
    d.theta.classes.iter().position(|c| ctx.class_name(c) == name)
}

fn projective_plane() -> Outcome {
    let d = data(index_of("P2"));
    let ctx = &d.ctx;
    let names: BTreeSet<String> = d.theta.classes.iter().map(|c| ctx.class_name(c)).collect();
    ensure!(names == ["0", "-1", "-2"].iter().map(|s| s.to_string()).collect(), "classes {names:?}");
    let (t0, t1, t2) = (class(ctx, d, "0").unwrap(), class(ctx, d, "-1").unwrap(), class(ctx, d, "-2").unwrap());
    ensure!(d.theta.class_j(t0).map_err(|e| e.to_string())? == [0, 1, 2], "J of 0");
    ensure!(d.theta.class_j(t1).map_err(|e| e.to_string())?.is_empty(), "J of -1");
    ensure!(d.theta.class_j(t2).map_err(|e| e.to_string())?.is_empty(), "J of -2");
    ensure!(d.dimension.partition() == d.depth.partition(), "decompositions differ");
    let rep = theta_orbit_report(&d.theta, &ctx.group, &ctx.cg).map_err(|e| e.to_string())?;
    ensure!(rep.orbits.iter().all(|o| o.len() == 1), "orbits {:?}", rep.orbits);
    let h = &d.hom.dims;
    ensure!(h[t1][t0] == 3 && h[t2][t1] == 3 && h[t2][t0] == 6, "hom table {h:?}");
    // the last entry once more, by brute force over translates
    let brute = box_points(d, &hom_bounds(d, t2, t0), 5).len();
    ensure!(brute == 6, "brute-force Hom(-2, 0) = {brute}");
    Ok(format!("|Θ| = 3, Hom dims 3, 3, 6, |G| = {}", ctx.group.order()))
}

fn hexagon() -> Outcome {
    let d = data(index_of("perm3"));
    let ctx = &d.ctx;
    let rays: BTreeSet<Vec<i64>> =
        ctx.rays.rays().iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
    let want: BTreeSet<Vec<i64>> = [[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]].iter().map(|r| r.to_vec()).collect();
    ensure!(rays == want, "rays {rays:?}");
    ensure!(ctx.group.order() == 12, "|G| = {}", ctx.group.order());
    let labels = ["0", "-H", "-H + E01", "-H + E02", "-H + E12", "-2H + E01 + E02 + E12"];
    let names: BTreeSet<String> = d.theta.classes.iter().map(|c| ctx.class_name(c)).collect();
    ensure!(names == labels.iter().map(|s| s.to_string()).collect(), "classes {names:?}");
    let rep = theta_orbit_report(&d.theta, &ctx.group, &ctx.cg).map_err(|e| e.to_string())?;
    let sizes: BTreeSet<usize> = rep.orbits.iter().map(|o| o.len()).collect();
    ensure!(sizes == [1, 2, 3].into_iter().collect(), "orbit sizes {sizes:?}");
    let minus = ctx
        .group
        .find_by_matrix(&IntMatrix::from_i64_rows(&[&[-1, 0], &[0, -1]]))
        .ok_or("-1 is not in G")?;
    let (a, b) = (class(ctx, d, "-H").unwrap(), class(ctx, d, "-2H + E01 + E02 + E12").unwrap());
    ensure!(rep.permutations[minus][a] == b && rep.permutations[minus][b] == a, "-1 does not swap -H and -2H + E01 + E02 + E12");
    let orbits: BTreeSet<Vec<usize>> = rep.orbits.iter().cloned().collect();
    ensure!(orbits == d.dimension.partition() && orbits == d.depth.partition(), "orbits differ from the decompositions");
    Ok("|G| = 12, |Θ| = 6, orbit sizes 1, 2, 3".into())
}

fn braid_fan() -> Outcome {
    let start = Instant::now();
    let d = data(index_of("perm4"));
    let took = start.elapsed();
    let ctx = &d.ctx;
    ensure!(ctx.group.order() == 48, "|G| = {}", ctx.group.order());
    let counts = d.theta.counts_by_dim();
    ensure!(counts == [2, 12, 20, 10], "strata counts {counts:?}");
    let euler: i64 = counts.iter().enumerate().map(|(j, &c)| if j % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
    ensure!(euler == 0, "Euler characteristic {euler}");
    ensure!(d.theta.len() == 44 && d.theta.strata.len() == 44, "|Θ| = {}, {} strata", d.theta.len(), d.theta.strata.len());
    let rep = theta_orbit_report(&d.theta, &ctx.group, &ctx.cg).map_err(|e| e.to_string())?;
    let points: Vec<usize> = d.theta.strata.iter().filter(|s| s.dim == 0).map(|s| d.theta.class_of_stratum[s.id]).collect();
    ensure!(points.len() == 2, "0-dim classes {points:?}");
    for &c in &points {
        ensure!(rep.permutations.iter().all(|p| p[c] == c), "class {c} moves");
    }
    ensure!(d.depth.position_of(points[0]) != d.depth.position_of(points[1]), "0-dim classes share a depth piece");
    let cones = ctx.input.fan().map_err(|e| e.to_string())?.max_cones().len();
    ensure!(cones == 24, "{cones} maximal cones");
    let on_m = IntMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0], &[-1, -1, -1]]);
    let g = ctx.group.elements.iter().find(|e| e.dual_matrix == on_m).ok_or("no element acts on M by the given matrix")?;
    // (34) fixes the rays e_S with S ∩ {3,4} ∈ {∅, {3,4}} and swaps the rest in pairs
    let labels = toric_cox::input::permutohedral_labels(ctx.rays.dim());
    ensure!(labels.len() == ctx.rays.len(), "{} labels for {} rays", labels.len(), ctx.rays.len());
    let swapped = |s: &str| {
        let mut v: Vec<u32> = s.trim_matches(|c| c == '{' || c == '}').split(',').map(|x| x.parse().unwrap()).collect();
        v.iter_mut().for_each(|x| *x = match *x { 3 => 4, 4 => 3, y => y });
        v.sort_unstable();
        format!("{{{}}}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    };
    for (rho, &img) in g.ray_permutation.iter().enumerate() {
        ensure!(labels[img] == swapped(&labels[rho]), "ray {} goes to {}", labels[rho], labels[img]);
    }
    Ok(format!("|G| = 48, strata {counts:?}, |Θ| = 44, 24 cones, (34) realized; computed in {took:.1?}"))
}

fn chambers() -> Outcome {
    let mut seen = Vec::new();
    for (name, rays) in [
        ("P2", vec![vec![1, 0], vec![0, 1], vec![-1, -1]]),
        ("BlP2", vec![vec![1, 0], vec![0, 1], vec![-1, -1], vec![1, 1]]),
        ("P1xP1", vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]),
    ] {
        let rows: Vec<&[i64]> = rays.iter().map(|r| r.as_slice()).collect();
        let rc = RayConfig::from_i64(2, &rows).map_err(|e| e.to_string())?;
        let cg = class_group(&rc);
        let grp = compute_symmetry_group(&rc).map_err(|e| e.to_string())?;
        let ch = enumerate_chambers(&rc, &cg).map_err(|e| e.to_string())?;
        let table = chamber_action_table(&grp, &ch, &cg).map_err(|e| e.to_string())?;
        ensure!(is_group_action(&grp, &table), "{name}: not a group action");
        seen.push((name, ch.len()));
    }
    ensure!(seen == [("P2", 1), ("BlP2", 2), ("P1xP1", 1)], "chamber counts {seen:?}");
    Ok("chambers 1, 2, 1; actions are group actions".into())
}

fn refinements() -> Outcome {
    let mut sizes = Vec::new();
    for name in ["P2", "P1xP1", "BlP2", "perm3"] {
        let d = data(index_of(name));
        let (ch, _) = d.chambers.as_ref().ok_or(format!("{name}: no chambers"))?;
        let r = equivariant_refinement(ch, &d.ctx.group).map_err(|e| e.to_string())?;
        ensure!(r.is_simplicial(), "{name}: not simplicial");
        ensure!(r.refines_all(ch), "{name}: does not refine every chamber fan");
        ensure!(r.is_invariant(), "{name}: not invariant");
        ensure!(r.weights_constant_on_orbits(), "{name}: weights vary on an orbit");
        ensure!(r.multipliers_divide_weights(), "{name}: a multiplier does not divide its weight");
        ensure!(r.maps_are_stacky(), "{name}: a chamber map is not a map of stacky fans");
        let grid = verify_compatibility(&r, &d.ctx.group, ch, &d.ctx.cg).map_err(|e| e.to_string())?;
        ensure!(grid.passed(), "{name}: compatibility grid {:?}", grid.grid);
        sizes.push(format!("{name} {}", r.fan().max_cones().len()));
    }
    Ok(format!("cones: {}", sizes.join(", ")))
}

fn equivariance() -> Outcome {
    let mut checked = 0;
    for name in ["P2", "perm3", "perm4"] {
        let d = data(index_of(name));
        let bad = equivariance_violations(&d.theta, &d.ctx.group, &d.ctx.rays, &d.ctx.cg).map_err(|e| e.to_string())?;
        ensure!(bad.is_empty(), "{name}: violations {bad:?}");
        checked += d.ctx.group.order() * d.theta.strata.len();
    }
    Ok(format!("{checked} (g, stratum) pairs"))
}

fn run_property(
    name: &str,
    f: impl Fn(usize, usize, usize) -> Result<(), String>,
    total: &mut u32,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: 256, failure_persistence: None, ..Config::default() });
    runner
        .run(&(0usize..6, 0usize..1000, 0usize..1000), |(i, x, y)| f(i, x, y).map_err(TestCaseError::fail))
        .map_err(|e| format!("{name}: {e}"))?;
    *total += 256;
    Ok(())
}

fn properties() -> Outcome {
    let mut total = 0;
    run_property("J containment", |i, s, t| {
        let d = data(i);
        check_j_containment(d, s % d.theta.len(), t % d.theta.len())
    }, &mut total)?;
    run_property("Hom effectivity", |i, s, t| {
        let d = data(i);
        check_hom_effective(d, s % d.theta.len(), t % d.theta.len())
    }, &mut total)?;
    run_property("semi-orthogonality", |i, k, _| {
        check_sod_clean(data(i), if k % 2 == 0 { SodKind::Dimension } else { SodKind::Depth })
    }, &mut total)?;
    run_property("grid oracle", |i, k, _| {
        let k = if i == index_of("perm4") { 1 + k % 2 } else { 1 + k % 3 } as u64;
        check_frobenius(i, k)
    }, &mut total)?;
    let ells: Vec<String> = (0..6).map(|i| format!("{} 1/{}", data(i).name, sufficient_ell(data(i)))).collect();
    Ok(format!("{total} cases; grids {}", ells.join(", ")))
}

fn complexes() -> Outcome {
    let p2 = Context::builtin("P2").map_err(|e| e.to_string())?;
    let c = hhl_complex(&phi_zero(2), &p2.rays, &p2.cg).map_err(|e| e.to_string())?;
    let profile = |j: usize| -> Vec<String> {
        let mut v: Vec<String> = c.term_classes(j).iter().map(|x| p2.class_name(x)).collect();
        v.sort();
        v
    };
    ensure!(c.terms.len() == 3, "P2: {} degrees", c.terms.len());
    ensure!(profile(2) == ["-1", "-2"] && profile(1) == ["-1", "-1", "-1"] && profile(0) == ["0"], "P2 terms {:?}", c.term_counts());
    ensure!(c.is_chain_complex(), "P2: d² ≠ 0");
    let all: Vec<usize> = (0..p2.group.order()).collect();
    ensure!(p2.group.order() == 6, "P2: |G| = {}", p2.group.order());
    ensure!(hhl_invariance(&c, &p2.group, &all, &p2.cg).map_err(|e| e.to_string())?.passed(), "P2: not invariant");

    let id = hhl_complex(&IntMatrix::identity(2), &p2.rays, &p2.cg).map_err(|e| e.to_string())?;
    ensure!(id.term_counts() == [1] && id.term_classes(0) == [DivisorClass::from_i64(&[0])], "identity gives {:?}", id.term_counts());

    let q = Context::builtin("P1xP1").map_err(|e| e.to_string())?;
    let c = hhl_complex(&IntMatrix::from_i64_rows(&[&[1], &[1]]), &q.rays, &q.cg).map_err(|e| e.to_string())?;
    let names: Vec<Vec<String>> = (0..c.terms.len()).map(|j| c.term_classes(j).iter().map(|x| q.class_name(x)).collect()).collect();
    ensure!(names == [vec!["(0, 0)".to_string()], vec!["(-1, -1)".to_string()]], "diagonal terms {names:?}");
    ensure!(c.is_chain_complex(), "diagonal: d² ≠ 0");
    let factor_swap = q
        .group
        .find_by_matrix(&IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]))
        .ok_or("the factor swap is not in G")?;
    let stab = hhl_stabilizer(&q, &c);
    ensure!(stab.contains(&factor_swap), "the swap does not preserve the diagonal");
    ensure!(hhl_invariance(&c, &q.group, &[factor_swap], &q.cg).map_err(|e| e.to_string())?.passed(), "diagonal: swap fails");
    Ok("P2 [1, 3, 2], diagonal O(-1,-1) -> O, identity one term".into())
}

fn scope_note() -> Outcome {
    Ok("not checkable here: exceptionality and fullness in the Cox category, and exactness of the complexes; \
        covered by proxies in criteria 7 and 8 (Hom direction, semi-orthogonality, d² = 0)"
        .into())
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, projective_plane),
        (2, hexagon),
        (3, braid_fan),
        (4, chambers),
        (5, refinements),
        (6, equivariance),
        (7, properties),
        (8, complexes),
        (9, scope_note),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (n, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {n}: pass  {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL  {why}");
            }
        }
    }
    println!("acceptance: {} of 9 passed in {:.1?}", 9 - failed, start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
