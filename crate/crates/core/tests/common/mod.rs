//! Data shared by the property suite and the acceptance harness: one cached
//! computation per built-in input, plus checks written against independent
//! oracles where one exists.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use toric_cox::bondal::{d_theta, enumerate_strata, frobenius_oracle, ThetaCollection};
use toric_cox::class_group::DivisorClass;
use toric_cox::coxcat::{exceptional_order, sod, verify_sod_semiorthogonality, HomMatrix, SODecomposition, SodKind};
use toric_cox::gkz::{chamber_action_table, enumerate_chambers, GKZChamber};
use toric_cox::input::BUILTIN_NAMES;
use toric_cox::linalg::{ceil_rat, floor_rat, nullspace, rank_int, to_rat, Rat};
use toric_cox::report::Context;

pub struct Data {
    pub name: &'static str,
    pub ctx: Context,
    pub theta: ThetaCollection,
    pub hom: HomMatrix,
    pub order: Vec<usize>,
    pub dimension: SODecomposition,
    pub depth: SODecomposition,
    /// `None` when the class group rank is beyond chamber enumeration.
    pub chambers: Option<(Vec<GKZChamber>, Vec<Vec<usize>>)>,
}

pub fn data(i: usize) -> &'static Data {
    static CELLS: [OnceLock<Data>; 6] = [const { OnceLock::new() }; 6];
    CELLS[i].get_or_init(|| {
        let name = BUILTIN_NAMES[i];
        let ctx = Context::builtin(name).unwrap();
        let theta = enumerate_strata(&ctx.rays, &ctx.cg).unwrap();
        let hom = HomMatrix::new(&theta, &ctx.rays).unwrap();
        let order = exceptional_order(&theta, &ctx.cg, &ctx.rays).unwrap();
        let dimension = sod(&theta, SodKind::Dimension).unwrap();
        let depth = sod(&theta, SodKind::Depth).unwrap();
        let chambers = enumerate_chambers(&ctx.rays, &ctx.cg).ok().map(|ch| {
            let table = chamber_action_table(&ctx.group, &ch, &ctx.cg).unwrap();
            (ch, table)
        });
        Data { name, ctx, theta, hom, order, dimension, depth, chambers }
    })
}

pub fn index_of(name: &str) -> usize {
    BUILTIN_NAMES.iter().position(|n| *n == name).unwrap()
}

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}

/// Grid step at which every class already appears: the lcm of the sample
/// denominators, with the fixed values quoted for the smaller inputs.
pub fn sufficient_ell(d: &Data) -> u64 {
    match d.name {
        "P1" | "P1xP1" => 2,
        "P2" => 3,
        "perm4" => 12,
        _ => {
            let mut l = BigInt::one();
            for s in &d.theta.strata {
                for x in s.sample.coords() {
                    l = l.lcm(x.denom());
                }
            }
            l.try_into().unwrap()
        }
    }
}

type OracleCache = Mutex<HashMap<(usize, u64), BTreeSet<DivisorClass>>>;

pub fn oracle(i: usize, ell: u64) -> BTreeSet<DivisorClass> {
    static CACHE: OnceLock<OracleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(i, ell)) {
        return v.clone();
    }
    let d = data(i);
    let v = frobenius_oracle(&d.ctx.rays, &d.ctx.cg, ell);
    cache.lock().unwrap().insert((i, ell), v.clone());
    v
}

pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Rays on which `⟨θ, u_ρ⟩` is an integer.
pub fn integral_rays(d: &Data, theta: &[Rat]) -> Vec<usize> {
    d.ctx.rays.pairings(theta).iter().enumerate().filter(|(_, x)| x.is_integer()).map(|(i, _)| i).collect()
}

/// `n - rank {u_ρ : ρ ∈ J}`.
pub fn expected_dim(d: &Data, j: &[usize]) -> usize {
    let vs: Vec<Vec<BigInt>> = j.iter().map(|&r| d.ctx.rays.ray(r).to_vec()).collect();
    d.ctx.rays.dim() - rank_int(&vs)
}

/// Lattice points `m` with `⟨m, u_ρ⟩ <= b_ρ`, by brute force over the box
/// `[-R, R]ⁿ`. Panics if a point sits on the box boundary, since then the
/// box may have cut the polytope.
pub fn box_points(d: &Data, b: &[Rat], radius: i64) -> Vec<Vec<BigInt>> {
    let n = d.ctx.rays.dim();
    let mut out = Vec::new();
    let mut m = vec![-radius; n];
    loop {
        let mr: Vec<Rat> = m.iter().map(|&x| frac(x, 1)).collect();
        if d.ctx.rays.pairings(&mr).iter().zip(b).all(|(p, bound)| p <= bound) {
            assert!(m.iter().all(|x| x.abs() < radius), "box of radius {radius} too small for {}", d.name);
            out.push(m.iter().map(|&x| int(x)).collect());
        }
        let mut k = 0;
        while k < n {
            m[k] += 1;
            if m[k] <= radius {
                break;
            }
            m[k] = -radius;
            k += 1;
        }
        if k == n {
            return out;
        }
    }
}

/// The right-hand side `⌈⟨θ_s, u⟩⌉ - ⟨θ_t, u⟩` for morphisms from class `s` to class `t`.
pub fn hom_bounds(d: &Data, s: usize, t: usize) -> Vec<Rat> {
    let ps = d.ctx.rays.pairings(d.theta.class_sample(s));
    let pt = d.ctx.rays.pairings(d.theta.class_sample(t));
    ps.iter().zip(&pt).map(|(a, b)| to_rat(&ceil_rat(a)) - b).collect()
}

pub fn check_j_containment(d: &Data, s: usize, t: usize) -> Result<(), String> {
    if d.hom.dims[s][t] > 0 {
        let (js, jt) = (d.theta.class_j(s).unwrap(), d.theta.class_j(t).unwrap());
        if !is_subset(js, jt) {
            return Err(format!("{}: Hom({s},{t}) = {} but J {js:?} ⊄ {jt:?}", d.name, d.hom.dims[s][t]));
        }
    }
    Ok(())
}

/// Counts the Hom space by brute force, and turns every counted point into an
/// explicit effective divisor of class `c_t - c_s`.
pub fn check_hom_effective(d: &Data, s: usize, t: usize) -> Result<(), String> {
    let b = hom_bounds(d, s, t);
    let points = box_points(d, &b, 5);
    if points.len() != d.hom.dims[s][t] {
        return Err(format!("{}: Hom({s},{t}) = {} but brute force finds {}", d.name, d.hom.dims[s][t], points.len()));
    }
    let cg = &d.ctx.cg;
    let diff = cg.sub(&d.theta.classes[t], &d.theta.classes[s]);
    for m in &points {
        let mr: Vec<Rat> = m.iter().map(to_rat).collect();
        let a: Vec<BigInt> = d.ctx.rays.pairings(&mr).iter().zip(&b).map(|(p, bound)| floor_rat(bound) - floor_rat(p)).collect();
        if a.iter().any(|x| x.is_negative()) || cg.degree(&a) != diff {
            return Err(format!("{}: point {m:?} gives {a:?}, not an effective divisor of class c_t - c_s", d.name));
        }
    }
    if !points.is_empty() && !cg.is_effective(&diff, &d.ctx.rays).unwrap() {
        return Err(format!("{}: is_effective disagrees with the witness for ({s},{t})", d.name));
    }
    Ok(())
}

pub fn check_sod_clean(d: &Data, kind: SodKind) -> Result<(), String> {
    let dec = if kind == SodKind::Dimension { &d.dimension } else { &d.depth };
    let r = verify_sod_semiorthogonality(&d.theta, &d.hom, dec).unwrap();
    if !r.passed() {
        return Err(format!("{}: {kind:?} decomposition violations {r:?}", d.name));
    }
    // every backward Hom vanishes, checked straight from the table
    for s in 0..d.theta.len() {
        for t in 0..d.theta.len() {
            if d.hom.dims[s][t] > 0 && dec.position_of(s) > dec.position_of(t) {
                return Err(format!("{}: Hom({s},{t}) points backwards", d.name));
            }
        }
    }
    Ok(())
}

/// `oracle(ℓ) ⊆ oracle(ℓk) ⊆ Θ`, with equality at a sufficient `ℓ`.
pub fn check_frobenius(i: usize, k: u64) -> Result<(), String> {
    let d = data(i);
    let ell = sufficient_ell(d);
    let classes: BTreeSet<DivisorClass> = d.theta.classes.iter().cloned().collect();
    let coarse = oracle(i, ell);
    let fine = oracle(i, ell * k);
    if coarse != classes {
        return Err(format!("{}: grid 1/{ell} finds {} classes, Θ has {}", d.name, coarse.len(), classes.len()));
    }
    if !coarse.is_subset(&fine) || !fine.is_subset(&classes) {
        return Err(format!("{}: grid 1/{} is not sandwiched", d.name, ell * k));
    }
    let half = oracle(i, 1);
    if !half.is_subset(&coarse) {
        return Err(format!("{}: grid 1/1 not inside grid 1/{ell}", d.name));
    }
    Ok(())
}

/// A point of the relative interior of stratum `s` near its sample, moved
/// along `dir` projected to the stratum's affine hull and scaled so no wall
/// off `J` is crossed.
pub fn relint_point(d: &Data, s: usize, dir: &[i64]) -> Vec<Rat> {
    let st = &d.theta.strata[s];
    let n = d.ctx.rays.dim();
    let rows: Vec<Vec<Rat>> = st.j.iter().map(|&r| d.ctx.rays.rays_rat()[r].clone()).collect();
    let basis = nullspace(&rows, n);
    let mut delta = vec![Rat::zero(); n];
    for (b, &c) in basis.iter().zip(dir) {
        for (x, y) in delta.iter_mut().zip(b) {
            *x += y * frac(c, 1);
        }
    }
    let sample = st.sample.coords();
    let off: Vec<usize> = (0..d.ctx.rays.len()).filter(|r| !st.j.contains(r)).collect();
    let ps = d.ctx.rays.pairings(sample);
    let pd = d.ctx.rays.pairings(&delta);
    let mut room: Option<Rat> = None;
    let mut speed = Rat::zero();
    for &r in &off {
        let f = &ps[r] - to_rat(&floor_rat(&ps[r]));
        let gap = if f < Rat::one() - &f { f } else { Rat::one() - &f };
        room = Some(room.map_or(gap.clone(), |g: Rat| if gap < g { gap.clone() } else { g }));
        if pd[r].abs() > speed {
            speed = pd[r].abs();
        }
    }
    let scale = match room {
        Some(g) if !speed.is_zero() => g / (speed * frac(2, 1)),
        _ => Rat::one(),
    };
    sample.iter().zip(&delta).map(|(x, y)| x + y * &scale).collect()
}

pub fn check_relint(d: &Data, s: usize, dir: &[i64]) -> Result<(), String> {
    let st = &d.theta.strata[s];
    for sign in [1, -1] {
        let dir: Vec<i64> = dir.iter().map(|x| x * sign).collect();
        let p = relint_point(d, s, &dir);
        if integral_rays(d, &p) != st.j {
            return Err(format!("{}: moved point {p:?} left stratum {s}", d.name));
        }
        if d_theta(&p, &d.ctx.rays, &d.ctx.cg) != st.theta_class {
            return Err(format!("{}: class changes inside stratum {s}", d.name));
        }
    }
    Ok(())
}
