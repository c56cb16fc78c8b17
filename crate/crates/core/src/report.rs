//! Serializable reports. Every value is converted to plain integers and
//! strings so a report re-parses to an equal value and prints byte-for-byte
//! the same for the same input.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bondal::{enumerate_strata, ThetaCollection};
use crate::class_group::{class_group, ClassGroup, DivisorClass};
use crate::coxcat::{exceptional_order, sod, theta_orbit_report, verify_sod_semiorthogonality, HomMatrix, SodKind};
use crate::error::{Error, Result};
use crate::gkz::{chamber_action_table, enumerate_chambers, is_group_action, GKZChamber};
use crate::hhl::{hhl_complex, hhl_invariance, HHLComplex};
use crate::input::ToricInput;
use crate::linalg::{format_rat, IntMatrix, Rat};
use crate::rays::RayConfig;
use crate::refine::{equivariant_refinement, verify_compatibility};
use crate::symmetry::{compute_symmetry_group, RaySymmetryGroup};

pub const REPORT_FORMAT: u32 = 1;

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Internal(format!("{x} does not fit in 64 bits")))
}

fn small_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(small).collect()
}

fn matrix_rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    (0..m.rows()).map(|i| small_vec(m.row(i))).collect()
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

/// Everything the sections share: the input, its rays, class group and symmetry group.
pub struct Context {
    pub input: ToricInput,
    pub rays: RayConfig,
    pub cg: ClassGroup,
    pub group: RaySymmetryGroup,
}

impl Context {
    pub fn new(input: ToricInput) -> Result<Context> {
        let rays = input.ray_config()?;
        let cg = class_group(&rays);
        let group = compute_symmetry_group(&rays)?;
        Ok(Context { input, rays, cg, group })
    }

    pub fn builtin(name: &str) -> Result<Context> {
        let input = ToricInput::builtin(name).ok_or_else(|| Error::Parse(format!("unknown builtin {name}")))?;
        Context::new(input)
    }

    pub fn class_name(&self, c: &DivisorClass) -> String {
        self.input.class_name(c, &self.cg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementReport {
    pub matrix: Vec<Vec<i64>>,
    pub ray_permutation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetrySection {
    pub order: usize,
    pub generators: Vec<usize>,
    pub elements: Vec<ElementReport>,
}

pub fn symmetry_section(ctx: &Context) -> Result<SymmetrySection> {
    let elements = ctx
        .group
        .elements
        .iter()
        .map(|g| Ok(ElementReport { matrix: matrix_rows(&g.matrix)?, ray_permutation: g.ray_permutation.clone() }))
        .collect::<Result<_>>()?;
    Ok(SymmetrySection { order: ctx.group.order(), generators: ctx.group.generators.clone(), elements })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumReport {
    pub id: usize,
    pub dim: usize,
    pub sample: Vec<String>,
    pub j: Vec<usize>,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitSection {
    pub sizes: Vec<usize>,
    pub orbits: Vec<Vec<String>>,
    pub permutations_are_bijective: bool,
    pub homomorphism: bool,
    pub orbits_respect_sod: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceReport {
    pub index: usize,
    pub classes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SodSection {
    pub kind: String,
    pub pieces: Vec<PieceReport>,
    pub semiorthogonal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaSection {
    pub strata_counts: Vec<usize>,
    pub classes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strata: Option<Vec<StratumReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<OrbitSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sod: Option<Vec<SodSection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ThetaFlags {
    pub strata: bool,
    pub orbits: bool,
    pub sod: bool,
    pub hom: bool,
    pub order: bool,
}

impl ThetaFlags {
    pub fn all() -> ThetaFlags {
        ThetaFlags { strata: true, orbits: true, sod: true, hom: true, order: true }
    }
}

pub fn theta_section(ctx: &Context, flags: ThetaFlags) -> Result<ThetaSection> {
    let theta = enumerate_strata(&ctx.rays, &ctx.cg)?;
    theta_section_from(ctx, &theta, flags)
}

pub fn theta_section_from(ctx: &Context, theta: &ThetaCollection, flags: ThetaFlags) -> Result<ThetaSection> {
    let names: Vec<String> = theta.classes.iter().map(|c| ctx.class_name(c)).collect();
    let strata = flags.strata.then(|| {
        theta
            .strata
            .iter()
            .map(|s| StratumReport {
                id: s.id,
                dim: s.dim,
                sample: rats(&s.sample.0),
                j: s.j.clone(),
                class: ctx.class_name(&s.theta_class),
            })
            .collect()
    });
    let orbits = if flags.orbits {
        let r = theta_orbit_report(theta, &ctx.group, &ctx.cg)?;
        Some(OrbitSection {
            sizes: r.orbits.iter().map(|o| o.len()).collect(),
            orbits: r.orbits.iter().map(|o| o.iter().map(|&c| names[c].clone()).collect()).collect(),
            permutations_are_bijective: true,
            homomorphism: r.homomorphism,
            orbits_respect_sod: r.orbits_respect_sod,
        })
    } else {
        None
    };
    let need_hom = flags.hom || flags.sod;
    let hom = if need_hom { Some(HomMatrix::new(theta, &ctx.rays)?) } else { None };
    let sod_sections = if flags.sod {
        let hom = hom.as_ref().expect("computed");
        let mut out = Vec::new();
        for (kind, label) in [(SodKind::Dimension, "dimension"), (SodKind::Depth, "depth")] {
            let d = sod(theta, kind)?;
            let check = verify_sod_semiorthogonality(theta, hom, &d)?;
            out.push(SodSection {
                kind: label.into(),
                pieces: d
                    .pieces
                    .iter()
                    .map(|p| PieceReport { index: p.index, classes: p.classes.iter().map(|&c| names[c].clone()).collect() })
                    .collect(),
                semiorthogonal: check.passed(),
            });
        }
        Some(out)
    } else {
        None
    };
    let order = if flags.order {
        Some(exceptional_order(theta, &ctx.cg, &ctx.rays)?.iter().map(|&c| names[c].clone()).collect())
    } else {
        None
    };
    Ok(ThetaSection {
        strata_counts: theta.counts_by_dim(),
        classes: names.clone(),
        strata,
        orbits,
        sod: sod_sections,
        hom: if flags.hom { hom.map(|h| h.dims) } else { None },
        order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChamberReport {
    pub id: usize,
    pub sample: Vec<String>,
    pub signature: Vec<Vec<usize>>,
    pub max_cones: Vec<Vec<usize>>,
    pub unused_rays: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GkzSection {
    pub chambers: Vec<ChamberReport>,
    /// `action[g][i] = g(i)`
    pub action: Vec<Vec<usize>>,
    pub is_group_action: bool,
}

pub fn chambers(ctx: &Context) -> Result<Vec<GKZChamber>> {
    enumerate_chambers(&ctx.rays, &ctx.cg)
}

pub fn gkz_section(ctx: &Context) -> Result<GkzSection> {
    let ch = chambers(ctx)?;
    let action = chamber_action_table(&ctx.group, &ch, &ctx.cg)?;
    Ok(GkzSection {
        chambers: ch
            .iter()
            .map(|c| ChamberReport {
                id: c.id,
                sample: rats(&c.sample.0),
                signature: c.basis_signature.clone(),
                max_cones: c.fan.max_cones().to_vec(),
                unused_rays: c.unused_rays.clone(),
            })
            .collect(),
        is_group_action: is_group_action(&ctx.group, &action),
        action,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefineChecks {
    pub simplicial: bool,
    pub refines_every_chamber: bool,
    pub invariant: bool,
    pub weights_constant_on_orbits: bool,
    pub multipliers_divide_weights: bool,
    pub maps_are_stacky: bool,
}

impl RefineChecks {
    pub fn all(&self) -> bool {
        self.simplicial
            && self.refines_every_chamber
            && self.invariant
            && self.weights_constant_on_orbits
            && self.multipliers_divide_weights
            && self.maps_are_stacky
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefineSection {
    pub chambers: usize,
    pub refinement_rays: usize,
    pub refinement_cones: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    pub weights: Vec<i64>,
    /// `multipliers[ρ][i] = a_{ρ,i}`
    pub multipliers: Vec<Vec<i64>>,
    /// `compatibility[g][i]`
    pub compatibility: Vec<Vec<bool>>,
    pub checks: RefineChecks,
}

pub fn refine_section(ctx: &Context) -> Result<RefineSection> {
    let ch = chambers(ctx)?;
    let r = equivariant_refinement(&ch, &ctx.group)?;
    let compat = verify_compatibility(&r, &ctx.group, &ch, &ctx.cg)?;
    Ok(RefineSection {
        chambers: ch.len(),
        refinement_rays: r.refinement.rays().len(),
        refinement_cones: r.refinement.max_cones().len(),
        rays: r.fan().rays().rays().iter().map(|u| small_vec(u)).collect::<Result<_>>()?,
        max_cones: r.fan().max_cones().to_vec(),
        weights: small_vec(r.weights())?,
        multipliers: r.multipliers.iter().map(|a| small_vec(a)).collect::<Result<_>>()?,
        compatibility: compat.grid.clone(),
        checks: RefineChecks {
            simplicial: r.is_simplicial(),
            refines_every_chamber: r.refines_all(&ch),
            invariant: r.is_invariant(),
            weights_constant_on_orbits: r.weights_constant_on_orbits(),
            multipliers_divide_weights: r.multipliers_divide_weights(),
            maps_are_stacky: r.maps_are_stacky(),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HhlDegree {
    pub degree: usize,
    pub classes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HhlSection {
    /// Columns of `φ`, as rows of this list.
    pub phi_columns: Vec<Vec<i64>>,
    pub saturated: bool,
    pub terms: Vec<HhlDegree>,
    /// `differentials[j - 1]` is the map from degree `j` to degree `j - 1`.
    pub differentials: Vec<Vec<Vec<String>>>,
    pub chain_complex: bool,
    pub euler_characteristic: i64,
    /// Group elements preserving `im φ`.
    pub stabilizer: Vec<usize>,
    pub invariant: bool,
}

/// `"zero"`, `"identity"`, or a JSON list of integer columns such as `[[1,1]]`.
pub fn parse_phi(arg: &str, n: usize) -> Result<IntMatrix> {
    match arg {
        "zero" => Ok(IntMatrix::zeros(n, 0)),
        "identity" | "id" => Ok(IntMatrix::identity(n)),
        text => {
            let cols: Vec<Vec<i64>> =
                serde_json::from_str(text).map_err(|e| Error::Parse(format!("φ must be zero, identity or a list of columns: {e}")))?;
            let cols: Vec<Vec<BigInt>> = cols.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
            if cols.iter().any(|c| c.len() != n) {
                return Err(Error::Dimension(format!("φ columns must have length {n}")));
            }
            IntMatrix::from_columns(&cols, n)
        }
    }
}

pub fn hhl_section(ctx: &Context, phi: &IntMatrix) -> Result<HhlSection> {
    let c = hhl_complex(phi, &ctx.rays, &ctx.cg)?;
    hhl_section_from(ctx, &c)
}

pub fn hhl_stabilizer(ctx: &Context, c: &HHLComplex) -> Vec<usize> {
    (0..ctx.group.order())
        .filter(|&g| !matches!(hhl_invariance(c, &ctx.group, &[g], &ctx.cg), Err(Error::SublatticeNotPreserved(_))))
        .collect()
}

pub fn hhl_section_from(ctx: &Context, c: &HHLComplex) -> Result<HhlSection> {
    let stabilizer = hhl_stabilizer(ctx, c);
    let invariant = hhl_invariance(c, &ctx.group, &stabilizer, &ctx.cg)?.passed();
    Ok(HhlSection {
        phi_columns: (0..c.phi.cols()).map(|j| small_vec(&c.phi.column(j))).collect::<Result<_>>()?,
        saturated: c.saturated,
        terms: (0..c.terms.len())
            .map(|j| HhlDegree { degree: j, classes: c.term_classes(j).iter().map(|x| ctx.class_name(x)).collect() })
            .collect(),
        differentials: c.differential[1..]
            .iter()
            .map(|d| d.iter().map(|row| row.iter().map(|p| p.render()).collect()).collect())
            .collect(),
        chain_complex: c.is_chain_complex(),
        euler_characteristic: c.euler_characteristic(),
        stabilizer,
        invariant,
    })
}

/// A section that could not be computed for this input, with the reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Skipped {
    pub section: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub format: u32,
    pub input: String,
    pub lattice_rank: usize,
    pub rays: usize,
    pub class_group_rank: usize,
    pub torsion: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetrySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<ThetaSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gkz: Option<GkzSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refine: Option<RefineSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hhl: Option<Vec<HhlSection>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<Skipped>,
}

impl Report {
    pub fn empty(ctx: &Context) -> Result<Report> {
        Ok(Report {
            format: REPORT_FORMAT,
            input: ctx.input.display_name(),
            lattice_rank: ctx.rays.dim(),
            rays: ctx.rays.len(),
            class_group_rank: ctx.cg.rank(),
            torsion: small_vec(ctx.cg.torsion_orders())?,
            symmetry: None,
            theta: None,
            gkz: None,
            refine: None,
            hhl: None,
            skipped: Vec::new(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn render_text(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "{}: rank {}, {} rays, class group rank {}", self.input, self.lattice_rank, self.rays, self.class_group_rank);
        if !self.torsion.is_empty() {
            let _ = writeln!(o, "torsion orders {:?}", self.torsion);
        }
        if let Some(s) = &self.symmetry {
            let _ = writeln!(o, "\nsymmetry group of order {}, generated by elements {:?}", s.order, s.generators);
            for &g in &s.generators {
                let e = &s.elements[g];
                let _ = writeln!(o, "  g{g} = {:?}  rays {:?}", e.matrix, e.ray_permutation);
            }
        }
        if let Some(t) = &self.theta {
            let total: usize = t.strata_counts.iter().sum();
            let _ = writeln!(o, "\nstrata by dimension {:?} ({total} in all), |Θ| = {}", t.strata_counts, t.classes.len());
            let _ = writeln!(o, "  Θ = {{{}}}", t.classes.join(", "));
            if let Some(strata) = &t.strata {
                for s in strata {
                    let _ =
                        writeln!(o, "  stratum {:>3}  dim {}  θ = ({})  J = {:?}  class {}", s.id, s.dim, s.sample.join(", "), s.j, s.class);
                }
            }
            if let Some(orb) = &t.orbits {
                let _ = writeln!(o, "  orbit sizes {:?}", orb.sizes);
                for x in &orb.orbits {
                    let _ = writeln!(o, "    {{{}}}", x.join(", "));
                }
                let _ = writeln!(o, "  action is a homomorphism: {}; orbits respect both decompositions: {}", orb.homomorphism, orb.orbits_respect_sod);
            }
            if let Some(sods) = &t.sod {
                for s in sods {
                    let pieces: Vec<String> = s.pieces.iter().map(|p| format!("{}: {{{}}}", p.index, p.classes.join(", "))).collect();
                    let _ = writeln!(o, "  {} decomposition ⟨{}⟩, semi-orthogonal: {}", s.kind, pieces.join(" | "), s.semiorthogonal);
                }
            }
            if let Some(h) = &t.hom {
                let _ = writeln!(o, "  hom dimensions (row = source):");
                for (name, row) in t.classes.iter().zip(h) {
                    let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                    let _ = writeln!(o, "    {:>24} {}", name, cells.join(""));
                }
            }
            if let Some(ord) = &t.order {
                let _ = writeln!(o, "  exceptional order {}", ord.join(" ≺ "));
            }
        }
        if let Some(g) = &self.gkz {
            let _ = writeln!(o, "\n{} maximal chambers; chamber action is a group action: {}", g.chambers.len(), g.is_group_action);
            for c in &g.chambers {
                let _ = writeln!(
                    o,
                    "  chamber {}  sample ({})  {} cones  unused rays {:?}",
                    c.id,
                    c.sample.join(", "),
                    c.max_cones.len(),
                    c.unused_rays
                );
            }
        }
        if let Some(r) = &self.refine {
            let _ = writeln!(
                o,
                "\ncommon refinement of {} chamber fans: {} rays, {} cones; subdivided: {} rays, {} cones",
                r.chambers,
                r.refinement_rays,
                r.refinement_cones,
                r.rays.len(),
                r.max_cones.len()
            );
            let _ = writeln!(o, "  weights {:?}", r.weights);
            let pass = r.compatibility.iter().flatten().filter(|&&x| x).count();
            let total = r.compatibility.iter().map(|row| row.len()).sum::<usize>();
            let _ = writeln!(o, "  compatibility {pass}/{total} squares commute; all checks pass: {}", r.checks.all());
        }
        if let Some(hs) = &self.hhl {
            for h in hs {
                let _ = writeln!(o, "\ncomplex for φ with columns {:?} (saturated: {})", h.phi_columns, h.saturated);
                for t in h.terms.iter().rev() {
                    let _ = writeln!(o, "  degree {}: {}", t.degree, t.classes.iter().map(|c| format!("O({c})")).collect::<Vec<_>>().join(" ⊕ "));
                }
                for (j, d) in h.differentials.iter().enumerate() {
                    let _ = writeln!(o, "  d{}:", j + 1);
                    for row in d {
                        let _ = writeln!(o, "    [{}]", row.join(", "));
                    }
                }
                let _ = writeln!(
                    o,
                    "  d² = 0: {}; Euler characteristic {}; invariant under {} elements: {}",
                    h.chain_complex,
                    h.euler_characteristic,
                    h.stabilizer.len(),
                    h.invariant
                );
            }
        }
        for s in &self.skipped {
            let _ = writeln!(o, "\n{} skipped: {}", s.section, s.reason);
        }
        o
    }
}

/// All sections. Sections that fail on a precondition are listed as skipped;
/// other errors abort.
pub fn report_all(ctx: &Context) -> Result<Report> {
    let mut r = Report::empty(ctx)?;
    r.symmetry = Some(symmetry_section(ctx)?);
    let skip = |section: &str, e: Error, r: &mut Report| -> Result<()> {
        if e.kind() == crate::error::ErrorKind::Internal {
            return Err(e);
        }
        r.skipped.push(Skipped { section: section.into(), reason: e.to_string() });
        Ok(())
    };
    match theta_section(ctx, ThetaFlags::all()) {
        Ok(t) => r.theta = Some(t),
        Err(e) => skip("theta", e, &mut r)?,
    }
    match gkz_section(ctx) {
        Ok(g) => r.gkz = Some(g),
        Err(e) => skip("gkz", e, &mut r)?,
    }
    match refine_section(ctx) {
        Ok(x) => r.refine = Some(x),
        Err(e) => skip("refine", e, &mut r)?,
    }
    let n = ctx.rays.dim();
    let mut hs = Vec::new();
    for phi in [IntMatrix::zeros(n, 0), IntMatrix::identity(n)] {
        match hhl_section(ctx, &phi) {
            Ok(h) => hs.push(h),
            Err(e) => skip("hhl", e, &mut r)?,
        }
    }
    r.hhl = Some(hs);
    Ok(r)
}
