//! The JSON input format and the built-in examples.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::class_group::{ClassGroup, DivisorClass};
use crate::error::{Error, Result};
use crate::fan::{Fan, StackyFan};
use crate::rays::RayConfig;

pub const FORMAT_VERSION: u32 = 1;

/// Names for a basis of `Cl(X)`, each given by a divisor `Σ a_ρ D_ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassBasis {
    pub labels: Vec<String>,
    pub divisors: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricInput {
    pub format: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub lattice_rank: usize,
    pub rays: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_cones: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stacky_weights: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_basis: Option<ClassBasis>,
}

pub const BUILTIN_NAMES: [&str; 6] = ["P1", "P2", "P1xP1", "BlP2", "perm3", "perm4"];

impl ToricInput {
    pub fn parse(text: &str) -> Result<ToricInput> {
        let input: ToricInput = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if input.format != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported format {}, expected {FORMAT_VERSION}", input.format)));
        }
        input.ray_config()?;
        if input.max_cones.is_some() {
            let f = input.fan()?;
            if let Some(w) = &input.stacky_weights {
                StackyFan::new(f, w.iter().map(|&x| BigInt::from(x)).collect())?;
            }
        }
        if let Some(b) = &input.class_basis {
            if b.labels.len() != b.divisors.len() {
                return Err(Error::Parse("class_basis labels and divisors differ in length".into()));
            }
            if b.divisors.iter().any(|d| d.len() != input.rays.len()) {
                return Err(Error::Parse("class_basis divisor has the wrong number of coefficients".into()));
            }
        }
        Ok(input)
    }

    /// A built-in name, `-` for standard input, or a path to a JSON file.
    pub fn load(arg: &str) -> Result<ToricInput> {
        if let Some(b) = ToricInput::builtin(arg) {
            return Ok(b);
        }
        let text = if arg == "-" {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                .map_err(|e| Error::Parse(format!("cannot read standard input: {e}")))?;
            s
        } else {
            std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("cannot read {arg}: {e}")))?
        };
        ToricInput::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| "input".into())
    }

    pub fn ray_config(&self) -> Result<RayConfig> {
        RayConfig::new(
            self.lattice_rank,
            self.rays.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    pub fn fan(&self) -> Result<Fan> {
        let cones = self.max_cones.clone().ok_or_else(|| Error::Precondition("input has no max_cones".into()))?;
        Fan::new(self.ray_config()?, cones)
    }

    /// Coordinates of `c` in the named basis, or the raw coordinates.
    pub fn class_name(&self, c: &DivisorClass, cg: &ClassGroup) -> String {
        let Some(b) = &self.class_basis else {
            return c.to_string();
        };
        let divisors: Vec<Vec<BigInt>> =
            b.divisors.iter().map(|d| d.iter().map(|&x| BigInt::from(x)).collect()).collect();
        match cg.coordinates_in_basis(c, &divisors) {
            Ok(coords) => format_combination(&coords, &b.labels),
            Err(_) => c.to_string(),
        }
    }

    pub fn builtin(name: &str) -> Option<ToricInput> {
        let mk = |name: &str, n: usize, rays: &[&[i64]], cones: &[&[usize]]| ToricInput {
            format: FORMAT_VERSION,
            name: Some(name.into()),
            lattice_rank: n,
            rays: rays.iter().map(|r| r.to_vec()).collect(),
            max_cones: Some(cones.iter().map(|c| c.to_vec()).collect()),
            stacky_weights: None,
            class_basis: None,
        };
        Some(match name {
            "P1" => mk("P1", 1, &[&[1], &[-1]], &[&[0], &[1]]),
            "P2" => mk("P2", 2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]),
            "P1xP1" => mk(
                "P1xP1",
                2,
                &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
                &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]],
            ),
            "BlP2" => mk(
                "BlP2",
                2,
                &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]],
                &[&[0, 3], &[1, 3], &[1, 2], &[0, 2]],
            ),
            "perm3" => {
                let mut p = permutohedral(2);
                // rays {1} {2} {3} {1,2} {1,3} {2,3}; H = D_3 + D_13 + D_23
                p.class_basis = Some(ClassBasis {
                    labels: vec!["H".into(), "E01".into(), "E02".into(), "E12".into()],
                    divisors: vec![
                        vec![0, 0, 1, 0, 1, 1],
                        vec![0, 0, 0, 0, 1, 0],
                        vec![0, 0, 0, 0, 0, 1],
                        vec![0, 0, 0, 1, 0, 0],
                    ],
                });
                p
            }
            "perm4" => permutohedral(3),
            _ => return None,
        })
    }
}

/// `Σ c_i label_i`, written like `-2H + E01 + E02 + E12`; zero is `0`.
pub fn format_combination(coords: &[BigInt], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, l) in coords.iter().zip(labels) {
        if c == &BigInt::from(0) {
            continue;
        }
        let neg = c < &BigInt::from(0);
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != BigInt::from(1) {
            out.push_str(&mag.to_string());
        }
        out.push_str(l);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The braid fan in `N = ℤ^{n+1}/(1,…,1) ≅ ℤⁿ`: rays `e_S` for
/// `∅ ≠ S ⊊ {1,…,n+1}` ordered by size then lexicographically, with
/// `e_{n+1} = -(e_1 + ⋯ + e_n)`, and one maximal cone per complete flag.
pub fn permutohedral(n: usize) -> ToricInput {
    let m = n + 1;
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for size in 1..m {
        subsets.extend(crate::cone::subsets(m, size));
    }
    let ray_of = |s: &[usize]| -> Vec<i64> {
        let mut v = vec![0i64; n];
        for &i in s {
            if i == n {
                for x in v.iter_mut() {
                    *x -= 1;
                }
            } else {
                v[i] += 1;
            }
        }
        v
    };
    let rays: Vec<Vec<i64>> = subsets.iter().map(|s| ray_of(s)).collect();
    let mut cones = Vec::new();
    for perm in permutations(m) {
        let cone: Vec<usize> = (1..m)
            .map(|k| {
                let mut s = perm[..k].to_vec();
                s.sort();
                subsets.iter().position(|t| *t == s).expect("listed subset")
            })
            .collect();
        cones.push(cone);
    }
    cones.iter_mut().for_each(|c| c.sort());
    cones.sort();
    ToricInput {
        format: FORMAT_VERSION,
        name: Some(format!("perm{m}")),
        lattice_rank: n,
        rays,
        max_cones: Some(cones),
        stacky_weights: None,
        class_basis: None,
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Subset labels of the permutohedral rays, 1-based, in ray order.
pub fn permutohedral_labels(n: usize) -> Vec<String> {
    let m = n + 1;
    let mut out = Vec::new();
    for size in 1..m {
        for s in crate::cone::subsets(m, size) {
            let parts: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
            out.push(format!("{{{}}}", parts.join(",")));
        }
    }
    out
}
