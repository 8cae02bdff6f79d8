//! Characteristic-class generators and their cohomological degrees.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A polynomial generator. Ordering is by kind, then index, and fixes the
/// internal monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `pX{i}`: the i-th Pontryagin class of the tangent bundle, degree 4i.
    PontX(u8),
    /// `pV{i}`: the i-th Pontryagin class of the auxiliary bundle V, degree 4i.
    PontV(u8),
    /// `cL`: first Chern class of the spin^c line bundle, degree 2.
    ChernL,
    /// `x{j}`: an explicit degree-2 root variable. Only used by oracles.
    Root(u8),
    /// `y{j}`: an explicit squared root t_j^2, degree 4. Only used by oracles.
    RootSq(u8),
}

impl Generator {
    pub fn degree(self) -> u32 {
        match self {
            Generator::PontX(i) | Generator::PontV(i) => 4 * i as u32,
            Generator::ChernL | Generator::Root(_) => 2,
            Generator::RootSq(_) => 4,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::PontX(i) => write!(f, "pX{i}"),
            Generator::PontV(i) => write!(f, "pV{i}"),
            Generator::ChernL => write!(f, "cL"),
            Generator::Root(j) => write!(f, "x{j}"),
            Generator::RootSq(j) => write!(f, "y{j}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownGenerator(s.to_string());
        let index = |rest: &str| -> Result<u8> {
            match rest.parse::<u8>() {
                Ok(i) if i >= 1 => Ok(i),
                _ => Err(unknown()),
            }
        };
        if s == "cL" {
            Ok(Generator::ChernL)
        } else if let Some(rest) = s.strip_prefix("pX") {
            Ok(Generator::PontX(index(rest)?))
        } else if let Some(rest) = s.strip_prefix("pV") {
            Ok(Generator::PontV(index(rest)?))
        } else if let Some(rest) = s.strip_prefix('x') {
            Ok(Generator::Root(index(rest)?))
        } else if let Some(rest) = s.strip_prefix('y') {
            Ok(Generator::RootSq(index(rest)?))
        } else {
            Err(unknown())
        }
    }
}

/// A family of formal Chern roots whose power sums s_{2m} = Σ t_j^{2m}
/// are expressible in generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Roots of T_C X; elementary symmetric functions of t_j^2 are `pX{i}`.
    X,
    /// Roots of V ⊗ C; elementary symmetric functions are `pV{i}`.
    V,
    /// The single root pair ±c of L_R ⊗ C, so s_{2m} = cL^{2m}.
    Line,
}

impl Family {
    pub fn pontryagin(self, i: u8) -> Option<Generator> {
        match self {
            Family::X => Some(Generator::PontX(i)),
            Family::V => Some(Generator::PontV(i)),
            Family::Line => None,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pX" | "X" => Ok(Family::X),
            "pV" | "V" => Ok(Family::V),
            "cL" | "L" => Ok(Family::Line),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// The ordered generators available in a computation of a given dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    gens: Vec<Generator>,
}

impl GeneratorTable {
    /// Standard table: `pX1..`, optionally `pV1..`, optionally `cL`, all with
    /// degree at most `dim`.
    pub fn standard(dim: u32, with_v: bool, with_c: bool) -> Self {
        let mut gens: Vec<Generator> = (1..=dim / 4).map(|i| Generator::PontX(i as u8)).collect();
        if with_v {
            gens.extend((1..=dim / 4).map(|i| Generator::PontV(i as u8)));
        }
        if with_c && dim >= 2 {
            gens.push(Generator::ChernL);
        }
        GeneratorTable { gens }
    }

    pub fn from_generators(mut gens: Vec<Generator>) -> Self {
        gens.sort();
        gens.dedup();
        GeneratorTable { gens }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.gens.binary_search(&g).is_ok() || self.gens.contains(&g)
    }

    pub fn has_family(&self, family: Family) -> bool {
        match family {
            Family::X => self.gens.iter().any(|g| matches!(g, Generator::PontX(_))),
            Family::V => self.gens.iter().any(|g| matches!(g, Generator::PontV(_))),
            Family::Line => self.contains(Generator::ChernL),
        }
    }

    pub fn lookup(&self, name: &str) -> Result<Generator> {
        let g: Generator = name.parse()?;
        if self.contains(g) {
            Ok(g)
        } else {
            Err(Error::UnknownGenerator(name.to_string()))
        }
    }
}
