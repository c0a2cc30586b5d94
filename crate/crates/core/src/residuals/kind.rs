use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The frame whose moving equations a kind is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameSystem {
    /// `(ξ1, ξ2, ξ3)` with curvatures `(K1, K2)`.
    Frenet,
    /// `(ξ2, Y, D)` with curvatures `(p, q)`.
    Alternative,
}

/// The versor field an equation is written for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Xi1,
    Xi2,
    Xi3,
    Y,
    D,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Xi1 => "xi1",
            Target::Xi2 => "xi2",
            Target::Xi3 => "xi3",
            Target::Y => "Y",
            Target::D => "D",
        }
    }
}

/// Helix property that a reduced equation characterizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HelixClass {
    /// Constant `K2/K1`.
    Xi1,
    /// Constant `p/q`, equivalently constant `S`.
    Slant,
}

/// One of the twelve characterizing equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OdeKind {
    Xi2Alt,
    Xi2AltReduced,
    YFull,
    YReduced,
    DFull,
    DReduced,
    Xi1Frenet,
    Xi1Reduced,
    Xi2Frenet,
    Xi2FrenetReduced,
    Xi3Frenet,
    Xi3Reduced,
}

impl OdeKind {
    pub const ALL: [OdeKind; 12] = [
        OdeKind::Xi2Alt,
        OdeKind::Xi2AltReduced,
        OdeKind::YFull,
        OdeKind::YReduced,
        OdeKind::DFull,
        OdeKind::DReduced,
        OdeKind::Xi1Frenet,
        OdeKind::Xi1Reduced,
        OdeKind::Xi2Frenet,
        OdeKind::Xi2FrenetReduced,
        OdeKind::Xi3Frenet,
        OdeKind::Xi3Reduced,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OdeKind::Xi2Alt => "XI2_ALT",
            OdeKind::Xi2AltReduced => "XI2_ALT_REDUCED",
            OdeKind::YFull => "Y_FULL",
            OdeKind::YReduced => "Y_REDUCED",
            OdeKind::DFull => "D_FULL",
            OdeKind::DReduced => "D_REDUCED",
            OdeKind::Xi1Frenet => "XI1_FRENET",
            OdeKind::Xi1Reduced => "XI1_REDUCED",
            OdeKind::Xi2Frenet => "XI2_FRENET",
            OdeKind::Xi2FrenetReduced => "XI2_FRENET_REDUCED",
            OdeKind::Xi3Frenet => "XI3_FRENET",
            OdeKind::Xi3Reduced => "XI3_REDUCED",
        }
    }

    pub fn target(self) -> Target {
        match self {
            OdeKind::Xi2Alt | OdeKind::Xi2AltReduced => Target::Xi2,
            OdeKind::YFull | OdeKind::YReduced => Target::Y,
            OdeKind::DFull | OdeKind::DReduced => Target::D,
            OdeKind::Xi1Frenet | OdeKind::Xi1Reduced => Target::Xi1,
            OdeKind::Xi2Frenet | OdeKind::Xi2FrenetReduced => Target::Xi2,
            OdeKind::Xi3Frenet | OdeKind::Xi3Reduced => Target::Xi3,
        }
    }

    pub fn system(self) -> FrameSystem {
        match self {
            OdeKind::Xi2Alt
            | OdeKind::Xi2AltReduced
            | OdeKind::YFull
            | OdeKind::YReduced
            | OdeKind::DFull
            | OdeKind::DReduced => FrameSystem::Alternative,
            _ => FrameSystem::Frenet,
        }
    }

    /// Position of the target in its frame: 0, 1 or 2.
    pub(crate) fn slot(self) -> usize {
        match self.full() {
            OdeKind::Xi2Alt | OdeKind::Xi1Frenet => 0,
            OdeKind::YFull | OdeKind::Xi2Frenet => 1,
            _ => 2,
        }
    }

    pub fn is_reduced(self) -> bool {
        matches!(
            self,
            OdeKind::Xi2AltReduced
                | OdeKind::YReduced
                | OdeKind::DReduced
                | OdeKind::Xi1Reduced
                | OdeKind::Xi2FrenetReduced
                | OdeKind::Xi3Reduced
        )
    }

    /// Highest derivative present: 2 for the reduced `Y` and Frenet `ξ2`
    /// equations, 3 otherwise.
    pub fn order(self) -> usize {
        match self {
            OdeKind::YReduced | OdeKind::Xi2FrenetReduced => 2,
            _ => 3,
        }
    }

    /// Helix class characterized by a reduced kind.
    pub fn characterizes(self) -> Option<HelixClass> {
        if !self.is_reduced() {
            return None;
        }
        Some(match self.system() {
            FrameSystem::Alternative => HelixClass::Slant,
            FrameSystem::Frenet => HelixClass::Xi1,
        })
    }

    pub fn full(self) -> Self {
        match self {
            OdeKind::Xi2AltReduced => OdeKind::Xi2Alt,
            OdeKind::YReduced => OdeKind::YFull,
            OdeKind::DReduced => OdeKind::DFull,
            OdeKind::Xi1Reduced => OdeKind::Xi1Frenet,
            OdeKind::Xi2FrenetReduced => OdeKind::Xi2Frenet,
            OdeKind::Xi3Reduced => OdeKind::Xi3Frenet,
            full => full,
        }
    }

    pub fn reduced(self) -> Self {
        match self {
            OdeKind::Xi2Alt => OdeKind::Xi2AltReduced,
            OdeKind::YFull => OdeKind::YReduced,
            OdeKind::DFull => OdeKind::DReduced,
            OdeKind::Xi1Frenet => OdeKind::Xi1Reduced,
            OdeKind::Xi2Frenet => OdeKind::Xi2FrenetReduced,
            OdeKind::Xi3Frenet => OdeKind::Xi3Reduced,
            reduced => reduced,
        }
    }
}

impl fmt::Display for OdeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OdeKind {
    type Err = Error;

    /// Case-insensitive; `-` and `_` are interchangeable.
    fn from_str(s: &str) -> Result<Self, Error> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        OdeKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in OdeKind::ALL {
            assert_eq!(k.name().parse::<OdeKind>().unwrap(), k);
        }
        assert_eq!("xi3-reduced".parse::<OdeKind>().unwrap(), OdeKind::Xi3Reduced);
        assert!("XI4".parse::<OdeKind>().is_err());
    }

    #[test]
    fn pairing() {
        for k in OdeKind::ALL {
            assert_eq!(k.full().reduced(), k.reduced());
            assert_eq!(k.full().target(), k.target());
            assert_eq!(k.is_reduced(), k.characterizes().is_some());
            assert_eq!(k.is_reduced(), k == k.reduced());
        }
        assert_eq!(OdeKind::ALL.iter().filter(|k| k.is_reduced()).count(), 6);
    }

    #[test]
    fn slots() {
        let slot = |k: OdeKind| k.slot();
        assert_eq!(slot(OdeKind::Xi2Alt), 0);
        assert_eq!(slot(OdeKind::YFull), 1);
        assert_eq!(slot(OdeKind::DFull), 2);
        assert_eq!(slot(OdeKind::Xi1Frenet), 0);
        assert_eq!(slot(OdeKind::Xi2Frenet), 1);
        assert_eq!(slot(OdeKind::Xi3Frenet), 2);
    }
}
