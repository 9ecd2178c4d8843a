//! Concrete local n-pseudofields with closed-form cross-check actions.

mod affine;
mod moebius;
mod semidirect;

pub use affine::{Adversarial2, Affine2};
pub use moebius::{psi, psi_inv, Moebius3};
pub use semidirect::{Mikhailichenko, Semidirect};

use crate::algebra::Pseudofield;
use crate::scalar::Scalar;

/// The shipped instance family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InstanceKind {
    Affine2,
    Moebius3,
    Semidirect,
    Mikhailichenko,
    Adversarial2,
}

impl InstanceKind {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "affine2" => Some(InstanceKind::Affine2),
            "moebius3" => Some(InstanceKind::Moebius3),
            "semidirect" => Some(InstanceKind::Semidirect),
            "mikhailichenko" => Some(InstanceKind::Mikhailichenko),
            "adversarial2" => Some(InstanceKind::Adversarial2),
            _ => None,
        }
    }

    /// Instances that take the degree from the command line.
    pub fn parameterized(self) -> bool {
        matches!(self, InstanceKind::Semidirect | InstanceKind::Mikhailichenko)
    }

    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::Affine2 => "affine2",
            InstanceKind::Moebius3 => "moebius3",
            InstanceKind::Semidirect => "semidirect",
            InstanceKind::Mikhailichenko => "mikhailichenko",
            InstanceKind::Adversarial2 => "adversarial2",
        }
    }
}

/// Build an instance, validating the degree parameter.
pub fn make_instance<S: Scalar>(
    kind: InstanceKind,
    n: Option<usize>,
) -> Result<Box<dyn Pseudofield<S>>, String> {
    match (kind, n) {
        (InstanceKind::Affine2, None) => Ok(Box::new(Affine2)),
        (InstanceKind::Moebius3, None) => Ok(Box::new(Moebius3)),
        (InstanceKind::Adversarial2, None) => Ok(Box::new(Adversarial2)),
        (InstanceKind::Semidirect, Some(n)) if n >= 2 => Ok(Box::new(Semidirect::new(n))),
        (InstanceKind::Mikhailichenko, Some(n)) if n >= 2 => Ok(Box::new(Mikhailichenko::new(n))),
        (InstanceKind::Semidirect | InstanceKind::Mikhailichenko, Some(n)) => {
            Err(format!("degree {n} out of range; need n >= 2"))
        }
        (k, Some(_)) => Err(format!("{} does not take a degree parameter", k.name())),
        (k, None) => Err(format!("{} requires --n", k.name())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Element;

    #[test]
    fn registry_round_trips_names() {
        for name in ["affine2", "moebius3", "semidirect", "mikhailichenko", "adversarial2"] {
            let kind = InstanceKind::parse(name).unwrap();
            assert_eq!(kind.name(), name);
        }
        assert!(InstanceKind::parse("nope").is_none());
    }

    #[test]
    fn degree_validation() {
        assert!(make_instance::<f64>(InstanceKind::Semidirect, Some(1)).is_err());
        assert!(make_instance::<f64>(InstanceKind::Affine2, Some(2)).is_err());
        assert!(make_instance::<f64>(InstanceKind::Semidirect, None).is_err());
        let inst = make_instance::<f64>(InstanceKind::Semidirect, Some(4)).unwrap();
        assert_eq!(inst.degree(), 4);
    }

    #[test]
    fn units_satisfy_the_phi_relation() {
        for (kind, n) in [
            (InstanceKind::Affine2, None),
            (InstanceKind::Moebius3, None),
            (InstanceKind::Semidirect, Some(3)),
            (InstanceKind::Mikhailichenko, Some(3)),
        ] {
            let inst = make_instance::<f64>(kind, n).unwrap();
            let e: Element<f64> = inst.unit(1);
            for i in 2..=inst.degree() {
                let ei = inst.phi(i, &e).unwrap();
                assert!(ei.policy_eq(&inst.unit(i)), "{} unit {i}", inst.name());
            }
        }
    }
}
