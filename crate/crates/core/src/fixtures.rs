//! The bundled triangulations, embedded at compile time.

use crate::complex::SimplicialComplex;

/// A bundled triangulation with the facts its pipeline output depends on.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
    pub dim: usize,
    /// Trivial fundamental group (connected and simply connected).
    pub simply_connected: bool,
}

impl Fixture {
    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::parse_facet_list(self.name, self.text).expect("bundled fixtures parse")
    }
}

macro_rules! fixture {
    ($name:literal, $dim:expr, $sc:expr) => {
        Fixture {
            name: $name,
            text: include_str!(concat!("../fixtures/", $name, ".txt")),
            dim: $dim,
            simply_connected: $sc,
        }
    };
}

pub const SPHERE_0: Fixture = fixture!("sphere_0", 0, false);
pub const SPHERE_1: Fixture = fixture!("sphere_1", 1, false);
pub const SPHERE_2: Fixture = fixture!("sphere_2", 2, true);
pub const SPHERE_3: Fixture = fixture!("sphere_3", 3, true);
pub const SPHERE_4: Fixture = fixture!("sphere_4", 4, true);
pub const T2_7: Fixture = fixture!("t2_7", 2, false);
pub const RP2_6: Fixture = fixture!("rp2_6", 2, false);
pub const CP2_9: Fixture = fixture!("cp2_9", 4, true);
pub const SUSPENDED_T2_7: Fixture = fixture!("suspension_t2_7", 3, true);
pub const DISK_2: Fixture = fixture!("disk_2", 2, true);

pub const ALL: [Fixture; 10] =
    [SPHERE_0, SPHERE_1, SPHERE_2, SPHERE_3, SPHERE_4, T2_7, RP2_6, CP2_9, SUSPENDED_T2_7, DISK_2];

/// Looks a fixture up by name.
pub fn by_name(name: &str) -> Option<Fixture> {
    ALL.iter().copied().find(|f| f.name == name)
}

/// `∂Δ^{n+1}` for `n ≤ 4`.
pub fn sphere(n: usize) -> Fixture {
    [SPHERE_0, SPHERE_1, SPHERE_2, SPHERE_3, SPHERE_4][n]
}
