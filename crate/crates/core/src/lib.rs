//! Standing waves of the quintic NLS equation on the tadpole graph.
//!
//! A tadpole is a ring of circumference `2π` with a half-line attached at one
//! vertex. Positive standing waves `Φ = (u, v)` solve
//! `-Φ'' - 3Φ⁵ = ωΦ` on each edge with Neumann–Kirchhoff conditions at the
//! vertex. After the scaling `ω = -ε⁴` the ring profile is a trajectory of a
//! planar Hamiltonian system and the tail is a shifted soliton, so the whole
//! family is parametrized by the vertex amplitude `U0 ∈ (0, 1)`.
//!
//! Modules, bottom up:
//!
//! * [`model`] closed-form algebra of the reduced problem,
//! * [`elliptic`] Jacobi functions and `K(k)`,
//! * [`quadrature`] the period, mass and monotonicity integrals,
//! * [`wave`] assembled solutions, graph profiles and the mass curve,
//! * [`critical`] the frequencies `ω₁`, `ω₀` and the variational classification,
//! * [`asymptotics`] small and large `|ω|` expansions and the variational bounds,
//! * [`linearized`] the nondegeneracy check,
//! * [`spectrum`] the linear Laplacian on the tadpole.
//!
//! The numerics are generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases at the crate root fix the double-precision instance.

pub mod asymptotics;
pub mod critical;
pub mod elliptic;
pub mod error;
pub mod linearized;
pub mod model;
pub mod ode;
pub mod quadrature;
pub mod roots;
pub mod scalar;
pub mod spectrum;
pub mod wave;

pub use error::{Error, Result};
pub use scalar::Real;

pub use critical::{Classification, CriticalFrequencies};
pub use elliptic::EllipticEval;
pub use linearized::LinearizedTrace;
pub use model::{ModelParams, RhoRoots};
pub use quadrature::{Quad, QuadratureSpec};
pub use spectrum::ScatteringData;
pub use wave::{GraphFunction, MassCurve, WaveSolution, WaveSolver};

pub type ModelParams64 = ModelParams<f64>;
pub type RhoRoots64 = RhoRoots<f64>;
pub type EllipticEval64 = EllipticEval<f64>;
pub type QuadratureSpec64 = QuadratureSpec<f64>;
pub type Quad64 = Quad<f64>;
pub type WaveSolution64 = WaveSolution<f64>;
pub type WaveSolver64 = WaveSolver<f64>;
pub type GraphFunction64 = GraphFunction<f64>;
pub type MassCurve64 = MassCurve<f64>;
pub type CriticalFrequencies64 = CriticalFrequencies<f64>;
pub type LinearizedTrace64 = LinearizedTrace<f64>;
pub type ScatteringData64 = ScatteringData<f64>;
