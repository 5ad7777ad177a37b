use super::{check_grid, Generator, SolveInfo, Trajectory};
use crate::error::Result;
use crate::system::AmplitudeState;

/// Exact evaluation `y(t) = e^{Mt} y(0)` at each sample time.
///
/// This is the inverse Laplace transform of the resolvent `(sI − M)⁻¹ y(0)`;
/// the route taken (diagonalization or series) is reported in the
/// trajectory's [`SolveInfo`].
pub fn evolve_resolvent(gen: &Generator, init: &AmplitudeState, times: &[f64]) -> Result<Trajectory> {
    check_grid(times)?;
    let prop = gen.propagator();
    let y0 = init.to_array();
    let states = times
        .iter()
        .map(|&t| AmplitudeState::from_array(prop.apply(t, &y0)))
        .collect();
    Ok(Trajectory {
        times: times.to_vec(),
        states,
        info: SolveInfo::Resolvent(prop.path()),
    })
}
