use crate::model::{PeriodicFramework, ReducedGraph};
use crate::ratmath::{is_zero_vec, strictly_convex_position, zero_vec, RatVec};

/// Why a framework cannot be strictly auxetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScreenFailure {
    /// An edge orbit joins a vertex orbit to itself, so its edge vector is a
    /// lattice vector of constant length.
    Loop { orbit: usize },
    /// On reduced edge `lo–hi`, the origin and the representative endpoints
    /// are not in strictly convex position.
    ConvexPosition { lo: usize, hi: usize },
    /// The quotient graph is not connected.
    Disconnected,
}

impl ScreenFailure {
    pub fn code(&self) -> &'static str {
        match self {
            ScreenFailure::Loop { .. } => "loop",
            ScreenFailure::ConvexPosition { .. } => "convex position",
            ScreenFailure::Disconnected => "disconnected",
        }
    }
}

impl std::fmt::Display for ScreenFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScreenFailure::Loop { orbit } => write!(f, "loop: edge orbit {orbit} is a loop"),
            ScreenFailure::ConvexPosition { lo, hi } => write!(
                f,
                "convex position: endpoints on reduced edge {lo}-{hi} are not in strictly convex position"
            ),
            ScreenFailure::Disconnected => write!(f, "disconnected: quotient graph is not connected"),
        }
    }
}

/// Necessary condition for strict auxeticity. A failure proves that no
/// strictly auxetic infinitesimal deformation exists.
pub fn necessary_screen(fw: &PeriodicFramework) -> Result<(), ScreenFailure> {
    // Zero edge vectors and repeated orbits impose no constraint of their
    // own, so they are skipped rather than reported.
    if let Some(orbit) = (0..fw.m()).find(|&k| fw.edge(k).is_loop() && !is_zero_vec(&fw.edge_vector(k))) {
        return Err(ScreenFailure::Loop { orbit });
    }
    let proper: Vec<_> = fw.edges().iter().filter(|e| !e.is_loop()).cloned().collect();
    let fw = fw.with_edges(proper).map_err(|_| ScreenFailure::Disconnected)?;
    let g: ReducedGraph = fw.reduced_graph().map_err(|_| ScreenFailure::Disconnected)?;
    for (r, reps) in fw.reduced_representatives(&g).iter().enumerate() {
        let mut points: Vec<RatVec> = vec![zero_vec(fw.dim())];
        for (_, v) in reps {
            if !points.contains(v) {
                points.push(v.clone());
            }
        }
        if !strictly_convex_position(&points) {
            let e = &g.edges()[r];
            return Err(ScreenFailure::ConvexPosition { lo: e.lo, hi: e.hi });
        }
    }
    Ok(())
}
