use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::frames::{Frame, Model, Per};
use crate::logic::{AgentSet, Roster, RosterError};

/// Targets closer than this to a disk boundary are rejected.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Sensor {
    pub name: String,
    pub center: (f64, f64),
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SensorWorld {
    pub id: String,
    pub targets: Vec<(f64, f64)>,
}

/// Sensors with disk-shaped visibility regions and candidate target
/// configurations.
#[derive(Clone, Debug, PartialEq)]
pub struct SensorScenario {
    pub sensors: Vec<Sensor>,
    pub worlds: Vec<SensorWorld>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SensorError {
    #[error(transparent)]
    Roster(#[from] RosterError),
    #[error("sensor `{0}` needs a finite positive radius")]
    Radius(String),
    #[error("world `{0}` has a non-finite coordinate")]
    Coordinate(String),
    #[error("duplicate world id `{0}`")]
    DuplicateWorld(String),
    #[error("target {target} of world `{world}` lies on the boundary of sensor `{sensor}`")]
    Boundary {
        world: String,
        target: usize,
        sensor: String,
    },
}

impl Sensor {
    /// Strict interior test without square roots; `Err` on the boundary
    /// band `(r - tol)^2 <= d^2 <= (r + tol)^2`.
    fn sees(&self, (x, y): (f64, f64)) -> Result<bool, ()> {
        let (dx, dy) = (x - self.center.0, y - self.center.1);
        let d2 = dx * dx + dy * dy;
        let lo = (self.radius - BOUNDARY_TOLERANCE).max(0.0);
        let hi = self.radius + BOUNDARY_TOLERANCE;
        if d2 < lo * lo {
            Ok(true)
        } else if d2 > hi * hi {
            Ok(false)
        } else {
            Err(())
        }
    }
}

impl SensorScenario {
    pub fn roster(&self) -> Result<Roster, RosterError> {
        Roster::new(self.sensors.iter().map(|s| s.name.clone()))
    }

    /// Per world, per target, the set of sensors that see it.
    pub fn visibility(&self) -> Result<Vec<Vec<AgentSet>>, SensorError> {
        let mut seen = BTreeSet::new();
        for s in &self.sensors {
            if !(s.radius.is_finite() && s.radius > 0.0)
                || !(s.center.0.is_finite() && s.center.1.is_finite())
            {
                return Err(SensorError::Radius(s.name.clone()));
            }
        }
        self.worlds
            .iter()
            .map(|w| {
                if !seen.insert(w.id.as_str()) {
                    return Err(SensorError::DuplicateWorld(w.id.clone()));
                }
                w.targets
                    .iter()
                    .enumerate()
                    .map(|(i, &t)| {
                        if !(t.0.is_finite() && t.1.is_finite()) {
                            return Err(SensorError::Coordinate(w.id.clone()));
                        }
                        let mut vis = AgentSet::EMPTY;
                        for (a, s) in self.sensors.iter().enumerate() {
                            match s.sees(t) {
                                Ok(true) => vis = vis.with(a),
                                Ok(false) => {}
                                Err(()) => {
                                    return Err(SensorError::Boundary {
                                        world: w.id.clone(),
                                        target: i,
                                        sensor: s.name.clone(),
                                    })
                                }
                            }
                        }
                        Ok(vis)
                    })
                    .collect()
            })
            .collect()
    }
}

/// The observation signature of a world for `group`: for each non-empty
/// `V ⊆ group`, the number of targets inside every disk of `V`.
fn signature(targets: &[AgentSet], group: AgentSet) -> Vec<usize> {
    group
        .subsets()
        .filter(|v| !v.is_empty())
        .map(|v| targets.iter().filter(|t| v.is_subset(**t)).count())
        .collect()
}

/// Worlds are related by a non-empty group iff their signatures agree;
/// `∼_∅` is total and every sensor is alive everywhere.
pub fn build_sensor_frame(sc: &SensorScenario) -> Result<Model, SensorError> {
    let roster = sc.roster()?;
    let vis = sc.visibility()?;
    let rel = roster
        .groups()
        .map(|u| {
            if u.is_empty() {
                Per::total(vis.len())
            } else {
                let keys: Vec<Option<Vec<usize>>> =
                    vis.iter().map(|t| Some(signature(t, u))).collect();
                Per::from_keys(&keys)
            }
        })
        .collect();
    let worlds = sc.worlds.iter().map(|w| w.id.clone()).collect();
    Ok(Model::bare(Frame::new_trusted(roster, worlds, rel)))
}

/// Three disk sensors and five target configurations.
pub fn three_sensor_scenario() -> SensorScenario {
    let sensor = |name: &str, center| Sensor {
        name: name.into(),
        center,
        radius: 1.0,
    };
    let world = |id: &str, targets: &[(f64, f64)]| SensorWorld {
        id: id.into(),
        targets: targets.to_vec(),
    };
    SensorScenario {
        sensors: alloc::vec![
            sensor("s1", (0.0, 0.0)),
            sensor("s2", (1.2, 0.0)),
            sensor("s3", (0.6, -1.04)),
        ],
        worlds: alloc::vec![
            world("w1", &[(0.6, -0.4)]),
            world("w2", &[(1.2, -0.7), (-0.2, 0.2)]),
            world("w3", &[(0.0, -0.7), (1.4, 0.2)]),
            world("w4", &[(0.6, 0.3), (0.3, -1.5)]),
            world("w5", &[(1.4, 0.2), (-0.2, 0.2), (0.3, -1.5)]),
        ],
    }
}
