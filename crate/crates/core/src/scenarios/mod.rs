//! The sensor-network scenario and the built-in example library.

mod fixtures;
mod sensor;

pub use fixtures::{builtin_fixtures, counterexamples, fixture, Fixture, FixturePayload};
pub use sensor::{
    build_sensor_frame, three_sensor_scenario, Sensor, SensorError, SensorScenario, SensorWorld,
    BOUNDARY_TOLERANCE,
};
