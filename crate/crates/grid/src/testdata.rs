//! Shared in-crate test fixtures.

/// The 5-bus system from the reference tables. `sched_mw` carries the paper's
/// values; tests that need a security-feasible current dispatch override it.
pub fn five_bus_text() -> String {
    r#"{
      "base_mva": 100.0,
      "buses": [1, 2, 3, 4, 5],
      "generators": [
        {"bus": 1, "a": 0.0430293, "b": 20.0, "c": 0.0, "p_max": 332.4, "p_min": 0.0, "r_up": 20.0, "r_down": -20.0, "sched_mw": 140.765},
        {"bus": 2, "a": 0.25, "b": 20.0, "c": 0.0, "p_max": 140.0, "p_min": 0.0, "r_up": 15.0, "r_down": -15.0, "sched_mw": 24.2275}
      ],
      "lines": [
        {"from_bus": 1, "to_bus": 2, "resistance": 0.02, "reactance": 0.06, "flow_limit": 100.0},
        {"from_bus": 1, "to_bus": 3, "resistance": 0.08, "reactance": 0.24, "flow_limit": 100.0},
        {"from_bus": 2, "to_bus": 3, "resistance": 0.06, "reactance": 0.18, "flow_limit": 100.0},
        {"from_bus": 2, "to_bus": 4, "resistance": 0.06, "reactance": 0.18, "flow_limit": 100.0},
        {"from_bus": 2, "to_bus": 5, "resistance": 0.04, "reactance": 0.12, "flow_limit": 100.0},
        {"from_bus": 3, "to_bus": 4, "resistance": 0.01, "reactance": 0.03, "flow_limit": 100.0},
        {"from_bus": 4, "to_bus": 5, "resistance": 0.08, "reactance": 0.24, "flow_limit": 100.0}
      ],
      "loads": [
        {"bus": 2, "mw": 20.0}, {"bus": 3, "mw": 45.0},
        {"bus": 4, "mw": 40.0}, {"bus": 5, "mw": 60.0}
      ],
      "horizon": 5,
      "forecast": [
        [{"bus": 2, "mw": 20.0}, {"bus": 3, "mw": 45.0}, {"bus": 4, "mw": 40.0}, {"bus": 5, "mw": 60.0}],
        [{"bus": 2, "mw": 30.0}, {"bus": 3, "mw": 40.0}, {"bus": 4, "mw": 40.0}, {"bus": 5, "mw": 65.0}],
        [{"bus": 2, "mw": 20.0}, {"bus": 3, "mw": 43.0}, {"bus": 4, "mw": 45.0}, {"bus": 5, "mw": 65.0}],
        [{"bus": 2, "mw": 20.0}, {"bus": 3, "mw": 43.0}, {"bus": 4, "mw": 45.0}, {"bus": 5, "mw": 65.0}],
        [{"bus": 2, "mw": 20.0}, {"bus": 3, "mw": 43.0}, {"bus": 4, "mw": 45.0}, {"bus": 5, "mw": 65.0}]
      ],
      "contingencies": [1, 2, 3, 4, 5, 6, 7]
    }"#
    .to_string()
}

/// Two buses joined by a single (radial) line; outaging it must island.
pub fn two_bus_text() -> String {
    r#"{
      "base_mva": 100.0,
      "buses": [1, 2],
      "generators": [
        {"bus": 1, "a": 0.1, "b": 10.0, "c": 0.0, "p_max": 100.0, "p_min": 0.0, "r_up": 50.0, "r_down": -50.0, "sched_mw": 30.0}
      ],
      "lines": [
        {"from_bus": 1, "to_bus": 2, "resistance": 0.01, "reactance": 0.1, "flow_limit": 50.0}
      ],
      "loads": [{"bus": 2, "mw": 30.0}],
      "horizon": 1,
      "forecast": [[{"bus": 2, "mw": 30.0}]],
      "contingencies": []
    }"#
    .to_string()
}
