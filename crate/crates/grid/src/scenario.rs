//! N-1 contingency scenarios.
//!
//! Scenario 0 is the base case. Scenario c > 0 zeroes the susceptance of one
//! line and deactivates its flow limit; the outaged line's terminals stay in
//! the state arrays (pinned to zero power with free angles) so every scenario
//! shares one shape. Scenarios that would island the network are rejected
//! when the set is generated.

use crate::{DtnNetwork, GridError, Result};

#[derive(Debug, Clone)]
pub struct ScenarioSet {
    /// Outaged line per scenario; None for the base case.
    pub outaged_line: Vec<Option<usize>>,
    /// Susceptance per (scenario, line), pu.
    susceptance: Vec<Vec<f64>>,
    /// Flow limit per (scenario, line), pu; the outaged entry is inactive.
    flow_limit: Vec<Vec<f64>>,
}

impl ScenarioSet {
    pub fn len(&self) -> usize {
        self.outaged_line.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outaged_line.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> {
        0..self.outaged_line.len()
    }

    pub fn susceptance(&self, scenario: usize, line: usize) -> f64 {
        self.susceptance[scenario][line]
    }

    pub fn flow_limit(&self, scenario: usize, line: usize) -> f64 {
        self.flow_limit[scenario][line]
    }

    pub fn is_outaged(&self, scenario: usize, line: usize) -> bool {
        self.outaged_line[scenario] == Some(line)
    }

    /// A single-scenario set holding just `scenario` of `self` (used when a
    /// consensus layer hands one scenario to its own solver).
    pub fn single(&self, scenario: usize) -> ScenarioSet {
        ScenarioSet {
            outaged_line: vec![self.outaged_line[scenario]],
            susceptance: vec![self.susceptance[scenario].clone()],
            flow_limit: vec![self.flow_limit[scenario].clone()],
        }
    }
}

/// Builds base case plus one scenario per listed line id (1-based).
pub fn generate_scenarios(net: &DtnNetwork, contingency_lines: &[usize]) -> Result<ScenarioSet> {
    let n_lines = net.line_susceptance.len();
    let base_b = net.line_susceptance.clone();
    let base_l = net.line_limit.clone();

    let mut set = ScenarioSet {
        outaged_line: vec![None],
        susceptance: vec![base_b.clone()],
        flow_limit: vec![base_l.clone()],
    };

    for &id in contingency_lines {
        if id == 0 || id > n_lines {
            return Err(GridError::Build(format!(
                "contingency line id {id} out of range 1..={n_lines}"
            )));
        }
        let line = id - 1;
        let mut b = base_b.clone();
        b[line] = 0.0;
        set.outaged_line.push(Some(line));
        set.susceptance.push(b);
        set.flow_limit.push(base_l.clone());
    }

    for scenario in 1..set.len() {
        if !connectivity_check(net, &set, scenario) {
            let line = set.outaged_line[scenario].unwrap();
            let dev = net
                .devices_of(crate::DeviceKind::Line)
                .find(|(_, d)| d.index == line)
                .map(|(i, _)| i)
                .unwrap();
            let ends = &net.devices[dev].terminals;
            return Err(GridError::Islanding {
                line: line + 1,
                from: net.nets[net.terminals[ends[0]].net].bus,
                to: net.nets[net.terminals[ends[1]].net].bus,
            });
        }
    }
    Ok(set)
}

/// True iff the graph over nets, with an edge per line of positive
/// susceptance in `scenario`, is connected.
pub fn connectivity_check(net: &DtnNetwork, set: &ScenarioSet, scenario: usize) -> bool {
    let n = net.n_nets();
    if n <= 1 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for (_, dev) in net.devices_of(crate::DeviceKind::Line) {
        if set.susceptance(scenario, dev.index) > 0.0 {
            let a = net.terminals[dev.terminals[0]].net;
            let b = net.terminals[dev.terminals[1]].net;
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata::{five_bus_text, two_bus_text};
    use crate::DtnNetwork;

    fn five_bus() -> DtnNetwork {
        let case = crate::parse_case_file(&five_bus_text()).unwrap();
        DtnNetwork::build(&case).unwrap()
    }

    #[test]
    fn all_seven_lines_give_eight_scenarios() {
        let net = five_bus();
        let set = generate_scenarios(&net, &[1, 2, 3, 4, 5, 6, 7]).unwrap();
        assert_eq!(set.len(), 8);
        assert_eq!(set.outaged_line[0], None);
        for c in 1..8 {
            let out = set.outaged_line[c].unwrap();
            assert_eq!(set.susceptance(c, out), 0.0);
            // exactly one line zeroed, rest match the base case
            for l in 0..7 {
                if l != out {
                    assert_eq!(set.susceptance(c, l), set.susceptance(0, l));
                }
            }
        }
    }

    #[test]
    fn empty_list_gives_base_case_only() {
        let net = five_bus();
        let set = generate_scenarios(&net, &[]).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.outaged_line[0], None);
    }

    #[test]
    fn radial_line_outage_is_islanding_error() {
        let case = crate::parse_case_file(&two_bus_text()).unwrap();
        let net = DtnNetwork::build(&case).unwrap();
        let err = generate_scenarios(&net, &[1]).unwrap_err();
        assert!(matches!(err, crate::GridError::Islanding { line: 1, .. }), "{err}");
    }

    #[test]
    fn five_bus_stays_connected_without_line_one() {
        let net = five_bus();
        let set = generate_scenarios(&net, &[1]).unwrap();
        assert!(connectivity_check(&net, &set, 1));
    }

    /// Brute-force reachability must agree with the BFS on all sub-10-net
    /// networks we can build by knocking single lines out of the 5-bus case.
    #[test]
    fn connectivity_matches_brute_force() {
        let net = five_bus();
        for line in 0..7 {
            let set = generate_scenarios(&net, &[line + 1]).unwrap();
            for scenario in 0..set.len() {
                let fast = connectivity_check(&net, &set, scenario);
                let slow = brute_force_connected(&net, &set, scenario);
                assert_eq!(fast, slow, "scenario {scenario} of outage {line}");
            }
        }
    }

    fn brute_force_connected(
        net: &DtnNetwork,
        set: &ScenarioSet,
        scenario: usize,
    ) -> bool {
        // Floyd-Warshall style closure over the net adjacency matrix.
        let n = net.n_nets();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for (_, dev) in net.devices_of(crate::DeviceKind::Line) {
            if set.susceptance(scenario, dev.index) > 0.0 {
                let a = net.terminals[dev.terminals[0]].net;
                let b = net.terminals[dev.terminals[1]].net;
                reach[a][b] = true;
                reach[b][a] = true;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        reach.iter().all(|row| row.iter().all(|&x| x))
    }
}
