//! Devices-terminals-nets representation of the grid.
//!
//! Each device (generator, transmission line, load) exposes one terminal per
//! point of connection; each terminal attaches to exactly one net (bus). Nets
//! enforce zero average power and equal angles across their terminals. The
//! terminal list is ordered lexicographically by (device kind, device index,
//! terminal slot) so that every reduction over terminals is deterministic.

use crate::{CaseSpec, GridError, Result};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeviceKind {
    Generator,
    Line,
    Load,
}

#[derive(Debug, Clone)]
pub struct Device {
    pub kind: DeviceKind,
    /// Index into the corresponding `CaseSpec` vector.
    pub index: usize,
    /// Terminal ids owned by this device (1 for gen/load, 2 for a line).
    pub terminals: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct Terminal {
    pub device: usize,
    /// Slot within the device: 0, or 1 for a line's to-bus end.
    pub slot: usize,
    pub net: usize,
}

#[derive(Debug, Clone)]
pub struct Net {
    /// External bus id this net represents.
    pub bus: usize,
    pub terminals: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct DtnNetwork {
    pub base_mva: f64,
    pub devices: Vec<Device>,
    pub terminals: Vec<Terminal>,
    pub nets: Vec<Net>,
    /// Line susceptance 1/x, pu, indexed by line (base case).
    pub line_susceptance: Vec<f64>,
    /// Line thermal limit, pu, indexed by line.
    pub line_limit: Vec<f64>,
    bus_to_net: BTreeMap<usize, usize>,
}

impl DtnNetwork {
    /// Builds the network from a validated case. One net per bus; terminals
    /// ordered generators, then lines (from-end, to-end), then loads.
    pub fn build(case: &CaseSpec) -> Result<Self> {
        let mut bus_to_net = BTreeMap::new();
        let mut nets: Vec<Net> = Vec::with_capacity(case.buses.len());
        for &bus in &case.buses {
            if bus_to_net.insert(bus, nets.len()).is_some() {
                return Err(GridError::Build(format!("duplicate bus id {bus}")));
            }
            nets.push(Net {
                bus,
                terminals: Vec::new(),
            });
        }
        let net_of = |bus: usize, what: &str| -> Result<usize> {
            bus_to_net
                .get(&bus)
                .copied()
                .ok_or_else(|| GridError::Build(format!("{what} references unknown bus {bus}")))
        };

        let mut devices = Vec::new();
        let mut terminals: Vec<Terminal> = Vec::new();
        let mut attach = |devices: &mut Vec<Device>,
                          nets: &mut Vec<Net>,
                          kind: DeviceKind,
                          index: usize,
                          net_ids: &[usize]| {
            let dev = devices.len();
            let mut owned = Vec::with_capacity(net_ids.len());
            for (slot, &net) in net_ids.iter().enumerate() {
                let t = terminals.len();
                terminals.push(Terminal {
                    device: dev,
                    slot,
                    net,
                });
                nets[net].terminals.push(t);
                owned.push(t);
            }
            devices.push(Device {
                kind,
                index,
                terminals: owned,
            });
        };

        for (i, g) in case.generators.iter().enumerate() {
            let n = net_of(g.bus, &format!("generator {}", i + 1))?;
            attach(&mut devices, &mut nets, DeviceKind::Generator, i, &[n]);
        }
        for (i, l) in case.lines.iter().enumerate() {
            let nf = net_of(l.from_bus, &format!("line {}", i + 1))?;
            let nt = net_of(l.to_bus, &format!("line {}", i + 1))?;
            attach(&mut devices, &mut nets, DeviceKind::Line, i, &[nf, nt]);
        }
        for (i, d) in case.loads.iter().enumerate() {
            let n = net_of(d.bus, &format!("load {}", i + 1))?;
            attach(&mut devices, &mut nets, DeviceKind::Load, i, &[n]);
        }

        for net in &nets {
            if net.terminals.is_empty() {
                return Err(GridError::Build(format!(
                    "bus {} has no connected device",
                    net.bus
                )));
            }
        }

        let line_susceptance = case.lines.iter().map(|l| 1.0 / l.reactance).collect();
        let line_limit = case
            .lines
            .iter()
            .map(|l| l.flow_limit / case.base_mva)
            .collect();

        Ok(DtnNetwork {
            base_mva: case.base_mva,
            devices,
            terminals,
            nets,
            line_susceptance,
            line_limit,
            bus_to_net,
        })
    }

    pub fn net_of_bus(&self, bus: usize) -> Option<usize> {
        self.bus_to_net.get(&bus).copied()
    }

    pub fn n_terminals(&self) -> usize {
        self.terminals.len()
    }

    pub fn n_nets(&self) -> usize {
        self.nets.len()
    }

    /// Devices of one kind, in construction order.
    pub fn devices_of(&self, kind: DeviceKind) -> impl Iterator<Item = (usize, &Device)> {
        self.devices
            .iter()
            .enumerate()
            .filter(move |(_, d)| d.kind == kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata::{five_bus_text, two_bus_text};

    #[test]
    fn five_bus_counts() {
        let case = crate::parse_case_file(&five_bus_text()).unwrap();
        let net = DtnNetwork::build(&case).unwrap();
        assert_eq!(net.n_nets(), 5);
        // 2 generators + 2*7 line ends + 4 loads
        assert_eq!(net.n_terminals(), 2 + 14 + 4);
        let dev_terms: usize = net.devices.iter().map(|d| d.terminals.len()).sum();
        assert_eq!(dev_terms, net.n_terminals());
    }

    #[test]
    fn single_bus_two_terminals() {
        let text = r#"{
          "base_mva": 100.0, "buses": [7],
          "generators": [{"bus": 7, "a": 0.1, "b": 1.0, "c": 0.0, "p_max": 10.0, "p_min": 0.0, "r_up": 10.0, "r_down": -10.0, "sched_mw": 5.0}],
          "lines": [],
          "loads": [{"bus": 7, "mw": 5.0}],
          "horizon": 1,
          "forecast": [[{"bus": 7, "mw": 5.0}]],
          "contingencies": []
        }"#;
        let case = crate::parse_case_file(text).unwrap();
        let net = DtnNetwork::build(&case).unwrap();
        assert_eq!(net.n_nets(), 1);
        assert_eq!(net.nets[0].terminals.len(), 2);
    }

    #[test]
    fn per_unit_identity() {
        let case = crate::parse_case_file(&two_bus_text()).unwrap();
        let net = DtnNetwork::build(&case).unwrap();
        // 50 MW limit on a 100 MVA base
        assert_eq!(net.line_limit[0], 0.5);
        assert!((net.line_susceptance[0] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_bus_is_build_error() {
        let mut case = crate::parse_case_file(&two_bus_text()).unwrap();
        case.lines[0].to_bus = 9;
        let err = DtnNetwork::build(&case).unwrap_err();
        assert!(err.to_string().contains("unknown bus 9"), "{err}");
    }

    #[test]
    fn every_terminal_has_one_device_and_one_net() {
        let case = crate::parse_case_file(&five_bus_text()).unwrap();
        let net = DtnNetwork::build(&case).unwrap();
        for (t, term) in net.terminals.iter().enumerate() {
            assert!(net.devices[term.device].terminals.contains(&t));
            assert!(net.nets[term.net].terminals.contains(&t));
        }
    }
}
