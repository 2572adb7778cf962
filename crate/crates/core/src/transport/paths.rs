//! Exhaustive simple-path enumeration filtered to charging-capable routes.

use std::collections::HashMap;

use super::network::{LinkId, NodeId, OdPair, TransportError, TransportNetwork};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub links: Vec<LinkId>,
}

impl Path {
    pub fn free_speed_min(&self, net: &TransportNetwork) -> f64 {
        self.links.iter().map(|&l| net.link(l).free_speed_min).sum()
    }

    /// Charging buses passed by the path, ascending.
    pub fn charging_buses(&self, net: &TransportNetwork) -> Vec<usize> {
        let mut buses: Vec<usize> =
            self.links.iter().filter_map(|&l| net.link(l).charging_bus).collect();
        buses.sort_unstable();
        buses
    }
}

/// Per-O-D route sets with link-path and bus-path incidence.
#[derive(Debug, Clone)]
pub struct PathSet {
    /// paths[od_index] = ordered routes for that pair.
    pub paths: Vec<Vec<Path>>,
    /// Set when enumeration truncated at the cap for an O-D pair.
    pub truncated: Vec<bool>,
}

impl PathSet {
    pub fn link_on_path(&self, net: &TransportNetwork, od: usize, p: usize, link: LinkId) -> bool {
        let _ = net;
        self.paths[od][p].links.contains(&link)
    }

    pub fn bus_on_path(&self, net: &TransportNetwork, od: usize, p: usize, bus: usize) -> bool {
        self.paths[od][p].charging_buses(net).contains(&bus)
    }

    /// Every link that appears on at least one enumerated path, ascending.
    pub fn active_links(&self) -> Vec<LinkId> {
        let mut ids: Vec<LinkId> =
            self.paths.iter().flatten().flat_map(|p| p.links.iter().copied()).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}

/// All simple directed paths from origin to destination that pass at least one
/// charging station, capped to the `cap` shortest by free-speed time.
/// Ordering is deterministic: ascending free-speed time, ties by lexicographic
/// link ids.
pub fn enumerate_paths(
    net: &TransportNetwork,
    od: &OdPair,
    cap: usize,
) -> Result<(Vec<Path>, bool), TransportError> {
    od.validate(net)?;
    let mut adjacency: HashMap<NodeId, Vec<(LinkId, NodeId)>> = HashMap::new();
    for l in &net.links {
        adjacency.entry(l.tail).or_default().push((l.id, l.head));
    }
    for nexts in adjacency.values_mut() {
        nexts.sort_by(|a, b| {
            let ta = net.link(a.0).free_speed_min;
            let tb = net.link(b.0).free_speed_min;
            ta.partial_cmp(&tb).unwrap().then(a.0.cmp(&b.0))
        });
    }

    let mut found: Vec<Path> = Vec::new();
    let mut stack_links: Vec<LinkId> = Vec::new();
    let mut visited: Vec<NodeId> = vec![od.origin];
    dfs(
        net,
        &adjacency,
        od.destination,
        od.origin,
        &mut visited,
        &mut stack_links,
        &mut found,
    );

    found.sort_by(|a, b| {
        a.free_speed_min(net)
            .partial_cmp(&b.free_speed_min(net))
            .unwrap()
            .then_with(|| a.links.cmp(&b.links))
    });
    if found.is_empty() {
        return Err(TransportError::NoPath(od.origin, od.destination));
    }
    let truncated = found.len() > cap;
    found.truncate(cap);
    Ok((found, truncated))
}

fn dfs(
    net: &TransportNetwork,
    adjacency: &HashMap<NodeId, Vec<(LinkId, NodeId)>>,
    dest: NodeId,
    node: NodeId,
    visited: &mut Vec<NodeId>,
    stack: &mut Vec<LinkId>,
    out: &mut Vec<Path>,
) {
    if node == dest {
        let candidate = Path { links: stack.clone() };
        if !candidate.charging_buses(net).is_empty() {
            out.push(candidate);
        }
        return;
    }
    if let Some(nexts) = adjacency.get(&node) {
        for &(lid, head) in nexts {
            if visited.contains(&head) {
                continue;
            }
            visited.push(head);
            stack.push(lid);
            dfs(net, adjacency, dest, head, visited, stack, out);
            stack.pop();
            visited.pop();
        }
    }
}

/// Builds the PathSet for all O-D pairs.
pub fn build_path_set(
    net: &TransportNetwork,
    ods: &[OdPair],
    cap: usize,
) -> Result<PathSet, TransportError> {
    let mut paths = Vec::with_capacity(ods.len());
    let mut truncated = Vec::with_capacity(ods.len());
    for od in ods {
        let (ps, tr) = enumerate_paths(net, od, cap)?;
        paths.push(ps);
        truncated.push(tr);
    }
    Ok(PathSet { paths, truncated })
}
