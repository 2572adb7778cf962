use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type NodeId = u32;
pub type LinkId = u32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransportError {
    #[error("link {0} references unknown node {1}")]
    UnknownNode(LinkId, NodeId),
    #[error("link {0} has non-positive capacity")]
    BadCapacity(LinkId),
    #[error("link {0} has non-positive free-speed time")]
    BadFreeSpeed(LinkId),
    #[error("duplicate link id {0}")]
    DuplicateLink(LinkId),
    #[error("origin and destination coincide for O-D pair {0}->{1}")]
    DegenerateOd(NodeId, NodeId),
    #[error("O-D pair {0}->{1} references unknown node")]
    UnknownOdNode(NodeId, NodeId),
    #[error("no charging-station path connects {0}->{1}")]
    NoPath(NodeId, NodeId),
    #[error("demand bounds violated for O-D pair {0}->{1} at slot {2}")]
    BadDemandBounds(NodeId, NodeId, usize),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Link {
    pub id: LinkId,
    pub tail: NodeId,
    pub head: NodeId,
    /// Free-speed travel time, minutes.
    pub free_speed_min: f64,
    /// Capacity, p.u. vehicles per hour.
    pub capacity: f64,
    /// Grid bus of the fast charging station on this link, if any.
    pub charging_bus: Option<usize>,
}

/// Directed road graph with charging-station-bearing links.
#[derive(Debug, Clone)]
pub struct TransportNetwork {
    pub nodes: Vec<NodeId>,
    pub links: Vec<Link>,
}

impl TransportNetwork {
    pub fn new(nodes: Vec<NodeId>, links: Vec<Link>) -> Result<Self, TransportError> {
        let net = TransportNetwork { nodes, links };
        net.validate()?;
        Ok(net)
    }

    pub fn validate(&self) -> Result<(), TransportError> {
        let mut seen = std::collections::HashSet::new();
        for l in &self.links {
            if !seen.insert(l.id) {
                return Err(TransportError::DuplicateLink(l.id));
            }
            if !self.nodes.contains(&l.tail) {
                return Err(TransportError::UnknownNode(l.id, l.tail));
            }
            if !self.nodes.contains(&l.head) {
                return Err(TransportError::UnknownNode(l.id, l.head));
            }
            if !(l.capacity > 0.0) {
                return Err(TransportError::BadCapacity(l.id));
            }
            if !(l.free_speed_min > 0.0) {
                return Err(TransportError::BadFreeSpeed(l.id));
            }
        }
        Ok(())
    }

    pub fn link(&self, id: LinkId) -> &Link {
        self.links.iter().find(|l| l.id == id).expect("unknown link id")
    }

    /// Links carrying a charging station, sorted by id.
    pub fn charging_links(&self) -> Vec<&Link> {
        let mut ls: Vec<&Link> = self.links.iter().filter(|l| l.charging_bus.is_some()).collect();
        ls.sort_by_key(|l| l.id);
        ls
    }

    /// Charging buses present in the network, deduplicated, ascending.
    pub fn charging_buses(&self) -> Vec<usize> {
        let mut buses: Vec<usize> = self.links.iter().filter_map(|l| l.charging_bus).collect();
        buses.sort_unstable();
        buses.dedup();
        buses
    }
}

/// Origin-destination pair with an hourly nominal demand profile and box
/// bounds used by the uncertainty machinery.
#[derive(Debug, Clone)]
pub struct OdPair {
    pub origin: NodeId,
    pub destination: NodeId,
    /// Nominal (average) demand per slot, p.u. vehicles/hour.
    pub demand: Vec<f64>,
    pub demand_lo: Vec<f64>,
    pub demand_hi: Vec<f64>,
}

impl OdPair {
    pub fn with_constant_demand(
        origin: NodeId,
        destination: NodeId,
        q: f64,
        slots: usize,
    ) -> Self {
        OdPair {
            origin,
            destination,
            demand: vec![q; slots],
            demand_lo: vec![q; slots],
            demand_hi: vec![q; slots],
        }
    }

    pub fn validate(&self, net: &TransportNetwork) -> Result<(), TransportError> {
        if self.origin == self.destination {
            return Err(TransportError::DegenerateOd(self.origin, self.destination));
        }
        if !net.nodes.contains(&self.origin) || !net.nodes.contains(&self.destination) {
            return Err(TransportError::UnknownOdNode(self.origin, self.destination));
        }
        for t in 0..self.demand.len() {
            let (lo, q, hi) = (self.demand_lo[t], self.demand[t], self.demand_hi[t]);
            if !(0.0 <= lo && lo <= q && q <= hi) {
                return Err(TransportError::BadDemandBounds(self.origin, self.destination, t));
            }
        }
        Ok(())
    }
}
