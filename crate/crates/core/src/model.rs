//! Domain model shared by every other module: nodes, servers, links, tasks
//! and the topology that ties them together.
//!
//! Values are immutable after construction. Functions that "modify" a
//! topology (see [`Topology::with_server`]) return a new value.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::geometry::{satellite_position, OrbitDescriptor, Position};

/// Unique node identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NodeKind {
    Mtd,
    AccessPlatform,
    Satellite,
    Gateway,
    Cloud,
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NodeKind::Mtd => "mtd",
            NodeKind::AccessPlatform => "access-platform",
            NodeKind::Satellite => "satellite",
            NodeKind::Gateway => "gateway",
            NodeKind::Cloud => "cloud",
        };
        f.write_str(s)
    }
}

/// An MEC server carried by a node.
#[derive(Debug, Clone, PartialEq)]
pub struct MecServer {
    /// CPU cycles per second.
    pub capacity: f64,
    /// Power draw while serving, watts.
    pub active_power: f64,
    /// Power draw while powered on but idle, watts.
    pub idle_power: f64,
    /// Activation ratio within the current period, in [0, 1].
    pub activation: f64,
    /// Whether the server hardware is radiation-hardened.
    pub hardened: bool,
}

impl MecServer {
    pub fn new(capacity: f64, active_power: f64, idle_power: f64) -> Self {
        Self {
            capacity,
            active_power,
            idle_power,
            activation: 1.0,
            hardened: false,
        }
    }

    pub fn hardened(mut self) -> Self {
        self.hardened = true;
        self
    }
}

/// Transmit-power cap and process energy budget of an MTD.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MtdParams {
    /// Maximum transmit power, watts.
    pub max_tx_power: f64,
    /// Transmit energy budget for a whole process, joules.
    pub energy_budget: f64,
}

/// Where a node sits: fixed in the ground frame, or on an orbit.
#[derive(Debug, Clone, PartialEq)]
pub enum Location {
    Fixed(Position),
    Orbit(OrbitDescriptor),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
    pub location: Location,
    pub server: Option<MecServer>,
    /// Present for MTD nodes only.
    pub mtd: Option<MtdParams>,
}

impl Node {
    /// Position at time `t`, resolving orbital motion.
    pub fn position_at(&self, t: f64) -> Position {
        match &self.location {
            Location::Fixed(p) => *p,
            Location::Orbit(orbit) => satellite_position(orbit, t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LinkKind {
    UserAccess,
    AccessSatellite,
    UserSatellite,
    Feeder,
    Isl,
    Fiber,
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LinkKind::UserAccess => "user-access",
            LinkKind::AccessSatellite => "access-satellite",
            LinkKind::UserSatellite => "user-satellite",
            LinkKind::Feeder => "feeder",
            LinkKind::Isl => "isl",
            LinkKind::Fiber => "fiber",
        };
        f.write_str(s)
    }
}

/// A directed transmission link. Offloading traffic flows from `src` to
/// `dst`. Fiber links are wired: their transmit time is zero and only the
/// propagation delay counts.
#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub src: NodeId,
    pub dst: NodeId,
    pub kind: LinkKind,
    /// Hertz.
    pub bandwidth: f64,
    /// Noise power spectral density, watts per hertz.
    pub noise_psd: f64,
    /// Activation ratio within the current period, in [0, 1].
    pub activation: f64,
    /// Overrides the geometric propagation delay when set, seconds.
    pub fixed_prop_delay: Option<f64>,
    /// Power draw while carrying traffic, watts (energy accounting only).
    pub active_power: f64,
    /// Power draw while powered on but idle, watts.
    pub idle_power: f64,
}

impl Link {
    pub fn new(src: impl Into<String>, dst: impl Into<String>, kind: LinkKind) -> Self {
        Self {
            src: NodeId::new(src),
            dst: NodeId::new(dst),
            kind,
            bandwidth: 1.0e6,
            noise_psd: 4.0e-21,
            activation: 1.0,
            fixed_prop_delay: None,
            active_power: 0.0,
            idle_power: 0.0,
        }
    }

    pub fn with_bandwidth(mut self, hz: f64) -> Self {
        self.bandwidth = hz;
        self
    }

    pub fn with_noise_psd(mut self, w_per_hz: f64) -> Self {
        self.noise_psd = w_per_hz;
        self
    }

    pub fn with_fixed_prop_delay(mut self, seconds: f64) -> Self {
        self.fixed_prop_delay = Some(seconds);
        self
    }

    pub fn with_power(mut self, active: f64, idle: f64) -> Self {
        self.active_power = active;
        self.idle_power = idle;
        self
    }
}

/// An offloadable computation job.
#[derive(Debug, Clone, PartialEq)]
pub struct Task {
    /// Input data volume, bits.
    pub data_size: f64,
    /// CPU cycles required.
    pub cycles: f64,
    /// The MTD that owns the task.
    pub owner: NodeId,
}

impl Task {
    pub fn new(data_size: f64, cycles: f64, owner: impl Into<String>) -> Self {
        Self {
            data_size,
            cycles,
            owner: NodeId::new(owner),
        }
    }
}

/// The network under study.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Topology {
    pub nodes: Vec<Node>,
    pub links: Vec<Link>,
    /// Labels of the minimal structures composing this topology.
    pub structure_tags: Vec<String>,
}

/// One invariant violation found by [`validate_topology`]. Violations are
/// data, not failures.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    DuplicateNodeId(NodeId),
    InvalidPosition(NodeId),
    InvalidOrbit(NodeId),
    SatelliteNeedsOrbit(NodeId),
    OrbitOnNonSatellite(NodeId),
    MtdHasServer(NodeId),
    MtdMissingParams(NodeId),
    NonMtdWithMtdParams(NodeId),
    CloudLacksServer(NodeId),
    NonpositiveCapacity(NodeId),
    NegativeServerPower(NodeId),
    IdleExceedsActive(NodeId),
    BadServerActivation(NodeId),
    NonpositiveTxPower(NodeId),
    NonpositiveEnergyBudget(NodeId),
    UnknownEndpoint { link: usize, node: NodeId },
    SelfLoop { link: usize },
    NonpositiveBandwidth { link: usize },
    NonpositiveNoise { link: usize },
    BadLinkActivation { link: usize },
    NegativeLinkPower { link: usize },
    NegativePropDelay { link: usize },
    UnreachableMtd(NodeId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateNodeId(id) => write!(f, "duplicate node id {id}"),
            Violation::InvalidPosition(id) => write!(f, "invalid position on node {id}"),
            Violation::InvalidOrbit(id) => write!(f, "invalid orbit on node {id}"),
            Violation::SatelliteNeedsOrbit(id) => {
                write!(f, "satellite {id} needs an orbit descriptor")
            }
            Violation::OrbitOnNonSatellite(id) => {
                write!(f, "orbit descriptor on non-satellite {id}")
            }
            Violation::MtdHasServer(id) => write!(f, "MTD {id} must not carry a server"),
            Violation::MtdMissingParams(id) => {
                write!(f, "MTD {id} lacks transmit power/energy parameters")
            }
            Violation::NonMtdWithMtdParams(id) => {
                write!(f, "non-MTD {id} carries MTD parameters")
            }
            Violation::CloudLacksServer(id) => write!(f, "cloud {id} must carry a server"),
            Violation::NonpositiveCapacity(id) => {
                write!(f, "nonpositive server capacity on node {id}")
            }
            Violation::NegativeServerPower(id) => {
                write!(f, "negative server power on node {id}")
            }
            Violation::IdleExceedsActive(id) => {
                write!(f, "idle power exceeds active power on node {id}")
            }
            Violation::BadServerActivation(id) => {
                write!(f, "server activation outside [0,1] on node {id}")
            }
            Violation::NonpositiveTxPower(id) => {
                write!(f, "nonpositive max transmit power on MTD {id}")
            }
            Violation::NonpositiveEnergyBudget(id) => {
                write!(f, "nonpositive energy budget on MTD {id}")
            }
            Violation::UnknownEndpoint { link, node } => {
                write!(f, "link {link} references unknown node {node}")
            }
            Violation::SelfLoop { link } => write!(f, "link {link} is a self-loop"),
            Violation::NonpositiveBandwidth { link } => {
                write!(f, "nonpositive bandwidth on link {link}")
            }
            Violation::NonpositiveNoise { link } => {
                write!(f, "nonpositive noise density on link {link}")
            }
            Violation::BadLinkActivation { link } => {
                write!(f, "link activation outside [0,1] on link {link}")
            }
            Violation::NegativeLinkPower { link } => {
                write!(f, "negative link power on link {link}")
            }
            Violation::NegativePropDelay { link } => {
                write!(f, "negative propagation delay on link {link}")
            }
            Violation::UnreachableMtd(id) => write!(f, "unreachable MTD {id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    UnknownNode(NodeId),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::UnknownNode(id) => write!(f, "unknown node id {id}"),
        }
    }
}

impl core::error::Error for ModelError {}

/// Whether route discovery may traverse links with activation 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkFilter {
    All,
    ExcludeDeactivated,
}

/// An offloading route: the link index sequence from an MTD to a node with
/// a server, plus the visited node ids (MTD first, server last).
#[derive(Debug, Clone, PartialEq)]
pub struct Route {
    pub server: NodeId,
    pub links: Vec<usize>,
    pub nodes: Vec<NodeId>,
}

impl Route {
    pub fn hops(&self) -> usize {
        self.links.len()
    }
}

impl Topology {
    pub fn node(&self, id: &NodeId) -> Option<&Node> {
        self.nodes.iter().find(|n| &n.id == id)
    }

    pub fn mtd_ids(&self) -> Vec<NodeId> {
        self.nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Mtd)
            .map(|n| n.id.clone())
            .collect()
    }

    pub fn server_ids(&self) -> Vec<NodeId> {
        self.nodes
            .iter()
            .filter(|n| n.server.is_some())
            .map(|n| n.id.clone())
            .collect()
    }

    /// Returns a copy with the server of `id` replaced. Used to align node
    /// definitions before composition.
    pub fn with_server(&self, id: &NodeId, server: MecServer) -> Self {
        let mut out = self.clone();
        for node in &mut out.nodes {
            if &node.id == id {
                node.server = Some(server.clone());
            }
        }
        out
    }

    fn adjacency(&self, filter: LinkFilter) -> BTreeMap<&NodeId, Vec<usize>> {
        let mut adj: BTreeMap<&NodeId, Vec<usize>> = BTreeMap::new();
        for (i, link) in self.links.iter().enumerate() {
            if matches!(filter, LinkFilter::ExcludeDeactivated) && link.activation == 0.0 {
                continue;
            }
            adj.entry(&link.src).or_default().push(i);
        }
        adj
    }
}

/// Checks every type invariant plus MTD-to-server reachability (with all
/// activations treated as 1). Returns an empty report iff the topology is
/// valid. Pure and idempotent.
pub fn validate_topology(topology: &Topology) -> Vec<Violation> {
    let mut report = Vec::new();
    let mut seen: BTreeMap<&NodeId, usize> = BTreeMap::new();
    for node in &topology.nodes {
        *seen.entry(&node.id).or_insert(0) += 1;
    }
    for (id, count) in &seen {
        if *count > 1 {
            report.push(Violation::DuplicateNodeId((*id).clone()));
        }
    }

    for node in &topology.nodes {
        let id = node.id.clone();
        match (&node.location, node.kind) {
            (Location::Fixed(p), NodeKind::Satellite) => {
                let _ = p;
                report.push(Violation::SatelliteNeedsOrbit(id.clone()));
            }
            (Location::Fixed(p), _) => {
                if !p.is_valid() {
                    report.push(Violation::InvalidPosition(id.clone()));
                }
            }
            (Location::Orbit(orbit), NodeKind::Satellite) => {
                if !orbit.is_valid() {
                    report.push(Violation::InvalidOrbit(id.clone()));
                }
            }
            (Location::Orbit(_), _) => {
                report.push(Violation::OrbitOnNonSatellite(id.clone()));
            }
        }
        if let Some(server) = &node.server {
            if node.kind == NodeKind::Mtd {
                report.push(Violation::MtdHasServer(id.clone()));
            }
            if !(server.capacity > 0.0) {
                report.push(Violation::NonpositiveCapacity(id.clone()));
            }
            if server.active_power < 0.0 || server.idle_power < 0.0 {
                report.push(Violation::NegativeServerPower(id.clone()));
            }
            if server.idle_power > server.active_power {
                report.push(Violation::IdleExceedsActive(id.clone()));
            }
            if !(0.0..=1.0).contains(&server.activation) {
                report.push(Violation::BadServerActivation(id.clone()));
            }
        }
        if node.kind == NodeKind::Cloud && node.server.is_none() {
            report.push(Violation::CloudLacksServer(id.clone()));
        }
        match (&node.mtd, node.kind) {
            (Some(params), NodeKind::Mtd) => {
                if !(params.max_tx_power > 0.0) {
                    report.push(Violation::NonpositiveTxPower(id.clone()));
                }
                if !(params.energy_budget > 0.0) {
                    report.push(Violation::NonpositiveEnergyBudget(id.clone()));
                }
            }
            (None, NodeKind::Mtd) => report.push(Violation::MtdMissingParams(id.clone())),
            (Some(_), _) => report.push(Violation::NonMtdWithMtdParams(id.clone())),
            (None, _) => {}
        }
    }

    for (i, link) in topology.links.iter().enumerate() {
        for endpoint in [&link.src, &link.dst] {
            if !seen.contains_key(endpoint) {
                report.push(Violation::UnknownEndpoint {
                    link: i,
                    node: endpoint.clone(),
                });
            }
        }
        if link.src == link.dst {
            report.push(Violation::SelfLoop { link: i });
        }
        if !(link.bandwidth > 0.0) {
            report.push(Violation::NonpositiveBandwidth { link: i });
        }
        if !(link.noise_psd > 0.0) {
            report.push(Violation::NonpositiveNoise { link: i });
        }
        if !(0.0..=1.0).contains(&link.activation) {
            report.push(Violation::BadLinkActivation { link: i });
        }
        if link.active_power < 0.0 || link.idle_power < 0.0 {
            report.push(Violation::NegativeLinkPower { link: i });
        }
        if matches!(link.fixed_prop_delay, Some(d) if d < 0.0) {
            report.push(Violation::NegativePropDelay { link: i });
        }
    }

    // Reachability check only makes sense on structurally sound graphs.
    if report.is_empty() {
        for mtd in topology.mtd_ids() {
            match reachable_servers(topology, &mtd, LinkFilter::All) {
                Ok(routes) if !routes.is_empty() => {}
                _ => report.push(Violation::UnreachableMtd(mtd)),
            }
        }
    }

    report
}

/// Enumerates all simple offloading paths from `mtd` to nodes carrying a
/// server, ordered by hop count first, then lexicographically by the node-id
/// path. Routes may pass through server nodes and continue.
pub fn reachable_servers(
    topology: &Topology,
    mtd: &NodeId,
    filter: LinkFilter,
) -> Result<Vec<Route>, ModelError> {
    if topology.node(mtd).is_none() {
        return Err(ModelError::UnknownNode(mtd.clone()));
    }
    let adj = topology.adjacency(filter);
    let mut routes = Vec::new();
    // BFS over simple paths; desk-scale topologies keep this small.
    let mut queue: VecDeque<(NodeId, Vec<usize>, Vec<NodeId>)> = VecDeque::new();
    queue.push_back((mtd.clone(), Vec::new(), alloc::vec![mtd.clone()]));
    while let Some((at, path_links, path_nodes)) = queue.pop_front() {
        if let Some(outgoing) = adj.get(&at) {
            for &li in outgoing {
                let next = &topology.links[li].dst;
                if path_nodes.contains(next) {
                    continue;
                }
                let mut links = path_links.clone();
                links.push(li);
                let mut nodes = path_nodes.clone();
                nodes.push(next.clone());
                if topology
                    .node(next)
                    .map(|n| n.server.is_some())
                    .unwrap_or(false)
                {
                    routes.push(Route {
                        server: next.clone(),
                        links: links.clone(),
                        nodes: nodes.clone(),
                    });
                }
                queue.push_back((next.clone(), links, nodes));
            }
        }
    }
    routes.sort_by(|a, b| a.hops().cmp(&b.hops()).then_with(|| a.nodes.cmp(&b.nodes)));
    Ok(routes)
}
