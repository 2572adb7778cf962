//! BPR latency curve and its piecewise linearization.
//!
//! Two piecewise-linear views share the same equally spaced breakpoints
//! k*C/H on [0, C]:
//!   * `delay_slopes` interpolate the per-vehicle congestion delay
//!     0.15*t0*(x/C)^4 (used inside path-cost expressions), and
//!   * `product_slopes` interpolate the flow-weighted congestion
//!     0.15*t0*(x/C)^4 * x (used in objectives).
//! Both slope sequences are non-decreasing, so a greedy segment fill
//! reproduces the interpolant exactly.

use super::network::{Link, LinkId, TransportNetwork};

/// Eq-of-record latency: t0 * (1 + 0.15 (x/C)^4), minutes. The capacity is a
/// hard cap; callers must not evaluate beyond it.
pub fn bpr_latency(link: &Link, flow: f64) -> Result<f64, String> {
    Ok(link.free_speed_min + congestion_delay(link, flow)?)
}

/// Congestion delay 0.15 * t0 * (x/C)^4, minutes.
pub fn congestion_delay(link: &Link, flow: f64) -> Result<f64, String> {
    if flow < 0.0 {
        return Err(format!("negative flow {flow} on link {}", link.id));
    }
    if flow > link.capacity * (1.0 + 1e-9) {
        return Err(format!(
            "flow {flow} exceeds capacity {} on link {}",
            link.capacity, link.id
        ));
    }
    Ok(0.15 * link.free_speed_min * (flow / link.capacity).powi(4))
}

#[derive(Debug, Clone)]
pub struct LinkPwl {
    pub link: LinkId,
    /// Segment width C/H, p.u.
    pub seg_width: f64,
    /// Per-vehicle delay slope per segment, min per p.u.
    pub delay_slopes: Vec<f64>,
    /// Flow-weighted delay slope per segment, min per p.u. (of delay*flow).
    pub product_slopes: Vec<f64>,
}

impl LinkPwl {
    /// Exact value of the delay interpolant at a flow (greedy fill).
    pub fn delay_at(&self, flow: f64) -> f64 {
        self.eval(&self.delay_slopes, flow)
    }

    /// Exact value of the flow-weighted interpolant at a flow.
    pub fn product_at(&self, flow: f64) -> f64 {
        self.eval(&self.product_slopes, flow)
    }

    fn eval(&self, slopes: &[f64], flow: f64) -> f64 {
        let mut rest = flow;
        let mut acc = 0.0;
        for &g in slopes {
            let step = rest.min(self.seg_width);
            if step <= 0.0 {
                break;
            }
            acc += g * step;
            rest -= step;
        }
        acc
    }
}

/// Piecewise linearization of every link's congestion delay with H segments.
#[derive(Debug, Clone)]
pub struct PwlBpr {
    pub segments: usize,
    links: Vec<LinkPwl>,
}

impl PwlBpr {
    pub fn by_link(&self, id: LinkId) -> &LinkPwl {
        self.links.iter().find(|l| l.link == id).expect("unknown link in PWL table")
    }

    pub fn links(&self) -> &[LinkPwl] {
        &self.links
    }
}

/// Builds the H-segment linearization; x_max is the link capacity since flows
/// are hard-capped there.
pub fn linearize_bpr(net: &TransportNetwork, segments: usize) -> PwlBpr {
    assert!(segments >= 1, "need at least one segment");
    let links = net
        .links
        .iter()
        .map(|l| {
            let width = l.capacity / segments as f64;
            let delay = |x: f64| 0.15 * l.free_speed_min * (x / l.capacity).powi(4);
            let mut delay_slopes = Vec::with_capacity(segments);
            let mut product_slopes = Vec::with_capacity(segments);
            for h in 0..segments {
                let x0 = width * h as f64;
                let x1 = width * (h + 1) as f64;
                delay_slopes.push((delay(x1) - delay(x0)) / width);
                product_slopes.push((delay(x1) * x1 - delay(x0) * x0) / width);
            }
            LinkPwl { link: l.id, seg_width: width, delay_slopes, product_slopes }
        })
        .collect();
    PwlBpr { segments, links }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transport::network::Link;

    fn link1() -> Link {
        Link {
            id: 1,
            tail: 1,
            head: 2,
            free_speed_min: 6.0,
            capacity: 18.0,
            charging_bus: None,
        }
    }

    #[test]
    fn latency_examples() {
        let l = link1();
        assert!((bpr_latency(&l, 18.0).unwrap() - 6.9).abs() < 1e-12);
        assert!((bpr_latency(&l, 0.0).unwrap() - 6.0).abs() < 1e-12);
        // direct evaluation: 6*(1+0.15*(0.5)^4) = 6.05625
        assert!((bpr_latency(&l, 9.0).unwrap() - 6.05625).abs() < 1e-12);
        assert!(bpr_latency(&l, -1.0).is_err());
        assert!(bpr_latency(&l, 18.5).is_err());
    }

    #[test]
    fn delay_examples() {
        let l = link1();
        assert!((congestion_delay(&l, 18.0).unwrap() - 0.9).abs() < 1e-12);
        assert_eq!(congestion_delay(&l, 0.0).unwrap(), 0.0);
        let l2 = Link { id: 2, capacity: 8.5, ..link1() };
        // 0.15*6*(0.5)^4 = 0.05625
        assert!((congestion_delay(&l2, 4.25).unwrap() - 0.05625).abs() < 1e-12);
    }

    #[test]
    fn pwl_slopes_match_secants() {
        let net =
            TransportNetwork::new(vec![1, 2], vec![link1()]).unwrap();
        let one = linearize_bpr(&net, 1);
        // secant of the delay over [0, 18]: 0.9/18 = 0.05
        assert!((one.by_link(1).delay_slopes[0] - 0.05).abs() < 1e-12);

        let two = linearize_bpr(&net, 2);
        let s = &two.by_link(1).delay_slopes;
        assert!((s[0] - 0.05625 / 9.0).abs() < 1e-12);
        assert!((s[1] - (0.9 - 0.05625) / 9.0).abs() < 1e-12);
        // non-decreasing slopes (convexity)
        assert!(s[0] <= s[1]);
    }

    #[test]
    fn pwl_interpolates_at_breakpoints_and_overestimates_between() {
        let net = TransportNetwork::new(vec![1, 2], vec![link1()]).unwrap();
        let pwl = linearize_bpr(&net, 5);
        let l = link1();
        let lp = pwl.by_link(1);
        for k in 0..=5 {
            let x = 18.0 * k as f64 / 5.0;
            let exact = congestion_delay(&l, x).unwrap();
            assert!((lp.delay_at(x) - exact).abs() < 1e-12, "breakpoint {k}");
            assert!((lp.product_at(x) - exact * x).abs() < 1e-9, "product breakpoint {k}");
        }
        for i in 0..50 {
            let x = 18.0 * (i as f64 + 0.5) / 50.0;
            let exact = congestion_delay(&l, x).unwrap();
            assert!(lp.delay_at(x) >= exact - 1e-12, "chords lie above the curve");
        }
    }
}
