//! Seeded graph generators.
//!
//! Every model draws from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)` on a stream reserved for the model, so the output
//! is a pure function of `(model, params, seed)` on every platform.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// Each unordered pair with probability `p`, as two directed edges with
    /// independent weights.
    GnpBidirected,
    /// Each ordered pair with probability `p`.
    GnpDirected,
    /// `0 -> 1 -> ... -> n-1 -> 0`.
    Cycle,
    /// Layers of width `ceil(sqrt n)`; each pair of consecutive layers,
    /// including last to first, is joined forward with probability `p`.
    Layered,
    /// Directed torus: right and down neighbors with wrap-around on an
    /// `r x (n / r)` grid, `r` the largest divisor of `n` not above `sqrt n`.
    GridTorus,
}

impl Model {
    pub const ALL: [Model; 5] = [
        Model::GnpBidirected,
        Model::GnpDirected,
        Model::Cycle,
        Model::Layered,
        Model::GridTorus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::GnpBidirected => "gnp-bidirected",
            Model::GnpDirected => "gnp-directed",
            Model::Cycle => "cycle",
            Model::Layered => "layered",
            Model::GridTorus => "grid-torus",
        }
    }

    fn stream(self) -> u64 {
        self as u64
    }

    fn needs_probability(self) -> bool {
        matches!(self, Model::GnpBidirected | Model::GnpDirected | Model::Layered)
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown model '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    pub n: usize,
    /// Edge probability; ignored by `cycle` and `grid-torus`.
    pub p: Option<f64>,
    pub wmin: f64,
    pub wmax: f64,
}

impl GenParams {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            p: None,
            wmin: 1.0,
            wmax: 1.0,
        }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_weights(mut self, wmin: f64, wmax: f64) -> Self {
        self.wmin = wmin;
        self.wmax = wmax;
        self
    }
}

struct WeightSampler {
    wmin: f64,
    wmax: f64,
}

impl WeightSampler {
    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        if self.wmin == self.wmax {
            self.wmin
        } else {
            rng.gen_range(self.wmin..=self.wmax)
        }
    }
}

pub fn generate(model: Model, params: &GenParams, seed: u64) -> Result<Graph> {
    let GenParams { n, p, wmin, wmax } = *params;
    if !(wmin >= 1.0 && wmin <= wmax && wmax.is_finite()) {
        return Err(Error::Parameter(format!("weights need 1 <= wmin <= wmax < inf, got [{wmin}, {wmax}]")));
    }
    let p = match p {
        Some(p) if !(0.0..=1.0).contains(&p) => {
            return Err(Error::Parameter(format!("edge probability {p} is outside [0, 1]")))
        }
        Some(p) => p,
        None if model.needs_probability() => {
            return Err(Error::Parameter(format!("model {model} needs an edge probability")))
        }
        None => 0.0,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(model.stream());
    let weights = WeightSampler { wmin, wmax };
    let mut edges = Vec::new();

    match model {
        Model::GnpBidirected => {
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        let a = weights.draw(&mut rng);
                        let b = weights.draw(&mut rng);
                        edges.push((u, v, a));
                        edges.push((v, u, b));
                    }
                }
            }
        }
        Model::GnpDirected => {
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(p) {
                        edges.push((u, v, weights.draw(&mut rng)));
                    }
                }
            }
        }
        Model::Cycle => {
            if n >= 2 {
                for u in 0..n {
                    edges.push((u, (u + 1) % n, weights.draw(&mut rng)));
                }
            }
        }
        Model::Layered => {
            let width = (n as f64).sqrt().ceil().max(1.0) as usize;
            let layers = n.div_ceil(width);
            if layers >= 2 {
                let layer = |i: usize| (i * width)..((i + 1) * width).min(n);
                for i in 0..layers {
                    let next = (i + 1) % layers;
                    for u in layer(i) {
                        for v in layer(next) {
                            if rng.gen_bool(p) {
                                edges.push((u, v, weights.draw(&mut rng)));
                            }
                        }
                    }
                }
            }
        }
        Model::GridTorus => {
            let rows = (1..=n).take_while(|r| r * r <= n).filter(|r| n % r == 0).last().unwrap_or(1);
            let cols = if n == 0 { 0 } else { n / rows };
            for r in 0..rows {
                for c in 0..cols {
                    let u = r * cols + c;
                    if cols > 1 {
                        edges.push((u, r * cols + (c + 1) % cols, weights.draw(&mut rng)));
                    }
                    if rows > 1 {
                        edges.push((u, ((r + 1) % rows) * cols + c, weights.draw(&mut rng)));
                    }
                }
            }
        }
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::all_pairs_roundtrip;

    #[test]
    fn unit_cycle_roundtrips_are_n() {
        let g = generate(Model::Cycle, &GenParams::new(5), 0).unwrap();
        assert_eq!(g.m(), 5);
        let d = all_pairs_roundtrip(&g);
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    assert_eq!(d[u][v], 5.0);
                }
            }
        }
    }

    #[test]
    fn same_seed_same_graph() {
        for model in Model::ALL {
            let params = GenParams::new(30).with_p(0.2).with_weights(1.0, 50.0);
            let a = generate(model, &params, 7).unwrap();
            let b = generate(model, &params, 7).unwrap();
            assert_eq!(
                crate::io::write_graph(&a, None),
                crate::io::write_graph(&b, None),
                "{model}"
            );
        }
    }

    #[test]
    fn zero_probability_is_empty() {
        let g = generate(Model::GnpDirected, &GenParams::new(20).with_p(0.0), 3).unwrap();
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn bidirected_edges_come_in_pairs() {
        let g = generate(Model::GnpBidirected, &GenParams::new(25).with_p(0.3).with_weights(1.0, 9.0), 1).unwrap();
        assert_eq!(g.m() % 2, 0);
        for (_, e) in g.edges() {
            assert!(g.out_adj(e.head).iter().any(|&(w, _)| w == e.tail));
            assert!((1.0..=9.0).contains(&e.weight));
        }
    }

    #[test]
    fn torus_and_layered_are_strongly_connected() {
        let g = generate(Model::GridTorus, &GenParams::new(12), 0).unwrap();
        assert_eq!(g.m(), 24);
        assert_eq!(g.scc_count(), 1);
        let g = generate(Model::Layered, &GenParams::new(16).with_p(1.0), 0).unwrap();
        assert_eq!(g.m(), 4 * 16);
        assert_eq!(g.scc_count(), 1);
    }

    #[test]
    fn invalid_parameters() {
        assert!(generate(Model::GnpDirected, &GenParams::new(5), 0).is_err());
        assert!(generate(Model::GnpDirected, &GenParams::new(5).with_p(1.5), 0).is_err());
        assert!(generate(Model::Cycle, &GenParams::new(5).with_weights(0.5, 2.0), 0).is_err());
        assert!(generate(Model::Cycle, &GenParams::new(5).with_weights(3.0, 2.0), 0).is_err());
        assert!("nope".parse::<Model>().is_err());
        assert_eq!("grid-torus".parse::<Model>().unwrap(), Model::GridTorus);
    }
}
