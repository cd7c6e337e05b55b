//! Browser demo of the HHO-MLP building blocks: the hawk hunt on classic
//! 2-D benchmark surfaces, the Lévy-flight random walk behind the rapid
//! dives, and network training on a separable traffic-like fixture.
//!
//! Everything here is seeded, so replaying a run with the same controls
//! reproduces the identical animation. The compute paths are plain Rust
//! (tested on the host); the `wasm_bindgen` layer only adapts errors.

use wasm_bindgen::prelude::*;

use hho_mlp::data::{self, Dataset, EncodingPolicy};
use hho_mlp::hho::{self, Bounds, FnObjective, SwarmConfig};
use hho_mlp::mlp;
use hho_mlp::rng::DeterministicRng;
use hho_mlp::synth;
use hho_mlp::train::{self, TrainConfig};

type Surface = fn(f64, f64) -> f64;

fn benchmark(name: &str) -> Result<(Surface, f64), String> {
    // (function, half-width of the square domain)
    match name {
        "sphere" => Ok((|x, y| x * x + y * y, 5.0)),
        "rastrigin" => Ok((
            |x, y| {
                20.0 + x * x - 10.0 * (std::f64::consts::TAU * x).cos() + y * y
                    - 10.0 * (std::f64::consts::TAU * y).cos()
            },
            5.12,
        )),
        "ackley" => Ok((
            |x, y| {
                let a = -20.0 * (-0.2 * (0.5 * (x * x + y * y)).sqrt()).exp();
                let b = -(0.5
                    * ((std::f64::consts::TAU * x).cos() + (std::f64::consts::TAU * y).cos()))
                .exp();
                a + b + 20.0 + std::f64::consts::E
            },
            5.0,
        )),
        "himmelblau" => Ok((
            |x, y| {
                let p = x * x + y - 11.0;
                let q = x + y * y - 7.0;
                p * p + q * q
            },
            5.0,
        )),
        other => Err(format!("unknown function {other:?}")),
    }
}

/// A recorded optimization run on a 2-D benchmark: hawk positions and the
/// incumbent prey after every evaluation sweep.
#[wasm_bindgen]
pub struct HawkHunt {
    n_hawks: usize,
    iterations: usize,
    half_width: f64,
    positions: Vec<f64>,
    prey: Vec<f64>,
    history: Vec<f64>,
    objective: Surface,
}

impl HawkHunt {
    fn run_impl(
        function: &str,
        hawks: usize,
        iterations: usize,
        seed: u32,
    ) -> Result<HawkHunt, String> {
        let (f, half_width) = benchmark(function)?;
        let objective = FnObjective::new(2, move |x: &[f64]| f(x[0], x[1]));
        let bounds =
            Bounds::uniform(2, -half_width, half_width).map_err(|e| e.to_string())?;
        let config = SwarmConfig::new(hawks, iterations, u64::from(seed));

        let mut positions = Vec::with_capacity(iterations * hawks * 2);
        let mut prey = Vec::with_capacity(iterations * 2);
        let outcome = hho::optimize_observed(&objective, &config, &bounds, |_, swarm, best| {
            for hawk in swarm {
                positions.push(hawk.position[0]);
                positions.push(hawk.position[1]);
            }
            prey.push(best.position[0]);
            prey.push(best.position[1]);
        })
        .map_err(|e| e.to_string())?;

        Ok(HawkHunt {
            n_hawks: hawks,
            iterations,
            half_width,
            positions,
            prey,
            history: outcome.history,
            objective: f,
        })
    }

    fn field_impl(&self, width: usize, height: usize) -> Vec<f64> {
        let mut values = Vec::with_capacity(width * height);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for j in 0..height {
            let y = self.half_width - 2.0 * self.half_width * (j as f64 + 0.5) / height as f64;
            for i in 0..width {
                let x =
                    -self.half_width + 2.0 * self.half_width * (i as f64 + 0.5) / width as f64;
                let v = (self.objective)(x, y);
                lo = lo.min(v);
                hi = hi.max(v);
                values.push(v);
            }
        }
        let span = (hi - lo).max(f64::MIN_POSITIVE);
        for v in &mut values {
            *v = (*v - lo) / span;
        }
        values
    }
}

#[wasm_bindgen]
impl HawkHunt {
    /// Run the optimizer and record the full trace.
    pub fn run(
        function: &str,
        hawks: usize,
        iterations: usize,
        seed: u32,
    ) -> Result<HawkHunt, JsValue> {
        Self::run_impl(function, hawks, iterations, seed).map_err(|e| JsValue::from_str(&e))
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn n_hawks(&self) -> usize {
        self.n_hawks
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Hawk coordinates at one iteration, flattened (x0, y0, x1, y1, ...).
    pub fn positions_at(&self, iteration: usize) -> Vec<f64> {
        let stride = self.n_hawks * 2;
        let start = iteration.min(self.iterations - 1) * stride;
        self.positions[start..start + stride].to_vec()
    }

    /// Prey coordinates at one iteration (x, y).
    pub fn prey_at(&self, iteration: usize) -> Vec<f64> {
        let start = iteration.min(self.iterations - 1) * 2;
        self.prey[start..start + 2].to_vec()
    }

    pub fn history(&self) -> Vec<f64> {
        self.history.clone()
    }

    /// Objective sampled on a width×height grid over the domain, row-major
    /// from the top; values normalized to [0, 1] for direct color mapping.
    pub fn field(&self, width: usize, height: usize) -> Vec<f64> {
        self.field_impl(width, height)
    }
}

/// Mantegna scale factor for the current exponent, for display.
#[wasm_bindgen]
pub fn levy_sigma_of(beta: f64) -> f64 {
    hho::levy_sigma(beta)
}

/// Cumulative 2-D Lévy walk: `steps + 1` points flattened as (x, y) pairs,
/// starting at the origin. Steps are drawn exactly like the optimizer's
/// rapid-dive perturbations.
#[wasm_bindgen]
pub fn levy_walk(beta: f64, steps: usize, seed: u32) -> Vec<f64> {
    let mut rng = DeterministicRng::from_seed(u64::from(seed));
    let mut path = Vec::with_capacity((steps + 1) * 2);
    let (mut x, mut y) = (0.0, 0.0);
    path.push(x);
    path.push(y);
    for _ in 0..steps {
        let step = hho::levy_flight(2, beta, &mut rng);
        x += step[0];
        y += step[1];
        path.push(x);
        path.push(y);
    }
    path
}

/// A trained detector on the two-feature separable fixture, with the data
/// points and the decision surface for drawing.
#[wasm_bindgen]
pub struct TrainingDemo {
    points: Vec<f64>,
    labels: Vec<u8>,
    history: Vec<f64>,
    accuracy: f64,
    surface_model: SurfaceModel,
}

struct SurfaceModel {
    topology: mlp::MlpTopology,
    params: mlp::MlpParams,
    mins: Vec<f64>,
    maxs: Vec<f64>,
}

impl TrainingDemo {
    fn run_impl(
        rows: usize,
        hawks: usize,
        iterations: usize,
        seed: u32,
    ) -> Result<TrainingDemo, String> {
        let to_s = |e: hho_mlp::Error| e.to_string();
        let (schema, records) = synth::separable2(rows.max(10), u64::from(seed));
        let labels = data::binarize_labels(&records).map_err(to_s)?;
        let (matrix, names, _) =
            data::encode_categoricals(&records, &schema, EncodingPolicy::Ordinal).map_err(to_s)?;
        let points: Vec<f64> = matrix.iter().flat_map(|row| row.iter().copied()).collect();
        let dataset = Dataset::new(matrix, labels.clone(), names).map_err(to_s)?;
        let stats = dataset.fit_norm_stats(0.0, 1.0).map_err(to_s)?;
        let dataset = dataset.normalize(&stats).map_err(to_s)?;

        let topology = mlp::MlpTopology::new(2, vec![5, 5], 1).map_err(to_s)?;
        let config = TrainConfig::new(
            topology.clone(),
            SwarmConfig::new(hawks, iterations, u64::from(seed)),
        );
        let model = train::train(&dataset, &config).map_err(to_s)?;
        let report = train::evaluate(&model, &dataset).map_err(to_s)?;

        Ok(TrainingDemo {
            points,
            labels,
            history: model.fitness_history.clone(),
            accuracy: report.accuracy,
            surface_model: SurfaceModel {
                topology,
                params: model.params,
                mins: stats.mins,
                maxs: stats.maxs,
            },
        })
    }

    fn surface_impl(&self, width: usize, height: usize) -> Vec<f64> {
        let m = &self.surface_model;
        let mut values = Vec::with_capacity(width * height);
        let normalize = |v: f64, d: usize| -> f64 {
            if m.mins[d] == m.maxs[d] {
                0.0
            } else {
                ((v - m.mins[d]) / (m.maxs[d] - m.mins[d])).clamp(0.0, 1.0)
            }
        };
        for j in 0..height {
            let y = 1.0 - (j as f64 + 0.5) / height as f64;
            for i in 0..width {
                let x = (i as f64 + 0.5) / width as f64;
                let input = [normalize(x, 0), normalize(y, 1)];
                let out = mlp::forward(&m.topology, &m.params, &input)
                    .expect("surface input matches topology");
                values.push(out[0]);
            }
        }
        values
    }
}

#[wasm_bindgen]
impl TrainingDemo {
    /// Generate the fixture, train with the given budget, and keep what the
    /// page needs for rendering.
    pub fn run(
        rows: usize,
        hawks: usize,
        iterations: usize,
        seed: u32,
    ) -> Result<TrainingDemo, JsValue> {
        Self::run_impl(rows, hawks, iterations, seed).map_err(|e| JsValue::from_str(&e))
    }

    /// Raw (x, y) pairs of the fixture in the unit square.
    pub fn points(&self) -> Vec<f64> {
        self.points.clone()
    }

    pub fn labels(&self) -> Vec<u8> {
        self.labels.clone()
    }

    pub fn history(&self) -> Vec<f64> {
        self.history.clone()
    }

    pub fn accuracy(&self) -> f64 {
        self.accuracy
    }

    /// Network output over a width×height grid of the unit square,
    /// row-major from the top.
    pub fn surface(&self, width: usize, height: usize) -> Vec<f64> {
        self.surface_impl(width, height)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hunt_trace_has_consistent_shape() {
        let hunt = HawkHunt::run_impl("sphere", 6, 12, 3).unwrap();
        assert_eq!(hunt.iterations, 12);
        assert_eq!(hunt.positions_at(0).len(), 12);
        assert_eq!(hunt.prey_at(11).len(), 2);
        assert_eq!(hunt.history.len(), 12);
        let field = hunt.field_impl(16, 16);
        assert_eq!(field.len(), 256);
        assert!(field.iter().all(|&v| (0.0..=1.0).contains(&v)));
        assert!(HawkHunt::run_impl("nope", 6, 12, 3).is_err());
    }

    #[test]
    fn walk_is_seeded_and_continuous() {
        let a = levy_walk(1.5, 100, 9);
        let b = levy_walk(1.5, 100, 9);
        assert_eq!(a, b);
        assert_eq!(a.len(), 202);
        assert_eq!((a[0], a[1]), (0.0, 0.0));
    }

    #[test]
    fn training_demo_reports_everything() {
        let demo = TrainingDemo::run_impl(80, 8, 10, 4).unwrap();
        assert_eq!(demo.points.len(), 160);
        assert_eq!(demo.labels.len(), 80);
        assert_eq!(demo.history.len(), 10);
        assert!(demo.accuracy > 0.4);
        let surface = demo.surface_impl(8, 8);
        assert!(surface.iter().all(|&v| v > 0.0 && v < 1.0));
    }
}
