//! Python bindings. Tensors cross the boundary as little-endian `float32`
//! bytes together with their NCHW shape, so callers can wrap them with
//! `numpy.frombuffer(buf, "<f4").reshape(shape)` without a numpy dependency
//! on this side.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBytes, PyDict};

use sdf_core::engine::f32_le_bytes;
use sdf_core::terrain::{self, BasePose, TerrainFamily, TerrainSpec};
use sdf_core::training::{self, LatentBatch, LossWeights, PowerTrace};
use sdf_core::{Engine, RunConfig};

fn value_err(e: sdf_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn latent(rows: Vec<Vec<f32>>) -> PyResult<LatentBatch> {
    LatentBatch::from_rows(&rows).map_err(value_err)
}

/// A batch of simulated environments stepped together.
#[pyclass(module = "sdf_py")]
struct Session {
    engine: Option<Engine>,
}

impl Session {
    fn engine(&self) -> PyResult<&Engine> {
        self.engine.as_ref().ok_or_else(|| PyRuntimeError::new_err("session is closed"))
    }

    fn engine_mut(&mut self) -> PyResult<&mut Engine> {
        self.engine.as_mut().ok_or_else(|| PyRuntimeError::new_err("session is closed"))
    }
}

#[pymethods]
impl Session {
    /// Build a session from TOML text. An empty string uses the defaults.
    #[new]
    #[pyo3(signature = (config = ""))]
    fn new(config: &str) -> PyResult<Self> {
        let cfg = RunConfig::parse(config).map_err(value_err)?;
        let engine = Engine::new(&cfg).map_err(value_err)?;
        Ok(Session { engine: Some(engine) })
    }

    #[getter]
    fn env_count(&self) -> PyResult<usize> {
        Ok(self.engine()?.env_count())
    }

    /// `(N, 1, 24, 32)`.
    #[getter]
    fn shape(&self) -> PyResult<(usize, usize, usize, usize)> {
        let [n, c, h, w] = self.engine()?.descriptor().shape;
        Ok((n, c, h, w))
    }

    #[getter]
    fn closed(&self) -> bool {
        self.engine.is_none()
    }

    fn config_toml(&self) -> PyResult<String> {
        self.engine()?.config().to_toml_string().map_err(value_err)
    }

    /// Per-environment `(x, y, yaw, z)` for the next frame of the built-in course.
    fn course_poses(&self) -> PyResult<Vec<(f64, f64, f64, f64)>> {
        Ok(self.engine()?.course_poses().iter().map(|p| (p.x, p.y, p.yaw, p.z)).collect())
    }

    /// Advance every environment one frame and return `(student, clean)` as
    /// float32 bytes. Without poses the course trajectory is used.
    #[pyo3(signature = (poses = None))]
    fn step<'py>(
        &mut self,
        py: Python<'py>,
        poses: Option<Vec<(f64, f64, f64, f64)>>,
    ) -> PyResult<(Bound<'py, PyBytes>, Bound<'py, PyBytes>)> {
        let engine = self.engine_mut()?;
        let poses: Vec<BasePose> = match poses {
            Some(p) => p.into_iter().map(|(x, y, yaw, z)| BasePose::new(x, y, yaw, z)).collect(),
            None => engine.course_poses(),
        };
        py.detach(|| engine.step(&poses)).map_err(value_err)?;
        Ok((
            PyBytes::new(py, &f32_le_bytes(engine.student())),
            PyBytes::new(py, &f32_le_bytes(engine.clean())),
        ))
    }

    /// Release the engine. Later calls raise `RuntimeError`.
    fn close(&mut self) {
        self.engine = None;
    }

    fn __enter__(slf: Py<Self>) -> Py<Self> {
        slf
    }

    fn __exit__(&mut self, _ty: Py<PyAny>, _value: Py<PyAny>, _tb: Py<PyAny>) {
        self.close();
    }
}

/// Generate a heightfield. Returns `(rows, cols, resolution, heights)` with
/// heights as row-major float32 bytes.
#[pyfunction]
#[pyo3(signature = (family, difficulty, seed = 0))]
fn make_terrain<'py>(
    py: Python<'py>,
    family: &str,
    difficulty: u8,
    seed: u64,
) -> PyResult<(usize, usize, f32, Bound<'py, PyBytes>)> {
    let family: TerrainFamily = family.parse().map_err(value_err)?;
    let spec = TerrainSpec { seed, ..TerrainSpec::new(family, difficulty) };
    let field = terrain::make_terrain(&spec).map_err(value_err)?;
    Ok((field.rows(), field.cols(), field.resolution(), PyBytes::new(py, &f32_le_bytes(field.heights()))))
}

/// 693 terrain heights around a base pose on a generated field, forward-major.
#[pyfunction]
#[pyo3(signature = (family, difficulty, x, y, yaw, z, seed = 0))]
#[allow(clippy::too_many_arguments)]
fn height_scan(family: &str, difficulty: u8, x: f64, y: f64, yaw: f64, z: f64, seed: u64) -> PyResult<Vec<f32>> {
    let family: TerrainFamily = family.parse().map_err(value_err)?;
    let spec = TerrainSpec { seed, ..TerrainSpec::new(family, difficulty) };
    let field = terrain::make_terrain(&spec).map_err(value_err)?;
    Ok(terrain::height_scan(&field, BasePose::new(x, y, yaw, z)).values)
}

#[pyfunction]
#[pyo3(signature = (z, epsilon = 1e-5))]
fn kl_loss(z: Vec<Vec<f32>>, epsilon: f64) -> PyResult<f64> {
    training::kl_loss(&latent(z)?, epsilon).map_err(value_err)
}

/// Behavior, denoising and KL terms plus their weighted total, as a dict.
#[pyfunction]
#[pyo3(signature = (mu_deploy, mu_priv, z_clean, z_aug, denoise_weight = 0.1, kl_weight = 0.1, epsilon = 1e-5))]
#[allow(clippy::too_many_arguments)]
fn losses<'py>(
    py: Python<'py>,
    mu_deploy: Vec<Vec<f32>>,
    mu_priv: Vec<Vec<f32>>,
    z_clean: Vec<Vec<f32>>,
    z_aug: Vec<Vec<f32>>,
    denoise_weight: f64,
    kl_weight: f64,
    epsilon: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let weights = LossWeights { denoise: denoise_weight, kl: kl_weight };
    let l = training::distillation_losses(
        &latent(mu_deploy)?,
        &latent(mu_priv)?,
        &latent(z_clean)?,
        &latent(z_aug)?,
        weights,
        epsilon,
    )
    .map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("behavior", l.behavior)?;
    d.set_item("denoise", l.denoise)?;
    d.set_item("kl", l.kl)?;
    d.set_item("total", l.total)?;
    Ok(d)
}

#[pyfunction]
fn reward_vel_exp(v_cmd: [f64; 2], v_robot: [f64; 2], sigma: f64) -> f64 {
    training::reward_vel_exp(v_cmd, v_robot, sigma)
}

#[pyfunction]
#[pyo3(signature = (v_cmd, v_robot, epsilon = 1e-3))]
fn reward_vel_dir(v_cmd: [f64; 2], v_robot: [f64; 2], epsilon: f64) -> f64 {
    training::reward_vel_dir(v_cmd, v_robot, epsilon)
}

/// Mean mechanical power of a `[steps][joints]` torque and velocity trace.
#[pyfunction]
fn avg_power(torques: Vec<Vec<f64>>, velocities: Vec<Vec<f64>>) -> PyResult<f64> {
    Ok(training::avg_power(&PowerTrace::new(torques, velocities).map_err(value_err)?))
}

#[pyfunction]
fn pdr(p_noisy: f64, p_clean: f64) -> PyResult<f64> {
    training::pdr(p_noisy, p_clean).map_err(value_err)
}

#[pymodule]
fn sdf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Session>()?;
    m.add_function(wrap_pyfunction!(make_terrain, m)?)?;
    m.add_function(wrap_pyfunction!(height_scan, m)?)?;
    m.add_function(wrap_pyfunction!(kl_loss, m)?)?;
    m.add_function(wrap_pyfunction!(losses, m)?)?;
    m.add_function(wrap_pyfunction!(reward_vel_exp, m)?)?;
    m.add_function(wrap_pyfunction!(reward_vel_dir, m)?)?;
    m.add_function(wrap_pyfunction!(avg_power, m)?)?;
    m.add_function(wrap_pyfunction!(pdr, m)?)?;
    Ok(())
}
