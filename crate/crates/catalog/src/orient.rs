//! Reading a symmetric configuration as rings about a chosen axis.

use vortex_model::vec3::{cross, dot, mat_vec3, rot, M3};
use vortex_model::RingSystem;

use crate::CatalogError;

const ORBIT_TOL: f64 = 1e-7;

/// A rotation taking the unit vector along `axis` to `e3`.
pub fn rotation_to_e3(axis: [f64; 3]) -> M3<f64> {
    let r = dot(axis, axis).sqrt();
    let a = [axis[0] / r, axis[1] / r, axis[2] / r];
    let c = a[2];
    if c < -1.0 + 1e-12 {
        return [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]];
    }
    let v = cross(a, [0.0, 0.0, 1.0]);
    let k = [[0.0, -v[2], v[1]], [v[2], 0.0, -v[0]], [-v[1], v[0], 0.0]];
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let k2: f64 = (0..3).map(|l| k[i][l] * k[l][j]).sum();
            out[i][j] = if i == j { 1.0 } else { 0.0 } + k[i][j] + k2 / (1.0 + c);
        }
    }
    out
}

fn close(a: [f64; 3], b: [f64; 3]) -> bool {
    (0..3).all(|i| (a[i] - b[i]).abs() < ORBIT_TOL)
}

/// Rings of `g_m`-orbits about `axis`: on-axis points become poles (a lone
/// pole is moved to the North), rings are sorted by decreasing height.
pub fn ring_form(points: &[[f64; 3]], axis: [f64; 3], m: usize) -> Result<RingSystem, CatalogError> {
    let r = rotation_to_e3(axis);
    let mut pts: Vec<[f64; 3]> = points.iter().map(|&v| mat_vec3(&r, v)).collect();
    if m == 1 {
        return Ok(RingSystem::new(1, pts.len(), 0, pts)?);
    }
    let on_axis = |v: &[f64; 3]| v[0].hypot(v[1]) < ORBIT_TOL;
    let poles: Vec<[f64; 3]> = pts.iter().copied().filter(on_axis).collect();
    if poles.len() > 2 || (poles.len() == 2 && poles[0][2] * poles[1][2] > 0.0) {
        return Err(CatalogError::Domain(format!("{} points on the axis", poles.len())));
    }
    if poles.len() == 1 && poles[0][2] < 0.0 {
        for v in pts.iter_mut() {
            *v = [v[0], -v[1], -v[2]];
        }
    }
    let g: M3<f64> = rot(1, m as i64);
    let mut free: Vec<[f64; 3]> = pts.into_iter().filter(|v| !on_axis(v)).collect();
    let mut rings = Vec::new();
    while let Some(u) = free.pop() {
        let mut x = u;
        for _ in 1..m {
            x = mat_vec3(&g, x);
            let pos = free
                .iter()
                .position(|&w| close(w, x))
                .ok_or_else(|| CatalogError::Domain(format!("no Z_{m} orbit through {u:?}")))?;
            free.swap_remove(pos);
        }
        if !close(mat_vec3(&g, x), u) {
            return Err(CatalogError::Domain(format!("orbit of {u:?} does not close")));
        }
        rings.push(u);
    }
    rings.sort_by(|a, b| b[2].total_cmp(&a[2]));
    Ok(RingSystem::new(m, rings.len(), poles.len(), rings)?)
}
