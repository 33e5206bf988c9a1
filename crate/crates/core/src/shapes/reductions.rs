use super::{Job, Shape, ShapesInstance};
use crate::error::{Error, Result};

/// Unit jobs of demand `a_i` over `k` slots with `bin` machines: feasible iff
/// the items pack into `k` bins of capacity `bin`.
pub fn gen_from_binpacking(sizes: &[u64], bin: u64, k: usize) -> Result<ShapesInstance> {
    if sizes.contains(&0) {
        return Err(Error::InvalidInput("item sizes must be positive".into()));
    }
    if k == 0 {
        return Err(Error::InvalidInput("at least one bin is required".into()));
    }
    let jobs = sizes.iter().map(|&a| Job::uniform(1, 0, k, &[vec![a]])).collect::<Result<Vec<_>>>()?;
    Ok(ShapesInstance::new(jobs, bin))
}

/// One job per vertex on a single machine: feasible iff the graph has an
/// independent set of size `k`.
pub fn gen_from_independent_set(edges: &[(usize, usize)], n_vertices: usize, k: usize) -> Result<ShapesInstance> {
    if k > n_vertices {
        return Err(Error::InvalidInput(format!("k = {k} exceeds the {n_vertices} vertices")));
    }
    let mut degree = vec![0usize; n_vertices];
    for &(u, v) in edges {
        if u >= n_vertices || v >= n_vertices || u == v {
            return Err(Error::InvalidInput(format!("invalid edge ({u}, {v})")));
        }
        degree[u] += 1;
        degree[v] += 1;
    }
    if let Some(v) = degree.iter().position(|&d| d == 0) {
        return Err(Error::InvalidInput(format!("vertex {v} is isolated")));
    }
    let m = edges.len();
    let p = n_vertices + m - k;
    let mut shapes: Vec<Shape> = (0..n_vertices)
        .map(|v| {
            let mut f = vec![0; p];
            for (i, &(a, b)) in edges.iter().enumerate() {
                if a == v || b == v {
                    f[i] = 1;
                }
            }
            f
        })
        .collect();
    for i in 0..n_vertices - k {
        let mut f = vec![0; p];
        f[m + i] = 1;
        shapes.push(f);
    }
    let jobs = (0..n_vertices).map(|_| Job::uniform(p, 0, p, &shapes)).collect::<Result<Vec<_>>>()?;
    Ok(ShapesInstance::new(jobs, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{brute_force_feasible, busy_profile, DEFAULT_CAP};

    fn feasible(inst: &ShapesInstance) -> bool {
        let out = brute_force_feasible(inst, DEFAULT_CAP).unwrap();
        if let Some(s) = &out {
            assert!(busy_profile(inst, s).unwrap().within_capacity);
        }
        out.is_some()
    }

    #[test]
    fn bin_packing_examples() {
        assert!(feasible(&gen_from_binpacking(&[2, 2], 2, 2).unwrap()));
        assert!(!feasible(&gen_from_binpacking(&[3], 2, 5).unwrap()));
        assert!(feasible(&gen_from_binpacking(&[1, 1, 1], 3, 1).unwrap()));
        assert!(gen_from_binpacking(&[0], 1, 1).is_err());
    }

    #[test]
    fn independent_set_examples() {
        let triangle = [(0, 1), (1, 2), (0, 2)];
        assert!(feasible(&gen_from_independent_set(&triangle, 3, 1).unwrap()));
        assert!(!feasible(&gen_from_independent_set(&triangle, 3, 2).unwrap()));
        let path = [(0, 1), (1, 2), (2, 3)];
        assert!(feasible(&gen_from_independent_set(&path, 4, 2).unwrap()));
        assert!(gen_from_independent_set(&[(0, 1)], 3, 1).is_err());
    }
}
