use k3arith::kodaira::CurveSet;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random curve set: a planted affine diagram plus sparse noise.
pub fn random_set(rng: &mut ChaCha8Rng) -> CurveSet {
    let n = rng.gen_range(3..=10);
    let mut g = vec![vec![0i64; n]; n];
    let plants: [&[(usize, usize)]; 5] = [
        &[(0, 1), (0, 2), (0, 3), (0, 4)],
        &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)],
        &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)],
        &[(0, 1), (1, 2), (2, 3), (3, 0)],
        &[],
    ];
    let plant = plants[rng.gen_range(0..plants.len())];
    for &(a, b) in plant {
        if a < n && b < n {
            g[a][b] = 1;
            g[b][a] = 1;
        }
    }
    for i in 0..n {
        g[i][i] = -2;
        for j in i + 1..n {
            let r: f64 = rng.gen();
            if r < 0.12 {
                g[i][j] = 1;
                g[j][i] = 1;
            } else if r < 0.15 {
                g[i][j] = 2;
                g[j][i] = 2;
            }
        }
    }
    CurveSet::from_gram((0..n).map(|i| format!("c{i}")).collect(), g).unwrap()
}
