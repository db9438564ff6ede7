//! Exact facet enumeration for `conv(points) + ℝⁿ_{≥0}` by the double
//! description method on the dual cone.
//!
//! A facet `⟨u, v⟩ ≥ c` is a ray `y = (-c, v)` of the cone
//! `{ y : y_0 + ⟨v, g⟩ ≥ 0 for every point g, v ≥ 0 }`.

use num_integer::Integer;

type Vector = Vec<i128>;

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(mut v: Vector) -> Vector {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in &mut v {
            *x /= g;
        }
    }
    v
}

struct Ray {
    y: Vector,
    tight: Vec<bool>,
}

/// Returns `(normal, level)` pairs, one per facet, with primitive normals.
/// Coordinate facets with level zero are included.
pub fn facets(points: &[Vec<i64>], n: usize) -> Vec<(Vec<i64>, i64)> {
    assert!(!points.is_empty());
    let d = n + 1;
    let mut rows: Vec<Vector> = (0..n)
        .map(|j| {
            let mut r = vec![0i128; d];
            r[j + 1] = 1;
            r
        })
        .collect();
    for g in points {
        let mut r = vec![1i128];
        r.extend(g.iter().map(|&x| x as i128));
        rows.push(r);
    }

    // the first n+1 rows are independent; their inverse gives the start rays
    let g0 = &points[0];
    let mut rays: Vec<Ray> = Vec::new();
    for j in 0..n {
        let mut y = vec![0i128; d];
        y[0] = -(g0[j] as i128);
        y[j + 1] = 1;
        rays.push(Ray { y, tight: vec![] });
    }
    let mut y = vec![0i128; d];
    y[0] = 1;
    rays.push(Ray { y, tight: vec![] });
    for ray in &mut rays {
        ray.tight = rows[..d].iter().map(|r| dot(r, &ray.y) == 0).collect();
    }

    for row in rows.iter().skip(d) {
        let vals: Vec<i128> = rays.iter().map(|r| dot(row, &r.y)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (r, &v) in rays.iter().zip(&vals) {
            if v >= 0 {
                let mut tight = r.tight.clone();
                tight.push(v == 0);
                next.push(Ray {
                    y: r.y.clone(),
                    tight,
                });
            }
        }
        for (a, &va) in rays.iter().zip(&vals) {
            if va <= 0 {
                continue;
            }
            for (b, &vb) in rays.iter().zip(&vals) {
                if vb >= 0 {
                    continue;
                }
                let common: Vec<bool> = a
                    .tight
                    .iter()
                    .zip(&b.tight)
                    .map(|(x, y)| *x && *y)
                    .collect();
                if common.iter().filter(|&&c| c).count() + 2 < d {
                    continue;
                }
                let adjacent = rays.iter().all(|c| {
                    std::ptr::eq(c, a)
                        || std::ptr::eq(c, b)
                        || !common
                            .iter()
                            .zip(&c.tight)
                            .all(|(&need, &has)| !need || has)
                });
                if !adjacent {
                    continue;
                }
                let y: Vector =
                    a.y.iter()
                        .zip(&b.y)
                        .map(|(&ya, &yb)| va * yb - vb * ya)
                        .collect();
                let y = primitive(y);
                let mut tight = common;
                tight.push(true);
                next.push(Ray { y, tight });
            }
        }
        rays = next;
    }

    let mut out: Vec<(Vec<i64>, i64)> = Vec::new();
    for r in rays {
        let v: Vector = r.y[1..].to_vec();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let v = primitive(v);
        let level = points
            .iter()
            .map(|g| g.iter().zip(&v).map(|(&a, &b)| a as i128 * b).sum::<i128>())
            .min()
            .unwrap();
        let v64: Vec<i64> = v.iter().map(|&x| x as i64).collect();
        if !out.iter().any(|(w, _)| *w == v64) {
            out.push((v64, level as i64));
        }
    }
    out.sort();
    out
}

/// Rank of an integer matrix (fraction-free elimination).
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        for i in 0..m.len() {
            if i != rank && m[i][col] != 0 {
                let (a, b) = (m[rank][col], m[i][col]);
                let pivot_row = m[rank].clone();
                for (x, &y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = *x * a - y * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| g.gcd(&x));
                if g > 1 {
                    for x in &mut m[i] {
                        *x /= g;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}
