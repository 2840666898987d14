//! Bundled examples and generators for families of inputs.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::problem::{parse_spec, Field, Mode, ProblemSpec};

pub struct Bundled {
    pub name: &'static str,
    pub description: &'static str,
    pub text: &'static str,
}

pub const BUNDLED: &[Bundled] = &[
    Bundled {
        name: "interval",
        description: "interval, giving CP^1",
        text: include_str!("../data/interval.toric"),
    },
    Bundled {
        name: "simplex2",
        description: "2-simplex, giving CP^2",
        text: include_str!("../data/simplex2.toric"),
    },
    Bundled {
        name: "simplex3",
        description: "3-simplex, giving CP^3",
        text: include_str!("../data/simplex3.toric"),
    },
    Bundled {
        name: "simplex4",
        description: "4-simplex, giving CP^4",
        text: include_str!("../data/simplex4.toric"),
    },
    Bundled {
        name: "square_cp2cp2",
        description: "square with a non-product matrix, giving CP^2 # CP^2",
        text: include_str!("../data/square_cp2cp2.toric"),
    },
    Bundled {
        name: "square_product",
        description: "square with the product matrix, giving CP^1 x CP^1",
        text: include_str!("../data/square_product.toric"),
    },
    Bundled {
        name: "hexagon",
        description: "hexagon, CP^2 blown up at three points",
        text: include_str!("../data/hexagon.toric"),
    },
    Bundled {
        name: "cube",
        description: "3-cube with a mod-2 matrix, a spin 6-manifold",
        text: include_str!("../data/cube.toric"),
    },
    Bundled {
        name: "cp1xcp2",
        description: "product of the interval and the 2-simplex",
        text: include_str!("../data/cp1xcp2.toric"),
    },
    Bundled {
        name: "singular_cp1x3",
        description: "(CP^1)^3 treated as singular input, dimension 6",
        text: include_str!("../data/singular_cp1x3.toric"),
    },
    Bundled {
        name: "singular_cp1x6",
        description: "(CP^1)^6 treated as singular input, dimension 12",
        text: include_str!("../data/singular_cp1x6.toric"),
    },
];

pub fn bundled(name: &str) -> Option<&'static Bundled> {
    BUNDLED.iter().find(|b| b.name == name)
}

pub fn bundled_spec(name: &str) -> Option<ProblemSpec> {
    bundled(name).map(|b| parse_spec(b.text).expect("bundled examples are valid"))
}

fn spec(name: &str, n: usize, facets: Vec<Vec<usize>>, lambda: Vec<Vec<i64>>) -> ProblemSpec {
    ProblemSpec {
        name: name.to_string(),
        n,
        m: lambda[0].len(),
        facets,
        lambda,
        field: Field::Integral,
        mode: Mode::Manifold,
        max_degree: None,
        trust_sphere: false,
    }
}

/// Two points; `CP^1`.
pub fn interval() -> ProblemSpec {
    spec("interval", 1, vec![vec![1], vec![2]], vec![vec![1, -1]])
}

/// Boundary of the `n`-simplex with `λ = [I | -1]`; `CP^n`.
pub fn simplex(n: usize) -> ProblemSpec {
    let facets = (1..=n + 1)
        .rev()
        .map(|skip| (1..=n + 1).filter(|&v| v != skip).collect())
        .collect();
    let lambda = (0..n)
        .map(|r| (0..=n).map(|c| if c == n { -1 } else { (r == c) as i64 }).collect())
        .collect();
    if n == 1 {
        return interval();
    }
    spec(&format!("simplex{n}"), n, facets, lambda)
}

fn polygon_facets(m: usize) -> Vec<Vec<usize>> {
    (1..=m).map(|i| vec![i, i % m + 1]).collect()
}

/// An `m`-gon with the given columns `(λ_1i, λ_2i)`.
pub fn polygon(name: &str, columns: &[(i64, i64)]) -> ProblemSpec {
    let m = columns.len();
    spec(
        name,
        2,
        polygon_facets(m),
        vec![columns.iter().map(|c| c.0).collect(), columns.iter().map(|c| c.1).collect()],
    )
}

pub fn square_cp2cp2() -> ProblemSpec {
    polygon("square_cp2cp2", &[(0, 1), (1, 0), (-1, 1), (1, -2)])
}

pub fn square_product() -> ProblemSpec {
    polygon("square_product", &[(1, 0), (0, 1), (1, 0), (0, 1)])
}

pub fn hexagon() -> ProblemSpec {
    polygon("hexagon", &[(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])
}

/// The octahedron (dual of the 3-cube) with a mod-2 matrix. Opposite
/// facets of the cube are `{1, 6}`, `{2, 4}`, `{3, 5}`.
pub fn cube() -> ProblemSpec {
    let mut facets = Vec::new();
    for a in [1, 6] {
        for b in [2, 4] {
            for c in [3, 5] {
                facets.push(vec![a, b, c]);
            }
        }
    }
    let mut s = spec(
        "cube",
        3,
        facets,
        vec![
            vec![1, 0, 0, 0, 0, 1],
            vec![1, 0, 1, 0, 1, 0],
            vec![1, 1, 0, 1, 0, 0],
        ],
    );
    s.field = Field::Mod2;
    s
}

/// Join of the complexes with block-diagonal `λ`: the product of the two
/// manifolds.
pub fn product(a: &ProblemSpec, b: &ProblemSpec) -> ProblemSpec {
    let mut facets = Vec::new();
    for f in &a.facets {
        for g in &b.facets {
            let mut face = f.clone();
            face.extend(g.iter().map(|v| v + a.m));
            facets.push(face);
        }
    }
    let mut lambda = Vec::new();
    for r in &a.lambda {
        let mut row = r.clone();
        row.extend(std::iter::repeat_n(0, b.m));
        lambda.push(row);
    }
    for r in &b.lambda {
        let mut row = vec![0; a.m];
        row.extend(r);
        lambda.push(row);
    }
    ProblemSpec {
        name: format!("{}x{}", a.name, b.name),
        n: a.n + b.n,
        m: a.m + b.m,
        facets,
        lambda,
        field: if a.field == Field::Mod2 || b.field == Field::Mod2 { Field::Mod2 } else { Field::Integral },
        mode: if a.mode == Mode::Singular || b.mode == Mode::Singular { Mode::Singular } else { Mode::Manifold },
        max_degree: None,
        trust_sphere: false,
    }
}

pub fn cp1xcp2() -> ProblemSpec {
    let mut s = product(&interval(), &simplex(2));
    s.name = "cp1xcp2".to_string();
    s
}

/// `(CP^1)^k` flagged as singular input.
pub fn singular_cp1_power(k: usize) -> ProblemSpec {
    let mut s = interval();
    for _ in 1..k {
        s = product(&s, &interval());
    }
    s.name = format!("singular_cp1x{k}");
    s.mode = Mode::Singular;
    s
}

/// Random `m`-gon with a valid integral `λ`: consecutive columns satisfy
/// `v_{i+1} = k v_i ± v_{i-1}`, which keeps adjacent determinants `±1`;
/// sequences that fail to close up are discarded.
pub fn random_polygon<R: Rng + ?Sized>(m: usize, rng: &mut R) -> ProblemSpec {
    assert!(m >= 3, "a polygon needs at least three edges");
    loop {
        let mut cols = vec![(1i64, 0i64), (0, 1)];
        while cols.len() < m {
            let (p, q) = (cols[cols.len() - 1], cols[cols.len() - 2]);
            let k = rng.random_range(-2..=2);
            let e = *[-1, 1].choose(rng).unwrap();
            cols.push((k * p.0 + e * q.0, k * p.1 + e * q.1));
        }
        let last = cols[m - 1];
        if (last.0 * cols[0].1 - last.1 * cols[0].0).abs() == 1 {
            return polygon(&format!("polygon{m}"), &cols);
        }
    }
}

/// Random `m`-gon with a valid mod-2 `λ`: adjacent columns are distinct
/// nonzero vectors of the plane over the two-element field.
pub fn random_polygon_mod2<R: Rng + ?Sized>(m: usize, rng: &mut R) -> ProblemSpec {
    assert!(m >= 3, "a polygon needs at least three edges");
    const NONZERO: [(i64, i64); 3] = [(1, 0), (0, 1), (1, 1)];
    loop {
        let mut cols = vec![*NONZERO.choose(rng).unwrap()];
        while cols.len() < m {
            let prev = cols[cols.len() - 1];
            let next = *NONZERO.iter().filter(|c| **c != prev).collect::<Vec<_>>().choose(rng).unwrap();
            cols.push(*next);
        }
        if cols[m - 1] != cols[0] {
            let mut s = polygon(&format!("polygon{m}_mod2"), &cols);
            s.field = Field::Mod2;
            return s;
        }
    }
}

/// Reproducible random polygon from a seed.
pub fn seeded_polygon(m: usize, seed: u64, mod2: bool) -> ProblemSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if mod2 {
        random_polygon_mod2(m, &mut rng)
    } else {
        random_polygon(m, &mut rng)
    }
}
