use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Gf2Matrix;
use crate::point_set::PointSet;
use crate::vector::Gf2Vector;

/// Ambient-dimension bound under which the pair-sum test uses a dense
/// presence table of 2ⁿ entries; above it, a sorted list of pair sums.
const PAIR_TABLE_DIM_LIMIT: usize = 24;

/// Finds four distinct elements summing to zero, as two distinct index pairs
/// with equal XOR, or `None` if the set is a cap.
///
/// A collision between distinct pairs forces four distinct points: a shared
/// point would make the remaining two equal.
pub fn find_quad(set: &PointSet) -> Option<[usize; 4]> {
    let k = set.len();
    let n = set.ambient_dim();
    if n <= PAIR_TABLE_DIM_LIMIT {
        // Presence table over all 2ⁿ sums; entry packs (i, j) + 1.
        let mut table = vec![0u16; 1usize << n];
        for j in 1..k {
            for i in 0..j {
                let sum = (set.point(i) ^ set.point(j)).bits() as usize;
                let prev = table[sum];
                if prev != 0 {
                    let code = prev - 1;
                    let pi = (code >> 6) as usize;
                    let pj = (code & 0x3f) as usize;
                    return Some([pi, pj, i, j]);
                }
                table[sum] = ((i << 6) | j) as u16 + 1;
            }
        }
        None
    } else {
        let mut sums: Vec<(u64, usize, usize)> = Vec::with_capacity(k * (k - 1) / 2);
        for j in 1..k {
            for i in 0..j {
                sums.push(((set.point(i) ^ set.point(j)).bits(), i, j));
            }
        }
        sums.sort_unstable();
        sums.windows(2).find(|w| w[0].0 == w[1].0).map(|w| [w[0].1, w[0].2, w[1].1, w[1].2])
    }
}

/// True iff the set contains no quad, i.e. all pairwise sums of distinct
/// pairs are distinct (Sidon property).
pub fn is_cap(set: &PointSet) -> bool {
    find_quad(set).is_none()
}

/// An equivalence class of k-caps with size-dimension difference 3, recorded
/// by its three non-isolated Venn region cardinalities a ≤ b ≤ c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Diff3Class {
    a: u32,
    b: u32,
    c: u32,
    k: u32,
}

impl Diff3Class {
    /// Validates a ≤ b ≤ c, shared parity, a+b ≥ 6, and a+b+c ≤ k.
    pub fn new(a: u32, b: u32, c: u32, k: u32) -> Result<Self> {
        if !diff3_is_cap_triple(a, b, c)? {
            return Err(Error::InvalidTriple { a, b, c });
        }
        if a + b + c > k {
            return Err(Error::CapSize { k });
        }
        Ok(Diff3Class { a, b, c, k })
    }

    pub fn triple(&self) -> (u32, u32, u32) {
        (self.a, self.b, self.c)
    }

    pub fn cap_size(&self) -> u32 {
        self.k
    }

    pub fn isolated_points(&self) -> u32 {
        self.k - (self.a + self.b + self.c)
    }
}

impl fmt::Display for Diff3Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// True iff nonnegative a ≤ b ≤ c are the non-isolated Venn cardinalities of
/// some cap with size-dimension difference 3: shared parity and a+b ≥ 6
/// (which forces b+c and a+c ≥ 6 as well). Errors if the ordering is violated.
pub fn diff3_is_cap_triple(a: u32, b: u32, c: u32) -> Result<bool> {
    if !(a <= b && b <= c) {
        return Err(Error::UnorderedTriple { a, b, c });
    }
    Ok(a % 2 == b % 2 && b % 2 == c % 2 && a + b >= 6)
}

/// All classes of k-caps with size-dimension difference 3, in ascending
/// lexicographic (a, b, c) order.
pub fn diff3_classes(k: u32) -> Vec<Diff3Class> {
    let mut out = Vec::new();
    for a in 0..=k / 3 {
        for b in a..=(k - a) / 2 {
            if a + b < 6 || (a + b) % 2 == 1 {
                continue;
            }
            for c in b..=k - a - b {
                if c % 2 == b % 2 {
                    out.push(Diff3Class { a, b, c, k });
                }
            }
        }
    }
    out
}

/// Realizes a class as a concrete cap of size k in F₂^{k-3}: affinely
/// independent generators are assigned to the standard basis plus the zero
/// vector, and the two dependent points close off even zero-sum sets of
/// sizes a+b and a+c.
///
/// The result has size k, dimension k-3, is a cap, and its Venn cardinality
/// multiset excluding the isolated region is exactly {a, b, c}.
pub fn construct_diff3_cap(class: &Diff3Class) -> Result<PointSet> {
    let (a, b, c) = class.triple();
    let k = class.cap_size();
    if !(9..=64).contains(&k) {
        return Err(Error::CapSize { k });
    }
    let n = (k - 3) as usize;
    let free = class.isolated_points() as usize;
    let (a, b, c) = (a as usize, b as usize, c as usize);

    // k-2 affinely independent generators: e₁, …, e_{k-3}, 0.
    let mut generators: Vec<Gf2Vector> = (0..n).map(|i| Gf2Vector::unit(n, i).unwrap()).collect();
    generators.push(Gf2Vector::zero(n).unwrap());
    let mut pool = generators.into_iter();
    let xs: Vec<Gf2Vector> = pool.by_ref().take(b - 1).collect();
    let ys: Vec<Gf2Vector> = pool.by_ref().take(c - 1).collect();
    let zs: Vec<Gf2Vector> = pool.by_ref().take(a).collect();
    let ws: Vec<Gf2Vector> = pool.by_ref().take(free).collect();
    debug_assert!(pool.next().is_none());

    let zero = Gf2Vector::zero(n).unwrap();
    let fold = |acc: Gf2Vector, v: &Gf2Vector| acc ^ *v;
    let x_last = xs.iter().fold(zero, fold) ^ zs.iter().fold(zero, fold);
    let y_last = ys.iter().fold(zero, fold) ^ zs.iter().fold(zero, fold);

    let mut points = Vec::with_capacity(k as usize);
    points.extend(xs);
    points.extend(ys);
    points.extend(zs);
    points.extend(ws);
    points.push(x_last);
    points.push(y_last);
    PointSet::new(n, points)
}

/// A dependent-set template for a 7-dimensional cap: a name like "7-5-(4)"
/// and one expression per dependent point as 0-based indices into the basis
/// a₁..a₈.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapTemplate {
    name: String,
    expressions: Vec<Vec<usize>>,
}

impl CapTemplate {
    pub fn new(name: impl Into<String>, expressions: Vec<Vec<usize>>) -> Self {
        CapTemplate { name: name.into(), expressions }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn expressions(&self) -> &[Vec<usize>] {
        &self.expressions
    }

    pub fn cap_size(&self) -> usize {
        8 + self.expressions.len()
    }

    /// Realizes the template in F₂ⁿ, n ≥ 7: a₁..a₇ are the standard basis
    /// vectors, a₈ is the zero vector, and each dependent point is the XOR of
    /// its expression. Errors if an expression references an index outside
    /// the 8-element basis.
    pub fn instantiate(&self, n: usize) -> Result<PointSet> {
        if n < 7 {
            return Err(Error::AmbientTooSmall { n, needed: 7 });
        }
        let mut points: Vec<Gf2Vector> = (0..7).map(|i| Gf2Vector::unit(n, i)).collect::<Result<_>>()?;
        points.push(Gf2Vector::zero(n)?);
        for expr in &self.expressions {
            let mut x = Gf2Vector::zero(n)?;
            for &i in expr {
                if i >= 8 {
                    return Err(Error::TemplateIndex { index: i + 1 });
                }
                x = x ^ points[i];
            }
            points.push(x);
        }
        PointSet::new(n, points)
    }
}

/// The nine dependent-set templates covering all 7-dimensional caps of sizes
/// 10, 11, and 12.
pub fn builtin_templates() -> Vec<CapTemplate> {
    vec![
        CapTemplate::new("7-5-(4)", vec![vec![0, 1, 2, 3, 4, 5, 6], vec![3, 4, 5, 6, 7]]),
        CapTemplate::new("5-5-(2)", vec![vec![0, 1, 2, 3, 4], vec![3, 4, 5, 6, 7]]),
        CapTemplate::new("5-5-(3)", vec![vec![0, 1, 2, 3, 4], vec![2, 3, 4, 5, 6]]),
        CapTemplate::new(
            "7-5-5-(4,4,3)",
            vec![vec![0, 1, 2, 3, 4, 5, 6], vec![3, 4, 5, 6, 7], vec![0, 1, 5, 6, 7]],
        ),
        CapTemplate::new(
            "5-5-5-(3,3,3)",
            vec![vec![0, 1, 2, 3, 4], vec![2, 3, 4, 5, 6], vec![0, 2, 3, 5, 7]],
        ),
        CapTemplate::new(
            "5-5-5-(3,3,2)",
            vec![vec![0, 1, 2, 3, 4], vec![2, 3, 4, 5, 6], vec![0, 1, 2, 6, 7]],
        ),
        CapTemplate::new(
            "7-5-5-5-(4,4,4,3,3,3)",
            vec![
                vec![0, 1, 2, 3, 4, 5, 6],
                vec![3, 4, 5, 6, 7],
                vec![0, 1, 5, 6, 7],
                vec![0, 2, 4, 6, 7],
            ],
        ),
        CapTemplate::new(
            "5-5-5-5-(2,3,3,3,3,3)",
            vec![
                vec![0, 1, 2, 3, 4],
                vec![0, 1, 2, 6, 7],
                vec![2, 3, 4, 5, 6],
                vec![1, 2, 3, 5, 7],
            ],
        ),
        CapTemplate::new(
            "5-5-5-5-(2,3,3,3,3,2)",
            vec![
                vec![0, 1, 2, 3, 4],
                vec![0, 1, 2, 6, 7],
                vec![2, 3, 4, 5, 6],
                vec![1, 3, 5, 6, 7],
            ],
        ),
    ]
}

pub fn template_by_name(name: &str) -> Option<CapTemplate> {
    builtin_templates().into_iter().find(|t| t.name() == name)
}

/// A known region-permuting witness between two built-in templates.
#[derive(Clone, Debug)]
pub struct TemplateWitness {
    pub from: &'static str,
    pub to: &'static str,
    pub matrix: Gf2Matrix,
}

/// The known witnesses linking the 11-cap templates and the 12-cap templates.
pub fn known_template_witnesses() -> Vec<TemplateWitness> {
    vec![
        TemplateWitness {
            from: "7-5-5-(4,4,3)",
            to: "5-5-5-(3,3,3)",
            matrix: Gf2Matrix::from_dense(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]),
        },
        TemplateWitness {
            from: "5-5-5-(3,3,3)",
            to: "5-5-5-(3,3,2)",
            matrix: Gf2Matrix::from_dense(&[&[1, 0, 0], &[1, 1, 0], &[0, 0, 1]]),
        },
        TemplateWitness {
            from: "7-5-5-5-(4,4,4,3,3,3)",
            to: "5-5-5-5-(2,3,3,3,3,3)",
            matrix: Gf2Matrix::from_dense(&[
                &[1, 0, 1, 1],
                &[0, 1, 1, 0],
                &[0, 0, 0, 1],
                &[0, 0, 1, 0],
            ]),
        },
        TemplateWitness {
            from: "5-5-5-5-(2,3,3,3,3,3)",
            to: "5-5-5-5-(2,3,3,3,3,2)",
            matrix: Gf2Matrix::from_dense(&[
                &[1, 0, 1, 0],
                &[0, 1, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
            ]),
        },
    ]
}
