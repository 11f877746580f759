//! Reduced bases of the rank-two lattice `Δ(Z) = { X ∈ Z³ : r·X = 0 }`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::geometry::{add, dot, scale, sup_norm, vec3, wedge, IntegerTriple, ProjectiveLine, Vec3};

/// Basis `A, B` of `Δ(Z)` with `‖A‖ ≤ ‖B‖`, `A ∧ B = ±Δ` and
/// `‖A‖²‖B‖² ≤ 3 H(Δ)²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineBasis {
    pub line: ProjectiveLine,
    pub a: IntegerTriple,
    pub b: IntegerTriple,
}

impl LineBasis {
    /// Re-checks every invariant from scratch.
    pub fn is_valid(&self) -> bool {
        let (a, b, d) = (self.a.coords(), self.b.coords(), self.line.coords());
        let h = self.line.height();
        let w = wedge(a, b);
        let na = sup_norm(a);
        let nb = sup_norm(b);
        dot(a, d).is_zero()
            && dot(b, d).is_zero()
            && (w == *d || w == d.clone().map(|c| -c))
            && na <= nb
            && &na * &na * &nb * &nb <= BigInt::from(3) * &h * &h
    }
}

fn euclid2(v: &Vec3) -> BigInt {
    dot(v, v)
}

fn comb(k: &BigInt, a: &Vec3, b: &Vec3) -> Vec3 {
    add(b, &scale(k, a))
}

/// Integer `k` minimizing `‖b + k·a‖` (the smallest such `k`).
fn best_shift(a: &Vec3, b: &Vec3) -> BigInt {
    let na = sup_norm(a);
    let bound: BigInt = (BigInt::from(2) * sup_norm(b)) / &na + 1;
    let (mut lo, mut hi) = (-bound.clone(), bound);
    // smallest k in [lo, hi] with f(k+1) >= f(k); f is convex
    while lo < hi {
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        let f0 = sup_norm(&comb(&mid, a, b));
        let f1 = sup_norm(&comb(&(&mid + 1), a, b));
        if f1 >= f0 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Range of `k` with `‖b + k·a‖ ≤ level`, given a minimizer `k0` inside it.
fn level_range(a: &Vec3, b: &Vec3, k0: &BigInt, level: &BigInt) -> (BigInt, BigInt) {
    let within = |k: &BigInt| sup_norm(&comb(k, a, b)) <= *level;
    debug_assert!(within(k0));
    let reach = (BigInt::from(2) * (level + sup_norm(b))) / sup_norm(a) + 2;
    // upper end: largest k >= k0 still within
    let (mut lo, mut hi) = (k0.clone(), k0 + &reach);
    while lo < hi {
        let mid = (&lo + &hi + 1u32).div_floor(&BigInt::from(2));
        if within(&mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let top = lo;
    let (mut lo, mut hi): (BigInt, BigInt) = (k0 - &reach, k0.clone());
    while lo < hi {
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        if within(&mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    (lo, top)
}

fn gauss_reduce(mut a: Vec3, mut b: Vec3) -> (Vec3, Vec3) {
    loop {
        if sup_norm(&a) > sup_norm(&b) {
            std::mem::swap(&mut a, &mut b);
        }
        let k = best_shift(&a, &b);
        let nb = comb(&k, &a, &b);
        if sup_norm(&nb) < sup_norm(&b) {
            b = nb;
        } else {
            return (a, b);
        }
    }
}

/// A first basis of `Δ(Z)` from the coefficients: `(s/g, -r/g, 0)` and
/// `(-t·u, -t·v, g)` where `u·r + v·s = g = gcd(r, s)`.
fn kernel_basis(d: &Vec3) -> (Vec3, Vec3) {
    let (r, s, t) = (&d[0], &d[1], &d[2]);
    if r.is_zero() && s.is_zero() {
        return (vec3(1, 0, 0), vec3(0, 1, 0));
    }
    let eg = r.extended_gcd(s);
    let g = eg.gcd;
    let u = [s / &g, -(r / &g), BigInt::zero()];
    let v = [-(t * &eg.x), -(t * &eg.y), g];
    (u, v)
}

fn lex_key(v: &Vec3) -> (BigInt, BigInt, BigInt) {
    (v[0].clone(), v[1].clone(), v[2].clone())
}

/// Canonical reduced basis of the integer points of `line`.
///
/// `A` is the shortest vector (sup norm) of smallest Euclidean length, ties
/// broken toward the lexicographically greatest sign-normalized triple. `B`
/// is the shortest completion `A ∧ B = ±Δ` of smallest Euclidean length,
/// ties broken toward the lexicographically least sign-normalized triple.
pub fn reduced_line_basis(line: &ProjectiveLine) -> LineBasis {
    let d = line.coords();
    let h = line.height();
    let (u, v) = kernel_basis(d);
    let (a0, b0) = gauss_reduce(u, v);
    let l1 = sup_norm(&a0);
    let l2 = sup_norm(&b0);

    // every vector of norm l1 is m·a0 + n·b0 with |n| ≤ 2 l1²/h
    let nmax = (BigInt::from(2) * &l1 * &l1) / &h;
    let mut shortest: Vec<(Vec3, BigInt, BigInt)> = Vec::new();
    let mut n = -nmax.clone();
    while n <= nmax {
        let base = scale(&n, &b0);
        let k0 = best_shift(&a0, &base);
        if sup_norm(&comb(&k0, &a0, &base)) <= l1 {
            let (lo, hi) = level_range(&a0, &base, &k0, &l1);
            let mut m = lo;
            while m <= hi {
                let vtx = comb(&m, &a0, &base);
                if !vtx.iter().all(Zero::is_zero) {
                    shortest.push((vtx, m.clone(), n.clone()));
                }
                m += 1;
            }
        }
        n += 1;
    }
    let (a, m, n) = shortest
        .into_iter()
        .map(|(v, m, n)| {
            let t = IntegerTriple::normalize(&v).expect("nonzero");
            let flip = t.coords() != &v;
            let (m, n) = if flip { (-m, -n) } else { (m, n) };
            (t.into_inner(), m, n)
        })
        .min_by(|x, y| euclid2(&x.0).cmp(&euclid2(&y.0)).then_with(|| lex_key(&y.0).cmp(&lex_key(&x.0))))
        .expect("the reduced basis vector itself has norm l1");

    // completion: m f - n e = 1 gives A ∧ (e a0 + f b0) = A0 ∧ B0
    let eg = m.extended_gcd(&n);
    debug_assert!(eg.gcd.is_one());
    let (f, e) = (eg.x.clone(), -eg.y.clone());
    let start = add(&scale(&e, &a0), &scale(&f, &b0));
    let k0 = best_shift(&a, &start);
    let shortest_b = sup_norm(&comb(&k0, &a, &start));
    debug_assert_eq!(shortest_b, l2);
    let (lo, hi) = level_range(&a, &start, &k0, &shortest_b);
    // minimize the Euclidean length over [lo, hi]: quadratic in k
    let aa = euclid2(&a);
    let ab = dot(&a, &start);
    let kstar_floor = (-&ab).div_floor(&aa);
    let mut cands = Vec::new();
    for k in [kstar_floor.clone(), kstar_floor + 1] {
        let k = k.clamp(lo.clone(), hi.clone());
        cands.push(comb(&k, &a, &start));
    }
    let b = cands
        .into_iter()
        .map(|v| IntegerTriple::normalize(&v).expect("nonzero").into_inner())
        .min_by(|x, y| euclid2(x).cmp(&euclid2(y)).then_with(|| lex_key(x).cmp(&lex_key(y))))
        .unwrap();

    let basis = LineBasis {
        line: line.clone(),
        a: IntegerTriple::try_exact(a).expect("normalized"),
        b: IntegerTriple::try_exact(b).expect("normalized"),
    };
    assert!(basis.is_valid(), "reduced basis violates its bounds for {:?}", line);
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn line(r: i64, s: i64, t: i64) -> ProjectiveLine {
        ProjectiveLine(IntegerTriple::from_i64(r, s, t).unwrap())
    }

    fn v(x: i64, y: i64, z: i64) -> IntegerTriple {
        IntegerTriple::try_exact(vec3(x, y, z)).unwrap()
    }

    #[test]
    fn reference_lines() {
        let b = reduced_line_basis(&line(1, 1, -1));
        assert_eq!((b.a.clone(), b.b.clone()), (v(1, 0, 1), v(0, 1, 1)));
        let b = reduced_line_basis(&line(1, 0, 0));
        assert_eq!((b.a.clone(), b.b.clone()), (v(0, 1, 0), v(0, 0, 1)));
    }

    /// Exhaustive oracle: the product of the two successive minima of `Δ(Z)`
    /// by brute force over a box.
    fn minima_by_scan(d: &Vec3, r: i64) -> (BigInt, BigInt) {
        let mut vs: Vec<Vec3> = Vec::new();
        for x in -r..=r {
            for y in -r..=r {
                for z in -r..=r {
                    let w = vec3(x, y, z);
                    if (x, y, z) != (0, 0, 0) && dot(&w, d).is_zero() {
                        vs.push(w);
                    }
                }
            }
        }
        vs.sort_by_key(sup_norm);
        let first = vs[0].clone();
        let second = vs.iter().find(|w| !wedge(&first, w).iter().all(Zero::is_zero)).unwrap();
        (sup_norm(&first), sup_norm(second))
    }

    #[test]
    fn successive_minima_match_scan() {
        let b = reduced_line_basis(&line(5, 3, -7));
        let (l1, l2) = minima_by_scan(line(5, 3, -7).coords(), 8);
        assert_eq!((b.a.norm(), b.b.norm()), (l1, l2));
        assert!((b.a.norm() * b.b.norm()).pow(2) <= BigInt::from(3 * 49));
        for (r, s, t) in [(2, 3, 5), (1, 7, -3), (4, 0, 9), (6, 10, 15), (0, 0, 1), (11, -13, 2)] {
            let l = line(r, s, t);
            let b = reduced_line_basis(&l);
            let (l1, l2) = minima_by_scan(l.coords(), 16);
            assert_eq!((b.a.norm(), b.b.norm()), (l1, l2), "{:?}", l);
        }
    }

    #[test]
    fn huge_degenerate_line() {
        let big = BigInt::from(10u32).pow(40);
        let l = ProjectiveLine(IntegerTriple::normalize(&[BigInt::one(), big.clone(), BigInt::zero()]).unwrap());
        let b = reduced_line_basis(&l);
        assert_eq!(b.a, v(0, 0, 1));
        assert_eq!(b.b.norm(), big);
    }

    proptest! {
        #[test]
        fn basis_invariants_hold(r in -500i64..500, s in -500i64..500, t in -500i64..500) {
            prop_assume!((r, s, t) != (0, 0, 0));
            let l = line(r, s, t);
            let b = reduced_line_basis(&l);
            prop_assert!(b.is_valid());
        }
    }
}
