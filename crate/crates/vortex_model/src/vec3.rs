//! Small fixed-size helpers over any `Scalar`.

use interval_core::Scalar;

pub type V3<S> = [S; 3];
pub type M3<S> = [[S; 3]; 3];

pub fn lift3<S: Scalar>(v: [f64; 3]) -> V3<S> {
    [S::from_f64(v[0]), S::from_f64(v[1]), S::from_f64(v[2])]
}

pub fn add<S: Scalar>(a: V3<S>, b: V3<S>) -> V3<S> {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub<S: Scalar>(a: V3<S>, b: V3<S>) -> V3<S> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale<S: Scalar>(s: S, a: V3<S>) -> V3<S> {
    [s * a[0], s * a[1], s * a[2]]
}

pub fn dot<S: Scalar>(a: V3<S>, b: V3<S>) -> S {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm_sqr<S: Scalar>(a: V3<S>) -> S {
    a[0].sqr() + a[1].sqr() + a[2].sqr()
}

pub fn cross<S: Scalar>(a: V3<S>, b: V3<S>) -> V3<S> {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn zero3<S: Scalar>() -> V3<S> {
    [S::zero(), S::zero(), S::zero()]
}

pub fn e3<S: Scalar>() -> V3<S> {
    [S::zero(), S::zero(), S::one()]
}

pub fn ident<S: Scalar>() -> M3<S> {
    let (o, z) = (S::one(), S::zero());
    [[o, z, z], [z, o, z], [z, z, o]]
}

pub fn mat_vec3<S: Scalar>(m: &M3<S>, v: V3<S>) -> V3<S> {
    [dot(m[0], v), dot(m[1], v), dot(m[2], v)]
}

pub fn mat_mul3<S: Scalar>(a: &M3<S>, b: &M3<S>) -> M3<S> {
    let mut out = [[S::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

pub fn mat_sub3<S: Scalar>(a: &M3<S>, b: &M3<S>) -> M3<S> {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][j] - b[i][j];
        }
    }
    out
}

/// `d d^T`.
pub fn outer<S: Scalar>(a: V3<S>, b: V3<S>) -> M3<S> {
    let mut out = [[S::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i] * b[j];
        }
    }
    out
}

/// Rotation about `e3` by the angle `2 pi k / m`.
pub fn rot<S: Scalar>(k: i64, m: i64) -> M3<S> {
    let c = S::cos_turn(k, m);
    let s = S::sin_turn(k, m);
    let (o, z) = (S::one(), S::zero());
    [[c, -s, z], [s, c, z], [z, z, o]]
}

/// `J3 v = e3 x v`.
pub fn j3<S: Scalar>(v: V3<S>) -> V3<S> {
    [-v[1], v[0], S::zero()]
}

pub fn mid3<S: Scalar>(v: V3<S>) -> [f64; 3] {
    [v[0].mid(), v[1].mid(), v[2].mid()]
}
