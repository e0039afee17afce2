//! Multivariate gcd by recursive primitive remainder sequences, content
//! splitting, and gcd-free bases.

use crate::poly::Polynomial;

/// Normalized gcd (integer content 1, positive leading coefficient).
/// gcd(0, 0) = 0.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.ring());
    }
    if a.div_exact(b).is_some() {
        return b.normalized();
    }
    if b.div_exact(a).is_some() {
        return a.normalized();
    }
    let (sa, sb) = (a.support(), b.support());
    let Some(&v) = sa.iter().chain(&sb).min() else { return Polynomial::one(a.ring()) };
    let (in_a, in_b) = (sa.contains(&v), sb.contains(&v));
    let g = match (in_a, in_b) {
        (true, true) => {
            let (ca, pa) = split_content(a, v);
            let (cb, pb) = split_content(b, v);
            let c = gcd(&ca, &cb);
            let p = prs_gcd(&pa, &pb, v);
            &c * &p
        }
        (true, false) => gcd(&content_in(a, v), b),
        (false, true) => gcd(a, &content_in(b, v)),
        (false, false) => unreachable!("v occurs in one of the operands"),
    };
    g.normalized()
}

/// Gcd of the coefficients of `p` viewed as univariate in `var`.
pub fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let mut acc = Polynomial::zero(p.ring());
    for c in p.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            break;
        }
    }
    acc
}

/// p = content · primitive, with the content normalized.
pub fn split_content(p: &Polynomial, var: usize) -> (Polynomial, Polynomial) {
    if p.is_zero() {
        return (Polynomial::zero(p.ring()), Polynomial::zero(p.ring()));
    }
    let c = content_in(p, var);
    let prim = p.div_exact(&c).expect("content divides");
    (c, prim)
}

/// Pseudo-remainder of `a` by `b` in `var`, scaling by the leading coefficient of `b` as needed.
fn pseudo_remainder(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<Polynomial> = a.to_vec();
    trim(&mut r);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            r[shift + i] = &r[shift + i] - &t;
        }
        trim(&mut r);
    }
    r
}

fn trim(v: &mut Vec<Polynomial>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn primitive_dense(v: &[Polynomial]) -> Vec<Polynomial> {
    let mut c = Polynomial::zero(v[0].ring());
    for x in v {
        if !x.is_zero() {
            c = gcd(&c, x);
            if c.is_constant() {
                break;
            }
        }
    }
    if c.is_constant() {
        let inv = c.rational_content();
        return v.iter().map(|x| x.scale(&(num_rational::BigRational::from_integer(1.into()) / &inv))).collect();
    }
    v.iter().map(|x| x.div_exact(&c).expect("content divides")).collect()
}

/// Gcd of two polynomials primitive in `var` that both involve it.
fn prs_gcd(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let mut p = a.coefficients_in(var);
    let mut q = b.coefficients_in(var);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.len() == 1 {
            return Polynomial::one(a.ring());
        }
        let r = pseudo_remainder(&p, &q);
        if r.is_empty() {
            let ring = a.ring();
            return Polynomial::from_coefficients_in(ring, var, &primitive_dense(&q)).normalized();
        }
        p = std::mem::replace(&mut q, primitive_dense(&r));
    }
}

/// Refines a multiset of polynomials into pairwise coprime nonconstant
/// factors whose product (with multiplicities) equals the input up to a constant.
pub fn gcd_free_basis(items: &[(Polynomial, u32)]) -> Vec<(Polynomial, u32)> {
    let mut list: Vec<(Polynomial, u32)> = items
        .iter()
        .filter(|(p, m)| !p.is_constant() && *m > 0)
        .map(|(p, m)| (p.normalized(), *m))
        .collect();
    'restart: loop {
        for i in 0..list.len() {
            for j in (i + 1)..list.len() {
                let g = gcd(&list[i].0, &list[j].0);
                if g.is_constant() {
                    continue;
                }
                let (pi, mi) = list[i].clone();
                let (pj, mj) = list[j].clone();
                let ai = pi.div_exact(&g).unwrap();
                let aj = pj.div_exact(&g).unwrap();
                list.remove(j);
                list.remove(i);
                for (p, m) in [(ai, mi), (aj, mj), (g, mi + mj)] {
                    if !p.is_constant() {
                        list.push((p.normalized(), m));
                    }
                }
                continue 'restart;
            }
        }
        break;
    }
    list.sort_by_cached_key(|a| a.0.to_string());
    list
}
