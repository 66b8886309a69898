//! Multivariate gcd by recursion on variables: treat both polynomials as
//! univariate in the highest occurring variable, split off the content, and
//! run a primitive pseudo-remainder sequence on the primitive parts.
//!
//! Every result is normalized to the deterministic associate with leading
//! coefficient 1 under the degree-lex term order.

use super::MultiPoly;
use crate::fields::Field;

pub(super) fn gcd_impl<F: Field>(p: &MultiPoly<F>, q: &MultiPoly<F>) -> MultiPoly<F> {
    if p.is_zero() {
        return q.normalize_monic();
    }
    if q.is_zero() {
        return p.normalize_monic();
    }
    // nonzero constants are units over a field
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one(p.field().clone(), p.vars().clone());
    }
    let vp = p.max_variable();
    let vq = q.max_variable();
    let var = vp.max(vq).expect("both nonconstant");
    match (vp, vq) {
        (Some(a), Some(b)) if a == b => gcd_univariate_step(p, q, var),
        _ => {
            // the main variable occurs in only one operand: reduce that
            // side to its content with respect to the variable
            if vp == Some(var) {
                gcd_impl(&content_in(p, var), q)
            } else {
                gcd_impl(p, &content_in(q, var))
            }
        }
    }
}

fn gcd_univariate_step<F: Field>(
    p: &MultiPoly<F>,
    q: &MultiPoly<F>,
    var: usize,
) -> MultiPoly<F> {
    let cp = content_in(p, var);
    let cq = content_in(q, var);
    let cg = gcd_impl(&cp, &cq);
    let pp = p.exact_div(&cp).expect("content divides");
    let qq = q.exact_div(&cq).expect("content divides");

    let (mut a, mut b) = if p.degree_in(var) >= q.degree_in(var) {
        (pp, qq)
    } else {
        (qq, pp)
    };
    loop {
        let r = pseudo_rem(&a, &b, var);
        if r.is_zero() {
            break;
        }
        let rp = if r.degree_in(var) == 0 {
            // coprime in the main variable
            b = MultiPoly::one(p.field().clone(), p.vars().clone());
            break;
        } else {
            primitive_part(&r, var)
        };
        a = std::mem::replace(&mut b, rp);
    }
    let g = primitive_part(&b, var);
    cg.mul(&g).normalize_monic()
}

/// Gcd of the univariate coefficients with respect to `var`.
fn content_in<F: Field>(p: &MultiPoly<F>, var: usize) -> MultiPoly<F> {
    let mut content = MultiPoly::zero(p.field().clone(), p.vars().clone());
    for e in 0..=p.degree_in(var) {
        let c = p.coeff_of_power(var, e);
        if c.is_zero() {
            continue;
        }
        content = gcd_impl(&content, &c);
        if content.is_one() {
            break;
        }
    }
    content
}

fn primitive_part<F: Field>(p: &MultiPoly<F>, var: usize) -> MultiPoly<F> {
    let c = content_in(p, var);
    p.exact_div(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` as univariate polynomials in `var`:
/// repeatedly cross-multiplies by the leading coefficient of `b`, which
/// keeps everything inside the polynomial ring.
fn pseudo_rem<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>, var: usize) -> MultiPoly<F> {
    let db = b.degree_in(var);
    let lb = b.coeff_of_power(var, db);
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(var);
        if dr < db {
            break;
        }
        let lr = r.coeff_of_power(var, dr);
        // r <- lb * r - lr * x^(dr-db) * b
        r = r
            .mul(&lb)
            .sub(&b.mul(&lr).mul_var_power(var, dr - db));
        debug_assert!(r.is_zero() || r.degree_in(var) < dr);
    }
    r
}
