use super::{Monomial, Poly, PolyError, VarId};

/// Elementary symmetric polynomials of `xs`, degrees 1 to `xs.len()`.
pub fn elementary(template: &Poly, xs: &[VarId]) -> Vec<Poly> {
    let vars = template.vars();
    // e_k via the product (1 + x_1 t)(1 + x_2 t)... collected by powers of t.
    let mut es = vec![Poly::one(vars)];
    for &x in xs {
        let xp = Poly::var(vars, x);
        let mut next = es.clone();
        next.push(Poly::zero(vars));
        for k in 1..next.len() {
            next[k] = &next[k] + &(&es[k - 1] * &xp);
        }
        es = next;
    }
    es.remove(0);
    es
}

/// Rewrites a polynomial symmetric in `xs` in terms of the symbols `es`,
/// where `es[k]` stands for the elementary symmetric polynomial of degree
/// `k + 1`. Other symbols pass through unchanged.
pub fn to_elementary(p: &Poly, xs: &[VarId], es: &[VarId]) -> Result<Poly, PolyError> {
    assert_eq!(
        xs.len(),
        es.len(),
        "one target symbol per elementary polynomial"
    );
    let vars = p.vars();
    for &e in es {
        if p.contains(e) {
            return Err(PolyError::TargetOccupied(vars.name(e).into()));
        }
    }
    let elem = elementary(p, xs);
    let key = |m: &Monomial| -> Vec<u16> { xs.iter().map(|&x| m.exp(x)).collect() };
    let mut rest = p.clone();
    let mut out = Poly::zero(vars);
    while !rest.is_zero() {
        let top = rest
            .terms()
            .iter()
            .map(|(m, _)| key(m))
            .max()
            .expect("nonempty");
        if top.windows(2).any(|w| w[0] < w[1]) {
            return Err(PolyError::NotSymmetric);
        }
        // Coefficient of the x-monomial `top`, free of the xs.
        let coeff_terms: Vec<_> = rest
            .terms()
            .iter()
            .filter(|(m, _)| key(m) == top)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                for &x in xs {
                    m2 = m2.with_exp(x, 0);
                }
                (m2, c.clone())
            })
            .collect();
        let coeff = Poly::from_terms(vars, coeff_terms);
        let mut expo = vec![0u16; xs.len()];
        for k in 0..xs.len() {
            let next = if k + 1 < xs.len() { top[k + 1] } else { 0 };
            expo[k] = top[k] - next;
        }
        let mut in_x = coeff.clone();
        let mut in_e = Monomial::one(vars.len());
        for (k, &d) in expo.iter().enumerate() {
            if d > 0 {
                in_x = &in_x * &elem[k].pow(d as u32);
                in_e = in_e.with_exp(es[k], d);
            }
        }
        rest = &rest - &in_x;
        out = &out + &coeff.mul_term(&in_e, &num_bigint::BigInt::from(1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprio::parse;
    use crate::poly::VarTable;

    #[test]
    fn power_sums_reduce() {
        let r = VarTable::registry();
        let xs = [r.var("mu2"), r.var("mu3"), r.var("mu4")];
        let es = [r.var("y1"), r.var("y2"), r.var("y3")];
        let p = parse("mu2^2 + mu3^2 + mu4^2", &r).unwrap();
        let q = to_elementary(&p, &xs, &es).unwrap();
        assert_eq!(q, parse("y1^2 - 2*y2", &r).unwrap());
        let p = parse("c*(mu2^3 + mu3^3 + mu4^3) + kap", &r).unwrap();
        let q = to_elementary(&p, &xs, &es).unwrap();
        assert_eq!(q, parse("c*(y1^3 - 3*y1*y2 + 3*y3) + kap", &r).unwrap());
    }

    #[test]
    fn asymmetric_rejected() {
        let r = VarTable::registry();
        let xs = [r.var("mu2"), r.var("mu3"), r.var("mu4")];
        let es = [r.var("y1"), r.var("y2"), r.var("y3")];
        let p = parse("mu2^2 + mu3", &r).unwrap();
        assert_eq!(to_elementary(&p, &xs, &es), Err(PolyError::NotSymmetric));
    }
}
