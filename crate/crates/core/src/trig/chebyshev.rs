use crate::exact::{int, Polynomial};

/// Chebyshev polynomial of the first kind, `cos(k t) = T_k(cos t)`.
pub fn chebyshev_t(k: usize) -> Polynomial {
    recurrence(k, Polynomial::from_i64s(&[1]), Polynomial::x())
}

/// Chebyshev polynomial of the second kind,
/// `sin((k + 1) t) = sin t * U_k(cos t)`.
pub fn chebyshev_u(k: usize) -> Polynomial {
    recurrence(k, Polynomial::from_i64s(&[1]), Polynomial::from_i64s(&[0, 2]))
}

fn recurrence(k: usize, p0: Polynomial, p1: Polynomial) -> Polynomial {
    if k == 0 {
        return p0;
    }
    let two_x = Polynomial::monomial(int(2), 1);
    let (mut prev, mut cur) = (p0, p1);
    for _ in 1..k {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn low_orders() {
        assert_eq!(chebyshev_t(2), Polynomial::from_i64s(&[-1, 0, 2]));
        assert_eq!(chebyshev_t(5), Polynomial::from_i64s(&[0, 5, 0, -20, 0, 16]));
        assert_eq!(chebyshev_u(6), Polynomial::from_i64s(&[-1, 0, 24, 0, -80, 0, 64]));
    }

    #[test]
    fn q1_from_u6() {
        let p = &Polynomial::from_i64s(&[1]) + &chebyshev_u(6).scale(&rat(1, 2));
        assert_eq!(
            p.in_square().unwrap(),
            Polynomial::from_ratios(&[(1, 2), (12, 1), (-40, 1), (32, 1)])
        );
    }

    #[test]
    fn trigonometric_identities_hold() {
        for k in 0..12 {
            let t = chebyshev_t(k);
            let u = chebyshev_u(k);
            for i in 0..50 {
                let a = 0.06 * i as f64;
                assert!((t.eval_f64(a.cos()) - (k as f64 * a).cos()).abs() < 1e-9);
                let lhs = a.sin() * u.eval_f64(a.cos());
                assert!((lhs - ((k + 1) as f64 * a).sin()).abs() < 1e-9);
            }
        }
    }
}
