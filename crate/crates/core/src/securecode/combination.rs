use super::{SecureDesign, SecureError, SecurityParams};
use crate::coset::{rs_parity_check, CosetCode};
use crate::fmatrix::FMatrix;
use crate::gf::FieldSpec;
use crate::netgraph::{combination, NetworkCode};

/// Secure code for `B(n, M)` from the `n x (M + k)` Reed-Solomon parity check
/// `P`: the first `k` rows of `P^T` form the coset code and the remaining `M`
/// rows are the coding vectors of the source edges. Middle nodes forward.
pub fn combination_secure_design(
    n: usize,
    m: usize,
    field: &FieldSpec,
    k: usize,
) -> Result<SecureDesign, SecureError> {
    if k > n {
        return Err(SecureError::BadParameters(format!(
            "k = {k} exceeds n = {n}"
        )));
    }
    let net = combination(n, m)?;
    let q = field.order();
    if (m + k) as u64 > (q - 1) as u64 {
        return Err(SecureError::FieldTooSmall {
            q,
            detail: format!("a length-{} Reed-Solomon code needs M + k <= q - 1", m + k),
        });
    }
    let pt = rs_parity_check(n, m + k, field, field.primitive())?.transpose();
    let h = if k == 0 {
        FMatrix::zeros(field, 0, n)
    } else {
        pt.select_rows(&(0..k).collect::<Vec<_>>())?
    };
    let local = net
        .edges()
        .iter()
        .map(|e| {
            if e.tail == net.source() {
                let u: usize = net.node_name(e.head)[1..]
                    .parse()
                    .expect("middle nodes are U<i>");
                pt.row(k + u - 1).to_vec()
            } else {
                vec![1]
            }
        })
        .collect();
    let netcode = NetworkCode::from_local(net, n, field, local)?;
    let params = SecurityParams {
        mu: n - k,
        k,
        n,
        restricted: None,
    };
    SecureDesign::certify(CosetCode::new(h)?, netcode, params, "combination", 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::is_mds_parity_check;

    #[test]
    fn b34_over_gf7() {
        let f = FieldSpec::prime(7).unwrap();
        let d = combination_secure_design(3, 4, &f, 2).unwrap();
        assert_eq!(
            d.coset.parity_check().to_rows(),
            vec![vec![1, 1, 1], vec![3, 2, 6]]
        );
        let net = d.netcode.network();
        let vectors: Vec<&[u32]> = ["S-U1", "S-U2", "S-U3", "S-U4"]
            .iter()
            .map(|id| d.netcode.global(net.edge_by_id(id).unwrap()))
            .collect();
        assert_eq!(
            vectors,
            vec![&[2, 4, 1][..], &[6, 1, 6], &[4, 2, 1], &[5, 4, 6]]
        );
        assert!(d.certificate.secure && d.certificate.decodable);
        assert_eq!(d.params.mu, 1);
    }

    #[test]
    fn degenerate_and_too_small() {
        let f3 = FieldSpec::prime(3).unwrap();
        let d = combination_secure_design(1, 1, &f3, 0).unwrap();
        assert_eq!(d.coset.k(), 0);
        assert!(d.is_valid());
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            combination_secure_design(2, 5, &f5, 1),
            Err(SecureError::FieldTooSmall { q: 5, .. })
        ));
    }

    #[test]
    fn designs_are_mds_and_secure() {
        for p in [5u64, 7, 11] {
            let f = FieldSpec::prime(p).unwrap();
            for n in 1..=3 {
                for m in n..=5 {
                    for k in 0..=n {
                        if m + k > p as usize - 1 {
                            continue;
                        }
                        let d = combination_secure_design(n, m, &f, k).unwrap();
                        assert!(d.is_valid(), "p={p} n={n} m={m} k={k}");
                        let rs = rs_parity_check(n, m + k, &f, f.primitive()).unwrap();
                        assert!(is_mds_parity_check(&rs).unwrap().is_mds);
                    }
                }
            }
        }
    }
}
