#pragma once

#include <vector>

#include "subcubes/bounds.hpp"
#include "subcubes/cube.hpp"

// Packing-inequality certificates for an irredundant family with a fixed
// choice of private vertices. Both certificates are exact rationals and are
// at most 1 for any valid choice; evaluating them on concrete families makes
// the set-pair argument behind the combinatorial upper bound checkable.

namespace subcubes {

/// One chosen private vertex per member, aligned with member order.
struct PrivateAssignment {
  std::vector<mask_t> w;
};

/// True iff w[i] lies in member i and in no other member, for every i.
bool is_valid_assignment(const Family& f, const PrivateAssignment& a);

/// Numerically smallest private vertex per member; throws
/// std::invalid_argument when some member has none (family not irredundant).
PrivateAssignment smallest_private_assignment(const Family& f);

/// Smallest private vertex within Hamming distance `radius` of `center`;
/// throws when some member has no private vertex inside the ball.
PrivateAssignment smallest_ball_assignment(const Family& f, int radius,
                                           mask_t center = 0);

/// Sum over members C containing x of 1 / C(|w_C ^ x| + n - k, n - k).
/// At most 1 when the assignment is valid.
BigRat bollobas_certificate(const Family& f, const PrivateAssignment& a,
                            const Vertex& x);

/// Ball variant: requires every w_C to have weight <= k and |x| = k; sums
/// 1 / C(|v_C| + k - |w_C|, k - |w_C|) over members with w_C <= x <= u_C.
BigRat ball_certificate(const Family& f, const PrivateAssignment& a,
                        const Vertex& x);

struct CertificateMax {
  BigRat value;
  mask_t argmax = 0;  // smallest vertex attaining the maximum
};

/// Maximum of the certificate over all 2^n vertices (OpenMP sweep).
CertificateMax max_bollobas_certificate(const Family& f,
                                        const PrivateAssignment& a);
CertificateMax max_bollobas_certificate_serial(const Family& f,
                                               const PrivateAssignment& a);

/// Maximum of the ball certificate over all weight-k vertices.
CertificateMax max_ball_certificate(const Family& f,
                                    const PrivateAssignment& a);
CertificateMax max_ball_certificate_serial(const Family& f,
                                           const PrivateAssignment& a);

/// Exact sum of the certificate over all 2^n vertices; equals
/// |F| * sum_{l=0}^{k} C(k,l)/C(l+n-k, n-k) for any valid assignment.
BigRat bollobas_certificate_total(const Family& f, const PrivateAssignment& a);

}  // namespace subcubes
