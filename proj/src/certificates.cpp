#include "subcubes/certificates.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subcubes {

namespace {

void check_assignment(const Family& f, const PrivateAssignment& a) {
  if (!is_valid_assignment(f, a))
    throw std::invalid_argument("invalid private assignment for family");
}

BigRat bollobas_at(const Family& f, const PrivateAssignment& a, mask_t x) {
  const int codim = f.n() - f.k();
  BigRat sum = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].contains_bits(x)) continue;
    int d = hamming_bits(a.w[i], x);
    sum += BigRat(1, binomial(d + codim, codim));
  }
  return sum;
}

BigRat ball_at(const Family& f, const PrivateAssignment& a, mask_t x) {
  const int k = f.k();
  BigRat sum = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    mask_t w = a.w[i];
    mask_t u = f[i].end_vertex();
    // x must lie in the interval [w_C, u_C].
    if ((w & ~x) || (x & ~u)) continue;
    int vc = weight(f[i].start_vertex());
    int kw = k - weight(w);
    sum += BigRat(1, binomial(vc + kw, kw));
  }
  return sum;
}

void check_ball_preconditions(const Family& f, const PrivateAssignment& a,
                              const Vertex& x) {
  if (x.n != f.n())
    throw std::invalid_argument("ball_certificate: dimension mismatch");
  if (weight(x.bits) != f.k())
    throw std::invalid_argument("ball_certificate: x must have weight k");
  for (mask_t w : a.w)
    if (weight(w) > f.k())
      throw std::invalid_argument(
          "ball_certificate: an assigned private vertex lies outside the "
          "radius-k ball around the all-zero vertex");
}

template <typename Eval>
CertificateMax sweep_max(const std::vector<mask_t>& points, Eval eval,
                         bool parallel) {
  CertificateMax best;
  best.value = -1;
  if (points.empty()) {
    best.value = 0;
    return best;
  }
  if (!parallel) {
    for (mask_t x : points) {
      BigRat v = eval(x);
      if (v > best.value) {
        best.value = v;
        best.argmax = x;
      }
    }
    return best;
  }
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::vector<CertificateMax> local(threads);
  for (auto& l : local) l.value = -1;
#pragma omp parallel num_threads(threads)
  {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    CertificateMax mine;
    mine.value = -1;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(points.size());
         ++i) {
      BigRat v = eval(points[i]);
      if (v > mine.value || (v == mine.value && points[i] < mine.argmax)) {
        mine.value = v;
        mine.argmax = points[i];
      }
    }
    local[tid] = mine;
  }
  // Merge in thread order so ties resolve to the smallest vertex.
  for (const auto& l : local) {
    if (l.value < 0) continue;
    if (l.value > best.value ||
        (l.value == best.value && l.argmax < best.argmax)) {
      best = l;
    }
  }
  return best;
}

// Full-cube sweeps materialize 2^n points; keep them to desk scale.
constexpr int max_sweep_dim = 20;

void check_sweep_dim(int n) {
  if (n > max_sweep_dim)
    throw std::invalid_argument("certificate sweep capped at n <= " +
                                std::to_string(max_sweep_dim));
}

std::vector<mask_t> all_points(int n) {
  std::vector<mask_t> pts(std::size_t{1} << n);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = static_cast<mask_t>(i);
  return pts;
}

std::vector<mask_t> weight_k_points(int n, int k) {
  std::vector<mask_t> pts;
  for (mask_t x = 0; x <= full_mask(n); ++x)
    if (weight(x) == k) pts.push_back(x);
  return pts;
}

}  // namespace

bool is_valid_assignment(const Family& f, const PrivateAssignment& a) {
  if (a.w.size() != f.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (a.w[i] & ~full_mask(f.n())) return false;
    if (!f[i].contains_bits(a.w[i])) return false;
    for (std::size_t j = 0; j < f.size(); ++j)
      if (j != i && f[j].contains_bits(a.w[i])) return false;
  }
  return true;
}

PrivateAssignment smallest_private_assignment(const Family& f) {
  auto privates = all_private_vertices(f);
  PrivateAssignment a;
  a.w.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (privates[i].empty())
      throw std::invalid_argument("member " + std::to_string(i) + " (" +
                                  to_word(f[i]) +
                                  ") has no private vertex; family is not "
                                  "irredundant");
    a.w.push_back(*std::min_element(privates[i].begin(), privates[i].end()));
  }
  return a;
}

PrivateAssignment smallest_ball_assignment(const Family& f, int radius,
                                           mask_t center) {
  auto privates = all_private_vertices(f);
  PrivateAssignment a;
  a.w.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    mask_t best = 0;
    bool found = false;
    for (mask_t v : privates[i]) {
      if (hamming_bits(v, center) > radius) continue;
      if (!found || v < best) {
        best = v;
        found = true;
      }
    }
    if (!found)
      throw std::invalid_argument(
          "member " + std::to_string(i) + " (" + to_word(f[i]) +
          ") has no private vertex inside the ball of radius " +
          std::to_string(radius));
    a.w.push_back(best);
  }
  return a;
}

BigRat bollobas_certificate(const Family& f, const PrivateAssignment& a,
                            const Vertex& x) {
  if (x.n != f.n())
    throw std::invalid_argument("bollobas_certificate: dimension mismatch");
  check_assignment(f, a);
  return bollobas_at(f, a, x.bits);
}

BigRat ball_certificate(const Family& f, const PrivateAssignment& a,
                        const Vertex& x) {
  check_assignment(f, a);
  check_ball_preconditions(f, a, x);
  return ball_at(f, a, x.bits);
}

CertificateMax max_bollobas_certificate(const Family& f,
                                        const PrivateAssignment& a) {
  check_sweep_dim(f.n());
  check_assignment(f, a);
  return sweep_max(
      all_points(f.n()), [&](mask_t x) { return bollobas_at(f, a, x); }, true);
}

CertificateMax max_bollobas_certificate_serial(const Family& f,
                                               const PrivateAssignment& a) {
  check_sweep_dim(f.n());
  check_assignment(f, a);
  return sweep_max(
      all_points(f.n()), [&](mask_t x) { return bollobas_at(f, a, x); }, false);
}

CertificateMax max_ball_certificate(const Family& f,
                                    const PrivateAssignment& a) {
  check_sweep_dim(f.n());
  check_assignment(f, a);
  if (!f.empty()) check_ball_preconditions(f, a, Vertex(full_mask(f.k()), f.n()));
  return sweep_max(weight_k_points(f.n(), f.k()),
                   [&](mask_t x) { return ball_at(f, a, x); }, true);
}

CertificateMax max_ball_certificate_serial(const Family& f,
                                           const PrivateAssignment& a) {
  check_sweep_dim(f.n());
  check_assignment(f, a);
  if (!f.empty()) check_ball_preconditions(f, a, Vertex(full_mask(f.k()), f.n()));
  return sweep_max(weight_k_points(f.n(), f.k()),
                   [&](mask_t x) { return ball_at(f, a, x); }, false);
}

BigRat bollobas_certificate_total(const Family& f, const PrivateAssignment& a) {
  check_sweep_dim(f.n());
  check_assignment(f, a);
  BigRat total = 0;
  for (mask_t x = 0; x <= full_mask(f.n()); ++x) total += bollobas_at(f, a, x);
  return total;
}

}  // namespace subcubes
