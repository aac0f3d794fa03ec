// Test-only brute-force oracle: a tiny dense complex-matrix calculator,
// independent of the library's gate and evaluation code paths. Everything
// here is written with plain loops over std::vector so expected values in
// tests are derived by a second route.

#ifndef HOLOQ_TESTS_ORACLES_HPP
#define HOLOQ_TESTS_ORACLES_HPP

#include <cassert>
#include <complex>
#include <vector>

namespace oracle {

using C = std::complex<double>;

struct Mat {
  int dim = 0;
  std::vector<C> a;  // row-major

  Mat() = default;
  explicit Mat(int d) : dim(d), a(static_cast<std::size_t>(d) * d, C{0, 0}) {}
  C& at(int r, int c) { return a[static_cast<std::size_t>(r) * dim + c]; }
  const C& at(int r, int c) const { return a[static_cast<std::size_t>(r) * dim + c]; }

  static Mat eye(int d) {
    Mat m(d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

inline Mat mul(const Mat& x, const Mat& y) {
  assert(x.dim == y.dim);
  Mat out(x.dim);
  for (int r = 0; r < x.dim; ++r)
    for (int k = 0; k < x.dim; ++k) {
      const C v = x.at(r, k);
      if (v == C{0, 0}) continue;
      for (int c = 0; c < x.dim; ++c) out.at(r, c) += v * y.at(k, c);
    }
  return out;
}

inline Mat dagger(const Mat& x) {
  Mat out(x.dim);
  for (int r = 0; r < x.dim; ++r)
    for (int c = 0; c < x.dim; ++c) out.at(c, r) = std::conj(x.at(r, c));
  return out;
}

inline Mat kron(const Mat& x, const Mat& y) {
  Mat out(x.dim * y.dim);
  for (int rx = 0; rx < x.dim; ++rx)
    for (int cx = 0; cx < x.dim; ++cx)
      for (int ry = 0; ry < y.dim; ++ry)
        for (int cy = 0; cy < y.dim; ++cy)
          out.at(rx * y.dim + ry, cx * y.dim + cy) = x.at(rx, cx) * y.at(ry, cy);
  return out;
}

inline Mat conjugate(const Mat& u, const Mat& rho) { return mul(mul(u, rho), dagger(u)); }

inline C trace(const Mat& x) {
  C t{0, 0};
  for (int i = 0; i < x.dim; ++i) t += x.at(i, i);
  return t;
}

// Projector |v><v| from an amplitude list.
inline Mat projector(const std::vector<C>& v) {
  Mat out(static_cast<int>(v.size()));
  for (int r = 0; r < out.dim; ++r)
    for (int c = 0; c < out.dim; ++c)
      out.at(r, c) = v[static_cast<std::size_t>(r)] * std::conj(v[static_cast<std::size_t>(c)]);
  return out;
}

// Permutation unitary on n qubits from an index map.
template <typename F>
Mat permutation(int dim, F&& image) {
  Mat out(dim);
  for (int x = 0; x < dim; ++x) out.at(image(x), x) = 1.0;
  return out;
}

// Probability of reading the last qubit as |1> in the canonical basis.
inline double last_qubit_one(const Mat& rho) {
  double p = 0.0;
  for (int i = 1; i < rho.dim; i += 2) p += rho.at(i, i).real();
  return p;
}

// Partial trace keeping the given (0-based, MSB-first) qubits in order.
inline Mat reduce(const Mat& rho, int qubits, const std::vector<int>& keep) {
  const int m = static_cast<int>(keep.size());
  std::vector<int> traced;
  for (int q = 0; q < qubits; ++q) {
    bool kept = false;
    for (int k : keep) kept = kept || (k == q);
    if (!kept) traced.push_back(q);
  }
  Mat out(1 << m);
  const auto bit = [qubits](int q) { return qubits - 1 - q; };
  for (int a = 0; a < (1 << m); ++a)
    for (int b = 0; b < (1 << m); ++b) {
      int base_r = 0, base_c = 0;
      for (int t = 0; t < m; ++t) {
        base_r |= ((a >> (m - 1 - t)) & 1) << bit(keep[static_cast<std::size_t>(t)]);
        base_c |= ((b >> (m - 1 - t)) & 1) << bit(keep[static_cast<std::size_t>(t)]);
      }
      C sum{0, 0};
      for (int e = 0; e < (1 << traced.size()); ++e) {
        int env = 0;
        for (std::size_t t = 0; t < traced.size(); ++t)
          env |= ((e >> (traced.size() - 1 - t)) & 1) << bit(traced[t]);
        sum += rho.at(base_r | env, base_c | env);
      }
      out.at(a, b) = sum;
    }
  return out;
}

inline double max_abs_diff(const Mat& x, const Mat& y) {
  assert(x.dim == y.dim);
  double d = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
  return d;
}

}  // namespace oracle

#endif  // HOLOQ_TESTS_ORACLES_HPP
