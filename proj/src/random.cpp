#include "holoq/random.hpp"

#include <Eigen/QR>
#include <cmath>

namespace holoq {

double gaussian(Rng& rng) {
  double u1 = uniform_double(rng);
  const double u2 = uniform_double(rng);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Complex gaussian_complex(Rng& rng) {
  const double re = gaussian(rng);
  const double im = gaussian(rng);
  return Complex{re, im};
}

Matrix random_unitary(Eigen::Index dim, Rng& rng) {
  Matrix g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = gaussian_complex(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < dim; ++c) {
    const Complex d = r(c, c);
    const double mag = std::abs(d);
    q.col(c) *= (mag > 0.0) ? (d / mag) : Complex{1.0, 0.0};
  }
  return q;
}

Ket random_ket(int qubits, Rng& rng) {
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  Ket k;
  k.qubits = qubits;
  k.amplitudes = Vector(dim);
  for (Eigen::Index i = 0; i < dim; ++i) k.amplitudes(i) = gaussian_complex(rng);
  k.amplitudes /= k.amplitudes.norm();
  return k;
}

Qumix random_mixed(int qubits, Rng& rng) {
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  Matrix a(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = gaussian_complex(rng);
  Matrix rho = a * a.adjoint();
  rho /= rho.trace();
  return Qumix(qubits, std::move(rho));
}

}  // namespace holoq
