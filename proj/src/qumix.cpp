#include "holoq/qumix.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace holoq {

namespace {

Eigen::Index dim_for(int qubits) { return Eigen::Index{1} << qubits; }

}  // namespace

void check_qubit_cap(int n) {
  if (n > kMaxQubits) {
    std::ostringstream os;
    os << "qubit count " << n << " exceeds the dense-representation cap of "
       << kMaxQubits;
    throw QumixError(os.str());
  }
}

Ket Ket::basis(int n, unsigned long long index) {
  check_qubit_cap(n);
  Ket k;
  k.qubits = n;
  k.amplitudes = Vector::Zero(dim_for(n));
  k.amplitudes(static_cast<Eigen::Index>(index)) = Complex{1.0, 0.0};
  return k;
}

Qumix::Qumix(int qubits, Matrix m) : qubits_(qubits), m_(std::move(m)) {
  if (qubits < 0) throw QumixError("negative qubit count");
  check_qubit_cap(qubits);
  if (m_.rows() != m_.cols() || m_.rows() != dim_for(qubits))
    throw QumixError("qumix matrix shape does not match qubit count");
}

Qumix pure_qumix(const Ket& v) {
  if (std::abs(v.norm() - 1.0) > kTraceTol)
    throw QumixError("ket is not normalized");
  return Qumix(v.qubits, v.amplitudes * v.amplitudes.adjoint());
}

Qumix tensor(const Qumix& a, const Qumix& b) {
  const int n = a.qubits() + b.qubits();
  check_qubit_cap(n);
  const Eigen::Index da = a.dim(), db = b.dim();
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  return Qumix(n, std::move(out));
}

Qumix reduce(const Qumix& rho, std::span<const int> keep) {
  const int n = rho.qubits();
  const int m = static_cast<int>(keep.size());
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int q : keep) {
    if (q < 1 || q > n) throw QumixError("reduce: qubit index out of range");
    if (seen[static_cast<std::size_t>(q)]) throw QumixError("reduce: duplicate qubit index");
    seen[static_cast<std::size_t>(q)] = true;
  }
  std::vector<int> traced;
  for (int q = 1; q <= n; ++q)
    if (!seen[static_cast<std::size_t>(q)]) traced.push_back(q);

  // Bit position (from the least significant end) of 1-based qubit q.
  const auto bit_of = [n](int q) { return n - q; };

  const Eigen::Index out_dim = dim_for(m);
  const Eigen::Index env_dim = dim_for(static_cast<int>(traced.size()));
  Matrix out = Matrix::Zero(out_dim, out_dim);

  for (Eigen::Index a = 0; a < out_dim; ++a) {
    for (Eigen::Index b = 0; b < out_dim; ++b) {
      // Base indices with the kept qubits placed, traced bits zero.
      Eigen::Index base_r = 0, base_c = 0;
      for (int t = 0; t < m; ++t) {
        const Eigen::Index bit = bit_of(keep[static_cast<std::size_t>(t)]);
        base_r |= ((a >> (m - 1 - t)) & 1) << bit;
        base_c |= ((b >> (m - 1 - t)) & 1) << bit;
      }
      Complex sum{0.0, 0.0};
      for (Eigen::Index e = 0; e < env_dim; ++e) {
        Eigen::Index env = 0;
        for (std::size_t t = 0; t < traced.size(); ++t)
          env |= ((e >> (traced.size() - 1 - t)) & 1) << bit_of(traced[t]);
        sum += rho.matrix()(base_r | env, base_c | env);
      }
      out(a, b) = sum;
    }
  }
  return Qumix(m, std::move(out));
}

Qumix reduce(const Qumix& rho, std::initializer_list<int> keep) {
  return reduce(rho, std::span<const int>(keep.begin(), keep.size()));
}

ValidationReport validate_qumix(const Qumix& rho) {
  ValidationReport rep;
  rep.hermiticity_defect = (rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff();
  rep.trace_defect = std::abs(rho.matrix().trace() - Complex{1.0, 0.0});
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      (rho.matrix() + rho.matrix().adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  rep.min_eigenvalue = solver.eigenvalues().minCoeff();
  rep.pass = rep.hermiticity_defect <= kHermitianTol &&
             rep.min_eigenvalue >= -kPsdTol && rep.trace_defect <= kTraceTol;
  return rep;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  os << (pass ? "valid" : "INVALID") << " (hermiticity defect " << hermiticity_defect
     << ", min eigenvalue " << min_eigenvalue << ", trace defect " << trace_defect
     << ")";
  return os.str();
}

double qumix_distance(const Qumix& a, const Qumix& b) {
  if (a.qubits() != b.qubits())
    throw QumixError("qumix comparison: qubit counts differ");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

bool qumix_close(const Qumix& a, const Qumix& b, double tol) {
  return qumix_distance(a, b) <= tol;
}

Complex trace_with_last_qubit_block(const Qumix& rho, const Eigen::Matrix2cd& block) {
  // tr((I (x) P) rho) = sum_a sum_{i,j} P(i,j) rho(a*2+j, a*2+i)
  Complex sum{0.0, 0.0};
  const Eigen::Index half = rho.dim() / 2;
  for (Eigen::Index a = 0; a < half; ++a)
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j)
        sum += block(i, j) * rho.matrix()(a * 2 + j, a * 2 + i);
  return sum;
}

}  // namespace holoq
