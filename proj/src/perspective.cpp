#include "holoq/perspective.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace holoq {

TruthPerspective::TruthPerspective(const Eigen::Matrix2cd& u) : u_(u) {
  const double defect =
      (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (defect > 1e-9) {
    std::ostringstream os;
    os << "truth-perspective matrix is not unitary (defect " << defect << ")";
    throw QumixError(os.str());
  }
}

TruthPerspective TruthPerspective::hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd h;
  h << s, s, s, -s;
  return TruthPerspective(h);
}

std::optional<TruthPerspective> TruthPerspective::from_name(const std::string& name) {
  if (name == "I") return identity();
  if (name == "H") return hadamard();
  return std::nullopt;
}

Eigen::Matrix2cd TruthPerspective::falsity_projector() const {
  return u_.col(0) * u_.col(0).adjoint();
}

Eigen::Matrix2cd TruthPerspective::truth_projector() const {
  return u_.col(1) * u_.col(1).adjoint();
}

Matrix TruthPerspective::basis_change(int n) const {
  check_qubit_cap(n);
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < n; ++i) {
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c)
        next.block(r * 2, c * 2, 2, 2) = out(r, c) * u_;
    out = std::move(next);
  }
  return out;
}

bool TruthPerspective::approx_equal(const TruthPerspective& other, double tol) const {
  return (u_ - other.u_).cwiseAbs().maxCoeff() <= tol;
}

std::string TruthPerspective::key() const {
  if (approx_equal(identity())) return "I";
  if (approx_equal(hadamard())) return "H";
  char buf[64];
  std::string out = "[";
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      std::snprintf(buf, sizeof buf, "%s%.12g%+.12gi", (r || c) ? "," : "",
                    u_(r, c).real(), u_(r, c).imag());
      out += buf;
    }
  return out + "]";
}

std::pair<Qumix, Qumix> truth_projectors(const TruthPerspective& t) {
  return {Qumix(1, t.falsity_projector()), Qumix(1, t.truth_projector())};
}

double epistemic_distance(const TruthPerspective& a, const TruthPerspective& b) {
  const Complex overlap = (b.matrix().col(1).adjoint() * a.matrix().col(1))(0, 0);
  const double d = 1.0 - std::norm(overlap);
  return std::min(1.0, std::max(0.0, d));
}

double probability(const TruthPerspective& t, const Qumix& rho) {
  const double herm = (rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff();
  const double tracedef = std::abs(rho.matrix().trace() - Complex{1.0, 0.0});
  if (herm > kHermitianTol || tracedef > kTraceTol) {
    std::ostringstream os;
    os << "probability: invalid qumix (hermiticity defect " << herm
       << ", trace defect " << tracedef << ")";
    throw QumixError(os.str());
  }
  const double p = trace_with_last_qubit_block(rho, t.truth_projector()).real();
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace holoq
