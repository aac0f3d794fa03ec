// Truth-perspectives: 2x2 unitaries whose columns fix which orthonormal
// basis plays the role of falsity/truth. Gates and projectors on n qubits
// are conjugated by the n-fold tensor power of the perspective.

#ifndef HOLOQ_PERSPECTIVE_HPP
#define HOLOQ_PERSPECTIVE_HPP

#include <optional>
#include <string>
#include <utility>

#include "holoq/qumix.hpp"

namespace holoq {

class TruthPerspective {
 public:
  // Identity perspective (canonical basis).
  TruthPerspective() : u_(Eigen::Matrix2cd::Identity()) {}

  // Throws QumixError unless `u` is unitary within 1e-9.
  explicit TruthPerspective(const Eigen::Matrix2cd& u);

  static TruthPerspective identity() { return TruthPerspective(); }
  static TruthPerspective hadamard();
  // "I", "H", or nothing for other names.
  static std::optional<TruthPerspective> from_name(const std::string& name);

  const Eigen::Matrix2cd& matrix() const noexcept { return u_; }

  Eigen::Matrix2cd falsity_projector() const;  // T |0><0| T^dagger
  Eigen::Matrix2cd truth_projector() const;    // T |1><1| T^dagger

  // n-fold tensor power of the perspective unitary.
  Matrix basis_change(int n) const;

  bool approx_equal(const TruthPerspective& other, double tol = 1e-9) const;

  // "I", "H", or a deterministic matrix rendering; used to key model-file
  // assignments and reports.
  std::string key() const;

 private:
  Eigen::Matrix2cd u_;
};

// The 1-qubit falsity and truth projectors as qumixes.
std::pair<Qumix, Qumix> truth_projectors(const TruthPerspective& t);

// 1 - |<1_b|1_a>|^2; in [0,1], 0 for identical perspectives.
double epistemic_distance(const TruthPerspective& a, const TruthPerspective& b);

// p_T(rho) = tr((I^(n-1) (x) T P_1 T^dagger) rho). Throws QumixError if rho
// fails the cheap validity checks (hermiticity, trace).
double probability(const TruthPerspective& t, const Qumix& rho);

}  // namespace holoq

#endif  // HOLOQ_PERSPECTIVE_HPP
