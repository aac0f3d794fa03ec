// Dense complex linear algebra for multi-qubit density operators (qumixes):
// tensor products, partial traces, projectors and validity checks.
//
// Conventions, fixed once for the whole project:
//  * qubits are numbered 1..n, qubit 1 is the most significant basis bit,
//    so |x_1,...,x_n> maps to the integer x_1*2^(n-1) + ... + x_n;
//  * everything is dense; qubit counts are capped at kMaxQubits.

#ifndef HOLOQ_QUMIX_HPP
#define HOLOQ_QUMIX_HPP

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace holoq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 12;

// Absolute tolerances for qumix validity (hermiticity, eigenvalue floor,
// trace) and for state comparisons.
inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;

struct QumixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A pure state: unit vector on n qubits.
struct Ket {
  int qubits = 0;
  Vector amplitudes;

  static Ket basis(int n, unsigned long long index);
  double norm() const { return amplitudes.norm(); }
};

// Density operator on n qubits. Construction only checks the shape; use
// validate_qumix for the physical invariants.
class Qumix {
 public:
  Qumix() : qubits_(0), m_(Matrix::Identity(1, 1)) {}
  Qumix(int qubits, Matrix m);

  int qubits() const noexcept { return qubits_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }

  Complex entry(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

 private:
  int qubits_;
  Matrix m_;
};

// Qubit-count check shared by gate construction paths.
void check_qubit_cap(int n);

// Rank-1 projector |v><v|. Throws QumixError if v is not normalized.
Qumix pure_qumix(const Ket& v);

// Kronecker product; qubit counts add.
Qumix tensor(const Qumix& a, const Qumix& b);

// Partial trace onto the kept qubits, in the order given (1-based).
// A permutation of all qubits reorders the state.
Qumix reduce(const Qumix& rho, std::span<const int> keep);
Qumix reduce(const Qumix& rho, std::initializer_list<int> keep);

struct ValidationReport {
  double hermiticity_defect = 0.0;  // max |rho - rho^dagger| entry
  double min_eigenvalue = 0.0;
  double trace_defect = 0.0;        // |tr(rho) - 1|
  bool pass = false;
  std::string to_string() const;
};

ValidationReport validate_qumix(const Qumix& rho);

// Max-entry distance comparison. Throws on qubit-count mismatch.
bool qumix_close(const Qumix& a, const Qumix& b, double tol);
double qumix_distance(const Qumix& a, const Qumix& b);

// tr(M rho) for M = I^(n-1) (x) P with P a 2x2 block acting on the last
// qubit; the workhorse behind probabilities.
Complex trace_with_last_qubit_block(const Qumix& rho, const Eigen::Matrix2cd& block);

}  // namespace holoq

#endif  // HOLOQ_QUMIX_HPP
