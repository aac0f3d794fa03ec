#include "holoq/gates.hpp"

#include <sstream>

namespace holoq {

GateSpec GateSpec::identity(int n, TruthPerspective t) {
  return GateSpec{Kind::Identity, n, 0, 0, std::move(t)};
}
GateSpec GateSpec::negation(int n, TruthPerspective t) {
  return GateSpec{Kind::Not, n, 0, 0, std::move(t)};
}
GateSpec GateSpec::sqrt_id(int n, TruthPerspective t) {
  return GateSpec{Kind::SqrtId, n, 0, 0, std::move(t)};
}
GateSpec GateSpec::toffoli(int u, int v, int w, TruthPerspective t) {
  return GateSpec{Kind::Toffoli, u, v, w, std::move(t)};
}
GateSpec GateSpec::exclusive_or(int u, int v, TruthPerspective t) {
  return GateSpec{Kind::Xor, u, v, 0, std::move(t)};
}

std::string GateSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Identity: os << "I(" << a << ")"; break;
    case Kind::Not:      os << "NOT(" << a << ")"; break;
    case Kind::SqrtId:   os << "sqrtI(" << a << ")"; break;
    case Kind::Toffoli:  os << "T(" << a << "," << b << "," << c << ")"; break;
    case Kind::Xor:      os << "XOR(" << a << "," << b << ")"; break;
  }
  return os.str();
}

namespace {

// Canonical-basis unitary, before perspective conjugation.
Matrix canonical_unitary(const GateSpec& g) {
  const int n = g.qubits();
  check_qubit_cap(n);
  if (g.a < 1 || (g.kind == GateSpec::Kind::Toffoli && (g.b < 1 || g.c < 1)) ||
      (g.kind == GateSpec::Kind::Xor && g.b < 1))
    throw QumixError("gate block arity must be >= 1");
  const Eigen::Index dim = Eigen::Index{1} << n;

  switch (g.kind) {
    case GateSpec::Kind::Identity:
      return Matrix::Identity(dim, dim);
    case GateSpec::Kind::Not: {
      // Permutation flipping the last qubit.
      Matrix u = Matrix::Zero(dim, dim);
      for (Eigen::Index x = 0; x < dim; ++x) u(x ^ 1, x) = 1.0;
      return u;
    }
    case GateSpec::Kind::SqrtId: {
      Matrix u = Matrix::Zero(dim, dim);
      const double s = 1.0 / std::sqrt(2.0);
      for (Eigen::Index x = 0; x < dim; ++x) {
        u(x & ~Eigen::Index{1}, x) = s;
        u(x | Eigen::Index{1}, x) = ((x & 1) ? -s : s);
      }
      return u;
    }
    case GateSpec::Kind::Toffoli: {
      // Controls: last qubits of blocks 1 and 2; target: last qubit overall.
      const int ctrl1_bit = n - g.a;             // qubit a
      const int ctrl2_bit = n - (g.a + g.b);     // qubit a+b
      Matrix u = Matrix::Zero(dim, dim);
      for (Eigen::Index x = 0; x < dim; ++x) {
        const bool both = ((x >> ctrl1_bit) & 1) && ((x >> ctrl2_bit) & 1);
        u(both ? (x ^ 1) : x, x) = 1.0;
      }
      return u;
    }
    case GateSpec::Kind::Xor: {
      const int ctrl_bit = n - g.a;  // qubit a
      Matrix u = Matrix::Zero(dim, dim);
      for (Eigen::Index x = 0; x < dim; ++x)
        u(((x >> ctrl_bit) & 1) ? (x ^ 1) : x, x) = 1.0;
      return u;
    }
  }
  throw QumixError("unknown gate kind");
}

}  // namespace

Matrix gate_unitary(const GateSpec& g) {
  Matrix u = canonical_unitary(g);
  if (g.perspective.approx_equal(TruthPerspective::identity(), 0.0)) return u;
  const Matrix basis = g.perspective.basis_change(g.qubits());
  return basis * u * basis.adjoint();
}

Qumix apply_gate(const GateSpec& g, const Qumix& rho) {
  if (g.qubits() != rho.qubits())
    throw QumixError("apply_gate: gate and state qubit counts differ");
  const Matrix u = gate_unitary(g);
  return Qumix(rho.qubits(), u * rho.matrix() * u.adjoint());
}

Qumix and_op(const TruthPerspective& t, const Qumix& rho, const Qumix& sigma) {
  check_qubit_cap(rho.qubits() + sigma.qubits() + 1);
  const Qumix falsity(1, t.falsity_projector());
  const Qumix in = tensor(tensor(rho, sigma), falsity);
  return apply_gate(GateSpec::toffoli(rho.qubits(), sigma.qubits(), 1, t), in);
}

}  // namespace holoq
