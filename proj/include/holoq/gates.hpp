// Qumix gates under a truth-perspective.
//
// Canonical actions (identity perspective):
//   NOT^(n)      = I^(n-1) (x) X                      flips the last qubit
//   sqrt(I)^(n)  = I^(n-1) (x) H
//   T^(u,v,w)    controls on the last qubits of blocks 1 and 2,
//                target the last qubit of block 3
//   XOR^(u,v)    control on the last qubit of block 1,
//                target the last qubit of block 2
// At perspective T the gate is the canonical unitary conjugated by T^(x)n.

#ifndef HOLOQ_GATES_HPP
#define HOLOQ_GATES_HPP

#include "holoq/perspective.hpp"
#include "holoq/qumix.hpp"

namespace holoq {

struct GateSpec {
  enum class Kind { Identity, Not, SqrtId, Toffoli, Xor };

  Kind kind = Kind::Identity;
  // Block arities: unary kinds use `a`; Toffoli uses a,b,c; Xor uses a,b.
  int a = 1;
  int b = 0;
  int c = 0;
  TruthPerspective perspective;

  static GateSpec identity(int n, TruthPerspective t = {});
  static GateSpec negation(int n, TruthPerspective t = {});
  static GateSpec sqrt_id(int n, TruthPerspective t = {});
  static GateSpec toffoli(int u, int v, int w, TruthPerspective t = {});
  static GateSpec exclusive_or(int u, int v, TruthPerspective t = {});

  int qubits() const noexcept { return a + b + c; }
  std::string describe() const;
};

// Full 2^n x 2^n unitary of the gate at its perspective.
Matrix gate_unitary(const GateSpec& g);

// U rho U^dagger. Throws QumixError on dimension mismatch.
Qumix apply_gate(const GateSpec& g, const Qumix& rho);

// Reversible conjunction: T^(m,n,1)(rho (x) sigma (x) TP_0).
Qumix and_op(const TruthPerspective& t, const Qumix& rho, const Qumix& sigma);

}  // namespace holoq

#endif  // HOLOQ_GATES_HPP
