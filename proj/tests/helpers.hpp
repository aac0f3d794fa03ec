// Shared test fixtures: frozen states from the worked examples, a bounded
// random sentence generator, and small builders.

#ifndef HOLOQ_TESTS_HELPERS_HPP
#define HOLOQ_TESTS_HELPERS_HPP

#include <string>
#include <vector>

#include "holoq/random.hpp"
#include "holoq/scenarios.hpp"

namespace testutil {

using namespace holoq;

inline Ket ket_from(std::vector<Complex> amps) {
  int n = 0;
  std::size_t d = amps.size();
  while (d > 1) {
    d /= 2;
    ++n;
  }
  Ket k;
  k.qubits = n;
  k.amplitudes = Vector(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i)
    k.amplitudes(static_cast<Eigen::Index>(i)) = amps[i];
  return k;
}

// (1/sqrt(2))(|0> + |1>) (x) (1/sqrt(2))(|0> + |1>) (x) |0>
inline Qumix worked_example_top() {
  return pure_qumix(ket_from({0.5, 0, 0.5, 0, 0.5, 0, 0.5, 0}));
}

// (1/sqrt(2))(|010> + |100>)
inline Qumix entangled_counterexample_top() {
  const double s = 1.0 / std::sqrt(2.0);
  return pure_qumix(ket_from({0, 0, s, 0, s, 0, 0, 0}));
}

// 1/2 (|011> + |001> + |110> + |101>)
inline Qumix worked_example_output() {
  return pure_qumix(ket_from({0, 0.5, 0, 0.5, 0, 0.5, 0.5, 0}));
}

// (1/sqrt(2))(|000> + |111>)
inline Qumix ghz_like_output() {
  const double s = 1.0 / std::sqrt(2.0);
  return pure_qumix(ket_from({s, 0, 0, 0, 0, 0, 0, s}));
}

inline Qumix proj0() { return Qumix(1, TruthPerspective::identity().falsity_projector()); }
inline Qumix proj1() { return Qumix(1, TruthPerspective::identity().truth_projector()); }
inline Qumix maximally_mixed1() { return Qumix(1, Matrix::Identity(2, 2) / 2.0); }

inline void collect_atoms(const Sentence& s, std::vector<std::string>& out) {
  if (s.is_atomic()) {
    out.push_back(print_sentence(s));
    return;
  }
  for (std::size_t i = 0; i < s.child_count(); ++i) collect_atoms(s.child(i), out);
}

// Random sentences with bounded atomic complexity and depth; the atom pool
// keeps repeats likely.
inline Sentence random_sentence(Rng& rng, int max_atoms, int depth,
                                bool allow_epistemic = true,
                                bool allow_constants = true) {
  const auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  static const std::vector<std::string> atoms{"q", "r", "s"};
  if (depth <= 0 || max_atoms <= 1) {
    if (allow_constants && pick(4) == 0)
      return pick(2) == 0 ? Sentence::true_const() : Sentence::false_const();
    return Sentence::atom(atoms[static_cast<std::size_t>(pick(3))]);
  }
  switch (pick(allow_epistemic ? 7 : 5)) {
    case 0:
      return Sentence::negation(
          random_sentence(rng, max_atoms, depth - 1, allow_epistemic, allow_constants));
    case 1:
      return Sentence::sqrt_id(
          random_sentence(rng, max_atoms, depth - 1, allow_epistemic, allow_constants));
    case 2: {
      if (max_atoms < 3)
        return random_sentence(rng, max_atoms, depth - 1, allow_epistemic, allow_constants);
      const int a = 1 + pick(max_atoms - 2);
      const int b = 1 + pick(max_atoms - a - 1);
      const int c = max_atoms - a - b;
      return Sentence::toffoli(
          random_sentence(rng, a, depth - 1, allow_epistemic, allow_constants),
          random_sentence(rng, b, depth - 1, allow_epistemic, allow_constants),
          random_sentence(rng, c, depth - 1, allow_epistemic, allow_constants));
    }
    case 3: {
      if (max_atoms < 2)
        return random_sentence(rng, max_atoms, depth - 1, allow_epistemic, allow_constants);
      const int a = 1 + pick(max_atoms - 1);
      return Sentence::exclusive_or(
          random_sentence(rng, a, depth - 1, allow_epistemic, allow_constants),
          random_sentence(rng, max_atoms - a, depth - 1, allow_epistemic, allow_constants));
    }
    case 4:
      return random_sentence(rng, max_atoms, depth - 1, allow_epistemic, allow_constants);
    case 5:
      return Sentence::understands(
          pick(2) ? "a" : "b", "t",
          random_sentence(rng, max_atoms, depth - 1, allow_epistemic, allow_constants));
    default:
      return Sentence::knows(
          pick(2) ? "a" : "b", "t",
          random_sentence(rng, max_atoms, depth - 1, allow_epistemic, allow_constants));
  }
}

}  // namespace testutil

#endif  // HOLOQ_TESTS_HELPERS_HPP
