// Seeded generation of top-level input states for a syntactical tree.
//
// Every generated state gives t/f positions exact truth/falsity projector
// factors (so the holistic constraint holds by construction) and reuses one
// state per distinct atom name (so product samples evaluate to normal
// models). Four generator families are cycled deterministically:
// perspective-basis products, random pure products, random mixed products,
// and maximally entangled pairs across two occurrences of one atom.

#ifndef HOLOQ_SAMPLING_HPP
#define HOLOQ_SAMPLING_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "holoq/perspective.hpp"
#include "holoq/random.hpp"
#include "holoq/syntree.hpp"

namespace holoq {

struct SamplerConfig {
  std::uint64_t seed = 0;
  int count = 200;
  // Relative generator weights; a weight of zero disables the family.
  int basis_weight = 1;
  int pure_weight = 1;
  int mixed_weight = 1;
  int entangled_weight = 1;
  // Extra bases injected into the basis-product family (besides the
  // evaluation perspective), e.g. the agents' own perspectives.
  std::vector<TruthPerspective> extra_bases;
};

class TopStateSampler {
 public:
  TopStateSampler(const SyntacticalTree& tree, TruthPerspective t, SamplerConfig cfg);

  // Deterministic stream; call at most cfg.count times per logical run.
  Qumix next();

  // Product of 1-qubit states: t/f positions forced, atom positions drawn
  // from `atom_state` keyed by name.
  Qumix assemble_product(
      const std::function<Qumix(const std::string&)>& atom_state) const;

  Rng& rng() noexcept { return rng_; }

 private:
  Qumix basis_product();
  Qumix pure_product();
  Qumix mixed_product();
  Qumix entangled_pair();

  const SyntacticalTree& tree_;
  TruthPerspective perspective_;
  SamplerConfig cfg_;
  Rng rng_;
  std::vector<int> schedule_;  // expanded weights: generator id per slot
  std::uint64_t tick_ = 0;
  std::uint64_t basis_counter_ = 0;
  std::vector<std::string> atom_names_;            // distinct, in first-seen order
  std::optional<std::pair<int, int>> twin_;        // two positions of one atom
};

}  // namespace holoq

#endif  // HOLOQ_SAMPLING_HPP
