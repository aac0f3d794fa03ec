#include "holoq/sampling.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace holoq {

TopStateSampler::TopStateSampler(const SyntacticalTree& tree, TruthPerspective t,
                                 SamplerConfig cfg)
    : tree_(tree), perspective_(std::move(t)), cfg_(std::move(cfg)), rng_(cfg_.seed) {
  const auto expand = [this](int weight, int id) {
    for (int i = 0; i < weight; ++i) schedule_.push_back(id);
  };
  expand(cfg_.basis_weight, 0);
  expand(cfg_.pure_weight, 1);
  expand(cfg_.mixed_weight, 2);
  expand(cfg_.entangled_weight, 3);
  if (schedule_.empty()) schedule_.push_back(2);

  const auto& top = tree_.row(tree_.height());
  std::map<std::string, int> first_pos;
  for (int pos = 1; pos <= static_cast<int>(top.size()); ++pos) {
    const Sentence& s = top[static_cast<std::size_t>(pos - 1)].sentence;
    if (s.kind() != NodeKind::Atom) continue;
    auto [it, inserted] = first_pos.emplace(s.name(), pos);
    if (inserted)
      atom_names_.push_back(s.name());
    else if (!twin_)
      twin_ = std::make_pair(it->second, pos);
  }
}

Qumix TopStateSampler::assemble_product(
    const std::function<Qumix(const std::string&)>& atom_state) const {
  const auto [falsity, truth] = truth_projectors(perspective_);
  std::map<std::string, Qumix> cache;
  Qumix out;
  bool started = false;
  for (const auto& occ : tree_.row(tree_.height())) {
    Qumix factor;
    switch (occ.sentence.kind()) {
      case NodeKind::TrueConst:  factor = truth; break;
      case NodeKind::FalseConst: factor = falsity; break;
      default: {
        auto it = cache.find(occ.sentence.name());
        if (it == cache.end())
          it = cache.emplace(occ.sentence.name(), atom_state(occ.sentence.name())).first;
        factor = it->second;
        break;
      }
    }
    out = started ? tensor(out, factor) : factor;
    started = true;
  }
  return out;
}

Qumix TopStateSampler::basis_product() {
  // Enumerate atom bit patterns; occasionally draw the projectors from an
  // extra basis so cross-perspective witnesses are reachable.
  const std::uint64_t c = basis_counter_++;
  TruthPerspective basis = perspective_;
  if (!cfg_.extra_bases.empty() && (c % 3 == 2)) {
    basis = cfg_.extra_bases[static_cast<std::size_t>((c / 3) % cfg_.extra_bases.size())];
  }
  const auto [b0, b1] = truth_projectors(basis);
  std::map<std::string, Qumix> states;
  const std::uint64_t patterns =
      atom_names_.empty() ? 1 : (std::uint64_t{1} << std::min<std::size_t>(
                                     atom_names_.size(), 16));
  const std::uint64_t bits = c % patterns;
  for (std::size_t i = 0; i < atom_names_.size(); ++i)
    states.emplace(atom_names_[i], ((bits >> i) & 1) ? b1 : b0);
  return assemble_product([&](const std::string& name) { return states.at(name); });
}

Qumix TopStateSampler::pure_product() {
  return assemble_product(
      [&](const std::string&) { return pure_qumix(random_ket(1, rng_)); });
}

Qumix TopStateSampler::mixed_product() {
  return assemble_product([&](const std::string&) { return random_mixed(1, rng_); });
}

Qumix TopStateSampler::entangled_pair() {
  if (!twin_) return mixed_product();
  const auto [pos_a, pos_b] = *twin_;
  const int n = tree_.qubit_count();

  // Bell state in the perspective basis across the twin positions; the four
  // Bell states all have maximally mixed marginals, so atom normality is
  // preserved.
  const std::uint64_t which = rng_() & 3;
  Vector bell = Vector::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  switch (which) {
    case 0: bell(0) = s; bell(3) = s; break;                 // 00 + 11
    case 1: bell(0) = s; bell(3) = -s; break;                // 00 - 11
    case 2: bell(1) = s; bell(2) = s; break;                 // 01 + 10
    default: bell(1) = s; bell(2) = -s; break;               // 01 - 10
  }
  Ket pair_ket{2, perspective_.basis_change(2) * bell};
  Qumix grouped = pure_qumix(pair_ket);

  // Remaining positions in order, as forced/random 1-qubit factors.
  const auto [falsity, truth] = truth_projectors(perspective_);
  std::map<std::string, Qumix> cache;
  std::vector<int> grouped_order{pos_a, pos_b};
  for (const auto& occ : tree_.row(tree_.height())) {
    const int pos = occ.qubit_first;
    if (pos == pos_a || pos == pos_b) continue;
    Qumix factor;
    switch (occ.sentence.kind()) {
      case NodeKind::TrueConst:  factor = truth; break;
      case NodeKind::FalseConst: factor = falsity; break;
      default: {
        auto it = cache.find(occ.sentence.name());
        if (it == cache.end())
          it = cache.emplace(occ.sentence.name(), random_mixed(1, rng_)).first;
        factor = it->second;
        break;
      }
    }
    grouped = tensor(grouped, factor);
    grouped_order.push_back(pos);
  }

  // Reorder so qubit q of the result is position q of the level.
  std::vector<int> keep(static_cast<std::size_t>(n));
  for (int q = 1; q <= n; ++q) {
    const auto it = std::find(grouped_order.begin(), grouped_order.end(), q);
    keep[static_cast<std::size_t>(q - 1)] =
        static_cast<int>(it - grouped_order.begin()) + 1;
  }
  return reduce(grouped, keep);
}

Qumix TopStateSampler::next() {
  const int id = schedule_[static_cast<std::size_t>(tick_++ % schedule_.size())];
  switch (id) {
    case 0: return basis_product();
    case 1: return pure_product();
    case 3: return entangled_pair();
    default: return mixed_product();
  }
}

}  // namespace holoq
