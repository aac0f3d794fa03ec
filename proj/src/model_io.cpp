#include "holoq/model_io.hpp"

#include <cmath>
#include <fstream>

namespace holoq {

namespace {

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex pair_to_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ModelIoError("expected an [re, im] pair");
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(complex_pair(m(r, c)));
  return out;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ModelIoError("expected a row-major matrix array");
  const auto n = j.size();
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(double(n))));
  if (dim * dim != static_cast<Eigen::Index>(n) || dim < 1)
    throw ModelIoError("matrix entry count is not a perfect square");
  Matrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      m(r, c) = pair_to_complex(j[static_cast<std::size_t>(r * dim + c)]);
  return m;
}

int qubits_for_dim(Eigen::Index dim, const char* what) {
  int n = 0;
  Eigen::Index d = dim;
  while (d > 1) {
    if (d % 2 != 0) throw ModelIoError(std::string(what) + ": dimension is not a power of 2");
    d /= 2;
    ++n;
  }
  if (n < 1 || n > kMaxQubits)
    throw ModelIoError(std::string(what) + ": unsupported qubit count");
  return n;
}

}  // namespace

Json state_to_json(const Qumix& rho) {
  Json out;
  out["kind"] = "matrix";
  out["entries"] = matrix_to_json(rho.matrix());
  return out;
}

Qumix state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ModelIoError("state literal must be an object with a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "ket") {
    const Json& amps = j.at("amplitudes");
    if (!amps.is_array() || amps.empty())
      throw ModelIoError("ket literal needs an amplitude list");
    Ket k;
    k.qubits = qubits_for_dim(static_cast<Eigen::Index>(amps.size()), "ket");
    k.amplitudes = Vector(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i)
      k.amplitudes(static_cast<Eigen::Index>(i)) = pair_to_complex(amps[i]);
    return pure_qumix(k);
  }
  if (kind == "matrix") {
    Matrix m = matrix_from_json(j.at("entries"));
    const int qubits = qubits_for_dim(m.rows(), "matrix state");
    return Qumix(qubits, std::move(m));
  }
  throw ModelIoError("unknown state kind '" + kind + "'");
}

Json perspective_to_json(const TruthPerspective& t) {
  const std::string key = t.key();
  if (key == "I" || key == "H") return key;
  return matrix_to_json(t.matrix());
}

TruthPerspective perspective_from_json(const Json& j) {
  if (j.is_string()) {
    const auto named = TruthPerspective::from_name(j.get<std::string>());
    if (!named)
      throw ModelIoError("unknown perspective name '" + j.get<std::string>() + "'");
    return *named;
  }
  const Matrix m = matrix_from_json(j);
  if (m.rows() != 2) throw ModelIoError("perspective matrix must be 2x2");
  return TruthPerspective(Eigen::Matrix2cd(m));
}

Json op_to_json(const EpistemicOp& op) {
  Json out;
  switch (op.realization()) {
    case RealizationKind::PresetIdentity:
      out["kind"] = "preset";
      out["name"] = "identity";
      break;
    case RealizationKind::PresetFlip:
      out["kind"] = "preset";
      out["name"] = "flip-in-basis";
      out["basis"] = perspective_to_json(op.flip_basis());
      break;
    case RealizationKind::Kraus: {
      out["kind"] = "kraus";
      Json arities = Json::object();
      for (const auto& [arity, channel] : op.kraus_map()) {
        Json list = Json::array();
        for (const auto& k : channel.elements) list.push_back(matrix_to_json(k));
        arities[std::to_string(arity)] = std::move(list);
      }
      out["arities"] = std::move(arities);
      break;
    }
    case RealizationKind::Table: {
      out["kind"] = "table";
      Json tables = Json::array();
      for (const auto& [arity, channel] : op.table_map()) {
        Json t;
        t["arity"] = arity;
        Json pairs = Json::array();
        for (const auto& pair : channel.pairs)
          pairs.push_back(Json{{"in", state_to_json(pair.in)},
                               {"out", state_to_json(pair.out)}});
        t["pairs"] = std::move(pairs);
        t["fallback"] =
            channel.fallback == TableFallback::Identity ? "identity" : "error";
        tables.push_back(std::move(t));
      }
      out["arities"] = std::move(tables);
      break;
    }
  }
  return out;
}

namespace {

TableChannel table_channel_from_json(const Json& j, int arity) {
  TableChannel channel;
  for (const auto& pair : j.at("pairs")) {
    TableEntry entry{state_from_json(pair.at("in")), state_from_json(pair.at("out"))};
    if (entry.in.qubits() != arity || entry.out.qubits() != arity)
      throw ModelIoError("table pair arity mismatch");
    channel.pairs.push_back(std::move(entry));
  }
  const std::string fb = j.value("fallback", "identity");
  if (fb == "identity") channel.fallback = TableFallback::Identity;
  else if (fb == "error") channel.fallback = TableFallback::Error;
  else throw ModelIoError("unknown table fallback '" + fb + "'");
  return channel;
}

}  // namespace

EpistemicOp op_from_json(EpKind kind, const std::string& agent,
                         const std::string& time, const Json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ModelIoError("epistemic op must be an object with a \"kind\"");
  const std::string k = j.at("kind").get<std::string>();
  if (k == "preset") {
    const std::string name = j.at("name").get<std::string>();
    if (name == "identity") return EpistemicOp::preset_identity(kind, agent, time);
    if (name == "flip-in-basis")
      return EpistemicOp::preset_flip(kind, agent, time,
                                      perspective_from_json(j.at("basis")));
    throw ModelIoError("unknown preset op '" + name + "'");
  }
  if (k == "kraus") {
    std::map<int, KrausChannel> by_arity;
    for (const auto& [key, list] : j.at("arities").items()) {
      const int arity = std::stoi(key);
      KrausChannel channel;
      for (const auto& m : list) channel.elements.push_back(matrix_from_json(m));
      by_arity.emplace(arity, std::move(channel));
    }
    return EpistemicOp::kraus(kind, agent, time, std::move(by_arity));
  }
  if (k == "table") {
    std::map<int, TableChannel> by_arity;
    if (j.contains("arity")) {
      const int arity = j.at("arity").get<int>();
      by_arity.emplace(arity, table_channel_from_json(j, arity));
    } else {
      for (const auto& t : j.at("arities")) {
        const int arity = t.at("arity").get<int>();
        by_arity.emplace(arity, table_channel_from_json(t, arity));
      }
    }
    return EpistemicOp::table(kind, agent, time, std::move(by_arity));
  }
  throw ModelIoError("unknown epistemic op kind '" + k + "'");
}

Json quasi_model_to_json(const QuasiModel& qm) {
  Json out;
  out["times"] = qm.times();
  out["agents"] = qm.agents();
  Json epsit = Json::object();
  for (const auto& sit : qm.situations()) {
    Json s;
    s["perspective"] = perspective_to_json(sit.perspective());
    if (sit.domain().all) {
      s["domain"] = "all";
    } else {
      Json states = Json::array();
      for (const auto& st : sit.domain().states) states.push_back(state_to_json(st));
      s["domain"] = Json{{"states", std::move(states)}};
    }
    s["U"] = op_to_json(*sit.understanding());
    s["K"] = op_to_json(*sit.knowledge());
    epsit[sit.agent() + "@" + sit.time()] = std::move(s);
  }
  out["epsit"] = std::move(epsit);
  return out;
}

QuasiModel quasi_model_from_json(const Json& j) {
  QuasiModel qm;
  if (j.contains("times"))
    for (const auto& t : j.at("times")) qm.add_time(t.get<std::string>());
  if (j.contains("agents"))
    for (const auto& a : j.at("agents")) qm.add_agent(a.get<std::string>());
  if (j.contains("den"))
    for (const auto& [name, denoted] : j.at("den").items())
      qm.bind_name(name, denoted.get<std::string>());
  if (j.contains("epsit")) {
    for (const auto& [key, s] : j.at("epsit").items()) {
      const auto at = key.find('@');
      if (at == std::string::npos)
        throw ModelIoError("epsit key '" + key + "' is not agent@time");
      const std::string agent = key.substr(0, at);
      const std::string time = key.substr(at + 1);
      TruthPerspective persp = perspective_from_json(s.at("perspective"));
      EpistemicDomain domain;
      if (s.contains("domain") && !s.at("domain").is_string()) {
        domain.all = false;
        for (const auto& st : s.at("domain").at("states"))
          domain.states.push_back(state_from_json(st));
      }
      EpistemicOp u = s.contains("U")
                          ? op_from_json(EpKind::Understanding, agent, time, s.at("U"))
                          : EpistemicOp::preset_identity(EpKind::Understanding, agent, time);
      EpistemicOp k = s.contains("K")
                          ? op_from_json(EpKind::Knowledge, agent, time, s.at("K"))
                          : EpistemicOp::preset_identity(EpKind::Knowledge, agent, time);
      qm.add_situation(EpistemicSituation(agent, time, std::move(persp),
                                          std::move(domain), std::move(u), std::move(k)));
    }
  }
  return qm;
}

Json model_file_to_json(const ModelFile& mf) {
  Json out = quasi_model_to_json(mf.quasi_model);
  out["version"] = kModelSchemaVersion;
  Json assignments = Json::object();
  for (const auto& [sentence, by_persp] : mf.assignment.entries()) {
    Json per = Json::object();
    for (const auto& [key, state] : by_persp) per[key] = state_to_json(state);
    assignments[sentence] = std::move(per);
  }
  out["assignments"] = std::move(assignments);
  return out;
}

ModelFile model_file_from_json(const Json& j) {
  if (!j.is_object()) throw ModelIoError("model file must be a JSON object");
  const std::string version = j.value("version", "");
  if (version != kModelSchemaVersion)
    throw ModelIoError("unsupported model file version '" + version + "' (expected " +
                       std::string(kModelSchemaVersion) + ")");
  ModelFile mf;
  mf.quasi_model = quasi_model_from_json(j);
  if (j.contains("assignments")) {
    for (const auto& [text, by_persp] : j.at("assignments").items()) {
      // Sentences are stored as canonical text and re-parsed on load.
      const Sentence s = parse_sentence(text);
      const std::string canonical = print_sentence(s);
      for (const auto& [pkey, state] : by_persp.items()) {
        Qumix top = state_from_json(state);
        if (top.qubits() != atomic_complexity(s))
          throw ModelIoError("assignment for '" + text +
                             "' has the wrong qubit count");
        const ValidationReport v = validate_qumix(top);
        if (!v.pass)
          throw ModelIoError("assignment for '" + text +
                             "' is not a valid qumix: " + v.to_string());
        mf.assignment.assign_key(canonical, pkey, std::move(top));
      }
    }
  }
  return mf;
}

Json claim_to_json(const Claim& claim, const SamplerConfig& sampler) {
  Json out;
  switch (claim.kind) {
    case ClaimKind::Truth:               out["kind"] = "truth"; break;
    case ClaimKind::ContextualTruth:     out["kind"] = "contextual-truth"; break;
    case ClaimKind::Consequence:         out["kind"] = "consequence"; break;
    case ClaimKind::HarmonicConsequence: out["kind"] = "harmonic-consequence"; break;
  }
  if (claim.kind != ClaimKind::Truth)
    out["context"] = print_sentence(claim.context);
  out["alpha"] = print_sentence(claim.alpha);
  if (claim.kind == ClaimKind::Consequence ||
      claim.kind == ClaimKind::HarmonicConsequence)
    out["beta"] = print_sentence(claim.beta);
  switch (claim.scope) {
    case PerspectiveScope::Fixed:
      out["perspective"] = perspective_to_json(claim.fixed_perspective);
      break;
    case PerspectiveScope::PerAgent:
      out["perspective"] = "per-agent:" + claim.agent + "@" + claim.time;
      break;
    case PerspectiveScope::Sampled:
      out["perspective"] = "sampled";
      break;
  }
  out["sampler"] = Json{{"seed", sampler.seed}, {"count", sampler.count}};
  return out;
}

ClaimFile claim_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ModelIoError("claim file must be an object with a \"kind\"");
  ClaimFile cf;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "truth")                     cf.claim.kind = ClaimKind::Truth;
  else if (kind == "contextual-truth")     cf.claim.kind = ClaimKind::ContextualTruth;
  else if (kind == "consequence")          cf.claim.kind = ClaimKind::Consequence;
  else if (kind == "harmonic-consequence") cf.claim.kind = ClaimKind::HarmonicConsequence;
  else throw ModelIoError("unknown claim kind '" + kind + "'");

  cf.claim.alpha = parse_sentence(j.at("alpha").get<std::string>());
  cf.claim.context = j.contains("context")
                         ? parse_sentence(j.at("context").get<std::string>())
                         : cf.claim.alpha;
  if (cf.claim.kind == ClaimKind::Consequence ||
      cf.claim.kind == ClaimKind::HarmonicConsequence) {
    if (!j.contains("beta"))
      throw ModelIoError("consequence claims need a \"beta\" sentence");
    cf.claim.beta = parse_sentence(j.at("beta").get<std::string>());
  }

  if (j.contains("perspective")) {
    const Json& p = j.at("perspective");
    if (p.is_string() && p.get<std::string>().rfind("per-agent:", 0) == 0) {
      const std::string spec = p.get<std::string>().substr(10);
      const auto at = spec.find('@');
      if (at == std::string::npos)
        throw ModelIoError("per-agent perspective must be per-agent:agent@time");
      cf.claim.scope = PerspectiveScope::PerAgent;
      cf.claim.agent = spec.substr(0, at);
      cf.claim.time = spec.substr(at + 1);
    } else if (p.is_string() && p.get<std::string>() == "sampled") {
      cf.claim.scope = PerspectiveScope::Sampled;
    } else {
      cf.claim.scope = PerspectiveScope::Fixed;
      cf.claim.fixed_perspective = perspective_from_json(p);
    }
  }

  if (j.contains("quasi_model"))
    cf.quasi_model_path = j.at("quasi_model").get<std::string>();
  if (j.contains("sampler")) {
    const Json& s = j.at("sampler");
    cf.sampler.seed = s.value("seed", std::uint64_t{0});
    cf.sampler.count = s.value("count", 200);
  }
  return cf;
}

Json counterexample_file(const QuasiModel& qm, const Claim& claim,
                         const SamplerConfig& sampler, const Counterexample& cx) {
  ModelFile mf;
  mf.quasi_model = qm;
  mf.assignment.assign(cx.context, cx.perspective, cx.top);
  Json out = model_file_to_json(mf);
  Json block;
  block["claim"] = claim_to_json(claim, sampler);
  block["effective_context"] = print_sentence(cx.context);
  block["perspective"] = perspective_to_json(cx.perspective);
  block["p_alpha"] = cx.p_alpha;
  if (!std::isnan(cx.p_beta)) block["p_beta"] = cx.p_beta;
  block["sample_index"] = cx.sample_index;
  out["counterexample"] = std::move(block);
  return out;
}

ReplayResult replay_counterexample_file(const Json& file) {
  const ModelFile mf = model_file_from_json(file);
  if (!file.contains("counterexample"))
    throw ModelIoError("file has no counterexample block to replay");
  const Json& block = file.at("counterexample");

  const ClaimFile cf = claim_from_json(block.at("claim"));
  Counterexample cx;
  cx.perspective = perspective_from_json(block.at("perspective"));
  cx.context = parse_sentence(block.at("effective_context").get<std::string>());
  const Qumix* top = mf.assignment.find(cx.context, cx.perspective);
  if (!top) throw ModelIoError("counterexample file lacks the failing assignment");
  cx.top = *top;

  ReplayResult res;
  res.stored_p_alpha = block.at("p_alpha").get<double>();
  res.stored_p_beta = block.value("p_beta", std::nan(""));
  const auto [p_alpha, p_beta] =
      replay_counterexample(mf.quasi_model, cf.claim, cx);
  res.p_alpha = p_alpha;
  res.p_beta = p_beta;
  res.deviation = std::abs(p_alpha - res.stored_p_alpha);
  if (!std::isnan(res.stored_p_beta) && !std::isnan(p_beta))
    res.deviation = std::max(res.deviation, std::abs(p_beta - res.stored_p_beta));

  const bool is_implication = cf.claim.kind == ClaimKind::Consequence ||
                              cf.claim.kind == ClaimKind::HarmonicConsequence;
  res.still_fails = is_implication
                        ? (p_alpha >= 1.0 - 1e-9 && p_beta < 1.0 - 1e-9)
                        : (p_alpha < 1.0 - 1e-9);
  return res;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelIoError("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ModelIoError("JSON parse error in '" + path + "': " + e.what());
  }
  return j;
}

void save_json_file(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ModelIoError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace holoq
