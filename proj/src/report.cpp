#include "ffprim/report.hpp"

#include <fstream>

namespace ffprim {

void to_json(nlohmann::json& j, const SieveConfig& c) {
  nlohmann::json primes = nlohmann::json::array();
  for (u128 p : c.primes) primes.push_back(u128_to_string(p));
  j = nlohmann::json{{"sieved_radical", u128_to_string(c.sieved_radical)},
                     {"kernel", u128_to_string(c.kernel)},
                     {"kernel_special", u128_to_string(c.kernel_special)},
                     {"primes", primes},
                     {"s", c.s()},
                     {"r", c.r_count},
                     {"delta", c.delta},
                     {"delta_special", c.delta_special}};
}

void to_json(nlohmann::json& j, const CriterionReport& r) {
  j = nlohmann::json{{"criterion", r.criterion}, {"q", r.q},         {"n", r.n},
                     {"lhs", r.lhs},             {"rhs", r.rhs},     {"holds", r.holds},
                     {"applicable", r.applicable}};
  if (r.beta) j["beta_class"] = to_label(*r.beta);
  if (r.sieve) j["sieve"] = *r.sieve;
  if (!r.details.is_null()) j["details"] = r.details;
}

void to_json(nlohmann::json& j, const PairClass& c) {
  j = nlohmann::json{{"q", c.q},
                     {"n", c.n},
                     {"n_is_prime", c.n_is_prime},
                     {"odd_pair", c.odd_pair},
                     {"even_pair", c.even_pair},
                     {"omega", c.omega},
                     {"applicable", c.applicable}};
  if (!c.chain.empty()) {
    nlohmann::json chain = nlohmann::json::array();
    for (const auto& step : c.chain) {
      chain.push_back(nlohmann::json{{"base", u128_to_string(step.base)},
                                     {"ell", step.ell},
                                     {"m", step.m},
                                     {"special_case", step.special_case}});
    }
    j["reduction_chain"] = chain;
  }
}

std::string verdict_kind_label(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::ProvenAnalytic: return "proven-analytic";
    case Verdict::Kind::ProvenByComputation: return "proven-by-computation";
    case Verdict::Kind::GenuineException: return "genuine-exception";
  }
  return "unknown";
}

void to_json(nlohmann::json& j, const Verdict& v) {
  j = nlohmann::json{{"kind", verdict_kind_label(v.kind)},
                     {"exists", v.exists},
                     {"summary", v.summary},
                     {"reports", v.reports}};
  if (v.trace_set) {
    nlohmann::json t = nlohmann::json::array();
    for (u64 b : *v.trace_set) t.push_back(b);
    j["trace_set"] = t;
  }
}

nlohmann::json make_run_record(const std::string& command, nlohmann::json inputs,
                               nlohmann::json payload, double wall_ms) {
  return nlohmann::json{{"schema", kReportSchemaVersion},
                        {"command", command},
                        {"inputs", std::move(inputs)},
                        {"result", std::move(payload)},
                        {"wall_ms", wall_ms},
                        {"version", library_version()}};
}

void append_jsonl(const std::filesystem::path& file, const nlohmann::json& record) {
  if (!file.parent_path().empty()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::app);
  out << record.dump() << "\n";
}

}  // namespace ffprim
