#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "freetop/finite_group.hpp"
#include "freetop/neighborhoods.hpp"
#include "freetop/pw.hpp"
#include "freetop/quotient.hpp"

namespace freetop {

using Json = nlohmann::json;  // std::map-backed: keys serialize sorted

enum class Verdict { Pass, Fail, Inconclusive, Unknown };
std::string to_string(Verdict v);

/// One verified fact. `check` identifies the suite, `property` the
/// mathematical statement behind it, `instance` the concrete parameters.
/// Fail records always carry a reproducible witness in `details`.
struct CheckRecord {
  std::string check;
  std::string property;
  std::string instance;
  Verdict verdict = Verdict::Unknown;
  Json details = Json::object();
  double elapsed_ms = 0.0;
};

struct Report {
  Json config = Json::object();
  std::vector<CheckRecord> records;

  void add(CheckRecord r);
  /// Sort records by (check, instance): report order is canonical and
  /// independent of how the checks were scheduled.
  void canonicalize();
  std::uint64_t count(Verdict v) const;
  bool failed() const { return count(Verdict::Fail) > 0; }
  /// with_timing = false drops elapsed fields: two runs with the same seed
  /// then serialize byte-identically.
  Json to_json(bool with_timing) const;
};

/// Everything a deterministic run depends on. The seed fixes all sampling;
/// per-check streams are derived from it, so running one suite alone draws
/// exactly what the full bundle would.
struct RunConfig {
  std::vector<std::string> groups = {"zp2"};
  std::string chain = "dyadic";
  std::uint64_t seed = 0;
  std::uint32_t max_factors = 3;
  std::uint32_t max_conj_len = 2;
  std::vector<std::string> suites = {"all"};

  // per-suite scale knobs (defaults = acceptance scale)
  std::uint32_t phi_max_len = 4;
  std::uint32_t phi_max_letter = 8;
  std::uint32_t phi_max_n = 5;
  std::uint64_t fuzz_members = 10000;
  std::uint64_t fuzz_transforms = 1000;
  std::uint64_t sur_k_max = 10000;
  std::uint64_t sur_cover_n = 4;
  std::uint64_t sur_cover_prefix = 50;
  std::uint64_t eq1_k_max = 1000;
  std::uint64_t eq1_n_max = 5;
  std::uint32_t lemma_max_len = 3;
  std::uint32_t lemma_max_letter = 20;
  std::uint32_t lemma_max_n = 4;
  std::uint64_t continuity_samples = 500;
  std::uint64_t continuity_n_max = 6;
  std::uint64_t openness_scenarios = 100;

  bool wants(const std::string& suite) const;

  Json to_json() const;
  static RunConfig from_json(const Json& j);
};

// ---- JSON forms of the domain values (schema 1). Words use the text
// format of the word module throughout.

Json word_to_json(const ReducedWord& w);
ReducedWord word_from_json(const Json& j);
Json cert_to_json(const SymCertificate& c);
SymCertificate cert_from_json(const Json& j);
Json member_result_to_json(const ReducedWord& w, const SearchBounds& bounds,
                           const MemberResult& r);
Json bk_report_to_json(const BkReport& r);
Json eq1_to_json(const Eq1Report& r);
Json main_lemma_to_json(const MainLemmaReport& r, const ReducedWord& w, std::uint64_t n);
Json openness_report_to_json(const OpennessReport& r);
Json pw_transcript_to_json(const GroupOracle& oracle, const OpennessTranscript& t);
Json phi_trace_to_json(const PhiTrace& t);

}  // namespace freetop
