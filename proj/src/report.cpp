#include "freetop/report.hpp"

#include <algorithm>

#include "freetop/errors.hpp"

namespace freetop {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

void Report::add(CheckRecord r) { records.push_back(std::move(r)); }

void Report::canonicalize() {
  std::stable_sort(records.begin(), records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) {
                     if (a.check != b.check) return a.check < b.check;
                     return a.instance < b.instance;
                   });
}

std::uint64_t Report::count(Verdict v) const {
  return static_cast<std::uint64_t>(
      std::count_if(records.begin(), records.end(),
                    [v](const CheckRecord& r) { return r.verdict == v; }));
}

Json Report::to_json(bool with_timing) const {
  Json checks = Json::array();
  for (const CheckRecord& r : records) {
    Json c{{"check", r.check},
           {"property", r.property},
           {"instance", r.instance},
           {"verdict", to_string(r.verdict)},
           {"details", r.details}};
    if (with_timing) c["elapsed_ms"] = r.elapsed_ms;
    checks.push_back(std::move(c));
  }
  return Json{{"schema", 1},
              {"config", config},
              {"summary",
               {{"pass", count(Verdict::Pass)},
                {"fail", count(Verdict::Fail)},
                {"inconclusive", count(Verdict::Inconclusive)},
                {"unknown", count(Verdict::Unknown)}}},
              {"checks", checks}};
}

bool RunConfig::wants(const std::string& suite) const {
  for (const std::string& s : suites) {
    if (s == "all" || s == suite) return true;
  }
  return false;
}

Json RunConfig::to_json() const {
  return Json{{"groups", groups},
              {"chain", chain},
              {"seed", seed},
              {"max_factors", max_factors},
              {"max_conj_len", max_conj_len},
              {"suites", suites},
              {"phi", {{"max_len", phi_max_len}, {"max_letter", phi_max_letter}, {"max_n", phi_max_n}}},
              {"fuzz", {{"members", fuzz_members}, {"transforms", fuzz_transforms}}},
              {"sur", {{"k_max", sur_k_max}, {"cover_n", sur_cover_n}, {"cover_prefix", sur_cover_prefix}}},
              {"eq1", {{"k_max", eq1_k_max}, {"n_max", eq1_n_max}}},
              {"lemma", {{"max_len", lemma_max_len}, {"max_letter", lemma_max_letter}, {"max_n", lemma_max_n}}},
              {"continuity", {{"samples", continuity_samples}, {"n_max", continuity_n_max}}},
              {"openness", {{"scenarios", openness_scenarios}}}};
}

RunConfig RunConfig::from_json(const Json& j) {
  RunConfig c;
  if (j.contains("groups")) c.groups = j["groups"].get<std::vector<std::string>>();
  if (j.contains("chain")) c.chain = j["chain"].get<std::string>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("max_factors")) c.max_factors = j["max_factors"].get<std::uint32_t>();
  if (j.contains("max_conj_len")) c.max_conj_len = j["max_conj_len"].get<std::uint32_t>();
  if (j.contains("suites")) c.suites = j["suites"].get<std::vector<std::string>>();
  if (j.contains("phi")) {
    c.phi_max_len = j["phi"].value("max_len", c.phi_max_len);
    c.phi_max_letter = j["phi"].value("max_letter", c.phi_max_letter);
    c.phi_max_n = j["phi"].value("max_n", c.phi_max_n);
  }
  if (j.contains("fuzz")) {
    c.fuzz_members = j["fuzz"].value("members", c.fuzz_members);
    c.fuzz_transforms = j["fuzz"].value("transforms", c.fuzz_transforms);
  }
  if (j.contains("sur")) {
    c.sur_k_max = j["sur"].value("k_max", c.sur_k_max);
    c.sur_cover_n = j["sur"].value("cover_n", c.sur_cover_n);
    c.sur_cover_prefix = j["sur"].value("cover_prefix", c.sur_cover_prefix);
  }
  if (j.contains("eq1")) {
    c.eq1_k_max = j["eq1"].value("k_max", c.eq1_k_max);
    c.eq1_n_max = j["eq1"].value("n_max", c.eq1_n_max);
  }
  if (j.contains("lemma")) {
    c.lemma_max_len = j["lemma"].value("max_len", c.lemma_max_len);
    c.lemma_max_letter = j["lemma"].value("max_letter", c.lemma_max_letter);
    c.lemma_max_n = j["lemma"].value("max_n", c.lemma_max_n);
  }
  if (j.contains("continuity")) {
    c.continuity_samples = j["continuity"].value("samples", c.continuity_samples);
    c.continuity_n_max = j["continuity"].value("n_max", c.continuity_n_max);
  }
  if (j.contains("openness")) {
    c.openness_scenarios = j["openness"].value("scenarios", c.openness_scenarios);
  }
  return c;
}

Json word_to_json(const ReducedWord& w) { return format_word(w); }

ReducedWord word_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("word JSON must be a string");
  return parse_word(j.get<std::string>());
}

Json cert_to_json(const SymCertificate& c) {
  Json factors = Json::array();
  for (const CertEntry& f : c.factors) {
    factors.push_back(Json{{"slot", f.slot},
                           {"conjugator", word_to_json(f.conjugator)},
                           {"letter", format_word(ReducedWord::reduce({f.letter}))}});
  }
  return Json{{"h", word_to_json(c.spec.h)}, {"k", c.spec.dilation}, {"factors", factors}};
}

SymCertificate cert_from_json(const Json& j) {
  SymCertificate c;
  c.spec.h = parse_word(j.at("h").get<std::string>());
  c.spec.dilation = j.at("k").get<std::uint32_t>();
  for (const Json& f : j.at("factors")) {
    const ReducedWord letter = parse_word(f.at("letter").get<std::string>());
    if (letter.length() != 1) throw ParseError("certificate letter must be a single token");
    c.factors.push_back(CertEntry{f.at("slot").get<std::uint64_t>(),
                                  parse_word(f.at("conjugator").get<std::string>()),
                                  letter[0]});
  }
  return c;
}

Json member_result_to_json(const ReducedWord& w, const SearchBounds& bounds,
                           const MemberResult& r) {
  Json j{{"schema", 1},
         {"word", word_to_json(w)},
         {"bounds", {{"max_factors", bounds.max_factors}, {"max_conj", bounds.max_conj_len}}},
         {"status", r.status == Membership::Member ? "member" : "unknown"},
         {"nodes", r.nodes}};
  if (r.certificate) j["certificate"] = cert_to_json(*r.certificate);
  return j;
}

Json bk_report_to_json(const BkReport& r) {
  Json violations = Json::array();
  for (const BkViolation& v : r.violations) {
    violations.push_back(Json{{"slots", v.slots}, {"elements", v.elements}, {"product", v.product}});
  }
  return Json{{"k", r.k},
              {"max_factors", r.max_factors},
              {"products_checked", r.products_checked},
              {"orderings_collapsed", r.orderings_collapsed},
              {"violation_count", r.violation_count},
              {"violations", violations}};
}

Json eq1_to_json(const Eq1Report& r) {
  return Json{{"k", r.k},
              {"n", r.n},
              {"phi", r.phi_nk},
              {"m", r.m_fk},
              {"theta", r.theta},
              {"theta_exact", r.theta_is_exact},
              {"slack1", r.slack1},
              {"slack2", r.slack2},
              {"holds", r.holds}};
}

Json main_lemma_to_json(const MainLemmaReport& r, const ReducedWord& w, std::uint64_t n) {
  const char* verdict = r.verdict == LemmaVerdict::Pass
                            ? "PASS"
                            : (r.verdict == LemmaVerdict::Fail ? "FAIL" : "INCONCLUSIVE");
  return Json{{"word", word_to_json(w)}, {"n", n},           {"theta", r.theta},
              {"theta_exact", r.theta_is_exact}, {"phi", r.phi}, {"image", r.image},
              {"verdict", verdict}};
}

Json openness_report_to_json(const OpennessReport& r) {
  Json cover = Json::array();
  for (const CoverEntry& e : r.covered) {
    cover.push_back(Json{{"index", e.index}, {"k", e.k}});
  }
  return Json{{"requested", r.requested},
              {"complete", r.complete},
              {"max_k", r.max_k},
              {"cover", cover}};
}

Json pw_transcript_to_json(const GroupOracle& oracle, const OpennessTranscript& t) {
  Json a = Json::array();
  for (const GroupElem& ai : t.a) a.push_back(oracle.format(ai));
  Json cells = Json::array();
  for (std::uint32_t c = 0; c < t.witness.cell_count(); ++c) {
    cells.push_back(word_to_json(t.witness.word_of_cell(c)));
  }
  Json assignment = Json::array();
  for (std::size_t p = 0; p < t.witness.sample().size(); ++p) {
    assignment.push_back(t.witness.cell_of(p));
  }
  return Json{{"a", a},
              {"v_index", t.v_index},
              {"b", oracle.format(t.b)},
              {"witness", {{"cells", cells}, {"cell_of_point", assignment}}},
              {"checks",
               {{"eval_matches", t.eval_matches},
                {"invariant_member", t.invariant_member},
                {"intermediate_checks", t.intermediate_checks},
                {"cube_samples", t.cube_samples}}}};
}

Json phi_trace_to_json(const PhiTrace& t) {
  Json children = Json::array();
  for (const PhiTrace& c : t.children) children.push_back(phi_trace_to_json(c));
  return Json{{"level", t.level},
              {"word", word_to_json(t.word)},
              {"value", t.value},
              {"children", children}};
}

}  // namespace freetop
