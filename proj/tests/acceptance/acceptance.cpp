// Acceptance harness: runs the full verification matrix at its contracted
// scale and prints one PASS/FAIL line per criterion. Exit status is nonzero
// iff any criterion fails.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "freetop/suites.hpp"

namespace ft = freetop;

namespace {

struct Criterion {
  std::string label;
  std::vector<std::string> checks;  // report check ids rolled into it
};

}  // namespace

int main() {
  ft::RunConfig cfg;
  cfg.groups = {"zp2", "zp3", "dyadic", "symfin", "finite:s3"};
  cfg.chain = "dyadic";
  cfg.seed = 20240817;
  cfg.suites = {"all"};
  // contracted scale: phi grid len<=4/letters<=8/n<=5, 10^4 search fuzz,
  // 10^3 per transformation, bk over z2^8 and s5 with k<=2 and <=4 factors,
  // sur k<=10^4 with 50-element covers for n<=4, eq1 k<=10^3 n<=5,
  // main lemma len<=3/letters<=20/n<=4 on symfin, 500 continuity samples
  // per level n<=6, 100 openness scenarios (the RunConfig defaults).

  const ft::Report report = ft::run_suite(cfg);

  const std::vector<Criterion> criteria = {
      {"01 phi closed form", {"phi-closed-form"}},
      {"02 phi symmetry + monotonicity", {"phi-symmetry-monotone"}},
      {"03 certificate soundness + lemma transformations",
       {"cert-soundness", "cert-invert", "cert-square", "cert-conjugate"}},
      {"04 finite Birkhoff-Kakutani brute force", {"bk-finite"}},
      {"05 support containment of certificates", {"hausdorff-support"}},
      {"06 greedy surjection bound + cover", {"sur-greedy", "sur-cover"}},
      {"07 scale inequality chain", {"eq1-chain"}},
      {"08 main lemma, exact scales", {"main-lemma"}},
      {"09 continuity of the extension", {"continuity"}},
      {"10 openness of the evaluation maps", {"openness"}},
      {"11 deterministic reports", {"determinism"}},
  };

  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> tally;  // pass, not-pass
  std::map<std::string, std::string> first_bad;
  std::map<std::string, double> elapsed;
  for (const ft::CheckRecord& r : report.records) {
    auto& [good, bad] = tally[r.check];
    elapsed[r.check] += r.elapsed_ms;
    if (r.verdict == ft::Verdict::Pass) {
      ++good;
    } else {
      ++bad;
      if (!first_bad.count(r.check)) {
        first_bad[r.check] = r.instance + " -> " + ft::to_string(r.verdict);
      }
    }
  }

  // contracted wall-clock budgets (ms)
  const std::map<std::string, double> budget = {
      {"01 phi closed form", 30000.0},
      {"04 finite Birkhoff-Kakutani brute force", 60000.0},
      {"08 main lemma, exact scales", 120000.0},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::uint64_t good = 0, bad = 0;
    double ms = 0.0;
    std::string detail;
    for (const std::string& id : c.checks) {
      const auto it = tally.find(id);
      if (it == tally.end()) continue;
      good += it->second.first;
      bad += it->second.second;
      ms += elapsed[id];
      if (detail.empty() && first_bad.count(id)) detail = id + ": " + first_bad[id];
    }
    bool ok = bad == 0 && good > 0;
    if (const auto b = budget.find(c.label); b != budget.end() && ms > b->second) {
      ok = false;
      detail = "over time budget";
    }
    if (!ok) ++failures;
    std::printf("[%s] %s (%llu checks, %.0f ms%s%s)\n", ok ? "PASS" : "FAIL",
                c.label.c_str(), static_cast<unsigned long long>(good + bad), ms,
                detail.empty() ? "" : "; ", detail.c_str());
  }

  std::printf("%s: %d of %zu criteria failed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
