#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "freetop/errors.hpp"
#include "freetop/report.hpp"
#include "freetop/suites.hpp"

namespace ft = freetop;

namespace {

void emit(const ft::Json& j, const std::string& json_path, bool also_stdout) {
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw ft::Error("cannot write " + json_path);
    out << j.dump(2) << '\n';
  }
  if (also_stdout || json_path.empty()) std::cout << j.dump(2) << '\n';
}

void print_phi_trace(const ft::PhiTrace& t, int depth) {
  std::cout << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "phi_" << t.level
            << "(" << (t.word.empty() ? "e" : ft::format_word(t.word)) << ") = " << t.value
            << '\n';
  for (const ft::PhiTrace& c : t.children) print_phi_trace(c, depth + 1);
}

ft::Json build_map_json(const std::string& group, const std::string& chain_id,
                        std::uint32_t depth, std::uint32_t n_max, std::uint64_t k_max) {
  auto oracle = ft::make_oracle(group);
  auto chain = ft::make_chain(chain_id);
  ft::QuotientMap map(oracle, chain, depth, n_max);
  ft::Json f = ft::Json::array();
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    f.push_back(ft::Json{{"k", k},
                         {"level", chain->level(k)},
                         {"index", map.f_index(k)},
                         {"value", oracle->format(map.f(k))}});
  }
  return ft::Json{{"schema", 1},
                  {"group", group},
                  {"chain", chain_id},
                  {"depth", depth},
                  {"n_max", n_max},
                  {"k_max", k_max},
                  {"indices", map.basis().indices},
                  {"f", f}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"freetop: exact neighborhood machinery for the free group F(N), "
               "quotients onto oracle-presented groups, and piecewise-projection "
               "groups, with a verification harness"};
  app.require_subcommand(1);

  // global options, shared by the subcommands
  std::string group = "zp2";
  std::string chain_id = "dyadic";
  std::uint64_t seed = 0;
  std::string json_path;
  std::uint32_t max_factors = 3;
  std::uint32_t max_conj = 2;
  app.add_option("--group", group, "group adapter: zp2|zp3|symfin|dyadic|finite:<file>")
      ->capture_default_str();
  app.add_option("--chain", chain_id, "index chain: dyadic|base:<b>")->capture_default_str();
  app.add_option("--seed", seed, "seed fixing all randomness")->capture_default_str();
  app.add_option("--json", json_path, "write the JSON result to this path");
  app.add_option("--max-factors", max_factors, "certificate search factor bound")
      ->capture_default_str();
  app.add_option("--max-conj", max_conj, "certificate search conjugator length bound")
      ->capture_default_str();
  app.fallthrough();

  // reduce
  auto* cmd_reduce = app.add_subcommand("reduce", "free reduction of a word");
  std::string word_text;
  cmd_reduce->add_option("--word", word_text, "word in text format, e.g. \"3 5' 5 2\"")
      ->required();

  // phi
  auto* cmd_phi = app.add_subcommand("phi", "evaluate the scale function phi_n");
  std::uint64_t phi_n = 0;
  std::string phi_word;
  bool phi_explain = false;
  cmd_phi->add_option("--n", phi_n, "level n")->required();
  cmd_phi->add_option("--word", phi_word, "word in text format")->required();
  cmd_phi->add_flag("--explain", phi_explain, "print the recursion tree");

  // member
  auto* cmd_member = app.add_subcommand("member", "bounded symmetric-product membership");
  cmd_member->set_help_flag("--help", "print help");  // frees -h for the translate option
  std::string member_word;
  std::string member_h;
  std::uint32_t member_k = 1;
  cmd_member->add_option("--word", member_word, "word to test")->required();
  cmd_member->add_option("--h", member_h, "translate h (default e)");
  cmd_member->add_option("--k", member_k, "dilation k >= 1")->capture_default_str();

  // quotient build / verify
  auto* cmd_quotient = app.add_subcommand("quotient", "quotient homomorphism pipeline");
  cmd_quotient->require_subcommand(1);
  auto* cmd_qbuild = cmd_quotient->add_subcommand("build", "build and export the map");
  std::uint32_t q_depth = 16;
  std::uint32_t q_nmax = 6;
  std::uint64_t q_kmax = 200;
  std::string q_out = "map.json";
  cmd_qbuild->add_option("--depth", q_depth, "refined basis depth")->capture_default_str();
  cmd_qbuild->add_option("--n-max", q_nmax, "scale horizon")->capture_default_str();
  cmd_qbuild->add_option("--k-max", q_kmax, "export f(k) for k <= this")->capture_default_str();
  cmd_qbuild->add_option("--out", q_out, "output path")->capture_default_str();

  auto* cmd_qverify = cmd_quotient->add_subcommand("verify", "re-check an exported map");
  std::string q_map;
  std::string q_suite = "eq1";
  std::uint64_t qv_kmax = 200;
  std::uint64_t qv_nmax = 4;
  std::uint64_t qv_samples = 100;
  std::uint64_t qv_prefix = 25;
  cmd_qverify->add_option("--map", q_map, "map.json from quotient build")->required();
  cmd_qverify->add_option("--suite", q_suite, "eq1|mainlemma|continuity|openness")
      ->capture_default_str();
  cmd_qverify->add_option("--k-max", qv_kmax, "eq1 bound")->capture_default_str();
  cmd_qverify->add_option("--n-max", qv_nmax, "level bound")->capture_default_str();
  cmd_qverify->add_option("--samples", qv_samples, "continuity samples per level")
      ->capture_default_str();
  cmd_qverify->add_option("--prefix", qv_prefix, "openness cover prefix")
      ->capture_default_str();

  // pw demo
  auto* cmd_pw = app.add_subcommand("pw", "piecewise-projection group demos");
  cmd_pw->require_subcommand(1);
  auto* cmd_pwdemo = cmd_pw->add_subcommand("demo", "one seeded openness scenario");
  std::uint32_t pw_sample = 3;
  std::uint32_t pw_coords = 2;
  std::uint32_t pw_conj = 2;
  std::uint64_t pw_u = 2;
  cmd_pwdemo->add_option("--sample-size", pw_sample, "max sample points")
      ->capture_default_str();
  cmd_pwdemo->add_option("--coords", pw_coords, "max coordinates d")->capture_default_str();
  cmd_pwdemo->add_option("--conjugators", pw_conj, "max conjugators")->capture_default_str();
  cmd_pwdemo->add_option("--u", pw_u, "max neighborhood index U")->capture_default_str();

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites = {"all"};
  std::vector<std::string> groups;
  bool quick = false;
  bool timings = false;
  cmd_verify->add_option("--suite", suites,
                         "phi|certs|bk|sur|eq1|mainlemma|continuity|openness|determinism|all")
      ->capture_default_str();
  cmd_verify->add_option("--groups", groups, "adapters for the group-specific suites");
  cmd_verify->add_flag("--quick", quick, "reduced sample counts");
  cmd_verify->add_flag("--timings", timings, "include elapsed_ms in the JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_reduce) {
      std::cout << ft::format_word(ft::parse_word(word_text)) << '\n';
      return 0;
    }

    if (*cmd_phi) {
      ft::PhiContext ctx(ft::make_chain(chain_id));
      const ft::ReducedWord w = ft::parse_word(phi_word);
      const std::uint64_t value = ctx.phi(phi_n, w);
      std::cout << value << '\n';
      if (phi_explain) print_phi_trace(ctx.phi_explain(phi_n, w), 0);
      if (!json_path.empty()) {
        ft::Json j{{"schema", 1}, {"n", phi_n}, {"word", ft::word_to_json(w)},
                   {"value", value}, {"chain", chain_id}};
        if (phi_explain) j["trace"] = ft::phi_trace_to_json(ctx.phi_explain(phi_n, w));
        emit(j, json_path, false);
      }
      return 0;
    }

    if (*cmd_member) {
      ft::PhiContext ctx(ft::make_chain(chain_id));
      const ft::ReducedWord w = ft::parse_word(member_word);
      const ft::SubbasicSpec spec{ft::parse_word(member_h), member_k};
      const ft::SearchBounds bounds{max_factors, max_conj};
      const ft::MemberResult res = ft::sym_member_bounded(ctx, w, spec, bounds);
      emit(ft::member_result_to_json(w, bounds, res), json_path, true);
      return res.status == ft::Membership::Member ? 0 : 2;
    }

    if (*cmd_qbuild) {
      const ft::Json j = build_map_json(group, chain_id, q_depth, q_nmax, q_kmax);
      std::ofstream out(q_out);
      if (!out) throw ft::Error("cannot write " + q_out);
      out << j.dump(2) << '\n';
      std::cout << "wrote " << q_out << " (group " << group << ", depth " << q_depth
                << ", k <= " << q_kmax << ")\n";
      return 0;
    }

    if (*cmd_qverify) {
      std::ifstream in(q_map);
      if (!in) throw ft::Error("cannot read " + q_map);
      ft::Json stored = ft::Json::parse(in);
      const std::string g = stored.at("group").get<std::string>();
      const std::string ch = stored.at("chain").get<std::string>();
      const auto depth = stored.at("depth").get<std::uint32_t>();
      const auto n_max = stored.at("n_max").get<std::uint32_t>();
      const auto k_max = stored.at("k_max").get<std::uint64_t>();

      // reproducibility first: the rebuilt map must match the stored one
      const ft::Json rebuilt = build_map_json(g, ch, depth, n_max, k_max);
      const bool reproduced = rebuilt.at("indices") == stored.at("indices") &&
                              rebuilt.at("f") == stored.at("f");

      auto oracle = ft::make_oracle(g);
      auto chain = ft::make_chain(ch);
      ft::PhiContext ctx(chain);
      ft::QuotientMap map(oracle, chain, depth, n_max);
      ft::Json checks = ft::Json::array();
      bool ok = reproduced;
      checks.push_back(ft::Json{{"check", "reproducible"}, {"holds", reproduced}});
      if (q_suite == "eq1") {
        std::uint64_t violations = 0;
        for (std::uint64_t k = 0; k <= qv_kmax; ++k) {
          for (std::uint64_t n = 0; n <= qv_nmax; ++n) {
            const ft::Eq1Report r = map.verify_chain_eq1(k, n);
            if (!r.holds) {
              ++violations;
              checks.push_back(ft::eq1_to_json(r));
            }
          }
        }
        ok = ok && violations == 0;
        checks.push_back(ft::Json{{"check", "eq1"}, {"violations", violations}});
      } else if (q_suite == "mainlemma") {
        ft::Rng rng(ft::derive_seed(seed, "cli/mainlemma"));
        std::uint64_t fails = 0, inconclusive = 0;
        for (std::uint64_t i = 0; i < qv_samples; ++i) {
          std::vector<ft::Letter> raw;
          for (std::uint64_t l = 0, len = rng.below(4); l < len; ++l) {
            raw.push_back(ft::Letter{static_cast<std::uint32_t>(rng.below(12)),
                                     static_cast<std::int8_t>(rng.coin() ? 1 : -1)});
          }
          const ft::ReducedWord w = ft::ReducedWord::reduce(raw);
          const ft::MainLemmaReport r = map.verify_main_lemma(ctx, w, rng.below(qv_nmax + 1));
          if (r.verdict == ft::LemmaVerdict::Fail) {
            ++fails;
            checks.push_back(ft::main_lemma_to_json(r, w, 0));
          }
          if (r.verdict == ft::LemmaVerdict::Inconclusive) ++inconclusive;
        }
        ok = ok && fails == 0;
        checks.push_back(
            ft::Json{{"check", "mainlemma"}, {"fails", fails}, {"inconclusive", inconclusive}});
      } else if (q_suite == "continuity") {
        std::uint64_t violations = 0;
        for (std::uint64_t n = 0; n <= qv_nmax; ++n) {
          ft::Rng rng(ft::derive_seed(seed, "cli/continuity/" + std::to_string(n)));
          const ft::ContinuityReport r = map.continuity_check(ctx, n, qv_samples, rng);
          violations += r.violations;
        }
        ok = ok && violations == 0;
        checks.push_back(ft::Json{{"check", "continuity"}, {"violations", violations}});
      } else if (q_suite == "openness") {
        bool complete = true;
        for (std::uint64_t n = 0; n <= qv_nmax; ++n) {
          const ft::OpennessReport r = map.openness_check(n, qv_prefix);
          complete = complete && r.complete;
          checks.push_back(ft::Json{{"n", n}, {"report", ft::openness_report_to_json(r)}});
        }
        ok = ok && complete;
      } else {
        throw ft::Error("unknown verify suite: " + q_suite);
      }
      emit(ft::Json{{"schema", 1},
                    {"map", q_map},
                    {"suite", q_suite},
                    {"verdict", ok ? "PASS" : "FAIL"},
                    {"checks", checks}},
           json_path, true);
      return ok ? 0 : 1;
    }

    if (*cmd_pwdemo) {
      auto oracle = ft::make_oracle(group);
      ft::Rng rng(ft::derive_seed(seed, "pw/demo"));
      const ft::PwScenario sc =
          ft::make_pw_scenario(*oracle, rng, pw_sample, pw_coords, pw_conj, pw_u);
      ft::Json points = ft::Json::array();
      for (const auto& pt : sc.sample->points) {
        ft::Json coords = ft::Json::array();
        for (const auto& c : pt) coords.push_back(oracle->format(c));
        points.push_back(coords);
      }
      const ft::OpennessTranscript t = ft::openness_witness(
          *oracle, sc.sample, sc.x_index, sc.conjugators, sc.u_index, sc.b_word);
      emit(ft::Json{{"schema", 1},
                    {"group", group},
                    {"seed", seed},
                    {"scenario",
                     {{"points", points},
                      {"x_index", sc.x_index},
                      {"u", sc.u_index},
                      {"conjugators", sc.conjugators.size()},
                      {"b_word", ft::word_to_json(sc.b_word)}}},
                    {"transcript", ft::pw_transcript_to_json(*oracle, t)},
                    {"verdict", "PASS"}},
           json_path, true);
      return 0;
    }

    if (*cmd_verify) {
      ft::RunConfig cfg;
      cfg.groups = groups.empty() ? std::vector<std::string>{group} : groups;
      cfg.chain = chain_id;
      cfg.seed = seed;
      cfg.max_factors = max_factors;
      cfg.max_conj_len = max_conj;
      cfg.suites = suites;
      if (quick) {
        cfg.fuzz_members = 500;
        cfg.fuzz_transforms = 100;
        cfg.sur_k_max = 1000;
        cfg.eq1_k_max = 200;
        cfg.lemma_max_letter = 8;
        cfg.continuity_samples = 60;
        cfg.openness_scenarios = 20;
      }
      const ft::Report report = ft::run_suite(cfg);
      for (const ft::CheckRecord& r : report.records) {
        std::cout << "[" << ft::to_string(r.verdict) << "] " << r.check << " (" << r.instance
                  << ")\n";
      }
      if (!json_path.empty()) emit(report.to_json(timings), json_path, false);
      return ft::report_exit_code(report);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
