#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(FREETOP_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  r.status = pclose(p);
  if (r.status != -1) r.status = WEXITSTATUS(r.status);
  return r;
}

}  // namespace

TEST_CASE("cli: reduce") {
  const RunResult r = run_cli("reduce --word \"3 5' 5 2\"");
  CHECK(r.status == 0);
  CHECK(r.out == "3 2\n");
}

TEST_CASE("cli: phi with explain") {
  {
    const RunResult r = run_cli("phi --n 2 --word 3");
    CHECK(r.status == 0);
    CHECK(r.out == "5\n");
  }
  {
    const RunResult r = run_cli("phi --n 0 --word \"3 5\" --explain");
    CHECK(r.status == 0);
    CHECK(r.out.find("8") != std::string::npos);
    CHECK(r.out.find("phi_0(3 5) = 8") != std::string::npos);
  }
  {
    const RunResult r = run_cli("phi --n 1 --word \"2 4' 2\" --chain base:3");
    CHECK(r.status == 0);
    CHECK(r.out == "9\n");  // phi does not depend on the chain
  }
}

TEST_CASE("cli: member emits certificate JSON") {
  const RunResult r = run_cli("member --word \"15 7\" --max-factors 3 --max-conj 2");
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "member");
  CHECK(j["certificate"]["factors"].size() == 2);
  CHECK(j["certificate"]["factors"][0]["slot"] == 4);

  const RunResult u = run_cli("member --word \"5' 31 5\" --max-factors 3 --max-conj 2");
  CHECK(u.status == 2);
  CHECK(nlohmann::json::parse(u.out)["status"] == "unknown");
}

TEST_CASE("cli: quotient build then verify") {
  const std::string map_path = "test_cli_map.json";
  const RunResult b =
      run_cli("quotient build --group zp2 --depth 12 --n-max 5 --k-max 64 --out " + map_path);
  CHECK(b.status == 0);
  {
    std::ifstream in(map_path);
    REQUIRE(in.good());
    const auto j = nlohmann::json::parse(in);
    CHECK(j["schema"] == 1);
    CHECK(j["f"][0]["value"] == "0");
    CHECK(j["f"][2]["value"] == "1");
  }
  const RunResult v = run_cli("quotient verify --map " + map_path +
                              " --suite eq1 --k-max 64 --n-max 3");
  CHECK(v.status == 0);
  CHECK(nlohmann::json::parse(v.out)["verdict"] == "PASS");
  std::remove(map_path.c_str());
}

TEST_CASE("cli: pw demo transcript") {
  const RunResult r = run_cli("pw demo --group zp2 --seed 5 --u 2");
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "PASS");
  CHECK(j["transcript"]["checks"]["invariant_member"] == true);
}

TEST_CASE("cli: verify quick run exits clean and is reproducible") {
  const std::string args =
      "verify --suite certs --suite openness --group zp2 --seed 11 --quick --json ";
  const RunResult a = run_cli(args + "test_cli_rep_a.json");
  const RunResult b = run_cli(args + "test_cli_rep_b.json");
  CHECK(a.status == 0);
  CHECK(b.status == 0);
  std::ifstream fa("test_cli_rep_a.json"), fb("test_cli_rep_b.json");
  const std::string ja((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
  const std::string jb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
  CHECK(ja == jb);
  CHECK(!ja.empty());
  std::remove("test_cli_rep_a.json");
  std::remove("test_cli_rep_b.json");
}

TEST_CASE("cli: finite group adapter loads a Cayley table file") {
  const RunResult r = run_cli(
      "verify --suite eq1 --group finite:" FREETOP_DATA_DIR "/s3.cayley --seed 2 --quick");
  CHECK(r.status == 0);
  CHECK(r.out.find("[PASS] eq1-chain") != std::string::npos);
}

TEST_CASE("cli: errors surface with nonzero status") {
  CHECK(run_cli("reduce --word \"x y\"").status == 3);
  CHECK(run_cli("phi --n 1 --word 3 --chain nope").status == 3);
  CHECK(run_cli("verify --suite eq1 --group nope --quick").status == 3);
}
