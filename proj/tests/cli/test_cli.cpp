#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <bcleak/blackwell.hpp>
#include <bcleak/fme.hpp>
#include <bcleak/frontier.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = BCLEAK_CLI;
const std::string kFixtures = BCLEAK_FIXTURES;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bcleak_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args, const fs::path& log = {}) {
  std::string cmd = kCli + " " + args;
  cmd += log.empty() ? " >/dev/null 2>&1" : " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bcleak::FrontierCurve read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  bcleak::StaircaseBuilder b;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("r1_bits", 0) == 0) continue;
    std::istringstream row(line);
    std::string a, c, d;
    std::getline(row, a, ',');
    std::getline(row, c, ',');
    std::getline(row, d, ',');
    b.add(std::stod(a), std::stod(c), std::stoul(d));
  }
  return b.build([](std::size_t) { return bcleak::JointPmf::uniform({{"X", 1}}); });
}

}  // namespace

TEST_CASE("help and unknown flags") {
  CHECK(run("--help") == 0);
  for (const char* sub : {"region", "blackwell", "fme", "verify"}) CHECK(run(std::string(sub) + " --help") == 0);
  CHECK(run("region --id det --no-such-flag") == 2);
  CHECK(run("") == 2);
}

TEST_CASE("region: deterministic Blackwell region matches the closed-form frontier") {
  const fs::path out = scratch("region");
  REQUIRE(run("region --channel blackwell --id det --l1 0 --l2 0 --grid 100 --samples 1 --out " + out.string()) == 0);
  const bcleak::FrontierCurve f = read_csv(out / "det_frontier.csv");
  const bcleak::FrontierCurve ref = bcleak::bwc_frontier({0.0, 0.0});
  CHECK(bcleak::frontier_distance(f, ref) < 1e-6);
  CHECK(fs::exists(out / "det_polytopes.json"));
  CHECK(fs::exists(out / "det_provenance.json"));
  const std::string env = slurp(out / "det_envelope.csv");
  CHECK(env.find("upper concave envelope") != std::string::npos);
  CHECK(env.find("r1_bits,r2_bits\n") != std::string::npos);
}

TEST_CASE("region: sentinels, channel files and bad input") {
  const fs::path out = scratch("region_inf");
  CHECK(run("region --channel " + kFixtures + "/blackwell.json --id det --l1 inf --l2 inf --grid 8 --samples 4 --svg --out " +
            out.string()) == 0);
  CHECK(fs::exists(out / "det_frontier.svg"));
  CHECK(run("region --channel /nonexistent.json --id det --out " + out.string()) == 2);
  CHECK(run("region --channel " + kFixtures + "/bad_row.json --id det --out " + out.string()) == 2);
  CHECK(run("region --id nope --out " + out.string()) == 2);
  CHECK(run("region --id det --l1 abc --out " + out.string()) == 2);
}

TEST_CASE("region: the header invocation reproduces the file") {
  const fs::path out = scratch("reproduce");
  REQUIRE(run("region --id sd0 --l1 0.1 --l2 inf --grid 3 --samples 8 --seed 5 --out " + out.string()) == 0);
  const std::string first = slurp(out / "sd0_frontier.csv");
  const std::string header = first.substr(0, first.find('\n'));
  const std::string prefix = "# invocation: bcleak ";
  REQUIRE(header.rfind(prefix, 0) == 0);
  CHECK(first.find("# seed: 5\n") != std::string::npos);
  fs::remove(out / "sd0_frontier.csv");
  REQUIRE(run(header.substr(prefix.size())) == 0);
  CHECK(slurp(out / "sd0_frontier.csv") == first);
}

TEST_CASE("blackwell: outputs, monotone sum rate, byte-identical reruns") {
  const fs::path out = scratch("blackwell");
  REQUIRE(run("blackwell --out " + out.string()) == 0);
  for (const char* f : {"fig3a_L0.csv", "fig3b_L0.05.csv", "fig3c_L0.1.csv", "fig3c_L0.4.csv", "fig3_Linf.csv", "fig4.csv",
                        "fig6.json", "thresholds.csv"})
    CHECK(fs::exists(out / f));
  std::ifstream in(out / "fig4.csv");
  std::string line;
  double last = -1;
  bool annotated = false;
  while (std::getline(in, line)) {
    if (line.rfind("# breakpoint_bits:", 0) == 0) annotated = true;
    if (line.empty() || line[0] == '#' || line[0] == 'L') continue;
    const double v = std::stod(line.substr(line.find(',') + 1));
    CHECK(v >= last);
    last = v;
  }
  CHECK(annotated);
  const std::string thresholds = slurp(out / "thresholds.csv");
  CHECK(thresholds.find("\n0.4000000000,") != std::string::npos);

  std::vector<std::string> before;
  for (const auto& e : fs::directory_iterator(out)) before.push_back(slurp(e.path()));
  REQUIRE(run("blackwell --out " + out.string()) == 0);
  std::size_t i = 0;
  for (const auto& e : fs::directory_iterator(out)) CHECK(slurp(e.path()) == before.at(i++));
}

TEST_CASE("fme: builtin derivation, toy projection and verdicts") {
  const fs::path out = scratch("fme");
  CHECK(run("fme --builtin achievability", out / "log.txt") == 0);
  CHECK(slurp(out / "log.txt").find("canonical_equal: true") != std::string::npos);

  REQUIRE(run("fme --input " + kFixtures + "/toy.txt --eliminate x --out " + out.string()) == 0);
  const bcleak::IneqSystem derived = bcleak::parse_system(slurp(out / "fme_derived.txt"));
  const bcleak::IneqSystem expected = bcleak::parse_system(slurp(kFixtures + "/toy_expected.txt"));
  CHECK(bcleak::canonical_equal(derived, expected));

  CHECK(run("fme --input " + kFixtures + "/toy.txt --eliminate x --reference " + kFixtures + "/toy_expected.txt") == 0);
  CHECK(run("fme --input " + kFixtures + "/toy.txt --eliminate x --reference " + kFixtures + "/toy_wrong.txt") == 1);
  CHECK(run("fme --input " + kFixtures + "/bad_syntax.txt --eliminate x", out / "err.txt") == 2);
  CHECK(slurp(out / "err.txt").find("bad_syntax.txt:2:") != std::string::npos);
  CHECK(run("fme --input " + kFixtures + "/toy.txt --eliminate nope") == 2);
}

TEST_CASE("verify: passes, reproducible, names the failing check") {
  const fs::path a = scratch("verify_a"), b = scratch("verify_b");
  CHECK(run("verify --trials 10 --seed 7 --out " + a.string()) == 0);
  CHECK(run("verify --trials 10 --seed 7 --out " + b.string()) == 0);
  auto strip = [](std::string s) {
    // the invocation differs only in the output directory; drop the config echo
    return s.substr(0, s.find("\"config\""));
  };
  CHECK(strip(slurp(a / "verify_report.json")) == strip(slurp(b / "verify_report.json")));
  CHECK(run("verify --trials 5 --channel " + kFixtures + "/perturbed_blackwell.json --out " + a.string(), a / "log.txt") == 1);
  CHECK(slurp(a / "log.txt").find("failed check: sd0_to_bothsecret") != std::string::npos);
}
