#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "dsp/cli.hpp"
#include "dsp/error.hpp"
#include "dsp/set_file.hpp"
#include "dsp/verifier.hpp"

using namespace dsp;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dsp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("dsp_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string write(const fs::path& p, const std::string& text) {
  write_file(p.string(), text);
  return p.string();
}

}  // namespace

TEST_CASE("construct writes set files with the predicted sizes") {
  const auto dir = scratch();
  struct Case {
    std::string kind;
    std::vector<std::string> extra;
    std::size_t size;
  };
  const std::vector<Case> cases{{"erdos", {}, 35},
                                {"tree", {}, 34},
                                {"tree", {"--tree", "star"}, 34},
                                {"gk-chain", {}, 37},
                                {"triples", {}, 31},
                                {"squarefree", {"--epsilon", "0.1"}, 27}};
  for (const auto& c : cases) {
    CAPTURE(c.kind);
    std::vector<std::string> args{"construct", "--kind", c.kind, "--n", "121"};
    args.insert(args.end(), c.extra.begin(), c.extra.end());
    auto r = cli(args);
    REQUIRE(r.code == exit_code::ok);
    const SetFile f = parse_set_file(r.out);
    CHECK(f.n_limit == 121);
    CHECK(f.meta["kind"] == c.kind);
    CHECK(f.meta["predicted_count"].get<std::size_t>() == f.elements.size());
    CHECK(f.elements.size() == c.size);
    CHECK(is_distinct(verify_distinct(f.to_set())));
  }

  const auto path = (dir / "erdos.json").string();
  auto r = cli({"construct", "--kind", "erdos", "--n", "50", "--out", path});
  CHECK(r.code == exit_code::ok);
  CHECK(parse_set_file(read_file(path)).elements.size() == 19);

  CHECK(cli({"construct", "--kind", "squarefree", "--n", "100", "--epsilon", "0.5"}).code == exit_code::usage);
  CHECK(cli({"construct", "--kind", "tree", "--n", "3"}).code == exit_code::usage);
  CHECK(cli({"construct", "--kind", "bogus", "--n", "10"}).code == exit_code::usage);
  CHECK(cli({"construct", "--n", "10"}).code == exit_code::usage);
  CHECK(cli({}).code == exit_code::usage);
  CHECK(cli({"--help"}).code == exit_code::ok);
}

TEST_CASE("construct accepts a custom EkTable") {
  const auto dir = scratch();
  const auto table = write(dir / "ek.json", R"([{"k": 1, "g": 1, "elements": [1]}, {"k": 2, "g": 2, "elements": [1, 2]}])");
  auto r = cli({"construct", "--kind", "gk-chain", "--n", "121", "--ek-table", table});
  REQUIRE(r.code == exit_code::ok);
  CHECK(parse_set_file(r.out).elements.size() == 35);

  const auto broken = write(dir / "ek_bad.json", R"([{"k": 2, "g": 3, "elements": [1, 2]}])");
  CHECK(cli({"construct", "--kind", "gk-chain", "--n", "121", "--ek-table", broken}).code == exit_code::usage);
  const auto garbage = write(dir / "ek_garbage.json", "[{");
  CHECK(cli({"construct", "--kind", "gk-chain", "--n", "121", "--ek-table", garbage}).code == exit_code::data);
}

TEST_CASE("verify reports verdicts through exit codes") {
  const auto dir = scratch();
  const auto good = write(dir / "good.txt", "# primes and squares\n2\n3\n4\n\n9\n5\n");
  auto r = cli({"verify", good});
  CHECK(r.code == exit_code::ok);
  CHECK(r.out.find("verdict: distinct") != std::string::npos);
  CHECK(cli({"verify", good, "--oracle"}).code == exit_code::ok);

  const auto bad = write(dir / "bad.txt", "2\n3\n6\n");
  const auto cert = (dir / "bad.cert.json").string();
  r = cli({"verify", bad, "--cert", cert});
  CHECK(r.code == exit_code::collision);
  CHECK(r.out.find("verdict: collision") != std::string::npos);
  const CertificateFile cf = parse_certificate_file(read_file(cert));
  CHECK(cf.subset_b == std::vector<Int>{6});
  CHECK(cf.subset_c == std::vector<Int>{2, 3});
  CHECK(cf.product == "6");
  CHECK(check_certificate({cf.subset_b, cf.subset_c}, SubsetProductSet(6, {2, 3, 6})));

  r = cli({"verify", bad});
  CHECK(r.code == exit_code::collision);
  CHECK(fs::exists(bad + ".cert.json"));
  CHECK(cli({"verify", bad, "--oracle"}).code == exit_code::collision);

  const auto hard = write_set_file(to_set_file(SubsetProductSet(1000, {6, 10, 14, 15, 21, 35, 33, 55, 77, 22, 26, 39, 65, 91}),
                                               "manual"));
  const auto hard_path = write(dir / "hard.json", hard);
  r = cli({"verify", hard_path, "--budget", "0"});
  CHECK(r.code == exit_code::inconclusive);
  CHECK(r.out.find("verdict: inconclusive") != std::string::npos);
}

TEST_CASE("verify rejects malformed input") {
  const auto dir = scratch();
  CHECK(cli({"verify", (dir / "missing.json").string()}).code == exit_code::data);
  CHECK(cli({"verify", write(dir / "junk.txt", "2\nthree\n")}).code == exit_code::data);
  CHECK(cli({"verify", write(dir / "dup.txt", "2\n2\n")}).code == exit_code::data);
  CHECK(cli({"verify", write(dir / "trunc.json", "{\"format_version\": ")}).code == exit_code::data);
  CHECK(cli({"verify", write(dir / "ver.json", R"({"format_version": "x", "n_limit": 5, "elements": []})")}).code ==
        exit_code::data);
  CHECK(cli({"verify", write(dir / "range.json", R"({"format_version": "dsp-set/1", "n_limit": 5, "elements": [7]})")})
            .code == exit_code::data);
  CHECK(cli({"verify", write(dir / "order.json", R"({"format_version": "dsp-set/1", "n_limit": 9, "elements": [3, 2]})")})
            .code == exit_code::data);
  CHECK(cli({"verify", write(dir / "zero.txt", "0\n")}).code == exit_code::data);
  CHECK(cli({"verify", write(dir / "over.txt", "9\n"), "--n", "5"}).code == exit_code::data);
  CHECK(cli({"verify"}).code == exit_code::usage);
}

TEST_CASE("verify oracle cap") {
  const auto dir = scratch();
  std::string text;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97})
    text += std::to_string(p) + "\n";
  const auto path = write(dir / "many.txt", text);
  CHECK(cli({"verify", path, "--oracle"}).code == exit_code::usage);
  CHECK(cli({"verify", path}).code == exit_code::ok);
}

TEST_CASE("exact") {
  const auto dir = scratch();
  auto r = cli({"exact", "--g", "--n", "4"});
  CHECK(r.code == exit_code::ok);
  CHECK(r.out.find("value: 7\n") != std::string::npos);
  CHECK(r.out.find("witness: 3 5 6 7\n") != std::string::npos);

  r = cli({"exact", "--f", "--n", "6", "--threads", "2"});
  CHECK(r.code == exit_code::ok);
  CHECK(r.out.find("value: 4\n") != std::string::npos);
  CHECK(r.out.find("optimal: true\n") != std::string::npos);

  const auto out = (dir / "h.json").string();
  r = cli({"exact", "--h", "--n", "6", "--out", out});
  CHECK(r.code == exit_code::ok);
  CHECK(r.out.find("value: 3\n") != std::string::npos);
  const SetFile f = parse_set_file(read_file(out));
  CHECK(f.elements == std::vector<Int>{2, 3, 5});
  CHECK(f.meta["kind"] == "exact-h");

  r = cli({"exact", "--f", "--n", "20", "--budget", "5"});
  CHECK(r.code == exit_code::inconclusive);
  CHECK(r.out.find("optimal: false\n") != std::string::npos);

  CHECK(cli({"exact", "--f", "--n", "40"}).code == exit_code::usage);
  CHECK(cli({"exact", "--g", "--n", "9"}).code == exit_code::usage);
  CHECK(cli({"exact", "--g", "--n", "0"}).code == exit_code::usage);
  CHECK(cli({"exact", "--f", "--g", "--n", "5"}).code == exit_code::usage);
  CHECK(cli({"exact", "--n", "5"}).code == exit_code::usage);
  CHECK(cli({"exact", "--help"}).code == exit_code::ok);
}

TEST_CASE("graph exports DOT and audits") {
  const auto dir = scratch();
  auto r = cli({"construct", "--kind", "tree", "--n", "121"});
  const auto tree = write(dir / "tree.json", r.out);

  r = cli({"graph", tree, "--dot", "-"});
  CHECK(r.code == exit_code::ok);
  CHECK(r.out.rfind("graph G {\n", 0) == 0);
  CHECK(r.out.find("[shape=doublecircle]") != std::string::npos);
  CHECK(r.out.find(" -- ") != std::string::npos);

  const auto dot = (dir / "tree.dot").string();
  r = cli({"graph", tree, "--dot", dot, "--audit"});
  CHECK(r.code == exit_code::ok);
  CHECK(read_file(dot).rfind("graph G {\n", 0) == 0);
  CHECK(r.out.find("input_size: 34\n") != std::string::npos);
  CHECK(r.out.find("removed_for_injectivity: 3\n") != std::string::npos);
  CHECK(r.out.find("final_edge_count: 28\n") != std::string::npos);
  CHECK(r.out.find("threshold: 3\n") != std::string::npos);

  r = cli({"graph", tree, "--audit", "--threshold", "5"});
  CHECK(r.out.find("threshold: 5\n") != std::string::npos);

  const auto empty = write(dir / "empty.txt", "");
  r = cli({"graph", empty, "--audit"});
  CHECK(r.code == exit_code::ok);
  CHECK(r.out.find("input_size: 0\n") != std::string::npos);
  CHECK(r.out.find("final_edge_count: 0\n") != std::string::npos);

  const auto colliding = write(dir / "coll.txt", "2\n3\n6\n");
  CHECK(cli({"graph", colliding, "--dot", "-"}).code == exit_code::ok);
}

TEST_CASE("bounds") {
  auto r = cli({"bounds", "--n", "1000"});
  CHECK(r.code == exit_code::ok);
  CHECK(r.out.find("triples") != std::string::npos);
  CHECK(r.out.find(" 178 ") != std::string::npos);
  CHECK(r.out.find(" no\n") == std::string::npos);
  CHECK(r.out.find("pi(N): 168\n") != std::string::npos);

  r = cli({"bounds", "--n", "121"});
  CHECK(r.out.find(" no\n") == std::string::npos);
  r = cli({"bounds", "--n", "1"});
  CHECK(r.code == exit_code::ok);
  CHECK(r.out.find("n/a") != std::string::npos);
  CHECK(cli({"bounds"}).code == exit_code::usage);
  CHECK(cli({"bounds", "--n", "-3"}).code == exit_code::usage);
}

TEST_CASE("set and certificate files round trip") {
  SetFile f;
  f.n_limit = 30;
  f.elements = {2, 3, 25};
  f.meta["kind"] = "manual";
  const SetFile back = parse_set_file(write_set_file(f));
  CHECK(back.n_limit == 30);
  CHECK(back.elements == f.elements);
  CHECK(back.meta == f.meta);

  auto part = PrimePartition::custom(154, {2}, {3, 5, 7, 11, 13}, {});
  const SubsetProductSet custom(std::move(part), {9, 15, 65, 84, 143, 154});
  const SetFile cf = parse_set_file(write_set_file(to_set_file(custom, "manual")));
  const SubsetProductSet rebuilt = cf.to_set();
  CHECK(rebuilt.partition().medium() == std::vector<Int>{3, 5, 7, 11, 13});
  CHECK(rebuilt.values() == custom.values());

  const CertificateFile c{{6}, {2, 3}, "6"};
  const CertificateFile cb = parse_certificate_file(write_certificate_file(c));
  CHECK(cb.subset_b == c.subset_b);
  CHECK(cb.subset_c == c.subset_c);
  CHECK(cb.product == "6");
  CHECK_THROWS_AS(parse_certificate_file("{}"), ParseError);
  CHECK_THROWS_AS(parse_set_file("{\"format_version\": \"dsp-set/1\"}"), ParseError);
}

TEST_CASE("installed binary exit codes") {
  const auto dir = scratch();
  const auto bad = write(dir / "bin_bad.txt", "2\n3\n6\n");
  auto status = [](const std::string& cmd) {
    const int s = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  const std::string bin = DSP_CLI_PATH;
  CHECK(status(bin + " bounds --n 100") == 0);
  CHECK(status(bin + " verify " + bad) == 1);
  CHECK(status(bin + " exact --f --n 20 --budget 5") == 2);
  CHECK(status(bin + " nonsense") == 64);
  CHECK(status(bin + " verify " + (dir / "absent").string()) == 65);
  fs::remove_all(dir);
}
