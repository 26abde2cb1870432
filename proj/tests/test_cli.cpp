#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "../tools/cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "orthoscalar/io.hpp"
#include "test_support.hpp"

using namespace testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  json body;
  std::string text;
};

class Workdir {
 public:
  Workdir() : dir_(fs::temp_directory_path() / ("orthoscalar-cli-" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Workdir() { fs::remove_all(dir_); }
  std::string write(const std::string& name, const json& j) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << j.dump();
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "orthoscalar");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = orthoscalar::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  Run r{code, json(), out.str()};
  if (!r.text.empty() && r.text.front() == '{') r.body = json::parse(r.text);
  return r;
}

}  // namespace

TEST_CASE("classify reports the extended Dynkin star") {
  Workdir w;
  const auto q = w.write("d4t.json", io::to_json(star(4)));
  const Run r = run({"classify", "--quiver", q});
  CHECK(r.code == 0);
  CHECK(r.body["tag"] == "ExtendedDynkin");
  CHECK(r.body["name"] == "D4~");
  CHECK(run({"classify", "--quiver", w.write("s5.json", io::to_json(star(5)))}).body["tag"] == "Wild");
}

TEST_CASE("check passes on the frame and fails on a wrong character") {
  Workdir w;
  const auto rep = w.write("frame.json", io::to_json(frame_rep()));
  const Run ok = run({"check", "--rep", rep, "--chi", w.write("chi.json", io::character_to_json(star(4), chi({2, 1, 1, 1, 1})))});
  CHECK(ok.code == 0);
  CHECK(ok.body["verdict"] == "pass");
  const Run bad = run({"check", "--rep", rep, "--chi", w.write("bad.json", io::character_to_json(star(4), chi({3, 1, 1, 1, 1})))});
  CHECK(bad.code == 1);
  CHECK(bad.body["verdict"] == "fail");
}

TEST_CASE("traces reports an unbalanced character as infeasible") {
  Workdir w;
  const Run r = run({"traces", "--quiver", w.write("a2.json", io::to_json(path(2))), "--dims",
                     w.write("d.json", io::dims_to_json(path(2), dims({1, 1}))), "--chi",
                     w.write("chi12.json", io::character_to_json(path(2), chi({1, 2})))});
  CHECK(r.code == 1);
  CHECK(r.body["feasible"] == false);
}

TEST_CASE("solve --out round-trips through check") {
  Workdir w;
  const auto q = w.write("q.json", io::to_json(star(4)));
  const auto c = w.write("c.json", io::character_to_json(star(4), chi({2, 1, 1, 1, 1})));
  const auto out = w.path("sol.json");
  const Run s = run({"solve", "--quiver", q, "--dims", w.write("d.json", io::dims_to_json(star(4), dims({2, 1, 1, 1, 1}))),
                     "--chi", c, "--seed", "3", "--out", out});
  REQUIRE(s.code == 0);
  CHECK(s.body["status"] == "Solved");
  const Run k = run({"check", "--rep", out, "--chi", c});
  CHECK(k.code == 0);
  CHECK(std::abs(k.body["max_defect"].get<double>() - s.body["max_defect"].get<double>()) <= 1e-12);

  // deterministic given the seed
  const Run again = run({"solve", "--quiver", q, "--dims", w.path("d.json"), "--chi", c, "--seed", "3"});
  CHECK(again.text == s.text);
}

TEST_CASE("exit codes and error bodies") {
  Workdir w;
  const Run missing = run({"classify", "--quiver", w.path("nope.json")});
  CHECK(missing.code == 2);
  CHECK(missing.body.contains("error"));
  CHECK(missing.body.contains("detail"));

  const Run usage = run({"frobnicate"});
  CHECK(usage.code == 2);
  CHECK(usage.body.contains("error"));

  std::ofstream(w.path("broken.json")) << "{ not json";
  CHECK(run({"classify", "--quiver", w.path("broken.json")}).code == 2);

  const Run cyc = run({"classify", "--quiver",
                       w.write("cyc.json", json{{"vertices", {"a", "b", "c"}},
                                                {"arrows",
                                                 {{{"id", "x"}, {"tail", "a"}, {"head", "b"}},
                                                  {{"id", "y"}, {"tail", "b"}, {"head", "c"}},
                                                  {{"id", "z"}, {"tail", "c"}, {"head", "a"}}}}})});
  CHECK(cyc.code == 2);
  CHECK(cyc.body["error"] == "NotATree");

  const auto q = w.write("q.json", io::to_json(star(4)));
  const Run nr = run({"construct", "--quiver", q, "--dims",
                      w.write("d.json", io::dims_to_json(star(4), dims({1, 1, 1, 1, 2}))), "--chi",
                      w.write("c.json", io::character_to_json(star(4), chi({5, 1, 1, 1, 1})))});
  CHECK(nr.code == 1);
  CHECK(nr.body["error"] == "NotRoot");
}

TEST_CASE("remaining subcommands") {
  Workdir w;
  const auto q = w.write("q.json", io::to_json(star(4)));
  const auto frame = w.write("frame.json", io::to_json(frame_rep()));
  const auto c = w.write("c.json", io::character_to_json(star(4), chi({2, 1, 1, 1, 1})));
  const auto delta = w.write("d.json", io::dims_to_json(star(4), dims({2, 1, 1, 1, 1})));

  CHECK(run({"tits", "--quiver", q, "--dims", delta}).body["value"] == 0);
  CHECK(run({"delta", "--quiver", q}).body["delta"]["c"] == 2);
  const Run roots = run({"roots", "--quiver", w.write("a3.json", io::to_json(path(3)))});
  CHECK(roots.body["count"] == 6);
  CHECK(run({"infer-chi", "--rep", frame}).code == 0);
  const Run ind = run({"indec", "--rep", frame});
  CHECK(ind.code == 0);
  CHECK(ind.body["commutant_dimension"] == 1);
  CHECK(run({"equiv", "--rep-a", frame, "--rep-b", frame}).code == 0);
  const Run cox = run({"coxeter", "--rep", frame, "--chi", c, "--parity", "even"});
  CHECK(cox.code == 0);
  CHECK(cox.body["max_defect"].get<double>() < 1e-12);
  const Run mod = run({"moduli", "--rep", frame, "--chi", c});
  CHECK(mod.code == 0);
  CHECK(mod.body["total_parameters"] == 6);
  CHECK(run({"gradcheck", "--quiver", q, "--dims", delta, "--chi", c, "--samples", "3"}).code == 0);
  const Run rr = run({"randrep", "--quiver", q, "--dims", delta, "--seed", "5"});
  CHECK(rr.code == 0);
  CHECK(rr.body.contains("matrices"));
  const Run human = run({"classify", "--quiver", q, "--human"});
  CHECK(human.text.find("tag: \"ExtendedDynkin\"") != std::string::npos);
  const Run thin = run({"construct", "--quiver", q, "--dims", w.write("t.json", io::dims_to_json(star(4), dims({1, 1, 1, 1, 1}))),
                        "--chi", w.write("tc.json", io::character_to_json(star(4), chi({4, 1, 1, 1, 1}))), "--via",
                        "functors"});
  CHECK(thin.code == 0);
  CHECK(thin.body["max_defect"].get<double>() < 1e-8);
}

TEST_CASE("the installed binary follows the exit-code contract") {
  Workdir w;
  const auto q = w.write("a2.json", io::to_json(path(2)));
  const std::string bin = ORTHOSCALAR_CLI_PATH;
  const auto status = [&](const std::string& args) {
    const int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  CHECK(status("classify --quiver " + q) == 0);
  CHECK(status("traces --quiver " + q + " --dims " + w.write("d.json", io::dims_to_json(path(2), dims({1, 1}))) +
               " --chi " + w.write("c.json", io::character_to_json(path(2), chi({1, 2})))) == 1);
  CHECK(status("classify") == 2);
}
