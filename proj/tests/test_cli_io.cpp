#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gapcert/generate.hpp"
#include "gapcert/io.hpp"
#include "helpers.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace gapcert;
using namespace gapcert::testing;

namespace {

int run(const std::string& args) {
  std::string cmd = std::string(GAPCERT_BIN) + " " + args + " > /dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string tmpfile(const std::string& name) { return "/tmp/gapcert_test_" + name; }

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  out << body;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string strip_timestamp(std::string s) {
  Json j = Json::parse(s);
  j.erase("timestamp");
  return j.dump(2);
}

}  // namespace

TEST_CASE("space and problem JSON round trip") {
  RealVec w(3);
  w << 0.5, 1.0, 2.0;
  NormedSpace X(3, Field::Complex, NormDesc{kInf, w});
  Json sj = space_to_json(X);
  CHECK(space_from_json(sj) == X);

  TestRng r(1);
  ProblemFile p;
  p.space = X;
  p.subspaces.emplace("M", random_subspace(r, X, 2));
  Json pj = problem_to_json(p);
  ProblemFile q = problem_from_json(pj);
  CHECK(q.subspaces.count("M") == 1);
  CHECK(gap_delta_hat(get_subspace(p, "M"), get_subspace(q, "M"), 100, 1).hi <= 1e-10);
}

TEST_CASE("complex scalars as [re, im] pairs") {
  Json j;
  j["dim"] = 2;
  j["field"] = "complex";
  j["subspaces"]["M"] = Json::array({Json::array({Json::array({1.0, 2.0}), 0.0})});
  ProblemFile p = problem_from_json(j);
  CHECK(get_subspace(p, "M").basis()(0, 0) == Scalar(1.0, 2.0));
  Json back = problem_to_json(p);
  CHECK(back["subspaces"]["M"][0][0][1] == 2.0);
  j["field"] = "real";
  CHECK_THROWS_AS(problem_from_json(j), InputError);
}

TEST_CASE("malformed inputs raise input errors") {
  CHECK_THROWS_AS(load_json("/nonexistent/file.json"), InputError);
  write_file(tmpfile("bad.json"), "{not json");
  CHECK_THROWS_AS(load_json(tmpfile("bad.json")), InputError);
  Json j;
  j["field"] = "real";  // missing dim
  CHECK_THROWS_AS(space_from_json(j), InputError);
}

TEST_CASE("generate instances are valid and deterministic") {
  for (const char* kind : {"pair", "tetrad", "reldim", "morse", "path"}) {
    Json a = generate_instance(kind, 7, 6);
    Json b = generate_instance(kind, 7, 6);
    CHECK(a.dump() == b.dump());
    Json c = generate_instance(kind, 8, 6);
    CHECK(a.dump() != c.dump());
  }
  CHECK_THROWS_AS(generate_instance("pair", 1, 100), InputError);
  CHECK_THROWS_AS(generate_instance("nope", 1, 4), InputError);
}

TEST_CASE("pair manifest index matches an independent recomputation") {
  for (uint64_t seed : {1, 2, 3, 4, 5}) {
    Json j = generate_instance("pair", seed, 5);
    ProblemFile p = problem_from_json(j);
    PairIndex pi = pair_index(get_subspace(p, "M"), get_subspace(p, "N"));
    CHECK(j["manifest"]["index"].get<int>() == pi.index);
    CHECK(j["manifest"]["index"].get<int>() ==
          get_subspace(p, "M").dim() + get_subspace(p, "N").dim() - p.space.dim());
  }
}

TEST_CASE("morse manifest signature matches the eigen oracle") {
  Json j = generate_instance("morse", 3, 5);
  ProblemFile p = problem_from_json(j);
  SymmetricPair Q = form_from_json(j["form"], p);
  MorseIndices m = morse_indices(Q);
  CHECK(j["manifest"]["m_plus"].get<int>() == m.m_plus);
  CHECK(j["manifest"]["m_minus"].get<int>() == m.m_minus);
  CHECK(j["manifest"]["m_zero"].get<int>() == m.m_zero);
  Mat G = Q.gram();
  CHECK((G - G.adjoint()).norm() <= 1e-12);
}

TEST_CASE("cli exit codes: ok, usage, gate") {
  std::string inst = tmpfile("pair.json");
  CHECK(run("generate --kind pair --seed 1 --size 4 --out " + inst) == 0);
  CHECK(run("gap --space " + inst + " --m M --n N") == 0);
  CHECK(run("gap --space " + inst + " --m M --n NOPE") == 3);
  CHECK(run("gap --space /nonexistent.json --m M --n N") == 3);
  write_file(tmpfile("bad2.json"), "{malformed");
  CHECK(run("gap --space " + tmpfile("bad2.json") + " --m M --n N") == 3);
  CHECK(run("frobnicate") == 3);
}

TEST_CASE("cli gap on identical subspaces reports near-zero delta-hat") {
  Json j;
  j["dim"] = 3;
  j["field"] = "real";
  j["subspaces"]["M"] = Json::array({Json::array({1.0, 0.0, 0.0})});
  write_file(tmpfile("same.json"), j.dump());
  std::string out = tmpfile("same_report.json");
  CHECK(run("gap --space " + tmpfile("same.json") + " --m M --n M --out " + out) == 0);
  Json rep = Json::parse(slurp(out));
  CHECK(rep["delta_hat"]["hi"].get<double>() <= 1e-7);
}

TEST_CASE("cli tetrad verify on the rotated example exits 0") {
  Json j;
  j["dim"] = 4;
  j["field"] = "real";
  auto col = [](std::initializer_list<double> v) {
    Json c = Json::array();
    for (double x : v) c.push_back(x);
    return c;
  };
  j["subspaces"]["Z"] = Json::array();
  j["subspaces"]["M"] = Json::array({col({1, 0, 0, 0}), col({0, 1, 0, 0})});
  j["subspaces"]["N"] = Json::array({col({0, 1, 0, 0}), col({0, 0, 1, 0})});
  j["subspaces"]["Y2"] =
      Json::array({col({1, 0, 0, 0}), col({0, 1, 0, 0}), col({0, 0, 1, 0})});
  double t = 1e-4, ct = std::cos(t), st = std::sin(t);
  j["subspaces"]["Mp"] = Json::array({col({ct, 0, st, 0}), col({0, 1, 0, 0})});
  j["subspaces"]["Np"] = Json::array({col({0, 1, 0, 0}), col({-st, 0, ct, 0})});
  j["subspaces"]["Y2p"] =
      Json::array({col({ct, 0, st, 0}), col({0, 1, 0, 0}), col({-st, 0, ct, 0})});
  std::string f = tmpfile("tetrad.json");
  write_file(f, j.dump());
  CHECK(run("tetrad index --space " + f + " --tetrad Z,M,N,Y2") == 0);
  CHECK(run("tetrad verify --space " + f +
            " --tetrad Z,M,N,Y2 --perturbed Z,Mp,Np,Y2p --variant 1.2c") == 0);
}

TEST_CASE("cli reports are byte-identical modulo the timestamp") {
  std::string inst = tmpfile("det_pair.json");
  REQUIRE(run("generate --kind pair --seed 11 --size 5 --out " + inst) == 0);
  std::string o1 = tmpfile("det1.json"), o2 = tmpfile("det2.json");
  REQUIRE(run("gap --space " + inst + " --m M --n N --seed 4 --out " + o1) == 0);
  REQUIRE(run("gap --space " + inst + " --m M --n N --seed 4 --out " + o2) == 0);
  CHECK(strip_timestamp(slurp(o1)) == strip_timestamp(slurp(o2)));
}

TEST_CASE("GAPS_SEED environment override changes the sampling seed") {
  std::string inst = tmpfile("env_pair.json");
  REQUIRE(run("generate --kind pair --seed 12 --size 5 --out " + inst) == 0);
  std::string o1 = tmpfile("env1.json"), o2 = tmpfile("env2.json");
  REQUIRE(run("gap --space " + inst + " --m M --n N --seed 4 --out " + o1) == 0);
  std::string cmd = "GAPS_SEED=99 " + std::string(GAPCERT_BIN) + " gap --space " + inst +
                    " --m M --n N --seed 4 --out " + o2 + " > /dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  Json r2 = Json::parse(slurp(o2));
  CHECK(r2["seed"].get<uint64_t>() == 99);
}

TEST_CASE("cli family walk over a generated path") {
  std::string inst = tmpfile("path.json");
  REQUIRE(run("generate --kind path --seed 5 --size 4 --out " + inst) == 0);
  std::string out = tmpfile("trace.json");
  CHECK(run("family --path " + inst + " --kind tetrad-index --out " + out) == 0);
  Json tr = Json::parse(slurp(out));
  CHECK(tr["constant"].get<bool>());
  Json inst_j = Json::parse(slurp(inst));
  for (const auto& v : tr["values"])
    CHECK(v.get<int>() == inst_j["manifest"]["index"].get<int>());
}

TEST_CASE("verdict serialization carries enclosures and notes") {
  Verdict v;
  v.set("x", Interval{0.25, 0.5, Method::Sampled});
  v.hypothesis_ok = true;
  v.conclusion_checked = true;
  v.conclusion_ok = false;
  v.notes.push_back("demo");
  Json j = verdict_to_json(v);
  CHECK(j["alarm"].get<bool>());
  CHECK(j["values"]["x"]["lo"].get<double>() == 0.25);
  CHECK(j["notes"][0].get<std::string>() == "demo");
}
