#include "gapcert/generate.hpp"
#include "gapcert/io.hpp"
#include "gapcert/splitting.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace gapcert;

namespace {

// Exit codes: 0 computed and conclusions hold, 1 hypothesis gate failed,
// 2 conclusion violated under a passing gate, 3 input or usage error.
constexpr int kOk = 0, kGateFailed = 1, kAlarm = 2, kUsage = 3;

uint64_t effective_seed(uint64_t cli_seed) {
  const char* env = std::getenv("GAPS_SEED");
  if (env && *env) return std::strtoull(env, nullptr, 10);
  return cli_seed;
}

int verdict_exit(const Verdict& v) {
  if (!v.hypothesis_ok) return kGateFailed;
  if (v.alarm()) return kAlarm;
  return kOk;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t next = s.find(',', pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

Tetrad tetrad_from_names(const ProblemFile& p, const std::string& names) {
  auto parts = split_names(names);
  if (parts.size() != 4) throw InputError("tetrad needs four comma-separated names");
  return Tetrad(get_subspace(p, parts[0]), get_subspace(p, parts[1]),
                get_subspace(p, parts[2]), get_subspace(p, parts[3]));
}

struct Opts {
  std::string space, out, m, n, l, s, k, q, r, v0, w0, variant, mode, kind, path;
  std::string tetrad, perturbed;
  double a = 0.3, c = 0.0;
  int h = 1, budget = 2000, size = 4;
  uint64_t seed = 0;
};

int run_gap(const Opts& o) {
  ProblemFile p = problem_from_json(load_json(o.space));
  GapReport g = gap_report(get_subspace(p, o.m), get_subspace(p, o.n), o.budget,
                           effective_seed(o.seed), true);
  Json rep;
  rep["delta_MN"] = interval_to_json(g.delta_MN);
  rep["delta_NM"] = interval_to_json(g.delta_NM);
  rep["delta_hat"] = interval_to_json(g.delta_hat);
  rep["gamma_MN"] = interval_to_json(g.gamma_MN);
  rep["gamma_NM"] = interval_to_json(g.gamma_NM);
  rep["gamma_hat"] = interval_to_json(g.gamma_hat);
  if (g.hausdorff) rep["hausdorff"] = interval_to_json(*g.hausdorff);
  rep["samples_used"] = g.samples_used;
  rep["seed"] = g.seed;
  if (!o.out.empty()) write_report(o.out, rep);
  std::cout << "delta_hat in [" << g.delta_hat.lo << ", " << g.delta_hat.hi << "]\n";
  return kOk;
}

int run_tetrad(const Opts& o) {
  ProblemFile p = problem_from_json(load_json(o.space));
  Tetrad t = tetrad_from_names(p, o.tetrad);
  if (o.mode == "index") {
    Json rep{{"cap_excess", t.cap_excess},
             {"sum_deficit", t.sum_deficit},
             {"index", t.index}};
    if (!o.out.empty()) write_report(o.out, rep);
    std::cout << "index " << t.index << "\n";
    return kOk;
  }
  if (o.perturbed.empty()) throw InputError("verify needs --perturbed");
  Tetrad tp = tetrad_from_names(p, o.perturbed);
  int m = 0;
  TetradVariant var = parse_tetrad_variant(o.variant, &m);
  Verdict v = verify_tetrad_stability(t, tp, var, m, o.budget, effective_seed(o.seed));
  Json rep = verdict_to_json(v);
  rep["variant"] = o.variant;
  rep["index"] = t.index;
  rep["index_perturbed"] = tp.index;
  if (!o.out.empty()) write_report(o.out, rep);
  std::cout << (v.hypothesis_ok ? (v.alarm() ? "ALARM" : "ok") : "gate failed") << "\n";
  return verdict_exit(v);
}

int run_split(const Opts& o) {
  ProblemFile p = problem_from_json(load_json(o.space));
  SplittingResult r = split(get_subspace(p, o.l), get_subspace(p, o.s),
                            get_subspace(p, o.n), o.a, o.budget, effective_seed(o.seed));
  Json rep = verdict_to_json(r.checks);
  rep["k"] = r.k;
  rep["dim_V"] = r.V_k.dim();
  Json cs = Json::object();
  for (const auto& [name, val] : r.constants) cs[name] = val;
  rep["constants"] = cs;
  if (!o.out.empty()) write_report(o.out, rep);
  std::cout << "k = " << r.k << (r.checks.alarm() ? " ALARM" : "") << "\n";
  return r.checks.alarm() ? kAlarm : kOk;
}

int run_reldim(const Opts& o) {
  ProblemFile p = problem_from_json(load_json(o.space));
  const Subspace& M = get_subspace(p, o.m);
  const Subspace& N = get_subspace(p, o.n);
  Json kj = load_json(o.k);
  Mat K = matrix_from_json(kj.contains("K") ? kj["K"] : kj, p.space.field());
  PerturbationOperator Kop =
      PerturbationOperator::make(p.space, K, 200, effective_seed(o.seed));
  if (o.variant.empty()) {
    RelDimReport r = relative_dim(M, N, Kop);
    Json rep{{"value", r.value},
             {"kernel_dim", r.kernel_dim},
             {"cokernel_dim", r.cokernel_dim}};
    if (!o.out.empty()) write_report(o.out, rep);
    std::cout << "[M-N] = " << r.value << "\n";
    return kOk;
  }
  RelDimVariant var;
  if (o.variant == "1.4c")
    var = RelDimVariant::V14c;
  else if (o.variant == "1.4d")
    var = RelDimVariant::V14d;
  else if (o.variant == "1.4e")
    var = RelDimVariant::V14e;
  else
    throw InputError("reldim variant must be 1.4c, 1.4d, or 1.4e");
  if (o.q.empty() || o.r.empty()) throw InputError("verify needs --mprime and --nprime");
  NormalizedPerturbation np = normalize_perturbation(M, N, Kop);
  Verdict v = verify_reldim_stability(np.M1, N, get_subspace(p, o.q),
                                      get_subspace(p, o.r), np.K1,
                                      Subspace::zero(p.space), Subspace::zero(p.space),
                                      var, o.budget, effective_seed(o.seed));
  Json rep = verdict_to_json(v);
  rep["variant"] = o.variant;
  if (!o.out.empty()) write_report(o.out, rep);
  std::cout << (v.hypothesis_ok ? (v.alarm() ? "ALARM" : "ok") : "gate failed") << "\n";
  return verdict_exit(v);
}

int run_morse(const Opts& o) {
  ProblemFile p = problem_from_json(load_json(o.space));
  SymmetricPair Q = form_from_json(load_json(o.q), p);
  if (o.mode == "indices") {
    MorseIndices m = morse_indices(Q);
    Json rep{{"m_plus", m.m_plus}, {"m_minus", m.m_minus}, {"m_zero", m.m_zero}};
    if (!o.out.empty()) write_report(o.out, rep);
    std::cout << "(" << m.m_plus << ", " << m.m_minus << ", " << m.m_zero << ")\n";
    return kOk;
  }
  if (o.r.empty()) throw InputError(o.mode + " needs --r");
  SymmetricPair R = form_from_json(load_json(o.r), p);
  if (o.mode == "cgap") {
    CGapReport g = c_gap(Q, R, o.c, o.budget, effective_seed(o.seed));
    Json rep{{"value", interval_to_json(g.value)}, {"c", g.c}, {"samples", g.samples}};
    if (!o.out.empty()) write_report(o.out, rep);
    std::cout << "delta_c in [" << g.value.lo << ", " << g.value.hi << "]\n";
    return kOk;
  }
  MorseVariant var;
  if (o.variant == "thm1.6")
    var = MorseVariant::Thm16;
  else if (o.variant == "prop1.7")
    var = MorseVariant::Prop17;
  else if (o.variant == "definite")
    var = MorseVariant::PropDefinite;
  else
    throw InputError("morse variant must be thm1.6, prop1.7, or definite");
  Subspace V0 = o.v0.empty() ? Subspace::zero(p.space) : get_subspace(p, o.v0);
  Subspace W0 = o.w0.empty() ? Subspace::zero(p.space) : get_subspace(p, o.w0);
  Verdict v = verify_morse_stability(Q, V0, R, W0, o.h, o.c, var, o.budget,
                                     effective_seed(o.seed));
  Json rep = verdict_to_json(v);
  rep["variant"] = o.variant;
  if (!o.out.empty()) write_report(o.out, rep);
  std::cout << (v.hypothesis_ok ? (v.alarm() ? "ALARM" : "ok") : "gate failed") << "\n";
  return verdict_exit(v);
}

int run_family(const Opts& o) {
  PathSpec p = path_from_json(load_json(o.path));
  WalkKind kind;
  if (o.kind == "tetrad-index")
    kind = WalkKind::TetradIndex;
  else if (o.kind == "relative-dim")
    kind = WalkKind::RelativeDim;
  else
    throw InputError("family kind must be tetrad-index or relative-dim");
  FamilyTrace tr = walk_family(p, kind);
  Json rep;
  rep["ts"] = tr.ts;
  rep["values"] = tr.values;
  rep["dhat_increments"] = tr.dhat_increments;
  rep["constant"] = tr.constant;
  rep["notes"] = tr.notes;
  if (!o.out.empty()) write_report(o.out, rep);
  std::cout << (tr.constant ? "constant" : "TRACE JUMP") << " value "
            << tr.values.front() << "\n";
  return tr.constant ? kOk : kAlarm;
}

int run_generate(const Opts& o) {
  Json j = generate_instance(o.kind, effective_seed(o.seed), o.size);
  if (o.out.empty()) throw InputError("generate needs --out");
  std::ofstream out(o.out);
  if (!out) throw InputError("cannot write file: " + o.out);
  out << j.dump(2) << "\n";
  std::cout << "wrote " << o.out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified subspace gap geometry toolkit"};
  app.require_subcommand(1);
  Opts o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--budget", o.budget, "sampling budget");
    c->add_option("--seed", o.seed, "seed (GAPS_SEED env overrides)");
    c->add_option("--out", o.out, "output report path");
  };

  auto* gap = app.add_subcommand("gap", "gap metrics between two subspaces");
  gap->add_option("--space", o.space)->required();
  gap->add_option("--m", o.m)->required();
  gap->add_option("--n", o.n)->required();
  add_common(gap);

  auto* tet = app.add_subcommand("tetrad", "tetrad index and stability");
  tet->add_option("mode", o.mode, "index or verify")->required();
  tet->add_option("--space", o.space)->required();
  tet->add_option("--tetrad", o.tetrad, "Y1,M,N,Y2 names")->required();
  tet->add_option("--perturbed", o.perturbed, "Y1p,Mp,Np,Y2p names");
  tet->add_option("--variant", o.variant, "e.g. 1.1a, 1.2c, 1.2d(3)");
  add_common(tet);

  auto* spl = app.add_subcommand("split", "splitting construction");
  spl->add_option("--space", o.space)->required();
  spl->add_option("--l", o.l)->required();
  spl->add_option("--s", o.s)->required();
  spl->add_option("--n", o.n)->required();
  spl->add_option("--a", o.a, "threshold in (0, sqrt(2)-1)");
  add_common(spl);

  auto* rel = app.add_subcommand("reldim", "relative dimension");
  rel->add_option("--space", o.space)->required();
  rel->add_option("--m", o.m)->required();
  rel->add_option("--n", o.n)->required();
  rel->add_option("--k", o.k, "perturbation file")->required();
  rel->add_option("--verify", o.variant, "1.4c, 1.4d, or 1.4e");
  rel->add_option("--mprime", o.q, "perturbed M name");
  rel->add_option("--nprime", o.r, "perturbed N name");
  add_common(rel);

  auto* mor = app.add_subcommand("morse", "symmetric form indices and stability");
  mor->add_option("mode", o.mode, "indices, cgap, or certify")->required();
  mor->add_option("--space", o.space)->required();
  mor->add_option("--q", o.q, "form file")->required();
  mor->add_option("--r", o.r, "second form file");
  mor->add_option("--c", o.c, "Lipschitz weight");
  mor->add_option("--sign", o.h, "h sign (+1 or -1)");
  mor->add_option("--variant", o.variant, "thm1.6, prop1.7, or definite");
  mor->add_option("--v0", o.v0, "radical subtract on the Q side");
  mor->add_option("--w0", o.w0, "radical subtract on the R side");
  add_common(mor);

  auto* fam = app.add_subcommand("family", "walk a one-parameter family");
  fam->add_option("--path", o.path)->required();
  fam->add_option("--kind", o.kind, "tetrad-index or relative-dim")->required();
  add_common(fam);

  auto* gen = app.add_subcommand("generate", "seeded instance generator");
  gen->add_option("--kind", o.kind, "pair, tetrad, reldim, morse, or path")->required();
  gen->add_option("--size", o.size, "ambient dimension (<= 64)");
  add_common(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand(gap)) return run_gap(o);
    if (app.got_subcommand(tet)) return run_tetrad(o);
    if (app.got_subcommand(spl)) return run_split(o);
    if (app.got_subcommand(rel)) return run_reldim(o);
    if (app.got_subcommand(mor)) return run_morse(o);
    if (app.got_subcommand(fam)) return run_family(o);
    if (app.got_subcommand(gen)) return run_generate(o);
  } catch (const GateError& e) {
    std::cerr << "gate failed: " << e.what() << "\n";
    return kGateFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
