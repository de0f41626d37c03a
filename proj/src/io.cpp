#include "gapcert/io.hpp"

#include <chrono>
#include <fstream>

namespace gapcert {

namespace {

Scalar scalar_from_json(const Json& j, Field field) {
  if (j.is_number()) return Scalar(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    Scalar s(j[0].get<double>(), j[1].get<double>());
    if (field == Field::Real && s.imag() != 0.0)
      throw InputError("complex entry in a real-field file");
    return s;
  }
  throw InputError("scalar entries must be numbers or [re, im] pairs");
}

Json scalar_to_json(Scalar s, Field field) {
  if (field == Field::Real || s.imag() == 0.0) return s.real();
  return Json::array({s.real(), s.imag()});
}

Mat columns_from_json(const Json& cols, int ambient, Field field) {
  if (!cols.is_array()) throw InputError("subspace must be a list of columns");
  Mat B(ambient, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    if (!cols[j].is_array() || static_cast<int>(cols[j].size()) != ambient)
      throw InputError("subspace column length does not match dim");
    for (int i = 0; i < ambient; ++i) B(i, j) = scalar_from_json(cols[j][i], field);
  }
  return B;
}

Json columns_to_json(const Mat& B, Field field) {
  Json cols = Json::array();
  for (int j = 0; j < B.cols(); ++j) {
    Json col = Json::array();
    for (int i = 0; i < B.rows(); ++i) col.push_back(scalar_to_json(B(i, j), field));
    cols.push_back(col);
  }
  return cols;
}

GeneratorSpec generator_from_json(const Json& j) {
  GeneratorSpec g;
  std::string kind = j.value("kind", "rotation");
  if (kind == "rotation")
    g.kind = GeneratorSpec::Kind::Rotation;
  else if (kind == "shear")
    g.kind = GeneratorSpec::Kind::Shear;
  else if (kind == "composite")
    g.kind = GeneratorSpec::Kind::Composite;
  else
    throw InputError("unknown generator kind: " + kind);
  if (g.kind == GeneratorSpec::Kind::Composite) {
    if (!j.contains("parts") || !j["parts"].is_array())
      throw InputError("composite generator needs a parts list");
    for (const auto& part : j["parts"]) g.parts.push_back(generator_from_json(part));
    return g;
  }
  g.i = j.value("i", 0);
  g.j = j.value("j", 1);
  g.rate = j.value("rate", 0.0);
  return g;
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw InputError("malformed JSON in " + path);
  return j;
}

NormedSpace space_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim")) throw InputError("space needs a dim field");
  int dim = j["dim"].get<int>();
  std::string field_s = j.value("field", "real");
  Field field;
  if (field_s == "real")
    field = Field::Real;
  else if (field_s == "complex")
    field = Field::Complex;
  else
    throw InputError("field must be \"real\" or \"complex\"");
  NormDesc nd;
  if (j.contains("norm")) {
    const Json& n = j["norm"];
    if (n.contains("p")) {
      if (n["p"].is_string() && n["p"].get<std::string>() == "inf")
        nd.p = kInf;
      else
        nd.p = n["p"].get<double>();
    }
    if (n.contains("weights") && !n["weights"].is_null()) {
      auto w = n["weights"].get<std::vector<double>>();
      nd.weights = Eigen::Map<RealVec>(w.data(), w.size());
    }
  }
  return NormedSpace(dim, field, nd);
}

Json space_to_json(const NormedSpace& X) {
  Json j;
  j["dim"] = X.dim();
  j["field"] = X.field() == Field::Real ? "real" : "complex";
  Json n;
  if (X.norm_desc().p == kInf)
    n["p"] = "inf";
  else
    n["p"] = X.norm_desc().p;
  if (X.norm_desc().weighted()) {
    std::vector<double> w(X.norm_desc().weights.data(),
                          X.norm_desc().weights.data() + X.dim());
    n["weights"] = w;
  }
  j["norm"] = n;
  return j;
}

ProblemFile problem_from_json(const Json& j) {
  ProblemFile p;
  p.space = space_from_json(j);
  if (j.contains("subspaces")) {
    if (!j["subspaces"].is_object()) throw InputError("subspaces must be an object");
    for (auto it = j["subspaces"].begin(); it != j["subspaces"].end(); ++it) {
      Mat B = columns_from_json(it.value(), p.space.dim(), p.space.field());
      p.subspaces.emplace(it.key(), B.cols() == 0 ? Subspace::zero(p.space)
                                                  : Subspace(p.space, B));
    }
  }
  return p;
}

Json problem_to_json(const ProblemFile& p) {
  Json j = space_to_json(p.space);
  Json subs = Json::object();
  for (const auto& [name, S] : p.subspaces)
    subs[name] = columns_to_json(S.basis(), p.space.field());
  j["subspaces"] = subs;
  return j;
}

const Subspace& get_subspace(const ProblemFile& p, const std::string& name) {
  auto it = p.subspaces.find(name);
  if (it == p.subspaces.end()) throw InputError("no subspace named " + name);
  return it->second;
}

Mat matrix_from_json(const Json& rows, Field field) {
  if (!rows.is_array() || rows.empty()) throw InputError("matrix must be a list of rows");
  size_t ncols = rows[0].size();
  Mat A(rows.size(), ncols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != ncols)
      throw InputError("matrix rows have inconsistent lengths");
    for (size_t k = 0; k < ncols; ++k) A(i, k) = scalar_from_json(rows[i][k], field);
  }
  return A;
}

Json matrix_to_json(const Mat& A, Field field) {
  Json rows = Json::array();
  for (int i = 0; i < A.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < A.cols(); ++k) row.push_back(scalar_to_json(A(i, k), field));
    rows.push_back(row);
  }
  return rows;
}

SymmetricPair form_from_json(const Json& j, const ProblemFile& p) {
  if (!j.contains("subspace") || !j.contains("gram"))
    throw InputError("form file needs subspace and gram fields");
  const Subspace& V = get_subspace(p, j["subspace"].get<std::string>());
  if (V.dim() == 0) return SymmetricPair(V, Mat(0, 0));
  return SymmetricPair(V, matrix_from_json(j["gram"], p.space.field()));
}

Json form_to_json(const SymmetricPair& Q, const std::string& subspace_name) {
  Json j;
  j["subspace"] = subspace_name;
  j["gram"] = matrix_to_json(Q.gram(), Q.V().space().field());
  return j;
}

PathSpec path_from_json(const Json& j) {
  ProblemFile p = problem_from_json(j);
  PathSpec out;
  if (!j.contains("generator")) throw InputError("path file needs a generator");
  out.generator = generator_from_json(j["generator"]);
  out.steps = j.value("steps", 2);
  if (j.contains("tetrad")) {
    const Json& t = j["tetrad"];
    for (const char* name : {"Y1", "M", "N", "Y2"})
      if (!t.contains(name)) throw InputError("tetrad base needs Y1, M, N, Y2");
    auto sub = [&](const char* name) {
      Mat B = columns_from_json(t[name], p.space.dim(), p.space.field());
      return B.cols() == 0 ? Subspace::zero(p.space) : Subspace(p.space, B);
    };
    out.tetrad_base.emplace(sub("Y1"), sub("M"), sub("N"), sub("Y2"));
  } else if (j.contains("pair")) {
    const Json& q = j["pair"];
    if (!q.contains("M") || !q.contains("N") || !q.contains("K"))
      throw InputError("pair base needs M, N, K");
    Mat BM = columns_from_json(q["M"], p.space.dim(), p.space.field());
    Mat BN = columns_from_json(q["N"], p.space.dim(), p.space.field());
    out.M = BM.cols() == 0 ? Subspace::zero(p.space) : Subspace(p.space, BM);
    out.N = BN.cols() == 0 ? Subspace::zero(p.space) : Subspace(p.space, BN);
    out.K = matrix_from_json(q["K"], p.space.field());
  } else {
    throw InputError("path file needs a tetrad or pair base");
  }
  return out;
}

Json interval_to_json(const Interval& v) {
  return Json{{"lo", v.lo}, {"hi", v.hi}, {"method", to_string(v.method)}};
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  Json vals = Json::object();
  for (const auto& [name, val] : v.values) vals[name] = interval_to_json(val);
  j["values"] = vals;
  j["hypothesis_ok"] = v.hypothesis_ok;
  j["conclusion_checked"] = v.conclusion_checked;
  j["conclusion_ok"] = v.conclusion_ok;
  j["alarm"] = v.alarm();
  j["notes"] = v.notes;
  return j;
}

void write_report(const std::string& path, Json report) {
  auto now = std::chrono::system_clock::now().time_since_epoch();
  report["timestamp"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << report.dump(2) << "\n";
}

}  // namespace gapcert
