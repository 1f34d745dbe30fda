#include "ymh/cli/model_file.hpp"

#include "ymh/error.hpp"
#include "ymh/models.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ymh::cli {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& msg) { throw InputError(field + ": " + msg); }

void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(path, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items())
    if (!allowed.contains(k)) fail(path + "." + k, "unknown field");
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path, int lo) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > 100000000) fail(path, "out of range");
  return static_cast<int>(v);
}

Eigen::VectorXd vector(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

bool is_matrix(const json& j) { return j.is_array() && !j.empty() && j.front().is_array(); }

// Row-major nested array.
Eigen::MatrixXd matrix(const json& j, const std::string& path) {
  if (!is_matrix(j)) fail(path, "expected a matrix (array of rows)");
  const std::size_t cols = j.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) fail(rp, "rows must all have " + std::to_string(cols) + " entries");
    m.row(static_cast<Eigen::Index>(r)) = vector(j[r], rp).transpose();
  }
  return m;
}

LieAlgebrad parse_algebra(const json& j) {
  const std::string path = "algebra";
  if (!j.is_object()) fail(path, "expected an object");
  if (j.contains("preset")) {
    allow_keys(j, path, {"preset"});
    if (!j["preset"].is_string()) fail(path + ".preset", "expected a string");
    try {
      return algebra_preset(j["preset"].get<std::string>());
    } catch (const InputError& e) {
      fail(path + ".preset", e.what());
    }
  }
  allow_keys(j, path, {"dim", "structure_constants", "factors", "labels"});
  const int d = integer(require(j, "dim", path), path + ".dim", 1);
  const auto& sc = require(j, "structure_constants", path);
  std::vector<double> c;
  const std::string scp = path + ".structure_constants";
  if (is_matrix(sc)) {
    if (sc.size() != static_cast<std::size_t>(d)) fail(scp, "expected a d x d x d nested array");
    for (std::size_t a = 0; a < sc.size(); ++a) {
      const auto m = matrix(sc[a], scp + "[" + std::to_string(a) + "]");
      if (m.rows() != d || m.cols() != d) fail(scp + "[" + std::to_string(a) + "]", "expected a d x d block");
      for (int b = 0; b < d; ++b)
        for (int k = 0; k < d; ++k) c.push_back(m(b, k));
    }
  } else {
    const auto v = vector(sc, scp);
    c.assign(v.data(), v.data() + v.size());
  }
  std::vector<Factor> factors;
  if (j.contains("factors")) {
    const auto& fs = j["factors"];
    if (!fs.is_array()) fail(path + ".factors", "expected an array");
    for (std::size_t f = 0; f < fs.size(); ++f) {
      const std::string fp = path + ".factors[" + std::to_string(f) + "]";
      allow_keys(fs[f], fp, {"kind", "indices"});
      const auto& kind = require(fs[f], "kind", fp);
      Factor factor;
      if (kind == "simple") factor.kind = FactorKind::simple;
      else if (kind == "abelian") factor.kind = FactorKind::abelian;
      else fail(fp + ".kind", "expected \"simple\" or \"abelian\"");
      const auto& idx = require(fs[f], "indices", fp);
      if (!idx.is_array()) fail(fp + ".indices", "expected an array");
      for (std::size_t i = 0; i < idx.size(); ++i)
        factor.indices.push_back(integer(idx[i], fp + ".indices[" + std::to_string(i) + "]", 0));
      factors.push_back(std::move(factor));
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) fail(path + ".labels", "expected an array of strings");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) fail(path + ".labels", "expected an array of strings");
      labels.push_back(l.get<std::string>());
    }
  }
  try {
    return LieAlgebrad(d, std::move(c), std::move(factors), std::move(labels));
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

Representationd parse_representation(const json& j, const LieAlgebrad& algebra) {
  const std::string path = "representation";
  allow_keys(j, path, {"preset", "real", "complex"});
  if (j.size() != 1) fail(path, "give exactly one of preset, real, complex");
  try {
    if (j.contains("preset")) {
      if (!j["preset"].is_string()) fail(path + ".preset", "expected a string");
      const auto preset = representation_preset(j["preset"].get<std::string>());
      if (preset.dim() != algebra.dim())
        fail(path + ".preset", "representation needs an algebra of dimension " + std::to_string(preset.dim()));
      return Representationd(algebra, preset.generators());
    }
    if (j.contains("real")) {
      const auto& gs = j["real"];
      if (!gs.is_array()) fail(path + ".real", "expected an array of matrices");
      std::vector<Eigen::MatrixXd> gens;
      for (std::size_t a = 0; a < gs.size(); ++a) gens.push_back(matrix(gs[a], path + ".real[" + std::to_string(a) + "]"));
      return Representationd(algebra, std::move(gens));
    }
    const auto& gs = j["complex"];
    if (!gs.is_array()) fail(path + ".complex", "expected an array of {re, im} pairs");
    std::vector<Eigen::MatrixXcd> gens;
    for (std::size_t a = 0; a < gs.size(); ++a) {
      const std::string gp = path + ".complex[" + std::to_string(a) + "]";
      allow_keys(gs[a], gp, {"re", "im"});
      const auto re = matrix(require(gs[a], "re", gp), gp + ".re");
      const auto im = matrix(require(gs[a], "im", gp), gp + ".im");
      if (re.rows() != im.rows() || re.cols() != im.cols()) fail(gp, "re and im differ in shape");
      Eigen::MatrixXcd m(re.rows(), re.cols());
      m.real() = re;
      m.imag() = im;
      gens.push_back(std::move(m));
    }
    return realify<double>(algebra, gens);
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    fail(path, what);
  }
}

Potential parse_potential(const json& j, int n) {
  const std::string path = "potential";
  if (j.is_object() && j.contains("general"))
    fail(path + ".general", "general potentials can only be constructed programmatically");
  allow_keys(j, path, {"rotsym"});
  const auto v = vector(require(j, "rotsym", path), path + ".rotsym");
  try {
    return Potential::rotsym(std::vector<double>(v.data(), v.data() + v.size()), n);
  } catch (const InputError& e) {
    fail(path + ".rotsym", e.what());
  }
}

Tolerances parse_tolerances(const json& j) {
  const std::string path = "analysis.tolerances";
  Tolerances t;
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    const std::string fp = path + "." + k;
    if (k == "max_iter") {
      t.max_iter = integer(v, fp, 1);
      continue;
    }
    const double x = number(v, fp);
    if (!(x > 0)) fail(fp, "must be positive");
    if (k == "algebra") t.algebra = x;
    else if (k == "orthogonality") t.orthogonality = x;
    else if (k == "rank") t.rank = x;
    else if (k == "minimum") t.minimum = x;
    else if (k == "invariance") t.invariance = x;
    else if (k == "group") t.group = x;
    else if (k == "eigen") t.eigen = x;
    else if (k == "spectrum") t.spectrum = x;
    else if (k == "critical") t.critical = x;
    else if (k == "direction") t.direction = x;
    else if (k == "identity") t.identity = x;
    else if (k == "fluctuation") t.fluctuation = x;
    else if (k == "gauge_gradient") t.gauge_gradient = x;
    else if (k == "zero") t.zero = x;
    else if (k == "conjugacy") t.conjugacy = x;
    else if (k == "fd_step") t.fd_step = x;
    else fail(fp, "unknown tolerance");
  }
  return t;
}

HolonomySpec parse_holonomy(const json& j) {
  const std::string path = "holonomy";
  allow_keys(j, path, {"kind", "length", "group", "connections", "random_connections"});
  HolonomySpec h;
  const auto& kind = require(j, "kind", path);
  if (kind == "path") h.kind = SpacetimeKind::path;
  else if (kind == "cycle") h.kind = SpacetimeKind::cycle;
  else fail(path + ".kind", "expected \"path\" or \"cycle\"");
  h.length = integer(require(j, "length", path), path + ".length", 1);
  if (j.contains("group")) {
    if (j["group"] != "u1" && j["group"] != "stabilizer") fail(path + ".group", "expected \"u1\" or \"stabilizer\"");
    h.group = j["group"].get<std::string>();
  }
  const std::size_t edges = h.kind == SpacetimeKind::path ? static_cast<std::size_t>(h.length - 1)
                                                           : static_cast<std::size_t>(h.length);
  if (j.contains("connections")) {
    const auto& cs = j["connections"];
    if (!cs.is_array()) fail(path + ".connections", "expected an array of connections");
    for (std::size_t c = 0; c < cs.size(); ++c) {
      const std::string cp = path + ".connections[" + std::to_string(c) + "]";
      if (!cs[c].is_array()) fail(cp, "expected one entry per edge");
      if (cs[c].size() != edges)
        fail(cp, "expected " + std::to_string(edges) + " edge entries, got " + std::to_string(cs[c].size()));
      std::vector<EdgeValue> conn;
      for (std::size_t e = 0; e < cs[c].size(); ++e) {
        const auto& v = cs[c][e];
        const std::string ep = cp + "[" + std::to_string(e) + "]";
        if (v.is_number()) conn.emplace_back(Eigen::VectorXd(Eigen::VectorXd::Constant(1, v.get<double>())));
        else if (is_matrix(v)) conn.emplace_back(std::in_place_type<Eigen::MatrixXd>, matrix(v, ep));
        else conn.emplace_back(std::in_place_type<Eigen::VectorXd>, vector(v, ep));
      }
      h.connections.push_back(std::move(conn));
    }
  }
  if (j.contains("random_connections"))
    h.random_connections = integer(j["random_connections"], path + ".random_connections", 0);
  if (h.connections.empty() && h.random_connections == 0)
    fail(path, "give connections or random_connections");
  return h;
}

}  // namespace

ModelSpec parse_model(const json& doc) {
  allow_keys(doc, "model", {"name", "description", "algebra", "representation", "potential", "couplings", "vacuum",
                            "analysis", "holonomy"});
  ModelSpec m;
  m.source = doc;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail("name", "expected a string");
    m.name = doc["name"].get<std::string>();
  }
  m.algebra = parse_algebra(require(doc, "algebra", "model"));
  m.representation = parse_representation(require(doc, "representation", "model"), m.algebra);
  if (doc.contains("potential")) m.potential = parse_potential(doc["potential"], m.representation.n());

  const auto couplings = vector(require(doc, "couplings", "model"), "couplings");
  m.couplings.assign(couplings.data(), couplings.data() + couplings.size());
  if (m.couplings.size() != m.algebra.factors().size())
    fail("couplings", "expected " + std::to_string(m.algebra.factors().size()) + " value(s), one per factor");
  for (double g : m.couplings)
    if (!(g > 0)) fail("couplings", "coupling constants must be positive");

  if (doc.contains("vacuum")) {
    allow_keys(doc["vacuum"], "vacuum", {"init"});
    const auto init = vector(require(doc["vacuum"], "init", "vacuum"), "vacuum.init");
    if (init.size() != m.representation.n())
      fail("vacuum.init", "expected " + std::to_string(m.representation.n()) + " components");
    m.init = init;
  }
  if (doc.contains("analysis")) {
    const auto& a = doc["analysis"];
    allow_keys(a, "analysis", {"seed", "trials", "tolerances"});
    if (a.contains("seed")) {
      if (!a["seed"].is_number_unsigned()) fail("analysis.seed", "expected a nonnegative integer");
      m.seed = a["seed"].get<std::uint64_t>();
    }
    if (a.contains("trials")) m.trials = integer(a["trials"], "analysis.trials", 1);
    if (a.contains("tolerances")) m.tolerances = parse_tolerances(a["tolerances"]);
  }
  if (doc.contains("holonomy")) m.holonomy = parse_holonomy(doc["holonomy"]);
  return m;
}

ModelSpec load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open model file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  try {
    return parse_model(doc);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

json preset_document(const std::string& name) {
  const auto p = load_preset(name);
  const std::string algebra = name == "abelian_higgs" ? "u1" : name == "electroweak" ? "su2xu1" : "su2";
  json doc;
  doc["name"] = name;
  doc["algebra"] = {{"preset", algebra}};
  doc["representation"] = {{"preset", name}};
  doc["potential"] = {{"rotsym", p.potential.coefficients()}};
  doc["couplings"] = p.couplings;
  doc["vacuum"] = {{"init", std::vector<double>(p.init.data(), p.init.data() + p.init.size())}};
  return doc;
}

json tolerances_to_json(const Tolerances& t) {
  return json{{"algebra", t.algebra},       {"orthogonality", t.orthogonality},
              {"rank", t.rank},             {"minimum", t.minimum},
              {"invariance", t.invariance}, {"group", t.group},
              {"eigen", t.eigen},           {"spectrum", t.spectrum},
              {"critical", t.critical},     {"direction", t.direction},
              {"identity", t.identity},     {"fluctuation", t.fluctuation},
              {"gauge_gradient", t.gauge_gradient}, {"zero", t.zero},
              {"conjugacy", t.conjugacy},   {"fd_step", t.fd_step},
              {"max_iter", t.max_iter}};
}

}  // namespace ymh::cli
