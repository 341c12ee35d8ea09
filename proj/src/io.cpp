#include "proxcalc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace proxcalc::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

double real_from_json(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  fail(std::string(what) + ": expected a number or \"inf\"/\"-inf\"");
}

json real_to_json(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

std::vector<double> reals_from_json(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(real_from_json(e, what));
  return out;
}

Point point_from_json(const json& j, const char* what) {
  const std::vector<double> v = reals_from_json(j, what);
  try {
    return make_point(v);
  } catch (const Error& e) {
    fail(std::string(what) + ": " + e.what());
  }
}

std::size_t size_from_json(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) fail(std::string(what) + ": expected a positive integer");
  return static_cast<std::size_t>(j.get<long long>());
}

oracle::Grid grid_from_json(const json& j, oracle::Grid fallback) {
  oracle::Grid g = fallback;
  if (j.contains("lo")) g.lo = real_from_json(j.at("lo"), "grid.lo");
  if (j.contains("hi")) g.hi = real_from_json(j.at("hi"), "grid.hi");
  if (j.contains("step")) g.step = real_from_json(j.at("step"), "grid.step");
  try {
    g.validate();
  } catch (const Error& e) {
    fail(e.what());
  }
  return g;
}

AlgoConfig config_from_json(const json& a, std::size_t dim) {
  AlgoConfig cfg;
  if (a.contains("tol")) cfg.tol = real_from_json(a.at("tol"), "algorithm.tol");
  if (a.contains("max_iter")) cfg.max_iter = static_cast<int>(size_from_json(a.at("max_iter"), "algorithm.max_iter"));
  if (a.contains("y0")) cfg.y0 = point_from_json(a.at("y0"), "algorithm.y0");
  try {
    cfg.validate(dim);
  } catch (const Error& e) {
    fail(e.what());
  }
  return cfg;
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "A1") return Algorithm::A1;
  if (name == "A2") return Algorithm::A2;
  if (name == "DR") return Algorithm::DR;
  if (name == "FB") return Algorithm::FB;
  fail("unknown algorithm '" + name + "' (expected A1, A2, DR or FB)");
}

}  // namespace

catalog::CatalogSpec catalog_spec_from_json(const json& j, std::optional<std::size_t> dim_hint) {
  using catalog::CatalogSpec;
  using catalog::Kind;
  if (!j.is_object()) fail("catalog spec must be an object");
  Kind kind;
  try {
    kind = catalog::kind_from_name(field(j, "kind").get<std::string>());
  } catch (const Error& e) {
    fail(e.what());
  } catch (const json::exception&) {
    fail("catalog kind must be a string");
  }
  const std::size_t dim = j.contains("dim") ? size_from_json(j.at("dim"), "dim") : dim_hint.value_or(1);

  CatalogSpec spec;
  switch (kind) {
    case Kind::IndicatorBox:
      spec = CatalogSpec::indicator_box(reals_from_json(field(j, "lo"), "lo"), reals_from_json(field(j, "hi"), "hi"));
      break;
    case Kind::IndicatorPoint: spec = CatalogSpec::indicator_point(reals_from_json(field(j, "at"), "at")); break;
    case Kind::IndicatorHalfline: {
      const std::string side = j.value("side", std::string("nonneg"));
      if (side != "nonneg" && side != "nonpos") fail("indicator_halfline.side must be 'nonneg' or 'nonpos'");
      const double origin = j.contains("origin") ? real_from_json(j.at("origin"), "origin") : 0.0;
      spec = CatalogSpec::indicator_halfline(
          side == "nonneg" ? catalog::HalflineSide::NonNegative : catalog::HalflineSide::NonPositive, origin);
      break;
    }
    case Kind::Abs: spec = CatalogSpec::abs(); break;
    case Kind::L1: spec = CatalogSpec::l1(dim); break;
    case Kind::Quadratic: {
      const double gamma = j.contains("gamma") ? real_from_json(j.at("gamma"), "gamma") : 1.0;
      spec = j.contains("center") ? CatalogSpec::shifted_quadratic(gamma, reals_from_json(j.at("center"), "center"))
                                  : CatalogSpec::quadratic(gamma, dim);
      break;
    }
    case Kind::Linear: spec = CatalogSpec::linear(reals_from_json(field(j, "slope"), "slope")); break;
    case Kind::Zero: spec = CatalogSpec::zero(dim); break;
    case Kind::NegSqrtOnHalfline: spec = CatalogSpec::neg_sqrt_on_halfline(); break;
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    fail(e.what());
  }
  return spec;
}

json catalog_spec_to_json(const catalog::CatalogSpec& spec) {
  using catalog::Kind;
  json j;
  j["kind"] = std::string(catalog::kind_name(spec.kind));
  auto reals = [](const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(real_to_json(x));
    return a;
  };
  switch (spec.kind) {
    case Kind::IndicatorBox:
      j["lo"] = reals(spec.lo);
      j["hi"] = reals(spec.hi);
      break;
    case Kind::IndicatorPoint: j["at"] = reals(spec.at); break;
    case Kind::IndicatorHalfline:
      j["side"] = spec.side == catalog::HalflineSide::NonNegative ? "nonneg" : "nonpos";
      j["origin"] = spec.origin;
      break;
    case Kind::Quadratic:
      j["gamma"] = spec.gamma;
      if (!spec.center.empty()) {
        j["center"] = reals(spec.center);
      } else if (spec.dim != 1) {
        j["dim"] = spec.dim;
      }
      break;
    case Kind::Linear: j["slope"] = reals(spec.slope); break;
    case Kind::L1:
    case Kind::Zero:
      if (spec.dim != 1) j["dim"] = spec.dim;
      break;
    case Kind::Abs:
    case Kind::NegSqrtOnHalfline: break;
  }
  return j;
}

ProblemFile problem_from_json(const json& j) {
  if (!j.is_object()) fail("problem file must be a JSON object");
  ProblemFile pf;
  if (j.contains("space")) pf.dim = size_from_json(field(j.at("space"), "dim"), "space.dim");
  pf.f = catalog_spec_from_json(field(j, "f"), pf.dim);
  pf.g = catalog_spec_from_json(field(j, "g"), pf.dim);
  if (pf.f.effective_dim() != pf.dim || pf.g.effective_dim() != pf.dim) {
    fail("f and g must both have dimension space.dim = " + std::to_string(pf.dim));
  }
  pf.x = j.contains("x") ? point_from_json(j.at("x"), "x") : Point::zeros(pf.dim);
  if (pf.x.dim() != pf.dim) fail("x must have dimension space.dim");
  const json algo = j.value("algorithm", json::object());
  if (!algo.is_object()) fail("algorithm must be an object");
  pf.algorithm = algorithm_from_name(algo.value("name", std::string("A1")));
  pf.config = config_from_json(algo, pf.dim);
  pf.force = algo.value("force", false);
  if (j.contains("additivity")) {
    if (!j.at("additivity").is_boolean()) fail("additivity must be a boolean");
    pf.additivity_declared = j.at("additivity").get<bool>();
  }
  if (j.contains("figure")) {
    const json& fig = j.at("figure");
    if (fig.contains("x")) pf.figure_x = grid_from_json(fig.at("x"), pf.figure_x);
    if (fig.contains("y")) pf.figure_y = grid_from_json(fig.at("y"), pf.figure_y);
  }
  return pf;
}

ViFile vi_from_json(const json& j) {
  if (!j.is_object()) fail("VI file must be a JSON object");
  ViFile vf;
  const json& k = field(j, "K");
  const std::vector<double> lo = reals_from_json(field(k, "lo"), "K.lo");
  const std::vector<double> hi = reals_from_json(field(k, "hi"), "K.hi");
  if (lo.empty() || lo.size() != hi.size()) fail("K.lo and K.hi must be nonempty and of equal length");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] <= hi[i])) fail("K.lo must not exceed K.hi");
    vf.k.push_back(Interval{lo[i], hi[i]});
  }
  vf.g = catalog_spec_from_json(field(j, "g"), lo.size());
  vf.r0 = point_from_json(field(j, "r0"), "r0");
  vf.r1 = point_from_json(field(j, "r1"), "r1");
  if (vf.r0.dim() != lo.size() || vf.r1.dim() != lo.size() || vf.g.effective_dim() != lo.size()) {
    fail("K, g, r0 and r1 must share one dimension");
  }
  if (j.contains("h")) vf.fd_step = real_from_json(j.at("h"), "h");
  if (!(vf.fd_step > 0.0)) fail("h must be positive");
  vf.config = config_from_json(j.value("algorithm", json::object()), lo.size());
  return vf;
}

falsifier::FormulaCandidate candidate_from_json(const json& j) {
  falsifier::FormulaCandidate c;
  c.lambda = reals_from_json(field(j, "lambda"), "lambda");
  const json& mu = field(j, "mu");
  if (!mu.is_array()) fail("mu must be an array of rows");
  for (const json& row : mu) {
    if (!row.is_array()) fail("each mu row must be an array");
    std::vector<falsifier::Elementary> r;
    for (const json& e : row) {
      const std::vector<double> v = reals_from_json(e, "mu entry");
      if (v.size() != 5) fail("each mu entry must have 5 coefficients (a, b, c, d, e)");
      r.push_back({v[0], v[1], v[2], v[3], v[4]});
    }
    c.mu.push_back(std::move(r));
  }
  try {
    c.n();
  } catch (const Error& e) {
    fail(e.what());
  }
  return c;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail("'" + path + "': " + e.what());
  }
}

std::string trace_csv(const IterationResult& res) {
  std::string out = "iter,residual\n";
  char buf[64];
  for (const TraceEntry& t : res.trace) {
    std::snprintf(buf, sizeof buf, "%d,%.17g\n", t.iteration, t.residual);
    out += buf;
  }
  return out;
}

std::string format_scalar(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string format_point(const Point& p) {
  std::string out;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) out += ',';
    out += format_scalar(p[i]);
  }
  return out;
}

}  // namespace proxcalc::io
