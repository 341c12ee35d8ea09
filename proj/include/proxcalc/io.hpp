#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "proxcalc/catalog.hpp"
#include "proxcalc/core.hpp"
#include "proxcalc/falsifier.hpp"
#include "proxcalc/oracle.hpp"
#include "proxcalc/sensitivity.hpp"

namespace proxcalc::io {

using nlohmann::json;

// All readers throw Error(Errc::ParseError) on malformed input. Infinite
// bounds are written as the strings "inf" / "-inf".

catalog::CatalogSpec catalog_spec_from_json(const json& j, std::optional<std::size_t> dim_hint = std::nullopt);
json catalog_spec_to_json(const catalog::CatalogSpec& spec);

enum class Algorithm { A1, A2, DR, FB };

struct ProblemFile {
  std::size_t dim = 1;
  catalog::CatalogSpec f;
  catalog::CatalogSpec g;
  Point x;
  Algorithm algorithm = Algorithm::A1;
  AlgoConfig config;
  bool force = false;
  std::optional<bool> additivity_declared;
  oracle::Grid figure_x{-3.0, 3.0, 0.01};
  oracle::Grid figure_y{-6.0, 6.0, 1e-3};
};

ProblemFile problem_from_json(const json& j);

struct ViFile {
  Box k;
  catalog::CatalogSpec g;
  Point r0;
  Point r1;
  double fd_step = sensitivity::kFdStep;
  AlgoConfig config;
};

ViFile vi_from_json(const json& j);

falsifier::FormulaCandidate candidate_from_json(const json& j);

/// Reads and parses a JSON file; Errc::ParseError on I/O or syntax errors.
json read_json_file(const std::string& path);

/// `iter,residual` header, one row per iteration, 17 significant digits.
std::string trace_csv(const IterationResult& res);

/// Shortest of %.10g that still reads as a real: 1 -> "1.0".
std::string format_scalar(double v);
std::string format_point(const Point& p);

}  // namespace proxcalc::io
