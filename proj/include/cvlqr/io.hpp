#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "cvlqr/errors.hpp"
#include "cvlqr/riccati.hpp"
#include "cvlqr/timedelay.hpp"

namespace cvlqr::io {

using nlohmann::json;

/// Malformed or inconsistent input document. field() names the offending
/// key when one is known.
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

json load_document(const std::filesystem::path& path);

// Complex entries are [re, im] pairs; a bare number is accepted as a real
// entry. Matrices are arrays of rows.
CMatrix parse_complex_matrix(const json& doc, const std::string& field);
RMatrix parse_real_matrix(const json& doc, const std::string& field);
CVector parse_complex_vector(const json& doc, const std::string& field);
RVector parse_real_vector(const json& doc, const std::string& field);

json to_json(const CMatrix& m);
json to_json(const RMatrix& m);
json to_json(const CVector& v);
json to_json(const RVector& v);

struct RunOptions {
  SolverOptions solver;
  /// Report the iterate P(k) at this k in addition to the converged value.
  std::optional<int> snapshot_at;
};

/// Reads the optional "options" object: tol, max_iter, min_iter,
/// divergence_bound, snapshot_at.
RunOptions parse_options(const json& doc);
json to_json(const SolverOptions& opts);

struct ComplexProblem {
  ComplexLinearSystem sys;
  CostWeights weights;
  std::optional<CVector> x0;
};

struct AntilinearProblem {
  AntilinearSystem sys;
  CostWeights weights;
  std::optional<CVector> x0;
};

struct DelayProblem {
  DelaySystem ds;
  std::optional<DelayInitialCondition> initial;
};

/// Value of the "kind" key; throws ParseError when missing.
std::string document_kind(const json& doc);

// Each parser checks "kind" and every field shape.
ComplexProblem parse_complex_problem(const json& doc);
AntilinearProblem parse_antilinear_problem(const json& doc);
DelayProblem parse_delay_problem(const json& doc);

}  // namespace cvlqr::io
