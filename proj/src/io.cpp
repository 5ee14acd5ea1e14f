#include "cvlqr/io.hpp"

#include <fstream>
#include <sstream>

namespace cvlqr::io {

namespace {

const json& require(const json& doc, const std::string& field) {
  if (!doc.is_object() || !doc.contains(field)) {
    throw ParseError(field, "missing required field");
  }
  return doc.at(field);
}

Complex parse_complex_entry(const json& e, const std::string& field) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ParseError(field, "complex entry must be a number or [re, im]");
}

double parse_real_entry(const json& e, const std::string& field) {
  if (!e.is_number()) throw ParseError(field, "entry must be a number");
  return e.get<double>();
}

template <typename Scalar, typename Entry>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> parse_matrix(
    const json& doc, const std::string& field, Entry entry) {
  const json& rows = require(doc, field);
  if (!rows.is_array() || rows.empty()) {
    throw ParseError(field, "matrix must be a nonempty array of rows");
  }
  const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
  if (cols == 0) throw ParseError(field, "matrix rows must be nonempty arrays");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) {
      std::ostringstream os;
      os << "row " << i << " has " << (rows[i].is_array() ? rows[i].size() : 0)
         << " entries, expected " << cols;
      throw ParseError(field, os.str());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = entry(rows[i][j], field);
    }
  }
  return m;
}

template <typename Scalar, typename Entry>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> parse_vector(const json& doc,
                                                      const std::string& field,
                                                      Entry entry) {
  const json& arr = require(doc, field);
  if (!arr.is_array() || arr.empty()) {
    throw ParseError(field, "vector must be a nonempty array");
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v(i) = entry(arr[i], field);
  return v;
}

template <typename Matrix>
void expect_shape(const Matrix& m, Eigen::Index rows, Eigen::Index cols,
                  const std::string& field) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << "matrix is " << m.rows() << "x" << m.cols() << ", expected " << rows
       << "x" << cols;
    throw ParseError(field, os.str());
  }
}

template <typename Vector>
void expect_length(const Vector& v, Eigen::Index n, const std::string& field) {
  if (v.size() != n) {
    throw ParseError(field, "vector has length " + std::to_string(v.size()) +
                                ", expected " + std::to_string(n));
  }
}

void expect_kind(const json& doc, const std::string& kind) {
  const std::string found = document_kind(doc);
  if (found != kind) {
    throw ParseError("kind", "expected \"" + kind + "\", got \"" + found + "\"");
  }
}

template <typename Make>
auto wrap_weights(Make make) {
  try {
    return make();
  } catch (const InvalidWeights& e) {
    const std::string what = e.what();
    throw ParseError(what.rfind("R", 0) == 0 ? "R" : "Q", what);
  }
}

json complex_entry(const Complex& z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("", path.string() + ": invalid JSON: " + e.what());
  }
}

CMatrix parse_complex_matrix(const json& doc, const std::string& field) {
  return parse_matrix<Complex>(doc, field, parse_complex_entry);
}

RMatrix parse_real_matrix(const json& doc, const std::string& field) {
  return parse_matrix<double>(doc, field, parse_real_entry);
}

CVector parse_complex_vector(const json& doc, const std::string& field) {
  return parse_vector<Complex>(doc, field, parse_complex_entry);
}

RVector parse_real_vector(const json& doc, const std::string& field) {
  return parse_vector<double>(doc, field, parse_real_entry);
}

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_entry(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const CVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_entry(v(i)));
  return arr;
}

json to_json(const RVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

RunOptions parse_options(const json& doc) {
  RunOptions out;
  if (!doc.is_object() || !doc.contains("options")) return out;
  const json& o = doc.at("options");
  if (!o.is_object()) throw ParseError("options", "must be an object");
  auto number = [&](const char* key) -> std::optional<double> {
    if (!o.contains(key) || o.at(key).is_null()) return std::nullopt;
    if (!o.at(key).is_number()) {
      throw ParseError(std::string("options.") + key, "must be a number");
    }
    return o.at(key).get<double>();
  };
  auto integer = [&](const char* key) -> std::optional<int> {
    if (!o.contains(key) || o.at(key).is_null()) return std::nullopt;
    if (!o.at(key).is_number_integer()) {
      throw ParseError(std::string("options.") + key, "must be an integer");
    }
    return o.at(key).get<int>();
  };
  if (auto v = number("tol")) out.solver.tol = *v;
  if (auto v = integer("max_iter")) out.solver.max_iter = *v;
  if (auto v = integer("min_iter")) out.solver.min_iter = *v;
  if (auto v = number("divergence_bound")) out.solver.divergence_bound = *v;
  out.snapshot_at = integer("snapshot_at");
  if (out.snapshot_at && *out.snapshot_at < 0) {
    throw ParseError("options.snapshot_at", "must be nonnegative");
  }
  try {
    out.solver.validate();
  } catch (const Error& e) {
    throw ParseError("options", e.what());
  }
  return out;
}

json to_json(const SolverOptions& opts) {
  json o = {{"tol", opts.tol},
            {"max_iter", opts.max_iter},
            {"min_iter", opts.min_iter}};
  if (opts.divergence_bound) o["divergence_bound"] = *opts.divergence_bound;
  return o;
}

std::string document_kind(const json& doc) {
  const json& kind = require(doc, "kind");
  if (!kind.is_string()) throw ParseError("kind", "must be a string");
  return kind.get<std::string>();
}

ComplexProblem parse_complex_problem(const json& doc) {
  expect_kind(doc, "complex");
  const CMatrix a1 = parse_complex_matrix(doc, "A1");
  const Eigen::Index n = a1.rows();
  expect_shape(a1, n, n, "A1");
  const CMatrix a2 = parse_complex_matrix(doc, "A2");
  expect_shape(a2, n, n, "A2");
  const CMatrix b1 = parse_complex_matrix(doc, "B1");
  const Eigen::Index m = b1.cols();
  expect_shape(b1, n, m, "B1");
  const CMatrix b2 = parse_complex_matrix(doc, "B2");
  expect_shape(b2, n, m, "B2");
  const CMatrix q = parse_complex_matrix(doc, "Q");
  expect_shape(q, n, n, "Q");
  const CMatrix r = parse_complex_matrix(doc, "R");
  expect_shape(r, m, m, "R");
  std::optional<CVector> x0;
  if (doc.contains("x0")) {
    x0 = parse_complex_vector(doc, "x0");
    expect_length(*x0, n, "x0");
  }
  return {ComplexLinearSystem(Bimatrix(a1, a2), Bimatrix(b1, b2)),
          wrap_weights([&] { return CostWeights(q, r); }), x0};
}

AntilinearProblem parse_antilinear_problem(const json& doc) {
  expect_kind(doc, "antilinear");
  const CMatrix a2 = parse_complex_matrix(doc, "A2");
  const Eigen::Index n = a2.rows();
  expect_shape(a2, n, n, "A2");
  const CMatrix b2 = parse_complex_matrix(doc, "B2");
  const Eigen::Index m = b2.cols();
  expect_shape(b2, n, m, "B2");
  const CMatrix q = parse_complex_matrix(doc, "Q");
  expect_shape(q, n, n, "Q");
  const CMatrix r = parse_complex_matrix(doc, "R");
  expect_shape(r, m, m, "R");
  std::optional<CVector> x0;
  if (doc.contains("x0")) {
    x0 = parse_complex_vector(doc, "x0");
    expect_length(*x0, n, "x0");
  }
  return {AntilinearSystem(a2, b2),
          wrap_weights([&] { return CostWeights(q, r); }), x0};
}

DelayProblem parse_delay_problem(const json& doc) {
  expect_kind(doc, "delay");
  DelayProblem out;
  DelaySystem& ds = out.ds;
  ds.a0 = parse_real_matrix(doc, "A0");
  const Eigen::Index n = ds.a0.rows();
  expect_shape(ds.a0, n, n, "A0");
  ds.ad = parse_real_matrix(doc, "Ad");
  expect_shape(ds.ad, n, n, "Ad");
  ds.g = parse_real_matrix(doc, "G");
  const Eigen::Index p = ds.g.cols();
  expect_shape(ds.g, n, p, "G");
  ds.q0 = parse_real_matrix(doc, "Q0");
  expect_shape(ds.q0, n, n, "Q0");
  ds.r0 = parse_real_matrix(doc, "R0");
  expect_shape(ds.r0, p, p, "R0");
  try {
    ds.validate();
  } catch (const InvalidWeights& e) {
    const std::string what = e.what();
    throw ParseError(what.rfind("R0", 0) == 0 ? "R0" : "Q0", what);
  }
  if (doc.contains("initial")) {
    const json& init = doc.at("initial");
    DelayInitialCondition ic;
    ic.xi0 = parse_real_vector(init, "xi0");
    expect_length(ic.xi0, n, "initial.xi0");
    ic.xim1 = parse_real_vector(init, "xim1");
    expect_length(ic.xim1, n, "initial.xim1");
    out.initial = ic;
  }
  return out;
}

}  // namespace cvlqr::io
