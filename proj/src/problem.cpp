#include "lqsweep/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "lqsweep/numerics.hpp"

namespace lqsweep {

using json = nlohmann::ordered_json;

void ValidationReport::add(Severity s, std::string message) {
  if (s == Severity::Error) ok = false;
  findings.push_back({s, std::move(message)});
}

void LqProblem::check_shapes() const {
  if (n < 1 || m < 1 || k < 1)
    throw ShapeError("n, m, k must all be at least 1");
  if (!std::isfinite(t0) || !std::isfinite(tau) || !(t0 < tau))
    throw ShapeError("need t0 < tau");
  auto want = [](const TimeMatrix& tm, int r, int c, const char* name) {
    if (tm.rows() != r || tm.cols() != c)
      throw ShapeError(std::string(name) + " has wrong shape");
  };
  want(F, n, n, "F");
  want(G, n, m, "G");
  want(R, n, n, "R");
  want(C, m, m, "C");
  if (Phi1.rows() != k || Phi1.cols() != n) throw ShapeError("Phi1 must be k x n");
  if (Phi2.rows() != k || Phi2.cols() != n) throw ShapeError("Phi2 must be k x n");
  if (q.rows() != k || q.cols() != 1) throw ShapeError("q must have length k");
  auto covered = [&](const TimeMatrix& tm, const char* name) {
    if (!tm.covers(t0, tau))
      throw ShapeError(std::string(name) + " samples do not cover [t0, tau]");
  };
  covered(F, "F");
  covered(G, "G");
  covered(R, "R");
  covered(C, "C");
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

ValidationReport validate(const LqProblem& p, int samples) {
  ValidationReport rep;
  try {
    p.check_shapes();
  } catch (const ShapeError& e) {
    rep.add(Severity::Error, std::string("shape: ") + e.what());
    return rep;
  }

  samples = std::max(2, samples);
  for (int i = 0; i < samples; ++i) {
    const double t = p.t0 + (p.tau - p.t0) * i / (samples - 1);
    const Matrix r = p.R.eval(t);
    const Matrix c = p.C.eval(t);
    const double r_gap = (r - r.transpose()).max_abs();
    if (r_gap > 1e-9 * (1.0 + r.max_abs())) {
      rep.add(Severity::Error, "R not symmetric at t=" + fmt(t));
    } else {
      const double r_min = sym_eigvals(r).front();
      if (r_min < -1e-9)
        rep.add(Severity::Error, "R not positive semidefinite at t=" + fmt(t) +
                                     " (min eigenvalue " + fmt(r_min) + ")");
    }
    const double c_gap = (c - c.transpose()).max_abs();
    if (c_gap > 1e-9 * (1.0 + c.max_abs())) {
      rep.add(Severity::Error, "C not symmetric at t=" + fmt(t));
    } else {
      const double c_min = sym_eigvals(c).front();
      if (c_min < 1e-12)
        rep.add(Severity::Error, "C not positive definite at t=" + fmt(t) +
                                     " (min eigenvalue " + fmt(c_min) + ")");
    }
  }

  const Matrix coeff = hstack(p.Phi1, -p.Phi2);
  rep.bc_rank = rank_estimate(coeff);
  rep.bc_rank_augmented = rank_estimate(hstack(coeff, p.q));
  if (rep.bc_rank_augmented > rep.bc_rank)
    rep.add(Severity::Error,
            "boundary conditions inconsistent: augmented rank " +
                std::to_string(rep.bc_rank_augmented) +
                " exceeds coefficient rank " + std::to_string(rep.bc_rank));
  if (p.k > 2 * p.n)
    rep.add(Severity::Warning, "k=" + std::to_string(p.k) + " exceeds 2n=" +
                                   std::to_string(2 * p.n) +
                                   ": boundary system overdetermined");

  try {
    const Matrix wc = controllability_gramian(p, 400);
    const double margin = sym_eigvals(wc).front();
    rep.gramian_min_eig = margin;
    if (margin < 1e-10 * (1.0 + wc.max_abs()))
      rep.add(Severity::Warning,
              "controllability margin " + fmt(margin) +
                  " is small; (F,G) may be uncontrollable on the interval");
  } catch (const SolverError& e) {
    rep.add(Severity::Warning, std::string("controllability check failed: ") + e.what());
  }
  return rep;
}

Matrix controllability_gramian(const LqProblem& p, int steps) {
  p.check_shapes();
  const int n = p.n;
  const Grid grid(p.t0, p.tau, steps);
  // stacked state [Psi; X] with Psi(t,t0) forward and X = Psi^{-1} from
  // Xdot = -X F; Psi(tau, s) is then Psi(tau) X(s) without per-node solves
  Matrix y0(2 * n, n);
  y0.set_block(0, 0, Matrix::identity(n));
  y0.set_block(n, 0, Matrix::identity(n));
  auto rhs = [&](double t, const Matrix& y) {
    const Matrix f = p.F.eval(t);
    const Matrix psi = y.block(0, 0, n, n);
    const Matrix x = y.block(n, 0, n, n);
    Matrix dy(2 * n, n);
    dy.set_block(0, 0, f * psi);
    dy.set_block(n, 0, -(x * f));
    return dy;
  };
  const std::vector<Matrix> states = rk4_integrate(rhs, y0, grid);
  const Matrix psi_tau = states.back().block(0, 0, n, n);
  const double h = grid.h();
  Matrix acc(n, n);
  for (int i = 0; i <= grid.steps; ++i) {
    const Matrix b = psi_tau * states[i].block(n, 0, n, n) * p.G.eval(grid.node(i));
    const Matrix g = b * b.transpose();  // exactly symmetric PSD
    const double w = (i == 0 || i == grid.steps) ? 0.5 : 1.0;
    acc += w * g;
  }
  return h * acc;
}

namespace {

const json& field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

Matrix matrix_from_json(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty())
    throw ParseError("field \"" + name + "\": expected a non-empty list of rows");
  const auto& first = j.front();
  if (!first.is_array() || first.empty())
    throw ParseError("field \"" + name + "\": rows must be non-empty lists");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(first.size());
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(rows) * cols);
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ParseError("field \"" + name + "\": ragged matrix rows");
    for (const auto& v : row) {
      if (!v.is_number())
        throw ParseError("field \"" + name + "\": non-numeric entry");
      data.push_back(v.get<double>());
    }
  }
  return Matrix(rows, cols, std::move(data));
}

Matrix vector_from_json(const json& j, const std::string& name) {
  if (j.is_array() && !j.empty() && j.front().is_array()) {
    const Matrix m = matrix_from_json(j, name);
    if (m.cols() != 1)
      throw ParseError("field \"" + name + "\": expected a vector");
    return m;
  }
  if (!j.is_array() || j.empty())
    throw ParseError("field \"" + name + "\": expected a non-empty list");
  std::vector<double> data;
  data.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number())
      throw ParseError("field \"" + name + "\": non-numeric entry");
    data.push_back(v.get<double>());
  }
  // evaluate the length before std::move empties the vector
  const int len = static_cast<int>(data.size());
  return Matrix(len, 1, std::move(data));
}

TimeMatrix tm_from_json(const json& j, const std::string& name) {
  if (!j.is_object())
    throw ParseError("field \"" + name +
                     "\": expected {\"constant\": ...} or {\"sampled\": ...}");
  if (j.contains("constant"))
    return TimeMatrix::constant(matrix_from_json(j.at("constant"), name));
  if (!j.contains("sampled"))
    throw ParseError("field \"" + name + "\": needs \"constant\" or \"sampled\"");
  const json& s = j.at("sampled");
  const json& jt = field(s, "times");
  const json& jv = field(s, "values");
  const json& ji = field(s, "interp");
  if (!jt.is_array() || jt.empty())
    throw ParseError("field \"" + name + "\": \"times\" must be a non-empty list");
  std::vector<double> times;
  for (const auto& v : jt) {
    if (!v.is_number())
      throw ParseError("field \"" + name + "\": non-numeric time");
    times.push_back(v.get<double>());
  }
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i] < times[i + 1]))
      throw ParseError("field \"" + name + "\": times not increasing");
  if (!jv.is_array() || jv.size() != jt.size())
    throw ParseError("field \"" + name + "\": values count must match times");
  std::vector<Matrix> values;
  for (std::size_t i = 0; i < jv.size(); ++i)
    values.push_back(matrix_from_json(jv[static_cast<int>(i)],
                                      name + ".values[" + std::to_string(i) + "]"));
  Interp interp;
  const std::string kind = ji.is_string() ? ji.get<std::string>() : "";
  if (kind == "linear")
    interp = Interp::Linear;
  else if (kind == "previous")
    interp = Interp::Previous;
  else
    throw ParseError("field \"" + name + "\": interp must be \"linear\" or \"previous\"");
  try {
    return TimeMatrix::sampled(std::move(times), std::move(values), interp);
  } catch (const ShapeError& e) {
    throw ParseError("field \"" + name + "\": " + e.what());
  }
}

double number_from_json(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw ParseError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

int int_from_json(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer())
    throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json tm_to_json(const TimeMatrix& tm) {
  if (tm.is_constant()) return json{{"constant", matrix_to_json(tm.constant_value())}};
  json values = json::array();
  for (const auto& v : tm.values()) values.push_back(matrix_to_json(v));
  return json{{"sampled",
               json{{"times", tm.times()},
                    {"values", std::move(values)},
                    {"interp", tm.interp() == Interp::Linear ? "linear" : "previous"}}}};
}

}  // namespace

LqProblem parse_problem(const std::string& text) {
  LqProblem p;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ParseError("problem document must be a JSON object");
    p.n = int_from_json(j, "n");
    p.m = int_from_json(j, "m");
    p.k = int_from_json(j, "k");
    p.t0 = number_from_json(j, "t0");
    p.tau = number_from_json(j, "tau");
    p.F = tm_from_json(field(j, "F"), "F");
    p.G = tm_from_json(field(j, "G"), "G");
    p.R = tm_from_json(field(j, "R"), "R");
    p.C = tm_from_json(field(j, "C"), "C");
    p.Phi1 = matrix_from_json(field(j, "Phi1"), "Phi1");
    p.Phi2 = matrix_from_json(field(j, "Phi2"), "Phi2");
    p.q = vector_from_json(field(j, "q"), "q");
  } catch (const json::exception& e) {
    throw ParseError(std::string("problem document: ") + e.what());
  }
  p.check_shapes();  // ShapeError when payloads disagree with n, m, k
  return p;
}

std::string serialize_problem(const LqProblem& p) {
  json j;
  j["n"] = p.n;
  j["m"] = p.m;
  j["k"] = p.k;
  j["t0"] = p.t0;
  j["tau"] = p.tau;
  j["F"] = tm_to_json(p.F);
  j["G"] = tm_to_json(p.G);
  j["R"] = tm_to_json(p.R);
  j["C"] = tm_to_json(p.C);
  j["Phi1"] = matrix_to_json(p.Phi1);
  j["Phi2"] = matrix_to_json(p.Phi2);
  json qv = json::array();
  for (int i = 0; i < p.q.rows(); ++i) qv.push_back(p.q(i, 0));
  j["q"] = std::move(qv);
  return j.dump(2) + "\n";
}

LqProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

}  // namespace lqsweep
