#include "zermelo/spec_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "zermelo/classify.hpp"

namespace zermelo {

namespace {

double require_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) throw ValidationError(where + ": expected a number");
  return j.get<double>();
}

int require_int(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ValidationError(where + ": expected an integer");
  return j.get<int>();
}

const nlohmann::json& require_field(const nlohmann::json& j, const std::string& key,
                                    const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(where + ": missing field '" + key + "'");
  return *it;
}

}  // namespace

Vec vec_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<int>(i)] = require_number(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

Mat mat_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ValidationError(where + ": expected a non-empty array of rows");
  const std::size_t rows = j.size();
  Mat m;
  for (std::size_t i = 0; i < rows; ++i) {
    const Vec row = vec_from_json(j[i], where + "[" + std::to_string(i) + "]");
    if (i == 0) m.resize(rows, row.size());
    if (row.size() != m.cols())
      throw ValidationError(where + ": ragged rows");
    m.row(static_cast<int>(i)) = row.transpose();
  }
  return m;
}

nlohmann::json vec_to_json(const Vec& v) {
  nlohmann::json j = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

nlohmann::json mat_to_json(const Mat& m) {
  nlohmann::json j = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) j.push_back(vec_to_json(m.row(i).transpose()));
  return j;
}

WindSpec parse_spec_json(const nlohmann::json& j) {
  const auto& jm = require_field(j, "model", "$");
  const auto& jw = require_field(j, "wind", "$");

  const auto& jkind = require_field(jm, "kind", "$.model");
  if (!jkind.is_string()) throw ValidationError("$.model.kind: expected a string");
  const std::string kind = jkind.get<std::string>();
  const double K = require_number(require_field(jm, "K", "$.model"), "$.model.K");
  const int n = require_int(require_field(jm, "n", "$.model"), "$.model.n");
  int s = +1;
  if (jm.contains("s")) s = require_int(jm["s"], "$.model.s");

  SpaceFormModel model = [&] {
    if (kind == "sphere") return SpaceFormModel::sphere(K, n, s);
    if (kind == "euclidean") {
      if (K != 0.0)
        throw ValidationError("$.model.K: euclidean background curvature must be 0");
      return SpaceFormModel::euclidean(n);
    }
    if (kind == "klein") return SpaceFormModel::klein(K, n);
    throw ValidationError("$.model.kind: expected one of sphere|euclidean|klein, got '" +
                          kind + "'");
  }();

  const double sigma = require_number(require_field(jw, "sigma", "$.wind"), "$.wind.sigma");
  const Mat Q = mat_from_json(require_field(jw, "Q", "$.wind"), "$.wind.Q");
  const Vec C = vec_from_json(require_field(jw, "C", "$.wind"), "$.wind.C");
  if (Q.rows() != n || Q.cols() != n)
    throw ValidationError("$.wind.Q: expected an " + std::to_string(n) + "x" +
                          std::to_string(n) + " matrix");
  if (C.size() != n)
    throw ValidationError("$.wind.C: expected a length-" + std::to_string(n) + " vector");
  return WindSpec::make(model, sigma, Q, C);
}

nlohmann::json spec_to_json(const WindSpec& spec) {
  nlohmann::json jm;
  switch (spec.model.kind) {
    case ModelKind::Sphere:
      jm["kind"] = "sphere";
      break;
    case ModelKind::Euclidean:
      jm["kind"] = "euclidean";
      break;
    case ModelKind::Klein:
      jm["kind"] = "klein";
      break;
  }
  jm["K"] = spec.model.curvature;
  jm["n"] = spec.model.dim;
  if (spec.model.kind == ModelKind::Sphere) jm["s"] = spec.model.hemisphere_sign;
  nlohmann::json jw;
  jw["sigma"] = spec.sigma;
  jw["Q"] = mat_to_json(spec.Q);
  jw["C"] = vec_to_json(spec.C);
  return nlohmann::json{{"model", jm}, {"wind", jw}};
}

namespace {

void dump_17(const nlohmann::json& j, std::ostringstream& os, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad_in << nlohmann::json(it.key()).dump() << ": ";
        dump_17(it.value(), os, indent, depth + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ", ";
        first = false;
        dump_17(v, os, indent, depth + 1);
      }
      os << "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        os << buf;
      } else {
        os << "null";
      }
      return;
    }
    default:
      os << j.dump();
      return;
  }
}

Mat j_block(double a, int dim, int offset) {
  Mat q = Mat::Zero(dim, dim);
  q(offset, offset + 1) = a;
  q(offset + 1, offset) = -a;
  return q;
}

}  // namespace

std::string dump_json_17(const nlohmann::json& j, int indent) {
  std::ostringstream os;
  dump_17(j, os, indent, 0);
  return os.str();
}

std::vector<std::string> fixture_ids() {
  return {"3.1.1", "3.1.2", "3.2.1", "3.2.2", "3.2.3", "3.3.1", "3.3.2", "3.3.3"};
}

Fixture example_fixture(const std::string& id, const FixtureParams& params) {
  const int n = 3;
  if (id == "3.1.1") {
    const double tau = params.tau.value_or(0.5);
    return {id,
            WindSpec::make(SpaceFormModel::sphere(1.0, n), 0.0, j_block(tau, n, 0),
                           Vec::Zero(n)),
            1.0};
  }
  if (id == "3.1.2") {
    const double K = params.K.value_or(2.0);
    if (!(K > 1.0)) throw ValidationError("fixture 3.1.2 requires K > 1");
    const double c = std::sqrt(K - 1.0);
    Vec C = Vec::Zero(n);
    C[0] = -c;
    return {id, WindSpec::make(SpaceFormModel::sphere(K, n), 0.0, j_block(c, n, 1), C), K};
  }
  if (id == "3.2.1")
    return {id,
            WindSpec::make(SpaceFormModel::euclidean(n), 0.0, j_block(1.0, n, 0),
                           Vec::Zero(n)),
            0.0};
  if (id == "3.2.2") {
    const double tau = params.tau.value_or(-1.0);
    return {id,
            WindSpec::make(SpaceFormModel::euclidean(n), -2.0 * tau, Mat::Zero(n, n),
                           Vec::Zero(n)),
            -0.25 * tau * tau};
  }
  if (id == "3.2.3") {
    Vec C(n);
    C << 0.3, 0.2, 0.1;
    if (params.C) C = *params.C;
    if (C.norm() >= 1.0) throw ValidationError("fixture 3.2.3 requires |C| < 1");
    return {id, WindSpec::make(SpaceFormModel::euclidean(n), 0.0, Mat::Zero(n, n), C), 0.0};
  }
  if (id == "3.3.1")
    return {id,
            WindSpec::make(SpaceFormModel::klein(-1.0, n), 0.0, j_block(1.0, n, 0),
                           Vec::Zero(n)),
            -1.0};
  if (id == "3.3.2") {
    const double tau = params.tau.value_or(0.3);
    Vec C = Vec::Zero(n);
    C[0] = tau;
    return {id, WindSpec::make(SpaceFormModel::klein(-1.0, n), 0.0, j_block(tau, n, 1), C),
            -1.0};
  }
  if (id == "3.3.3") {
    Vec C = Vec::Zero(n);
    C[0] = 1.0;
    return {id, WindSpec::make(SpaceFormModel::klein(-1.0, n), 0.0, j_block(1.0, n, 0), C),
            -1.0};
  }
  throw ValidationError("unknown example id '" + id + "' (expected 3.1.1 .. 3.3.3)");
}

nlohmann::json moduli_to_json(const ModuliPoint& p) {
  nlohmann::json j;
  j["case"] = to_string(p.case_);
  j["K"] = p.K;
  j["sigma"] = p.sigma;
  j["a"] = vec_to_json(p.a);
  if (p.case_ == ModuliCase::FlatZero)
    j["branch"] = to_string(p.branch);
  else
    j["branch"] = nullptr;
  j["locally_admissible"] = p.locally_admissible;
  j["globally_admissible"] = p.globally_admissible;
  return j;
}

nlohmann::json normal_form_to_json(const BlockNormalForm& f, const Mat& omega) {
  nlohmann::json j;
  j["family"] = to_string(f.family);
  j["subtype"] = to_string(f.subtype);
  if (f.family == NormalFamily::Euclidean && f.subtype == NormalSubtype::FlatSigmaZero)
    j["branch"] = to_string(f.branch);
  j["a"] = vec_to_json(f.a);
  j["xi"] = f.extra;
  j["sigma"] = f.sigma;
  j["normal_matrix"] = mat_to_json(f.normal_matrix());
  j["conjugator"] = mat_to_json(f.conjugator);
  j["group_residual"] = f.group_residual();
  j["reconstruction_residual"] = f.reconstruction_residual(omega);
  return j;
}

}  // namespace zermelo
