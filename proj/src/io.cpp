#include "secular/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "secular/errors.hpp"

namespace secular {

namespace {

[[noreturn]] void schema_error(const std::string& msg) { throw Error(ErrorCode::SchemaError, msg); }

double read_number(const Json& value, const std::string& where) {
  if (!value.is_number()) schema_error(where + " must be a number");
  return value.get<double>();
}

std::vector<double> read_array(const Json& value, const std::string& where) {
  if (!value.is_array()) schema_error(where + " must be an array");
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i)
    out.push_back(read_number(value[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Instance instance_from_json(const Json& doc) {
  if (!doc.is_object()) schema_error("instance must be a JSON object");
  for (const char* key : {"dim", "T", "z"})
    if (!doc.contains(key)) schema_error(std::string("missing field \"") + key + "\"");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1)
    schema_error("field \"dim\" must be a positive integer");
  const auto dim = static_cast<std::size_t>(doc["dim"].get<long long>());

  const Json& t = doc["T"];
  if (!t.is_array()) schema_error("field \"T\" must be an array of rows");
  if (t.size() != dim)
    schema_error("field \"T\" has " + std::to_string(t.size()) + " rows, expected " +
                 std::to_string(dim));
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < dim; ++i) {
    const std::string where = "T[" + std::to_string(i) + "]";
    rows.push_back(read_array(t[i], where));
    if (rows.back().size() != dim)
      schema_error(where + " has " + std::to_string(rows.back().size()) + " entries, expected " +
                   std::to_string(dim));
  }
  std::vector<double> z = read_array(doc["z"], "z");
  if (z.size() != dim)
    schema_error("field \"z\" has " + std::to_string(z.size()) + " entries, expected " +
                 std::to_string(dim));
  if (std::all_of(z.begin(), z.end(), [](double v) { return v == 0.0; }))
    throw Error(ErrorCode::ZeroZ, "field \"z\" is the zero vector");

  return Instance(SymmetricOperator(Matrix::from_rows(rows)), Vector(std::move(z)));
}

Instance parse_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open instance file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    schema_error(path + ": invalid JSON (" + e.what() + ")");
  }
  return instance_from_json(doc);
}

Json instance_to_json(const Instance& inst) {
  Json doc;
  doc["dim"] = inst.dim();
  doc["T"] = inst.op().matrix().rows();
  doc["z"] = inst.z().raw();
  return doc;
}

Json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

Json to_json(const Vector& v) {
  Json arr = Json::array();
  for (double x : v.entries()) arr.push_back(number(x));
  return arr;
}

Json to_json(const Spectrum& s) {
  Json doc;
  doc["eigenvalues"] = s.values;
  Json vecs = Json::array();
  for (std::size_t k = 0; k < s.dim(); ++k) vecs.push_back(to_json(s.eigenvector(k)));
  doc["eigenvectors"] = vecs;
  doc["op_norm"] = operator_norm(s);
  return doc;
}

Json to_json(const ResolventSolution& s) {
  Json doc;
  doc["lambda"] = s.lambda;
  doc["v_hat"] = to_json(s.v_hat);
  doc["g"] = s.v_hat.squared_norm();
  doc["residual"] = s.residual;
  doc["iterations"] = s.iterations;
  return doc;
}

std::string_view to_string(SolutionSetKind kind) {
  switch (kind) {
    case SolutionSetKind::Empty: return "Empty";
    case SolutionSetKind::Singleton: return "Singleton";
    case SolutionSetKind::Affine: return "Affine";
  }
  return "Unknown";
}

Json to_json(const BoundaryDiagnosis& d) {
  Json doc;
  doc["norm_is_eigenvalue"] = d.norm_is_eigenvalue;
  doc["v_kind"] = to_string(d.v_kind);
  doc["theta"] = number(d.theta);
  doc["min_norm_solution"] = d.min_norm_solution ? to_json(*d.min_norm_solution) : Json(nullptr);
  doc["kernel_dim"] = d.kernel_dim;
  return doc;
}

Json to_json(const MaxClassification& c) {
  Json doc;
  doc["has_global_max"] = c.has_global_max;
  doc["witness"] = c.witness ? to_json(*c.witness) : Json(nullptr);
  doc["t_nonpositive"] = c.t_nonpositive;
  return doc;
}

Json to_json(const SphericalSolution& s) {
  Json doc;
  doc["r"] = s.r;
  doc["x_hat"] = to_json(s.x_hat);
  doc["multiplier"] = s.multiplier;
  doc["gamma"] = s.gamma;
  doc["regime"] = to_string(s.regime);
  doc["euler_residual"] = s.euler_residual;
  doc["well_posed"] = s.well_posed;
  return doc;
}

Json to_json(const WellposednessReport& r) {
  Json doc;
  doc["r"] = r.r;
  doc["multiplier"] = r.multiplier;
  doc["gamma"] = r.gamma;
  doc["samples"] = r.samples;
  doc["tolerance"] = r.tolerance;
  doc["max_identity_violation"] = r.max_identity_violation;
  doc["max_bound_violation"] = r.max_bound_violation;
  doc["violations"] = r.violations;
  return doc;
}

Json to_json(const CurveSample& s) {
  Json doc;
  doc["r"] = s.r;
  doc["gamma"] = s.gamma;
  doc["gamma_prime"] = s.gamma_prime;
  doc["g_inverse"] = s.g_inverse ? Json(*s.g_inverse) : Json(nullptr);
  doc["fd_gamma_prime"] = s.fd_gamma_prime;
  doc["euler_residual"] = s.euler_residual;
  doc["regime"] = to_string(s.regime);
  return doc;
}

Json to_json(const AuditReport& a) {
  Json doc;
  doc["monotone_gamma"] = a.monotone_gamma;
  doc["strictly_concave"] = a.strictly_concave;
  doc["monotone_g"] = a.monotone_g;
  doc["derivative_match"] = a.derivative_match;
  doc["inverse_match"] = a.inverse_match;
  doc["euler_max_residual"] = a.euler_max_residual;
  doc["second_differences"] = a.second_differences;
  Json samples = Json::array();
  for (const auto& s : a.samples) samples.push_back(to_json(s));
  doc["samples"] = samples;
  return doc;
}

Json to_json(const PlaneCounterexampleReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j;
    j["r"] = row.r;
    j["x_hat"] = to_json(row.x_hat);
    j["gamma"] = row.gamma;
    j["gamma_closed_form"] = row.gamma_closed_form;
    j["fd_gamma_prime"] = row.fd_gamma_prime;
    j["euler_residual"] = to_json(row.euler_residual);
    rows.push_back(j);
  }
  Json doc;
  doc["operator"] = "T(t,s) = (t+s, s-t)";
  doc["z"] = Json::array({1.0, 0.0});
  doc["rows"] = rows;
  return doc;
}

Json to_json(const SequenceCounterexampleReport& r) {
  Json doc;
  doc["n"] = r.n;
  doc["z_index"] = r.z_index;
  doc["theta"] = number(r.theta);
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j;
    j["r"] = row.r;
    j["gamma"] = row.gamma;
    j["multiplier"] = row.multiplier;
    j["regime"] = to_string(row.regime);
    j["well_posed"] = row.well_posed;
    j["oracle_gamma"] = row.oracle_gamma;
    j["gamma_doubled"] = row.gamma_doubled;
    rows.push_back(j);
  }
  doc["rows"] = rows;
  doc["second_differences"] = r.second_differences;
  doc["strictly_concave"] = r.strictly_concave;
  Json fits = Json::array();
  for (const auto& f : r.fits) fits.push_back({{"formula", f.formula}, {"max_deviation", f.max_deviation}});
  doc["fits"] = fits;
  doc["truncation_gap"] = r.truncation_gap;
  doc["oracle_max_gap"] = r.oracle_max_gap;
  doc["distinct_maximizers_at_4"] = r.distinct_maximizers_at_4;
  return doc;
}

Json to_json(const EtaCurveReport& r) {
  Json doc;
  doc["delta"] = number(r.delta);
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json j;
    j["r"] = s.r;
    j["eta"] = s.eta;
    j["eta_prime"] = s.eta_prime;
    j["mu"] = s.mu;
    j["c5_residual"] = s.c5_residual;
    j["w_gap"] = s.w_gap;
    j["product_error"] = s.product_error;
    j["functional_gap"] = s.functional_gap;
    samples.push_back(j);
  }
  doc["samples"] = samples;
  doc["audit"] = to_json(r.audit);
  doc["max_product_error"] = r.max_product_error;
  doc["max_c5_residual"] = r.max_c5_residual;
  doc["max_w_gap"] = r.max_w_gap;
  return doc;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_curve_csv(std::ostream& os, const std::vector<CurveSample>& samples) {
  os << "r,gamma,gamma_prime,g_inverse,fd_gamma_prime,euler_residual\n";
  for (const auto& s : samples) {
    os << format_number(s.r) << ',' << format_number(s.gamma) << ','
       << format_number(s.gamma_prime) << ',' << (s.g_inverse ? format_number(*s.g_inverse) : "")
       << ',' << format_number(s.fd_gamma_prime) << ',' << format_number(s.euler_residual) << '\n';
  }
}

void write_eta_csv(std::ostream& os, const EtaCurveReport& report) {
  os << "r,eta,eta_prime,mu,c5_residual\n";
  for (const auto& s : report.samples) {
    os << format_number(s.r) << ',' << format_number(s.eta) << ',' << format_number(s.eta_prime)
       << ',' << format_number(s.mu) << ',' << format_number(s.c5_residual) << '\n';
  }
}

}  // namespace secular
