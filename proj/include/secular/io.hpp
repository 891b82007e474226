#pragma once

// Instance files and report serialization. Instances are JSON objects
//   {"dim": n, "T": [[...], ...], "z": [...]}
// Reports are JSON (infinities written as the string "inf") or CSV with
// 17 significant digits.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "secular/boundary.hpp"
#include "secular/curves.hpp"
#include "secular/dirichlet.hpp"
#include "secular/instance.hpp"
#include "secular/resolvent.hpp"
#include "secular/spherical.hpp"

namespace secular {

using Json = nlohmann::ordered_json;

/// Throws SchemaError (with the offending field), AsymmetricOperator or ZeroZ.
Instance instance_from_json(const Json& doc);
/// Throws IoError when unreadable, SchemaError when not JSON.
Instance parse_instance(const std::string& path);
Json instance_to_json(const Instance& inst);

/// Finite values as numbers, infinities as "inf" / "-inf".
Json number(double v);
Json to_json(const Vector& v);
Json to_json(const Spectrum& s);
Json to_json(const ResolventSolution& s);
Json to_json(const BoundaryDiagnosis& d);
Json to_json(const MaxClassification& c);
Json to_json(const SphericalSolution& s);
Json to_json(const WellposednessReport& r);
Json to_json(const CurveSample& s);
Json to_json(const AuditReport& a);
Json to_json(const PlaneCounterexampleReport& r);
Json to_json(const SequenceCounterexampleReport& r);
Json to_json(const EtaCurveReport& r);

std::string_view to_string(SolutionSetKind kind);

/// %.17g
std::string format_number(double v);

void write_curve_csv(std::ostream& os, const std::vector<CurveSample>& samples);
void write_eta_csv(std::ostream& os, const EtaCurveReport& report);

}  // namespace secular
