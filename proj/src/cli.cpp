#include "secular/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "secular/boundary.hpp"
#include "secular/curves.hpp"
#include "secular/dirichlet.hpp"
#include "secular/errors.hpp"
#include "secular/io.hpp"
#include "secular/resolvent.hpp"
#include "secular/spherical.hpp"

namespace secular::cli {

namespace {

const std::vector<std::string> kVerbs = {"eig",   "resolve", "g-curve",        "diagnose",
                                         "max",   "wellposed", "curve",        "audit",
                                         "counterexample", "dirichlet"};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw CLI::ValidationError("--grid", "bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

Vector read_phi_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open phi file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<double> values;
  if (first != std::string::npos && text[first] == '[') {
    Json doc;
    try {
      doc = Json::parse(text);
      values = doc.get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::SchemaError, path + ": expected a JSON array of numbers");
    }
  } else {
    std::stringstream ss(text);
    std::string token;
    while (ss >> token) {
      std::size_t used = 0;
      try {
        values.push_back(std::stod(token, &used));
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size() || used == 0)
        throw Error(ErrorCode::SchemaError, path + ": bad number '" + token + "'");
    }
  }
  if (values.empty()) throw Error(ErrorCode::SchemaError, path + ": no phi samples");
  return Vector(std::move(values));
}

void emit(const Json& doc, std::ostream& out) { out << doc.dump(2) << '\n'; }

int emit_error(ErrorCode code, const std::string& message, const std::optional<Instance>& inst,
               std::ostream& out, std::ostream& err) {
  Json doc;
  doc["error"] = std::string(to_string(code));
  doc["message"] = message;
  if (inst) doc["theta"] = number(diagnose_boundary(*inst).theta);
  emit(doc, out);
  err << "error: " << message << '\n';
  return is_input_error(code) ? kInputError : kDomainError;
}

const Instance& require_instance(const std::optional<Instance>& inst) {
  if (!inst) throw Error(ErrorCode::SchemaError, "--input instance file is required");
  return *inst;
}

void run_verb(const Command& cmd, const std::optional<Instance>& inst, std::ostream& out) {
  const std::string& verb = cmd.verb;
  if (verb == "eig") {
    const Instance& in = require_instance(inst);
    emit(to_json(in.spectrum()), out);
  } else if (verb == "resolve") {
    const Instance& in = require_instance(inst);
    const ResolventSolution sol = cmd.backend == "contraction"
                                      ? contraction_resolvent(in, *cmd.lambda, cmd.tol)
                                      : spectral_resolvent(in, *cmd.lambda);
    Json doc = to_json(sol);
    doc["backend"] = cmd.backend;
    emit(doc, out);
  } else if (verb == "g-curve") {
    const Instance& in = require_instance(inst);
    require_resolvent_lambda(in, *cmd.from);
    if (!(*cmd.to > *cmd.from) || cmd.steps < 2)
      throw Error(ErrorCode::OutOfRange, "g-curve needs --to > --from and --steps >= 2");
    std::vector<std::pair<double, double>> rows;
    for (int k = 0; k < cmd.steps; ++k) {
      const double lam = *cmd.from + (*cmd.to - *cmd.from) * k / (cmd.steps - 1);
      rows.emplace_back(lam, g_value(in, lam));
    }
    if (cmd.format == Format::Csv) {
      out << "lambda,g\n";
      for (const auto& [lam, g] : rows) out << format_number(lam) << ',' << format_number(g) << '\n';
    } else {
      Json arr = Json::array();
      for (const auto& [lam, g] : rows) arr.push_back({{"lambda", lam}, {"g", g}});
      emit(Json{{"op_norm", in.op_norm()}, {"samples", arr}}, out);
    }
  } else if (verb == "diagnose") {
    const Instance& in = require_instance(inst);
    Json doc = to_json(diagnose_boundary(in));
    doc["op_norm"] = in.op_norm();
    doc["global_max"] = to_json(classify_global_max(in, kEigenCoincidence * (1.0 + in.op_norm())));
    emit(doc, out);
  } else if (verb == "max") {
    emit(to_json(maximize_on_sphere(require_instance(inst), *cmd.r)), out);
  } else if (verb == "wellposed") {
    emit(to_json(wellposedness_check(require_instance(inst), *cmd.r, cmd.samples, cmd.seed)), out);
  } else if (verb == "curve" || verb == "audit") {
    const Instance& in = require_instance(inst);
    const auto samples = sample_curve(in, *cmd.from, *cmd.to, cmd.steps);
    if (verb == "curve" && cmd.format == Format::Csv) {
      write_curve_csv(out, samples);
    } else if (verb == "curve") {
      Json arr = Json::array();
      for (const auto& s : samples) arr.push_back(to_json(s));
      emit(arr, out);
    } else {
      emit(to_json(audit_curve(samples)), out);
    }
  } else if (verb == "counterexample") {
    if (cmd.kind == "r2") {
      emit(to_json(counterexample_r2({0.25, 1.0, 4.0}, cmd.seed)), out);
    } else {
      emit(to_json(counterexample_l2(cmd.n == 0 ? 8 : cmd.n, cmd.z_index, cmd.seed)), out);
    }
  } else if (verb == "dirichlet") {
    const std::size_t n = cmd.n == 0 ? 49 : cmd.n;
    Vector phi;
    if (cmd.phi == "one") {
      phi = phi_constant(n);
    } else if (cmd.phi == "eig1") {
      phi = phi_eigenmode(n, 1);
    } else if (cmd.phi == "eig2") {
      phi = phi_eigenmode(n, 2);
    } else {
      if (!cmd.input) throw Error(ErrorCode::SchemaError, "--phi file needs --input <path>");
      phi = read_phi_file(*cmd.input);
    }
    const DirichletProblem p = build_problem(n, phi);
    std::vector<double> grid = cmd.grid;
    if (grid.empty()) {
      if (!cmd.from || !cmd.to)
        throw Error(ErrorCode::SchemaError, "dirichlet needs --grid or --from/--to");
      if (!(*cmd.from > 0.0) || !(*cmd.to > *cmd.from) || cmd.steps < 3)
        throw Error(ErrorCode::OutOfRange, "dirichlet grid needs 0 < --from < --to, --steps >= 3");
      grid = geometric_grid(*cmd.from, *cmd.to, cmd.steps);
    }
    const EtaCurveReport rep = eta_curve(p, grid);
    if (cmd.format == Format::Csv) {
      write_eta_csv(out, rep);
    } else {
      Json doc = to_json(rep);
      doc["n"] = n;
      doc["lambda1"] = p.lambda1;
      emit(doc, out);
    }
  }
}

}  // namespace

std::optional<Command> parse(const std::vector<std::string>& args, std::ostream& out,
                             std::ostream& err, int& exit_code) {
  Command cmd;
  CLI::App app{"Spherical maxima of <T x, x> - 2 <z, x> and the resolvent curve"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string grid_text;
  double r = 0.0, lambda = 0.0, from = 0.0, to = 0.0;
  std::string input, output;

  app.add_option("--input", input, "instance JSON (or phi samples for dirichlet --phi file)");
  app.add_option("--output", output, "write the report here instead of stdout");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", cmd.seed, "seed for randomized verbs");

  auto* eig = app.add_subcommand("eig", "eigendecomposition and ||T||");
  auto* resolve = app.add_subcommand("resolve", "solve T(x) - lambda x = z");
  resolve->add_option("--lambda", lambda, "shift, must exceed ||T||")->required();
  resolve->add_option("--backend", cmd.backend)->check(CLI::IsMember({"spectral", "contraction"}));
  resolve->add_option("--tol", cmd.tol, "contraction stopping tolerance")->check(CLI::PositiveNumber);
  auto* gcurve = app.add_subcommand("g-curve", "g(lambda) = ||v_lambda||^2 on a uniform grid");
  gcurve->add_option("--from", from)->required();
  gcurve->add_option("--to", to)->required();
  gcurve->add_option("--steps", cmd.steps);
  auto* diagnose = app.add_subcommand("diagnose", "solution set of T(x) - ||T|| x = z and theta");
  auto* max = app.add_subcommand("max", "maximize J on the sphere ||x||^2 = r");
  max->add_option("--r", r)->required();
  auto* wellposed = app.add_subcommand("wellposed", "quadratic growth check around the maximizer");
  wellposed->add_option("--r", r)->required();
  wellposed->add_option("--samples", cmd.samples)->check(CLI::NonNegativeNumber);
  auto* curve = app.add_subcommand("curve", "sample gamma on a geometric radius grid");
  auto* audit = app.add_subcommand("audit", "audit monotonicity, concavity and derivatives of gamma");
  for (auto* sub : {curve, audit}) {
    sub->add_option("--from", from)->required();
    sub->add_option("--to", to)->required();
    sub->add_option("--steps", cmd.steps);
  }
  auto* counter = app.add_subcommand("counterexample", "non-symmetric (r2) or truncated l2 (l2) example");
  counter->add_option("kind", cmd.kind)->required()->check(CLI::IsMember({"r2", "l2"}));
  counter->add_option("--n", cmd.n, "truncation dimension (l2)")->check(CLI::Range(4, 4096));
  counter->add_option("--z-index", cmd.z_index, "1 or 2 (l2)")->check(CLI::IsMember({1, 2}));
  auto* dirichlet = app.add_subcommand("dirichlet", "finite-difference Dirichlet problem audit");
  dirichlet->add_option("--n", cmd.n, "interior grid points")->check(CLI::Range(3, 2000));
  dirichlet->add_option("--phi", cmd.phi)->check(CLI::IsMember({"one", "eig1", "eig2", "file"}));
  dirichlet->add_option("--grid", grid_text, "comma-separated radii");
  dirichlet->add_option("--from", from);
  dirichlet->add_option("--to", to);
  dirichlet->add_option("--steps", cmd.steps);
  (void)eig;
  (void)diagnose;

  std::vector<std::string> argv_storage;
  argv_storage.emplace_back("secular");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (!grid_text.empty()) cmd.grid = parse_grid(grid_text);
  } catch (const CLI::ParseError& e) {
    exit_code = app.exit(e, out, err) == 0 ? kSuccess : kInputError;
    return std::nullopt;
  }

  for (const auto& verb : kVerbs) {
    if (app.got_subcommand(verb)) cmd.verb = verb;
  }
  cmd.format = format == "csv" ? Format::Csv : Format::Json;
  if (!input.empty()) cmd.input = input;
  if (!output.empty()) cmd.output = output;
  CLI::App* active = app.get_subcommand(cmd.verb);
  auto given = [&](const char* flag) {
    const CLI::Option* opt = active->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--r")) cmd.r = r;
  if (given("--lambda")) cmd.lambda = lambda;
  if (given("--from")) cmd.from = from;
  if (given("--to")) cmd.to = to;
  return cmd;
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  std::optional<Instance> inst;
  try {
    if (cmd.input && cmd.verb != "dirichlet" && cmd.verb != "counterexample") {
      inst = parse_instance(*cmd.input);
    }
    std::ofstream file;
    if (cmd.output) {
      file.open(*cmd.output);
      if (!file) throw Error(ErrorCode::IoError, "cannot write " + *cmd.output);
    }
    std::ostringstream report;
    run_verb(cmd, inst, report);
    (cmd.output ? static_cast<std::ostream&>(file) : out) << report.str();
    return kSuccess;
  } catch (const Error& e) {
    return emit_error(e.code(), e.what(), inst, out, err);
  } catch (const nlohmann::json::exception& e) {
    return emit_error(ErrorCode::SchemaError, e.what(), inst, out, err);
  }
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  int code = kSuccess;
  const auto cmd = parse(args, out, err, code);
  if (!cmd) return code;
  return run(*cmd, out, err);
}

}  // namespace secular::cli
