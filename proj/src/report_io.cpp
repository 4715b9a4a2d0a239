#include "gflab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gflab {

namespace {

// JSON has no infinity; the saturated sentinel serializes as a string.
Json finite_or_tag(double v) {
  if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
  return Json(v);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Json order_estimate_to_json(const OrderEstimate& est) {
  Json j;
  j["exponent"] = finite_or_tag(est.exponent);
  j["prefactor_log"] = est.prefactor_log;
  j["residual_rms"] = est.residual_rms;
  j["n_points_used"] = est.n_points_used;
  j["window"] = {est.window_min, est.window_max};
  j["saturated"] = est.saturated;
  return j;
}

Json moment_report_to_json(const MomentReport& report) {
  Json j;
  j["pass"] = report.pass;
  j["tol"] = report.tol;
  Json res = Json::object();
  for (const auto& [k, r] : report.residuals) res[std::to_string(k)] = r;
  j["residuals"] = res;
  return j;
}

Json negligibility_report_to_json(const NegligibilityReport& report) {
  Json j;
  j["K"] = {report.K.lo, report.K.hi};
  j["n_target"] = report.n_target;
  j["family_id"] = report.family_id;
  j["derivative_order"] = report.derivative_order;
  j["q_found"] = report.q_found ? Json(*report.q_found) : Json(nullptr);
  Json per_q = Json::object();
  for (const auto& [q, est] : report.per_q_orders)
    per_q[std::to_string(q)] = order_estimate_to_json(est);
  j["per_q_orders"] = per_q;
  j["warnings"] = report.warnings;
  j["verdict"] = report.pass ? "pass" : "fail";
  return j;
}

Json derivative_negligibility_report_to_json(
    const DerivativeNegligibilityReport& report) {
  Json j;
  Json orders = Json::array();
  for (const NegligibilityReport& r : report.per_order)
    orders.push_back(negligibility_report_to_json(r));
  j["per_order"] = orders;
  j["verdict"] = report.pass ? "pass" : "fail";
  return j;
}

Json moderateness_report_to_json(const ModeratenessReport& report) {
  Json j;
  j["K"] = {report.K.lo, report.K.hi};
  j["family_id"] = report.family_id;
  j["growth"] = order_estimate_to_json(report.growth);
  j["n_max_growth"] = report.n_max_growth;
  j["verdict"] = report.moderate ? "moderate" : "fail";
  return j;
}

Json landau_report_to_json(const LandauReport& report) {
  Json j;
  j["n_target"] = report.n_target;
  j["q"] = report.q;
  j["N_measured"] = report.n_growth_measured;
  j["second_diff_growth"] = order_estimate_to_json(report.second_diff_growth);
  j["diff_quotient_order"] = order_estimate_to_json(report.diff_quotient_order);
  j["remainder_order"] = order_estimate_to_json(report.remainder_order);
  j["derivative_order"] = order_estimate_to_json(report.derivative_order);
  return j;
}

Json decay_table_to_json(const DecayTable& table) {
  Json j;
  j["functional"] = table.functional == Functional::P ? "P" : "Q";
  j["sigma"] = table.sigma == SigmaKind::partition ? "partition" : "smoothstep";
  Json orders = Json::object();
  for (const auto& [q, est] : table.orders)
    orders[std::to_string(q)] = order_estimate_to_json(est);
  j["orders"] = orders;
  Json hm = Json::object();
  for (const auto& [q, v] : table.half_moments) hm[std::to_string(q)] = v;
  j["half_moments"] = hm;
  return j;
}

Json witness_report_to_json(const WitnessReport& report) {
  Json j;
  j["q"] = report.q;
  j["note"] = report.note;
  j["family_id"] = report.family_id;
  Json per_t = Json::array();
  for (const WitnessMember& m : report.per_t) {
    Json e;
    e["t"] = m.t;
    e["order"] = m.order ? order_estimate_to_json(*m.order) : Json(nullptr);
    if (!m.note.empty()) e["note"] = m.note;
    per_t.push_back(e);
  }
  j["per_t"] = per_t;
  j["sup_order"] = order_estimate_to_json(report.sup_order);
  j["min_per_t_order"] = report.min_per_t_order;
  j["gap"] = report.gap;
  j["exhibit"] = report.exhibit;
  return j;
}

Json testfunction_to_json(const TestFunction& fn) {
  const auto atom_json = [](const BumpAtom& atom) {
    Json j;
    j["radius"] = atom.base_radius;
    j["coeffs"] = atom.coeffs;
    j["scale"] = atom.scale;
    j["amplitude"] = atom.amplitude;
    return j;
  };
  if (fn.atoms().size() == 1) return atom_json(fn.atoms().front());
  Json j;
  Json atoms = Json::array();
  for (const BumpAtom& atom : fn.atoms()) atoms.push_back(atom_json(atom));
  j["atoms"] = atoms;
  return j;
}

TestFunction testfunction_from_json(const Json& j) {
  const auto atom_from = [](const Json& a) {
    BumpAtom atom;
    atom.base_radius = a.at("radius").get<double>();
    atom.coeffs = a.at("coeffs").get<std::vector<double>>();
    atom.scale = a.value("scale", 1.0);
    atom.amplitude = a.value("amplitude", 1.0);
    if (!(atom.base_radius > 0.0))
      throw std::invalid_argument("testfunction_from_json: radius <= 0");
    return atom;
  };
  std::vector<BumpAtom> atoms;
  if (j.contains("atoms")) {
    for (const Json& a : j.at("atoms")) atoms.push_back(atom_from(a));
  } else {
    atoms.push_back(atom_from(j));
  }
  return TestFunction(std::move(atoms));
}

std::string sup_curves_csv(const NegligibilityReport& report) {
  std::ostringstream out;
  out << "# schema: negligibility-sup v1\n";
  out << "q,epsilon,sup_value\n";
  for (const auto& [q, curve] : report.per_q_curves)
    for (const auto& [eps, value] : curve.points)
      out << q << "," << format_double(eps) << "," << format_double(value)
          << "\n";
  return out.str();
}

std::string curve_csv(const std::string& schema,
                      std::span<const std::pair<double, double>> points) {
  std::ostringstream out;
  out << "# schema: " << schema << " v1\n";
  out << "epsilon,value\n";
  for (const auto& [eps, value] : points)
    out << format_double(eps) << "," << format_double(value) << "\n";
  return out.str();
}

std::string decay_table_csv(const DecayTable& table) {
  std::ostringstream out;
  out << "# schema: counterexample-decay v1\n";
  out << "q,epsilon,value,k_used,tail_bound\n";
  for (const DecayRow& row : table.rows)
    out << row.q << "," << format_double(row.eps) << ","
        << format_double(row.value) << "," << row.k_used << ","
        << format_double(row.tail_bound) << "\n";
  return out.str();
}

std::string witness_csv(const WitnessReport& report) {
  std::ostringstream out;
  out << "# schema: counterexample-witness v1\n";
  out << "t,epsilon,value,k_used,tail_bound\n";
  for (const WitnessRow& row : report.rows)
    out << format_double(row.t) << "," << format_double(row.eps) << ","
        << format_double(row.value) << "," << row.k_used << ","
        << format_double(row.tail_bound) << "\n";
  return out.str();
}

void atomic_write_file(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << contents;
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace gflab
