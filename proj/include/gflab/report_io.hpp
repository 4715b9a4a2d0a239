#ifndef GFLAB_REPORT_IO_HPP
#define GFLAB_REPORT_IO_HPP

#include <string>

#include <json.hpp>

#include "gflab/counterexamples.hpp"
#include "gflab/embedding.hpp"
#include "gflab/testing.hpp"

namespace gflab {

using Json = nlohmann::ordered_json;

Json order_estimate_to_json(const OrderEstimate& est);
Json moment_report_to_json(const MomentReport& report);
Json negligibility_report_to_json(const NegligibilityReport& report);
Json derivative_negligibility_report_to_json(
    const DerivativeNegligibilityReport& report);
Json moderateness_report_to_json(const ModeratenessReport& report);
Json landau_report_to_json(const LandauReport& report);
Json decay_table_to_json(const DecayTable& table);
Json witness_report_to_json(const WitnessReport& report);

// External schema: single-term functions serialize flat as
// {"radius":, "coeffs":, "scale":, "amplitude":}; sums carry an "atoms" list.
Json testfunction_to_json(const TestFunction& fn);
TestFunction testfunction_from_json(const Json& j);

// CSV bodies (first line is a schema tag comment, second the header row).
std::string sup_curves_csv(const NegligibilityReport& report);
std::string curve_csv(const std::string& schema,
                      std::span<const std::pair<double, double>> points);
std::string decay_table_csv(const DecayTable& table);
std::string witness_csv(const WitnessReport& report);

// Write-then-rename so partially written outputs never appear.
void atomic_write_file(const std::string& path, const std::string& contents);

}  // namespace gflab

#endif
