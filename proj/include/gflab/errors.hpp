#ifndef GFLAB_ERRORS_HPP
#define GFLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gflab {

// Mollifier construction failed (singular or hopelessly conditioned moment
// system).
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate(condition_estimate) {}
  double condition_estimate;
};

// A series evaluation hit the hard term cap before the certified tail bound
// reached the requested tolerance.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double tail_bound, int k_reached)
      : std::runtime_error(what), tail_bound(tail_bound), k_reached(k_reached) {}
  double tail_bound;
  int k_reached;
};

// A demonstration was invoked on a representative that fails its
// prerequisite test; carries the failing report as JSON text.
class PrerequisiteError : public std::runtime_error {
 public:
  PrerequisiteError(const std::string& what, std::string report_json)
      : std::runtime_error(what), report_json(std::move(report_json)) {}
  std::string report_json;
};

// The encoded type lattice is inconsistent with the pinned pair count.
class LatticeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gflab

#endif
