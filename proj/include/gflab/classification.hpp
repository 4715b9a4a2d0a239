#ifndef GFLAB_CLASSIFICATION_HPP
#define GFLAB_CLASSIFICATION_HPP

#include <string>
#include <utility>
#include <vector>

namespace gflab {

// Parameter kind of a test object: a fixed mollifier, an epsilon-path, or an
// (epsilon, x)-field.
enum class ParamKind { constant, eps, eps_x };

// Moment requirement attached to a test-object type.
//   mass_only            -- normalized mass, nothing else ([0])
//   vanishing            -- moments 1..q vanish exactly ([V])
//   asym                 -- moments 1..q are O(eps^q); eps-paths only ([A])
//   asym_local           -- O(eps^q) uniformly on the tested compact ([A_l])
//   asym_global          -- uniformly on every compact ([A_g])
//   asym_local_derivs    -- including all x-derivatives, on the tested
//                           compact ([A_l^inf])
//   asym_global_derivs   -- including all x-derivatives, on every compact
//                           ([A_g^inf])
enum class MomentKind {
  mass_only,
  vanishing,
  asym,
  asym_local,
  asym_global,
  asym_local_derivs,
  asym_global_derivs,
};

struct TypeTag {
  ParamKind param;
  MomentKind moments;

  bool operator==(const TypeTag&) const = default;
};

// True for the eleven admissible combinations: [A] requires an eps-path, the
// uniformity-graded variants require an (eps, x)-field.
bool valid_tag(TypeTag tag);

// The eleven valid types in a fixed, deterministic order.
std::vector<TypeTag> enumerate_types();

// Compact text form, e.g. "ex:Aginf", "c:V", "e:A".
std::string tag_to_string(TypeTag tag);
TypeTag parse_tag(const std::string& text);

// True iff every test object of class Y is also one of class X, so that
// testing against X is at least as demanding and E_M[X] <= E_M[Y].
bool testclass_leq(TypeTag x, TypeTag y);

// All pairs (X, Y) with testclass_leq(X, Y) and Y of exact or asymptotic
// moment kind; these are the pairs for which E_M[X] / (N[Y] cap E_M[X]) is an
// algebra. Throws LatticeError unless the count comes out at 46.
std::vector<std::pair<TypeTag, TypeTag>> admissible_quotients();

// One algebra up to equal moderate/negligible classes.
struct AlgebraId {
  TypeTag representative;
  std::vector<TypeTag> members;           // types collapsing onto this one
  std::vector<std::string> known_names;   // e.g. "G^d"

  bool operator==(const AlgebraId& other) const {
    return representative == other.representative;
  }
};

// The nine algebras left after merging the types with identical
// moderateness/negligibility notions (the three global/derivative-graded
// asymptotic variants collapse).
std::vector<AlgebraId> equivalence_classes();

// Lookup by conventional name: "G^d", "G^1", "G^2", "G^e_0".
AlgebraId named_algebra(const std::string& name);

// Reachability in the canonical-homomorphism diagram (reflexive and closed
// under composition). The stored edges are exactly the diagram's arrows.
bool hom_exists(const AlgebraId& from, const AlgebraId& to);
bool hom_exists(TypeTag from, TypeTag to);

// Edges of the diagram between the nine representative tags.
std::vector<std::pair<TypeTag, TypeTag>> hom_edges();

struct AlgebraFlags {
  bool diffeo_invariant = false;
  bool differential_algebra = false;
  bool iota_equals_sigma_on_smooth = false;
};

AlgebraFlags flags(const AlgebraId& algebra);

// GraphViz rendering of the nine algebras and the diagram arrows;
// byte-stable across runs.
std::string emit_dot();

}  // namespace gflab

#endif
