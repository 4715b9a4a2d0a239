#include "gflab/classification.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "gflab/errors.hpp"

namespace gflab {

namespace {

bool is_asym(MomentKind m) {
  return m == MomentKind::asym || m == MomentKind::asym_local ||
         m == MomentKind::asym_global || m == MomentKind::asym_local_derivs ||
         m == MomentKind::asym_global_derivs;
}

int param_rank(ParamKind p) {
  switch (p) {
    case ParamKind::constant: return 0;
    case ParamKind::eps: return 1;
    case ParamKind::eps_x: return 2;
  }
  return -1;
}

// Does the moment property of a Y-object (living at parameter kind p_y)
// certify the property m_x? Objects without x-dependence satisfy every
// uniformity grade at once; among the x-dependent grades the order is
//   Ag^inf <= {Ag, Al^inf} <= Al.
bool moments_imply(MomentKind m_y, ParamKind p_y, MomentKind m_x) {
  if (m_x == MomentKind::mass_only) return true;
  if (m_y == MomentKind::vanishing) return true;
  if (m_x == MomentKind::vanishing) return false;
  if (m_y == MomentKind::mass_only) return false;
  // both asymptotic kinds from here on
  if (p_y != ParamKind::eps_x) return true;  // x-independent object
  switch (m_y) {
    case MomentKind::asym_global_derivs:
      return true;
    case MomentKind::asym_global:
      return m_x == MomentKind::asym_global || m_x == MomentKind::asym_local;
    case MomentKind::asym_local_derivs:
      return m_x == MomentKind::asym_local_derivs ||
             m_x == MomentKind::asym_local;
    case MomentKind::asym_local:
      return m_x == MomentKind::asym_local;
    default:
      return false;
  }
}

const std::vector<std::pair<TypeTag, TypeTag>>& diagram_edges() {
  using P = ParamKind;
  using M = MomentKind;
  static const std::vector<std::pair<TypeTag, TypeTag>> edges = {
      {{P::eps_x, M::mass_only}, {P::eps, M::mass_only}},
      {{P::eps, M::mass_only}, {P::constant, M::mass_only}},
      {{P::eps_x, M::mass_only}, {P::eps_x, M::asym_global_derivs}},
      {{P::eps, M::mass_only}, {P::eps, M::asym}},
      {{P::constant, M::mass_only}, {P::constant, M::vanishing}},
      {{P::eps_x, M::asym_local}, {P::eps_x, M::asym_global_derivs}},
      {{P::eps_x, M::asym_global_derivs}, {P::eps, M::asym}},
      {{P::eps_x, M::asym_global_derivs}, {P::eps_x, M::vanishing}},
      {{P::eps, M::asym}, {P::eps, M::vanishing}},
      {{P::eps_x, M::vanishing}, {P::eps, M::vanishing}},
      {{P::eps, M::vanishing}, {P::constant, M::vanishing}},
  };
  return edges;
}

TypeTag class_representative(TypeTag tag) {
  // The three grades with global or derivative uniformity induce the same
  // moderate and negligible functions; Ag^inf stands for the merged class.
  if (tag.param == ParamKind::eps_x &&
      (tag.moments == MomentKind::asym_global ||
       tag.moments == MomentKind::asym_local_derivs))
    return {ParamKind::eps_x, MomentKind::asym_global_derivs};
  return tag;
}

}  // namespace

bool valid_tag(TypeTag tag) {
  switch (tag.moments) {
    case MomentKind::mass_only:
    case MomentKind::vanishing:
      return true;
    case MomentKind::asym:
      return tag.param == ParamKind::eps;
    default:
      return tag.param == ParamKind::eps_x;
  }
}

std::vector<TypeTag> enumerate_types() {
  using P = ParamKind;
  using M = MomentKind;
  return {
      {P::constant, M::mass_only}, {P::constant, M::vanishing},
      {P::eps, M::mass_only},      {P::eps, M::asym},
      {P::eps, M::vanishing},      {P::eps_x, M::mass_only},
      {P::eps_x, M::asym_local},   {P::eps_x, M::asym_global},
      {P::eps_x, M::asym_local_derivs},
      {P::eps_x, M::asym_global_derivs},
      {P::eps_x, M::vanishing},
  };
}

std::string tag_to_string(TypeTag tag) {
  std::string p;
  switch (tag.param) {
    case ParamKind::constant: p = "c"; break;
    case ParamKind::eps: p = "e"; break;
    case ParamKind::eps_x: p = "ex"; break;
  }
  std::string m;
  switch (tag.moments) {
    case MomentKind::mass_only: m = "0"; break;
    case MomentKind::vanishing: m = "V"; break;
    case MomentKind::asym: m = "A"; break;
    case MomentKind::asym_local: m = "Al"; break;
    case MomentKind::asym_global: m = "Ag"; break;
    case MomentKind::asym_local_derivs: m = "Alinf"; break;
    case MomentKind::asym_global_derivs: m = "Aginf"; break;
  }
  return p + ":" + m;
}

TypeTag parse_tag(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("parse_tag: expected '<param>:<moments>', got '" +
                                text + "'");
  const std::string p = text.substr(0, colon);
  const std::string m = text.substr(colon + 1);
  TypeTag tag{};
  if (p == "c") tag.param = ParamKind::constant;
  else if (p == "e") tag.param = ParamKind::eps;
  else if (p == "ex") tag.param = ParamKind::eps_x;
  else throw std::invalid_argument("parse_tag: unknown parameter kind '" + p + "'");
  if (m == "0") tag.moments = MomentKind::mass_only;
  else if (m == "V") tag.moments = MomentKind::vanishing;
  else if (m == "A") tag.moments = MomentKind::asym;
  else if (m == "Al") tag.moments = MomentKind::asym_local;
  else if (m == "Ag") tag.moments = MomentKind::asym_global;
  else if (m == "Alinf") tag.moments = MomentKind::asym_local_derivs;
  else if (m == "Aginf") tag.moments = MomentKind::asym_global_derivs;
  else throw std::invalid_argument("parse_tag: unknown moment kind '" + m + "'");
  if (!valid_tag(tag))
    throw std::invalid_argument("parse_tag: invalid combination '" + text + "'");
  return tag;
}

bool testclass_leq(TypeTag x, TypeTag y) {
  if (!valid_tag(x) || !valid_tag(y))
    throw std::invalid_argument("testclass_leq: invalid tag");
  if (param_rank(y.param) > param_rank(x.param)) return false;
  return moments_imply(y.moments, y.param, x.moments);
}

std::vector<std::pair<TypeTag, TypeTag>> admissible_quotients() {
  std::vector<std::pair<TypeTag, TypeTag>> pairs;
  for (TypeTag x : enumerate_types()) {
    for (TypeTag y : enumerate_types()) {
      if (y.moments == MomentKind::mass_only) continue;
      if (testclass_leq(x, y)) pairs.emplace_back(x, y);
    }
  }
  if (pairs.size() != 46)
    throw LatticeError("admissible_quotients: encoded order yields " +
                       std::to_string(pairs.size()) + " pairs, expected 46");
  return pairs;
}

std::vector<AlgebraId> equivalence_classes() {
  std::vector<AlgebraId> classes;
  for (TypeTag tag : enumerate_types()) {
    const TypeTag rep = class_representative(tag);
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const AlgebraId& a) { return a.representative == rep; });
    if (it == classes.end()) {
      classes.push_back(AlgebraId{rep, {tag}, {}});
    } else {
      it->members.push_back(tag);
    }
  }
  for (AlgebraId& a : classes) {
    const std::string s = tag_to_string(a.representative);
    if (s == "ex:0") a.known_names = {"G^d"};
    else if (s == "e:A") a.known_names = {"G^1"};
    else if (s == "ex:Aginf") a.known_names = {"G^2"};
    else if (s == "c:V") a.known_names = {"G^e_0"};
  }
  return classes;
}

AlgebraId named_algebra(const std::string& name) {
  for (const AlgebraId& a : equivalence_classes())
    for (const std::string& n : a.known_names)
      if (n == name) return a;
  throw std::invalid_argument("named_algebra: unknown name '" + name + "'");
}

std::vector<std::pair<TypeTag, TypeTag>> hom_edges() { return diagram_edges(); }

bool hom_exists(TypeTag from, TypeTag to) {
  const TypeTag a = class_representative(from);
  const TypeTag b = class_representative(to);
  if (a == b) return true;
  // depth-first reachability over the diagram's arrows
  std::vector<TypeTag> stack{a};
  std::vector<TypeTag> seen{a};
  while (!stack.empty()) {
    const TypeTag cur = stack.back();
    stack.pop_back();
    for (const auto& [u, v] : diagram_edges()) {
      if (!(u == cur)) continue;
      if (v == b) return true;
      if (std::find(seen.begin(), seen.end(), v) == seen.end()) {
        seen.push_back(v);
        stack.push_back(v);
      }
    }
  }
  return false;
}

bool hom_exists(const AlgebraId& from, const AlgebraId& to) {
  return hom_exists(from.representative, to.representative);
}

AlgebraFlags flags(const AlgebraId& algebra) {
  const std::string s = tag_to_string(algebra.representative);
  AlgebraFlags f;
  f.diffeo_invariant = (s == "ex:0" || s == "ex:Aginf" || s == "ex:Al");
  f.differential_algebra = (s != "ex:Al");
  f.iota_equals_sigma_on_smooth = (s != "ex:Al");
  return f;
}

std::string emit_dot() {
  std::ostringstream out;
  out << "digraph colombeau_algebras {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box];\n";
  for (const AlgebraId& a : equivalence_classes()) {
    const std::string s = tag_to_string(a.representative);
    out << "  \"" << s << "\" [label=\"G[" << s << "]";
    for (const std::string& n : a.known_names) out << " = " << n;
    if (a.members.size() > 1) {
      out << "\\n(also";
      for (TypeTag m : a.members)
        if (!(m == a.representative)) out << " " << tag_to_string(m);
      out << ")";
    }
    out << "\"];\n";
  }
  for (const auto& [u, v] : diagram_edges())
    out << "  \"" << tag_to_string(u) << "\" -> \"" << tag_to_string(v)
        << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace gflab
