#include "symrigid/constructions.hpp"

#include "symrigid/errors.hpp"

#include <algorithm>
#include <set>

namespace symrigid {

const char* to_string(ExtensionKind kind) {
  switch (kind) {
    case ExtensionKind::zero: return "0-ext";
    case ExtensionKind::one: return "1-ext";
    case ExtensionKind::loop_one: return "loop-1-ext";
    case ExtensionKind::two: return "2-ext";
    case ExtensionKind::loop_two: return "loop-2-ext";
    case ExtensionKind::loop_zero: return "loop-0-ext";
  }
  return "?";
}

std::optional<ExtensionKind> extension_kind_from_string(const std::string& s) {
  for (auto k : {ExtensionKind::zero, ExtensionKind::one, ExtensionKind::loop_one, ExtensionKind::two,
                 ExtensionKind::loop_two, ExtensionKind::loop_zero})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

int new_edge_count(ExtensionKind kind) {
  switch (kind) {
    case ExtensionKind::zero: return 2;
    case ExtensionKind::loop_one: return 2;
    case ExtensionKind::one: return 3;
    case ExtensionKind::loop_two: return 3;
    case ExtensionKind::two: return 4;
    case ExtensionKind::loop_zero: return 2;
  }
  return 0;
}

namespace {

std::size_t attach_arity(ExtensionKind kind) {
  switch (kind) {
    case ExtensionKind::zero: return 2;
    case ExtensionKind::loop_one: return 1;
    case ExtensionKind::one: return 3;
    case ExtensionKind::loop_two: return 2;
    case ExtensionKind::two: return 4;
    case ExtensionKind::loop_zero: return 0;
  }
  return 0;
}

std::size_t removed_arity(ExtensionKind kind) {
  switch (kind) {
    case ExtensionKind::one:
    case ExtensionKind::loop_two: return 1;
    case ExtensionKind::two: return 2;
    default: return 0;
  }
}

bool joins(const Edge& e, int a, int b) { return (e.tail == a && e.head == b) || (e.tail == b && e.head == a); }

void check_step(const MultiGraph& g, const ExtensionStep& step) {
  std::string name = to_string(step.kind);
  if (step.attach.size() != attach_arity(step.kind))
    throw Error(ErrorCode::invalid_step, name + " needs " + std::to_string(attach_arity(step.kind)) + " attachment vertices");
  if (step.removed.size() != removed_arity(step.kind))
    throw Error(ErrorCode::invalid_step, name + " removes " + std::to_string(removed_arity(step.kind)) + " edges");
  for (int v : step.attach)
    if (v < 0 || v >= g.vertex_count()) throw Error(ErrorCode::invalid_step, name + ": attachment vertex out of range");
  std::set<EdgeId> distinct(step.removed.begin(), step.removed.end());
  if (distinct.size() != step.removed.size()) throw Error(ErrorCode::invalid_step, name + ": removed edges repeat");
  for (std::size_t i = 0; i < step.removed.size(); ++i) {
    EdgeId e = step.removed[i];
    if (e < 0 || e >= g.edge_count()) throw Error(ErrorCode::invalid_step, name + ": removed edge out of range");
    if (!joins(g.edge(e), step.attach[2 * i], step.attach[2 * i + 1]))
      throw Error(ErrorCode::invalid_step, name + ": removed edge " + std::to_string(e) + " does not join its attachment pair");
  }
}

// Gain of a removed edge read from the first vertex of its attachment pair.
GroupElement removed_gain(const GainGraph& gg, const ExtensionStep& step, std::size_t i) {
  return gg.gain(step.removed[i], step.attach[2 * i]);
}

std::vector<GroupElement> candidates(const SymmetryGroup& group) {
  if (group.is_finite()) return group.enumerate();
  return group.sample_elements(64);
}

GroupElement first_non_identity(const SymmetryGroup& group) {
  for (const auto& g : candidates(group))
    if (!group.is_identity(g)) return g;
  throw Error(ErrorCode::no_valid_gains, "group has no non-identity element");
}

bool is_reflection_like(const SymmetryGroup& group, const GroupElement& g) {
  return group.linear_part(g).determinant() < 0;
}

// A reflection together with a non-identity rotation; they generate a dihedral group.
std::pair<GroupElement, GroupElement> dihedral_pair(const SymmetryGroup& group) {
  std::optional<GroupElement> reflection, rotation;
  for (const auto& g : candidates(group)) {
    if (group.is_identity(g)) continue;
    if (is_reflection_like(group, g)) {
      if (!reflection) reflection = g;
    } else if (!rotation) {
      rotation = g;
    }
  }
  if (!reflection || !rotation)
    throw Error(ErrorCode::no_valid_gains, "group needs both a reflection and a non-trivial rotation");
  return {*reflection, *rotation};
}

}  // namespace

int two_extension_case(const std::vector<int>& a) {
  if (a.size() != 4) throw Error(ErrorCode::invalid_argument, "2-extension has four attachment vertices");
  const bool loop1 = a[0] == a[1], loop2 = a[2] == a[3];
  std::set<int> first{a[0], a[1]}, second{a[2], a[3]};
  int shared = 0;
  for (int v : first) shared += second.count(v) ? 1 : 0;
  if (shared == 0) return 1;
  if (loop1 && loop2) return 5;
  if (loop1 || loop2) return 4;
  if (shared == 2) return 3;
  return 2;
}

MultiGraph apply_extension(const MultiGraph& g, const ExtensionStep& step) {
  check_step(g, step);
  MultiGraph out = g.without_edges(step.removed);
  int v0 = out.add_vertex();
  switch (step.kind) {
    case ExtensionKind::loop_zero:
      out.add_edge(v0, v0);
      out.add_edge(v0, v0);
      break;
    case ExtensionKind::loop_one:
      out.add_edge(v0, step.attach[0]);
      out.add_edge(v0, v0);
      break;
    case ExtensionKind::loop_two:
      out.add_edge(v0, step.attach[0]);
      out.add_edge(v0, step.attach[1]);
      out.add_edge(v0, v0);
      break;
    default:
      for (int v : step.attach) out.add_edge(v0, v);
  }
  return out;
}

GainGraph apply_gained_extension(const GainGraph& gg, const ExtensionStep& step) {
  MultiGraph g = apply_extension(gg.graph, step);
  const auto& group = gg.group;
  const std::string name = to_string(step.kind);
  if (static_cast<int>(step.gains.size()) != new_edge_count(step.kind))
    throw Error(ErrorCode::invalid_step, name + " needs " + std::to_string(new_edge_count(step.kind)) + " gains");
  for (const auto& x : step.gains)
    if (!group.contains(x)) throw Error(ErrorCode::mixed_groups, name + ": gain from another group");

  const auto& nu = step.gains;
  auto require_pair = [&](std::size_t pair, std::size_t a, std::size_t b) {
    // Walk v_a -> v0 -> v_b must reproduce the removed edge's gain.
    GroupElement walk = group.compose(group.inverse(nu[a]), nu[b]);
    if (walk != removed_gain(gg, step, pair))
      throw Error(ErrorCode::invalid_step, name + ": gain(e'" + std::to_string(a + 1) + ")^-1 * gain(e'" +
                                               std::to_string(b + 1) + ") must equal the removed edge's gain");
  };
  switch (step.kind) {
    case ExtensionKind::one:
    case ExtensionKind::loop_two: require_pair(0, 0, 1); break;
    case ExtensionKind::two:
      require_pair(0, 0, 1);
      require_pair(1, 2, 3);
      break;
    case ExtensionKind::loop_zero:
      if (group.is_identity(nu[0]) || group.is_identity(nu[1]) || nu[0] == nu[1])
        throw Error(ErrorCode::invalid_step, name + ": loop gains must be distinct and non-trivial");
      if (!is_reflection_like(group, nu[0]) && !is_reflection_like(group, nu[1]))
        throw Error(ErrorCode::invalid_step, name + ": loop gains must generate a dihedral group");
      break;
    default: break;
  }

  std::vector<GroupElement> gains;
  std::vector<bool> removed(gg.graph.edge_count(), false);
  for (EdgeId e : step.removed) removed[e] = true;
  for (EdgeId e = 0; e < gg.graph.edge_count(); ++e)
    if (!removed[e]) gains.push_back(gg.gains[e]);
  gains.insert(gains.end(), nu.begin(), nu.end());
  GainGraph out(std::move(g), group, std::move(gains));
  auto violations = validate(out);
  if (!violations.empty()) throw Error(ErrorCode::invalid_step, name + ": " + violations.front().message);
  return out;
}

GainChoice choose_gains_0ext(const GainGraph& gg, const ExtensionStep& step) {
  check_step(gg.graph, step);
  const auto& group = gg.group;
  if (step.attach[0] != step.attach[1]) return {{group.identity(), group.identity()}, 0};
  return {{group.identity(), first_non_identity(group)}, 0};
}

GainChoice choose_gains_loop1ext(const GainGraph& gg, const ExtensionStep& step) {
  check_step(gg.graph, step);
  return {{gg.group.identity(), first_non_identity(gg.group)}, 0};
}

GainChoice choose_gains_1ext(const GainGraph& gg, const ExtensionStep& step) {
  check_step(gg.graph, step);
  const auto& group = gg.group;
  const int v1 = step.attach[0], v2 = step.attach[1], v3 = step.attach[2];
  GroupElement gamma = removed_gain(gg, step, 0);
  GroupElement one = group.identity();
  std::vector<GroupElement> nu;
  if (v3 == v2 && v2 != v1)
    nu = {group.inverse(gamma), one};
  else
    nu = {one, gamma};
  for (const auto& lambda : candidates(group)) {
    if (v3 == v1 && lambda == nu[0]) continue;
    if (v3 == v2 && lambda == nu[1]) continue;
    if (group.is_identity(lambda)) continue;
    nu.push_back(lambda);
    return {nu, 0};
  }
  throw Error(ErrorCode::no_valid_gains, "1-extension: no third gain distinct from its parallel edges");
}

GainChoice choose_gains_2ext(const GainGraph& gg, const ExtensionStep& step) {
  check_step(gg.graph, step);
  const auto& group = gg.group;
  const auto& a = step.attach;
  GroupElement g1 = removed_gain(gg, step, 0), g2 = removed_gain(gg, step, 1);
  GroupElement one = group.identity();
  // nu = (1, g1, lambda, lambda g2); new edges to equal endpoints need distinct gains.
  for (const auto& lambda : candidates(group)) {
    std::vector<GroupElement> nu{one, g1, lambda, group.compose(lambda, g2)};
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i)
      for (int j = i + 1; j < 4 && ok; ++j)
        if (a[i] == a[j] && nu[i] == nu[j]) ok = false;
    if (ok) return {nu, two_extension_case(a)};
  }
  throw Error(ErrorCode::no_valid_gains, "2-extension: group too small for this attachment pattern");
}

GainChoice choose_gains_loop2ext(const GainGraph& gg, const ExtensionStep& step) {
  check_step(gg.graph, step);
  const auto& group = gg.group;
  return {{group.identity(), removed_gain(gg, step, 0), first_non_identity(group)}, 0};
}

GainChoice choose_gains_loop0ext(const GainGraph& gg, const ExtensionStep& step) {
  check_step(gg.graph, step);
  auto [s, r] = dihedral_pair(gg.group);
  return {{s, r}, 0};
}

GainChoice choose_gains(const GainGraph& gg, const ExtensionStep& step) {
  switch (step.kind) {
    case ExtensionKind::zero: return choose_gains_0ext(gg, step);
    case ExtensionKind::one: return choose_gains_1ext(gg, step);
    case ExtensionKind::loop_one: return choose_gains_loop1ext(gg, step);
    case ExtensionKind::two: return choose_gains_2ext(gg, step);
    case ExtensionKind::loop_two: return choose_gains_loop2ext(gg, step);
    case ExtensionKind::loop_zero: return choose_gains_loop0ext(gg, step);
  }
  throw Error(ErrorCode::internal, "unknown extension kind");
}

namespace detail {
std::pair<GroupElement, GroupElement> base_dihedral_pair(const SymmetryGroup& group) { return dihedral_pair(group); }
GroupElement base_loop_gain(const SymmetryGroup& group) { return first_non_identity(group); }
}  // namespace detail

}  // namespace symrigid
