#include "symrigid/constructions.hpp"
#include "symrigid/document.hpp"
#include "symrigid/errors.hpp"
#include "symrigid/probability.hpp"
#include "symrigid/render.hpp"
#include "symrigid/rigidity.hpp"
#include "symrigid/sparsity.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace symrigid;

namespace {

enum Exit { ok = 0, property_false = 1, input_error = 2, cap_hit = 3 };

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_tight:
    case ErrorCode::no_valid_gains:
    case ErrorCode::rank_deficient:
    case ErrorCode::decomposition_impossible: return property_false;
    case ErrorCode::size_cap:
    case ErrorCode::resource_cap: return cap_hit;
    default: return input_error;
  }
}

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

Document load(const std::string& path, bool require_gains) { return parse_document(slurp(path), require_gains); }

void emit(const Json& j) { std::cout << canonical_json(j); }

SymmetryGroup group_argument(const std::string& text) {
  std::string body = !text.empty() && text.front() == '{' ? text : slurp(text);
  Json j;
  try {
    j = Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::schema, std::string("--group: malformed JSON: ") + e.what());
  }
  if (j.contains("group")) return group_from_json(j["group"]);
  return group_from_json(j, "--group");
}

GainGraph uniform_gains(const MultiGraph& g, const SymmetryGroup& group) { return with_identity_gains(g, group); }

struct Options {
  std::string file = "-";
  int k = 2, l = 3, m = -1;
  int trials = 3;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string method, target, mode = "orbit";
  bool forbid_triples = false, forbid_quadruples = false, exact = false, identities = false;
  std::uint64_t samples = 0, cap = 1ULL << 24;
  int dim = 2, copies = 2;
  double theta = 1e-2, delta = 1e-3;
  std::string group, other;
  double prob = 0.5, q = 0.5, eps = 0.05;
};

int check_sparsity(const Options& o) {
  Document doc = load(o.file, o.m >= 0);
  Json out{{"k", o.k}, {"l", o.l}, {"vertices", doc.gg.graph.vertex_count()}, {"edges", doc.gg.graph.edge_count()}};
  bool tight;
  if (o.m >= 0) {
    out["m"] = o.m;
    out["sparse"] = is_gain_sparse(doc.gg, o.k, o.l, o.m);
    tight = is_gain_tight(doc.gg, o.k, o.l, o.m);
  } else {
    out["sparse"] = is_sparse(doc.gg.graph, o.k, o.l);
    tight = is_tight(doc.gg.graph, o.k, o.l);
  }
  out["tight"] = tight;
  emit(out);
  return tight ? ok : property_false;
}

int check_rigidity(const Options& o) {
  Document doc = load(o.file, true);
  RankReport r = doc.placement ? rank_at(doc.gg, *doc.placement) : is_symmetrically_rigid(doc.gg, o.trials, o.seed);
  Json out = to_json(r);
  out["placement"] = doc.placement ? "given" : "random";
  emit(out);
  return r.rigid ? ok : property_false;
}

int lift(const Options& o) {
  Document doc = load(o.file, true);
  if (!doc.gg.group.is_finite()) throw Error(ErrorCode::unsupported_enumeration, "lifting needs a finite group");
  CoveringGraph cover = covering_graph(doc.gg);
  const int d = doc.gg.dimension();
  Document out;
  MultiGraph g(static_cast<int>(cover.vertices.size()));
  for (const auto& [a, b] : cover.edges) g.add_edge(a, b);
  SymmetryGroup plain = SymmetryGroup::trivial(d);
  out.gg = uniform_gains(g, plain);
  out.has_group = true;
  out.has_gains = false;
  for (std::size_t i = 0; i < cover.vertices.size(); ++i)
    out.names.push_back(doc.names[cover.vertices[i].base] + "@" + std::to_string(i % cover.elements.size()));
  if (doc.placement) out.placement = lift_placement(doc.gg, *doc.placement);
  Json elements = Json::array();
  for (const auto& e : cover.elements) elements.push_back(element_to_json(doc.gg.group, e));
  Json base_edges = Json::array();
  for (EdgeId e : cover.base_edge) base_edges.push_back(e);
  out.extra = {{"elements", elements}, {"base_edge", base_edges}};
  std::cout << serialize_document(out);
  return ok;
}

int assign_gains(const Options& o) {
  Document doc = load(o.file, false);
  const MultiGraph& g = doc.gg.graph;
  auto need_group = [&] {
    if (!doc.has_group) throw Error(ErrorCode::schema, "$: missing field 'group'");
    return doc.gg.group;
  };
  Document out;
  if (o.method == "2d") {
    out = make_document(assign_rigid_gains_2d(g, need_group(), o.seed));
  } else if (o.method == "periodic") {
    out = make_document(assign_gains_periodic(g, need_group()));
  } else if (o.method == "trans-point") {
    out = make_document(assign_gains_trans_point(g, need_group()));
  } else if (o.method == "trans-inv") {
    out = make_document(assign_gains_trans_inversion(g, need_group()));
  } else if (o.method == "dense") {
    const int d = doc.has_group ? doc.gg.dimension() : o.dim;
    DenseAssignment a = assign_gains_dense(g, d, o.theta, o.delta);
    out = make_document(a.gains, a.placement);
    out.extra = {{"theta", a.theta}, {"delta", a.delta}, {"rank", a.rank}, {"halvings", a.halvings}};
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown method '" + o.method + "'");
  }
  out.names = doc.names;
  std::cout << serialize_document(out);
  return ok;
}

int construct_sequence(const Options& o) {
  Document doc = load(o.file, false);
  ConstructionSequence seq;
  if (o.target == "k11") {
    if (o.forbid_quadruples) throw Error(ErrorCode::invalid_argument, "--forbid-quadruples belongs to the k12 target");
    seq = reduction_sequence_21(doc.gg.graph, o.forbid_triples);
  } else if (o.target == "k12") {
    if (o.forbid_triples) throw Error(ErrorCode::invalid_argument, "--forbid-triples belongs to the k11 target");
    seq = reduction_sequence_20(doc.gg.graph, o.forbid_quadruples);
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown target '" + o.target + "'");
  }
  emit(to_json(seq));
  return ok;
}

int probability(const Options& o) {
  Document doc = load(o.file, false);
  if (!doc.has_group) throw Error(ErrorCode::schema, "$: missing field 'group'");
  if (o.exact == (o.samples > 0)) throw Error(ErrorCode::invalid_argument, "give exactly one of --exact or --samples");
  ProbabilityOptions opt;
  opt.trials = o.trials;
  opt.seed = o.seed;
  opt.workers = o.workers;
  opt.cap = o.cap;
  ProbabilityReport r = o.exact ? probability_exact(doc.gg.graph, doc.gg.group, opt)
                                : probability_monte_carlo(doc.gg.graph, doc.gg.group, o.samples, opt);
  Json out = to_json(r);
  if (o.identities) out["identities"] = to_json(probability_invariance_suite(doc.gg.graph, doc.gg.group, opt));
  emit(out);
  return ok;
}

int generate(const std::string& kind, const Options& o) {
  if (kind == "gammah") {
    std::cout << serialize_document(make_document(build_gammah(group_argument(o.group))));
    return ok;
  }
  if (kind == "join") {
    Document a = load(o.file, false), b = load(o.other, false);
    if (a.has_group && b.has_group && !(a.gg.group == b.gg.group))
      throw Error(ErrorCode::mixed_groups, "joined documents use different groups");
    if (a.has_gains && b.has_gains) {
      std::cout << serialize_document(make_document(join_k_edges(a.gg, b.gg, o.k)));
      return ok;
    }
    Document out;
    out.gg = uniform_gains(join_k_edges(a.gg.graph, b.gg.graph, o.k), a.gg.group);
    out.has_group = a.has_group;
    for (int v = 0; v < out.gg.graph.vertex_count(); ++v) out.names.push_back(std::to_string(v));
    std::cout << serialize_document(out);
    return ok;
  }
  Document base = load(o.file, false);
  Document out;
  out.has_group = base.has_group;
  if (kind == "bigprob") {
    out.gg = uniform_gains(build_bigprob(base.gg.graph, o.copies, o.dim), base.gg.group);
    out.extra = {{"copies", o.copies}};
  } else if (kind == "qepsilon") {
    QEpsilon qe = build_qepsilon(base.gg.graph, o.prob, o.k, o.q, o.eps);
    out.gg = uniform_gains(qe.graph, base.gg.group);
    out.extra = {{"copies", qe.copies}, {"predicted", qe.predicted}};
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown generator '" + kind + "'");
  }
  for (int v = 0; v < out.gg.graph.vertex_count(); ++v) out.names.push_back(std::to_string(v));
  std::cout << serialize_document(out);
  return ok;
}

int render(const Options& o) {
  Document doc = load(o.file, true);
  Placement p;
  if (doc.placement) {
    p = *doc.placement;
  } else {
    std::mt19937_64 rng(derive_seed(o.seed, 0));
    p = random_placement(doc.gg.graph.vertex_count(), doc.gg.group, rng);
  }
  std::cout << render_svg(doc.gg, p, render_mode_from_string(o.mode));
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric and periodic framework rigidity toolkit", "symrigid"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "symrigid 0.1.0");
  Options o;
  std::string gen_kind;

  auto* sparsity = app.add_subcommand("check-sparsity", "Test (k,l)-sparsity, or (k,l,m)-gain-sparsity with --m; exit 0 iff tight");
  sparsity->add_option("--k", o.k, "Per-vertex count k")->required();
  sparsity->add_option("--l", o.l, "Global offset l")->required();
  sparsity->add_option("--m", o.m, "Offset for balanced edge sets (enables gain sparsity)");
  sparsity->add_option("FILE", o.file, "Gain-graph document, or - for stdin")->required();

  auto* rigidity = app.add_subcommand("check-rigidity", "Decide forced-symmetric infinitesimal rigidity; exit 1 if flexible");
  rigidity->add_option("--trials", o.trials, "Random placements to try")->capture_default_str()->check(CLI::PositiveNumber);
  rigidity->add_option("--seed", o.seed, "Seed for placements")->capture_default_str();
  rigidity->add_option("FILE", o.file, "Gain-graph document, or - for stdin")->required();

  auto* lifting = app.add_subcommand("lift", "Write the covering graph of a finite-group gain graph");
  lifting->add_option("FILE", o.file, "Gain-graph document, or - for stdin")->required();

  auto* assign = app.add_subcommand("assign-gains", "Attach a rigid gain map to a tight multigraph");
  assign->add_option("--method", o.method, "Assignment method")
      ->required()
      ->check(CLI::IsMember({"2d", "periodic", "trans-point", "trans-inv", "dense"}));
  assign->add_option("--seed", o.seed, "Seed for the rigidity check (2d)")->capture_default_str();
  assign->add_option("--dim", o.dim, "Dimension when the document has no group (dense)")->capture_default_str();
  assign->add_option("--theta", o.theta, "Rotation angle of the surrogate group (dense)")->capture_default_str();
  assign->add_option("--delta", o.delta, "Placement spread (dense)")->capture_default_str();
  assign->add_option("FILE", o.file, "Document with vertices, edges and (except dense) a group")->required();

  auto* sequence = app.add_subcommand("construct-sequence", "Find an extension sequence from a one-vertex base");
  sequence->add_option("--target", o.target, "k11 for (2,1)-tight graphs, k12 for (2,0)-tight graphs")
      ->required()
      ->check(CLI::IsMember({"k11", "k12"}));
  auto* triples = sequence->add_flag("--forbid-triples", o.forbid_triples, "Keep intermediate graphs free of parallel triples");
  auto* quads = sequence->add_flag("--forbid-quadruples", o.forbid_quadruples, "Keep intermediate graphs free of parallel quadruples");
  triples->excludes(quads);
  sequence->add_option("FILE", o.file, "Document with vertices and edges")->required();

  auto* prob = app.add_subcommand("probability", "Fraction of gain maps that give a rigid framework");
  auto* exact = prob->add_flag("--exact", o.exact, "Enumerate every gain map");
  auto* samples = prob->add_option("--samples", o.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  exact->excludes(samples);
  prob->add_option("--seed", o.seed, "Seed for placements and samples")->capture_default_str();
  prob->add_option("--workers", o.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  prob->add_option("--trials", o.trials, "Shared placements per map")->capture_default_str()->check(CLI::PositiveNumber);
  prob->add_option("--cap", o.cap, "Largest gain-map space enumerated exactly")->capture_default_str();
  prob->add_flag("--identities", o.identities, "Also check the extension and join identities");
  prob->add_option("FILE", o.file, "Document with vertices, edges and a finite group")->required();

  auto* gen = app.add_subcommand("generate", "Build a named family of graphs");
  gen->add_option("KIND", gen_kind, "Family to build")->required()->check(CLI::IsMember({"gammah", "join", "bigprob", "qepsilon"}));
  gen->add_option("--group", o.group, "Group literal or document path (gammah)");
  gen->add_option("--k", o.k, "Joining edges (join, qepsilon)")->capture_default_str();
  gen->add_option("--other", o.other, "Second document (join)");
  gen->add_option("--copies", o.copies, "Number of copies (bigprob)")->capture_default_str();
  gen->add_option("--dim", o.dim, "Dimension (bigprob)")->capture_default_str();
  gen->add_option("--p", o.prob, "Rigid fraction of the base graph (qepsilon)")->capture_default_str();
  gen->add_option("--q", o.q, "Target probability (qepsilon)")->capture_default_str();
  gen->add_option("--eps", o.eps, "Tolerance (qepsilon)")->capture_default_str();
  gen->add_option("FILE", o.file, "Base document (join, bigprob, qepsilon)");

  auto* draw = app.add_subcommand("render", "Draw a 2D or 3D gain graph as SVG");
  draw->add_option("--mode", o.mode, "orbit or cover")->capture_default_str()->check(CLI::IsMember({"orbit", "cover"}));
  draw->add_option("--seed", o.seed, "Seed for a placement when the document has none")->capture_default_str();
  draw->add_option("FILE", o.file, "Gain-graph document, or - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }

  try {
    if (*sparsity) return check_sparsity(o);
    if (*rigidity) return check_rigidity(o);
    if (*lifting) return lift(o);
    if (*assign) return assign_gains(o);
    if (*sequence) return construct_sequence(o);
    if (*prob) return probability(o);
    if (*gen) return generate(gen_kind, o);
    if (*draw) return render(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}
