#include "symrigid/document.hpp"

#include "symrigid/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace symrigid {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::schema, path + ": " + what);
}

const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(path, "missing field '" + key + "'");
  return *it;
}

std::int64_t as_int(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    double x = j.get<double>();
    if (std::floor(x) == x && std::abs(x) < 9e15) return static_cast<std::int64_t>(x);
  }
  schema_error(path, "expected an integer");
}

double as_double(const Json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

Eigen::MatrixXd as_matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty matrix");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) schema_error(path + "[0]", "expected a non-empty row");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    std::string rp = path + "[" + std::to_string(r) + "]";
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) schema_error(rp, "rows must have equal length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = as_double(row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

Eigen::VectorXd as_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = as_double(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::string number_text(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::invalid_argument, "cannot serialize a non-finite number");
  if (x == 0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void dump(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' '), close(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      dump(it.value(), indent + 2, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    bool flat = std::all_of(j.begin(), j.end(), scalar);
    if (flat) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        dump(j[i], indent, out);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      dump(j[i], indent + 2, out);
    }
    out += "\n" + close + "]";
  } else if (j.is_number_float()) {
    out += number_text(j.get<double>());
  } else {
    out += j.dump();
  }
}

int vertex_ref(const Json& j, const std::vector<std::string>& names, const std::string& path) {
  if (j.is_string()) {
    auto it = std::find(names.begin(), names.end(), j.get<std::string>());
    if (it == names.end()) schema_error(path, "unknown vertex '" + j.get<std::string>() + "'");
    return static_cast<int>(it - names.begin());
  }
  auto v = as_int(j, path);
  if (v < 0 || v >= static_cast<std::int64_t>(names.size())) schema_error(path, "vertex index out of range");
  return static_cast<int>(v);
}

GroupElement word_element(const SymmetryGroup& group, const std::string& word, const std::string& path) {
  auto gens = group.generators();
  GroupElement out = group.identity();
  std::istringstream in(word);
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2 || tok[0] != 'g') schema_error(path, "bad word token '" + tok + "'");
    bool inverse = false;
    std::string num = tok.substr(1);
    if (auto pos = num.find("^-1"); pos != std::string::npos && pos + 3 == num.size()) {
      inverse = true;
      num = num.substr(0, pos);
    }
    std::size_t idx = 0;
    try {
      idx = std::stoul(num);
    } catch (const std::exception&) {
      schema_error(path, "bad word token '" + tok + "'");
    }
    if (idx < 1 || idx > gens.size()) schema_error(path, "generator index out of range in '" + tok + "'");
    GroupElement g = gens[idx - 1];
    out = group.compose(out, inverse ? group.inverse(g) : g);
  }
  return out;
}

}  // namespace

std::string canonical_json(const Json& j) {
  std::string out;
  dump(j, 0, out);
  out += "\n";
  return out;
}

Json group_to_json(const SymmetryGroup& group) {
  const int d = group.dimension();
  switch (group.kind()) {
    case GroupKind::trivial: return {{"trivial", {{"d", d}}}};
    case GroupKind::cyclic: return {{"cyclic", {{"n", group.n()}}}};
    case GroupKind::reflection: return {{"reflection", Json::object()}};
    case GroupKind::dihedral: return {{"dihedral", {{"n", group.n()}}}};
    case GroupKind::klein3d: return {{"klein3d", Json::object()}};
    case GroupKind::signed_permutation: return {{"signed_perm", {{"d", d}}}};
    case GroupKind::inversion: return {{"inversion", {{"d", d}}}};
    case GroupKind::translations: return {{"translations", {{"basis", matrix_json(group.basis())}}}};
    case GroupKind::trans_inv: return {{"trans_inv", {{"basis", matrix_json(group.basis())}}}};
    case GroupKind::trans_point:
      return {{"trans_point", {{"basis", matrix_json(group.basis())}, {"point", group_to_json(group.point_group())}}}};
    case GroupKind::generated: {
      Json mats = Json::array(), trans = Json::array();
      for (const auto& g : group.generating_isometries()) {
        mats.push_back(matrix_json(g.linear));
        trans.push_back(vector_json(g.translation));
      }
      return {{"generated", {{"matrices", mats}, {"translations", trans}, {"cap", group.cap()}}}};
    }
  }
  throw Error(ErrorCode::internal, "unknown group kind");
}

SymmetryGroup group_from_json(const Json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) schema_error(path, "expected an object with exactly one group tag");
  const std::string tag = j.begin().key();
  const Json& body = j.begin().value();
  const std::string bp = path + "." + tag;
  if (!body.is_object()) schema_error(bp, "expected an object");
  auto dim = [&] {
    auto d = as_int(member(body, "d", bp), bp + ".d");
    if (d < 1 || d > 8) schema_error(bp + ".d", "dimension must lie in 1..8");
    return static_cast<int>(d);
  };
  auto order = [&] {
    auto n = as_int(member(body, "n", bp), bp + ".n");
    if (n < 1 || n > 100000) schema_error(bp + ".n", "order parameter out of range");
    return static_cast<int>(n);
  };
  try {
    if (tag == "trivial") return SymmetryGroup::trivial(dim());
    if (tag == "cyclic") return SymmetryGroup::cyclic(order());
    if (tag == "reflection") return SymmetryGroup::reflection();
    if (tag == "dihedral") return SymmetryGroup::dihedral(order());
    if (tag == "klein3d") return SymmetryGroup::klein3d();
    if (tag == "signed_perm") return SymmetryGroup::signed_permutation(dim());
    if (tag == "inversion") return SymmetryGroup::inversion(dim());
    if (tag == "translations") return SymmetryGroup::translations(as_matrix(member(body, "basis", bp), bp + ".basis"));
    if (tag == "trans_inv") return SymmetryGroup::trans_inv(as_matrix(member(body, "basis", bp), bp + ".basis"));
    if (tag == "trans_point")
      return SymmetryGroup::trans_point(as_matrix(member(body, "basis", bp), bp + ".basis"),
                                        group_from_json(member(body, "point", bp), bp + ".point"));
    if (tag == "generated") {
      const Json& mats = member(body, "matrices", bp);
      if (!mats.is_array() || mats.empty()) schema_error(bp + ".matrices", "expected a non-empty list of matrices");
      std::vector<Isometry> gens;
      for (std::size_t i = 0; i < mats.size(); ++i) {
        Isometry iso = Isometry::from_linear(as_matrix(mats[i], bp + ".matrices[" + std::to_string(i) + "]"));
        if (body.contains("translations")) {
          const Json& t = body["translations"];
          if (!t.is_array() || t.size() != mats.size()) schema_error(bp + ".translations", "needs one vector per matrix");
          iso.translation = as_vector(t[i], bp + ".translations[" + std::to_string(i) + "]");
        }
        gens.push_back(iso);
      }
      std::size_t cap = body.contains("cap") ? static_cast<std::size_t>(as_int(body["cap"], bp + ".cap")) : 10000;
      return SymmetryGroup::generated(gens, cap);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::schema) throw;
    schema_error(bp, e.what());
  }
  schema_error(path, "unknown group tag '" + tag + "'");
}

Json element_to_json(const SymmetryGroup& group, const GroupElement& g) {
  const auto& c = g.code();
  switch (group.kind()) {
    case GroupKind::cyclic: return {{"rot_index", c[0]}};
    case GroupKind::reflection:
    case GroupKind::dihedral: return {{"rot_index", c[0]}, {"reflect", c[1] != 0}};
    case GroupKind::translations: return {{"vec", c}};
    case GroupKind::trans_inv: {
      const auto r = static_cast<std::size_t>(group.basis().rows());
      return {{"vec", ElementCode(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(r))}, {"times_inversion", c[r] != 0}};
    }
    case GroupKind::trans_point: {
      const auto r = static_cast<std::size_t>(group.basis().rows());
      GroupElement p(group.point_group().id(), ElementCode(c.begin() + static_cast<std::ptrdiff_t>(r), c.end()));
      return {{"vec", ElementCode(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(r))},
              {"matrix", matrix_json(group.point_group().linear_part(p))}};
    }
    default: {
      Isometry iso = group.represent(g);
      return {{"matrix", matrix_json(iso.linear)}, {"translation", vector_json(iso.translation)}};
    }
  }
}

GroupElement element_from_json(const SymmetryGroup& group, const Json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected a gain literal object");
  try {
    if (j.contains("word")) {
      if (!j["word"].is_string()) schema_error(path + ".word", "expected a string");
      return word_element(group, j["word"].get<std::string>(), path + ".word");
    }
    switch (group.kind()) {
      case GroupKind::cyclic:
      case GroupKind::reflection:
      case GroupKind::dihedral: {
        const int n = group.kind() == GroupKind::reflection ? 1 : group.n();
        std::int64_t k = as_int(member(j, "rot_index", path), path + ".rot_index");
        k = ((k % n) + n) % n;
        bool reflect = j.contains("reflect") && j["reflect"].get<bool>();
        if (group.kind() == GroupKind::cyclic) {
          if (reflect) schema_error(path + ".reflect", "cyclic groups have no reflections");
          return group.element({k});
        }
        return group.element({k, reflect ? 1 : 0});
      }
      case GroupKind::translations:
      case GroupKind::trans_inv:
      case GroupKind::trans_point: {
        const Json& vec = member(j, "vec", path);
        if (!vec.is_array() || static_cast<Eigen::Index>(vec.size()) != group.basis().rows())
          schema_error(path + ".vec", "expected one integer per lattice generator");
        ElementCode code;
        for (std::size_t i = 0; i < vec.size(); ++i) code.push_back(as_int(vec[i], path + ".vec[" + std::to_string(i) + "]"));
        if (group.kind() == GroupKind::trans_inv) {
          code.push_back(j.contains("times_inversion") && j["times_inversion"].get<bool>() ? 1 : 0);
        } else if (group.kind() == GroupKind::trans_point) {
          const auto& point = group.point_group();
          GroupElement p = j.contains("matrix") ? point.from_isometry(Isometry::from_linear(as_matrix(j["matrix"], path + ".matrix")))
                                                : point.identity();
          code.insert(code.end(), p.code().begin(), p.code().end());
        }
        return group.element(code);
      }
      default: {
        Isometry iso = Isometry::from_linear(as_matrix(member(j, "matrix", path), path + ".matrix"));
        if (j.contains("translation")) iso.translation = as_vector(j["translation"], path + ".translation");
        if (iso.linear.rows() != group.dimension() || iso.linear.cols() != group.dimension() ||
            iso.translation.size() != group.dimension())
          schema_error(path, "matrix dimension does not match the group");
        return group.from_isometry(iso);
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::schema) throw;
    schema_error(path, e.what());
  } catch (const Json::exception& e) {
    schema_error(path, e.what());
  }
}

Document parse_document(const std::string& text, bool require_gains) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::schema, std::string("$: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) schema_error("$", "expected an object");
  if (j.contains("version") && as_int(j["version"], "$.version") != 1) schema_error("$.version", "unsupported version");
  Document doc;
  doc.has_group = j.contains("group");
  SymmetryGroup group = doc.has_group ? group_from_json(j["group"]) : SymmetryGroup();

  const Json& verts = member(j, "vertices", "$");
  if (verts.is_number_integer()) {
    auto n = as_int(verts, "$.vertices");
    if (n < 0 || n > 1000000) schema_error("$.vertices", "vertex count out of range");
    for (std::int64_t i = 0; i < n; ++i) doc.names.push_back(std::to_string(i));
  } else if (verts.is_array()) {
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (!verts[i].is_string()) schema_error("$.vertices[" + std::to_string(i) + "]", "expected a name");
      std::string name = verts[i].get<std::string>();
      if (std::find(doc.names.begin(), doc.names.end(), name) != doc.names.end())
        schema_error("$.vertices[" + std::to_string(i) + "]", "duplicate vertex name");
      doc.names.push_back(name);
    }
  } else {
    schema_error("$.vertices", "expected a list of names or a count");
  }

  const Json& edges = member(j, "edges", "$");
  if (!edges.is_array()) schema_error("$.edges", "expected an array");
  MultiGraph g(static_cast<int>(doc.names.size()));
  std::vector<GroupElement> gains;
  int with_gain = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string ep = "$.edges[" + std::to_string(i) + "]";
    const Json& e = edges[i];
    int t = vertex_ref(member(e, "tail", ep), doc.names, ep + ".tail");
    int h = vertex_ref(member(e, "head", ep), doc.names, ep + ".head");
    g.add_edge(t, h);
    if (e.contains("gain")) {
      if (!doc.has_group) schema_error(ep + ".gain", "gains need a group");
      gains.push_back(element_from_json(group, e["gain"], ep + ".gain"));
      ++with_gain;
    } else {
      gains.push_back(group.identity());
    }
  }
  doc.has_gains = with_gain == static_cast<int>(edges.size()) && doc.has_group;
  if (with_gain != 0 && !doc.has_gains) schema_error("$.edges", "either every edge or no edge carries a gain");
  if (require_gains && !doc.has_gains && !edges.empty()) schema_error("$.edges", "this command needs a gain on every edge");
  if (require_gains && !doc.has_group) schema_error("$", "missing field 'group'");
  doc.gg = GainGraph(std::move(g), group, std::move(gains));

  if (j.contains("placement")) {
    Eigen::MatrixXd p = as_matrix(j["placement"], "$.placement");
    if (p.rows() != doc.gg.graph.vertex_count() || p.cols() != group.dimension())
      schema_error("$.placement", "expected one point of the group's dimension per vertex");
    doc.placement = p;
  }
  if (j.contains("extra")) doc.extra = j["extra"];
  if (doc.has_gains) require_valid(doc.gg);
  return doc;
}

Document make_document(const GainGraph& gg, std::optional<Placement> placement) {
  Document doc;
  doc.gg = gg;
  for (int v = 0; v < gg.graph.vertex_count(); ++v) doc.names.push_back(std::to_string(v));
  doc.placement = std::move(placement);
  doc.has_group = true;
  doc.has_gains = static_cast<int>(gg.gains.size()) == gg.graph.edge_count();
  return doc;
}

Json document_to_json(const Document& doc) {
  Json j;
  j["version"] = 1;
  if (doc.has_group) j["group"] = group_to_json(doc.gg.group);
  j["vertices"] = doc.names;
  Json edges = Json::array();
  for (EdgeId e = 0; e < doc.gg.graph.edge_count(); ++e) {
    Json x{{"tail", doc.gg.graph.edge(e).tail}, {"head", doc.gg.graph.edge(e).head}};
    if (doc.has_gains) x["gain"] = element_to_json(doc.gg.group, doc.gg.gains[e]);
    edges.push_back(x);
  }
  j["edges"] = edges;
  if (doc.placement) j["placement"] = matrix_json(*doc.placement);
  if (!doc.extra.empty()) j["extra"] = doc.extra;
  return j;
}

std::string serialize_document(const Document& doc) { return canonical_json(document_to_json(doc)); }

Json to_json(const RankReport& r) {
  return {{"rank", r.rank},         {"nullity", r.nullity}, {"trivial_dim", r.trivial_dim}, {"rigid", r.rigid},
          {"trials", r.trials},     {"tolerance", r.tolerance}, {"seed", r.seed},           {"flagged", r.flagged}};
}

Json to_json(const ProbabilityReport& r) {
  Json blocks = Json::array();
  for (const auto& b : r.partition) blocks.push_back({{"begin", b.begin}, {"end", b.end}, {"rigid", b.rigid}});
  Json j{{"total", r.total.str()}, {"tested", r.tested},   {"rigid", r.rigid},         {"estimate", r.estimate},
         {"exact", r.exact},       {"half_width", r.half_width}, {"seed", r.seed},    {"trials", r.trials},
         {"rechecked", r.rechecked}, {"partition", blocks}};
  if (r.exact) j["fraction"] = r.fraction.str();
  return j;
}

Json to_json(const ConstructionSequence& seq) {
  Json steps = Json::array();
  for (const auto& s : seq.steps) steps.push_back({{"kind", to_string(s.kind)}, {"attach", s.attach}, {"removed", s.removed}});
  Json edges = Json::array();
  for (const auto& e : seq.edge_map) edges.push_back({{"edge", e.edge}, {"reversed", e.reversed}});
  return {{"base", seq.base_loops == 1 ? "k11" : "k12"}, {"steps", steps}, {"vertex_map", seq.vertex_map}, {"edge_map", edges}};
}

Json to_json(const std::vector<InvarianceVerdict>& verdicts) {
  Json out = Json::array();
  for (const auto& v : verdicts) out.push_back({{"name", v.name}, {"holds", v.holds}, {"lhs", v.lhs.str()}, {"rhs", v.rhs.str()}});
  return out;
}

}  // namespace symrigid
