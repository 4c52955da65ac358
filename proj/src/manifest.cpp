#include "supergerbe/manifest.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <map>
#include <sstream>

#include "supergerbe/expression.hpp"

namespace supergerbe {

ManifestError::ManifestError(int line, int column, std::string field, const std::string& message)
    : Error(ErrorKind::ParseError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + field + ": " + message),
      line_(line),
      column_(column),
      field_(std::move(field)) {}

namespace {

using YAML::Node;

[[noreturn]] void fail(const Node& n, const std::string& field, const std::string& msg) {
  YAML::Mark mk = n.Mark();
  if (mk.is_null()) throw ManifestError(0, 0, field, msg);
  throw ManifestError(mk.line + 1, mk.column + 1, field, msg);
}

Node child(const Node& parent, const std::string& key, const std::string& path, bool required = true) {
  if (!parent.IsMap()) fail(parent, path, "expected a mapping");
  Node n = parent[key];
  if (!n && required) fail(parent, path + "." + key, "missing key");
  return n;
}

std::string text_of(const Node& n, const std::string& field) {
  if (!n.IsScalar()) fail(n, field, "expected a scalar");
  return n.Scalar();
}

// Runs fn, locating any library error at n.
template <class Fn>
auto guard(const Node& n, const std::string& field, Fn&& fn) {
  try {
    return fn();
  } catch (const ManifestError&) {
    throw;
  } catch (const Error& e) {
    fail(n, field, e.what());
  }
}

template <class Fn>
auto parse_expr(const Node& n, const std::string& field, Fn&& fn) {
  std::string s = text_of(n, field);
  try {
    return fn(s);
  } catch (const ExpressionError& e) {
    YAML::Mark mk = n.Mark();
    int quoted = n.Tag() == "!" ? 1 : 0;
    throw ManifestError(mk.line + 1, mk.column + 1 + quoted + static_cast<int>(e.offset()), field, e.what());
  } catch (const ManifestError&) {
    throw;
  } catch (const Error& e) {
    fail(n, field, e.what());
  }
}

Integer integer_of(const Node& n, const std::string& field) {
  std::string s = text_of(n, field);
  std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos)
    fail(n, field, "expected an integer literal, got '" + s + "'");
  return Integer(s);
}

int small_int(const Node& n, const std::string& field) {
  Integer z = integer_of(n, field);
  if (!z.fits_sint_p()) fail(n, field, "integer out of range");
  return static_cast<int>(z.get_si());
}

std::vector<std::string> names_of(const Node& n, const std::string& field) {
  std::vector<std::string> out;
  if (!n) return out;
  if (!n.IsSequence()) fail(n, field, "expected a list");
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(text_of(n[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

std::string tuple_key(const Cover& c, const Simplex& s) {
  std::string k;
  for (auto v : s) {
    if (!k.empty()) k += ' ';
    k += c.chart(v).name;
  }
  return k;
}

Simplex tuple_of(const Cover& c, const Node& key, const std::string& field) {
  Simplex s;
  for (const auto& w : split_words(text_of(key, field))) {
    auto id = c.chart_id(w);
    if (!id) fail(key, field, "unknown chart '" + w + "'");
    s.push_back(*id);
  }
  if (s.empty()) fail(key, field, "empty chart tuple");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] >= s[i]) fail(key, field, "chart tuple must follow chart declaration order");
  return s;
}

RingPtr parse_ring(const Node& n) {
  RingSpec spec;
  spec.even = names_of(n["even"], "ring.even");
  spec.odd = names_of(n["odd"], "ring.odd");
  spec.forms = names_of(n["forms"], "ring.forms");
  if (Node d = n["derivations"]) {
    if (!d.IsMap()) fail(d, "ring.derivations", "expected a mapping");
    for (auto it = d.begin(); it != d.end(); ++it) {
      std::string g = text_of(it->first, "ring.derivations");
      spec.derivations.emplace_back(g, text_of(it->second, "ring.derivations." + g));
    }
  }
  if (Node r = n["relations"]) {
    if (!r.IsMap()) fail(r, "ring.relations", "expected a mapping");
    for (auto it = r.begin(); it != r.end(); ++it) {
      std::string lhs = text_of(it->first, "ring.relations");
      spec.relations.emplace_back(lhs, text_of(it->second, "ring.relations." + lhs));
    }
  }
  return guard(n, "ring", [&] { return build_ring(spec); });
}

CoverPtr parse_cover(const Node& n, const RingPtr& ring) {
  CoverBuilder b(ring);
  std::map<std::string, std::uint32_t> ids;
  Node charts = child(n, "charts", "cover");
  if (!charts.IsSequence()) fail(charts, "cover.charts", "expected a list");
  for (std::size_t i = 0; i < charts.size(); ++i) {
    std::string path = "cover.charts[" + std::to_string(i) + "]";
    const Node ch = charts[i];
    std::string name = text_of(child(ch, "name", path), path + ".name");
    if (ids.count(name)) fail(ch, path + ".name", "duplicate chart '" + name + "'");
    auto local = names_of(ch["local"], path + ".local");
    try {
      ids[name] = b.add_chart(name, local);
    } catch (const Error& e) {
      fail(ch, path, e.what());
    }
  }
  for (std::size_t i = 0; i < charts.size(); ++i) {
    std::string path = "cover.charts[" + std::to_string(i) + "]";
    const Node ch = charts[i];
    std::string name = ch["name"].Scalar();
    Node phi = child(ch, "partition", path);
    b.set_partition(name, parse_expr(phi, path + ".partition",
                                     [&](const std::string& s) { return parse_scalar(s, ring); }));
    if (Node centers = ch["center"]) {
      if (!centers.IsMap()) fail(centers, path + ".center", "expected a mapping");
      for (auto it = centers.begin(); it != centers.end(); ++it) {
        std::string g = text_of(it->first, path + ".center");
        Rational v = parse_expr(it->second, path + ".center." + g,
                                [](const std::string& s) { return parse_rational(s); });
        guard(it->first, path + ".center", [&] { b.set_center(name, g, v); });
      }
    }
  }
  auto chart_names = [&](const Node& list, const std::string& path) {
    auto names = names_of(list, path);
    for (const auto& nm : names)
      if (!ids.count(nm)) fail(list, path, "unknown chart '" + nm + "'");
    return names;
  };
  if (Node simplices = n["simplices"]) {
    if (!simplices.IsSequence()) fail(simplices, "cover.simplices", "expected a list");
    for (std::size_t i = 0; i < simplices.size(); ++i) {
      std::string path = "cover.simplices[" + std::to_string(i) + "]";
      auto names = chart_names(simplices[i], path);
      guard(simplices[i], path, [&] { b.add_simplex(names); });
    }
  }
  if (Node shifts = n["shifts"]) {
    if (!shifts.IsMap()) fail(shifts, "cover.shifts", "expected a mapping");
    for (auto it = shifts.begin(); it != shifts.end(); ++it) {
      std::string key = text_of(it->first, "cover.shifts");
      auto pair = split_words(key);
      std::string path = "cover.shifts." + key;
      if (pair.size() != 2) fail(it->first, path, "expected two chart names");
      for (const auto& nm : pair)
        if (!ids.count(nm)) fail(it->first, path, "unknown chart '" + nm + "'");
      if (!it->second.IsSequence()) fail(it->second, path, "expected a list");
      std::vector<Gaussian> values;
      for (std::size_t k = 0; k < it->second.size(); ++k)
        values.push_back(parse_expr(it->second[k], path + "[" + std::to_string(k) + "]",
                                    [](const std::string& s) { return parse_number(s); }));
      guard(it->first, path, [&] { b.set_shift(pair[0], pair[1], values); });
    }
  }
  if (Node ml = n["max_level"]) b.set_max_level(small_int(ml, "cover.max_level"));
  // chain keys need chart indices, so cycles are read against a provisional build
  CoverPtr provisional = guard(n, "cover", [&] { return b.build(); });
  if (Node cycles = n["cycles"]) {
    if (!cycles.IsMap()) fail(cycles, "cover.cycles", "expected a mapping");
    for (auto it = cycles.begin(); it != cycles.end(); ++it) {
      std::string name = text_of(it->first, "cover.cycles");
      std::string path = "cover.cycles." + name;
      Chain c;
      c.level = small_int(child(it->second, "level", path), path + ".level");
      Node terms = child(it->second, "terms", path);
      if (!terms.IsMap()) fail(terms, path + ".terms", "expected a mapping");
      for (auto t = terms.begin(); t != terms.end(); ++t) {
        Simplex s = tuple_of(*provisional, t->first, path + ".terms");
        if (static_cast<int>(s.size()) != c.level) fail(t->first, path + ".terms", "tuple length differs from level");
        c.terms.emplace_back(s, integer_of(t->second, path + ".terms." + text_of(t->first, path)));
      }
      b.add_cycle(name, std::move(c));
    }
    return guard(n, "cover", [&] { return b.build(); });
  }
  return provisional;
}

SuperForm parse_typed_form(const Node& n, const RingPtr& ring, const std::string& field, int degree) {
  SuperForm f = parse_expr(n, field, [&](const std::string& s) { return parse_form(s, ring); });
  if (f.is_zero()) return f;
  auto p = f.parity();
  if (!p) fail(n, field, "mixed parity");
  if (*p == 1) fail(n, field, "odd parity; expected an even " + std::to_string(degree) + "-form");
  if (!f.is_homogeneous(degree, 0)) fail(n, field, "expected an even " + std::to_string(degree) + "-form");
  return f;
}

CechFamily parse_family(const Node& n, const Cover& c, int level, int degree, const std::string& field) {
  CechFamily f = zero_family(c, level);
  if (!n) return f;
  if (!n.IsMap()) fail(n, field, "expected a mapping");
  for (auto it = n.begin(); it != n.end(); ++it) {
    Simplex s = tuple_of(c, it->first, field);
    std::string path = field + "[" + text_of(it->first, field) + "]";
    if (static_cast<int>(s.size()) != level)
      fail(it->first, path, "expected " + std::to_string(level) + " charts");
    auto idx = c.index_of(s);
    if (!idx) fail(it->first, path, "not a nerve tuple");
    f.parts[*idx] = parse_typed_form(it->second, c.ring(), path, degree);
  }
  return f;
}

std::vector<Integer> parse_integers(const Node& n, const Cover& c, int level, const std::string& field) {
  std::vector<Integer> out(c.simplices(level).size(), 0);
  if (!n) return out;
  if (!n.IsMap()) fail(n, field, "expected a mapping");
  for (auto it = n.begin(); it != n.end(); ++it) {
    Simplex s = tuple_of(c, it->first, field);
    std::string path = field + "[" + text_of(it->first, field) + "]";
    auto idx = static_cast<int>(s.size()) == level ? c.index_of(s) : std::nullopt;
    if (!idx) fail(it->first, path, "not a nerve tuple with " + std::to_string(level) + " charts");
    out[*idx] = integer_of(it->second, path);
  }
  return out;
}

GerbeCocycle parse_gerbe(const Node& n, const CoverPtr& c, const std::string& field) {
  if (!n.IsMap()) fail(n, field, "expected a mapping");
  return GerbeCocycle{c, parse_family(n["h"], *c, 3, 0, field + ".h"), parse_family(n["A"], *c, 2, 1, field + ".A"),
                      parse_family(n["B"], *c, 1, 2, field + ".B")};
}

TrivializationCertificate parse_cert_node(const Node& n, const CoverPtr& c, const std::string& field) {
  if (!n.IsMap()) fail(n, field, "expected a mapping");
  return TrivializationCertificate{parse_family(n["f"], *c, 2, 0, field + ".f"),
                                   parse_family(n["z"], *c, 1, 1, field + ".z"),
                                   parse_integers(n["m"], *c, 3, field + ".m")};
}

Node load(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ManifestError(e.mark.line + 1, e.mark.column + 1, "document", e.msg);
  }
}

void check_header(const Node& root, const std::string& kind) {
  if (!root.IsMap()) fail(root, "document", "expected a mapping at top level");
  Node f = child(root, "format", "document");
  if (text_of(f, "format") != "1") fail(f, "format", "unsupported format '" + f.Scalar() + "'");
  std::string k = root["kind"] ? text_of(root["kind"], "kind") : "manifest";
  if (k != kind) fail(root["kind"], "kind", "expected a " + kind + " document, got '" + k + "'");
}

std::string gerbe_ref(const Node& root, const Manifest& m) {
  Node g = child(root, "gerbe", "document");
  std::string name = text_of(g, "gerbe");
  bool found = false;
  for (const auto& [n, _] : m.gerbes) found = found || n == name;
  if (!found) fail(g, "gerbe", "no gerbe named '" + name + "' in the manifest");
  return name;
}

// --- emission

void emit_family(YAML::Emitter& out, const Cover& c, const CechFamily& f) {
  out << YAML::BeginMap;
  const auto& simp = c.simplices(f.level);
  for (std::size_t i = 0; i < f.parts.size(); ++i)
    if (!f.parts[i].is_zero())
      out << YAML::Key << tuple_key(c, simp[i]) << YAML::Value << YAML::DoubleQuoted << f.parts[i].str();
  out << YAML::EndMap;
}

void emit_gerbe(YAML::Emitter& out, const Cover& c, const GerbeCocycle& g) {
  out << YAML::BeginMap;
  out << YAML::Key << "h" << YAML::Value;
  emit_family(out, c, g.h);
  out << YAML::Key << "A" << YAML::Value;
  emit_family(out, c, g.A);
  out << YAML::Key << "B" << YAML::Value;
  emit_family(out, c, g.B);
  out << YAML::EndMap;
}

void emit_cert(YAML::Emitter& out, const Cover& c, const TrivializationCertificate& t) {
  out << YAML::BeginMap;
  out << YAML::Key << "f" << YAML::Value;
  emit_family(out, c, t.f);
  out << YAML::Key << "z" << YAML::Value;
  emit_family(out, c, t.z);
  out << YAML::Key << "m" << YAML::Value << YAML::BeginMap;
  const auto& simp = c.simplices(3);
  for (std::size_t i = 0; i < t.m.size() && i < simp.size(); ++i)
    if (t.m[i] != 0) out << YAML::Key << tuple_key(c, simp[i]) << YAML::Value << t.m[i].get_str();
  out << YAML::EndMap << YAML::EndMap;
}

void emit_names(YAML::Emitter& out, const std::vector<std::string>& names) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& n : names) out << n;
  out << YAML::EndSeq;
}

void emit_ring(YAML::Emitter& out, const Ring& ring) {
  RingSpec spec = describe_ring(ring);
  out << YAML::BeginMap;
  out << YAML::Key << "even" << YAML::Value;
  emit_names(out, spec.even);
  out << YAML::Key << "odd" << YAML::Value;
  emit_names(out, spec.odd);
  out << YAML::Key << "forms" << YAML::Value;
  emit_names(out, spec.forms);
  out << YAML::Key << "derivations" << YAML::Value << YAML::BeginMap;
  for (const auto& [g, v] : spec.derivations) out << YAML::Key << g << YAML::Value << YAML::DoubleQuoted << v;
  out << YAML::EndMap;
  out << YAML::Key << "relations" << YAML::Value << YAML::BeginMap;
  for (const auto& [l, r] : spec.relations) out << YAML::Key << l << YAML::Value << YAML::DoubleQuoted << r;
  out << YAML::EndMap << YAML::EndMap;
}

void emit_cover(YAML::Emitter& out, const Cover& c) {
  const Ring& ring = *c.ring();
  out << YAML::BeginMap << YAML::Key << "charts" << YAML::Value << YAML::BeginSeq;
  for (std::uint32_t i = 0; i < c.chart_count(); ++i) {
    const Chart& ch = c.chart(i);
    out << YAML::BeginMap << YAML::Key << "name" << YAML::Value << ch.name;
    std::vector<std::string> local;
    for (auto g : ch.local) local.push_back(ring.even_name(g));
    out << YAML::Key << "local" << YAML::Value;
    emit_names(out, local);
    out << YAML::Key << "partition" << YAML::Value << YAML::DoubleQuoted << c.partition()[i].str();
    const auto& centers = c.centers(i);
    if (!centers.empty()) {
      out << YAML::Key << "center" << YAML::Value << YAML::Flow << YAML::BeginMap;
      for (const auto& [g, v] : centers) out << YAML::Key << ring.even_name(g) << YAML::Value << to_string(v);
      out << YAML::EndMap;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "simplices" << YAML::Value << YAML::BeginSeq;
  for (const auto& s : c.maximal()) {
    std::vector<std::string> names;
    for (auto v : s) names.push_back(c.chart(v).name);
    emit_names(out, names);
  }
  out << YAML::EndSeq;
  out << YAML::Key << "shifts" << YAML::Value << YAML::BeginMap;
  for (std::uint32_t a = 0; a < c.chart_count(); ++a)
    for (std::uint32_t b = a + 1; b < c.chart_count(); ++b) {
      if (!c.has_shift(a, b)) continue;
      std::vector<std::string> vals;
      for (const auto& v : c.shift(a, b)) vals.push_back(v.str());
      out << YAML::Key << tuple_key(c, {a, b}) << YAML::Value;
      emit_names(out, vals);
    }
  out << YAML::EndMap;
  out << YAML::Key << "max_level" << YAML::Value << c.max_level();
  out << YAML::Key << "cycles" << YAML::Value << YAML::BeginMap;
  for (const auto& [name, chain] : c.cycles()) {
    out << YAML::Key << name << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "level" << YAML::Value << chain.level;
    out << YAML::Key << "terms" << YAML::Value << YAML::BeginMap;
    for (const auto& [s, v] : chain.terms) out << YAML::Key << tuple_key(c, s) << YAML::Value << v.get_str();
    out << YAML::EndMap << YAML::EndMap;
  }
  out << YAML::EndMap << YAML::EndMap;
}

void begin_document(YAML::Emitter& out, const char* kind) {
  out << YAML::BeginMap << YAML::Key << "format" << YAML::Value << 1;
  out << YAML::Key << "kind" << YAML::Value << kind;
}

std::string finish(YAML::Emitter& out) {
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace

const SuperForm& Manifest::form(const std::string& name) const {
  for (const auto& [n, f] : forms)
    if (n == name) return f;
  raise(ErrorKind::InvalidArgument, "no form named '" + name + "'");
}

const GerbeCocycle& Manifest::gerbe(const std::string& name) const {
  for (const auto& [n, g] : gerbes)
    if (n == name) return g;
  raise(ErrorKind::InvalidArgument, "no gerbe named '" + name + "'");
}

void Manifest::set_gerbe(const std::string& name, GerbeCocycle g) {
  for (auto& [n, old] : gerbes)
    if (n == name) {
      old = std::move(g);
      return;
    }
  gerbes.emplace_back(name, std::move(g));
}

void Manifest::set_form(const std::string& name, SuperForm f) {
  for (auto& [n, old] : forms)
    if (n == name) {
      old = std::move(f);
      return;
    }
  forms.emplace_back(name, std::move(f));
}

Manifest parse_manifest(const std::string& text) {
  Node root = load(text);
  check_header(root, "manifest");
  Manifest m;
  RingPtr ring = parse_ring(child(root, "ring", "document"));
  m.cover = parse_cover(child(root, "cover", "document"), ring);
  if (Node objects = root["objects"]) {
    if (!objects.IsMap()) fail(objects, "objects", "expected a mapping");
    if (Node forms = objects["forms"]) {
      if (!forms.IsMap()) fail(forms, "objects.forms", "expected a mapping");
      for (auto it = forms.begin(); it != forms.end(); ++it) {
        std::string name = text_of(it->first, "objects.forms");
        m.forms.emplace_back(name, parse_expr(it->second, "objects.forms." + name,
                                              [&](const std::string& s) { return parse_form(s, ring); }));
      }
    }
    if (Node gerbes = objects["gerbes"]) {
      if (!gerbes.IsMap()) fail(gerbes, "objects.gerbes", "expected a mapping");
      for (auto it = gerbes.begin(); it != gerbes.end(); ++it) {
        std::string name = text_of(it->first, "objects.gerbes");
        m.gerbes.emplace_back(name, parse_gerbe(it->second, m.cover, "objects.gerbes." + name));
      }
    }
  }
  return m;
}

std::string emit_manifest(const Manifest& m) {
  YAML::Emitter out;
  begin_document(out, "manifest");
  out << YAML::Key << "ring" << YAML::Value;
  emit_ring(out, *m.cover->ring());
  out << YAML::Key << "cover" << YAML::Value;
  emit_cover(out, *m.cover);
  out << YAML::Key << "objects" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "forms" << YAML::Value << YAML::BeginMap;
  for (const auto& [n, f] : m.forms) out << YAML::Key << n << YAML::Value << YAML::DoubleQuoted << f.str();
  out << YAML::EndMap;
  out << YAML::Key << "gerbes" << YAML::Value << YAML::BeginMap;
  for (const auto& [n, g] : m.gerbes) {
    out << YAML::Key << n << YAML::Value;
    emit_gerbe(out, *m.cover, g);
  }
  out << YAML::EndMap << YAML::EndMap;
  return finish(out);
}

bool same_manifest(const Manifest& a, const Manifest& b) { return emit_manifest(a) == emit_manifest(b); }

Report validate_manifest(const Manifest& m, const Exec& exec) {
  Report rep = validate_cover(*m.cover);
  rep.subject = "manifest";
  for (const auto& [name, g] : m.gerbes) {
    Report r = check_gerbe_cocycle(g, exec);
    for (auto& c : r.checks) rep.add(name + ": " + c.identity, c.where, c.ok, c.detail);
  }
  return rep;
}

std::string document_kind(const std::string& text) {
  Node root = load(text);
  if (!root.IsMap()) fail(root, "document", "expected a mapping at top level");
  return root["kind"] ? text_of(root["kind"], "kind") : "manifest";
}

std::string emit_certificate(const Manifest& m, const std::string& gerbe, const TrivializationCertificate& cert) {
  YAML::Emitter out;
  begin_document(out, "certificate");
  out << YAML::Key << "gerbe" << YAML::Value << gerbe;
  out << YAML::Key << "certificate" << YAML::Value;
  emit_cert(out, *m.cover, cert);
  return finish(out);
}

TrivializationCertificate parse_certificate(const std::string& text, const Manifest& m, std::string* gerbe) {
  Node root = load(text);
  check_header(root, "certificate");
  std::string name = gerbe_ref(root, m);
  if (gerbe) *gerbe = name;
  return parse_cert_node(child(root, "certificate", "document"), m.cover, "certificate");
}

std::string emit_decomposition(const Manifest& m, const std::string& gerbe, const DecompositionResult& r) {
  YAML::Emitter out;
  begin_document(out, "decomposition");
  out << YAML::Key << "gerbe" << YAML::Value << gerbe;
  out << YAML::Key << "body" << YAML::Value;
  emit_gerbe(out, *m.cover, r.body);
  out << YAML::Key << "beta" << YAML::Value << YAML::DoubleQuoted << r.beta.str();
  out << YAML::Key << "certificate" << YAML::Value;
  emit_cert(out, *m.cover, r.certificate);
  return finish(out);
}

DecompositionResult parse_decomposition(const std::string& text, const Manifest& m, std::string* gerbe) {
  Node root = load(text);
  check_header(root, "decomposition");
  std::string name = gerbe_ref(root, m);
  if (gerbe) *gerbe = name;
  DecompositionResult r;
  r.body = parse_gerbe(child(root, "body", "document"), m.cover, "body");
  r.beta = parse_typed_form(child(root, "beta", "document"), m.cover->ring(), "beta", 2);
  r.certificate = parse_cert_node(child(root, "certificate", "document"), m.cover, "certificate");
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << text;
  if (!out) raise(ErrorKind::InvalidArgument, "write to '" + path + "' failed");
}

}  // namespace supergerbe
