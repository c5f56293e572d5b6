#include "bmu/bundle.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bmu {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError(path.empty() ? "/" : path, what);
}

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~') out += "~0";
    else if (ch == '/') out += "~1";
    else out += ch;
  }
  return out;
}

std::string child(const std::string& path, const std::string& key) {
  return path + "/" + escape_pointer(key);
}

std::string child(const std::string& path, std::size_t i) {
  return path + "/" + std::to_string(i);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(child(path, key), "missing required field");
  return *it;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

void emit_number(std::ostringstream& os, const json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) {
    os << j.dump();
    return;
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  os << s;
}

// Nesting depth of arrays; objects count as unbounded so they never inline.
int depth(const json& j) {
  if (j.is_object()) return 1 << 20;
  if (!j.is_array()) return 0;
  int d = 0;
  for (const auto& x : j) d = std::max(d, depth(x));
  return d + 1;
}

void emit(std::ostringstream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {  // nlohmann::json keeps keys sorted
      if (!first) os << ",\n";
      first = false;
      os << inner << json(it.key()).dump() << ": ";
      emit(os, it.value(), indent + 1);
    }
    os << "\n" << pad << "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      os << "[]";
      return;
    }
    if (depth(j) <= 2) {
      os << "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ", ";
        emit(os, j[i], indent + 1);
      }
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << ",\n";
      os << inner;
      emit(os, j[i], indent + 1);
    }
    os << "\n" << pad << "]";
  } else if (j.is_number()) {
    emit_number(os, j);
  } else {
    os << j.dump();
  }
}

json legs_to_json(const Legs& legs) {
  json out = json::array();
  for (const auto& s : legs) out.push_back(s.id);
  return out;
}

Legs legs_from_json(const json& j, const std::map<std::string, Space>& spaces,
                    const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of space ids");
  Legs out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string id = as_string(j[i], child(path, i));
    auto it = spaces.find(id);
    if (it == spaces.end()) fail(child(path, i), "unknown space '" + id + "'");
    out.push_back(it->second);
  }
  return out;
}

json braiding_to_json(const Braiding& b) {
  if (!b) return json{{"kind", "flip"}};
  if (auto r = std::dynamic_pointer_cast<const ReversedBraiding>(b)) {
    json inner = braiding_to_json(r->inner());
    inner["reversed"] = !inner.value("reversed", false);
    return inner;
  }
  const std::string kind = b->kind();
  if (kind == "flip") return json{{"kind", "flip"}};
  if (kind == "phase") return json{{"kind", "phase"}, {"modulus", b->grading_modulus()}};
  if (auto e = std::dynamic_pointer_cast<const ExplicitBraiding>(b)) {
    json entries = json::array();
    for (const auto& [key, c] : e->entries())
      entries.push_back(json{{"first", key.first}, {"second", key.second},
                             {"matrix", matrix_to_json(c.matrix())}});
    return json{{"kind", "explicit"}, {"entries", entries}};
  }
  throw SchemaError("/braiding", "braiding kind '" + kind + "' cannot be serialized");
}

Braiding braiding_from_json(const json& j, const std::map<std::string, Space>& spaces,
                            const std::string& path) {
  const std::string kind = as_string(field(j, "kind", path), child(path, "kind"));
  Braiding out;
  if (kind == "flip") {
    out = make_flip();
  } else if (kind == "phase") {
    const int m = as_int(field(j, "modulus", path), child(path, "modulus"));
    if (m < 1) fail(child(path, "modulus"), "modulus must be >= 1");
    out = make_phase(m);
  } else if (kind == "explicit") {
    const json& entries = field(j, "entries", path);
    const std::string ep = child(path, "entries");
    if (!entries.is_array()) fail(ep, "expected an array");
    auto table = std::make_shared<ExplicitBraiding>();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string p = child(ep, i);
      const Legs first = legs_from_json(field(entries[i], "first", p), spaces, child(p, "first"));
      const Legs second =
          legs_from_json(field(entries[i], "second", p), spaces, child(p, "second"));
      Legs dom = first, cod = second;
      dom.insert(dom.end(), second.begin(), second.end());
      cod.insert(cod.end(), first.begin(), first.end());
      const int n = total_dim(dom);
      Matrix m = matrix_from_json(field(entries[i], "matrix", p), n, n, child(p, "matrix"));
      table->set(LegOperator(dom, cod, std::move(m)), static_cast<int>(first.size()));
    }
    out = table;
  } else {
    fail(child(path, "kind"), "unknown braiding kind '" + kind + "'");
  }
  auto rev = j.find("reversed");
  if (rev != j.end()) {
    if (!rev->is_boolean()) fail(child(path, "reversed"), "expected a boolean");
    if (rev->get<bool>()) out = reversed(out);
  }
  return out;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, int rows, int cols, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    fail(path, "expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const std::string rp = child(path, static_cast<std::size_t>(i));
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      fail(rp, "expected " + std::to_string(cols) + " entries");
    for (int k = 0; k < cols; ++k) {
      const json& e = j[i][k];
      const std::string p = child(rp, static_cast<std::size_t>(k));
      if (!e.is_array() || e.size() != 2) fail(p, "expected a [re, im] pair");
      m(i, k) = cplx(as_number(e[0], child(p, 0)), as_number(e[1], child(p, 1)));
    }
  }
  return m;
}

std::string canonical_json(const json& j) {
  std::ostringstream os;
  emit(os, j, 0);
  os << "\n";
  return os.str();
}

void Bundle::add_space(const Space& s) {
  auto it = spaces.find(s.id);
  if (it != spaces.end() && !(it->second == s))
    throw SignatureError("bundle already has a different space named '" + s.id + "'");
  spaces.emplace(s.id, s);
}

void Bundle::add_operator(const std::string& name, const LegOperator& x) {
  for (const auto& s : x.domain()) add_space(s);
  for (const auto& s : x.codomain()) add_space(s);
  operators.insert_or_assign(name, x);
}

const LegOperator& Bundle::op(const std::string& name) const {
  auto it = operators.find(name);
  if (it == operators.end()) throw SchemaError(child("/operators", name), "no such operator");
  return it->second;
}

MultUnitary Bundle::mult_unitary(const std::string& name) const {
  const LegOperator& x = op(name);
  if (x.domain().size() != 2 || x.domain()[0] != x.domain()[1] || x.codomain() != x.domain())
    throw SignatureError("operator '" + name + "' does not act on L⊗L for a single space L");
  return MultUnitary(x.domain()[0], x, braiding ? braiding : make_flip());
}

std::string serialize(const Bundle& b) {
  json j;
  j["version"] = kBundleVersion;
  json spaces = json::object();
  for (const auto& [id, s] : b.spaces) {
    json e{{"dim", s.dim}};
    if (s.grading) e["grading"] = *s.grading;
    spaces[id] = e;
  }
  j["spaces"] = spaces;
  j["braiding"] = braiding_to_json(b.braiding);
  json ops = json::object();
  for (const auto& [name, x] : b.operators)
    ops[name] = json{{"domain", legs_to_json(x.domain())},
                     {"codomain", legs_to_json(x.codomain())},
                     {"matrix", matrix_to_json(x.matrix())}};
  j["operators"] = ops;
  json groups = json::object();
  for (const auto& [name, g] : b.groups)
    groups[name] = json{{"order", g.order()}, {"table", g.table()}, {"identity", g.identity()}};
  j["groups"] = groups;
  return canonical_json(j);
}

Bundle deserialize(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("/", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("", "expected a JSON object");
  const int version = as_int(field(j, "version", ""), "/version");
  if (version != kBundleVersion) throw UnsupportedVersionError(version);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "version" && it.key() != "spaces" && it.key() != "braiding" &&
        it.key() != "operators" && it.key() != "groups")
      fail(child("", it.key()), "unknown top-level field");

  Bundle b;
  const json& spaces = field(j, "spaces", "");
  if (!spaces.is_object()) fail("/spaces", "expected an object");
  for (auto it = spaces.begin(); it != spaces.end(); ++it) {
    const std::string p = child("/spaces", it.key());
    const int dim = as_int(field(it.value(), "dim", p), child(p, "dim"));
    if (dim < 1) fail(child(p, "dim"), "dimension must be >= 1");
    std::optional<std::vector<int>> grading;
    auto g = it.value().find("grading");
    if (g != it.value().end()) {
      const std::string gp = child(p, "grading");
      if (!g->is_array() || static_cast<int>(g->size()) != dim)
        fail(gp, "grading must list one integer per basis vector");
      std::vector<int> v;
      for (std::size_t i = 0; i < g->size(); ++i) v.push_back(as_int((*g)[i], child(gp, i)));
      grading = std::move(v);
    }
    b.spaces.emplace(it.key(), Space(it.key(), dim, grading));
  }

  auto br = j.find("braiding");
  b.braiding = br == j.end() ? make_flip() : braiding_from_json(*br, b.spaces, "/braiding");

  auto ops = j.find("operators");
  if (ops != j.end()) {
    if (!ops->is_object()) fail("/operators", "expected an object");
    for (auto it = ops->begin(); it != ops->end(); ++it) {
      const std::string p = child("/operators", it.key());
      const Legs dom = legs_from_json(field(it.value(), "domain", p), b.spaces, child(p, "domain"));
      const Legs cod =
          legs_from_json(field(it.value(), "codomain", p), b.spaces, child(p, "codomain"));
      Matrix m = matrix_from_json(field(it.value(), "matrix", p), total_dim(cod), total_dim(dom),
                                  child(p, "matrix"));
      b.operators.emplace(it.key(), LegOperator(dom, cod, std::move(m)));
    }
  }

  auto groups = j.find("groups");
  if (groups != j.end()) {
    if (!groups->is_object()) fail("/groups", "expected an object");
    for (auto it = groups->begin(); it != groups->end(); ++it) {
      const std::string p = child("/groups", it.key());
      const int order = as_int(field(it.value(), "order", p), child(p, "order"));
      const json& t = field(it.value(), "table", p);
      const std::string tp = child(p, "table");
      if (!t.is_array() || static_cast<int>(t.size()) != order)
        fail(tp, "table must have `order` rows");
      std::vector<std::vector<int>> table;
      for (std::size_t r = 0; r < t.size(); ++r) {
        if (!t[r].is_array()) fail(child(tp, r), "expected an array");
        std::vector<int> row;
        for (std::size_t c = 0; c < t[r].size(); ++c)
          row.push_back(as_int(t[r][c], child(child(tp, r), c)));
        table.push_back(std::move(row));
      }
      const int id = as_int(field(it.value(), "identity", p), child(p, "identity"));
      try {
        b.groups.emplace(it.key(), FiniteGroup(std::move(table), id));
      } catch (const GroupError& e) {
        fail(p, e.what());
      }
    }
  }
  return b;
}

Bundle load_bundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize(ss.str());
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
  }
}

void save_bundle(const Bundle& b, const std::string& path) { write_atomic(path, serialize(b)); }

}  // namespace bmu
