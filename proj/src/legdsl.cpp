#include "bmu/legdsl.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace bmu::dsl {

namespace {

class Parser {
 public:
  Parser(const std::string& text, int line) : s_(text), line_(line) {}

  Node expression() {
    Node out;
    out.kind = Node::Kind::product;
    skip();
    out.line = line_;
    out.column = static_cast<int>(pos_);
    out.factors.push_back(term());
    skip();
    while (peek() == '.') {
      ++pos_;
      out.factors.push_back(term());
      skip();
    }
    return out;
  }

  Statement statement() {
    Statement st;
    st.line = line_;
    st.lhs = expression();
    skip();
    if (s_.compare(pos_, 2, "==") == 0) {
      pos_ += 2;
      st.rhs = expression();
      skip();
    }
    if (pos_ < s_.size()) error(std::string("unexpected '") + s_[pos_] + "'");
    return st;
  }

  void expect_end() {
    skip();
    if (pos_ < s_.size()) error(std::string("unexpected '") + s_[pos_] + "'");
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    throw ParseError(line_, static_cast<int>(pos_), what);
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }

  void expect(char ch) {
    skip();
    if (peek() != ch) {
      if (pos_ >= s_.size()) error(std::string("expected '") + ch + "' before end of input");
      error(std::string("expected '") + ch + "', found '" + s_[pos_] + "'");
    }
    ++pos_;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
      error(pos_ >= s_.size() ? "expected an operator name before end of input"
                              : std::string("expected an operator name, found '") + s_[pos_] + "'");
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    return s_.substr(start, pos_ - start);
  }

  int integer() {
    skip();
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start)
      error(pos_ >= s_.size() ? "expected a leg index before end of input"
                              : std::string("expected a leg index, found '") + s_[pos_] + "'");
    const std::string digits = s_.substr(start, pos_ - start);
    if (digits.size() > 6) {
      pos_ = start;
      error("leg index too large");
    }
    const int v = std::stoi(digits);
    if (v < 1) {
      pos_ = start;
      error("leg indices start at 1");
    }
    return v;
  }

  Term term() {
    Term t;
    t.node = atom();
    skip();
    if (s_.compare(pos_, 2, "^*") == 0) {
      pos_ += 2;
      t.adjoint = true;
    }
    return t;
  }

  Node atom() {
    skip();
    if (peek() == '(') {
      ++pos_;
      Node inner = expression();
      expect(')');
      return inner;
    }
    Node a;
    a.kind = Node::Kind::atom;
    a.line = line_;
    a.column = static_cast<int>(pos_);
    a.name = identifier();
    expect('[');
    a.legs.push_back(integer());
    skip();
    while (peek() == ',') {
      ++pos_;
      a.legs.push_back(integer());
      skip();
    }
    expect(']');
    if (peek() == '@') {
      const std::size_t at = pos_;
      ++pos_;
      const std::string r = identifier();
      if (r == "over") a.route = Route::over;
      else if (r == "under") a.route = Route::under;
      else {
        pos_ = at;
        error("unknown route '@" + r + "', expected @over or @under");
      }
    }
    return a;
  }

  const std::string& s_;
  int line_;
  std::size_t pos_ = 0;
};

void print_node(std::ostringstream& os, const Node& n, bool nested) {
  if (n.kind == Node::Kind::atom) {
    os << n.name << "[";
    for (std::size_t i = 0; i < n.legs.size(); ++i) os << (i ? "," : "") << n.legs[i];
    os << "]";
    if (n.route) os << "@" << to_string(*n.route);
    return;
  }
  if (nested) os << "(";
  for (std::size_t i = 0; i < n.factors.size(); ++i) {
    if (i) os << ".";
    const Term& t = n.factors[i];
    // A product with one factor prints as that factor.
    const bool wrap = t.node.kind == Node::Kind::product;
    print_node(os, t.node, wrap);
    if (t.adjoint) os << "^*";
  }
  if (nested) os << ")";
}

// Collapses single-factor products so that printing and re-parsing is stable.
const Node& unwrap(const Node& n) {
  if (n.kind == Node::Kind::product && n.factors.size() == 1 && !n.factors[0].adjoint)
    return unwrap(n.factors[0].node);
  return n;
}

std::string where(const Node& n) {
  return "line " + std::to_string(n.line) + ", column " + std::to_string(n.column);
}

// One evaluated step: the operator on the full context and the new context.
struct Stepped {
  LegOperator op;
  Legs context;
};

Legs splice(const Legs& ctx, const std::vector<int>& pos, const Legs& replacement) {
  Legs out = ctx;
  for (std::size_t k = 0; k < pos.size(); ++k) out[pos[k] - 1] = replacement[k];
  return out;
}

Stepped eval_atom(const Node& a, bool adjoint_flag, const Bindings& bindings, const Legs& ctx,
                  const BraidingProvider& braiding) {
  const int n = static_cast<int>(ctx.size());
  for (std::size_t k = 0; k < a.legs.size(); ++k) {
    if (a.legs[k] > n)
      throw SignatureError(where(a) + ": leg " + std::to_string(a.legs[k]) +
                           " outside a context of " + std::to_string(n) + " legs");
    if (k && a.legs[k] <= a.legs[k - 1])
      throw SignatureError(where(a) + ": leg indices must be strictly increasing");
  }
  std::vector<std::pair<int, int>> runs;  // (start, count)
  for (int p : a.legs) {
    if (!runs.empty() && runs.back().first + runs.back().second == p) ++runs.back().second;
    else runs.emplace_back(p, 1);
  }
  if (runs.size() > 2)
    throw SignatureError(where(a) + ": legs must form at most two consecutive runs");

  Legs here;
  for (int p : a.legs) here.push_back(ctx[p - 1]);

  LegOperator x = LegOperator::identity(here);
  if (a.name == "c" || a.name == "cinv") {
    if (a.legs.size() != 2) throw SignatureError(where(a) + ": braiding atoms take two legs");
    const Legs p{here[0]}, q{here[1]};
    // The atom acts on (p, q). The adjoint of a crossing that ends on (p, q)
    // is an inverse crossing starting there, so ^* only toggles the inverse.
    const bool inverse = (a.name == "cinv") != adjoint_flag;
    x = inverse ? braiding.braid_inverse(q, p) : braiding.braid(p, q);
  } else {
    auto it = bindings.find(a.name);
    if (it == bindings.end()) throw SignatureError(where(a) + ": unknown operator '" + a.name + "'");
    x = adjoint_flag ? adjoint(it->second) : it->second;
    if (x.domain() != here)
      throw SignatureError(where(a) + ": '" + a.name + (adjoint_flag ? "^*" : "") + "' acts on " +
                           describe(x.domain()) + " but legs hold " + describe(here));
  }
  if (x.codomain().size() != x.domain().size())
    throw SignatureError(where(a) + ": operators must keep the number of legs");
  if (runs.size() == 2 && x.codomain().size() != here.size())
    throw SignatureError(where(a) + ": distant operators must keep the number of legs");

  const Legs out_ctx = splice(ctx, a.legs, x.codomain());
  if (runs.size() == 1) {
    LegOperator full = embed_adjacent(x, ctx, runs[0].first);
    return {full.relabeled(ctx, out_ctx), out_ctx};
  }
  const Route route = a.route.value_or(Route::over);
  const LegBlock first{runs[0].first, runs[0].second}, second{runs[1].first, runs[1].second};
  LegOperator full = apply_distant(x, ctx, first, second, route, braiding);
  return {full, full.codomain()};
}

Stepped eval_node(const Node& n, const Bindings& bindings, const Legs& ctx,
                  const BraidingProvider& braiding);

Stepped eval_term(const Term& t, const Bindings& bindings, const Legs& ctx,
                  const BraidingProvider& braiding) {
  if (t.node.kind == Node::Kind::atom) return eval_atom(t.node, t.adjoint, bindings, ctx, braiding);
  Stepped s = eval_node(t.node, bindings, ctx, braiding);
  if (!t.adjoint) return s;
  if (s.context != ctx)
    throw SignatureError(where(t.node) +
                         ": the adjoint of a group needs the group to preserve the legs");
  return {adjoint(s.op), ctx};
}

Stepped eval_node(const Node& n, const Bindings& bindings, const Legs& ctx,
                  const BraidingProvider& braiding) {
  if (n.kind == Node::Kind::atom) return eval_atom(n, false, bindings, ctx, braiding);
  Stepped acc{LegOperator::identity(ctx), ctx};
  for (auto it = n.factors.rbegin(); it != n.factors.rend(); ++it) {
    Stepped s = eval_term(*it, bindings, acc.context, braiding);
    acc = {compose(s.op, acc.op), s.context};
  }
  return acc;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Node parse_expression(const std::string& text, int line) {
  Parser p(text, line);
  Node n = p.expression();
  p.expect_end();
  return n;
}

Statement parse_statement(const std::string& text, int line) {
  Parser p(text, line);
  return p.statement();
}

std::string print(const Node& node) {
  std::ostringstream os;
  print_node(os, unwrap(node), false);
  return os.str();
}

std::string print(const Statement& s) {
  std::string out = print(s.lhs);
  if (s.rhs) out += " == " + print(*s.rhs);
  return out;
}

bool same_ast(const Node& a0, const Node& b0) {
  const Node& a = unwrap(a0);
  const Node& b = unwrap(b0);
  if (a.kind != b.kind) return false;
  if (a.kind == Node::Kind::atom) return a.name == b.name && a.legs == b.legs && a.route == b.route;
  if (a.factors.size() != b.factors.size()) return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i)
    if (a.factors[i].adjoint != b.factors[i].adjoint ||
        !same_ast(a.factors[i].node, b.factors[i].node))
      return false;
  return true;
}

LegOperator evaluate(const Node& node, const Bindings& bindings, const Legs& context,
                     const BraidingProvider& braiding) {
  return eval_node(node, bindings, context, braiding).op;
}

double statement_residual(const Statement& s, const Bindings& bindings, const Legs& context,
                          const BraidingProvider& braiding) {
  if (!s.rhs) throw SignatureError("line " + std::to_string(s.line) + ": not an equality");
  const LegOperator l = evaluate(s.lhs, bindings, context, braiding);
  const LegOperator r = evaluate(*s.rhs, bindings, context, braiding);
  if (l.codomain() != r.codomain())
    throw SignatureError("line " + std::to_string(s.line) + ": sides end on " +
                         describe(l.codomain()) + " and " + describe(r.codomain()));
  return hs_distance(l, r);
}

Script parse_script(const std::string& text) {
  Script out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
    const std::string t = trim(body);
    if (t.empty()) continue;
    ScriptLine sl;
    sl.line = line;
    if (t[0] == '@') {
      const int col0 = static_cast<int>(body.find('@'));
      std::istringstream words(t);
      std::string directive;
      words >> directive;
      if (directive == "@context") {
        sl.kind = ScriptLine::Kind::context;
        std::string id;
        while (words >> id) sl.context.push_back(id);
        if (sl.context.empty()) throw ParseError(line, col0, "@context needs at least one space");
      } else if (directive == "@bind") {
        sl.kind = ScriptLine::Kind::bind;
        std::string eq;
        if (!(words >> sl.alias >> eq >> sl.target) || eq != "=")
          throw ParseError(line, col0, "expected '@bind NAME = OPERATOR'");
        std::string extra;
        if (words >> extra) throw ParseError(line, col0, "unexpected text after @bind");
      } else {
        throw ParseError(line, col0, "unknown directive '" + directive + "'");
      }
    } else {
      sl.kind = ScriptLine::Kind::statement;
      sl.statement = parse_statement(body, line);
    }
    out.lines.push_back(std::move(sl));
  }
  return out;
}

std::string print(const Script& script) {
  std::ostringstream os;
  for (const auto& l : script.lines) {
    switch (l.kind) {
      case ScriptLine::Kind::context:
        os << "@context";
        for (const auto& id : l.context) os << " " << id;
        break;
      case ScriptLine::Kind::bind:
        os << "@bind " << l.alias << " = " << l.target;
        break;
      case ScriptLine::Kind::statement:
        os << print(l.statement);
        break;
    }
    os << "\n";
  }
  return os.str();
}

bool ScriptReport::all_pass() const {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

ScriptReport run_script(const Script& script, const std::map<std::string, Space>& spaces,
                        const Bindings& operators, const BraidingProvider& braiding, double tol) {
  ScriptReport report;
  Bindings names = operators;
  std::optional<Legs> context;
  for (const auto& l : script.lines) {
    if (l.kind == ScriptLine::Kind::context) {
      Legs ctx;
      for (const auto& id : l.context) {
        auto it = spaces.find(id);
        if (it == spaces.end())
          throw SignatureError("line " + std::to_string(l.line) + ": unknown space '" + id + "'");
        ctx.push_back(it->second);
      }
      context = ctx;
      continue;
    }
    if (l.kind == ScriptLine::Kind::bind) {
      auto it = operators.find(l.target);
      if (it == operators.end())
        throw SignatureError("line " + std::to_string(l.line) + ": unknown operator '" +
                             l.target + "'");
      names.insert_or_assign(l.alias, it->second);
      continue;
    }
    StatementResult r;
    r.line = l.line;
    r.text = print(l.statement);
    r.assertion = l.statement.rhs.has_value();
    try {
      if (!context) throw SignatureError("line " + std::to_string(l.line) + ": no @context given");
      if (r.assertion) {
        r.residual = statement_residual(l.statement, names, *context, braiding);
        r.pass = r.residual < tol;
      } else {
        evaluate(l.statement.lhs, names, *context, braiding);
      }
    } catch (const Error& e) {
      r.pass = false;
      r.error = e.what();
      r.residual = std::numeric_limits<double>::quiet_NaN();
    }
    report.results.push_back(std::move(r));
  }
  return report;
}

}  // namespace bmu::dsl
