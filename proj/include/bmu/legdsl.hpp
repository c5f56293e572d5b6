#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bmu/braiding.hpp"

namespace bmu::dsl {

struct Term;

/// Either an atom NAME[i,j,...] (optionally @over/@under) or a parenthesized
/// product. Products read left = top: "A.B" applies B first.
struct Node {
  enum class Kind { atom, product };
  Kind kind = Kind::atom;
  std::string name;
  std::vector<int> legs;
  std::optional<Route> route;
  std::vector<Term> factors;
  int line = 1;
  int column = 0;
};

struct Term {
  Node node;
  bool adjoint = false;
};

struct Statement {
  Node lhs;
  std::optional<Node> rhs;
  int line = 1;
};

/// Throws ParseError with 1-based line and 0-based column.
Node parse_expression(const std::string& text, int line = 1);
Statement parse_statement(const std::string& text, int line = 1);

/// Canonical form: no spaces inside expressions, " == " between sides.
std::string print(const Node& node);
std::string print(const Statement& s);

bool same_ast(const Node& a, const Node& b);

using Bindings = std::map<std::string, LegOperator>;

/// Evaluates `node` on the given input legs. `c` and `cinv` are the braiding
/// and its inverse on the indicated legs; other names come from `bindings`.
/// Atoms on legs that are not adjacent use apply_distant with the annotated
/// route (over by default). The leg list of each atom must be increasing and
/// form at most two runs of consecutive positions.
LegOperator evaluate(const Node& node, const Bindings& bindings, const Legs& context,
                     const BraidingProvider& braiding);

/// ‖lhs − rhs‖_HS for an equality statement.
double statement_residual(const Statement& s, const Bindings& bindings, const Legs& context,
                          const BraidingProvider& braiding);

/// A statement file: "#" comments, "@context A B C" (space ids), "@bind NAME =
/// OPERATOR", and one statement per line. Directives may appear anywhere and
/// apply to later lines.
struct ScriptLine {
  enum class Kind { context, bind, statement };
  Kind kind = Kind::statement;
  int line = 0;
  std::vector<std::string> context;
  std::string alias, target;
  Statement statement;
};

struct Script {
  std::vector<ScriptLine> lines;
};

Script parse_script(const std::string& text);
std::string print(const Script& script);

struct StatementResult {
  int line = 0;
  std::string text;
  bool assertion = false;
  double residual = 0.0;  // for assertions
  bool pass = true;
  std::string error;  // evaluation failure, if any
};

struct ScriptReport {
  std::vector<StatementResult> results;
  bool all_pass() const;
};

/// Runs every statement. `spaces` resolves @context ids and `operators`
/// resolves names and @bind targets. Evaluation errors fail the statement.
ScriptReport run_script(const Script& script, const std::map<std::string, Space>& spaces,
                        const Bindings& operators, const BraidingProvider& braiding, double tol);

}  // namespace bmu::dsl
