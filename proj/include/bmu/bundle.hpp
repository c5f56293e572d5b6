#pragma once

#include <map>
#include <string>

#include "json.hpp"

#include "bmu/examples.hpp"

namespace bmu {

inline constexpr int kBundleVersion = 1;

/// Spaces, one braiding, named operators and named groups, as stored in a
/// JSON bundle. Operator legs refer to spaces of the same bundle.
struct Bundle {
  std::map<std::string, Space> spaces;
  Braiding braiding;  // flip when the bundle does not specify one
  std::map<std::string, LegOperator> operators;
  std::map<std::string, FiniteGroup> groups;

  void add_space(const Space& s);
  /// Adds the operator and every space it touches.
  void add_operator(const std::string& name, const LegOperator& x);
  const LegOperator& op(const std::string& name) const;
  /// The operator `name` as a multiplicative unitary on its single space.
  MultUnitary mult_unitary(const std::string& name) const;
};

/// Canonical JSON: sorted keys, 17 significant digits, trailing newline.
std::string serialize(const Bundle& b);
/// Throws SchemaError (with a JSON pointer) or UnsupportedVersionError.
Bundle deserialize(const std::string& text);

Bundle load_bundle(const std::string& path);
void save_bundle(const Bundle& b, const std::string& path);

/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::string& path, const std::string& content);

/// Indented JSON with sorted keys, %.17g numbers and inline numeric arrays.
std::string canonical_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
/// Throws SchemaError at `path` unless `j` is a rows×cols array of [re, im].
Matrix matrix_from_json(const nlohmann::json& j, int rows, int cols, const std::string& path);

}  // namespace bmu
