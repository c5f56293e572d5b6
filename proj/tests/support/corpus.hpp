#pragma once

// Statement corpus and the instances it is evaluated on.

#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bmu/examples.hpp"
#include "bmu/legdsl.hpp"
#include "bmu/yd.hpp"
#include "oracles.hpp"

#ifndef BMU_TEST_DATA
#error "BMU_TEST_DATA must point at tests/data"
#endif

namespace corpus {

using namespace bmu;

inline const std::vector<std::string>& files() {
  static const std::vector<std::string> names{"pentagon", "corep", "rep", "yd", "goodness"};
  return names;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string source(const std::string& name) {
  return read_file(std::string(BMU_TEST_DATA) + "/corpus/" + name + ".stmt");
}

struct Instance {
  std::string name;
  Braiding braiding;
  Space l, h;
  MultUnitary f;
  YDModule module;

  std::map<std::string, Space> spaces() const { return {{"L", l}, {"H", h}}; }
  dsl::Bindings operators() const {
    return {{"F", f.op()},
            {"U", module.u},
            {"V", module.v},
            {"one", LegOperator::identity(Legs{l})}};
  }
};

/// Labels each basis vector of a ⊗ b by its pair of leg degrees, so that a
/// "graded" unitary for these labels preserves every leg's degree.
inline std::vector<int> pair_labels(const Space& a, const Space& b, int m) {
  std::vector<int> out;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < b.dim; ++j) out.push_back(a.degree(i) % m * m + b.degree(j) % m);
  return out;
}

inline std::vector<int> total_labels(const Space& a, const Space& b) {
  std::vector<int> out;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < b.dim; ++j) out.push_back(a.degree(i) + b.degree(j));
  return out;
}

inline Instance random_instance(const std::string& name, Braiding braiding, Space l, Space h,
                                const std::function<std::vector<int>(const Space&, const Space&)>& labels,
                                int modulus, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unitary = [&](const Space& a, const Space& b) {
    if (modulus == 0) return oracle::random_unitary(a.dim * b.dim, rng);
    return oracle::random_graded_unitary(labels(a, b), modulus, rng);
  };
  MultUnitary f(l, LegOperator({l, l}, {l, l}, unitary(l, l)), braiding);
  YDModule m{{h}, LegOperator({h, l}, {h, l}, unitary(h, l)),
             LegOperator({l, h}, {l, h}, unitary(l, h))};
  return Instance{name, braiding, l, h, f, m};
}

/// Every operator in these instances is a morphism of its category.
inline std::vector<Instance> instances() {
  std::vector<Instance> out;
  {
    auto w = kac_takesaki(cyclic_group(2));
    auto sign = z2_sign_module(w);
    out.push_back({"z2-kac-takesaki", w.braiding(), w.space(), sign.h[0], w, sign});
  }
  {
    auto w = kac_takesaki(cyclic_group(3));
    Space h("H", 3);
    const cplx q = std::polar(1.0, 2 * M_PI / 3);
    std::vector<Matrix> action;
    for (int g = 0; g < 3; ++g) {
      Matrix a = Matrix::Zero(3, 3);
      for (int i = 0; i < 3; ++i) a(i, i) = std::pow(q, g * i);
      action.push_back(a);
    }
    auto m = group_yd_module(cyclic_group(3), w, h, {0, 1, 2}, action);
    out.push_back({"z3-kac-takesaki", w.braiding(), w.space(), h, w, m});
  }
  {
    auto w = kac_takesaki(cyclic_group(2));
    auto sign = z2_sign_module(w, "H");
    Space l("L", 2, std::vector<int>{0, 1});
    MultUnitary f(l, LegOperator::identity({l, l}), make_phase(2));
    // The sign module over the identity F of the super category.
    YDModule m{{sign.h[0]}, LegOperator::identity({sign.h[0], l}),
               LegOperator::identity({l, sign.h[0]})};
    out.push_back({"super-identity", make_phase(2), l, sign.h[0], f, m});
  }
  out.push_back(random_instance("random-flip", make_flip(), Space("L", 2), Space("H", 3), {}, 0,
                                101));
  out.push_back(random_instance("random-super", make_phase(2),
                                Space("L", 3, std::vector<int>{0, 1, 1}),
                                Space("H", 2, std::vector<int>{0, 1}), total_labels, 2, 102));
  out.push_back(random_instance(
      "random-phase4", make_phase(4), Space("L", 3, std::vector<int>{0, 0, 1}),
      Space("H", 3, std::vector<int>{0, 1, 3}),
      [](const Space& a, const Space& b) { return pair_labels(a, b, 4); }, 16, 103));
  return out;
}

/// Copy of `node` with every atom on non-adjacent legs routed as given.
inline dsl::Node with_route(dsl::Node node, Route route) {
  if (node.kind == dsl::Node::Kind::atom) {
    bool adjacent = true;
    for (size_t i = 1; i < node.legs.size(); ++i)
      if (node.legs[i] != node.legs[i - 1] + 1) adjacent = false;
    if (!adjacent) node.route = route;
    return node;
  }
  for (auto& t : node.factors) t.node = with_route(t.node, route);
  return node;
}

/// Every atom of `node` with explicit routing, in source order.
inline void distant_atoms(const dsl::Node& node, std::vector<dsl::Node>& out) {
  if (node.kind == dsl::Node::Kind::atom) {
    for (size_t i = 1; i < node.legs.size(); ++i)
      if (node.legs[i] != node.legs[i - 1] + 1) {
        out.push_back(node);
        return;
      }
    return;
  }
  for (const auto& t : node.factors) distant_atoms(t.node, out);
}

}  // namespace corpus
