#include "bmu/examples.hpp"

#include <algorithm>
#include <numeric>

namespace bmu {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, int identity)
    : table_(std::move(table)), identity_(identity) {
  const int n = order();
  if (n < 1) throw GroupError("group table is empty");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table_[a].size()) != n)
      throw GroupError("row " + std::to_string(a) + " of the group table has the wrong length");
    for (int b = 0; b < n; ++b)
      if (table_[a][b] < 0 || table_[a][b] >= n)
        throw GroupError("table entry (" + std::to_string(a) + "," + std::to_string(b) +
                         ") is out of range");
  }
  if (identity_ < 0 || identity_ >= n) throw GroupError("identity index out of range");
  for (int a = 0; a < n; ++a)
    if (table_[identity_][a] != a || table_[a][identity_] != a)
      throw GroupError("element " + std::to_string(identity_) + " is not an identity (fails at " +
                       std::to_string(a) + ")");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    if (inverse_[a] < 0) throw GroupError("element " + std::to_string(a) + " has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw GroupError("table is not associative at (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(c) + ")");
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw GroupError("cyclic group order must be >= 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup(std::move(t), 0);
}

FiniteGroup symmetric_group(int k) {
  if (k < 1 || k > 6) throw GroupError("symmetric group degree must be in 1..6");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(perms.size());
  auto index = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // (a·b)(x) = a(b(x))
      std::vector<int> q(k);
      for (int x = 0; x < k; ++x) q[x] = perms[a][perms[b][x]];
      t[a][b] = index(q);
    }
  return FiniteGroup(std::move(t), 0);
}

MultUnitary kac_takesaki(const FiniteGroup& g, const std::string& space_id) {
  const int n = g.order();
  Space l(space_id, n);
  Matrix w = Matrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) w(a * n + g.mul(a, b), a * n + b) = 1.0;
  return MultUnitary(l, LegOperator(Legs{l, l}, Legs{l, l}, std::move(w)), make_flip());
}

GradedCategory graded_category(int modulus, const std::vector<GradedSpaceSpec>& spaces) {
  GradedCategory out;
  out.braiding = make_phase(modulus);
  for (const auto& s : spaces)
    out.spaces.emplace_back(s.id, static_cast<int>(s.grading.size()), s.grading);
  return out;
}

YDModule trivial_yd_module(const MultUnitary& f, const Space& h) {
  const Legs hl{h, f.space()}, lh{f.space(), h};
  return YDModule{Legs{h}, LegOperator::identity(hl), LegOperator::identity(lh)};
}

YDModule group_yd_module(const FiniteGroup& g, const MultUnitary& w, const Space& h,
                         const std::vector<int>& grading, const std::vector<Matrix>& action,
                         double tol) {
  const int n = g.order(), d = h.dim;
  if (w.space().dim != n) throw GroupError("multiplicative unitary does not live on C[G]");
  if (static_cast<int>(grading.size()) != d)
    throw GroupError("grading must assign a group element to every basis vector");
  for (int x : grading)
    if (x < 0 || x >= n) throw GroupError("grading uses an element outside the group");
  if (static_cast<int>(action.size()) != n) throw GroupError("action needs one matrix per element");
  for (int a = 0; a < n; ++a) {
    if (action[a].rows() != d || action[a].cols() != d)
      throw GroupError("action matrix " + std::to_string(a) + " has the wrong shape");
    if ((action[a].adjoint() * action[a] - Matrix::Identity(d, d)).norm() > tol)
      throw GroupError("action of element " + std::to_string(a) + " is not unitary");
  }
  if ((action[g.identity()] - Matrix::Identity(d, d)).norm() > tol)
    throw GroupError("identity element does not act trivially");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((action[a] * action[b] - action[g.mul(a, b)]).norm() > tol)
        throw GroupError("action is not multiplicative at (" + std::to_string(a) + "," +
                         std::to_string(b) + ")");
  // g·H_h ⊆ H_{ghg⁻¹}
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < d; ++i) {
      const int target = g.mul(g.mul(a, grading[i]), g.inverse(a));
      for (int j = 0; j < d; ++j)
        if (std::abs(action[a](j, i)) > tol && grading[j] != target)
          throw GroupError("compatibility fails for (g,h) = (" + std::to_string(a) + "," +
                           std::to_string(grading[i]) + ")");
    }
  const Space& l = w.space();
  Matrix u = Matrix::Zero(d * n, d * n);
  for (int i = 0; i < d; ++i)
    for (int x = 0; x < n; ++x) u(i * n + g.mul(grading[i], x), i * n + x) = 1.0;
  Matrix v = Matrix::Zero(n * d, n * d);
  for (int x = 0; x < n; ++x) v.block(x * d, x * d, d, d) = action[x];
  YDModule m{Legs{h}, LegOperator(Legs{h, l}, Legs{h, l}, std::move(u)),
             LegOperator(Legs{l, h}, Legs{l, h}, std::move(v))};
  const double rc = corep_residual(m.corep(), w), rr = rep_residual(m.rep(), w);
  const double ry = yd_residual(m, w);
  if (rc > tol || rr > tol || ry > tol)
    throw GroupError("group data does not define a Yetter-Drinfeld module (residuals " +
                     std::to_string(rc) + ", " + std::to_string(rr) + ", " + std::to_string(ry) +
                     ")");
  return m;
}

YDModule z2_sign_module(const MultUnitary& w, const std::string& id) {
  const FiniteGroup z2 = cyclic_group(2);
  Matrix sign = Matrix::Identity(2, 2);
  sign(1, 1) = -1.0;
  return group_yd_module(z2, w, Space(id, 2, std::vector<int>{0, 1}), {0, 1},
                         {Matrix::Identity(2, 2), sign});
}

}  // namespace bmu
