#include "bmu/tensor_core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bmu/braiding.hpp"

namespace bmu {

Space::Space(std::string id_, int dim_, std::optional<std::vector<int>> grading_)
    : id(std::move(id_)), dim(dim_), grading(std::move(grading_)) {
  if (dim < 1) throw SignatureError("space '" + id + "' must have dim >= 1");
  if (grading && static_cast<int>(grading->size()) != dim)
    throw SignatureError("grading of space '" + id + "' has length " +
                         std::to_string(grading->size()) + ", expected " + std::to_string(dim));
}

int Space::degree(int basis_index) const {
  if (!grading) throw BraidingError("space '" + id + "' carries no grading");
  return (*grading)[basis_index];
}

int total_dim(const Legs& legs) {
  int d = 1;
  for (const auto& s : legs) d *= s.dim;
  return d;
}

std::string describe(const Legs& legs) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < legs.size(); ++i) os << (i ? "," : "") << legs[i].id;
  os << ']';
  return os.str();
}

int total_degree(const Legs& legs, int flat_index) {
  int deg = 0;
  for (auto it = legs.rbegin(); it != legs.rend(); ++it) {
    deg += it->degree(flat_index % it->dim);
    flat_index /= it->dim;
  }
  return deg;
}

Space fuse(const Legs& legs, std::string id) {
  const int d = total_dim(legs);
  bool graded = std::all_of(legs.begin(), legs.end(), [](const Space& s) { return s.graded(); });
  if (!graded || legs.empty()) return Space(std::move(id), d);
  std::vector<int> g(d);
  for (int i = 0; i < d; ++i) g[i] = total_degree(legs, i);
  return Space(std::move(id), d, std::move(g));
}

LegOperator::LegOperator(Legs domain, Legs codomain, Matrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != total_dim(codomain_) || matrix_.cols() != total_dim(domain_)) {
    std::ostringstream os;
    os << "matrix of shape " << matrix_.rows() << "x" << matrix_.cols() << " does not match "
       << describe(domain_) << " -> " << describe(codomain_);
    throw SignatureError(os.str());
  }
}

LegOperator LegOperator::identity(const Legs& legs) {
  const int d = total_dim(legs);
  return LegOperator(legs, legs, Matrix::Identity(d, d));
}

LegOperator LegOperator::zero(const Legs& domain, const Legs& codomain) {
  return LegOperator(domain, codomain, Matrix::Zero(total_dim(codomain), total_dim(domain)));
}

LegOperator LegOperator::relabeled(Legs domain, Legs codomain) const {
  return LegOperator(std::move(domain), std::move(codomain), matrix_);
}

namespace {

// A matrix with exactly one nonzero per column. Braidings and group-type
// unitaries have this shape, and multiplying by them only permutes and
// scales rows or columns.
bool monomial_columns(const Matrix& m, std::vector<int>& row_of) {
  if (m.rows() != m.cols()) return false;
  row_of.assign(m.cols(), -1);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) == cplx(0.0)) continue;
      if (row_of[j] >= 0) return false;
      row_of[j] = static_cast<int>(i);
    }
    if (row_of[j] < 0) return false;
  }
  return true;
}

Matrix product(const Matrix& x, const Matrix& y) {
  std::vector<int> rows;
  if (monomial_columns(x, rows)) {
    Matrix out = Matrix::Zero(x.rows(), y.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) out.row(rows[j]) += x(rows[j], j) * y.row(j);
    return out;
  }
  if (monomial_columns(y, rows)) {
    Matrix out(x.rows(), y.cols());
    for (Eigen::Index j = 0; j < y.cols(); ++j) out.col(j) = y(rows[j], j) * x.col(rows[j]);
    return out;
  }
  return x * y;
}

// I_pre ⊗ x ⊗ I_post, skipping zero entries of x.
Matrix pad(const Matrix& x, int pre, int post) {
  const Eigen::Index r = x.rows(), c = x.cols();
  Matrix out = Matrix::Zero(pre * r * post, pre * c * post);
  for (int p = 0; p < pre; ++p)
    for (Eigen::Index j = 0; j < c; ++j)
      for (Eigen::Index i = 0; i < r; ++i) {
        const cplx v = x(i, j);
        if (v == cplx(0.0)) continue;
        const Eigen::Index row0 = (p * r + i) * post, col0 = (p * c + j) * post;
        for (int k = 0; k < post; ++k) out(row0 + k, col0 + k) = v;
      }
  return out;
}

Legs slice_legs(const Legs& legs, int from, int count) {
  return Legs(legs.begin() + from, legs.begin() + from + count);
}

Legs concat(std::initializer_list<Legs> parts) {
  Legs out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

void check_block(const Legs& context, LegBlock b, const char* what) {
  if (b.count < 1 || b.start < 1 || b.start + b.count - 1 > static_cast<int>(context.size()))
    throw SignatureError(std::string(what) + " block out of range for context " +
                         describe(context));
}

struct Layout {
  Legs pre, a, mid, b, post;
};

Layout split(const Legs& context, LegBlock first, LegBlock second) {
  check_block(context, first, "first");
  check_block(context, second, "second");
  const int a0 = first.start - 1, b0 = second.start - 1;
  if (a0 + first.count > b0) throw SignatureError("leg blocks must be ordered and disjoint");
  Layout l;
  l.pre = slice_legs(context, 0, a0);
  l.a = slice_legs(context, a0, first.count);
  l.mid = slice_legs(context, a0 + first.count, b0 - a0 - first.count);
  l.b = slice_legs(context, b0, second.count);
  l.post = slice_legs(context, b0 + second.count,
                      static_cast<int>(context.size()) - b0 - second.count);
  return l;
}

// Unitary mapping the layout (M, A) to (A, M) for the chosen route.
LegOperator router(const Legs& mid, const Legs& a, Route route, const BraidingProvider& braiding) {
  if (route == Route::over) return braiding.braid(mid, a);
  return adjoint(braiding.braid(a, mid));
}

// P ⊗ id_B with P: M⊗A → A⊗M, padded with pre/post identities.
LegOperator routed(const Layout& l, const Legs& a, const Legs& b, Route route,
                   const BraidingProvider& braiding) {
  LegOperator p = router(l.mid, a, route, braiding);
  Matrix m = pad(p.matrix(), total_dim(l.pre), total_dim(b) * total_dim(l.post));
  return LegOperator(concat({l.pre, l.mid, a, b, l.post}), concat({l.pre, a, l.mid, b, l.post}),
                     std::move(m));
}

}  // namespace

LegOperator compose(const LegOperator& x, const LegOperator& y) {
  if (y.codomain() != x.domain())
    throw SignatureError("cannot compose: codomain " + describe(y.codomain()) +
                         " does not match domain " + describe(x.domain()));
  return LegOperator(y.domain(), x.codomain(), product(x.matrix(), y.matrix()));
}

LegOperator tensor(const LegOperator& x, const LegOperator& y) {
  const Matrix& a = x.matrix();
  const Matrix& b = y.matrix();
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return LegOperator(concat({x.domain(), y.domain()}), concat({x.codomain(), y.codomain()}),
                     std::move(out));
}

LegOperator adjoint(const LegOperator& x) {
  return LegOperator(x.codomain(), x.domain(), x.matrix().adjoint());
}

LegOperator scale(const LegOperator& x, cplx factor) {
  return LegOperator(x.domain(), x.codomain(), factor * x.matrix());
}

LegOperator add(const LegOperator& x, const LegOperator& y) {
  if (x.domain() != y.domain() || x.codomain() != y.codomain())
    throw SignatureError("cannot add operators with different signatures");
  return LegOperator(x.domain(), x.codomain(), x.matrix() + y.matrix());
}

LegOperator subtract(const LegOperator& x, const LegOperator& y) {
  return add(x, scale(y, -1.0));
}

double hs_norm(const Matrix& m) { return m.norm(); }
double hs_norm(const LegOperator& x) { return x.matrix().norm(); }

double hs_distance(const LegOperator& x, const LegOperator& y) {
  if (x.domain() != y.domain() || x.codomain() != y.codomain())
    throw SignatureError("cannot compare operators " + describe(x.domain()) + " -> " +
                         describe(x.codomain()) + " and " + describe(y.domain()) + " -> " +
                         describe(y.codomain()));
  return (x.matrix() - y.matrix()).norm();
}

LegOperator embed_adjacent(const LegOperator& x, const Legs& context, int start) {
  const int n = static_cast<int>(x.domain().size());
  if (start < 1 || start + n - 1 > static_cast<int>(context.size()))
    throw SignatureError("cannot place a " + std::to_string(n) + "-leg operator at leg " +
                         std::to_string(start) + " of " + describe(context));
  for (int i = 0; i < n; ++i)
    if (context[start - 1 + i] != x.domain()[i])
      throw SignatureError("leg " + std::to_string(start + i) + " of " + describe(context) +
                           " does not match operator domain " + describe(x.domain()));
  Legs pre = slice_legs(context, 0, start - 1);
  Legs post = slice_legs(context, start - 1 + n, static_cast<int>(context.size()) - start + 1 - n);
  Matrix m = pad(x.matrix(), total_dim(pre), total_dim(post));
  return LegOperator(context, concat({pre, x.codomain(), post}), std::move(m));
}

const char* to_string(Route route) { return route == Route::over ? "over" : "under"; }

LegOperator apply_distant(const LegOperator& x, const Legs& context, LegBlock first,
                          LegBlock second, Route route, const BraidingProvider& braiding) {
  const Layout l = split(context, first, second);
  if (x.domain() != concat({l.a, l.b}))
    throw SignatureError("operator domain " + describe(x.domain()) + " does not match legs " +
                         describe(concat({l.a, l.b})) + " of " + describe(context));
  if (l.mid.empty()) return embed_adjacent(x, context, first.start);
  const int na = static_cast<int>(l.a.size());
  if (static_cast<int>(x.codomain().size()) < na)
    throw SignatureError("operator codomain has fewer legs than the first block");
  Legs a_out = slice_legs(x.codomain(), 0, na);
  Legs b_out = slice_legs(x.codomain(), na, static_cast<int>(x.codomain().size()) - na);

  LegOperator p_in = routed(l, l.a, l.b, route, braiding);
  LegOperator p_out = routed(l, a_out, b_out, route, braiding);
  Legs moved = concat({l.pre, l.mid, l.a, l.b, l.post});
  LegOperator inner = embed_adjacent(x, moved, static_cast<int>(l.pre.size() + l.mid.size()) + 1);
  return compose(p_out, compose(inner, adjoint(p_in)));
}

LegOperator apply_distant(const LegOperator& x, const Legs& context, int i, int k, Route route,
                          const BraidingProvider& braiding) {
  return apply_distant(x, context, LegBlock{i, 1}, LegBlock{k, 1}, route, braiding);
}

Extraction extract_distant(const LegOperator& y, const Legs& context, LegBlock first,
                           LegBlock second, Route route, const BraidingProvider& braiding) {
  if (y.domain() != context || y.codomain() != context)
    throw SignatureError("extract_distant expects an endomorphism of " + describe(context));
  const Layout l = split(context, first, second);
  Legs moved = concat({l.pre, l.mid, l.a, l.b, l.post});
  Matrix ym = y.matrix();
  if (!l.mid.empty()) {
    LegOperator p = routed(l, l.a, l.b, route, braiding);
    ym = product(p.matrix().adjoint(), product(ym, p.matrix()));
  }
  std::vector<int> dims;
  for (const auto& s : moved) dims.push_back(s.dim);
  const int keep_start = static_cast<int>(l.pre.size() + l.mid.size());
  const int keep_count = static_cast<int>(l.a.size() + l.b.size());
  const double outer = total_dim(l.pre) * total_dim(l.mid) * total_dim(l.post);
  Matrix z = partial_trace_keep(ym, dims, keep_start, keep_count) / outer;
  Legs ab = concat({l.a, l.b});
  LegOperator op(ab, ab, z);
  Matrix embedded = pad(z, total_dim(l.pre) * total_dim(l.mid), total_dim(l.post));
  return Extraction{std::move(op), (ym - embedded).norm()};
}

Extraction extract_distant(const LegOperator& y, const Legs& context, int i, int k, Route route,
                           const BraidingProvider& braiding) {
  return extract_distant(y, context, LegBlock{i, 1}, LegBlock{k, 1}, route, braiding);
}

double unitarity_defect(const LegOperator& x) {
  const Matrix& m = x.matrix();
  if (m.rows() != m.cols())
    throw SignatureError("unitarity needs equal total dimensions, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  const Matrix id = Matrix::Identity(m.rows(), m.cols());
  return std::max((m.adjoint() * m - id).norm(), (m * m.adjoint() - id).norm());
}

bool is_unitary(const LegOperator& x, double tol) { return unitarity_defect(x) < tol; }

LegOperator slice(const LegOperator& x, int position, int bra, int ket) {
  const Legs& cod = x.codomain();
  const Legs& dom = x.domain();
  const int p = position - 1;
  if (p < 0 || p >= static_cast<int>(cod.size()) || p >= static_cast<int>(dom.size()))
    throw SignatureError("slice position " + std::to_string(position) + " out of range");
  if (bra < 0 || bra >= cod[p].dim || ket < 0 || ket >= dom[p].dim)
    throw SignatureError("slice basis index out of range");
  Legs cod_pre = slice_legs(cod, 0, p), cod_post = slice_legs(cod, p + 1, cod.size() - p - 1);
  Legs dom_pre = slice_legs(dom, 0, p), dom_post = slice_legs(dom, p + 1, dom.size() - p - 1);
  const int r_pre = total_dim(cod_pre), r_post = total_dim(cod_post), r_leg = cod[p].dim;
  const int c_pre = total_dim(dom_pre), c_post = total_dim(dom_post), c_leg = dom[p].dim;
  Matrix out(r_pre * r_post, c_pre * c_post);
  const Matrix& m = x.matrix();
  for (int i1 = 0; i1 < r_pre; ++i1)
    for (int i2 = 0; i2 < r_post; ++i2)
      for (int j1 = 0; j1 < c_pre; ++j1)
        for (int j2 = 0; j2 < c_post; ++j2)
          out(i1 * r_post + i2, j1 * c_post + j2) =
              m((i1 * r_leg + bra) * r_post + i2, (j1 * c_leg + ket) * c_post + j2);
  return LegOperator(concat({dom_pre, dom_post}), concat({cod_pre, cod_post}), std::move(out));
}

Matrix partial_trace_keep(const Matrix& m, const std::vector<int>& dims, int start, int count) {
  int pre = 1, keep = 1, post = 1;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    if (i < start) pre *= dims[i];
    else if (i < start + count) keep *= dims[i];
    else post *= dims[i];
  }
  if (m.rows() != pre * keep * post || m.cols() != m.rows())
    throw SignatureError("partial trace: matrix shape does not match leg dimensions");
  Matrix out = Matrix::Zero(keep, keep);
  for (int i = 0; i < pre; ++i)
    for (int k = 0; k < post; ++k)
      for (int b = 0; b < keep; ++b) {
        const Eigen::Index col = (static_cast<Eigen::Index>(i) * keep + b) * post + k;
        for (int a = 0; a < keep; ++a)
          out(a, b) += m((static_cast<Eigen::Index>(i) * keep + a) * post + k, col);
      }
  return out;
}

CVector vec(const Matrix& m) {
  CVector v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

Matrix unvec(const CVector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols)
    throw SignatureError("vector length does not match requested matrix shape");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = v(static_cast<Eigen::Index>(i) * cols + j);
  return m;
}

}  // namespace bmu
