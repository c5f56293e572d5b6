#include "bmu/yd.hpp"

namespace bmu {

namespace {

Legs concat(std::initializer_list<Legs> parts) {
  Legs out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

int n_legs(const Legs& l) { return static_cast<int>(l.size()); }

void check_on(const LegOperator& x, const Legs& legs, const char* what) {
  if (x.domain() != legs || x.codomain() != legs)
    throw SignatureError(std::string(what) + " must act on " + describe(legs) + ", got " +
                         describe(x.domain()) + " -> " + describe(x.codomain()));
}

}  // namespace

double corep_residual(const Corep& c, const MultUnitary& f, Route route) {
  const Legs l{f.space()};
  check_on(c.u, concat({c.h, l}), "corepresentation");
  const int nh = n_legs(c.h);
  const Legs ctx = concat({c.h, l, l});
  const LegOperator u12 = embed_adjacent(c.u, ctx, 1);
  const LegOperator u13 =
      apply_distant(c.u, ctx, LegBlock{1, nh}, LegBlock{nh + 2, 1}, route, *f.braiding());
  const LegOperator f23 = embed_adjacent(f.op(), ctx, nh + 1);
  return hs_distance(compose(f23, u12), compose(u12, compose(u13, f23)));
}

double rep_residual(const Rep& r, const MultUnitary& f, Route route) {
  const Legs l{f.space()};
  check_on(r.v, concat({l, r.h}), "representation");
  const int nh = n_legs(r.h);
  const Legs ctx = concat({l, l, r.h});
  const LegOperator v23 = embed_adjacent(r.v, ctx, 2);
  const LegOperator v13 =
      apply_distant(r.v, ctx, LegBlock{1, 1}, LegBlock{3, nh}, route, *f.braiding());
  const LegOperator f12 = embed_adjacent(f.op(), ctx, 1);
  return hs_distance(compose(v23, f12), compose(f12, compose(v13, v23)));
}

double yd_residual(const YDModule& m, const MultUnitary& f, Route lhs_route, Route rhs_route) {
  const Legs l{f.space()};
  check_on(m.u, concat({m.h, l}), "corepresentation");
  check_on(m.v, concat({l, m.h}), "representation");
  const int nh = n_legs(m.h);
  const Legs ctx = concat({l, m.h, l});
  const LegOperator v12 = embed_adjacent(m.v, ctx, 1);
  const LegOperator u23 = embed_adjacent(m.u, ctx, 2);
  const LegBlock first{1, 1}, last{nh + 2, 1};
  const LegOperator f13_l = apply_distant(f.op(), ctx, first, last, lhs_route, *f.braiding());
  const LegOperator f13_r = apply_distant(f.op(), ctx, first, last, rhs_route, *f.braiding());
  return hs_distance(compose(v12, compose(f13_l, u23)), compose(u23, compose(f13_r, v12)));
}

Corep tensor_corep(const Corep& a, const Corep& b, const MultUnitary& f, double tol) {
  const Legs l{f.space()};
  const Legs ctx = concat({a.h, b.h, l});
  const int n1 = n_legs(a.h), n2 = n_legs(b.h);
  const LegOperator u1 =
      apply_distant(a.u, ctx, LegBlock{1, n1}, LegBlock{n1 + n2 + 1, 1}, Route::over, *f.braiding());
  const LegOperator u2 = embed_adjacent(b.u, ctx, n1 + 1);
  Corep out{concat({a.h, b.h}), compose(u1, u2)};
  const double res = corep_residual(out, f);
  if (res > tol)
    throw FactorizationError("tensor product corepresentation fails its identity", res);
  return out;
}

namespace {

Rep tensor_rep_impl(const Rep& a, const Rep& b, const MultUnitary& f, double tol, bool yd_order) {
  const Legs l{f.space()};
  const Legs ctx = concat({l, a.h, b.h});
  const int n1 = n_legs(a.h), n2 = n_legs(b.h);
  const LegOperator v1 = embed_adjacent(a.v, ctx, 1);
  const Route route = yd_order ? Route::under : Route::over;
  const LegOperator v2 =
      apply_distant(b.v, ctx, LegBlock{1, 1}, LegBlock{n1 + 2, n2}, route, *f.braiding());
  Rep out{concat({a.h, b.h}), yd_order ? compose(v2, v1) : compose(v1, v2)};
  const double res = rep_residual(out, f);
  if (res > tol)
    throw FactorizationError("tensor product representation fails its identity", res);
  return out;
}

}  // namespace

Rep tensor_rep(const Rep& a, const Rep& b, const MultUnitary& f, double tol) {
  return tensor_rep_impl(a, b, f, tol, false);
}

Rep tensor_rep_yd_order(const Rep& a, const Rep& b, const MultUnitary& f, double tol) {
  return tensor_rep_impl(a, b, f, tol, true);
}

YDModule tensor_yd(const YDModule& a, const YDModule& b, const MultUnitary& f, double tol) {
  Corep u = tensor_corep(a.corep(), b.corep(), f, tol);
  Rep v = tensor_rep_yd_order(a.rep(), b.rep(), f, tol);
  YDModule out{u.h, u.u, v.v};
  const double res = yd_residual(out, f);
  if (res > tol) throw FactorizationError("tensor product module fails the YD identity", res);
  return out;
}

Extraction vu_extract(const Rep& v, const Corep& u, const MultUnitary& f, Route route) {
  const Legs l{f.space()};
  const int nh = n_legs(u.h), nk = n_legs(v.h);
  const Legs ctx = concat({u.h, l, v.h});
  const LegOperator u12 = embed_adjacent(u.u, ctx, 1);
  const LegOperator v23 = embed_adjacent(v.v, ctx, nh + 1);
  const LegOperator r = compose(adjoint(u12), compose(v23, compose(u12, adjoint(v23))));
  return extract_distant(r, ctx, LegBlock{1, nh}, LegBlock{nh + 2, nk}, route, *f.braiding());
}

LegOperator vu_product(const Rep& v, const Corep& u, const MultUnitary& f, double tol,
                       Route route) {
  Extraction e = vu_extract(v, u, f, route);
  if (e.residual > tol)
    throw FactorizationError("U*12 V23 U12 V*23 does not act on the outer legs only", e.residual);
  return e.op;
}

LegOperator yd_braiding(const YDModule& h, const YDModule& k, const MultUnitary& f, double tol) {
  LegOperator vu = vu_product(k.rep(), h.corep(), f, tol);
  return compose(f.braiding()->braid_inverse(k.h, h.h), vu);
}

BraidingRegularityReport yd_braiding_regularity(const YDModule& h, const YDModule& k,
                                                const MultUnitary& f, double tol) {
  LegOperator phi = yd_braiding(h, k, f, tol);
  if (h.h.size() != 1 || k.h.size() != 1) {
    Space hs = fuse(h.h, "H"), ks = fuse(k.h, "K");
    phi = phi.relabeled(Legs{hs, ks}, Legs{ks, hs});
  }
  return crossing_regularity(phi);
}

BraidingRegularityReport corep_slice_regularity(const Corep& c, const MultUnitary& f) {
  const Legs l{f.space()};
  LegOperator x = compose(f.braiding()->braid_inverse(l, c.h), c.u);
  if (c.h.size() != 1) {
    Space hs = fuse(c.h, "H");
    x = x.relabeled(Legs{hs, f.space()}, Legs{f.space(), hs});
  }
  return crossing_regularity(x);
}

std::shared_ptr<ExplicitBraiding> yd_braiding_provider(const std::vector<YDModule>& modules,
                                                       const MultUnitary& f, double tol,
                                                       bool with_composites) {
  for (std::size_t i = 0; i < modules.size(); ++i)
    for (std::size_t j = i + 1; j < modules.size(); ++j)
      if (modules[i].h == modules[j].h)
        throw BraidingError("YD modules in one braiding table need distinct spaces");
  auto table = std::make_shared<ExplicitBraiding>();
  for (const auto& a : modules)
    for (const auto& b : modules) table->set(yd_braiding(a, b, f, tol), n_legs(a.h));
  if (!with_composites) return table;
  for (const auto& a : modules)
    for (const auto& b : modules) {
      const YDModule ab = tensor_yd(a, b, f, tol);
      for (const auto& k : modules) {
        if (!table->has(ab.h, k.h)) table->set(yd_braiding(ab, k, f, tol), n_legs(ab.h));
        if (!table->has(k.h, ab.h)) table->set(yd_braiding(k, ab, f, tol), n_legs(k.h));
      }
    }
  return table;
}

std::vector<Matrix> yd_commutant_constraints(const YDModule& m, const MultUnitary& f, double tol) {
  const YDModule mm = tensor_yd(m, m, f, tol);
  std::vector<Matrix> out;
  // Slices of U on its last leg and of V on its first leg act on H⊗H.
  const Space hh = fuse(mm.h, "HH");
  const LegOperator u = mm.u.relabeled(Legs{hh, f.space()}, Legs{hh, f.space()});
  const LegOperator v = mm.v.relabeled(Legs{f.space(), hh}, Legs{f.space(), hh});
  const int d = f.space().dim;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      out.push_back(slice(u, 2, i, j).matrix());
      out.push_back(slice(v, 1, i, j).matrix());
    }
  return out;
}

}  // namespace bmu
