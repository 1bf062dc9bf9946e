#include "starcalc/geometry.hpp"

namespace star {

std::vector<FnSeries> star_decompose(const VfSeries& u,
                                     const StarContext& ctx) {
  std::vector<FnSeries> comps;
  comps.reserve(ctx.dim);
  for (int j = 0; j < ctx.dim; ++j)
    comps.push_back(
        pairing_star(u, lift(OneForm::coframe(ctx.dim, j), ctx.order), ctx));
  return comps;
}

CovEngine::CovEngine(const FrameConnection& conn, const StarContext& ctx)
    : conn_(conn), ctx_(ctx) {
  if (conn.dim != ctx.dim) throw std::invalid_argument("dimension mismatch");
  gamma_vf_.assign(ctx.dim * ctx.dim, VfSeries(ctx.order));
  for (int k = 0; k < ctx.dim; ++k)
    for (int j = 0; j < ctx.dim; ++j) {
      VfSeries s(ctx.order);
      for (int l = 0; l < ctx.dim; ++l)
        s += star_mod_left(conn.G(k, j, l),
                           lift(VectorField::frame(ctx.dim, l), ctx.order),
                           ctx_);
      gamma_vf_[k * ctx.dim + j] = s;
    }
}

std::vector<FnSeries> CovEngine::decompose(const VfSeries& v) const {
  return star_decompose(v, ctx_);
}

const std::vector<FnSeries>& CovEngine::decompose_plain(const VectorField& w) {
  int id = field_pool().intern(w);
  auto it = decomp_cache_.find(id);
  if (it != decomp_cache_.end()) return it->second;
  auto comp = decompose(lift(w, ctx_.order));
  return decomp_cache_.emplace(id, std::move(comp)).first->second;
}

const VfSeries& CovEngine::cov_plain_frame(const VectorField& w, int j) {
  int id = field_pool().intern(w);
  auto key = std::make_pair(id, j);
  auto it = frame_cov_cache_.find(key);
  if (it != frame_cov_cache_.end()) return it->second;
  const auto& wt = decompose_plain(w);
  VfSeries r(ctx_.order);
  for (int k = 0; k < ctx_.dim; ++k) {
    if (wt[k].is_zero()) continue;
    r += star_mod_left(wt[k], gamma_vf_[k * ctx_.dim + j], ctx_);
  }
  return frame_cov_cache_.emplace(key, std::move(r)).first->second;
}

VfSeries CovEngine::cov_frame_dir(int i, const std::vector<FnSeries>& vt) {
  VfSeries ei = lift(VectorField::frame(ctx_.dim, i), ctx_.order);
  VfSeries r(ctx_.order);
  for (int j = 0; j < ctx_.dim; ++j) {
    if (vt[j].is_zero()) continue;
    r += star_mod_left(star_lie_derivative(ei, vt[j], ctx_),
                       lift(VectorField::frame(ctx_.dim, j), ctx_.order),
                       ctx_);
    r += rbar_combine_series(
        vt[j], ei, ctx_, [&](const FunctionExpr& h, const VectorField& u) {
          return star_mod_left(lift(h, ctx_.order), cov_plain_frame(u, j),
                               ctx_);
        });
  }
  return r;
}

VfSeries CovEngine::cov(const VfSeries& u, const VfSeries& v) {
  auto ut = decompose(u);
  auto vt = decompose(v);
  VfSeries r(ctx_.order);
  for (int i = 0; i < ctx_.dim; ++i) {
    if (ut[i].is_zero()) continue;
    r += star_mod_left(ut[i], cov_frame_dir(i, vt), ctx_);
  }
  return r;
}

TenSeries CovEngine::cov_tensor(const VfSeries& u, const TenSeries& t) {
  int rank = -1;
  for (int k = 0; k <= t.order; ++k)
    if (!t.c[k].is_zero()) {
      for (auto s : t.c[k].sig)
        if (s != Slot::Vec) throw std::invalid_argument("rank unsupported");
      if (rank >= 0 && rank != t.c[k].rank())
        throw std::invalid_argument("rank unsupported");
      rank = t.c[k].rank();
    }
  if (rank > 3) throw std::invalid_argument("rank unsupported");
  if (rank < 0) return TenSeries(ctx_.order);

  if (rank <= 1) {
    VfSeries v(std::min(t.order, ctx_.order));
    for (int k = 0; k <= v.order; ++k) {
      VectorField vf(ctx_.dim);
      for (const auto& [key, f] : t.c[k].comp) vf.comp[key[0]] += f;
      v.c[k] = vf;
    }
    return cov(u, v).map(
        [](const VectorField& x) { return TensorField::from(x); });
  }

  // peel the innermost slot: t = sum_b t_b (x)_star e_b with
  // t_b = <t, theta^b>_star, then the deformed Leibniz rule
  TenSeries r(ctx_.order);
  for (int b = 0; b < ctx_.dim; ++b) {
    OfSeries thb = lift(OneForm::coframe(ctx_.dim, b), ctx_.order);
    TenSeries tb = twist_combine(ctx_.tw.Finv, t, thb, pair_last);
    if (tb.is_zero()) continue;
    TenSeries eb = lift(TensorField::from(VectorField::frame(ctx_.dim, b)),
                        ctx_.order);
    r += tensor_star(cov_tensor(u, tb), eb, ctx_);
    r += rbar_combine_series(
        tb, u, ctx_, [&](const TensorField& hh, const VectorField& uu) {
          return tensor_star(lift(hh, ctx_.order),
                             cov_plain_frame(uu, b).map(
                                 [](const VectorField& x) {
                                   return TensorField::from(x);
                                 }),
                             ctx_);
        });
  }
  return r;
}

VfSeries CovEngine::torsion(const VfSeries& u, const VfSeries& v) {
  VfSeries r = cov(u, v);
  r -= rbar_combine_series(v, u, ctx_,
                           [&](const VectorField& vv, const VectorField& uu) {
                             return cov(lift(vv, ctx_.order),
                                        lift(uu, ctx_.order));
                           });
  r -= star_lie_bracket(u, v, ctx_);
  return r;
}

VfSeries CovEngine::curvature(const VfSeries& u, const VfSeries& v,
                              const VfSeries& z) {
  VfSeries r = cov(u, cov(v, z));
  r -= rbar_combine_series(
      v, u, ctx_, [&](const VectorField& vv, const VectorField& uu) {
        return cov(lift(vv, ctx_.order), cov(lift(uu, ctx_.order), z));
      });
  r -= cov(star_lie_bracket(u, v, ctx_), z);
  return r;
}

TorsionTensor CovEngine::torsion_coeffs() {
  int d = ctx_.dim;
  TorsionTensor tt;
  tt.dim = d;
  tt.comp.assign(d * d * d, FnSeries(ctx_.order));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      VfSeries tmap = torsion(lift(VectorField::frame(d, i), ctx_.order),
                              lift(VectorField::frame(d, j), ctx_.order));
      for (int l = 0; l < d; ++l)
        tt.comp[(i * d + j) * d + l] = pairing_star(
            tmap, lift(OneForm::coframe(d, l), ctx_.order), ctx_);
    }
  return tt;
}

CurvatureTensor CovEngine::curvature_coeffs() {
  int d = ctx_.dim;
  CurvatureTensor rt;
  rt.dim = d;
  rt.comp.assign(d * d * d * d, FnSeries(ctx_.order));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        VfSeries rmap = curvature(lift(VectorField::frame(d, i), ctx_.order),
                                  lift(VectorField::frame(d, j), ctx_.order),
                                  lift(VectorField::frame(d, k), ctx_.order));
        for (int l = 0; l < d; ++l)
          rt.comp[((i * d + j) * d + k) * d + l] = pairing_star(
              rmap, lift(OneForm::coframe(d, l), ctx_.order), ctx_);
      }
  return rt;
}

ConnectionForms CovEngine::forms() {
  int d = ctx_.dim;
  TorsionTensor tt = torsion_coeffs();
  CurvatureTensor rt = curvature_coeffs();
  ConnectionForms cf;
  cf.dim = d;
  cf.omega.assign(d * d, FormSeries(ctx_.order));
  cf.Theta.assign(d, FormSeries(ctx_.order));
  cf.Omega.assign(d * d, FormSeries(ctx_.order));
  auto coframe = [&](int k) {
    return lift(ExteriorForm::from_one_form(OneForm::coframe(d, k)),
                ctx_.order);
  };
  GaussRat minus_half(Rat(-1, 2));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        cf.omega[i * d + j] +=
            star_mod_right(coframe(k), conn_.G(k, i, j), ctx_);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      FormSeries w = wedge_star(coframe(j), coframe(i), ctx_);
      for (int l = 0; l < d; ++l)
        cf.Theta[l] += scale_series(
            star_mod_right(w, tt.T(i, j, l), ctx_), minus_half);
      // the wedge pair runs over the star-antisymmetric first two
      // arguments of R; the remaining index is the transported direction
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          cf.Omega[k * d + l] += scale_series(
              star_mod_right(w, rt.R(i, j, k, l), ctx_), minus_half);
    }
  return cf;
}

VfSeries cov_deriv(const VfSeries& u, const VfSeries& v,
                   const FrameConnection& conn, const StarContext& ctx) {
  CovEngine eng(conn, ctx);
  return eng.cov(u, v);
}

VfSeries cov_deriv(const VectorField& u, const VectorField& v,
                   const FrameConnection& conn, const StarContext& ctx) {
  return cov_deriv(lift(u, ctx.order), lift(v, ctx.order), conn, ctx);
}

TenSeries cov_deriv_tensor(const VfSeries& u, const TenSeries& t,
                           const FrameConnection& conn,
                           const StarContext& ctx) {
  CovEngine eng(conn, ctx);
  return eng.cov_tensor(u, t);
}

VfSeries torsion(const VfSeries& u, const VfSeries& v,
                 const FrameConnection& conn, const StarContext& ctx) {
  CovEngine eng(conn, ctx);
  return eng.torsion(u, v);
}

VfSeries curvature(const VfSeries& u, const VfSeries& v, const VfSeries& z,
                   const FrameConnection& conn, const StarContext& ctx) {
  CovEngine eng(conn, ctx);
  return eng.curvature(u, v, z);
}

std::pair<TorsionTensor, CurvatureTensor> extract_coeffs(
    const FrameConnection& conn, const StarContext& ctx) {
  CovEngine eng(conn, ctx);
  return {eng.torsion_coeffs(), eng.curvature_coeffs()};
}

namespace {

GeomReport residuals_impl(CovEngine& eng, bool cartan, bool bianchi) {
  const StarContext& ctx = eng.ctx();
  int d = ctx.dim;
  int order = ctx.order;
  ConnectionForms cf = eng.forms();
  auto coframe = [&](int k) {
    return lift(ExteriorForm::from_one_form(OneForm::coframe(d, k)), order);
  };
  GeomReport rep;
  if (cartan) {
    std::vector<long> c1(order + 1, 0), c2(order + 1, 0);
    for (int l = 0; l < d; ++l) {
      FormSeries rhs = exterior_d(coframe(l));
      for (int k = 0; k < d; ++k)
        rhs -= wedge_star(coframe(k), cf.omega[k * d + l], ctx);
      auto pr = residual_profile(cf.Theta[l] - rhs);
      for (int k = 0; k <= order; ++k) c1[k] += pr[k];
    }
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        FormSeries rhs = exterior_d(cf.omega[k * d + l]);
        for (int m = 0; m < d; ++m)
          rhs -= wedge_star(cf.omega[k * d + m], cf.omega[m * d + l], ctx);
        auto pr = residual_profile(cf.Omega[k * d + l] - rhs);
        for (int q = 0; q <= order; ++q) c2[q] += pr[q];
      }
    rep.residuals["cartan1"] = c1;
    rep.residuals["cartan2"] = c2;
  }
  if (bianchi) {
    std::vector<long> b1(order + 1, 0), b2(order + 1, 0);
    for (int i = 0; i < d; ++i) {
      FormSeries res = exterior_d(cf.Theta[i]);
      for (int j = 0; j < d; ++j) {
        res += wedge_star(cf.Theta[j], cf.omega[j * d + i], ctx);
        res -= wedge_star(coframe(j), cf.Omega[j * d + i], ctx);
      }
      auto pr = residual_profile(res);
      for (int k = 0; k <= order; ++k) b1[k] += pr[k];
    }
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        FormSeries res = exterior_d(cf.Omega[k * d + l]);
        for (int m = 0; m < d; ++m) {
          res += wedge_star(cf.Omega[k * d + m], cf.omega[m * d + l], ctx);
          res -= wedge_star(cf.omega[k * d + m], cf.Omega[m * d + l], ctx);
        }
        auto pr = residual_profile(res);
        for (int q = 0; q <= order; ++q) b2[q] += pr[q];
      }
    rep.residuals["bianchi1"] = b1;
    rep.residuals["bianchi2"] = b2;
  }
  return rep;
}

}  // namespace

GeomReport cartan_residuals(const FrameConnection& conn,
                            const StarContext& ctx) {
  CovEngine eng(conn, ctx);
  return residuals_impl(eng, true, false);
}

GeomReport bianchi_residuals(const FrameConnection& conn,
                             const StarContext& ctx) {
  CovEngine eng(conn, ctx);
  return residuals_impl(eng, false, true);
}

GeomReport structure_residuals(const FrameConnection& conn,
                               const StarContext& ctx) {
  CovEngine eng(conn, ctx);
  return residuals_impl(eng, true, true);
}

}  // namespace star
