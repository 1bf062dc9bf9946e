#pragma once

#include <map>
#include <string>

#include "starcalc/star_ops.hpp"

namespace star {

// Connection coefficients Gamma_{ij}^k over the global coordinate frame
// e_i = d_i with dual theta^j = dx^j.
struct FrameConnection {
  int dim = 0;
  int order = 0;
  std::vector<FnSeries> gamma;  // [(i*dim + j)*dim + k]

  FrameConnection() = default;
  FrameConnection(int d, int n)
      : dim(d), order(n), gamma(d * d * d, FnSeries(n)) {}

  FnSeries& G(int i, int j, int k) { return gamma[(i * dim + j) * dim + k]; }
  const FnSeries& G(int i, int j, int k) const {
    return gamma[(i * dim + j) * dim + k];
  }
};

// star-components of a vector field series in the coordinate frame,
// u = sum_j <u, theta^j>_star * e_j
std::vector<FnSeries> star_decompose(const VfSeries& u, const StarContext& ctx);

struct TorsionTensor {
  int dim = 0;
  std::vector<FnSeries> comp;  // [(i*dim + j)*dim + l] = T_{ij}^l
  const FnSeries& T(int i, int j, int l) const {
    return comp[(i * dim + j) * dim + l];
  }
};

struct CurvatureTensor {
  int dim = 0;
  std::vector<FnSeries> comp;  // [((i*dim + j)*dim + k)*dim + l] = R_{ijk}^l
  const FnSeries& R(int i, int j, int k, int l) const {
    return comp[((i * dim + j) * dim + k) * dim + l];
  }
};

// omega_i^j = theta^k * Gamma_{ki}^j plus torsion and curvature 2-forms
struct ConnectionForms {
  int dim = 0;
  std::vector<FormSeries> omega;  // [i*dim + j]
  std::vector<FormSeries> Theta;  // [l]
  std::vector<FormSeries> Omega;  // [k*dim + l]
};

// Caches the frame data of one (connection, context) pair: the axioms force
// every covariant derivative down to nabla*_w e_j, which this engine
// memoizes per interned field.
class CovEngine {
 public:
  CovEngine(const FrameConnection& conn, const StarContext& ctx);

  const StarContext& ctx() const { return ctx_; }

  std::vector<FnSeries> decompose(const VfSeries& v) const;

  // nabla*_u v from the two defining axioms
  VfSeries cov(const VfSeries& u, const VfSeries& v);
  // extension to all-vector tensors by the deformed Leibniz rule
  TenSeries cov_tensor(const VfSeries& u, const TenSeries& t);

  // T(u,v) = nabla*_u v - nabla*_{Rbar^a(v)} Rbar_a(u) - [u,v]_star
  VfSeries torsion(const VfSeries& u, const VfSeries& v);
  // R(u,v,z) = nabla*_u nabla*_v z - nabla*_{Rbar^a(v)} nabla*_{Rbar_a(u)} z
  //            - nabla*_{[u,v]_star} z
  VfSeries curvature(const VfSeries& u, const VfSeries& v, const VfSeries& z);

  TorsionTensor torsion_coeffs();
  CurvatureTensor curvature_coeffs();
  ConnectionForms forms();

 private:
  VfSeries cov_frame_dir(int i, const std::vector<FnSeries>& vt);
  // nabla*_w e_j for a plain field w, cached by intern id
  const VfSeries& cov_plain_frame(const VectorField& w, int j);
  const std::vector<FnSeries>& decompose_plain(const VectorField& w);

  const FrameConnection& conn_;
  const StarContext& ctx_;
  std::vector<VfSeries> gamma_vf_;  // [k*dim + j] = Gamma_{kj}^l * e_l
  std::map<std::pair<int, int>, VfSeries> frame_cov_cache_;
  std::map<int, std::vector<FnSeries>> decomp_cache_;
};

// convenience wrappers matching the one-shot operations
VfSeries cov_deriv(const VfSeries& u, const VfSeries& v,
                   const FrameConnection& conn, const StarContext& ctx);
VfSeries cov_deriv(const VectorField& u, const VectorField& v,
                   const FrameConnection& conn, const StarContext& ctx);
TenSeries cov_deriv_tensor(const VfSeries& u, const TenSeries& t,
                           const FrameConnection& conn, const StarContext& ctx);
VfSeries torsion(const VfSeries& u, const VfSeries& v,
                 const FrameConnection& conn, const StarContext& ctx);
VfSeries curvature(const VfSeries& u, const VfSeries& v, const VfSeries& z,
                   const FrameConnection& conn, const StarContext& ctx);
std::pair<TorsionTensor, CurvatureTensor> extract_coeffs(
    const FrameConnection& conn, const StarContext& ctx);

struct GeomReport {
  // identity name -> per-lambda-order residual term counts
  std::map<std::string, std::vector<long>> residuals;
  bool pass() const {
    for (const auto& [k, v] : residuals)
      for (long n : v)
        if (n) return false;
    return true;
  }
};

// Theta^l = d theta^l - theta^k wedge_star omega_k^l,
// Omega_k^l = d omega_k^l - omega_k^m wedge_star omega_m^l,
// d Theta^i + Theta^j wedge_star omega_j^i = theta^j wedge_star Omega_j^i,
// d Omega_k^l + Omega_k^m wedge_star omega_m^l
//   - omega_k^m wedge_star Omega_m^l = 0
GeomReport cartan_residuals(const FrameConnection& conn,
                            const StarContext& ctx);
GeomReport bianchi_residuals(const FrameConnection& conn,
                             const StarContext& ctx);
// both at once, sharing one engine
GeomReport structure_residuals(const FrameConnection& conn,
                               const StarContext& ctx);

}  // namespace star
