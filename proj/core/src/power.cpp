#include "hdwn/power.hpp"

#include <cmath>

#include "hdwn/distributions.hpp"
#include "hdwn/errors.hpp"

namespace hdwn {

namespace {
double sq(double v) { return v * v; }
}  // namespace

VmaSpec::VmaSpec(Matrix a0, Matrix a1) : a0_(std::move(a0)), a1_(std::move(a1)) {
  if (a0_.rows() != a0_.cols() || a1_.rows() != a1_.cols() ||
      a0_.rows() != a1_.rows())
    throw DomainError("VmaSpec: A0 and A1 must be square with equal dimension");
  if (!a0_.allFinite() || !a1_.allFinite())
    throw DomainError("VmaSpec: non-finite entry");
}

const Matrix& VmaSpec::sigma0_tilde() const {
  if (!s0_) s0_ = a0_.transpose() * a0_;
  return *s0_;
}

const Matrix& VmaSpec::sigma1_tilde() const {
  if (!s1_) s1_ = a1_.transpose() * a1_;
  return *s1_;
}

const Matrix& VmaSpec::sigma01_tilde() const {
  if (!s01_) s01_ = a0_.transpose() * a1_;
  return *s01_;
}

VmaTraces trace_polynomials(const VmaSpec& spec) {
  const Matrix& s0 = spec.sigma0_tilde();
  const Matrix& s1 = spec.sigma1_tilde();
  const Matrix& c = spec.sigma01_tilde();
  const Matrix sum = s0 + s1;
  const Matrix s0s1 = s0 * s1;
  const Matrix ctc = c.transpose() * c;
  const Matrix cct = c * c.transpose();
  const Matrix s0sq = s0 * s0;
  const Matrix s1sq = s1 * s1;

  VmaTraces t;
  t.tr_sum = sum.trace();
  t.tr_sum_sq = sum.squaredNorm();  // sum is symmetric
  t.d2_sum = sum.diagonal().squaredNorm();
  t.tr_s0s1 = s0s1.trace();
  t.d_s0_d_s1 = s0.diagonal().dot(s1.diagonal());
  t.tr_c = c.trace();
  t.tr_cct = c.squaredNorm();
  t.tr_cc = c.cwiseProduct(c.transpose()).sum();
  t.d2_c = c.diagonal().squaredNorm();
  t.tr_sq_sum = s0.squaredNorm() + s1.squaredNorm();
  t.tr_s0s1_sq = s0s1.cwiseProduct(s0s1.transpose()).sum();
  t.d2_s0s1 = s0s1.diagonal().squaredNorm();
  t.d_s0s1_d_sum = s0s1.diagonal().dot(sum.diagonal());
  t.tr_s0s1_sum = (s0s1 * sum).trace();
  t.tr_cs0 = c.cwiseProduct(s0).sum();          // Tr(C S0), S0 symmetric
  t.tr_cs1 = c.cwiseProduct(s1).sum();
  t.tr_s0sq_ct = s0sq.cwiseProduct(c).sum();    // Tr(S0^2 C^T)
  t.tr_s1sq_c = s1sq.cwiseProduct(c.transpose()).sum();
  t.tr_s1_c_s0 = (s1 * c * s0).trace();
  t.tr_ctc_s0 = ctc.cwiseProduct(s0).sum();
  t.tr_cct_s1 = cct.cwiseProduct(s1).sum();
  t.tr_ctc_s0sq = ctc.cwiseProduct(s0sq).sum();
  t.tr_cct_s1sq = cct.cwiseProduct(s1sq).sum();
  t.tr_ct_s1_c_s0 = (c.transpose() * s1 * c * s0).trace();
  t.tr_cct_ctc = cct.cwiseProduct(ctc).sum();   // Tr(C C* C* C), both symmetric
  t.tr_c_ct_ct = (cct * c.transpose()).trace();
  t.tr_s0s1_c = (s0s1 * c).trace();
  t.d_s0s1_d_c = s0s1.diagonal().dot(c.diagonal());
  t.d_c_d_sum = c.diagonal().dot(sum.diagonal());
  t.tr_c_sum = c.cwiseProduct(sum).sum();
  return t;
}

VmaJointMoments vma_joint_moments(const VmaSpec& spec, double T, double nu4) {
  const VmaTraces t = trace_polynomials(spec);
  const double k4 = nu4 - 3.0;
  const double T2 = T * T, T3 = T2 * T;

  VmaJointMoments m;
  m.mu_G = sq(t.tr_sum) / T + t.tr_s0s1 + 2.0 / T * sq(t.tr_c) +
           (t.tr_s0s1 + k4 * t.d_s0_d_s1) / T;
  m.mu_S = sq(t.tr_sum) / T + 4.0 / T2 * t.tr_cct +
           (2.0 * t.tr_sum_sq + k4 * t.d2_sum) / T2;

  const double sum_mix = 2.0 * t.tr_sum_sq + k4 * t.d2_sum;
  m.sigma_S2 = 4.0 / T3 * sq(t.tr_sum) * sum_mix +
               16.0 / T3 * sq(t.tr_sum) * t.tr_cct;

  const double cross_mix =
      2.0 * t.tr_s0s1_sum + k4 * t.d_s0s1_d_sum;
  const double c_sum_mix = 2.0 * t.tr_c_sum + k4 * t.d_c_d_sum;

  m.sigma_G2 =
      4.0 / T3 * sq(t.tr_sum) * sum_mix +
      8.0 / T2 * t.tr_sum * cross_mix +
      2.0 / T2 * sq(t.tr_sq_sum) + 6.0 / T2 * sq(t.tr_s0s1) +
      4.0 / T * (2.0 * t.tr_s0s1_sq + k4 * t.d2_s0s1) +
      8.0 / T2 * t.tr_cct * t.tr_sq_sum + 16.0 / T2 * t.tr_cs1 * t.tr_cs0 +
      16.0 / T2 * t.tr_sum * (t.tr_ctc_s0 + t.tr_cct_s1) +
      16.0 / T2 * t.tr_c * (t.tr_s0sq_ct + t.tr_s1sq_c + 2.0 * t.tr_s1_c_s0) +
      4.0 / T * (t.tr_ctc_s0sq + t.tr_cct_s1sq + 2.0 * t.tr_ct_s1_c_s0) +
      16.0 / T3 * sq(t.tr_sum) * t.tr_cct + 16.0 / T3 * sq(t.tr_c) * t.tr_sum_sq +
      32.0 / T3 * t.tr_sum * t.tr_c * t.tr_c_sum +
      4.0 / T * t.tr_cct_ctc + 12.0 / T2 * sq(t.tr_cct) +
      16.0 / T2 * t.tr_c * t.tr_c_ct_ct +
      16.0 / T3 * sq(t.tr_c) * (t.tr_cc + 2.0 * t.tr_cct + k4 * t.d2_c) +
      8.0 / T2 * sq(t.tr_cs1) +
      16.0 / T3 * t.tr_c * t.tr_sum * c_sum_mix +
      8.0 / T2 * sq(t.tr_cs0) +
      16.0 / T2 * t.tr_c * (2.0 * t.tr_s0s1_c + k4 * t.d_s0s1_d_c);

  m.sigma_GS = 4.0 / T3 * sq(t.tr_sum) * sum_mix +
               4.0 / T2 * t.tr_sum * cross_mix +
               8.0 / T2 * t.tr_sum * (t.tr_ctc_s0 + t.tr_cct_s1) +
               16.0 / T3 * sq(t.tr_sum) * t.tr_cct +
               8.0 / T3 * t.tr_c * t.tr_sum * c_sum_mix +
               16.0 / T3 * t.tr_sum * t.tr_c * t.tr_c_sum;
  return m;
}

namespace {

double g11_sigma2(const VmaTraces& t, double T, double nu4) {
  const double k4 = nu4 - 3.0;
  const double T2 = T * T, T3 = T2 * T;
  return 2.0 / T2 * sq(t.tr_sq_sum) +
         4.0 / T * (2.0 * t.tr_s0s1_sq + k4 * t.d2_s0s1) +
         6.0 / T2 * sq(t.tr_s0s1) + 8.0 / T2 * t.tr_cct * t.tr_sq_sum +
         16.0 / T2 * t.tr_cs1 * t.tr_cs0 +
         16.0 / T2 * t.tr_c * (t.tr_s0sq_ct + t.tr_s1sq_c + 2.0 * t.tr_s1_c_s0) +
         4.0 / T * (t.tr_ctc_s0sq + t.tr_cct_s1sq + 2.0 * t.tr_ct_s1_c_s0) +
         16.0 / T3 * sq(t.tr_c) * t.tr_sum_sq + 4.0 / T * t.tr_cct_ctc +
         12.0 / T2 * sq(t.tr_cct) + 16.0 / T2 * t.tr_c * t.tr_c_ct_ct +
         16.0 / T3 * sq(t.tr_c) * (t.tr_cc + 2.0 * t.tr_cct + k4 * t.d2_c) +
         8.0 / T2 * sq(t.tr_cs1) + 8.0 / T2 * sq(t.tr_cs0) +
         16.0 / T2 * t.tr_c * (2.0 * t.tr_s0s1_c + k4 * t.d_s0s1_d_c);
}

double g11_mu_leading(const VmaTraces& t, double T, double nu4) {
  return t.tr_s0s1 + 2.0 / T * sq(t.tr_c) +
         (t.tr_s0s1 + (nu4 - 3.0) * t.d_s0_d_s1) / T;
}

}  // namespace

G11Law g11_law(const VmaSpec& spec, double T, double nu4) {
  const VmaTraces t = trace_polynomials(spec);
  const double k4 = nu4 - 3.0;
  G11Law law;
  law.mu = g11_mu_leading(t, T, nu4) - 4.0 / (T * T) * t.tr_cct -
           (2.0 * t.tr_sum_sq + k4 * t.d2_sum) / (T * T);
  law.sigma = std::sqrt(g11_sigma2(t, T, nu4));
  return law;
}

G11Law g11_law_limit(const VmaSpec& spec, double T, double nu4) {
  const VmaTraces t = trace_polynomials(spec);
  G11Law law;
  law.mu = g11_mu_leading(t, T, nu4);
  law.sigma = std::sqrt(g11_sigma2(t, T, nu4));
  return law;
}

double xi0(const VmaSpec& spec, double T) {
  const VmaTraces t = trace_polynomials(spec);
  return std::sqrt(2.0) *
         (t.tr_sq_sum / T + 2.0 / T * t.tr_cct + 2.0 / (T * T) * sq(t.tr_c));
}

PowerPrediction power_beta(const VmaSpec& spec, double T, double nu4,
                           double alpha) {
  const G11Law law = g11_law_limit(spec, T, nu4);
  if (!(law.sigma > 0.0))
    throw DegenerateVarianceError("power_beta: sigma_G11 <= 0");
  PowerPrediction out;
  out.mu_G11 = law.mu;
  out.sigma_G11 = law.sigma;
  out.xi0 = xi0(spec, T);
  const double z = normal_upper_quantile(alpha);
  out.beta = 1.0 - normal_cdf(z * out.xi0 / law.sigma - law.mu / law.sigma);
  return out;
}

}  // namespace hdwn
