#include "hdwn/moments.hpp"

#include <cmath>

#include "hdwn/errors.hpp"

namespace hdwn {

namespace {

double sq(double v) { return v * v; }

// Contractions used by V5/V6/V7, written as plain loops. This module trades
// speed for transparency: every expression below mirrors one displayed term.
struct Contractions {
  Matrix s2m, s3m;          // Sigma^2, Sigma^3
  Eigen::VectorXd d;        // diag(Sigma)
  double tr = 0, tr2 = 0, tr3 = 0, tr4 = 0;  // Tr(Sigma^k)
  double tr_d2 = 0;         // sum d_i^2
  double tr_d3 = 0;         // sum d_i^3
  double tr_d4 = 0;         // sum d_i^4
  double tr_d2_s2 = 0;      // sum_i ((S^2)_ii)^2
  double tr_dd_s2 = 0;      // sum_i d_i (S^2)_ii
  double tr_dd2_s2 = 0;     // sum_i d_i^2 (S^2)_ii
  double tr_d_s3 = 0;       // sum_i d_i (S^3)_ii
  double s_had3 = 0;        // sum_ij S_ij^3
  double s_had4 = 0;        // sum_ij S_ij^4
  double had2_s2 = 0;       // sum_ij (S^2)_ij S_ij^2
  double dSd = 0;           // sum_ij d_i S_ij d_j
  double dS2d = 0;          // sum_ij d_i (S^2)_ij d_j
  double d2S = 0;           // sum_ij d_i^2 S_ij  (= iota* D^2(S) S iota)
  double d_had2_d = 0;      // sum_ij d_i S_ij^2 d_j
  double had3_d = 0;        // sum_ij S_ij^3 d_j
  double dSd2 = 0;          // sum_ij d_i S_ij d_j^2
  double had2_S_d = 0;      // sum_ijk S_ij^2 S_jk d_k
};

Contractions contract(const Matrix& s) {
  const Eigen::Index p = s.rows();
  Contractions c;
  c.s2m = s * s;
  c.s3m = c.s2m * s;
  c.d = s.diagonal();
  c.tr = s.trace();
  c.tr2 = c.s2m.trace();
  c.tr3 = c.s3m.trace();
  c.tr4 = c.s2m.squaredNorm();  // Tr(S^4) for symmetric S
  for (Eigen::Index i = 0; i < p; ++i) {
    c.tr_d2 += sq(c.d[i]);
    c.tr_d3 += c.d[i] * sq(c.d[i]);
    c.tr_d4 += sq(sq(c.d[i]));
    c.tr_d2_s2 += sq(c.s2m(i, i));
    c.tr_dd_s2 += c.d[i] * c.s2m(i, i);
    c.tr_dd2_s2 += sq(c.d[i]) * c.s2m(i, i);
    c.tr_d_s3 += c.d[i] * c.s3m(i, i);
  }
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double v = s(i, j);
      c.s_had3 += v * v * v;
      c.s_had4 += sq(sq(v));
      c.had2_s2 += c.s2m(i, j) * v * v;
      c.dSd += c.d[i] * v * c.d[j];
      c.dS2d += c.d[i] * c.s2m(i, j) * c.d[j];
      c.d2S += sq(c.d[i]) * v;
      c.d_had2_d += c.d[i] * v * v * c.d[j];
      c.had3_d += v * v * v * c.d[j];
      c.dSd2 += c.d[i] * v * sq(c.d[j]);
    }
  }
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j)
      for (Eigen::Index k = 0; k < p; ++k)
        c.had2_S_d += sq(s(i, j)) * s(j, k) * c.d[k];
  return c;
}

}  // namespace

VSet moments_V_quadratic(const Matrix& s, const InnovationMoments& m) {
  // Real Sigma0 throughout, so Re(Sigma0) = Sigma0 and Sigma0^T = Sigma0.
  const Matrix s2m = s * s;
  const double tr = s.trace();
  const double tr2 = s2m.trace();
  const double tr4 = s2m.squaredNorm();
  const double tr_d2 = s.diagonal().squaredNorm();
  const double tr_d2_s2 = s2m.diagonal().squaredNorm();

  VSet v;
  v.V1 = tr;
  v.V2 = sq(tr) + (m.nu4 - m.b - 2.0) * tr_d2 + 2.0 * tr2 + (m.b - 1.0) * tr2;
  v.V3 = m.b * tr2;
  v.V3p = tr2;
  v.V4 = sq(m.b) * sq(tr2) + (m.zbar4_z2sq - 3.0 * sq(m.b)) * tr_d2_s2 +
         2.0 * sq(m.b) * tr4;
  v.V4p = sq(tr2) + (m.nu4 - m.b - 2.0) * tr_d2_s2 + 2.0 * tr4 +
          (m.b - 1.0) * tr4;
  v.V5 = v.V6 = v.V7 = std::nan("");
  return v;
}

VSet moments_V(const Matrix& s, const InnovationMoments& m) {
  if (m.b != 1.0 || !std::isfinite(m.nu5) || !std::isfinite(m.nu6) ||
      !std::isfinite(m.nu8))
    throw InsufficientMomentsError(
        "moments_V: V5..V7 need a real law with moments through nu8");
  VSet v = moments_V_quadratic(s, m);
  const Contractions c = contract(s);
  const double k4 = m.nu4 - 3.0;
  const double k6 = m.nu6 - 10.0 * sq(m.nu3) - 15.0 * k4 - 15.0;
  const double k53 = m.nu5 - 10.0 * m.nu3;

  v.V5 = c.tr * sq(c.tr) + 6.0 * c.tr * c.tr2 + 8.0 * c.tr3 +
         k4 * (3.0 * c.tr_d2 * c.tr + 4.0 * c.tr_dd_s2 + 8.0 * c.tr_dd_s2) +
         sq(m.nu3) * (4.0 * c.s_had3 + 2.0 * c.dSd + 4.0 * c.d2S) +
         k6 * c.s_had3;

  v.V6 =
      sq(sq(c.tr)) + 12.0 * c.tr2 * sq(c.tr) + 12.0 * sq(c.tr2) +
      32.0 * c.tr * c.tr3 + 48.0 * c.tr4 +
      k4 * (6.0 * sq(c.tr) * c.tr_d2 + 12.0 * c.tr2 * c.tr_d2 +
            48.0 * c.tr * c.tr_dd_s2 + 48.0 * c.tr_d2_s2 + 96.0 * c.tr_d_s3) +
      sq(k4) * (3.0 * sq(c.tr_d2) + 24.0 * c.d_had2_d + 8.0 * c.s_had4) +
      (m.nu6 - 15.0 * k4 - 10.0 * sq(m.nu3) - 15.0) *
          (4.0 * c.tr * c.tr_d3 + 24.0 * c.tr_dd2_s2) +
      2.0 * sq(m.nu3) *
          (12.0 * c.dSd * c.tr + 24.0 * c.dS2d + 8.0 * c.s_had3 * c.tr +
           48.0 * c.had2_S_d + 48.0 * c.had2_s2) +
      2.0 * m.nu3 * k53 * (12.0 * c.dSd2 + 16.0 * c.had3_d) +
      (m.nu8 - 28.0 * m.nu6 + 210.0 * k4 - 35.0 * sq(k4) -
       56.0 * m.nu3 * k53 + 315.0) *
          c.tr_d4;

  v.V7 = sq(m.nu3) * c.dS2d;
  return v;
}

GqMoments exact_gq_moments(const Matrix& s, const InnovationMoments& m, int q,
                           int T) {
  const VSet v = moments_V_quadratic(s, m);
  const double Td = static_cast<double>(T);
  const double T3 = Td * Td * Td;
  const double qd = static_cast<double>(q);
  GqMoments g;
  g.mean = qd * sq(v.V1) / Td;
  // The within-lag coefficient on (V3^2 + V3p^2) is T-3: of the T^2 index
  // pairs with s1 = s2, t1 = t2, one coincides with the diagonal class and
  // two are the lag-offset classes already counted through V4 and V4p.
  g.var = (qd * sq(v.V2 - sq(v.V1)) + 2.0 * qd * (v.V4 + v.V4p) +
           qd * (Td - 3.0) * (sq(v.V3) + sq(v.V3p))) /
              T3 +
          4.0 * qd * qd * sq(v.V1) * (v.V2 - sq(v.V1)) / T3;
  return g;
}

S1sqMoments exact_s1sq_moments(const Matrix& s, const InnovationMoments& m,
                               int T) {
  const VSet v = moments_V(s, m);
  const double p = static_cast<double>(s.rows());
  const double Td = static_cast<double>(T);
  const double p2 = p * p, T2 = Td * Td, T3 = T2 * Td;
  S1sqMoments r;
  r.mean = sq(v.V1) / p - (sq(v.V1) - v.V2) / (p * Td);
  r.var = v.V6 / (p2 * T3) + (4.0 / (p2 * T2) - 4.0 / (p2 * T3)) * v.V1 * v.V5 +
          (2.0 / (p2 * T2) - 3.0 / (p2 * T3)) * sq(v.V2) +
          (4.0 / (p2 * Td) - 16.0 / (p2 * T2) + 12.0 / (p2 * T3)) * sq(v.V1) * v.V2 +
          (-4.0 / (p2 * Td) + 10.0 / (p2 * T2) - 6.0 / (p2 * T3)) * sq(sq(v.V1));
  return r;
}

double exact_cov_gq_s1sq(const Matrix& s, const InnovationMoments& m, int q,
                         int T) {
  const VSet v = moments_V(s, m);
  const double p = static_cast<double>(s.rows());
  const double Td = static_cast<double>(T);
  const double T2 = Td * Td, T3 = T2 * Td;
  const double per_lag =
      (4.0 / (p * T2) - 10.0 / (p * T3)) * sq(v.V1) * (v.V2 - sq(v.V1)) -
      4.0 / (p * T3) * sq(sq(v.V1)) + 2.0 / (p * T3) * v.V1 * v.V5 +
      2.0 / (p * T3) * sq(v.V2) + 4.0 / (p * T3) * v.V7;
  return q * per_lag;
}

LeadingOrderMoments leading_order_moments(const Matrix& s, const InnovationMoments& m,
                             int q, int T) {
  const double p = static_cast<double>(s.rows());
  const double Td = static_cast<double>(T);
  const double qd = static_cast<double>(q);
  const double tr = s.trace();
  const double tr2 = (s * s).trace();
  const double trd2 = s.diagonal().squaredNorm();
  const double mix = 2.0 * tr2 + (m.nu4 - 3.0) * trd2;

  LeadingOrderMoments r;
  r.mean_ps1sq = sq(tr) / p + mix / (p * Td);
  r.var_ps1sq = 4.0 / (p * p * Td) * sq(tr) * mix;
  r.mean_gq = qd / Td * sq(tr);
  r.var_gq = 4.0 * qd * qd / (Td * Td * Td) * sq(tr) * mix +
             2.0 * qd / (Td * Td) * sq(tr2) + qd / (Td * Td * Td) * sq(mix);
  r.cov_gq_ps1sq = 4.0 * qd / (p * Td * Td) * sq(tr) * mix;
  r.mean_s2hat = tr2 / p + sq(tr) / (p * Td) +
                 (tr2 + (m.nu4 - 3.0) * trd2) / (p * Td);
  return r;
}

}  // namespace hdwn
