#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sllg/ansatz_calculus.hpp"
#include "sllg/collective.hpp"
#include "sllg/errors.hpp"

// Numerical solution of the tangent-space orthogonality conditions. The
// ansatz manifold is m(p; x) = R(theta, eta, psi) m0(xi), xi = (x - phi)/w.
// Writing the field equation in Ito form dm = F dt + sigma (m x g) dW and
// the reduced model dp = f dt + s dW, the orthogonality of the residual to
// the tangent vectors t_k = dm/dp_k gives two linear systems with the Gram
// matrix G_kj = <t_j, t_k>:
//
//   G s = sigma <m x g, t_k>                      (diffusion first)
//   G f = <F, t_k> - 1/2 sum_ij s_i s_j <d2m/dp_i dp_j, t_k>
//
// Inner products over the line diverge: tangents along theta and eta tend to
// nonzero constants as |x| -> infinity. Every inner product on [-T, T] (in
// xi units) is therefore represented exactly as a + b T by subtracting the
// asymptotic values with weights (1 +- tanh xi)/2, whose integral over the
// symmetric interval is exactly T. The infinite-length limit then decouples:
// the T coefficients form a 2x2 system on (theta, eta) and the finite parts
// a 3x3 system on (w, phi, psi).

namespace sllg {

namespace {

// rotation R = R3[theta] R2[-eta] R1[psi] and the rotation generators of the
// three angles: t_a = u_a x m
struct ChartFrame {
  double w, theta, eta, psi;
  Vec3 u_theta, u_eta, u_psi;
  Vec3 du_eta_dtheta, du_psi_dtheta, du_psi_deta;

  explicit ChartFrame(const CCState& s) : w(s.w), theta(s.theta), eta(s.eta), psi(s.psi) {
    Vec3 e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
    u_theta = e3;
    u_eta = -rotate_axis(3, theta, e2);
    u_psi = rotate_axis(3, theta, rotate_axis(2, -eta, e1));
    du_eta_dtheta = cross(e3, u_eta);
    du_psi_dtheta = cross(e3, u_psi);
    du_psi_deta = cross(u_eta, u_psi);
  }

  Vec3 rot(const Vec3& v) const { return chart_rotation(theta, eta, psi, v); }
};

// everything needed at one profile coordinate xi
struct PointData {
  Vec3 m;
  std::array<Vec3, 5> t;                  // first partials
  std::array<std::array<Vec3, 5>, 5> d2;  // second partials
  Vec3 mxg;                               // m x g
  Vec3 F;                                 // Ito drift of the field equation
};

PointData evaluate_point(const ChartFrame& fr, const ModelParams& par, double xi) {
  PointData p;
  double w = fr.w;
  Vec3 m0 = front_profile(xi);
  Vec3 d1 = front_profile_d1(xi);
  Vec3 d2p = front_profile_d2(xi);
  Vec3 Rm0 = fr.rot(m0), Rd1 = fr.rot(d1), Rd2 = fr.rot(d2p);

  p.m = Rm0;
  p.t[kW] = (-xi / w) * Rd1;
  p.t[kTheta] = cross(fr.u_theta, Rm0);
  p.t[kEta] = cross(fr.u_eta, Rm0);
  p.t[kPhi] = (-1.0 / w) * Rd1;
  p.t[kPsi] = cross(fr.u_psi, Rm0);

  // xi derivatives: xi_w = -xi/w, xi_phi = -1/w, xi_ww = 2 xi/w^2,
  // xi_wphi = 1/w^2, xi_phiphi = 0
  p.d2[kW][kW] = (xi * xi / (w * w)) * Rd2 + (2.0 * xi / (w * w)) * Rd1;
  p.d2[kW][kPhi] = (xi / (w * w)) * Rd2 + (1.0 / (w * w)) * Rd1;
  p.d2[kPhi][kPhi] = (1.0 / (w * w)) * Rd2;

  const std::array<Vec3, 3> u{fr.u_theta, fr.u_eta, fr.u_psi};
  const std::array<int, 3> ai{kTheta, kEta, kPsi};
  for (int a = 0; a < 3; ++a) {
    p.d2[kW][ai[a]] = cross(u[a], p.t[kW]);
    p.d2[ai[a]][kPhi] = cross(u[a], p.t[kPhi]);
  }

  // angle-angle: d_a (u_b x m) = (d_a u_b) x m + u_b x (u_a x m);
  // the table of generator derivatives makes this symmetric in (a, b)
  std::array<std::array<Vec3, 3>, 3> du{};  // du[a][b] = d u_b / d angle_a
  du[0][1] = fr.du_eta_dtheta;
  du[0][2] = fr.du_psi_dtheta;
  du[1][2] = fr.du_psi_deta;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b)
      p.d2[ai[a]][ai[b]] = cross(du[a][b], Rm0) + cross(u[b], cross(u[a], Rm0));

  // mirror to the lower triangle
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < i; ++j) p.d2[i][j] = p.d2[j][i];

  p.mxg = cross(p.m, par.g);

  // H = m_xx - m2 e2 - m3 e3 on the manifold; m_xx = R m0'' / w^2
  Vec3 H = (1.0 / (w * w)) * Rd2 - Vec3{0.0, p.m.y, p.m.z};
  Vec3 mxH = cross(p.m, H);
  p.F = -1.0 * mxH - par.lambda * cross(p.m, mxH) +
        0.5 * par.sigma * par.sigma * cross(p.mxg, par.g);
  return p;
}

// Gauss-Legendre nodes/weights on [-1, 1], cached per order.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(static_cast<std::size_t>(n));
  w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = -z;
    x[static_cast<std::size_t>(n - 1 - i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
  }
}

// inner product over x in [phi - wT, phi + wT] represented as a + b T
struct AffinePair {
  double a = 0.0, b = 0.0;
};

}  // namespace

Vec3 ansatz_partial(const CCState& state, int k, double x) {
  ChartFrame fr(state);
  double xi = (x - state.phi) / state.w;
  PointData p = evaluate_point(fr, ModelParams{}, xi);
  return p.t[static_cast<std::size_t>(k)];
}

Vec3 ansatz_second_partial(const CCState& state, int i, int j, double x) {
  ChartFrame fr(state);
  double xi = (x - state.phi) / state.w;
  PointData p = evaluate_point(fr, ModelParams{}, xi);
  return p.d2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

CCCoefficients projection_oracle(const CCState& state, const ModelParams& params,
                                 double L_quad, int n_quad) {
  if (state.w <= 0.0) throw ValidationError("projection_oracle: w must be positive");
  if (std::abs(std::cos(state.eta)) < 1e-6)
    throw ChartSingularity("projection_oracle: |cos eta| < 1e-6");
  if (L_quad <= 0.0) L_quad = 40.0 * state.w;
  if (L_quad < 40.0 * state.w)
    throw ValidationError("projection_oracle: L_quad must be at least 40 w");

  ChartFrame fr(state);
  const double w = state.w;
  const double T = L_quad / w;  // quadrature half-width in xi units

  std::vector<double> gx, gw;
  gauss_legendre(n_quad, gx, gw);

  std::vector<PointData> pts(static_cast<std::size_t>(n_quad));
  std::vector<double> sig_p(static_cast<std::size_t>(n_quad)),
      sig_m(static_cast<std::size_t>(n_quad));
  for (int q = 0; q < n_quad; ++q) {
    double xi = T * gx[static_cast<std::size_t>(q)];
    pts[static_cast<std::size_t>(q)] = evaluate_point(fr, params, xi);
    double th = std::tanh(xi);
    sig_p[static_cast<std::size_t>(q)] = 0.5 * (1.0 + th);
    sig_m[static_cast<std::size_t>(q)] = 0.5 * (1.0 - th);
  }
  // asymptotic evaluation point: tanh(40) == 1 in double precision and the
  // sech-decaying parts are below 1e-16
  const double kXiTail = 40.0;
  PointData tail_p = evaluate_point(fr, params, kXiTail);
  PointData tail_m = evaluate_point(fr, params, -kXiTail);

  // integral of f over [-wT, wT] in x as a + b T, with the asymptotic values
  // subtracted under the weights (1 +- tanh) / 2 whose integral is exactly T
  auto integrate = [&](auto&& f) -> AffinePair {
    double fp = f(tail_p), fm = f(tail_m);
    double acc = 0.0;
    for (int q = 0; q < n_quad; ++q) {
      std::size_t k = static_cast<std::size_t>(q);
      acc += gw[k] * (f(pts[k]) - fp * sig_p[k] - fm * sig_m[k]);
    }
    return {w * T * acc, w * (fp + fm)};
  };

  std::array<std::array<AffinePair, 5>, 5> G;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) {
      G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          integrate([&](const PointData& p) {
            return dot(p.t[static_cast<std::size_t>(i)], p.t[static_cast<std::size_t>(j)]);
          });
      G[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

  // the divergent parts must live on the (theta, eta) block only
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      bool div_block = (i == kTheta || i == kEta) && (j == kTheta || j == kEta);
      if (!div_block && std::abs(G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].b) >
                            1e-10 * (1.0 + std::abs(G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].a)))
        throw IllConditioned("projection_oracle: unexpected divergence in Gram entry (" +
                             std::to_string(i) + "," + std::to_string(j) + ")");
    }

  // limit solve: 2x2 system of T coefficients on (theta, eta), then the 3x3
  // finite system on (w, phi, psi) with the solved pair moved to the RHS
  auto limit_solve = [&](const std::array<AffinePair, 5>& rhs) -> std::array<double, 5> {
    Eigen::Matrix2d M1;
    M1 << G[kTheta][kTheta].b, G[kTheta][kEta].b, G[kEta][kTheta].b, G[kEta][kEta].b;
    Eigen::Vector2d r1(rhs[kTheta].b, rhs[kEta].b);
    auto lu1 = M1.fullPivLu();
    if (lu1.rcond() < 1e-10)
      throw IllConditioned("projection_oracle: divergent block singular");
    Eigen::Vector2d s1 = lu1.solve(r1);

    const std::array<int, 3> fin{kW, kPhi, kPsi};
    Eigen::Matrix3d M0;
    Eigen::Vector3d r0;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b)
        M0(a, b) = G[static_cast<std::size_t>(fin[static_cast<std::size_t>(a)])]
                    [static_cast<std::size_t>(fin[static_cast<std::size_t>(b)])]
                        .a;
      r0(a) = rhs[static_cast<std::size_t>(fin[static_cast<std::size_t>(a)])].a -
              G[static_cast<std::size_t>(fin[static_cast<std::size_t>(a)])][kTheta].a * s1(0) -
              G[static_cast<std::size_t>(fin[static_cast<std::size_t>(a)])][kEta].a * s1(1);
    }
    auto lu0 = M0.fullPivLu();
    if (lu0.rcond() < 1e-10)
      throw IllConditioned("projection_oracle: finite block singular");
    Eigen::Vector3d s0 = lu0.solve(r0);

    std::array<double, 5> out{};
    out[kW] = s0(0);
    out[kTheta] = s1(0);
    out[kEta] = s1(1);
    out[kPhi] = s0(1);
    out[kPsi] = s0(2);
    return out;
  };

  // diffusion system
  std::array<AffinePair, 5> rhs_sigma;
  for (int k = 0; k < 5; ++k)
    rhs_sigma[static_cast<std::size_t>(k)] = integrate([&](const PointData& p) {
      return params.sigma * dot(p.mxg, p.t[static_cast<std::size_t>(k)]);
    });
  std::array<double, 5> s = limit_solve(rhs_sigma);

  // drift system, with the Ito second-derivative correction using the solved s
  std::array<AffinePair, 5> rhs_f;
  for (int k = 0; k < 5; ++k)
    rhs_f[static_cast<std::size_t>(k)] = integrate([&](const PointData& p) {
      double corr = 0.0;
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
          corr += s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)] *
                  dot(p.d2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                      p.t[static_cast<std::size_t>(k)]);
      return dot(p.F, p.t[static_cast<std::size_t>(k)]) - 0.5 * corr;
    });
  std::array<double, 5> f = limit_solve(rhs_f);

  CCCoefficients out;
  out.f = f;
  out.s = s;
  return out;
}

}  // namespace sllg
