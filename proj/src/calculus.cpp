#include "ilab/calculus.hpp"

#include "ilab/euclidean.hpp"

#include <algorithm>

namespace ilab {

Mat4 exterior_d1(const CovectorField& beta, const Point4& p, const Scheme& s) {
  const double h = s.h(p);
  Mat4 D;  // D(i, j) = d_i beta_j
  for (int i = 0; i < 4; ++i) D.row(i) = fd::partial(beta, p, i, h, s.order).transpose();
  return D - D.transpose();
}

ThreeForm exterior_d2(const TensorField& W, const Point4& p, const Scheme& s) {
  const double h = s.h(p);
  std::array<Mat4, 4> D;
  for (int i = 0; i < 4; ++i) D[i] = fd::partial(W, p, i, h, s.order);
  ThreeForm c;
  for (int l = 0; l < 4; ++l) {
    int idx[3], n = 0;
    for (int a = 0; a < 4; ++a)
      if (a != l) idx[n++] = a;
    const int i = idx[0], j = idx[1], k = idx[2];
    c[l] = D[i](j, k) + D[j](k, i) + D[k](i, j);
  }
  return c;
}

EndoField constant_endo(const Mat4& J) {
  return [J](const Point4&) { return J; };
}

Mat4 ddc_from_gradient(const CovectorField& df, const EndoField& J, const Point4& p, const Scheme& s) {
  auto jdf = [&](const Point4& q) -> Vec4 { return act_covector(J(q), df(q)); };
  return exterior_d1(jdf, p, s);
}

Mat4 ddc(const ScalarField& f, const EndoField& J, const Point4& p, const Scheme& s) {
  // the inner gradient uses the outer step so the nested stencil stays consistent
  const double h = s.h(p);
  auto df = [&](const Point4& q) -> Vec4 {
    Vec4 g;
    for (int i = 0; i < 4; ++i) g[i] = fd::partial(f, q, i, h, s.order);
    return g;
  };
  return ddc_from_gradient(df, J, p, s);
}

double norm_covector(const Vec4& b, const Mat4& ginv) { return std::sqrt(std::max(0.0, b.dot(ginv * b))); }

double norm_tensor(const Mat4& T, const Mat4& ginv) {
  return std::sqrt(std::max(0.0, (ginv * T * ginv * T.transpose()).trace()));
}

double norm_endo(const Mat4& J, const Mat4& g, const Mat4& ginv) {
  return std::sqrt(std::max(0.0, (g * J * ginv * J.transpose()).trace()));
}

Mat4 inverse_spd(const Mat4& g) {
  Eigen::LLT<Mat4> llt(g);
  if (llt.info() != Eigen::Success) throw LabError(ErrorKind::NotPositiveDefinite, "metric failed Cholesky");
  return llt.solve(Mat4::Identity());
}

Mat4 hodge(const Mat4& W, const Mat4& g) {
  const Mat4 ginv = inverse_spd(g);
  const Mat4 Wup = ginv * W * ginv;
  // (*W)_cd = 1/2 sqrt(det g) W^ab eps_abcd
  return std::sqrt(g.determinant()) * hodge_e(Wup);
}

MetricJet metric_jet(const TensorField& g, const Point4& p, const Scheme& s, bool second) {
  MetricJet jet;
  const double h = s.h(p);
  jet.g = fd::eval(g, p);
  jet.ginv = inverse_spd(jet.g);
  for (int c = 0; c < 4; ++c) jet.dg[c] = fd::partial(g, p, c, h, s.order);
  if (second) {
    for (int c = 0; c < 4; ++c)
      for (int d = c; d < 4; ++d) {
        jet.ddg[c][d] = fd::partial2(g, p, c, d, h, s.order);
        jet.ddg[d][c] = jet.ddg[c][d];
      }
  }
  return jet;
}

Christoffel christoffel(const MetricJet& jet) {
  Christoffel G;
  std::array<Mat4, 4> low;  // low[a](b, c) = Gamma_{a b c}
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        low[a](b, c) = 0.5 * (jet.dg[b](a, c) + jet.dg[c](a, b) - jet.dg[a](b, c));
  for (int a = 0; a < 4; ++a) {
    G.up[a].setZero();
    for (int d = 0; d < 4; ++d) G.up[a] += jet.ginv(a, d) * low[d];
  }
  return G;
}

Christoffel levi_civita(const TensorField& g, const Point4& p, const Scheme& s) {
  return christoffel(metric_jet(g, p, s, false));
}

Curvature curvature(const MetricJet& jet) {
  const Christoffel G = christoffel(jet);
  Curvature K;
  auto at = [](int a, int b, int c, int d) { return ((a * 4 + b) * 4 + c) * 4 + d; };
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double v = 0.5 * (jet.ddg[b][c](a, d) + jet.ddg[a][d](b, c) - jet.ddg[a][c](b, d) -
                            jet.ddg[b][d](a, c));
          for (int e = 0; e < 4; ++e)
            for (int f = 0; f < 4; ++f)
              v += jet.g(e, f) * (G.up[e](b, c) * G.up[f](a, d) - G.up[e](b, d) * G.up[f](a, c));
          K.R[at(a, b, c, d)] = v;
        }
  const Mat4& gi = jet.ginv;
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      double v = 0;
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) v += gi(a, c) * K.R[at(a, b, c, d)];
      K.ricci(b, d) = v;
    }
  K.scalar = (gi * K.ricci).trace();
  K.ricci_norm = norm_tensor(K.ricci, gi);

  // |Rm|^2 = R_abcd R^abcd, raising one index at a time
  std::array<double, 256> up = K.R;
  for (int slot = 0; slot < 4; ++slot) {
    std::array<double, 256> next{};
    for (int i = 0; i < 256; ++i) {
      int idx[4] = {i >> 6, (i >> 4) & 3, (i >> 2) & 3, i & 3};
      double v = 0;
      for (int e = 0; e < 4; ++e) {
        int j[4] = {idx[0], idx[1], idx[2], idx[3]};
        j[slot] = e;
        v += gi(idx[slot], e) * up[at(j[0], j[1], j[2], j[3])];
      }
      next[i] = v;
    }
    up = next;
  }
  double sq = 0;
  for (int i = 0; i < 256; ++i) sq += K.R[i] * up[i];
  K.rm_norm = std::sqrt(std::max(0.0, sq));

  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          K.bianchi = std::max(K.bianchi, std::abs(K.R[at(a, b, c, d)] + K.R[at(a, c, d, b)] +
                                                   K.R[at(a, d, b, c)]));
  return K;
}

Curvature curvature(const TensorField& g, const Point4& p, const Scheme& s) {
  return curvature(metric_jet(g, p, s, true));
}

std::array<Mat4, 4> nabla_tensor(const TensorField& T, const TensorField& g, const Point4& p,
                                 const Scheme& s) {
  const Christoffel G = levi_civita(g, p, s);
  const Mat4 T0 = fd::eval(T, p);
  std::array<Mat4, 4> N;
  for (int c = 0; c < 4; ++c) {
    const Mat4 dT = fd::partial(T, p, c, s.h(p), s.order);
    Mat4 Gc;  // Gc(e, a) = Gamma^e_{c a}
    for (int e = 0; e < 4; ++e) Gc.row(e) = G.up[e].row(c);
    N[c] = dT - Gc.transpose() * T0 - T0 * Gc;
  }
  return N;
}

double norm_3tensor(const std::array<Mat4, 4>& N, const Mat4& ginv) {
  double sq = 0;
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d) sq += ginv(c, d) * (ginv * N[c] * ginv * N[d].transpose()).trace();
  return std::sqrt(std::max(0.0, sq));
}

double trace(const Mat4& h, const Mat4& ginv) { return (ginv * h).trace(); }

Vec4 divergence(const TensorField& h, const TensorField& g, const Point4& p, const Scheme& s) {
  const auto N = nabla_tensor(h, g, p, s);
  const Mat4 ginv = inverse_spd(g(p));
  Vec4 out = Vec4::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) out -= ginv(a, b) * N[a].row(b).transpose();
  return out;
}

Vec4 divergence_e(const TensorField& h, const Point4& p, const Scheme& s) {
  Vec4 out = Vec4::Zero();
  for (int a = 0; a < 4; ++a) out -= fd::partial(h, p, a, s.h(p), s.order).row(a).transpose();
  return out;
}

double laplacian_e(const ScalarField& f, const Point4& p, const Scheme& s) {
  double v = 0;
  for (int i = 0; i < 4; ++i) v += fd::partial2(f, p, i, i, s.h(p), s.order);
  return -v;
}

double laplacian_s3(const ScalarField& f, const Point4& x, const Scheme& s) {
  const Point4 u = x.normalized();
  auto ext = [&](const Point4& q) { return f(q.normalized()); };
  return laplacian_e(ext, u, s);
}

TensorField pullback(const TensorField& T, const Chart& chart) {
  return [T, chart](const Vec4& w) -> Mat4 {
    const Mat4 D = chart.jacobian(w);
    return D.transpose() * T(chart.to_point(w)) * D;
  };
}

DecayFit fit_power_law(const std::vector<std::pair<double, double>>& samples) {
  DecayFit fit;
  fit.samples = samples;
  const int n = static_cast<int>(samples.size());
  if (n < 2) throw LabError(ErrorKind::ConfigError, "decay fit needs at least two samples");
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const auto [R, v] = samples[i];
    if (!std::isfinite(v) || !(R > 0))
      throw LabError(ErrorKind::NonFinite, "non-finite sample at radius " + std::to_string(R));
    A(i, 0) = std::log(R);
    A(i, 1) = 1.0;
    b[i] = std::log(std::max(std::abs(v), 1e-300));
  }
  const Eigen::Vector2d x = A.colPivHouseholderQr().solve(b);
  fit.exponent = x[0];
  fit.intercept = x[1];
  fit.residual = std::sqrt((A * x - b).squaredNorm() / n);
  return fit;
}

DecayFit fit_decay(const std::function<double(double)>& norm_at, const std::vector<double>& radii) {
  if (radii.size() < 6 || radii.back() < 10 * radii.front())
    throw LabError(ErrorKind::ConfigError, "decay fit needs >= 6 radii spanning a decade");
  std::vector<std::pair<double, double>> s;
  for (double R : radii) {
    const double v = norm_at(R);
    if (!std::isfinite(v)) throw LabError(ErrorKind::NonFinite, "non-finite sample at radius " + std::to_string(R));
    s.emplace_back(R, v);
  }
  return fit_power_law(s);
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, n == 1 ? 0.0 : double(i) / (n - 1));
  return g;
}

}  // namespace ilab
