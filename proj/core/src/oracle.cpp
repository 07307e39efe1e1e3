#include "phasekit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "phasekit/error.hpp"

namespace phasekit {

namespace {

constexpr double kDecay = 36.0;  // e^{-36} ~ 2e-16 at the box edge

struct CompiledPoly {
  int dim = 0;
  int max_deg = 0;
  std::vector<double> coef;
  std::vector<std::array<int, 3>> exps;

  explicit CompiledPoly(const Poly& p) : dim(p.dim()) {
    for (const auto& [m, c] : p.terms()) {
      if (!c.is_real()) throw Error(ErrorCode::InvalidArgument, "oracle phases must have real coefficients");
      coef.push_back(c.re().get_d());
      std::array<int, 3> e{0, 0, 0};
      for (int i = 0; i < dim; ++i) {
        e[size_t(i)] = m[size_t(i)];
        max_deg = std::max(max_deg, m[size_t(i)]);
      }
      exps.push_back(e);
    }
  }

  template <class T>
  T eval(const T* x) const {
    T pw[3][16];
    for (int i = 0; i < dim; ++i) {
      pw[i][0] = T(1);
      for (int k = 1; k <= max_deg; ++k) pw[i][k] = pw[i][k - 1] * x[i];
    }
    T acc(0);
    for (size_t t = 0; t < coef.size(); ++t) {
      T term(coef[t]);
      for (int i = 0; i < dim; ++i) term *= pw[i][exps[t][size_t(i)]];
      acc += term;
    }
    return acc;
  }
};

double bump(double t, double a, double b) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::exp(-a / t - b / (1.0 - t));
}

std::complex<double> neville_at_zero(const std::vector<double>& x, const std::vector<std::complex<double>>& y) {
  std::vector<std::complex<double>> p = y;
  size_t n = x.size();
  for (size_t k = 1; k < n; ++k)
    for (size_t i = 0; i + k < n; ++i)
      p[i] = ((0.0 - x[i + k]) * p[i] - (0.0 - x[i]) * p[i + 1]) / (x[i] - x[i + k]);
  return p[0];
}

}  // namespace

double window_mass(const Window& w) {
  if (!w.enabled || w.lo.empty()) return 0.0;
  double acc = 1.0;
  for (size_t d = 0; d < w.lo.size(); ++d) {
    const int n = 20000;
    double s = 0.0;
    for (int j = 1; j < n; ++j) s += bump(double(j) / n, w.left, w.right);
    acc *= s / n * (w.hi[d] - w.lo[d]);
  }
  return acc;
}

QuadratureResult oscillatory_integral(const QuadratureSpec& spec) {
  const int dim = spec.S.dim();
  if (dim < 1 || dim > 3) throw Error(ErrorCode::InvalidArgument, "oscillatory_integral supports dimension 1..3");
  if (!(spec.hbar > 0)) throw Error(ErrorCode::InvalidArgument, "hbar must be positive");
  for (size_t i = 0; i < spec.eps_schedule.size(); ++i) {
    if (!(spec.eps_schedule[i] > 0)) throw Error(ErrorCode::InvalidArgument, "eps schedule must be positive");
    if (i > 0 && !(spec.eps_schedule[i] < spec.eps_schedule[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "eps schedule must be strictly decreasing");
  }
  const bool oscillatory = spec.mode == OracleMode::Oscillatory;
  const bool windowed = spec.window.enabled;
  if (windowed && (static_cast<int>(spec.window.lo.size()) != dim || static_cast<int>(spec.window.hi.size()) != dim))
    throw Error(ErrorCode::InvalidArgument, "window bounds must match the dimension");
  if (oscillatory && spec.eps_schedule.empty() && !windowed)
    throw Error(ErrorCode::InvalidArgument, "oscillatory integrals need a regularizer or a window");
  CompiledPoly S(spec.S);
  std::vector<CompiledPoly> grad;
  for (int i = 0; i < dim; ++i) grad.emplace_back(spec.S.derivative(i));
  const double hbar = spec.hbar;
  std::vector<double> eps = spec.eps_schedule;
  if (eps.empty()) eps.push_back(0.0);
  const double eps_min = eps.back();

  // box
  std::vector<double> lo(static_cast<size_t>(dim)), hi(static_cast<size_t>(dim));
  if (windowed) {
    lo = spec.window.lo;
    hi = spec.window.hi;
  } else {
    double L = spec.range;
    if (L <= 0) {
      if (oscillatory) {
        L = std::sqrt(kDecay * hbar / eps_min);
      } else {
        L = 1.0;
        for (int it = 0; it < 40; ++it) {
          bool decayed = true;
          for (int s = 0; s < 64 && decayed; ++s) {
            double x[3];
            for (int i = 0; i < dim; ++i) x[i] = (((s >> i) & 1) ? L : -L) * (1.0 - 0.1 * ((s >> 3) & 7) / 7.0);
            for (int i = 0; i < dim; ++i) {
              double y[3] = {x[0], dim > 1 ? x[1] : 0, dim > 2 ? x[2] : 0};
              y[i] = ((s >> i) & 1) ? L : -L;
              if (S.eval(y) / hbar + eps_min * L * L / hbar < kDecay) decayed = false;
            }
          }
          if (decayed) break;
          L *= 1.5;
        }
      }
    }
    for (int i = 0; i < dim; ++i) {
      lo[size_t(i)] = -L;
      hi[size_t(i)] = L;
    }
  }

  // step from the largest local frequency on a sample of the box
  double h = spec.step;
  if (h <= 0) {
    int m = dim == 1 ? 4001 : dim == 2 ? 201 : 41;
    double wmax = 0.0;
    std::vector<int> idx(static_cast<size_t>(dim), 0);
    while (true) {
      double x[3] = {0, 0, 0};
      for (int i = 0; i < dim; ++i) x[i] = lo[size_t(i)] + (hi[size_t(i)] - lo[size_t(i)]) * idx[size_t(i)] / (m - 1);
      double g2 = 0;
      for (int i = 0; i < dim; ++i) {
        double gi = grad[size_t(i)].eval(x);
        g2 += gi * gi;
      }
      wmax = std::max(wmax, std::sqrt(g2) / hbar);
      int k = 0;
      while (k < dim && ++idx[size_t(k)] == m) idx[size_t(k++)] = 0;
      if (k == dim) break;
    }
    double width = 0;
    for (int i = 0; i < dim; ++i) width = std::max(width, hi[size_t(i)] - lo[size_t(i)]);
    double margin = 2.0 * std::sqrt(kDecay * eps.front() / hbar) + 40.0 / width;
    if (windowed) margin += 200.0 / width;
    if (!oscillatory) wmax = std::sqrt(wmax * wmax + 1.0);
    // fine grid oversamples by 2 so that the every-other-point grid still
    // resolves the integrand and its difference bounds the fine error
    h = M_PI / (wmax + margin);
  }
  std::vector<long long> N(static_cast<size_t>(dim));
  std::vector<double> hs(static_cast<size_t>(dim));
  long long npd = 0;
  for (int i = 0; i < dim; ++i) {
    long long n = static_cast<long long>(std::ceil((hi[size_t(i)] - lo[size_t(i)]) / h));
    if (n % 2) ++n;
    n = std::max(n, 8LL);
    N[size_t(i)] = n;
    hs[size_t(i)] = (hi[size_t(i)] - lo[size_t(i)]) / double(n);
    npd = std::max(npd, n + 1);
  }
  long long total = 1;
  for (int i = 0; i < dim; ++i) total *= N[size_t(i)] + 1;
  if (total > 400000000LL) throw Error(ErrorCode::TooLarge, "quadrature grid too large");

  const size_t ne = eps.size();
  const long long n0 = N[0] + 1;
  // per-row partial sums (fine, coarse) for each eps; reduced in row order
  std::vector<std::complex<double>> row_fine(size_t(n0) * ne), row_coarse(size_t(n0) * ne);
  auto weight = [](long long j, long long n) { return (j == 0 || j == n) ? 0.5 : 1.0; };
  auto coarse_weight = [](long long j, long long n) {
    if (j % 2) return 0.0;
    return (j == 0 || j == n) ? 1.0 : 2.0;  // step 2h
  };
  auto worker = [&](long long r0, long long r1) {
    std::vector<std::complex<double>> f(ne), c(ne);
    for (long long j0 = r0; j0 < r1; ++j0) {
      std::fill(f.begin(), f.end(), 0.0);
      std::fill(c.begin(), c.end(), 0.0);
      long long n1 = dim > 1 ? N[1] : 0;
      long long n2 = dim > 2 ? N[2] : 0;
      for (long long j1 = 0; j1 <= n1; ++j1)
        for (long long j2 = 0; j2 <= n2; ++j2) {
          double x[3] = {lo[0] + hs[0] * double(j0), dim > 1 ? lo[1] + hs[1] * double(j1) : 0.0,
                         dim > 2 ? lo[2] + hs[2] * double(j2) : 0.0};
          double wf = weight(j0, N[0]);
          double wc = coarse_weight(j0, N[0]);
          if (dim > 1) {
            wf *= weight(j1, n1);
            wc *= coarse_weight(j1, n1);
          }
          if (dim > 2) {
            wf *= weight(j2, n2);
            wc *= coarse_weight(j2, n2);
          }
          double amp = 1.0;
          if (windowed)
            for (int i = 0; i < dim; ++i)
              amp *= bump((x[i] - lo[size_t(i)]) / (hi[size_t(i)] - lo[size_t(i)]), spec.window.left,
                          spec.window.right);
          if (amp == 0.0) continue;
          double s = S.eval(x);
          double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
          std::complex<double> base = oscillatory ? std::polar(amp, s / hbar) : std::complex<double>(amp * std::exp(-s / hbar));
          for (size_t e = 0; e < ne; ++e) {
            std::complex<double> v = eps[e] > 0 ? base * std::exp(-eps[e] * r2 / hbar) : base;
            f[e] += wf * v;
            if (wc != 0.0) c[e] += wc * v;
          }
        }
      for (size_t e = 0; e < ne; ++e) {
        row_fine[size_t(j0) * ne + e] = f[e];
        row_coarse[size_t(j0) * ne + e] = c[e];
      }
    }
  };
  int nt = std::max(1, std::min<int>(spec.threads, static_cast<int>(n0)));
  if (dim == 1) nt = 1;
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t) {
    long long r0 = n0 * t / nt, r1 = n0 * (t + 1) / nt;
    pool.emplace_back(worker, r0, r1);
  }
  for (auto& th : pool) th.join();
  double cell = 1.0;
  for (int i = 0; i < dim; ++i) cell *= hs[size_t(i)];
  QuadratureResult res;
  res.points_per_dim = npd;
  std::vector<std::complex<double>> fine(ne, 0.0), coarse(ne, 0.0);
  for (size_t e = 0; e < ne; ++e) {
    for (long long j = 0; j < n0; ++j) {
      fine[e] += row_fine[size_t(j) * ne + e];
      coarse[e] += row_coarse[size_t(j) * ne + e];
    }
    fine[e] *= cell;
    coarse[e] *= cell;
    res.grid_change = std::max(res.grid_change, std::abs(fine[e] - coarse[e]));
  }
  res.per_eps = fine;
  if (spec.eps_schedule.size() >= 2) {
    res.value = neville_at_zero(eps, fine);
    std::vector<double> e2(eps.begin() + 1, eps.end());
    std::vector<std::complex<double>> f2(fine.begin() + 1, fine.end());
    res.extrapolation_residual = std::abs(res.value - neville_at_zero(e2, f2));
  } else {
    res.value = fine.back();
  }
  res.error_estimate = res.extrapolation_residual + res.grid_change;
  if (res.error_estimate > spec.tolerance * std::max(std::abs(res.value), 1e-300))
    throw Error(ErrorCode::NonConvergent, "quadrature error estimate " + std::to_string(res.error_estimate) +
                                              " exceeds tolerance for |I| = " + std::to_string(std::abs(res.value)));
  return res;
}

std::complex<double> rotated_contour_integral(const Poly& S, double hbar, double theta) {
  if (S.dim() != 1) throw Error(ErrorCode::InvalidArgument, "rotated contour is one-dimensional");
  CompiledPoly P(S);
  CompiledPoly D(S.derivative(0));
  const std::complex<double> rot = std::polar(1.0, theta);
  const std::complex<double> I(0.0, 1.0);
  auto expo = [&](double t) {
    std::complex<double> x = rot * t;
    return I * P.eval(&x) / hbar;
  };
  // range: both tails must decay below e^{-36}
  double T = 0.5;
  for (int it = 0; it < 200; ++it) {
    if (expo(T).real() < -kDecay && expo(-T).real() < -kDecay) break;
    T *= 1.2;
  }
  double wmax = 0;
  const int m = 4001;
  for (int j = 0; j < m; ++j) {
    double t = -T + 2 * T * j / (m - 1);
    std::complex<double> x = rot * t;
    wmax = std::max(wmax, std::abs(D.eval(&x)) / hbar);
  }
  double h = M_PI / (wmax + 40.0 / T);
  long long n = static_cast<long long>(std::ceil(2 * T / h));
  h = 2 * T / double(n);
  std::complex<double> acc = 0;
  for (long long j = 0; j <= n; ++j) {
    double t = -T + h * double(j);
    double w = (j == 0 || j == n) ? 0.5 : 1.0;
    acc += w * std::exp(expo(t));
  }
  return acc * h * rot;
}

FitResult loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::InsufficientSamples, "need at least two points");
  size_t n = x.size();
  std::vector<double> lx, ly;
  for (size_t i = 0; i < n; ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(std::abs(y[i])));
  }
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  FitResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double sse = 0;
  for (size_t i = 0; i < n; ++i) {
    double d = ly[i] - (r.intercept + r.slope * lx[i]);
    sse += d * d;
  }
  r.stderr_slope = n > 2 ? std::sqrt(sse / double(n - 2) / sxx) : 0.0;
  r.band = 2.0 * r.stderr_slope;
  r.residuals = y;
  return r;
}

FitResult series_fit(const std::vector<std::pair<double, std::complex<double>>>& samples,
                     const AsymptoticSeries& series, int order, double noise_floor) {
  if (samples.size() < 4) throw Error(ErrorCode::InsufficientSamples, "series_fit needs at least 4 samples");
  double hmin = samples.front().first, hmax = hmin;
  for (const auto& s : samples) {
    hmin = std::min(hmin, s.first);
    hmax = std::max(hmax, s.first);
  }
  if (hmax < 10.0 * hmin * (1 - 1e-12))
    throw Error(ErrorCode::InsufficientSamples, "series_fit needs samples spanning at least one decade in hbar");
  std::vector<double> xs, ys, all;
  for (const auto& [hb, val] : samples) {
    std::complex<double> trunc = 0;
    for (const auto& p : series.points) trunc += p.prefactor.numeric(hb) * p.corrections.truncated(order).evaluate(hb);
    double r = std::abs(val - trunc) / series.leading_scale(hb);
    all.push_back(r);
    if (r > noise_floor) {
      xs.push_back(hb);
      ys.push_back(r);
    }
  }
  FitResult out;
  if (xs.size() < 3) {
    out.degenerate = true;
    out.slope = std::nan("");
  } else {
    out = loglog_fit(xs, ys);
  }
  out.residuals = all;
  return out;
}

}  // namespace phasekit
