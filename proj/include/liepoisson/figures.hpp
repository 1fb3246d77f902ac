#pragma once

// Figure datasets for the two worked examples: triangulated energy surfaces,
// level-intersection curves traced by predictor-corrector continuation, the
// equilibrium points, and the so(2,1) CRE ray segments.

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "liepoisson/cre.hpp"
#include "liepoisson/errors.hpp"
#include "liepoisson/linalg.hpp"

namespace lp::figures {

using Point3 = std::array<double, 3>;

struct Mesh {
  std::vector<Point3> vertices;
  std::vector<std::array<int, 3>> triangles;
};

struct Curve {
  double level = 0.0;
  std::vector<Point3> points;
  bool closed = false;
};

struct RaySegment {
  int sigma2 = 1, sigma3 = 1;
  double xi_per_t = 0.0;
  std::vector<Point3> points;  // straight segment through the origin
};

struct FigureData {
  Mesh surface;
  std::vector<Curve> curves;
  std::vector<Point3> equilibria;
  std::vector<RaySegment> rays;
};

struct TraceOptions {
  double arc_step = 1e-2;
  double corrector_tol = 1e-10;
  int max_steps = 20000;
  double box = 3.0;  // clip curves and rays to [-box, box]^3
};

namespace detail {

inline Point3 to_point(const Vec& x) { return {x[0], x[1], x[2]}; }

inline bool in_box(const Vec& x, double box) {
  return std::abs(x[0]) <= box && std::abs(x[1]) <= box && std::abs(x[2]) <= box;
}

/// Newton corrector onto {f = 0, g = 0} using the pseudo-inverse of the 2x3
/// constraint Jacobian. Returns false near rank deficiency.
inline bool correct(const std::function<double(const Vec&)>& f,
                    const std::function<double(const Vec&)>& g,
                    const std::function<Vec(const Vec&)>& df,
                    const std::function<Vec(const Vec&)>& dg, Vec& x, double tol) {
  for (int it = 0; it < 30; ++it) {
    double fv = f(x), gv = g(x);
    if (std::abs(fv) < tol && std::abs(gv) < tol) return true;
    Vec a = df(x), b = dg(x);
    double aa = dot(a, a), ab = dot(a, b), bb = dot(b, b);
    double det = aa * bb - ab * ab;
    if (std::abs(det) < 1e-14 * std::max(1.0, aa * bb)) return false;
    double l1 = (bb * fv - ab * gv) / det;
    double l2 = (aa * gv - ab * fv) / det;
    for (std::size_t i = 0; i < 3; ++i) x[i] -= l1 * a[i] + l2 * b[i];
  }
  return false;
}

/// Traces the intersection curve of two level sets from a starting point.
/// Stops on closure (return to the start), on leaving the box, or when the
/// corrector degenerates (e.g. at a singular point of the variety).
inline Curve trace_curve(const std::function<double(const Vec&)>& f,
                         const std::function<double(const Vec&)>& g,
                         const std::function<Vec(const Vec&)>& df,
                         const std::function<Vec(const Vec&)>& dg, Vec start, double level,
                         const TraceOptions& opt, std::optional<Vec> initial_direction = {}) {
  Curve curve;
  curve.level = level;
  if (!correct(f, g, df, dg, start, opt.corrector_tol)) return curve;
  curve.points.push_back(to_point(start));

  Vec x = start;
  Vec prev_tangent = initial_direction ? normalized(*initial_direction) : Vec{};
  for (int step = 0; step < opt.max_steps; ++step) {
    Vec tangent = cross(df(x), dg(x));
    double tn = norm(tangent);
    if (tn < 1e-12) break;  // singular point of the intersection
    tangent = (1.0 / tn) * tangent;
    if (!prev_tangent.empty() && dot(tangent, prev_tangent) < 0.0) tangent = -tangent;
    prev_tangent = tangent;

    Vec xn = x + opt.arc_step * tangent;
    if (!correct(f, g, df, dg, xn, opt.corrector_tol)) break;
    if (!in_box(xn, opt.box)) break;
    curve.points.push_back(to_point(xn));
    x = xn;

    if (step > 5 && norm(x - start) < 0.75 * opt.arc_step) {
      curve.points.push_back(to_point(start));
      curve.closed = true;
      break;
    }
  }
  return curve;
}

inline Mesh lat_long_mesh(const std::function<Vec(double, double)>& param, int nu, int nv,
                          double u0, double u1, double v0, double v1) {
  Mesh mesh;
  for (int i = 0; i <= nu; ++i)
    for (int j = 0; j <= nv; ++j) {
      double u = u0 + (u1 - u0) * i / nu;
      double v = v0 + (v1 - v0) * j / nv;
      mesh.vertices.push_back(to_point(param(u, v)));
    }
  auto id = [nv](int i, int j) { return i * (nv + 1) + j; };
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return mesh;
}

} // namespace detail

/// Rigid-body figure on so(3)*: the ellipsoid H = 1, the curves H = 1 and
/// C = c for each requested level (C the sum of squares), and the six
/// equilibrium points on the energy level. Levels touching the saddle pair
/// are traced from the exact saddle points along the tangent-cone directions,
/// so the saddle points are vertices of those curves.
inline FigureData so3_figure(double alpha, double beta, double gamma,
                             const std::vector<double>& levels, const TraceOptions& opt = {}) {
  if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0) || alpha == beta || beta == gamma ||
      alpha == gamma)
    throw HypothesisViolation("so3 figure needs positive pairwise-distinct coefficients");

  FigureData fig;
  const double a1 = std::sqrt(2.0 / alpha), a2 = std::sqrt(2.0 / beta), a3 = std::sqrt(2.0 / gamma);
  fig.surface = detail::lat_long_mesh(
      [&](double th, double ph) {
        return Vec{a1 * std::sin(th) * std::cos(ph), a2 * std::sin(th) * std::sin(ph),
                   a3 * std::cos(th)};
      },
      32, 64, 0.0, M_PI, 0.0, 2.0 * M_PI);

  for (double s : {1.0, -1.0}) {
    fig.equilibria.push_back({s * a1, 0.0, 0.0});
    fig.equilibria.push_back({0.0, s * a2, 0.0});
    fig.equilibria.push_back({0.0, 0.0, s * a3});
  }

  auto H = [&](const Vec& x) {
    return 0.5 * (alpha * x[0] * x[0] + beta * x[1] * x[1] + gamma * x[2] * x[2]) - 1.0;
  };
  auto dH = [&](const Vec& x) { return Vec{alpha * x[0], beta * x[1], gamma * x[2]}; };

  // Sort coefficients to locate the saddle axis (the middle one).
  std::array<std::pair<double, int>, 3> coef{{{alpha, 0}, {beta, 1}, {gamma, 2}}};
  std::sort(coef.begin(), coef.end());
  const int lo = coef[0].second, mid = coef[1].second, hi = coef[2].second;
  const double c_saddle = 2.0 / coef[1].first;

  for (double level : levels) {
    auto C = [level](const Vec& x) {
      return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - level;
    };
    auto dC = [](const Vec& x) { return Vec{2.0 * x[0], 2.0 * x[1], 2.0 * x[2]}; };

    if (std::abs(level - c_saddle) < 1e-9) {
      // Heteroclinic level: branch tangents at the saddle solve
      // (alpha_lo - alpha_mid) t_lo^2 + (alpha_hi - alpha_mid) t_hi^2 = 0.
      double ratio = std::sqrt((coef[1].first - coef[0].first) / (coef[2].first - coef[1].first));
      Vec saddle(3, 0.0);
      saddle[static_cast<std::size_t>(mid)] = std::sqrt(c_saddle);
      for (double s_mid : {1.0, -1.0})
        for (double s_hi : {1.0, -1.0}) {
          Vec tau(3, 0.0);
          tau[static_cast<std::size_t>(lo)] = 1.0;
          tau[static_cast<std::size_t>(hi)] = s_hi * ratio;
          tau = normalized(tau);
          Vec x0 = s_mid * saddle + (2.0 * opt.arc_step) * tau;
          auto curve = detail::trace_curve(H, C, dH, dC, x0, level, opt, tau);
          if (curve.points.size() < 2) continue;
          curve.points.insert(curve.points.begin(), detail::to_point(s_mid * saddle));
          // Close the branch onto whichever saddle it approaches.
          Vec endp{curve.points.back()[0], curve.points.back()[1], curve.points.back()[2]};
          Vec target = (norm(endp - saddle) < norm(endp + saddle)) ? saddle : -saddle;
          if (norm(endp - target) < 10.0 * opt.arc_step)
            curve.points.push_back(detail::to_point(target));
          fig.curves.push_back(std::move(curve));
        }
      continue;
    }

    // Regular level: seed on a coordinate plane and trace the closed loops.
    std::vector<Vec> seeds;
    for (int k = 0; k < 3 && seeds.empty(); ++k) {
      int i = (k + 1) % 3, j = (k + 2) % 3;
      // Solve c_i xi^2 + c_j xj^2 = 2, xi^2 + xj^2 = level on the plane x_k = 0.
      double ci = (k == 0 ? beta : (k == 1 ? gamma : alpha));
      double cj = (k == 0 ? gamma : (k == 1 ? alpha : beta));
      double det = ci - cj;
      if (det == 0.0) continue;
      double xi2 = (2.0 - cj * level) / det;
      double xj2 = (ci * level - 2.0) / det;
      if (xi2 < 0.0 || xj2 < 0.0) continue;
      for (double si : {1.0, -1.0})
        for (double sj : {1.0, -1.0}) {
          Vec x(3, 0.0);
          x[static_cast<std::size_t>(i)] = si * std::sqrt(xi2);
          x[static_cast<std::size_t>(j)] = sj * std::sqrt(xj2);
          seeds.push_back(std::move(x));
        }
    }
    for (const auto& seed : seeds) {
      bool covered = false;
      for (const auto& curve : fig.curves) {
        if (curve.level != level) continue;
        for (const auto& pt : curve.points)
          if (norm(Vec{pt[0], pt[1], pt[2]} - seed) < 2.0 * opt.arc_step) {
            covered = true;
            break;
          }
        if (covered) break;
      }
      if (covered) continue;
      auto curve = detail::trace_curve(H, C, dH, dC, seed, level, opt);
      if (curve.points.size() > 2) fig.curves.push_back(std::move(curve));
    }
  }
  return fig;
}

/// so(2,1) figure: the zero-energy cone, the curves H = 0 and C = c, and the
/// four CRE ray segments clipped to the bounding box. A zero level degenerates
/// to the rays themselves, which are emitted as the curve set.
inline FigureData so21_figure(double alpha, double beta, double gamma,
                              const std::vector<double>& levels, const TraceOptions& opt = {}) {
  auto cf = cre::closed_form_so21(alpha, beta, gamma);  // validates the hypothesis
  if (!(alpha > 0.0 && beta > 0.0 && gamma < 0.0))
    throw HypothesisViolation("so21 figure expects alpha, beta > 0 > gamma");

  FigureData fig;
  const double g = -gamma;
  const double r1 = std::sqrt(g / alpha), r2 = std::sqrt(g / beta);
  fig.surface = detail::lat_long_mesh(
      [&](double u, double v) { return Vec{r1 * u * std::cos(v), r2 * u * std::sin(v), u}; },
      40, 64, -opt.box, opt.box, 0.0, 2.0 * M_PI);

  for (const auto& ray : cf.rays) {
    double tmax = opt.box / norm_inf(ray.direction);
    RaySegment seg;
    seg.sigma2 = ray.sigma2;
    seg.sigma3 = ray.sigma3;
    seg.xi_per_t = ray.xi_per_t;
    seg.points = {detail::to_point(-tmax * ray.direction), {0.0, 0.0, 0.0},
                  detail::to_point(tmax * ray.direction)};
    fig.rays.push_back(std::move(seg));
  }

  auto H = [&](const Vec& x) {
    return 0.5 * (alpha * x[0] * x[0] + beta * x[1] * x[1] + gamma * x[2] * x[2]);
  };
  auto dH = [&](const Vec& x) { return Vec{alpha * x[0], beta * x[1], gamma * x[2]}; };

  for (double level : levels) {
    if (std::abs(level) < 1e-12) {
      // H = 0 and C = 0 is exactly the ray set.
      for (const auto& seg : fig.rays) {
        Curve curve;
        curve.level = 0.0;
        curve.points = seg.points;
        fig.curves.push_back(std::move(curve));
      }
      continue;
    }
    auto C = [level](const Vec& x) {
      return -x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - level;
    };
    auto dC = [](const Vec& x) { return Vec{-2.0 * x[0], 2.0 * x[1], 2.0 * x[2]}; };

    std::vector<Vec> seeds;
    // Plane x2 = 0: x1^2 = (g/alpha) x3^2, level = x3^2 - x1^2.
    {
      double denom = 1.0 - g / alpha;
      if (denom != 0.0) {
        double x32 = level / denom;
        if (x32 > 0.0) {
          double x3 = std::sqrt(x32), x1 = std::sqrt(g / alpha) * x3;
          for (double s1 : {1.0, -1.0})
            for (double s3 : {1.0, -1.0}) seeds.push_back(Vec{s1 * x1, 0.0, s3 * x3});
        }
      }
    }
    // Plane x1 = 0: x2^2 = (g/beta) x3^2, level = x2^2 + x3^2.
    {
      double denom = 1.0 + g / beta;
      double x32 = level / denom;
      if (x32 > 0.0) {
        double x3 = std::sqrt(x32), x2 = std::sqrt(g / beta) * x3;
        for (double s2 : {1.0, -1.0})
          for (double s3 : {1.0, -1.0}) seeds.push_back(Vec{0.0, s2 * x2, s3 * x3});
      }
    }
    for (const auto& seed : seeds) {
      bool covered = false;
      for (const auto& curve : fig.curves) {
        if (curve.level != level) continue;
        for (const auto& pt : curve.points)
          if (norm(Vec{pt[0], pt[1], pt[2]} - seed) < 2.0 * opt.arc_step) {
            covered = true;
            break;
          }
        if (covered) break;
      }
      if (covered) continue;
      auto curve = detail::trace_curve(H, C, dH, dC, seed, level, opt);
      if (curve.points.size() > 2) fig.curves.push_back(std::move(curve));
    }
  }
  return fig;
}

} // namespace lp::figures
