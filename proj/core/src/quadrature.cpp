#include "photoion/quadrature.hpp"

#include <map>
#include <mutex>

namespace photoion::quad {

namespace {

Rule make_gauss_legendre(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n with the usual asymptotic starting guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  static std::map<int, Rule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

void map_rule(const Rule& rule, double a, double b,
              std::vector<double>& x, std::vector<double>& w) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  x.resize(rule.nodes.size());
  w.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    x[i] = mid + half * rule.nodes[i];
    w[i] = half * rule.weights[i];
  }
}

namespace {

double gl_fixed(const std::function<double(double)>& f, double a, double b,
                int order) {
  const Rule& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += half * rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum;
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    double tol, double whole, int depth, int max_depth) {
  const double mid = 0.5 * (a + b);
  const double left = gl_fixed(f, a, mid, 15);
  const double right = gl_fixed(f, mid, b, 15);
  const double err = std::abs(left + right - whole);
  if (err <= tol || depth >= max_depth) return left + right;
  return adaptive_rec(f, a, mid, 0.5 * tol, left, depth + 1, max_depth) +
         adaptive_rec(f, mid, b, 0.5 * tol, right, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_floor,
                          int max_depth) {
  const double coarse = gl_fixed(f, a, b, 15);
  const double scale = std::max(std::abs(coarse), abs_floor);
  if (scale == 0.0) return coarse;
  const double result =
      adaptive_rec(f, a, b, rel_tol * scale, coarse, 0, max_depth);
  if (!std::isfinite(result)) throw NumericError("adaptive quadrature diverged");
  return result;
}

const SphereRule& sphere_rule(int n_theta) {
  static std::map<int, SphereRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n_theta);
  if (it != cache.end()) return it->second;

  SphereRule rule;
  const Rule& gl = gauss_legendre(n_theta);
  const int n_phi = 2 * n_theta;
  rule.points.reserve(n_theta * n_phi);
  rule.weights.reserve(n_theta * n_phi);
  for (int i = 0; i < n_theta; ++i) {
    const double ct = gl.nodes[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * kPi * j / n_phi;
      rule.points.push_back({st * std::cos(phi), st * std::sin(phi), ct});
      rule.weights.push_back(gl.weights[i] * 2.0 * kPi / n_phi);
    }
  }
  return cache.emplace(n_theta, std::move(rule)).first->second;
}

}  // namespace photoion::quad
