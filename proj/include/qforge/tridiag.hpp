#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qforge/errors.hpp"

namespace qforge {

// Lowest-k eigenpairs of a real symmetric tridiagonal matrix, computed by
// bisection on Sturm sequences (eigenvalues) and twisted-factorization
// inverse iteration (eigenvectors).  Fully deterministic: no randomized
// starting vectors; clustered eigenvalues are handled by explicit
// reorthogonalization.
class TridiagEigenSolver {
 public:
  // diag: n main-diagonal entries, off: n-1 off-diagonal entries.
  TridiagEigenSolver(std::vector<double> diag, std::vector<double> off)
      : d_(std::move(diag)), e_(std::move(off)) {
    if (d_.size() < 2 || e_.size() != d_.size() - 1)
      throw std::invalid_argument("TridiagEigenSolver: bad dimensions");
    e2_.resize(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) e2_[i] = e_[i] * e_[i];
  }

  // Number of eigenvalues strictly below x (Sturm sequence sign count).
  int count_below(double x) const {
    const double tiny = std::numeric_limits<double>::min();
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d_.size(); ++i) {
      q = (i == 0) ? d_[0] - x : d_[i] - x - e2_[i - 1] / q;
      if (q == 0.0) q = -tiny;
      if (q < 0.0) ++count;
    }
    return count;
  }

  // k smallest eigenvalues, ascending, each bisected to rounding level.
  std::vector<double> eigenvalues(int k) const {
    const auto [glo, ghi] = gershgorin();
    const double scale = std::max({std::abs(glo), std::abs(ghi), 1.0});
    std::vector<double> vals(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      double lo = glo, hi = ghi;
      for (int it = 0; it < 128; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (count_below(mid) >= j + 1)
          hi = mid;
        else
          lo = mid;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * scale)
          break;
      }
      vals[static_cast<std::size_t>(j)] = 0.5 * (lo + hi);
    }
    return vals;
  }

  // Lowest k eigenpairs.
  void solve(int k, std::vector<double>& values,
             std::vector<std::vector<double>>& vectors) const {
    values = eigenvalues(k);
    vectors.clear();
    vectors.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      const std::size_t jj = static_cast<std::size_t>(j);
      vectors.push_back(eigenvector_impl(values[jj], values, vectors));
    }
  }

  std::size_t size() const { return d_.size(); }

 private:
  std::pair<double, double> gershgorin() const {
    const std::size_t n = d_.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = (i > 0 ? std::abs(e_[i - 1]) : 0.0) +
                       (i + 1 < n ? std::abs(e_[i]) : 0.0);
      lo = std::min(lo, d_[i] - r);
      hi = std::max(hi, d_[i] + r);
    }
    const double pad = 1e3 * std::numeric_limits<double>::epsilon() *
                       std::max(std::abs(lo), std::abs(hi));
    return {lo - pad, hi + pad};
  }

  // Eigenvector from the twisted factorization of T - lambda I: forward and
  // backward pivot sequences are joined at the index of smallest residual
  // coupling and the vector is unrolled outward from there.  The outward
  // recurrences track the decaying solution, so far tails underflow cleanly
  // instead of saturating at the eps * ||T|| / gap noise floor of classic
  // inverse iteration with a dense start vector.
  std::vector<double> eigenvector_impl(
      double lambda, const std::vector<double>& all_values,
      const std::vector<std::vector<double>>& previous) const {
    const std::size_t n = d_.size();
    const auto [glo, ghi] = gershgorin();
    const double scale = std::max({std::abs(glo), std::abs(ghi), 1.0});
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = 1e-280;

    std::vector<double> s(n), p(n);
    s[0] = d_[0] - lambda;
    for (std::size_t i = 1; i < n; ++i) {
      const double prev = s[i - 1] == 0.0 ? -tiny : s[i - 1];
      s[i] = d_[i] - lambda - e2_[i - 1] / prev;
    }
    p[n - 1] = d_[n - 1] - lambda;
    for (std::size_t i = n - 1; i-- > 0;) {
      const double next = p[i + 1] == 0.0 ? -tiny : p[i + 1];
      p[i] = d_[i] - lambda - e2_[i] / next;
    }

    std::size_t twist = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double gamma = std::abs(s[i] + p[i] - (d_[i] - lambda));
      if (gamma < best) {
        best = gamma;
        twist = i;
      }
    }

    std::vector<double> v(n, 0.0);
    v[twist] = 1.0;
    for (std::size_t i = twist; i-- > 0;) {
      const double piv = s[i] == 0.0 ? -tiny : s[i];
      v[i] = -e_[i] * v[i + 1] / piv;
      if (std::abs(v[i]) > 1e200)
        for (std::size_t j = i; j < n; ++j) v[j] *= 1e-200;
    }
    for (std::size_t i = twist + 1; i < n; ++i) {
      const double piv = p[i] == 0.0 ? -tiny : p[i];
      v[i] = -e_[i - 1] * v[i - 1] / piv;
      if (std::abs(v[i]) > 1e200)
        for (std::size_t j = 0; j <= i; ++j) v[j] *= 1e-200;
    }
    normalize(v);
    orthogonalize_cluster(lambda, all_values, previous, scale, v);

    double res = residual(lambda, v);
    if (!(res <= 1e-11 * scale)) {
      // fall back to shifted inverse iteration seeded with the twisted
      // vector (near-degenerate clusters land here)
      const double shift = lambda + 10.0 * eps * scale;
      for (int iter = 0; iter < 4 && !(res <= 1e-11 * scale); ++iter) {
        v = solve_shifted(shift, v);
        normalize(v);
        orthogonalize_cluster(lambda, all_values, previous, scale, v);
        res = residual(lambda, v);
      }
    }
    if (!(res <= 1e-9 * scale)) {
      std::ostringstream msg;
      msg << "eigenvector iteration failed to converge: residual " << res
          << " at lambda " << lambda << " (scale " << scale << ")";
      throw SolverError(msg.str());
    }

    // deterministic sign: first component exceeding 1e-3 of the peak is
    // made positive
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(v[i]) > 1e-3 * peak) {
        if (v[i] < 0.0)
          for (auto& x : v) x = -x;
        break;
      }
    }
    return v;
  }

  // Remove components along previously found vectors whose eigenvalues lie
  // in the same cluster; well-separated states keep their clean tails.
  void orthogonalize_cluster(double lambda, const std::vector<double>& values,
                             const std::vector<std::vector<double>>& previous,
                             double scale, std::vector<double>& v) const {
    bool changed = false;
    for (std::size_t m = 0; m < previous.size(); ++m) {
      if (std::abs(values[m] - lambda) > 1e-7 * scale) continue;
      const auto& u = previous[m];
      double proj = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) proj += u[i] * v[i];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * u[i];
      changed = true;
    }
    if (changed) normalize(v);
  }

  double residual(double lambda, const std::vector<double>& v) const {
    const std::size_t n = d_.size();
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double t = (d_[i] - lambda) * v[i];
      if (i > 0) t += e_[i - 1] * v[i - 1];
      if (i + 1 < n) t += e_[i] * v[i + 1];
      res += t * t;
    }
    return std::sqrt(res);
  }

  // Solve (T - shift I) x = b by Gaussian elimination with partial
  // pivoting; pivoting fills a second superdiagonal.
  std::vector<double> solve_shifted(double shift,
                                    const std::vector<double>& b) const {
    const std::size_t n = d_.size();
    std::vector<double> sub(n, 0.0), dia(n), sup(n, 0.0), sup2(n, 0.0), rhs(b);
    for (std::size_t i = 0; i < n; ++i) {
      dia[i] = d_[i] - shift;
      if (i + 1 < n) sup[i] = e_[i];
      if (i > 0) sub[i] = e_[i - 1];
    }
    const double tiny = 1e-300;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(sub[i + 1]) > std::abs(dia[i])) {
        std::swap(dia[i], sub[i + 1]);
        std::swap(sup[i], dia[i + 1]);
        std::swap(sup2[i], sup[i + 1]);
        std::swap(rhs[i], rhs[i + 1]);
      }
      if (dia[i] == 0.0) dia[i] = tiny;
      const double m = sub[i + 1] / dia[i];
      dia[i + 1] -= m * sup[i];
      sup[i + 1] -= m * sup2[i];
      rhs[i + 1] -= m * rhs[i];
    }
    if (dia[n - 1] == 0.0) dia[n - 1] = tiny;
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
      double t = rhs[ii];
      if (ii + 1 < n) t -= sup[ii] * x[ii + 1];
      if (ii + 2 < n) t -= sup2[ii] * x[ii + 2];
      x[ii] = t / dia[ii];
    }
    return x;
  }

  static void normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    if (s == 0.0) throw SolverError("eigenvector collapsed to zero");
    for (auto& x : v) x /= s;
  }

  std::vector<double> d_, e_, e2_;
};

}  // namespace qforge
