// oracles.hpp
//
// Slow, independent reference computations used only by the tests.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace csums::oracle {

/// S(a) by summing every block a_u..a_v from scratch.
inline std::set<std::uint64_t> consecutive_sums(const std::vector<std::uint64_t>& a) {
  std::set<std::uint64_t> out;
  for (std::size_t u = 0; u < a.size(); ++u) {
    for (std::size_t v = u; v < a.size(); ++v) {
      std::uint64_t s = 0;
      for (std::size_t i = u; i <= v; ++i) s += a[i];
      out.insert(s);
    }
  }
  return out;
}

/// #{(x, y, z, w) in P^4 : x - y = z - w} by enumerating all quadruples.
inline std::uint64_t energy_quadruples(const std::vector<std::int64_t>& p) {
  std::uint64_t count = 0;
  for (auto x : p)
    for (auto y : p)
      for (auto z : p)
        for (auto w : p)
          if (x - y == z - w) ++count;
  return count;
}

/// Distribution of Bin(n, 1/2) mod m as exact counts (out of 2^n), built one
/// coin at a time over residues.
inline std::vector<boost::multiprecision::cpp_int> binomial_residue_counts(std::uint64_t n,
                                                                           std::uint64_t m) {
  std::vector<boost::multiprecision::cpp_int> cur(m, 0), next(m);
  cur[0] = 1;
  for (std::uint64_t step = 0; step < n; ++step) {
    for (auto& x : next) x = 0;
    for (std::uint64_t r = 0; r < m; ++r) {
      next[r] += cur[r];
      next[(r + 1) % m] += cur[r];
    }
    cur.swap(next);
  }
  return cur;
}

/// Adaptive Simpson quadrature.
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
          int depth) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double flm = f(lm), frm = f(rm);
    const double left = (mid - lo) / 6 * (flo + 4 * flm + fmid);
    const double right = (hi - mid) / 6 * (fmid + 4 * frm + fhi);
    if (depth <= 0 || std::abs(left + right - whole) <= 15 * eps) {
      return left + right + (left + right - whole) / 15;
    }
    return rec(lo, mid, flo, flm, fmid, left, eps / 2, depth - 1) +
           rec(mid, hi, fmid, frm, fhi, right, eps / 2, depth - 1);
  };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return rec(a, b, fa, fm, fb, whole, tol, 50);
}

}  // namespace csums::oracle
