#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "rotomo/angular_basis.hpp"

namespace rotomo {
namespace {

constexpr int kLogFactorialSize = 4 * kMaxAngularMomentum + 2;

void require_x(double x, const char* who) {
  if (!(x >= -1.0 && x <= 1.0)) throw std::domain_error(std::string(who) + ": x outside [-1, 1]");
}

void require_j(int J, const char* who) {
  if (J < 0 || J > kMaxAngularMomentum) {
    throw std::domain_error(std::string(who) + ": J = " + std::to_string(J) + " outside [0, " +
                            std::to_string(kMaxAngularMomentum) + "]");
  }
}

long double log_factorial_ld(int n) {
  static const std::array<long double, kLogFactorialSize> table = [] {
    std::array<long double, kLogFactorialSize> t{};
    t[0] = 0.0L;
    for (int i = 1; i < kLogFactorialSize; ++i) t[i] = t[i - 1] + std::log(static_cast<long double>(i));
    return t;
  }();
  if (n < 0 || n >= kLogFactorialSize) throw std::domain_error("log_factorial: argument out of range");
  return table[n];
}

// d^J_{km} at J = max(|k|, |m|), where the Wigner sum has a single term.
double wigner_d_lowest(int k, int m, double x) {
  const int j = lowest_j(k, m);
  const int s = std::max(0, m - k);
  const int pc = 2 * j + m - k - 2 * s;  // exponent of cos(beta/2)
  const int ps = k - m + 2 * s;          // exponent of sin(beta/2)
  const double c2 = 0.5 * (1.0 + x);
  const double s2 = 0.5 * (1.0 - x);
  if ((pc > 0 && c2 == 0.0) || (ps > 0 && s2 == 0.0)) return 0.0;
  long double log_mag =
      0.5L * (log_factorial_ld(j + k) + log_factorial_ld(j - k) + log_factorial_ld(j + m) + log_factorial_ld(j - m)) -
      (log_factorial_ld(j + m - s) + log_factorial_ld(s) + log_factorial_ld(k - m + s) + log_factorial_ld(j - k - s));
  if (pc > 0) log_mag += 0.5L * pc * std::log(static_cast<long double>(c2));
  if (ps > 0) log_mag += 0.5L * ps * std::log(static_cast<long double>(s2));
  const double sign = ((k - m + s) % 2 == 0) ? 1.0 : -1.0;
  return sign * static_cast<double>(std::exp(log_mag));
}

}  // namespace

double log_factorial(int n) { return static_cast<double>(log_factorial_ld(n)); }

double legendre_p(int J, double x) {
  require_j(J, "legendre_p");
  require_x(x, "legendre_p");
  double p0 = 1.0, p1 = x;
  if (J == 0) return p0;
  for (int n = 1; n < J; ++n) {
    const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::vector<double> assoc_legendre_norm_column(int j_max, int m, double x) {
  const int am = std::abs(m);
  require_j(j_max, "assoc_legendre_norm");
  require_x(x, "assoc_legendre_norm");
  if (am > j_max) throw std::domain_error("assoc_legendre_norm: |m| > J");

  std::vector<double> out(j_max - am + 1);
  // P^m_m = (-1)^m sqrt((2m+1)/2 (2m)!) / (2^m m!) (1 - x^2)^{m/2}, built as a product.
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = std::sqrt(0.5);
  for (int i = 1; i <= am; ++i) pmm *= -std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * s;
  out[0] = pmm;
  if (j_max > am) {
    double prev = pmm;
    double cur = x * std::sqrt(2.0 * am + 3.0) * pmm;
    out[1] = cur;
    double old_fact = std::sqrt(2.0 * am + 3.0);
    for (int l = am + 2; l <= j_max; ++l) {
      const double fact = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(am) * am));
      const double next = (x * cur - prev / old_fact) * fact;
      old_fact = fact;
      prev = cur;
      cur = next;
      out[l - am] = cur;
    }
  }
  if (m < 0 && (am % 2 == 1)) {
    for (double& v : out) v = -v;
  }
  return out;
}

double assoc_legendre_norm(int J, int m, double x) {
  if (std::abs(m) > J) throw std::domain_error("assoc_legendre_norm: |m| > J");
  return assoc_legendre_norm_column(J, m, x).back();
}

std::vector<double> wigner_d_column(int j_max, int k, int m, double x) {
  require_j(j_max, "wigner_d");
  require_x(x, "wigner_d");
  const int j0 = lowest_j(k, m);
  if (j0 > j_max) throw std::domain_error("wigner_d: |k| or |m| exceeds J");

  std::vector<double> out(j_max - j0 + 1);
  out[0] = wigner_d_lowest(k, m, x);
  if (j_max == j0) return out;

  const double kk = static_cast<double>(k) * k;
  const double mm = static_cast<double>(m) * m;
  const double km = static_cast<double>(k) * m;
  double prev = 0.0;
  double cur = out[0];
  for (int J = j0; J < j_max; ++J) {
    double next;
    if (J == 0) {
      next = x * cur;  // only reached for k = m = 0
    } else {
      const double Jd = J;
      const double Jp = J + 1.0;
      const double a = (2.0 * Jd + 1.0) * (Jd * Jp * x - km);
      const double b = Jp * std::sqrt(std::max(0.0, (Jd * Jd - kk) * (Jd * Jd - mm)));
      const double c = Jd * std::sqrt((Jp * Jp - kk) * (Jp * Jp - mm));
      next = (a * cur - b * prev) / c;
    }
    prev = cur;
    cur = next;
    out[J + 1 - j0] = cur;
  }
  return out;
}

double wigner_d(int J, int k, int m, double x) {
  if (std::abs(k) > J || std::abs(m) > J) throw std::domain_error("wigner_d: |k| or |m| exceeds J");
  return wigner_d_column(J, k, m, x).back();
}

double clebsch_gordan(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (j1 < 0 || j2 < 0 || j3 < 0) return 0.0;
  if (m1 + m2 != m3) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
  if (j3 < std::abs(j1 - j2) || j3 > j1 + j2) return 0.0;
  if (j1 > kMaxAngularMomentum || j2 > kMaxAngularMomentum || j3 > kMaxAngularMomentum) {
    throw std::domain_error("clebsch_gordan: angular momentum above supported cap");
  }

  const long double log_pre =
      0.5L * (std::log(2.0L * j3 + 1.0L) + log_factorial_ld(j3 + j1 - j2) + log_factorial_ld(j3 - j1 + j2) +
              log_factorial_ld(j1 + j2 - j3) - log_factorial_ld(j1 + j2 + j3 + 1) + log_factorial_ld(j3 + m3) +
              log_factorial_ld(j3 - m3) + log_factorial_ld(j1 - m1) + log_factorial_ld(j1 + m1) +
              log_factorial_ld(j2 - m2) + log_factorial_ld(j2 + m2));

  const int k_lo = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
  const int k_hi = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
  long double sum = 0.0L;
  for (int k = k_lo; k <= k_hi; ++k) {
    const long double log_den = log_factorial_ld(k) + log_factorial_ld(j1 + j2 - j3 - k) + log_factorial_ld(j1 - m1 - k) +
                                log_factorial_ld(j2 + m2 - k) + log_factorial_ld(j3 - j2 + m1 + k) +
                                log_factorial_ld(j3 - j1 - m2 + k);
    const long double term = std::exp(log_pre - log_den);
    sum += (k % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum);
}

std::vector<double> eigenfunction_column(BasisKind basis, int j_max, int k, int m, double x) {
  if (basis == BasisKind::legendre) {
    if (k != 0) throw std::domain_error("eigenfunction: legendre basis requires k = 0");
    return assoc_legendre_norm_column(j_max, m, x);
  }
  std::vector<double> d = wigner_d_column(j_max, k, m, x);
  const int j0 = lowest_j(k, m);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] *= std::sqrt((2.0 * (j0 + static_cast<int>(i)) + 1.0) / 2.0);
  return d;
}

double eigenfunction(BasisKind basis, int J, int k, int m, double x) {
  if (J < lowest_j(k, m)) throw std::domain_error("eigenfunction: J below M_km");
  return eigenfunction_column(basis, J, k, m, x).back();
}

}  // namespace rotomo
