#ifndef XBIFIX_BOUNDS_HPP_
#define XBIFIX_BOUNDS_HPP_

#include <gmpxx.h>

#include <cmath>    // for sqrt, exp2, ceil
#include <cstddef>  // for size_t
#include <numbers>  // for e
#include <optional> // for optional
#include <string>   // for to_string
#include <vector>   // for vector

#include "construction.hpp"
#include "errors.hpp"
#include "fibonacci.hpp"
#include "mpreal.hpp"

namespace xbifix {

using Rational = mpq_class;

inline BigInt big_power(unsigned q, std::size_t n) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), q, n);
  return p;
}

// C(n,q) <= q^n / (2n - 1), kept exact.
inline Rational upper_bound(std::size_t n, unsigned q) {
  if (n < 1) throw DomainError("upper_bound: n must be at least 1");
  if (q < 2) throw DomainError("upper_bound: q must be at least 2");
  Rational r(big_power(q, n), BigInt(static_cast<unsigned long>(2 * n - 1)));
  r.canonicalize();
  return r;
}

inline BigInt floor_of(Rational const& r) {
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return f;
}

// Variance of the first-match time of a cross-bifix-free code of M words,
//   sigma^2 = (1 - 2n) q^n / M + q^(2n) / M^2,
// as an exact rational.
inline Rational variance_exact(std::size_t n, unsigned q, std::size_t M) {
  if (M < 1) throw DomainError("variance_formula: M must be at least 1");
  BigInt qn = big_power(q, n);
  Rational m(BigInt(static_cast<unsigned long>(M)));
  Rational v = Rational(BigInt(1) - BigInt(static_cast<unsigned long>(2 * n)))
                   * Rational(qn) / m
               + Rational(qn * qn) / (m * m);
  v.canonicalize();
  return v;
}

inline double variance_formula(std::size_t n, unsigned q, std::size_t M) {
  return variance_exact(n, q, M).get_d();
}

inline BigInt catalan(std::size_t m) {
  BigInt c;
  mpz_bin_uiui(c.get_mpz_t(), 2 * m, m);
  c /= static_cast<unsigned long>(m + 1);
  return c;
}

// Sizes of the binary Dyck-path codes. For n = 2m+2 the case labels are the
// reverse of the usual statement; this reading reproduces the published
// table:
//   n = 2m+1:          C_m
//   n = 2m+2, m even:  sum_{i=0}^{m/2} C_i C_{m-i}
//   n = 2m+2, m odd:   sum_{i=0}^{(m+1)/2} C_i C_{m-i} - C_{(m-1)/2}^2
inline BigInt bilotta_size(std::size_t n) {
  if (n < 3) throw DomainError("bilotta_size: n must be at least 3");
  if (n % 2 == 1) return catalan((n - 1) / 2);
  std::size_t const m = (n - 2) / 2;
  BigInt sum = 0;
  std::size_t const top = m % 2 == 0 ? m / 2 : (m + 1) / 2;
  for (std::size_t i = 0; i <= top; ++i) sum += catalan(i) * catalan(m - i);
  if (m % 2 == 1) {
    BigInt c = catalan((m - 1) / 2);
    sum -= c * c;
  }
  return sum;
}

// D(n) <= 2^(n - 2 sqrt(n-1)), from n <= floor(h^2/4) + 1.
struct DistSeqBound {
  double bound;       // the right-hand side; an upper bound, not a size
  double log2_bound;  // n - 2 sqrt(n-1)
  unsigned min_h;     // least h with floor(h^2/4) + 1 >= n
};

inline DistSeqBound dist_seq_bound(std::size_t n) {
  if (n < 2) throw DomainError("dist_seq_bound: n must be at least 2");
  double const e = static_cast<double>(n) - 2.0 * std::sqrt(static_cast<double>(n - 1));
  unsigned h = 0;
  while (static_cast<std::size_t>(h) * h / 4 + 1 < n) ++h;
  return DistSeqBound{std::exp2(e), e, h};
}

// liminf S(n,q) / (q^n / n) >= (q-1)/(qe).
inline double lower_ratio_limit(unsigned q) {
  return static_cast<double>(q - 1) / (q * std::numbers::e);
}

inline constexpr double upper_ratio_limit = 0.5;

struct BoundsReport {
  std::size_t n;
  unsigned q;
  BigInt construction_size;
  std::optional<unsigned> best_k;
  Rational upper_bound;
  std::optional<BigInt> bilotta;         // q = 2 only
  std::optional<DistSeqBound> dist_seq;  // q = 2 only
  double ratio_lower;                    // S(n,q) n / q^n
  double ratio_upper;                    // n upper_bound / q^n
};

inline BoundsReport bounds_report(std::size_t n, unsigned q) {
  SizeRecord best = best_size(n, q);
  Rational ub = upper_bound(n, q);
  BigInt qn = big_power(q, n);
  Rational nn(BigInt(static_cast<unsigned long>(n)));
  BoundsReport r{n,
                 q,
                 best.size,
                 best.best_k,
                 ub,
                 std::nullopt,
                 std::nullopt,
                 Rational(Rational(best.size) * nn / Rational(qn)).get_d(),
                 Rational(ub * nn / Rational(qn)).get_d()};
  if (q == 2) {
    r.bilotta = bilotta_size(n);
    r.dist_seq = dist_seq_bound(n);
  }
  return r;
}

// One row of the growth probe along n(k) = ceil(c alpha(k,q)^k).
struct ProbeRow {
  unsigned k;
  std::size_t n;
  double alpha;
  BigInt size;   // S_{k,q}(n(k))
  double ratio;  // size * n / q^n
};

struct ProbeResult {
  unsigned q;
  double c;
  double target;  // (q-1)/(qe)
  std::vector<ProbeRow> rows;
};

inline double default_probe_constant(unsigned q) {
  return static_cast<double>(q) / (q - 1);
}

inline constexpr std::size_t default_probe_n_cap = std::size_t{1} << 20;

inline ProbeResult asymptotic_probe(unsigned q, unsigned k_min, unsigned k_max,
                                    double c,
                                    std::size_t n_cap = default_probe_n_cap) {
  check_fib_params(k_min, q);
  if (!(c > 0)) throw DomainError("asymptotic_probe: c must be positive");
  ProbeResult result{q, c, lower_ratio_limit(q), {}};
  for (unsigned k = k_min; k <= k_max; ++k) {
    RootEstimate root = find_alpha(k, q, 128);
    long const bits = root.precision_bits;
    MpReal scaled(bits);
    mpfr_pow_ui(scaled.get(), root.alpha.get(), k, MPFR_RNDN);
    mpfr_mul_d(scaled.get(), scaled.get(), c, MPFR_RNDN);
    mpfr_ceil(scaled.get(), scaled.get());
    if (mpfr_cmp_ui(scaled.get(), n_cap) > 0) {
      throw CapacityError("asymptotic_probe: n(" + std::to_string(k)
                          + ") exceeds cap " + std::to_string(n_cap));
    }
    std::size_t const n = mpfr_get_ui(scaled.get(), MPFR_RNDN);
    if (n < k + 2) continue;  // no code of this length for this k
    BigInt size = size_formula({n, k, q});
    Rational ratio(size * static_cast<unsigned long>(n), big_power(q, n));
    ratio.canonicalize();
    result.rows.push_back({k, n, root.alpha.to_double(), std::move(size),
                           ratio.get_d()});
  }
  return result;
}

}  // namespace xbifix

#endif  // XBIFIX_BOUNDS_HPP_
