#ifndef XBIFIX_FIBONACCI_HPP_
#define XBIFIX_FIBONACCI_HPP_

#include <mpfr.h>

#include <algorithm>  // for max
#include <cmath>      // for log2, ceil, abs
#include <complex>    // for complex
#include <cstddef>    // for size_t
#include <string>     // for string, to_string
#include <vector>     // for vector

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include "errors.hpp"
#include "mpreal.hpp"

namespace xbifix {

inline void check_fib_params(unsigned k, unsigned q) {
  if (k < 2) throw DomainError("Fibonacci order k must be at least 2");
  if (q < 2) throw DomainError("weight base q must be at least 2");
}

// The (q-1)-weighted k-generalized Fibonacci numbers
//
//   F(n) = q^n                      for 0 <= n < k,
//   F(n) = (q-1) (F(n-1) + ... + F(n-k))  for n >= k,
//
// memoized. Not safe for concurrent use; each thread should own its sequence.
class FibSequence {
 public:
  FibSequence(unsigned k, unsigned q) : k_(k), q_(q) {
    check_fib_params(k, q);
    BigInt p = 1;
    for (unsigned i = 0; i < k; ++i) {
      values_.push_back(p);
      window_ += p;
      p *= q;
    }
  }

  unsigned order() const noexcept { return k_; }
  unsigned weight_base() const noexcept { return q_; }

  BigInt const& operator()(std::size_t n) {
    while (values_.size() <= n) {
      // window_ holds the sum of the last k values
      BigInt next = window_ * (q_ - 1);
      window_ += next;
      window_ -= values_[values_.size() - k_];
      values_.push_back(std::move(next));
    }
    return values_[n];
  }

 private:
  unsigned k_;
  unsigned q_;
  std::vector<BigInt> values_;
  BigInt window_;
};

inline BigInt fib(unsigned k, unsigned q, std::size_t n) {
  FibSequence seq(k, q);
  return seq(n);
}

// f(x) = x^k - (q-1) (x^(k-1) + ... + x + 1), the characteristic polynomial.
template <typename T>
T f_poly(unsigned k, unsigned q, T x) {
  T geometric = 0;
  T power = 1;
  for (unsigned i = 0; i < k; ++i) {
    geometric = geometric * x + T(1);
    power *= x;
  }
  return power - T(q - 1) * geometric;
}

// g(x) = (x-1) f(x) = x^k (x-q) + (q-1).
template <typename T>
T g_poly(unsigned k, unsigned q, T x) {
  T power = 1;
  for (unsigned i = 0; i < k; ++i) power *= x;
  return power * (x - T(q)) + T(q - 1);
}

namespace detail {

// Certified sign of g(x) for 1 <= x <= q: -1 or +1, or 0 when an enclosure
// computed at `bits` straddles zero.
inline int g_sign(unsigned k, unsigned q, MpReal const& x, long bits) {
  // g(x) = (q-1) - x^k (q-x), and both factors of the product are >= 0
  MpReal t_lo(bits), t_hi(bits), p_lo(bits), p_hi(bits);
  mpfr_ui_sub(t_lo.get(), q, x.get(), MPFR_RNDD);
  mpfr_ui_sub(t_hi.get(), q, x.get(), MPFR_RNDU);
  mpfr_pow_ui(p_lo.get(), x.get(), k, MPFR_RNDD);
  mpfr_pow_ui(p_hi.get(), x.get(), k, MPFR_RNDU);
  mpfr_mul(p_lo.get(), p_lo.get(), t_lo.get(), MPFR_RNDD);
  mpfr_mul(p_hi.get(), p_hi.get(), t_hi.get(), MPFR_RNDU);
  MpReal g_lo(bits), g_hi(bits);
  mpfr_ui_sub(g_lo.get(), q - 1, p_hi.get(), MPFR_RNDD);
  mpfr_ui_sub(g_hi.get(), q - 1, p_lo.get(), MPFR_RNDU);
  if (g_lo.sign() > 0) return 1;
  if (g_hi.sign() < 0) return -1;
  return 0;
}

inline long bits_for_power(unsigned q, double exponent) {
  return static_cast<long>(std::ceil(exponent * std::log2(static_cast<double>(q))));
}

}  // namespace detail

// Certified sign of f at x in [1, q]. f(1) = 1 - k(q-1) < 0 is handled
// exactly; elsewhere sign(f) = sign(g) because x - 1 > 0.
inline int f_sign(unsigned k, unsigned q, MpReal const& x) {
  MpReal one(x.precision(), 1ul);
  if (x == one) return -1;
  return detail::g_sign(k, q, x, x.precision() + 64);
}

// Bracketed estimate of the dominant root alpha(k,q) of f, the unique real
// root in (1, q).
struct RootEstimate {
  MpReal alpha;
  MpReal lo;
  MpReal hi;
  long precision_bits;
};

// Bisection on g over [1, q]. The working precision is raised above
// `precision_bits` when needed to separate alpha from q, which is within
// about (q-1)/q^k of it.
inline RootEstimate find_alpha(unsigned k, unsigned q, long precision_bits = 128) {
  check_fib_params(k, q);
  if (precision_bits < 53) throw DomainError("precision_bits must be >= 53");
  long const bits = std::max(precision_bits, detail::bits_for_power(q, k) + 64);

  MpReal lo(bits, 1ul);
  MpReal hi(bits, static_cast<unsigned long>(q));
  MpReal target(bits);
  mpfr_set_ui_2exp(target.get(), q, -(bits - 4), MPFR_RNDD);
  MpReal width(bits), mid(bits);

  auto width_ok = [&] {
    mpfr_sub(width.get(), hi.get(), lo.get(), MPFR_RNDU);
    return !(width > target);
  };
  while (!width_ok()) {
    mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    if (!(lo < mid && mid < hi)) break;
    int s = detail::g_sign(k, q, mid, bits + 64);
    if (s < 0) {
      lo = mid;
    } else if (s > 0) {
      hi = mid;
    } else {
      break;
    }
  }
  if (!width_ok()) {
    throw NumericError("find_alpha: bracket stalled before reaching "
                       + std::to_string(bits) + "-bit width");
  }
  MpReal alpha(bits);
  mpfr_add(alpha.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(alpha.get(), alpha.get(), 1, MPFR_RNDN);
  return RootEstimate{std::move(alpha), std::move(lo), std::move(hi), bits};
}

// Smallest k >= 1 with (1 - 1/q^k)^k > 1 - 1/q, in exact integer arithmetic:
// (q^k - 1)^k * q > (q - 1) * q^(k^2).
inline unsigned kq_threshold(unsigned q) {
  if (q < 2) throw DomainError("kq_threshold: q must be at least 2");
  for (unsigned k = 1;; ++k) {
    BigInt qk, lhs, rhs;
    mpz_ui_pow_ui(qk.get_mpz_t(), q, k);
    qk -= 1;
    mpz_pow_ui(lhs.get_mpz_t(), qk.get_mpz_t(), k);
    lhs *= q;
    mpz_ui_pow_ui(rhs.get_mpz_t(), q, static_cast<unsigned long>(k) * k);
    rhs *= q - 1;
    if (lhs > rhs) return k;
  }
}

// A point beta in (q - 1/q^(k-1), q) with g(beta) < 0, and the lower bound
// q - (q-1)/beta^k < alpha it certifies.
struct BetaBracket {
  MpReal beta;
  MpReal lower;
  MpReal interval_left;  // q - 1/q^(k-1), rounded up
  RootEstimate alpha;
};

inline BetaBracket beta_bracket(unsigned k, unsigned q) {
  check_fib_params(k, q);
  unsigned const threshold = kq_threshold(q);
  if (k < threshold) {
    throw DomainError("beta_bracket: k = " + std::to_string(k)
                      + " is below kq_threshold(" + std::to_string(q)
                      + ") = " + std::to_string(threshold));
  }
  // alpha and beta both sit within q^-(k-1) of q and the gap between the
  // bound and alpha is of order q^-2k
  long const bits = std::max(128L, 3 * detail::bits_for_power(q, k) + 128);

  MpReal left(bits), inv(bits);
  mpfr_set_ui(inv.get(), q, MPFR_RNDN);
  mpfr_pow_si(inv.get(), inv.get(), -(static_cast<long>(k) - 1), MPFR_RNDD);
  mpfr_ui_sub(left.get(), q, inv.get(), MPFR_RNDU);

  MpReal a(left), b(bits, static_cast<unsigned long>(q)), beta(bits);
  for (long iter = 0;; ++iter) {
    mpfr_add(beta.get(), a.get(), b.get(), MPFR_RNDN);
    mpfr_div_2ui(beta.get(), beta.get(), 1, MPFR_RNDN);
    if (detail::g_sign(k, q, beta, bits + 64) < 0) break;
    if (iter > bits || !(a < beta)) {
      throw NumericError("beta_bracket: no point with g < 0 found");
    }
    b = beta;
  }

  // lower = q - (q-1)/beta^k; round so `lower` does not underestimate
  MpReal denom(bits), lower(bits);
  mpfr_pow_ui(denom.get(), beta.get(), k, MPFR_RNDU);
  mpfr_ui_div(lower.get(), q - 1, denom.get(), MPFR_RNDD);
  mpfr_ui_sub(lower.get(), q, lower.get(), MPFR_RNDU);

  RootEstimate root = find_alpha(k, q, bits);
  if (!(lower < root.lo)) {
    throw NumericError("beta_bracket: bound failed to separate from alpha");
  }
  return BetaBracket{std::move(beta), std::move(lower), std::move(left),
                     std::move(root)};
}

// Nearest integer to (alpha-1) alpha^(n+1) / ((q-1)((k+1) alpha - kq)),
// evaluated in interval arithmetic over the root bracket. Throws
// PrecisionError if the enclosure is not strictly inside one rounding cell.
inline BigInt fib_closed_form(RootEstimate const& root, unsigned k, unsigned q,
                              std::size_t n) {
  long const bits = root.precision_bits + 32;
  auto fail = [&](std::string const& why) {
    return PrecisionError("fib_closed_form(k=" + std::to_string(k) + ", q="
                              + std::to_string(q) + ", n=" + std::to_string(n)
                              + "): " + why,
                          root.precision_bits);
  };

  // denominator (q-1)((k+1)x - kq) is increasing in x and positive near alpha
  auto denominator = [&](MpReal const& x, mpfr_rnd_t r) {
    MpReal d(bits);
    mpfr_mul_ui(d.get(), x.get(), k + 1, r);
    mpfr_sub_ui(d.get(), d.get(), static_cast<unsigned long>(k) * q, r);
    mpfr_mul_ui(d.get(), d.get(), q - 1, r);
    return d;
  };
  // numerator (x-1) x^(n+1) is increasing for x > 1
  auto numerator = [&](MpReal const& x, mpfr_rnd_t r) {
    MpReal a(bits), p(bits);
    mpfr_sub_ui(a.get(), x.get(), 1, r);
    mpfr_pow_ui(p.get(), x.get(), n + 1, r);
    mpfr_mul(a.get(), a.get(), p.get(), r);
    return a;
  };

  MpReal d_lo = denominator(root.lo, MPFR_RNDD);
  if (d_lo.sign() <= 0) throw fail("root bracket too wide for denominator");
  MpReal d_hi = denominator(root.hi, MPFR_RNDU);
  MpReal e_lo(bits), e_hi(bits);
  mpfr_div(e_lo.get(), numerator(root.lo, MPFR_RNDD).get(), d_hi.get(), MPFR_RNDD);
  mpfr_div(e_hi.get(), numerator(root.hi, MPFR_RNDU).get(), d_lo.get(), MPFR_RNDU);

  BigInt m;
  mpfr_get_z(m.get_mpz_t(), e_lo.get(), MPFR_RNDN);
  // m - 1/2 and m + 1/2 held exactly
  long const edge_bits = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2)) + 8;
  MpReal below(edge_bits, m), above(edge_bits, m);
  mpfr_sub_d(below.get(), below.get(), 0.5, MPFR_RNDN);
  mpfr_add_d(above.get(), above.get(), 0.5, MPFR_RNDN);
  if (!(e_lo > below && e_hi < above)) {
    throw fail("enclosure straddles a half-integer at "
               + std::to_string(root.precision_bits) + " bits");
  }
  return m;
}

inline BigInt fib_closed_form(unsigned k, unsigned q, std::size_t n,
                              long precision_bits) {
  return fib_closed_form(find_alpha(k, q, precision_bits), k, q, n);
}

// Starts from enough bits to hold F(n) and doubles on PrecisionError.
inline BigInt fib_closed_form_adaptive(unsigned k, unsigned q, std::size_t n,
                                       long start_bits = 128,
                                       long max_bits = 1L << 18) {
  check_fib_params(k, q);
  long bits = std::max(start_bits,
                       detail::bits_for_power(q, static_cast<double>(n) + 1)
                           + 2 * static_cast<long>(std::log2(n + 2.0)) + 64);
  while (true) {
    try {
      return fib_closed_form(k, q, n, bits);
    } catch (PrecisionError const&) {
      if (bits >= max_bits) throw;
      bits *= 2;
    }
  }
}

// All k complex roots of f, from the companion matrix and polished by
// Newton steps in long double.
inline std::vector<std::complex<long double>> characteristic_roots(unsigned k,
                                                                   unsigned q) {
  check_fib_params(k, q);
  if (k > 64) throw DomainError("characteristic_roots: k must be <= 64");
  Eigen::VectorXd coeffs(k + 1);
  for (unsigned i = 0; i < k; ++i) coeffs[i] = -static_cast<double>(q - 1);
  coeffs[k] = 1.0;
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(coeffs);

  using C = std::complex<long double>;
  auto eval = [&](C x, C& deriv) {
    // Horner for f and f'
    C value = 1;
    deriv = 0;
    for (unsigned i = 0; i < k; ++i) {
      deriv = deriv * x + value;
      value = value * x - static_cast<long double>(q - 1);
    }
    return value;
  };
  std::vector<C> roots;
  for (auto const& r : solver.roots()) {
    C x(r.real(), r.imag());
    for (int iter = 0; iter < 50; ++iter) {
      C d;
      C v = eval(x, d);
      if (std::abs(d) == 0) break;
      C step = v / d;
      x -= step;
      if (std::abs(step) < 1e-18L * std::max(1.0L, std::abs(x))) break;
    }
    C d;
    long double scale = std::pow(std::max(1.0L, std::abs(x)), k) * q * (k + 1);
    if (std::abs(eval(x, d)) > 1e-9L * scale) {
      throw NumericError("characteristic_roots: Newton polish did not converge");
    }
    roots.push_back(x);
  }
  return roots;
}

// Numeric check that f has k pairwise distinct roots and exactly one of them
// lies outside the unit circle. Not a proof.
inline bool other_roots_inside_unit_disk(unsigned k, unsigned q,
                                         long double tolerance = 1e-8L) {
  auto roots = characteristic_roots(k, q);
  std::size_t outside = 0;
  for (auto const& r : roots) {
    long double m = std::abs(r);
    if (m > 1 + tolerance) {
      ++outside;
    } else if (!(m < 1 - tolerance)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (std::abs(roots[i] - roots[j]) <= tolerance) return false;
    }
  }
  return outside == 1;
}

}  // namespace xbifix

#endif  // XBIFIX_FIBONACCI_HPP_
