#ifndef XBIFIX_MPREAL_HPP_
#define XBIFIX_MPREAL_HPP_

#include <gmpxx.h>
#include <mpfr.h>

#include <cstddef>  // for size_t
#include <string>   // for string
#include <utility>  // for swap

namespace xbifix {

using BigInt = mpz_class;

// Owning wrapper around an mpfr_t with an explicit binary precision. Every
// arithmetic helper takes a rounding mode so callers can build enclosures.
class MpReal {
 public:
  explicit MpReal(long bits) { mpfr_init2(v_, static_cast<mpfr_prec_t>(bits)); mpfr_set_zero(v_, 1); }

  MpReal(long bits, unsigned long x, mpfr_rnd_t r = MPFR_RNDN) : MpReal(bits) {
    mpfr_set_ui(v_, x, r);
  }

  MpReal(long bits, BigInt const& z, mpfr_rnd_t r = MPFR_RNDN) : MpReal(bits) {
    mpfr_set_z(v_, z.get_mpz_t(), r);
  }

  MpReal(MpReal const& other) : MpReal(other.precision()) {
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  MpReal(MpReal&& other) noexcept : MpReal(other.precision()) {
    mpfr_swap(v_, other.v_);
  }

  MpReal& operator=(MpReal other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }

  ~MpReal() { mpfr_clear(v_); }

  long precision() const noexcept { return static_cast<long>(mpfr_get_prec(v_)); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }

  int sign() const noexcept { return mpfr_sgn(v_); }

  // Decimal rendering with `digits` significant digits.
  std::string to_string(std::size_t digits) const {
    char* raw = nullptr;
    mpfr_asprintf(&raw, "%.*Rg", static_cast<int>(digits), v_);
    std::string s(raw);
    mpfr_free_str(raw);
    return s;
  }

  friend int compare(MpReal const& a, MpReal const& b) noexcept {
    return mpfr_cmp(a.v_, b.v_);
  }
  friend bool operator<(MpReal const& a, MpReal const& b) noexcept {
    return mpfr_less_p(a.v_, b.v_) != 0;
  }
  friend bool operator>(MpReal const& a, MpReal const& b) noexcept {
    return mpfr_greater_p(a.v_, b.v_) != 0;
  }
  friend bool operator==(MpReal const& a, MpReal const& b) noexcept {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }

 private:
  mpfr_t v_;
};

}  // namespace xbifix

#endif  // XBIFIX_MPREAL_HPP_
