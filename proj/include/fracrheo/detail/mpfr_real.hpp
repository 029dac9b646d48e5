#pragma once

#include <mpfr.h>

// Minimal RAII wrapper so the extended-precision loops can use stack scoping.
// Only what the series summations need; not a general arithmetic type.

namespace fracrheo::detail {

class MpfrReal {
 public:
  explicit MpfrReal(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  MpfrReal(const MpfrReal&) = delete;
  MpfrReal& operator=(const MpfrReal&) = delete;
  ~MpfrReal() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  operator mpfr_ptr() { return v_; }
  operator mpfr_srcptr() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

}  // namespace fracrheo::detail
