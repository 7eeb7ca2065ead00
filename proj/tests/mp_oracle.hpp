#pragma once

// Arbitrary-precision Gamma-function oracles. Test-only; the library never
// evaluates Gamma functions at run time except through std::lgamma.

#include <mpfr.h>

#include <cstddef>

namespace oracle {

class Mp {
 public:
  Mp() { mpfr_init2(v_, 256); }
  explicit Mp(double x) : Mp() { mpfr_set_d(v_, x, MPFR_RNDN); }
  ~Mp() { mpfr_clear(v_); }
  Mp(const Mp& o) : Mp() { mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mp& operator=(const Mp& o) {
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

inline Mp lngamma(const Mp& x) {
  Mp r;
  int sign = 0;
  mpfr_lgamma(r.get(), &sign, x.get(), MPFR_RNDN);
  return r;
}

inline Mp add(const Mp& a, double b) {
  Mp r;
  mpfr_add_d(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}

/// a_n(d) = d Γ(n-d) / (Γ(1-d) Γ(n+1)), from the definition.
inline double weight(double d, std::size_t n) {
  if (d == 0.0) return 0.0;
  const Mp dd(d);
  const Mp nn(static_cast<double>(n));
  Mp nd;
  mpfr_sub(nd.get(), nn.get(), dd.get(), MPFR_RNDN);
  Mp one_minus_d;
  mpfr_d_sub(one_minus_d.get(), 1.0, dd.get(), MPFR_RNDN);
  Mp e;
  mpfr_sub(e.get(), lngamma(nd).get(), lngamma(one_minus_d).get(), MPFR_RNDN);
  mpfr_sub(e.get(), e.get(), lngamma(add(nn, 1.0)).get(), MPFR_RNDN);
  mpfr_exp(e.get(), e.get(), MPFR_RNDN);
  mpfr_mul(e.get(), e.get(), dd.get(), MPFR_RNDN);
  return e.to_double();
}

/// 1 - sum_{n=1}^{L} a_n(d) = Γ(L+1-d) / (Γ(1-d) Γ(L+1)), the partial-sum
/// identity of the binomial series of (1 - z)^d.
inline double tail_mass(double d, std::size_t L) {
  const Mp dd(d);
  const Mp ll(static_cast<double>(L));
  Mp a;
  mpfr_sub(a.get(), add(ll, 1.0).get(), dd.get(), MPFR_RNDN);
  Mp one_minus_d;
  mpfr_d_sub(one_minus_d.get(), 1.0, dd.get(), MPFR_RNDN);
  Mp e;
  mpfr_sub(e.get(), lngamma(a).get(), lngamma(one_minus_d).get(), MPFR_RNDN);
  mpfr_sub(e.get(), e.get(), lngamma(add(ll, 1.0)).get(), MPFR_RNDN);
  mpfr_exp(e.get(), e.get(), MPFR_RNDN);
  return e.to_double();
}

/// Γ(1-d) Γ(n+d) / (Γ(d) Γ(n+1-d)).
inline double fiarch_acf(double d, std::size_t n) {
  const Mp dd(d);
  const Mp nn(static_cast<double>(n));
  Mp one_minus_d;
  mpfr_d_sub(one_minus_d.get(), 1.0, dd.get(), MPFR_RNDN);
  Mp n_plus_d;
  mpfr_add(n_plus_d.get(), nn.get(), dd.get(), MPFR_RNDN);
  Mp n1_minus_d;
  mpfr_sub(n1_minus_d.get(), add(nn, 1.0).get(), dd.get(), MPFR_RNDN);
  Mp e;
  mpfr_add(e.get(), lngamma(one_minus_d).get(), lngamma(n_plus_d).get(), MPFR_RNDN);
  mpfr_sub(e.get(), e.get(), lngamma(dd).get(), MPFR_RNDN);
  mpfr_sub(e.get(), e.get(), lngamma(n1_minus_d).get(), MPFR_RNDN);
  mpfr_exp(e.get(), e.get(), MPFR_RNDN);
  return e.to_double();
}

}  // namespace oracle
