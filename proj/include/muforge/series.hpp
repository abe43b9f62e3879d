#pragma once

#include <gmpxx.h>

#include <vector>

#include "muforge/galois_ring.hpp"
#include "muforge/laurent.hpp"

namespace muforge {

// [x_0] + [x_1] p + ... + [x_{n-1}] p^{n-1} in W_n(k)((u)).
struct PadicElem {
    std::vector<LaurentPoly> digits;

    PadicElem() = default;
    explicit PadicElem(std::vector<LaurentPoly> d) : digits(std::move(d)) {}
    static PadicElem zero(const Fq& F, unsigned n);

    unsigned n() const { return (unsigned)digits.size(); }
    bool is_zero() const;
    bool operator==(const PadicElem& o) const { return digits == o.digits; }
    bool operator!=(const PadicElem& o) const { return !(*this == o); }
};

GRSeries to_series(const GaloisRing& R, const PadicElem& x);
PadicElem from_series(const GaloisRing& R, const GRSeries& s);

PadicElem padic_add(const PadicElem& a, const PadicElem& b);
PadicElem padic_mul(const PadicElem& a, const PadicElem& b);
PadicElem padic_frobenius(const PadicElem& x);
LaurentPoly series_frobenius(const LaurentPoly& a);

// Carry functions: digit i of [a_1] + ... + [a_k], resp. of [a_1]...[a_k].
LaurentPoly s_fun(unsigned i, const std::vector<LaurentPoly>& args);
LaurentPoly p_fun(unsigned i, const std::vector<LaurentPoly>& args);

// Row i of M represents sum_j M_ij p^j; returns the digits of each row.
std::vector<std::vector<LaurentPoly>> rho(const std::vector<std::vector<PadicElem>>& M);

// Digits (c_0, ..., c_{count-1}) in [0, p) with c = sum [c_i] p^i in Z_p.
std::vector<unsigned> teich_digits(unsigned long p, const mpz_class& c, unsigned count);

// Checks that coeffs (lowest degree first, leading 1 included) define an
// Eisenstein polynomial at p; throws std::invalid_argument otherwise.
void validate_eisenstein(unsigned long p, const std::vector<mpz_class>& coeffs);

}  // namespace muforge
