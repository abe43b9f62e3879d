#pragma once

#include <gmpxx.h>

#include <vector>

namespace muforge {

// Laurent polynomial with integer coefficients.
struct ZPoly {
    long lo = 0;
    std::vector<mpz_class> c;

    bool is_zero() const { return c.empty(); }
    long hi() const { return lo + (long)c.size() - 1; }
    mpz_class at(long d) const { return (c.empty() || d < lo || d > hi()) ? mpz_class(0) : c[d - lo]; }
    bool operator==(const ZPoly& o) const;
};

void zp_normalize(ZPoly& a);
ZPoly zp_const(const mpz_class& v);
ZPoly zp_add(const ZPoly& a, const ZPoly& b);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b);
ZPoly zp_neg(const ZPoly& a);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_scale(const ZPoly& a, const mpz_class& k);
// Throws std::domain_error when some coefficient is not divisible by k.
ZPoly zp_divexact(const ZPoly& a, const mpz_class& k);
ZPoly zp_pow(const ZPoly& a, unsigned long k);

// Dense polynomials of fixed length m modulo a monic integer polynomial.
using ZVec = std::vector<mpz_class>;
// r = a*b mod f, where f = x^m + f_{m-1} x^{m-1} + ... (f has m+1 entries, f_m = 1)
ZVec zv_mulmod(const ZVec& a, const ZVec& b, const std::vector<mpz_class>& f);

}  // namespace muforge
