#pragma once

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "muforge/fq.hpp"

namespace muforge {

// Laurent polynomial over F_q, optionally known only modulo u^precision.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(const Fq& F) : F_(&F) {}
    LaurentPoly(const Fq& F, long min_degree, std::vector<fq_t> coeffs,
                std::optional<long> precision = std::nullopt);

    static LaurentPoly monomial(const Fq& F, long degree, fq_t c = 1);
    static LaurentPoly constant(const Fq& F, fq_t c) { return monomial(F, 0, c); }

    const Fq* field() const { return F_; }
    bool is_zero() const { return c_.empty(); }
    // Lowest stored degree; 0 for the zero polynomial.
    long min_degree() const { return c_.empty() ? 0 : lo_; }
    long max_degree() const { return c_.empty() ? LONG_MIN : lo_ + (long)c_.size() - 1; }
    // u-adic valuation; LONG_MAX for an exact zero, the precision for an inexact one.
    long valuation() const;
    const std::vector<fq_t>& coeffs() const { return c_; }
    fq_t coeff(long d) const;
    std::optional<long> precision() const { return prec_; }
    bool is_polynomial() const { return c_.empty() || lo_ >= 0; }

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
    bool operator==(const LaurentPoly& o) const;
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly scaled(fq_t c) const;
    // Multiplication by u^k.
    LaurentPoly shift(long k) const;
    // Reduction modulo u^P, recording the precision.
    LaurentPoly truncated(long P) const;
    // Drop terms of degree >= P without recording precision.
    LaurentPoly low_part(long P) const;
    // Terms of degree >= P, divided by u^P.
    LaurentPoly high_part(long P) const;
    LaurentPoly pow(unsigned k) const;
    // Coefficients raised to the p-th power, u -> u^p.
    LaurentPoly frobenius() const;
    LaurentPoly frobenius_inverse() const;
    bool divisible_by_u(long k) const { return valuation() >= k; }

    std::string to_string() const;

private:
    void normalize();
    const Fq* F_ = nullptr;
    long lo_ = 0;
    std::vector<fq_t> c_;
    std::optional<long> prec_;
};

// g with f g = 1 mod u^D, for a power series f with f(0) != 0.
LaurentPoly series_inverse(const LaurentPoly& f, long D);

}  // namespace muforge
