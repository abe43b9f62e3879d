#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "muforge/laurent.hpp"
#include "muforge/series.hpp"

namespace muforge {

// Upper triangular n x n matrix over k((u)) with diagonal u^{l_i}. Row i stands
// for the element sum_j [a_ij] p^j of W_n(k)((u)) (indices from 0).
struct GMatrix {
    const Fq* F = nullptr;
    unsigned n = 0;
    std::vector<long> l;
    // a[i][j] for j > i; other slots are unused zeros.
    std::vector<std::vector<LaurentPoly>> a;

    GMatrix() = default;
    GMatrix(const Fq& F_, std::vector<long> l_);
    static GMatrix identity(const Fq& F, unsigned n) { return GMatrix(F, std::vector<long>(n, 0)); }

    // Entry (i, j) including the diagonal and the zero lower part.
    LaurentPoly at(unsigned i, unsigned j) const;
    void set(unsigned i, unsigned j, LaurentPoly v) { a[i][j] = std::move(v); }
    PadicElem row(unsigned i) const;

    bool operator==(const GMatrix& o) const { return n == o.n && l == o.l && a == o.a; }
    bool operator!=(const GMatrix& o) const { return !(*this == o); }
    std::string to_string() const;
};

// Teichmueller p-adic digits E_0 = u^e, E_1, ... of an Eisenstein polynomial.
struct EisensteinDigits {
    const Fq* F = nullptr;
    long e = 0;
    std::vector<LaurentPoly> E;

    // coeffs lowest degree first, including the leading 1. Throws
    // std::invalid_argument if E is not Eisenstein at p.
    static EisensteinDigits from_coeffs(const Fq& F, const std::vector<mpz_class>& coeffs, unsigned ndigits);
    // E_i, zero past the stored digits.
    LaurentPoly digit(unsigned i) const;
};

GMatrix star(const GMatrix& A, const GMatrix& B);
// The B with A * B = C.
GMatrix ldiv(const GMatrix& A, const GMatrix& C);
// The A with A * B = C.
GMatrix rdiv(const GMatrix& C, const GMatrix& B);
GMatrix upper(const GMatrix& A);
GMatrix lower(const GMatrix& A);
GMatrix phi_mat(const GMatrix& A);
// Matrix of the rows E(u) * row_i, with E truncated to n digits.
GMatrix ediamond(const EisensteinDigits& E, const GMatrix& A);
bool is_positive(const GMatrix& A);
// A / B >= 0
bool succ(const GMatrix& A, const GMatrix& B);

}  // namespace muforge
