#pragma once

#include <cstdint>
#include <vector>

#include "muforge/fq.hpp"
#include "muforge/laurent.hpp"

namespace muforge {

// W_n(F_q) realised as (Z/p^n)[x]/(f~) with f~ the lift of the modulus of F_q.
// Elements are encoded by sum_i c_i (p^n)^i with c_i in [0, p^n).
class GaloisRing {
public:
    using elem = std::uint32_t;

    static const GaloisRing& get(const Fq& F, unsigned n);

    const Fq& field() const { return *F_; }
    unsigned n() const { return n_; }
    std::uint64_t pn() const { return pn_; }
    std::uint64_t size() const { return size_; }

    elem add(elem a, elem b) const;
    elem sub(elem a, elem b) const;
    elem neg(elem a) const;
    elem mul(elem a, elem b) const;
    elem mul_int(elem a, long long k) const;
    elem from_int(long long k) const;
    // p^k * a
    elem mul_p(elem a, unsigned k) const;
    elem teich(fq_t c) const { return teich_[c]; }
    // i-th digit of the p-adic expansion a = sum [d_i] p^i.
    fq_t digit(elem a, unsigned i) const { return digits_[(std::size_t)a * n_ + i]; }
    elem frob(elem a) const { return frob_[a]; }

private:
    GaloisRing(const Fq& F, unsigned n);
    std::vector<std::uint64_t> decode(elem a) const;
    elem encode(const std::vector<std::uint64_t>& c) const;
    elem mul_slow(elem a, elem b) const;

    const Fq* F_;
    unsigned n_;
    std::uint64_t pn_, size_;
    std::vector<std::uint64_t> fmod_;
    std::vector<elem> teich_, frob_, mul_;
    std::vector<std::uint16_t> digits_;
};

// Laurent polynomial with coefficients in a Galois ring; models W_n(k)((u)).
struct GRSeries {
    long lo = 0;
    std::vector<GaloisRing::elem> c;

    bool is_zero() const { return c.empty(); }
    long hi() const { return lo + (long)c.size() - 1; }
    GaloisRing::elem at(long d) const
    {
        return (d < lo || d > hi() || c.empty()) ? 0 : c[d - lo];
    }
};

void gs_normalize(GRSeries& a);
GRSeries gs_add(const GaloisRing& R, const GRSeries& a, const GRSeries& b);
GRSeries gs_sub(const GaloisRing& R, const GRSeries& a, const GRSeries& b);
GRSeries gs_mul(const GaloisRing& R, const GRSeries& a, const GRSeries& b);
GRSeries gs_shift(const GRSeries& a, long k);
GRSeries gs_mul_p(const GaloisRing& R, const GRSeries& a, unsigned k);
GRSeries gs_mul_int(const GaloisRing& R, const GRSeries& a, long long k);
// Drop every term of degree >= D.
GRSeries gs_truncate(const GRSeries& a, long D);
GRSeries gs_frob(const GaloisRing& R, const GRSeries& a);
// Coefficientwise Teichmueller lift [x] = sum [x_j] u^j.
GRSeries gs_teich(const GaloisRing& R, const LaurentPoly& x);
LaurentPoly gs_digit(const GaloisRing& R, const GRSeries& a, unsigned i);

}  // namespace muforge
