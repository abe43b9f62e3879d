#pragma once

#include <cstdint>
#include <vector>

namespace muforge {

using fq_t = std::uint32_t;

bool is_prime(unsigned long n);

// Finite field F_{p^m}. An element is encoded by the integer sum c_i p^i of
// its coordinates in the power basis of F_p[x]/(f).
class Fq {
public:
    // Shared instance; lives for the rest of the program.
    static const Fq& get(unsigned p, unsigned m = 1);

    unsigned p() const { return p_; }
    unsigned m() const { return m_; }
    unsigned q() const { return q_; }
    // Monic irreducible f, coefficients f_0..f_m with f_m = 1.
    const std::vector<unsigned>& modulus() const { return mod_; }

    fq_t add(fq_t a, fq_t b) const;
    fq_t sub(fq_t a, fq_t b) const;
    fq_t neg(fq_t a) const;
    fq_t mul(fq_t a, fq_t b) const;
    fq_t inv(fq_t a) const;
    fq_t pow(fq_t a, std::uint64_t k) const;
    fq_t frob(fq_t a) const { return frob_[a]; }
    fq_t frob_inv(fq_t a) const { return frob_inv_[a]; }
    fq_t from_int(long long v) const;

    unsigned coeff(fq_t a, unsigned i) const;
    fq_t from_coeffs(const std::vector<unsigned>& c) const;

private:
    Fq(unsigned p, unsigned m);
    fq_t mul_slow(fq_t a, fq_t b) const;

    unsigned p_, m_, q_;
    std::vector<unsigned> mod_;
    std::vector<fq_t> add_, mul_, frob_, frob_inv_, inv_;
    bool tables_ = false;
};

}  // namespace muforge
