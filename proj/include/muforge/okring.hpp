#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "muforge/witt.hpp"

namespace muforge {

struct NotDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrecisionShortfall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class OKElem;

// O_K / pi^N for K totally ramified over Q_p, pi a root of the Eisenstein
// polynomial E. Internally Z/p^M [x] / E(x) with M = ceil(N/e) + 1.
class OKContext {
public:
    // E_coeffs lowest degree first, including the leading 1.
    OKContext(unsigned long p, std::vector<mpz_class> E_coeffs, long N);
    static std::shared_ptr<const OKContext> make(unsigned long p, std::vector<mpz_class> E_coeffs, long N);

    unsigned long p() const { return p_; }
    long e() const { return e_; }
    long N() const { return N_; }
    long M() const { return M_; }
    const std::vector<mpz_class>& E_coeffs() const { return E_; }

    OKElem zero() const;
    OKElem one() const;
    OKElem from_int(const mpz_class& v) const;
    OKElem pi_pow(long k) const;
    // Teichmueller representative of c in F_p.
    OKElem teich(unsigned c) const;
    OKElem from_digits(std::vector<unsigned> digits, long precision) const;

    // Internal coordinates in Z/p^M[x]/E.
    using Poly = std::vector<std::int64_t>;
    Poly to_poly(const OKElem& a) const;
    OKElem from_poly(Poly y, long precision) const;
    Poly padd(const Poly& a, const Poly& b) const;
    Poly pmul(const Poly& a, const Poly& b) const;
    std::int64_t modp(std::int64_t v) const;
    // y / x for y with constant coefficient divisible by p.
    Poly div_x(Poly y) const;

    // x^i reduced modulo E over Z, for i < N.
    const std::vector<mpz_class>& x_power(long i) const { return xpow_[i]; }
    // Lift of a polynomial with integer coefficients to Z[x]/E.
    std::vector<mpz_class> reduce_mod_E(std::vector<mpz_class> c) const;

private:
    unsigned long p_;
    long e_, N_, M_;
    std::vector<mpz_class> E_;
    std::int64_t pM_;
    Poly red_;   // x^e = sum red_j x^j mod p^M
    Poly g_;     // p / x
    std::vector<std::vector<mpz_class>> xpow_;
    std::vector<std::int64_t> teich_;
};

// Element of O_K / pi^N in pi-adic digit form, known modulo pi^precision.
class OKElem {
public:
    OKElem() = default;
    OKElem(const OKContext* ctx, std::vector<unsigned> digits, long precision);

    const OKContext& ctx() const { return *ctx_; }
    const OKContext* ctx_ptr() const { return ctx_; }
    const std::vector<unsigned>& digits() const { return d_; }
    long precision() const { return prec_; }
    // First nonzero digit; precision() if every known digit vanishes.
    long valuation() const;
    bool is_known_zero() const;
    bool operator==(const OKElem& o) const { return prec_ == o.prec_ && d_ == o.d_; }
    bool operator!=(const OKElem& o) const { return !(*this == o); }
    // Same value modulo the smaller of the two precisions.
    bool agrees_with(const OKElem& o) const;
    OKElem with_precision(long P) const;
    std::string to_string() const;

private:
    const OKContext* ctx_ = nullptr;
    std::vector<unsigned> d_;
    long prec_ = 0;
};

OKElem ok_add(const OKElem& a, const OKElem& b);
OKElem ok_sub(const OKElem& a, const OKElem& b);
OKElem ok_neg(const OKElem& a);
OKElem ok_mul(const OKElem& a, const OKElem& b);
OKElem ok_pow(const OKElem& a, unsigned long k);
long valuation(const OKElem& a);
// Throws NotDivisible if v(a) < l, PrecisionShortfall if precision < l.
OKElem div_pi(const OKElem& a, long l);
// a = 0 mod pi^m; throws PrecisionShortfall if a is not known to that precision.
bool is_zero_mod(const OKElem& a, long m);
// p / pi^k as an element (requires k <= e).
OKElem p_over_pi(const OKContext& ctx, long k);

// Witt vectors over O_K / pi^N, lifted to Z[x]/E. A lift carries the smallest
// precision of the components it was built from.
struct OKWittRing {
    struct Lift {
        std::vector<mpz_class> c;
        long prec = 0;
    };
    using Elem = OKElem;
    const OKContext* ctx;

    explicit OKWittRing(const OKContext& c) : ctx(&c) {}
    unsigned long prime() const { return ctx->p(); }
    Elem zero() const { return ctx->zero(); }
    Elem one() const { return ctx->one(); }
    Elem add(const Elem& a, const Elem& b) const { return ok_add(a, b); }
    Elem neg(const Elem& a) const { return ok_neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return ok_mul(a, b); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Lift lift(const Elem& a) const;
    Elem reduce(const Lift& a) const;
    Lift ladd(const Lift& a, const Lift& b) const;
    Lift lsub(const Lift& a, const Lift& b) const;
    Lift lmul(const Lift& a, const Lift& b) const;
    Lift lscale(const Lift& a, const mpz_class& k) const;
    Lift ldivexact(const Lift& a, const mpz_class& k) const;
    Lift lfrom_int(const mpz_class& k) const;
};

static_assert(RingPlugin<OKWittRing>);

using OKWitt = WittVector<OKWittRing>;

// F(a) - [pi^{(p-1) l}] a, of length len(a) - 1.
OKWitt f_level(const OKWittRing& R, long l, const OKWitt& a);
// sigma_1(a, b) = (a^p + b^p - (a+b)^p) / p and
// sigma_2(a, b) = (a^{p^2} + b^{p^2} - (a+b)^{p^2} - p sigma_1^p) / p^2.
OKElem sigma(int i, const OKElem& a, const OKElem& b);

}  // namespace muforge
