#pragma once

#include <gmpxx.h>

#include <vector>

#include "muforge/fq.hpp"
#include "muforge/laurent.hpp"
#include "muforge/witt.hpp"
#include "muforge/zpoly.hpp"

namespace muforge {

// The integers, lifted to themselves.
struct IntegerRing {
    using Elem = mpz_class;
    using Lift = mpz_class;
    unsigned long p;

    explicit IntegerRing(unsigned long p_) : p(p_) {}
    unsigned long prime() const { return p; }
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Lift lift(const Elem& a) const { return a; }
    Elem reduce(const Lift& a) const { return a; }
    Lift ladd(const Lift& a, const Lift& b) const { return a + b; }
    Lift lsub(const Lift& a, const Lift& b) const { return a - b; }
    Lift lmul(const Lift& a, const Lift& b) const { return a * b; }
    Lift lscale(const Lift& a, const mpz_class& k) const { return a * k; }
    Lift ldivexact(const Lift& a, const mpz_class& k) const;
    Lift lfrom_int(const mpz_class& k) const { return k; }
};

// Laurent polynomials Z[u, 1/u], lifted to themselves.
struct ZPolyRing {
    using Elem = ZPoly;
    using Lift = ZPoly;
    unsigned long p;

    explicit ZPolyRing(unsigned long p_) : p(p_) {}
    unsigned long prime() const { return p; }
    Elem zero() const { return {}; }
    Elem one() const { return zp_const(1); }
    Elem add(const Elem& a, const Elem& b) const { return zp_add(a, b); }
    Elem neg(const Elem& a) const { return zp_neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return zp_mul(a, b); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Lift lift(const Elem& a) const { return a; }
    Elem reduce(const Lift& a) const { return a; }
    Lift ladd(const Lift& a, const Lift& b) const { return zp_add(a, b); }
    Lift lsub(const Lift& a, const Lift& b) const { return zp_sub(a, b); }
    Lift lmul(const Lift& a, const Lift& b) const { return zp_mul(a, b); }
    Lift lscale(const Lift& a, const mpz_class& k) const { return zp_scale(a, k); }
    Lift ldivexact(const Lift& a, const mpz_class& k) const { return zp_divexact(a, k); }
    Lift lfrom_int(const mpz_class& k) const { return zp_const(k); }
};

// F_q, lifted to Z[x]/(f~) with f~ the integer lift of the defining polynomial.
struct FqRing {
    using Elem = fq_t;
    using Lift = ZVec;
    const Fq* F;
    std::vector<mpz_class> f;

    explicit FqRing(const Fq& F_);
    unsigned long prime() const { return F->p(); }
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(Elem a, Elem b) const { return F->add(a, b); }
    Elem neg(Elem a) const { return F->neg(a); }
    Elem mul(Elem a, Elem b) const { return F->mul(a, b); }
    bool eq(Elem a, Elem b) const { return a == b; }
    Lift lift(Elem a) const;
    Elem reduce(const Lift& a) const;
    Lift ladd(const Lift& a, const Lift& b) const;
    Lift lsub(const Lift& a, const Lift& b) const;
    Lift lmul(const Lift& a, const Lift& b) const { return zv_mulmod(a, b, f); }
    Lift lscale(const Lift& a, const mpz_class& k) const;
    Lift ldivexact(const Lift& a, const mpz_class& k) const;
    Lift lfrom_int(const mpz_class& k) const;
};

// F_q[u, 1/u] as LaurentPoly, lifted to (Z[x]/f~)[u, 1/u]. A lift is stored as
// m Laurent polynomials in u, one per power of x.
struct FqPolyRing {
    using Elem = LaurentPoly;
    using Lift = std::vector<ZPoly>;
    const Fq* F;
    std::vector<mpz_class> f;

    explicit FqPolyRing(const Fq& F_);
    unsigned long prime() const { return F->p(); }
    Elem zero() const { return LaurentPoly(*F); }
    Elem one() const { return LaurentPoly::constant(*F, 1); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
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

static_assert(RingPlugin<IntegerRing>);
static_assert(RingPlugin<ZPolyRing>);
static_assert(RingPlugin<FqRing>);
static_assert(RingPlugin<FqPolyRing>);

}  // namespace muforge
