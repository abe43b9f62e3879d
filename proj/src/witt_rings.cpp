#include "muforge/witt_rings.hpp"

#include <stdexcept>

namespace muforge {

IntegerRing::Lift IntegerRing::ldivexact(const Lift& a, const mpz_class& k) const
{
    if (!mpz_divisible_p(a.get_mpz_t(), k.get_mpz_t())) throw std::domain_error("witt: inexact ghost division");
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), k.get_mpz_t());
    return q;
}

namespace {

std::vector<mpz_class> integer_modulus(const Fq& F)
{
    std::vector<mpz_class> f;
    for (unsigned c : F.modulus()) f.emplace_back(c);
    return f;
}

long pmod(const mpz_class& v, unsigned long p)
{
    return (long)mpz_fdiv_ui(v.get_mpz_t(), p);
}

}  // namespace

FqRing::FqRing(const Fq& F_) : F(&F_), f(integer_modulus(F_)) {}

FqRing::Lift FqRing::lift(Elem a) const
{
    Lift r(F->m());
    for (unsigned i = 0; i < F->m(); ++i) r[i] = F->coeff(a, i);
    return r;
}

FqRing::Elem FqRing::reduce(const Lift& a) const
{
    std::vector<unsigned> c(F->m());
    for (unsigned i = 0; i < F->m(); ++i) c[i] = (unsigned)pmod(a[i], F->p());
    return F->from_coeffs(c);
}

FqRing::Lift FqRing::ladd(const Lift& a, const Lift& b) const
{
    Lift r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

FqRing::Lift FqRing::lsub(const Lift& a, const Lift& b) const
{
    Lift r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

FqRing::Lift FqRing::lscale(const Lift& a, const mpz_class& k) const
{
    Lift r(a);
    for (auto& x : r) x *= k;
    return r;
}

FqRing::Lift FqRing::ldivexact(const Lift& a, const mpz_class& k) const
{
    Lift r(a);
    for (auto& x : r) {
        if (!mpz_divisible_p(x.get_mpz_t(), k.get_mpz_t())) throw std::domain_error("witt: inexact ghost division");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
    }
    return r;
}

FqRing::Lift FqRing::lfrom_int(const mpz_class& k) const
{
    Lift r(F->m(), 0);
    r[0] = k;
    return r;
}

FqPolyRing::FqPolyRing(const Fq& F_) : F(&F_), f(integer_modulus(F_)) {}

FqPolyRing::Lift FqPolyRing::lift(const Elem& a) const
{
    const unsigned m = F->m();
    Lift r(m);
    for (unsigned i = 0; i < m; ++i) {
        r[i].lo = a.min_degree();
        r[i].c.resize(a.coeffs().size());
        for (std::size_t d = 0; d < a.coeffs().size(); ++d) r[i].c[d] = F->coeff(a.coeffs()[d], i);
        zp_normalize(r[i]);
    }
    return r;
}

FqPolyRing::Elem FqPolyRing::reduce(const Lift& a) const
{
    const unsigned m = F->m();
    long lo = 0, hi = 0;
    bool any = false;
    for (const auto& z : a) {
        if (z.is_zero()) continue;
        if (!any || z.lo < lo) lo = z.lo;
        if (!any || z.hi() > hi) hi = z.hi();
        any = true;
    }
    if (!any) return zero();
    std::vector<fq_t> c(hi - lo + 1);
    std::vector<unsigned> digits(m);
    for (long d = lo; d <= hi; ++d) {
        for (unsigned i = 0; i < m; ++i) digits[i] = (unsigned)pmod(a[i].at(d), F->p());
        c[d - lo] = F->from_coeffs(digits);
    }
    return LaurentPoly(*F, lo, std::move(c));
}

FqPolyRing::Lift FqPolyRing::ladd(const Lift& a, const Lift& b) const
{
    Lift r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = zp_add(a[i], b[i]);
    return r;
}

FqPolyRing::Lift FqPolyRing::lsub(const Lift& a, const Lift& b) const
{
    Lift r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = zp_sub(a[i], b[i]);
    return r;
}

FqPolyRing::Lift FqPolyRing::lmul(const Lift& a, const Lift& b) const
{
    const std::size_t m = a.size();
    if (m == 1) return {zp_mul(a[0], b[0])};
    std::vector<ZPoly> r(2 * m - 1);
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < m; ++j)
            if (!b[j].is_zero()) r[i + j] = zp_add(r[i + j], zp_mul(a[i], b[j]));
    }
    for (std::size_t d = r.size(); d-- > m;) {
        if (r[d].is_zero()) continue;
        for (std::size_t k = 0; k < m; ++k)
            if (f[k] != 0) r[d - m + k] = zp_sub(r[d - m + k], zp_scale(r[d], f[k]));
        r[d] = ZPoly{};
    }
    r.resize(m);
    return r;
}

FqPolyRing::Lift FqPolyRing::lscale(const Lift& a, const mpz_class& k) const
{
    Lift r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = zp_scale(a[i], k);
    return r;
}

FqPolyRing::Lift FqPolyRing::ldivexact(const Lift& a, const mpz_class& k) const
{
    Lift r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = zp_divexact(a[i], k);
    return r;
}

FqPolyRing::Lift FqPolyRing::lfrom_int(const mpz_class& k) const
{
    Lift r(F->m());
    r[0] = zp_const(k);
    return r;
}

}  // namespace muforge
