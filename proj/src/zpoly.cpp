#include "muforge/zpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace muforge {

bool ZPoly::operator==(const ZPoly& o) const
{
    if (c.empty() && o.c.empty()) return true;
    return lo == o.lo && c == o.c;
}

void zp_normalize(ZPoly& a)
{
    while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
    std::size_t k = 0;
    while (k < a.c.size() && a.c[k] == 0) ++k;
    if (k) {
        a.c.erase(a.c.begin(), a.c.begin() + k);
        a.lo += (long)k;
    }
    if (a.c.empty()) a.lo = 0;
}

ZPoly zp_const(const mpz_class& v)
{
    ZPoly r;
    if (v != 0) r.c.push_back(v);
    return r;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b)
{
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    ZPoly r;
    r.lo = std::min(a.lo, b.lo);
    r.c.assign(std::max(a.hi(), b.hi()) - r.lo + 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[a.lo - r.lo + i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[b.lo - r.lo + i] += b.c[i];
    zp_normalize(r);
    return r;
}

ZPoly zp_neg(const ZPoly& a)
{
    ZPoly r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) { return zp_add(a, zp_neg(b)); }

namespace {

// Kronecker substitution: evaluate at 2^bits with balanced digit recovery.
ZPoly kronecker(const ZPoly& a, const ZPoly& b)
{
    std::size_t maxbits = 0;
    for (const auto& x : a.c) maxbits = std::max(maxbits, mpz_sizeinbase(x.get_mpz_t(), 2));
    std::size_t mb = 0;
    for (const auto& x : b.c) mb = std::max(mb, mpz_sizeinbase(x.get_mpz_t(), 2));
    std::size_t len = std::min(a.c.size(), b.c.size());
    std::size_t lg = 1;
    while ((1ull << lg) < len) ++lg;
    std::size_t bits = maxbits + mb + lg + 2;

    auto pack = [bits](const ZPoly& x) {
        mpz_class v = 0;
        for (std::size_t i = x.c.size(); i-- > 0;) {
            mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
            v += x.c[i];
        }
        return v;
    };
    mpz_class prod = pack(a) * pack(b);
    ZPoly r;
    r.lo = a.lo + b.lo;
    std::size_t n = a.c.size() + b.c.size() - 1;
    r.c.resize(n);
    mpz_class half, full, digit;
    mpz_ui_pow_ui(full.get_mpz_t(), 2, bits);
    half = full / 2;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_fdiv_r_2exp(digit.get_mpz_t(), prod.get_mpz_t(), bits);
        mpz_fdiv_q_2exp(prod.get_mpz_t(), prod.get_mpz_t(), bits);
        if (digit >= half) {
            digit -= full;
            prod += 1;
        }
        r.c[i] = digit;
    }
    zp_normalize(r);
    return r;
}

}  // namespace

ZPoly zp_mul(const ZPoly& a, const ZPoly& b)
{
    ZPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    if (a.c.size() * b.c.size() > 400) return kronecker(a, b);
    r.lo = a.lo + b.lo;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            mpz_addmul(r.c[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
    }
    zp_normalize(r);
    return r;
}

ZPoly zp_scale(const ZPoly& a, const mpz_class& k)
{
    ZPoly r = a;
    for (auto& x : r.c) x *= k;
    zp_normalize(r);
    return r;
}

ZPoly zp_divexact(const ZPoly& a, const mpz_class& k)
{
    ZPoly r = a;
    for (auto& x : r.c) {
        if (!mpz_divisible_p(x.get_mpz_t(), k.get_mpz_t()))
            throw std::domain_error("zp_divexact: inexact division");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
    }
    return r;
}

ZPoly zp_pow(const ZPoly& a, unsigned long k)
{
    ZPoly r = zp_const(1), b = a;
    while (k) {
        if (k & 1) r = zp_mul(r, b);
        k >>= 1;
        if (k) b = zp_mul(b, b);
    }
    return r;
}

ZVec zv_mulmod(const ZVec& a, const ZVec& b, const std::vector<mpz_class>& f)
{
    std::size_t m = f.size() - 1;
    std::vector<mpz_class> r(2 * m - 1 > 0 ? 2 * m - 1 : 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    for (std::size_t d = r.size(); d-- > m;) {
        if (r[d] == 0) continue;
        mpz_class c = r[d];
        r[d] = 0;
        for (std::size_t k = 0; k < m; ++k) mpz_submul(r[d - m + k].get_mpz_t(), c.get_mpz_t(), f[k].get_mpz_t());
    }
    r.resize(m);
    return r;
}

}  // namespace muforge
