#include "muforge/fq.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace muforge {

bool is_prime(unsigned long n)
{
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

using poly = std::vector<unsigned>;

poly poly_mulmod(const poly& a, const poly& b, const poly& f, unsigned p)
{
    unsigned m = f.size() - 1;
    std::vector<unsigned long> r(2 * m, 0);
    for (unsigned i = 0; i < a.size(); ++i)
        for (unsigned j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + (unsigned long)a[i] * b[j]) % p;
    for (unsigned d = 2 * m - 1; d >= m && d < 2 * m; --d) {
        unsigned long c = r[d];
        if (!c) continue;
        r[d] = 0;
        for (unsigned k = 0; k < m; ++k)
            r[d - m + k] = (r[d - m + k] + (p - f[k]) * c) % p;
    }
    poly out(m);
    for (unsigned i = 0; i < m; ++i) out[i] = r[i];
    return out;
}

// Rabin-style test by brute force: no root-free factor of degree <= m/2.
bool irreducible(const poly& f, unsigned p)
{
    unsigned m = f.size() - 1;
    if (m == 1) return true;
    for (unsigned d = 1; d <= m / 2; ++d) {
        // enumerate monic g of degree d and test divisibility
        unsigned long count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (unsigned long idx = 0; idx < count; ++idx) {
            poly g(d + 1);
            unsigned long t = idx;
            for (unsigned i = 0; i < d; ++i) { g[i] = t % p; t /= p; }
            g[d] = 1;
            poly r = f;
            for (int k = (int)m; k >= (int)d; --k) {
                unsigned c = r[k];
                if (!c) continue;
                for (unsigned i = 0; i <= d; ++i)
                    r[k - d + i] = (r[k - d + i] + (p - c) * (unsigned long)g[i] % p) % p;
            }
            bool zero = true;
            for (unsigned i = 0; i < d; ++i) zero = zero && r[i] == 0;
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace

const Fq& Fq::get(unsigned p, unsigned m)
{
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<Fq>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, m}];
    if (!slot) slot.reset(new Fq(p, m));
    return *slot;
}

Fq::Fq(unsigned p, unsigned m) : p_(p), m_(m)
{
    if (!is_prime(p)) throw std::invalid_argument("Fq: p is not prime");
    if (m == 0) throw std::invalid_argument("Fq: degree must be positive");
    unsigned long q = 1;
    for (unsigned i = 0; i < m; ++i) {
        q *= p;
        if (q > (1u << 20)) throw std::invalid_argument("Fq: field too large");
    }
    q_ = q;
    // lexicographically first monic irreducible
    mod_.assign(m + 1, 0);
    mod_[m] = 1;
    if (m > 1) {
        unsigned long count = q;
        bool found = false;
        for (unsigned long idx = 0; idx < count && !found; ++idx) {
            unsigned long t = idx;
            for (unsigned i = 0; i < m; ++i) { mod_[i] = t % p; t /= p; }
            if (mod_[0] != 0 && irreducible(mod_, p)) found = true;
        }
        if (!found) throw std::logic_error("Fq: no irreducible polynomial");
    }
    tables_ = q_ <= 1024;
    if (tables_) {
        add_.resize(q_ * q_);
        mul_.resize(q_ * q_);
        for (fq_t a = 0; a < q_; ++a)
            for (fq_t b = 0; b < q_; ++b) {
                std::vector<unsigned> c(m_);
                for (unsigned i = 0; i < m_; ++i) c[i] = (coeff(a, i) + coeff(b, i)) % p_;
                add_[a * q_ + b] = from_coeffs(c);
                mul_[a * q_ + b] = mul_slow(a, b);
            }
    }
    frob_.resize(q_);
    frob_inv_.resize(q_);
    inv_.assign(q_, 0);
    for (fq_t a = 0; a < q_; ++a) {
        fq_t f = pow(a, p_);
        frob_[a] = f;
        frob_inv_[f] = a;
    }
    for (fq_t a = 1; a < q_; ++a) inv_[a] = pow(a, q_ - 2);
}

unsigned Fq::coeff(fq_t a, unsigned i) const
{
    for (unsigned k = 0; k < i; ++k) a /= p_;
    return a % p_;
}

fq_t Fq::from_coeffs(const std::vector<unsigned>& c) const
{
    fq_t r = 0;
    for (unsigned i = c.size(); i-- > 0;) r = r * p_ + c[i] % p_;
    return r;
}

fq_t Fq::mul_slow(fq_t a, fq_t b) const
{
    if (m_ == 1) return (fq_t)((unsigned long)a * b % p_);
    poly x(m_), y(m_);
    for (unsigned i = 0; i < m_; ++i) { x[i] = coeff(a, i); y[i] = coeff(b, i); }
    return from_coeffs(poly_mulmod(x, y, mod_, p_));
}

fq_t Fq::add(fq_t a, fq_t b) const
{
    if (m_ == 1) { unsigned s = a + b; return s >= p_ ? s - p_ : s; }
    if (tables_) return add_[a * q_ + b];
    std::vector<unsigned> c(m_);
    for (unsigned i = 0; i < m_; ++i) c[i] = (coeff(a, i) + coeff(b, i)) % p_;
    return from_coeffs(c);
}

fq_t Fq::neg(fq_t a) const
{
    if (m_ == 1) return a ? p_ - a : 0;
    std::vector<unsigned> c(m_);
    for (unsigned i = 0; i < m_; ++i) c[i] = (p_ - coeff(a, i)) % p_;
    return from_coeffs(c);
}

fq_t Fq::sub(fq_t a, fq_t b) const { return add(a, neg(b)); }

fq_t Fq::mul(fq_t a, fq_t b) const
{
    if (m_ == 1) return (fq_t)((unsigned long)a * b % p_);
    if (tables_) return mul_[a * q_ + b];
    return mul_slow(a, b);
}

fq_t Fq::inv(fq_t a) const
{
    if (a == 0) throw std::domain_error("Fq: inverse of zero");
    return inv_[a];
}

fq_t Fq::pow(fq_t a, std::uint64_t k) const
{
    fq_t r = 1, b = a;
    while (k) {
        if (k & 1) r = mul(r, b);
        b = mul(b, b);
        k >>= 1;
    }
    return r;
}

fq_t Fq::from_int(long long v) const
{
    long long r = v % (long long)p_;
    if (r < 0) r += p_;
    return (fq_t)r;
}

}  // namespace muforge
