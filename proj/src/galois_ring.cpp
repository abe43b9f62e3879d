#include "muforge/galois_ring.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace muforge {

const GaloisRing& GaloisRing::get(const Fq& F, unsigned n)
{
    static std::mutex mu;
    static std::map<std::pair<const Fq*, unsigned>, std::unique_ptr<GaloisRing>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{&F, n}];
    if (!slot) slot.reset(new GaloisRing(F, n));
    return *slot;
}

GaloisRing::GaloisRing(const Fq& F, unsigned n) : F_(&F), n_(n)
{
    if (n == 0) throw std::invalid_argument("GaloisRing: length must be positive");
    pn_ = 1;
    for (unsigned i = 0; i < n; ++i) pn_ *= F.p();
    size_ = 1;
    for (unsigned i = 0; i < F.m(); ++i) {
        size_ *= pn_;
        if (size_ > (1ull << 22)) throw std::invalid_argument("GaloisRing: too large");
    }
    if (F.q() > 65535) throw std::invalid_argument("GaloisRing: residue field too large");
    for (unsigned c : F.modulus()) fmod_.push_back(c);
    if (size_ <= 1024) {
        mul_.resize(size_ * size_);
        for (elem a = 0; a < size_; ++a)
            for (elem b = 0; b < size_; ++b) mul_[a * size_ + b] = mul_slow(a, b);
    }
    // Teichmueller: [c] = c~^(q^(n-1))
    std::uint64_t e = 1;
    for (unsigned i = 0; i + 1 < n; ++i) e *= F.q();
    teich_.resize(F.q());
    for (fq_t c = 0; c < F.q(); ++c) {
        std::vector<std::uint64_t> co(F.m());
        for (unsigned i = 0; i < F.m(); ++i) co[i] = F.coeff(c, i);
        elem base = encode(co), r = from_int(1);
        std::uint64_t k = e;
        while (k) {
            if (k & 1) r = mul(r, base);
            base = mul(base, base);
            k >>= 1;
        }
        teich_[c] = r;
    }
    digits_.resize(size_ * n);
    frob_.resize(size_);
    for (elem a = 0; a < size_; ++a) {
        elem x = a;
        elem fr = 0;
        for (unsigned i = 0; i < n; ++i) {
            auto co = decode(x);
            std::vector<unsigned> red(F.m());
            for (unsigned j = 0; j < F.m(); ++j) red[j] = co[j] % F.p();
            fq_t d = F.from_coeffs(red);
            digits_[(std::size_t)a * n + i] = (std::uint16_t)d;
            fr = add(fr, mul_p(teich_[F.frob(d)], i));
            auto rest = decode(sub(x, teich_[d]));
            for (auto& r : rest) r /= F.p();
            x = encode(rest);
        }
        frob_[a] = fr;
    }
}

std::vector<std::uint64_t> GaloisRing::decode(elem a) const
{
    std::vector<std::uint64_t> c(F_->m());
    for (unsigned i = 0; i < F_->m(); ++i) {
        c[i] = a % pn_;
        a /= pn_;
    }
    return c;
}

GaloisRing::elem GaloisRing::encode(const std::vector<std::uint64_t>& c) const
{
    std::uint64_t r = 0;
    for (unsigned i = F_->m(); i-- > 0;) r = r * pn_ + c[i] % pn_;
    return (elem)r;
}

GaloisRing::elem GaloisRing::add(elem a, elem b) const
{
    if (F_->m() == 1) {
        std::uint64_t s = (std::uint64_t)a + b;
        return (elem)(s >= pn_ ? s - pn_ : s);
    }
    auto x = decode(a), y = decode(b);
    for (unsigned i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % pn_;
    return encode(x);
}

GaloisRing::elem GaloisRing::neg(elem a) const
{
    if (F_->m() == 1) return a ? (elem)(pn_ - a) : 0;
    auto x = decode(a);
    for (auto& v : x) v = (pn_ - v) % pn_;
    return encode(x);
}

GaloisRing::elem GaloisRing::sub(elem a, elem b) const { return add(a, neg(b)); }

GaloisRing::elem GaloisRing::mul_slow(elem a, elem b) const
{
    unsigned m = F_->m();
    if (m == 1) return (elem)((std::uint64_t)a * b % pn_);
    auto x = decode(a), y = decode(b);
    std::vector<std::uint64_t> r(2 * m, 0);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % pn_;
    for (unsigned d = 2 * m - 1; d >= m; --d) {
        std::uint64_t c = r[d];
        r[d] = 0;
        if (!c) continue;
        for (unsigned k = 0; k < m; ++k)
            r[d - m + k] = (r[d - m + k] + (pn_ - fmod_[k] % pn_) % pn_ * c) % pn_;
    }
    r.resize(m);
    return encode(r);
}

GaloisRing::elem GaloisRing::mul(elem a, elem b) const
{
    if (!mul_.empty()) return mul_[(std::size_t)a * size_ + b];
    return mul_slow(a, b);
}

GaloisRing::elem GaloisRing::from_int(long long k) const
{
    long long r = k % (long long)pn_;
    if (r < 0) r += (long long)pn_;
    return (elem)r;  // constant term occupies the lowest slot
}

GaloisRing::elem GaloisRing::mul_int(elem a, long long k) const
{
    long long r = k % (long long)pn_;
    if (r < 0) r += (long long)pn_;
    auto x = decode(a);
    for (auto& v : x) v = v * (std::uint64_t)r % pn_;
    return encode(x);
}

GaloisRing::elem GaloisRing::mul_p(elem a, unsigned k) const
{
    if (k >= n_) return 0;
    std::uint64_t f = 1;
    for (unsigned i = 0; i < k; ++i) f *= F_->p();
    return mul_int(a, (long long)f);
}

void gs_normalize(GRSeries& a)
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

GRSeries gs_add(const GaloisRing& R, const GRSeries& a, const GRSeries& b)
{
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    GRSeries r;
    r.lo = std::min(a.lo, b.lo);
    long hi = std::max(a.hi(), b.hi());
    r.c.assign(hi - r.lo + 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[a.lo - r.lo + i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) {
        auto& t = r.c[b.lo - r.lo + i];
        t = R.add(t, b.c[i]);
    }
    gs_normalize(r);
    return r;
}

GRSeries gs_sub(const GaloisRing& R, const GRSeries& a, const GRSeries& b)
{
    GRSeries nb = b;
    for (auto& x : nb.c) x = R.neg(x);
    return gs_add(R, a, nb);
}

GRSeries gs_mul(const GaloisRing& R, const GRSeries& a, const GRSeries& b)
{
    GRSeries r;
    if (a.is_zero() || b.is_zero()) return r;
    r.lo = a.lo + b.lo;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    if (R.field().m() == 1) {
        std::uint64_t pn = R.pn();
        std::vector<std::uint64_t> acc(r.c.size(), 0);
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (!a.c[i]) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j) acc[i + j] += (std::uint64_t)a.c[i] * b.c[j];
            if ((i & 255) == 255)
                for (auto& v : acc) v %= pn;
        }
        for (std::size_t k = 0; k < acc.size(); ++k) r.c[k] = (GaloisRing::elem)(acc[k] % pn);
    } else {
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (!a.c[i]) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                if (b.c[j]) r.c[i + j] = R.add(r.c[i + j], R.mul(a.c[i], b.c[j]));
        }
    }
    gs_normalize(r);
    return r;
}

GRSeries gs_shift(const GRSeries& a, long k)
{
    GRSeries r = a;
    if (!r.is_zero()) r.lo += k;
    return r;
}

GRSeries gs_mul_p(const GaloisRing& R, const GRSeries& a, unsigned k)
{
    GRSeries r = a;
    for (auto& x : r.c) x = R.mul_p(x, k);
    gs_normalize(r);
    return r;
}

GRSeries gs_mul_int(const GaloisRing& R, const GRSeries& a, long long k)
{
    GRSeries r = a;
    for (auto& x : r.c) x = R.mul_int(x, k);
    gs_normalize(r);
    return r;
}

GRSeries gs_truncate(const GRSeries& a, long D)
{
    GRSeries r = a;
    if (r.is_zero()) return r;
    long keep = D - r.lo;
    if (keep < (long)r.c.size()) r.c.resize(std::max(0L, keep));
    gs_normalize(r);
    return r;
}

GRSeries gs_frob(const GaloisRing& R, const GRSeries& a)
{
    GRSeries r;
    if (a.is_zero()) return r;
    long p = R.field().p();
    r.lo = a.lo * p;
    r.c.assign((a.c.size() - 1) * p + 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i * p] = R.frob(a.c[i]);
    gs_normalize(r);
    return r;
}

GRSeries gs_teich(const GaloisRing& R, const LaurentPoly& x)
{
    GRSeries r;
    if (x.is_zero()) return r;
    r.lo = x.min_degree();
    r.c.resize(x.coeffs().size());
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = R.teich(x.coeffs()[i]);
    return r;
}

LaurentPoly gs_digit(const GaloisRing& R, const GRSeries& a, unsigned i)
{
    std::vector<fq_t> c(a.c.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = R.digit(a.c[k], i);
    return LaurentPoly(R.field(), a.lo, std::move(c));
}

}  // namespace muforge
