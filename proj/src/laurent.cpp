#include "muforge/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace muforge {

namespace {

const Fq* pick(const Fq* a, const Fq* b)
{
    if (a && b && a != b) throw std::invalid_argument("LaurentPoly: field mismatch");
    return a ? a : b;
}

std::optional<long> min_prec(std::optional<long> a, std::optional<long> b)
{
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

}  // namespace

LaurentPoly::LaurentPoly(const Fq& F, long min_degree, std::vector<fq_t> coeffs,
                         std::optional<long> precision)
    : F_(&F), lo_(min_degree), c_(std::move(coeffs)), prec_(precision)
{
    for (fq_t c : c_)
        if (c >= F.q()) throw std::invalid_argument("LaurentPoly: coefficient out of range");
    normalize();
}

LaurentPoly LaurentPoly::monomial(const Fq& F, long degree, fq_t c)
{
    return LaurentPoly(F, degree, {c});
}

void LaurentPoly::normalize()
{
    if (prec_) {
        long keep = *prec_ - lo_;
        if (keep < (long)c_.size()) c_.resize(std::max(0L, keep));
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    if (k) {
        c_.erase(c_.begin(), c_.begin() + k);
        lo_ += (long)k;
    }
    if (c_.empty()) lo_ = 0;
}

long LaurentPoly::valuation() const
{
    if (!c_.empty()) return lo_;
    return prec_ ? *prec_ : LONG_MAX;
}

fq_t LaurentPoly::coeff(long d) const
{
    if (c_.empty() || d < lo_ || d > max_degree()) return 0;
    return c_[d - lo_];
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly r = *this;
    for (auto& c : r.c_) c = F_->neg(c);
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o)
{
    F_ = pick(F_, o.F_);
    prec_ = min_prec(prec_, o.prec_);
    if (o.c_.empty()) { normalize(); return *this; }
    if (c_.empty()) {
        lo_ = o.lo_;
        c_ = o.c_;
        normalize();
        return *this;
    }
    long lo = std::min(lo_, o.lo_);
    long hi = std::max(max_degree(), o.max_degree());
    std::vector<fq_t> r(hi - lo + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[lo_ - lo + i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
        fq_t& t = r[o.lo_ - lo + i];
        t = F_->add(t, o.c_[i]);
    }
    lo_ = lo;
    c_ = std::move(r);
    normalize();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o)
{
    F_ = pick(F_, o.F_);
    std::optional<long> pr;
    if (prec_) pr = *prec_ + o.valuation();
    if (o.prec_) pr = min_prec(pr, *o.prec_ + valuation());
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        prec_ = pr;
        normalize();
        return *this;
    }
    std::vector<fq_t> r(c_.size() + o.c_.size() - 1, 0);
    if (F_->m() == 1) {
        unsigned p = F_->p();
        std::vector<unsigned long> acc(r.size(), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!c_[i]) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j] += (unsigned long)c_[i] * o.c_[j];
            if ((i & 1023) == 1023)
                for (auto& a : acc) a %= p;
        }
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = acc[k] % p;
    } else {
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!c_[i]) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = F_->add(r[i + j], F_->mul(c_[i], o.c_[j]));
        }
    }
    lo_ += o.lo_;
    c_ = std::move(r);
    prec_ = pr;
    normalize();
    return *this;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const
{
    if (c_.empty() && o.c_.empty()) return true;
    return lo_ == o.lo_ && c_ == o.c_;
}

LaurentPoly LaurentPoly::scaled(fq_t c) const
{
    LaurentPoly r = *this;
    for (auto& x : r.c_) x = F_->mul(x, c);
    r.normalize();
    return r;
}

LaurentPoly LaurentPoly::shift(long k) const
{
    LaurentPoly r = *this;
    if (!r.c_.empty()) r.lo_ += k;
    if (r.prec_) *r.prec_ += k;
    return r;
}

LaurentPoly LaurentPoly::truncated(long P) const
{
    LaurentPoly r = *this;
    r.prec_ = min_prec(prec_, P);
    r.normalize();
    return r;
}

LaurentPoly LaurentPoly::low_part(long P) const
{
    LaurentPoly r = *this;
    r.prec_.reset();
    if (!r.c_.empty()) {
        long keep = P - r.lo_;
        if (keep < (long)r.c_.size()) r.c_.resize(std::max(0L, keep));
    }
    r.normalize();
    return r;
}

LaurentPoly LaurentPoly::high_part(long P) const
{
    LaurentPoly r(*F_);
    if (c_.empty()) return r;
    for (long d = std::max(P, lo_); d <= max_degree(); ++d) {
        if (r.c_.empty()) r.lo_ = d - P;
        r.c_.push_back(c_[d - lo_]);
    }
    r.normalize();
    return r;
}

LaurentPoly LaurentPoly::pow(unsigned k) const
{
    LaurentPoly r = LaurentPoly::constant(*F_, 1), b = *this;
    while (k) {
        if (k & 1) r *= b;
        k >>= 1;
        if (k) b *= b;
    }
    return r;
}

LaurentPoly LaurentPoly::frobenius() const
{
    LaurentPoly r(*F_);
    if (c_.empty()) {
        r.prec_ = prec_ ? std::optional<long>(*prec_ * (long)F_->p()) : std::nullopt;
        return r;
    }
    long p = F_->p();
    r.lo_ = lo_ * p;
    r.c_.assign((c_.size() - 1) * p + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * p] = F_->frob(c_[i]);
    if (prec_) r.prec_ = *prec_ * p;
    r.normalize();
    return r;
}

LaurentPoly LaurentPoly::frobenius_inverse() const
{
    LaurentPoly r(*F_);
    long p = F_->p();
    for (long d = lo_; d <= max_degree() && !c_.empty(); ++d) {
        fq_t c = c_[d - lo_];
        if (!c) continue;
        if (d % p != 0) throw std::domain_error("LaurentPoly: not a p-th power");
        r += monomial(*F_, d / p, F_->frob_inv(c));
    }
    return r;
}

std::string LaurentPoly::to_string() const
{
    if (c_.empty()) return prec_ ? "O(u^" + std::to_string(*prec_) + ")" : "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        long d = lo_ + (long)i;
        if (!first) os << " + ";
        first = false;
        if (c_[i] != 1 || d == 0) os << c_[i];
        if (d != 0) {
            if (c_[i] != 1) os << "*";
            os << "u";
            if (d != 1) os << "^" << d;
        }
    }
    if (prec_) os << " + O(u^" << *prec_ << ")";
    return os.str();
}

LaurentPoly series_inverse(const LaurentPoly& f, long D)
{
    if (f.is_zero() || f.min_degree() != 0) throw std::invalid_argument("series_inverse: f(0) must be nonzero");
    const Fq& F = *f.field();
    std::vector<fq_t> g(std::max(0L, D), 0);
    if (D <= 0) return LaurentPoly(F);
    fq_t inv0 = F.inv(f.coeff(0));
    g[0] = inv0;
    for (long k = 1; k < D; ++k) {
        fq_t s = 0;
        for (long j = 1; j <= k; ++j) s = F.add(s, F.mul(f.coeff(j), g[k - j]));
        g[k] = F.mul(F.neg(s), inv0);
    }
    return LaurentPoly(F, 0, g);
}

}  // namespace muforge
