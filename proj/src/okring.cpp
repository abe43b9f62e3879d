#include "muforge/okring.hpp"

#include <algorithm>
#include <sstream>

#include "muforge/series.hpp"

namespace muforge {

namespace {

using i128 = __int128;

std::int64_t inverse_mod(std::int64_t a, std::int64_t m)
{
    mpz_class r, x = (long)a, mm = (long)m;
    if (!mpz_invert(r.get_mpz_t(), x.get_mpz_t(), mm.get_mpz_t())) throw std::invalid_argument("not invertible");
    return r.get_si();
}

std::int64_t mpz_mod64(const mpz_class& v, std::int64_t m)
{
    mpz_class r, mm = (long)m;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), mm.get_mpz_t());
    return r.get_si();
}

}  // namespace

OKContext::OKContext(unsigned long p, std::vector<mpz_class> E_coeffs, long N)
    : p_(p), e_((long)E_coeffs.size() - 1), N_(N), E_(std::move(E_coeffs))
{
    validate_eisenstein(p, E_);
    if (N < 1) throw std::invalid_argument("OKContext: precision must be positive");
    M_ = (N + e_ - 1) / e_ + 1;
    mpz_class pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), p, M_);
    if (pm >= mpz_class(1L << 62)) throw std::invalid_argument("OKContext: precision too large for 64-bit p-adic coordinates");
    pM_ = pm.get_si();

    red_.resize(e_);
    for (long j = 0; j < e_; ++j) red_[j] = modp(-mpz_mod64(E_[j], pM_));
    // E(x) = 0 gives p = -(c_0/p)^{-1} (x^e + sum_{j>=1} c_j x^j), so p/x is:
    std::int64_t unit = mpz_mod64(mpz_class(E_[0] / (long)p), pM_);
    std::int64_t m = modp(-inverse_mod(unit, pM_));
    g_.assign(e_, 0);
    g_[e_ - 1] = m;
    for (long j = 1; j < e_; ++j) g_[j - 1] = (std::int64_t)((i128)m * mpz_mod64(E_[j], pM_) % pM_);

    xpow_.resize(N_ + e_);
    std::vector<mpz_class> cur(e_, 0);
    cur[0] = 1;
    for (long i = 0; i < N_ + e_; ++i) {
        xpow_[i] = cur;
        mpz_class top = cur[e_ - 1];
        for (long j = e_ - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        for (long j = 0; j < e_; ++j) cur[j] -= top * E_[j];
    }

    mpz_class expo;
    mpz_ui_pow_ui(expo.get_mpz_t(), p, M_ - 1);
    for (unsigned long c = 0; c < p; ++c) {
        mpz_class t, cc = c;
        mpz_powm(t.get_mpz_t(), cc.get_mpz_t(), expo.get_mpz_t(), pm.get_mpz_t());
        teich_.push_back(t.get_si());
    }
}

std::shared_ptr<const OKContext> OKContext::make(unsigned long p, std::vector<mpz_class> E_coeffs, long N)
{
    return std::make_shared<const OKContext>(p, std::move(E_coeffs), N);
}

std::int64_t OKContext::modp(std::int64_t v) const
{
    v %= pM_;
    return v < 0 ? v + pM_ : v;
}

OKContext::Poly OKContext::padd(const Poly& a, const Poly& b) const
{
    Poly r(e_);
    for (long j = 0; j < e_; ++j) r[j] = modp(a[j] + b[j]);
    return r;
}

OKContext::Poly OKContext::pmul(const Poly& a, const Poly& b) const
{
    std::vector<i128> t(2 * e_ - 1, 0);
    for (long i = 0; i < e_; ++i) {
        if (!a[i]) continue;
        for (long j = 0; j < e_; ++j) t[i + j] = (t[i + j] + (i128)a[i] * b[j]) % pM_;
    }
    for (long d = 2 * e_ - 2; d >= e_; --d) {
        i128 c = t[d];
        if (!c) continue;
        for (long j = 0; j < e_; ++j) t[d - e_ + j] = (t[d - e_ + j] + c * red_[j]) % pM_;
    }
    Poly r(e_);
    for (long j = 0; j < e_; ++j) r[j] = (std::int64_t)t[j];
    return r;
}

OKContext::Poly OKContext::to_poly(const OKElem& a) const
{
    Poly y(e_, 0);
    // Horner in x
    for (long i = (long)a.digits().size() - 1; i >= 0; --i) {
        std::int64_t top = y[e_ - 1];
        for (long j = e_ - 1; j > 0; --j) y[j] = y[j - 1];
        y[0] = 0;
        for (long j = 0; j < e_; ++j) y[j] = (std::int64_t)(((i128)y[j] + (i128)top * red_[j]) % pM_);
        y[0] = modp(y[0] + a.digits()[i]);
    }
    return y;
}

OKElem OKContext::from_poly(Poly y, long precision) const
{
    std::vector<unsigned> d(N_, 0);
    precision = std::min(precision, N_);
    for (long i = 0; i < precision; ++i) {
        std::int64_t c = y[0] % (std::int64_t)p_;
        d[i] = (unsigned)c;
        y[0] -= c;
        y = div_x(std::move(y));
    }
    return OKElem(this, std::move(d), precision);
}

OKContext::Poly OKContext::div_x(Poly y) const
{
    // y_0 = p q, so y / x = q (p / x) + y_1 + y_2 x + ...
    std::int64_t q = y[0] / (std::int64_t)p_;
    for (long j = 0; j + 1 < e_; ++j) y[j] = y[j + 1];
    y[e_ - 1] = 0;
    for (long j = 0; j < e_; ++j) y[j] = (std::int64_t)(((i128)y[j] + (i128)q * g_[j]) % pM_);
    return y;
}

OKElem OKContext::zero() const { return OKElem(this, std::vector<unsigned>(N_, 0), N_); }

OKElem OKContext::one() const { return from_int(1); }

OKElem OKContext::from_int(const mpz_class& v) const
{
    Poly y(e_, 0);
    y[0] = mpz_mod64(v, pM_);
    return from_poly(y, N_);
}

OKElem OKContext::pi_pow(long k) const
{
    std::vector<unsigned> d(N_, 0);
    if (k < N_) d[k] = 1;
    return OKElem(this, d, N_);
}

OKElem OKContext::teich(unsigned c) const
{
    Poly y(e_, 0);
    y[0] = teich_[c % p_];
    return from_poly(y, N_);
}

OKElem OKContext::from_digits(std::vector<unsigned> digits, long precision) const
{
    digits.resize(N_, 0);
    return OKElem(this, std::move(digits), std::min(precision, N_));
}

std::vector<mpz_class> OKContext::reduce_mod_E(std::vector<mpz_class> c) const
{
    for (long d = (long)c.size() - 1; d >= e_; --d) {
        if (c[d] == 0) continue;
        mpz_class t = c[d];
        c[d] = 0;
        for (long j = 0; j < e_; ++j) c[d - e_ + j] -= t * E_[j];
    }
    c.resize(e_, 0);
    return c;
}

OKElem::OKElem(const OKContext* ctx, std::vector<unsigned> digits, long precision)
    : ctx_(ctx), d_(std::move(digits)), prec_(precision)
{
    d_.resize(ctx_->N(), 0);
    for (long i = std::max(0L, prec_); i < (long)d_.size(); ++i) d_[i] = 0;
}

long OKElem::valuation() const
{
    for (long i = 0; i < prec_; ++i)
        if (d_[i]) return i;
    return prec_;
}

bool OKElem::is_known_zero() const { return valuation() >= prec_; }

bool OKElem::agrees_with(const OKElem& o) const
{
    long P = std::min(prec_, o.prec_);
    for (long i = 0; i < P; ++i)
        if (d_[i] != o.d_[i]) return false;
    return true;
}

OKElem OKElem::with_precision(long P) const { return OKElem(ctx_, d_, std::min(P, prec_)); }

std::string OKElem::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (long i = 0; i < prec_; ++i) os << (i ? "," : "") << d_[i];
    os << "]+O(pi^" << prec_ << ")";
    return os.str();
}

OKElem ok_add(const OKElem& a, const OKElem& b)
{
    const auto& c = a.ctx();
    return c.from_poly(c.padd(c.to_poly(a), c.to_poly(b)), std::min(a.precision(), b.precision()));
}

OKElem ok_neg(const OKElem& a)
{
    const auto& c = a.ctx();
    auto y = c.to_poly(a);
    for (auto& v : y) v = c.modp(-v);
    return c.from_poly(y, a.precision());
}

OKElem ok_sub(const OKElem& a, const OKElem& b) { return ok_add(a, ok_neg(b)); }

OKElem ok_mul(const OKElem& a, const OKElem& b)
{
    const auto& c = a.ctx();
    long P = std::min({a.precision() + b.valuation(), b.precision() + a.valuation(), c.N()});
    return c.from_poly(c.pmul(c.to_poly(a), c.to_poly(b)), P);
}

OKElem ok_pow(const OKElem& a, unsigned long k)
{
    OKElem r = a.ctx().one();
    OKElem b = a;
    while (k) {
        if (k & 1) r = ok_mul(r, b);
        k >>= 1;
        if (k) b = ok_mul(b, b);
    }
    return r;
}

long valuation(const OKElem& a) { return a.valuation(); }

OKElem div_pi(const OKElem& a, long l)
{
    if (l < 0) throw std::invalid_argument("div_pi: negative shift");
    if (a.precision() < l)
        throw PrecisionShortfall("div_pi: element known mod pi^" + std::to_string(a.precision()) +
                                 ", need pi^" + std::to_string(l));
    if (a.valuation() < l)
        throw NotDivisible("div_pi: valuation " + std::to_string(a.valuation()) + " < " + std::to_string(l));
    std::vector<unsigned> d(a.digits().begin() + l, a.digits().end());
    return OKElem(a.ctx_ptr(), std::move(d), a.precision() - l);
}

bool is_zero_mod(const OKElem& a, long m)
{
    if (m <= 0) return true;
    if (a.precision() < m)
        throw PrecisionShortfall("congruence mod pi^" + std::to_string(m) + " needs precision " + std::to_string(m) +
                                 ", have " + std::to_string(a.precision()));
    return a.valuation() >= m;
}

OKElem p_over_pi(const OKContext& c, long k)
{
    if (k < 0 || k > c.e()) throw std::invalid_argument("p_over_pi: need 0 <= k <= e");
    OKContext::Poly y(c.e(), 0);
    y[0] = (std::int64_t)c.p();
    for (long i = 0; i < k; ++i) y = c.div_x(y);
    return c.from_poly(y, c.N());
}

OKWittRing::Lift OKWittRing::lift(const Elem& a) const
{
    Lift r{std::vector<mpz_class>(ctx->e(), 0), a.precision()};
    for (long i = 0; i < a.precision(); ++i) {
        unsigned d = a.digits()[i];
        if (!d) continue;
        const auto& xp = ctx->x_power(i);
        for (long j = 0; j < ctx->e(); ++j) r.c[j] += d * xp[j];
    }
    return r;
}

OKWittRing::Elem OKWittRing::reduce(const Lift& a) const
{
    OKContext::Poly y(ctx->e());
    mpz_class pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), ctx->p(), ctx->M());
    for (long j = 0; j < ctx->e(); ++j) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), a.c[j].get_mpz_t(), pm.get_mpz_t());
        y[j] = r.get_si();
    }
    return ctx->from_poly(y, a.prec);
}

OKWittRing::Lift OKWittRing::ladd(const Lift& a, const Lift& b) const
{
    Lift r{a.c, std::min(a.prec, b.prec)};
    for (std::size_t j = 0; j < r.c.size(); ++j) r.c[j] += b.c[j];
    return r;
}

OKWittRing::Lift OKWittRing::lsub(const Lift& a, const Lift& b) const
{
    Lift r{a.c, std::min(a.prec, b.prec)};
    for (std::size_t j = 0; j < r.c.size(); ++j) r.c[j] -= b.c[j];
    return r;
}

OKWittRing::Lift OKWittRing::lmul(const Lift& a, const Lift& b) const
{
    const long e = ctx->e();
    std::vector<mpz_class> t(2 * e - 1, 0);
    for (long i = 0; i < e; ++i) {
        if (a.c[i] == 0) continue;
        for (long j = 0; j < e; ++j) mpz_addmul(t[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
    }
    return Lift{ctx->reduce_mod_E(std::move(t)), std::min(a.prec, b.prec)};
}

OKWittRing::Lift OKWittRing::lscale(const Lift& a, const mpz_class& k) const
{
    Lift r = a;
    for (auto& x : r.c) x *= k;
    return r;
}

OKWittRing::Lift OKWittRing::ldivexact(const Lift& a, const mpz_class& k) const
{
    Lift r = a;
    for (auto& x : r.c) {
        if (!mpz_divisible_p(x.get_mpz_t(), k.get_mpz_t())) throw std::domain_error("witt: inexact ghost division");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
    }
    return r;
}

OKWittRing::Lift OKWittRing::lfrom_int(const mpz_class& k) const
{
    Lift r{std::vector<mpz_class>(ctx->e(), 0), ctx->N()};
    r.c[0] = k;
    return r;
}

OKWitt f_level(const OKWittRing& R, long l, const OKWitt& a)
{
    if (a.size() == 0) return a;
    auto fa = witt::frobenius(R, a);
    auto t = witt::teich_mul(R, R.ctx->pi_pow((long)(R.prime() - 1) * l), witt::resized(R, a, a.size() - 1));
    return witt::sub(R, fa, t);
}

OKElem sigma(int i, const OKElem& a, const OKElem& b)
{
    if (i != 1 && i != 2) throw std::invalid_argument("sigma: index must be 1 or 2");
    OKWittRing R(a.ctx());
    const unsigned long p = R.prime();
    auto A = R.lift(a), B = R.lift(b);
    auto AB = R.ladd(A, B);
    auto s1num = R.lsub(R.ladd(witt::lift_pow(R, A, p), witt::lift_pow(R, B, p)), witt::lift_pow(R, AB, p));
    auto s1 = R.ldivexact(s1num, p);
    if (i == 1) return R.reduce(s1);
    auto p2 = p * p;
    auto num = R.lsub(R.ladd(witt::lift_pow(R, A, p2), witt::lift_pow(R, B, p2)), witt::lift_pow(R, AB, p2));
    num = R.lsub(num, R.lscale(witt::lift_pow(R, s1, p), p));
    return R.reduce(R.ldivexact(num, p2));
}

}  // namespace muforge
