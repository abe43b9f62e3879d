#include "muforge/kummer.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <sstream>

namespace muforge {

namespace {

bool cong(const OKElem& x, long m, int id, const Mutation& mut)
{
    return is_zero_mod(x, mut.modulus(id, m));
}

OKWitt zero_witt(const OKWittRing& R, std::size_t len) { return witt::zero(R, len); }

// Componentwise division by pi^m.
OKWitt witt_div_pi(const OKWitt& a, long m)
{
    OKWitt q = a;
    for (auto& c : q.coeffs) c = div_pi(c, m);
    return q;
}

std::size_t min_length(const WMatrix& M)
{
    std::size_t L = SIZE_MAX;
    for (const auto& row : M)
        for (const auto& x : row) L = std::min(L, x.size());
    return L == SIZE_MAX ? 0 : L;
}

}  // namespace

SSMatrix::SSMatrix(const OKContext& c, std::vector<long> l_, std::size_t len) : ctx(&c), l(std::move(l_))
{
    OKWittRing R(c);
    const unsigned n = (unsigned)l.size();
    a.assign(n, std::vector<OKWitt>(n, zero_witt(R, len)));
    for (unsigned i = 0; i < n; ++i) a[i][i] = witt::teichmuller(R, c.pi_pow(l[i]), len);
}

SSMatrix SSMatrix::teichmuller(const OKContext& c, std::vector<long> l, const std::vector<std::vector<OKElem>>& e,
                               std::size_t len)
{
    SSMatrix A(c, std::move(l), len);
    OKWittRing R(c);
    for (unsigned i = 0; i < A.n(); ++i)
        for (unsigned j = i + 1; j < A.n(); ++j) A.a[i][j] = witt::teichmuller(R, e[i][j], len);
    return A;
}

std::size_t SSMatrix::length() const { return min_length(a); }

std::size_t default_witt_length(unsigned n) { return n + 2; }

long precision_slack()
{
    const char* s = std::getenv("MUFORGE_PRECISION_SLACK");
    if (!s || !*s) return 0;
    long v = std::strtol(s, nullptr, 10);
    return v > 0 ? v : 0;
}

long default_pi_precision(unsigned long p, long e, const std::vector<long>& l)
{
    long s = 0;
    for (long x : l) s += x;
    return (long)p * s + e + 2 + precision_slack();
}

WMatrix star_T(const OKWittRing& R, const WMatrix& M, const WMatrix& N)
{
    const std::size_t n = M.size();
    WMatrix out(n, std::vector<OKWitt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t len = SIZE_MAX;
            for (std::size_t k = 0; k < n; ++k) len = std::min(len, N[k][j].size());
            OKWitt acc = zero_witt(R, len);
            for (std::size_t k = 0; k < n; ++k) acc = witt::add(R, acc, witt::t_operator(R, M[i][k], N[k][j]));
            out[i][j] = acc;
        }
    return out;
}

WMatrix identity_wmatrix(const OKWittRing& R, unsigned n, std::size_t len)
{
    WMatrix I(n, std::vector<OKWitt>(n, zero_witt(R, len)));
    for (unsigned i = 0; i < n; ++i) I[i][i] = witt::teichmuller(R, R.one(), len);
    return I;
}

WMatrix frobenius(const OKWittRing& R, const WMatrix& M)
{
    WMatrix out = M;
    for (auto& row : out)
        for (auto& x : row) x = witt::frobenius(R, x);
    return out;
}

SSMatrix frobenius(const SSMatrix& A)
{
    SSMatrix B = A;
    for (auto& x : B.l) x *= (long)A.ctx->p();
    B.a = frobenius(A.ring(), A.a);
    return B;
}

WMatrix rdiv_T(const OKWittRing& R, const WMatrix& C, const WMatrix& d, const std::vector<long>& m)
{
    const std::size_t n = C.size();
    const std::size_t len = std::min(min_length(C), min_length(d));
    WMatrix Q(n, std::vector<OKWitt>(n, zero_witt(R, len)));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t i = 0; i + s < n; ++i) {
            const std::size_t j = i + s;
            OKWitt r = witt::resized(R, C[i][j], len);
            for (std::size_t k = i; k < j; ++k) r = witt::sub(R, r, witt::t_operator(R, Q[i][k], d[k][j]));
            try {
                Q[i][j] = witt_div_pi(r, m[j]);
            } catch (const NotDivisible& ex) {
                throw NotDivisible("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + ex.what());
            }
        }
    return Q;
}

WMatrix rdiv_T(const WMatrix& C, const SSMatrix& D) { return rdiv_T(D.ring(), C, D.a, D.l); }

std::optional<WMatrix> try_rdiv_T(const WMatrix& C, const SSMatrix& D)
{
    try {
        return rdiv_T(C, D);
    } catch (const NotDivisible&) {
        return std::nullopt;
    }
}

bool in_Mn(const SSMatrix& A) { return try_rdiv_T(frobenius(A.ring(), A.a), A).has_value(); }

bool equiv(const SSMatrix& A, const SSMatrix& Ap)
{
    if (A.l != Ap.l) return false;
    return try_rdiv_T(A.a, Ap).has_value();
}

KummerN2Result check_kummer_n2(long l1, long l2, const OKElem& a12, const Mutation& mut)
{
    const OKContext& c = a12.ctx();
    const long p = (long)c.p();
    KummerN2Result r;
    r.order = l2 >= 0 && l1 >= l2 && (p - 1) * l1 <= c.e();
    auto a12p = ok_pow(a12, p);
    r.ii = cong(a12p, l2, 0, mut);
    if ((p - 1) * l1 <= c.e() && l1 >= 0) {
        auto w = p_over_pi(c, (p - 1) * l1);
        auto x = ok_sub(ok_sub(ok_mul(c.from_int(p), a12), c.pi_pow(l1)), ok_mul(w, a12p));
        r.iii = cong(x, p * l2, 1, mut);
    }
    return r;
}

KummerN3Result check_kummer_n3(long l1, long l2, long l3, const OKElem& a12, const OKElem& a13, const OKElem& a23,
                               const Mutation& mut)
{
    const OKContext& c = a12.ctx();
    const long p = (long)c.p();
    if (l1 < p * l3)
        throw OutOfScope("check_kummer_n3 needs l1 >= p*l3, got l1=" + std::to_string(l1) +
                         " l3=" + std::to_string(l3));
    KummerN3Result r;
    r.order = l3 >= 0 && l2 >= l3 && l1 >= l2 && (p - 1) * l1 <= c.e();
    auto a12p = ok_pow(a12, p), a23p = ok_pow(a23, p), a13p = ok_pow(a13, p);
    r.m12 = cong(a12p, l2, 0, mut);
    r.m23 = cong(a23p, l3, 1, mut);
    r.m13 = cong(ok_sub(ok_mul(c.pi_pow(l2), a13p), ok_mul(a23, a12p)), l2 + l3, 2, mut);
    if (!((p - 1) * l1 <= c.e() && l2 <= l1)) return r;
    const OKElem P = c.from_int(p);
    auto w1 = p_over_pi(c, (p - 1) * l1), w2 = p_over_pi(c, (p - 1) * l2);
    auto top1 = ok_sub(ok_sub(ok_mul(P, a12), c.pi_pow(l1)), ok_mul(w1, a12p));
    auto top2 = ok_sub(ok_sub(ok_mul(P, a23), c.pi_pow(l2)), ok_mul(w2, a23p));
    r.f12 = cong(top1, p * l2, 3, mut);
    r.f23 = cong(top2, p * l3, 4, mut);
    if (valuation(top1) >= p * l2) {
        auto q = div_pi(top1, p * l2);
        auto rhs = ok_sub(ok_sub(ok_mul(P, a13), a12), ok_mul(a23p, q));
        r.f13 = cong(ok_sub(ok_mul(w1, a13p), rhs), p * l3, 5, mut);
    }
    return r;
}

IsogenyResult check_isogeny_pair(const SSMatrix& A, const SSMatrix& B)
{
    const unsigned n = A.n();
    const long p = (long)A.ctx->p();
    if (B.n() != n) throw std::invalid_argument("check_isogeny_pair: size mismatch");
    for (unsigned i = 0; i < n; ++i)
        if (B.l[i] != p * A.l[i]) throw std::invalid_argument("check_isogeny_pair: B must have diagonal [pi^{p l_i}]");
    IsogenyResult res;
    if (!in_Mn(A)) {
        res.failure = "A: F(A)/A is not positive";
        return res;
    }
    if (!in_Mn(B)) {
        res.failure = "B: F(B)/B is not positive";
        return res;
    }
    auto R = A.ring();
    const std::size_t len = A.length();
    auto pw = witt::from_int(R, p, len);
    WMatrix C(n, std::vector<OKWitt>(n, zero_witt(R, len)));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i; j < n; ++j) {
            C[i][j] = witt::mul(R, pw, A.a[i][j]);
            if (j >= 1 && i <= j - 1) C[i][j] = witt::sub(R, C[i][j], A.a[i][j - 1]);
        }
    try {
        rdiv_T(C, B);
        res.ok = true;
    } catch (const NotDivisible& ex) {
        res.failure = std::string("(pA - PUA)/B: ") + ex.what();
    }
    return res;
}

// ---------------------------------------------------------------------------
// Deformed Artin-Hasse exponentials

namespace {

using QPoly = std::vector<mpq_class>;

QPoly qp_mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

QPoly qp_add_const(QPoly a, const mpq_class& c)
{
    if (a.empty()) a.push_back(0);
    a[0] += c;
    return a;
}

QPoly qp_scale(QPoly a, const mpq_class& c)
{
    for (auto& x : a) x *= c;
    return a;
}

// binom(W, j) as a polynomial in V.
QPoly qp_binom(const QPoly& W, long j)
{
    QPoly r{1};
    mpz_class fact = 1;
    for (long i = 0; i < j; ++i) {
        r = qp_mul(r, qp_add_const(W, -i));
        fact *= i + 1;
    }
    return qp_scale(r, mpq_class(1) / mpq_class(fact));
}

using QSeries = std::vector<QPoly>;

QSeries qs_mul(const QSeries& a, const QSeries& b, long D)
{
    QSeries r(D + 1);
    for (long i = 0; i <= D; ++i) {
        if (a[i].empty()) continue;
        for (long j = 0; i + j <= D; ++j) {
            if (b[j].empty()) continue;
            auto t = qp_mul(a[i], b[j]);
            if (r[i + j].size() < t.size()) r[i + j].resize(t.size(), 0);
            for (std::size_t k = 0; k < t.size(); ++k) r[i + j][k] += t[k];
        }
    }
    return r;
}

}  // namespace

DeformedExp::DeformedExp(unsigned long p, long D) : p_(p)
{
    // E_p(V, 1, T); the coefficient of T^m in E_p(U, Lambda, T) is Lambda^m P_m(U / Lambda).
    QSeries s(D + 1);
    QPoly V{0, 1};
    for (long m = 0; m <= D; ++m) {
        QPoly b{1};
        mpz_class fact = 1;
        for (long i = 0; i < m; ++i) {
            b = qp_mul(b, qp_add_const(V, -i));
            fact *= i + 1;
        }
        s[m] = qp_scale(b, mpq_class(1) / mpq_class(fact));
    }
    for (unsigned long q = p, qprev = 1; (long)q <= D; qprev = q, q *= p) {
        // W = (V^q - V^{q/p}) / q
        QPoly W(q + 1, 0);
        W[q] = mpq_class(1, q);
        W[qprev] -= mpq_class(1, q);
        QSeries f(D + 1);
        for (long j = 0; (long)(q * j) <= D; ++j) f[q * j] = qp_binom(W, j);
        s = qs_mul(s, f, D);
    }
    c_.resize(D + 1);
    for (long m = 0; m <= D; ++m) {
        c_[m].assign(m + 1, 0);
        for (std::size_t j = 0; j < s[m].size() && (long)j <= m; ++j) c_[m][j] = s[m][j];
        for (std::size_t j = m + 1; j < s[m].size(); ++j)
            if (s[m][j] != 0) throw std::logic_error("deformed exponential: coefficient of degree above m");
        for (auto& x : c_[m])
            if (mpz_divisible_ui_p(x.get_den_mpz_t(), p))
                throw std::logic_error("deformed exponential: coefficient not p-integral");
    }
}

const DeformedExp& DeformedExp::get(unsigned long p, long D)
{
    static std::mutex mu;
    // Tables are never freed so references stay valid.
    static std::map<unsigned long, std::vector<std::unique_ptr<DeformedExp>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& v = cache[p];
    if (v.empty() || v.back()->degree() < D)
        v.emplace_back(new DeformedExp(p, std::max(D, v.empty() ? D : 2 * v.back()->degree())));
    return *v.back();
}

OKElem ok_from_rational(const OKContext& ctx, const mpq_class& q)
{
    mpz_class pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), ctx.p(), ctx.M());
    mpz_class inv;
    if (!mpz_invert(inv.get_mpz_t(), q.get_den_mpz_t(), pm.get_mpz_t()))
        throw std::domain_error("ok_from_rational: denominator divisible by p");
    return ctx.from_int(mpz_class(q.get_num() * inv % pm));
}

std::vector<OKElem> DeformedExp::specialize(const OKElem& a, long l, long D) const
{
    if (D > degree()) throw std::invalid_argument("DeformedExp::specialize: degree beyond table");
    const OKContext& c = a.ctx();
    std::vector<OKElem> ap{c.one()}, lp{c.one()};
    const OKElem lam = c.pi_pow(l);
    for (long i = 1; i <= D; ++i) {
        ap.push_back(ok_mul(ap.back(), a));
        lp.push_back(ok_mul(lp.back(), lam));
    }
    std::vector<OKElem> out;
    for (long m = 0; m <= D; ++m) {
        OKElem s = c.zero();
        for (long j = 0; j <= m; ++j) {
            if (c_[m][j] == 0) continue;
            s = ok_add(s, ok_mul(ok_from_rational(c, c_[m][j]), ok_mul(ap[j], lp[m - j])));
        }
        out.push_back(s);
    }
    return out;
}

std::vector<OKElem> deformed_exp(const OKElem& a, long l, long D)
{
    return DeformedExp::get(a.ctx().p(), D).specialize(a, l, D);
}

namespace {

std::vector<OKElem> series_mul(const std::vector<OKElem>& a, const std::vector<OKElem>& b, long D)
{
    const OKContext& c = a[0].ctx();
    std::vector<OKElem> r(D + 1, c.zero());
    for (long i = 0; i <= D && i < (long)a.size(); ++i) {
        if (a[i].is_known_zero() && a[i].precision() == c.N()) continue;
        for (long j = 0; i + j <= D && j < (long)b.size(); ++j) r[i + j] = ok_add(r[i + j], ok_mul(a[i], b[j]));
    }
    return r;
}

}  // namespace

std::vector<OKElem> deformed_exp(const OKWitt& a, long l, long D)
{
    const OKContext& c = a[0].ctx();
    const unsigned long p = c.p();
    std::vector<OKElem> s(D + 1, c.zero());
    s[0] = c.one();
    unsigned long q = 1;
    for (std::size_t k = 0; k < a.size() && (long)q <= D; ++k, q *= p) {
        auto f = deformed_exp(a[k], l * (long)q, D / (long)q);
        std::vector<OKElem> g(D + 1, c.zero());
        for (std::size_t m = 0; m < f.size(); ++m) g[m * q] = f[m];
        s = series_mul(s, g, D);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Polynomials over O_K / pi^N

OKPoly OKPoly::constant(const OKElem& c) { return monomial(c, {0, 0, 0}); }

OKPoly OKPoly::monomial(const OKElem& c, Mono m)
{
    OKPoly r(c.ctx());
    r.prec = c.precision();
    r.t[m] = c;
    r.normalize();
    return r;
}

int OKPoly::degree(int var) const
{
    int d = -1;
    for (const auto& [m, c] : t) d = std::max(d, m[var]);
    return d;
}

long OKPoly::min_valuation() const
{
    long v = prec;
    for (const auto& [m, c] : t) v = std::min(v, c.valuation());
    return v;
}

void OKPoly::normalize()
{
    for (auto it = t.begin(); it != t.end();) {
        it->second = it->second.with_precision(prec);
        if (it->second.is_known_zero())
            it = t.erase(it);
        else
            ++it;
    }
}

namespace {

std::string elem_text(const OKElem& c)
{
    std::ostringstream os;
    bool first = true;
    for (long i = 0; i < c.precision(); ++i) {
        unsigned d = c.digits()[i];
        if (!d) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0)
            os << d;
        else {
            if (d != 1) os << d << "*";
            os << "pi";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace

std::string OKPoly::to_string() const
{
    if (t.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        const auto& [m, c] = *it;
        if (!first) os << " + ";
        first = false;
        bool unit = m != Mono{0, 0, 0} && c.digits()[0] == 1 && c.valuation() == 0 &&
                    std::all_of(c.digits().begin() + 1, c.digits().begin() + c.precision(),
                                [](unsigned d) { return d == 0; });
        std::string coef = elem_text(c);
        bool paren = coef.find('+') != std::string::npos;
        if (!unit) os << (paren ? "(" + coef + ")" : coef);
        bool star = !unit;
        for (int v = 0; v < 3; ++v) {
            if (!m[v]) continue;
            os << (star ? "*" : "") << "T" << (v + 1);
            if (m[v] > 1) os << "^" << m[v];
            star = true;
        }
    }
    os << " + O(pi^" << prec << ")";
    return os.str();
}

OKPoly operator+(const OKPoly& a, const OKPoly& b)
{
    OKPoly r = a;
    r.prec = std::min(a.prec, b.prec);
    for (const auto& [m, c] : b.t) {
        auto it = r.t.find(m);
        if (it == r.t.end())
            r.t.emplace(m, c);
        else
            it->second = ok_add(it->second, c);
    }
    r.normalize();
    return r;
}

OKPoly operator-(const OKPoly& a, const OKPoly& b)
{
    OKPoly nb = b;
    for (auto& [m, c] : nb.t) c = ok_neg(c);
    return a + nb;
}

OKPoly operator*(const OKPoly& a, const OKPoly& b)
{
    OKPoly r(*a.ctx);
    r.prec = std::min({a.prec + b.min_valuation(), b.prec + a.min_valuation(), a.ctx->N()});
    for (const auto& [ma, ca] : a.t)
        for (const auto& [mb, cb] : b.t) {
            OKPoly::Mono m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
            auto x = ok_mul(ca, cb);
            auto it = r.t.find(m);
            if (it == r.t.end())
                r.t.emplace(m, x);
            else
                it->second = ok_add(it->second, x);
        }
    r.normalize();
    return r;
}

OKPoly poly_pow(const OKPoly& a, unsigned long k)
{
    OKPoly r = OKPoly::constant(a.ctx->one());
    for (unsigned long i = 0; i < k; ++i) r = r * a;
    return r;
}

OKPoly poly_truncate(OKPoly a, long m)
{
    a.prec = std::min(a.prec, m);
    a.normalize();
    return a;
}

OKPoly poly_lift(OKPoly a)
{
    a.prec = a.ctx->N();
    for (auto& [m, c] : a.t) c = a.ctx->from_digits(c.digits(), a.prec);
    return a;
}

OKPoly poly_div_pi(const OKPoly& a, long m)
{
    if (a.prec < m)
        throw PrecisionShortfall("polynomial known mod pi^" + std::to_string(a.prec) + ", need pi^" + std::to_string(m));
    OKPoly r = a;
    for (auto& [mono, c] : r.t) c = div_pi(c, m);
    r.prec = a.prec - m;
    r.normalize();
    return r;
}

OKPoly poly_reduce(OKPoly a, const OKPoly& f, int var)
{
    const int d = f.degree(var);
    for (;;) {
        const OKPoly::Mono* top = nullptr;
        for (const auto& [m, c] : a.t)
            if (m[var] >= d && (!top || m[var] > (*top)[var])) top = &m;
        if (!top) return a;
        OKPoly::Mono s = *top;
        s[var] -= d;
        a = a - OKPoly::monomial(a.t.at(*top), s) * f;
    }
}

OKPoly poly_compose(const std::vector<OKElem>& c, const OKPoly& s)
{
    OKPoly r(*s.ctx);
    for (long i = (long)c.size() - 1; i >= 0; --i) r = r * s + OKPoly::constant(c[i]);
    return r;
}

// ---------------------------------------------------------------------------
// Hopf equations

namespace {

// E_p(a, pi^l, T) modulo pi^target as a polynomial, lifted to full precision.
std::vector<OKElem> exp_mod(const OKWitt& a, long l, long target)
{
    const OKContext& c = a[0].ctx();
    const long p = (long)c.p();
    if (target <= 0) return {c.one()};
    long D = 0;
    long q = 1;
    for (std::size_t k = 0; k < a.size(); ++k, q *= p) {
        if (a[k].is_known_zero()) continue;
        long mu = std::min(a[k].valuation(), l * q);
        if (mu <= 0) throw std::domain_error("deformed exponential is not a polynomial modulo pi^" + std::to_string(target));
        D = std::max(D, (target * q - 1) / mu);
    }
    auto s = deformed_exp(a, l, D);
    for (auto& x : s) x = c.from_digits(x.with_precision(target).digits(), c.N());
    while (s.size() > 1 && s.back().is_known_zero()) s.pop_back();
    return s;
}

OKPoly univariate(const std::vector<OKElem>& s, int var)
{
    OKPoly r(s[0].ctx());
    for (std::size_t i = 0; i < s.size(); ++i) {
        OKPoly::Mono m{0, 0, 0};
        m[var] = (int)i;
        r = r + OKPoly::monomial(s[i], m);
    }
    return r;
}

OKPoly var_poly(const OKContext& c, int var, long coeff_pi)
{
    OKPoly::Mono m{0, 0, 0};
    m[var] = 1;
    return OKPoly::monomial(c.pi_pow(coeff_pi), m);
}

}  // namespace

std::string HopfPresentation::to_string() const
{
    std::ostringstream os;
    os << "type (";
    for (std::size_t i = 0; i < l.size(); ++i) os << (i ? "," : "") << l[i];
    os << ")\n";
    for (std::size_t i = 0; i < D.size(); ++i) os << "D" << (i + 1) << " = " << D[i].to_string() << "\n";
    for (std::size_t i = 0; i < equations.size(); ++i) os << "f" << (i + 1) << " = " << equations[i].to_string() << "\n";
    os << "integral: " << (integral ? "yes" : "no");
    if (!failure.empty()) os << " (" << failure << ")";
    os << "\n";
    return os.str();
}

HopfPresentation emit_hopf(const SSMatrix& A)
{
    const OKContext& c = *A.ctx;
    const unsigned n = A.n();
    const unsigned long p = c.p();
    if (n > 3) throw std::invalid_argument("emit_hopf: n <= 3");
    HopfPresentation H;
    H.l = A.l;
    unsigned r = 0;
    while (r < n && A.l[r] > 0) ++r;
    for (unsigned i = r; i < n; ++i)
        if (A.l[i] != 0) {
            H.failure = "type is not ordered";
            return H;
        }
    auto R = A.ring();
    OKPoly one = OKPoly::constant(c.one());
    OKPoly Gprev = one;
    for (unsigned j = 0; j < r; ++j) {
        OKPoly Dj = one;
        if (j == 1) {
            Dj = univariate(exp_mod(A.a[0][1], A.l[0], A.l[1]), 0);
            H.D.push_back(Dj);
        } else if (j == 2) {
            auto inv = univariate(exp_mod(witt::neg(R, A.a[0][1]), A.l[0], A.l[2]), 0);
            OKPoly S = poly_truncate(var_poly(c, 1, 0) * inv, A.l[2]);
            auto f13 = univariate(exp_mod(A.a[0][2], A.l[0], A.l[2]), 0);
            auto e23 = exp_mod(A.a[1][2], A.l[1], A.l[2]);
            Dj = poly_lift(poly_truncate(f13 * poly_truncate(poly_compose(e23, S), A.l[2]), A.l[2]));
            H.D.push_back(Dj);
        }
        OKPoly G = Dj + var_poly(c, (int)j, A.l[j]);
        OKPoly X = poly_pow(G, p) - Gprev;
        for (int k = (int)j - 1; k >= 0; --k) X = poly_reduce(X, H.equations[k], k);
        try {
            H.equations.push_back(poly_div_pi(X, (long)p * A.l[j]));
        } catch (const NotDivisible& ex) {
            H.equations.push_back(X);
            H.failure = "level " + std::to_string(j + 1) + ": " + ex.what();
            return H;
        }
        Gprev = G;
    }
    if (r < n) {
        // mu-factor: T_{r+1}^{p^{n-r}} - G_r
        OKPoly::Mono m{0, 0, 0};
        unsigned long q = 1;
        for (unsigned i = r; i < n; ++i) q *= p;
        m[r] = (int)q;
        H.equations.push_back(OKPoly::monomial(c.one(), m) - Gprev);
    }
    H.integral = true;
    return H;
}

bool verify_integrality(const SSMatrix& A)
{
    unsigned r = 0;
    while (r < A.n() && A.l[r] > 0) ++r;
    for (unsigned i = r; i < A.n(); ++i)
        if (A.l[i] != 0) return false;
    if (r == 0) return true;
    SSMatrix B = A;
    B.l.resize(r);
    B.a.resize(r);
    for (auto& row : B.a) row.resize(r);
    HopfPresentation H;
    try {
        H = emit_hopf(B);
    } catch (const std::domain_error&) {
        return false;
    }
    if (!H.integral) return false;
    return in_Mn(B);
}

}  // namespace muforge
