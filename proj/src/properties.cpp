#include "muforge/properties.hpp"

#include <mutex>
#include <sstream>

#include "muforge/kummer.hpp"
#include "muforge/lattice.hpp"
#include "muforge/series.hpp"
#include "muforge/witt.hpp"
#include "muforge/witt_rings.hpp"

namespace muforge {

void SuiteResult::fail(const std::string& what)
{
    if (failures++ == 0) counterexample = what;
}

std::vector<mpz_class> to_mpz(const std::vector<long>& c)
{
    std::vector<mpz_class> z;
    for (long x : c) z.emplace_back(x);
    return z;
}

LaurentPoly random_poly(const Fq& F, std::mt19937_64& rng, long lo, long hi)
{
    if (hi < lo) return LaurentPoly(F);
    std::uniform_int_distribution<unsigned> d(0, F.q() - 1);
    std::vector<fq_t> c(hi - lo + 1);
    for (auto& x : c) x = d(rng);
    return LaurentPoly(F, lo, c);
}

GMatrix random_gmatrix(const Fq& F, std::mt19937_64& rng, unsigned n, long lmax, long dmax)
{
    std::uniform_int_distribution<long> dl(0, lmax);
    std::vector<long> l(n);
    for (auto& x : l) x = dl(rng);
    GMatrix A(F, l);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) A.a[i][j] = random_poly(F, rng, 0, dmax);
    return A;
}

GMatrix random_distinguished(const Fq& F, std::mt19937_64& rng, unsigned n)
{
    return distinguished_matrix(lattice_from_matrix(random_gmatrix(F, rng, n, 3, 4)));
}

namespace {

template <class T>
std::string show(const std::vector<T>& v)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

std::string show_zp(const ZPoly& a)
{
    std::ostringstream os;
    os << "u^" << a.lo << "*" << show(a.c);
    return os.str();
}

template <class W, class Fn>
std::string show_w(const W& a, Fn f)
{
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + f(a[i]);
    return s + "]";
}

std::string show_mpz(const mpz_class& x) { return x.get_str(); }

mpz_class ipow(const mpz_class& b, unsigned long k)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), k);
    return r;
}

mpz_class sigma1(unsigned long p, const mpz_class& x, const mpz_class& y)
{
    return (ipow(x, p) + ipow(y, p) - ipow(x + y, p)) / p;
}

mpz_class sigma2(unsigned long p, const mpz_class& x, const mpz_class& y)
{
    return (ipow(x, p * p) + ipow(y, p * p) - ipow(x + y, p * p) - p * ipow(sigma1(p, x, y), p)) / (p * p);
}

}  // namespace

SuiteResult witt_suite(std::uint64_t seed, long iterations)
{
    SuiteResult r{"witt"};
    std::mt19937_64 rng(seed);
    const unsigned long p = 3;
    IntegerRing Z(p);
    ZPolyRing ZU(p);
    FqPolyRing FU(Fq::get(3));
    const Fq& F = Fq::get(3);
    std::uniform_int_distribution<long> dz(-30, 30), dd(0, 2), dlen(1, 5), ddeg(0, 2);

    auto reduce = [&](const ZPoly& a) {
        std::vector<fq_t> c;
        for (const auto& x : a.c) c.push_back((fq_t)mpz_fdiv_ui(x.get_mpz_t(), p));
        return LaurentPoly(F, a.lo, c);
    };

    for (long it = 0; it < iterations; ++it) {
        std::size_t n = (std::size_t)dlen(rng);
        ++r.cases;
        if (it % 2 == 0) {
            using WZ = WittVector<IntegerRing>;
            std::vector<mpz_class> ac(n), bc(n);
            for (auto& x : ac) x = dz(rng);
            for (auto& x : bc) x = dz(rng);
            WZ a(ac), b(bc);
            auto s = witt::add(Z, a, b), m = witt::mul(Z, a, b), ng = witt::neg(Z, a);
            auto ga = witt::ghosts(Z, a, n), gb = witt::ghosts(Z, b, n);
            auto gs = witt::ghosts(Z, s, n), gm = witt::ghosts(Z, m, n), gn = witt::ghosts(Z, ng, n);
            bool ok = true;
            for (std::size_t k = 0; k < n; ++k)
                ok = ok && gs[k] == ga[k] + gb[k] && gm[k] == ga[k] * gb[k] && gn[k] == -ga[k];
            if (n >= 2) ok = ok && s[1] == a[1] + b[1] + sigma1(p, a[0], b[0]);
            if (n >= 3)
                ok = ok && s[2] == a[2] + b[2] + sigma1(p, a[1], b[1]) +
                                       sigma1(p, a[1] + b[1], sigma1(p, a[0], b[0])) + sigma2(p, a[0], b[0]);
            if (!ok) r.fail("Z: a=" + show_w(a, show_mpz) + " b=" + show_w(b, show_mpz));
        } else {
            using WU = WittVector<ZPolyRing>;
            using WF = WittVector<FqPolyRing>;
            std::vector<ZPoly> ac(n), bc(n);
            std::vector<LaurentPoly> af(n), bf(n);
            for (std::size_t k = 0; k < n; ++k) {
                long da = ddeg(rng), db = ddeg(rng);
                for (long j = 0; j <= da; ++j) ac[k].c.emplace_back(dd(rng));
                for (long j = 0; j <= db; ++j) bc[k].c.emplace_back(dd(rng));
                zp_normalize(ac[k]);
                zp_normalize(bc[k]);
                af[k] = reduce(ac[k]);
                bf[k] = reduce(bc[k]);
            }
            WU a(ac), b(bc);
            auto s = witt::add(ZU, a, b), m = witt::mul(ZU, a, b);
            auto ga = witt::ghosts(ZU, a, n), gb = witt::ghosts(ZU, b, n);
            auto gs = witt::ghosts(ZU, s, n), gm = witt::ghosts(ZU, m, n);
            bool ok = true;
            for (std::size_t k = 0; k < n; ++k)
                ok = ok && gs[k] == zp_add(ga[k], gb[k]) && gm[k] == zp_mul(ga[k], gb[k]);
            auto sf = witt::add(FU, WF(af), WF(bf)), mf = witt::mul(FU, WF(af), WF(bf));
            for (std::size_t k = 0; k < n; ++k) ok = ok && sf[k] == reduce(s[k]) && mf[k] == reduce(m[k]);
            if (!ok) r.fail("F_3[u]: a=" + show_w(a, show_zp) + " b=" + show_w(b, show_zp));
        }
    }

    // The vector of p: (p, 1 - p^{p-1}, ...) over Z, (0, 1, 0, ...) over F_3[u].
    ++r.cases;
    auto w = witt::from_int(Z, mpz_class(p), 5);
    if (w[0] != p || w[1] != 1 - ipow(mpz_class(p), p - 1)) r.fail("Witt vector of p over Z: " + show_w(w, show_mpz));
    auto wf = witt::from_int(FU, mpz_class(p), 5);
    if (!wf[0].is_zero() || wf[1] != LaurentPoly::constant(F, 1)) r.fail("Witt vector of p over F_3[u]");
    return r;
}

SuiteResult loop_suite(std::uint64_t seed, long iterations)
{
    SuiteResult r{"loop"};
    std::mt19937_64 rng(seed);
    const Fq& F = Fq::get(3);
    auto E = EisensteinDigits::from_coeffs(F, to_mpz({-3, 0, 3, 0, 1}), 4);
    auto trunc = [&](unsigned k) {
        auto D = E;
        D.E.resize(k);
        return D;
    };
    for (long it = 0; it < iterations; ++it) {
        unsigned n = 2 + (unsigned)(it % 3);
        auto A = random_gmatrix(F, rng, n), B = random_gmatrix(F, rng, n), C = random_gmatrix(F, rng, n);
        auto I = GMatrix::identity(F, n);
        auto AB = star(A, B);
        ++r.cases;
        std::vector<std::string> bad;
        if (star(A, ldiv(A, C)) != C) bad.push_back("A * (A \\ C) = C");
        if (star(rdiv(C, B), B) != C) bad.push_back("(C / B) * B = C");
        if (star(I, A) != A || star(A, I) != A) bad.push_back("identity");
        if (upper(AB) != star(upper(A), upper(B))) bad.push_back("U homomorphism");
        if (lower(AB) != star(lower(A), lower(B))) bad.push_back("L homomorphism");
        if (upper(phi_mat(A)) != phi_mat(upper(A)) || lower(phi_mat(A)) != phi_mat(lower(A)))
            bad.push_back("phi commutation");
        if (upper(ediamond(trunc(n), A)) != ediamond(trunc(n - 1), upper(A)) ||
            lower(ediamond(trunc(n), A)) != ediamond(trunc(n - 1), lower(A)))
            bad.push_back("E(u) commutation");
        if (n == 3) {
            auto lhs = star(AB, C).a[0][2] - star(A, star(B, C)).a[0][2];
            auto x = LaurentPoly::monomial(F, A.l[0]) * B.a[0][1], y = LaurentPoly::monomial(F, B.l[1]) * A.a[0][1];
            auto rhs = (LaurentPoly::monomial(F, C.l[2]) - LaurentPoly::monomial(F, C.l[1])) * s_fun(1, {x, y});
            if (lhs != rhs) bad.push_back("associator");
        }
        if (!bad.empty())
            r.fail(bad[0] + ": A=" + A.to_string() + " B=" + B.to_string() + " C=" + C.to_string());
    }
    return r;
}

SuiteResult lattice_suite(std::uint64_t seed, long iterations)
{
    SuiteResult r{"lattice"};
    std::mt19937_64 rng(seed);
    auto same = [](const Lattice& a, const Lattice& b) { return includes(a, b) && includes(b, a); };
    for (long it = 0; it < iterations; ++it) {
        const Fq& F = Fq::get(3, it % 2 ? 2 : 1);
        unsigned n = 1 + (unsigned)(it % 3);
        auto A = random_distinguished(F, rng, n), B = random_distinguished(F, rng, n);
        auto LA = lattice_from_matrix(A), LB = lattice_from_matrix(B);
        ++r.cases;
        std::vector<std::string> bad;
        if (distinguished_matrix(LA) != A) bad.push_back("round trip");
        long s = 0;
        for (long x : A.l) s += x;
        if (volume(LA) != s) bad.push_back("volume");
        if (includes(LA, LB) != succ(A, B)) bad.push_back("inclusion");
        GMatrix Lo = A, Up = A;
        for (unsigned i = 2; i <= n; ++i) {
            Lo = lower(Lo);
            Up = upper(Up);
            if (!same(kernel_i(LA, i), lattice_from_matrix(Lo))) bad.push_back("M[" + std::to_string(i) + "]");
            if (!same(image_i(LA, i), lattice_from_matrix(Up))) bad.push_back("M(" + std::to_string(i) + ")");
        }
        if (!bad.empty()) r.fail(bad[0] + ": A=" + A.to_string() + " B=" + B.to_string());
    }
    return r;
}

namespace {

std::vector<std::vector<long>> full_grid(unsigned n, long lmax)
{
    std::vector<std::vector<long>> out;
    std::vector<long> l(n, 0);
    for (;;) {
        out.push_back(l);
        unsigned i = n;
        while (i > 0 && l[i - 1] == lmax) l[--i] = 0;
        if (i == 0) return out;
        ++l[i - 1];
    }
}

std::string show_l(const std::vector<long>& l) { return "l=" + show(l); }

// Runs f over every candidate of every type, one type per task; merges in grid order.
SuiteResult grid_run(const std::string& name, const Fq& F, const std::vector<std::vector<long>>& types,
                     unsigned jobs, const std::function<void(const GMatrix&, SuiteResult&)>& f)
{
    std::vector<SuiteResult> part(types.size());
    parallel_for(types.size(), jobs, [&](std::size_t i) {
        for_each_candidate(F, types[i], [&](const GMatrix& A) { f(A, part[i]); });
    });
    SuiteResult r{name};
    for (const auto& s : part) {
        r.cases += s.cases;
        r.passing += s.passing;
        if (s.failures && !r.failures) r.counterexample = s.counterexample;
        r.failures += s.failures;
    }
    return r;
}

bool lattice_oracle(const GMatrix& A, const EisensteinDigits& E)
{
    auto L = lattice_from_matrix(A);
    return distinguished_matrix(L) == A && is_mu_lattice(L, E);
}

}  // namespace

SuiteResult classify_suite(unsigned long p, const std::vector<mpz_class>& Ec, unsigned n, const GridOptions& opt)
{
    validate_eisenstein(p, Ec);
    const Fq& F = Fq::get((unsigned)p);
    auto E = EisensteinDigits::from_coeffs(F, Ec, 3);
    long e = E.e;
    bool tame = e % (long)p != 0;
    auto types = full_grid(n, e / (long)(p - 1) + 1);
    return grid_run("classify", F, types, opt.jobs, [&](const GMatrix& A, SuiteResult& r) {
        ++r.cases;
        bool mu = is_mu_matrix(A, E);
        r.passing += mu;
        if (opt.oracle && lattice_oracle(A, E) != mu) r.fail("lattice oracle: " + A.to_string());
        if (n == 3) {
            auto P = MuParams3::from_matrix(A);
            if (check_coro1(P, E, e, opt.mut).all() != mu) r.fail("congruences: " + A.to_string());
            if (tame && check_tame(P, E, e, opt.mut).all() != mu) r.fail("tame congruences: " + A.to_string());
        }
    });
}

SuiteResult coro1_control(unsigned long p, const std::vector<mpz_class>& Ec, const Mutation& mut, unsigned jobs)
{
    const Fq& F = Fq::get((unsigned)p);
    auto E = EisensteinDigits::from_coeffs(F, Ec, 3);
    auto types = full_grid(3, E.e / (long)(p - 1) + 1);
    return grid_run("coro1", F, types, jobs, [&](const GMatrix& A, SuiteResult& r) {
        ++r.cases;
        if (check_coro1(MuParams3::from_matrix(A), E, E.e, mut).all() != is_mu_matrix(A, E)) r.fail(A.to_string());
    });
}

SuiteResult tame_control(unsigned long p, const std::vector<mpz_class>& Ec, const Mutation& mut, unsigned jobs,
                         long max_l3)
{
    const Fq& F = Fq::get((unsigned)p);
    auto E = EisensteinDigits::from_coeffs(F, Ec, 3);
    std::vector<std::vector<long>> types;
    for (const auto& l : full_grid(3, E.e / (long)(p - 1) + 1))
        if (max_l3 < 0 || l[2] <= max_l3) types.push_back(l);
    return grid_run("tame", F, types, jobs, [&](const GMatrix& A, SuiteResult& r) {
        ++r.cases;
        auto P = MuParams3::from_matrix(A);
        if (check_tame(P, E, E.e, mut).all() != check_coro1(P, E, E.e).all()) r.fail(A.to_string());
    });
}

namespace {

OKElem elem_from_index(const OKContext& C, unsigned long long idx, long len)
{
    std::vector<unsigned> d(C.N(), 0);
    for (long i = 0; i < len; ++i) {
        d[i] = idx % C.p();
        idx /= C.p();
    }
    return C.from_digits(d, C.N());
}

unsigned long long upow(unsigned long long b, long k)
{
    unsigned long long r = 1;
    while (k-- > 0) r *= b;
    return r;
}

SuiteResult merge(const std::string& name, const std::vector<SuiteResult>& part)
{
    SuiteResult r{name};
    for (const auto& s : part) {
        r.cases += s.cases;
        r.passing += s.passing;
        if (s.failures && !r.failures) r.counterexample = s.counterexample;
        r.failures += s.failures;
    }
    return r;
}

void kummer_case(const SSMatrix& A, bool k, const GridOptions& opt, SuiteResult& r, const std::string& what)
{
    ++r.cases;
    r.passing += k;
    if (opt.oracle && verify_integrality(A) != k) r.fail("integrality oracle: " + what);
    if (k && opt.mut.id < 0) {
        auto iso = check_isogeny_pair(A, frobenius(A));
        if (!iso.ok) r.fail("isogeny pair (A, F(A)): " + what + ": " + iso.failure);
    }
}

}  // namespace

SuiteResult kummer_suite_n2(unsigned long p, const std::vector<mpz_class>& Ec, const GridOptions& opt)
{
    validate_eisenstein(p, Ec);
    long e = (long)Ec.size() - 1, lmax = e / (long)(p - 1) + 1;
    OKContext C(p, Ec, default_pi_precision(p, e, {lmax, lmax}));
    auto types = full_grid(2, lmax);
    std::vector<SuiteResult> part(types.size());
    parallel_for(types.size(), opt.jobs, [&](std::size_t t) {
        long l1 = types[t][0], l2 = types[t][1];
        for (unsigned long long idx = 0; idx < upow(p, l2); ++idx) {
            auto a = elem_from_index(C, idx, l2);
            auto res = check_kummer_n2(l1, l2, a, opt.mut);
            std::vector<std::vector<OKElem>> m(2, std::vector<OKElem>(2, C.zero()));
            m[0][1] = a;
            auto A = SSMatrix::teichmuller(C, {l1, l2}, m, default_witt_length(2));
            std::string what = show_l(types[t]) + " a12=" + a.to_string();
            kummer_case(A, res.all(), opt, part[t], what);
            if (l1 < l2 && res.ii && res.iii) part[t].fail("l1 < l2 passes (ii) and (iii): " + what);
        }
    });
    return merge("kummer-n2", part);
}

SuiteResult kummer_suite_n3(unsigned long p, const std::vector<mpz_class>& Ec, const GridOptions& opt)
{
    validate_eisenstein(p, Ec);
    long e = (long)Ec.size() - 1, lmax = e / (long)(p - 1) + 1;
    OKContext C(p, Ec, default_pi_precision(p, e, {lmax, lmax, lmax}));
    std::vector<std::vector<long>> types;
    for (const auto& l : full_grid(3, lmax))
        if (l[0] >= (long)p * l[2]) types.push_back(l);
    std::vector<SuiteResult> part(types.size());
    parallel_for(types.size(), opt.jobs, [&](std::size_t t) {
        long l1 = types[t][0], l2 = types[t][1], l3 = types[t][2];
        unsigned long long m3 = upow(p, l3);
        for (unsigned long long i = 0; i < upow(p, l2); ++i)
            for (unsigned long long j = 0; j < m3 * m3; ++j) {
                auto a12 = elem_from_index(C, i, l2), a13 = elem_from_index(C, j % m3, l3),
                     a23 = elem_from_index(C, j / m3, l3);
                bool k = check_kummer_n3(l1, l2, l3, a12, a13, a23, opt.mut).all();
                std::vector<std::vector<OKElem>> m(3, std::vector<OKElem>(3, C.zero()));
                m[0][1] = a12;
                m[0][2] = a13;
                m[1][2] = a23;
                auto A = SSMatrix::teichmuller(C, types[t], m, default_witt_length(3));
                kummer_case(A, k, opt, part[t],
                            show_l(types[t]) + " a12=" + a12.to_string() + " a13=" + a13.to_string() +
                                " a23=" + a23.to_string());
            }
    });
    return merge("kummer-n3", part);
}

}  // namespace muforge
