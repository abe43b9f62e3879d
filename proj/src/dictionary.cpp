#include "muforge/dictionary.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

#include "muforge/series.hpp"

namespace muforge {

DictContext DictContext::make(unsigned long p, std::vector<mpz_class> E_coeffs, unsigned n, long pi_precision,
                              std::size_t witt_length)
{
    validate_eisenstein(p, E_coeffs);
    DictContext c;
    c.p = p;
    c.e = (long)E_coeffs.size() - 1;
    c.E_coeffs = E_coeffs;
    c.F = &Fq::get((unsigned)p);
    c.Ed = EisensteinDigits::from_coeffs(*c.F, E_coeffs, 3);
    if (c.Ed.digit(1).coeff(0) == 0) throw std::invalid_argument("E_1(0) must be a unit");
    if (pi_precision <= 0) pi_precision = default_pi_precision(p, c.e, std::vector<long>(n, c.lmax() + 1));
    c.ok = OKContext::make(p, E_coeffs, pi_precision);
    c.witt_length = witt_length ? witt_length : default_witt_length(n);
    return c;
}

OKElem star_map(const OKContext& ctx, const LaurentPoly& c, long precision)
{
    if (!c.is_polynomial()) throw std::invalid_argument("star_map: negative degree");
    if (precision > ctx.N())
        throw PrecisionShortfall("star_map: pi^" + std::to_string(precision) + " exceeds the working precision");
    OKElem r = ctx.zero();
    if (!c.is_zero())
        for (long d = c.min_degree(); d <= c.max_degree() && d < precision; ++d)
            if (fq_t x = c.coeff(d)) r = ok_add(r, ok_mul(ctx.teich(x), ctx.pi_pow(d)));
    return r.with_precision(precision);
}

OKElem star_map(const OKContext& ctx, const LaurentPoly& c) { return star_map(ctx, c, ctx.N()); }

LaurentPoly teich_expand(const Fq& F, const OKElem& a, long l)
{
    if (a.precision() < l) throw PrecisionShortfall("teich_expand: element known mod pi^" +
                                                    std::to_string(a.precision()) + ", need pi^" + std::to_string(l));
    std::vector<fq_t> c;
    OKElem x = a;
    for (long i = 0; i < l; ++i) {
        fq_t d = x.digits().empty() ? 0 : x.digits()[0];
        c.push_back(d);
        x = div_pi(ok_sub(x, a.ctx().teich(d).with_precision(x.precision())), 1);
    }
    return LaurentPoly(F, 0, c);
}

std::string describe(const std::vector<long>& l, const std::vector<LaurentPoly>& a)
{
    static const char* names[] = {"a12", "a13", "a23"};
    std::ostringstream os;
    os << "l=(";
    for (std::size_t i = 0; i < l.size(); ++i) os << (i ? "," : "") << l[i];
    os << ")";
    for (std::size_t i = 0; i < a.size(); ++i) os << " " << names[a.size() == 1 ? 0 : i] << "=" << a[i].to_string();
    return os.str();
}

namespace {

using Key = std::vector<LaurentPoly>;

struct KeyLess {
    bool operator()(const Key& x, const Key& y) const
    {
        for (std::size_t i = 0; i < x.size(); ++i) {
            const auto& cx = x[i].coeffs();
            const auto& cy = y[i].coeffs();
            if (x[i].min_degree() != y[i].min_degree()) return x[i].min_degree() < y[i].min_degree();
            if (cx != cy) return cx < cy;
        }
        return false;
    }
};

// Element with base-p digits of idx in positions 0..len-1, exact to pi^N.
OKElem elem_from_index(const OKContext& C, unsigned long long idx, long len)
{
    std::vector<unsigned> d(C.N(), 0);
    for (long i = 0; i < len; ++i) {
        d[i] = idx % C.p();
        idx /= C.p();
    }
    return C.from_digits(d, C.N());
}

unsigned long long ipow(unsigned long long b, long k)
{
    unsigned long long r = 1;
    while (k-- > 0) r *= b;
    return r;
}

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

SSMatrix ss_from(const DictContext& ctx, const std::vector<long>& l, const std::vector<OKElem>& a)
{
    unsigned n = (unsigned)l.size();
    std::vector<std::vector<OKElem>> e(n, std::vector<OKElem>(n, ctx.ok->zero()));
    if (n == 2) e[0][1] = a[0];
    else {
        e[0][1] = a[0];
        e[0][2] = a[1];
        e[1][2] = a[2];
    }
    return SSMatrix::teichmuller(*ctx.ok, l, e, ctx.witt_length);
}

struct TypeResult {
    std::set<Key, KeyLess> bk, ss;
    std::vector<std::string> mismatches;
    long cc_checked = 0;
    bool cc_redundant = true;
};

void run_type(const DictContext& ctx, const std::vector<long>& l, const DictOptions& opt, TypeResult& out)
{
    const Fq& F = *ctx.F;
    const OKContext& C = *ctx.ok;
    unsigned n = (unsigned)l.size();
    // Entry lengths: a12 has degree < l2; a13, a23 degree < l3.
    std::vector<long> len = n == 2 ? std::vector<long>{l[1]} : std::vector<long>{l[1], l[2], l[2]};
    unsigned long long total = 1;
    for (long k : len) total *= ipow(ctx.p, k);

    for (unsigned long long idx = 0; idx < total; ++idx) {
        std::vector<unsigned long long> part;
        unsigned long long r = idx;
        for (long k : len) {
            unsigned long long m = ipow(ctx.p, k);
            part.push_back(r % m);
            r /= m;
        }

        // Breuil-Kisin side.
        Key key;
        for (std::size_t s = 0; s < len.size(); ++s) key.push_back(poly_from_index(F, part[s], len[s]));
        MuParams3 P;
        P.l1 = l[0];
        P.l2 = l[1];
        P.l3 = n == 3 ? l[2] : 0;
        P.a12 = key[0];
        P.a13 = n == 3 ? key[1] : LaurentPoly(F);
        P.a23 = n == 3 ? key[2] : LaurentPoly(F);
        Coro1Result cr = check_coro1(P, ctx.Ed, ctx.e, opt.bk);
        bool bk = cr.all();
        if (bk) out.bk.insert(key);
        if (n == 3) {
            Coro1Result rest = cr;
            rest.ii_a = true;
            if (rest.all()) {
                ++out.cc_checked;
                if (!cr.ii_a) {
                    out.cc_redundant = false;
                    out.mismatches.push_back("condition C removes " + describe(l, key));
                }
            }
        }
        if (opt.oracle) {
            GMatrix A(F, l);
            A.a[0][1] = key[0];
            if (n == 3) {
                A.a[0][2] = key[1];
                A.a[1][2] = key[2];
            }
            if (is_mu_matrix(A, ctx.Ed) != bk)
                out.mismatches.push_back("is_mu_matrix disagrees with the congruences at " + describe(l, key));
        }

        // Sekiguchi-Suwa side: a12 runs over Teichmueller-digit elements for
        // n = 3, the other entries over base-p digit normal forms.
        std::vector<OKElem> a;
        if (n == 2) a.push_back(elem_from_index(C, part[0], len[0]));
        else {
            a.push_back(star_map(C, poly_from_index(F, part[0], len[0])));
            a.push_back(elem_from_index(C, part[1], len[1]));
            a.push_back(elem_from_index(C, part[2], len[2]));
        }
        bool ss = n == 2 ? check_kummer_n2(l[0], l[1], a[0], opt.ss).all()
                         : check_kummer_n3(l[0], l[1], l[2], a[0], a[1], a[2], opt.ss).all();
        Key back;
        for (std::size_t s = 0; s < a.size(); ++s) back.push_back(teich_expand(F, a[s], len[s]));
        if (ss) out.ss.insert(back);
        if (opt.oracle && verify_integrality(ss_from(ctx, l, a)) != ss)
            out.mismatches.push_back("verify_integrality disagrees with the congruences at " + describe(l, back));
    }

    for (const Key& k : out.bk)
        if (!out.ss.count(k)) out.mismatches.push_back("BK only: " + describe(l, k));
    for (const Key& k : out.ss)
        if (!out.bk.count(k)) out.mismatches.push_back("SS only: " + describe(l, k));
}

DictReport compare(const DictContext& ctx, unsigned n, const DictOptions& opt)
{
    DictReport rep;
    rep.n = n;
    if (n == 3) rep.gate = "l1>=p*l3";
    std::vector<std::vector<long>> grid = full_grid(n, ctx.lmax() + 1), tested;
    for (const auto& l : grid) {
        unsigned long long size = 1;
        for (unsigned j = 1; j < n; ++j) size *= ipow(ctx.p, l[j] * (long)(j == 1 ? 1 : 2));
        if (n == 3 && l[0] < (long)ctx.p * l[2]) {
            rep.untested += (long)size;
            continue;
        }
        rep.grid_size += (long)size;
        tested.push_back(l);
    }
    std::vector<TypeResult> res(tested.size());
    std::mutex mu;
    std::string abort;
    parallel_for(tested.size(), opt.jobs, [&](std::size_t i) {
        try {
            run_type(ctx, tested[i], opt, res[i]);
        } catch (const PrecisionShortfall& ex) {
            std::lock_guard<std::mutex> g(mu);
            if (abort.empty()) abort = describe(tested[i], {}) + ": " + ex.what();
        }
    });
    if (!abort.empty()) throw PrecisionShortfall("compare: " + abort);
    for (const TypeResult& r : res) {
        rep.side_a_count += (long)r.bk.size();
        rep.side_b_count += (long)r.ss.size();
        rep.mismatches.insert(rep.mismatches.end(), r.mismatches.begin(), r.mismatches.end());
        rep.condition_c_checked += r.cc_checked;
        rep.condition_c_redundant = rep.condition_c_redundant && r.cc_redundant;
    }
    rep.matched = rep.mismatches.empty();
    return rep;
}

}  // namespace

DictReport compare_n2(const DictContext& ctx, const DictOptions& opt) { return compare(ctx, 2, opt); }

DictReport compare_n3(const DictContext& ctx, const DictOptions& opt) { return compare(ctx, 3, opt); }

bool check_pi_e_identity(const DictContext& ctx)
{
    const OKContext& C = *ctx.ok;
    if (C.N() < 2 * ctx.e) throw PrecisionShortfall("check_pi_e_identity: need pi^" + std::to_string(2 * ctx.e));
    OKElem s = ok_add(C.pi_pow(ctx.e), ok_mul(C.from_int((long)ctx.p), star_map(C, ctx.Ed.digit(1))));
    return is_zero_mod(s, 2 * ctx.e);
}

OrderReport check_order_preservation_n2(const DictContext& ctx)
{
    const Fq& F = *ctx.F;
    const OKContext& C = *ctx.ok;
    std::vector<GMatrix> pass;
    for (const auto& l : full_grid(2, ctx.lmax() + 1))
        for (unsigned long long i = 0; i < count_polys(F, l[1]); ++i) {
            MuParams3 P{l[0], l[1], 0, poly_from_index(F, i, l[1]), LaurentPoly(F), LaurentPoly(F)};
            if (!check_coro1(P, ctx.Ed, ctx.e).all()) continue;
            GMatrix A(F, l);
            A.a[0][1] = P.a12;
            pass.push_back(A);
        }
    auto star = [&](const GMatrix& A) { return ss_from(ctx, A.l, {star_map(C, A.a[0][1])}); };
    OrderReport rep;
    for (const GMatrix& A : pass)
        for (const GMatrix& B : pass) {
            ++rep.pairs;
            bool bk = is_positive(rdiv(A, B));
            bool ss = try_rdiv_T(star(A).a, star(B)).has_value();
            if (bk != ss)
                rep.mismatches.push_back(describe(A.l, {A.a[0][1]}) + " / " + describe(B.l, {B.a[0][1]}) +
                                         (bk ? ": BK positive only" : ": SS positive only"));
        }
    return rep;
}

}  // namespace muforge
