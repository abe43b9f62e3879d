#include "muforge/classify.hpp"

#include <atomic>
#include <mutex>
#include <cassert>
#include <stdexcept>
#include <thread>

#include "muforge/lattice.hpp"

namespace muforge {

GMatrix MuParams3::to_matrix(const Fq& F) const
{
    GMatrix A(F, {l1, l2, l3});
    A.a[0][1] = a12.field() ? a12 : LaurentPoly(F);
    A.a[0][2] = a13.field() ? a13 : LaurentPoly(F);
    A.a[1][2] = a23.field() ? a23 : LaurentPoly(F);
    return A;
}

MuParams3 MuParams3::from_matrix(const GMatrix& A)
{
    if (A.n != 3) throw std::invalid_argument("MuParams3: matrix must be 3 x 3");
    return {A.l[0], A.l[1], A.l[2], A.a[0][1], A.a[0][2], A.a[1][2]};
}

bool is_T_matrix(const GMatrix& A)
{
    if (A.n < 2) return true;
    return is_positive(rdiv(upper(A), lower(A)));
}

namespace {

bool degree_bounds(const GMatrix& A)
{
    for (unsigned i = 0; i < A.n; ++i) {
        if (A.l[i] < 0) return false;
        for (unsigned j = i + 1; j < A.n; ++j) {
            const auto& x = A.a[i][j];
            if (x.is_zero()) continue;
            if (x.min_degree() < 0 || x.max_degree() >= A.l[j]) return false;
        }
    }
    return true;
}

bool cong(const LaurentPoly& x, long m, int id, const Mutation& mut)
{
    return x.is_zero() || x.valuation() >= mut.modulus(id, m);
}

LaurentPoly mono(const Fq& F, long d) { return LaurentPoly::monomial(F, d); }

}  // namespace

bool is_distinguished(const GMatrix& A)
{
    if (!degree_bounds(A)) return false;
    for (unsigned i = 0; i + 1 < A.n; ++i)
        if (A.l[i] < A.l[i + 1]) return false;
    bool d = is_T_matrix(A);
#ifndef NDEBUG
    if (d) assert(distinguished_matrix(lattice_from_matrix(A)) == A);
#endif
    return d;
}

MuConditions mu_conditions(const GMatrix& A, const EisensteinDigits& E)
{
    MuConditions c;
    c.degrees = degree_bounds(A);
    c.t_matrix = is_T_matrix(A);
    auto phi = phi_mat(A);
    c.phi = is_positive(rdiv(phi, A));
    auto En = E;
    En.E.resize(A.n, LaurentPoly(*A.F));
    c.eisenstein = is_positive(rdiv(ediamond(En, A), phi));
    return c;
}

bool is_mu_matrix(const GMatrix& A, const EisensteinDigits& E) { return mu_conditions(A, E).all(); }

Coro1Result check_coro1(const MuParams3& P, const EisensteinDigits& E, long e, const Mutation& mut)
{
    const Fq& F = *E.F;
    const unsigned p = F.p();
    Coro1Result r;
    r.order = 0 <= P.l3 && P.l3 <= P.l2 && P.l2 <= P.l1 && (long)(p - 1) * P.l1 <= e;
    r.degrees = degree_bounds(P.to_matrix(F));
    if (!r.degrees) return r;
    auto a12 = P.to_matrix(F).a[0][1], a13 = P.to_matrix(F).a[0][2], a23 = P.to_matrix(F).a[1][2];
    auto E1 = E.digit(1), E2 = E.digit(2);
    auto a12p = a12.pow(p), a13p = a13.pow(p), a23p = a23.pow(p);

    r.ii_a = cong(a12 - mono(F, P.l1 - P.l2) * a23, P.l3, 0, mut);
    r.ii_b = cong(a12p, P.l2, 1, mut);
    r.ii_c = cong(a23p, P.l3, 2, mut);
    r.iii = cong(a13p - (a12p * a23).shift(-P.l2), P.l3, 3, mut);

    auto ue = mono(F, e);
    auto top1 = ue * a12 + mono(F, P.l1) * E1 - mono(F, e - (long)(p - 1) * P.l1) * a12p;
    auto top2 = ue * a23 + mono(F, P.l2) * E1 - mono(F, e - (long)(p - 1) * P.l2) * a23p;
    r.iv_a = cong(top1, (long)p * P.l2, 4, mut);
    r.iv_b = cong(top2, (long)p * P.l3, 5, mut);

    auto v = ue * a13 + a12 * E1 + s_fun(1, {ue * a12, mono(F, P.l1) * E1}) + mono(F, P.l1) * E2 -
             mono(F, e - (long)(p - 1) * P.l1) * a13p - top1.shift(-(long)p * P.l2) * a23p;
    r.v = cong(v, (long)p * P.l3, 6, mut);
    return r;
}

TameResult check_tame(const MuParams3& P, const EisensteinDigits& E, long e, const Mutation& mut)
{
    const Fq& F = *E.F;
    const long p = F.p();
    if (e % p == 0) throw std::invalid_argument("check_tame: e must be prime to p");
    TameResult r;
    r.order = 0 <= P.l3 && p * p * P.l3 <= p * P.l2 && p * P.l2 <= P.l1 && (p - 1) * P.l1 <= e;
    r.degrees = degree_bounds(P.to_matrix(F));
    if (!r.degrees) return r;
    auto A = P.to_matrix(F);
    auto a12 = A.a[0][1], a13 = A.a[0][2], a23 = A.a[1][2];
    auto E1 = E.digit(1);
    auto a12p = a12.pow(p), a13p = a13.pow(p), a23p = a23.pow(p);
    r.ii_a = cong(mono(F, e - (p - 1) * P.l1) * a12p, p * P.l2, 0, mut);
    r.ii_b = cong(mono(F, e - (p - 1) * P.l2) * a23p, p * P.l3, 1, mut);
    auto top1 = mono(F, e) * a12 + mono(F, P.l1) * E1 - mono(F, e - (p - 1) * P.l1) * a12p;
    auto x = a12 * E1 - mono(F, e - (p - 1) * P.l1) * a13p - top1.shift(-p * P.l2) * a23p;
    r.iii = cong(x, p * P.l3, 2, mut);
    r.member_a = cong(a12p, P.l2, 3, mut);
    r.member_b = cong(a23p, P.l3, 4, mut);
    return r;
}

bool model_map_exists(const GMatrix& A, const GMatrix& B) { return succ(A, B); }

unsigned long long count_polys(const Fq& F, long len)
{
    unsigned long long c = 1;
    for (long i = 0; i < len; ++i) c *= F.q();
    return c;
}

LaurentPoly poly_from_index(const Fq& F, unsigned long long idx, long len)
{
    std::vector<fq_t> c(std::max(0L, len));
    for (long i = 0; i < len; ++i) {
        c[i] = (fq_t)(idx % F.q());
        idx /= F.q();
    }
    return LaurentPoly(F, 0, c);
}

void for_each_candidate(const Fq& F, const std::vector<long>& l, const std::function<void(const GMatrix&)>& f)
{
    const unsigned n = (unsigned)l.size();
    std::vector<std::pair<unsigned, unsigned>> slots;
    std::vector<unsigned long long> sizes;
    unsigned long long total = 1;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
            slots.emplace_back(i, j);
            sizes.push_back(count_polys(F, std::max(0L, l[j])));
            total *= sizes.back();
        }
    GMatrix A(F, l);
    // the last slot varies fastest
    for (unsigned long long t = 0; t < total; ++t) {
        unsigned long long r = t;
        for (std::size_t s = slots.size(); s-- > 0;) {
            auto [i, j] = slots[s];
            A.a[i][j] = poly_from_index(F, r % sizes[s], std::max(0L, l[j]));
            r /= sizes[s];
        }
        f(A);
    }
}

std::vector<std::vector<long>> ordered_types(unsigned n, long lmax)
{
    std::vector<std::vector<long>> out;
    std::vector<long> l(n, 0);
    std::function<void(unsigned, long)> rec = [&](unsigned i, long hi) {
        if (i == n) {
            out.push_back(l);
            return;
        }
        for (long v = 0; v <= hi; ++v) {
            l[i] = v;
            rec(i + 1, v);
        }
    };
    rec(0, lmax);
    return out;
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& f)
{
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex m;
    for (unsigned t = 0; t < jobs && t < count; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < count;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(m);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

void enumerate_mu(const Fq& F, unsigned n, const EisensteinDigits& E, unsigned jobs,
                  const std::function<void(const GMatrix&)>& out)
{
    const long lmax = E.e / (long)(F.p() - 1);
    auto types = ordered_types(n, lmax);
    std::vector<std::vector<GMatrix>> blocks(types.size());
    parallel_for(types.size(), jobs, [&](std::size_t b) {
        for_each_candidate(F, types[b], [&](const GMatrix& A) {
            if (is_mu_matrix(A, E)) blocks[b].push_back(A);
        });
    });
    for (const auto& blk : blocks)
        for (const auto& A : blk) out(A);
}

std::vector<GMatrix> enumerate_mu(const Fq& F, unsigned n, const EisensteinDigits& E, unsigned jobs)
{
    std::vector<GMatrix> r;
    enumerate_mu(F, n, E, jobs, [&](const GMatrix& A) { r.push_back(A); });
    return r;
}

}  // namespace muforge
