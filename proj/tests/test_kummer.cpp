#include "doctest.h"

#include <random>

#include "muforge/kummer.hpp"

using namespace muforge;

namespace {

std::vector<mpz_class> poly(std::vector<long> c)
{
    std::vector<mpz_class> z;
    for (long x : c) z.emplace_back(x);
    return z;
}

// Element with base-p digits of idx in positions 0..len-1.
OKElem elem_from_index(const OKContext& C, unsigned long idx, long len)
{
    std::vector<unsigned> d(C.N(), 0);
    for (long i = 0; i < len; ++i) {
        d[i] = idx % C.p();
        idx /= C.p();
    }
    return C.from_digits(d, C.N());
}

unsigned long ipow(unsigned long b, long k)
{
    unsigned long r = 1;
    while (k-- > 0) r *= b;
    return r;
}

OKWitt random_witt(const OKContext& C, std::mt19937_64& rng, std::size_t len, long minval)
{
    std::uniform_int_distribution<unsigned> d(0, C.p() - 1);
    std::vector<OKElem> c;
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<unsigned> g(C.N(), 0);
        for (long k = minval; k < C.N(); ++k) g[k] = d(rng);
        c.push_back(C.from_digits(g, C.N()));
    }
    return OKWitt(c);
}

bool witt_agree(const OKWitt& a, const OKWitt& b)
{
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (!a[i].agrees_with(b[i])) return false;
    return true;
}

bool mat_agree(const WMatrix& A, const WMatrix& B)
{
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j)
            if (!witt_agree(A[i][j], B[i][j])) return false;
    return true;
}

SSMatrix teich2(const OKContext& C, long l1, long l2, const OKElem& a12, std::size_t len = 4)
{
    std::vector<std::vector<OKElem>> e(2, std::vector<OKElem>(2, C.zero()));
    e[0][1] = a12;
    return SSMatrix::teichmuller(C, {l1, l2}, e, len);
}

SSMatrix teich3(const OKContext& C, std::vector<long> l, const OKElem& a12, const OKElem& a13, const OKElem& a23,
                std::size_t len = 5)
{
    std::vector<std::vector<OKElem>> e(3, std::vector<OKElem>(3, C.zero()));
    e[0][1] = a12;
    e[0][2] = a13;
    e[1][2] = a23;
    return SSMatrix::teichmuller(C, l, e, len);
}

}  // namespace

TEST_CASE("star_T identities")
{
    OKContext C(3, poly({-3, 0, 1}), 12);
    OKWittRing R(C);
    std::mt19937_64 rng(11);
    for (int it = 0; it < 5; ++it) {
        WMatrix M(3, std::vector<OKWitt>(3)), N = M;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                M[i][j] = j >= i ? random_witt(C, rng, 3, 0) : witt::zero(R, 3);
                N[i][j] = j >= i ? random_witt(C, rng, 3, 0) : witt::zero(R, 3);
            }
        auto I = identity_wmatrix(R, 3, 3);
        CHECK(mat_agree(star_T(R, I, M), M));
        CHECK(mat_agree(star_T(R, M, I), M));
        auto P = star_T(R, M, N);
        auto up = [](const WMatrix& X) {
            WMatrix Y(2, std::vector<OKWitt>(2));
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) Y[i][j] = X[i][j];
            return Y;
        };
        CHECK(mat_agree(up(P), star_T(R, up(M), up(N))));
    }
}

TEST_CASE("rdiv_T inverts star_T")
{
    OKContext C(3, poly({-3, 0, 0, 1}), 16);
    OKWittRing R(C);
    std::mt19937_64 rng(12);
    for (int it = 0; it < 5; ++it) {
        SSMatrix A(C, {2, 1, 1}, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) A.a[i][j] = random_witt(C, rng, 3, 1);
        auto Q = rdiv_T(A.a, A);
        CHECK(mat_agree(Q, identity_wmatrix(R, 3, 3)));
        CHECK(equiv(A, A));
        WMatrix M(3, std::vector<OKWitt>(3, witt::zero(R, 3)));
        for (int i = 0; i < 3; ++i) {
            M[i][i] = witt::teichmuller(R, C.pi_pow(i), 3);
            for (int j = i + 1; j < 3; ++j) M[i][j] = random_witt(C, rng, 3, 0);
        }
        auto back = rdiv_T(star_T(R, M, A.a), A);
        CHECK(mat_agree(back, M));
    }
}

TEST_CASE("membership and equivalence for n = 2")
{
    OKContext C(3, poly({-3, 0, 0, 0, 1}), 20);
    // diagonal matrices
    CHECK(in_Mn(SSMatrix(C, {1, 2, 1}, 4)));
    for (long l1 = 1; l1 <= 3; ++l1)
        for (long l2 = 1; l2 <= 3; ++l2)
            for (unsigned long idx = 0; idx < ipow(3, 3); ++idx) {
                auto a = elem_from_index(C, idx, 3);
                // F^{(l1)}[a] = [a^p] - [pi^{(p-1) l1} a]
                bool expect = is_zero_mod(ok_sub(ok_pow(a, 3), ok_mul(C.pi_pow(2 * l1), a)), l2);
                CHECK(in_Mn(teich2(C, l1, l2, a)) == expect);
            }
    for (unsigned long i = 0; i < 27; ++i)
        for (unsigned long j = 0; j < 27; ++j) {
            auto a = elem_from_index(C, i, 3), b = elem_from_index(C, j, 3);
            CHECK(equiv(teich2(C, 2, 2, a), teich2(C, 2, 2, b)) == is_zero_mod(ok_sub(a, b), 2));
        }
}

TEST_CASE("membership for n = 3 with Teichmueller entries")
{
    OKContext C(3, poly({-3, 0, 0, 0, 0, 0, 1}), 24);
    std::mt19937_64 rng(13);
    int pass = 0, total = 0;
    for (auto l : std::vector<std::vector<long>>{{3, 2, 1}, {2, 2, 2}, {3, 3, 1}, {2, 1, 1}}) {
        for (int it = 0; it < 60; ++it) {
            std::uniform_int_distribution<unsigned long> d(0, 26);
            auto a12 = elem_from_index(C, d(rng), 3), a13 = elem_from_index(C, d(rng), 3),
                 a23 = elem_from_index(C, d(rng), 3);
            if (it % 2) a12 = ok_mul(a12, C.pi_pow(1));
            if (it % 3) a23 = ok_mul(a23, C.pi_pow(1));
            bool expect = is_zero_mod(ok_pow(a12, 3), l[1]) && is_zero_mod(ok_pow(a23, 3), l[2]) &&
                          is_zero_mod(ok_sub(ok_mul(C.pi_pow(l[1]), ok_pow(a13, 3)), ok_mul(a23, ok_pow(a12, 3))),
                                      l[1] + l[2]);
            bool got = in_Mn(teich3(C, l, a12, a13, a23));
            CHECK(got == expect);
            pass += got;
            ++total;
        }
    }
    CHECK(pass > 0);
    CHECK(pass < total);
}

TEST_CASE("deformed exponential")
{
    const auto& T = DeformedExp::get(3, 20);
    // E_p(1, 0, T) is the Artin-Hasse exponential: 1 + T + T^2/2 + T^3/2 + ...
    CHECK(T.coeff(1)[1] == 1);
    CHECK(T.coeff(2)[2] == mpq_class(1, 2));
    CHECK(T.coeff(3)[3] == mpq_class(1, 2));
    // E_p(U, Lambda, T) = 1 + U T mod T^2
    CHECK(T.coeff(0)[0] == 1);
    CHECK(T.coeff(1)[0] == 0);
    DeformedExp::get(5, 30);

    OKContext C(3, poly({-3, 0, 1}), 12);
    auto z = deformed_exp(C.zero(), 1, 8);
    CHECK(z[0] == C.one());
    for (int i = 1; i <= 8; ++i) CHECK(z[i].is_known_zero());

    std::mt19937_64 rng(14);
    for (int it = 0; it < 10; ++it) {
        auto a = elem_from_index(C, rng() % 729, 6);
        auto s = deformed_exp(a, 2, 10), t = deformed_exp(ok_neg(a), 2, 10);
        for (int m = 0; m <= 10; ++m) {
            OKElem acc = C.zero();
            for (int i = 0; i <= m; ++i) acc = ok_add(acc, ok_mul(s[i], t[m - i]));
            CHECK(acc == (m == 0 ? C.one() : C.zero()));
        }
        CHECK(s[1] == a);
    }
}

TEST_CASE("n = 2 finiteness: congruences, integrality and isogeny pair")
{
    for (auto E : {poly({-3, 0, 1}), poly({-3, 0, 0, 1}), poly({3, 3, 0, 0, 1})}) {
        long e = (long)E.size() - 1;
        long lmax = e / 2 + 1;
        OKContext C(3, E, default_pi_precision(3, e, {lmax, lmax}));
        long passed = 0;
        for (long l1 = 0; l1 <= lmax; ++l1)
            for (long l2 = 0; l2 <= lmax; ++l2)
                for (unsigned long idx = 0; idx < ipow(3, l2); ++idx) {
                    auto a = elem_from_index(C, idx, l2);
                    bool k = check_kummer_n2(l1, l2, a).all();
                    auto A = teich2(C, l1, l2, a);
                    CHECK(verify_integrality(A) == k);
                    if (k) {
                        ++passed;
                        auto r = check_isogeny_pair(A, frobenius(A));
                        CHECK_MESSAGE(r.ok, r.failure);
                    }
                    if (l1 < l2) CHECK_FALSE((check_kummer_n2(l1, l2, a).ii && check_kummer_n2(l1, l2, a).iii));
                }
        CHECK(passed > 0);
    }
}

TEST_CASE("Hopf presentation for n = 2")
{
    OKContext C(3, poly({-3, 0, 0, 0, 0, 0, 1}), 24);
    auto a = ok_mul(C.from_int(2), C.pi_pow(1));
    auto A = teich2(C, 3, 2, a);
    REQUIRE(check_kummer_n2(3, 2, a).all());
    auto H = emit_hopf(A);
    CHECK(H.integral);
    REQUIRE(H.D.size() == 1);
    REQUIRE(H.equations.size() == 2);
    // D_1 = 1 + a T mod pi^2
    CHECK(H.D[0].t.size() == 2);
    CHECK(H.D[0].t.at({0, 0, 0}) == C.one());
    CHECK(H.D[0].t.at({1, 0, 0}).agrees_with(a));
    CHECK(H.equations[0].degree(0) == 3);
    CHECK(H.equations[1].degree(1) == 3);
    CHECK(H.equations[1].degree(0) < 3);
    CHECK(!H.to_string().empty());

    auto H0 = emit_hopf(SSMatrix(C, {0, 0}, 3));
    CHECK(H0.integral);
    REQUIRE(H0.equations.size() == 1);
    CHECK(H0.equations[0].degree(0) == 9);
    CHECK(verify_integrality(SSMatrix(C, {0, 0, 0}, 3)));
    CHECK_FALSE(verify_integrality(SSMatrix(C, {0, 1}, 3)));
    CHECK_FALSE(verify_integrality(teich2(C, 3, 2, C.pi_pow(1))));
}

TEST_CASE("n = 3 finiteness under l1 >= p l3")
{
    OKContext C(3, poly({-3, 0, 0, 0, 0, 0, 1}), default_pi_precision(3, 6, {3, 3, 1}));
    CHECK_THROWS_AS(check_kummer_n3(2, 1, 1, C.zero(), C.zero(), C.zero()), OutOfScope);
    CHECK(check_kummer_n3(0, 0, 0, C.zero(), C.zero(), C.zero()).all());
    long passed = 0;
    for (long l1 = 0; l1 <= 3; ++l1)
        for (long l2 = 0; l2 <= 3; ++l2)
            for (long l3 = 0; 3 * l3 <= l1; ++l3) {
                std::vector<long> l{l1, l2, l3};
                for (unsigned long i = 0; i < ipow(3, l2); ++i)
                    for (unsigned long j = 0; j < ipow(3, 2 * l3); ++j) {
                        auto a12 = elem_from_index(C, i, l2);
                        auto a13 = elem_from_index(C, j % ipow(3, l3), l3);
                        auto a23 = elem_from_index(C, j / ipow(3, l3), l3);
                        bool k = check_kummer_n3(l1, l2, l3, a12, a13, a23).all();
                        if (l3 == 0) CHECK(k == check_kummer_n2(l1, l2, a12).all());
                        auto A = teich3(C, l, a12, a13, a23);
                        CHECK(verify_integrality(A) == k);
                        if (k) {
                            ++passed;
                            auto r = check_isogeny_pair(A, frobenius(A));
                            CHECK_MESSAGE(r.ok, r.failure);
                        }
                    }
            }
    CHECK(passed > 0);
}
