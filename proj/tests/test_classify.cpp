#include "doctest.h"

#include "muforge/classify.hpp"
#include "muforge/lattice.hpp"
#include "support/random.hpp"

using namespace muforge;

namespace {

EisensteinDigits eis(const Fq& F, std::vector<long> c, unsigned nd = 3)
{
    std::vector<mpz_class> z;
    for (long x : c) z.emplace_back(x);
    return EisensteinDigits::from_coeffs(F, z, nd);
}

bool lattice_oracle(const GMatrix& A, const EisensteinDigits& E)
{
    for (long x : A.l)
        if (x < 0) return false;
    auto L = lattice_from_matrix(A);
    return distinguished_matrix(L) == A && is_mu_lattice(L, E);
}

}  // namespace

TEST_CASE("distinguished and T-matrices")
{
    const Fq& F = Fq::get(3);
    CHECK(is_distinguished(GMatrix::identity(F, 3)));
    GMatrix A(F, {1, 2});
    CHECK_FALSE(is_T_matrix(A));
    CHECK_FALSE(is_distinguished(A));
    CHECK(is_T_matrix(GMatrix(F, {4})));

    std::mt19937_64 rng(5);
    for (int it = 0; it < 100; ++it) {
        auto B = muforge::testing::random_gmatrix(F, rng, 3, 3, 2);
        std::vector<PadicElem> rows;
        for (unsigned i = 0; i < 3; ++i) rows.push_back(B.row(i));
        CHECK(is_T_matrix(B) == is_T_basis(rows));
    }
}

TEST_CASE("mu-matrices for small n")
{
    const Fq& F = Fq::get(3);
    auto E = eis(F, {-3, 0, 1});
    for (unsigned n = 1; n <= 3; ++n) CHECK(is_mu_matrix(GMatrix::identity(F, n), E));
    for (long e : {1L, 2L, 3L, 4L, 5L}) {
        std::vector<long> c(e + 1, 0);
        c[0] = -3;
        c[e] = 1;
        auto Ee = eis(F, c);
        for (long l = 0; l <= 4; ++l) CHECK(is_mu_matrix(GMatrix(F, {l}), Ee) == (2 * l <= e));
    }
}

TEST_CASE("mu-matrix predicate agrees with the lattice oracle")
{
    const Fq& F = Fq::get(3);
    for (auto c : {std::vector<long>{-3, 0, 1}, std::vector<long>{-3, 0, 0, 1}, std::vector<long>{-3, 0, 3, 0, 1}}) {
        auto E = eis(F, c);
        long lmax = E.e / 2 + 1;
        int pass = 0;
        for (long l1 = 0; l1 <= lmax; ++l1)
            for (long l2 = 0; l2 <= lmax; ++l2)
                for_each_candidate(F, {l1, l2}, [&](const GMatrix& A) {
                    bool bk = is_mu_matrix(A, E);
                    CHECK(bk == lattice_oracle(A, E));
                    pass += bk;
                });
        CHECK(pass > 1);
        CHECK(enumerate_mu(F, 2, E).size() == (std::size_t)pass);
    }
}

TEST_CASE("explicit n = 3 congruences")
{
    const Fq& F = Fq::get(3);
    auto E = eis(F, {-3, 0, 1});
    MuParams3 zero{0, 0, 0, LaurentPoly(F), LaurentPoly(F), LaurentPoly(F)};
    CHECK(check_coro1(zero, E, 2).all());
    CHECK(check_tame(zero, E, 2).all());
    MuParams3 big{2, 0, 0, LaurentPoly(F), LaurentPoly(F), LaurentPoly(F)};
    CHECK_FALSE(check_coro1(big, E, 2).all());
    MuParams3 untame{1, 1, 0, LaurentPoly(F), LaurentPoly(F), LaurentPoly(F)};
    CHECK_FALSE(check_tame(untame, E, 2).all());
    CHECK_THROWS_AS(check_tame(zero, eis(F, {-3, 0, 0, 1}), 3), std::invalid_argument);

    long lmax = 2;
    int pass = 0;
    for (long l1 = 0; l1 <= lmax; ++l1)
        for (long l2 = 0; l2 <= lmax; ++l2)
            for (long l3 = 0; l3 <= lmax; ++l3)
                for_each_candidate(F, {l1, l2, l3}, [&](const GMatrix& A) {
                    auto P = MuParams3::from_matrix(A);
                    bool c1 = check_coro1(P, E, 2).all();
                    CHECK(is_mu_matrix(A, E) == c1);
                    CHECK(check_tame(P, E, 2).all() == c1);
                    pass += c1;
                });
    CHECK(pass > 1);
}

TEST_CASE("enumeration")
{
    const Fq& F = Fq::get(3);
    CHECK(enumerate_mu(F, 1, eis(F, {-3, 0, 1})).size() == 2);
    CHECK(enumerate_mu(F, 1, eis(F, {-3, 1})).size() == 1);
    auto E = eis(F, {-3, 0, 3, 0, 1});
    auto all = enumerate_mu(F, 3, E, 2);
    CHECK(all == enumerate_mu(F, 3, E, 1));
    for (const auto& A : all) {
        CHECK(is_mu_matrix(upper(A), E));
        CHECK(is_mu_matrix(lower(A), E));
        for (unsigned i = 0; i + 1 < 3; ++i)
            if (!A.a[i][i + 1].is_zero()) CHECK(3 * A.a[i][i + 1].valuation() >= A.l[i + 1]);
    }
}

TEST_CASE("model maps")
{
    const Fq& F = Fq::get(3);
    CHECK(model_map_exists(GMatrix(F, {1}), GMatrix(F, {0})));
    CHECK_FALSE(model_map_exists(GMatrix(F, {0}), GMatrix(F, {1})));
    auto E = eis(F, {-3, 0, 3, 0, 1});
    auto all = enumerate_mu(F, 2, E);
    for (const auto& A : all) {
        CHECK(model_map_exists(A, A));
        for (const auto& B : all)
            CHECK(model_map_exists(A, B) == includes(lattice_from_matrix(A), lattice_from_matrix(B)));
    }
}

TEST_CASE("tame congruences keep the membership conditions")
{
    const Fq& F = Fq::get(3);
    std::vector<long> c(12, 0);
    c[0] = -3;
    c[11] = 1;
    auto E = eis(F, c);
    MuParams3 P{3, 1, 0, LaurentPoly::constant(F, 1), LaurentPoly(F), LaurentPoly(F)};
    CHECK_FALSE(check_tame(P, E, 11).member_a);
    CHECK_FALSE(check_tame(P, E, 11).all());
    CHECK_FALSE(is_mu_matrix(P.to_matrix(F), E));
    int pass = 0;
    for (long l1 = 0; l1 <= 6; ++l1)
        for (long l2 = 0; l2 <= 6; ++l2)
            for (long l3 = 0; l3 <= 1; ++l3)
                for_each_candidate(F, {l1, l2, l3}, [&](const GMatrix& A) {
                    auto Q = MuParams3::from_matrix(A);
                    bool mu = is_mu_matrix(A, E);
                    CHECK(check_coro1(Q, E, 11).all() == mu);
                    CHECK(check_tame(Q, E, 11).all() == mu);
                    pass += mu;
                });
    CHECK(pass > 6);
}
