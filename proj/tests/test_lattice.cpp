#include "doctest.h"

#include "muforge/lattice.hpp"
#include "support/random.hpp"

using namespace muforge;
using muforge::testing::random_gmatrix;
using muforge::testing::random_poly;

namespace {

LaurentPoly mono(const Fq& F, long d, fq_t c = 1) { return LaurentPoly::monomial(F, d, c); }

bool same_lattice(const Lattice& a, const Lattice& b) { return includes(a, b) && includes(b, a); }

EisensteinDigits eis(const Fq& F, std::vector<long> c, unsigned nd)
{
    std::vector<mpz_class> z;
    for (long x : c) z.emplace_back(x);
    return EisensteinDigits::from_coeffs(F, z, nd);
}

}  // namespace

TEST_CASE("standard lattices")
{
    const Fq& F = Fq::get(3);
    for (unsigned n = 1; n <= 3; ++n) {
        auto I = GMatrix::identity(F, n);
        auto L = lattice_from_matrix(I);
        CHECK(distinguished_matrix(L) == I);
        CHECK(volume(L) == 0);
        auto U = lattice_from_matrix(GMatrix(F, std::vector<long>(n, 1)));
        CHECK(volume(U) == (long)n);
        CHECK_FALSE(contains(U, PadicElem(std::vector<LaurentPoly>(n, LaurentPoly::constant(F, 1)))));
        CHECK(includes(U, L));
        CHECK_FALSE(includes(L, U));
    }
}

TEST_CASE("echelon form of explicit generators")
{
    const Fq& F = Fq::get(3);
    LaurentPoly z(F);
    PadicElem g1({mono(F, 2), mono(F, 1)}), g2({z, mono(F, 1)}), g3({z, mono(F, 3)});
    Lattice L(F, 2, {g1, g2, g3});
    auto e = echelonize(L);
    CHECK(e[0] == g1);
    CHECK(e[1] == g2);
    CHECK(same_lattice(L, Lattice(F, 2, {g1, g2})));

    GMatrix A(F, {2, 1});
    A.a[0][1] = mono(F, 3);
    auto D = distinguished_matrix(lattice_from_matrix(A));
    CHECK(D.l == std::vector<long>{2, 1});
    CHECK(D.a[0][1].is_zero());

    CHECK_THROWS_AS(Lattice(F, 2, {g2, g3}), NotALattice);
}

TEST_CASE("distinguished matrices")
{
    std::mt19937_64 rng(1);
    for (unsigned m : {1u, 2u}) {
        const Fq& F = Fq::get(3, m);
        for (unsigned n = 1; n <= 3; ++n)
            for (int it = 0; it < 20; ++it) {
                auto A = random_gmatrix(F, rng, n, 3, 4);
                auto L = lattice_from_matrix(A);
                auto D = distinguished_matrix(L);
                for (unsigned i = 0; i + 1 < n; ++i) CHECK(D.l[i] >= D.l[i + 1]);
                for (unsigned i = 0; i < n; ++i)
                    for (unsigned j = i + 1; j < n; ++j)
                        CHECK((D.a[i][j].is_zero() || D.a[i][j].max_degree() < D.l[j]));
                CHECK(same_lattice(L, lattice_from_matrix(D)));
                CHECK(distinguished_matrix(lattice_from_matrix(D)) == D);
                CHECK(volume(L) == volume(lattice_from_matrix(D)));
                CHECK(is_T_basis(echelonize(L)));
            }
    }
}

TEST_CASE("T-matrices and the loop order")
{
    const Fq& F = Fq::get(3);
    std::mt19937_64 rng(2);
    int tmat = 0;
    for (unsigned n = 2; n <= 3; ++n)
        for (int it = 0; it < 60; ++it) {
            auto A = random_gmatrix(F, rng, n, 3, 2);
            std::vector<PadicElem> rows;
            for (unsigned i = 0; i < n; ++i) rows.push_back(A.row(i));
            bool t = is_positive(rdiv(upper(A), lower(A)));
            CHECK(is_T_basis(rows) == t);
            tmat += t;
        }
    CHECK(tmat > 0);

    for (unsigned n = 1; n <= 3; ++n)
        for (int it = 0; it < 30; ++it) {
            auto A = random_distinguished(F, rng, n), B = random_distinguished(F, rng, n);
            auto LA = lattice_from_matrix(A), LB = lattice_from_matrix(B);
            CHECK(includes(LA, LB) == succ(A, B));
            CHECK(includes(LA, LA));
            long s = 0;
            for (long x : A.l) s += x;
            CHECK(volume(LA) == s);
            CHECK(volume_rel(LA, LB) == volume(LA) - volume(LB));
        }
}

TEST_CASE("kernels and images of p")
{
    const Fq& F = Fq::get(3);
    std::mt19937_64 rng(3);
    for (unsigned n = 1; n <= 3; ++n)
        for (int it = 0; it < 20; ++it) {
            auto A = random_distinguished(F, rng, n);
            auto L = lattice_from_matrix(A);
            CHECK(same_lattice(kernel_i(L, 1), L));
            CHECK(kernel_i(L, n + 1).n() == 0);
            GMatrix Lo = A, Up = A;
            for (unsigned i = 2; i <= n; ++i) {
                Lo = lower(Lo);
                Up = upper(Up);
                CHECK(same_lattice(kernel_i(L, i), lattice_from_matrix(Lo)));
                CHECK(same_lattice(image_i(L, i), lattice_from_matrix(Up)));
            }
        }
}

TEST_CASE("positivity of lattices")
{
    const Fq& F = Fq::get(3);
    std::mt19937_64 rng(4);
    for (int it = 0; it < 40; ++it) {
        auto A = random_gmatrix(F, rng, 2, 3, 3);
        if (it % 2) A.a[0][1] = A.a[0][1] + random_poly(F, rng, -2, -1);
        if (it % 3 == 0) A.l[1] -= 1;
        auto L = lattice_from_matrix(A);
        auto W = lattice_from_matrix(GMatrix::identity(F, 2));
        CHECK(includes(L, W) == is_positive(distinguished_matrix(L)));
    }
}

TEST_CASE("mu-lattices")
{
    const Fq& F = Fq::get(3);
    auto E = eis(F, {-3, 0, 1}, 3);
    for (unsigned n = 1; n <= 3; ++n)
        CHECK(is_mu_lattice(lattice_from_matrix(GMatrix::identity(F, n)), E));
    for (long e : {1L, 2L, 3L, 4L}) {
        std::vector<long> c(e + 1, 0);
        c[0] = -3;
        c[e] = 1;
        auto Ee = eis(F, c, 1);
        for (long l = 0; l <= 4; ++l)
            CHECK(is_mu_lattice(lattice_from_matrix(GMatrix(F, {l})), Ee) == (e >= 2 * l));
    }
    GMatrix neg(F, {-1});
    CHECK_FALSE(is_mu_lattice(lattice_from_matrix(neg), E));
}
