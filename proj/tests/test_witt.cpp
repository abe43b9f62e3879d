#include "doctest.h"

#include <random>

#include "muforge/witt.hpp"
#include "muforge/witt_rings.hpp"

using namespace muforge;

namespace {

using WZ = WittVector<IntegerRing>;

WZ wz(std::initializer_list<long> v)
{
    std::vector<mpz_class> c;
    for (long x : v) c.emplace_back(x);
    return WZ(c);
}

WZ random_wz(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<long> d(-20, 20);
    std::vector<mpz_class> c(n);
    for (auto& x : c) x = d(rng);
    return WZ(c);
}

}  // namespace

TEST_CASE("ghost components")
{
    IntegerRing Z(3);
    CHECK(witt::ghost(Z, wz({7}), 0) == 7);
    CHECK(witt::ghost(Z, wz({1, 1}), 1) == 4);
    CHECK(witt::ghost(Z, wz({2, 5}), 1) == 8 + 15);
    CHECK(witt::ghost(Z, wz({2, 5, 1}), 2) == 512 + 3 * 125 + 9);
}

TEST_CASE("witt addition over Z")
{
    IntegerRing Z(3);
    CHECK(witt::equal(Z, witt::add(Z, wz({1, 0}), wz({1, 0})), wz({2, -2})));
    CHECK(witt::equal(Z, witt::add(Z, wz({5, 0}), wz({-5, 0})), wz({0, 0})));
    auto a = wz({3, -4, 7});
    CHECK(witt::equal(Z, witt::add(Z, a, witt::zero(Z, 3)), a));
    CHECK(witt::equal(Z, witt::add(Z, a, witt::neg(Z, a)), witt::zero(Z, 3)));
}

TEST_CASE("witt multiplication over Z")
{
    IntegerRing Z(3);
    auto a = wz({3, -4, 7});
    CHECK(witt::equal(Z, witt::mul(Z, a, witt::teichmuller(Z, mpz_class(1), 3)), a));
    // V(1)^2 = V(FV 1) = V(p)
    CHECK(witt::equal(Z, witt::mul(Z, wz({0, 1}), wz({0, 1})), wz({0, 3})));
    auto x = witt::teichmuller(Z, mpz_class(5), 4), y = witt::teichmuller(Z, mpz_class(-7), 4);
    CHECK(witt::equal(Z, witt::mul(Z, x, y), witt::teichmuller(Z, mpz_class(-35), 4)));
}

TEST_CASE("ghost map is a ring homomorphism")
{
    std::mt19937_64 rng(11);
    for (unsigned p : {3u, 5u}) {
        IntegerRing Z(p);
        for (int it = 0; it < 200; ++it) {
            auto a = random_wz(rng, 4), b = random_wz(rng, 4);
            auto s = witt::add(Z, a, b), m = witt::mul(Z, a, b);
            auto ga = witt::ghosts(Z, a, 4), gb = witt::ghosts(Z, b, 4);
            auto gs = witt::ghosts(Z, s, 4), gm = witt::ghosts(Z, m, 4);
            for (int r = 0; r < 4; ++r) {
                CHECK(gs[r] == ga[r] + gb[r]);
                CHECK(gm[r] == ga[r] * gb[r]);
            }
        }
    }
}

TEST_CASE("verschiebung and frobenius")
{
    IntegerRing Z(3);
    CHECK(witt::equal(Z, witt::verschiebung(Z, wz({4, 9})), wz({0, 4, 9})));
    auto t = witt::teichmuller(Z, mpz_class(2), 3);
    CHECK(witt::equal(Z, witt::frobenius(Z, t), witt::teichmuller(Z, mpz_class(8), 2)));

    std::mt19937_64 rng(5);
    for (int it = 0; it < 50; ++it) {
        auto a = random_wz(rng, 3);
        auto fv = witt::frobenius(Z, witt::verschiebung(Z, a));
        CHECK(witt::equal(Z, fv, witt::mul(Z, witt::from_int(Z, 3, 3), a)));
    }
}

TEST_CASE("witt vector of p")
{
    for (unsigned long p : {3ul, 5ul, 7ul}) {
        IntegerRing Z(p);
        auto w = witt::from_int(Z, mpz_class(p), 5);
        mpz_class pp;
        mpz_ui_pow_ui(pp.get_mpz_t(), p, p - 1);
        CHECK(w[0] == p);
        CHECK(w[1] == 1 - pp);
        for (int i = 2; i < 5; ++i) {
            mpz_class q = w[i];
            CHECK(q != 0);
            unsigned long v = mpz_remove(q.get_mpz_t(), q.get_mpz_t(), mpz_class(p).get_mpz_t());
            CHECK(v == p - 1);
            CHECK(mpz_fdiv_ui(q.get_mpz_t(), p) == 1);
        }
    }
}

TEST_CASE("t operator")
{
    IntegerRing Z(3);
    auto x = wz({2, -1, 5});
    CHECK(witt::equal(Z, witt::t_operator(Z, witt::teichmuller(Z, mpz_class(1), 3), x), x));
    auto a = witt::teichmuller(Z, mpz_class(4), 3);
    CHECK(witt::equal(Z, witt::t_operator(Z, a, x), witt::mul(Z, a, x)));
    auto b = wz({3, 7, -2});
    auto tx = witt::t_operator(Z, b, witt::teichmuller(Z, mpz_class(5), 3));
    CHECK(witt::equal(Z, tx, wz({15, 35, -10})));

    std::mt19937_64 rng(3);
    for (int it = 0; it < 50; ++it) {
        auto c = random_wz(rng, 3), y = random_wz(rng, 3), z = random_wz(rng, 3);
        auto lhs = witt::t_operator(Z, c, witt::add(Z, y, z));
        auto rhs = witt::add(Z, witt::t_operator(Z, c, y), witt::t_operator(Z, c, z));
        CHECK(witt::equal(Z, lhs, rhs));
    }
}

TEST_CASE("finite field plugins reduce compatibly")
{
    const Fq& F9 = Fq::get(3, 2);
    FqRing R(F9);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<unsigned> d(0, 8);
    for (int it = 0; it < 100; ++it) {
        fq_t a = d(rng), b = d(rng);
        CHECK(R.reduce(R.lmul(R.lift(a), R.lift(b))) == F9.mul(a, b));
        CHECK(R.reduce(R.ladd(R.lift(a), R.lift(b))) == F9.add(a, b));
        auto x = witt::teichmuller(R, a, 3), y = witt::teichmuller(R, b, 3);
        CHECK(witt::equal(R, witt::mul(R, x, y), witt::teichmuller(R, F9.mul(a, b), 3)));
    }
    // In characteristic p, F is componentwise p-th power and V F = p.
    for (int it = 0; it < 30; ++it) {
        WittVector<FqRing> a({(fq_t)d(rng), (fq_t)d(rng), (fq_t)d(rng)});
        auto fa = witt::frobenius(R, a);
        for (int i = 0; i < 2; ++i) CHECK(fa[i] == F9.frob(a[i]));
        auto pa = witt::mul(R, witt::from_int(R, 3, 3), a);
        CHECK(witt::equal(R, pa, witt::resized(R, witt::verschiebung(R, witt::frobenius(R, a)), 3)));
    }
}

TEST_CASE("sum over F_3 matches sigma_1")
{
    FqRing R(Fq::get(3));
    auto s = witt::add(R, WittVector<FqRing>({1, 0}), WittVector<FqRing>({1, 0}));
    CHECK(s[0] == 2);
    CHECK(s[1] == 1);
    auto v = witt::mul(R, WittVector<FqRing>({0, 1}), WittVector<FqRing>({0, 1}));
    CHECK(v[0] == 0);
    CHECK(v[1] == 0);
}
