#include "doctest.h"

#include <random>

#include "muforge/dictionary.hpp"

using namespace muforge;

namespace {

std::vector<mpz_class> poly(std::vector<long> c)
{
    std::vector<mpz_class> z;
    for (long x : c) z.emplace_back(x);
    return z;
}

LaurentPoly random_poly(const Fq& F, std::mt19937_64& rng, long len)
{
    std::uniform_int_distribution<unsigned> d(0, F.q() - 1);
    std::vector<fq_t> c;
    for (long i = 0; i < len; ++i) c.push_back(d(rng));
    return LaurentPoly(F, 0, c);
}

}  // namespace

TEST_CASE("star map on monomials and zero")
{
    DictContext D = DictContext::make(3, poly({-3, 0, 1}), 2);
    const OKContext& C = *D.ok;
    CHECK(star_map(C, LaurentPoly(*D.F)) == C.zero());
    for (long l = 0; l < 6; ++l) CHECK(star_map(C, LaurentPoly::monomial(*D.F, l)) == C.pi_pow(l));
    CHECK(star_map(C, LaurentPoly::constant(*D.F, 2)) == C.teich(2));
}

TEST_CASE("star map is an isometry and respects u-shifts")
{
    std::mt19937_64 rng(7);
    for (auto E : {poly({-3, 0, 1}), poly({-3, 0, 3, 0, 1}), poly({3, 3, 0, 1})}) {
        DictContext D = DictContext::make(3, E, 2);
        const OKContext& C = *D.ok;
        for (int it = 0; it < 200; ++it) {
            LaurentPoly f = random_poly(*D.F, rng, 6), g = random_poly(*D.F, rng, 6);
            if (it % 3 == 0) g = f + LaurentPoly::monomial(*D.F, it % 6) * random_poly(*D.F, rng, 2);
            long vu = (f - g).is_zero() ? C.N() : std::min((f - g).valuation(), C.N());
            long vp = std::min(valuation(ok_sub(star_map(C, f), star_map(C, g))), C.N());
            CHECK(vu == vp);
            long k = it % 4;
            LaurentPoly s = LaurentPoly::monomial(*D.F, k) * f;
            CHECK(star_map(C, s) == ok_mul(C.pi_pow(k), star_map(C, f)));
            CHECK(teich_expand(*D.F, star_map(C, f), 6) == f);
        }
    }
}

TEST_CASE("pi^e + p [E_1](pi) vanishes mod p^2")
{
    for (auto E : {poly({-3, 0, 1}), poly({-3, 0, 0, 1}), poly({-3, 0, 3, 0, 1}), poly({-3, 0, 0, 0, 0, 0, 1}),
                   poly({6, 3, 1}), poly({-5, 0, 0, 0, 1})}) {
        unsigned long p = E[0] % 5 == 0 ? 5 : 3;
        DictContext D = DictContext::make(p, E, 2);
        CHECK(check_pi_e_identity(D));
    }
}

TEST_CASE("n = 2 comparison is a bijection")
{
    for (auto E : {poly({-3, 0, 1}), poly({-3, 0, 0, 1}), poly({-3, 0, 3, 0, 1})}) {
        DictContext D = DictContext::make(3, E, 2);
        DictOptions opt;
        opt.oracle = true;
        DictReport r = compare_n2(D, opt);
        INFO((r.mismatches.empty() ? std::string() : r.mismatches[0]));
        CHECK(r.matched);
        CHECK(r.side_a_count == r.side_b_count);
        CHECK(r.side_a_count > 0);
        CHECK(r.untested == 0);
    }
}

TEST_CASE("n = 2 l-only models")
{
    DictContext D = DictContext::make(3, poly({-3, 0, 3, 0, 1}), 2);
    for (long l1 = 0; l1 <= 3; ++l1)
        for (long l2 = 0; l2 <= 3; ++l2) {
            MuParams3 P{l1, l2, 0, LaurentPoly(*D.F), LaurentPoly(*D.F), LaurentPoly(*D.F)};
            CHECK(check_coro1(P, D.Ed, D.e).all() == check_kummer_n2(l1, l2, D.ok->zero()).all());
        }
}

TEST_CASE("n = 2 order preservation")
{
    for (auto E : {poly({-3, 0, 1}), poly({-3, 0, 3, 0, 1})}) {
        DictContext D = DictContext::make(3, E, 2);
        OrderReport r = check_order_preservation_n2(D);
        INFO((r.mismatches.empty() ? std::string() : r.mismatches[0]));
        CHECK(r.pairs > 0);
        CHECK(r.mismatches.empty());
    }
}

TEST_CASE("n = 3 comparison under the gate")
{
    DictContext D = DictContext::make(3, poly({-3, 0, 0, 0, 0, 0, 1}), 3);
    DictReport r = compare_n3(D);
    INFO((r.mismatches.empty() ? std::string() : r.mismatches[0]));
    CHECK(r.matched);
    CHECK(r.gate == "l1>=p*l3");
    CHECK(r.untested > 0);
    CHECK(r.condition_c_redundant);
    CHECK(r.condition_c_checked > 0);
}

TEST_CASE("mutated congruences are detected")
{
    DictContext D = DictContext::make(3, poly({-3, 0, 3, 0, 1}), 2);
    DictOptions opt;
    opt.ss.id = 1;
    opt.ss.delta = 1;
    CHECK_FALSE(compare_n2(D, opt).matched);
    opt = {};
    opt.bk.id = 4;
    opt.bk.delta = -1;
    CHECK_FALSE(compare_n2(D, opt).matched);
}
