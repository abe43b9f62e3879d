#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "muforge/classify.hpp"
#include "muforge/congruence.hpp"
#include "muforge/loop.hpp"

namespace muforge {

struct SuiteResult {
    explicit SuiteResult(std::string n = {}) : name(std::move(n)) {}
    std::string name;
    long cases = 0;
    long failures = 0;
    long passing = 0;            // parameter sets accepted, for grid suites
    std::string counterexample;  // first failure
    bool ok() const { return failures == 0 && cases > 0; }
    void fail(const std::string& what);
};

LaurentPoly random_poly(const Fq& F, std::mt19937_64& rng, long lo, long hi);
// Random element of G_n(k[u]) with 0 <= l_i <= lmax and entries of degree <= dmax.
GMatrix random_gmatrix(const Fq& F, std::mt19937_64& rng, unsigned n, long lmax = 3, long dmax = 3);
// Distinguished matrix of a random positive lattice.
GMatrix random_distinguished(const Fq& F, std::mt19937_64& rng, unsigned n);

// Ghost identities for random Witt vectors of length <= 5 over Z and over
// F_3[u] through its lift Z[u], the sum polynomials S_1, S_2 and the vector of p.
SuiteResult witt_suite(std::uint64_t seed, long iterations);
// Division round trips, identity laws, U and L as homomorphisms, their
// commutation with phi and E(u), and the n = 3 associator, over F_3[u].
SuiteResult loop_suite(std::uint64_t seed, long iterations);
// Lattice and matrix round trips, volume, M[i] and M(i), inclusion, over F_3 and F_9.
SuiteResult lattice_suite(std::uint64_t seed, long iterations);

struct GridOptions {
    unsigned jobs = 1;
    Mutation mut;
    // Compare against the lattice oracle (classify) or verify_integrality (Kummer).
    bool oracle = true;
};

// Full grid l in [0, lmax + 1]^n: is_mu_matrix, check_coro1 (n = 3) and the
// lattice oracle agree; check_tame agrees when p does not divide e.
SuiteResult classify_suite(unsigned long p, const std::vector<mpz_class>& E, unsigned n, const GridOptions& opt = {});
// check_coro1 with opt.mut against is_mu_matrix, n = 3.
SuiteResult coro1_control(unsigned long p, const std::vector<mpz_class>& E, const Mutation& mut, unsigned jobs = 1);
// check_tame with mut against check_coro1, n = 3; types with l3 > max_l3 are
// skipped when max_l3 >= 0.
SuiteResult tame_control(unsigned long p, const std::vector<mpz_class>& E, const Mutation& mut, unsigned jobs = 1,
                         long max_l3 = -1);

// check_kummer_n2 against verify_integrality over the full grid, and the
// isogeny pair (A, F(A)) for every accepted A.
SuiteResult kummer_suite_n2(unsigned long p, const std::vector<mpz_class>& E, const GridOptions& opt = {});
// Same for n = 3 on types with l1 >= p l3.
SuiteResult kummer_suite_n3(unsigned long p, const std::vector<mpz_class>& E, const GridOptions& opt = {});

std::vector<mpz_class> to_mpz(const std::vector<long>& c);

}  // namespace muforge
