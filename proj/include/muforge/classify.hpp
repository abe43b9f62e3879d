#pragma once

#include <functional>
#include <vector>

#include "muforge/congruence.hpp"
#include "muforge/loop.hpp"

namespace muforge {

struct MuParams3 {
    long l1 = 0, l2 = 0, l3 = 0;
    LaurentPoly a12, a13, a23;

    GMatrix to_matrix(const Fq& F) const;
    static MuParams3 from_matrix(const GMatrix& A);
};

struct MuConditions {
    bool degrees = false;    // l_i >= 0, a_ij in k[u], deg a_ij < l_j
    bool t_matrix = false;   // U A / L A >= 0
    bool phi = false;        // phi(A) / A >= 0
    bool eisenstein = false; // (E(u) <> A) / phi(A) >= 0
    bool all() const { return degrees && t_matrix && phi && eisenstein; }
};

// Congruence ids: 0 a12 - u^{l1-l2} a23, 1 a12^p, 2 a23^p, 3 item (iii),
// 4 and 5 item (iv), 6 item (v).
struct Coro1Result {
    bool order = false, degrees = false;
    bool ii_a = false, ii_b = false, ii_c = false, iii = false, iv_a = false, iv_b = false, v = false;
    bool all() const { return order && degrees && ii_a && ii_b && ii_c && iii && iv_a && iv_b && v; }
};

// Congruence ids: 0 and 1 item (ii), 2 item (iii), 3 a12^p and 4 a23^p. The
// last two are the membership congruences the tame simplification keeps using.
struct TameResult {
    bool order = false, degrees = false, ii_a = false, ii_b = false, iii = false, member_a = false, member_b = false;
    bool all() const { return order && degrees && ii_a && ii_b && iii && member_a && member_b; }
};

bool is_T_matrix(const GMatrix& A);
bool is_distinguished(const GMatrix& A);
MuConditions mu_conditions(const GMatrix& A, const EisensteinDigits& E);
bool is_mu_matrix(const GMatrix& A, const EisensteinDigits& E);
Coro1Result check_coro1(const MuParams3& P, const EisensteinDigits& E, long e, const Mutation& mut = {});
// Throws std::invalid_argument when p divides e.
TameResult check_tame(const MuParams3& P, const EisensteinDigits& E, long e, const Mutation& mut = {});
bool model_map_exists(const GMatrix& A, const GMatrix& B);

// Polynomial number idx in base q with len coefficients, lowest degree first.
LaurentPoly poly_from_index(const Fq& F, unsigned long long idx, long len);
unsigned long long count_polys(const Fq& F, long len);

// Every matrix with diagonal exponents l and entries of degree < l_j, in
// lexicographic order of coefficient tuples.
void for_each_candidate(const Fq& F, const std::vector<long>& l, const std::function<void(const GMatrix&)>& f);
// All types l_1 >= ... >= l_n in [0, lmax], lexicographically.
std::vector<std::vector<long>> ordered_types(unsigned n, long lmax);

// mu-matrices of size n, in deterministic order; l-blocks are spread over jobs threads.
void enumerate_mu(const Fq& F, unsigned n, const EisensteinDigits& E, unsigned jobs,
                  const std::function<void(const GMatrix&)>& out);
std::vector<GMatrix> enumerate_mu(const Fq& F, unsigned n, const EisensteinDigits& E, unsigned jobs = 1);

// Runs f(i) for i in [0, count) on up to jobs threads.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& f);

}  // namespace muforge
