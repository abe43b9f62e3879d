#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "muforge/classify.hpp"
#include "muforge/congruence.hpp"
#include "muforge/kummer.hpp"
#include "muforge/loop.hpp"

namespace muforge {

// Both sides of the comparison built from one Eisenstein polynomial, residue
// field F_p.
struct DictContext {
    unsigned long p = 0;
    long e = 0;
    std::vector<mpz_class> E_coeffs;
    const Fq* F = nullptr;
    EisensteinDigits Ed;
    std::shared_ptr<const OKContext> ok;
    std::size_t witt_length = 0;

    // pi-precision defaults to the one needed for types up to lmax + 1 in
    // every slot, lmax = floor(e / (p - 1)).
    static DictContext make(unsigned long p, std::vector<mpz_class> E_coeffs, unsigned n = 3, long pi_precision = 0,
                            std::size_t witt_length = 0);
    long lmax() const { return e / (long)(p - 1); }
};

// c* = sum [c_i] pi^i for a polynomial c over F_p, reduced modulo pi^precision.
OKElem star_map(const OKContext& ctx, const LaurentPoly& c, long precision);
OKElem star_map(const OKContext& ctx, const LaurentPoly& c);
// The polynomial c of degree < l with c* = a mod pi^l.
LaurentPoly teich_expand(const Fq& F, const OKElem& a, long l);

struct DictOptions {
    unsigned jobs = 1;
    Mutation bk;
    Mutation ss;
    // Also re-derive both sides with is_mu_matrix and verify_integrality.
    bool oracle = false;
};

struct DictReport {
    unsigned n = 0;
    long side_a_count = 0;  // Breuil-Kisin parameter sets passing
    long side_b_count = 0;  // Sekiguchi-Suwa parameter sets passing
    long grid_size = 0;
    long untested = 0;      // parameter sets outside the gate
    bool matched = false;
    std::vector<std::string> mismatches;
    std::string gate;
    // n = 3: condition C never removes a candidate passing the others.
    long condition_c_checked = 0;
    bool condition_c_redundant = true;
};

DictReport compare_n2(const DictContext& ctx, const DictOptions& opt = {});
// Types with l1 < p l3 are counted as untested.
DictReport compare_n3(const DictContext& ctx, const DictOptions& opt = {});

// pi^e + p [E_1](pi) = 0 mod p^2 in O_K.
bool check_pi_e_identity(const DictContext& ctx);

struct OrderReport {
    long pairs = 0;
    std::vector<std::string> mismatches;
};
// For passing n = 2 pairs: A / A' >= 0 iff A* / A'* >= 0.
OrderReport check_order_preservation_n2(const DictContext& ctx);

// Render a parameter set as text, e.g. "l=(2,1) a12=1+u".
std::string describe(const std::vector<long>& l, const std::vector<LaurentPoly>& a);

}  // namespace muforge
