#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "muforge/congruence.hpp"
#include "muforge/okring.hpp"

namespace muforge {

struct OutOfScope : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using WMatrix = std::vector<std::vector<OKWitt>>;

// Upper triangular matrix over W(O_K / pi^N) with diagonal [pi^{l_i}].
struct SSMatrix {
    const OKContext* ctx = nullptr;
    std::vector<long> l;
    WMatrix a;

    SSMatrix() = default;
    // Diagonal [pi^{l_i}], zero elsewhere, entries of the given Witt length.
    SSMatrix(const OKContext& c, std::vector<long> l, std::size_t len);
    // Teichmueller entries [a_ij] for i < j, indexed a[i][j].
    static SSMatrix teichmuller(const OKContext& c, std::vector<long> l, const std::vector<std::vector<OKElem>>& a,
                                std::size_t len);

    unsigned n() const { return (unsigned)l.size(); }
    std::size_t length() const;
    const OKWitt& at(unsigned i, unsigned j) const { return a[i][j]; }
    OKWitt& at(unsigned i, unsigned j) { return a[i][j]; }
    OKWittRing ring() const { return OKWittRing(*ctx); }
};

// Witt length n + 2 for entries of an n x n matrix.
std::size_t default_witt_length(unsigned n);
// Value of MUFORGE_PRECISION_SLACK, 0 when unset.
long precision_slack();
// p (l_1 + ... + l_n) + e + 2 plus the slack.
long default_pi_precision(unsigned long p, long e, const std::vector<long>& l);

// Entry (i, j) is sum_k T_{m_ik}(n_kj).
WMatrix star_T(const OKWittRing& R, const WMatrix& M, const WMatrix& N);
WMatrix identity_wmatrix(const OKWittRing& R, unsigned n, std::size_t len);
WMatrix frobenius(const OKWittRing& R, const WMatrix& M);
SSMatrix frobenius(const SSMatrix& A);

// Solves C = Q *_T D for Q, where D is upper triangular with diagonal [pi^{m_j}]
// and off-diagonal entries d. Throws NotDivisible naming the failing entry when
// Q is not positive, PrecisionShortfall when a division cannot be decided.
WMatrix rdiv_T(const OKWittRing& R, const WMatrix& C, const WMatrix& d, const std::vector<long>& m);
WMatrix rdiv_T(const WMatrix& C, const SSMatrix& D);
// Empty when not positive; PrecisionShortfall still propagates.
std::optional<WMatrix> try_rdiv_T(const WMatrix& C, const SSMatrix& D);

// F(A) / A >= 0.
bool in_Mn(const SSMatrix& A);
// A / A' is positive and unitriangular.
bool equiv(const SSMatrix& A, const SSMatrix& Ap);

// Congruence ids: 0 a12^p, 1 item (iii).
struct KummerN2Result {
    bool order = false, ii = false, iii = false;
    bool all() const { return order && ii && iii; }
};
// Congruence ids: 0 a12^p, 1 a23^p, 2 pi^{l2} a13^p - a23 a12^p, 3 and 4 the
// first two finiteness congruences, 5 the third.
struct KummerN3Result {
    bool order = false, m12 = false, m23 = false, m13 = false, f12 = false, f23 = false, f13 = false;
    bool all() const { return order && m12 && m23 && m13 && f12 && f23 && f13; }
};

KummerN2Result check_kummer_n2(long l1, long l2, const OKElem& a12, const Mutation& mut = {});
// Throws OutOfScope when l1 < p l3.
KummerN3Result check_kummer_n3(long l1, long l2, long l3, const OKElem& a12, const OKElem& a13, const OKElem& a23,
                               const Mutation& mut = {});

struct IsogenyResult {
    bool ok = false;
    std::string failure;
};
// in_Mn(A), in_Mn(B) and (pA - P U A) / B >= 0. B must have diagonal [pi^{p l_i}].
IsogenyResult check_isogeny_pair(const SSMatrix& A, const SSMatrix& B);

// Coefficients of E_p(U, Lambda, T) up to T^D: coefficient of T^m is
// sum_j c[m][j] U^j Lambda^{m-j}, each c[m][j] p-integral.
class DeformedExp {
public:
    static const DeformedExp& get(unsigned long p, long D);
    unsigned long p() const { return p_; }
    long degree() const { return (long)c_.size() - 1; }
    const std::vector<mpq_class>& coeff(long m) const { return c_[m]; }
    // Coefficients of E_p(a, pi^l, T) in O_K / pi^N up to T^D.
    std::vector<OKElem> specialize(const OKElem& a, long l, long D) const;

private:
    DeformedExp(unsigned long p, long D);
    unsigned long p_;
    std::vector<std::vector<mpq_class>> c_;
};

OKElem ok_from_rational(const OKContext& ctx, const mpq_class& q);

// Coefficients of E_p(a, pi^l, T) to T^D.
std::vector<OKElem> deformed_exp(const OKElem& a, long l, long D);
// Coefficients of E_p(a, pi^l, T) = prod_k E_p(a_k, pi^{l p^k}, T^{p^k}) to T^D.
std::vector<OKElem> deformed_exp(const OKWitt& a, long l, long D);

// Polynomial in T_1, T_2, T_3 over O_K / pi^N; every coefficient is known
// modulo pi^prec.
struct OKPoly {
    using Mono = std::array<int, 3>;
    const OKContext* ctx = nullptr;
    long prec = 0;
    std::map<Mono, OKElem> t;

    OKPoly() = default;
    explicit OKPoly(const OKContext& c) : ctx(&c), prec(c.N()) {}
    static OKPoly constant(const OKElem& c);
    static OKPoly monomial(const OKElem& c, Mono m);

    bool is_zero() const { return t.empty(); }
    int degree(int var) const;
    long min_valuation() const;
    void normalize();
    std::string to_string() const;
};

OKPoly operator+(const OKPoly& a, const OKPoly& b);
OKPoly operator-(const OKPoly& a, const OKPoly& b);
OKPoly operator*(const OKPoly& a, const OKPoly& b);
OKPoly poly_pow(const OKPoly& a, unsigned long k);
// Reduction modulo pi^m.
OKPoly poly_truncate(OKPoly a, long m);
// Same digits at full precision.
OKPoly poly_lift(OKPoly a);
// Throws NotDivisible or PrecisionShortfall.
OKPoly poly_div_pi(const OKPoly& a, long m);
// Remainder modulo f, monic of degree d in variable var.
OKPoly poly_reduce(OKPoly a, const OKPoly& f, int var);
// Substitutes a polynomial s for T_var in a univariate series c_0 + c_1 T + ...
OKPoly poly_compose(const std::vector<OKElem>& c, const OKPoly& s);

struct HopfPresentation {
    std::vector<long> l;
    // D_1, D_2 when the corresponding l are positive.
    std::vector<OKPoly> D;
    // Defining equations, inverses cleared.
    std::vector<OKPoly> equations;
    // Each equation has integral coefficients after reduction by the previous ones.
    bool integral = false;
    std::string failure;
    std::string to_string() const;
};

// Entries of A must have components of positive valuation on the relevant
// levels; n <= 3.
HopfPresentation emit_hopf(const SSMatrix& A);
// Independent finite-flatness oracle: in_Mn and integrality of the Hopf
// equations modulo the lower ones.
bool verify_integrality(const SSMatrix& A);

}  // namespace muforge
