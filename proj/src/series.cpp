#include "muforge/series.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace muforge {

namespace {

const Fq& field_of(const std::vector<LaurentPoly>& xs)
{
    for (const auto& x : xs)
        if (x.field()) return *x.field();
    throw std::invalid_argument("series: cannot infer the residue field of all-zero input");
}

std::optional<long> common_precision(const std::vector<LaurentPoly>& xs)
{
    std::optional<long> r;
    for (const auto& x : xs)
        if (x.precision()) r = r ? std::min(*r, *x.precision()) : *x.precision();
    return r;
}

}  // namespace

PadicElem PadicElem::zero(const Fq& F, unsigned n)
{
    return PadicElem(std::vector<LaurentPoly>(n, LaurentPoly(F)));
}

bool PadicElem::is_zero() const
{
    return std::all_of(digits.begin(), digits.end(), [](const LaurentPoly& d) { return d.is_zero(); });
}

GRSeries to_series(const GaloisRing& R, const PadicElem& x)
{
    GRSeries s;
    for (unsigned i = 0; i < x.n() && i < R.n(); ++i)
        s = gs_add(R, s, gs_mul_p(R, gs_teich(R, x.digits[i]), i));
    return s;
}

PadicElem from_series(const GaloisRing& R, const GRSeries& s)
{
    PadicElem r;
    for (unsigned i = 0; i < R.n(); ++i) r.digits.push_back(gs_digit(R, s, i));
    return r;
}

PadicElem padic_add(const PadicElem& a, const PadicElem& b)
{
    const Fq& F = field_of(a.digits.empty() ? b.digits : a.digits);
    const auto& R = GaloisRing::get(F, std::min(a.n(), b.n()));
    return from_series(R, gs_add(R, to_series(R, a), to_series(R, b)));
}

PadicElem padic_mul(const PadicElem& a, const PadicElem& b)
{
    std::vector<LaurentPoly> all = a.digits;
    all.insert(all.end(), b.digits.begin(), b.digits.end());
    const Fq& F = field_of(all);
    const auto& R = GaloisRing::get(F, std::min(a.n(), b.n()));
    return from_series(R, gs_mul(R, to_series(R, a), to_series(R, b)));
}

LaurentPoly series_frobenius(const LaurentPoly& a) { return a.frobenius(); }

PadicElem padic_frobenius(const PadicElem& x)
{
    PadicElem r = x;
    for (auto& d : r.digits) d = d.frobenius();
    return r;
}

LaurentPoly s_fun(unsigned i, const std::vector<LaurentPoly>& args)
{
    const Fq& F = field_of(args);
    const auto& R = GaloisRing::get(F, i + 1);
    GRSeries s;
    for (const auto& a : args) s = gs_add(R, s, gs_teich(R, a));
    LaurentPoly r = gs_digit(R, s, i);
    if (auto P = common_precision(args)) r = r.truncated(*P);
    return r;
}

LaurentPoly p_fun(unsigned i, const std::vector<LaurentPoly>& args)
{
    const Fq& F = field_of(args);
    const auto& R = GaloisRing::get(F, i + 1);
    GRSeries s;
    s.lo = 0;
    s.c = {R.from_int(1)};
    for (const auto& a : args) s = gs_mul(R, s, gs_teich(R, a));
    LaurentPoly r = gs_digit(R, s, i);
    // a factor known mod u^P perturbs the product by u^(P + val(others))
    std::optional<long> prec;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (!args[k].precision()) continue;
        long v = *args[k].precision();
        for (std::size_t j = 0; j < args.size(); ++j)
            if (j != k) v += args[j].is_zero() ? *args[k].precision() : args[j].valuation();
        prec = prec ? std::min(*prec, v) : v;
    }
    if (prec) r = r.truncated(*prec);
    return r;
}

std::vector<std::vector<LaurentPoly>> rho(const std::vector<std::vector<PadicElem>>& M)
{
    std::vector<std::vector<LaurentPoly>> out;
    for (const auto& row : M) {
        std::vector<LaurentPoly> flat;
        for (const auto& e : row) flat.insert(flat.end(), e.digits.begin(), e.digits.end());
        const Fq& F = field_of(flat);
        unsigned n = row.size();
        const auto& R = GaloisRing::get(F, n);
        GRSeries s;
        for (unsigned j = 0; j < n; ++j) s = gs_add(R, s, gs_mul_p(R, to_series(R, row[j]), j));
        out.push_back(from_series(R, s).digits);
    }
    return out;
}

std::vector<unsigned> teich_digits(unsigned long p, const mpz_class& c, unsigned count)
{
    std::vector<unsigned> out;
    if (count == 0) return out;
    mpz_class mod, x, t, e;
    mpz_ui_pow_ui(mod.get_mpz_t(), p, count);
    mpz_ui_pow_ui(e.get_mpz_t(), p, count - 1);
    mpz_fdiv_r(x.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
    for (unsigned i = 0; i < count; ++i) {
        unsigned long d = mpz_fdiv_ui(x.get_mpz_t(), p);
        out.push_back((unsigned)d);
        // omega(d) = d^{p^{count-1}} is the Teichmueller representative mod p^count
        mpz_class dd = d;
        mpz_powm(t.get_mpz_t(), dd.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
        x -= t;
        mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    }
    return out;
}

void validate_eisenstein(unsigned long p, const std::vector<mpz_class>& coeffs)
{
    if (coeffs.size() < 2) throw std::invalid_argument("Eisenstein polynomial must have degree >= 1");
    if (coeffs.back() != 1) throw std::invalid_argument("Eisenstein polynomial must be monic");
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i)
        if (mpz_fdiv_ui(coeffs[i].get_mpz_t(), p) != 0)
            throw std::invalid_argument("Eisenstein polynomial: lower coefficients must be divisible by p");
    mpz_class c0 = coeffs[0];
    if (c0 == 0 || mpz_fdiv_ui(mpz_class(c0 / (long)p).get_mpz_t(), p) == 0)
        throw std::invalid_argument("Eisenstein polynomial: constant term must have p-adic valuation 1");
}

}  // namespace muforge
