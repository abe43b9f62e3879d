#include "muforge/lattice.hpp"

#include <algorithm>
#include <climits>

namespace muforge {

namespace {

long min_digit_degree(const PadicElem& x)
{
    long m = LONG_MAX;
    for (const auto& d : x.digits)
        if (!d.is_zero()) m = std::min(m, d.min_degree());
    return m;
}

GRSeries teich_times(const GaloisRing& R, const LaurentPoly& t, const GRSeries& s, long D)
{
    return gs_truncate(gs_mul(R, gs_teich(R, t), s), D);
}

PadicElem shifted(const PadicElem& x, long k)
{
    PadicElem r = x;
    for (auto& d : r.digits) d = d.shift(k);
    return r;
}

PadicElem drop_digits(const PadicElem& x, unsigned k, unsigned keep)
{
    PadicElem r;
    for (unsigned j = k; j < k + keep; ++j) r.digits.push_back(x.digits[j]);
    return r;
}

}  // namespace

Lattice::Lattice(const Fq& F, unsigned n, std::vector<PadicElem> gens) : F_(&F), n_(n), gens_(std::move(gens))
{
    for (auto& g : gens_) g.digits.resize(n, LaurentPoly(F));
    if (n == 0) return;
    long m = LONG_MAX;
    for (const auto& g : gens_) m = std::min(m, min_digit_degree(g));
    if (m == LONG_MAX) throw NotALattice("generators are all zero");
    shift_ = -m;

    const auto& R = GaloisRing::get(F, n);
    std::vector<GRSeries> work;
    for (const auto& g : gens_) {
        auto s = to_series(R, shifted(g, shift_));
        if (!s.is_zero()) work.push_back(std::move(s));
    }
    std::vector<GRSeries> raw;
    for (unsigned i = 0; i < n; ++i) {
        std::size_t best = work.size();
        long bv = LONG_MAX;
        std::vector<LaurentPoly> di(work.size());
        for (std::size_t k = 0; k < work.size(); ++k) {
            di[k] = gs_digit(R, work[k], i);
            if (!di[k].is_zero() && di[k].valuation() < bv) {
                bv = di[k].valuation();
                best = k;
            }
        }
        if (best == work.size()) throw NotALattice("generators do not span after inverting u");
        GRSeries piv = work[best];
        LaurentPoly unit = di[best].shift(-bv);
        std::vector<GRSeries> next;
        for (std::size_t k = 0; k < work.size(); ++k) {
            if (k == best) continue;
            GRSeries g = work[k];
            if (!di[k].is_zero())
                g = gs_sub(R, gs_mul(R, gs_teich(R, unit), g), gs_mul(R, gs_teich(R, di[k].shift(-bv)), piv));
            if (!g.is_zero()) next.push_back(std::move(g));
        }
        auto pp = gs_mul_p(R, piv, 1);
        if (!pp.is_zero()) next.push_back(std::move(pp));
        raw.push_back(std::move(piv));
        l_.push_back(bv);
        work = std::move(next);
    }

    D_ = 1;
    for (long x : l_) D_ += x;
    for (unsigned i = 0; i < n; ++i) {
        LaurentPoly d = gs_digit(R, raw[i], i);
        LaurentPoly inv = series_inverse(d.shift(-l_[i]), D_);
        basis_.push_back(teich_times(R, inv, gs_truncate(raw[i], D_), D_));
    }
}

std::vector<long> Lattice::levels() const
{
    std::vector<long> r = l_;
    for (auto& x : r) x -= shift_;
    return r;
}

GRSeries Lattice::to_shifted(const PadicElem& x, bool& negative) const
{
    PadicElem y = shifted(x, shift_);
    y.digits.resize(n_, LaurentPoly(*F_));
    negative = min_digit_degree(y) < 0;
    const auto& R = GaloisRing::get(*F_, n_);
    return gs_truncate(to_series(R, y), D_);
}

PadicElem Lattice::from_shifted(const GRSeries& s) const
{
    return shifted(from_series(GaloisRing::get(*F_, n_), s), -shift_);
}

std::vector<PadicElem> Lattice::echelon() const
{
    std::vector<PadicElem> r;
    for (const auto& b : basis_) r.push_back(from_shifted(b));
    return r;
}

bool Lattice::contains(const PadicElem& x) const
{
    if (n_ == 0) return true;
    bool negative = false;
    GRSeries s = to_shifted(x, negative);
    if (negative) return false;
    const auto& R = GaloisRing::get(*F_, n_);
    for (unsigned i = 0; i < n_; ++i) {
        LaurentPoly d = gs_digit(R, s, i);
        if (d.is_zero()) continue;
        if (d.valuation() < l_[i]) return false;
        s = gs_truncate(gs_sub(R, s, teich_times(R, d.shift(-l_[i]), basis_[i], D_)), D_);
    }
    return s.is_zero();
}

GMatrix Lattice::distinguished_matrix() const
{
    GMatrix A(*F_, levels());
    if (n_ == 0) return A;
    const auto& R = GaloisRing::get(*F_, n_);
    for (unsigned i = 0; i < n_; ++i) {
        GRSeries e = basis_[i];
        for (unsigned j = i + 1; j < n_; ++j) {
            LaurentPoly d = gs_digit(R, e, j);
            LaurentPoly high = d.high_part(l_[j]);
            if (!high.is_zero()) e = gs_truncate(gs_sub(R, e, teich_times(R, high, basis_[j], D_)), D_);
            A.a[i][j] = gs_digit(R, e, j).shift(-shift_);
        }
    }
    return A;
}

long Lattice::volume() const
{
    long v = 0;
    for (long x : l_) v += x;
    return v - (long)n_ * shift_;
}

Lattice lattice_from_matrix(const GMatrix& A)
{
    std::vector<PadicElem> rows;
    for (unsigned i = 0; i < A.n; ++i) rows.push_back(A.row(i));
    return Lattice(*A.F, A.n, rows);
}

std::vector<PadicElem> echelonize(const Lattice& L) { return L.echelon(); }
GMatrix distinguished_matrix(const Lattice& L) { return L.distinguished_matrix(); }
bool contains(const Lattice& L, const PadicElem& x) { return L.contains(x); }
long volume(const Lattice& L) { return L.volume(); }

bool includes(const Lattice& sub, const Lattice& super)
{
    for (const auto& g : sub.gens())
        if (!super.contains(g)) return false;
    return true;
}

Lattice kernel_i(const Lattice& L, unsigned i)
{
    if (i < 1 || i > L.n() + 1) throw std::out_of_range("kernel_i: index out of range");
    unsigned keep = L.n() + 1 - i;
    std::vector<PadicElem> gens;
    auto e = L.echelon();
    for (unsigned k = i - 1; k < L.n(); ++k) gens.push_back(drop_digits(e[k], i - 1, keep));
    return Lattice(L.field(), keep, gens);
}

Lattice image_i(const Lattice& L, unsigned i)
{
    if (i < 1 || i > L.n() + 1) throw std::out_of_range("image_i: index out of range");
    unsigned keep = L.n() + 1 - i;
    std::vector<PadicElem> gens;
    for (const auto& g : L.gens()) gens.push_back(drop_digits(g, 0, keep));
    return Lattice(L.field(), keep, gens);
}

long volume_rel(const Lattice& M, const Lattice& N)
{
    if (M.n() != N.n()) throw std::invalid_argument("volume_rel: lattices of different length");
    long alpha = 0;
    auto scaled = [&](long a) {
        std::vector<PadicElem> g;
        for (const auto& x : N.gens()) g.push_back(shifted(x, a));
        return Lattice(N.field(), N.n(), g);
    };
    Lattice X = scaled(0);
    while (!includes(X, M)) {
        if (++alpha > 100000) throw std::runtime_error("volume_rel: no scaling found");
        X = scaled(alpha);
    }
    // lg(M / X) summed over the graded pieces of the p-adic filtration
    long lg = 0;
    auto lx = X.levels(), lm = M.levels();
    for (unsigned i = 0; i < M.n(); ++i) lg += lx[i] - lm[i];
    return (long)M.n() * alpha - lg;
}

bool is_mu_lattice(const Lattice& L, const EisensteinDigits& E)
{
    const unsigned n = L.n();
    PadicElem e;
    for (unsigned i = 0; i < n; ++i) e.digits.push_back(E.digit(i));
    std::vector<PadicElem> phi, em;
    for (const auto& g : L.gens()) {
        phi.push_back(padic_frobenius(g));
        em.push_back(padic_mul(e, g));
    }
    Lattice PL(L.field(), n, phi), EL(L.field(), n, em);
    return includes(EL, PL) && includes(PL, L);
}

bool is_T_basis(const std::vector<PadicElem>& rows)
{
    const unsigned n = (unsigned)rows.size();
    for (unsigned i = 0; i < n; ++i) {
        if (rows[i].n() != n) return false;
        for (unsigned j = 0; j < i; ++j)
            if (!rows[i].digits[j].is_zero()) return false;
        if (rows[i].digits[i].is_zero()) return false;
    }
    for (unsigned i = 0; i + 1 < n; ++i) {
        std::vector<PadicElem> rest;
        for (unsigned k = i + 1; k < n; ++k) rest.push_back(drop_digits(rows[k], i + 1, n - i - 1));
        // p e_i with the leading i + 1 zero digits removed
        Lattice S(*rows[i].digits[i].field(), n - i - 1, rest);
        if (!S.contains(drop_digits(rows[i], i, n - i - 1))) return false;
    }
    return true;
}

}  // namespace muforge
