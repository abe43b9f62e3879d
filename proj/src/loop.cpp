#include "muforge/loop.hpp"

#include <sstream>
#include <stdexcept>

#include "muforge/galois_ring.hpp"

namespace muforge {

GMatrix::GMatrix(const Fq& F_, std::vector<long> l_) : F(&F_), n((unsigned)l_.size()), l(std::move(l_))
{
    a.assign(n, std::vector<LaurentPoly>(n, LaurentPoly(F_)));
}

LaurentPoly GMatrix::at(unsigned i, unsigned j) const
{
    if (i == j) return LaurentPoly::monomial(*F, l[i]);
    if (j < i) return LaurentPoly(*F);
    return a[i][j];
}

PadicElem GMatrix::row(unsigned i) const
{
    PadicElem r;
    for (unsigned j = 0; j < n; ++j) r.digits.push_back(at(i, j));
    return r;
}

std::string GMatrix::to_string() const
{
    std::ostringstream os;
    os << "l=(";
    for (unsigned i = 0; i < n; ++i) os << (i ? "," : "") << l[i];
    os << ")";
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) os << " a" << i + 1 << j + 1 << "=" << a[i][j].to_string();
    return os.str();
}

EisensteinDigits EisensteinDigits::from_coeffs(const Fq& F, const std::vector<mpz_class>& coeffs, unsigned ndigits)
{
    validate_eisenstein(F.p(), coeffs);
    EisensteinDigits D;
    D.F = &F;
    D.e = (long)coeffs.size() - 1;
    D.E.assign(ndigits, LaurentPoly(F));
    if (ndigits == 0) return D;
    D.E[0] = LaurentPoly::monomial(F, D.e);
    std::vector<std::vector<unsigned>> td;
    for (long j = 0; j < D.e; ++j) td.push_back(teich_digits(F.p(), coeffs[j], ndigits));
    for (unsigned i = 1; i < ndigits; ++i) {
        std::vector<fq_t> c(D.e);
        for (long j = 0; j < D.e; ++j) c[j] = F.from_int(td[j][i]);
        D.E[i] = LaurentPoly(F, 0, c);
    }
    return D;
}

LaurentPoly EisensteinDigits::digit(unsigned i) const
{
    return i < E.size() ? E[i] : LaurentPoly(*F);
}

namespace {

GRSeries row_series(const GaloisRing& R, const GMatrix& A, unsigned i)
{
    GRSeries s;
    for (unsigned j = i; j < A.n; ++j) s = gs_add(R, s, gs_mul_p(R, gs_teich(R, A.at(i, j)), j));
    return s;
}

std::vector<long> add_l(const std::vector<long>& x, const std::vector<long>& y, long sign)
{
    std::vector<long> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + sign * y[i];
    return r;
}

void check_sizes(const GMatrix& A, const GMatrix& B)
{
    if (A.n != B.n) throw std::invalid_argument("matrix sizes differ");
}

}  // namespace

GMatrix star(const GMatrix& A, const GMatrix& B)
{
    check_sizes(A, B);
    GMatrix C(*A.F, add_l(A.l, B.l, 1));
    if (A.n == 0) return C;
    const auto& R = GaloisRing::get(*A.F, A.n);
    std::vector<GRSeries> rows;
    for (unsigned k = 0; k < B.n; ++k) rows.push_back(row_series(R, B, k));
    for (unsigned i = 0; i < A.n; ++i) {
        GRSeries s;
        for (unsigned k = i; k < A.n; ++k) {
            auto aik = A.at(i, k);
            if (aik.is_zero()) continue;
            s = gs_add(R, s, gs_mul(R, gs_teich(R, aik), rows[k]));
        }
        for (unsigned j = i + 1; j < A.n; ++j) C.a[i][j] = gs_digit(R, s, j);
    }
    return C;
}

GMatrix ldiv(const GMatrix& A, const GMatrix& C)
{
    check_sizes(A, C);
    GMatrix B(*A.F, add_l(C.l, A.l, -1));
    for (unsigned d = 1; d < A.n; ++d) {
        GMatrix P = star(A, B);
        for (unsigned i = 0; i + d < A.n; ++i) {
            unsigned j = i + d;
            B.a[i][j] = (C.a[i][j] - P.a[i][j]).shift(-A.l[i]);
        }
    }
    return B;
}

GMatrix rdiv(const GMatrix& C, const GMatrix& B)
{
    check_sizes(C, B);
    GMatrix A(*C.F, add_l(C.l, B.l, -1));
    for (unsigned d = 1; d < C.n; ++d) {
        GMatrix P = star(A, B);
        for (unsigned i = 0; i + d < C.n; ++i) {
            unsigned j = i + d;
            A.a[i][j] = (C.a[i][j] - P.a[i][j]).shift(-B.l[j]);
        }
    }
    return A;
}

namespace {

GMatrix submatrix(const GMatrix& A, unsigned from, unsigned count)
{
    std::vector<long> l(A.l.begin() + from, A.l.begin() + from + count);
    GMatrix S(*A.F, l);
    for (unsigned i = 0; i < count; ++i)
        for (unsigned j = i + 1; j < count; ++j) S.a[i][j] = A.a[from + i][from + j];
    return S;
}

}  // namespace

GMatrix upper(const GMatrix& A)
{
    if (A.n < 2) throw std::invalid_argument("upper: n must be at least 2");
    return submatrix(A, 0, A.n - 1);
}

GMatrix lower(const GMatrix& A)
{
    if (A.n < 2) throw std::invalid_argument("lower: n must be at least 2");
    return submatrix(A, 1, A.n - 1);
}

GMatrix phi_mat(const GMatrix& A)
{
    GMatrix B = A;
    for (auto& x : B.l) x *= (long)A.F->p();
    for (auto& row : B.a)
        for (auto& x : row) x = x.frobenius();
    return B;
}

GMatrix ediamond(const EisensteinDigits& E, const GMatrix& A)
{
    GMatrix B = A;
    for (auto& x : B.l) x += E.e;
    if (A.n == 0) return B;
    const auto& R = GaloisRing::get(*A.F, A.n);
    GRSeries es;
    for (unsigned i = 0; i < A.n; ++i) es = gs_add(R, es, gs_mul_p(R, gs_teich(R, E.digit(i)), i));
    for (unsigned i = 0; i < A.n; ++i) {
        GRSeries s = gs_mul(R, es, row_series(R, A, i));
        for (unsigned j = i + 1; j < A.n; ++j) B.a[i][j] = gs_digit(R, s, j);
    }
    return B;
}

bool is_positive(const GMatrix& A)
{
    for (unsigned i = 0; i < A.n; ++i) {
        if (A.l[i] < 0) return false;
        for (unsigned j = i + 1; j < A.n; ++j)
            if (!A.a[i][j].is_zero() && A.a[i][j].min_degree() < 0) return false;
    }
    return true;
}

bool succ(const GMatrix& A, const GMatrix& B) { return is_positive(rdiv(A, B)); }

}  // namespace muforge
