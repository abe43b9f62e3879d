#pragma once

#include <stdexcept>
#include <vector>

#include "muforge/galois_ring.hpp"
#include "muforge/loop.hpp"
#include "muforge/series.hpp"

namespace muforge {

struct NotALattice : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finitely generated W_n[[u]]-submodule of W_n((u)) spanning after inverting u.
// The echelon form is computed on construction.
class Lattice {
public:
    // Throws NotALattice if the generators do not span.
    Lattice(const Fq& F, unsigned n, std::vector<PadicElem> gens);

    const Fq& field() const { return *F_; }
    unsigned n() const { return n_; }
    const std::vector<PadicElem>& gens() const { return gens_; }
    // Exponents of the echelon diagonal; element i of the T-basis has p-adic digit i equal to u^{levels[i]}.
    std::vector<long> levels() const;
    // u^D W_n[[u]] is contained in the lattice, for D = degree_bound().
    long degree_bound() const { return D_ - shift_; }

    // T-basis e_1..e_n with e_i digit i equal to a monomial. Higher digits are
    // only meaningful modulo u^{degree_bound()}.
    std::vector<PadicElem> echelon() const;
    bool contains(const PadicElem& x) const;
    GMatrix distinguished_matrix() const;
    // Exponent d of vol = u^d.
    long volume() const;

private:
    GRSeries to_shifted(const PadicElem& x, bool& negative) const;
    PadicElem from_shifted(const GRSeries& s) const;

    const Fq* F_;
    unsigned n_;
    std::vector<PadicElem> gens_;
    long shift_ = 0;  // lattice scaled by u^shift is positive
    long D_ = 1;      // u^D kills the scaled quotient
    std::vector<long> l_;
    std::vector<GRSeries> basis_;  // scaled T-basis, digit i exactly u^{l_i}
};

Lattice lattice_from_matrix(const GMatrix& A);
std::vector<PadicElem> echelonize(const Lattice& L);
GMatrix distinguished_matrix(const Lattice& L);
bool contains(const Lattice& L, const PadicElem& x);
// sub is contained in super
bool includes(const Lattice& sub, const Lattice& super);
// M[i] = ker(p^{n+1-i}) and M(i) = im(p^{i-1}), as lattices of W_{n+1-i}((u)); 1 <= i <= n+1.
Lattice kernel_i(const Lattice& L, unsigned i);
Lattice image_i(const Lattice& L, unsigned i);
long volume(const Lattice& L);
// Exponent of vol(M, N) = u^{n alpha - lg(M / u^alpha N)}.
long volume_rel(const Lattice& M, const Lattice& N);
// E(u) M in <phi(M)> in M
bool is_mu_lattice(const Lattice& L, const EisensteinDigits& E);
// v_p(e_i) = i and p e_i lies in the span of e_{i+1}, ..., e_n.
bool is_T_basis(const std::vector<PadicElem>& rows);

}  // namespace muforge
