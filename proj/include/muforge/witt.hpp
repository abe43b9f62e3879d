#pragma once

// p-typical Witt vectors over a ring supplied as a plugin.
//
// A plugin R provides
//   Elem, Lift                      ring and torsion-free lift ring
//   prime(), zero(), one()
//   add, neg, mul, eq               on Elem
//   lift(Elem), reduce(Lift)        reduce is a ring map, reduce(lift(x)) == x
//   ladd, lsub, lmul                on Lift
//   lscale(Lift, mpz), ldivexact(Lift, mpz), lfrom_int(mpz)
//
// The kernel I of reduce must satisfy x == y mod I => x^p == y^p mod pI, so that
// components may be re-lifted after each step of ghost inversion.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace muforge {

template <class R>
concept RingPlugin = requires(const R& r, const typename R::Elem& x, const typename R::Lift& y,
                              const mpz_class& z) {
    { r.prime() } -> std::convertible_to<unsigned long>;
    { r.zero() } -> std::convertible_to<typename R::Elem>;
    { r.one() } -> std::convertible_to<typename R::Elem>;
    { r.add(x, x) } -> std::convertible_to<typename R::Elem>;
    { r.neg(x) } -> std::convertible_to<typename R::Elem>;
    { r.mul(x, x) } -> std::convertible_to<typename R::Elem>;
    { r.eq(x, x) } -> std::convertible_to<bool>;
    { r.lift(x) } -> std::convertible_to<typename R::Lift>;
    { r.reduce(y) } -> std::convertible_to<typename R::Elem>;
    { r.ladd(y, y) } -> std::convertible_to<typename R::Lift>;
    { r.lsub(y, y) } -> std::convertible_to<typename R::Lift>;
    { r.lmul(y, y) } -> std::convertible_to<typename R::Lift>;
    { r.lscale(y, z) } -> std::convertible_to<typename R::Lift>;
    { r.ldivexact(y, z) } -> std::convertible_to<typename R::Lift>;
    { r.lfrom_int(z) } -> std::convertible_to<typename R::Lift>;
};

template <class R>
struct WittVector {
    using Elem = typename R::Elem;
    std::vector<Elem> coeffs;
    // Components all have positive valuation (an element of W-hat).
    bool hat = false;

    WittVector() = default;
    explicit WittVector(std::vector<Elem> c, bool h = false) : coeffs(std::move(c)), hat(h) {}

    std::size_t size() const { return coeffs.size(); }
    const Elem& operator[](std::size_t i) const { return coeffs[i]; }
};

namespace witt {

template <RingPlugin R>
typename R::Elem elem_pow(const R& r, typename R::Elem x, unsigned long k)
{
    auto acc = r.one();
    while (k) {
        if (k & 1) acc = r.mul(acc, x);
        k >>= 1;
        if (k) x = r.mul(x, x);
    }
    return acc;
}

template <RingPlugin R>
typename R::Lift lift_pow(const R& r, typename R::Lift x, unsigned long k)
{
    auto acc = r.lfrom_int(1);
    while (k) {
        if (k & 1) acc = r.lmul(acc, x);
        k >>= 1;
        if (k) x = r.lmul(x, x);
    }
    return acc;
}

template <RingPlugin R>
bool equal(const R& r, const WittVector<R>& a, const WittVector<R>& b)
{
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!r.eq(a[i], b[i])) return false;
    return true;
}

template <RingPlugin R>
WittVector<R> zero(const R& r, std::size_t n)
{
    return WittVector<R>(std::vector<typename R::Elem>(n, r.zero()));
}

// Pad with zeros or truncate to length n.
template <RingPlugin R>
WittVector<R> resized(const R& r, WittVector<R> a, std::size_t n)
{
    a.coeffs.resize(n, r.zero());
    return a;
}

// Ghost components Phi_0..Phi_{n-1} of lifted components x.
template <RingPlugin R>
std::vector<typename R::Lift> ghosts_of_lifts(const R& r, const std::vector<typename R::Lift>& x, std::size_t n)
{
    const unsigned long p = r.prime();
    std::vector<typename R::Lift> w(n, r.lfrom_int(0));
    // pw[i] = x_i^{p^{r-i}} for the current r
    std::vector<typename R::Lift> pw(x.begin(), x.begin() + std::min(n, x.size()));
    mpz_class pi = 1;
    std::vector<mpz_class> ppow(n);
    for (std::size_t i = 0; i < n; ++i) {
        ppow[i] = pi;
        pi *= p;
    }
    for (std::size_t k = 0; k < n; ++k) {
        auto s = r.lfrom_int(0);
        for (std::size_t i = 0; i <= k && i < pw.size(); ++i) s = r.ladd(s, r.lscale(pw[i], ppow[i]));
        w[k] = s;
        if (k + 1 < n)
            for (std::size_t i = 0; i <= k && i < pw.size(); ++i) pw[i] = lift_pow(r, pw[i], p);
    }
    return w;
}

template <RingPlugin R>
std::vector<typename R::Lift> ghosts(const R& r, const WittVector<R>& a, std::size_t n)
{
    std::vector<typename R::Lift> x;
    x.reserve(a.size());
    for (const auto& c : a.coeffs) x.push_back(r.lift(c));
    return ghosts_of_lifts(r, x, n);
}

template <RingPlugin R>
typename R::Lift ghost(const R& r, const WittVector<R>& a, std::size_t k)
{
    return ghosts(r, a, k + 1)[k];
}

// Inverse of the ghost map. Throws std::domain_error if w is not a ghost vector.
template <RingPlugin R>
WittVector<R> from_ghosts(const R& r, const std::vector<typename R::Lift>& w)
{
    const std::size_t n = w.size();
    const unsigned long p = r.prime();
    std::vector<typename R::Elem> c;
    c.reserve(n);
    std::vector<typename R::Lift> pw;  // relifted c_i raised to p^{k-i}
    mpz_class pk = 1;
    for (std::size_t k = 0; k < n; ++k) {
        auto s = w[k];
        mpz_class pi = 1;
        for (std::size_t i = 0; i < k; ++i) {
            pw[i] = lift_pow(r, pw[i], p);
            s = r.lsub(s, r.lscale(pw[i], pi));
            pi *= p;
        }
        auto ck = r.reduce(k ? r.ldivexact(s, pk) : s);
        pw.push_back(r.lift(ck));
        c.push_back(std::move(ck));
        pk *= p;
    }
    return WittVector<R>(std::move(c));
}

template <RingPlugin R>
WittVector<R> add(const R& r, const WittVector<R>& a, const WittVector<R>& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    auto ga = ghosts(r, a, n), gb = ghosts(r, b, n);
    for (std::size_t k = 0; k < n; ++k) ga[k] = r.ladd(ga[k], gb[k]);
    auto s = from_ghosts(r, ga);
    s.hat = a.hat && b.hat;
    return s;
}

template <RingPlugin R>
WittVector<R> neg(const R& r, const WittVector<R>& a)
{
    auto ga = ghosts(r, a, a.size());
    for (auto& g : ga) g = r.lsub(r.lfrom_int(0), g);
    auto s = from_ghosts(r, ga);
    s.hat = a.hat;
    return s;
}

template <RingPlugin R>
WittVector<R> sub(const R& r, const WittVector<R>& a, const WittVector<R>& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    auto ga = ghosts(r, a, n), gb = ghosts(r, b, n);
    for (std::size_t k = 0; k < n; ++k) ga[k] = r.lsub(ga[k], gb[k]);
    auto s = from_ghosts(r, ga);
    s.hat = a.hat && b.hat;
    return s;
}

template <RingPlugin R>
WittVector<R> mul(const R& r, const WittVector<R>& a, const WittVector<R>& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    auto ga = ghosts(r, a, n), gb = ghosts(r, b, n);
    for (std::size_t k = 0; k < n; ++k) ga[k] = r.lmul(ga[k], gb[k]);
    auto s = from_ghosts(r, ga);
    s.hat = a.hat || b.hat;
    return s;
}

template <RingPlugin R>
WittVector<R> teichmuller(const R& r, const typename R::Elem& x, std::size_t n)
{
    auto v = zero(r, n);
    if (n) v.coeffs[0] = x;
    return v;
}

// Image of the integer m in W_n.
template <RingPlugin R>
WittVector<R> from_int(const R& r, const mpz_class& m, std::size_t n)
{
    return from_ghosts(r, std::vector<typename R::Lift>(n, r.lfrom_int(m)));
}

// V(a_0, a_1, ...) = (0, a_0, a_1, ...); the length grows by one.
template <RingPlugin R>
WittVector<R> verschiebung(const R& r, const WittVector<R>& a)
{
    WittVector<R> v = a;
    v.coeffs.insert(v.coeffs.begin(), r.zero());
    return v;
}

// Phi_k(F a) = Phi_{k+1}(a); the length drops by one.
template <RingPlugin R>
WittVector<R> frobenius(const R& r, const WittVector<R>& a)
{
    if (a.size() == 0) return a;
    auto g = ghosts(r, a, a.size());
    g.erase(g.begin());
    auto f = from_ghosts(r, g);
    f.hat = a.hat;
    return f;
}

// [t] * a, componentwise t^{p^i} a_i.
template <RingPlugin R>
WittVector<R> teich_mul(const R& r, const typename R::Elem& t, const WittVector<R>& a)
{
    WittVector<R> out = a;
    auto tp = t;
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.coeffs[i] = r.mul(tp, a[i]);
        tp = elem_pow(r, tp, r.prime());
    }
    return out;
}

// lambda . (a_0, a_1, ...) = (lambda a_0, lambda a_1, ...)
template <RingPlugin R>
WittVector<R> scalar_dot(const R& r, const typename R::Elem& lambda, const WittVector<R>& a)
{
    WittVector<R> out = a;
    for (auto& c : out.coeffs) c = r.mul(lambda, c);
    return out;
}

// T_a x = sum_k V^k([a_k] x), truncated to the length of x.
template <RingPlugin R>
WittVector<R> t_operator(const R& r, const WittVector<R>& a, const WittVector<R>& x)
{
    const std::size_t n = x.size();
    auto acc = zero(r, n);
    for (std::size_t k = 0; k < a.size() && k < n; ++k) {
        if (r.eq(a[k], r.zero())) continue;
        auto term = teich_mul(r, a[k], x);
        term.coeffs.insert(term.coeffs.begin(), k, r.zero());
        term.coeffs.resize(n);
        acc = add(r, acc, term);
    }
    acc.hat = x.hat;
    return acc;
}

}  // namespace witt
}  // namespace muforge
