#pragma once

// Factorization over Q.
//
// Univariate: squarefree decomposition (Yun), Cantor-Zassenhaus modulo a
// small prime, quadratic Hensel lifting past twice the Mignotte bound, then
// subset recombination.
// Multivariate: Kronecker substitution x_i -> t^(prod_{k>i} (deg_k + 1)),
// univariate factorization of the image, and a search over sub-multisets
// of image factors mapped back and tested by exact division.

#include "rittkit/mpoly.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace rittkit {

/// Dense univariate polynomial, coefficient i of x^i, no trailing zeros.
template <typename T>
using UPoly = std::vector<T>;

namespace upoly {

template <typename T>
void trim(UPoly<T>& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

template <typename T>
int degree(const UPoly<T>& p)
{
    return static_cast<int>(p.size()) - 1;
}

template <typename T>
UPoly<T> derivative(const UPoly<T>& p)
{
    UPoly<T> d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

template <typename T>
UPoly<T> mul(const UPoly<T>& a, const UPoly<T>& b)
{
    if (a.empty() || b.empty()) return {};
    UPoly<T> r(a.size() + b.size() - 1, T(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

template <typename T>
UPoly<T> add(UPoly<T> a, const UPoly<T>& b)
{
    if (a.size() < b.size()) a.resize(b.size(), T(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    trim(a);
    return a;
}

template <typename T>
UPoly<T> sub(UPoly<T> a, const UPoly<T>& b)
{
    if (a.size() < b.size()) a.resize(b.size(), T(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

using QPoly = UPoly<Rational>;
using ZPoly = UPoly<Integer>;

inline std::pair<QPoly, QPoly> divrem(QPoly a, const QPoly& b)
{
    if (b.empty()) throw std::invalid_argument("division by zero polynomial");
    QPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        Rational c = a.back() / b.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline QPoly monic(QPoly a)
{
    if (a.empty()) return a;
    Rational l = a.back();
    for (auto& c : a) c /= l;
    return a;
}

inline QPoly gcd(QPoly a, QPoly b)
{
    while (!b.empty()) {
        auto r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline QPoly to_q(const ZPoly& p) { return QPoly(p.begin(), p.end()); }

/// Integral primitive representative with positive leading coefficient.
inline ZPoly primitive_z(const QPoly& p)
{
    if (p.empty()) return {};
    Integer g = 0, l = 1;
    for (const auto& c : p) {
        g = rittkit::gcd(g, Integer(c.get_num()));
        l = rittkit::lcm(l, Integer(c.get_den()));
    }
    Rational scale = make_rational(l, g);
    if (p.back() < 0) scale = -scale;
    ZPoly out;
    for (const auto& c : p) {
        Rational v = c * scale;
        out.push_back(v.get_num());
    }
    return out;
}

/// Exact quotient in Z[x], or empty optional.
inline std::optional<ZPoly> exact_divide(const ZPoly& a, const ZPoly& b)
{
    auto [q, r] = divrem(to_q(a), to_q(b));
    if (!r.empty()) return std::nullopt;
    ZPoly out;
    for (const auto& c : q) {
        if (c.get_den() != 1) return std::nullopt;
        out.push_back(c.get_num());
    }
    return out;
}

// Arithmetic in (Z/pZ)[x] for primes below 2^31, in machine words.
namespace wordp {

using Word = std::uint64_t;
using WPoly = std::vector<Word>;

inline void trim(WPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const WPoly& a) { return static_cast<int>(a.size()) - 1; }

inline WPoly from_z(const ZPoly& a, Word p)
{
    WPoly out;
    for (const auto& c : a) {
        Integer r = c % static_cast<unsigned long>(p);
        if (r < 0) r += static_cast<unsigned long>(p);
        out.push_back(r.get_ui());
    }
    trim(out);
    return out;
}

inline ZPoly to_z(const WPoly& a)
{
    ZPoly out;
    for (auto c : a) out.push_back(Integer(static_cast<unsigned long>(c)));
    return out;
}

inline Word power(Word b, Word e, Word p)
{
    Word r = 1;
    b %= p;
    for (; e; e >>= 1) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
    }
    return r;
}

inline Word inverse(Word a, Word p) { return power(a, p - 2, p); }

inline WPoly sub(WPoly a, const WPoly& b, Word p)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

inline WPoly mul(const WPoly& a, const WPoly& b, Word p)
{
    if (a.empty() || b.empty()) return {};
    WPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

inline std::pair<WPoly, WPoly> divrem(WPoly a, const WPoly& b, Word p)
{
    if (b.empty()) throw std::invalid_argument("division by zero polynomial");
    Word inv = inverse(b.back(), p);
    WPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        Word c = a.back() * inv % p;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = (a[i + shift] + p - c * b[i] % p) % p;
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline WPoly monic(WPoly a, Word p)
{
    if (a.empty()) return a;
    Word inv = inverse(a.back(), p);
    for (auto& c : a) c = c * inv % p;
    return a;
}

inline WPoly gcd(WPoly a, WPoly b, Word p)
{
    while (!b.empty()) {
        auto r = divrem(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

inline WPoly derivative(const WPoly& a, Word p)
{
    WPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * (i % p) % p);
    trim(d);
    return d;
}

inline WPoly powmod(WPoly base, Word e, const WPoly& f, Word p)
{
    WPoly result{1};
    base = divrem(base, f, p).second;
    for (; e; e >>= 1) {
        if (e & 1) result = divrem(mul(result, base, p), f, p).second;
        if (e > 1) base = divrem(mul(base, base, p), f, p).second;
    }
    return result;
}

inline WPoly powmod(WPoly base, const Integer& e, const WPoly& f, Word p)
{
    WPoly result{1};
    base = divrem(base, f, p).second;
    for (std::size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2); bit-- > 0;) {
        result = divrem(mul(result, result, p), f, p).second;
        if (mpz_tstbit(e.get_mpz_t(), bit)) result = divrem(mul(result, base, p), f, p).second;
    }
    return result;
}

inline void equal_degree(const WPoly& g, unsigned d, Word p, std::mt19937_64& rng, std::vector<WPoly>& out)
{
    if (static_cast<unsigned>(degree(g)) == d) {
        out.push_back(g);
        return;
    }
    Integer e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), d);
    e = (e - 1) / 2;
    std::uniform_int_distribution<Word> coef(0, p - 1);
    for (;;) {
        WPoly a;
        for (int i = 0; i < degree(g); ++i) a.push_back(coef(rng));
        trim(a);
        if (degree(a) < 1) continue;
        WPoly b = powmod(a, e, g, p);
        if (b.empty()) continue;
        b[0] = (b[0] + p - 1) % p;
        trim(b);
        WPoly h = gcd(b, g, p);
        if (degree(h) > 0 && degree(h) < degree(g)) {
            equal_degree(h, d, p, rng, out);
            equal_degree(divrem(g, h, p).first, d, p, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a monic squarefree f over GF(p), p odd.
inline std::vector<WPoly> factor(WPoly f, Word p)
{
    std::vector<WPoly> out;
    std::mt19937_64 rng(20070101);
    const WPoly x{0, 1};
    WPoly h = x;
    for (unsigned d = 1; degree(f) >= static_cast<int>(2 * d); ++d) {
        h = powmod(h, p, f, p);
        WPoly g = gcd(sub(h, x, p), f, p);
        if (degree(g) > 0) {
            equal_degree(g, d, p, rng, out);
            f = divrem(f, g, p).first;
            h = divrem(h, f, p).second;
        }
    }
    if (degree(f) > 0) out.push_back(monic(f, p));
    return out;
}

} // namespace wordp

/// Exact quotient of integral polynomials, or empty optional.
inline std::optional<ZPoly> exact_divide_z(ZPoly a, const ZPoly& b)
{
    if (b.empty()) throw std::invalid_argument("division by zero polynomial");
    if (a.empty()) return ZPoly{};
    if (a.size() < b.size()) return std::nullopt;
    ZPoly q(a.size() - b.size() + 1, Integer(0));
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        if (!mpz_divisible_p(a.back().get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
        Integer c = a.back() / b.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        trim(a);
    }
    if (!a.empty()) return std::nullopt;
    trim(q);
    return q;
}

inline Integer content(const ZPoly& a)
{
    Integer g = 0;
    for (const auto& c : a) g = rittkit::gcd(g, c);
    return g;
}

inline ZPoly primitive(ZPoly a)
{
    Integer g = content(a);
    if (g == 0) return a;
    if (a.back() < 0) g = -g;
    for (auto& c : a) c /= g;
    return a;
}

/// Primitive gcd with positive leading coefficient, by images modulo word
/// primes, Chinese remaindering and trial division.
inline ZPoly gcd_z(const ZPoly& a0, const ZPoly& b0)
{
    if (a0.empty()) return primitive(b0);
    if (b0.empty()) return primitive(a0);
    ZPoly a = primitive(a0), b = primitive(b0);
    if (degree(a) == 0 || degree(b) == 0) return {Integer(1)};
    Integer l = rittkit::gcd(a.back(), b.back());
    Integer mod = 1;
    ZPoly acc;
    int deg = std::min(degree(a), degree(b)) + 1;
    Integer q = Integer(1) << 30;
    for (;;) {
        mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
        const auto p = static_cast<wordp::Word>(q.get_ui());
        if (a.back() % q == 0 || b.back() % q == 0) continue;
        auto g = wordp::gcd(wordp::from_z(a, p), wordp::from_z(b, p), p);
        if (wordp::degree(g) == 0) return {Integer(1)};
        Integer lp = l % q;
        if (lp < 0) lp += q;
        for (auto& c : g) c = c * lp.get_ui() % p;
        if (wordp::degree(g) > deg) continue;
        if (wordp::degree(g) < deg) {
            deg = wordp::degree(g);
            acc = wordp::to_z(g);
            mod = q;
        } else {
            Integer inv;
            mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), q.get_mpz_t());
            for (std::size_t i = 0; i < acc.size(); ++i) {
                Integer t = (Integer(static_cast<unsigned long>(g[i])) - acc[i]) % q;
                if (t < 0) t += q;
                t = t * inv % q;
                acc[i] += mod * t;
            }
            mod *= q;
        }
        ZPoly cand = acc;
        Integer half = mod / 2;
        for (auto& c : cand)
            if (c > half) c -= mod;
        cand = primitive(cand);
        if (exact_divide_z(a, cand) && exact_divide_z(b, cand)) return cand;
    }
}

/// Squarefree decomposition of a primitive polynomial: pairs (factor, i)
/// with f = c * prod factor^i.
inline std::vector<std::pair<ZPoly, unsigned>> squarefree(const ZPoly& f)
{
    std::vector<std::pair<ZPoly, unsigned>> out;
    ZPoly fd = derivative(f);
    ZPoly a0 = gcd_z(f, fd);
    ZPoly b = *exact_divide_z(f, a0);
    ZPoly c = *exact_divide_z(fd, a0);
    ZPoly d = sub(c, derivative(b));
    for (unsigned i = 1; degree(b) > 0; ++i) {
        ZPoly a = gcd_z(b, d);
        if (degree(a) > 0) out.emplace_back(a, i);
        b = *exact_divide_z(b, a);
        c = *exact_divide_z(d, a);
        d = sub(c, derivative(b));
    }
    return out;
}

// Arithmetic in (Z/pZ)[x] with canonical residues in [0, p).
namespace modp {

inline void reduce(ZPoly& a, const Integer& p)
{
    for (auto& c : a) {
        c %= p;
        if (c < 0) c += p;
    }
    trim(a);
}

inline Integer inverse(const Integer& a, const Integer& p)
{
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0) throw std::domain_error("not invertible");
    return r;
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b, const Integer& p)
{
    ZPoly r = upoly::mul(a, b);
    reduce(r, p);
    return r;
}

inline std::pair<ZPoly, ZPoly> divrem(ZPoly a, const ZPoly& b, const Integer& p)
{
    if (b.empty()) throw std::invalid_argument("division by zero polynomial");
    Integer inv = inverse(b.back(), p);
    ZPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Integer(0));
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        Integer c = (a.back() * inv) % p;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[i + shift] = (a[i + shift] - c * b[i]) % p;
            if (a[i + shift] < 0) a[i + shift] += p;
        }
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline ZPoly monic(ZPoly a, const Integer& p)
{
    if (a.empty()) return a;
    Integer inv = inverse(a.back(), p);
    for (auto& c : a) c = (c * inv) % p;
    return a;
}

inline Integer mignotte_bound(const ZPoly& f)
{
    Integer norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    Integer root;
    mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
    root += 1;
    return pow(Integer(2), static_cast<unsigned long>(degree(f))) * root;
}

/// s, t with s*a + t*b = 1 mod p, deg s < deg b, deg t < deg a.
inline std::pair<ZPoly, ZPoly> bezout(const ZPoly& a, const ZPoly& b, const Integer& p)
{
    ZPoly r0 = a, r1 = b, s0{Integer(1)}, s1, t0, t1{Integer(1)};
    while (!r1.empty()) {
        auto [q, r] = divrem(r0, r1, p);
        auto s2 = upoly::sub(s0, mul(q, s1, p));
        auto t2 = upoly::sub(t0, mul(q, t1, p));
        reduce(s2, p);
        reduce(t2, p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (degree(r0) != 0) throw std::domain_error("factors not coprime modulo p");
    Integer inv = inverse(r0[0], p);
    for (auto& c : s0) c = (c * inv) % p;
    for (auto& c : t0) c = (c * inv) % p;
    return {s0, t0};
}

} // namespace modp

namespace detail {

/// g*h = f mod M with h monic, lifted from g0*h0 = f mod p.
inline std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& f, ZPoly g, ZPoly h, const Integer& p, const Integer& M)
{
    auto [s, t] = modp::bezout(g, h, p);
    Integer m = p;
    while (m < M) {
        Integer m2 = m * m;
        if (m2 > M) m2 = M;
        auto e = upoly::sub(f, upoly::mul(g, h));
        modp::reduce(e, m2);
        auto [q, r] = modp::divrem(modp::mul(s, e, m2), h, m2);
        auto g1 = upoly::mul(t, e);
        g1.resize(std::max(g1.size(), g.size()), Integer(0));
        for (std::size_t i = 0; i < g.size(); ++i) g1[i] += g[i];
        auto qg = upoly::mul(q, g);
        if (g1.size() < qg.size()) g1.resize(qg.size(), Integer(0));
        for (std::size_t i = 0; i < qg.size(); ++i) g1[i] += qg[i];
        modp::reduce(g1, m2);
        auto h1 = h;
        if (h1.size() < r.size()) h1.resize(r.size(), Integer(0));
        for (std::size_t i = 0; i < r.size(); ++i) h1[i] += r[i];
        modp::reduce(h1, m2);
        g = std::move(g1);
        h = std::move(h1);
        m = m2;
        if (m == M) break;
        auto b = upoly::sub(upoly::add(modp::mul(s, g, m), modp::mul(t, h, m)), ZPoly{Integer(1)});
        modp::reduce(b, m);
        auto [c, d] = modp::divrem(modp::mul(s, b, m), h, m);
        s = upoly::sub(s, d);
        modp::reduce(s, m);
        t = upoly::sub(upoly::sub(t, modp::mul(t, b, m)), modp::mul(c, g, m));
        modp::reduce(t, m);
    }
    return {g, h};
}

/// Monic u_i with f = lc(f) * prod u_i mod M, lifted from monic factors mod p.
inline void hensel_lift(const ZPoly& f, const std::vector<ZPoly>& factors, const Integer& p, const Integer& M, std::vector<ZPoly>& out)
{
    if (factors.size() == 1) {
        ZPoly u = f;
        modp::reduce(u, M);
        out.push_back(modp::monic(u, M));
        return;
    }
    std::size_t half = factors.size() / 2;
    std::vector<ZPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
    std::vector<ZPoly> right(factors.begin() + static_cast<long>(half), factors.end());
    ZPoly g{f.back() % p}, h{Integer(1)};
    modp::reduce(g, p);
    for (const auto& u : left) g = modp::mul(g, u, p);
    for (const auto& u : right) h = modp::mul(h, u, p);
    auto [G, H] = hensel_pair(f, g, h, p, M);
    hensel_lift(G, left, p, M, out);
    hensel_lift(H, right, p, M, out);
}

} // namespace detail

/// Irreducible factors over Z of a primitive squarefree f with deg f >= 1.
inline std::vector<ZPoly> factor_squarefree(const ZPoly& f)
{
    if (degree(f) <= 1) return {f};
    Integer lc = abs(f.back());
    Integer bound = 2 * lc * modp::mignotte_bound(f) + 1;

    // Fewest modular factors among a few good small primes.
    Integer p;
    std::vector<ZPoly> modular;
    Integer q = std::max<long>(3, 2 * degree(f) + 1);
    for (int good = 0; good < 4;) {
        mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
        if (lc % q == 0) continue;
        const auto w = static_cast<wordp::Word>(q.get_ui());
        auto fq = wordp::from_z(f, w);
        if (wordp::degree(wordp::gcd(fq, wordp::derivative(fq, w), w)) != 0) continue;
        auto fac = wordp::factor(wordp::monic(fq, w), w);
        if (modular.empty() || fac.size() < modular.size()) {
            modular.clear();
            for (const auto& g : fac) modular.push_back(wordp::to_z(g));
            p = q;
        }
        if (modular.size() == 1) return {f};
        ++good;
    }
    Integer M = p;
    while (M < bound) M *= M;
    std::vector<ZPoly> lifted;
    detail::hensel_lift(f, modular, p, M, lifted);
    modular = std::move(lifted);

    const Integer half = M / 2;
    auto lift = [&](ZPoly g) {
        for (auto& c : g)
            if (c > half) c -= M;
        return primitive_z(to_q(g));
    };

    std::vector<ZPoly> out;
    ZPoly rest = f;
    std::size_t s = 1;
    while (2 * s <= modular.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        for (;;) {
            Integer l = rest.back() % M;
            if (l < 0) l += M;
            ZPoly cand{l};
            for (auto i : idx) cand = modp::mul(cand, modular[i], M);
            if (cand.empty()) cand = {Integer(0)};
            ZPoly g = lift(cand);
            if (degree(g) > 0) {
                if (auto quo = exact_divide(rest, g)) {
                    out.push_back(g);
                    rest = *quo;
                    for (std::size_t k = idx.size(); k-- > 0;) modular.erase(modular.begin() + static_cast<long>(idx[k]));
                    found = true;
                    break;
                }
            }
            std::size_t k = s;
            while (k > 0 && idx[k - 1] == modular.size() - s + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (degree(rest) > 0) out.push_back(primitive_z(to_q(rest)));
    return out;
}

/// f = unit * prod factor^mult over Z[x]; factors primitive with positive
/// leading coefficient, sorted by degree then coefficients.
inline std::pair<Rational, std::vector<std::pair<ZPoly, unsigned>>> factor(const QPoly& f)
{
    if (f.empty()) throw std::invalid_argument("cannot factor the zero polynomial");
    ZPoly prim = primitive_z(f);
    Rational unit = f.back() / Rational(prim.back());
    std::vector<std::pair<ZPoly, unsigned>> out;
    for (const auto& [part, mult] : squarefree(prim))
        for (auto& g : factor_squarefree(part)) out.emplace_back(std::move(g), mult);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    return {unit, out};
}

} // namespace upoly

namespace detail {

inline upoly::ZPoly kronecker_image(const MPoly& f, const std::vector<Integer>& weights)
{
    upoly::QPoly img;
    for (const auto& [e, c] : f.terms()) {
        Integer pos = 0;
        for (std::size_t i = 0; i < e.size(); ++i) pos += weights[i] * e[i];
        auto at = pos.get_ui();
        if (img.size() <= at) img.resize(at + 1, Rational(0));
        img[at] += c;
    }
    upoly::trim(img);
    return upoly::primitive_z(img);
}

inline MPoly kronecker_preimage(const upoly::ZPoly& g, const std::vector<int>& bases)
{
    const std::size_t nv = bases.size();
    MPoly out(nv);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (g[k] == 0) continue;
        Exponents e(nv, 0);
        unsigned long rem = k;
        for (std::size_t i = nv; i-- > 0;) {
            e[i] = static_cast<int>(rem % static_cast<unsigned long>(bases[i]));
            rem /= static_cast<unsigned long>(bases[i]);
        }
        if (rem != 0) return MPoly(nv);
        out.add_term(e, Rational(g[k]));
    }
    return out;
}

inline std::size_t variables_used(const MPoly& f)
{
    std::size_t used = 0;
    for (std::size_t i = 0; i < f.nvars(); ++i) used += f.involves(i) ? 1 : 0;
    return used;
}

/// Irreducible factors (with repetition) of a primitive polynomial without
/// monomial content.
inline void split_irreducible(const MPoly& f, std::vector<MPoly>& out)
{
    if (f.total_degree() <= 1) {
        out.push_back(f);
        return;
    }
    const std::size_t nv = f.nvars();
    std::vector<int> bases(nv);
    for (std::size_t i = 0; i < nv; ++i) bases[i] = f.degree(i) + 1;
    std::vector<Integer> weights(nv);
    Integer w = 1;
    for (std::size_t i = nv; i-- > 0;) {
        weights[i] = w;
        w *= bases[i];
    }
    auto image = kronecker_image(f, weights);
    auto [unit, ufactors] = upoly::factor(upoly::to_q(image));
    std::vector<std::pair<upoly::ZPoly, unsigned>> parts = ufactors;
    unsigned total = 0;
    for (const auto& pr : parts) total += pr.second;
    if (total <= 1) {
        out.push_back(f);
        return;
    }
    if (variables_used(f) == 1) {
        for (const auto& [g, mult] : parts) {
            MPoly back = kronecker_preimage(g, bases);
            make_primitive(back);
            for (unsigned k = 0; k < mult; ++k) out.push_back(back);
        }
        return;
    }
    // Sub-multisets of the image factors, by increasing size.
    std::vector<unsigned> counts(parts.size(), 0);
    for (unsigned size = 1; 2 * size <= total; ++size) {
        std::vector<unsigned> c(parts.size(), 0);
        auto rec = [&](auto&& self, std::size_t pos, unsigned left) -> bool {
            if (pos == parts.size()) {
                if (left != 0) return false;
                upoly::ZPoly prod{Integer(1)};
                for (std::size_t i = 0; i < parts.size(); ++i)
                    for (unsigned k = 0; k < c[i]; ++k) prod = upoly::mul(prod, parts[i].first);
                MPoly cand = kronecker_preimage(prod, bases);
                if (cand.is_zero() || cand.is_constant()) return false;
                make_primitive(cand);
                auto q = exact_divide(f, cand);
                if (!q) return false;
                make_primitive(*q);
                split_irreducible(cand, out);
                split_irreducible(*q, out);
                return true;
            }
            for (unsigned k = std::min(left, parts[pos].second) + 1; k-- > 0;) {
                c[pos] = k;
                if (self(self, pos + 1, left - k)) return true;
            }
            c[pos] = 0;
            return false;
        };
        if (rec(rec, 0, size)) return;
    }
    out.push_back(f);
}

} // namespace detail

struct MFactorization {
    Rational unit;
    std::vector<std::pair<MPoly, unsigned>> factors;
};

/// Factorization over Q of a nonzero multivariate polynomial. Factors are
/// primitive with positive lex-leading coefficient, sorted descending by
/// lex-leading monomial then terms.
inline MFactorization factor(const MPoly& f)
{
    if (f.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
    MPoly g = f;
    Rational unit = make_primitive(g);
    const std::size_t nv = g.nvars();
    std::vector<MPoly> pieces;
    Exponents shift(nv, 0);
    for (std::size_t i = 0; i < nv; ++i) {
        int lo = g.degree(i);
        for (const auto& [e, c] : g.terms()) lo = std::min(lo, e[i]);
        shift[i] = lo;
        for (int k = 0; k < lo; ++k) pieces.push_back(MPoly::variable(nv, i));
    }
    MPoly reduced(nv);
    for (const auto& [e, c] : g.terms()) {
        Exponents d = e;
        for (std::size_t i = 0; i < nv; ++i) d[i] -= shift[i];
        reduced.add_term(d, c);
    }
    if (!reduced.is_constant()) detail::split_irreducible(reduced, pieces);
    else unit *= reduced.leading().second;

    MFactorization out{unit, {}};
    std::map<MPoly::TermMap, std::pair<MPoly, unsigned>> grouped;
    for (auto& p : pieces) {
        Rational c = make_primitive(p);
        out.unit *= c;
        auto [it, inserted] = grouped.try_emplace(p.terms(), p, 0u);
        ++it->second.second;
    }
    for (auto& [key, val] : grouped) out.factors.push_back(std::move(val));
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        return std::greater<MPoly::TermMap>{}(a.first.terms(), b.first.terms());
    });
    return out;
}

struct Factorization {
    Rational unit;
    std::vector<std::pair<DiffPoly, unsigned>> factors;
};

/// Factors a nonconstant differential polynomial as a commutative polynomial
/// over Q. Throws std::invalid_argument for constants.
inline Factorization factor(const DiffPoly& p, const Ranking& R = Ranking::orderly())
{
    if (p.is_constant()) throw std::invalid_argument("cannot factor a constant");
    auto vars = frame_of({p}, R);
    auto mf = factor(to_mpoly(p, vars));
    Factorization out{mf.unit, {}};
    for (const auto& [g, k] : mf.factors) out.factors.emplace_back(from_mpoly(g, vars), k);
    std::sort(out.factors.begin(), out.factors.end(), [&](const auto& a, const auto& b) { return cmp_polys(a.first, b.first, R) < 0; });
    return out;
}

} // namespace rittkit
