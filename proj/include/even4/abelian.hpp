#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "even4/intmat.hpp"
#include "even4/smith.hpp"

namespace even4 {

/// Finitely generated abelian group in canonical form: Z^free_rank plus
/// cyclic torsion factors with a divisibility chain d1 | d2 | ... (each >= 2).
/// Slot order is ascending along the chain; this coordinate system is shared
/// by every functor in the library.
class AbelianGroup {
public:
    AbelianGroup() = default;

    AbelianGroup(std::size_t free_rank, std::vector<Int> torsion)
        : free_rank_(free_rank), torsion_(std::move(torsion)) {
        for (std::size_t i = 0; i < torsion_.size(); ++i) {
            if (torsion_[i] < 2)
                throw std::invalid_argument("AbelianGroup: torsion coefficients must be >= 2");
            if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
                throw std::invalid_argument("AbelianGroup: torsion coefficients must form a divisibility chain");
        }
    }

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }
    bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

    bool operator==(const AbelianGroup& o) const {
        return free_rank_ == o.free_rank_ && torsion_ == o.torsion_;
    }

private:
    std::size_t free_rank_ = 0;
    std::vector<Int> torsion_;
};

/// Canonical form of the cokernel of a relation matrix acting on Z^cols.
/// Rows are relations, columns are generators.
inline AbelianGroup from_presentation(const IntMatrix& relations) {
    const std::size_t generators = relations.cols();
    if (relations.rows() == 0 || relations.is_zero())
        return AbelianGroup(generators, {});
    SmithResult snf = smith_normal_form(relations);
    std::vector<Int> torsion;
    std::size_t rank = 0;
    for (const Int& d : snf.diagonal()) {
        if (d == 0) continue;
        ++rank;
        if (d >= 2) torsion.push_back(d);
    }
    return AbelianGroup(generators - rank, std::move(torsion));
}

/// The 2-primary structure of the torsion: exponents mu_1 <= ... <= mu_t of
/// the cyclic 2-group factors, their maximum mu, and their count t.
struct TwoPrimary {
    std::vector<unsigned> exponents;
    unsigned mu = 0;
    std::size_t t = 0;
};

inline TwoPrimary two_primary(const AbelianGroup& g) {
    TwoPrimary tp;
    for (const Int& d : g.torsion()) {
        if (!even4::is_even(d)) continue;
        tp.exponents.push_back(two_adic_valuation(d));
    }
    tp.t = tp.exponents.size();
    tp.mu = tp.t ? tp.exponents.back() : 0;
    return tp;
}

/// dim_{Z2} Ext(G; Z2): one Z2 per even-order cyclic factor. Free and
/// odd-order parts contribute nothing.
inline std::size_t ext_z2_dim(const AbelianGroup& g) { return two_primary(g).t; }

/// An element of Ext(G; Z2), written in the canonical coordinates: one bit
/// per even-order cyclic slot, ascending slot order.
struct ExtClass {
    std::vector<uint8_t> bits;

    bool is_zero() const {
        for (uint8_t b : bits)
            if (b) return false;
        return true;
    }
    bool operator==(const ExtClass& o) const { return bits == o.bits; }
};

/// A homomorphism G -> Z_{2^nu}: integer coefficient a_i per torsion slot
/// (free generators map to zero). Coefficients are raw integers; whether they
/// describe a genuine homomorphism is the checked invariant below.
struct Character {
    AbelianGroup domain;
    unsigned target_exponent = 0;  // codomain Z_{2^nu}
    std::vector<Int> coeffs;       // one per torsion slot of the domain
};

/// Well-definedness: 2^nu | d_i * a_i for every torsion slot.
inline bool is_well_defined(const Character& f) {
    if (f.coeffs.size() != f.domain.torsion().size()) return false;
    const Int mod = pow2(f.target_exponent);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if ((f.domain.torsion()[i] * f.coeffs[i]) % mod != 0) return false;
    }
    return true;
}

/// Character G -> Z_{2^mu} whose induced map on Ext(.; Z2) sends the nonzero
/// element of Ext(Z_{2^mu}; Z2) to the given class: coefficient 2^(mu - mu_i)
/// on the even slot with exponent mu_i carrying a set bit, zero elsewhere.
inline Character character_realizing(const AbelianGroup& g, const ExtClass& w) {
    const TwoPrimary tp = two_primary(g);
    if (w.bits.size() != tp.t)
        throw std::invalid_argument("character_realizing: class length does not match the even-slot count");
    Character f;
    f.domain = g;
    f.target_exponent = tp.mu;
    f.coeffs.assign(g.torsion().size(), Int(0));
    std::size_t even_slot = 0;
    for (std::size_t i = 0; i < g.torsion().size(); ++i) {
        if (!even4::is_even(g.torsion()[i])) continue;
        if (w.bits[even_slot]) f.coeffs[i] = pow2(tp.mu - tp.exponents[even_slot]);
        ++even_slot;
    }
    return f;
}

/// The image of a character is the cyclic subgroup of Z_{2^nu} generated by
/// its coefficients; this records its exponent nu' and the corestricted
/// surjection G ->> Z_{2^nu'}.
struct SurjectiveImage {
    unsigned nu = 0;        // image is Z_{2^nu}
    Character surjection;   // same domain, target exponent nu
};

inline SurjectiveImage surjective_image(const Character& f) {
    if (!is_well_defined(f))
        throw std::invalid_argument("surjective_image: ill-defined character");
    const Int mod = pow2(f.target_exponent);
    unsigned shift = f.target_exponent;  // valuation of the subgroup generator
    for (const Int& a : f.coeffs) {
        Int r = ((a % mod) + mod) % mod;
        if (r == 0) continue;
        unsigned v = two_adic_valuation(r);
        if (v < shift) shift = v;
    }
    SurjectiveImage out;
    out.nu = f.target_exponent - shift;
    out.surjection.domain = f.domain;
    out.surjection.target_exponent = out.nu;
    out.surjection.coeffs.reserve(f.coeffs.size());
    const Int unit = pow2(shift);
    const Int image_mod = pow2(out.nu);
    for (const Int& a : f.coeffs) {
        Int r = ((a % mod) + mod) % mod;
        out.surjection.coeffs.push_back((r / unit) % image_mod);
    }
    return out;
}

/// Induced map Ext(f; Z2) : Ext(Z_{2^nu}; Z2) -> Ext(G; Z2), computed by
/// lifting f through the standard resolutions
///     0 -> Z^s --diag(d_i)--> Z^(s+free) -> G -> 0
///     0 -> Z --2^nu--> Z -> Z_{2^nu} -> 0
/// and reading off the induced map on the Hom(.; Z2) cokernels. The lift of
/// f on the relation level sends e_i to d_i * a_i / 2^nu, so the image of the
/// nonzero Ext element is that vector mod 2, restricted to the even slots.
/// This is a computation path independent of the closed form in
/// character_realizing and serves as its certificate.
inline ExtClass induced_ext_image(const Character& f) {
    if (!is_well_defined(f))
        throw std::invalid_argument("induced_ext_image: ill-defined character");
    const Int mod = pow2(f.target_exponent);
    ExtClass out;
    for (std::size_t i = 0; i < f.domain.torsion().size(); ++i) {
        const Int& d = f.domain.torsion()[i];
        if (!even4::is_even(d)) continue;  // odd slots die in the cokernel
        Int lifted = (d * f.coeffs[i]) / mod;
        out.bits.push_back(static_cast<uint8_t>(abs(lifted % 2).convert_to<unsigned>()));
    }
    return out;
}

/// Composition g . f for f : G -> Z_{2^nu} and g a character on the cyclic
/// group Z_{2^nu} (domain with single torsion coefficient 2^nu).
inline Character compose(const Character& g, const Character& f) {
    if (g.domain.free_rank() != 0 || g.domain.torsion().size() != 1 ||
        g.domain.torsion()[0] != pow2(f.target_exponent))
        throw std::invalid_argument("compose: domain of g must be the codomain of f");
    Character h;
    h.domain = f.domain;
    h.target_exponent = g.target_exponent;
    const Int mod = pow2(g.target_exponent);
    h.coeffs.reserve(f.coeffs.size());
    for (const Int& a : f.coeffs) {
        Int c = (g.coeffs[0] * a) % mod;
        h.coeffs.push_back(((c % mod) + mod) % mod);
    }
    return h;
}

/// |Hom(G, Z_n)| = n^free_rank * prod gcd(d_i, n).
inline Int hom_count(const AbelianGroup& g, const Int& n) {
    if (n < 1) throw std::invalid_argument("hom_count: modulus must be >= 1");
    Int count = 1;
    for (std::size_t i = 0; i < g.free_rank(); ++i) count *= n;
    for (const Int& d : g.torsion()) count *= gcd(d, n);
    return count;
}

/// Whether the reduction Hom(G, Z4) -> Hom(G, Z2) is onto. Factorwise this
/// holds for a cyclic factor Z_{2^k} exactly when k >= 2, so the map is onto
/// iff no even torsion coefficient has 2-adic valuation 1.
inline bool hom_mod4_reduction_onto(const AbelianGroup& g) {
    const TwoPrimary tp = two_primary(g);
    return tp.t == 0 || tp.exponents.front() >= 2;
}

}  // namespace even4
