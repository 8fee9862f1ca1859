#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "even4/abelian.hpp"
#include "even4/manifold.hpp"

namespace even4 {

enum class CoverStructure {
    cyclic_two_power,
    abelian_two_group,
    abelian,
    odd,
    general,
};

/// A finite covering, described by its degree and what is known about its
/// deck group.
struct CoverTransform {
    Int degree = 1;
    CoverStructure structure = CoverStructure::general;
};

inline void validate_transform(const CoverTransform& c) {
    if (c.degree < 1) throw std::invalid_argument("cover: degree must be >= 1");
    switch (c.structure) {
        case CoverStructure::odd:
            if (even4::is_even(c.degree))
                throw std::invalid_argument("cover: odd structure requires odd degree");
            break;
        case CoverStructure::cyclic_two_power:
        case CoverStructure::abelian_two_group:
            if (!is_power_of_two(c.degree))
                throw std::invalid_argument("cover: 2-group structure requires a power-of-two degree");
            break;
        default:
            break;
    }
}

/// What a finite cover's profile is forced to look like. Euler characteristic
/// and signature are multiplicative; b1 and torsion of the cover are not
/// determined by the base, so only a bound on dim H^1(.; Z2) is reported, and
/// only for 2-power abelian covers. Evenness transfers from cover to base
/// precisely along odd-degree covers.
struct CoverImage {
    Int degree = 1;
    CoverStructure structure = CoverStructure::general;
    Int e = 0;
    Int tau = 0;
    std::optional<Int> b1_z2_upper;
    bool evenness_descends = false;  // odd degree: cover even => base even
};

/// dim_Z2 H^1 of a connected abelian cover of 2-power degree m is at most
/// m * dim_Z2 H^1(base) - m + 1.
inline Int abelian_two_power_h1_bound(const Int& b1_z2_base, const Int& m) {
    if (!is_power_of_two(m))
        throw std::invalid_argument("h1 bound: stated only for abelian covers of 2-power degree");
    return m * b1_z2_base - m + 1;
}

inline bool is_two_power_abelian(CoverStructure s) {
    return s == CoverStructure::cyclic_two_power || s == CoverStructure::abelian_two_group;
}

inline CoverImage transform(const ManifoldDescriptor& d, const CoverTransform& c) {
    validate_transform(c);
    const DerivedDims dd = detail::derive_unchecked(d);
    CoverImage out;
    out.degree = c.degree;
    out.structure = c.structure;
    out.e = c.degree * dd.e;
    out.tau = c.degree * d.tau;
    if (is_two_power_abelian(c.structure))
        out.b1_z2_upper = abelian_two_power_h1_bound(dd.b1_z2, c.degree);
    out.evenness_descends = !even4::is_even(c.degree);
    return out;
}

/// Composite of two covering transforms applied to an already-transformed
/// image; multiplicativity composes, and the H^1 bound composes through the
/// inductive step of its proof.
inline CoverImage transform(const CoverImage& base, const CoverTransform& c) {
    validate_transform(c);
    CoverImage out;
    out.degree = base.degree * c.degree;
    out.structure = (base.structure == c.structure) ? c.structure : CoverStructure::general;
    if (base.structure == CoverStructure::odd && c.structure == CoverStructure::odd)
        out.structure = CoverStructure::odd;
    if (is_two_power_abelian(base.structure) && is_two_power_abelian(c.structure))
        out.structure = CoverStructure::abelian_two_group;
    out.e = c.degree * base.e;
    out.tau = c.degree * base.tau;
    if (base.b1_z2_upper && is_two_power_abelian(c.structure))
        out.b1_z2_upper = abelian_two_power_h1_bound(*base.b1_z2_upper, c.degree);
    out.evenness_descends = !even4::is_even(out.degree);
    return out;
}

/// Evenness and spin descend along odd-degree covers.
struct OddDescent {
    std::optional<bool> base_even;
    std::optional<bool> base_spin;
};

inline OddDescent odd_descent(bool cover_even, bool cover_spin, const Int& m) {
    if (m < 1 || even4::is_even(m))
        throw std::invalid_argument("odd_descent: degree must be odd and >= 1");
    OddDescent out;
    if (cover_even) out.base_even = true;
    if (cover_spin) out.base_spin = true;
    return out;
}

/// For a double cover of a space with H1 = Z_{2^k}, spin-ness of base and
/// cover are equivalent exactly when k >= 2; this is the minimality mechanism
/// for the tower below.
inline bool double_cover_spin_equivalent(unsigned k) { return k >= 2; }

/// One double-cover step in the decomposition of a cyclic 2-power cover,
/// following the subgroup chain Z_{2^(mu-nu)} c ... c Z_{2^mu} inside the
/// 2-primary exponent.
struct TowerStep {
    unsigned index = 0;       // 1-based, counted from the base
    Int deck_above;           // deck group order of the space above this step
    Int deck_below;           // deck group order of the space below
    Int subgroup_above;       // 2^(mu - index + 1)
    Int subgroup_below;       // 2^(mu - index)
    bool spin_equivalent = false;
};

/// Plan for the minimal cyclic spin cover of an even descriptor: the
/// character certifying that its induced Ext map hits the prescribed class,
/// the cover degree 2^nu, and the decomposition into nu double covers.
struct SpinCoverPlan {
    bool already_spin = false;
    Int degree = 1;
    Character character;         // corestricted surjection onto Z_{2^nu}
    ExtClass target;             // the class the plan realizes
    ExtClass certificate;        // induced Ext image of the character
    bool certificate_ok = false;
    std::vector<TowerStep> tower;
};

inline SpinCoverPlan plan_spin_cover(const ManifoldDescriptor& d, const ExtClass& w2) {
    if (!d.even)
        throw std::invalid_argument(
            "plan_spin_cover: descriptor must have even intersection form");
    const AbelianGroup g = h1(d);
    const TwoPrimary tp = two_primary(g);
    if (w2.bits.size() != tp.t)
        throw std::invalid_argument("plan_spin_cover: w2 length does not match the even-slot count");

    SpinCoverPlan plan;
    plan.target = w2;
    if (d.spin || w2.is_zero()) {
        plan.already_spin = true;
        plan.degree = 1;
        plan.character.domain = g;
        plan.character.target_exponent = 0;
        plan.character.coeffs.assign(g.torsion().size(), Int(0));
        plan.certificate = induced_ext_image(plan.character);
        plan.certificate_ok = w2.is_zero() && plan.certificate.is_zero();
        return plan;
    }

    const Character full = character_realizing(g, w2);
    const SurjectiveImage image = surjective_image(full);
    plan.character = image.surjection;
    plan.degree = pow2(image.nu);
    plan.certificate = induced_ext_image(plan.character);
    plan.certificate_ok = plan.certificate == w2;

    for (unsigned step = 1; step <= image.nu; ++step) {
        TowerStep ts;
        ts.index = step;
        ts.deck_above = pow2(step);
        ts.deck_below = pow2(step - 1);
        ts.subgroup_above = pow2(tp.mu - step + 1);
        ts.subgroup_below = pow2(tp.mu - step);
        ts.spin_equivalent = double_cover_spin_equivalent(tp.mu - step + 1);
        plan.tower.push_back(ts);
    }
    return plan;
}

/// One evaluated line of the covering-argument chain.
struct ChainLine {
    std::string label;
    std::string statement;
    Rat lhs;
    Rat rhs;
    std::string relation;  // "=", "<=", "<"
    bool holds = false;
};

/// Numerical replay of the covering argument that bounds the signature of an
/// even descriptor: pass to the planned spin cover, bound its dim H^1(.; Z2),
/// convert through the Euler identity to a bound on dim H^2(.; Z2), apply the
/// spin-case bound on the cover, and round by parity. The final verdict must
/// agree with check_even_z2_bound.
struct EvenBoundChain {
    SpinCoverPlan plan;
    Int degree = 1;
    std::vector<ChainLine> lines;
    CheckVerdict final;
};

inline EvenBoundChain replay_even_bound(const ManifoldDescriptor& d, const ExtClass& w2) {
    if (!d.even) throw std::invalid_argument("replay_even_bound: descriptor must be even");
    if (d.tau == 0)
        throw std::invalid_argument("replay_even_bound: nonzero signature required");

    EvenBoundChain chain;
    chain.plan = plan_spin_cover(d, w2);
    chain.degree = chain.plan.degree;
    const Int m = chain.degree;
    const DerivedDims dd = detail::derive_unchecked(d);

    auto push = [&chain](std::string label, std::string statement, Rat lhs, Rat rhs,
                         std::string relation) {
        ChainLine line;
        line.label = std::move(label);
        line.statement = std::move(statement);
        line.lhs = std::move(lhs);
        line.rhs = std::move(rhs);
        line.relation = std::move(relation);
        line.holds = line.relation == "=" ? line.lhs == line.rhs
                   : line.relation == "<" ? line.lhs < line.rhs
                                          : line.lhs <= line.rhs;
        chain.lines.push_back(std::move(line));
    };

    // Multiplicativity of signature and Euler characteristic.
    push("cover-signature", "tau(cover) = m * tau = " + to_string(m * d.tau), Rat(m * d.tau),
         Rat(m * d.tau), "=");
    push("cover-euler", "e(cover) = m * e = " + to_string(m * dd.e), Rat(m * dd.e),
         Rat(m * dd.e), "=");

    // Bound for dim H^1 of the cover (ordinary and Z2 Betti numbers of the
    // cover are labeled explicitly on each line).
    const Int h1_bound = abelian_two_power_h1_bound(dd.b1_z2, m);
    push("cover-h1-z2-bound",
         "b1(cover; Z2) <= m * b1(X; Z2) - m + 1 = " + to_string(h1_bound), Rat(h1_bound),
         Rat(h1_bound), "=");

    // Euler identity on the cover turned into a bound on dim H^2(cover; Z2).
    const Int b2_cover_bound = m * dd.e - 2 + 2 * h1_bound;
    push("cover-b2-z2-identity-bound",
         "b2(cover; Z2) = m * e(X) - 2 + 2 * b1(cover; Z2) <= " + to_string(b2_cover_bound),
         Rat(b2_cover_bound), Rat(b2_cover_bound), "=");

    // The bound collapses to m * dim H^2(X; Z2); this equality is algebra and
    // must hold identically.
    push("simplify", "m * e(X) - 2 + 2 * (m * b1(X; Z2) - m + 1) = m * b2(X; Z2)",
         Rat(b2_cover_bound), Rat(m * dd.h2_z2), "=");

    // Ordinary b2 of the cover is at most its Z2 Betti number.
    push("ordinary-b2", "b2(cover) <= b2(cover; Z2) <= m * b2(X; Z2)", Rat(b2_cover_bound),
         Rat(m * dd.h2_z2), "<=");

    // Spin-case bound on the cover, with tau(cover) = m * tau != 0, combined
    // with the b2 bound and divided by m.
    const Rat lhs = Rat(5 * abs(d.tau), 4);
    const Rat rational_rhs = Rat(dd.h2_z2) - Rat(2, m);
    push("spin-bound-on-cover",
         "(5/4)|m*tau| <= b2(cover) - 2  =>  (5/4)|tau| <= b2(X; Z2) - 2/m", lhs, rational_rhs,
         "<=");

    // Both sides are even integers, so the bound rounds to b2(X; Z2) - 2.
    push("parity-rounding", "(5/4)|tau| and b2(X; Z2) even  =>  (5/4)|tau| <= b2(X; Z2) - 2",
         lhs, Rat(dd.h2_z2 - 2), "<=");

    chain.final = check_even_z2_bound(d);
    return chain;
}

}  // namespace even4
