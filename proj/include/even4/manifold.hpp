#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "even4/abelian.hpp"
#include "even4/forms.hpp"
#include "even4/integers.hpp"

namespace even4 {

/// Declared properties of the fundamental group. These are trusted inputs:
/// amenability and friends are not computable from a descriptor.
enum class Pi1Flag {
    finite,
    abelian,
    amenable,
    residually_finite,
    cyclic_2torsion,
    not_large,
    extension_over_amenable_positive_b1,
};

/// Numerical/homological profile of a closed oriented 4-manifold. This is a
/// profile, not a manifold: a failing checker below means "no such manifold
/// exists", not "this manifold misbehaves".
struct ManifoldDescriptor {
    Int b1 = 0;
    Int b2 = 0;
    Int tau = 0;
    std::vector<Int> torsion;  // torsion of H1, divisibility-chained
    bool even = false;
    bool spin = false;
    std::set<Pi1Flag> flags;
    std::optional<Rat> b1_l2;  // first L2 Betti number of the universal cover
    bool pi1_infinite = false;

    bool has_flag(Pi1Flag f) const { return flags.count(f) != 0; }
};

inline AbelianGroup h1(const ManifoldDescriptor& d) {
    if (d.b1 < 0) throw std::invalid_argument("descriptor: b1 must be >= 0");
    return AbelianGroup(d.b1.convert_to<std::size_t>(), d.torsion);
}

/// Dimensions derived from the descriptor. With t the number of cyclic
/// factors of the 2-primary torsion of H1:
///   e      = 2 - 2*b1 + b2
///   h2_z2  = dim H^2(.; Z2) = b2 + 2t
///   b1_z2  = dim H^1(.; Z2) = b1 + t
///   h2_z2  = e - 2 + 2*b1_z2      (consistency identity)
///   b2_l2  = e + 2*b1_l2          (infinite pi1; b0_l2 = 0 and L2 Poincare
///                                  duality, L2 Euler characteristic = e)
struct DerivedDims {
    Int e;
    Int t;
    Int h2_z2;
    Int b1_z2;
    std::optional<Rat> b2_l2;
};

struct Violation {
    std::string rule;
    std::string citation;
    std::string detail;
};

/// Necessary conditions on a descriptor. Violations are data, not errors.
inline std::vector<Violation> validate(const ManifoldDescriptor& d) {
    std::vector<Violation> out;
    if (abs(d.tau) > d.b2)
        out.push_back({"signature-bound", "|tau| <= b2 for a closed oriented 4-manifold",
                       "|tau| = " + to_string(abs(d.tau)) + " exceeds b2 = " + to_string(d.b2)});
    if (d.spin && !d.even)
        out.push_back({"spin-implies-even", "a spin 4-manifold has even intersection form", ""});
    const TwoPrimary tp = two_primary(AbelianGroup(0, d.torsion));
    if (d.even && tp.t == 0 && !d.spin)
        out.push_back({"even-no-2-torsion-implies-spin",
                       "even intersection form with no 2-torsion in H1 forces spin", ""});
    if (d.even && d.tau != 0) {
        if (d.tau % 8 != 0)
            out.push_back({"even-signature-divisibility",
                           "signature of an even unimodular form is divisible by 8",
                           "tau = " + to_string(d.tau)});
        if (d.b2 <= abs(d.tau))
            out.push_back({"even-indefinite",
                           "a nontrivial even intersection form is indefinite: b2 > |tau|",
                           "b2 = " + to_string(d.b2) + ", |tau| = " + to_string(abs(d.tau))});
    }
    return out;
}

namespace detail {

inline DerivedDims derive_unchecked(const ManifoldDescriptor& d) {
    const TwoPrimary tp = two_primary(AbelianGroup(0, d.torsion));
    DerivedDims out;
    out.t = Int(tp.t);
    out.e = 2 - 2 * d.b1 + d.b2;
    out.h2_z2 = d.b2 + 2 * out.t;
    out.b1_z2 = d.b1 + out.t;
    if (d.pi1_infinite && d.b1_l2) out.b2_l2 = Rat(out.e) + 2 * (*d.b1_l2);
    return out;
}

}  // namespace detail

inline DerivedDims derive(const ManifoldDescriptor& d) {
    auto violations = validate(d);
    if (!violations.empty())
        throw std::invalid_argument("derive: invalid descriptor: " + violations.front().rule);
    return detail::derive_unchecked(d);
}

/// Outcome of one inequality checker. `holds` is present iff the checker's
/// hypotheses apply; `slack` is rhs - lhs as an exact rational.
struct CheckVerdict {
    std::string name;
    bool applicable = false;
    std::optional<bool> holds;
    std::optional<Rat> slack;
    std::string citation;
};

namespace detail {

inline CheckVerdict inapplicable(std::string name, std::string citation) {
    CheckVerdict v;
    v.name = std::move(name);
    v.applicable = false;
    v.citation = std::move(citation);
    return v;
}

inline CheckVerdict compare(std::string name, std::string citation, const Rat& lhs,
                            const Rat& rhs, bool strict) {
    CheckVerdict v;
    v.name = std::move(name);
    v.applicable = true;
    v.slack = rhs - lhs;
    v.holds = strict ? (lhs < rhs) : (lhs <= rhs);
    v.citation = std::move(citation);
    return v;
}

inline Rat five_fourths_abs_tau(const ManifoldDescriptor& d) {
    return Rat(5 * abs(d.tau), 4);
}

}  // namespace detail

/// The predicate (5/4)|tau| <= b2, as the spin-case bound is invoked in the
/// covering arguments.
inline bool furuta_bound_ok(const Int& tau, const Int& b2) {
    return Rat(5 * abs(tau), 4) <= Rat(b2);
}

/// The stronger spin bound with nonzero signature: (5/4)|tau| <= b2 - 2.
inline bool furuta_bound_strong_ok(const Int& tau, const Int& b2) {
    return Rat(5 * abs(tau), 4) <= Rat(b2 - 2);
}

inline const char* kCiteFiveFourths = "even form: (5/4)|tau| <= b2";
inline const char* kCiteEvenZ2 = "even form, tau != 0: (5/4)|tau| <= dim_Z2 H^2 - 2";
inline const char* kCiteEvenCoverZ2 =
    "even finite abelian cover, tau != 0: (5/4)|tau| < dim_Z2 H^2";
inline const char* kCiteAmenableEuler =
    "amenable or not-large pi1, even form or even finite cover: (5/4)|tau| <= e";
inline const char* kCiteElevenEighths =
    "conditional on the 11/8-conjecture: (11/8)|tau| <= e";
inline const char* kCiteL2 =
    "residually finite infinite pi1, even form: (5/4)|tau| <= b2_l2 = e + 2*b1_l2";
inline const char* kCiteCyclic2Torsion = "cyclic 2-torsion of H1, even form: (5/4)|tau| <= b2";
inline const char* kCiteFiniteOrAbelian = "finite or abelian pi1, even form: (5/4)|tau| <= b2";
inline const char* kCiteExtension =
    "pi1 an extension of an amenable group with b1 > 0, even form: (5/4)|tau| <= e";

/// (5/4)|tau| <= b2 for even forms.
inline CheckVerdict check_five_fourths(const ManifoldDescriptor& d) {
    if (!d.even) return detail::inapplicable("five-fourths", kCiteFiveFourths);
    return detail::compare("five-fourths", kCiteFiveFourths, detail::five_fourths_abs_tau(d),
                           Rat(d.b2), false);
}

/// (5/4)|tau| <= dim_Z2 H^2 - 2 for even forms with nonzero signature.
inline CheckVerdict check_even_z2_bound(const ManifoldDescriptor& d) {
    if (!d.even || d.tau == 0) return detail::inapplicable("even-z2", kCiteEvenZ2);
    const DerivedDims dd = detail::derive_unchecked(d);
    return detail::compare("even-z2", kCiteEvenZ2, detail::five_fourths_abs_tau(d),
                           Rat(dd.h2_z2 - 2), false);
}

/// Strict bound (5/4)|tau| < dim_Z2 H^2 when some finite abelian cover is
/// even; the descriptor itself need not be.
inline CheckVerdict check_even_cover_z2_bound(const ManifoldDescriptor& d, bool cover_is_even) {
    if (!cover_is_even || d.tau == 0)
        return detail::inapplicable("even-cover-z2", kCiteEvenCoverZ2);
    const DerivedDims dd = detail::derive_unchecked(d);
    return detail::compare("even-cover-z2", kCiteEvenCoverZ2, detail::five_fourths_abs_tau(d),
                           Rat(dd.h2_z2), true);
}

/// (5/4)|tau| <= e for amenable (or merely not large) fundamental groups.
inline CheckVerdict check_amenable_euler(const ManifoldDescriptor& d, bool cover_is_even = false) {
    const bool group_ok = d.has_flag(Pi1Flag::amenable) || d.has_flag(Pi1Flag::not_large);
    if (!(d.even || cover_is_even) || !group_ok)
        return detail::inapplicable("amenable-euler", kCiteAmenableEuler);
    const DerivedDims dd = detail::derive_unchecked(d);
    return detail::compare("amenable-euler", kCiteAmenableEuler, detail::five_fourths_abs_tau(d),
                           Rat(dd.e), false);
}

/// (11/8)|tau| <= e under the same hypotheses; conditional on the
/// 11/8-conjecture.
inline CheckVerdict check_eleven_eighths_euler(const ManifoldDescriptor& d,
                                               bool cover_is_even = false) {
    const bool group_ok = d.has_flag(Pi1Flag::amenable) || d.has_flag(Pi1Flag::not_large);
    if (!(d.even || cover_is_even) || !group_ok)
        return detail::inapplicable("eleven-eighths-euler", kCiteElevenEighths);
    const DerivedDims dd = detail::derive_unchecked(d);
    return detail::compare("eleven-eighths-euler", kCiteElevenEighths,
                           Rat(11 * abs(d.tau), 8), Rat(dd.e), false);
}

/// (5/4)|tau| <= b2_l2 for even forms with residually finite infinite pi1;
/// b2_l2 is derived as e + 2*b1_l2.
inline CheckVerdict check_l2_bound(const ManifoldDescriptor& d) {
    if (!d.even || !d.has_flag(Pi1Flag::residually_finite) || !d.pi1_infinite || !d.b1_l2)
        return detail::inapplicable("l2-betti", kCiteL2);
    const DerivedDims dd = detail::derive_unchecked(d);
    return detail::compare("l2-betti", kCiteL2, detail::five_fourths_abs_tau(d), *dd.b2_l2,
                           false);
}

/// (5/4)|tau| <= b2 when the 2-torsion of H1 is cyclic (t <= 1).
inline CheckVerdict check_cyclic_two_torsion(const ManifoldDescriptor& d) {
    const TwoPrimary tp = two_primary(AbelianGroup(0, d.torsion));
    if (!d.even || tp.t > 1)
        return detail::inapplicable("cyclic-2-torsion", kCiteCyclic2Torsion);
    return detail::compare("cyclic-2-torsion", kCiteCyclic2Torsion,
                           detail::five_fourths_abs_tau(d), Rat(d.b2), false);
}

/// (5/4)|tau| <= b2 for finite or abelian fundamental groups.
inline CheckVerdict check_finite_or_abelian(const ManifoldDescriptor& d) {
    const bool group_ok = d.has_flag(Pi1Flag::finite) || d.has_flag(Pi1Flag::abelian);
    if (!d.even || !group_ok)
        return detail::inapplicable("finite-or-abelian", kCiteFiniteOrAbelian);
    return detail::compare("finite-or-abelian", kCiteFiniteOrAbelian,
                           detail::five_fourths_abs_tau(d), Rat(d.b2), false);
}

/// (5/4)|tau| <= e when pi1 is an extension 1 -> H -> pi1 -> Gamma -> 1 with
/// Gamma amenable and b1(Gamma) > 0 (declared via flag).
inline CheckVerdict check_extension_euler(const ManifoldDescriptor& d) {
    if (!d.even || !d.has_flag(Pi1Flag::extension_over_amenable_positive_b1))
        return detail::inapplicable("amenable-extension", kCiteExtension);
    const DerivedDims dd = detail::derive_unchecked(d);
    return detail::compare("amenable-extension", kCiteExtension,
                           detail::five_fourths_abs_tau(d), Rat(dd.e), false);
}

/// Every checker, in a fixed order; an even descriptor counts as its own
/// even cover of degree one.
inline std::vector<CheckVerdict> run_all_checks(const ManifoldDescriptor& d) {
    return {
        check_five_fourths(d),
        check_even_z2_bound(d),
        check_even_cover_z2_bound(d, d.even),
        check_amenable_euler(d),
        check_eleven_eighths_euler(d),
        check_l2_bound(d),
        check_cyclic_two_torsion(d),
        check_finite_or_abelian(d),
        check_extension_euler(d),
    };
}

}  // namespace even4
