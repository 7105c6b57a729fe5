#pragma once

#include <optional>

#include "gsums/cyclotomic.hpp"
#include "gsums/forms.hpp"

namespace gsums {

/// G(psi) = sum over T of exp(2 pi i psi(t)), exactly: the coefficient of
/// zeta_N^k counts elements with psi(t) = k/N, N = lcm of value denominators.
CycSum gauss_sum(const TwoLinearForm& psi);

struct Magnitude {
    enum class Kind { Zero, SqrtOf } kind;
    i64 value; // |G|^2 when kind = SqrtOf, else 0
};
/// Computes G * conj(G) exactly and checks it against the magnitude theorem:
/// 0 when psi is not tame, |T-perp| * |T| when tame.
Magnitude magnitude_check(const TwoLinearForm& psi);

/// The phase of G(psi) in Q/Z, or the distinguished not-tame state.
struct BetaValue {
    std::optional<QmodZ> value; // empty = not tame
    bool tame() const { return value.has_value(); }
    const QmodZ& operator*() const { return *value; }
    /// Prints "k/8" whenever the denominator divides 8, else the reduced fraction.
    std::string str() const;
};

BetaValue beta(const TwoLinearForm& psi);

/// Exact check of G(psi) = |K| * G(psi restricted to K-perp/K).
bool verify_subquotient(const TwoLinearForm& psi, const SubgroupSpan& k);

/// Exact check of beta(psi_x) = beta(psi) - psi(x) and of the induced-form
/// identity x -> beta(psi) - beta(psi_x) = reduced psi, at the element x.
bool verify_shift(const TwoLinearForm& psi, const GroupElement& x);

} // namespace gsums
