#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gsums/group.hpp"
#include "gsums/rational.hpp"

namespace gsums {

/// A symmetric bilinear form b: T x T -> Q/Z given by its Gram matrix on the
/// standard generators.
class BilinearForm {
public:
    static BilinearForm build(FinAbGroup t, std::vector<std::vector<QmodZ>> gram);

    const FinAbGroup& group() const { return t_; }
    const std::vector<std::vector<QmodZ>>& gram() const { return gram_; }
    QmodZ eval(const GroupElement& x, const GroupElement& y) const;
    bool is_zero() const;

private:
    FinAbGroup t_;
    std::vector<std::vector<QmodZ>> gram_;
};

SubgroupSpan orthogonal_complement(const FinAbGroup& t, const BilinearForm& b, const SubgroupSpan& k);

struct Radical {
    SubgroupSpan span;           // generators = every element of T-perp
    SubgroupClosure closure;     // membership over T
    bool tame;                   // psi restricted to T-perp is identically zero
    std::vector<QmodZ> restriction_values; // psi on T-perp, indexed like span.generators
};

struct ReducedForm;

/// A 2-linear function psi: T -> Q/Z, materialized as a validated full value
/// table plus the generator data (psi(g_i), psi(-g_i)) and off-diagonal Gram
/// entries it was built from.
class TwoLinearForm {
public:
    /// The zero form on the trivial group.
    TwoLinearForm() : table_(1) {}

    /// Build from generator data. genvals[i] = (psi(g_i), psi(-g_i)); gram is the
    /// full symmetric matrix of b on generators, whose diagonal must equal
    /// psi(g_i) + psi(-g_i).
    static TwoLinearForm build(FinAbGroup t, std::vector<std::array<QmodZ, 2>> genvals,
                               std::vector<std::vector<QmodZ>> gram);

    /// Wrap a complete value table; validates psi(0) = 0, the cocycle identity on
    /// (sampled) triples, and the denominator bound 2|T|.
    static TwoLinearForm from_table(FinAbGroup t, std::vector<QmodZ> table);

    const FinAbGroup& group() const { return t_; }
    const std::vector<QmodZ>& table() const { return table_; }
    const std::vector<std::array<QmodZ, 2>>& genvals() const { return genvals_; }
    const std::vector<std::vector<QmodZ>>& gram() const { return gram_; }

    QmodZ eval(const GroupElement& x) const { return table_[t_.index_of(x)]; }
    QmodZ value_at(i64 idx) const { return table_[idx]; }

    BilinearForm associated_bilinear() const;

    /// d(x) = psi(x) - psi(-x) on the generators; a homomorphism T -> Q/Z.
    std::vector<QmodZ> defect_hom() const;
    QmodZ defect(const GroupElement& x) const;
    bool is_quadratic() const;

    Radical radical() const;
    bool is_tame() const { return radical().tame; }
    bool is_nonsingular() const;

    /// The induced nonsingular form on T/T-perp; requires tameness.
    ReducedForm reduce() const;

    /// psi_h(t) = psi(t) + h(t) for a homomorphism h given by values on generators.
    TwoLinearForm shift(const std::vector<QmodZ>& h) const;
    /// psi_x(t) = psi(t) + b(x, t); validated against psi_x(t) = psi(t+x) - psi(x).
    TwoLinearForm shift_by_element(const GroupElement& x) const;

    TwoLinearForm primary(i64 p) const;

    /// The induced form on K-perp/K; requires psi|_K = 0.
    struct SubquotientForm subquotient(const SubgroupSpan& k) const;

private:
    FinAbGroup t_;
    std::vector<QmodZ> table_;
    std::vector<std::array<QmodZ, 2>> genvals_;
    std::vector<std::vector<QmodZ>> gram_;
    void derive_generator_data();
};

struct ReducedForm {
    QuotientPresentation presentation; // T -> T/T-perp
    TwoLinearForm form;                // nonsingular on the quotient
};

struct SubquotientForm {
    QuotientPresentation presentation; // K-perp -> K-perp/K
    TwoLinearForm form;
};

TwoLinearForm orthogonal_sum(const TwoLinearForm& a, const TwoLinearForm& b);
TwoLinearForm scalar_mul(i64 a, const TwoLinearForm& psi);

/// The forms u_m on Z/m: u_m(1) = 1/(2m) for even m, 1/m for odd m.
TwoLinearForm standard_u(i64 m);

/// A tame quadratic enhancement of b; deterministic (lexicographically least
/// value table among all tame quadratic enhancements).
TwoLinearForm tame_quadratic_enhancement(const BilinearForm& b);

/// All quadratic enhancements of b (the Hom(T, Z/2)-orbit of any one of them).
std::vector<TwoLinearForm> quadratic_enhancements(const BilinearForm& b);

/// Integers with x1^2 + x2^2 + x3^2 + x4^2 = -1 mod p^l; x3 = x4 = 0 for odd p,
/// and x2 = 0 as well when p = 1 mod 4.
std::array<i64, 4> hensel_minus_one(i64 p, int l);

struct ConnollyIsometry {
    std::vector<std::vector<i64>> matrix; // m x m, M M^T = -I mod p^l
    int multiplicity;                     // 1, 2 or 4
};
/// Connolly's isometry psi^{perp m} ~ (-psi)^{perp m} for quadratic psi on a
/// p-group, verified entrywise on the full table.
ConnollyIsometry connolly_isometry(const TwoLinearForm& psi, i64 p);

} // namespace gsums
