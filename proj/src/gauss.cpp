#include "gsums/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gsums {

CycSum gauss_sum(const TwoLinearForm& psi) {
    i64 level = 1;
    for (const QmodZ& v : psi.table()) level = lcm_checked(level, v.den());
    std::vector<i64> c(static_cast<size_t>(level), 0);
    for (const QmodZ& v : psi.table()) ++c[v.num_at(level)];
    return CycSum(level, std::move(c));
}

Magnitude magnitude_check(const TwoLinearForm& psi) {
    Radical rad = psi.radical();
    CycSum g = gauss_sum(psi);
    CycSum norm = g.mul(g.conjugate());
    i64 expected = rad.tame ? mul_checked(rad.closure.size(), psi.group().size()) : 0;
    if (norm != CycSum::constant(expected))
        throw TheoremViolated("|G|^2 does not match the magnitude theorem");
    if (rad.tame) return {Magnitude::Kind::SqrtOf, expected};
    return {Magnitude::Kind::Zero, 0};
}

std::string BetaValue::str() const {
    if (!value) return "NOT TAME";
    if (8 % value->den() == 0) return std::to_string(value->num() * (8 / value->den())) + "/8";
    return value->str();
}

BetaValue beta(const TwoLinearForm& psi) {
    Radical rad = psi.radical();
    if (!rad.tame) return {};
    i64 magsq = mul_checked(rad.closure.size(), psi.group().size());

    CycSum g = gauss_sum(psi);
    i64 scan_level = lcm_checked(8, g.level());
    g = g.at_level(scan_level);
    if (g.mul(g.conjugate()) != CycSum::constant(magsq))
        throw TheoremViolated("|G|^2 does not match the magnitude theorem");

    // zeta^{-k} G is conjugation-invariant iff G^2 = |G|^2 zeta^{2k}: multiply the
    // invariance equation by G and use G conj(G) = |G|^2 in the domain Z[zeta].
    std::vector<i64> sq = g.mul(g).at_level(scan_level).canonical_coeffs();
    i64 nnz = 0;
    for (i64 v : sq)
        if (v != 0) ++nnz;

    std::vector<i64> invariant_ks;
    for (i64 k = 0; k < scan_level; ++k) {
        auto mono = detail::canonical_monomial(scan_level, 2 * k);
        if (static_cast<i64>(mono.size()) != nnz) continue;
        bool ok = true;
        for (auto [idx, sgn] : mono) {
            if (sq[idx] != sgn * magsq) {
                ok = false;
                break;
            }
        }
        if (ok) invariant_ks.push_back(k);
    }
    if (invariant_ks.empty())
        throw NoPhaseFound("no exactly conjugation-invariant rotation at level lcm(8, N)");

    std::complex<double> emb = g.embed();
    std::optional<i64> found;
    bool saw_ambiguous = false;
    for (i64 k : invariant_ks) {
        double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(scan_level);
        double re = (emb * std::polar(1.0, ang)).real();
        if (std::abs(re) <= 1e-9) {
            saw_ambiguous = true;
            continue;
        }
        if (re > 1e-9) {
            if (found) throw NoPhaseFound("phase is not unique");
            found = k;
        }
    }
    if (!found) {
        if (saw_ambiguous) throw AmbiguousSign("sign of the real candidate is numerically ambiguous");
        throw NoPhaseFound("no positive conjugation-invariant rotation");
    }
    return {QmodZ::of(*found, scan_level)};
}

bool verify_subquotient(const TwoLinearForm& psi, const SubgroupSpan& k) {
    SubquotientForm sub = psi.subquotient(k);
    i64 ksize = span_closure(psi.group(), k).size();
    return gauss_sum(psi) == gauss_sum(sub.form).scale(ksize);
}

bool verify_shift(const TwoLinearForm& psi, const GroupElement& x) {
    BetaValue b0 = beta(psi);
    if (!b0.tame()) throw NotTame("shift identity needs a tame form");
    TwoLinearForm shifted = psi.shift_by_element(x);
    BetaValue b1 = beta(shifted);
    if (!b1.tame()) return false;
    QmodZ expect = (*b0).sub(psi.eval(x));
    if (*b1 != expect) return false;
    // Remark identity: x -> beta(psi) - beta(psi_x) is the reduced form on T/T-perp.
    ReducedForm red = psi.reduce();
    QmodZ delta = (*b0).sub(*b1);
    return delta == red.form.eval(red.presentation.project(x));
}

} // namespace gsums
