#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "gsums/rational.hpp"

namespace gsums {

/// An exact cyclotomic integer sum_k coeffs[k] * zeta_N^k with zeta_N = e^{2 pi i / N},
/// stored over the redundant power basis zeta^0..zeta^{N-1}. Equality is semantic:
/// two values agree iff their difference vanishes in Z[zeta_N], decided exactly by
/// rewriting onto a tensor basis of the prime-power subfields.
class CycSum {
public:
    CycSum() : level_(1), c_(1, 0) {}
    CycSum(i64 level, std::vector<i64> coeffs);

    static CycSum zero(i64 level = 1) { return CycSum(level, std::vector<i64>(level, 0)); }
    static CycSum constant(i64 v);
    /// zeta_level^k
    static CycSum root_of_unity(i64 level, i64 k);

    i64 level() const { return level_; }
    const std::vector<i64>& coeffs() const { return c_; }

    CycSum add(const CycSum& o) const;
    CycSum sub(const CycSum& o) const;
    CycSum neg() const;
    CycSum scale(i64 a) const;
    /// Ring product; cyclic convolution of coefficients mod x^N - 1.
    CycSum mul(const CycSum& o) const;
    /// Multiplication by zeta_level^k (an index rotation).
    CycSum rotated(i64 k) const;
    /// Coefficient at zeta^k moves to zeta^{N-k mod N}; the complex conjugate.
    CycSum conjugate() const;

    /// Re-index onto a level M that is a multiple of level().
    CycSum at_level(i64 m) const;

    /// Exact zero test in Z[zeta_N].
    bool is_zero() const;
    /// Semantic equality; levels are aligned to their lcm first.
    bool operator==(const CycSum& o) const;
    bool operator!=(const CycSum& o) const { return !(*this == o); }

    /// Coefficients rewritten onto the tensor basis, still indexed by power of zeta;
    /// entries at non-basis indices are zero. Two values are equal iff their
    /// canonical coefficient vectors agree.
    std::vector<i64> canonical_coeffs() const;

    std::complex<double> embed() const;

    /// True iff exactly real (conjugation-invariant) with numeric real part > tol.
    /// The embedding decides only the sign; AmbiguousSign if |Re| <= tol while
    /// the value is exactly real and nonzero.
    bool is_real_positive(double tol = 1e-9) const;

private:
    i64 level_;
    std::vector<i64> c_;
};

namespace detail {

/// zeta_N^k rewritten on the tensor basis: a list of (index, coeff) pairs with
/// coeff in {+1,-1} products; indices are basis exponents.
std::vector<std::pair<i64, i64>> canonical_monomial(i64 level, i64 k);

/// In-place rewrite of a dense power-basis coefficient vector onto the tensor basis.
void canonicalize(i64 level, std::vector<i64>& c);

std::vector<std::pair<i64, int>> factorize(i64 n);

} // namespace detail

} // namespace gsums
