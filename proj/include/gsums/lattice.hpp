#pragma once

#include <optional>

#include "gsums/forms.hpp"
#include "gsums/intmat.hpp"

namespace gsums {

/// An integral symmetric bilinear form, i.e. the Gram matrix of a lattice.
class IntSymMatrix {
public:
    IntSymMatrix() : n_(0) {}
    static IntSymMatrix of(std::vector<std::vector<i64>> entries);
    static IntSymMatrix diagonal(const std::vector<i64>& d);

    int size() const { return n_; }
    i64 at(int i, int j) const { return e_[i][j]; }
    const std::vector<std::vector<i64>>& entries() const { return e_; }
    bool even_diagonal() const;
    BigInt determinant() const;
    IntMat to_intmat() const;

private:
    int n_;
    std::vector<std::vector<i64>> e_;
};

/// Exact signature by rational symmetric elimination; hyperbolic pairs split
/// off zero-diagonal blocks.
int signature(const IntSymMatrix& b);

class DiscriminantForm;

namespace detail {
DiscriminantForm make_discriminant(const IntSymMatrix& b,
                                   const std::function<BigRat(const std::vector<BigRat>&)>& quad);
}

/// The finite form carried by L^#/L for a nonsingular lattice Gram matrix.
class DiscriminantForm {
public:
    const FinAbGroup& group() const { return group_; }
    const BilinearForm& bilinear() const { return bilinear_; }
    const std::optional<TwoLinearForm>& enhancement() const { return enhancement_; }

    /// Class in L^#/L of a rational vector given in lattice coordinates.
    GroupElement class_of(const std::vector<BigRat>& v) const;
    /// The chosen rational representative of the i-th group generator.
    const std::vector<BigRat>& generator_vector(int i) const { return gens_[i]; }

private:
    friend DiscriminantForm detail::make_discriminant(
        const IntSymMatrix&, const std::function<BigRat(const std::vector<BigRat>&)>&);
    FinAbGroup group_;
    BilinearForm bilinear_;
    std::optional<TwoLinearForm> enhancement_;
    IntMat bmat_, umat_;                  // class_of(v) = U B v mod d, rows of nontrivial factors
    std::vector<int> kept_rows_;
    std::vector<std::vector<BigRat>> gens_;
};

/// Bilinear part only: L^#/L with b_L(x, y) = x^T B y mod 1.
DiscriminantForm discriminant_group(const IntSymMatrix& b);

/// The quadratic enhancement psi_L(x) = x^T B x / 2 mod 1 for even B, checked
/// against beta(psi_L) = signature(B)/8.
DiscriminantForm milgram_enhancement(const IntSymMatrix& b);

/// Lexicographically least 0/1 vector nu with B(v,v) = B(nu,v) mod 2 for all v.
std::vector<i64> characteristic_vector(const IntSymMatrix& b);

/// The enhancement psi_nu from Q(x) = (B(x,x) - B(nu,x))/2.
DiscriminantForm bmf_enhancement(const IntSymMatrix& b, const std::vector<i64>& nu);

/// Asserts beta(psi_nu) = (signature(B) - B(nu,nu))/8 exactly.
bool bmf_check(const IntSymMatrix& b, const std::vector<i64>& nu);

/// (B tensor psi)(t_1..t_n) = sum_i B_ii psi(t_i) + sum_{i<j} B_ij b(t_i, t_j);
/// psi must be quadratic.
TwoLinearForm tensor(const IntSymMatrix& b, const TwoLinearForm& psi);

/// psi_{B,m}(x) = B(x,x)/2m on (Z/m)^n for even m; equals tensor(B, u_m).
TwoLinearForm brown_form(const IntSymMatrix& b, i64 m);

/// The Arf invariant phi_2(det(S + S^T))/2 of a Seifert matrix, cross-checked
/// against the Gauss sum of x^T S x / 2 on (Z/2)^n.
QmodZ arf_from_seifert(const std::vector<std::vector<i64>>& s);

} // namespace gsums
