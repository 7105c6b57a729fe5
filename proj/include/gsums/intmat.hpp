#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "gsums/rational.hpp"

namespace gsums {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Dense integer matrix with exact arithmetic; internal plumbing for the
/// group-quotient and matrix-reduction machinery.
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int r, int c) : rows_(r), cols_(c), a_(static_cast<size_t>(r) * c, 0) {}

    static IntMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    BigInt& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const BigInt& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    IntMat mul(const IntMat& o) const;
    IntMat transpose() const;
    IntMat mod(const BigInt& m) const; // entrywise floor-mod into [0, m)
    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void add_row(int dst, int src, const BigInt& f);    // row dst += f * row src
    void add_col(int dst, int src, const BigInt& f);
    void scale_row(int i, const BigInt& f);
    void scale_col(int i, const BigInt& f);

private:
    int rows_, cols_;
    std::vector<BigInt> a_;
};

BigInt det(const IntMat& m);

struct SmithResult {
    IntMat u, v, d; // u * a * v = d, u and v unimodular, d diagonal with d1 | d2 | ...
};
SmithResult smith_normal_form(const IntMat& a);

/// Column-style Hermite form: returns a lower-triangular square basis matrix of
/// the column lattice of `a` (which must have full row rank).
IntMat column_lattice_basis(const IntMat& a);

/// Solve a * x = b exactly over the integers for lower-triangular `a` with
/// nonzero diagonal; returns false if no integral solution exists.
bool solve_lower_triangular(const IntMat& a, const std::vector<BigInt>& b, std::vector<BigInt>& x);

IntMat inverse_unimodular(const IntMat& u); // u must have det +-1

IntMat kronecker(const IntMat& a, const IntMat& b);

i64 to_i64(const BigInt& v);

} // namespace gsums
