#include "gsums/intmat.hpp"

#include <algorithm>

namespace gsums {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::mul(const IntMat& o) const {
    IntMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const BigInt& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

IntMat IntMat::transpose() const {
    IntMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

IntMat IntMat::mod(const BigInt& m) const {
    IntMat r = *this;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            BigInt v = r.at(i, j) % m;
            if (v < 0) v += m;
            r.at(i, j) = v;
        }
    return r;
}

void IntMat::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMat::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMat::add_row(int dst, int src, const BigInt& f) {
    for (int c = 0; c < cols_; ++c) at(dst, c) += f * at(src, c);
}

void IntMat::add_col(int dst, int src, const BigInt& f) {
    for (int r = 0; r < rows_; ++r) at(r, dst) += f * at(r, src);
}

void IntMat::scale_row(int i, const BigInt& f) {
    for (int c = 0; c < cols_; ++c) at(i, c) *= f;
}

void IntMat::scale_col(int i, const BigInt& f) {
    for (int r = 0; r < rows_; ++r) at(r, i) *= f;
}

BigInt det(const IntMat& m) {
    // Bareiss fraction-free elimination.
    int n = m.rows();
    if (n != m.cols()) throw SingularMatrix("determinant of non-square matrix");
    if (n == 0) return 1;
    IntMat a = m;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

SmithResult smith_normal_form(const IntMat& a) {
    SmithResult res;
    res.d = a;
    res.u = IntMat::identity(a.rows());
    res.v = IntMat::identity(a.cols());
    IntMat& d = res.d;
    int n = a.rows(), m = a.cols();
    int t = 0;
    while (t < n && t < m) {
        // Locate the entry of least nonzero magnitude in the trailing block.
        int pi = -1, pj = -1;
        BigInt best = 0;
        for (int i = t; i < n; ++i)
            for (int j = t; j < m; ++j) {
                if (d.at(i, j) == 0) continue;
                BigInt v = abs(d.at(i, j));
                if (pi < 0 || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        d.swap_rows(t, pi);
        res.u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        res.v.swap_cols(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < n; ++i) {
                if (d.at(i, t) == 0) continue;
                BigInt q = d.at(i, t) / d.at(t, t);
                d.add_row(i, t, -q);
                res.u.add_row(i, t, -q);
                if (d.at(i, t) != 0) {
                    d.swap_rows(t, i);
                    res.u.swap_rows(t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < m; ++j) {
                if (d.at(t, j) == 0) continue;
                BigInt q = d.at(t, j) / d.at(t, t);
                d.add_col(j, t, -q);
                res.v.add_col(j, t, -q);
                if (d.at(t, j) != 0) {
                    d.swap_cols(t, j);
                    res.v.swap_cols(t, j);
                    clean = false;
                }
            }
        }
        ++t;
    }
    // Enforce the divisibility chain d1 | d2 | ...
    int r = std::min(n, m);
    for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) {
            if (d.at(i, i) == 0 && d.at(j, j) == 0) continue;
            if (d.at(i, i) != 0 && d.at(j, j) % d.at(i, i) == 0) continue;
            // Fold entry (j,j) into row i and re-reduce the 2x2 corner.
            d.add_col(i, j, 1);
            res.v.add_col(i, j, 1);
            bool clean = false;
            while (!clean) {
                clean = true;
                if (d.at(j, i) != 0) {
                    if (d.at(i, i) == 0 || (d.at(j, i) != 0 && abs(d.at(j, i)) < abs(d.at(i, i)))) {
                        d.swap_rows(i, j);
                        res.u.swap_rows(i, j);
                    }
                    BigInt q = d.at(j, i) / d.at(i, i);
                    d.add_row(j, i, -q);
                    res.u.add_row(j, i, -q);
                    if (d.at(j, i) != 0) clean = false;
                }
                if (d.at(i, j) != 0) {
                    BigInt q = d.at(i, j) / d.at(i, i);
                    d.add_col(j, i, -q);
                    res.v.add_col(j, i, -q);
                    if (d.at(i, j) != 0) clean = false;
                }
            }
        }
    }
    for (int i = 0; i < r; ++i) {
        if (d.at(i, i) < 0) {
            d.scale_row(i, -1);
            res.u.scale_row(i, -1);
        }
    }
    return res;
}

IntMat column_lattice_basis(const IntMat& a) {
    int n = a.rows(), m = a.cols();
    IntMat w = a;
    // Column Hermite reduction into a lower-triangular n x n basis.
    int col = 0;
    for (int row = 0; row < n; ++row) {
        int piv = -1;
        for (int j = col; j < m; ++j)
            if (w.at(row, j) != 0) {
                piv = j;
                break;
            }
        if (piv < 0) throw SingularMatrix("column lattice does not have full rank");
        w.swap_cols(col, piv);
        bool again = true;
        while (again) {
            again = false;
            for (int j = col + 1; j < m; ++j) {
                if (w.at(row, j) == 0) continue;
                if (abs(w.at(row, j)) < abs(w.at(row, col))) w.swap_cols(col, j);
                BigInt q = w.at(row, j) / w.at(row, col);
                w.add_col(j, col, -q);
                if (w.at(row, j) != 0) again = true;
            }
        }
        if (w.at(row, col) < 0) w.scale_col(col, -1);
        // Reduce earlier columns against the new pivot.
        for (int j = 0; j < col; ++j) {
            BigInt q = w.at(row, j) / w.at(row, col);
            if (w.at(row, j) % w.at(row, col) < 0) q -= 1;
            w.add_col(j, col, -q);
        }
        ++col;
    }
    IntMat basis(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) basis.at(i, j) = w.at(i, j);
    return basis;
}

bool solve_lower_triangular(const IntMat& a, const std::vector<BigInt>& b, std::vector<BigInt>& x) {
    int n = a.rows();
    x.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        BigInt acc = b[i];
        for (int j = 0; j < i; ++j) acc -= a.at(i, j) * x[j];
        if (a.at(i, i) == 0 || acc % a.at(i, i) != 0) return false;
        x[i] = acc / a.at(i, i);
    }
    return true;
}

IntMat inverse_unimodular(const IntMat& u) {
    int n = u.rows();
    BigInt dv = det(u);
    if (dv != 1 && dv != -1) throw SingularMatrix("matrix is not unimodular");
    // Adjugate via cofactors is fine at these sizes; use Gauss-Jordan over rationals instead.
    std::vector<std::vector<BigRat>> a(n, std::vector<BigRat>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = BigRat(u.at(i, j));
        a[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (a[i][col] != 0) {
                piv = i;
                break;
            }
        std::swap(a[col], a[piv]);
        BigRat f = a[col][col];
        for (int j = 0; j < 2 * n; ++j) a[col][j] /= f;
        for (int i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            BigRat g = a[i][col];
            for (int j = 0; j < 2 * n; ++j) a[i][j] -= g * a[col][j];
        }
    }
    IntMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (denominator(a[i][n + j]) != 1) throw SingularMatrix("inverse is not integral");
            inv.at(i, j) = numerator(a[i][n + j]);
        }
    return inv;
}

IntMat kronecker(const IntMat& a, const IntMat& b) {
    IntMat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    r.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
        }
    return r;
}

i64 to_i64(const BigInt& v) {
    if (v > INT64_MAX || v < INT64_MIN) throw Overflow("value out of 64-bit range");
    return static_cast<i64>(v);
}

} // namespace gsums
