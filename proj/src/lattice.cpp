#include "gsums/lattice.hpp"

#include <algorithm>

#include "gsums/gauss.hpp"
#include "gsums/modp.hpp"

namespace gsums {

IntSymMatrix IntSymMatrix::of(std::vector<std::vector<i64>> entries) {
    IntSymMatrix m;
    m.n_ = static_cast<int>(entries.size());
    for (auto& row : entries)
        if (static_cast<int>(row.size()) != m.n_) throw NotWellDefined("matrix is not square");
    for (int i = 0; i < m.n_; ++i)
        for (int j = 0; j < m.n_; ++j)
            if (entries[i][j] != entries[j][i]) throw NotWellDefined("matrix is not symmetric");
    m.e_ = std::move(entries);
    return m;
}

IntSymMatrix IntSymMatrix::diagonal(const std::vector<i64>& d) {
    std::vector<std::vector<i64>> e(d.size(), std::vector<i64>(d.size(), 0));
    for (size_t i = 0; i < d.size(); ++i) e[i][i] = d[i];
    return of(std::move(e));
}

bool IntSymMatrix::even_diagonal() const {
    for (int i = 0; i < n_; ++i)
        if (e_[i][i] % 2 != 0) return false;
    return true;
}

IntMat IntSymMatrix::to_intmat() const {
    IntMat m(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m.at(i, j) = e_[i][j];
    return m;
}

BigInt IntSymMatrix::determinant() const { return det(to_intmat()); }

int signature(const IntSymMatrix& b) {
    int n = b.size();
    std::vector<std::vector<BigRat>> a(n, std::vector<BigRat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = BigRat(b.at(i, j));
    std::vector<int> live(n);
    for (int i = 0; i < n; ++i) live[i] = i;
    int sig = 0;
    while (!live.empty()) {
        int pi = -1;
        for (size_t s = 0; s < live.size(); ++s)
            if (a[live[s]][live[s]] != 0) {
                pi = static_cast<int>(s);
                break;
            }
        if (pi >= 0) {
            int i = live[pi];
            BigRat alpha = a[i][i];
            sig += alpha > 0 ? 1 : -1;
            live.erase(live.begin() + pi);
            for (int u : live)
                for (int v : live) a[u][v] -= a[i][u] * a[i][v] / alpha;
            continue;
        }
        // All diagonal entries vanish; a nonzero pairing splits a hyperbolic pair.
        int hi = -1, hj = -1;
        for (size_t s = 0; s < live.size() && hi < 0; ++s)
            for (size_t t = s + 1; t < live.size(); ++t)
                if (a[live[s]][live[t]] != 0) {
                    hi = live[s];
                    hj = live[t];
                    break;
                }
        if (hi < 0) throw SingularMatrix("matrix is singular");
        BigRat c = a[hi][hj];
        live.erase(std::remove(live.begin(), live.end(), hi), live.end());
        live.erase(std::remove(live.begin(), live.end(), hj), live.end());
        for (int u : live)
            for (int v : live) a[u][v] -= (a[hi][u] * a[hj][v] + a[hj][u] * a[hi][v]) / c;
    }
    return sig;
}

namespace {

std::vector<std::vector<BigRat>> rational_inverse(const IntMat& m) {
    int n = m.rows();
    std::vector<std::vector<BigRat>> a(n, std::vector<BigRat>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = BigRat(m.at(i, j));
        a[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (a[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw SingularMatrix("matrix is singular");
        std::swap(a[col], a[piv]);
        BigRat f = a[col][col];
        for (int j = 0; j < 2 * n; ++j) a[col][j] /= f;
        for (int i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            BigRat g = a[i][col];
            for (int j = 0; j < 2 * n; ++j) a[i][j] -= g * a[col][j];
        }
    }
    std::vector<std::vector<BigRat>> inv(n, std::vector<BigRat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

QmodZ qmodz_of_rat(const BigRat& v) {
    BigInt num = numerator(v), den = denominator(v);
    BigInt r = num % den;
    if (r < 0) r += den;
    return QmodZ::of(to_i64(r), to_i64(den));
}

} // namespace

// Shared discriminant-group construction; `quad` gives the quadratic value of a
// generator vector when an enhancement is requested.
DiscriminantForm detail::make_discriminant(
    const IntSymMatrix& b, const std::function<BigRat(const std::vector<BigRat>&)>& quad) {
    int n = b.size();
    IntMat bm = b.to_intmat();
    if (det(bm) == 0) throw SingularMatrix("lattice form must be nonsingular");

    SmithResult snf = smith_normal_form(bm);
    IntMat w = inverse_unimodular(snf.u);
    auto binv = rational_inverse(bm);

    DiscriminantForm disc;
    disc.bmat_ = bm;
    std::vector<i64> orders;
    for (int i = 0; i < n; ++i) {
        i64 d = to_i64(snf.d.at(i, i));
        if (d == 1) continue;
        orders.push_back(d);
        disc.kept_rows_.push_back(i);
        // Generator: B^{-1} w_i.
        std::vector<BigRat> g(n, 0);
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) g[r] += binv[r][s] * BigRat(w.at(s, i));
        disc.gens_.push_back(std::move(g));
    }
    disc.group_ = FinAbGroup::of(orders);
    disc.umat_ = snf.u;

    int k = disc.group_.rank();
    std::vector<std::vector<QmodZ>> gram(k, std::vector<QmodZ>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            BigRat acc = 0;
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s)
                    acc += disc.gens_[i][r] * BigRat(bm.at(r, s)) * disc.gens_[j][s];
            gram[i][j] = qmodz_of_rat(acc);
        }
    disc.bilinear_ = BilinearForm::build(disc.group_, gram);

    // b_L is nonsingular on L^#/L.
    SubgroupSpan full;
    for (int i = 0; i < k; ++i) full.generators.push_back(disc.group_.generator(i));
    if (orthogonal_complement(disc.group_, disc.bilinear_, full).generators.size() != 1)
        throw TheoremViolated("induced bilinear form is not nonsingular");

    if (quad) {
        std::vector<std::array<QmodZ, 2>> genvals(k);
        for (int i = 0; i < k; ++i) {
            QmodZ v = qmodz_of_rat(quad(disc.gens_[i]));
            std::vector<BigRat> neg(n);
            for (int r = 0; r < n; ++r) neg[r] = -disc.gens_[i][r];
            genvals[i] = {v, qmodz_of_rat(quad(neg))};
        }
        disc.enhancement_ = TwoLinearForm::build(disc.group_, genvals, gram);
    }
    return disc;
}

namespace {

BigRat quad_value(const IntMat& bm, const std::vector<BigRat>& v) {
    BigRat acc = 0;
    int n = bm.rows();
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) acc += v[r] * BigRat(bm.at(r, s)) * v[s];
    return acc / 2;
}

} // namespace

GroupElement DiscriminantForm::class_of(const std::vector<BigRat>& v) const {
    int n = bmat_.rows();
    std::vector<BigInt> bv(n);
    for (int r = 0; r < n; ++r) {
        BigRat acc = 0;
        for (int s = 0; s < n; ++s) acc += BigRat(bmat_.at(r, s)) * v[s];
        if (denominator(acc) != 1) throw NotWellDefined("vector is not in the dual lattice");
        bv[r] = numerator(acc);
    }
    GroupElement out{std::vector<i64>(kept_rows_.size())};
    for (size_t t = 0; t < kept_rows_.size(); ++t) {
        int row = kept_rows_[t];
        BigInt acc = 0;
        for (int s = 0; s < n; ++s) acc += umat_.at(row, s) * bv[s];
        i64 d = group_.orders()[t];
        BigInt m = acc % d;
        if (m < 0) m += d;
        out.c[t] = to_i64(m);
    }
    return out;
}

DiscriminantForm discriminant_group(const IntSymMatrix& b) { return detail::make_discriminant(b, nullptr); }

DiscriminantForm milgram_enhancement(const IntSymMatrix& b) {
    if (!b.even_diagonal()) throw NotEven("Milgram enhancement needs an even lattice");
    IntMat bm = b.to_intmat();
    DiscriminantForm disc =
        detail::make_discriminant(b, [&](const std::vector<BigRat>& v) { return quad_value(bm, v); });
    BetaValue bv = beta(*disc.enhancement());
    if (!bv.tame() || *bv != QmodZ::of(signature(b), 8))
        throw TheoremViolated("beta(psi_L) != signature(B)/8");
    return disc;
}

std::vector<i64> characteristic_vector(const IntSymMatrix& b) {
    int n = b.size();
    if (n > 20) throw CapExceeded("characteristic-vector search limited to rank 20");
    for (i64 mask = 0; mask < (1LL << n); ++mask) {
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) {
            i64 lhs = b.at(v, v);
            i64 rhs = 0;
            for (int j = 0; j < n; ++j)
                if (mask >> j & 1) rhs += b.at(j, v);
            ok = (lhs - rhs) % 2 == 0;
        }
        if (ok) {
            std::vector<i64> nu(n);
            for (int j = 0; j < n; ++j) nu[j] = mask >> j & 1;
            return nu;
        }
    }
    throw TheoremViolated("no characteristic vector exists");
}

DiscriminantForm bmf_enhancement(const IntSymMatrix& b, const std::vector<i64>& nu) {
    int n = b.size();
    if (static_cast<int>(nu.size()) != n) throw NotCharacteristic("nu has the wrong length");
    for (int v = 0; v < n; ++v) {
        i64 rhs = 0;
        for (int j = 0; j < n; ++j) rhs += nu[j] * b.at(j, v);
        if ((b.at(v, v) - rhs) % 2 != 0) throw NotCharacteristic("B(v,v) != B(nu,v) mod 2");
    }
    IntMat bm = b.to_intmat();
    DiscriminantForm disc = detail::make_discriminant(b, [&](const std::vector<BigRat>& v) {
        BigRat cross = 0;
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) cross += BigRat(nu[r]) * BigRat(bm.at(r, s)) * v[s];
        return quad_value(bm, v) - cross / 2;
    });
    if (!disc.enhancement()->is_quadratic()) throw TheoremViolated("psi_nu is not quadratic");
    return disc;
}

bool bmf_check(const IntSymMatrix& b, const std::vector<i64>& nu) {
    DiscriminantForm disc = bmf_enhancement(b, nu);
    BetaValue bv = beta(*disc.enhancement());
    if (!bv.tame()) return false;
    i64 bnn = 0;
    for (int i = 0; i < b.size(); ++i)
        for (int j = 0; j < b.size(); ++j) bnn += nu[i] * b.at(i, j) * nu[j];
    return *bv == QmodZ::of(signature(b) - bnn, 8);
}

TwoLinearForm tensor(const IntSymMatrix& b, const TwoLinearForm& psi) {
    if (!psi.is_quadratic()) throw NotQuadratic("tensor with a matrix needs a quadratic form");
    int n = b.size();
    const FinAbGroup& t = psi.group();
    std::vector<i64> orders;
    for (int i = 0; i < n; ++i)
        orders.insert(orders.end(), t.orders().begin(), t.orders().end());
    FinAbGroup big = FinAbGroup::of(std::move(orders));

    i64 m = t.size();
    BilinearForm bil = psi.associated_bilinear();
    std::vector<std::vector<QmodZ>> btab;
    if (n >= 2) {
        btab.assign(static_cast<size_t>(m), std::vector<QmodZ>(static_cast<size_t>(m)));
        for (i64 x = 0; x < m; ++x)
            for (i64 y = 0; y < m; ++y) btab[x][y] = bil.eval(t.element_at(x), t.element_at(y));
    }
    std::vector<QmodZ> table(static_cast<size_t>(big.size()));
    std::vector<i64> tup(n, 0);
    for (i64 idx = 0; idx < big.size(); ++idx) {
        QmodZ v;
        for (int i = 0; i < n; ++i) {
            if (b.at(i, i) != 0) v = v.add(psi.value_at(tup[i]).scale(b.at(i, i)));
            for (int j = i + 1; j < n; ++j)
                if (b.at(i, j) != 0) v = v.add(btab[tup[i]][tup[j]].scale(b.at(i, j)));
        }
        table[idx] = v;
        for (int i = n - 1; i >= 0; --i) {
            if (++tup[i] < m) break;
            tup[i] = 0;
        }
    }
    TwoLinearForm out = TwoLinearForm::from_table(std::move(big), std::move(table));
    if (!out.is_quadratic()) throw TheoremViolated("tensor form is not quadratic");
    return out;
}

TwoLinearForm brown_form(const IntSymMatrix& b, i64 m) {
    if (m < 2 || m % 2 != 0) throw OddModulus("psi_{B,m} needs even m");
    TwoLinearForm out = tensor(b, standard_u(m));
    BigInt g = gcd(b.determinant(), BigInt(m));
    bool nonsingular = out.is_nonsingular();
    if (nonsingular != (g == 1))
        throw TheoremViolated("psi_{B,m} nonsingular iff det B prime to m");
    return out;
}

QmodZ arf_from_seifert(const std::vector<std::vector<i64>>& s) {
    int n = static_cast<int>(s.size());
    for (const auto& row : s)
        if (static_cast<int>(row.size()) != n) throw NotWellDefined("Seifert matrix is not square");
    std::vector<std::vector<i64>> be(n, std::vector<i64>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) be[i][j] = s[i][j] + s[j][i];
    IntSymMatrix b = IntSymMatrix::of(std::move(be));
    BigInt d = b.determinant();
    if (d % 2 == 0) throw EvenAlexander("det(S + S^T) must be odd");
    QmodZ arf = QmodZ::of(phi_p_big(d, 2), 2);

    // Cross-check against the Gauss sum of x^T S x / 2 on (Z/2)^n.
    if (n < 63 && (1LL << n) <= enumeration_cap()) {
        FinAbGroup t = FinAbGroup::of(std::vector<i64>(n, 2));
        std::vector<QmodZ> table(static_cast<size_t>(t.size()));
        for (i64 idx = 0; idx < t.size(); ++idx) {
            GroupElement x = t.element_at(idx);
            i64 q = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) q += x.c[i] * s[i][j] * x.c[j];
            table[idx] = QmodZ::of(q, 2);
        }
        BetaValue bv = beta(TwoLinearForm::from_table(t, std::move(table)));
        if (!bv.tame() || *bv != arf)
            throw TheoremViolated("Levine formula disagrees with the Gauss sum");
    } else {
        throw CapExceeded("Seifert rank too large for the Gauss-sum cross-check");
    }
    return arf;
}

} // namespace gsums
