#include "gsums/modp.hpp"

#include <algorithm>
#include <random>

namespace gsums {

namespace {

BigInt pow_big(i64 p, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

BigInt mod_pos(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

BigInt inv_mod_big(const BigInt& a, const BigInt& m) {
    BigInt t = 0, nt = 1, r = m, nr = mod_pos(a, m);
    while (nr != 0) {
        BigInt q = r / nr;
        BigInt tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    return mod_pos(t, m);
}

int vp_big(BigInt v, i64 p) {
    if (v == 0) throw SingularMatrix("p-adic valuation of zero");
    if (v < 0) v = -v;
    int e = 0;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    return e;
}

struct Reducer {
    i64 p;
    int r_eff;
    int rw;          // working exponent
    BigInt pr_work;  // p^rw
    IntMat b;        // the original matrix
    std::vector<std::vector<BigInt>> cols; // active basis columns
    IntMat a;        // active residual, entries reduced mod p^{rw - layer}
    int layer = 0;
    struct EmitRec {
        int layer;
        ReducedBlock block;
        std::vector<std::vector<BigInt>> basis; // one column per rank
    };
    std::vector<EmitRec> emitted;
    std::mt19937_64 rng;
    bool randomized = false;

    BigInt layer_mod() const { return pow_big(p, rw - layer); }

    i64 block_entry(const BigInt& v) const {
        return to_i64(mod_pos(v, pow_big(p, r_eff)));
    }

    void reduce_active() {
        BigInt m = layer_mod();
        a = a.mod(m);
    }

    int pick(const std::vector<int>& candidates) {
        if (candidates.size() == 1 || !randomized) return candidates.front();
        std::uniform_int_distribution<size_t> d(0, candidates.size() - 1);
        return candidates[d(rng)];
    }

    void swap_to_front(int idx, int pos) {
        std::swap(cols[idx], cols[pos]);
        a.swap_rows(idx, pos);
        a.swap_cols(idx, pos);
    }

    // Smallest positive multiplier congruent to 1 mod p^rw and 0 mod d.
    BigInt clearing_multiplier(BigInt d) {
        if (d < 0) d = -d;
        BigInt g = gcd(d, pr_work);
        if (g != 1) throw TheoremViolated("pivot determinant is not a unit mod p");
        // d * (d^{-1} mod p^rw) is 0 mod d and 1 mod p^rw.
        return mod_pos(d * inv_mod_big(d, pr_work), d * pr_work);
    }

    void emit_diagonal(int pos) {
        swap_to_front(pos, 0);
        int m = a.rows();
        BigInt alpha = a.at(0, 0);
        BigInt rp = clearing_multiplier(alpha);
        emitted.push_back({layer, ReducedBlock::diag(block_entry(alpha)), {cols[0]}});

        std::vector<std::vector<BigInt>> ncols;
        IntMat na(m - 1, m - 1);
        for (int j = 1; j < m; ++j) {
            // r' col_j - (r' a_{0j} / alpha) col_0
            BigInt f = rp * a.at(0, j) / alpha;
            std::vector<BigInt> col(cols[j].size());
            for (size_t t = 0; t < col.size(); ++t)
                col[t] = mod_pos(rp * cols[j][t] - f * cols[0][t], pr_work);
            ncols.push_back(std::move(col));
        }
        for (int i = 1; i < m; ++i)
            for (int j = 1; j < m; ++j)
                na.at(i - 1, j - 1) = rp * rp * a.at(i, j) - (rp * rp / alpha) * a.at(0, i) * a.at(0, j);
        cols = std::move(ncols);
        a = na;
        reduce_active();
    }

    void emit_hyperbolic(int pi, int pj) {
        swap_to_front(pi, 0);
        swap_to_front(pj == 0 ? pi : pj, 1);
        int m = a.rows();
        BigInt mod = layer_mod();
        // Rescale the second vector so the pairing becomes exactly 1 mod p^{rw-layer}.
        BigInt w = inv_mod_big(a.at(0, 1), mod);
        for (auto& v : cols[1]) v = mod_pos(w * v, pr_work);
        a.scale_col(1, w);
        a.scale_row(1, w);
        reduce_active();

        BigInt aa = a.at(0, 0), cc = a.at(1, 1);
        BigInt dt = aa * cc - 1;
        BigInt rp = clearing_multiplier(dt);
        emitted.push_back(
            {layer, ReducedBlock::hyp(block_entry(aa) / 2, block_entry(cc) / 2), {cols[0], cols[1]}});

        std::vector<std::vector<BigInt>> ncols;
        IntMat na(m - 2, m - 2);
        for (int j = 2; j < m; ++j) {
            // lambda = H^{-1} (a_{0j}, a_{1j}); columns r'(e_j - lambda_0 e_0 - lambda_1 e_1).
            BigInt l0 = rp * (cc * a.at(0, j) - a.at(1, j)) / dt;
            BigInt l1 = rp * (aa * a.at(1, j) - a.at(0, j)) / dt;
            std::vector<BigInt> col(cols[j].size());
            for (size_t t = 0; t < col.size(); ++t)
                col[t] = mod_pos(rp * cols[j][t] - l0 * cols[0][t] - l1 * cols[1][t], pr_work);
            ncols.push_back(std::move(col));
        }
        for (int i = 2; i < m; ++i)
            for (int j = 2; j < m; ++j) {
                BigInt corr = a.at(0, i) * (cc * a.at(0, j) - a.at(1, j)) +
                              a.at(1, i) * (aa * a.at(1, j) - a.at(0, j));
                na.at(i - 2, j - 2) = rp * rp * a.at(i, j) - (rp * rp / dt) * corr;
            }
        cols = std::move(ncols);
        a = na;
        reduce_active();
    }

    void run() {
        while (a.rows() > 0) {
            int m = a.rows();
            // Unit diagonal entries first.
            std::vector<int> diag;
            for (int i = 0; i < m; ++i)
                if (a.at(i, i) % p != 0) diag.push_back(i);
            if (!diag.empty()) {
                emit_diagonal(pick(diag));
                continue;
            }
            // Unit off-diagonal entries next.
            std::vector<std::pair<int, int>> offs;
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    if (a.at(i, j) % p != 0) offs.emplace_back(i, j);
            if (!offs.empty()) {
                std::vector<int> idx(offs.size());
                for (size_t t = 0; t < offs.size(); ++t) idx[t] = static_cast<int>(t);
                auto [pi, pj] = offs[pick(idx)];
                if (p == 2) {
                    emit_hyperbolic(pi, pj);
                } else {
                    // Substitute x+y, x-y to create a unit diagonal entry.
                    for (size_t t = 0; t < cols[pi].size(); ++t) {
                        BigInt u = cols[pi][t], v = cols[pj][t];
                        cols[pi][t] = mod_pos(u + v, pr_work);
                        cols[pj][t] = mod_pos(u - v, pr_work);
                    }
                    IntMat e = IntMat::identity(m);
                    e.at(pi, pi) = 1;
                    e.at(pj, pi) = 1;
                    e.at(pi, pj) = 1;
                    e.at(pj, pj) = -1;
                    a = e.transpose().mul(a).mul(e);
                    reduce_active();
                }
                continue;
            }
            // Every entry divisible by p: descend one layer.
            if (rw - layer <= r_eff) throw TheoremViolated("working precision exhausted");
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    if (a.at(i, j) % p != 0) throw TheoremViolated("entry not divisible by p");
                    a.at(i, j) = a.at(i, j) / p;
                }
            ++layer;
        }
    }
};

IntSymMatrix blocks_to_matrix(const std::vector<ReducedBlock>& blocks) {
    int n = 0;
    for (const auto& bl : blocks) n += bl.rank();
    std::vector<std::vector<i64>> e(n, std::vector<i64>(n, 0));
    int ofs = 0;
    for (const auto& bl : blocks) {
        if (bl.kind == ReducedBlock::Kind::Diagonal) {
            e[ofs][ofs] = bl.a;
            ofs += 1;
        } else {
            e[ofs][ofs] = 2 * bl.m1;
            e[ofs + 1][ofs + 1] = 2 * bl.m2;
            e[ofs][ofs + 1] = e[ofs + 1][ofs] = 1;
            ofs += 2;
        }
    }
    return IntSymMatrix::of(std::move(e));
}

int diagonal_block_count(const IntSymMatrix& m) {
    ReducedDecomposition d = reduce_mod_pr(m, 2, 3);
    int count = 0;
    for (const auto& layer : d.layers) {
        if (layer.i != 0) throw DetDivisibleByP("matrix determinant is divisible by 2");
        for (const auto& bl : layer.blocks)
            if (bl.kind == ReducedBlock::Kind::Diagonal) ++count;
    }
    return count;
}

QmodZ beta_u_power(i64 p, int m) {
    if (p == 2) return QmodZ::of(1, 8);
    if (p % 4 == 1) return QmodZ();
    return m % 2 == 1 ? QmodZ::of(1, 4) : QmodZ();
}

} // namespace

IntSymMatrix ReducedDecomposition::layer_matrix(int i) const {
    for (const auto& layer : layers)
        if (layer.i == i) return blocks_to_matrix(layer.blocks);
    return IntSymMatrix::of({});
}

IntSymMatrix ReducedDecomposition::assembled() const {
    int n = 0;
    for (const auto& layer : layers)
        for (const auto& bl : layer.blocks) n += bl.rank();
    std::vector<std::vector<i64>> e(n, std::vector<i64>(n, 0));
    int ofs = 0;
    for (const auto& layer : layers) {
        i64 scale = 1;
        for (int s = 0; s < layer.i; ++s) scale = mul_checked(scale, p);
        IntSymMatrix lm = blocks_to_matrix(layer.blocks);
        for (int i = 0; i < lm.size(); ++i)
            for (int j = 0; j < lm.size(); ++j) e[ofs + i][ofs + j] = mul_checked(scale, lm.at(i, j));
        ofs += lm.size();
    }
    return IntSymMatrix::of(std::move(e));
}

ReducedDecomposition reduce_mod_pr(const IntSymMatrix& b, i64 p, int r,
                                   std::optional<std::uint64_t> tie_seed) {
    if (!is_prime(p)) throw NotWellDefined("p must be prime");
    if (r < 1) throw NotWellDefined("r must be positive");
    BigInt d = b.determinant();
    if (d == 0) throw SingularMatrix("reduction needs a nonsingular matrix");
    int vp = vp_big(d, p);

    Reducer red;
    red.p = p;
    red.r_eff = std::max({r, vp + 1, p == 2 ? 3 : 1});
    red.rw = red.r_eff + vp;
    red.pr_work = pow_big(p, red.rw);
    red.b = b.to_intmat();
    red.a = red.b;
    red.cols.assign(b.size(), std::vector<BigInt>(b.size(), 0));
    for (int i = 0; i < b.size(); ++i) red.cols[i][i] = 1;
    if (tie_seed) {
        red.randomized = true;
        red.rng.seed(*tie_seed);
    }
    red.reduce_active();
    red.run();

    ReducedDecomposition out;
    out.p = p;
    out.r = red.r_eff;
    std::stable_sort(red.emitted.begin(), red.emitted.end(),
                     [](const auto& x, const auto& y) { return x.layer < y.layer; });
    int n = b.size();
    IntMat witness(n, n);
    int col = 0;
    for (const auto& rec : red.emitted) {
        if (out.layers.empty() || out.layers.back().i != rec.layer)
            out.layers.push_back({rec.layer, {}});
        out.layers.back().blocks.push_back(rec.block);
        for (const auto& v : rec.basis) {
            for (int i = 0; i < n; ++i) witness.at(i, col) = v[i];
            ++col;
        }
    }
    if (col != n) throw TheoremViolated("witness column count mismatch");

    // Exact validation: det M prime to p and M^T B M = C mod p^{r_eff}.
    if (mod_pos(det(witness), p) == 0) throw TheoremViolated("witness determinant divisible by p");
    IntMat check = witness.transpose().mul(red.b).mul(witness);
    IntMat c = out.assembled().to_intmat();
    BigInt pr = pow_big(p, red.r_eff);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (mod_pos(check.at(i, j) - c.at(i, j), pr) != 0)
                throw TheoremViolated("similarity witness congruence fails");

    out.witness.assign(n, std::vector<i64>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.witness[i][j] = to_i64(witness.at(i, j));
    return out;
}



int phi_p_big(const BigInt& a, i64 p) {
    if (!is_prime(p)) throw NotWellDefined("p must be prime");
    BigInt red = mod_pos(a, p == 2 ? BigInt(8) : BigInt(p));
    if (p == 2) {
        if (a % 2 == 0) throw NotCoprime("a must be odd");
        return red == 1 || red == 7 ? 0 : 1;
    }
    if (red == 0) throw NotCoprime("a must be prime to p");
    // Euler's criterion.
    BigInt acc = 1, base = red;
    i64 e = (p - 1) / 2;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return acc == 1 ? 0 : 1;
}

int phi_p(i64 a, i64 p) { return phi_p_big(BigInt(a), p); }

int sigma_p(const IntSymMatrix& a, i64 p) {
    BigInt d = a.determinant();
    if (d == 0 || mod_pos(d, p) == 0) throw DetDivisibleByP("sigma_p needs det prime to p");
    if (p != 2) return a.size() % 8;
    ReducedDecomposition red = reduce_mod_pr(a, 2, 3);
    i64 n1 = 0, nm1 = 0, n3 = 0, nm3 = 0;
    for (const auto& layer : red.layers) {
        if (layer.i != 0) throw TheoremViolated("odd-determinant matrix reduced with deep layers");
        for (const auto& bl : layer.blocks) {
            if (bl.kind != ReducedBlock::Kind::Diagonal) continue;
            switch (mod_floor(bl.a, 8)) {
                case 1: ++n1; break;
                case 3: ++n3; break;
                case 5: ++nm3; break;
                case 7: ++nm1; break;
                default: throw TheoremViolated("diagonal entry not a unit mod 8");
            }
        }
    }
    return static_cast<int>(mod_floor(n1 - nm1 + 3 * n3 - 3 * nm3, 8));
}

QmodZ beta_multiplier(const PsiLocalData& psi, i64 a) {
    int phi = phi_p(a, psi.p); // also rejects a not prime to p
    QmodZ shift = QmodZ::of(mul_checked(phi, psi.e), 2);
    if (psi.p == 2) return psi.beta.scale(a).add(shift);
    return psi.beta.add(shift);
}

QmodZ beta_lsmx(const IntSymMatrix& b, const PsiLocalData& psi) {
    BigInt d = b.determinant();
    if (d == 0 || mod_pos(d, psi.p) == 0) throw DetDivisibleByP("lsmx needs det B prime to p");
    int sig = sigma_p(b, psi.p);
    return psi.beta.scale(sig).add(QmodZ::of(mul_checked(phi_p_big(d, psi.p), psi.e), 2));
}

bool pseudo_hyperbolic_identity(i64 m1, i64 m2) {
    // Witness for <-1> perp H_{m1,m2} ~_8 <2m1-1> perp <2m2-1> perp <1-2m1-2m2>.
    IntMat lhs(3, 3), rhs(3, 3), m(3, 3);
    lhs.at(0, 0) = -1;
    lhs.at(1, 1) = 2 * m1;
    lhs.at(2, 2) = 2 * m2;
    lhs.at(1, 2) = lhs.at(2, 1) = 1;
    rhs.at(0, 0) = 2 * m1 - 1;
    rhs.at(1, 1) = 2 * m2 - 1;
    rhs.at(2, 2) = 1 - 2 * m1 - 2 * m2;
    m.at(0, 0) = 1;
    m.at(0, 1) = 1;
    m.at(0, 2) = 1 - 4 * m1 * m2;
    m.at(1, 0) = 1;
    m.at(1, 1) = 0;
    m.at(1, 2) = 1 - 2 * m2;
    m.at(2, 0) = 0;
    m.at(2, 1) = 1;
    m.at(2, 2) = 1 - 2 * m1;
    if (mod_pos(det(m), 2) == 0) return false;
    IntMat check = m.transpose().mul(lhs).mul(m);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (mod_pos(check.at(i, j) - rhs.at(i, j), 8) != 0) return false;
    return true;
}

BetaValue kirby_melvin(const IntSymMatrix& b) {
    ReducedDecomposition red = reduce_mod_pr(b, 2, 2);
    i64 n1 = 0, n3 = 0, eps = 0;
    for (const auto& layer : red.layers) {
        if (layer.i == 1) {
            for (const auto& bl : layer.blocks)
                if (bl.kind == ReducedBlock::Kind::Diagonal) return {};
        }
        if (layer.i != 0) continue;
        for (const auto& bl : layer.blocks) {
            if (bl.kind == ReducedBlock::Kind::Diagonal) {
                if (mod_floor(bl.a, 4) == 1) ++n1;
                else ++n3;
            } else if (bl.m1 % 2 != 0 && bl.m2 % 2 != 0) {
                ++eps;
            }
        }
    }
    return {QmodZ::of(n1 - n3 + 4 * eps, 8)};
}

namespace {

struct LayerData {
    int idx;
    int sigma;
    int phi;
    int odd_diag; // N1 + N3 + N5 + N7 of a reduced representative
};

LayerData layer_invariants(int idx, const IntSymMatrix& m, i64 p) {
    LayerData d;
    d.idx = idx;
    d.sigma = sigma_p(m, p);
    d.phi = phi_p_big(m.determinant(), p);
    d.odd_diag = p == 2 ? diagonal_block_count(m) : m.size();
    return d;
}

} // namespace

BetaValue beta_gtp(const ReducedDecomposition& c, const PsiDecomposition& r) {
    i64 p = c.p;
    if (r.p != p) throw MalformedDecomposition("decompositions use different primes");
    std::vector<LayerData> cl, rl;
    for (const auto& layer : c.layers) {
        IntSymMatrix m = blocks_to_matrix(layer.blocks);
        if (m.size() == 0) continue;
        cl.push_back(layer_invariants(layer.i, m, p));
    }
    int last = 0;
    for (const auto& [j, m] : r.layers) {
        if (j < 1 || j <= last) throw MalformedDecomposition("psi layers must be increasing and >= 1");
        last = j;
        if (m.size() == 0) continue;
        BigInt d = m.determinant();
        if (d == 0 || mod_pos(d, p) == 0)
            throw MalformedDecomposition("det R_j must be prime to p");
        rl.push_back(layer_invariants(j, m, p));
    }
    if (p == 2) {
        for (const auto& ci : cl)
            for (const auto& rj : rl)
                if (ci.idx == rj.idx && ci.odd_diag > 0 && rj.odd_diag > 0) return {};
    }
    QmodZ total;
    for (const auto& ci : cl)
        for (const auto& rj : rl) {
            if (ci.idx >= rj.idx) continue;
            int m = rj.idx - ci.idx;
            total = total.add(beta_u_power(p, m).scale(ci.sigma * rj.sigma));
            total = total.add(QmodZ::of((ci.sigma * rj.phi + ci.phi * rj.sigma) * m, 2));
        }
    return {total};
}

ScaledReduction scaled_reduction(const PsiDecomposition& r, int i) {
    if (i < 0) throw MalformedDecomposition("scale exponent must be nonnegative");
    ScaledReduction out;
    out.reduced.p = r.p;
    for (const auto& [j, m] : r.layers) {
        if (j < 1) throw MalformedDecomposition("psi layers must be >= 1");
        if (r.p == 2 && j == i && m.size() > 0 && diagonal_block_count(m) > 0) {
            out.tame = false;
            return out;
        }
        if (j > i) out.reduced.layers.emplace_back(j - i, m);
    }
    return out;
}

TwoLinearForm bullet_product(const IntSymMatrix& r, const IntSymMatrix& s, i64 p) {
    if (!is_prime(p)) throw NotWellDefined("p must be prime");
    if (mod_pos(r.determinant(), p) == 0 || mod_pos(s.determinant(), p) == 0)
        throw DetDivisibleByP("bullet product needs unit determinants");
    IntMat kron = kronecker(r.to_intmat(), s.to_intmat());
    std::vector<std::vector<i64>> e(kron.rows(), std::vector<i64>(kron.cols()));
    for (int i = 0; i < kron.rows(); ++i)
        for (int j = 0; j < kron.cols(); ++j) e[i][j] = to_i64(kron.at(i, j));
    return tensor(IntSymMatrix::of(std::move(e)), standard_u(p));
}

} // namespace gsums
