#include "gsums/forms.hpp"

#include <algorithm>
#include <map>

namespace gsums {

namespace {

// Deterministic generator for sampled validation checks.
struct SplitMix {
    std::uint64_t s;
    explicit SplitMix(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    i64 below(i64 n) { return static_cast<i64>(next() % static_cast<std::uint64_t>(n)); }
};

// psi(a*g) from psi(g) and psi(-g): ((a^2+a)/2) psi(g) + ((a^2-a)/2) psi(-g).
QmodZ power_value(i64 a, const QmodZ& plus, const QmodZ& minus) {
    i64 up = (a * a + a) / 2;
    i64 um = (a * a - a) / 2;
    return plus.scale(up).add(minus.scale(um));
}

void check_cocycle(const FinAbGroup& t, const std::vector<QmodZ>& table) {
    auto value = [&](const GroupElement& x) { return table[t.index_of(x)]; };
    auto check_triple = [&](const GroupElement& x1, const GroupElement& x2, const GroupElement& x3) {
        QmodZ lhs = value(t.add(t.add(x1, x2), x3));
        QmodZ rhs = value(t.add(x1, x2))
                        .add(value(t.add(x1, x3)))
                        .add(value(t.add(x2, x3)))
                        .sub(value(x1))
                        .sub(value(x2))
                        .sub(value(x3));
        if (lhs != rhs) throw NotTwoLinear("cocycle identity fails on a triple");
    };
    i64 n = t.size();
    if (n * n * n <= 2000) {
        for (i64 i = 0; i < n; ++i)
            for (i64 j = 0; j < n; ++j)
                for (i64 k = 0; k < n; ++k)
                    check_triple(t.element_at(i), t.element_at(j), t.element_at(k));
    } else {
        SplitMix rng(0x5eedULL ^ static_cast<std::uint64_t>(n));
        i64 samples = std::max<i64>(64, std::min<i64>(512, n));
        for (i64 s = 0; s < samples; ++s)
            check_triple(t.element_at(rng.below(n)), t.element_at(rng.below(n)),
                         t.element_at(rng.below(n)));
    }
}

void check_denominators(const FinAbGroup& t, const std::vector<QmodZ>& table) {
    i64 bound = mul_checked(2, t.size());
    for (const QmodZ& v : table)
        if (bound % v.den() != 0) throw NotTwoLinear("value denominator does not divide 2|T|");
}

} // namespace

BilinearForm BilinearForm::build(FinAbGroup t, std::vector<std::vector<QmodZ>> gram) {
    size_t k = static_cast<size_t>(t.rank());
    if (gram.size() != k) throw NotWellDefined("gram size does not match rank");
    for (auto& row : gram)
        if (row.size() != k) throw NotWellDefined("gram is not square");
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (gram[i][j] != gram[j][i]) throw NotWellDefined("gram is not symmetric");
            if (!gram[i][j].scale(t.orders()[i]).is_zero())
                throw NotWellDefined("n_i * b(g_i, g_j) must vanish");
        }
    BilinearForm b;
    b.t_ = std::move(t);
    b.gram_ = std::move(gram);
    return b;
}

QmodZ BilinearForm::eval(const GroupElement& x, const GroupElement& y) const {
    QmodZ acc;
    for (int i = 0; i < t_.rank(); ++i) {
        if (x.c[i] == 0) continue;
        for (int j = 0; j < t_.rank(); ++j) {
            if (y.c[j] == 0) continue;
            acc = acc.add(gram_[i][j].scale(mod_floor(x.c[i] * y.c[j], gram_[i][j].den())));
        }
    }
    return acc;
}

bool BilinearForm::is_zero() const {
    for (const auto& row : gram_)
        for (const auto& v : row)
            if (!v.is_zero()) return false;
    return true;
}

SubgroupSpan orthogonal_complement(const FinAbGroup& t, const BilinearForm& b, const SubgroupSpan& k) {
    return orthogonal_complement_generic(
        t, [&](const GroupElement& x, const GroupElement& y) { return b.eval(x, y); }, k);
}

TwoLinearForm TwoLinearForm::build(FinAbGroup t, std::vector<std::array<QmodZ, 2>> genvals,
                                   std::vector<std::vector<QmodZ>> gram) {
    int k = t.rank();
    if (static_cast<int>(genvals.size()) != k) throw NotWellDefined("genvals size does not match rank");
    if (static_cast<int>(gram.size()) != k) throw NotWellDefined("gram size does not match rank");
    for (auto& row : gram)
        if (static_cast<int>(row.size()) != k) throw NotWellDefined("gram is not square");

    for (int i = 0; i < k; ++i) {
        i64 n = t.orders()[i];
        const QmodZ& vp = genvals[i][0];
        const QmodZ& vm = genvals[i][1];
        if (gram[i][i] != vp.add(vm))
            throw NotWellDefined("gram diagonal must equal psi(g) + psi(-g)");
        if (!vp.add(vm).scale(n).is_zero())
            throw NotWellDefined("n * (psi(g) + psi(-g)) must vanish");
        if (!power_value(n, vp, vm).is_zero())
            throw NotWellDefined("psi(n*g) must vanish for a generator of order n");
        for (int j = 0; j < k; ++j) {
            if (gram[i][j] != gram[j][i]) throw NotWellDefined("gram is not symmetric");
            if (!gram[i][j].scale(n).is_zero())
                throw NotWellDefined("n_i * b(g_i, g_j) must vanish");
        }
    }

    TwoLinearForm f;
    f.t_ = std::move(t);
    f.genvals_ = std::move(genvals);
    f.gram_ = std::move(gram);
    const FinAbGroup& g = f.t_;

    // Fill the table: psi(sum a_i g_i) = sum psi(a_i g_i) + sum_{i<j} a_i a_j b(g_i, g_j).
    std::vector<std::vector<QmodZ>> powers(k);
    for (int i = 0; i < k; ++i) {
        powers[i].resize(g.orders()[i]);
        for (i64 a = 0; a < g.orders()[i]; ++a)
            powers[i][a] = power_value(a, f.genvals_[i][0], f.genvals_[i][1]);
    }
    f.table_.resize(static_cast<size_t>(g.size()));
    std::vector<i64> a(k, 0);
    for (i64 idx = 0; idx < g.size(); ++idx) {
        QmodZ v;
        for (int i = 0; i < k; ++i) {
            if (a[i] == 0) continue;
            v = v.add(powers[i][a[i]]);
            for (int j = i + 1; j < k; ++j) {
                if (a[j] == 0) continue;
                v = v.add(f.gram_[i][j].scale(mod_floor(a[i] * a[j], f.gram_[i][j].den())));
            }
        }
        f.table_[idx] = v;
        for (int i = k - 1; i >= 0; --i) {
            if (++a[i] < g.orders()[i]) break;
            a[i] = 0;
        }
    }
    check_denominators(g, f.table_);
    check_cocycle(g, f.table_);
    return f;
}

TwoLinearForm TwoLinearForm::from_table(FinAbGroup t, std::vector<QmodZ> table) {
    if (static_cast<i64>(table.size()) != t.size()) throw NotTwoLinear("table size must equal |T|");
    if (!table[0].is_zero()) throw NotTwoLinear("psi(0) must vanish");
    check_denominators(t, table);
    check_cocycle(t, table);
    TwoLinearForm f;
    f.t_ = std::move(t);
    f.table_ = std::move(table);
    f.derive_generator_data();
    return f;
}

void TwoLinearForm::derive_generator_data() {
    int k = t_.rank();
    genvals_.assign(k, {QmodZ(), QmodZ()});
    gram_.assign(k, std::vector<QmodZ>(k));
    for (int i = 0; i < k; ++i) {
        GroupElement gi = t_.generator(i);
        genvals_[i][0] = eval(gi);
        genvals_[i][1] = eval(t_.neg(gi));
        for (int j = 0; j < k; ++j) {
            GroupElement gj = t_.generator(j);
            gram_[i][j] = eval(t_.add(gi, gj)).sub(eval(gi)).sub(eval(gj));
        }
    }
}

BilinearForm TwoLinearForm::associated_bilinear() const { return BilinearForm::build(t_, gram_); }

std::vector<QmodZ> TwoLinearForm::defect_hom() const {
    std::vector<QmodZ> h(t_.rank());
    for (int i = 0; i < t_.rank(); ++i) h[i] = genvals_[i][0].sub(genvals_[i][1]);
    return h;
}

QmodZ TwoLinearForm::defect(const GroupElement& x) const { return eval(x).sub(eval(t_.neg(x))); }

bool TwoLinearForm::is_quadratic() const {
    for (const QmodZ& v : defect_hom())
        if (!v.is_zero()) return false;
    return true;
}

Radical TwoLinearForm::radical() const {
    Radical rad;
    rad.closure.member.assign(static_cast<size_t>(t_.size()), 0);
    rad.tame = true;
    for (i64 i = 0; i < t_.size(); ++i) {
        GroupElement x = t_.element_at(i);
        bool in_perp = true;
        for (int j = 0; j < t_.rank(); ++j) {
            // b(x, g_j) = psi(x + g_j) - psi(x) - psi(g_j), straight off the table.
            QmodZ b = table_[t_.index_of(t_.add(x, t_.generator(j)))].sub(table_[i]).sub(
                genvals_[j][0]);
            if (!b.is_zero()) {
                in_perp = false;
                break;
            }
        }
        if (!in_perp) continue;
        rad.closure.member[i] = 1;
        rad.closure.indices.push_back(i);
        rad.span.generators.push_back(x);
        rad.restriction_values.push_back(table_[i]);
        if (!table_[i].is_zero()) rad.tame = false;
    }
    return rad;
}

bool TwoLinearForm::is_nonsingular() const { return radical().closure.indices.size() == 1; }

ReducedForm TwoLinearForm::reduce() const {
    Radical rad = radical();
    if (!rad.tame) throw NotTame("cannot reduce a non-tame form");
    ReducedForm red;
    red.presentation = quotient(t_, rad.span);
    const FinAbGroup& q = red.presentation.group();
    std::vector<QmodZ> qtable(static_cast<size_t>(q.size()));
    for (i64 i = 0; i < q.size(); ++i) qtable[i] = eval(red.presentation.section_at(i));
    for (i64 i = 0; i < t_.size(); ++i) {
        GroupElement x = t_.element_at(i);
        if (qtable[q.index_of(red.presentation.project(x))] != table_[i])
            throw TheoremViolated("reduced form is not well-defined");
    }
    red.form = from_table(q, std::move(qtable));
    if (!red.form.is_nonsingular()) throw TheoremViolated("reduced form is not nonsingular");
    return red;
}

TwoLinearForm TwoLinearForm::shift(const std::vector<QmodZ>& h) const {
    if (static_cast<int>(h.size()) != t_.rank()) throw NotHomomorphism("wrong number of values");
    for (int i = 0; i < t_.rank(); ++i)
        if (!h[i].scale(t_.orders()[i]).is_zero())
            throw NotHomomorphism("n_i * h(g_i) must vanish");
    std::vector<QmodZ> table(table_.size());
    std::vector<i64> a(t_.rank(), 0);
    for (i64 idx = 0; idx < t_.size(); ++idx) {
        QmodZ hv;
        for (int i = 0; i < t_.rank(); ++i)
            if (a[i] != 0) hv = hv.add(h[i].scale(a[i]));
        table[idx] = table_[idx].add(hv);
        for (int i = t_.rank() - 1; i >= 0; --i) {
            if (++a[i] < t_.orders()[i]) break;
            a[i] = 0;
        }
    }
    return from_table(t_, std::move(table));
}

TwoLinearForm TwoLinearForm::shift_by_element(const GroupElement& x) const {
    BilinearForm b = associated_bilinear();
    std::vector<QmodZ> table(table_.size());
    for (i64 idx = 0; idx < t_.size(); ++idx)
        table[idx] = table_[idx].add(b.eval(x, t_.element_at(idx)));
    // Lemma check: psi_x(t) = psi(t + x) - psi(x) everywhere.
    QmodZ px = eval(x);
    for (i64 idx = 0; idx < t_.size(); ++idx) {
        i64 shifted = t_.index_of(t_.add(t_.element_at(idx), x));
        if (table[idx] != table_[shifted].sub(px))
            throw TheoremViolated("shift-by-element identity fails");
    }
    return from_table(t_, std::move(table));
}

TwoLinearForm TwoLinearForm::primary(i64 p) const {
    PrimaryPart part = primary_part(t_, p);
    std::vector<QmodZ> table(static_cast<size_t>(part.group.size()));
    for (i64 i = 0; i < part.group.size(); ++i)
        table[i] = eval(part.embed(t_, part.group.element_at(i)));
    return from_table(part.group, std::move(table));
}

SubquotientForm TwoLinearForm::subquotient(const SubgroupSpan& k) const {
    SubgroupClosure kcl = span_closure(t_, k);
    for (i64 idx : kcl.indices)
        if (!table_[idx].is_zero()) throw PsiNonzeroOnK("psi does not vanish on K");
    SubgroupSpan s = orthogonal_complement_generic(
        t_,
        [&](const GroupElement& x, const GroupElement& y) {
            return table_[t_.index_of(t_.add(x, y))].sub(eval(x)).sub(eval(y));
        },
        k);
    SubquotientForm out;
    out.presentation = subquotient_presentation(t_, s, k);
    const FinAbGroup& q = out.presentation.group();
    std::vector<QmodZ> qtable(static_cast<size_t>(q.size()));
    for (i64 i = 0; i < q.size(); ++i) qtable[i] = eval(out.presentation.section_at(i));
    for (const GroupElement& sx : s.generators) {
        if (qtable[q.index_of(out.presentation.project(sx))] != eval(sx))
            throw TheoremViolated("subquotient form is not well-defined");
    }
    out.form = from_table(q, std::move(qtable));
    return out;
}

TwoLinearForm orthogonal_sum(const TwoLinearForm& a, const TwoLinearForm& b) {
    std::vector<i64> orders = a.group().orders();
    orders.insert(orders.end(), b.group().orders().begin(), b.group().orders().end());
    FinAbGroup t = FinAbGroup::of(std::move(orders));
    std::vector<QmodZ> table(static_cast<size_t>(t.size()));
    i64 nb = b.group().size();
    for (i64 i = 0; i < a.group().size(); ++i)
        for (i64 j = 0; j < nb; ++j) table[i * nb + j] = a.value_at(i).add(b.value_at(j));
    TwoLinearForm sum = TwoLinearForm::from_table(std::move(t), std::move(table));
    // Defect additivity, checked on generators.
    std::vector<QmodZ> expect = a.defect_hom();
    std::vector<QmodZ> db = b.defect_hom();
    expect.insert(expect.end(), db.begin(), db.end());
    if (sum.defect_hom() != expect) throw TheoremViolated("defect is not additive over orthogonal sum");
    return sum;
}

TwoLinearForm scalar_mul(i64 a, const TwoLinearForm& psi) {
    std::vector<QmodZ> table(psi.table().size());
    for (size_t i = 0; i < table.size(); ++i) table[i] = psi.table()[i].scale(a);
    TwoLinearForm out = TwoLinearForm::from_table(psi.group(), std::move(table));
    std::vector<QmodZ> expect = psi.defect_hom();
    for (QmodZ& v : expect) v = v.scale(a);
    if (out.defect_hom() != expect) throw TheoremViolated("defect does not scale with a");
    return out;
}

TwoLinearForm standard_u(i64 m) {
    if (m < 1) throw NotWellDefined("modulus must be positive");
    if (m == 1) return TwoLinearForm::from_table(FinAbGroup::of({}), {QmodZ()});
    QmodZ v = m % 2 == 0 ? QmodZ::of(1, 2 * m) : QmodZ::of(1, m);
    return TwoLinearForm::build(FinAbGroup::of({m}), {{v, v}}, {{v.add(v)}});
}

std::vector<TwoLinearForm> quadratic_enhancements(const BilinearForm& b) {
    const FinAbGroup& t = b.group();
    int k = t.rank();
    std::vector<std::vector<QmodZ>> choices(k);
    for (int i = 0; i < k; ++i) {
        i64 n = t.orders()[i];
        const QmodZ& bd = b.gram()[i][i];
        if (n % 2 == 1) {
            choices[i] = {bd.scale((n + 1) / 2)};
        } else {
            QmodZ half = QmodZ::of(bd.num(), mul_checked(2, bd.den()));
            choices[i] = {half, half.add(QmodZ::of(1, 2))};
        }
    }
    std::vector<TwoLinearForm> out;
    std::vector<size_t> pick(k, 0);
    size_t total = 1;
    for (auto& c : choices) {
        total *= c.size();
        if (total > (1u << 20)) throw CapExceeded("too many quadratic enhancements to enumerate");
    }
    for (size_t it = 0; it < total; ++it) {
        std::vector<std::array<QmodZ, 2>> genvals(k);
        for (int i = 0; i < k; ++i) {
            QmodZ v = choices[i][pick[i]];
            genvals[i] = {v, v};
        }
        out.push_back(TwoLinearForm::build(t, std::move(genvals), b.gram()));
        for (int i = k - 1; i >= 0; --i) {
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
        }
    }
    return out;
}

TwoLinearForm tame_quadratic_enhancement(const BilinearForm& b) {
    const FinAbGroup& t = b.group();
    int k = t.rank();
    // One quadratic enhancement, generator-wise.
    std::vector<std::array<QmodZ, 2>> genvals(k);
    for (int i = 0; i < k; ++i) {
        i64 n = t.orders()[i];
        const QmodZ& bd = b.gram()[i][i];
        QmodZ v = n % 2 == 1 ? bd.scale((n + 1) / 2) : QmodZ::of(bd.num(), mul_checked(2, bd.den()));
        genvals[i] = {v, v};
    }
    TwoLinearForm psi = TwoLinearForm::build(t, std::move(genvals), b.gram());

    Radical rad = psi.radical();
    if (!rad.tame) {
        // psi restricted to T-perp takes values in Z/2; solve for h in Hom(T, Z/2)
        // with h = psi on T-perp, over GF(2).
        std::vector<int> cols; // generator positions of even order
        for (int i = 0; i < k; ++i)
            if (t.orders()[i] % 2 == 0) cols.push_back(i);
        std::vector<std::vector<int>> rows;
        for (size_t s = 0; s < rad.span.generators.size(); ++s) {
            const QmodZ& v = rad.restriction_values[s];
            int rhs;
            if (v.is_zero())
                rhs = 0;
            else if (v == QmodZ::of(1, 2))
                rhs = 1;
            else
                throw TheoremViolated("radical restriction of a quadratic form must lie in Z/2");
            std::vector<int> row(cols.size() + 1, 0);
            for (size_t c = 0; c < cols.size(); ++c)
                row[c] = static_cast<int>(rad.span.generators[s].c[cols[c]] & 1);
            row[cols.size()] = rhs;
            rows.push_back(std::move(row));
        }
        // Gaussian elimination over GF(2).
        size_t r = 0;
        std::vector<int> pivot_col;
        for (size_t c = 0; c < cols.size() && r < rows.size(); ++c) {
            size_t sel = r;
            while (sel < rows.size() && rows[sel][c] == 0) ++sel;
            if (sel == rows.size()) continue;
            std::swap(rows[r], rows[sel]);
            for (size_t i = 0; i < rows.size(); ++i)
                if (i != r && rows[i][c])
                    for (size_t j = 0; j <= cols.size(); ++j) rows[i][j] ^= rows[r][j];
            pivot_col.push_back(static_cast<int>(c));
            ++r;
        }
        for (size_t i = r; i < rows.size(); ++i)
            if (rows[i][cols.size()]) throw TheoremViolated("no Z/2-valued extension of psi^s exists");
        std::vector<QmodZ> h(k);
        for (size_t i = 0; i < r; ++i)
            if (rows[i][cols.size()]) h[cols[pivot_col[i]]] = QmodZ::of(1, 2);
        psi = psi.shift(h);
        if (!psi.is_tame() || !psi.is_quadratic())
            throw TheoremViolated("corrected enhancement is not tame quadratic");
        rad = psi.radical();
    }

    // Lexicographically least table over the orbit of shifts by x with 2x in T-perp.
    std::vector<QmodZ> best = psi.table();
    TwoLinearForm best_form = psi;
    for (i64 i = 0; i < t.size(); ++i) {
        GroupElement x = t.element_at(i);
        if (!rad.closure.member[t.index_of(t.scale(2, x))]) continue;
        TwoLinearForm cand = psi.shift_by_element(x);
        if (cand.table() < best) {
            best = cand.table();
            best_form = cand;
        }
    }
    if (!best_form.is_quadratic() || !best_form.is_tame())
        throw TheoremViolated("selected enhancement is not tame quadratic");
    if (best_form.associated_bilinear().gram() != b.gram())
        throw TheoremViolated("selected enhancement does not enhance b");
    return best_form;
}

std::array<i64, 4> hensel_minus_one(i64 p, int l) {
    if (!is_prime(p)) throw NotWellDefined("p must be prime");
    if (l < 1) throw NotWellDefined("l must be at least 1");
    i64 target = 1;
    for (int i = 0; i < l; ++i) target = mul_checked(target, p);
    if (target > (1LL << 31)) throw CapExceeded("p^l too large");

    std::array<i64, 4> x{0, 0, 0, 0};
    int lcur;
    if (p == 2) {
        x = {1, 1, 1, 2};
        lcur = std::min(l, 3);
    } else if (p % 4 == 1) {
        for (i64 a = 0; a < p; ++a)
            if ((a * a + 1) % p == 0) {
                x[0] = a;
                break;
            }
        lcur = 1;
    } else {
        bool found = false;
        for (i64 a = 0; a < p && !found; ++a)
            for (i64 c = 0; c < p && !found; ++c)
                if ((a * a + c * c + 1) % p == 0) {
                    x = {a, c, 0, 0};
                    found = true;
                }
        lcur = 1;
    }

    auto residual = [&](i64 mod) {
        __int128 s = 1;
        for (i64 xi : x) s += static_cast<__int128>(xi) * xi;
        return static_cast<i64>(s % mod);
    };

    i64 pl = 1;
    for (int i = 0; i < lcur; ++i) pl *= p;
    while (lcur < l) {
        if (p == 2) {
            // Adjust x1 by a*2^{l-1}; valid from l >= 3 on.
            i64 c = (residual(2 * pl) / pl) % 2;
            if (c) x[0] += pl / 2;
            pl *= 2;
        } else {
            int u = x[0] % p != 0 ? 0 : 1;
            i64 c = (residual(pl * p) / pl) % p;
            // Solve 2 x_u a + c = 0 mod p.
            i64 inv = 0;
            i64 base = mod_floor(2 * x[u], p);
            for (i64 a = 0; a < p; ++a)
                if (mod_floor(base * a + c, p) == 0) {
                    inv = a;
                    break;
                }
            x[u] += inv * pl;
            pl *= p;
        }
        ++lcur;
    }
    for (i64& xi : x) xi = mod_floor(xi, target);
    if (residual(target) % target != 0) throw TheoremViolated("four-square congruence fails");
    return x;
}

ConnollyIsometry connolly_isometry(const TwoLinearForm& psi, i64 p) {
    if (!is_prime(p)) throw NotWellDefined("p must be prime");
    const FinAbGroup& t = psi.group();
    i64 n = t.size();
    {
        i64 m = n;
        while (m % p == 0) m /= p;
        if (m != 1) throw NotWellDefined("psi must live on a p-group");
    }
    if (!psi.is_quadratic()) throw NotQuadratic("Connolly's isometry needs a quadratic form");

    int k = 0;
    for (i64 ni : t.orders()) {
        int e = 0;
        while (ni > 1) {
            ni /= p;
            ++e;
        }
        k = std::max(k, e);
    }
    int l = p == 2 ? k + 2 : std::max(k, 1);
    if (p == 2 && l < 3) l = 3;
    auto x = hensel_minus_one(p, l);
    i64 pl = 1;
    for (int i = 0; i < l; ++i) pl *= p;

    ConnollyIsometry iso;
    iso.multiplicity = p == 2 ? 4 : (p % 4 == 1 ? 1 : 2);
    int m = iso.multiplicity;
    i64 x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
    std::vector<std::vector<i64>> full = {{x1, x2, x3, x4},
                                          {-x2, x1, -x4, x3},
                                          {x3, -x4, -x1, x2},
                                          {x4, x3, -x2, -x1}};
    iso.matrix.assign(m, std::vector<i64>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) iso.matrix[i][j] = mod_floor(full[i][j], pl);

    // M M^T = M^T M = -I mod p^l.
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            i64 sr = 0, sc = 0;
            for (int s = 0; s < m; ++s) {
                sr = mod_floor(sr + mul_checked(iso.matrix[i][s], iso.matrix[j][s]), pl);
                sc = mod_floor(sc + mul_checked(iso.matrix[s][i], iso.matrix[s][j]), pl);
            }
            i64 want = i == j ? pl - 1 : 0;
            if (sr != want || sc != want) throw TheoremViolated("Connolly matrix is not orthogonal");
        }

    // Exhaustive table check of the isometry psi^{perp m} = (-psi)^{perp m} under M.
    double tuples = 1;
    for (int i = 0; i < m; ++i) tuples *= static_cast<double>(n);
    if (tuples > static_cast<double>(1LL << 26))
        throw CapExceeded("isometry table verification too large");

    i64 level = 1;
    for (const QmodZ& v : psi.table()) level = lcm_checked(level, v.den());
    std::vector<i64> num(static_cast<size_t>(n));
    for (i64 i = 0; i < n; ++i) num[i] = psi.value_at(i).num_at(level);

    // Index maps for scaling by each matrix entry and for addition.
    std::map<i64, std::vector<i64>> scale_map;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            i64 e = iso.matrix[i][j];
            if (scale_map.count(e)) continue;
            auto& v = scale_map[e];
            v.resize(static_cast<size_t>(n));
            for (i64 idx = 0; idx < n; ++idx)
                v[idx] = t.index_of(t.scale(e, t.element_at(idx)));
        }
    std::vector<std::vector<i64>> add_map(static_cast<size_t>(n), std::vector<i64>(static_cast<size_t>(n)));
    for (i64 i = 0; i < n; ++i)
        for (i64 j = 0; j < n; ++j) add_map[i][j] = t.index_of(t.add(t.element_at(i), t.element_at(j)));
    std::vector<const std::vector<i64>*> scaled(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) scaled[i * m + j] = &scale_map[iso.matrix[i][j]];

    std::vector<i64> tup(m, 0);
    while (true) {
        i64 total = 0;
        for (int r = 0; r < m; ++r) {
            i64 img = (*scaled[r * m])[tup[0]];
            for (int c = 1; c < m; ++c) img = add_map[img][(*scaled[r * m + c])[tup[c]]];
            total += num[img] + num[tup[r]];
        }
        if (total % level != 0) throw TheoremViolated("Connolly map is not an isometry");
        int pos = m - 1;
        while (pos >= 0 && tup[pos] == n - 1) tup[pos--] = 0;
        if (pos < 0) break;
        ++tup[pos];
    }
    return iso;
}

} // namespace gsums
