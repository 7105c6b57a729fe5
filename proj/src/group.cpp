#include "gsums/group.hpp"

#include <algorithm>
#include <atomic>
#include <deque>

namespace gsums {

namespace {
std::atomic<i64> g_cap{100000};
}

i64 enumeration_cap() { return g_cap.load(); }
void set_enumeration_cap(i64 cap) { g_cap.store(cap); }

bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

FinAbGroup FinAbGroup::of(std::vector<i64> orders) {
    FinAbGroup g;
    i64 size = 1;
    for (i64 n : orders) {
        if (n < 1) throw NotWellDefined("cyclic order must be >= 1");
        size = mul_checked(size, n);
        if (size > enumeration_cap()) throw CapExceeded("group order exceeds enumeration cap");
    }
    g.orders_ = std::move(orders);
    g.size_ = size;
    g.strides_.assign(g.orders_.size(), 1);
    for (int i = static_cast<int>(g.orders_.size()) - 2; i >= 0; --i)
        g.strides_[i] = g.strides_[i + 1] * g.orders_[i + 1];
    return g;
}

i64 FinAbGroup::index_of(const GroupElement& x) const {
    i64 idx = 0;
    for (size_t i = 0; i < orders_.size(); ++i) idx += x.c[i] * strides_[i];
    return idx;
}

GroupElement FinAbGroup::element_at(i64 idx) const {
    GroupElement x{std::vector<i64>(orders_.size())};
    for (size_t i = 0; i < orders_.size(); ++i) {
        x.c[i] = idx / strides_[i];
        idx %= strides_[i];
    }
    return x;
}

GroupElement FinAbGroup::generator(int i) const {
    GroupElement x = zero();
    if (orders_[i] > 1) x.c[i] = 1;
    return x;
}

GroupElement FinAbGroup::add(const GroupElement& x, const GroupElement& y) const {
    GroupElement r{std::vector<i64>(orders_.size())};
    for (size_t i = 0; i < orders_.size(); ++i) {
        i64 v = x.c[i] + y.c[i];
        if (v >= orders_[i]) v -= orders_[i];
        r.c[i] = v;
    }
    return r;
}

GroupElement FinAbGroup::neg(const GroupElement& x) const {
    GroupElement r{std::vector<i64>(orders_.size())};
    for (size_t i = 0; i < orders_.size(); ++i) r.c[i] = x.c[i] == 0 ? 0 : orders_[i] - x.c[i];
    return r;
}

GroupElement FinAbGroup::scale(i64 a, const GroupElement& x) const {
    GroupElement r{std::vector<i64>(orders_.size())};
    for (size_t i = 0; i < orders_.size(); ++i)
        r.c[i] = mod_floor(mul_checked(mod_floor(a, orders_[i]), x.c[i]), orders_[i]);
    return r;
}

GroupElement FinAbGroup::reduce(const std::vector<i64>& raw) const {
    GroupElement r{std::vector<i64>(orders_.size())};
    for (size_t i = 0; i < orders_.size(); ++i) r.c[i] = mod_floor(raw[i], orders_[i]);
    return r;
}

std::vector<GroupElement> enumerate(const FinAbGroup& t) {
    std::vector<GroupElement> out;
    out.reserve(static_cast<size_t>(t.size()));
    for (i64 i = 0; i < t.size(); ++i) out.push_back(t.element_at(i));
    return out;
}

SubgroupClosure span_closure(const FinAbGroup& t, const SubgroupSpan& k) {
    SubgroupClosure cl;
    cl.member.assign(static_cast<size_t>(t.size()), 0);
    std::deque<i64> work;
    cl.member[0] = 1;
    work.push_back(0);
    cl.indices.push_back(0);
    while (!work.empty()) {
        i64 idx = work.front();
        work.pop_front();
        GroupElement x = t.element_at(idx);
        for (const GroupElement& g : k.generators) {
            i64 j = t.index_of(t.add(x, g));
            if (!cl.member[j]) {
                cl.member[j] = 1;
                cl.indices.push_back(j);
                work.push_back(j);
            }
        }
    }
    std::sort(cl.indices.begin(), cl.indices.end());
    return cl;
}

SubgroupSpan orthogonal_complement_generic(const FinAbGroup& t, const PairingFn& b,
                                           const SubgroupSpan& k) {
    SubgroupSpan out;
    for (i64 i = 0; i < t.size(); ++i) {
        GroupElement x = t.element_at(i);
        bool ok = true;
        for (const GroupElement& g : k.generators) {
            if (!b(x, g).is_zero()) {
                ok = false;
                break;
            }
        }
        if (ok) out.generators.push_back(std::move(x));
    }
    return out;
}

namespace {

// Relation matrix [generators | diag(orders)] whose column lattice is K + Λ.
IntMat relation_matrix(const FinAbGroup& t, const SubgroupSpan& k) {
    int rank = t.rank();
    IntMat m(rank, static_cast<int>(k.generators.size()) + rank);
    for (size_t j = 0; j < k.generators.size(); ++j)
        for (int i = 0; i < rank; ++i) m.at(i, static_cast<int>(j)) = k.generators[j].c[i];
    for (int i = 0; i < rank; ++i) m.at(i, static_cast<int>(k.generators.size()) + i) = t.orders()[i];
    return m;
}

} // namespace

QuotientPresentation detail::build_presentation(const FinAbGroup& t, const IntMat& sbasis,
                                                bool full_ambient, const std::vector<i64>& s_indices,
                                                const IntMat& rel) {
    QuotientPresentation pres;
    pres.ambient_ = t;
    pres.full_ambient_ = full_ambient;
    pres.basis_ = sbasis;
    int rank = t.rank();

    // Express the relation lattice in S-coordinates, then split off the cyclic
    // factors with Smith normal form.
    IntMat x(rank, rel.cols());
    std::vector<BigInt> col(rank), sol;
    for (int j = 0; j < rel.cols(); ++j) {
        for (int i = 0; i < rank; ++i) col[i] = rel.at(i, j);
        if (!solve_lower_triangular(sbasis, col, sol))
            throw NotWellDefined("relation subgroup is not contained in the span");
        for (int i = 0; i < rank; ++i) x.at(i, j) = sol[i];
    }
    SmithResult snf = smith_normal_form(x);
    std::vector<i64> dall(rank);
    for (int i = 0; i < rank; ++i) {
        if (snf.d.at(i, i) == 0) throw NotWellDefined("quotient is not finite");
        dall[i] = to_i64(snf.d.at(i, i));
    }
    std::vector<i64> orders;
    for (int i = 0; i < rank; ++i) {
        if (dall[i] == 1) continue;
        orders.push_back(dall[i]);
        std::vector<i64> row(rank);
        for (int j = 0; j < rank; ++j) {
            BigInt v = snf.u.at(i, j) % dall[i];
            if (v < 0) v += dall[i];
            row[j] = to_i64(v);
        }
        pres.proj_.push_back(std::move(row));
        pres.dvals_.push_back(dall[i]);
    }
    pres.group_ = FinAbGroup::of(orders);

    // Lexicographically smallest preimage per class.
    i64 qsize = pres.group_.size();
    pres.sections_.assign(static_cast<size_t>(qsize), GroupElement{});
    std::vector<char> seen(static_cast<size_t>(qsize), 0);
    i64 covered = 0;
    for (i64 idx : s_indices) {
        GroupElement s = t.element_at(idx);
        i64 q = pres.group().index_of(pres.project(s));
        if (!seen[q]) {
            seen[q] = 1;
            pres.sections_[q] = s;
            ++covered;
        }
    }
    if (covered != qsize) throw NotWellDefined("projection is not surjective");
    return pres;
}

GroupElement QuotientPresentation::project(const GroupElement& s) const {
    std::vector<i64> y(ambient_.rank());
    if (full_ambient_) {
        for (int i = 0; i < ambient_.rank(); ++i) y[i] = s.c[i];
    } else {
        std::vector<BigInt> col(ambient_.rank()), sol;
        for (int i = 0; i < ambient_.rank(); ++i) col[i] = s.c[i];
        if (!solve_lower_triangular(basis_, col, sol))
            throw NotWellDefined("element does not lie in the subgroup");
        for (int i = 0; i < ambient_.rank(); ++i) y[i] = to_i64(sol[i]);
    }
    GroupElement q{std::vector<i64>(dvals_.size())};
    for (size_t r = 0; r < dvals_.size(); ++r) {
        i64 acc = 0;
        for (int j = 0; j < ambient_.rank(); ++j)
            acc = mod_floor(acc + mul_checked(proj_[r][j], mod_floor(y[j], dvals_[r])), dvals_[r]);
        q.c[r] = acc;
    }
    return q;
}

const GroupElement& QuotientPresentation::section(const GroupElement& q) const {
    return sections_[group_.index_of(q)];
}

QuotientPresentation quotient(const FinAbGroup& t, const SubgroupSpan& k) {
    std::vector<i64> all(static_cast<size_t>(t.size()));
    for (i64 i = 0; i < t.size(); ++i) all[i] = i;
    return detail::build_presentation(t, IntMat::identity(t.rank()), true, all,
                                      relation_matrix(t, k));
}

QuotientPresentation subquotient_presentation(const FinAbGroup& t, const SubgroupSpan& s,
                                              const SubgroupSpan& k) {
    IntMat sbasis = column_lattice_basis(relation_matrix(t, s));
    SubgroupClosure cls = span_closure(t, s);
    return detail::build_presentation(t, sbasis, false, cls.indices, relation_matrix(t, k));
}

GroupElement PrimaryPart::embed(const FinAbGroup& ambient, const GroupElement& x) const {
    GroupElement acc = ambient.zero();
    for (size_t i = 0; i < embedded_generators.size(); ++i)
        acc = ambient.add(acc, ambient.scale(x.c[i], embedded_generators[i]));
    return acc;
}

PrimaryPart primary_part(const FinAbGroup& t, i64 p) {
    if (!is_prime(p)) throw NotWellDefined("p must be prime");
    PrimaryPart part;
    std::vector<i64> orders;
    for (int i = 0; i < t.rank(); ++i) {
        i64 n = t.orders()[i];
        i64 q = 1;
        while (n % p == 0) {
            n /= p;
            q *= p;
        }
        if (q == 1) continue;
        orders.push_back(q);
        GroupElement g = t.zero();
        g.c[i] = t.orders()[i] / q;
        part.embedded_generators.push_back(std::move(g));
    }
    part.group = FinAbGroup::of(orders);
    return part;
}

} // namespace gsums
