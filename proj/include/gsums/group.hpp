#pragma once

#include <functional>
#include <vector>

#include "gsums/intmat.hpp"
#include "gsums/rational.hpp"

namespace gsums {

/// Process-wide bound on group orders that may be enumerated. Constructors of
/// larger groups throw CapExceeded.
i64 enumeration_cap();
void set_enumeration_cap(i64 cap);

struct GroupElement {
    std::vector<i64> c;
    bool operator==(const GroupElement& o) const { return c == o.c; }
    bool operator<(const GroupElement& o) const { return c < o.c; }
};

/// A finite abelian group presented as the direct sum of Z/n_i; the trivial
/// group is the empty sequence. Elements are coordinate vectors reduced mod n_i.
class FinAbGroup {
public:
    FinAbGroup() : size_(1) {}
    static FinAbGroup of(std::vector<i64> orders);

    const std::vector<i64>& orders() const { return orders_; }
    int rank() const { return static_cast<int>(orders_.size()); }
    i64 size() const { return size_; }
    bool trivial() const { return size_ == 1; }

    /// Position of an element in lexicographic coordinate order.
    i64 index_of(const GroupElement& x) const;
    GroupElement element_at(i64 idx) const;
    GroupElement zero() const { return GroupElement{std::vector<i64>(orders_.size(), 0)}; }
    GroupElement generator(int i) const;

    GroupElement add(const GroupElement& x, const GroupElement& y) const;
    GroupElement neg(const GroupElement& x) const;
    GroupElement scale(i64 a, const GroupElement& x) const;
    GroupElement reduce(const std::vector<i64>& raw) const;

    bool operator==(const FinAbGroup& o) const { return orders_ == o.orders_; }

private:
    std::vector<i64> orders_;
    std::vector<i64> strides_;
    i64 size_ = 1;
};

std::vector<GroupElement> enumerate(const FinAbGroup& t);

struct SubgroupSpan {
    std::vector<GroupElement> generators;
};

/// All elements of the subgroup spanned by `k`, as sorted element indices,
/// plus a membership table over the whole group.
struct SubgroupClosure {
    std::vector<i64> indices;
    std::vector<char> member;
    i64 size() const { return static_cast<i64>(indices.size()); }
};
SubgroupClosure span_closure(const FinAbGroup& t, const SubgroupSpan& k);

using PairingFn = std::function<QmodZ(const GroupElement&, const GroupElement&)>;

/// Generators of { t : b(t, k) = 0 for every generator k of K }.
SubgroupSpan orthogonal_complement_generic(const FinAbGroup& t, const PairingFn& b, const SubgroupSpan& k);

class QuotientPresentation;

namespace detail {
QuotientPresentation build_presentation(const FinAbGroup& t, const IntMat& sbasis, bool full_ambient,
                                        const std::vector<i64>& s_indices, const IntMat& rel);
}

/// A presentation of S/K in canonical cyclic coordinates, with a projection
/// defined on elements of S and a section choosing the lexicographically
/// smallest preimage per class.
class QuotientPresentation {
public:
    const FinAbGroup& group() const { return group_; }
    /// Class of s in S/K; s must lie in S.
    GroupElement project(const GroupElement& s) const;
    /// Lexicographically smallest preimage of the class q.
    const GroupElement& section(const GroupElement& q) const;
    const GroupElement& section_at(i64 q_idx) const { return sections_[q_idx]; }

private:
    friend QuotientPresentation detail::build_presentation(const FinAbGroup&, const IntMat&, bool,
                                                           const std::vector<i64>&, const IntMat&);
    FinAbGroup ambient_;
    FinAbGroup group_;
    bool full_ambient_ = true;
    IntMat basis_;                          // lower-triangular basis of S (identity when S = T)
    std::vector<std::vector<i64>> proj_;    // rows of the Smith transform, reduced mod d_i
    std::vector<i64> dvals_;                // the nontrivial cyclic orders
    std::vector<GroupElement> sections_;    // lex-least preimage per class index
};

/// T/K with K given by generators.
QuotientPresentation quotient(const FinAbGroup& t, const SubgroupSpan& k);

/// S/K for subgroups K ⊆ S ⊆ T given by generators.
QuotientPresentation subquotient_presentation(const FinAbGroup& t, const SubgroupSpan& s,
                                              const SubgroupSpan& k);

/// The p-torsion subgroup of T as an abstract p-group plus its embedding.
struct PrimaryPart {
    FinAbGroup group;
    std::vector<GroupElement> embedded_generators;
    GroupElement embed(const FinAbGroup& ambient, const GroupElement& x) const;
};
PrimaryPart primary_part(const FinAbGroup& t, i64 p);

bool is_prime(i64 p);

} // namespace gsums
