#pragma once

#include <optional>

#include "gsums/gauss.hpp"
#include "gsums/lattice.hpp"

namespace gsums {

struct ReducedBlock {
    enum class Kind { Diagonal, PseudoHyperbolic } kind;
    i64 a = 0;          // diagonal entry, unit mod p
    i64 m1 = 0, m2 = 0; // [[2m1,1],[1,2m2]]
    static ReducedBlock diag(i64 a) { return {Kind::Diagonal, a, 0, 0}; }
    static ReducedBlock hyp(i64 m1, i64 m2) { return {Kind::PseudoHyperbolic, 0, m1, m2}; }
    int rank() const { return kind == Kind::Diagonal ? 1 : 2; }
};

struct ReducedLayer {
    int i = 0; // scale exponent
    std::vector<ReducedBlock> blocks;
};

/// C = C_0 perp p C_1 perp ... with M^T B M = C mod p^r, det M prime to p.
struct ReducedDecomposition {
    i64 p = 2;
    int r = 1; // effective exponent
    std::vector<ReducedLayer> layers;
    std::vector<std::vector<i64>> witness;
    IntSymMatrix layer_matrix(int i) const; // assembled C_i (empty layer -> 0x0)
    IntSymMatrix assembled() const;         // the full C including p^i scales
};

/// Gram-Schmidt style reduction mod p^r. The effective r is raised to
/// max(r, v_p(det B) + 1, 3 for p = 2); the similarity witness is validated
/// exactly on every call. `tie_seed` randomizes pivot tie-breaks.
ReducedDecomposition reduce_mod_pr(const IntSymMatrix& b, i64 p, int r,
                                   std::optional<std::uint64_t> tie_seed = std::nullopt);

/// 0 if a is a square mod p (p odd) / a = +-1 mod 8 (p = 2), else 1.
int phi_p(i64 a, i64 p);
int phi_p_big(const BigInt& a, i64 p);

/// rank mod 8 for odd p; N1 - N_{-1} + 3 N_3 - 3 N_{-3} mod 8 over a reduced
/// matrix 8-similar to A for p = 2. Requires det A prime to p.
int sigma_p(const IntSymMatrix& a, i64 p);

struct PsiLocalData {
    QmodZ beta;
    int e; // |T / T-perp| = p^e
    i64 p;
};

/// beta(a * psi) by the Galois multiplier law.
QmodZ beta_multiplier(const PsiLocalData& psi, i64 a);

/// beta(B tensor psi) = sigma_p(B) beta(psi) + phi_p(det B) e / 2.
QmodZ beta_lsmx(const IntSymMatrix& b, const PsiLocalData& psi);

/// Checks <-1> perp H_{m1,m2} ~_8 <2m1-1> perp <2m2-1> perp <1-2m1-2m2>
/// with an explicit integral witness.
bool pseudo_hyperbolic_identity(i64 m1, i64 m2);

/// The mod-4 closed form for beta(psi_{B,2}): not tame when the layer-1 part
/// has a diagonal summand, else (n1 - n3 + 4 eps_H)/8.
BetaValue kirby_melvin(const IntSymMatrix& b);

/// Decomposition psi_p = R_1 tensor u_p perp ... perp R_k tensor u_{p^k}.
struct PsiDecomposition {
    i64 p = 2;
    std::vector<std::pair<int, IntSymMatrix>> layers; // (j, R_j), j >= 1
};

/// beta((B tensor psi)_p) from layer invariants of C (the reduction of B) and
/// the given decomposition of psi_p.
BetaValue beta_gtp(const ReducedDecomposition& c, const PsiDecomposition& r);

struct ScaledReduction {
    bool tame = true;
    PsiDecomposition reduced; // valid only when tame
};
/// The reduced form of p^i psi_p: layers R_{i+1} tensor u_p, ..., R_k tensor
/// u_{p^{k-i}}; for p = 2 not tame iff R_i has a diagonal summand.
ScaledReduction scaled_reduction(const PsiDecomposition& r, int i);

/// (R tensor S) tensor u_p for forms on Z/p vector spaces.
TwoLinearForm bullet_product(const IntSymMatrix& r, const IntSymMatrix& s, i64 p);

} // namespace gsums
