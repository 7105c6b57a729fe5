#include "gsums/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gsums {

namespace detail {

std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> f;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.emplace_back(p, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

namespace {

i64 pow_i64(i64 b, int e) {
    i64 r = 1;
    while (e--) r = mul_checked(r, b);
    return r;
}

i64 inv_mod(i64 a, i64 m) {
    i64 t = 0, nt = 1, r = m, nr = mod_floor(a, m);
    while (nr != 0) {
        i64 q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return mod_floor(t, m);
}

struct PrimePart {
    i64 p;        // prime
    i64 q;        // p^a
    i64 phi;      // q - q/p
    i64 w;        // (N/q)^{-1} mod q; residue of k is k*w mod q
    i64 step;     // N/p, the exponent step of the rotated prime relation
};

std::vector<PrimePart> prime_parts(i64 level) {
    std::vector<PrimePart> parts;
    for (auto [p, e] : factorize(level)) {
        PrimePart pp;
        pp.p = p;
        pp.q = pow_i64(p, e);
        pp.phi = pp.q - pp.q / p;
        pp.w = inv_mod(level / pp.q, pp.q);
        pp.step = level / p;
        parts.push_back(pp);
    }
    return parts;
}

} // namespace

void canonicalize(i64 level, std::vector<i64>& c) {
    if (level == 1) return;
    for (const PrimePart& pp : prime_parts(level)) {
        for (i64 k = 0; k < level; ++k) {
            if (c[k] == 0) continue;
            i64 r = (static_cast<__int128>(k) * pp.w) % pp.q;
            if (r < pp.phi) continue;
            i64 v = c[k];
            c[k] = 0;
            i64 t = k;
            for (i64 j = 1; j < pp.p; ++j) {
                t -= pp.step;
                if (t < 0) t += level;
                i64 nc;
                if (__builtin_sub_overflow(c[t], v, &nc)) throw Overflow("coefficient out of range");
                c[t] = nc;
            }
        }
    }
}

std::vector<std::pair<i64, i64>> canonical_monomial(i64 level, i64 k) {
    std::vector<std::pair<i64, i64>> terms{{mod_floor(k, level), 1}};
    if (level == 1) return terms;
    for (const PrimePart& pp : prime_parts(level)) {
        std::vector<std::pair<i64, i64>> next;
        for (auto [e, s] : terms) {
            i64 r = (static_cast<__int128>(e) * pp.w) % pp.q;
            if (r < pp.phi) {
                next.emplace_back(e, s);
                continue;
            }
            i64 t = e;
            for (i64 j = 1; j < pp.p; ++j) {
                t -= pp.step;
                if (t < 0) t += level;
                next.emplace_back(t, -s);
            }
        }
        terms = std::move(next);
    }
    return terms;
}

} // namespace detail

CycSum::CycSum(i64 level, std::vector<i64> coeffs) : level_(level), c_(std::move(coeffs)) {
    if (level_ < 1) throw Overflow("CycSum level must be positive");
    if (static_cast<i64>(c_.size()) != level_) throw Overflow("coefficient count must equal level");
}

CycSum CycSum::constant(i64 v) { return CycSum(1, {v}); }

CycSum CycSum::root_of_unity(i64 level, i64 k) {
    std::vector<i64> c(level, 0);
    c[mod_floor(k, level)] = 1;
    return CycSum(level, std::move(c));
}

CycSum CycSum::add(const CycSum& o) const {
    i64 m = lcm_checked(level_, o.level_);
    CycSum a = at_level(m), b = o.at_level(m);
    for (i64 k = 0; k < m; ++k) {
        if (__builtin_add_overflow(a.c_[k], b.c_[k], &a.c_[k])) throw Overflow("coefficient out of range");
    }
    return a;
}

CycSum CycSum::sub(const CycSum& o) const { return add(o.neg()); }

CycSum CycSum::neg() const {
    CycSum r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

CycSum CycSum::scale(i64 a) const {
    CycSum r = *this;
    for (auto& v : r.c_) v = mul_checked(v, a);
    return r;
}

CycSum CycSum::mul(const CycSum& o) const {
    i64 m = lcm_checked(level_, o.level_);
    CycSum a = at_level(m), b = o.at_level(m);
    std::vector<i64> sa, sb;
    for (i64 k = 0; k < m; ++k) {
        if (a.c_[k] != 0) sa.push_back(k);
        if (b.c_[k] != 0) sb.push_back(k);
    }
    std::vector<__int128> acc(m, 0);
    for (i64 i : sa)
        for (i64 j : sb) {
            i64 k = i + j;
            if (k >= m) k -= m;
            acc[k] += static_cast<__int128>(a.c_[i]) * b.c_[j];
        }
    std::vector<i64> out(m);
    for (i64 k = 0; k < m; ++k) {
        if (acc[k] > INT64_MAX || acc[k] < INT64_MIN) throw Overflow("coefficient out of range");
        out[k] = static_cast<i64>(acc[k]);
    }
    return CycSum(m, std::move(out));
}

CycSum CycSum::rotated(i64 k) const {
    k = mod_floor(k, level_);
    std::vector<i64> out(level_);
    for (i64 i = 0; i < level_; ++i) {
        i64 j = i + k;
        if (j >= level_) j -= level_;
        out[j] = c_[i];
    }
    return CycSum(level_, std::move(out));
}

CycSum CycSum::conjugate() const {
    std::vector<i64> out(level_);
    out[0] = c_[0];
    for (i64 k = 1; k < level_; ++k) out[level_ - k] = c_[k];
    return CycSum(level_, std::move(out));
}

CycSum CycSum::at_level(i64 m) const {
    if (m == level_) return *this;
    if (m % level_ != 0) throw Overflow("level change requires a multiple of the current level");
    i64 s = m / level_;
    std::vector<i64> out(m, 0);
    for (i64 k = 0; k < level_; ++k) out[k * s] = c_[k];
    return CycSum(m, std::move(out));
}

bool CycSum::is_zero() const {
    std::vector<i64> c = c_;
    detail::canonicalize(level_, c);
    return std::all_of(c.begin(), c.end(), [](i64 v) { return v == 0; });
}

bool CycSum::operator==(const CycSum& o) const { return sub(o).is_zero(); }

std::vector<i64> CycSum::canonical_coeffs() const {
    std::vector<i64> c = c_;
    detail::canonicalize(level_, c);
    return c;
}

std::complex<double> CycSum::embed() const {
    double re = 0, im = 0;
    const double w = 2.0 * std::numbers::pi / static_cast<double>(level_);
    for (i64 k = 0; k < level_; ++k) {
        if (c_[k] == 0) continue;
        double v = static_cast<double>(c_[k]);
        re += v * std::cos(w * static_cast<double>(k));
        im += v * std::sin(w * static_cast<double>(k));
    }
    return {re, im};
}

bool CycSum::is_real_positive(double tol) const {
    if (!(tol > 0)) throw Overflow("tolerance must be positive");
    if (*this != conjugate()) return false;
    double re = embed().real();
    if (std::abs(re) <= tol) throw AmbiguousSign("exactly real but embedding is within tolerance of zero");
    return re > tol;
}

} // namespace gsums
