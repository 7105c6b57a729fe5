#include "gsums/rational.hpp"

#include <charconv>
#include <numeric>
#include <ostream>

namespace gsums {

i64 gcd_i64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 mul_checked(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer product out of range");
    return r;
}

i64 lcm_checked(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    i64 g = gcd_i64(a, b);
    return mul_checked(a / g, b < 0 ? -b : b);
}

i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

QmodZ QmodZ::of(i64 n, i64 d) {
    if (d == 0) throw Overflow("QmodZ with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    n = mod_floor(n, d);
    i64 g = gcd_i64(n, d);
    QmodZ q;
    q.num_ = n / g;
    q.den_ = d / g;
    return q;
}

QmodZ QmodZ::add(const QmodZ& o) const {
    i64 d = lcm_checked(den_, o.den_);
    return of(mul_checked(num_, d / den_) + mul_checked(o.num_, d / o.den_), d);
}

QmodZ QmodZ::sub(const QmodZ& o) const { return add(o.neg()); }

QmodZ QmodZ::neg() const { return of(-num_, den_); }

QmodZ QmodZ::scale(i64 a) const {
    i64 r = mod_floor(a, den_);
    return of(mul_checked(num_, r), den_);
}

bool QmodZ::operator<(const QmodZ& o) const {
    // num_/den_ < o.num_/o.den_ with all values in [0,1); cross-multiply in 128 bits.
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::string QmodZ::str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

QmodZ QmodZ::parse(std::string_view s) {
    auto slash = s.find('/');
    i64 n = 0, d = 1;
    auto parse_int = [&](std::string_view t, i64& out) {
        auto first = t.data();
        auto last = t.data() + t.size();
        auto [ptr, ec] = std::from_chars(first, last, out);
        if (ec != std::errc() || ptr != last) throw ParseError("bad fraction: " + std::string(s));
    };
    if (slash == std::string_view::npos) {
        parse_int(s, n);
    } else {
        parse_int(s.substr(0, slash), n);
        parse_int(s.substr(slash + 1), d);
        if (d == 0) throw ParseError("zero denominator: " + std::string(s));
    }
    return of(n, d);
}

i64 QmodZ::num_at(i64 level) const {
    if (level % den_ != 0) throw Overflow("denominator does not divide level");
    return mul_checked(num_, level / den_);
}

std::ostream& operator<<(std::ostream& os, const QmodZ& q) { return os << q.str(); }

} // namespace gsums
