#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "gsums/errors.hpp"

namespace gsums {

using i64 = std::int64_t;

/// An exact element of Q/Z, stored as a reduced fraction num/den with
/// 0 <= num < den and gcd(num, den) = 1. Zero is 0/1.
class QmodZ {
public:
    QmodZ() : num_(0), den_(1) {}

    /// Reduce n/d into Q/Z. d must be nonzero.
    static QmodZ of(i64 n, i64 d);

    i64 num() const { return num_; }
    i64 den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    QmodZ add(const QmodZ& o) const;
    QmodZ sub(const QmodZ& o) const;
    QmodZ neg() const;
    QmodZ scale(i64 a) const;

    QmodZ operator+(const QmodZ& o) const { return add(o); }
    QmodZ operator-(const QmodZ& o) const { return sub(o); }
    QmodZ operator-() const { return neg(); }
    QmodZ operator*(i64 a) const { return scale(a); }

    bool operator==(const QmodZ& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QmodZ& o) const { return !(*this == o); }
    // Order by value in [0,1); used for deterministic tie-breaks.
    bool operator<(const QmodZ& o) const;

    std::string str() const;
    static QmodZ parse(std::string_view s);

    /// Numerator when written over the given common denominator.
    /// Throws Overflow if den() does not divide level.
    i64 num_at(i64 level) const;

private:
    i64 num_, den_;
};

std::ostream& operator<<(std::ostream& os, const QmodZ& q);

i64 gcd_i64(i64 a, i64 b);
i64 lcm_checked(i64 a, i64 b); // throws Overflow past 2^62
i64 mul_checked(i64 a, i64 b);
i64 mod_floor(i64 a, i64 m); // result in [0, m)

} // namespace gsums
