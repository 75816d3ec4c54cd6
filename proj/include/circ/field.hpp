#pragma once

#include <stdexcept>
#include <vector>

namespace circ {

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

// Arithmetic mod a prime p (p <= 2^16), with precomputed inverses.
class Field {
public:
    explicit Field(int p) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
        if (p > (1 << 16)) throw std::invalid_argument("field characteristic too large");
        inv_.assign(p, 0);
        if (p > 1) inv_[1] = 1;
        for (int a = 2; a < p; ++a)
            inv_[a] = p - static_cast<int>((static_cast<long long>(inv_[p % a]) * (p / a)) % p);
    }

    int p() const { return p_; }
    int normalize(long long x) const {
        int r = static_cast<int>(x % p_);
        return r < 0 ? r + p_ : r;
    }
    int add(int a, int b) const { return (a + b) % p_; }
    int sub(int a, int b) const { return (a - b + p_) % p_; }
    int mul(int a, int b) const { return static_cast<int>((static_cast<long long>(a) * b) % p_); }
    int neg(int a) const { return a == 0 ? 0 : p_ - a; }
    int inv(int a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return inv_[a];
    }

    // Unique integer in (-p/2, p/2) congruent to the residue.
    int lift(int a) const { return a > p_ / 2 ? a - p_ : a; }

private:
    int p_;
    std::vector<int> inv_;
};

} // namespace circ
