#pragma once

#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "persistence.hpp"

namespace circ {

struct IntegerCocycleEntry {
    int u, v;
    int coeff; // integer, |coeff| <= (p-1)/2 immediately after lifting
    double value;
};

struct IntegerCocycle {
    std::vector<IntegerCocycleEntry> entries;
    double scale = 0.0;
};

// Maps each residue to the unique integer in (-p/2, p/2) congruent to it.
inline IntegerCocycle lift(const Cocycle& cocycle, int p) {
    const Field fp(p);
    IntegerCocycle out;
    out.scale = cocycle.scale;
    out.entries.reserve(cocycle.entries.size());
    for (const auto& e : cocycle.entries)
        out.entries.push_back({e.u, e.v, fp.lift(e.coeff), e.value});
    return out;
}

struct CocycleViolation {
    int a, b, c;
    long long defect; // alpha(b,c) - alpha(a,c) + alpha(a,b)
};

struct VerifyResult {
    bool ok = true;
    std::vector<CocycleViolation> violations; // first 10 violating triangles
    std::string message() const {
        if (ok) return "integer cocycle condition holds";
        std::ostringstream os;
        os << "integer cocycle condition violated on " << violations.size()
           << "+ triangles (lower the working scale or change the coefficient prime); first:";
        for (const auto& v : violations)
            os << " (" << v.a << "," << v.b << "," << v.c << ")->" << v.defect;
        return os.str();
    }
};

// Checks alpha(v,w) - alpha(u,w) + alpha(u,v) = 0 over the integers on every
// triangle of the slice.
inline VerifyResult verify_integer_cocycle(const IntegerCocycle& ic, const ComplexSlice& slice) {
    std::unordered_map<std::int64_t, long long> coeff;
    const auto key = [&](int u, int v) { return static_cast<std::int64_t>(u) * slice.n + v; };
    for (const auto& e : ic.entries) coeff[key(e.u, e.v)] = e.coeff;
    auto get = [&](int u, int v) {
        auto it = coeff.find(key(u, v));
        return it == coeff.end() ? 0ll : it->second;
    };

    VerifyResult res;
    for (const auto& t : slice.triangles) {
        const long long defect = get(t[1], t[2]) - get(t[0], t[2]) + get(t[0], t[1]);
        if (defect != 0) {
            res.ok = false;
            if (res.violations.size() < 10) res.violations.push_back({t[0], t[1], t[2], defect});
        }
    }
    return res;
}

} // namespace circ
