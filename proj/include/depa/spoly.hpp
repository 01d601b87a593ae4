#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace depa {

/// Integer-coefficient Laurent-free polynomial in s with half-unit exponents
/// (key = doubled exponent).
struct SPoly {
    std::map<int, long long> c;

    static SPoly monomial(int exp2, long long coeff = 1) {
        SPoly p;
        if (coeff) p.c[exp2] = coeff;
        return p;
    }
    static SPoly constant(long long v) { return monomial(0, v); }

    bool is_zero() const { return c.empty(); }
    void trim() {
        for (auto it = c.begin(); it != c.end();)
            it = it->second == 0 ? c.erase(it) : std::next(it);
    }

    SPoly operator+(const SPoly& o) const {
        SPoly out = *this;
        for (auto& [e, v] : o.c) out.c[e] += v;
        out.trim();
        return out;
    }
    SPoly operator-(const SPoly& o) const {
        SPoly out = *this;
        for (auto& [e, v] : o.c) out.c[e] -= v;
        out.trim();
        return out;
    }
    SPoly operator*(const SPoly& o) const {
        SPoly out;
        for (auto& [e1, v1] : c)
            for (auto& [e2, v2] : o.c) out.c[e1 + e2] += v1 * v2;
        out.trim();
        return out;
    }
    bool operator==(const SPoly& o) const { return c == o.c; }

    long long at_one() const {
        long long s = 0;
        for (auto& [e, v] : c) s += v;
        return s;
    }

    std::string str() const {
        if (c.empty()) return "0";
        std::string out;
        for (auto& [e, v] : c) {
            if (!out.empty()) out += v < 0 ? " - " : " + ";
            else if (v < 0) out += "-";
            long long a = v < 0 ? -v : v;
            std::string pow;
            if (e == 2) pow = "s";
            else if (e != 0) {
                pow = "s^";
                pow += (e % 2 == 0) ? std::to_string(e / 2)
                                    : std::to_string(e) + "/2";
            }
            if (pow.empty()) out += std::to_string(a);
            else out += (a == 1 ? pow : std::to_string(a) + pow);
        }
        return out;
    }
};

}  // namespace depa
