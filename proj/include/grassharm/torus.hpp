#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace grassharm {

/// Angles (t_1, ..., t_q) of the torus element exp(sqrt(-1) H_T).
struct TorusPoint {
    std::vector<double> t;

    std::size_t rank() const { return t.size(); }

    /// Every angle strictly inside (0, pi/2) and all angles pairwise distinct.
    bool is_regular(double tol = 0.0) const
    {
        constexpr double half_pi = std::numbers::pi / 2.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!(t[i] > tol && t[i] < half_pi - tol)) return false;
            for (std::size_t j = i + 1; j < t.size(); ++j)
                if (std::abs(t[i] - t[j]) <= tol) return false;
        }
        return true;
    }

    /// Representative with pi/2 >= t_1 >= ... >= t_q >= 0. Uses t -> -t and
    /// t -> t + pi, so the spherical value may change by (-1)^{|l|} per shift.
    TorusPoint canonical() const
    {
        TorusPoint out{t};
        for (double& v : out.t) {
            v = std::fmod(std::abs(v), std::numbers::pi);
            if (v > std::numbers::pi / 2.0) v = std::numbers::pi - v;
        }
        std::sort(out.t.begin(), out.t.end(), std::greater<>());
        return out;
    }

    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

inline TorusPoint identity_point(int q) { return TorusPoint{std::vector<double>(static_cast<std::size_t>(q), 0.0)}; }

}  // namespace grassharm
