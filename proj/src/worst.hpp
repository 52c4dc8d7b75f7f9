#pragma once

#include "whopf/weak_hopf.hpp"

#include <functional>
#include <string>

namespace whopf::detail {

// running maximum of a residual, remembering where it happened
struct Worst {
    double r = 0.0;
    std::string where;
    void see(double x, const std::function<std::string()>& label)
    {
        if (where.empty() || x > r) {
            r = x;
            where = label();
        }
    }
    Check result(double tol) const { return Check{r <= tol, r, where}; }
};

inline std::string idx(const char* a, int i) { return std::string(a) + "=" + std::to_string(i); }
inline std::string idx(const char* a, int i, const char* b, int j) { return idx(a, i) + "," + idx(b, j); }

}  // namespace whopf::detail
