#pragma once

#include <string>
#include <vector>

#include "contractum/metric_spaces.hpp"
#include "contractum/random.hpp"

namespace testing_support {

/// n points labelled 0..n-1 with symmetric distances uniform in [lo, hi].
inline contractum::FiniteSpace random_space(contractum::Rng& rng, std::size_t n, double lo = 0.05, double hi = 1.0) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back(std::to_string(i));
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            d[i][j] = d[j][i] = rng.uniform(lo, hi);
    return contractum::FiniteSpace(labels, d);
}

inline std::vector<std::vector<double>> table(const contractum::FiniteSpace& space) {
    std::vector<std::vector<double>> d(space.size(), std::vector<double>(space.size()));
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = 0; j < space.size(); ++j)
            d[i][j] = space(i, j);
    return d;
}

} // namespace testing_support
