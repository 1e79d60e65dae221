#pragma once

#include <cmath>
#include <vector>

namespace teststats {

inline double mean(const std::vector<double>& xs)
{
    double s = 0;
    for (double x : xs)
        s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

inline double sample_stddev(const std::vector<double>& xs)
{
    if (xs.size() < 2)
        return 0.0;
    double m = mean(xs);
    double s = 0;
    for (double x : xs)
        s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

inline double standard_error(const std::vector<double>& xs)
{
    return sample_stddev(xs) / std::sqrt(static_cast<double>(xs.size()));
}

} // namespace teststats
