#include "volrigid/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace volrigid {

double round_significant(double v, int digits)
{
    if (!std::isfinite(v) || v == 0.0)
        return v;
    return std::strtod(format_number(v, digits).c_str(), nullptr);
}

std::string format_number(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

} // namespace volrigid
