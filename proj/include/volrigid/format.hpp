#ifndef VOLRIGID_FORMAT_HPP
#define VOLRIGID_FORMAT_HPP

#include <string>

namespace volrigid {

constexpr int output_significant_digits = 12;

/// v rounded to 12 significant digits, so that its shortest round-trip
/// decimal form has at most 12 digits.
double round_significant(double v, int digits = output_significant_digits);

/// printf "%.12g".
std::string format_number(double v, int digits = output_significant_digits);

} // namespace volrigid

#endif
